#include "afvp/cli_runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace afvp {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double parse_number(const std::string& key, const std::string& text)
{
    double value = 0.0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
        throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
    return value;
}

int parse_integer(const std::string& key, const std::string& text)
{
    int value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("config: '" + key + "' expects an integer, got '" + text + "'");
    return value;
}

std::vector<double> parse_number_list(const std::string& key, const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(parse_number(key, item));
    }
    return out;
}

const std::vector<std::string>& known_keys()
{
    static const std::vector<std::string> keys{
        "problem", "amplitude", "wavenumber", "beam_velocity", "x_min", "x_max", "v_min",
        "v_max", "n_x", "n_v", "scheme", "splitting", "cfl", "t_max", "alpha", "beta",
        "init_quadrature", "diag_every", "snapshot_times", "output_dir"};
    return keys;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

void SimConfig::validate() const
{
    domain.validate();
    problem.validate_against(domain);
    const double cfl_max = scheme == SchemeKind::dd ? 0.5 : 1.0;
    if (!(cfl > 0.0 && cfl <= cfl_max))
        throw ConfigError("config: cfl must lie in (0, " + format_double(cfl_max) + "] for scheme " +
                          to_string(scheme));
    if (!(t_max > 0.0)) throw ConfigError("config: t_max must be positive");
    distribution.validate();
    if (diag_every < 1) throw ConfigError("config: diag_every must be at least 1");
    for (double s : snapshot_times)
        if (!(s >= 0.0 && s <= t_max)) throw ConfigError("config: snapshot time outside [0, t_max]");
}

SimConfig SimConfig::at_resolution(int n) const
{
    SimConfig c = *this;
    c.domain.n_x = n;
    c.domain.n_v = n;
    return c;
}

SimConfig parse_config(std::string_view text)
{
    std::map<std::string, std::string> entries;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(content).substr(0, eq));
        const std::string value = trim(std::string_view(content).substr(eq + 1));
        const auto& keys = known_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (!entries.emplace(key, value).second)
            throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }

    auto take = [&](const char* key) -> std::optional<std::string> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        return it->second;
    };

    SimConfig c;
    ProblemKind kind = ProblemKind::weak_landau;
    if (auto v = take("problem")) kind = parse_problem_kind(*v);
    switch (kind) {
    case ProblemKind::weak_landau: c.problem = InitialCondition::weak_landau(); break;
    case ProblemKind::strong_landau: c.problem = InitialCondition::strong_landau(); break;
    case ProblemKind::two_stream: c.problem = InitialCondition::two_stream(); break;
    }
    int n_x = c.domain.n_x, n_v = c.domain.n_v;
    if (auto v = take("n_x")) n_x = parse_integer("n_x", *v);
    if (auto v = take("n_v")) n_v = parse_integer("n_v", *v);
    if (n_x < 1 || n_v < 1) throw ConfigError("config: n_x and n_v must be positive");
    c.domain = InitialCondition::preset_domain(kind, n_x, n_v);

    auto number = [&](const char* key, double& field) {
        if (auto v = take(key)) field = parse_number(key, *v);
    };
    number("amplitude", c.problem.amplitude);
    number("wavenumber", c.problem.wavenumber);
    number("beam_velocity", c.problem.beam_velocity);
    number("x_min", c.domain.x_min);
    number("x_max", c.domain.x_max);
    number("v_min", c.domain.v_min);
    number("v_max", c.domain.v_max);
    number("cfl", c.cfl);
    number("t_max", c.t_max);
    number("alpha", c.distribution.alpha);
    number("beta", c.distribution.beta);

    if (auto v = take("scheme")) c.scheme = parse_scheme_kind(*v);
    if (auto v = take("splitting")) c.splitting = parse_splitting_kind(*v);
    if (auto v = take("init_quadrature")) c.init_quadrature = parse_init_quadrature(*v);
    if (auto v = take("diag_every")) c.diag_every = parse_integer("diag_every", *v);
    if (auto v = take("snapshot_times")) {
        c.snapshot_times = parse_number_list("snapshot_times", *v);
        std::sort(c.snapshot_times.begin(), c.snapshot_times.end());
    }
    if (auto v = take("output_dir")) {
        if (v->empty()) throw ConfigError("config: output_dir is empty");
        c.output_dir = *v;
    }

    c.validate();
    return c;
}

SimConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

double time_step(const SimConfig& config, double e_max)
{
    const DomainSpec& d = config.domain;
    const double v_max = std::max(std::abs(d.v_min), std::abs(d.v_max));
    double bound = std::numeric_limits<double>::infinity();
    if (v_max > 0.0) bound = d.dx() / v_max;
    if (e_max > 0.0) bound = std::min(bound, d.dv() / e_max);
    if (!std::isfinite(bound)) throw ConfigError("time_step: no finite advection speed");
    return config.cfl * bound;
}

namespace {

const Array2D& cell_averages(const InhomogeneousState& s) { return s.grid.cell_avg; }
Array2D cell_averages(const HomogeneousState& s) { return simpson_cell_averages(s.grid); }

double max_abs(const std::vector<double>& a)
{
    double m = 0.0;
    for (double x : a) m = std::max(m, std::abs(x));
    return m;
}

template <class Ops>
SimulationResult simulate_with(const SimConfig& config, const Ops& ops, typename Ops::State state,
                               const SimulationObserver& observer)
{
    SimulationResult result;
    result.dt = time_step(config, max_abs(state.field.stations()));

    auto record = [&](double t) {
        DiagnosticsRow row = conserved_quantities(state, t);
        result.diagnostics.push_back(row);
        if (observer.on_diagnostics) observer.on_diagnostics(row);
    };

    const double t_max = config.t_max;
    const double tol = 1e-12 * std::max(1.0, t_max);
    std::size_t next_snapshot = 0;
    const auto& snaps = config.snapshot_times;
    auto emit_snapshots = [&](double t) {
        while (next_snapshot < snaps.size() && snaps[next_snapshot] <= t + tol) {
            if (observer.on_snapshot) observer.on_snapshot(t, cell_averages(state));
            ++next_snapshot;
        }
    };

    double t = 0.0;
    record(t);
    emit_snapshots(t);
    while (t_max - t > tol) {
        double target = t + result.dt;
        if (target >= t_max - tol) target = t_max;
        if (next_snapshot < snaps.size() && target >= snaps[next_snapshot] - tol)
            target = snaps[next_snapshot];
        state = step(std::move(state), target - t, config.splitting, ops);
        t = target;
        ++result.steps;
        if (result.steps % config.diag_every == 0 || t_max - t <= tol) record(t);
        emit_snapshots(t);
    }
    result.t_final = t;
    result.cell_avg = cell_averages(state);
    return result;
}

} // namespace

SimulationResult simulate(const SimConfig& config, const SimulationObserver& observer)
{
    config.validate();
    if (config.scheme == SchemeKind::dd) {
        DiscrepancyOperators ops(config.domain, config.distribution);
        auto state = ops.initial_state(init_homogeneous(config.domain, config.problem));
        return simulate_with(config, ops, std::move(state), observer);
    }
    FluxIntegralOperators ops(config.scheme, config.domain);
    auto state = ops.initial_state(init_inhomogeneous(config.domain, config.problem, config.init_quadrature));
    return simulate_with(config, ops, std::move(state), observer);
}

namespace {

std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path)
{
    out.close();
    if (!out) throw IoError("failed writing " + path.string());
}

void ensure_directory(const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir))
        throw IoError("cannot create output directory " + dir.string());
}

std::string indexed_name(const char* stem, std::size_t k)
{
    std::string digits = std::to_string(k);
    if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
    return std::string(stem) + "_" + digits + ".csv";
}

} // namespace

SimulationResult run(const SimConfig& config, const RunOptions& options)
{
    config.validate();
    ensure_directory(config.output_dir);

    const auto diag_path = config.output_dir / "diagnostics.csv";
    std::ofstream diag = open_output(diag_path);
    diag << diagnostics_csv_header() << '\n';

    std::size_t snapshot_index = 0;
    SimulationObserver observer;
    observer.on_diagnostics = [&](const DiagnosticsRow& row) { diag << diagnostics_csv_row(row) << '\n'; };
    observer.on_snapshot = [&](double t, const Array2D& cell_avg) {
        const auto path = config.output_dir / indexed_name("snapshot", snapshot_index);
        std::ofstream out = open_output(path);
        write_snapshot(out, {t, config.domain, SnapshotKind::cell_avg, cell_avg});
        close_output(out, path);
        if (options.histopolate) {
            const auto ppath = config.output_dir / indexed_name("points", snapshot_index);
            std::ofstream pout = open_output(ppath);
            write_snapshot(pout, {t, config.domain, SnapshotKind::points, histopolate_cell_averages(cell_avg)});
            close_output(pout, ppath);
        }
        ++snapshot_index;
    };

    SimulationResult result = simulate(config, observer);
    close_output(diag, diag_path);
    return result;
}

std::vector<ConvergenceRow> convergence(const SimConfig& config, std::vector<int> levels, int reference)
{
    if (levels.empty()) throw ConfigError("convergence: no levels given");
    std::sort(levels.begin(), levels.end());
    if (std::adjacent_find(levels.begin(), levels.end()) != levels.end())
        throw ConfigError("convergence: duplicate level");
    for (int n : levels)
        if (!is_power_of_two(n)) throw ConfigError("convergence: level " + std::to_string(n) + " is not a power of two");
    if (!is_power_of_two(reference)) throw ConfigError("convergence: reference is not a power of two");
    if (reference <= levels.back()) throw ConfigError("convergence: reference must exceed every level");

    const Array2D ref = simulate(config.at_resolution(reference)).cell_avg;
    std::vector<ConvergenceRow> table;
    for (int n : levels) {
        const Array2D sol = simulate(config.at_resolution(n)).cell_avg;
        ConvergenceRow row{n, eps_vp(sol, downscale_reference(ref, n, n)), std::nullopt};
        if (!table.empty()) {
            const auto& prev = table.back();
            row.order = std::log(prev.eps / row.eps) / std::log(static_cast<double>(n) / prev.n);
        }
        table.push_back(row);
    }
    return table;
}

void write_convergence(const SimConfig& config, const std::vector<ConvergenceRow>& table)
{
    ensure_directory(config.output_dir);
    const auto path = config.output_dir / "convergence.csv";
    std::ofstream out = open_output(path);
    out << "n,eps_vp,order\n";
    for (const auto& row : table)
        out << row.n << ',' << format_double(row.eps) << ',' << (row.order ? format_double(*row.order) : "")
            << '\n';
    close_output(out, path);
}

} // namespace afvp
