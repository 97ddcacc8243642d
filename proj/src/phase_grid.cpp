#include "afvp/phase_grid.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace afvp {

std::string CflError::format(const std::string& where, double courant, double bound)
{
    std::ostringstream os;
    os << "CFL violation in " << where << ": |courant| = " << std::abs(courant)
       << " exceeds bound " << bound;
    return os.str();
}

void DomainSpec::validate() const
{
    if (!(x_max > x_min)) throw ConfigError("domain: x_max must exceed x_min");
    if (!(v_max > v_min)) throw ConfigError("domain: v_max must exceed v_min");
    if (n_x < 4 || n_v < 4) throw ConfigError("domain: n_x and n_v must be at least 4");
}

double InitialCondition::operator()(double x, double v) const noexcept
{
    const double perturbation = 1.0 + amplitude * std::cos(wavenumber * x);
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    if (kind == ProblemKind::two_stream) {
        const double vp = v - beam_velocity;
        const double vm = v + beam_velocity;
        return 0.5 * norm * (std::exp(-0.5 * vp * vp) + std::exp(-0.5 * vm * vm)) * perturbation;
    }
    return norm * std::exp(-0.5 * v * v) * perturbation;
}

void InitialCondition::validate_against(const DomainSpec& domain) const
{
    if (!(amplitude >= 0.0)) throw ConfigError("initial condition: amplitude must be >= 0");
    const double periods = wavenumber * domain.length_x() / (2.0 * std::numbers::pi);
    if (!(std::abs(periods - std::round(periods)) <= 1e-9 * std::max(1.0, std::abs(periods))))
        throw ConfigError("initial condition: k * (x_max - x_min) / (2 pi) must be an integer");
}

InitialCondition InitialCondition::weak_landau()
{
    return {ProblemKind::weak_landau, 1e-3, 0.5, 0.0};
}

InitialCondition InitialCondition::strong_landau()
{
    return {ProblemKind::strong_landau, 0.5, 0.5, 0.0};
}

InitialCondition InitialCondition::two_stream()
{
    return {ProblemKind::two_stream, 1e-3, 0.2, 3.0};
}

DomainSpec InitialCondition::preset_domain(ProblemKind kind, int n_x, int n_v)
{
    constexpr double pi = std::numbers::pi;
    if (kind == ProblemKind::two_stream) return {-5.0 * pi, 5.0 * pi, -10.0, 10.0, n_x, n_v};
    return {-2.0 * pi, 2.0 * pi, -5.0, 5.0, n_x, n_v};
}

std::string to_string(ProblemKind kind)
{
    switch (kind) {
    case ProblemKind::weak_landau: return "weak_landau";
    case ProblemKind::strong_landau: return "strong_landau";
    case ProblemKind::two_stream: return "two_stream";
    }
    return "unknown";
}

ProblemKind parse_problem_kind(const std::string& name)
{
    if (name == "weak_landau") return ProblemKind::weak_landau;
    if (name == "strong_landau") return ProblemKind::strong_landau;
    if (name == "two_stream") return ProblemKind::two_stream;
    throw ConfigError("unknown problem '" + name + "'");
}

std::string to_string(InitQuadrature q)
{
    return q == InitQuadrature::simpson ? "simpson" : "analytic_quadrature";
}

InitQuadrature parse_init_quadrature(const std::string& name)
{
    if (name == "analytic_quadrature") return InitQuadrature::analytic_quadrature;
    if (name == "simpson") return InitQuadrature::simpson;
    throw ConfigError("unknown init_quadrature '" + name + "'");
}

double simpson_line_average(double endpoint_a, double midpoint, double endpoint_b) noexcept
{
    return (endpoint_a + 4.0 * midpoint + endpoint_b) / 6.0;
}

double simpson_cell_average(std::span<const double, 4> corners,
                            std::span<const double, 4> edge_midpoints, double center) noexcept
{
    const double c = corners[0] + corners[1] + corners[2] + corners[3];
    const double e = edge_midpoints[0] + edge_midpoints[1] + edge_midpoints[2] + edge_midpoints[3];
    return (c + 4.0 * e + 16.0 * center) / 36.0;
}

double center_from_line_average(double avg, double left_end, double right_end) noexcept
{
    return (6.0 * avg - left_end - right_end) / 4.0;
}

namespace {

// 5-point Gauss-Legendre rule mapped to [0, 1].
struct GaussLegendre5 {
    std::array<double, 5> nodes;
    std::array<double, 5> weights;
};

GaussLegendre5 gauss_legendre5()
{
    const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
    const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
    const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
    const std::array<double, 5> x{-b, -a, 0.0, a, b};
    const std::array<double, 5> w{wb, wa, 128.0 / 225.0, wa, wb};
    GaussLegendre5 rule{};
    for (int k = 0; k < 5; ++k) {
        rule.nodes[k] = 0.5 * (x[k] + 1.0);
        rule.weights[k] = 0.5 * w[k];
    }
    return rule;
}

} // namespace

InhomogeneousGrid init_inhomogeneous(const DomainSpec& domain, const InitialCondition& ic,
                                     InitQuadrature quadrature)
{
    domain.validate();
    ic.validate_against(domain);

    InhomogeneousGrid grid(domain);
    const double dx = domain.dx();
    const double dv = domain.dv();

    if (quadrature == InitQuadrature::analytic_quadrature) {
        const auto gl = gauss_legendre5();
        for (int j = 0; j < domain.n_v; ++j) {
            for (int i = 0; i < domain.n_x; ++i) {
                const double x0 = domain.x_node(i);
                const double v0 = domain.v_node(j);
                grid.nodes(i, j) = ic(x0, v0);
                double xa = 0.0, va = 0.0, ca = 0.0;
                for (int p = 0; p < 5; ++p) {
                    xa += gl.weights[p] * ic(x0 + gl.nodes[p] * dx, v0);
                    va += gl.weights[p] * ic(x0, v0 + gl.nodes[p] * dv);
                    for (int q = 0; q < 5; ++q)
                        ca += gl.weights[p] * gl.weights[q]
                              * ic(x0 + gl.nodes[p] * dx, v0 + gl.nodes[q] * dv);
                }
                grid.x_edge_avg(i, j) = xa;
                grid.v_edge_avg(i, j) = va;
                grid.cell_avg(i, j) = ca;
            }
        }
        return grid;
    }

    // Simpson mode: every average is built from the half-spaced point lattice.
    const HomogeneousGrid lattice = init_homogeneous(domain, ic);
    const Array2D& p = lattice.points;
    const int mx = 2 * domain.n_x;
    const int mv = 2 * domain.n_v;
    for (int j = 0; j < domain.n_v; ++j) {
        for (int i = 0; i < domain.n_x; ++i) {
            const int a = 2 * i, b = 2 * j;
            const int ar = wrap(a + 2, mx), bt = wrap(b + 2, mv);
            grid.nodes(i, j) = p(a, b);
            grid.x_edge_avg(i, j) = simpson_line_average(p(a, b), p(a + 1, b), p(ar, b));
            grid.v_edge_avg(i, j) = simpson_line_average(p(a, b), p(a, b + 1), p(a, bt));
            const std::array<double, 4> corners{p(a, b), p(ar, b), p(a, bt), p(ar, bt)};
            const std::array<double, 4> edges{p(a + 1, b), p(a + 1, bt), p(a, b + 1), p(ar, b + 1)};
            grid.cell_avg(i, j) = simpson_cell_average(corners, edges, p(a + 1, b + 1));
        }
    }
    return grid;
}

HomogeneousGrid init_homogeneous(const DomainSpec& domain, const InitialCondition& ic)
{
    domain.validate();
    ic.validate_against(domain);

    HomogeneousGrid grid(domain);
    const double hx = 0.5 * domain.dx();
    const double hv = 0.5 * domain.dv();
    for (int b = 0; b < 2 * domain.n_v; ++b) {
        const double v = domain.v_min + b * hv;
        for (int a = 0; a < 2 * domain.n_x; ++a) grid.points(a, b) = ic(domain.x_min + a * hx, v);
    }
    return grid;
}

Array2D simpson_cell_averages(const HomogeneousGrid& grid)
{
    const DomainSpec& d = grid.domain;
    const Array2D& p = grid.points;
    const int mx = 2 * d.n_x;
    const int mv = 2 * d.n_v;
    Array2D out(d.n_x, d.n_v);
    for (int j = 0; j < d.n_v; ++j) {
        for (int i = 0; i < d.n_x; ++i) {
            const int a = 2 * i, b = 2 * j;
            const int ar = wrap(a + 2, mx), bt = wrap(b + 2, mv);
            const std::array<double, 4> corners{p(a, b), p(ar, b), p(a, bt), p(ar, bt)};
            const std::array<double, 4> edges{p(a + 1, b), p(a + 1, bt), p(a, b + 1), p(ar, b + 1)};
            out(i, j) = simpson_cell_average(corners, edges, p(a + 1, b + 1));
        }
    }
    return out;
}

double histopolate_cell(const std::array<std::array<double, 3>, 3>& f) noexcept
{
    const double faces = f[2][1] + f[0][1] + f[1][2] + f[1][0];
    const double diagonals = f[2][2] + f[2][0] + f[0][2] + f[0][0];
    return (676.0 * f[1][1] - 26.0 * faces + diagonals) / 576.0;
}

double histopolate_line(double left, double center, double right) noexcept
{
    return (26.0 * center - left - right) / 24.0;
}

Array2D histopolate_cell_averages(const Array2D& averages)
{
    Array2D out(averages.nx(), averages.nv());
    for (int j = 0; j < averages.nv(); ++j) {
        for (int i = 0; i < averages.nx(); ++i) {
            std::array<std::array<double, 3>, 3> nb{};
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) nb[di + 1][dj + 1] = averages.at_wrapped(i + di, j + dj);
            out(i, j) = histopolate_cell(nb);
        }
    }
    return out;
}

std::string format_double(double value)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

void write_snapshot(std::ostream& out, const Snapshot& s)
{
    const DomainSpec& d = s.domain;
    out << "# t=" << format_double(s.t) << " nx=" << s.values.nx() << " nv=" << s.values.nv()
        << " xmin=" << format_double(d.x_min) << " xmax=" << format_double(d.x_max)
        << " vmin=" << format_double(d.v_min) << " vmax=" << format_double(d.v_max)
        << " kind=" << (s.kind == SnapshotKind::points ? "points" : "cell_avg") << '\n';
    for (int j = 0; j < s.values.nv(); ++j) {
        for (int i = 0; i < s.values.nx(); ++i) {
            if (i > 0) out << ',';
            out << format_double(s.values(i, j));
        }
        out << '\n';
    }
    if (!out) throw IoError("failed to write snapshot");
}

namespace {

double parse_number(const std::string& text)
{
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw IoError("snapshot: malformed number '" + text + "'");
    return value;
}

} // namespace

Snapshot read_snapshot(std::istream& in)
{
    std::string header;
    if (!std::getline(in, header) || header.rfind("# ", 0) != 0)
        throw IoError("snapshot: missing header line");

    Snapshot s;
    int nx = -1, nv = -1;
    std::istringstream hs(header.substr(2));
    std::string field;
    while (hs >> field) {
        const auto eq = field.find('=');
        if (eq == std::string::npos) throw IoError("snapshot: malformed header field '" + field + "'");
        const std::string key = field.substr(0, eq);
        const std::string val = field.substr(eq + 1);
        if (key == "t") s.t = parse_number(val);
        else if (key == "nx") nx = static_cast<int>(parse_number(val));
        else if (key == "nv") nv = static_cast<int>(parse_number(val));
        else if (key == "xmin") s.domain.x_min = parse_number(val);
        else if (key == "xmax") s.domain.x_max = parse_number(val);
        else if (key == "vmin") s.domain.v_min = parse_number(val);
        else if (key == "vmax") s.domain.v_max = parse_number(val);
        else if (key == "kind") {
            if (val == "points") s.kind = SnapshotKind::points;
            else if (val == "cell_avg") s.kind = SnapshotKind::cell_avg;
            else throw IoError("snapshot: unknown kind '" + val + "'");
        } else throw IoError("snapshot: unknown header key '" + key + "'");
    }
    if (nx <= 0 || nv <= 0) throw IoError("snapshot: header lacks nx/nv");
    s.domain.n_x = nx;
    s.domain.n_v = nv;
    s.values = Array2D(nx, nv);

    std::string line;
    for (int j = 0; j < nv; ++j) {
        if (!std::getline(in, line)) throw IoError("snapshot: truncated data");
        std::istringstream ls(line);
        std::string cell;
        int i = 0;
        while (std::getline(ls, cell, ',')) {
            if (i >= nx) throw IoError("snapshot: too many columns");
            s.values(i++, j) = parse_number(cell);
        }
        if (i != nx) throw IoError("snapshot: too few columns");
    }
    return s;
}

} // namespace afvp
