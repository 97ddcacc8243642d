#include "afvp/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace afvp {

std::string diagnostics_csv_header()
{
    return "t,electric_energy,mass,momentum,l2norm,kinetic_energy,total_energy,rho_dot_e";
}

std::string diagnostics_csv_row(const DiagnosticsRow& r)
{
    std::string s;
    for (double v : {r.t, r.electric_energy, r.mass, r.momentum, r.l2norm, r.kinetic_energy,
                     r.total_energy, r.rho_dot_e}) {
        if (!s.empty()) s += ',';
        s += format_double(v);
    }
    return s;
}

HomogeneousGrid to_point_lattice(const InhomogeneousGrid& g)
{
    const DomainSpec& d = g.domain;
    const int nx = d.n_x, nv = d.n_v;
    HomogeneousGrid lattice(d);
    Array2D& p = lattice.points;
    for (int j = 0; j < nv; ++j) {
        const int jp = wrap(j + 1, nv);
        for (int i = 0; i < nx; ++i) {
            const int ip = wrap(i + 1, nx);
            p(2 * i, 2 * j) = g.nodes(i, j);
            p(2 * i + 1, 2 * j) = center_from_line_average(g.x_edge_avg(i, j), g.nodes(i, j), g.nodes(ip, j));
            p(2 * i, 2 * j + 1) = center_from_line_average(g.v_edge_avg(i, j), g.nodes(i, j), g.nodes(i, jp));
        }
    }
    const int mx = 2 * nx, mv = 2 * nv;
    for (int j = 0; j < nv; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int a = 2 * i, b = 2 * j;
            const int ar = wrap(a + 2, mx), bt = wrap(b + 2, mv);
            const double corners = p(a, b) + p(ar, b) + p(a, bt) + p(ar, bt);
            const double edges = p(a + 1, b) + p(a + 1, bt) + p(a, b + 1) + p(ar, b + 1);
            p(a + 1, b + 1) = (36.0 * g.cell_avg(i, j) - corners - 4.0 * edges) / 16.0;
        }
    }
    return lattice;
}

namespace {

// Composite Simpson weight in units of the cell width.
inline double simpson_station_weight(int m) noexcept { return m % 2 == 0 ? 1.0 / 3.0 : 2.0 / 3.0; }

DiagnosticsRow evaluate(const DomainSpec& d, const Array2D& cell_avg, const HomogeneousGrid& lattice,
                        const std::vector<double>& e_stations, const std::vector<double>& rho_stations,
                        double t)
{
    DiagnosticsRow row;
    row.t = t;
    const double dx = d.dx(), dv = d.dv();

    double mass = 0.0, momentum = 0.0;
    for (int j = 0; j < d.n_v; ++j) {
        double column = 0.0;
        for (int i = 0; i < d.n_x; ++i) column += cell_avg(i, j);
        mass += column;
        momentum += d.v_center(j) * column;
    }
    row.mass = dx * dv * mass;
    row.momentum = dx * dv * momentum;

    double l2 = 0.0, kinetic = 0.0;
    const double hv = 0.5 * dv;
    for (int b = 0; b < 2 * d.n_v; ++b) {
        const double v = d.v_min + b * hv;
        const double wb = simpson_station_weight(b);
        const double* f = lattice.points.row(b);
        double l2_row = 0.0, mass_row = 0.0;
        for (int a = 0; a < 2 * d.n_x; ++a) {
            const double wa = simpson_station_weight(a);
            l2_row += wa * f[a] * f[a];
            mass_row += wa * f[a];
        }
        l2 += wb * l2_row;
        kinetic += wb * v * v * mass_row;
    }
    row.l2norm = dx * dv * l2;
    row.kinetic_energy = dx * dv * kinetic;

    double energy = 0.0, rho_e = 0.0;
    for (std::size_t m = 0; m < e_stations.size(); ++m) {
        energy += simpson_station_weight(static_cast<int>(m)) * e_stations[m] * e_stations[m];
        rho_e += rho_stations[m] * e_stations[m];
    }
    row.electric_energy = dx * energy;
    row.total_energy = row.kinetic_energy + row.electric_energy;
    row.rho_dot_e = rho_e;
    return row;
}

bool is_power_of_two(int n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

DiagnosticsRow conserved_quantities(const InhomogeneousState& s, double t)
{
    return evaluate(s.grid.domain, s.grid.cell_avg, to_point_lattice(s.grid), s.field.stations(),
                    density_inhomogeneous(s.grid).stations(), t);
}

DiagnosticsRow conserved_quantities(const HomogeneousState& s, double t)
{
    return evaluate(s.grid.domain, simpson_cell_averages(s.grid), s.grid, s.field.stations(),
                    density_homogeneous(s.grid).stations(), t);
}

Array2D downscale_reference(const Array2D& reference, int target_nx, int target_nv)
{
    for (int n : {reference.nx(), reference.nv(), target_nx, target_nv})
        if (!is_power_of_two(n)) throw ConfigError("downscale_reference: sizes must be powers of two");
    if (target_nx > reference.nx() || target_nv > reference.nv())
        throw ConfigError("downscale_reference: target finer than reference");

    Array2D current = reference;
    while (current.nx() > target_nx || current.nv() > target_nv) {
        const int fx = current.nx() > target_nx ? 2 : 1;
        const int fv = current.nv() > target_nv ? 2 : 1;
        Array2D next(current.nx() / fx, current.nv() / fv);
        for (int j = 0; j < next.nv(); ++j) {
            for (int i = 0; i < next.nx(); ++i) {
                double sum = 0.0;
                for (int dj = 0; dj < fv; ++dj)
                    for (int di = 0; di < fx; ++di) sum += current(fx * i + di, fv * j + dj);
                next(i, j) = sum / (fx * fv);
            }
        }
        current = std::move(next);
    }
    return current;
}

double eps_vp(const Array2D& solution, const Array2D& reference_scaled)
{
    if (solution.nx() != reference_scaled.nx() || solution.nv() != reference_scaled.nv())
        throw ConfigError("eps_vp: shape mismatch");
    double num = 0.0, den = 0.0;
    const auto& a = solution.values();
    const auto& b = reference_scaled.values();
    for (std::size_t k = 0; k < a.size(); ++k) {
        num += std::abs(a[k] - b[k]);
        den += std::abs(b[k]);
    }
    if (den == 0.0) throw std::domain_error("eps_vp: reference has zero L1 norm");
    return num / den;
}

namespace {

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
    }
    if (sxx == 0.0) throw std::runtime_error("fit_exponential_rate: degenerate time window");
    return sxy / sxx;
}

} // namespace

double fit_exponential_rate(std::span<const double> t, std::span<const double> energy, double t0,
                            double t1, RateFitMode mode)
{
    if (t.size() != energy.size()) throw ConfigError("fit_exponential_rate: size mismatch");

    std::vector<std::size_t> window;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= t0 && t[k] <= t1) window.push_back(k);
    if (window.size() < 3) throw std::runtime_error("fit_exponential_rate: fewer than 3 samples in window");

    const auto [lo, hi] = std::minmax_element(energy.begin() + window.front(),
                                              energy.begin() + window.back() + 1);
    if (*hi - *lo <= 1e-14 * std::abs(*hi)) return 0.0;

    std::vector<double> x, y;
    if (mode == RateFitMode::growth) {
        for (std::size_t k : window) {
            if (!(energy[k] > 0.0)) throw std::runtime_error("fit_exponential_rate: non-positive energy");
            x.push_back(t[k]);
            y.push_back(0.5 * std::log(energy[k]));
        }
        return least_squares_slope(x, y);
    }

    for (std::size_t k : window) {
        if (k == 0 || k + 1 >= t.size()) continue;
        if (!(energy[k] > energy[k - 1] && energy[k] >= energy[k + 1])) continue;
        // Parabola through the three log samples around the maximum.
        const double ta = t[k - 1], tb = t[k], tc = t[k + 1];
        const double ya = std::log(energy[k - 1]), yb = std::log(energy[k]), yc = std::log(energy[k + 1]);
        const double d1 = (yb - ya) / (tb - ta);
        const double d2 = (yc - yb) / (tc - tb);
        const double curv = (d2 - d1) / (tc - ta);
        double tp = tb, yp = yb;
        if (curv < 0.0) {
            // y = yb + d1 (s - tb) + curv (s - ta)(s - tb) with s measured in t.
            const double slope_b = d1 + curv * (tb - ta);
            tp = tb - slope_b / (2.0 * curv);
            yp = yb + d1 * (tp - tb) + curv * (tp - ta) * (tp - tb);
        }
        x.push_back(tp);
        y.push_back(0.5 * yp);
    }
    if (x.size() < 3) throw std::runtime_error("fit_exponential_rate: fewer than 3 peaks in window");
    return -least_squares_slope(x, y);
}

} // namespace afvp
