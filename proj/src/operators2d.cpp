#include "afvp/operators2d.hpp"

#include <cmath>
#include <vector>

namespace afvp {

using advect1d::af_step;
using advect1d::af_trace_interfaces;

std::string to_string(SchemeKind kind)
{
    switch (kind) {
    case SchemeKind::af2: return "af2";
    case SchemeKind::af3: return "af3";
    case SchemeKind::dd: return "dd";
    }
    return "unknown";
}

SchemeKind parse_scheme_kind(const std::string& name)
{
    if (name == "af2") return SchemeKind::af2;
    if (name == "af3") return SchemeKind::af3;
    if (name == "dd") return SchemeKind::dd;
    throw ConfigError("unknown scheme '" + name + "'");
}

namespace {

constexpr std::array<double, 3> simpson_weights{1.0, 4.0, 1.0};

double space_time_simpson(const std::array<std::array<double, 3>, 3>& f,
                          const std::array<double, 3>& speed) noexcept
{
    double sum = 0.0;
    for (int s = 0; s < 3; ++s)
        for (int p = 0; p < 3; ++p) sum += simpson_weights[s] * simpson_weights[p] * speed[p] * f[s][p];
    return sum / 36.0;
}

void check_slice(double courant, double bound, const char* op, const char* slice, int index)
{
    if (!(std::abs(courant) <= bound * (1.0 + 1e-12)))
        throw CflError(std::string(op) + " " + slice + " " + std::to_string(index), courant, bound);
}

// Strided column of an n_x by n_v array.
std::vector<double> gather_column(const Array2D& a, int i)
{
    std::vector<double> col(a.nv());
    for (int j = 0; j < a.nv(); ++j) col[j] = a(i, j);
    return col;
}

void scatter_column(Array2D& a, int i, const std::vector<double>& col)
{
    for (int j = 0; j < a.nv(); ++j) a(i, j) = col[j];
}

std::span<double> row_span(Array2D& a, int j) { return {a.row(j), static_cast<std::size_t>(a.nx())}; }
std::span<const double> row_span(const Array2D& a, int j)
{
    return {a.row(j), static_cast<std::size_t>(a.nx())};
}

} // namespace

double flux_integral_g(const std::array<std::array<double, 3>, 3>& f,
                       const std::array<double, 3>& v) noexcept
{
    return space_time_simpson(f, v);
}

double flux_integral_h(const std::array<std::array<double, 3>, 3>& f,
                       const std::array<double, 3>& speed) noexcept
{
    return space_time_simpson(f, speed);
}

InhomogeneousGrid lx_second_order(InhomogeneousGrid g, double dt)
{
    const DomainSpec& d = g.domain;
    const double ratio = dt / d.dx();
    for (int j = 0; j < d.n_v; ++j) {
        const double nu = d.v_node(j) * ratio;
        check_slice(nu, advect1d::original_courant_bound, "lx_second_order", "node row", j);
        af_step(row_span(g.nodes, j), row_span(g.x_edge_avg, j), nu);
    }
    for (int j = 0; j < d.n_v; ++j) {
        const double nu = d.v_center(j) * ratio;
        check_slice(nu, advect1d::original_courant_bound, "lx_second_order", "cell row", j);
        af_step(row_span(g.v_edge_avg, j), row_span(g.cell_avg, j), nu);
    }
    return g;
}

InhomogeneousGrid lv_second_order(InhomogeneousGrid g, const FieldProfile& field, double dt)
{
    const DomainSpec& d = g.domain;
    const double ratio = dt / d.dv();
    for (int i = 0; i < d.n_x; ++i) {
        const double mu = -field.interface[i] * ratio;
        check_slice(mu, advect1d::original_courant_bound, "lv_second_order", "node column", i);
        if (mu == 0.0) continue;
        auto iface = gather_column(g.nodes, i);
        auto avg = gather_column(g.v_edge_avg, i);
        af_step(iface, avg, mu);
        scatter_column(g.nodes, i, iface);
        scatter_column(g.v_edge_avg, i, avg);
    }
    for (int i = 0; i < d.n_x; ++i) {
        const double mu = -field.center_average(i) * ratio;
        check_slice(mu, advect1d::original_courant_bound, "lv_second_order", "cell column", i);
        if (mu == 0.0) continue;
        auto iface = gather_column(g.x_edge_avg, i);
        auto avg = gather_column(g.cell_avg, i);
        af_step(iface, avg, mu);
        scatter_column(g.x_edge_avg, i, iface);
        scatter_column(g.cell_avg, i, avg);
    }
    return g;
}

InhomogeneousGrid lx_third_order(InhomogeneousGrid g, double dt)
{
    const DomainSpec& d = g.domain;
    const int nx = d.n_x, nv = d.n_v;
    const double ratio = dt / d.dx();

    const Array2D nodes_n = g.nodes;
    const Array2D vedge_n = g.v_edge_avg;
    const Array2D cell_n = g.cell_avg;
    Array2D nodes_half(nx, nv);
    Array2D vedge_half(nx, nv);

    for (int j = 0; j < nv; ++j) {
        const double nu = d.v_node(j) * ratio;
        check_slice(nu, advect1d::original_courant_bound, "lx_third_order", "node row", j);
        af_trace_interfaces(row_span(nodes_n, j), row_span(g.x_edge_avg, j), 0.5 * nu,
                            row_span(nodes_half, j));
        af_step(row_span(g.nodes, j), row_span(g.x_edge_avg, j), nu);
    }
    for (int j = 0; j < nv; ++j) {
        const double nu = d.v_center(j) * ratio;
        check_slice(nu, advect1d::original_courant_bound, "lx_third_order", "cell row", j);
        af_trace_interfaces(row_span(vedge_n, j), row_span(cell_n, j), 0.5 * nu, row_span(vedge_half, j));
        af_trace_interfaces(row_span(vedge_n, j), row_span(cell_n, j), nu, row_span(g.v_edge_avg, j));
    }

    const std::array<const Array2D*, 3> nodes_at{&nodes_n, &nodes_half, &g.nodes};
    const std::array<const Array2D*, 3> vedge_at{&vedge_n, &vedge_half, &g.v_edge_avg};

    // flux(i, j) sits on the left edge of cell (i, j); one value per edge.
    Array2D flux(nx, nv);
    for (int j = 0; j < nv; ++j) {
        const int jp = wrap(j + 1, nv);
        const std::array<double, 3> v{d.v_node(j), d.v_center(j), d.v_min + (j + 1) * d.dv()};
        for (int i = 0; i < nx; ++i) {
            std::array<std::array<double, 3>, 3> f{};
            for (int s = 0; s < 3; ++s) {
                const double lo = (*nodes_at[s])(i, j);
                const double hi = (*nodes_at[s])(i, jp);
                f[s] = {lo, center_from_line_average((*vedge_at[s])(i, j), lo, hi), hi};
            }
            flux(i, j) = flux_integral_g(f, v);
        }
    }
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nx; ++i)
            g.cell_avg(i, j) = cell_n(i, j) - ratio * (flux(wrap(i + 1, nx), j) - flux(i, j));
    return g;
}

InhomogeneousGrid lv_third_order(InhomogeneousGrid g, const FieldProfile& field, double dt)
{
    const DomainSpec& d = g.domain;
    const int nx = d.n_x, nv = d.n_v;
    const double ratio = dt / d.dv();

    const Array2D nodes_n = g.nodes;
    const Array2D xedge_n = g.x_edge_avg;
    const Array2D cell_n = g.cell_avg;
    Array2D nodes_half = g.nodes;
    Array2D xedge_half = g.x_edge_avg;

    std::vector<double> traced(nv);
    for (int i = 0; i < nx; ++i) {
        const double mu = -field.interface[i] * ratio;
        check_slice(mu, advect1d::original_courant_bound, "lv_third_order", "node column", i);
        if (mu == 0.0) continue;
        auto iface = gather_column(g.nodes, i);
        auto avg = gather_column(g.v_edge_avg, i);
        af_trace_interfaces(iface, avg, 0.5 * mu, traced);
        scatter_column(nodes_half, i, traced);
        af_step(iface, avg, mu);
        scatter_column(g.nodes, i, iface);
        scatter_column(g.v_edge_avg, i, avg);
    }
    for (int i = 0; i < nx; ++i) {
        const double mu = -field.center_average(i) * ratio;
        check_slice(mu, advect1d::original_courant_bound, "lv_third_order", "cell column", i);
        if (mu == 0.0) continue;
        const auto iface = gather_column(xedge_n, i);
        const auto avg = gather_column(cell_n, i);
        af_trace_interfaces(iface, avg, 0.5 * mu, traced);
        scatter_column(xedge_half, i, traced);
        af_trace_interfaces(iface, avg, mu, traced);
        scatter_column(g.x_edge_avg, i, traced);
    }

    const std::array<const Array2D*, 3> nodes_at{&nodes_n, &nodes_half, &g.nodes};
    const std::array<const Array2D*, 3> xedge_at{&xedge_n, &xedge_half, &g.x_edge_avg};

    // flux(i, j) sits on the bottom edge of cell (i, j).
    Array2D flux(nx, nv);
    for (int i = 0; i < nx; ++i) {
        const int ip = wrap(i + 1, nx);
        const std::array<double, 3> speed{-field.interface[i], -field.center_point(i), -field.interface[ip]};
        for (int j = 0; j < nv; ++j) {
            std::array<std::array<double, 3>, 3> f{};
            for (int s = 0; s < 3; ++s) {
                const double lo = (*nodes_at[s])(i, j);
                const double hi = (*nodes_at[s])(ip, j);
                f[s] = {lo, center_from_line_average((*xedge_at[s])(i, j), lo, hi), hi};
            }
            flux(i, j) = flux_integral_h(f, speed);
        }
    }
    for (int j = 0; j < nv; ++j) {
        const int jp = wrap(j + 1, nv);
        for (int i = 0; i < nx; ++i) g.cell_avg(i, j) = cell_n(i, j) - ratio * (flux(i, jp) - flux(i, j));
    }
    return g;
}

HomogeneousGrid lx_dd(HomogeneousGrid g, double dt, const advect1d::DistributionParams& params)
{
    const DomainSpec& d = g.domain;
    const double ratio = 2.0 * dt / d.dx();
    const double hv = 0.5 * d.dv();
    for (int b = 0; b < 2 * d.n_v; ++b) {
        const double eta = (d.v_min + b * hv) * ratio;
        check_slice(eta, advect1d::discrepancy_eta_bound, "lx_dd", "row", b);
        advect1d::dd_step(row_span(g.points, b), eta, params);
    }
    return g;
}

HomogeneousGrid lv_dd(HomogeneousGrid g, const FieldProfile& field, double dt,
                      const advect1d::DistributionParams& params)
{
    const DomainSpec& d = g.domain;
    const double ratio = 2.0 * dt / d.dv();
    const auto e = field.stations();
    for (int a = 0; a < 2 * d.n_x; ++a) {
        const double eta = -e[a] * ratio;
        check_slice(eta, advect1d::discrepancy_eta_bound, "lv_dd", "column", a);
        if (eta == 0.0) continue;
        auto col = gather_column(g.points, a);
        advect1d::dd_step(col, eta, params);
        scatter_column(g.points, a, col);
    }
    return g;
}

} // namespace afvp
