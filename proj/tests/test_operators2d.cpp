#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "afvp/operators2d.hpp"
#include "test_support.hpp"

using namespace afvp;
constexpr double pi = std::numbers::pi;

namespace {

using Nine = std::array<std::array<double, 3>, 3>;

Nine filled(double value)
{
    Nine f{};
    for (auto& row : f) row.fill(value);
    return f;
}

double cell_sum(const Array2D& a)
{
    double s = 0.0;
    for (double x : a.values()) s += x;
    return s;
}

double max_diff(const Array2D& a, const Array2D& b)
{
    return afvp::testing::max_abs_diff(a.values(), b.values());
}

// Exact cell averages of f0(x - v t, v) for the Landau data: analytic in x,
// 5-point Gauss-Legendre on 8 sub-intervals in v.
Array2D shifted_landau_averages(const DomainSpec& d, const InitialCondition& ic, double t)
{
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};
    const double k = ic.wavenumber, norm = 1.0 / std::sqrt(2.0 * pi);
    Array2D out(d.n_x, d.n_v);
    const int sub = 8;
    for (int j = 0; j < d.n_v; ++j) {
        for (int i = 0; i < d.n_x; ++i) {
            const double x0 = d.x_node(i), x1 = x0 + d.dx();
            double acc = 0.0;
            for (int s = 0; s < sub; ++s) {
                const double h = d.dv() / sub;
                const double vm = d.v_node(j) + (s + 0.5) * h;
                for (int q = 0; q < 5; ++q) {
                    const double v = vm + 0.5 * h * gx[q];
                    const double xavg = 1.0 + ic.amplitude * (std::sin(k * (x1 - v * t)) - std::sin(k * (x0 - v * t))) / (k * d.dx());
                    acc += 0.5 * h * gw[q] * norm * std::exp(-0.5 * v * v) * xavg;
                }
            }
            out(i, j) = acc / d.dv();
        }
    }
    return out;
}

double l1_relative(const Array2D& a, const Array2D& ref)
{
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < a.values().size(); ++k) {
        num += std::abs(a.values()[k] - ref.values()[k]);
        den += std::abs(ref.values()[k]);
    }
    return num / den;
}

// Advects by L_X only until t (either sign) in steps of at most |dt|.
template <class Step>
void stream(double t, double dt, Step step_fn)
{
    const double sign = t < 0.0 ? -1.0 : 1.0;
    double done = 0.0;
    while (std::abs(t) - done > 1e-14) {
        const double h = std::min(dt, std::abs(t) - done);
        step_fn(sign * h);
        done += h;
    }
}

double streaming_error(SchemeKind kind, int n, double t)
{
    const auto ic = InitialCondition::strong_landau();
    const auto d = InitialCondition::preset_domain(ProblemKind::weak_landau, n, n);
    const double dt = 0.9 * d.dx() / 5.0;
    if (kind == SchemeKind::dd) {
        auto g = init_homogeneous(d, ic);
        stream(t, 0.5 * dt, [&](double h) { g = lx_dd(std::move(g), h); });
        return l1_relative(simpson_cell_averages(g), shifted_landau_averages(d, ic, t));
    }
    auto g = init_inhomogeneous(d, ic, InitQuadrature::analytic_quadrature);
    stream(t, dt, [&](double h) {
        g = kind == SchemeKind::af3 ? lx_third_order(std::move(g), h) : lx_second_order(std::move(g), h);
    });
    return l1_relative(g.cell_avg, shifted_landau_averages(d, ic, t));
}

FieldProfile sine_field(const DomainSpec& d, double amp, FieldLayout layout)
{
    std::vector<double> st(2 * d.n_x);
    for (int m = 0; m < 2 * d.n_x; ++m) st[m] = amp * std::sin(2.0 * pi * m / (2.0 * d.n_x));
    return field_to_profile(st, layout);
}

} // namespace

TEST_CASE("scheme names")
{
    for (auto k : {SchemeKind::af2, SchemeKind::af3, SchemeKind::dd}) CHECK(parse_scheme_kind(to_string(k)) == k);
    CHECK_THROWS_AS(parse_scheme_kind("af4"), ConfigError);
}

TEST_CASE("nine-point flux integrals")
{
    CHECK(flux_integral_g(filled(1.0), {-1.0, 0.0, 1.0}) == doctest::Approx(0.0));
    CHECK(flux_integral_g(filled(1.0), {1.0, 1.0, 1.0}) == doctest::Approx(1.0));
    // f = v on (0, 1/2, 1): Simpson is exact for v^2.
    Nine f{};
    for (auto& row : f) row = {0.0, 0.5, 1.0};
    CHECK(flux_integral_g(f, {0.0, 0.5, 1.0}) == doctest::Approx(1.0 / 3.0));
    // Every time stage carries Simpson weights 1, 4, 1: f = t^2 on (0, 1/2, 1).
    Nine ft{};
    ft[0].fill(0.0);
    ft[1].fill(0.25);
    ft[2].fill(1.0);
    CHECK(flux_integral_g(ft, {1.0, 1.0, 1.0}) == doctest::Approx(1.0 / 3.0));

    CHECK(flux_integral_h(filled(3.0), {0.0, 0.0, 0.0}) == 0.0);
    CHECK(flux_integral_h(filled(1.0), {1.0, 1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(flux_integral_h(f, {0.0, 0.5, 1.0}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("zero step and zero field are identities")
{
    const auto ic = InitialCondition::strong_landau();
    const auto d = InitialCondition::preset_domain(ProblemKind::weak_landau, 8, 8);
    const auto g = init_inhomogeneous(d, ic, InitQuadrature::analytic_quadrature);
    const auto h = init_homogeneous(d, ic);
    const auto zi = FieldProfile::zero(d.n_x, FieldLayout::inhomogeneous);
    const auto zh = FieldProfile::zero(d.n_x, FieldLayout::homogeneous);
    const auto e = sine_field(d, 0.3, FieldLayout::inhomogeneous);

    for (auto* op : {&lx_second_order, &lx_third_order}) {
        const auto r = (*op)(g, 0.0);
        CHECK(r.nodes == g.nodes);
        CHECK(r.x_edge_avg == g.x_edge_avg);
        CHECK(r.v_edge_avg == g.v_edge_avg);
        CHECK(r.cell_avg == g.cell_avg);
    }
    for (auto* op : {&lv_second_order, &lv_third_order}) {
        const auto r0 = (*op)(g, zi, 0.3);
        CHECK(r0.cell_avg == g.cell_avg);
        CHECK(r0.nodes == g.nodes);
        const auto r1 = (*op)(g, e, 0.0);
        CHECK(r1.cell_avg == g.cell_avg);
        CHECK(r1.x_edge_avg == g.x_edge_avg);
    }
    CHECK(lx_dd(h, 0.0).points == h.points);
    CHECK(lv_dd(h, zh, 0.2).points == h.points);
}

TEST_CASE("x-independent data is unchanged by L_X")
{
    const DomainSpec d{0.0, 1.0, -1.0, 1.0, 8, 8};
    InhomogeneousGrid g(d);
    HomogeneousGrid h(d);
    for (int j = 0; j < d.n_v; ++j)
        for (int i = 0; i < d.n_x; ++i) {
            g.nodes(i, j) = std::exp(-d.v_node(j) * d.v_node(j));
            g.x_edge_avg(i, j) = g.nodes(i, j);
            g.v_edge_avg(i, j) = 0.3 + d.v_center(j);
            g.cell_avg(i, j) = 0.3 + d.v_center(j);
        }
    for (int b = 0; b < 2 * d.n_v; ++b)
        for (int a = 0; a < 2 * d.n_x; ++a) h.points(a, b) = 1.0 + 0.1 * b;
    for (auto* op : {&lx_second_order, &lx_third_order}) {
        const auto r = (*op)(g, 0.1);
        CHECK(max_diff(r.cell_avg, g.cell_avg) < 1e-15);
        CHECK(max_diff(r.nodes, g.nodes) < 1e-15);
    }
    CHECK(max_diff(lx_dd(h, 0.05).points, h.points) < 1e-14);
}

TEST_CASE("unit Courant number shifts a row by one cell")
{
    // Row j = 0 sits at v = -1; dx = 0.5 and dt = 0.5 give nu = -1 there.
    const DomainSpec d{0.0, 4.0, -1.0, 1.0, 8, 8};
    InhomogeneousGrid g(d);
    const auto r = afvp::testing::random_values(4 * 64, 3);
    for (int k = 0; k < 64; ++k) {
        g.nodes.values()[k] = r[k];
        g.x_edge_avg.values()[k] = r[64 + k];
        g.v_edge_avg.values()[k] = r[128 + k];
        g.cell_avg.values()[k] = r[192 + k];
    }
    const auto out = lx_second_order(g, 0.5);
    for (int i = 0; i < 8; ++i) {
        CHECK(out.nodes(i, 0) == g.nodes(wrap(i + 1, 8), 0));
        CHECK(out.x_edge_avg(i, 0) == g.x_edge_avg(wrap(i + 1, 8), 0));
    }
}

TEST_CASE("second and third order share nodes and edges")
{
    const auto ic = InitialCondition::strong_landau();
    const auto d = InitialCondition::preset_domain(ProblemKind::weak_landau, 16, 16);
    const auto g = init_inhomogeneous(d, ic, InitQuadrature::analytic_quadrature);
    const double dt = 0.7 * d.dx() / 5.0;
    const auto a = lx_second_order(g, dt);
    const auto b = lx_third_order(g, dt);
    CHECK(a.nodes == b.nodes);
    CHECK(a.x_edge_avg == b.x_edge_avg);
    CHECK(a.v_edge_avg == b.v_edge_avg);
    CHECK(max_diff(a.cell_avg, b.cell_avg) > 0.0);

    const auto e = sine_field(d, 0.4, FieldLayout::inhomogeneous);
    const auto c = lv_second_order(g, e, 0.1);
    const auto f = lv_third_order(g, e, 0.1);
    CHECK(c.nodes == f.nodes);
    CHECK(c.x_edge_avg == f.x_edge_avg);
    CHECK(c.v_edge_avg == f.v_edge_avg);
}

TEST_CASE("every operator conserves the total")
{
    const auto ic = InitialCondition::strong_landau();
    const auto d = InitialCondition::preset_domain(ProblemKind::weak_landau, 16, 16);
    const auto g = init_inhomogeneous(d, ic, InitQuadrature::analytic_quadrature);
    const auto h = init_homogeneous(d, ic);
    const auto ei = sine_field(d, 0.5, FieldLayout::inhomogeneous);
    const auto eh = sine_field(d, 0.5, FieldLayout::homogeneous);
    const double dt = 0.4 * d.dx() / 5.0;
    const double m0 = cell_sum(g.cell_avg);
    const double mh = cell_sum(simpson_cell_averages(h));

    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    CHECK(rel(cell_sum(lx_second_order(g, dt).cell_avg), m0) < 1e-13);
    CHECK(rel(cell_sum(lx_third_order(g, -dt).cell_avg), m0) < 1e-13);
    CHECK(rel(cell_sum(lv_second_order(g, ei, 0.3).cell_avg), m0) < 1e-13);
    CHECK(rel(cell_sum(lv_third_order(g, ei, -0.3).cell_avg), m0) < 1e-13);
    CHECK(rel(cell_sum(simpson_cell_averages(lx_dd(h, 0.5 * dt))), mh) < 1e-13);
    CHECK(rel(cell_sum(simpson_cell_averages(lv_dd(h, eh, 0.15))), mh) < 1e-13);
}

TEST_CASE("uniform field translates every column alike")
{
    const auto ic = InitialCondition::strong_landau();
    const auto d = InitialCondition::preset_domain(ProblemKind::weak_landau, 8, 16);
    const auto g = init_inhomogeneous(d, ic, InitQuadrature::analytic_quadrature);
    std::vector<double> st(2 * d.n_x, -0.5);
    const auto e = field_to_profile(st, FieldLayout::inhomogeneous);
    // a = -E = 0.5, dt = dv / a: exact one-cell shift in v.
    const auto r = lv_second_order(g, e, d.dv() / 0.5);
    for (int i = 0; i < d.n_x; ++i)
        for (int j = 0; j < d.n_v; ++j) {
            CHECK(r.cell_avg(i, j) == doctest::Approx(g.cell_avg(i, wrap(j - 1, d.n_v))).epsilon(1e-14));
            CHECK(r.nodes(i, j) == doctest::Approx(g.nodes(i, wrap(j - 1, d.n_v))).epsilon(1e-14));
        }
}

TEST_CASE("CFL violations name the slice")
{
    const auto d = InitialCondition::preset_domain(ProblemKind::weak_landau, 8, 8);
    const auto g = init_inhomogeneous(d, InitialCondition::weak_landau(), InitQuadrature::analytic_quadrature);
    try {
        (void)lx_second_order(g, 2.0 * d.dx() / 5.0);
        FAIL("expected a CFL error");
    } catch (const CflError& e) {
        CHECK(std::string(e.what()).find("lx_second_order") != std::string::npos);
        CHECK(e.bound() == 1.0);
    }
    const auto h = init_homogeneous(d, InitialCondition::weak_landau());
    CHECK_THROWS_AS(lx_dd(h, 0.6 * d.dx() / 5.0), CflError);
}

TEST_CASE("free streaming against the exact shift")
{
    for (auto kind : {SchemeKind::af2, SchemeKind::af3, SchemeKind::dd}) {
        const double e16 = streaming_error(kind, 16, 1.0);
        const double e32 = streaming_error(kind, 32, 1.0);
        const double e64 = streaming_error(kind, 64, 1.0);
        const double p = std::log2(e32 / e64);
        MESSAGE(to_string(kind) << " errors " << e16 << " " << e32 << " " << e64 << " orders "
                                << std::log2(e16 / e32) << " " << p);
        if (kind == SchemeKind::af2)
            CHECK(p > 1.8);
        else
            CHECK(p >= 2.9);
    }
}

TEST_CASE("backward streaming retraces the exact shift")
{
    for (auto kind : {SchemeKind::af3, SchemeKind::dd}) {
        const double e32 = streaming_error(kind, 32, -1.0);
        const double e64 = streaming_error(kind, 64, -1.0);
        MESSAGE(to_string(kind) << " backward order " << std::log2(e32 / e64));
        CHECK(std::log2(e32 / e64) >= 2.9);
        CHECK(e64 == doctest::Approx(streaming_error(kind, 64, 1.0)).epsilon(1e-6));
    }
}
