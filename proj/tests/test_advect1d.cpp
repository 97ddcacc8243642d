#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "afvp/advect1d.hpp"
#include "afvp/core.hpp"
#include "test_support.hpp"

using namespace afvp;
using namespace afvp::advect1d;
using afvp::testing::random_values;

namespace {

// Exact transport of the piecewise quadratic reconstruction, written as
// integrals of reconstruct_eval (Simpson is exact on quadratics).
double transported_average(double ul, double a, double ur, double ul_up, double a_up, double ur_up, double nu)
{
    auto mean = [](double l, double m, double r, double z0, double z1) {
        const double zm = 0.5 * (z0 + z1);
        return (reconstruct_eval(l, m, r, z0) + 4.0 * reconstruct_eval(l, m, r, zm) + reconstruct_eval(l, m, r, z1)) / 6.0;
    };
    return (1.0 - nu) * mean(ul, a, ur, 0.0, 1.0 - nu) + nu * mean(ul_up, a_up, ur_up, 1.0 - nu, 1.0);
}

std::pair<std::vector<double>, std::vector<double>> flux_form_oracle(const std::vector<double>& u,
                                                                     const std::vector<double>& a, double nu)
{
    const int n = static_cast<int>(u.size());
    std::vector<double> nu_out(n), na_out(n);
    for (int k = 0; k < n; ++k) {
        const int km = wrap(k - 1, n), kp = wrap(k + 1, n);
        nu_out[k] = reconstruct_eval(u[km], a[km], u[k], 1.0 - nu);
        na_out[k] = transported_average(u[k], a[k], u[kp], u[km], a[km], u[k], nu);
    }
    return {nu_out, na_out};
}

// Advect one full period with Courant number nu, shortening the last step.
double af_period_error(int n, double nu)
{
    auto s = afvp::testing::sine_slice(n);
    const auto exact = s.avg;
    double travelled = 0.0;
    while (travelled < n - 1e-12) {
        const double c = std::min(nu, n - travelled);
        af_step(s.iface, s.avg, c);
        travelled += c;
    }
    return afvp::testing::l1_mean(s.avg, exact);
}

std::vector<double> sine_lattice(int cells)
{
    std::vector<double> p(2 * cells);
    for (int m = 0; m < 2 * cells; ++m) p[m] = std::sin(2.0 * std::numbers::pi * m / (2.0 * cells));
    return p;
}

std::vector<double> lattice_cell_averages(const std::vector<double>& p)
{
    const int m = static_cast<int>(p.size());
    std::vector<double> avg(m / 2);
    for (int k = 0; k < m / 2; ++k) avg[k] = (p[2 * k] + 4.0 * p[2 * k + 1] + p[wrap(2 * k + 2, m)]) / 6.0;
    return avg;
}

template <std::size_t N>
std::array<double, N> window(const std::vector<double>& p, int centre, int first_offset)
{
    const int m = static_cast<int>(p.size());
    std::array<double, N> w{};
    for (std::size_t k = 0; k < N; ++k) w[k] = p[wrap(centre + first_offset + static_cast<int>(k), m)];
    return w;
}

} // namespace

TEST_CASE("reconstruction hits edges and mean")
{
    CHECK(reconstruct_eval(2.0, 5.0, -1.0, 0.0) == doctest::Approx(2.0));
    CHECK(reconstruct_eval(2.0, 5.0, -1.0, 1.0) == doctest::Approx(-1.0));
    // (l + 4 m + r) / 6 at zeta = 0, 1/2, 1 reproduces the average.
    const double mid = reconstruct_eval(2.0, 5.0, -1.0, 0.5);
    CHECK((2.0 + 4.0 * mid - 1.0) / 6.0 == doctest::Approx(5.0));
}

TEST_CASE("af single-cell updates at known Courant numbers")
{
    const std::array<double, 3> cell{1.0, 2.0, 4.0};
    CHECK(af_update_interface(cell, 0.0) == doctest::Approx(4.0));
    CHECK(af_update_interface(cell, 1.0) == doctest::Approx(1.0));
    // nu = 1/2: quadratic at zeta = 1/2 is (6 avg - l - r) / 4.
    CHECK(af_update_interface(cell, 0.5) == doctest::Approx((12.0 - 5.0) / 4.0));
    CHECK(af_update_interface(cell, -1.0) == doctest::Approx(4.0));

    const std::array<double, 5> st{1.0, 2.0, 3.0, 5.0, 8.0};
    CHECK(af_update_average(st, 0.0) == doctest::Approx(5.0));
    CHECK(af_update_average(st, 1.0) == doctest::Approx(2.0));
    CHECK(af_update_average(st, -1.0) == doctest::Approx(5.0));
}

TEST_CASE("af closed forms match transported reconstruction")
{
    const auto u = random_values(12, 11);
    const auto a = random_values(12, 12);
    for (double nu : {0.05, 0.3, 0.5, 0.77, 0.99}) {
        auto iface = u;
        auto avg = a;
        af_step(iface, avg, nu);
        const auto [ou, oa] = flux_form_oracle(u, a, nu);
        CHECK(afvp::testing::max_abs_diff(iface, ou) < 1e-14);
        CHECK(afvp::testing::max_abs_diff(avg, oa) < 1e-14);

        std::vector<double> traced(u.size());
        af_trace_interfaces(u, a, nu, traced);
        CHECK(afvp::testing::max_abs_diff(traced, ou) < 1e-14);
    }
}

TEST_CASE("af negative Courant number is the mirror image")
{
    const int n = 10;
    const auto u = random_values(n, 21);
    const auto a = random_values(n, 22);
    // Mirror: cell k -> n-1-k, edge k -> n-k.
    std::vector<double> mu(n), ma(n);
    for (int k = 0; k < n; ++k) {
        ma[k] = a[n - 1 - k];
        mu[k] = u[wrap(n - k, n)];
    }
    for (double nu : {0.2, 0.6, 1.0}) {
        auto iface = u;
        auto avg = a;
        af_step(iface, avg, -nu);
        auto miface = mu;
        auto mavg = ma;
        af_step(miface, mavg, nu);
        for (int k = 0; k < n; ++k) {
            CHECK(avg[k] == doctest::Approx(mavg[n - 1 - k]).epsilon(1e-14));
            CHECK(iface[k] == doctest::Approx(miface[wrap(n - k, n)]).epsilon(1e-14));
        }
    }
}

TEST_CASE("af unit Courant number shifts by one cell")
{
    const auto u = random_values(16, 31);
    const auto a = random_values(16, 32);
    auto iface = u;
    auto avg = a;
    af_step(iface, avg, 1.0);
    for (int k = 0; k < 16; ++k) {
        CHECK(iface[k] == u[wrap(k - 1, 16)]);
        CHECK(avg[k] == a[wrap(k - 1, 16)]);
    }
    af_step(iface, avg, 0.0);
    CHECK(avg[3] == a[2]);
}

TEST_CASE("af conserves the sum of averages")
{
    auto u = random_values(20, 41);
    auto a = random_values(20, 42);
    double before = 0.0, after = 0.0;
    for (double x : a) before += x;
    for (int s = 0; s < 50; ++s) af_step(u, a, s % 2 ? 0.63 : -0.41);
    for (double x : a) after += x;
    CHECK(std::abs(after - before) < 1e-12);
}

TEST_CASE("af third order on a sine period")
{
    const double e32 = af_period_error(32, 0.9);
    const double e64 = af_period_error(64, 0.9);
    const double e128 = af_period_error(128, 0.9);
    const double p1 = std::log2(e32 / e64), p2 = std::log2(e64 / e128);
    MESSAGE("orders " << p1 << " " << p2);
    CHECK(std::abs(p2 - 3.0) < 0.3);
}

TEST_CASE("af rejects Courant numbers beyond one")
{
    std::vector<double> u(4, 1.0), a(4, 1.0);
    CHECK_THROWS_AS(af_step(u, a, 1.01), CflError);
    CHECK_NOTHROW(af_step(u, a, -1.0));
}

TEST_CASE("distribution constraint")
{
    CHECK_NOTHROW(DistributionParams{1.0, 1.0}.validate());
    CHECK_NOTHROW(DistributionParams{0.0, 3.0}.validate());
    CHECK_NOTHROW(DistributionParams{1.5, 0.0}.validate());
    const DistributionParams bad{1.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("dd trivial cases")
{
    const auto p = random_values(16, 51);
    auto q = p;
    dd_step(q, 0.0, {});
    CHECK(q == p);

    std::vector<double> c(16, 2.5);
    dd_step(c, 0.7, {});
    for (double x : c) CHECK(x == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("dd predictor traces the local quadratic")
{
    // A global quadratic is reproduced exactly except across the periodic seam.
    const int cells = 8, m = 16;
    std::vector<double> p(m);
    for (int k = 0; k < m; ++k) p[k] = 0.3 * k * k - k + 2.0;
    std::vector<double> out(m);
    const double eta = 0.6;
    dd_predict(p, eta, Stage::full, out);
    for (int k = 4; k < m - 2; ++k) {
        const double x = k - eta;
        CHECK(out[k] == doctest::Approx(0.3 * x * x - x + 2.0));
    }
    dd_predict(p, eta, Stage::half, out);
    for (int k = 4; k < m - 2; ++k) {
        const double x = k - 0.5 * eta;
        CHECK(out[k] == doctest::Approx(0.3 * x * x - x + 2.0));
    }
    (void)cells;
}

TEST_CASE("dd interface closed form matches the constructive path")
{
    for (double eta : {0.1, 0.4, 0.9, -0.1, -0.4, -0.9}) {
        for (double beta : {1.0, 0.0, 3.0}) {
            const DistributionParams params{(3.0 - beta) / 2.0, beta};
            for (int trial = 0; trial < 20; ++trial) {
                const auto p = random_values(16, 1000 + trial);
                auto q = p;
                dd_step(q, eta, params);
                const int first = eta >= 0.0 ? -4 : -2;
                for (int k = 0; k < 8; ++k) {
                    const auto w = window<7>(p, 2 * k, first);
                    CHECK(dd_closed_form_interface(w, eta, beta) == doctest::Approx(q[2 * k]).epsilon(1e-13));
                }
            }
        }
    }
}

TEST_CASE("dd centre closed form differs from the constructive path")
{
    // The printed centre formula carries 12 alpha where the construction
    // gives 12 eta on the downwind edge; the gap is (alpha - eta) / 2 times it.
    for (double eta : {0.0, 0.25, 0.8}) {
        for (double alpha : {1.0, 0.5, 0.0}) {
            const DistributionParams params{alpha, 3.0 - 2.0 * alpha};
            const auto p = random_values(16, 77);
            auto q = p;
            dd_step(q, eta, params);
            for (int k = 0; k < 8; ++k) {
                const auto w = window<5>(p, 2 * k + 1, -3);
                const double printed = dd_closed_form_center(w, eta, alpha);
                CHECK(q[2 * k + 1] == doctest::Approx(printed + 0.5 * (alpha - eta) * w[4]).epsilon(1e-13));
            }
        }
    }
    const std::array<double, 5> w{0.3, -0.2, 0.9, 1.7, 0.4};
    CHECK(dd_closed_form_center(w, 0.0, 0.0) == doctest::Approx(1.7));
    CHECK(dd_closed_form_center(w, 0.0, 1.0) != doctest::Approx(1.7));
}

TEST_CASE("dd correction keeps the total and deviates locally by a second difference")
{
    const int cells = 10, m = 20;
    const auto p = random_values(m, 91);
    for (double eta : {0.45, -0.8}) {
        for (double beta : {1.0, 0.0, 2.0}) {
            const DistributionParams params{(3.0 - beta) / 2.0, beta};
            std::vector<double> half(m), full(m), out(m);
            dd_predict(p, eta, Stage::half, half);
            dd_predict(p, eta, Stage::full, full);
            dd_correct(p, half, full, eta, params, out);
            const auto delta = dd_discrepancies(p, half, full, eta);

            const auto before = lattice_cell_averages(p);
            const auto pred = lattice_cell_averages(full);
            const auto after = lattice_cell_averages(out);
            double sb = 0.0, sa = 0.0;
            for (int k = 0; k < cells; ++k) {
                sb += before[k];
                sa += after[k];
                const double target = pred[k] + delta[k];
                const double second = delta[wrap(k - 1, cells)] - 2.0 * delta[k] + delta[wrap(k + 1, cells)];
                CHECK(after[k] - target == doctest::Approx(beta / 12.0 * second).epsilon(1e-12).scale(1.0));
            }
            CHECK(std::abs(sa - sb) < 1e-13);
        }
    }
}

TEST_CASE("dd third order on a sine period")
{
    auto period_error = [](int cells) {
        auto p = sine_lattice(cells);
        const auto exact = lattice_cell_averages(p);
        // eta = 0.8 travels 0.4 cells per step.
        const int steps = cells * 5 / 2;
        for (int s = 0; s < steps; ++s) dd_step(p, 0.8, {});
        return afvp::testing::l1_mean(lattice_cell_averages(p), exact);
    };
    const double e32 = period_error(32), e64 = period_error(64), e128 = period_error(128);
    MESSAGE("orders " << std::log2(e32 / e64) << " " << std::log2(e64 / e128));
    CHECK(std::log2(e64 / e128) >= 2.7);
}

TEST_CASE("dd rejects eta beyond one")
{
    std::vector<double> p(8, 1.0);
    CHECK_THROWS_AS(dd_step(p, 1.2, {}), CflError);
    CHECK_THROWS_AS(dd_step(p, -1.2, {}), CflError);
}
