#include "afvp/advect1d.hpp"

#include <array>
#include <cmath>
#include <string>

#include "afvp/core.hpp"

namespace afvp::advect1d {

void check_courant(double courant, double bound, std::string_view where)
{
    if (!(std::abs(courant) <= bound * (1.0 + 1e-12))) throw CflError(std::string(where), courant, bound);
}

void DistributionParams::validate() const
{
    const double residual = beta / 3.0 + 2.0 * alpha / 3.0 - 1.0;
    if (!(std::abs(residual) <= 1e-12))
        throw ConfigError("distribution parameters violate beta/3 + 2 alpha/3 = 1");
}

double reconstruct_eval(double u_left, double u_avg, double u_right, double zeta) noexcept
{
    return u_left * (zeta - 1.0) * (2.0 * zeta - 1.0)
           + (6.0 * u_avg - u_left - u_right) * zeta * (1.0 - zeta)
           + u_right * zeta * (2.0 * zeta - 1.0);
}

namespace {

// Coefficients for a >= 0 with nu >= 0; a < 0 is the mirror image with |nu|.
inline double interface_closed(double up, double avg, double self, double nu) noexcept
{
    return nu * (3.0 * nu - 2.0) * up + 6.0 * nu * (1.0 - nu) * avg
           + (1.0 - nu) * (1.0 - 3.0 * nu) * self;
}

inline double average_closed(double far_edge, double up_avg, double near_edge, double avg,
                             double down_edge, double nu) noexcept
{
    const double m = 1.0 - nu;
    return nu * nu * (nu - 1.0) * far_edge + nu * nu * (3.0 - 2.0 * nu) * up_avg
           + nu * m * near_edge + m * m * (1.0 + 2.0 * nu) * avg - nu * m * m * down_edge;
}

// Quadratic through (-1, L), (0, C), (1, R).
inline double dd_quadratic(double left, double center, double right, double xi) noexcept
{
    return 0.5 * xi * (xi - 1.0) * left + (1.0 - xi * xi) * center + 0.5 * xi * (xi + 1.0) * right;
}

inline double simpson(double a, double m, double b) noexcept { return (a + 4.0 * m + b) / 6.0; }

} // namespace

double af_update_interface(std::span<const double, 3> cell, double nu)
{
    check_courant(nu, original_courant_bound, "af_update_interface");
    if (nu >= 0.0) return interface_closed(cell[0], cell[1], cell[2], nu);
    return interface_closed(cell[2], cell[1], cell[0], -nu);
}

double af_update_average(std::span<const double, 5> s, double nu)
{
    check_courant(nu, original_courant_bound, "af_update_average");
    if (nu >= 0.0) return average_closed(s[0], s[1], s[2], s[3], s[4], nu);
    return average_closed(s[4], s[3], s[2], s[1], s[0], -nu);
}

void af_trace_interfaces(std::span<const double> iface, std::span<const double> avg, double nu,
                         std::span<double> out)
{
    check_courant(nu, original_courant_bound, "af_trace_interfaces");
    const int n = static_cast<int>(iface.size());
    if (nu == 0.0) {
        std::copy(iface.begin(), iface.end(), out.begin());
        return;
    }
    if (nu > 0.0) {
        for (int k = 0; k < n; ++k) {
            const int km = wrap(k - 1, n);
            out[k] = interface_closed(iface[km], avg[km], iface[k], nu);
        }
    } else {
        const double mu = -nu;
        for (int k = 0; k < n; ++k) out[k] = interface_closed(iface[wrap(k + 1, n)], avg[k], iface[k], mu);
    }
}

void af_step(std::span<double> iface, std::span<double> avg, double nu)
{
    check_courant(nu, original_courant_bound, "af_step");
    if (nu == 0.0) return;
    const int n = static_cast<int>(iface.size());
    const std::vector<double> u(iface.begin(), iface.end());
    const std::vector<double> a(avg.begin(), avg.end());
    if (nu > 0.0) {
        for (int k = 0; k < n; ++k) {
            const int km = wrap(k - 1, n), kp = wrap(k + 1, n);
            iface[k] = interface_closed(u[km], a[km], u[k], nu);
            avg[k] = average_closed(u[km], a[km], u[k], a[k], u[kp], nu);
        }
    } else {
        const double mu = -nu;
        for (int k = 0; k < n; ++k) {
            const int kp = wrap(k + 1, n), kpp = wrap(k + 2, n);
            iface[k] = interface_closed(u[kp], a[k], u[k], mu);
            avg[k] = average_closed(u[kpp], a[kp], u[kp], a[k], u[k], mu);
        }
    }
}

void dd_predict(std::span<const double> p, double eta, Stage stage, std::span<double> out)
{
    check_courant(eta, discrepancy_eta_bound, "dd_predict");
    const double e = stage == Stage::half ? 0.5 * eta : eta;
    const int m = static_cast<int>(p.size());
    const int cells = m / 2;
    if (e == 0.0) {
        std::copy(p.begin(), p.end(), out.begin());
        return;
    }
    for (int k = 0; k < cells; ++k) {
        const double left = p[2 * k];
        const double center = p[2 * k + 1];
        const double right = p[wrap(2 * k + 2, m)];
        out[2 * k + 1] = dd_quadratic(left, center, right, -e);
        if (e > 0.0) {
            const double pl = p[wrap(2 * k - 2, m)];
            const double pc = p[wrap(2 * k - 1, m)];
            out[2 * k] = dd_quadratic(pl, pc, left, 1.0 - e);
        } else {
            out[2 * k] = dd_quadratic(left, center, right, -1.0 - e);
        }
    }
}

std::vector<double> dd_discrepancies(std::span<const double> before,
                                     std::span<const double> half,
                                     std::span<const double> full, double eta)
{
    const int m = static_cast<int>(before.size());
    const int cells = m / 2;
    // Flux through the left edge of cell k, times dt/dx: (nu/6)(u^n + 4u^{n+1/2} + u^{n+1}).
    const double scale = eta / 12.0;
    std::vector<double> flux(cells);
    for (int k = 0; k < cells; ++k)
        flux[k] = scale * (before[2 * k] + 4.0 * half[2 * k] + full[2 * k]);

    std::vector<double> delta(cells);
    for (int k = 0; k < cells; ++k) {
        const int r = wrap(2 * k + 2, m);
        const double avg_before = simpson(before[2 * k], before[2 * k + 1], before[r]);
        const double avg_pred = simpson(full[2 * k], full[2 * k + 1], full[r]);
        delta[k] = avg_before + (flux[k] - flux[wrap(k + 1, cells)]) - avg_pred;
    }
    return delta;
}

void dd_correct(std::span<const double> before, std::span<const double> half,
                std::span<const double> full, double eta, const DistributionParams& params,
                std::span<double> out)
{
    const int m = static_cast<int>(before.size());
    const int cells = m / 2;
    const std::vector<double> delta = dd_discrepancies(before, half, full, eta);
    for (int k = 0; k < cells; ++k) {
        out[2 * k + 1] = full[2 * k + 1] + params.alpha * delta[k];
        out[2 * k] = full[2 * k] + params.beta * 0.5 * (delta[wrap(k - 1, cells)] + delta[k]);
    }
}

void dd_step(std::span<double> points, double eta, const DistributionParams& params)
{
    check_courant(eta, discrepancy_eta_bound, "dd_step");
    if (eta == 0.0) return;
    const std::vector<double> before(points.begin(), points.end());
    std::vector<double> half(points.size());
    std::vector<double> full(points.size());
    dd_predict(before, eta, Stage::half, half);
    dd_predict(before, eta, Stage::full, full);
    dd_correct(before, half, full, eta, params, points);
}

double dd_closed_form_interface(std::span<const double, 7> w, double eta, double b)
{
    check_courant(eta, discrepancy_eta_bound, "dd_closed_form_interface");
    // Upwind order: u_{i-3/2}, u_{i-1}, u_{i-1/2}, u_i, u_{i+1/2}, u_{i+1}, u_{i+3/2}.
    std::array<double, 7> u{};
    for (int k = 0; k < 7; ++k) u[k] = eta >= 0.0 ? w[k] : w[6 - k];
    const double e = std::abs(eta);
    const double e2 = e * e, e3 = e2 * e;
    return b * e / 48.0 * (e - 2.0) * (2.0 * e - 1.0) * u[0]
           - b * e / 12.0 * (e2 - 4.0 * e + 2.0) * u[1]
           + e / 48.0 * (2.0 * b * e2 - 23.0 * b * e + 14.0 * b + 24.0 * e - 24.0) * u[2]
           + e / 6.0 * (3.0 * b * e - 2.0 * b - 6.0 * e + 12.0) * u[3]
           - 1.0 / 48.0 * (2.0 * b * e3 + 19.0 * b * e2 - 14.0 * b * e - 24.0 * e2 + 72.0 * e - 48.0) * u[4]
           + b * e / 12.0 * (e2 + 2.0 * e - 2.0) * u[5]
           - b * e / 48.0 * (2.0 * e2 + e - 2.0) * u[6];
}

double dd_closed_form_center(std::span<const double, 5> w, double eta, double a)
{
    check_courant(eta, discrepancy_eta_bound, "dd_closed_form_center");
    // Upwind order: u_{i-3/2}, u_{i-1}, u_{i-1/2}, u_i, u_{i+1/2}.
    std::array<double, 5> u{};
    for (int k = 0; k < 5; ++k) u[k] = eta >= 0.0 ? w[k] : w[4 - k];
    const double e = std::abs(eta);
    const double e2 = e * e, e3 = e2 * e;
    return 1.0 / 6.0 * (a * e3 + 2.0 * a * e2 - 2.0 * a * e - 6.0 * e2 + 6.0) * u[3]
           - 1.0 / 24.0 * (2.0 * a * e3 + a * e2 - 2.0 * a * e - 12.0 * e2 + 12.0 * a) * u[4]
           - 1.0 / 4.0 * (3.0 * a * e2 - 2.0 * a * e - 2.0 * e2 - 2.0 * e) * u[2]
           - 1.0 / 6.0 * (a * e3 - 4.0 * a * e2 + 2.0 * a * e) * u[1]
           + 1.0 / 24.0 * (2.0 * a * e3 - 5.0 * a * e2 + 2.0 * a * e) * u[0];
}

} // namespace afvp::advect1d
