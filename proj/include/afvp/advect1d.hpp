#pragma once

#include <span>
#include <string_view>
#include <vector>

namespace afvp::advect1d {

// Constant-coefficient Active Flux kernels on periodic 1D slices.
//
// Original scheme: iface[k] is the point value at the left edge of cell k,
// avg[k] the cell average; Courant number nu = a dt / dx, |nu| <= 1.
//
// Discrepancy distribution: points[2k] is the left edge of cell k and
// points[2k + 1] its centre; eta = 2 a dt / dx, |eta| <= 1.

inline constexpr double original_courant_bound = 1.0;
inline constexpr double discrepancy_eta_bound = 1.0;

/// Throws CflError when |courant| > bound (with a relative slack of 1e-12).
void check_courant(double courant, double bound, std::string_view where);

/// Weights of the discrepancy split onto centre (alpha) and edge (beta)
/// values. Must satisfy beta / 3 + 2 alpha / 3 = 1.
struct DistributionParams {
    double alpha = 1.0;
    double beta = 1.0;

    /// Throws ConfigError when the constraint is violated beyond 1e-12.
    void validate() const;
};

/// Continuous quadratic through u_left (zeta = 0), u_right (zeta = 1) with
/// mean u_avg.
double reconstruct_eval(double u_left, double u_avg, double u_right, double zeta) noexcept;

/// New value of the downwind edge of the upwind cell. `cell` holds
/// (left edge, average, right edge) of the upwind cell in physical order; the
/// result replaces its right edge for nu >= 0 and its left edge for nu < 0.
double af_update_interface(std::span<const double, 3> cell, double nu);

/// New average of cell i from five values in physical order:
///   nu >= 0: (u_{i-3/2}, avg_{i-1}, u_{i-1/2}, avg_i, u_{i+1/2})
///   nu <  0: (u_{i-1/2}, avg_i, u_{i+1/2}, avg_{i+1}, u_{i+3/2})
double af_update_average(std::span<const double, 5> stencil, double nu);

/// Traced edge values at nu for a whole slice (no average update).
void af_trace_interfaces(std::span<const double> iface, std::span<const double> avg, double nu,
                         std::span<double> out);

/// One full original-scheme step of a slice by the closed-form updates.
void af_step(std::span<double> iface, std::span<double> avg, double nu);

enum class Stage { half, full };

/// Characteristic tracing of every lattice point through its cell's quadratic.
/// The half stage traces with eta / 2.
void dd_predict(std::span<const double> points, double eta, Stage stage, std::span<double> out);

/// Per-cell discrepancy between the flux-form average update and the Simpson
/// average of the full-stage prediction.
std::vector<double> dd_discrepancies(std::span<const double> before,
                                     std::span<const double> predicted_half,
                                     std::span<const double> predicted_full, double eta);

/// Distributes the discrepancies onto the full-stage prediction.
void dd_correct(std::span<const double> before, std::span<const double> predicted_half,
                std::span<const double> predicted_full, double eta,
                const DistributionParams& params, std::span<double> out);

/// Predict, correct and write back one discrepancy-distribution step.
void dd_step(std::span<double> points, double eta, const DistributionParams& params);

/// Printed closed form for the new edge value. Window of 7 consecutive points
/// in physical order, offsets in half cells from the updated edge:
/// -4..+2 for eta >= 0, -2..+4 for eta < 0.
double dd_closed_form_interface(std::span<const double, 7> window, double eta, double beta);

/// Printed closed form for the new centre value. Window of 5 consecutive
/// points, offsets -3..+1 for eta >= 0 and -1..+3 for eta < 0. Kept as
/// printed, including its non-identity at eta = 0 for alpha != 0.
double dd_closed_form_center(std::span<const double, 5> window, double eta, double alpha);

} // namespace afvp::advect1d
