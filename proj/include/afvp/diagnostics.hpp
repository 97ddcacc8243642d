#pragma once

#include <span>
#include <string>

#include "afvp/time_splitting.hpp"

namespace afvp {

/// One time sample of monitored quantities.
struct DiagnosticsRow {
    double t = 0.0;
    double electric_energy = 0.0; ///< int E^2 dx
    double mass = 0.0;            ///< dx dv sum of cell averages
    double momentum = 0.0;        ///< dx dv sum v_j * cell average
    double l2norm = 0.0;          ///< int int f^2
    double kinetic_energy = 0.0;  ///< int int v^2 f
    double total_energy = 0.0;    ///< kinetic + electric
    double rho_dot_e = 0.0;       ///< sum over field stations of rho * E
};

/// CSV header matching write_diagnostics_row.
std::string diagnostics_csv_header();
std::string diagnostics_csv_row(const DiagnosticsRow& row);

// Integrals over f use composite Simpson on the half-spaced point lattice
// (see to_point_lattice); the field energy uses composite Simpson over the
// 2 n_x field stations.
DiagnosticsRow conserved_quantities(const InhomogeneousState& state, double t);
DiagnosticsRow conserved_quantities(const HomogeneousState& state, double t);

/// Point values on the half-spaced lattice recovered from an inhomogeneous
/// grid: edge midpoints from line averages, cell centres by inverting the
/// tensor Simpson rule.
HomogeneousGrid to_point_lattice(const InhomogeneousGrid& grid);

/// Cell averages of a reference solution block-averaged down to the target
/// resolution by repeated halving. All sizes must be powers of two.
Array2D downscale_reference(const Array2D& reference, int target_nx, int target_nv);

/// Relative L1 error sum |sol - ref| / sum |ref|.
double eps_vp(const Array2D& solution, const Array2D& reference_scaled);

enum class RateFitMode { decay_peaks, growth };

/// Exponential rate of a field-energy trace inside [t0, t1].
/// decay_peaks: least-squares slope of log(sqrt(energy)) through the local
/// maxima (each refined by a parabola in log space), returned as a positive
/// damping rate; at least three maxima are required. growth: least-squares
/// slope of log(energy) / 2 over all samples in the window. A trace without
/// variation has rate 0.
double fit_exponential_rate(std::span<const double> t, std::span<const double> energy, double t0,
                            double t1, RateFitMode mode);

} // namespace afvp
