#pragma once

#include <memory>
#include <span>
#include <vector>

#include "afvp/phase_grid.hpp"

namespace afvp {

// Normalized units: eps0 = 1, electron charge-to-mass ratio -1, immobile
// neutralizing ion background of density 1. Net charge rho = 1 - n_e,
// phi'' = -rho, E = -phi'.

/// Net charge density on the 2 n_x half-spaced station lattice.
struct ChargeDensity {
    std::vector<double> interface;    ///< at x_node(i)
    std::vector<double> line_average; ///< over cell i
    std::vector<double> center;       ///< at x_center(i)

    /// Interleaved point values: even = interface, odd = centre.
    std::vector<double> stations() const;
};

enum class FieldLayout { inhomogeneous, homogeneous };

/// Electric field in the representation a scheme's v-step consumes.
struct FieldProfile {
    FieldLayout layout = FieldLayout::inhomogeneous;
    std::vector<double> interface; ///< point values at x_node(i)
    std::vector<double> center;    ///< line average (inhomogeneous) or point (homogeneous)

    int size() const noexcept { return static_cast<int>(interface.size()); }

    /// Point value at x_center(i); recovered from the line average when needed.
    double center_point(int i) const noexcept;
    /// Line average over cell i; Simpson-averaged from points when needed.
    double center_average(int i) const noexcept;

    /// Interleaved point values at the 2 n_x stations.
    std::vector<double> stations() const;

    static FieldProfile zero(int n_x, FieldLayout layout);
};

ChargeDensity density_inhomogeneous(const InhomogeneousGrid& grid);

/// Composite Simpson over v at every station. `line_average` is filled by
/// Simpson averaging of the station values.
ChargeDensity density_homogeneous(const HomogeneousGrid& grid);

/// Periodic spectral Poisson solve: E_hat(k) = -i rho_hat(k) / k, zero mean.
/// The Nyquist mode is dropped. Plans are created once; solve() is const and
/// may be called concurrently.
class PoissonSolver {
public:
    explicit PoissonSolver(int n_stations);
    ~PoissonSolver();
    PoissonSolver(PoissonSolver&&) noexcept;
    PoissonSolver& operator=(PoissonSolver&&) noexcept;
    PoissonSolver(const PoissonSolver&) = delete;
    PoissonSolver& operator=(const PoissonSolver&) = delete;

    int size() const noexcept;
    std::vector<double> solve(std::span<const double> rho, double length) const;

private:
    struct Plans;
    std::unique_ptr<Plans> plans_;
};

/// One-shot solve for equally spaced periodic samples.
std::vector<double> solve_poisson_spectral(std::span<const double> rho, double length);

/// As above with explicit station coordinates; rejects non-uniform spacing.
std::vector<double> solve_poisson_spectral(std::span<const double> x, std::span<const double> rho,
                                           double length);

/// Splits station values into a profile. Inhomogeneous layout averages the
/// centre: (E_l + 4 E_c + E_r) / 6.
FieldProfile field_to_profile(std::span<const double> e_stations, FieldLayout layout);

FieldProfile compute_field(const InhomogeneousGrid& grid, const PoissonSolver& solver);
FieldProfile compute_field(const HomogeneousGrid& grid, const PoissonSolver& solver);

} // namespace afvp
