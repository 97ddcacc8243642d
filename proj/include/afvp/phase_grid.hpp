#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <string>

#include "afvp/core.hpp"

namespace afvp {

/// Periodic 1D1V phase-space box with a uniform n_x by n_v cell mesh.
/// Positions are in Debye lengths, velocities in thermal velocities.
struct DomainSpec {
    double x_min = 0.0;
    double x_max = 1.0;
    double v_min = -1.0;
    double v_max = 1.0;
    int n_x = 4;
    int n_v = 4;

    double dx() const noexcept { return (x_max - x_min) / n_x; }
    double dv() const noexcept { return (v_max - v_min) / n_v; }
    double length_x() const noexcept { return x_max - x_min; }
    double length_v() const noexcept { return v_max - v_min; }

    /// Left edge of cell i, i.e. the node column owned by index i.
    double x_node(int i) const noexcept { return x_min + i * dx(); }
    double x_center(int i) const noexcept { return x_min + (i + 0.5) * dx(); }
    double v_node(int j) const noexcept { return v_min + j * dv(); }
    double v_center(int j) const noexcept { return v_min + (j + 0.5) * dv(); }

    /// Throws ConfigError when the box is empty or has fewer than 4 cells.
    void validate() const;

    friend bool operator==(const DomainSpec&, const DomainSpec&) = default;
};

enum class ProblemKind { weak_landau, strong_landau, two_stream };

/// Analytic initial electron distribution f0(x, v).
struct InitialCondition {
    ProblemKind kind = ProblemKind::weak_landau;
    double amplitude = 1e-3;
    double wavenumber = 0.5;
    double beam_velocity = 3.0; // two_stream only

    double operator()(double x, double v) const noexcept;

    /// Rejects A < 0 and perturbations that do not fit the periodic box.
    void validate_against(const DomainSpec& domain) const;

    static InitialCondition weak_landau();
    static InitialCondition strong_landau();
    static InitialCondition two_stream();
    /// Box used with a preset: [-2pi, 2pi] x [-5, 5] for Landau damping,
    /// [-5pi, 5pi] x [-10, 10] for the two-stream instability.
    static DomainSpec preset_domain(ProblemKind kind, int n_x, int n_v);
};

std::string to_string(ProblemKind kind);
ProblemKind parse_problem_kind(const std::string& name);

enum class InitQuadrature { analytic_quadrature, simpson };

std::string to_string(InitQuadrature q);
InitQuadrature parse_init_quadrature(const std::string& name);

/// Split Active Flux grid. Each array is n_x by n_v and index (i, j) owns the
/// degrees of freedom at the lower-left of cell (i, j):
///   nodes(i, j)      f at (x_node(i), v_node(j))
///   x_edge_avg(i, j) x-average over cell i at v_node(j)
///   v_edge_avg(i, j) v-average over cell j at x_node(i)
///   cell_avg(i, j)   average over cell (i, j)
struct InhomogeneousGrid {
    DomainSpec domain;
    Array2D nodes;
    Array2D x_edge_avg;
    Array2D v_edge_avg;
    Array2D cell_avg;

    explicit InhomogeneousGrid(const DomainSpec& d = {})
        : domain(d),
          nodes(d.n_x, d.n_v),
          x_edge_avg(d.n_x, d.n_v),
          v_edge_avg(d.n_x, d.n_v),
          cell_avg(d.n_x, d.n_v)
    {}
};

/// Point-value lattice with spacing dx/2, dv/2. Even indices sit on cell
/// edges, odd indices on cell midpoints; points(2i + 1, 2j + 1) is the centre
/// of cell (i, j).
struct HomogeneousGrid {
    DomainSpec domain;
    Array2D points;

    explicit HomogeneousGrid(const DomainSpec& d = {})
        : domain(d), points(2 * d.n_x, 2 * d.n_v)
    {}
};

/// (a + 4m + b) / 6
double simpson_line_average(double endpoint_a, double midpoint, double endpoint_b) noexcept;

/// Tensor Simpson rule on one cell: (sum corners + 4 sum edges + 16 centre) / 36.
double simpson_cell_average(std::span<const double, 4> corners,
                            std::span<const double, 4> edge_midpoints,
                            double center) noexcept;

/// Midpoint value of the quadratic with the given average and end values.
double center_from_line_average(double avg, double left_end, double right_end) noexcept;

InhomogeneousGrid init_inhomogeneous(const DomainSpec& domain, const InitialCondition& ic,
                                     InitQuadrature quadrature);

HomogeneousGrid init_homogeneous(const DomainSpec& domain, const InitialCondition& ic);

/// Cell averages of a homogeneous grid by tensor Simpson integration.
Array2D simpson_cell_averages(const HomogeneousGrid& grid);

/// Fourth-order histopolation of a cell average from its 3x3 neighbourhood,
/// indexed [di + 1][dj + 1].
double histopolate_cell(const std::array<std::array<double, 3>, 3>& averages) noexcept;

/// Fourth-order histopolation of a line average: (26 c - l - r) / 24.
double histopolate_line(double left, double center, double right) noexcept;

/// Cell-centre point values from periodic cell averages.
Array2D histopolate_cell_averages(const Array2D& averages);

enum class SnapshotKind { cell_avg, points };

struct Snapshot {
    double t = 0.0;
    DomainSpec domain;
    SnapshotKind kind = SnapshotKind::cell_avg;
    Array2D values;
};

/// Writes the header line and n_v rows of n_x values with shortest
/// round-trip formatting.
void write_snapshot(std::ostream& out, const Snapshot& snapshot);
Snapshot read_snapshot(std::istream& in);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

} // namespace afvp
