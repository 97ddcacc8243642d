#pragma once

#include <array>
#include <string>

#include "afvp/advect1d.hpp"
#include "afvp/field_solver.hpp"
#include "afvp/phase_grid.hpp"

namespace afvp {

// Split advection operators. L_X advects with speed v over dt, L_V with speed
// -E (electron charge-to-mass -1) with E frozen. Grids are taken by value so
// callers can move state through a step.

enum class SchemeKind { af2, af3, dd };

std::string to_string(SchemeKind kind);
SchemeKind parse_scheme_kind(const std::string& name);

/// Time-and-edge averaged flux through a vertical edge x_{i+1/2}:
/// tensor Simpson over three v positions (columns) and the stages
/// t^n, t^{n+1/2}, t^{n+1} (rows) of v * f.
double flux_integral_g(const std::array<std::array<double, 3>, 3>& f,
                       const std::array<double, 3>& v) noexcept;

/// Same for a horizontal edge v_{j+1/2}; `speed` holds the v-advection speed
/// at (x_{i-1/2}, x_i, x_{i+1/2}), constant over the step.
double flux_integral_h(const std::array<std::array<double, 3>, 3>& f,
                       const std::array<double, 3>& speed) noexcept;

InhomogeneousGrid lx_second_order(InhomogeneousGrid grid, double dt);
InhomogeneousGrid lv_second_order(InhomogeneousGrid grid, const FieldProfile& field, double dt);

InhomogeneousGrid lx_third_order(InhomogeneousGrid grid, double dt);
InhomogeneousGrid lv_third_order(InhomogeneousGrid grid, const FieldProfile& field, double dt);

HomogeneousGrid lx_dd(HomogeneousGrid grid, double dt,
                      const advect1d::DistributionParams& params = {});
HomogeneousGrid lv_dd(HomogeneousGrid grid, const FieldProfile& field, double dt,
                      const advect1d::DistributionParams& params = {});

} // namespace afvp
