#include "afvp/time_splitting.hpp"

namespace afvp {

std::string to_string(SplittingKind kind)
{
    switch (kind) {
    case SplittingKind::lie: return "lie";
    case SplittingKind::strang: return "strang";
    case SplittingKind::yoshida: return "yoshida";
    }
    return "unknown";
}

SplittingKind parse_splitting_kind(const std::string& name)
{
    if (name == "lie") return SplittingKind::lie;
    if (name == "strang") return SplittingKind::strang;
    if (name == "yoshida") return SplittingKind::yoshida;
    throw ConfigError("unknown splitting '" + name + "'");
}

FluxIntegralOperators::FluxIntegralOperators(SchemeKind kind, const DomainSpec& domain)
    : kind_(kind), solver_(2 * domain.n_x)
{
    if (kind == SchemeKind::dd) throw ConfigError("FluxIntegralOperators: dd needs the homogeneous grid");
}

InhomogeneousState FluxIntegralOperators::initial_state(InhomogeneousGrid grid) const
{
    FieldProfile field = compute_field(grid, solver_);
    return {std::move(grid), std::move(field)};
}

InhomogeneousState FluxIntegralOperators::advect_x(State s, double dt) const
{
    s.grid = kind_ == SchemeKind::af3 ? lx_third_order(std::move(s.grid), dt)
                                      : lx_second_order(std::move(s.grid), dt);
    s.field = compute_field(s.grid, solver_);
    return s;
}

InhomogeneousState FluxIntegralOperators::advect_v(State s, double dt) const
{
    s.grid = kind_ == SchemeKind::af3 ? lv_third_order(std::move(s.grid), s.field, dt)
                                      : lv_second_order(std::move(s.grid), s.field, dt);
    return s;
}

DiscrepancyOperators::DiscrepancyOperators(const DomainSpec& domain, advect1d::DistributionParams params)
    : params_(params), solver_(2 * domain.n_x)
{
    params_.validate();
}

HomogeneousState DiscrepancyOperators::initial_state(HomogeneousGrid grid) const
{
    FieldProfile field = compute_field(grid, solver_);
    return {std::move(grid), std::move(field)};
}

HomogeneousState DiscrepancyOperators::advect_x(State s, double dt) const
{
    s.grid = lx_dd(std::move(s.grid), dt, params_);
    s.field = compute_field(s.grid, solver_);
    return s;
}

HomogeneousState DiscrepancyOperators::advect_v(State s, double dt) const
{
    s.grid = lv_dd(std::move(s.grid), s.field, dt, params_);
    return s;
}

} // namespace afvp
