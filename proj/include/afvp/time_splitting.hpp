#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "afvp/field_solver.hpp"
#include "afvp/operators2d.hpp"

namespace afvp {

enum class SplittingKind { lie, strang, yoshida };

std::string to_string(SplittingKind kind);
SplittingKind parse_splitting_kind(const std::string& name);

/// Triple-jump composition weights: 2 gamma1 + gamma2 = 1.
struct YoshidaWeights {
    double gamma1;
    double gamma2;
};

inline YoshidaWeights yoshida_weights() noexcept
{
    const double c = std::cbrt(2.0);
    return {1.0 / (2.0 - c), -c / (2.0 - c)};
}

struct InhomogeneousState {
    InhomogeneousGrid grid;
    FieldProfile field;
};

struct HomogeneousState {
    HomogeneousGrid grid;
    FieldProfile field;
};

/// A pair of split operators over a state carrying f and E. advect_x must
/// leave a freshly solved field in the state; advect_v must not touch it.
template <class Ops>
concept SplitOperators = requires(const Ops& ops, typename Ops::State s, double dt) {
    { ops.advect_x(std::move(s), dt) } -> std::same_as<typename Ops::State>;
    { ops.advect_v(std::move(s), dt) } -> std::same_as<typename Ops::State>;
};

/// Active Flux on the split inhomogeneous grid with either the second-order
/// (product of averages) or third-order (nine-point) flux integral.
class FluxIntegralOperators {
public:
    using State = InhomogeneousState;

    FluxIntegralOperators(SchemeKind kind, const DomainSpec& domain);

    State initial_state(InhomogeneousGrid grid) const;
    State advect_x(State state, double dt) const;
    State advect_v(State state, double dt) const;

    SchemeKind kind() const noexcept { return kind_; }
    const PoissonSolver& solver() const noexcept { return solver_; }

private:
    SchemeKind kind_;
    PoissonSolver solver_;
};

/// Discrepancy-distribution Active Flux on the homogeneous point lattice.
class DiscrepancyOperators {
public:
    using State = HomogeneousState;

    DiscrepancyOperators(const DomainSpec& domain, advect1d::DistributionParams params = {});

    State initial_state(HomogeneousGrid grid) const;
    State advect_x(State state, double dt) const;
    State advect_v(State state, double dt) const;

    const advect1d::DistributionParams& params() const noexcept { return params_; }
    const PoissonSolver& solver() const noexcept { return solver_; }

private:
    advect1d::DistributionParams params_;
    PoissonSolver solver_;
};

namespace detail {

template <class F>
decltype(auto) labelled(const std::string& label, F&& f)
{
    try {
        return f();
    } catch (const CflError& e) {
        throw e.within(label);
    }
}

template <SplitOperators Ops>
typename Ops::State strang(typename Ops::State s, double dt, const Ops& ops, const std::string& tag)
{
    s = labelled(tag + " L_X(1/2)", [&] { return ops.advect_x(std::move(s), 0.5 * dt); });
    s = labelled(tag + " L_V", [&] { return ops.advect_v(std::move(s), dt); });
    s = labelled(tag + " L_X(2/2)", [&] { return ops.advect_x(std::move(s), 0.5 * dt); });
    return s;
}

} // namespace detail

/// One full time step. Lie: L_X(dt), L_V(dt). Strang: L_X(dt/2), L_V(dt),
/// L_X(dt/2). Yoshida: Strang with gamma1 dt, gamma2 dt, gamma1 dt. CFL
/// violations are rethrown with the sub-step named.
template <SplitOperators Ops>
typename Ops::State step(typename Ops::State state, double dt, SplittingKind kind, const Ops& ops)
{
    switch (kind) {
    case SplittingKind::lie:
        state = detail::labelled("lie L_X", [&] { return ops.advect_x(std::move(state), dt); });
        return detail::labelled("lie L_V", [&] { return ops.advect_v(std::move(state), dt); });
    case SplittingKind::strang:
        return detail::strang(std::move(state), dt, ops, "strang");
    case SplittingKind::yoshida: {
        const auto w = yoshida_weights();
        state = detail::strang(std::move(state), w.gamma1 * dt, ops, "yoshida stage 1");
        state = detail::strang(std::move(state), w.gamma2 * dt, ops, "yoshida stage 2");
        return detail::strang(std::move(state), w.gamma1 * dt, ops, "yoshida stage 3");
    }
    }
    return state;
}

} // namespace afvp
