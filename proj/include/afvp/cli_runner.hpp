#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "afvp/diagnostics.hpp"

namespace afvp {

struct SimConfig {
    InitialCondition problem = InitialCondition::weak_landau();
    DomainSpec domain = InitialCondition::preset_domain(ProblemKind::weak_landau, 64, 64);
    SchemeKind scheme = SchemeKind::af3;
    SplittingKind splitting = SplittingKind::strang;
    double cfl = 0.3183098861837907; // 1/pi
    double t_max = 15.0;
    advect1d::DistributionParams distribution;
    InitQuadrature init_quadrature = InitQuadrature::analytic_quadrature;
    int diag_every = 1;
    std::vector<double> snapshot_times;
    std::filesystem::path output_dir = "output";

    /// Throws ConfigError on an invalid combination.
    void validate() const;
    /// Same config at n_x = n_v = n.
    SimConfig at_resolution(int n) const;
};

/// Flat "key = value" text, '#' starts a comment. Keys not given fall back to
/// the preset of `problem`. Unknown keys, duplicate keys and malformed values
/// raise ConfigError.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::filesystem::path& path);

/// Fixed step dt = cfl * min(dx / |v|max, dv / |E|max) with |E|max taken from
/// the initial field.
double time_step(const SimConfig& config, double e_max);

struct SimulationObserver {
    std::function<void(const DiagnosticsRow&)> on_diagnostics;
    /// Cell averages at a requested snapshot time.
    std::function<void(double t, const Array2D& cell_avg)> on_snapshot;
};

struct SimulationResult {
    double dt = 0.0;
    int steps = 0;
    double t_final = 0.0;
    Array2D cell_avg;
    std::vector<DiagnosticsRow> diagnostics;
};

/// Runs one simulation in memory. Diagnostics are recorded at t = 0, every
/// diag_every steps and at t_max. Throws CflError on a Courant violation.
SimulationResult simulate(const SimConfig& config, const SimulationObserver& observer = {});

struct RunOptions {
    bool histopolate = false;
};

/// Writes diagnostics.csv and snapshot_<k>.csv (plus points_<k>.csv when
/// histopolating) into config.output_dir.
SimulationResult run(const SimConfig& config, const RunOptions& options = {});

struct ConvergenceRow {
    int n = 0;
    double eps = 0.0;
    std::optional<double> order; ///< against the previous level
};

/// Self-convergence against a finer run of the same config. Levels and the
/// reference must be powers of two and the reference strictly the largest.
std::vector<ConvergenceRow> convergence(const SimConfig& config, std::vector<int> levels, int reference);

/// Writes convergence.csv (columns n,eps_vp,order) into config.output_dir.
void write_convergence(const SimConfig& config, const std::vector<ConvergenceRow>& table);

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_cfl = 3, exit_io = 4 };

} // namespace afvp
