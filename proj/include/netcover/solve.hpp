#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "netcover/formulations.hpp"
#include "netcover/model.hpp"
#include "netcover/simplex.hpp"

namespace netcover {

enum class LpStatus { Optimal, Infeasible, Unbounded, Error };

struct LpResult {
    LpStatus status = LpStatus::Error;
    double objective = 0.0;
    std::vector<double> values;  // one per model variable
    long iterations = 0;
};

struct LpOptions {
    /// Indices into model.indicators() whose implied rows are enforced;
    /// all other indicators are ignored.
    std::vector<int> enforced_indicators;
    /// Extra bounds applied on top of the declared ones: (var, lo, hi).
    std::vector<std::tuple<int, double, double>> bound_overrides;
    /// Binaries are relaxed to [0,1] regardless (the LP never branches).
    double objective_cutoff = kInf;
};

/// Solves the continuous relaxation of the model.
LpResult solve_lp(const Model& model, const LpOptions& options = {});

enum class SolveStatus { Optimal, GapLimit, TimeLimit, Infeasible };

struct SolveConfig {
    double time_limit_seconds = kInfBound;
    /// Termination / pruning gap; 1.0 exploits the integral objective.
    double absolute_gap = 1.0;
    /// Initial incumbent (a known cover and its objective value).
    std::optional<Cover> warm_cover;
    /// Injected clock in seconds; defaults to the steady clock.
    std::function<double()> clock;
};

struct SolveResult {
    std::optional<Cover> incumbent;
    /// Variable values of the best solution found by the search; empty when
    /// the warm cover was never improved.
    std::vector<double> assignment;
    double primal_bound = kInfBound;
    double dual_bound = 0.0;
    double gap = 1.0;  // (primal - dual) / primal, clamped to [0, 1]
    long node_count = 0;
    double wall_seconds = 0.0;
    SolveStatus status = SolveStatus::Infeasible;
};

/// Branch-and-bound with best-bound node selection (newest-node tie break),
/// depth-first plunging until the first incumbent found by the search, lazy
/// indicator enforcement, and the integral-objective gap rule. The network
/// is needed to read covers off incumbents.
SolveResult branch_and_bound(const Model& model, const Network& net,
                             const SolveConfig& config = {});

}  // namespace netcover
