#pragma once

#include <cstdlib>
#include <limits>
#include <utility>
#include <vector>

namespace netcover {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LpColumn {
    double lower = 0.0;
    double upper = kInf;
    double cost = 0.0;
};

/// Row stored as  terms . x + slack = rhs;  the slack bounds encode the
/// sense: [0, inf) for <=, [0, 0] for =, (-inf, 0] for >=. Free slack bounds
/// keep a row inert until they are tightened.
struct LpRow {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
    double slack_lower = 0.0;
    double slack_upper = kInf;
};

struct StandardLp {
    std::vector<LpColumn> columns;
    std::vector<LpRow> rows;
};

enum class SimplexStatus {
    Optimal,
    Infeasible,
    Unbounded,
    CutoffReached,
    IterationLimit,
    NumericalFailure,
};

/// Bounded-variable simplex over a dense tableau. Minimizes. Re-optimizes
/// from the previous basis after bound changes (dual simplex), which is what
/// branch-and-bound node solves need; falls back to a fresh slack basis and,
/// when no dual-feasible start exists, to a feasibility pass followed by the
/// primal method. Deterministic pivot rules with a Bland fallback on stalls.
class SimplexEngine {
  public:
    explicit SimplexEngine(StandardLp lp);

    void set_column_bounds(int j, double lower, double upper);
    void set_slack_bounds(int row, double lower, double upper);
    void reset_overrides();

    /// Stops early with CutoffReached once the objective (a valid dual bound
    /// throughout the dual method) exceeds `cutoff`.
    SimplexStatus optimize(double cutoff = kInf);

    double objective() const { return objective_; }
    double column_value(int j) const;
    double slack_value(int row) const { return column_value(n_struct_ + row); }
    double row_dual(int row) const;
    long iterations() const { return iterations_; }
    int structural_count() const { return n_struct_; }
    int row_count() const { return m_; }

  private:
    enum class State : unsigned char { Basic, AtLower, AtUpper, FreeNonbasic };

    double& tab(int i, int j) {
        return tableau_[static_cast<size_t>(i) * static_cast<size_t>(n_total_) +
                        static_cast<size_t>(j)];
    }
    const double& tab(int i, int j) const {
        return tableau_[static_cast<size_t>(i) * static_cast<size_t>(n_total_) +
                        static_cast<size_t>(j)];
    }

    double nonbasic_value(int j) const;
    void refresh_basic_values();
    void refresh_reduced_costs();
    void recompute_objective();
    bool repair_nonbasic_states();
    void reset_basis();
    bool refactorize();
    void pivot(int row, int entering, double entering_delta);

    SimplexStatus dual_loop(double cutoff);
    SimplexStatus primal_loop();
    SimplexStatus finish_or_retry(double cutoff, int attempt);
    bool iteration_budget_exhausted() const {
        return iterations_ - budget_start_ > kMaxIterations;
    }

    StandardLp lp_;
    int n_struct_ = 0;
    int m_ = 0;
    int n_total_ = 0;

    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<double> cost_;

    std::vector<double> tableau_;  // m x n_total, row-major: B^-1 [A | I]
    std::vector<double> rhs_col_;  // B^-1 b
    std::vector<int> basic_col_;   // row -> column
    std::vector<int> basic_row_;   // column -> row or -1
    std::vector<State> state_;
    std::vector<double> basic_value_;

    std::vector<double> reduced_;
    double objective_ = 0.0;
    long iterations_ = 0;
    long budget_start_ = 0;
    long rebuild_count_ = 0;
    bool basis_valid_ = false;
    bool bland_mode_ = false;
    long stall_count_ = 0;

    static constexpr double kFeasTol = 1e-7;
    static constexpr double kDualTol = 1e-9;
    // Entering pivots below this magnitude amplify rounding error too much
    // for a long-lived tableau.
    static constexpr double kPivotTol = 1e-7;
    static constexpr long kStallLimit = 500;
    static constexpr long kMaxIterations = 200000;
};

}  // namespace netcover
