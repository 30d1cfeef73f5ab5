#include "netcover/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace netcover {

namespace {

constexpr double kIntTol = 1e-6;

struct LoweredLp {
    StandardLp lp;
    /// Slack bounds of each indicator's row, keyed by indicator index; the
    /// row is inert (free slack) until enforced.
    struct IndicatorRow {
        int row = 0;
        double slack_lower = 0.0;
        double slack_upper = kInf;
    };
    std::vector<IndicatorRow> indicator_rows;
};

void slack_bounds_for(RowSense sense, double& lo, double& hi) {
    switch (sense) {
        case RowSense::LessEqual: lo = 0.0; hi = kInf; break;
        case RowSense::Equal: lo = 0.0; hi = 0.0; break;
        case RowSense::GreaterEqual: lo = -kInf; hi = 0.0; break;
    }
}

LoweredLp to_standard(const Model& model) {
    LoweredLp out;
    StandardLp& lp = out.lp;
    lp.columns.reserve(model.variables().size());
    for (const auto& v : model.variables()) {
        lp.columns.push_back({v.lower, v.upper, 0.0});
    }
    double sign = model.minimize() ? 1.0 : -1.0;
    for (const auto& t : model.objective_terms()) {
        lp.columns[static_cast<size_t>(t.var)].cost += sign * t.coeff;
    }
    for (const auto& c : model.constraints()) {
        LpRow row;
        for (const auto& t : c.terms) row.terms.push_back({t.var, t.coeff});
        row.rhs = c.rhs;
        slack_bounds_for(c.sense, row.slack_lower, row.slack_upper);
        lp.rows.push_back(std::move(row));
    }
    for (const auto& c : model.indicators()) {
        LpRow row;
        for (const auto& t : c.terms) row.terms.push_back({t.var, t.coeff});
        row.rhs = c.rhs;
        double lo = 0.0, hi = kInf;
        slack_bounds_for(c.sense, lo, hi);
        row.slack_lower = -kInf;
        row.slack_upper = kInf;
        out.indicator_rows.push_back(
            {static_cast<int>(lp.rows.size()), lo, hi});
        lp.rows.push_back(std::move(row));
    }
    return out;
}

double objective_sign(const Model& model) {
    return model.minimize() ? 1.0 : -1.0;
}

}  // namespace

LpResult solve_lp(const Model& model, const LpOptions& options) {
    LoweredLp lowered = to_standard(model);
    SimplexEngine engine(std::move(lowered.lp));
    for (int k : options.enforced_indicators) {
        if (k < 0 || k >= static_cast<int>(lowered.indicator_rows.size())) {
            throw ModelError("enforced indicator index out of range");
        }
        const auto& ir = lowered.indicator_rows[static_cast<size_t>(k)];
        engine.set_slack_bounds(ir.row, ir.slack_lower, ir.slack_upper);
    }
    for (const auto& [var, lo, hi] : options.bound_overrides) {
        engine.set_column_bounds(var, lo, hi);
    }
    SimplexStatus s = engine.optimize(options.objective_cutoff);

    LpResult result;
    result.iterations = engine.iterations();
    switch (s) {
        case SimplexStatus::Optimal: result.status = LpStatus::Optimal; break;
        case SimplexStatus::Infeasible:
            result.status = LpStatus::Infeasible;
            return result;
        case SimplexStatus::Unbounded:
            result.status = LpStatus::Unbounded;
            return result;
        case SimplexStatus::CutoffReached:
            result.status = LpStatus::Optimal;  // objective is a valid bound
            break;
        default: result.status = LpStatus::Error; return result;
    }
    result.objective = objective_sign(model) * engine.objective();
    result.values.resize(model.variables().size());
    for (size_t j = 0; j < model.variables().size(); ++j) {
        result.values[j] = engine.column_value(static_cast<int>(j));
    }
    return result;
}

namespace {

struct Node {
    long id = 0;
    double bound = -kInf;
    std::vector<std::pair<int, int>> fixes;  // (binary var, value)
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
        return a.id < b.id;                                // newest first
    }
};

}  // namespace

SolveResult branch_and_bound(const Model& model, const Network& net,
                             const SolveConfig& config) {
    if (!model.minimize()) {
        throw ModelError("branch and bound expects a minimization objective");
    }
    auto steady_now = [] {
        return std::chrono::duration<double>(
                   std::chrono::steady_clock::now().time_since_epoch())
            .count();
    };
    std::function<double()> now = config.clock ? config.clock : steady_now;
    const double start = now();
    const double gap_eps = 1e-6;

    LoweredLp lowered = to_standard(model);
    SimplexEngine engine(std::move(lowered.lp));

    std::vector<int> binaries;
    for (int j = 0; j < static_cast<int>(model.variables().size()); ++j) {
        if (model.variables()[static_cast<size_t>(j)].kind == VarKind::Binary) {
            binaries.push_back(j);
        }
    }
    // Indicators triggered by each binary, for lazy enforcement.
    std::map<int, std::vector<int>> indicators_of;
    for (int k = 0; k < static_cast<int>(model.indicators().size()); ++k) {
        indicators_of[model.indicators()[static_cast<size_t>(k)].binary_var]
            .push_back(k);
    }

    SolveResult result;
    double primal = kInfBound;
    std::vector<double> best_assignment;
    std::optional<Cover> best_cover;
    if (config.warm_cover) {
        primal = static_cast<double>(config.warm_cover->size());
        best_cover = config.warm_cover;
    }

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    std::multiset<double> open_bounds;
    std::optional<Node> plunge;
    bool search_found_incumbent = false;
    long next_id = 0;
    long nodes = 0;
    SolveStatus status = SolveStatus::Optimal;
    bool hit_time_limit = false;

    open.push(Node{next_id++, -kInfBound, {}});
    open_bounds.insert(-kInfBound);

    auto cutoff_for = [&] {
        if (!std::isfinite(primal)) return kInf;
        return primal - config.absolute_gap + gap_eps;
    };

    auto load_node = [&](const Node& node) {
        engine.reset_overrides();
        for (auto [var, value] : node.fixes) {
            engine.set_column_bounds(var, value, value);
        }
        for (auto [var, value] : node.fixes) {
            auto it = indicators_of.find(var);
            if (it == indicators_of.end()) continue;
            for (int k : it->second) {
                const auto& ind = model.indicators()[static_cast<size_t>(k)];
                if (ind.trigger_value == value) {
                    const auto& ir =
                        lowered.indicator_rows[static_cast<size_t>(k)];
                    engine.set_slack_bounds(ir.row, ir.slack_lower,
                                            ir.slack_upper);
                }
            }
        }
    };

    auto row_violation = [&](const IndicatorConstraint& ind) {
        double lhs = 0.0;
        for (const auto& t : ind.terms) {
            lhs += t.coeff * engine.column_value(t.var);
        }
        switch (ind.sense) {
            case RowSense::LessEqual: return lhs - ind.rhs;
            case RowSense::GreaterEqual: return ind.rhs - lhs;
            case RowSense::Equal: return std::abs(lhs - ind.rhs);
        }
        return 0.0;
    };

    while (true) {
        if (now() - start > config.time_limit_seconds) {
            hit_time_limit = true;
            break;
        }
        Node node;
        if (plunge && !search_found_incumbent) {
            node = std::move(*plunge);
            plunge.reset();
        } else {
            if (plunge) {
                open_bounds.insert(plunge->bound);
                open.push(std::move(*plunge));
                plunge.reset();
            }
            if (open.empty()) break;
            node = open.top();
            open.pop();
            open_bounds.erase(open_bounds.find(node.bound));
        }

        if (node.bound > cutoff_for()) continue;

        load_node(node);
        SimplexStatus lp_status = engine.optimize(cutoff_for());
        ++nodes;

        if (std::getenv("NETCOVER_DEBUG_DUMP") != nullptr) {
            std::fprintf(stderr, "node %ld status=%d obj=%.6f fixes:", node.id,
                         (int)lp_status, engine.objective());
            for (auto [var, value] : node.fixes) {
                std::fprintf(stderr, " %s=%d",
                             model.variables()[(size_t)var].name.c_str(),
                             value);
            }
            std::fprintf(stderr, "\n");
        }
        if (std::getenv("NETCOVER_DEBUG_NODES") != nullptr) {
            LoweredLp relowered = to_standard(model);
            SimplexEngine fresh(std::move(relowered.lp));
            for (auto [var, value] : node.fixes) {
                fresh.set_column_bounds(var, value, value);
            }
            for (auto [var, value] : node.fixes) {
                auto it = indicators_of.find(var);
                if (it == indicators_of.end()) continue;
                for (int k : it->second) {
                    const auto& ind = model.indicators()[static_cast<size_t>(k)];
                    if (ind.trigger_value == value) {
                        const auto& ir =
                            lowered.indicator_rows[static_cast<size_t>(k)];
                        fresh.set_slack_bounds(ir.row, ir.slack_lower,
                                               ir.slack_upper);
                    }
                }
            }
            SimplexStatus fs = fresh.optimize();
            bool mismatch = fs != lp_status &&
                            !(lp_status == SimplexStatus::CutoffReached &&
                              fs == SimplexStatus::Optimal);
            if (!mismatch && fs == SimplexStatus::Optimal &&
                lp_status == SimplexStatus::Optimal) {
                mismatch = std::abs(fresh.objective() - engine.objective()) > 1e-5;
            }
            if (mismatch) {
                std::fprintf(stderr,
                             "NODE MISMATCH id=%ld warm=%d fresh=%d warmobj=%.9f freshobj=%.9f fixes=%zu\n",
                             node.id, (int)lp_status, (int)fs,
                             engine.objective(), fresh.objective(),
                             node.fixes.size());
            }
        }

        if (lp_status == SimplexStatus::Infeasible) continue;
        if (lp_status == SimplexStatus::CutoffReached) continue;
        if (lp_status != SimplexStatus::Optimal) {
            throw std::runtime_error("node relaxation failed numerically");
        }

        double bound = std::max(engine.objective(), node.bound);
        if (bound > cutoff_for()) continue;

        // Branching candidate: most fractional binary.
        int branch_var = -1;
        double branch_value = 0.0;
        double best_frac_score = -1.0;
        for (int j : binaries) {
            double v = engine.column_value(j);
            double frac = std::abs(v - std::round(v));
            if (frac <= kIntTol) continue;
            double score = 0.5 - std::abs(v - 0.5);
            bool take = score > best_frac_score + 1e-12;
            if (!take && score > best_frac_score - 1e-12 && branch_var >= 0) {
                take = model.variables()[static_cast<size_t>(j)].name <
                       model.variables()[static_cast<size_t>(branch_var)].name;
            }
            if (take) {
                branch_var = j;
                branch_value = v;
                best_frac_score = score;
            }
        }

        if (branch_var < 0) {
            // Integral point; enforce any indicator triggered but unmet.
            std::set<int> enforced;
            for (auto [var, value] : node.fixes) {
                auto it = indicators_of.find(var);
                if (it == indicators_of.end()) continue;
                for (int k : it->second) {
                    if (model.indicators()[static_cast<size_t>(k)]
                            .trigger_value == value) {
                        enforced.insert(k);
                    }
                }
            }
            int violated_binary = -1;
            for (int k = 0; k < static_cast<int>(model.indicators().size());
                 ++k) {
                if (enforced.count(k)) continue;
                const auto& ind = model.indicators()[static_cast<size_t>(k)];
                double bv = engine.column_value(ind.binary_var);
                if (std::abs(bv - ind.trigger_value) > kIntTol) continue;
                if (row_violation(ind) > 1e-7) {
                    if (violated_binary < 0 ||
                        model.variables()[static_cast<size_t>(ind.binary_var)]
                                .name <
                            model.variables()[static_cast<size_t>(
                                                  violated_binary)]
                                .name) {
                        violated_binary = ind.binary_var;
                    }
                }
            }
            if (violated_binary >= 0) {
                branch_var = violated_binary;
                branch_value = engine.column_value(violated_binary);
            } else {
                double value = 0.0;
                for (const auto& t : model.objective_terms()) {
                    double v = engine.column_value(t.var);
                    if (model.variables()[static_cast<size_t>(t.var)].kind ==
                        VarKind::Binary) {
                        v = std::round(v);
                    }
                    value += t.coeff * v;
                }
                value = std::round(value);
                if (value < primal - gap_eps) {
                    primal = value;
                    best_assignment.resize(model.variables().size());
                    for (size_t j = 0; j < model.variables().size(); ++j) {
                        double v = engine.column_value(static_cast<int>(j));
                        if (model.variables()[j].kind == VarKind::Binary) {
                            v = std::round(v);
                        }
                        best_assignment[j] = v;
                    }
                    search_found_incumbent = true;
                }
                continue;
            }
        }

        bool up_first = branch_value >= 0.5;
        Node child_first{next_id++, bound, node.fixes};
        child_first.fixes.emplace_back(branch_var, up_first ? 1 : 0);
        Node child_second{next_id++, bound, node.fixes};
        child_second.fixes.emplace_back(branch_var, up_first ? 0 : 1);

        open_bounds.insert(child_second.bound);
        open.push(std::move(child_second));
        if (!search_found_incumbent) {
            plunge = std::move(child_first);
        } else {
            open_bounds.insert(child_first.bound);
            open.push(std::move(child_first));
        }
    }

    result.node_count = nodes;
    result.wall_seconds = now() - start;
    if (!std::isfinite(primal)) {
        result.status =
            hit_time_limit ? SolveStatus::TimeLimit : SolveStatus::Infeasible;
        result.primal_bound = kInfBound;
        result.dual_bound = hit_time_limit ? 0.0 : kInfBound;
        result.gap = 1.0;
        return result;
    }

    // Dual bound: the open nodes limit it under a time limit; on a completed
    // search every pruned value is within the configured gap of the
    // incumbent, and the integral objective rounds that up.
    double dual;
    if (hit_time_limit) {
        double open_min = kInfBound;
        if (plunge) open_min = std::min(open_min, plunge->bound);
        if (!open_bounds.empty()) {
            open_min = std::min(open_min, *open_bounds.begin());
        }
        if (!std::isfinite(open_min) && open_min < 0.0) open_min = 0.0;
        dual = std::min(primal, std::ceil(std::min(open_min, primal) - gap_eps));
        status = SolveStatus::TimeLimit;
    } else {
        double slack = std::max(0.0, std::ceil(config.absolute_gap) - 1.0);
        dual = primal - slack;
        status = dual >= primal - gap_eps ? SolveStatus::Optimal
                                          : SolveStatus::GapLimit;
    }
    result.primal_bound = primal;
    result.dual_bound = dual;
    result.gap = primal > 0.0
                     ? std::clamp((primal - dual) / primal, 0.0, 1.0)
                     : 0.0;
    if (hit_time_limit && result.gap <= gap_eps) status = SolveStatus::Optimal;
    result.status = status;
    result.assignment = best_assignment;
    if (!best_assignment.empty()) {
        result.incumbent = extract_solution(model, best_assignment, net);
    } else {
        result.incumbent = best_cover;
    }
    return result;
}

}  // namespace netcover
