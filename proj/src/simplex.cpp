#include "netcover/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace netcover {

SimplexEngine::SimplexEngine(StandardLp lp) : lp_(std::move(lp)) {
    n_struct_ = static_cast<int>(lp_.columns.size());
    m_ = static_cast<int>(lp_.rows.size());
    n_total_ = n_struct_ + m_;
    for (const auto& row : lp_.rows) {
        for (const auto& [j, coeff] : row.terms) {
            (void)coeff;
            if (j < 0 || j >= n_struct_) {
                throw std::invalid_argument("row references unknown column");
            }
        }
    }
    reset_overrides();
    reset_basis();
}

void SimplexEngine::reset_overrides() {
    lower_.assign(static_cast<size_t>(n_total_), 0.0);
    upper_.assign(static_cast<size_t>(n_total_), 0.0);
    cost_.assign(static_cast<size_t>(n_total_), 0.0);
    for (int j = 0; j < n_struct_; ++j) {
        lower_[static_cast<size_t>(j)] = lp_.columns[static_cast<size_t>(j)].lower;
        upper_[static_cast<size_t>(j)] = lp_.columns[static_cast<size_t>(j)].upper;
        cost_[static_cast<size_t>(j)] = lp_.columns[static_cast<size_t>(j)].cost;
    }
    for (int i = 0; i < m_; ++i) {
        lower_[static_cast<size_t>(n_struct_ + i)] =
            lp_.rows[static_cast<size_t>(i)].slack_lower;
        upper_[static_cast<size_t>(n_struct_ + i)] =
            lp_.rows[static_cast<size_t>(i)].slack_upper;
    }
}

void SimplexEngine::set_column_bounds(int j, double lower, double upper) {
    lower_[static_cast<size_t>(j)] = lower;
    upper_[static_cast<size_t>(j)] = upper;
}

void SimplexEngine::set_slack_bounds(int row, double lower, double upper) {
    lower_[static_cast<size_t>(n_struct_ + row)] = lower;
    upper_[static_cast<size_t>(n_struct_ + row)] = upper;
}

double SimplexEngine::nonbasic_value(int j) const {
    switch (state_[static_cast<size_t>(j)]) {
        case State::AtLower: return lower_[static_cast<size_t>(j)];
        case State::AtUpper: return upper_[static_cast<size_t>(j)];
        case State::FreeNonbasic: return 0.0;
        case State::Basic: break;
    }
    return basic_value_[static_cast<size_t>(basic_row_[static_cast<size_t>(j)])];
}

double SimplexEngine::column_value(int j) const { return nonbasic_value(j); }

double SimplexEngine::row_dual(int row) const {
    // Slack columns have zero cost, so their reduced cost equals -dual.
    int j = n_struct_ + row;
    if (state_[static_cast<size_t>(j)] == State::Basic) return 0.0;
    return -reduced_[static_cast<size_t>(j)];
}

void SimplexEngine::refresh_basic_values() {
    for (int i = 0; i < m_; ++i) {
        basic_value_[static_cast<size_t>(i)] = rhs_col_[static_cast<size_t>(i)];
    }
    for (int j = 0; j < n_total_; ++j) {
        if (state_[static_cast<size_t>(j)] == State::Basic) continue;
        double xj = nonbasic_value(j);
        if (xj == 0.0) continue;
        for (int i = 0; i < m_; ++i) {
            basic_value_[static_cast<size_t>(i)] -= tab(i, j) * xj;
        }
    }
}

void SimplexEngine::refresh_reduced_costs() {
    for (int j = 0; j < n_total_; ++j) {
        reduced_[static_cast<size_t>(j)] = cost_[static_cast<size_t>(j)];
    }
    for (int i = 0; i < m_; ++i) {
        double cb = cost_[static_cast<size_t>(basic_col_[static_cast<size_t>(i)])];
        if (cb == 0.0) continue;
        for (int j = 0; j < n_total_; ++j) {
            reduced_[static_cast<size_t>(j)] -= cb * tab(i, j);
        }
    }
    for (int i = 0; i < m_; ++i) {
        reduced_[static_cast<size_t>(basic_col_[static_cast<size_t>(i)])] = 0.0;
    }
}

void SimplexEngine::recompute_objective() {
    double z = 0.0;
    for (int j = 0; j < n_total_; ++j) {
        double c = cost_[static_cast<size_t>(j)];
        if (c != 0.0) z += c * column_value(j);
    }
    objective_ = z;
}

void SimplexEngine::reset_basis() {
    tableau_.assign(static_cast<size_t>(m_) * static_cast<size_t>(n_total_), 0.0);
    rhs_col_.assign(static_cast<size_t>(m_), 0.0);
    basic_col_.assign(static_cast<size_t>(m_), 0);
    basic_row_.assign(static_cast<size_t>(n_total_), -1);
    state_.assign(static_cast<size_t>(n_total_), State::AtLower);
    basic_value_.assign(static_cast<size_t>(m_), 0.0);
    reduced_.assign(static_cast<size_t>(n_total_), 0.0);

    for (int i = 0; i < m_; ++i) {
        const LpRow& row = lp_.rows[static_cast<size_t>(i)];
        for (const auto& [j, coeff] : row.terms) tab(i, j) += coeff;
        tab(i, n_struct_ + i) = 1.0;
        rhs_col_[static_cast<size_t>(i)] = row.rhs;
        basic_col_[static_cast<size_t>(i)] = n_struct_ + i;
        basic_row_[static_cast<size_t>(n_struct_ + i)] = i;
        state_[static_cast<size_t>(n_struct_ + i)] = State::Basic;
    }
    for (int j = 0; j < n_struct_; ++j) {
        double lo = lower_[static_cast<size_t>(j)];
        double hi = upper_[static_cast<size_t>(j)];
        double c = cost_[static_cast<size_t>(j)];
        State s;
        if (c >= 0.0) {
            s = std::isfinite(lo) ? State::AtLower
                                  : (std::isfinite(hi) ? State::AtUpper
                                                       : State::FreeNonbasic);
        } else {
            s = std::isfinite(hi) ? State::AtUpper
                                  : (std::isfinite(lo) ? State::AtLower
                                                       : State::FreeNonbasic);
        }
        state_[static_cast<size_t>(j)] = s;
        reduced_[static_cast<size_t>(j)] = c;
    }
    refresh_basic_values();
    recompute_objective();
    basis_valid_ = true;
    bland_mode_ = false;
    stall_count_ = 0;
    ++rebuild_count_;
}

bool SimplexEngine::refactorize() {
    std::vector<double> bmat(static_cast<size_t>(m_) * static_cast<size_t>(m_),
                             0.0);
    std::vector<double> binv(static_cast<size_t>(m_) * static_cast<size_t>(m_),
                             0.0);
    auto m_at = [&](int i, int j) -> double& {
        return bmat[static_cast<size_t>(i) * static_cast<size_t>(m_) +
                    static_cast<size_t>(j)];
    };
    auto b_at = [&](int i, int j) -> double& {
        return binv[static_cast<size_t>(i) * static_cast<size_t>(m_) +
                    static_cast<size_t>(j)];
    };
    for (int k = 0; k < m_; ++k) {
        int col = basic_col_[static_cast<size_t>(k)];
        if (col >= n_struct_) {
            m_at(col - n_struct_, k) = 1.0;
        } else {
            for (int i = 0; i < m_; ++i) {
                for (const auto& [j, coeff] :
                     lp_.rows[static_cast<size_t>(i)].terms) {
                    if (j == col) m_at(i, k) += coeff;
                }
            }
        }
        b_at(k, k) = 1.0;
    }
    // Gauss-Jordan [B | I] -> [I | B^-1], partial pivoting.
    for (int k = 0; k < m_; ++k) {
        int piv = -1;
        double best = 1e-12;
        for (int i = k; i < m_; ++i) {
            double v = std::abs(m_at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (piv < 0) return false;
        if (piv != k) {
            for (int j = 0; j < m_; ++j) {
                std::swap(m_at(piv, j), m_at(k, j));
                std::swap(b_at(piv, j), b_at(k, j));
            }
        }
        double inv = 1.0 / m_at(k, k);
        for (int j = 0; j < m_; ++j) {
            m_at(k, j) *= inv;
            b_at(k, j) *= inv;
        }
        for (int i = 0; i < m_; ++i) {
            if (i == k) continue;
            double f = m_at(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j < m_; ++j) {
                m_at(i, j) -= f * m_at(k, j);
                b_at(i, j) -= f * b_at(k, j);
            }
        }
    }
    std::fill(tableau_.begin(), tableau_.end(), 0.0);
    for (int i = 0; i < m_; ++i) {
        for (int r = 0; r < m_; ++r) {
            double f = b_at(i, r);
            if (f == 0.0) continue;
            for (const auto& [j, coeff] : lp_.rows[static_cast<size_t>(r)].terms) {
                tab(i, j) += f * coeff;
            }
            tab(i, n_struct_ + r) = f;
        }
        double rhs = 0.0;
        for (int r = 0; r < m_; ++r) {
            rhs += b_at(i, r) * lp_.rows[static_cast<size_t>(r)].rhs;
        }
        rhs_col_[static_cast<size_t>(i)] = rhs;
    }
    refresh_basic_values();
    refresh_reduced_costs();
    recompute_objective();
    ++rebuild_count_;
    return true;
}

void SimplexEngine::pivot(int row, int entering, double entering_delta) {
    const double ark = tab(row, entering);
    const double dq = reduced_[static_cast<size_t>(entering)];
    const int leaving = basic_col_[static_cast<size_t>(row)];
    const double entering_value = nonbasic_value(entering) + entering_delta;

    for (int i = 0; i < m_; ++i) {
        if (i == row) continue;
        basic_value_[static_cast<size_t>(i)] -= tab(i, entering) * entering_delta;
    }

    const double inv = 1.0 / ark;
    double* prow = &tab(row, 0);
    for (int j = 0; j < n_total_; ++j) prow[j] *= inv;
    rhs_col_[static_cast<size_t>(row)] *= inv;

    for (int i = 0; i < m_; ++i) {
        if (i == row) continue;
        double f = tab(i, entering);
        if (f == 0.0) continue;
        double* irow = &tab(i, 0);
        for (int j = 0; j < n_total_; ++j) irow[j] -= f * prow[j];
        rhs_col_[static_cast<size_t>(i)] -= f * rhs_col_[static_cast<size_t>(row)];
    }
    if (dq != 0.0) {
        for (int j = 0; j < n_total_; ++j) {
            reduced_[static_cast<size_t>(j)] -= dq * prow[j];
        }
    }
    reduced_[static_cast<size_t>(entering)] = 0.0;

    basic_col_[static_cast<size_t>(row)] = entering;
    basic_row_[static_cast<size_t>(entering)] = row;
    basic_row_[static_cast<size_t>(leaving)] = -1;
    state_[static_cast<size_t>(entering)] = State::Basic;
    basic_value_[static_cast<size_t>(row)] = entering_value;

    objective_ += dq * entering_delta;
    ++iterations_;
}

bool SimplexEngine::repair_nonbasic_states() {
    for (int j = 0; j < n_total_; ++j) {
        State s = state_[static_cast<size_t>(j)];
        if (s == State::Basic) continue;
        double lo = lower_[static_cast<size_t>(j)];
        double hi = upper_[static_cast<size_t>(j)];
        double d = reduced_[static_cast<size_t>(j)];
        if (s == State::AtLower && !std::isfinite(lo)) {
            if (std::isfinite(hi) && d <= kDualTol) {
                state_[static_cast<size_t>(j)] = State::AtUpper;
            } else if (std::abs(d) <= kDualTol) {
                state_[static_cast<size_t>(j)] = State::FreeNonbasic;
            } else {
                return false;
            }
        } else if (s == State::AtUpper && !std::isfinite(hi)) {
            if (std::isfinite(lo) && d >= -kDualTol) {
                state_[static_cast<size_t>(j)] = State::AtLower;
            } else if (std::abs(d) <= kDualTol) {
                state_[static_cast<size_t>(j)] = State::FreeNonbasic;
            } else {
                return false;
            }
        }
    }
    return true;
}

SimplexStatus SimplexEngine::dual_loop(double cutoff) {
    long local_iter = 0;
    while (true) {
        if (iteration_budget_exhausted()) return SimplexStatus::IterationLimit;
        if (objective_ > cutoff) return SimplexStatus::CutoffReached;

        int row = -1;
        int best_col = n_total_;
        double worst = kFeasTol;
        for (int i = 0; i < m_; ++i) {
            int col = basic_col_[static_cast<size_t>(i)];
            double v = basic_value_[static_cast<size_t>(i)];
            double lo = lower_[static_cast<size_t>(col)];
            double hi = upper_[static_cast<size_t>(col)];
            double viol = 0.0;
            if (v < lo - kFeasTol) viol = lo - v;
            else if (v > hi + kFeasTol) viol = v - hi;
            if (viol == 0.0) continue;
            bool take = bland_mode_
                            ? col < best_col
                            : (viol > worst ||
                               (viol == worst && col < best_col));
            if (take) {
                if (!bland_mode_) worst = viol;
                best_col = col;
                row = i;
            }
        }
        if (row < 0) return SimplexStatus::Optimal;

        const int leave_col = basic_col_[static_cast<size_t>(row)];
        const double v = basic_value_[static_cast<size_t>(row)];
        const double hi = upper_[static_cast<size_t>(leave_col)];
        const double lo = lower_[static_cast<size_t>(leave_col)];
        const double e = v > hi + kFeasTol ? 1.0 : -1.0;
        const double target = e > 0.0 ? hi : lo;

        int entering = -1;
        double best_theta = kInf;
        double best_alpha = 0.0;
        const double* prow = &tab(row, 0);
        for (int j = 0; j < n_total_; ++j) {
            State s = state_[static_cast<size_t>(j)];
            if (s == State::Basic) continue;
            double alpha = prow[j];
            if (std::abs(alpha) < kPivotTol) continue;
            double theta;
            if (s == State::FreeNonbasic) {
                theta = 0.0;
            } else {
                if (upper_[static_cast<size_t>(j)] -
                        lower_[static_cast<size_t>(j)] <
                    kDualTol) {
                    continue;  // fixed columns cannot absorb anything
                }
                double ea = e * alpha;
                bool candidate = (s == State::AtLower && ea > 0.0) ||
                                 (s == State::AtUpper && ea < 0.0);
                if (!candidate) continue;
                theta = reduced_[static_cast<size_t>(j)] / ea;
                if (theta < 0.0) theta = 0.0;  // tolerate dual drift
            }
            bool take;
            if (entering < 0) {
                take = true;
            } else if (bland_mode_) {
                take = theta < best_theta - 1e-12 ||
                       (theta <= best_theta + 1e-12 && j < entering);
            } else {
                take = theta < best_theta - 1e-12 ||
                       (theta <= best_theta + 1e-12 &&
                        std::abs(alpha) > std::abs(best_alpha));
            }
            if (take) {
                entering = j;
                best_theta = theta;
                best_alpha = alpha;
            }
        }
        if (entering < 0) return SimplexStatus::Infeasible;

        double delta = (v - target) / tab(row, entering);
        double old_obj = objective_;
        pivot(row, entering, delta);
        state_[static_cast<size_t>(leave_col)] =
            e > 0.0 ? State::AtUpper : State::AtLower;

        if (objective_ > old_obj + 1e-12) {
            stall_count_ = 0;
            bland_mode_ = false;
        } else if (++stall_count_ > kStallLimit) {
            bland_mode_ = true;
        }
        if (++local_iter % 4096 == 0) {
            refresh_basic_values();
            recompute_objective();
        }
    }
}

SimplexStatus SimplexEngine::primal_loop() {
    long local_iter = 0;
    while (true) {
        if (iteration_budget_exhausted()) return SimplexStatus::IterationLimit;

        int entering = -1;
        double best_score = kDualTol;
        for (int j = 0; j < n_total_; ++j) {
            State s = state_[static_cast<size_t>(j)];
            if (s == State::Basic) continue;
            double d = reduced_[static_cast<size_t>(j)];
            double score = 0.0;
            if (s == State::AtLower && d < -kDualTol) score = -d;
            else if (s == State::AtUpper && d > kDualTol) score = d;
            else if (s == State::FreeNonbasic && std::abs(d) > kDualTol)
                score = std::abs(d);
            if (score == 0.0) continue;
            if (s != State::FreeNonbasic &&
                upper_[static_cast<size_t>(j)] - lower_[static_cast<size_t>(j)] <
                    kDualTol) {
                continue;
            }
            if (bland_mode_) {
                entering = j;
                break;
            }
            if (score > best_score) {
                entering = j;
                best_score = score;
            }
        }
        if (entering < 0) return SimplexStatus::Optimal;

        const double d = reduced_[static_cast<size_t>(entering)];
        const State es = state_[static_cast<size_t>(entering)];
        double dir;
        if (es == State::AtLower) dir = 1.0;
        else if (es == State::AtUpper) dir = -1.0;
        else dir = d > 0.0 ? -1.0 : 1.0;

        double limit = kInf;
        if (es != State::FreeNonbasic) {
            double span = upper_[static_cast<size_t>(entering)] -
                          lower_[static_cast<size_t>(entering)];
            if (std::isfinite(span)) limit = span;
        }
        int block_row = -1;
        double block_bound = 0.0;
        for (int i = 0; i < m_; ++i) {
            double alpha = tab(i, entering);
            if (std::abs(alpha) < kPivotTol) continue;
            double rate = -alpha * dir;  // d(basic_i)/d(step), step >= 0
            int col = basic_col_[static_cast<size_t>(i)];
            double bv = basic_value_[static_cast<size_t>(i)];
            double bound =
                rate > 0.0 ? upper_[static_cast<size_t>(col)]
                           : lower_[static_cast<size_t>(col)];
            if (!std::isfinite(bound)) continue;
            double allowed = (bound - bv) / rate;
            if (allowed < 0.0) allowed = 0.0;
            bool take = false;
            if (allowed < limit - 1e-12) {
                take = true;
            } else if (allowed <= limit + 1e-12) {
                if (block_row < 0) {
                    take = true;  // prefer a pivot over a bound flip on ties
                } else if (bland_mode_) {
                    take = col < basic_col_[static_cast<size_t>(block_row)];
                } else {
                    take = std::abs(alpha) >
                           std::abs(tab(block_row, entering));
                }
            }
            if (take) {
                limit = std::min(limit, allowed);
                block_row = i;
                block_bound = bound;
            }
        }

        if (!std::isfinite(limit)) return SimplexStatus::Unbounded;

        double old_obj = objective_;
        if (block_row < 0) {
            // Bound flip.
            double step = dir * limit;
            for (int i = 0; i < m_; ++i) {
                double a = tab(i, entering);
                if (a != 0.0) basic_value_[static_cast<size_t>(i)] -= a * step;
            }
            objective_ += d * step;
            state_[static_cast<size_t>(entering)] =
                es == State::AtLower ? State::AtUpper : State::AtLower;
            ++iterations_;
        } else {
            int leave_col = basic_col_[static_cast<size_t>(block_row)];
            pivot(block_row, entering, dir * limit);
            state_[static_cast<size_t>(leave_col)] =
                block_bound == upper_[static_cast<size_t>(leave_col)]
                    ? State::AtUpper
                    : State::AtLower;
        }

        if (objective_ < old_obj - 1e-12) {
            stall_count_ = 0;
            bland_mode_ = false;
        } else if (++stall_count_ > kStallLimit) {
            bland_mode_ = true;
        }
        if (++local_iter % 4096 == 0) {
            refresh_basic_values();
            recompute_objective();
        }
    }
}

SimplexStatus SimplexEngine::finish_or_retry(double cutoff, int attempt) {
    // Post-solve audit on freshly evaluated values: bounds on the basics and
    // sign-consistent recomputed reduced costs. Recover by refactorizing,
    // then by starting over from a clean slack basis.
    refresh_basic_values();
    recompute_objective();
    bool clean = true;
    for (int i = 0; i < m_ && clean; ++i) {
        int col = basic_col_[static_cast<size_t>(i)];
        double v = basic_value_[static_cast<size_t>(i)];
        if (v < lower_[static_cast<size_t>(col)] - 10 * kFeasTol ||
            v > upper_[static_cast<size_t>(col)] + 10 * kFeasTol) {
            clean = false;
        }
    }
    if (clean) {
        refresh_reduced_costs();
        for (int j = 0; j < n_total_ && clean; ++j) {
            State s = state_[static_cast<size_t>(j)];
            if (s == State::Basic) continue;
            if (upper_[static_cast<size_t>(j)] -
                    lower_[static_cast<size_t>(j)] <
                kDualTol) {
                continue;
            }
            double d = reduced_[static_cast<size_t>(j)];
            if (s == State::AtLower && d < -1e-6) clean = false;
            if (s == State::AtUpper && d > 1e-6) clean = false;
            if (s == State::FreeNonbasic && std::abs(d) > 1e-6) clean = false;
        }
    }
    if (clean) return SimplexStatus::Optimal;

    if (attempt == 0) {
        if (!refactorize()) return SimplexStatus::NumericalFailure;
    } else if (attempt == 1) {
        reset_basis();
    } else {
        return SimplexStatus::NumericalFailure;
    }
    SimplexStatus s = dual_loop(cutoff);
    if (s != SimplexStatus::Optimal) return s;
    return finish_or_retry(cutoff, attempt + 1);
}

SimplexStatus SimplexEngine::optimize(double cutoff) {
    budget_start_ = iterations_;
    const long stamp_at_entry = rebuild_count_;
    bool warm = basis_valid_ && repair_nonbasic_states();
    if (!warm) reset_basis();

    bool dual_ok = true;
    for (int j = 0; j < n_total_ && dual_ok; ++j) {
        State s = state_[static_cast<size_t>(j)];
        if (s == State::Basic) continue;
        if (upper_[static_cast<size_t>(j)] - lower_[static_cast<size_t>(j)] <
            kDualTol) {
            continue;
        }
        double d = reduced_[static_cast<size_t>(j)];
        if (s == State::AtLower && d < -1e-6) dual_ok = false;
        if (s == State::AtUpper && d > 1e-6) dual_ok = false;
        if (s == State::FreeNonbasic && std::abs(d) > 1e-6) dual_ok = false;
    }

    refresh_basic_values();
    recompute_objective();

    if (dual_ok) {
        SimplexStatus s = dual_loop(cutoff);
        if (s == SimplexStatus::Optimal) return finish_or_retry(cutoff, 0);
        if (s == SimplexStatus::Infeasible &&
            rebuild_count_ == stamp_at_entry) {
            // Certify against drift in an inherited tableau: rebuild from
            // this basis and re-run; then from a clean basis.
            if (!refactorize()) return SimplexStatus::NumericalFailure;
            s = dual_loop(cutoff);
            if (s == SimplexStatus::Optimal) return finish_or_retry(cutoff, 1);
            if (s == SimplexStatus::Infeasible) {
                reset_basis();
                s = dual_loop(cutoff);
                if (s == SimplexStatus::Optimal) {
                    return finish_or_retry(cutoff, 2);
                }
            }
        }
        if (s != SimplexStatus::NumericalFailure) return s;
    }

    // No dual-feasible start: find any feasible basis with zero costs, then
    // optimize with the primal method (which also detects unboundedness).
    std::vector<double> saved_cost = cost_;
    std::fill(cost_.begin(), cost_.end(), 0.0);
    reset_basis();
    SimplexStatus feas = dual_loop(kInf);
    cost_ = std::move(saved_cost);
    // The zero-cost pass left reduced costs that do not match the restored
    // objective; resynchronize before any exit so a later warm start never
    // inherits them.
    refresh_reduced_costs();
    recompute_objective();
    if (feas == SimplexStatus::Infeasible) return SimplexStatus::Infeasible;
    if (feas != SimplexStatus::Optimal) return feas;
    SimplexStatus s = primal_loop();
    if (s == SimplexStatus::Optimal) return finish_or_retry(kInf, 0);
    return s;
}

}  // namespace netcover
