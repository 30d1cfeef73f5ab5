#include <doctest.h>

#include <cmath>
#include <random>

#include "netcover/simplex.hpp"

using namespace netcover;

namespace {

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Independent optimality certificate: primal feasibility, dual sign
/// conditions derived from the reported row duals, and complementary
/// slackness. Does not rely on any solver internals beyond values/duals.
void check_kkt(const StandardLp& lp, const SimplexEngine& engine) {
    const double tol = 1e-6;
    const int n = static_cast<int>(lp.columns.size());
    std::vector<double> x(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) x[static_cast<size_t>(j)] = engine.column_value(j);

    for (int j = 0; j < n; ++j) {
        CHECK(x[static_cast<size_t>(j)] >= lp.columns[static_cast<size_t>(j)].lower - tol);
        CHECK(x[static_cast<size_t>(j)] <= lp.columns[static_cast<size_t>(j)].upper + tol);
    }
    std::vector<double> activity(lp.rows.size(), 0.0);
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        for (const auto& [j, c] : lp.rows[i].terms) {
            activity[i] += c * x[static_cast<size_t>(j)];
        }
        double slack = lp.rows[i].rhs - activity[i];
        CHECK(slack >= lp.rows[i].slack_lower - tol);
        CHECK(slack <= lp.rows[i].slack_upper + tol);
    }

    // Reduced costs from the reported duals.
    for (int j = 0; j < n; ++j) {
        double d = lp.columns[static_cast<size_t>(j)].cost;
        for (size_t i = 0; i < lp.rows.size(); ++i) {
            for (const auto& [col, c] : lp.rows[i].terms) {
                if (col == j) d -= engine.row_dual(static_cast<int>(i)) * c;
            }
        }
        bool at_lower =
            x[static_cast<size_t>(j)] <= lp.columns[static_cast<size_t>(j)].lower + tol;
        bool at_upper =
            x[static_cast<size_t>(j)] >= lp.columns[static_cast<size_t>(j)].upper - tol;
        if (at_lower && at_upper) continue;  // fixed, any sign
        if (at_lower) {
            CHECK(d >= -tol);
        } else if (at_upper) {
            CHECK(d <= tol);
        } else {
            CHECK(std::abs(d) <= tol);
        }
    }

    // Complementary slackness on the rows.
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        double y = engine.row_dual(static_cast<int>(i));
        double slack = lp.rows[i].rhs - activity[i];
        bool at_lo = slack <= lp.rows[i].slack_lower + tol;
        bool at_hi = slack >= lp.rows[i].slack_upper - tol;
        if (std::abs(y) > tol) CHECK((at_lo || at_hi));
    }
}

StandardLp random_lp(std::mt19937_64& rng) {
    StandardLp lp;
    int n = 2 + static_cast<int>(rng() % 6);
    int m = 1 + static_cast<int>(rng() % 6);
    std::vector<double> x0(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
        double lo = u01(rng) < 0.3 ? -1.0 : 0.0;
        double span = 0.5 + 2.0 * u01(rng);
        bool open = u01(rng) < 0.25;
        double cost = std::round((u01(rng) * 2.0 - 1.0) * 4.0) / 4.0;
        if (open && cost < 0.0) cost = -cost;  // keep the LP bounded
        lp.columns.push_back({lo, open ? kInf : lo + span, cost});
        x0[static_cast<size_t>(j)] = lo + u01(rng) * span;
    }
    for (int i = 0; i < m; ++i) {
        LpRow row;
        double act = 0.0;
        for (int j = 0; j < n; ++j) {
            if (u01(rng) < 0.6) {
                double c = std::round((u01(rng) * 4.0 - 2.0) * 4.0) / 4.0;
                if (c == 0.0) continue;
                row.terms.push_back({j, c});
                act += c * x0[static_cast<size_t>(j)];
            }
        }
        double kind = u01(rng);
        if (kind < 0.4) {
            row.slack_lower = 0.0;
            row.slack_upper = kInf;
            row.rhs = act + u01(rng);  // <= with slack at x0
        } else if (kind < 0.8) {
            row.slack_lower = -kInf;
            row.slack_upper = 0.0;
            row.rhs = act - u01(rng);  // >= with slack at x0
        } else {
            row.slack_lower = 0.0;
            row.slack_upper = 0.0;
            row.rhs = act;  // = tight at x0
        }
        lp.rows.push_back(std::move(row));
    }
    return lp;
}

}  // namespace

TEST_SUITE_BEGIN("simplex");

TEST_CASE("bound-driven minimum") {
    StandardLp lp;
    lp.columns.push_back({0.0, 1.0, 1.0});
    LpRow row;
    row.terms = {{0, 1.0}};
    row.rhs = 0.4;
    row.slack_lower = -kInf;
    row.slack_upper = 0.0;
    lp.rows.push_back(row);
    SimplexEngine engine(std::move(lp));
    CHECK(engine.optimize() == SimplexStatus::Optimal);
    CHECK(engine.objective() == doctest::Approx(0.4));
    CHECK(engine.column_value(0) == doctest::Approx(0.4));
}

TEST_CASE("infeasible contradiction row") {
    StandardLp lp;
    lp.columns.push_back({0.0, 1.0, 1.0});
    LpRow row;  // 0*y >= 1
    row.rhs = 1.0;
    row.slack_lower = -kInf;
    row.slack_upper = 0.0;
    lp.rows.push_back(row);
    SimplexEngine engine(std::move(lp));
    CHECK(engine.optimize() == SimplexStatus::Infeasible);
}

TEST_CASE("unbounded below") {
    StandardLp lp;
    lp.columns.push_back({0.0, kInf, -1.0});
    SimplexEngine engine(std::move(lp));
    CHECK(engine.optimize() == SimplexStatus::Unbounded);
}

TEST_CASE("negative costs pushed to finite uppers") {
    StandardLp lp;
    lp.columns.push_back({0.0, 2.0, -1.0});
    lp.columns.push_back({0.0, 3.0, -0.5});
    LpRow row;  // x0 + x1 <= 4
    row.terms = {{0, 1.0}, {1, 1.0}};
    row.rhs = 4.0;
    lp.rows.push_back(row);
    SimplexEngine engine(std::move(lp));
    CHECK(engine.optimize() == SimplexStatus::Optimal);
    CHECK(engine.objective() == doctest::Approx(-3.0));  // x0=2, x1=2
}

TEST_CASE("equality rows and free slacks stay inert until enforced") {
    StandardLp lp;
    lp.columns.push_back({0.0, 10.0, 1.0});
    LpRow hard;  // x = 3
    hard.terms = {{0, 1.0}};
    hard.rhs = 3.0;
    hard.slack_lower = 0.0;
    hard.slack_upper = 0.0;
    lp.rows.push_back(hard);
    LpRow soft;  // x >= 5, disabled
    soft.terms = {{0, 1.0}};
    soft.rhs = 5.0;
    soft.slack_lower = -kInf;
    soft.slack_upper = kInf;
    lp.rows.push_back(soft);
    SimplexEngine engine(std::move(lp));
    REQUIRE(engine.optimize() == SimplexStatus::Optimal);
    CHECK(engine.objective() == doctest::Approx(3.0));

    engine.set_slack_bounds(1, -kInf, 0.0);  // now x >= 5 conflicts with x = 3
    CHECK(engine.optimize() == SimplexStatus::Infeasible);

    engine.set_slack_bounds(1, -kInf, kInf);
    REQUIRE(engine.optimize() == SimplexStatus::Optimal);
    CHECK(engine.objective() == doctest::Approx(3.0));
}

TEST_CASE("cutoff stops early with a valid bound") {
    StandardLp lp;
    lp.columns.push_back({0.0, kInf, 1.0});
    LpRow row;  // x >= 7
    row.terms = {{0, 1.0}};
    row.rhs = 7.0;
    row.slack_lower = -kInf;
    row.slack_upper = 0.0;
    lp.rows.push_back(row);
    SimplexEngine engine(std::move(lp));
    SimplexStatus s = engine.optimize(2.5);
    CHECK((s == SimplexStatus::CutoffReached || s == SimplexStatus::Optimal));
    if (s == SimplexStatus::CutoffReached) CHECK(engine.objective() > 2.5);
}

TEST_CASE("random LPs satisfy the optimality certificate") {
    std::mt19937_64 rng(20240613);
    int optimal_seen = 0;
    for (int it = 0; it < 300; ++it) {
        StandardLp lp = random_lp(rng);
        StandardLp copy = lp;
        SimplexEngine engine(std::move(copy));
        SimplexStatus s = engine.optimize();
        REQUIRE((s == SimplexStatus::Optimal || s == SimplexStatus::Unbounded ||
                 s == SimplexStatus::Infeasible));
        // Construction keeps a feasible point, so infeasible must not occur.
        CHECK(s != SimplexStatus::Infeasible);
        if (s == SimplexStatus::Optimal) {
            ++optimal_seen;
            check_kkt(lp, engine);
        }
    }
    CHECK(optimal_seen > 200);
}

TEST_CASE("warm restart after bound changes matches a fresh solve") {
    std::mt19937_64 rng(777);
    for (int it = 0; it < 60; ++it) {
        StandardLp lp = random_lp(rng);
        StandardLp warm_copy = lp;
        SimplexEngine warm(std::move(warm_copy));
        if (warm.optimize() != SimplexStatus::Optimal) continue;

        for (int round = 0; round < 4; ++round) {
            int j = static_cast<int>(rng() % lp.columns.size());
            double lo = lp.columns[static_cast<size_t>(j)].lower;
            double hi = lp.columns[static_cast<size_t>(j)].upper;
            double nlo = lo, nhi = hi;
            if (u01(rng) < 0.5) {
                nlo = nhi = lo;  // fix at the lower bound
            } else if (std::isfinite(hi)) {
                nlo = nhi = hi;
            }
            warm.reset_overrides();
            warm.set_column_bounds(j, nlo, nhi);
            SimplexStatus ws = warm.optimize();

            StandardLp fresh_lp = lp;
            fresh_lp.columns[static_cast<size_t>(j)].lower = nlo;
            fresh_lp.columns[static_cast<size_t>(j)].upper = nhi;
            SimplexEngine fresh(std::move(fresh_lp));
            SimplexStatus fs = fresh.optimize();

            REQUIRE(ws == fs);
            if (ws == SimplexStatus::Optimal) {
                CHECK(warm.objective() ==
                      doctest::Approx(fresh.objective()).epsilon(1e-6));
            }
        }
    }
}

TEST_SUITE_END();
