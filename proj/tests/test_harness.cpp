#include <doctest.h>

#include <cmath>
#include <sstream>

#include "netcover/harness.hpp"
#include "netcover/verify.hpp"

using namespace netcover;

TEST_SUITE_BEGIN("harness");

TEST_CASE("radius policy") {
    Network p3 = Network::parse("3 2\n1 2 1.0\n2 3 1.0");
    CHECK(radius_for(p3, RadiusKind::Small) == doctest::Approx(1.0));
    CHECK(radius_for(p3, RadiusKind::Large) == doctest::Approx(2.0));

    Network mixed = Network::parse("4 3\n1 2 1\n2 3 2\n3 4 3");
    CHECK(radius_for(mixed, RadiusKind::Small) == doctest::Approx(2.0));

    Network single = Network::parse("2 1\n1 2 2.0");
    CHECK(radius_for(single, RadiusKind::Large) == doctest::Approx(4.0));
}

TEST_CASE("shifted geometric mean") {
    CHECK(shifted_geometric_mean({1.0, 3.0}, 1.0) ==
          doctest::Approx(2.0 * std::sqrt(2.0) - 1.0).epsilon(1e-12));
    CHECK(shifted_geometric_mean({5.0}, 0.0) == doctest::Approx(5.0));
    CHECK(shifted_geometric_mean({0.0, 0.0}, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(shifted_geometric_mean({}, 1.0), std::invalid_argument);

    // Permutation invariance.
    CHECK(shifted_geometric_mean({0.2, 7.0, 1.5}, 0.01) ==
          doctest::Approx(shifted_geometric_mean({7.0, 0.2, 1.5}, 0.01))
              .epsilon(1e-13));
}

TEST_CASE("solve metrics") {
    SolveResult r;
    r.primal_bound = 3.0;
    r.dual_bound = 2.0;
    GapMetrics gm = solve_metrics(r, 4);
    CHECK(gm.sigma == doctest::Approx(1.0 / 3.0));

    r.primal_bound = 2.0;
    r.dual_bound = 2.0;
    gm = solve_metrics(r, 4);
    CHECK(gm.sigma == doctest::Approx(0.0));
    CHECK(gm.vr == doctest::Approx(0.5));
}

TEST_CASE("random generation") {
    Network k5 = gen_random(5, 1.0, 7);
    CHECK(k5.vertex_count() == 5);
    CHECK(k5.edge_count() == 10);

    Network tiny = gen_random(2, 1.0, 3);
    CHECK(tiny.edge_count() == 1);

    // Determinism and the length range.
    Network a = gen_random(9, 0.3, 42);
    Network b = gen_random(9, 0.3, 42);
    REQUIRE(a.edge_count() == b.edge_count());
    for (int e = 0; e < a.edge_count(); ++e) {
        CHECK(a.edge(e).a == b.edge(e).a);
        CHECK(a.edge(e).b == b.edge(e).b);
        CHECK(a.edge(e).length == b.edge(e).length);
        CHECK(a.edge(e).length >= 0.5);
        CHECK(a.edge(e).length <= 1.5);
    }

    Network c = gen_random(9, 0.3, 43);
    bool differs = c.edge_count() != a.edge_count();
    if (!differs) {
        for (int e = 0; e < a.edge_count(); ++e) {
            if (a.edge(e).length != c.edge(e).length) differs = true;
        }
    }
    CHECK(differs);
}

TEST_CASE("random generation repairs connectivity") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Network net = gen_random(8, 0.15, seed);  // often disconnected raw
        CHECK(net.vertex_count() == 8);           // construction validates
    }
}

TEST_CASE("solve_csc pipeline") {
    Network p2 = Network::parse("2 1\n1 2 2.0");
    CscRun run = solve_csc(p2, 1.0, {FormulationTag::EFP, false, true});
    CHECK(run.split.node_count == 3);
    CHECK(run.result.status == SolveStatus::Optimal);
    CHECK(run.result.primal_bound == doctest::Approx(1.0));
}

TEST_CASE("bench records, sentinel rows and reproducibility") {
    std::vector<std::pair<std::string, Network>> instances;
    instances.emplace_back("p3", Network::parse("3 2\n1 2 1.0\n2 3 1.0"));
    instances.emplace_back("tri", Network::parse("3 3\n1 2 1\n1 3 1\n2 3 1"));

    BenchOptions opts;
    opts.forms = {{FormulationTag::EFP, false, true},
                  {FormulationTag::EFPD, false, true}};
    opts.radii = {RadiusKind::Small, RadiusKind::Large};
    opts.time_limit_seconds = 600.0;
    // Deterministic fake clock so the CSV is byte-stable.
    opts.clock = [t = 0.0]() mutable { return t += 0.001; };

    BenchResult first = run_bench(instances, opts);
    CHECK(first.records.size() == 2 * 2 * 2);
    for (const auto& rec : first.records) {
        CHECK(rec.status == "optimal");
        CHECK(rec.sigma == doctest::Approx(0.0));
        CHECK(rec.vr > 0.0);
        CHECK(rec.vr <= 1.0);
    }

    opts.clock = [t = 0.0]() mutable { return t += 0.001; };
    BenchResult second = run_bench(instances, opts);
    CHECK(first.records_csv() == second.records_csv());
    CHECK(first.summary_csv() == second.summary_csv());
    CHECK(first.profile_csv() == second.profile_csv());

    // All-optimal batch aggregates to a zero gap mean.
    std::istringstream summary(first.summary_csv());
    std::string line;
    std::getline(summary, line);  // header
    int rows = 0;
    while (std::getline(summary, line)) {
        ++rows;
        std::istringstream fields(line);
        std::string field;
        for (int i = 0; i < 4; ++i) std::getline(fields, field, ',');
        CHECK(std::abs(std::stod(field)) < 1e-12);  // sgm_sigma
    }
    CHECK(rows == 4);  // two forms x two radii
}

TEST_CASE("failure sentinel row") {
    MetricsRecord rec = failure_record("x", "efp", "small", 1800.0);
    CHECK(rec.time_s == 1800.0);
    CHECK(rec.sigma == 1.0);
    CHECK(rec.vr == 1.0);
    CHECK(rec.status == "failed");
}

TEST_CASE("time-limited runs keep honest partial metrics") {
    std::vector<std::pair<std::string, Network>> instances;
    instances.emplace_back("tri", Network::parse("3 3\n1 2 1\n1 3 1\n2 3 1"));
    BenchOptions opts;
    opts.forms = {{FormulationTag::EFP, false, true}};
    opts.radii = {RadiusKind::Small};
    opts.time_limit_seconds = 0.0;
    opts.clock = [t = 0.0]() mutable { return t += 1.0; };
    BenchResult res = run_bench(instances, opts);
    REQUIRE(res.records.size() == 1);
    CHECK(res.records[0].status == "time-limit");
    CHECK(res.records[0].sigma > 0.0);
}

TEST_SUITE_END();
