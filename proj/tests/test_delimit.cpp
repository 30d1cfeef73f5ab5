#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "netcover/delimitation.hpp"

using namespace netcover;

namespace {

Network path3() { return Network::parse("3 2\n1 2 1.0\n2 3 1.0"); }

/// Brute-force worst pair distance on a grid; the test oracle for the
/// closed form. 201 samples per edge = 200 intervals.
double grid_worst_pair(const Network& net, const DistanceMatrix& dm, int e,
                       int ep, int steps = 200) {
    double worst = 0.0;
    const Edge& ee = net.edge(e);
    const Edge& pe = net.edge(ep);
    for (int i = 0; i <= steps; ++i) {
        double s = ee.length * i / steps;
        for (int j = 0; j <= steps; ++j) {
            double t = pe.length * j / steps;
            worst = std::max(worst, point_distance(net, dm, {e, s}, {ep, t}));
        }
    }
    return worst;
}

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

bool has_pair(const std::vector<Delimitation::Pair>& pairs, int edge,
              EndpointTag tag) {
    for (const auto& p : pairs) {
        if (p.edge == edge && p.tag == tag) return true;
    }
    return false;
}

}  // namespace

TEST_SUITE_BEGIN("delimit");

TEST_CASE("path delimitation sets at unit radius") {
    Network net = path3();
    DistanceMatrix dm = all_pairs_distances(net);
    Delimitation d = build_delimitation(net, dm, 1.0);

    // Potential covers of vertex 1: both edges (node 2 of (2,3) within 1).
    CHECK(d.potential[0] == std::vector<int>{0, 1});

    // Complete covers: only the edge itself on a unit path.
    CHECK(d.complete[0] == std::vector<int>{0});
    CHECK(d.complete[1] == std::vector<int>{1});

    CHECK(d.partial[0] == std::vector<int>{1});
    CHECK(d.partial[1] == (std::vector<int>{0, 1}));
    CHECK(d.partial[2] == std::vector<int>{0});

    REQUIRE(d.pairs[0].size() == 1);
    CHECK(d.pairs[0][0].edge == 1);
    CHECK(d.pairs[0][0].tag == EndpointTag::A);
    CHECK(d.pairs[0][0].endpoint_distance == doctest::Approx(1.0));

    CHECK(d.pairs[1].size() == 4);
    CHECK(has_pair(d.pairs[1], 0, EndpointTag::A));
    CHECK(has_pair(d.pairs[1], 0, EndpointTag::B));
    CHECK(has_pair(d.pairs[1], 1, EndpointTag::A));
    CHECK(has_pair(d.pairs[1], 1, EndpointTag::B));

    REQUIRE(d.pairs[2].size() == 1);
    CHECK(d.pairs[2][0].edge == 0);
    CHECK(d.pairs[2][0].tag == EndpointTag::B);

    // Inverse relation is consistent.
    for (int v = 0; v < net.vertex_count(); ++v) {
        for (const auto& pr : d.pairs[static_cast<size_t>(v)]) {
            bool found = false;
            for (const auto& vt : d.inverse_pairs[static_cast<size_t>(pr.edge)]) {
                if (vt.vertex == v && vt.tag == pr.tag) found = true;
            }
            CHECK(found);
        }
    }
}

TEST_CASE("incident edges always appear in the potential covers") {
    Network net = Network::parse("4 4\n1 2 0.9\n2 3 1.0\n3 4 0.4\n1 4 0.8");
    DistanceMatrix dm = all_pairs_distances(net);
    Delimitation d = build_delimitation(net, dm, 1.0);
    for (int v = 0; v < net.vertex_count(); ++v) {
        for (int e : net.incident_edges(v)) {
            CHECK(contains(d.potential[static_cast<size_t>(v)], e));
        }
    }
}

TEST_CASE("closed-form worst pair distance matches the grid oracle") {
    std::vector<Network> nets;
    nets.push_back(path3());
    nets.push_back(Network::parse("3 3\n1 2 1\n1 3 1\n2 3 1"));
    nets.push_back(Network::parse("4 4\n1 2 0.9\n2 3 1.0\n3 4 0.4\n1 4 0.8"));
    nets.push_back(Network::parse(
        "5 6\n1 2 1.0\n2 3 0.7\n3 4 0.9\n4 5 0.6\n1 5 0.8\n2 4 1.0"));
    for (const Network& net : nets) {
        DistanceMatrix dm = all_pairs_distances(net);
        for (int e = 0; e < net.edge_count(); ++e) {
            for (int ep = 0; ep < net.edge_count(); ++ep) {
                double exact = worst_pair_distance(net, dm, e, ep);
                double grid = grid_worst_pair(net, dm, e, ep);
                double step_bound =
                    (net.edge(e).length + net.edge(ep).length) / 400.0;
                CHECK(exact >= grid - 1e-9);
                CHECK(exact <= grid + step_bound * (1.0 + 1e-6) + 1e-9);
            }
        }
    }
}

TEST_CASE("complete covers agree with the grid oracle away from the boundary") {
    Network net = Network::parse(
        "5 6\n1 2 1.0\n2 3 0.7\n3 4 0.9\n4 5 0.6\n1 5 0.8\n2 4 1.0");
    DistanceMatrix dm = all_pairs_distances(net);
    double radius = 1.05;
    Delimitation d = build_delimitation(net, dm, radius);
    for (int e = 0; e < net.edge_count(); ++e) {
        for (int ep = 0; ep < net.edge_count(); ++ep) {
            double grid = grid_worst_pair(net, dm, e, ep);
            double step_bound =
                (net.edge(e).length + net.edge(ep).length) / 400.0;
            bool member = contains(d.complete[static_cast<size_t>(e)], ep);
            if (grid > radius + step_bound) CHECK_FALSE(member);
            if (grid + step_bound <= radius) CHECK(member);
        }
    }
}

TEST_CASE("trivial delimitation") {
    Network net = path3();
    DistanceMatrix dm = all_pairs_distances(net);
    Delimitation d = trivial_delimitation(net, dm, 1.0);
    CHECK(d.pairs[0].size() == 4);  // 2 edges x 2 tags, no distance filter
    CHECK(d.complete[0] == std::vector<int>{0});
    CHECK(d.partial[0] == (std::vector<int>{0, 1}));

    Network p2 = Network::parse("2 1\n1 2 2.0");
    SplitResult split = split_edges(p2, 1.0);
    DistanceMatrix sdm = all_pairs_distances(split.network);
    Delimitation sd = trivial_delimitation(split.network, sdm, 1.0);
    for (int v = 0; v < split.network.vertex_count(); ++v) {
        CHECK(sd.pairs[static_cast<size_t>(v)].size() == 4);
    }
}

TEST_CASE("delimited pairs are a subset of the trivial pairs") {
    Network net = Network::parse(
        "5 6\n1 2 1.0\n2 3 0.7\n3 4 0.9\n4 5 0.6\n1 5 0.8\n2 4 1.0");
    DistanceMatrix dm = all_pairs_distances(net);
    for (double radius : {1.0, 1.4, 2.0}) {
        Delimitation delim = build_delimitation(net, dm, radius);
        Delimitation triv = trivial_delimitation(net, dm, radius);
        for (int v = 0; v < net.vertex_count(); ++v) {
            for (const auto& pr : delim.pairs[static_cast<size_t>(v)]) {
                CHECK(has_pair(triv.pairs[static_cast<size_t>(v)], pr.edge,
                               pr.tag));
                CHECK(pr.endpoint_distance <= radius + kDistanceTol);
            }
            CHECK(delim.pairs[static_cast<size_t>(v)].size() <=
                  triv.pairs[static_cast<size_t>(v)].size());
        }
    }
}

TEST_CASE("delimitation rejects a violated length assumption") {
    Network p2 = Network::parse("2 1\n1 2 2.0");
    DistanceMatrix dm = all_pairs_distances(p2);
    CHECK_THROWS_AS(build_delimitation(p2, dm, 1.0), std::invalid_argument);
}

TEST_CASE("big-M constants") {
    Network net = path3();
    DistanceMatrix dm = all_pairs_distances(net);
    Delimitation d = build_delimitation(net, dm, 1.0);
    BigMConstants trivial = bigm_constants(net, dm, 1.0, d, false);
    BigMConstants tight = bigm_constants(net, dm, 1.0, d, true);

    for (double mv : trivial.vertex_m) CHECK(mv == doctest::Approx(1.0));
    for (double mv : tight.vertex_m) CHECK(mv == doctest::Approx(1.0));

    // Vertex 1 against ((2,3), a): d = 1, so tightened equals trivial.
    CHECK(tight.pair_m[0][0] == doctest::Approx(2.0));
    CHECK(trivial.pair_m[0][0] == doctest::Approx(2.0));

    // Incident pair at distance zero tightens to the edge length alone.
    const auto& pairs1 = d.pairs[1];
    for (size_t k = 0; k < pairs1.size(); ++k) {
        if (pairs1[k].endpoint_distance == doctest::Approx(0.0)) {
            CHECK(tight.pair_m[1][k] == doctest::Approx(1.0));
            CHECK(trivial.pair_m[1][k] == doctest::Approx(2.0));
        }
    }

    // Tightened never exceeds trivial on filtered pairs.
    for (size_t v = 0; v < d.pairs.size(); ++v) {
        for (size_t k = 0; k < d.pairs[v].size(); ++k) {
            CHECK(tight.pair_m[v][k] <= trivial.pair_m[v][k] + 1e-12);
        }
    }
}

TEST_CASE("trivial constants stay valid on unfiltered far pairs") {
    // A long path has pairs with endpoint distance beyond the radius; the
    // constant must cover the full routed distance there.
    Network net = Network::parse("5 4\n1 2 1\n2 3 1\n3 4 1\n4 5 1");
    DistanceMatrix dm = all_pairs_distances(net);
    Delimitation triv = trivial_delimitation(net, dm, 1.0);
    BigMConstants m = bigm_constants(net, dm, 1.0, triv, false);
    for (size_t v = 0; v < triv.pairs.size(); ++v) {
        for (size_t k = 0; k < triv.pairs[v].size(); ++k) {
            const auto& pr = triv.pairs[v][k];
            double len = net.edge(pr.edge).length;
            CHECK(m.pair_m[v][k] >= pr.endpoint_distance + len - 1e-12);
        }
    }
}

TEST_SUITE_END();
