#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "netcover/verify.hpp"

using namespace netcover;

namespace {

Network path3() { return Network::parse("3 2\n1 2 1.0\n2 3 1.0"); }
Network unit_triangle() { return Network::parse("3 3\n1 2 1\n1 3 1\n2 3 1"); }

struct Ctx {
    Network net;
    DistanceMatrix dm;
    Delimitation delim;
    double radius;
    Ctx(Network n, double r) : net(std::move(n)), radius(r) {
        dm = all_pairs_distances(net);
        delim = build_delimitation(net, dm, r);
    }
};

/// Secondary oracle: restrict candidates to a per-edge grid and search all
/// supports and grid placements for a cover of size at most k_max.
int grid_oracle(const Network& net, const DistanceMatrix& dm, double radius,
                int k_max, int steps = 50) {
    const int m = net.edge_count();
    std::vector<int> support;
    std::function<bool(int, int)> try_support;
    std::function<bool(size_t, Cover&)> try_offsets;

    try_offsets = [&](size_t idx, Cover& cover) {
        if (idx == support.size()) {
            return check_cover(net, dm, radius, cover);
        }
        int e = support[idx];
        double len = net.edge(e).length;
        for (int i = 0; i <= steps; ++i) {
            cover.points.push_back({e, len * i / steps});
            if (try_offsets(idx + 1, cover)) return true;
            cover.points.pop_back();
        }
        return false;
    };
    try_support = [&](int from, int k) {
        if (k == 0) {
            Cover cover;
            return try_offsets(0, cover);
        }
        for (int e = from; e <= m - k; ++e) {
            support.push_back(e);
            if (try_support(e + 1, k - 1)) return true;
            support.pop_back();
        }
        return false;
    };

    for (int k = 1; k <= k_max; ++k) {
        if (try_support(0, k)) return k;
    }
    return k_max + 1;
}

}  // namespace

TEST_SUITE_BEGIN("verify");

TEST_CASE("check_cover on the unit path") {
    Ctx ctx(path3(), 1.0);
    Cover middle{{{0, 1.0}}};
    CHECK(check_cover(ctx.net, ctx.dm, ctx.radius, middle));
    Cover leaf{{{0, 0.0}}};
    CHECK_FALSE(check_cover(ctx.net, ctx.dm, ctx.radius, leaf));
}

TEST_CASE("check_cover on the triangle") {
    Ctx ctx(unit_triangle(), 1.0);
    Cover corner{{{0, 0.0}}};  // vertex 1: opposite midpoint is 1.5 away
    CHECK_FALSE(check_cover(ctx.net, ctx.dm, ctx.radius, corner));
    Cover two{{{0, 1.0}, {1, 1.0}}};  // vertices 2 and 3
    CHECK(check_cover(ctx.net, ctx.dm, ctx.radius, two));
}

TEST_CASE("check_cover validates coordinates") {
    Ctx ctx(path3(), 1.0);
    Cover bad{{{0, 1.5}}};
    CHECK_THROWS_AS(check_cover(ctx.net, ctx.dm, ctx.radius, bad),
                    std::invalid_argument);
}

TEST_CASE("oracle optimum on the reference instances") {
    Ctx p3(path3(), 1.0);
    CHECK(oracle_optimum(p3.net, p3.dm, p3.delim, p3.radius, 3) == 1);

    Ctx tri(unit_triangle(), 1.0);
    CHECK(oracle_optimum(tri.net, tri.dm, tri.delim, tri.radius, 3) == 2);

    Network p2 = Network::parse("2 1\n1 2 2.0");
    SplitResult split = split_edges(p2, 1.0);
    Ctx sp(split.network, 1.0);
    CHECK(oracle_optimum(sp.net, sp.dm, sp.delim, sp.radius, 3) == 1);
}

TEST_CASE("oracle throws past the support limit") {
    Ctx tri(unit_triangle(), 1.0);
    CHECK_THROWS_AS(oracle_optimum(tri.net, tri.dm, tri.delim, tri.radius, 1),
                    OracleLimitError);
}

TEST_CASE("trivial cover") {
    Network p2 = Network::parse("2 1\n1 2 2.0");
    SplitResult split = split_edges(p2, 1.0);
    Cover cover = trivial_cover(split);
    CHECK(cover.size() == 3);
    CHECK(split.node_count == 3);
    std::vector<double> offsets;
    for (const Point& p : cover.points) {
        CHECK(p.edge == 0);
        offsets.push_back(p.offset);
    }
    std::sort(offsets.begin(), offsets.end());
    CHECK(offsets == std::vector<double>{0.0, 1.0, 2.0});

    SplitResult p3split = split_edges(path3(), 1.0);
    CHECK(trivial_cover(p3split).size() == 3);

    Network long_edge = Network::parse("2 1\n1 2 2.5");
    SplitResult ls = split_edges(long_edge, 1.0);
    CHECK(trivial_cover(ls).size() == 4);
}

TEST_CASE("trivial cover always verifies") {
    for (const char* text :
         {"3 2\n1 2 1.0\n2 3 1.0", "2 1\n1 2 2.5",
          "4 4\n1 2 2.2\n2 3 1.7\n3 4 3.1\n1 4 0.9",
          "5 6\n1 2 1.0\n2 3 0.7\n3 4 0.9\n4 5 0.6\n1 5 0.8\n2 4 1.0"}) {
        Network net = Network::parse(text);
        for (double radius : {0.7, 1.0, 1.9}) {
            SplitResult split = split_edges(net, radius);
            DistanceMatrix dm = all_pairs_distances(net);
            Cover cover = trivial_cover(split);
            CHECK(check_cover(net, dm, radius, cover));
        }
    }
}

TEST_CASE("subdivision leaves the oracle optimum unchanged") {
    Network net = Network::parse("4 4\n1 2 1.0\n2 3 0.8\n3 4 0.9\n1 4 0.6");
    double radius = 1.0;
    Ctx base(net, radius);
    int before = oracle_optimum(base.net, base.dm, base.delim, radius, 4);

    // Halve every edge by splitting at half the maximum length... each edge
    // individually: rebuild with explicit midpoints.
    std::vector<Edge> halved;
    int next = net.vertex_count();
    for (const Edge& e : net.edges()) {
        halved.push_back({e.a, next, e.length / 2});
        halved.push_back({e.b, next, e.length / 2});
        ++next;
    }
    Network fine(next, std::move(halved));
    Ctx fined(fine, radius);
    int after = oracle_optimum(fined.net, fined.dm, fined.delim, radius, 4);
    CHECK(before == after);
}

TEST_CASE("grid oracle never beats the LP oracle") {
    for (const char* text :
         {"3 2\n1 2 1.0\n2 3 1.0", "3 3\n1 2 1\n1 3 1\n2 3 1",
          "4 4\n1 2 0.9\n2 3 1.0\n3 4 0.4\n1 4 0.8",
          "4 3\n1 2 1\n2 3 1\n3 4 1"}) {
        Network net = Network::parse(text);
        double radius = net.mean_edge_length();
        SplitResult split = split_edges(net, radius);
        Ctx ctx(split.network, radius);
        int exact = oracle_optimum(ctx.net, ctx.dm, ctx.delim, radius, 4);
        int grid = grid_oracle(ctx.net, ctx.dm, radius, 4);
        CHECK(grid >= exact);
        CHECK(grid == exact);  // endpoints sit on the grid for these nets
    }
}

TEST_SUITE_END();
