#include "netcover/cuts.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "netcover/simplex.hpp"

namespace netcover {

bool is_connected_pattern(const CoverPattern& pattern, const Network& net) {
    const auto& ts = pattern.triples;
    const int k = static_cast<int>(ts.size());
    if (k <= 1) return true;
    std::vector<int> comp(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) comp[static_cast<size_t>(i)] = i;
    auto root = [&](int i) {
        while (comp[static_cast<size_t>(i)] != i) i = comp[static_cast<size_t>(i)];
        return i;
    };
    for (int i = 0; i < k; ++i) {
        for (int j = i + 1; j < k; ++j) {
            bool adjacent =
                ts[static_cast<size_t>(i)].edge == ts[static_cast<size_t>(j)].edge ||
                net.find_edge(ts[static_cast<size_t>(i)].vertex,
                              ts[static_cast<size_t>(j)].vertex) >= 0;
            if (adjacent) {
                comp[static_cast<size_t>(root(i))] = root(j);
            }
        }
    }
    int r0 = root(0);
    for (int i = 1; i < k; ++i) {
        if (root(i) != r0) return false;
    }
    return true;
}

bool feasibility_lp(const CoverPattern& pattern, const Network& net,
                    const DistanceMatrix& dm, const Delimitation& delim,
                    double radius) {
    // Coordinate variables span every candidate edge any pattern over the
    // same subset could use.
    std::set<int> vertex_set;
    for (const auto& t : pattern.triples) vertex_set.insert(t.vertex);
    std::set<int> q_edges;
    for (int v : vertex_set) {
        for (const auto& pr : delim.pairs[static_cast<size_t>(v)]) {
            q_edges.insert(pr.edge);
        }
    }

    StandardLp lp;
    std::map<int, int> q_col;
    for (int ep : q_edges) {
        q_col[ep] = static_cast<int>(lp.columns.size());
        lp.columns.push_back({0.0, net.edge(ep).length, 0.0});
    }
    std::map<int, int> r_col;
    for (int v : vertex_set) {
        r_col[v] = static_cast<int>(lp.columns.size());
        lp.columns.push_back({0.0, kInf, 0.0});
    }

    for (int e : pattern.covered_edges) {
        const Edge& ed = net.edge(e);
        LpRow row;
        row.terms = {{r_col.at(ed.a), 1.0}, {r_col.at(ed.b), 1.0}};
        row.rhs = ed.length;
        row.slack_lower = -kInf;
        row.slack_upper = 0.0;
        lp.rows.push_back(std::move(row));
    }
    for (const auto& t : pattern.triples) {
        const Edge& pe = net.edge(t.edge);
        LpRow row;
        if (t.tag == EndpointTag::A) {
            row.terms = {{r_col.at(t.vertex), 1.0}, {q_col.at(t.edge), 1.0}};
            row.rhs = radius - dm(t.vertex, pe.a);
        } else {
            row.terms = {{r_col.at(t.vertex), 1.0}, {q_col.at(t.edge), -1.0}};
            row.rhs = radius - dm(t.vertex, pe.b) - pe.length;
        }
        row.slack_lower = 0.0;
        row.slack_upper = 0.0;
        lp.rows.push_back(std::move(row));
    }

    SimplexEngine engine(std::move(lp));
    return engine.optimize() == SimplexStatus::Optimal;
}

bool rank1_infeasible(const CoverPattern& pattern, const Network& net,
                      const DistanceMatrix& dm, double radius) {
    if (pattern.covered_edges.size() != 1 || pattern.triples.size() != 2) {
        throw std::invalid_argument("closed form needs a single-edge pattern");
    }
    double len = net.edge(pattern.covered_edges[0]).length;
    double reach = 0.0;
    for (const auto& t : pattern.triples) {
        const Edge& pe = net.edge(t.edge);
        double d = t.tag == EndpointTag::A ? dm(t.vertex, pe.a)
                                           : dm(t.vertex, pe.b);
        reach += std::max(radius - d, 0.0);
    }
    return reach < len - kDistanceTol;
}

namespace {

/// Encodes a single-edge pattern for dominance lookups.
struct Rank1Key {
    int edge;
    int edge_a, tag_a;  // pair assigned to the low endpoint
    int edge_b, tag_b;  // pair assigned to the high endpoint
    bool operator<(const Rank1Key& o) const {
        return std::tie(edge, edge_a, tag_a, edge_b, tag_b) <
               std::tie(o.edge, o.edge_a, o.tag_a, o.edge_b, o.tag_b);
    }
};

}  // namespace

std::vector<CoverPattern> generate_nogood(const Network& net,
                                          const DistanceMatrix& dm,
                                          const Delimitation& delim,
                                          double radius, int max_size) {
    if (max_size < 1 || max_size > 2) {
        throw std::invalid_argument("subset size must be 1 or 2");
    }
    std::vector<CoverPattern> out;
    std::set<Rank1Key> rank1;

    const int m = net.edge_count();
    for (int e = 0; e < m; ++e) {
        const Edge& ed = net.edge(e);
        for (const auto& pa : delim.pairs[static_cast<size_t>(ed.a)]) {
            for (const auto& pb : delim.pairs[static_cast<size_t>(ed.b)]) {
                CoverPattern p;
                p.covered_edges = {e};
                p.triples = {{ed.a, pa.edge, pa.tag}, {ed.b, pb.edge, pb.tag}};
                if (rank1_infeasible(p, net, dm, radius)) {
                    rank1.insert({e, pa.edge, static_cast<int>(pa.tag),
                                  pb.edge, static_cast<int>(pb.tag)});
                    out.push_back(std::move(p));
                }
            }
        }
    }
    if (max_size == 1) return out;

    auto rank1_hit = [&](int edge, int va, const Delimitation::Pair& pa,
                         const Delimitation::Pair& pb) {
        const Edge& ed = net.edge(edge);
        const Delimitation::Pair& low = ed.a == va ? pa : pb;
        const Delimitation::Pair& high = ed.a == va ? pb : pa;
        return rank1.count({edge, low.edge, static_cast<int>(low.tag),
                            high.edge, static_cast<int>(high.tag)}) > 0;
    };

    for (int e1 = 0; e1 < m; ++e1) {
        for (int e2 = e1 + 1; e2 < m; ++e2) {
            std::vector<int> verts = {net.edge(e1).a, net.edge(e1).b,
                                      net.edge(e2).a, net.edge(e2).b};
            std::sort(verts.begin(), verts.end());
            verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
            const int nv = static_cast<int>(verts.size());

            bool any_empty = false;
            for (int v : verts) {
                if (delim.pairs[static_cast<size_t>(v)].empty()) {
                    any_empty = true;
                    break;
                }
            }
            if (any_empty) continue;

            std::vector<size_t> choice(static_cast<size_t>(nv), 0);
            while (true) {
                CoverPattern p;
                p.covered_edges = {e1, e2};
                for (int i = 0; i < nv; ++i) {
                    int v = verts[static_cast<size_t>(i)];
                    const auto& pr =
                        delim.pairs[static_cast<size_t>(v)][choice[static_cast<size_t>(i)]];
                    p.triples.push_back({v, pr.edge, pr.tag});
                }

                if (is_connected_pattern(p, net)) {
                    // Dominance: skip when any two triples restrict to a
                    // single-edge infeasible pattern.
                    bool dominated = false;
                    for (int i = 0; i < nv && !dominated; ++i) {
                        for (int j = i + 1; j < nv && !dominated; ++j) {
                            int va = p.triples[static_cast<size_t>(i)].vertex;
                            int vb = p.triples[static_cast<size_t>(j)].vertex;
                            int e3 = net.find_edge(va, vb);
                            if (e3 < 0) continue;
                            const auto& pa = delim.pairs[static_cast<size_t>(
                                va)][choice[static_cast<size_t>(i)]];
                            const auto& pb = delim.pairs[static_cast<size_t>(
                                vb)][choice[static_cast<size_t>(j)]];
                            if (rank1_hit(e3, va, pa, pb)) dominated = true;
                        }
                    }
                    if (!dominated &&
                        !feasibility_lp(p, net, dm, delim, radius)) {
                        out.push_back(p);
                    }
                }

                int pos = nv - 1;
                while (pos >= 0) {
                    int v = verts[static_cast<size_t>(pos)];
                    if (++choice[static_cast<size_t>(pos)] <
                        delim.pairs[static_cast<size_t>(v)].size()) {
                        break;
                    }
                    choice[static_cast<size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
            }
        }
    }
    return out;
}

NoGoodInequality to_inequality(const CoverPattern& pattern) {
    return NoGoodInequality{pattern.triples};
}

}  // namespace netcover
