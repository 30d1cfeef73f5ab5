#include "netcover/delimitation.hpp"

#include <algorithm>
#include <cmath>

namespace netcover {

namespace {

void check_edge_lengths(const Network& net, double radius) {
    for (const Edge& e : net.edges()) {
        if (e.length > radius + kDistanceTol) {
            throw std::invalid_argument(
                "edge longer than the covering radius; split the network first");
        }
    }
}

void fill_inverse(Delimitation& d, int edge_count) {
    d.inverse_pairs.assign(static_cast<size_t>(edge_count), {});
    for (int v = 0; v < static_cast<int>(d.pairs.size()); ++v) {
        for (const auto& pr : d.pairs[static_cast<size_t>(v)]) {
            d.inverse_pairs[static_cast<size_t>(pr.edge)].push_back({v, pr.tag});
        }
    }
}

}  // namespace

double worst_pair_distance(const Network& net, const DistanceMatrix& dm, int e,
                           int ep) {
    const Edge& ee = net.edge(e);
    if (e == ep) {
        // Two points on the same edge; worst pair sits where the inside path
        // and the outside detour balance.
        return (dm(ee.a, ee.b) + ee.length) / 2.0;
    }
    const Edge& pe = net.edge(ep);
    const double len = ee.length;
    const double plen = pe.length;
    const double corner_au = dm(ee.a, pe.a);
    const double corner_aw = dm(ee.a, pe.b);
    const double corner_bu = dm(ee.b, pe.a);
    const double corner_bw = dm(ee.b, pe.b);

    // For a fixed coordinate t on ep, the farthest point of e is where the
    // two exit routes meet, giving (g_a(t) + g_b(t) + len) / 2 with
    // g_i(t) = min(corner_i-via-u + t, corner_i-via-w + plen - t). Both g_a
    // and g_b are concave in t, so the maximum over t is at a candidate
    // breakpoint or an interval end.
    auto g_a = [&](double t) {
        return std::min(corner_au + t, corner_aw + plen - t);
    };
    auto g_b = [&](double t) {
        return std::min(corner_bu + t, corner_bw + plen - t);
    };
    double candidates[4];
    int count = 0;
    candidates[count++] = 0.0;
    candidates[count++] = plen;
    double cross_a = (corner_aw + plen - corner_au) / 2.0;
    if (cross_a > 0.0 && cross_a < plen) candidates[count++] = cross_a;
    double cross_b = (corner_bw + plen - corner_bu) / 2.0;
    if (cross_b > 0.0 && cross_b < plen) candidates[count++] = cross_b;

    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        double t = candidates[i];
        worst = std::max(worst, (g_a(t) + g_b(t) + len) / 2.0);
    }
    return worst;
}

Delimitation build_delimitation(const Network& net, const DistanceMatrix& dm,
                                double radius) {
    check_edge_lengths(net, radius);
    const int n = net.vertex_count();
    const int m = net.edge_count();

    Delimitation d;
    d.radius = radius;
    d.potential.assign(static_cast<size_t>(n), {});
    d.complete.assign(static_cast<size_t>(m), {});
    d.partial.assign(static_cast<size_t>(n), {});
    d.pairs.assign(static_cast<size_t>(n), {});

    for (int v = 0; v < n; ++v) {
        for (int ep = 0; ep < m; ++ep) {
            const Edge& pe = net.edge(ep);
            if (dm(v, pe.a) <= radius + kDistanceTol ||
                dm(v, pe.b) <= radius + kDistanceTol) {
                d.potential[static_cast<size_t>(v)].push_back(ep);
            }
        }
    }

    for (int e = 0; e < m; ++e) {
        for (int ep = 0; ep < m; ++ep) {
            if (worst_pair_distance(net, dm, e, ep) <= radius + kDistanceTol) {
                d.complete[static_cast<size_t>(e)].push_back(ep);
            }
        }
    }

    std::vector<std::vector<char>> complete_flag(
        static_cast<size_t>(m), std::vector<char>(static_cast<size_t>(m), 0));
    for (int e = 0; e < m; ++e) {
        for (int ep : d.complete[static_cast<size_t>(e)]) {
            complete_flag[static_cast<size_t>(e)][static_cast<size_t>(ep)] = 1;
        }
    }

    for (int v = 0; v < n; ++v) {
        for (int ep : d.potential[static_cast<size_t>(v)]) {
            bool leaves_gap = false;
            for (int e : net.incident_edges(v)) {
                if (!complete_flag[static_cast<size_t>(e)][static_cast<size_t>(ep)]) {
                    leaves_gap = true;
                    break;
                }
            }
            if (leaves_gap) d.partial[static_cast<size_t>(v)].push_back(ep);
        }
        for (int ep : d.partial[static_cast<size_t>(v)]) {
            const Edge& pe = net.edge(ep);
            if (dm(v, pe.a) <= radius + kDistanceTol) {
                d.pairs[static_cast<size_t>(v)].push_back(
                    {ep, EndpointTag::A, dm(v, pe.a)});
            }
            if (dm(v, pe.b) <= radius + kDistanceTol) {
                d.pairs[static_cast<size_t>(v)].push_back(
                    {ep, EndpointTag::B, dm(v, pe.b)});
            }
        }
    }

    fill_inverse(d, m);
    return d;
}

Delimitation trivial_delimitation(const Network& net, const DistanceMatrix& dm,
                                  double radius) {
    check_edge_lengths(net, radius);
    const int n = net.vertex_count();
    const int m = net.edge_count();

    Delimitation d;
    d.radius = radius;
    d.potential.assign(static_cast<size_t>(n), {});
    d.complete.assign(static_cast<size_t>(m), {});
    d.partial.assign(static_cast<size_t>(n), {});
    d.pairs.assign(static_cast<size_t>(n), {});

    std::vector<int> all_edges(static_cast<size_t>(m));
    for (int e = 0; e < m; ++e) all_edges[static_cast<size_t>(e)] = e;

    for (int e = 0; e < m; ++e) d.complete[static_cast<size_t>(e)] = {e};
    for (int v = 0; v < n; ++v) {
        d.potential[static_cast<size_t>(v)] = all_edges;
        d.partial[static_cast<size_t>(v)] = all_edges;
        for (int ep = 0; ep < m; ++ep) {
            const Edge& pe = net.edge(ep);
            d.pairs[static_cast<size_t>(v)].push_back(
                {ep, EndpointTag::A, dm(v, pe.a)});
            d.pairs[static_cast<size_t>(v)].push_back(
                {ep, EndpointTag::B, dm(v, pe.b)});
        }
    }

    fill_inverse(d, m);
    return d;
}

BigMConstants bigm_constants(const Network& net, const DistanceMatrix& dm,
                             double radius, const Delimitation& delim,
                             bool tighten) {
    (void)dm;
    BigMConstants out;
    out.vertex_m.assign(static_cast<size_t>(net.vertex_count()), radius);
    out.pair_m.resize(delim.pairs.size());
    for (size_t v = 0; v < delim.pairs.size(); ++v) {
        out.pair_m[v].reserve(delim.pairs[v].size());
        for (const auto& pr : delim.pairs[v]) {
            double len = net.edge(pr.edge).length;
            double m_value;
            if (tighten) {
                m_value = pr.endpoint_distance + len;
            } else {
                // radius + len is only admissible when the endpoint is within
                // the radius; unfiltered pairs need the full reach.
                m_value = std::max(radius, pr.endpoint_distance) + len;
            }
            out.pair_m[v].push_back(m_value);
        }
    }
    return out;
}

}  // namespace netcover
