#pragma once

#include <vector>

#include "netcover/network.hpp"

namespace netcover {

/// Candidate-location restriction sets for a covering radius.
///
/// For each vertex v, `potential[v]` holds edges with an endpoint within the
/// radius of v, `partial[v]` those potential edges that fail to completely
/// cover some edge incident to v, and `pairs[v]` the (edge, endpoint) pairs
/// of partial edges whose endpoint is within the radius. `complete[e]` holds
/// edges whose every point covers all of e. `inverse_pairs[e]` inverts the
/// pair relation.
struct Delimitation {
    struct Pair {
        int edge = 0;
        EndpointTag tag = EndpointTag::A;
        /// Shortest-path distance from the vertex to the pair's endpoint.
        double endpoint_distance = 0.0;
    };
    struct VertexTag {
        int vertex = 0;
        EndpointTag tag = EndpointTag::A;
    };

    double radius = 0.0;
    std::vector<std::vector<int>> potential;
    std::vector<std::vector<int>> complete;
    std::vector<std::vector<int>> partial;
    std::vector<std::vector<Pair>> pairs;
    std::vector<std::vector<VertexTag>> inverse_pairs;
};

/// Exact maximum over p in e, q in ep of the point-to-point distance.
/// Piecewise-linear closed form; no sampling.
double worst_pair_distance(const Network& net, const DistanceMatrix& dm, int e,
                           int ep);

/// Builds the delimitation sets. Requires every edge length <= radius.
Delimitation build_delimitation(const Network& net, const DistanceMatrix& dm,
                                double radius);

/// No-preprocessing delimitation: complete[e] = {e}, partial[v] = E, and
/// pairs[v] = E x {a, b} without any distance filter.
Delimitation trivial_delimitation(const Network& net, const DistanceMatrix& dm,
                                  double radius);

/// Deactivation constants for the big-M rows, aligned with `delim.pairs`.
struct BigMConstants {
    std::vector<double> vertex_m;
    std::vector<std::vector<double>> pair_m;
};

/// tighten = false keeps the always-admissible constants; tighten = true uses
/// d(v, endpoint) + len(edge), which never exceeds them on filtered pairs.
BigMConstants bigm_constants(const Network& net, const DistanceMatrix& dm,
                             double radius, const Delimitation& delim,
                             bool tighten);

}  // namespace netcover
