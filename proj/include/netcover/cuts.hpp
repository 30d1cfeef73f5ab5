#pragma once

#include <vector>

#include "netcover/delimitation.hpp"
#include "netcover/network.hpp"

namespace netcover {

struct PatternTriple {
    int vertex = 0;
    int edge = 0;
    EndpointTag tag = EndpointTag::A;
};

/// Assignment of one candidate (edge, endpoint) pair to every end-vertex of
/// a subset of edges to be covered. The induced inequality has rank
/// |triples| - 1.
struct CoverPattern {
    std::vector<int> covered_edges;      // ascending
    std::vector<PatternTriple> triples;  // one per end-vertex, by vertex id
    int rank() const { return static_cast<int>(triples.size()) - 1; }
};

/// Forbids the simultaneous activation of one infeasible pattern:
/// sum of the pattern's z variables <= |triples| - 1.
struct NoGoodInequality {
    std::vector<PatternTriple> triples;
};

/// Two triples are adjacent when they use the same candidate edge or their
/// vertices are joined by a network edge; the pattern is connected when the
/// graph of its triples under that relation is.
bool is_connected_pattern(const CoverPattern& pattern, const Network& net);

/// Feasibility of the residual system for a pattern: covering rows for the
/// pattern's edges, the chosen residual equations fixed to equality, and
/// coordinate bounds. Solved as a phase-1 LP.
bool feasibility_lp(const CoverPattern& pattern, const Network& net,
                    const DistanceMatrix& dm, const Delimitation& delim,
                    double radius);

/// Closed-form infeasibility test for single-edge patterns: the two residual
/// maxima, taken independently, cannot reach the covered edge's length.
bool rank1_infeasible(const CoverPattern& pattern, const Network& net,
                      const DistanceMatrix& dm, double radius);

/// Enumerates infeasible patterns over all edge subsets of size <= max_size
/// (1 or 2). Single-edge patterns use the closed form; two-edge patterns are
/// filtered by connectivity and by single-edge dominance before the LP.
std::vector<CoverPattern> generate_nogood(const Network& net,
                                          const DistanceMatrix& dm,
                                          const Delimitation& delim,
                                          double radius, int max_size);

NoGoodInequality to_inequality(const CoverPattern& pattern);

}  // namespace netcover
