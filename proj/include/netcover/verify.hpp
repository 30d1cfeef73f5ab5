#pragma once

#include "netcover/delimitation.hpp"
#include "netcover/formulations.hpp"
#include "netcover/network.hpp"

namespace netcover {

/// Analytic cover test: every edge either carries an installed point or its
/// endpoint residuals sum to the edge length (within tolerance).
bool check_cover(const Network& net, const DistanceMatrix& dm, double radius,
                 const Cover& cover);

struct OracleLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exhaustive optimality referee: enumerates edge supports of size 1..k_max
/// and decides each by assigning responsible candidate pairs to the
/// endpoints of edges not already covered outright, solving a small
/// feasibility LP per assignment. Intended for desk-scale instances.
int oracle_optimum(const Network& net, const DistanceMatrix& dm,
                   const Delimitation& delim, double radius, int k_max);

/// One point per node of the split network, expressed in original-edge
/// coordinates; always a valid cover of cardinality node_count.
Cover trivial_cover(const SplitResult& split);

}  // namespace netcover
