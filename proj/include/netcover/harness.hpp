#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netcover/formulations.hpp"
#include "netcover/network.hpp"
#include "netcover/solve.hpp"

namespace netcover {

enum class RadiusKind { Small, Large };

const char* radius_name(RadiusKind kind);

/// Small = mean edge length, Large = twice the mean.
double radius_for(const Network& net, RadiusKind kind);

/// (prod (v_i + s))^(1/M) - s; throws on an empty list.
double shifted_geometric_mean(const std::vector<double>& values, double shift);

struct GapMetrics {
    double sigma = 1.0;  // relative dual gap, clamped to [0, 1]
    double vr = 1.0;     // primal bound over the trivial-cover size
};

GapMetrics solve_metrics(const SolveResult& result, int split_node_count);

/// Seeded G(n, p); a uniform random spanning tree over the components is
/// added when the sample is disconnected. Edge lengths are uniform on
/// [0.5, 1.5].
Network gen_random(int vertex_count, double edge_probability,
                   std::uint64_t seed);

/// End-to-end pipeline for one instance/radius/formulation cell: split to
/// satisfy the radius assumption, delimit, build, and solve with the trivial
/// cover as the initial incumbent.
struct CscRun {
    SplitResult split;
    FormulationBuild build;
    SolveResult result;
};

CscRun solve_csc(const Network& net, double radius, FormulationKind kind,
                 SolveConfig config = {});

struct MetricsRecord {
    std::string instance;
    std::string form;
    std::string radius;
    double time_s = 0.0;
    double sigma = 1.0;
    double vr = 1.0;
    std::string status;
    long nodes = 0;
};

struct BenchOptions {
    std::vector<FormulationKind> forms;
    std::vector<RadiusKind> radii;
    double time_limit_seconds = 1800.0;
    /// Sentinel time recorded for runs that fail outright.
    double failure_time_s = 1800.0;
    /// Injected clock for reproducible time fields; defaults to wall time.
    std::function<double()> clock;
};

/// Row recorded for a run the solver could not complete at all:
/// t = failure time, sigma = 1, vr = 1.
MetricsRecord failure_record(std::string instance, std::string form,
                             std::string radius, double time_s);

struct BenchResult {
    std::vector<MetricsRecord> records;

    /// instance,form,radius,time_s,sigma,vr,status,nodes
    std::string records_csv() const;
    /// Per (form, radius): shifted geometric means and solve counts.
    std::string summary_csv() const;
    /// Performance-profile data: instances at or below each gap level.
    std::string profile_csv() const;
};

BenchResult run_bench(
    const std::vector<std::pair<std::string, Network>>& instances,
    const BenchOptions& options);

}  // namespace netcover
