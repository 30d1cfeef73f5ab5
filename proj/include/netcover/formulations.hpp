#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netcover/cuts.hpp"
#include "netcover/delimitation.hpp"
#include "netcover/model.hpp"
#include "netcover/network.hpp"

namespace netcover {

enum class FormulationTag { EF, EFP, EFPI, EFPD, EFPV1, EFPV2 };

struct FormulationKind {
    FormulationTag tag = FormulationTag::EFP;
    bool aggregate_dp = false;
    bool tighten_bigm = true;
};

const char* formulation_name(FormulationTag tag);
std::optional<FormulationTag> parse_formulation(const std::string& name);

/// Installed points; solver extractions have at most one point per edge.
struct Cover {
    std::vector<Point> points;
    int size() const { return static_cast<int>(points.size()); }
};

/// Big-M formulation: deactivation rows r_v <= M_v (1 - x_v) and
/// r_v <= M (1 - z) + radius - routed distance.
Model build_bigm(const Network& net, const Delimitation& delim,
                 const BigMConstants& bigm);

/// Indicator formulation: x_v = 1 -> r_v <= 0 and z = 1 -> residual row.
Model build_indicator(const Network& net, const Delimitation& delim);

/// Disjunctive-programming formulation with duplicated r/q variables;
/// aggregate = true sums the duplicated residual rows into one per vertex.
Model build_dp(const Network& net, const Delimitation& delim, bool aggregate);

/// Big-M constants aligned with build_indicator's indicator order (the
/// per-vertex rows first, then the per-pair rows).
std::vector<double> indicator_lowering_constants(const Network& net,
                                                 const Delimitation& delim,
                                                 const BigMConstants& bigm);

/// Appends one row per inequality; throws ModelError when a referenced z
/// variable does not exist (cut generated under another delimitation).
void attach_cuts(Model& model, const std::vector<NoGoodInequality>& cuts,
                 const Network& net);

/// Reads the installed points off a binary-feasible assignment.
Cover extract_solution(const Model& model, const std::vector<double>& values,
                       const Network& net);

/// Delimitation, constants, cuts and model for one formulation variant.
struct FormulationBuild {
    Delimitation delim;
    BigMConstants bigm;
    std::vector<CoverPattern> cut_patterns;
    Model model;
};

FormulationBuild build_formulation(const Network& net,
                                   const DistanceMatrix& dm, double radius,
                                   FormulationKind kind);

}  // namespace netcover
