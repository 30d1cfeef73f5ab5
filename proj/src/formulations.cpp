#include "netcover/formulations.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace netcover {

const char* formulation_name(FormulationTag tag) {
    switch (tag) {
        case FormulationTag::EF: return "ef";
        case FormulationTag::EFP: return "efp";
        case FormulationTag::EFPI: return "efpi";
        case FormulationTag::EFPD: return "efpd";
        case FormulationTag::EFPV1: return "efpv1";
        case FormulationTag::EFPV2: return "efpv2";
    }
    return "efp";
}

std::optional<FormulationTag> parse_formulation(const std::string& name) {
    if (name == "ef") return FormulationTag::EF;
    if (name == "efp") return FormulationTag::EFP;
    if (name == "efpi") return FormulationTag::EFPI;
    if (name == "efpd") return FormulationTag::EFPD;
    if (name == "efpv1") return FormulationTag::EFPV1;
    if (name == "efpv2") return FormulationTag::EFPV2;
    return std::nullopt;
}

namespace {

std::string edge_label(const Network& net, int e) {
    const Edge& ed = net.edge(e);
    return std::to_string(Network::display_id(ed.a)) + "_" +
           std::to_string(Network::display_id(ed.b));
}

std::string vertex_label(int v) {
    return std::to_string(Network::display_id(v));
}

std::string pair_label(const Network& net, int v,
                       const Delimitation::Pair& pr) {
    return vertex_label(v) + "_" + edge_label(net, pr.edge) + "_" +
           tag_letter(pr.tag);
}

struct Skeleton {
    Model model;
    std::vector<int> y, q, w, x, r;
    std::vector<std::vector<int>> z;
};

void check_consistency(const Delimitation& delim) {
    for (size_t v = 0; v < delim.pairs.size(); ++v) {
        const auto& part = delim.partial[v];
        for (const auto& pr : delim.pairs[v]) {
            if (!std::binary_search(part.begin(), part.end(), pr.edge)) {
                throw ModelError(
                    "delimitation pair references an edge outside the "
                    "partial covers of vertex " +
                    vertex_label(static_cast<int>(v)));
            }
        }
    }
}

/// Variables plus the rows shared by all three formulations; the covering
/// rows are appended by each builder after its residual rows.
Skeleton build_skeleton(const Network& net, const Delimitation& delim) {
    check_consistency(delim);
    const int n = net.vertex_count();
    const int m = net.edge_count();
    Skeleton s;
    Model& mod = s.model;

    s.y.resize(static_cast<size_t>(m));
    s.q.resize(static_cast<size_t>(m));
    s.w.resize(static_cast<size_t>(m));
    s.x.resize(static_cast<size_t>(n));
    s.r.resize(static_cast<size_t>(n));
    s.z.resize(static_cast<size_t>(n));

    for (int e = 0; e < m; ++e) {
        s.y[static_cast<size_t>(e)] =
            mod.add_variable("y_" + edge_label(net, e), 0, 1, VarKind::Binary);
    }
    for (int e = 0; e < m; ++e) {
        s.q[static_cast<size_t>(e)] =
            mod.add_variable("q_" + edge_label(net, e), 0.0,
                             net.edge(e).length, VarKind::Continuous);
    }
    for (int e = 0; e < m; ++e) {
        s.w[static_cast<size_t>(e)] =
            mod.add_variable("w_" + edge_label(net, e), 0, 1, VarKind::Binary);
    }
    for (int v = 0; v < n; ++v) {
        s.x[static_cast<size_t>(v)] =
            mod.add_variable("x_" + vertex_label(v), 0, 1, VarKind::Binary);
    }
    for (int v = 0; v < n; ++v) {
        s.r[static_cast<size_t>(v)] = mod.add_variable(
            "r_" + vertex_label(v), 0.0, kInfBound, VarKind::Continuous);
    }
    for (int v = 0; v < n; ++v) {
        for (const auto& pr : delim.pairs[static_cast<size_t>(v)]) {
            s.z[static_cast<size_t>(v)].push_back(mod.add_variable(
                "z_" + pair_label(net, v, pr), 0, 1, VarKind::Binary));
        }
    }

    std::vector<LinearTerm> obj;
    for (int e = 0; e < m; ++e) obj.push_back({s.y[static_cast<size_t>(e)], 1.0});
    mod.set_objective(true, std::move(obj));

    for (int e = 0; e < m; ++e) {
        for (int ep : delim.complete[static_cast<size_t>(e)]) {
            mod.add_constraint({"cc1_" + edge_label(net, e) + "_" +
                                    edge_label(net, ep),
                                {{s.w[static_cast<size_t>(e)], 1.0},
                                 {s.y[static_cast<size_t>(ep)], -1.0}},
                                RowSense::GreaterEqual,
                                0.0});
        }
    }
    for (int e = 0; e < m; ++e) {
        LinearConstraint c;
        c.name = "cc2_" + edge_label(net, e);
        c.terms.push_back({s.w[static_cast<size_t>(e)], 1.0});
        for (int ep : delim.complete[static_cast<size_t>(e)]) {
            c.terms.push_back({s.y[static_cast<size_t>(ep)], -1.0});
        }
        c.sense = RowSense::LessEqual;
        c.rhs = 0.0;
        mod.add_constraint(std::move(c));
    }
    for (int v = 0; v < n; ++v) {
        LinearConstraint c;
        c.name = "xg_" + vertex_label(v);
        c.terms.push_back({s.x[static_cast<size_t>(v)], 1.0});
        for (int e : net.incident_edges(v)) {
            c.terms.push_back({s.w[static_cast<size_t>(e)], -1.0});
        }
        c.sense = RowSense::GreaterEqual;
        c.rhs = 1.0 - static_cast<double>(net.incident_edges(v).size());
        mod.add_constraint(std::move(c));
    }
    for (int v = 0; v < n; ++v) {
        for (int e : net.incident_edges(v)) {
            mod.add_constraint({"xu_" + vertex_label(v) + "_" +
                                    edge_label(net, e),
                                {{s.x[static_cast<size_t>(v)], 1.0},
                                 {s.w[static_cast<size_t>(e)], -1.0}},
                                RowSense::LessEqual,
                                0.0});
        }
    }
    for (int v = 0; v < n; ++v) {
        LinearConstraint c;
        c.name = "mix_" + vertex_label(v);
        c.terms.push_back({s.x[static_cast<size_t>(v)], 1.0});
        for (int zv : s.z[static_cast<size_t>(v)]) c.terms.push_back({zv, 1.0});
        c.sense = RowSense::Equal;
        c.rhs = 1.0;
        mod.add_constraint(std::move(c));
    }
    for (int v = 0; v < n; ++v) {
        const auto& pairs = delim.pairs[static_cast<size_t>(v)];
        for (size_t k = 0; k < pairs.size(); ++k) {
            mod.add_constraint({"zy_" + pair_label(net, v, pairs[k]),
                                {{s.z[static_cast<size_t>(v)][k], 1.0},
                                 {s.y[static_cast<size_t>(pairs[k].edge)], -1.0}},
                                RowSense::LessEqual,
                                0.0});
        }
    }
    return s;
}

void add_cover_rows(Skeleton& s, const Network& net) {
    for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        s.model.add_constraint({"cov_" + edge_label(net, e),
                                {{s.r[static_cast<size_t>(ed.a)], 1.0},
                                 {s.r[static_cast<size_t>(ed.b)], 1.0},
                                 {s.w[static_cast<size_t>(e)], ed.length}},
                                RowSense::GreaterEqual,
                                ed.length});
    }
}

}  // namespace

Model build_bigm(const Network& net, const Delimitation& delim,
                 const BigMConstants& bigm) {
    Skeleton s = build_skeleton(net, delim);
    const double radius = delim.radius;
    for (int v = 0; v < net.vertex_count(); ++v) {
        double mv = bigm.vertex_m[static_cast<size_t>(v)];
        s.model.add_constraint({"rx_" + vertex_label(v),
                                {{s.r[static_cast<size_t>(v)], 1.0},
                                 {s.x[static_cast<size_t>(v)], mv}},
                                RowSense::LessEqual,
                                mv});
    }
    for (int v = 0; v < net.vertex_count(); ++v) {
        const auto& pairs = delim.pairs[static_cast<size_t>(v)];
        for (size_t k = 0; k < pairs.size(); ++k) {
            const auto& pr = pairs[k];
            double m = bigm.pair_m[static_cast<size_t>(v)][k];
            double len = net.edge(pr.edge).length;
            LinearConstraint c;
            c.name = "rz_" + pair_label(net, v, pr);
            c.sense = RowSense::LessEqual;
            if (pr.tag == EndpointTag::A) {
                c.terms = {{s.r[static_cast<size_t>(v)], 1.0},
                           {s.q[static_cast<size_t>(pr.edge)], 1.0},
                           {s.z[static_cast<size_t>(v)][k], m}};
                c.rhs = m + radius - pr.endpoint_distance;
            } else {
                c.terms = {{s.r[static_cast<size_t>(v)], 1.0},
                           {s.q[static_cast<size_t>(pr.edge)], -1.0},
                           {s.z[static_cast<size_t>(v)][k], m}};
                c.rhs = m + radius - pr.endpoint_distance - len;
            }
            s.model.add_constraint(std::move(c));
        }
    }
    add_cover_rows(s, net);
    return std::move(s.model);
}

Model build_indicator(const Network& net, const Delimitation& delim) {
    Skeleton s = build_skeleton(net, delim);
    const double radius = delim.radius;
    for (int v = 0; v < net.vertex_count(); ++v) {
        IndicatorConstraint c;
        c.name = "ind_x_" + vertex_label(v);
        c.binary_var = s.x[static_cast<size_t>(v)];
        c.trigger_value = 1;
        c.terms = {{s.r[static_cast<size_t>(v)], 1.0}};
        c.sense = RowSense::LessEqual;
        c.rhs = 0.0;
        s.model.add_indicator(std::move(c));
    }
    for (int v = 0; v < net.vertex_count(); ++v) {
        const auto& pairs = delim.pairs[static_cast<size_t>(v)];
        for (size_t k = 0; k < pairs.size(); ++k) {
            const auto& pr = pairs[k];
            double len = net.edge(pr.edge).length;
            IndicatorConstraint c;
            c.name = "ind_z_" + pair_label(net, v, pr);
            c.binary_var = s.z[static_cast<size_t>(v)][k];
            c.trigger_value = 1;
            c.sense = RowSense::LessEqual;
            if (pr.tag == EndpointTag::A) {
                c.terms = {{s.r[static_cast<size_t>(v)], 1.0},
                           {s.q[static_cast<size_t>(pr.edge)], 1.0}};
                c.rhs = radius - pr.endpoint_distance;
            } else {
                c.terms = {{s.r[static_cast<size_t>(v)], 1.0},
                           {s.q[static_cast<size_t>(pr.edge)], -1.0}};
                c.rhs = radius - pr.endpoint_distance - len;
            }
            s.model.add_indicator(std::move(c));
        }
    }
    add_cover_rows(s, net);
    return std::move(s.model);
}

std::vector<double> indicator_lowering_constants(const Network& net,
                                                 const Delimitation& delim,
                                                 const BigMConstants& bigm) {
    (void)net;
    std::vector<double> out;
    for (int v = 0; v < static_cast<int>(delim.pairs.size()); ++v) {
        out.push_back(bigm.vertex_m[static_cast<size_t>(v)]);
    }
    for (const auto& row : bigm.pair_m) {
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

Model build_dp(const Network& net, const Delimitation& delim, bool aggregate) {
    Skeleton s = build_skeleton(net, delim);
    const double radius = delim.radius;
    const int n = net.vertex_count();

    // Duplicated variables, vertex-major.
    std::vector<std::vector<int>> rdup(static_cast<size_t>(n));
    std::vector<std::vector<int>> qdup(static_cast<size_t>(n));
    std::vector<std::vector<int>> qnode(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) {
        const auto& pairs = delim.pairs[static_cast<size_t>(v)];
        if (!aggregate) {
            for (const auto& pr : pairs) {
                rdup[static_cast<size_t>(v)].push_back(s.model.add_variable(
                    "rv_" + pair_label(net, v, pr), 0.0, kInfBound,
                    VarKind::Continuous));
            }
        }
        for (const auto& pr : pairs) {
            qdup[static_cast<size_t>(v)].push_back(s.model.add_variable(
                "qv_" + pair_label(net, v, pr), 0.0, kInfBound,
                VarKind::Continuous));
        }
        for (int ep : delim.partial[static_cast<size_t>(v)]) {
            qnode[static_cast<size_t>(v)].push_back(s.model.add_variable(
                "qn_" + vertex_label(v) + "_" + edge_label(net, ep), 0.0,
                kInfBound, VarKind::Continuous));
        }
    }

    for (int v = 0; v < n; ++v) {
        const auto& pairs = delim.pairs[static_cast<size_t>(v)];
        const auto& partial = delim.partial[static_cast<size_t>(v)];

        if (aggregate) {
            // Single aggregated residual row per vertex.
            LinearConstraint c;
            c.name = "agg_" + vertex_label(v);
            c.terms.push_back({s.r[static_cast<size_t>(v)], 1.0});
            for (size_t k = 0; k < pairs.size(); ++k) {
                const auto& pr = pairs[k];
                double len = net.edge(pr.edge).length;
                double zc = radius - pr.endpoint_distance -
                            (pr.tag == EndpointTag::B ? len : 0.0);
                double qc = pr.tag == EndpointTag::B ? -1.0 : 1.0;
                c.terms.push_back({qdup[static_cast<size_t>(v)][k], qc});
                c.terms.push_back({s.z[static_cast<size_t>(v)][k], -zc});
            }
            c.sense = RowSense::LessEqual;
            c.rhs = 0.0;
            s.model.add_constraint(std::move(c));
        } else {
            LinearConstraint c;
            c.name = "agr_" + vertex_label(v);
            c.terms.push_back({s.r[static_cast<size_t>(v)], 1.0});
            for (int rv : rdup[static_cast<size_t>(v)]) {
                c.terms.push_back({rv, -1.0});
            }
            c.sense = RowSense::Equal;
            c.rhs = 0.0;
            s.model.add_constraint(std::move(c));

            for (size_t k = 0; k < pairs.size(); ++k) {
                const auto& pr = pairs[k];
                double len = net.edge(pr.edge).length;
                double zc = radius - pr.endpoint_distance -
                            (pr.tag == EndpointTag::B ? len : 0.0);
                double qc = pr.tag == EndpointTag::B ? -1.0 : 1.0;
                s.model.add_constraint(
                    {"rub_" + pair_label(net, v, pr),
                     {{rdup[static_cast<size_t>(v)][k], 1.0},
                      {qdup[static_cast<size_t>(v)][k], qc},
                      {s.z[static_cast<size_t>(v)][k], -zc}},
                     RowSense::LessEqual,
                     0.0});
            }
        }

        for (size_t k = 0; k < pairs.size(); ++k) {
            const auto& pr = pairs[k];
            s.model.add_constraint(
                {"qub_" + pair_label(net, v, pr),
                 {{qdup[static_cast<size_t>(v)][k], 1.0},
                  {s.z[static_cast<size_t>(v)][k], -net.edge(pr.edge).length}},
                 RowSense::LessEqual,
                 0.0});
        }

        for (size_t pi = 0; pi < partial.size(); ++pi) {
            int ep = partial[pi];
            double len = net.edge(ep).length;

            LinearConstraint split;
            split.name = "agq_" + vertex_label(v) + "_" + edge_label(net, ep);
            split.terms.push_back({s.q[static_cast<size_t>(ep)], 1.0});
            split.terms.push_back({qnode[static_cast<size_t>(v)][pi], -1.0});
            LinearConstraint cap;
            cap.name = "qnb_" + vertex_label(v) + "_" + edge_label(net, ep);
            cap.terms.push_back({qnode[static_cast<size_t>(v)][pi], 1.0});
            for (size_t k = 0; k < pairs.size(); ++k) {
                if (pairs[k].edge != ep) continue;
                split.terms.push_back({qdup[static_cast<size_t>(v)][k], -1.0});
                cap.terms.push_back({s.z[static_cast<size_t>(v)][k], len});
            }
            split.sense = RowSense::Equal;
            split.rhs = 0.0;
            cap.sense = RowSense::LessEqual;
            cap.rhs = len;
            s.model.add_constraint(std::move(split));
            s.model.add_constraint(std::move(cap));
        }
    }
    add_cover_rows(s, net);
    return std::move(s.model);
}

void attach_cuts(Model& model, const std::vector<NoGoodInequality>& cuts,
                 const Network& net) {
    int index = 0;
    for (const auto& cut : cuts) {
        LinearConstraint c;
        c.name = "ng_" + std::to_string(index++);
        for (const auto& t : cut.triples) {
            std::string zname = "z_" + vertex_label(t.vertex) + "_" +
                                edge_label(net, t.edge) + "_" +
                                tag_letter(t.tag);
            int zi = model.variable_index(zname);
            if (zi < 0) {
                throw ModelError("cut references unknown variable " + zname);
            }
            c.terms.push_back({zi, 1.0});
        }
        c.sense = RowSense::LessEqual;
        c.rhs = static_cast<double>(cut.triples.size()) - 1.0;
        model.add_constraint(std::move(c));
    }
}

Cover extract_solution(const Model& model, const std::vector<double>& values,
                       const Network& net) {
    if (values.size() != model.variables().size()) {
        throw ModelError("assignment size does not match the model");
    }
    Cover cover;
    for (int e = 0; e < net.edge_count(); ++e) {
        std::string label = edge_label(net, e);
        int yi = model.variable_index("y_" + label);
        int qi = model.variable_index("q_" + label);
        if (yi < 0 || qi < 0) throw ModelError("model lacks y/q for an edge");
        double yv = values[static_cast<size_t>(yi)];
        if (std::abs(yv - std::round(yv)) > 1e-6) {
            throw ModelError("fractional placement value for edge " + label);
        }
        if (yv > 0.5) {
            double off = values[static_cast<size_t>(qi)];
            off = std::min(std::max(off, 0.0), net.edge(e).length);
            cover.points.push_back({e, off});
        }
    }
    return cover;
}

FormulationBuild build_formulation(const Network& net,
                                   const DistanceMatrix& dm, double radius,
                                   FormulationKind kind) {
    FormulationBuild out;
    if (kind.tag == FormulationTag::EF) {
        out.delim = trivial_delimitation(net, dm, radius);
        out.bigm = bigm_constants(net, dm, radius, out.delim, false);
        out.model = build_bigm(net, out.delim, out.bigm);
        return out;
    }
    out.delim = build_delimitation(net, dm, radius);
    out.bigm = bigm_constants(net, dm, radius, out.delim, kind.tighten_bigm);
    switch (kind.tag) {
        case FormulationTag::EFP:
            out.model = build_bigm(net, out.delim, out.bigm);
            break;
        case FormulationTag::EFPI:
            out.model = build_indicator(net, out.delim);
            break;
        case FormulationTag::EFPD:
            out.model = build_dp(net, out.delim, kind.aggregate_dp);
            break;
        case FormulationTag::EFPV1:
        case FormulationTag::EFPV2: {
            out.model = build_bigm(net, out.delim, out.bigm);
            int max_size = kind.tag == FormulationTag::EFPV1 ? 1 : 2;
            out.cut_patterns =
                generate_nogood(net, dm, out.delim, radius, max_size);
            std::vector<NoGoodInequality> cuts;
            cuts.reserve(out.cut_patterns.size());
            for (const auto& p : out.cut_patterns) {
                cuts.push_back(to_inequality(p));
            }
            attach_cuts(out.model, cuts, net);
            break;
        }
        case FormulationTag::EF:
            break;
    }
    return out;
}

}  // namespace netcover
