#include "netcover/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "netcover/simplex.hpp"

namespace netcover {

namespace {

double vertex_to_point(const Network& net, const DistanceMatrix& dm, int v,
                       const Point& p) {
    const Edge& e = net.edge(p.edge);
    return std::min(dm(v, e.a) + p.offset, dm(v, e.b) + (e.length - p.offset));
}

}  // namespace

bool check_cover(const Network& net, const DistanceMatrix& dm, double radius,
                 const Cover& cover) {
    for (const Point& p : cover.points) {
        if (p.edge < 0 || p.edge >= net.edge_count()) {
            throw std::invalid_argument("cover point on unknown edge");
        }
        double len = net.edge(p.edge).length;
        if (p.offset < -kDistanceTol || p.offset > len + kDistanceTol) {
            throw std::invalid_argument("point coordinate out of edge bounds");
        }
    }
    std::vector<char> has_point(static_cast<size_t>(net.edge_count()), 0);
    for (const Point& p : cover.points) {
        has_point[static_cast<size_t>(p.edge)] = 1;
    }
    for (int e = 0; e < net.edge_count(); ++e) {
        if (has_point[static_cast<size_t>(e)]) continue;
        const Edge& ed = net.edge(e);
        double total = 0.0;
        for (int v : {ed.a, ed.b}) {
            double best = 0.0;
            for (const Point& p : cover.points) {
                best = std::max(best, radius - vertex_to_point(net, dm, v, p));
            }
            total += best;
        }
        if (total < ed.length - kDistanceTol) return false;
    }
    return true;
}

namespace {

struct AssignmentOption {
    int edge = 0;
    EndpointTag tag = EndpointTag::A;
    double reach = 0.0;  // radius - endpoint distance, > 0
};

struct SupportProbe {
    const Network& net;
    const DistanceMatrix& dm;
    double radius;

    std::vector<int> support;
    std::vector<int> uncovered;
    std::vector<int> slot_vertex;
    std::vector<std::vector<AssignmentOption>> options;  // per slot
    // Edges whose endpoints are both assigned once this slot is set.
    std::vector<std::vector<int>> completed_at;
    std::vector<int> chosen;  // option index per slot, -1 = no contribution

    bool assignment_feasible() const {
        std::map<int, int> slot_of;
        for (size_t i = 0; i < slot_vertex.size(); ++i) {
            slot_of[slot_vertex[i]] = static_cast<int>(i);
        }

        StandardLp lp;
        std::map<int, int> q_col;
        for (int ep : support) {
            q_col[ep] = static_cast<int>(lp.columns.size());
            lp.columns.push_back({0.0, net.edge(ep).length, 0.0});
        }
        std::vector<int> r_col(slot_vertex.size());
        for (size_t i = 0; i < slot_vertex.size(); ++i) {
            r_col[i] = static_cast<int>(lp.columns.size());
            double hi = chosen[i] < 0 ? 0.0 : kInf;
            lp.columns.push_back({0.0, hi, 0.0});
        }
        for (int e : uncovered) {
            const Edge& ed = net.edge(e);
            LpRow row;
            row.terms = {
                {r_col[static_cast<size_t>(slot_of.at(ed.a))], 1.0},
                {r_col[static_cast<size_t>(slot_of.at(ed.b))], 1.0}};
            row.rhs = ed.length;
            row.slack_lower = -kInf;
            row.slack_upper = 0.0;
            lp.rows.push_back(std::move(row));
        }
        for (size_t i = 0; i < slot_vertex.size(); ++i) {
            if (chosen[i] < 0) continue;
            const AssignmentOption& opt =
                options[i][static_cast<size_t>(chosen[i])];
            const Edge& pe = net.edge(opt.edge);
            int v = slot_vertex[i];
            LpRow row;
            if (opt.tag == EndpointTag::A) {
                row.terms = {{r_col[i], 1.0}, {q_col.at(opt.edge), 1.0}};
                row.rhs = radius - dm(v, pe.a);
            } else {
                row.terms = {{r_col[i], 1.0}, {q_col.at(opt.edge), -1.0}};
                row.rhs = radius - dm(v, pe.b) - pe.length;
            }
            row.slack_lower = 0.0;
            row.slack_upper = kInf;
            lp.rows.push_back(std::move(row));
        }
        SimplexEngine engine(std::move(lp));
        return engine.optimize() == SimplexStatus::Optimal;
    }

    bool search(size_t slot) {
        if (slot == slot_vertex.size()) return assignment_feasible();
        const size_t option_count = options[slot].size();
        // Option index option_count means "no contribution".
        for (size_t pick = 0; pick <= option_count; ++pick) {
            chosen[slot] =
                pick == option_count ? -1 : static_cast<int>(pick);
            bool viable = true;
            for (int e : completed_at[slot]) {
                const Edge& ed = net.edge(e);
                double reach = 0.0;
                for (int v : {ed.a, ed.b}) {
                    for (size_t i = 0; i <= slot; ++i) {
                        if (slot_vertex[i] == v && chosen[i] >= 0) {
                            reach += options[i][static_cast<size_t>(chosen[i])]
                                         .reach;
                        }
                    }
                }
                if (reach < ed.length - kDistanceTol) {
                    viable = false;
                    break;
                }
            }
            if (viable && search(slot + 1)) return true;
        }
        chosen[slot] = -1;
        return false;
    }
};

bool support_covers(const Network& net, const DistanceMatrix& dm,
                    const Delimitation& delim, double radius,
                    const std::vector<int>& support) {
    std::vector<int> uncovered;
    for (int e = 0; e < net.edge_count(); ++e) {
        const auto& complete = delim.complete[static_cast<size_t>(e)];
        bool hit = false;
        for (int ep : support) {
            if (std::binary_search(complete.begin(), complete.end(), ep)) {
                hit = true;
                break;
            }
        }
        if (!hit) uncovered.push_back(e);
    }
    if (uncovered.empty()) return true;

    // Candidate contributions per end-vertex, installed edges only.
    std::set<int> vertex_set;
    for (int e : uncovered) {
        vertex_set.insert(net.edge(e).a);
        vertex_set.insert(net.edge(e).b);
    }
    SupportProbe probe{net, dm, radius, support, uncovered, {}, {}, {}, {}};
    std::map<int, size_t> slot_of;
    // Order slots by first appearance along the uncovered edges so that the
    // per-edge pruning fires as early as possible.
    for (int e : uncovered) {
        for (int v : {net.edge(e).a, net.edge(e).b}) {
            if (slot_of.count(v)) continue;
            slot_of[v] = probe.slot_vertex.size();
            probe.slot_vertex.push_back(v);
        }
    }
    probe.options.resize(probe.slot_vertex.size());
    for (size_t i = 0; i < probe.slot_vertex.size(); ++i) {
        int v = probe.slot_vertex[i];
        for (int ep : support) {
            const Edge& pe = net.edge(ep);
            double da = radius - dm(v, pe.a);
            if (da > kDistanceTol) {
                probe.options[i].push_back({ep, EndpointTag::A, da});
            }
            double db = radius - dm(v, pe.b);
            if (db > kDistanceTol) {
                probe.options[i].push_back({ep, EndpointTag::B, db});
            }
        }
    }
    probe.completed_at.resize(probe.slot_vertex.size());
    for (int e : uncovered) {
        size_t last = std::max(slot_of.at(net.edge(e).a),
                               slot_of.at(net.edge(e).b));
        probe.completed_at[last].push_back(e);
    }
    // Quick necessary condition per edge: even the best pair per endpoint
    // cannot reach across.
    for (int e : uncovered) {
        const Edge& ed = net.edge(e);
        double reach = 0.0;
        for (int v : {ed.a, ed.b}) {
            double best = 0.0;
            for (const auto& opt : probe.options[slot_of.at(v)]) {
                best = std::max(best, opt.reach);
            }
            reach += best;
        }
        if (reach < ed.length - kDistanceTol) return false;
    }

    probe.chosen.assign(probe.slot_vertex.size(), -1);
    return probe.search(0);
}

void k_subsets(int m, int k, std::vector<int>& current,
               const std::function<bool(const std::vector<int>&)>& visit,
               int from, bool& done) {
    if (done) return;
    if (static_cast<int>(current.size()) == k) {
        done = visit(current);
        return;
    }
    for (int e = from; e <= m - (k - static_cast<int>(current.size())); ++e) {
        current.push_back(e);
        k_subsets(m, k, current, visit, e + 1, done);
        current.pop_back();
        if (done) return;
    }
}

}  // namespace

int oracle_optimum(const Network& net, const DistanceMatrix& dm,
                   const Delimitation& delim, double radius, int k_max) {
    if (k_max < 1) throw std::invalid_argument("k_max must be positive");
    const int m = net.edge_count();
    for (int k = 1; k <= std::min(k_max, m); ++k) {
        bool done = false;
        std::vector<int> current;
        k_subsets(
            m, k, current,
            [&](const std::vector<int>& support) {
                return support_covers(net, dm, delim, radius, support);
            },
            0, done);
        if (done) return k;
    }
    throw OracleLimitError("no cover within the support-size limit");
}

Cover trivial_cover(const SplitResult& split) {
    Cover cover;
    const Network& net = split.network;
    for (int v = 0; v < net.vertex_count(); ++v) {
        int e = net.incident_edges(v).front();
        const SplitResult::Origin& og =
            split.edge_origin[static_cast<size_t>(e)];
        double coord = net.edge(e).a == v ? og.from : og.to;
        cover.points.push_back({og.original_edge, coord});
    }
    return cover;
}

}  // namespace netcover
