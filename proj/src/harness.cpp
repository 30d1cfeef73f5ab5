#include "netcover/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

#include "netcover/verify.hpp"

namespace netcover {

const char* radius_name(RadiusKind kind) {
    return kind == RadiusKind::Small ? "small" : "large";
}

double radius_for(const Network& net, RadiusKind kind) {
    double mean = net.mean_edge_length();
    return kind == RadiusKind::Small ? mean : 2.0 * mean;
}

double shifted_geometric_mean(const std::vector<double>& values,
                              double shift) {
    if (values.empty()) {
        throw std::invalid_argument("shifted geometric mean of nothing");
    }
    double log_sum = 0.0;
    for (double v : values) log_sum += std::log(v + shift);
    return std::exp(log_sum / static_cast<double>(values.size())) - shift;
}

GapMetrics solve_metrics(const SolveResult& result, int split_node_count) {
    GapMetrics gm;
    if (!std::isfinite(result.primal_bound)) return gm;  // sentinel
    double primal = result.primal_bound;
    double sigma = primal > 0.0 ? (primal - result.dual_bound) / primal : 0.0;
    gm.sigma = std::clamp(sigma, 0.0, 1.0);
    gm.vr = primal / static_cast<double>(split_node_count);
    return gm;
}

namespace {

double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t n) {
    return rng() % n;
}

struct Unionfind {
    std::vector<int> parent;
    explicit Unionfind(int n) : parent(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
    }
    int find(int a) {
        while (parent[static_cast<size_t>(a)] != a) {
            a = parent[static_cast<size_t>(a)] =
                parent[static_cast<size_t>(parent[static_cast<size_t>(a)])];
        }
        return a;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<size_t>(a)] = b;
        return true;
    }
};

}  // namespace

Network gen_random(int vertex_count, double edge_probability,
                   std::uint64_t seed) {
    if (vertex_count < 2) throw std::invalid_argument("need >= 2 vertices");
    if (!(edge_probability > 0.0) || edge_probability > 1.0) {
        throw std::invalid_argument("edge probability must be in (0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> picked;
    for (int i = 0; i < vertex_count; ++i) {
        for (int j = i + 1; j < vertex_count; ++j) {
            if (unit_draw(rng) < edge_probability) picked.push_back({i, j});
        }
    }

    Unionfind uf(vertex_count);
    for (auto [a, b] : picked) uf.unite(a, b);
    std::vector<int> roots;
    for (int v = 0; v < vertex_count; ++v) {
        if (uf.find(v) == v) roots.push_back(v);
    }
    const int comp_count = static_cast<int>(roots.size());
    if (comp_count > 1) {
        std::map<int, int> comp_index;
        std::vector<std::vector<int>> members(static_cast<size_t>(comp_count));
        for (int i = 0; i < comp_count; ++i) comp_index[roots[static_cast<size_t>(i)]] = i;
        for (int v = 0; v < vertex_count; ++v) {
            members[static_cast<size_t>(comp_index[uf.find(v)])].push_back(v);
        }
        // Uniform labeled tree on the components via a random Pruefer code.
        std::vector<int> code(static_cast<size_t>(std::max(0, comp_count - 2)));
        for (auto& c : code) {
            c = static_cast<int>(
                draw_below(rng, static_cast<std::uint64_t>(comp_count)));
        }
        std::vector<int> degree(static_cast<size_t>(comp_count), 1);
        for (int c : code) ++degree[static_cast<size_t>(c)];
        std::vector<std::pair<int, int>> tree;
        std::vector<char> used(static_cast<size_t>(comp_count), 0);
        for (int c : code) {
            int leaf = -1;
            for (int i = 0; i < comp_count; ++i) {
                if (degree[static_cast<size_t>(i)] == 1 &&
                    !used[static_cast<size_t>(i)]) {
                    leaf = i;
                    break;
                }
            }
            tree.push_back({leaf, c});
            used[static_cast<size_t>(leaf)] = 1;
            --degree[static_cast<size_t>(c)];
        }
        std::vector<int> rest;
        for (int i = 0; i < comp_count; ++i) {
            if (!used[static_cast<size_t>(i)] &&
                degree[static_cast<size_t>(i)] == 1) {
                rest.push_back(i);
            }
        }
        tree.push_back({rest[0], rest[1]});
        for (auto [ci, cj] : tree) {
            const auto& mi = members[static_cast<size_t>(ci)];
            const auto& mj = members[static_cast<size_t>(cj)];
            int u = mi[static_cast<size_t>(
                draw_below(rng, static_cast<std::uint64_t>(mi.size())))];
            int v = mj[static_cast<size_t>(
                draw_below(rng, static_cast<std::uint64_t>(mj.size())))];
            picked.push_back({std::min(u, v), std::max(u, v)});
        }
    }

    std::sort(picked.begin(), picked.end());
    std::vector<Edge> edges;
    edges.reserve(picked.size());
    for (auto [a, b] : picked) {
        edges.push_back({a, b, 0.5 + unit_draw(rng)});
    }
    return Network(vertex_count, std::move(edges));
}

CscRun solve_csc(const Network& net, double radius, FormulationKind kind,
                 SolveConfig config) {
    CscRun run{split_edges(net, radius), {}, {}};
    DistanceMatrix dm = all_pairs_distances(run.split.network);
    run.build = build_formulation(run.split.network, dm, radius, kind);
    if (!config.warm_cover) {
        config.warm_cover = trivial_cover(run.split);
    }
    run.result = branch_and_bound(run.build.model, run.split.network, config);
    return run;
}

namespace {

std::string fmt_metric(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

const char* status_text(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::GapLimit: return "gap-limit";
        case SolveStatus::TimeLimit: return "time-limit";
        case SolveStatus::Infeasible: return "infeasible";
    }
    return "unknown";
}

}  // namespace

MetricsRecord failure_record(std::string instance, std::string form,
                             std::string radius, double time_s) {
    MetricsRecord rec;
    rec.instance = std::move(instance);
    rec.form = std::move(form);
    rec.radius = std::move(radius);
    rec.time_s = time_s;
    rec.sigma = 1.0;
    rec.vr = 1.0;
    rec.status = "failed";
    rec.nodes = 0;
    return rec;
}

BenchResult run_bench(
    const std::vector<std::pair<std::string, Network>>& instances,
    const BenchOptions& options) {
    BenchResult out;
    for (const auto& [name, net] : instances) {
        for (RadiusKind rk : options.radii) {
            double radius = radius_for(net, rk);
            for (FormulationKind kind : options.forms) {
                MetricsRecord rec;
                rec.instance = name;
                rec.form = formulation_name(kind.tag);
                rec.radius = radius_name(rk);
                try {
                    SolveConfig cfg;
                    cfg.time_limit_seconds = options.time_limit_seconds;
                    cfg.clock = options.clock;
                    CscRun run = solve_csc(net, radius, kind, cfg);
                    GapMetrics gm =
                        solve_metrics(run.result, run.split.node_count);
                    rec.time_s = run.result.wall_seconds;
                    rec.sigma = gm.sigma;
                    rec.vr = gm.vr;
                    rec.status = status_text(run.result.status);
                    rec.nodes = run.result.node_count;
                } catch (const std::exception&) {
                    rec = failure_record(name, rec.form, rec.radius,
                                         options.failure_time_s);
                }
                out.records.push_back(std::move(rec));
            }
        }
    }
    return out;
}

std::string BenchResult::records_csv() const {
    std::ostringstream os;
    os << "instance,form,radius,time_s,sigma,vr,status,nodes\n";
    for (const auto& r : records) {
        os << r.instance << ',' << r.form << ',' << r.radius << ','
           << fmt_metric(r.time_s) << ',' << fmt_metric(r.sigma) << ','
           << fmt_metric(r.vr) << ',' << r.status << ',' << r.nodes << '\n';
    }
    return os.str();
}

std::string BenchResult::summary_csv() const {
    std::map<std::pair<std::string, std::string>,
             std::vector<const MetricsRecord*>>
        cells;
    for (const auto& r : records) cells[{r.form, r.radius}].push_back(&r);
    std::ostringstream os;
    os << "form,radius,sgm_time_s,sgm_sigma,sgm_vr,solved,accepted,count\n";
    for (const auto& [key, rows] : cells) {
        std::vector<double> t, sigma, vr;
        int solved = 0, accepted = 0;
        for (const auto* r : rows) {
            t.push_back(r->time_s);
            sigma.push_back(r->sigma);
            vr.push_back(r->vr);
            if (r->status == "optimal") ++solved;
            if (r->status != "failed") ++accepted;
        }
        os << key.first << ',' << key.second << ','
           << fmt_metric(shifted_geometric_mean(t, 1.0)) << ','
           << fmt_metric(shifted_geometric_mean(sigma, 0.01)) << ','
           << fmt_metric(shifted_geometric_mean(vr, 0.01)) << ',' << solved
           << ',' << accepted << ',' << rows.size() << '\n';
    }
    return os.str();
}

std::string BenchResult::profile_csv() const {
    std::map<std::pair<std::string, std::string>, std::vector<double>> cells;
    for (const auto& r : records) {
        cells[{r.form, r.radius}].push_back(r.sigma);
    }
    std::ostringstream os;
    os << "form,radius,sigma,instances_within\n";
    for (auto& [key, gaps] : cells) {
        std::sort(gaps.begin(), gaps.end());
        for (size_t i = 0; i < gaps.size(); ++i) {
            size_t count = i + 1;
            while (i + 1 < gaps.size() && gaps[i + 1] == gaps[i]) {
                ++i;
                ++count;
            }
            os << key.first << ',' << key.second << ',' << fmt_metric(gaps[i])
               << ',' << count << '\n';
        }
    }
    return os.str();
}

}  // namespace netcover
