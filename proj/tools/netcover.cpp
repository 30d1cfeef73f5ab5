#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "netcover/cuts.hpp"
#include "netcover/harness.hpp"
#include "netcover/model.hpp"
#include "netcover/solve.hpp"
#include "netcover/verify.hpp"

namespace {

using nlohmann::json;
using namespace netcover;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

double resolve_radius(const Network& net, const std::string& spec) {
    if (spec == "small") return radius_for(net, RadiusKind::Small);
    if (spec == "large") return radius_for(net, RadiusKind::Large);
    try {
        size_t used = 0;
        double value = std::stod(spec, &used);
        if (used == spec.size() && value > 0.0) return value;
    } catch (const std::exception&) {
    }
    throw CLI::ValidationError("--radius expects a positive number, 'small' or 'large'");
}

json edge_json(const Network& net, int e) {
    const Edge& ed = net.edge(e);
    return json::array(
        {Network::display_id(ed.a), Network::display_id(ed.b)});
}

json pair_json(const Network& net, int edge, EndpointTag tag) {
    return json::array({edge_json(net, edge), std::string(1, tag_letter(tag))});
}

FormulationKind resolve_form(const std::string& name, bool aggregate,
                             bool no_tighten) {
    auto tag = parse_formulation(name);
    if (!tag) throw CLI::ValidationError("unknown formulation: " + name);
    FormulationKind kind;
    kind.tag = *tag;
    kind.aggregate_dp = aggregate;
    kind.tighten_bigm = !no_tighten;
    return kind;
}

json delimitation_json(const Network& net, const Delimitation& delim,
                       int node_count) {
    json out;
    out["radius"] = delim.radius;
    out["n_sd"] = node_count;
    json potential = json::object();
    json partial = json::object();
    json pairs = json::object();
    for (int v = 0; v < net.vertex_count(); ++v) {
        std::string key = std::to_string(Network::display_id(v));
        json pot = json::array();
        for (int e : delim.potential[static_cast<size_t>(v)]) {
            pot.push_back(edge_json(net, e));
        }
        potential[key] = pot;
        json par = json::array();
        for (int e : delim.partial[static_cast<size_t>(v)]) {
            par.push_back(edge_json(net, e));
        }
        partial[key] = par;
        json prs = json::array();
        for (const auto& pr : delim.pairs[static_cast<size_t>(v)]) {
            prs.push_back(pair_json(net, pr.edge, pr.tag));
        }
        pairs[key] = prs;
    }
    out["potential_covers"] = potential;
    out["partial_covers"] = partial;
    out["cover_pairs"] = pairs;
    json complete = json::object();
    json inverse = json::object();
    for (int e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        std::string key = std::to_string(Network::display_id(ed.a)) + "_" +
                          std::to_string(Network::display_id(ed.b));
        json comp = json::array();
        for (int ep : delim.complete[static_cast<size_t>(e)]) {
            comp.push_back(edge_json(net, ep));
        }
        complete[key] = comp;
        json inv = json::array();
        for (const auto& vt : delim.inverse_pairs[static_cast<size_t>(e)]) {
            inv.push_back(json::array(
                {Network::display_id(vt.vertex),
                 std::string(1, tag_letter(vt.tag))}));
        }
        inverse[key] = inv;
    }
    out["complete_covers"] = complete;
    out["cover_pairs_inverse"] = inverse;
    return out;
}

Cover cover_from_json(const Network& net, const json& doc) {
    Cover cover;
    for (const auto& item : doc.at("points")) {
        int u = item.at("edge").at(0).get<int>();
        int v = item.at("edge").at(1).get<int>();
        int e = net.find_edge(u - 1, v - 1);
        if (e < 0) {
            throw std::runtime_error("cover references unknown edge");
        }
        cover.points.push_back({e, item.at("offset").get<double>()});
    }
    return cover;
}

json solve_record(const CscRun& run) {
    const SolveResult& r = run.result;
    json out;
    out["objective"] =
        std::isfinite(r.primal_bound) ? json(r.primal_bound) : json(nullptr);
    out["primal_bound"] =
        std::isfinite(r.primal_bound) ? json(r.primal_bound) : json(nullptr);
    out["dual_bound"] = r.dual_bound;
    out["sigma"] = r.gap;
    out["nodes"] = r.node_count;
    out["time_s"] = r.wall_seconds;
    out["n_sd"] = run.split.node_count;
    switch (r.status) {
        case SolveStatus::Optimal: out["status"] = "optimal"; break;
        case SolveStatus::GapLimit: out["status"] = "gap-limit"; break;
        case SolveStatus::TimeLimit: out["status"] = "time-limit"; break;
        case SolveStatus::Infeasible: out["status"] = "infeasible"; break;
    }
    if (r.incumbent) {
        json points = json::array();
        for (const Point& p : r.incumbent->points) {
            points.push_back(
                {{"edge", edge_json(run.split.network, p.edge)},
                 {"offset", p.offset}});
        }
        out["cover"] = {{"points", points}};
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous set covering on networks: build, solve, verify"};
    app.require_subcommand(1);

    std::string instance_path, radius_spec = "small", out_path, cover_path;
    std::string form_name = "efp", export_path, instances_dir;
    std::string forms_csv = "efp", radii_csv = "small,large";
    bool aggregate = false, no_tighten = false, as_json = false, trivial = false;
    int max_rank = 1, kmax = 6, gen_n = 8;
    double time_limit = 1e18, gen_p = 0.4;
    std::uint64_t seed = 1;

    auto* cmd_delimit = app.add_subcommand("delimit", "dump delimitation sets as JSON");
    cmd_delimit->add_option("instance", instance_path)->required();
    cmd_delimit->add_option("--radius", radius_spec);
    cmd_delimit->add_flag("--trivial", trivial, "no-preprocessing delimitation");

    auto* cmd_build = app.add_subcommand("build", "write a formulation as LP text");
    cmd_build->add_option("instance", instance_path)->required();
    cmd_build->add_option("--radius", radius_spec);
    cmd_build->add_option("--form", form_name);
    cmd_build->add_flag("--aggregate", aggregate);
    cmd_build->add_flag("--no-tighten", no_tighten);
    cmd_build->add_option("-o,--output", out_path);

    auto* cmd_solve = app.add_subcommand("solve", "solve an instance");
    cmd_solve->add_option("instance", instance_path)->required();
    cmd_solve->add_option("--radius", radius_spec);
    cmd_solve->add_option("--form", form_name);
    cmd_solve->add_flag("--aggregate", aggregate);
    cmd_solve->add_flag("--no-tighten", no_tighten);
    cmd_solve->add_option("--time-limit", time_limit);
    cmd_solve->add_option("--export", export_path, "also write the LP file");

    auto* cmd_cuts = app.add_subcommand("cuts", "generate subset no-good cuts");
    cmd_cuts->add_option("instance", instance_path)->required();
    cmd_cuts->add_option("--radius", radius_spec);
    cmd_cuts->add_option("--max-rank", max_rank)->check(CLI::Range(1, 2));
    cmd_cuts->add_flag("--json", as_json, "print the cut list");

    auto* cmd_verify = app.add_subcommand("verify", "check a cover file");
    cmd_verify->add_option("instance", instance_path)->required();
    cmd_verify->add_option("--radius", radius_spec);
    cmd_verify->add_option("--cover", cover_path)->required();

    auto* cmd_oracle = app.add_subcommand("oracle", "exhaustive optimum");
    cmd_oracle->add_option("instance", instance_path)->required();
    cmd_oracle->add_option("--radius", radius_spec);
    cmd_oracle->add_option("--kmax", kmax);

    auto* cmd_bench = app.add_subcommand("bench", "run a benchmark batch");
    cmd_bench->add_option("--dir", instances_dir)->required();
    cmd_bench->add_option("--forms", forms_csv);
    cmd_bench->add_option("--radii", radii_csv);
    cmd_bench->add_option("--time-limit", time_limit);
    cmd_bench->add_option("-o,--output", out_path)->required();

    auto* cmd_gen = app.add_subcommand("gen", "generate a random instance");
    cmd_gen->add_option("-n", gen_n);
    cmd_gen->add_option("-p", gen_p);
    cmd_gen->add_option("--seed", seed);
    cmd_gen->add_option("-o,--output", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_delimit) {
            Network net = Network::parse(read_file(instance_path));
            double radius = resolve_radius(net, radius_spec);
            SplitResult split = split_edges(net, radius);
            DistanceMatrix dm = all_pairs_distances(split.network);
            Delimitation delim =
                trivial ? trivial_delimitation(split.network, dm, radius)
                        : build_delimitation(split.network, dm, radius);
            std::cout << delimitation_json(split.network, delim,
                                           split.node_count)
                             .dump(2)
                      << "\n";
        } else if (*cmd_build) {
            Network net = Network::parse(read_file(instance_path));
            double radius = resolve_radius(net, radius_spec);
            FormulationKind kind = resolve_form(form_name, aggregate, no_tighten);
            SplitResult split = split_edges(net, radius);
            DistanceMatrix dm = all_pairs_distances(split.network);
            FormulationBuild fb =
                build_formulation(split.network, dm, radius, kind);
            std::string text = write_lp(fb.model);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                write_file(out_path, text);
            }
        } else if (*cmd_solve) {
            Network net = Network::parse(read_file(instance_path));
            double radius = resolve_radius(net, radius_spec);
            FormulationKind kind = resolve_form(form_name, aggregate, no_tighten);
            SolveConfig cfg;
            cfg.time_limit_seconds = time_limit;
            CscRun run = solve_csc(net, radius, kind, cfg);
            if (!export_path.empty()) {
                write_file(export_path, write_lp(run.build.model));
            }
            std::cout << solve_record(run).dump(2) << "\n";
        } else if (*cmd_cuts) {
            Network net = Network::parse(read_file(instance_path));
            double radius = resolve_radius(net, radius_spec);
            SplitResult split = split_edges(net, radius);
            DistanceMatrix dm = all_pairs_distances(split.network);
            Delimitation delim =
                build_delimitation(split.network, dm, radius);
            auto patterns =
                generate_nogood(split.network, dm, delim, radius, max_rank);
            if (as_json) {
                json list = json::array();
                for (const auto& p : patterns) {
                    json triples = json::array();
                    for (const auto& t : p.triples) {
                        triples.push_back(json::array(
                            {Network::display_id(t.vertex),
                             edge_json(split.network, t.edge),
                             std::string(1, tag_letter(t.tag))}));
                    }
                    json edges = json::array();
                    for (int e : p.covered_edges) {
                        edges.push_back(edge_json(split.network, e));
                    }
                    list.push_back({{"edges", edges},
                                    {"triples", triples},
                                    {"rank", p.rank()}});
                }
                std::cout << json{{"count", patterns.size()},
                                  {"cuts", list}}
                                 .dump(2)
                          << "\n";
            } else {
                std::cout << patterns.size() << " cuts\n";
            }
        } else if (*cmd_verify) {
            Network net = Network::parse(read_file(instance_path));
            double radius = resolve_radius(net, radius_spec);
            DistanceMatrix dm = all_pairs_distances(net);
            Cover cover =
                cover_from_json(net, json::parse(read_file(cover_path)));
            bool ok = check_cover(net, dm, radius, cover);
            std::cout << json{{"valid", ok},
                              {"points", cover.points.size()}}
                             .dump(2)
                      << "\n";
            return ok ? 0 : 1;
        } else if (*cmd_oracle) {
            Network net = Network::parse(read_file(instance_path));
            double radius = resolve_radius(net, radius_spec);
            SplitResult split = split_edges(net, radius);
            DistanceMatrix dm = all_pairs_distances(split.network);
            Delimitation delim =
                build_delimitation(split.network, dm, radius);
            int best =
                oracle_optimum(split.network, dm, delim, radius, kmax);
            std::cout << json{{"optimum", best},
                              {"n_sd", split.node_count}}
                             .dump(2)
                      << "\n";
        } else if (*cmd_bench) {
            std::vector<std::pair<std::string, Network>> instances;
            std::vector<std::filesystem::path> files;
            for (const auto& entry :
                 std::filesystem::directory_iterator(instances_dir)) {
                if (entry.is_regular_file()) files.push_back(entry.path());
            }
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                instances.emplace_back(f.filename().string(),
                                       Network::parse(read_file(f.string())));
            }
            BenchOptions opts;
            opts.time_limit_seconds = time_limit;
            std::stringstream fs(forms_csv);
            std::string token;
            while (std::getline(fs, token, ',')) {
                opts.forms.push_back(resolve_form(token, aggregate, no_tighten));
            }
            std::stringstream rs(radii_csv);
            while (std::getline(rs, token, ',')) {
                if (token == "small") opts.radii.push_back(RadiusKind::Small);
                else if (token == "large") opts.radii.push_back(RadiusKind::Large);
                else throw CLI::ValidationError("unknown radius kind " + token);
            }
            BenchResult res = run_bench(instances, opts);
            write_file(out_path, res.records_csv());
            std::string stem = out_path;
            auto dot = stem.rfind(".csv");
            if (dot != std::string::npos) stem = stem.substr(0, dot);
            write_file(stem + ".summary.csv", res.summary_csv());
            write_file(stem + ".profile.csv", res.profile_csv());
            std::cout << res.summary_csv();
        } else if (*cmd_gen) {
            Network net = gen_random(gen_n, gen_p, seed);
            std::ostringstream os;
            os << net.vertex_count() << ' ' << net.edge_count() << '\n';
            char buf[64];
            for (const Edge& e : net.edges()) {
                std::snprintf(buf, sizeof(buf), "%d %d %.17g\n",
                              Network::display_id(e.a),
                              Network::display_id(e.b), e.length);
                os << buf;
            }
            if (out_path.empty()) {
                std::cout << os.str();
            } else {
                write_file(out_path, os.str());
            }
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
