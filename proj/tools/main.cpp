#include "homsample/clustering.hpp"
#include "homsample/diagnostics.hpp"
#include "homsample/errors.hpp"
#include "homsample/exact.hpp"
#include "homsample/generators.hpp"
#include "homsample/graphon.hpp"
#include "homsample/io.hpp"
#include "homsample/mcmc.hpp"
#include "homsample/observables.hpp"
#include "homsample/pipelines.hpp"
#include "homsample/report.hpp"
#include "homsample/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace homsample;

namespace {

struct Globals {
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::string out_dir = ".";
    std::string format = "json";
};

Network load_network(const std::string& description, const std::string& alpha_file, std::uint64_t seed) {
    if (!alpha_file.empty()) return io::read_network(description, alpha_file);
    return network_from_description(description, seed);
}

std::pair<std::size_t, std::size_t> parse_pair(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ConfigError("expected 'u,v', got '" + text + "'");
    try {
        return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ConfigError("expected 'u,v', got '" + text + "'");
    }
}

void emit(const Globals& g, const std::string& name, const json& body) {
    report::write_json(fs::path(g.out_dir) / (name + ".json"), body);
    std::cout << body.dump(2) << '\n';
}

// Network transform by the requested motif: exact when enumerable, sampled otherwise.
Network motif_transformed(const Network& net, const Motif& f, std::size_t steps, std::uint64_t seed) {
    if (std::pow(static_cast<double>(net.size()), static_cast<double>(f.size())) <= kDefaultEnumerationCap)
        return exact_motif_transform(f, net);
    ChainConfig chain;
    chain.kind = f.is_rooted_tree() ? ChainKind::Pivot : ChainKind::Glauber;
    chain.seed = seed;
    chain.steps = steps;
    TransformEstimator transform(empty_motif(f.size()), net);
    Observer* observers[] = {&transform};
    run_chain(chain, f, net, observers);
    return transform.value();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homsample: motif sampling, network observables and verifiers"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Master seed");
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out-dir", g.out_dir, "Output directory");
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic network and write it as an edge list");
    std::string family, gen_out = "network.tsv", template_name = "A1", matrix_file, normalization = "global_max";
    std::string h1_text, h2_text, bridge_text = "1,1";
    std::size_t gen_n = 10, gen_r = 10;
    double gen_p = 0.0, gen_decay = 0.0, gen_sigma = 1.0;
    gen->add_option("--family", family, "torus, torus_long_range, sbm_gamma, barbell, erdos_renyi, complete, wan")
        ->required();
    gen->add_option("--n", gen_n, "Size parameter");
    gen->add_option("--p", gen_p, "Edge probability");
    gen->add_option("--decay", gen_decay, "Distance decay exponent");
    gen->add_option("--r", gen_r, "Block expansion factor");
    gen->add_option("--sigma", gen_sigma, "Gamma standard deviation");
    gen->add_option("--template", template_name, "sbm_gamma template: A1, A2 or a network description");
    gen->add_option("--h1", h1_text, "First barbell component");
    gen->add_option("--h2", h2_text, "Second barbell component");
    gen->add_option("--bridge", bridge_text, "Barbell bridge nodes 'u,v' (1-based)");
    gen->add_option("--matrix", matrix_file, "Frequency-matrix file for wan");
    gen->add_option("--normalization", normalization, "row_markov, global_max or log_double");
    gen->add_option("--out", gen_out, "Edge-list file name inside the output directory");

    // exact
    auto* exact = app.add_subcommand("exact", "Exact observables by enumeration");
    std::string net_text, alpha_file, f_text, h_text, observable = "density";
    double cap = kDefaultEnumerationCap;
    std::size_t grid_points = 101;
    exact->add_option("--network", net_text, "Edge-list file or generator description")->required();
    exact->add_option("--node-weights", alpha_file, "Node-weight file");
    exact->add_option("--motif", f_text, "Motif F (file or family token)")->required();
    exact->add_option("--h-motif", h_text, "Motif H for conditional observables");
    exact->add_option("--observable", observable, "density, conditional, profile, macc, transform")
        ->check(CLI::IsMember({"density", "conditional", "profile", "macc", "transform"}));
    exact->add_option("--cap", cap, "Enumeration cap on n^k");
    exact->add_option("--grid-points", grid_points, "Profile grid size")->check(CLI::Range(2, 100000));

    // sample
    auto* sample = app.add_subcommand("sample", "Run a chain and report observables");
    std::string chain_text = "pivot";
    std::vector<std::string> observables{"chd"};
    std::size_t steps = 100000, thinning = 1;
    std::optional<std::size_t> burn_in;
    sample->add_option("--network", net_text, "Edge-list file or generator description")->required();
    sample->add_option("--node-weights", alpha_file, "Node-weight file");
    sample->add_option("--motif", f_text, "Motif F")->required();
    sample->add_option("--h-motif", h_text, "Motif H (defaults to no edges)");
    sample->add_option("--chain", chain_text, "glauber or pivot")->check(CLI::IsMember({"glauber", "pivot"}));
    sample->add_option("--steps", steps, "Chain steps after burn-in")->check(CLI::PositiveNumber);
    sample->add_option("--burn-in", burn_in, "Burn-in steps (default ceil(2 n ln n))");
    sample->add_option("--thinning", thinning, "Observe every this many steps")->check(CLI::PositiveNumber);
    sample->add_option("--observables", observables, "chd, profile, macc, transform")
        ->check(CLI::IsMember({"chd", "profile", "macc", "transform"}));
    sample->add_option("--grid-points", grid_points, "Profile grid size")->check(CLI::Range(2, 100000));

    // spectral
    auto* spectral = app.add_subcommand("spectral", "Path transforms, transitive closure and spectral-gap bounds");
    std::size_t path_k = 2;
    double tolerance = 1e-9, eps = 0.25;
    bool closure = false;
    spectral->add_option("--network", net_text, "Edge-list file or generator description")->required();
    spectral->add_option("--node-weights", alpha_file, "Node-weight file");
    spectral->add_option("--k", path_k, "Path motif size")->check(CLI::Range(2, 100000));
    spectral->add_flag("--closure", closure, "Also compute the transitive closure");
    spectral->add_option("--tolerance", tolerance, "Relative tolerance for the top eigenvalue multiplicity");
    spectral->add_option("--eps", eps, "Accuracy for mixing-time bounds");

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Single-linkage treegram, optionally after a motif transform");
    std::string transform_text;
    std::size_t transform_steps = 1000000;
    cluster->add_option("--network", net_text, "Edge-list file or generator description")->required();
    cluster->add_option("--node-weights", alpha_file, "Node-weight file");
    cluster->add_option("--transform", transform_text, "Motif whose transform is clustered instead");
    cluster->add_option("--transform-steps", transform_steps, "Chain steps when the transform cannot be enumerated");

    // verify
    auto* verify = app.add_subcommand("verify", "Random trials of the stability inequalities and the metric sandwich");
    std::string kind_text = "counting";
    std::size_t trials = 20, blocks = 4;
    verify->add_option("--kind", kind_text, "counting, conditional, transform, profile, sandwich")
        ->check(CLI::IsMember({"counting", "conditional", "transform", "profile", "sandwich"}));
    verify->add_option("--trials", trials, "Random kernel pairs")->check(CLI::PositiveNumber);
    verify->add_option("--blocks", blocks, "Blocks per kernel")->check(CLI::Range(1, 9));
    verify->add_option("--motif", f_text, "Motif F (default P_3, or F_1_1 for conditional and profile)");
    verify->add_option("--h-motif", h_text, "Motif H (default H_1_1)");

    // macc-pipeline
    auto* macc = app.add_subcommand("macc-pipeline", "MACC per network, Frobenius distances, dendrogram, k-means");
    std::vector<std::string> networks;
    std::size_t clusters = 2;
    std::optional<std::size_t> pipeline_steps;
    macc->add_option("--networks", networks, "Edge-list files or generator descriptions")->required();
    macc->add_option("--motif", f_text, "Chain motif (default P_3)");
    macc->add_option("--chain", chain_text, "glauber or pivot")->check(CLI::IsMember({"glauber", "pivot"}));
    macc->add_option("--steps", pipeline_steps, "Steps per network (default ceil(2 n ln n))");
    macc->add_option("--clusters", clusters, "k for k-means")->check(CLI::PositiveNumber);

    // profile-pipeline
    auto* profile = app.add_subcommand("profile-pipeline", "CHD profiles and L1 distance matrices");
    std::vector<std::string> pair_texts{"H_0_0:F_0_0"};
    profile->add_option("--networks", networks, "Edge-list files or generator descriptions")->required();
    profile->add_option("--pairs", pair_texts, "Motif pairs H:F");
    profile->add_option("--chain", chain_text, "glauber or pivot")->check(CLI::IsMember({"glauber", "pivot"}));
    profile->add_option("--steps", pipeline_steps, "Steps per network (default ceil(2 n ln n))");
    profile->add_option("--grid-points", grid_points, "Profile grid size")->check(CLI::Range(2, 100000));

    // attribute
    auto* attribute_cmd = app.add_subcommand("attribute", "Nearest-reference attribution of frequency matrices");
    std::vector<std::string> matrices, labels, queries;
    std::string method_text = "chd00";
    std::size_t known = 4, repetitions = 1000;
    attribute_cmd->add_option("--matrices", matrices, "Labeled frequency-matrix files")->required();
    attribute_cmd->add_option("--labels", labels, "One label per matrix")->required();
    attribute_cmd->add_option("--queries", queries, "Unlabeled matrices to attribute (fixed split)");
    attribute_cmd->add_option("--method", method_text, "chd00, kl or frobenius")
        ->check(CLI::IsMember({"chd00", "kl", "frobenius"}));
    attribute_cmd->add_option("--known", known, "Known items per class in random splits")->check(CLI::PositiveNumber);
    attribute_cmd->add_option("--repetitions", repetitions, "Random splits")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        fs::create_directories(g.out_dir);
        const fs::path out(g.out_dir);

        if (*gen) {
            Network net = [&]() -> Network {
                if (family == "torus") return torus(gen_n);
                if (family == "torus_long_range") return torus_long_range(gen_n, gen_p, gen_decay, g.seed);
                if (family == "erdos_renyi") return erdos_renyi(gen_n, gen_p, g.seed);
                if (family == "complete") return complete_graph(gen_n);
                if (family == "wan") return wan_load(matrix_file, parse_wan_normalization(normalization));
                if (family == "sbm_gamma") {
                    const Network base = template_name == "A1" || template_name == "A2"
                                             ? Network(block_template(template_name == "A1" ? 1 : 2))
                                             : network_from_description(template_name, g.seed);
                    return sbm_gamma(base, gen_r, gen_sigma, g.seed);
                }
                if (family == "barbell") {
                    const auto [u, v] = parse_pair(bridge_text);
                    if (u == 0 || v == 0) throw ConfigError("bridge nodes are 1-based");
                    return barbell(network_from_description(h1_text, derive_seed(g.seed, 1)),
                                   network_from_description(h2_text, derive_seed(g.seed, 2)), {u - 1, v - 1});
                }
                throw ConfigError("unknown family '" + family + "'");
            }();
            const fs::path edges = out / gen_out;
            fs::path weights = edges;
            weights.replace_extension(".alpha");
            io::write_network(edges, net, weights);
            json cfg = {{"family", family}, {"n", gen_n}, {"p", gen_p}, {"decay", gen_decay}, {"r", gen_r},
                        {"sigma", gen_sigma}, {"template", template_name}, {"h1", h1_text}, {"h2", h2_text},
                        {"bridge", bridge_text}, {"matrix", matrix_file}, {"normalization", normalization}};
            json body = report::envelope("gen", g.seed, cfg);
            body["nodes"] = net.size();
            body["edges"] = net.edge_count();
            body["edge_file"] = edges.string();
            body["node_weight_file"] = weights.string();
            emit(g, "gen", body);
        } else if (*exact) {
            const Network net = load_network(net_text, alpha_file, g.seed);
            const Motif f = io::resolve_motif(f_text);
            const Motif h = h_text.empty() ? empty_motif(f.size()) : io::resolve_motif(h_text);
            json cfg = {{"network", net_text}, {"motif", f_text}, {"h", h_text}, {"observable", observable}, {"cap", cap}};
            json body = report::envelope("exact", g.seed, cfg);
            if (observable == "density") {
                body["value"] = hom_density(f, net, cap);
            } else if (observable == "conditional") {
                body["value"] = exact_conditional_density(h, f, net, cap);
            } else if (observable == "profile") {
                const auto grid = uniform_grid(grid_points);
                const ProfileGrid p{grid, exact_chd_profile(h, f, net, grid, cap)};
                body["profile"] = report::to_json(p);
                if (g.format == "csv") report::write_profile_csv(out / "profile.csv", p);
            } else if (observable == "macc") {
                const Matrix m = exact_macc(f, net, cap);
                body["macc"] = report::to_json(m);
                if (g.format == "csv") report::write_matrix_csv(out / "macc.csv", m);
            } else {
                const Network t = h_text.empty() ? exact_motif_transform(f, net, cap) : exact_motif_transform(h, f, net, cap);
                body["transform"] = report::to_json(t.dense());
                if (g.format == "csv") report::write_matrix_csv(out / "transform.csv", t.dense());
            }
            emit(g, "exact", body);
        } else if (*sample) {
            const Network net = load_network(net_text, alpha_file, g.seed);
            const Motif f = io::resolve_motif(f_text);
            const Motif h = h_text.empty() ? empty_motif(f.size()) : io::resolve_motif(h_text);
            ChainConfig chain{parse_chain_kind(chain_text), g.seed, burn_in, steps, thinning};
            std::vector<std::unique_ptr<Observer>> owned;
            std::vector<Observer*> observers;
            ChdEstimator* chd = nullptr;
            ProfileEstimator* prof = nullptr;
            MaccEstimator* macc_est = nullptr;
            TransformEstimator* transform = nullptr;
            for (const auto& name : observables) {
                if (name == "chd" && !chd) owned.push_back(std::unique_ptr<Observer>(chd = new ChdEstimator(h, net)));
                else if (name == "profile" && !prof)
                    owned.push_back(std::unique_ptr<Observer>(prof = new ProfileEstimator(h, net, uniform_grid(grid_points))));
                else if (name == "macc" && !macc_est)
                    owned.push_back(std::unique_ptr<Observer>(macc_est = new MaccEstimator(f, net)));
                else if (name == "transform" && !transform)
                    owned.push_back(std::unique_ptr<Observer>(transform = new TransformEstimator(h, net)));
                else continue;
                observers.push_back(owned.back().get());
            }
            const RunReport run = run_chain(chain, f, net, observers);
            json cfg = {{"network", net_text}, {"motif", f_text}, {"h", h_text}, {"chain", chain_text},
                        {"steps", steps}, {"thinning", thinning}, {"observables", observables}};
            if (burn_in) cfg["burn_in"] = *burn_in;
            json body = report::envelope("sample", g.seed, cfg);
            body["run"] = report::to_json(run);
            if (chd) body["chd"] = chd->value();
            if (prof) {
                body["profile"] = report::to_json(prof->value());
                if (g.format == "csv") report::write_profile_csv(out / "profile.csv", prof->value());
            }
            if (macc_est) {
                body["macc"] = report::to_json(macc_est->value());
                if (g.format == "csv") report::write_matrix_csv(out / "macc.csv", macc_est->value());
            }
            if (transform) {
                const Matrix t = transform->value().dense();
                body["transform"] = report::to_json(t);
                if (g.format == "csv") report::write_matrix_csv(out / "transform.csv", t);
            }
            emit(g, "sample", body);
        } else if (*spectral) {
            const Network net = load_network(net_text, alpha_file, g.seed);
            json cfg = {{"network", net_text}, {"k", path_k}, {"closure", closure}, {"tolerance", tolerance}, {"eps", eps}};
            json body = report::envelope("spectral", g.seed, cfg);
            body["path_hom_density"] = path_hom_density(net, path_k);
            const Matrix t = path_transform(net, path_k).dense();
            body["path_transform"] = report::to_json(t);
            if (g.format == "csv") report::write_matrix_csv(out / "path_transform.csv", t);
            if (net.is_symmetric()) {
                const auto d = decompose(net, tolerance);
                body["eigenvalues"] = report::to_json(d.eigenvalues);
                body["top_multiplicity"] = d.top_multiplicity;
                const auto gap = spectral_gap_bounds(net, eps);
                body["mixing"] = {{"lambda_star", gap.lambda_star}, {"t_mix_lower", report::number(gap.t_mix_lower)},
                                  {"t_mix_upper", report::number(gap.t_mix_upper)}};
                if (gap.cubic_upper) body["mixing"]["cubic_upper"] = *gap.cubic_upper;
                if (closure) {
                    const Matrix c = transitive_closure(net, tolerance).dense();
                    body["transitive_closure"] = report::to_json(c);
                    if (g.format == "csv") report::write_matrix_csv(out / "closure.csv", c);
                }
            }
            emit(g, "spectral", body);
        } else if (*cluster) {
            Network net = load_network(net_text, alpha_file, g.seed);
            if (!transform_text.empty()) net = motif_transformed(net, io::resolve_motif(transform_text), transform_steps, g.seed);
            const Dendrogram d = treegram(net);
            json cfg = {{"network", net_text}, {"transform", transform_text}, {"transform_steps", transform_steps}};
            json body = report::envelope("cluster", g.seed, cfg);
            body["dendrogram"] = report::to_json(d);
            body["capacity"] = report::to_json(capacity(net));
            report::write_text(out / "dendrogram.nwk", to_newick(d) + "\n");
            if (g.format == "csv") {
                std::ofstream csv(out / "merges.csv");
                write_merge_csv(csv, d);
            }
            emit(g, "cluster", body);
        } else if (*verify) {
            const bool paired = kind_text == "conditional" || kind_text == "profile";
            const Motif f = f_text.empty() ? build_motif(paired ? "F_1_1" : "P_3") : io::resolve_motif(f_text);
            const Motif h = h_text.empty() ? (paired ? build_motif("H_1_1") : empty_motif(f.size())) : io::resolve_motif(h_text);
            json cfg = {{"kind", kind_text}, {"trials", trials}, {"blocks", blocks}, {"motif", f.name()}, {"h", h.name()}};
            json body = report::envelope("verify", g.seed, cfg);
            json rows = json::array();
            std::size_t violations = 0;
            Rng rng(g.seed);
            for (std::size_t trial = 0; trial < trials; ++trial) {
                StepKernel u = random_step_kernel(blocks, rng), w = random_step_kernel(blocks, rng);
                // Transforms and profiles need t(F) > 0 on both sides; redraw otherwise.
                for (int redraw = 0; kind_text != "sandwich" && redraw < 1000; ++redraw) {
                    if (kernel_hom_density(f, u) > 0.0 && kernel_hom_density(f, w) > 0.0) break;
                    u = random_step_kernel(blocks, rng);
                    w = random_step_kernel(blocks, rng);
                }
                if (kind_text == "sandwich") {
                    const double cut = cut_dist(u, w, false), filt = filtration_dist(u, w, false);
                    const double one = p_norm_dist(u, w, 1.0, false);
                    const bool holds = cut <= filt + 1e-12 && filt <= one + 1e-12;
                    violations += !holds;
                    rows.push_back({{"trial", trial}, {"cut", cut}, {"filtration", filt}, {"one", one}, {"holds", holds}});
                } else {
                    const auto r = verify_stability(parse_stability_kind(kind_text), u, w, h, f);
                    violations += !r.holds;
                    rows.push_back({{"trial", trial}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
                }
            }
            body["trials"] = rows;
            body["violations"] = violations;
            emit(g, "verify", body);
        } else if (*macc) {
            std::vector<Network> nets;
            for (std::size_t i = 0; i < networks.size(); ++i) nets.push_back(network_from_description(networks[i], derive_seed(g.seed, 1000 + i)));
            const Motif f = f_text.empty() ? path_motif(3) : io::resolve_motif(f_text);
            MaccPipelineConfig config;
            config.kind = parse_chain_kind(chain_text);
            config.seed = g.seed;
            config.steps = pipeline_steps;
            config.clusters = clusters;
            config.threads = g.threads;
            const auto result = macc_pipeline(nets, f, config);
            json cfg = {{"networks", networks}, {"motif", f.name()}, {"chain", chain_text}, {"clusters", clusters}};
            if (pipeline_steps) cfg["steps"] = *pipeline_steps;
            json body = report::envelope("macc-pipeline", g.seed, cfg);
            json items = json::array();
            for (std::size_t i = 0; i < nets.size(); ++i) {
                json item = {{"network", networks[i]}, {"ok", result.errors[i].empty()}};
                if (result.errors[i].empty()) {
                    item["macc"] = report::to_json(result.maccs[i]);
                    item["macc_display_sqrt"] = report::to_json(Matrix(result.maccs[i].cwiseSqrt()));
                    item["run"] = report::to_json(*result.runs[i]);
                    if (g.format == "csv") report::write_matrix_csv(out / ("macc_" + std::to_string(i + 1) + ".csv"), result.maccs[i]);
                } else {
                    item["error"] = result.errors[i];
                }
                items.push_back(item);
            }
            body["networks"] = items;
            body["included"] = result.included;
            body["distances"] = report::to_json(result.distances);
            body["dendrogram"] = report::to_json(result.dendrogram);
            body["kmeans_labels"] = result.labels;
            if (g.format == "csv") report::write_matrix_csv(out / "distances.csv", result.distances);
            emit(g, "macc_pipeline", body);
        } else if (*profile) {
            std::vector<Network> nets;
            for (std::size_t i = 0; i < networks.size(); ++i) nets.push_back(network_from_description(networks[i], derive_seed(g.seed, 1000 + i)));
            std::vector<MotifPair> pairs;
            for (const auto& text : pair_texts) {
                const auto colon = text.find(':');
                if (colon == std::string::npos) throw ConfigError("motif pair must be H:F, got '" + text + "'");
                pairs.push_back({io::resolve_motif(text.substr(0, colon)), io::resolve_motif(text.substr(colon + 1))});
            }
            ProfilePipelineConfig config;
            config.kind = parse_chain_kind(chain_text);
            config.seed = g.seed;
            config.steps = pipeline_steps;
            config.grid = uniform_grid(grid_points);
            config.threads = g.threads;
            const auto result = profile_pipeline(nets, pairs, config);
            json cfg = {{"networks", networks}, {"pairs", pair_texts}, {"chain", chain_text}, {"grid_points", grid_points}};
            if (pipeline_steps) cfg["steps"] = *pipeline_steps;
            json body = report::envelope("profile-pipeline", g.seed, cfg);
            json per_pair = json::array();
            for (std::size_t p = 0; p < pairs.size(); ++p) {
                json profiles = json::array();
                for (std::size_t i = 0; i < nets.size(); ++i) {
                    profiles.push_back({{"network", networks[i]}, {"exact", static_cast<bool>(result.exact[p][i])},
                                        {"profile", report::to_json(result.profiles[p][i])}});
                    if (g.format == "csv")
                        report::write_profile_csv(out / ("profile_" + std::to_string(p + 1) + "_" + std::to_string(i + 1) + ".csv"),
                                                  result.profiles[p][i]);
                }
                const Dendrogram d = single_linkage(result.distances[p]);
                per_pair.push_back({{"pair", pair_texts[p]}, {"profiles", profiles},
                                    {"distances", report::to_json(result.distances[p])}, {"dendrogram", report::to_json(d)}});
                if (g.format == "csv") report::write_matrix_csv(out / ("distances_" + std::to_string(p + 1) + ".csv"), result.distances[p]);
            }
            body["pairs"] = per_pair;
            emit(g, "profile_pipeline", body);
        } else if (*attribute_cmd) {
            if (labels.size() != matrices.size()) throw ConfigError("--labels must give one label per matrix");
            std::vector<Matrix> counts;
            for (const auto& m : matrices) counts.push_back(io::read_frequency_matrix(m));
            const AttributionMethod method = parse_attribution_method(method_text);
            json cfg = {{"matrices", matrices}, {"labels", labels}, {"queries", queries}, {"method", method_text},
                        {"known", known}, {"repetitions", repetitions}};
            json body = report::envelope("attribute", g.seed, cfg);
            if (!queries.empty()) {
                std::vector<Matrix> query_counts;
                for (const auto& q : queries) query_counts.push_back(io::read_frequency_matrix(q));
                body["predictions"] = attribute(counts, labels, query_counts, method);
            } else {
                AttributionConfig config{method, known, repetitions, g.seed};
                const auto r = attribution_experiment(counts, labels, config);
                json per_class = json::object();
                for (std::size_t c = 0; c < r.classes.size(); ++c) per_class[r.classes[c]] = r.class_accuracy[c];
                body["accuracy"] = {{"overall", r.overall}, {"per_class", per_class}, {"repetitions", r.repetitions}};
            }
            emit(g, "attribute", body);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
