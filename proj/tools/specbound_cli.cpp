#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "specbound/bounds.hpp"
#include "specbound/certify.hpp"
#include "specbound/duality.hpp"
#include "specbound/errors.hpp"
#include "specbound/experiment.hpp"
#include "specbound/flow.hpp"
#include "specbound/graph.hpp"
#include "specbound/spectral.hpp"

using namespace specbound;
using json = nlohmann::ordered_json;

namespace {

struct GraphSource {
    std::string path;
    std::string family;
    std::string size;
    std::uint64_t seed = 0;

    void attach(CLI::App* app) {
        app->add_option("--graph", path, "Graph file: 'n m' then one 'u v' line per edge")->check(CLI::ExistingFile);
        app->add_option("--family", family, "Generator: path, cycle, grid, torus, star, complete, triangulated_disk");
        app->add_option("--size", size, "Generator size, N or N,M");
        app->add_option("--graph-seed", seed, "Generator seed (triangulated_disk)");
    }

    std::vector<std::size_t> dims() const {
        std::vector<std::size_t> out;
        std::stringstream in(size);
        std::string part;
        while (std::getline(in, part, ',')) {
            try {
                std::size_t used = 0;
                const long long v = std::stoll(part, &used);
                if (used != part.size() || v < 0) throw std::invalid_argument(part);
                out.push_back(static_cast<std::size_t>(v));
            } catch (const std::exception&) {
                throw ValidationError("--size expects N or N,M; got '" + size + "'");
            }
        }
        return out;
    }

    Graph load() const {
        if (!path.empty() && !family.empty()) throw ValidationError("use either --graph or --family/--size, not both");
        if (!path.empty()) return load_graph(path);
        if (family.empty() || size.empty()) throw ValidationError("a graph is required: --graph FILE or --family NAME --size N");
        return generate(parse_family(family), dims(), seed);
    }

    std::string label() const {
        if (!path.empty()) return std::filesystem::path(path).stem().string();
        return family;
    }
};

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ValidationError("--seeds expects a comma-separated list of integers; got '" + text + "'");
        }
    }
    if (out.empty()) throw ValidationError("--seeds must list at least one seed");
    return out;
}

void emit(const std::string& body, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << body;
        if (!body.empty() && body.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out || !(out << body << (body.empty() || body.back() == '\n' ? "" : "\n")))
        throw FilesystemError("cannot write " + out_path);
}

std::ifstream open_input(const std::string& path, const std::string& what) {
    std::ifstream in(path);
    if (!in) throw FilesystemError("cannot open " + what + " '" + path + "'");
    return in;
}

json flow_json(const Flow& f) {
    json paths = json::array();
    for (const auto& [p, mass] : f.paths()) paths.push_back({{"path", p.vertices()}, {"mass", mass}});
    return paths;
}

json distribution_json(const SubsetDistribution& mu) {
    json atoms = json::array();
    for (const auto& [set, p] : mu.atoms()) atoms.push_back({{"set", set}, {"probability", p}});
    return atoms;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral bounds via spreading metrics and subset flows"};
    app.require_subcommand(1);

    GraphSource source;
    std::string out;
    double tol = 1e-3;
    std::size_t max_iterations = 20000;
    std::size_t r = 0;
    std::string seeds_text = "1,2,3,4,5,6,7,8,9,10";
    std::string constants_path;

    auto* gen = app.add_subcommand("gen", "Generate a graph and write it in the text format");
    gen->add_option("--family", source.family)->required();
    gen->add_option("--size", source.size)->required();
    gen->add_option("--graph-seed", source.seed);
    gen->add_option("--out", out, "Output file (default stdout)");

    auto* spectrum = app.add_subcommand("spectrum", "Exact Laplacian spectrum as CSV");
    source.attach(spectrum);
    spectrum->add_option("--out", out);

    std::string spread_mode;
    std::string weights_path;
    auto* spread = app.add_subcommand("spread", "Spreading weights and subset-flow duality");
    spread->add_option("mode", spread_mode, "epsilon | primal | dual | gap")
        ->required()
        ->check(CLI::IsMember({"epsilon", "primal", "dual", "gap"}));
    source.attach(spread);
    spread->add_option("--r", r, "Subset size")->required();
    spread->add_option("--tol", tol);
    spread->add_option("--max-iterations", max_iterations);
    spread->add_option("--weights", weights_path, "Vertex weights for epsilon mode (default uniform)");
    spread->add_option("--out", out);

    std::string flow_mode, flow_path, distribution_path, family_constants = "planar", overlap = "formula";
    std::uint64_t flow_seed = 0;
    auto* flow = app.add_subcommand("flow", "Flow congestion, intersection number, rounding and lower bounds");
    flow->add_option("mode", flow_mode, "congestion | inter | round | check | lower")
        ->required()
        ->check(CLI::IsMember({"congestion", "inter", "round", "check", "lower"}));
    source.attach(flow);
    flow->add_option("--flow", flow_path, "Flow file: 'mass v0 v1 ... vk' per line");
    flow->add_option("--distribution", distribution_path, "Distribution file: 'prob v0 ... vk' per line");
    flow->add_option("--seed", flow_seed, "Rounding seed");
    flow->add_option("--constants", constants_path, "Constants file (key = value)");
    flow->add_option("--family-constants", family_constants, "planar | genus:G | minor_free:H");
    flow->add_option("--overlap", overlap, "Overlap estimator for lower mode: formula | bruteforce")
        ->check(CLI::IsMember({"formula", "bruteforce"}));
    flow->add_option("--out", out);

    std::size_t k = 1;
    bool exact = false;
    bool uniform_weights = false;
    bool select_by_bound = false;
    auto* certify = app.add_subcommand("certify", "Build and self-verify an eigenvalue certificate for lambda_k");
    source.attach(certify);
    certify->add_option("--k", k)->required();
    certify->add_option("--weights", weights_path, "Spreading weights (default: optimized)");
    certify->add_flag("--uniform-weights", uniform_weights, "Use uniform weights instead of optimizing");
    certify->add_option("--seeds", seeds_text, "Partition seeds, comma separated");
    certify->add_flag("--select-by-bound", select_by_bound, "Keep the seed with the smallest bound, not smallest beta");
    certify->add_option("--tol", tol);
    certify->add_option("--max-iterations", max_iterations);
    certify->add_flag("--exact", exact, "Attach the exact lambda_k from the dense spectrum");
    certify->add_option("--out", out);

    std::string certificate_path;
    auto* verify = app.add_subcommand("verify", "Re-check a certificate against its graph");
    source.attach(verify);
    verify->add_option("--certificate", certificate_path)->required()->check(CLI::ExistingFile);
    verify->add_flag("--exact", exact, "Also compare against the exact lambda_k");
    verify->add_option("--out", out);

    std::size_t k_min = 1, k_max = 0;
    bool no_dual = false;
    auto* experiment = app.add_subcommand("experiment", "Run the k sweep and write results.csv and scaling.svg");
    source.attach(experiment);
    experiment->add_option("--k-min", k_min);
    experiment->add_option("--k-max", k_max, "Default: min(n, 8)");
    experiment->add_option("--r", r, "Override the subset size (default floor(n/8k))");
    experiment->add_option("--tol", tol);
    experiment->add_option("--max-iterations", max_iterations);
    experiment->add_option("--constants", constants_path, "Constants file, echoed in the run summary");
    experiment->add_option("--seeds", seeds_text);
    experiment->add_flag("--select-by-bound", select_by_bound);
    experiment->add_flag("--uniform-weights", uniform_weights);
    experiment->add_flag("--no-dual", no_dual, "Skip the dual solver");
    experiment->add_option("--out", out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(ExitCode::kValidation);
    }

    try {
        SolverOptions solver;
        solver.tol = tol;
        solver.max_iterations = max_iterations;

        if (*gen) {
            std::ostringstream body;
            write_graph(body, source.load());
            emit(body.str(), out);
            return 0;
        }

        if (*spectrum) {
            std::ostringstream body;
            write_spectrum_csv(body, eig_symmetric(laplacian(source.load())));
            emit(body.str(), out);
            return 0;
        }

        if (*spread) {
            const Graph g = source.load();
            json j;
            int status = 0;
            if (spread_mode == "epsilon") {
                const VertexWeighting w =
                    weights_path.empty() ? VertexWeighting::uniform(g.num_vertices())
                                         : load_weighting(weights_path, g.num_vertices());
                const auto c = epsilon_r(g, w, r, solver.search);
                j = {{"r", r}, {"epsilon", c.epsilon}, {"witness_set", c.witness_set}, {"mode", to_string(c.mode)}};
            } else if (spread_mode == "primal") {
                const auto c = primal_max_spread(g, r, solver);
                j = {{"r", r},
                     {"epsilon", c.epsilon},
                     {"witness_set", c.witness_set},
                     {"weights", c.weights.values()},
                     {"iterations", c.iterations},
                     {"converged", c.converged},
                     {"mode", to_string(c.mode)}};
                if (!c.converged) {
                    std::cerr << "primal solver hit the iteration cap; reporting the best iterate\n";
                    status = static_cast<int>(ExitCode::kCheckFailure);
                }
            } else if (spread_mode == "dual") {
                const auto s = dual_min_congestion(g, r, solver);
                j = {{"r", r},
                     {"congestion", s.congestion},
                     {"dual_value", s.dual_value},
                     {"lower_bound", s.lower_bound},
                     {"iterations", s.iterations},
                     {"converged", s.converged},
                     {"mode", to_string(s.mode)},
                     {"mu", distribution_json(s.mu)},
                     {"flow", flow_json(s.flow)}};
                if (!validate_mu_flow(s.flow, s.mu, 1e-6).valid) {
                    std::cerr << "dual solution failed the mu-flow check\n";
                    status = static_cast<int>(ExitCode::kCheckFailure);
                } else if (!s.converged && s.mode == SolveMode::exact) {
                    std::cerr << "dual solver hit the iteration cap; the value is still a valid upper bound\n";
                    status = static_cast<int>(ExitCode::kCheckFailure);
                }
            } else {
                const auto report = duality_gap(g, r, solver);
                emit(to_json(report), out);
                if (report.mode == SolveMode::exact && report.gap > 10.0 * tol) {
                    std::cerr << "duality gap " << report.gap << " exceeds 10*tol\n";
                    return static_cast<int>(ExitCode::kCheckFailure);
                }
                return 0;
            }
            emit(j.dump(2), out);
            return status;
        }

        if (*flow) {
            const Graph g = source.load();
            const BoundsConfig config = constants_path.empty() ? BoundsConfig{} : load_bounds_config(constants_path);
            auto need_flow = [&] {
                if (flow_path.empty()) throw ValidationError("--flow is required for this mode");
                auto in = open_input(flow_path, "flow file");
                Flow f = read_flow(in);
                f.validate(g);
                return f;
            };
            auto need_distribution = [&] {
                if (distribution_path.empty()) throw ValidationError("--distribution is required for this mode");
                auto in = open_input(distribution_path, "distribution file");
                return read_distribution(in);
            };
            json j;
            int status = 0;
            if (flow_mode == "congestion") {
                const Flow f = need_flow();
                j = {{"congestion", congestion(f)}, {"loads", vertex_loads(f, g.num_vertices())}};
            } else if (flow_mode == "inter") {
                const Flow f = need_flow();
                j = {{"intersection_number", intersection_number(f)}, {"congestion", congestion(f)}};
            } else if (flow_mode == "round") {
                const Flow f = need_flow();
                const Flow rounded = round_integral(f, flow_seed);
                j = {{"seed", flow_seed},
                     {"intersection_number", intersection_number(rounded)},
                     {"flow", flow_json(rounded)}};
            } else if (flow_mode == "check") {
                const Flow f = need_flow();
                const auto check = validate_mu_flow(f, need_distribution(), 1e-6);
                j = {{"valid", check.valid},
                     {"max_deviation", check.max_deviation},
                     {"worst_pair", {check.worst_pair.first, check.worst_pair.second}}};
                if (!check.valid) status = static_cast<int>(ExitCode::kCheckFailure);
            } else {
                const auto mu = need_distribution();
                const auto cc = parse_family_constants(family_constants, config.c_kt);
                const std::size_t n = g.num_vertices();
                const auto light = light_edge_lower(mu, n, cc, config.claim_lite_factor);
                j = {{"constants", describe(config)},
                     {"family", family_constants},
                     {"c", cc.c},
                     {"a", cc.a},
                     {"k", cc.k},
                     {"expected_size_sq", mu.expected_size_sq()},
                     {"subset_flow_lower", subset_flow_lower(mu, n, cc, config.C1, config.c0)},
                     {"light_edge_lower", light.value},
                     {"light_beta", light.beta},
                     {"light_mass", light.light_mass},
                     {"overlap", overlap},
                     {"overlap_lower",
                      ss_prime_lower(g, mu, overlap == "bruteforce" ? OverlapMode::bruteforce : OverlapMode::formula,
                                     cc)}};
            }
            emit(j.dump(2), out);
            return status;
        }

        if (*certify) {
            const Graph g = source.load();
            const std::size_t n = g.num_vertices();
            if (k < 1 || k > n) throw ValidationError("--k must lie in [1, n]");
            CertifyOptions options;
            options.seeds = parse_seeds(seeds_text);
            options.select_by_bound = select_by_bound;
            options.search = solver.search;
            VertexWeighting w = VertexWeighting::uniform(n);
            const std::size_t rk = n / (8 * k);
            if (!weights_path.empty()) {
                w = load_weighting(weights_path, n);
            } else if (!uniform_weights && rk >= 2) {
                w = primal_max_spread(g, rk, solver).weights;
            }
            auto cert = build_certificate(g, w, k, options);
            if (exact) cert.exact_lambda_k = lambda_k(eig_symmetric(laplacian(g)), k);
            emit(to_json(cert), out);
            const auto report = verify_certificate(g, cert);
            bool invariants_ok = true;
            for (const auto& check : proof_invariants(g, cert)) {
                if (!check.passed) {
                    std::cerr << "proof invariant failed: " << check.name << " (" << check.lhs << " vs " << check.rhs
                              << ")\n";
                    invariants_ok = false;
                }
            }
            for (const auto& f : report.failures) std::cerr << "verification failed: " << f << '\n';
            return report.ok && invariants_ok ? 0 : static_cast<int>(ExitCode::kCheckFailure);
        }

        if (*verify) {
            const Graph g = source.load();
            std::ifstream in = open_input(certificate_path, "certificate");
            std::stringstream text;
            text << in.rdbuf();
            const auto cert = certificate_from_json(text.str());
            if (cert.n != g.num_vertices()) throw ValidationError("certificate was built for a different vertex count");
            std::optional<double> lambda;
            if (exact) lambda = lambda_k(eig_symmetric(laplacian(g)), cert.k);
            const auto report = verify_certificate(g, cert, lambda);
            json checks = json::array();
            for (const auto& c : report.checks)
                checks.push_back({{"name", c.name}, {"passed", c.passed}, {"lhs", c.lhs}, {"rhs", c.rhs}});
            json j = {{"ok", report.ok}, {"checks", checks}, {"failures", report.failures}};
            emit(j.dump(2), out);
            return report.ok ? 0 : static_cast<int>(ExitCode::kCheckFailure);
        }

        if (*experiment) {
            const Graph g = source.load();
            const BoundsConfig config = constants_path.empty() ? BoundsConfig{} : load_bounds_config(constants_path);
            ExperimentConfig cfg;
            cfg.label = source.label();
            cfg.k_min = k_min;
            cfg.k_max = k_max == 0 ? std::min<std::size_t>(g.num_vertices(), 8) : k_max;
            if (r != 0) cfg.r_override = r;
            cfg.solver = solver;
            cfg.certify.seeds = parse_seeds(seeds_text);
            cfg.certify.select_by_bound = select_by_bound;
            cfg.optimize_weights = !uniform_weights;
            cfg.compute_dual = !no_dual;
            const auto rows = run_experiment(g, cfg);
            emit_report(rows, out);
            std::cerr << "wrote " << rows.size() << " rows to " << out << " (constants: " << describe(config)
                      << ")\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.exit_code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return static_cast<int>(ExitCode::kCheckFailure);
    }
    return 0;
}
