// poly120: build the 120-cell ray/basis system, reduce it, and search for,
// verify and classify parity proofs.
//
// Exit status: 0 success, 1 verification failure or malformed certificate,
// 2 usage error.

#include "poly120/io.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <random>

using namespace poly120;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Output {
    std::string path;

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) throw UsageError("cannot write " + path);
        out << text;
    }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

RayBasisSystem system_for(const std::string& drop) {
    try {
        return reduced_system(drop);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

struct LoadedProof {
    Certificate cert;
    RayBasisSystem host;
};

LoadedProof load_proof(const std::string& path) {
    const json j = read_json_file(path);
    auto cert = certificate_from_json(j);
    auto host = resolve_system(cert.proof.system);
    return {std::move(cert), std::move(host)};
}

std::vector<RayPermutation> parse_generators(const std::string& text) {
    std::vector<RayPermutation> gens;
    const auto& polytope = Polytope::shared();
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        const auto item = text.substr(start, end - start);
        if (!item.empty()) {
            try {
                gens.push_back(polytope.permutation(parse_operator_name(item)));
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
        start = end + 1;
    }
    return gens;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kochen-Specker parity proofs in the 120-cell"};
    app.require_subcommand(1);

    std::map<CLI::App*, std::string> formats;
    std::string out_path;
    std::string drop;
    std::string proof_path;
    std::string system_path;

    auto add_format = [&](CLI::App* cmd, std::vector<std::string> allowed, std::string def) {
        auto& format = formats[cmd];
        format = def;
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember(allowed))->capture_default_str();
        cmd->add_option("--out", out_path, "Write output to FILE instead of stdout");
    };

    auto* rays_cmd = app.add_subcommand("rays", "Export the 300 rays");
    add_format(rays_cmd, {"json", "csv"}, "csv");

    auto* bases_cmd = app.add_subcommand("bases", "Export the basis table");
    add_format(bases_cmd, {"json", "csv"}, "csv");
    bases_cmd->add_option("--drop", drop, "24-cells to drop, e.g. \"A'A,A'B\"");

    auto* graph_cmd = app.add_subcommand("graph", "Export the orthogonality graph");
    add_format(graph_cmd, {"text", "dot"}, "text");
    graph_cmd->add_option("--drop", drop, "24-cells to drop");

    auto* sig_cmd = app.add_subcommand("signature", "Print the ray/basis symbol of a system");
    sig_cmd->add_option("--system", system_path, "System JSON file");
    sig_cmd->add_option("--drop", drop, "24-cells to drop");

    auto* reduce_cmd = app.add_subcommand("reduce", "Drop 24-cells and print the remaining system's symbol");
    reduce_cmd->add_option("--drop", drop, "24-cells to drop")->required();
    reduce_cmd->add_option("--out", out_path, "Write the reduced system as JSON");

    SearchConfig config;
    std::optional<std::uint64_t> rng_seed;
    std::optional<int> seed_basis;
    bool reproducible = false;
    bool include_single = false;
    unsigned threads = 0;
    auto* search_cmd = app.add_subcommand("search", "Search a system for parity proofs");
    add_format(search_cmd, {"json", "text"}, "json");
    search_cmd->add_option("--target", config.target_bases, "Largest proof size (odd)")->required();
    search_cmd->add_option("--min", config.min_bases, "Smallest proof size");
    std::string mode_text = "hybrid";
    search_cmd->add_option("--mode", mode_text, "incremental | kernel_enumerate | hybrid")
        ->check(CLI::IsMember({"incremental", "kernel_enumerate", "kernel", "hybrid"}));
    search_cmd->add_option("--drop", drop, "24-cells to drop");
    search_cmd->add_option("--seed-basis", seed_basis, "Basis id every proof must contain");
    search_cmd->add_option("--rng-seed", rng_seed, "Seed for tie-breaking");
    search_cmd->add_flag("--reproducible", reproducible, "Require an explicit --rng-seed");
    search_cmd->add_option("--max-solutions", config.max_solutions, "Stop after K proofs (0 = all)");
    search_cmd->add_option("--kernel-dim-limit", config.kernel_dim_limit, "Largest kernel enumerated exhaustively");
    search_cmd->add_option("--node-limit", config.node_limit, "Node budget per seed task (0 = none)");
    search_cmd->add_option("--threads", threads, "Worker threads (default POLY120_THREADS or 1)");
    search_cmd->add_flag("--include-single-cell", include_single, "Also report proofs inside one 600-cell");

    auto* verify_cmd = app.add_subcommand("verify", "Check a proof certificate");
    auto* classify_cmd = app.add_subcommand("classify", "Print a proof's symbol");
    auto* critical_cmd = app.add_subcommand("critical", "Report whether a proof is critical");
    auto* orbit_cmd = app.add_subcommand("orbit", "Expand a proof under symmetry permutations");
    for (auto* cmd : {verify_cmd, classify_cmd, critical_cmd, orbit_cmd})
        cmd->add_option("--proof", proof_path, "Certificate JSON file")->required()->check(CLI::ExistingFile);
    std::string generators = "U,V,W";
    add_format(orbit_cmd, {"json", "text"}, "text");
    orbit_cmd->add_option("--generators", generators, "Comma-separated subset of U,V,W");

    int cat_min = 19, cat_max = 23;
    auto* catalog_cmd = app.add_subcommand("catalog", "Tabulate proof symbols by basis count");
    add_format(catalog_cmd, {"json", "text"}, "text");
    catalog_cmd->add_option("--min", cat_min, "Smallest basis count (odd)");
    catalog_cmd->add_option("--max", cat_max, "Largest basis count (odd)");
    catalog_cmd->add_option("--drop", drop, "24-cells to drop");
    catalog_cmd->add_option("--mode", mode_text, "incremental | kernel_enumerate | hybrid")
        ->check(CLI::IsMember({"incremental", "kernel_enumerate", "kernel", "hybrid"}));
    catalog_cmd->add_option("--threads", threads, "Worker threads");
    catalog_cmd->add_flag("--include-single-cell", include_single, "Also tabulate proofs inside one 600-cell");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const auto chosen = formats.find(app.get_subcommands().front());
    const std::string format = chosen == formats.end() ? std::string() : chosen->second;

    const Output out{out_path};
    try {
        const auto& polytope = Polytope::shared();

        if (*rays_cmd) {
            out.write(format == "json" ? dump(rays_json(polytope)) : rays_csv(polytope));
            return kOk;
        }
        if (*bases_cmd) {
            const auto system = system_for(drop);
            out.write(format == "json" ? dump(bases_json(system)) : bases_csv(system));
            return kOk;
        }
        if (*graph_cmd) {
            const auto system = system_for(drop);
            out.write(format == "dot" ? graph_dot(system) : graph_adjacency(system));
            return kOk;
        }
        if (*sig_cmd) {
            if (!system_path.empty() && !drop.empty()) throw UsageError("use either --system or --drop");
            const auto system = system_path.empty() ? system_for(drop) : system_from_json(read_json_file(system_path));
            std::cout << signature(system).to_string() << "\n";
            return kOk;
        }
        if (*reduce_cmd) {
            const auto system = system_for(drop);
            std::cout << signature(system).to_string() << "\n";
            if (!out_path.empty()) out.write(dump(system_to_json(system)));
            return kOk;
        }
        if (*search_cmd || *catalog_cmd) {
            config.mode = parse_search_mode(mode_text);
            config.workers = worker_count(threads);
            config.new_proofs_only = !include_single;
        }
        if (*search_cmd) {
            if (reproducible && !rng_seed) throw UsageError("--reproducible requires --rng-seed");
            if (!rng_seed) {
                rng_seed = (std::uint64_t{std::random_device{}()} << 32) | std::random_device{}();
                std::fprintf(stderr, "rng_seed=%llu\n", static_cast<unsigned long long>(*rng_seed));
            }
            config.rng_seed = *rng_seed;
            config.seed_basis = seed_basis;
            try {
                config.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const auto system = system_for(drop);
            SearchResult result;
            try {
                result = search(system, config);
            } catch (const DimensionTooLarge& e) {
                std::fprintf(stderr, "poly120: %s; use --mode incremental or hybrid\n", e.what());
                return kUsage;
            }
            if (format == "text") {
                std::string text;
                for (const auto& p : result.proofs) {
                    text += classify(p, polytope).to_string() + (is_critical(p, system) ? " critical" : " non-critical");
                    for (int id : p.basis_ids) text += " " + std::to_string(id);
                    text += "\n";
                }
                text += "# proofs=" + std::to_string(result.proofs.size()) +
                        " exhaustive=" + (result.exhaustive ? "true" : "false") + " mode=" + to_string(result.mode_used) +
                        " kernel_dimension=" + std::to_string(result.kernel_dimension) + "\n";
                out.write(text);
            } else {
                json proofs = json::array();
                for (const auto& p : result.proofs)
                    proofs.push_back(to_json(make_certificate(p, system, config.rng_seed, to_string(result.mode_used))));
                out.write(dump({{"system", system_ref_to_json(system.ref())},
                                {"signature", signature(system).to_string()},
                                {"target", config.target_bases},
                                {"rng_seed", config.rng_seed},
                                {"mode", to_string(result.mode_used)},
                                {"exhaustive", result.exhaustive},
                                {"kernel_dimension", result.kernel_dimension},
                                {"proofs", proofs}}));
            }
            return kOk;
        }
        if (*catalog_cmd) {
            if (cat_min % 2 == 0 || cat_max % 2 == 0 || cat_min < 1 || cat_max < cat_min)
                throw UsageError("--min and --max must be odd with min <= max");
            const auto system = system_for(drop);
            const auto cat = catalog(system, cat_min, cat_max, config);
            if (format == "json") {
                out.write(dump(catalog_to_json(cat)));
            } else {
                std::string text;
                for (const auto& [n, row] : cat.rows) {
                    text += std::to_string(n) + " |";
                    bool first = true;
                    for (const auto& s : row.critical) {
                        text += (first ? " " : ", ") + s.ray_part_string();
                        first = false;
                    }
                    text += "\n";
                }
                text += "# exhaustive=" + std::string(cat.exhaustive ? "true" : "false") +
                        " mode=" + to_string(cat.mode_used) + " kernel_dimension=" + std::to_string(cat.kernel_dimension) +
                        "\n";
                out.write(text);
            }
            return kOk;
        }

        // Certificate-consuming commands.
        LoadedProof loaded = [&] {
            try {
                return load_proof(proof_path);
            } catch (const FormatError& e) {
                std::fprintf(stderr, "poly120: invalid certificate: %s\n", e.what());
                throw;
            }
        }();
        const auto& proof = loaded.cert.proof;
        if (const auto violation = parity_violation(proof, loaded.host)) {
            std::fprintf(stderr, "poly120: not a parity proof: %s\n", violation->c_str());
            return kVerifyFailed;
        }
        const auto symbol = classify(proof, polytope).to_string();
        const bool critical = is_critical(proof, loaded.host);

        if (*verify_cmd) {
            int status = kOk;
            if (loaded.cert.symbol && ProofSymbol::parse(*loaded.cert.symbol) != ProofSymbol::parse(symbol)) {
                std::fprintf(stderr, "poly120: symbol: certificate claims %s, computed %s\n", loaded.cert.symbol->c_str(),
                             symbol.c_str());
                status = kVerifyFailed;
            }
            if (loaded.cert.critical && *loaded.cert.critical != critical) {
                std::fprintf(stderr, "poly120: critical: certificate claims %s\n", *loaded.cert.critical ? "true" : "false");
                status = kVerifyFailed;
            }
            std::cout << symbol << " critical=" << (critical ? "true" : "false") << "\n";
            return status;
        }
        if (*classify_cmd) {
            std::cout << symbol << "\n";
            return kOk;
        }
        if (*critical_cmd) {
            std::cout << "critical=" << (critical ? "true" : "false") << "\n";
            return kOk;
        }
        if (*orbit_cmd) {
            const auto gens = parse_generators(generators);
            const auto members = orbit(proof, gens, polytope);
            if (format == "json") {
                json list = json::array();
                for (const auto& m : members) list.push_back(m.basis_ids);
                out.write(dump({{"generators", generators}, {"size", members.size()}, {"proofs", list}}));
            } else {
                std::string text = "orbit size " + std::to_string(members.size()) + "\n";
                for (const auto& m : members) {
                    for (std::size_t k = 0; k < m.basis_ids.size(); ++k)
                        text += (k ? " " : "") + std::to_string(m.basis_ids[k]);
                    text += "\n";
                }
                out.write(text);
            }
            return kOk;
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "poly120: %s\n", e.what());
        return kUsage;
    } catch (const FormatError& e) {
        if (e.invariant() == "readable_file") {
            std::fprintf(stderr, "poly120: %s\n", e.what());
            return kUsage;
        }
        if (proof_path.empty()) std::fprintf(stderr, "poly120: invalid input: %s\n", e.what());
        return kVerifyFailed;
    } catch (const NotASymmetry& e) {
        std::fprintf(stderr, "poly120: %s\n", e.what());
        return kVerifyFailed;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "poly120: %s\n", e.what());
        return kVerifyFailed;
    }
    return kUsage;
}
