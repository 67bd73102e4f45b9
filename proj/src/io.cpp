#include "poly120/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace poly120 {

json to_json(const GoldenNumber& x) {
    const auto t = x.to_tuple();
    return json::array({t[0], t[1], t[2], t[3]});
}

GoldenNumber golden_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4) throw FormatError("golden_tuple", "expected [a_num, a_den, b_num, b_den]");
    std::array<long long, 4> t{};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!j[i].is_number_integer()) throw FormatError("golden_tuple", "non-integer entry");
        t[i] = j[i].get<long long>();
    }
    if (t[1] <= 0 || t[3] <= 0) throw FormatError("golden_tuple", "denominators must be positive");
    return GoldenNumber::from_tuple(t);
}

// ---------------------------------------------------------------------------

json rays_json(const Polytope& polytope) {
    json out = json::array();
    for (const auto& ray : polytope.rays()) {
        json coords = json::array();
        for (const auto& c : ray.vector) coords.push_back(to_json(c));
        out.push_back({{"index", ray.index},
                       {"coords", coords},
                       {"cell", {{"col", ray.unprimed_cell.to_string()}, {"row", ray.primed_cell.to_string()}}}});
    }
    return out;
}

std::string rays_csv(const Polytope& polytope) {
    std::ostringstream out;
    out << "index,x1,x2,x3,x4,col,row\n";
    for (const auto& ray : polytope.rays()) {
        out << ray.index;
        for (const auto& c : ray.vector) out << ',' << c.to_string();
        out << ',' << ray.unprimed_cell.to_string() << ',' << ray.primed_cell.to_string() << '\n';
    }
    return out.str();
}

json bases_json(const RayBasisSystem& system) {
    json out = json::array();
    for (int id : system.basis_ids()) {
        const auto& b = system.polytope().basis(id);
        out.push_back({{"id", id}, {"rays", b.rays}, {"tag", b.tag.to_string()}});
    }
    return out;
}

std::string bases_csv(const RayBasisSystem& system) {
    std::ostringstream out;
    out << "id,r1,r2,r3,r4,tag\n";
    for (int id : system.basis_ids()) {
        const auto& b = system.polytope().basis(id);
        out << id << ',' << b.rays[0] << ',' << b.rays[1] << ',' << b.rays[2] << ',' << b.rays[3] << ','
            << b.tag.to_string() << '\n';
    }
    return out.str();
}

std::string graph_adjacency(const RayBasisSystem& system) {
    std::ostringstream out;
    for (int r : system.ray_indices()) {
        out << r << ':';
        for (int s : system.polytope().orthogonal_rays(r))
            if (system.contains_ray(s)) out << ' ' << s;
        out << '\n';
    }
    return out.str();
}

std::string graph_dot(const RayBasisSystem& system) {
    std::ostringstream out;
    out << "graph ks {\n";
    for (int r : system.ray_indices()) out << "  " << r << ";\n";
    for (int r : system.ray_indices())
        for (int s : system.polytope().orthogonal_rays(r))
            if (s > r && system.contains_ray(s)) out << "  " << r << " -- " << s << ";\n";
    out << "}\n";
    return out.str();
}

// ---------------------------------------------------------------------------

json system_ref_to_json(const SystemRef& ref) {
    if (ref.custom) return "custom";
    if (ref.dropped.empty()) return "full";
    json drop = json::array();
    for (const auto& c : ref.dropped) drop.push_back(c.to_string());
    return {{"drop", drop}};
}

SystemRef system_ref_from_json(const json& j) {
    if (j.is_string()) {
        if (j == "full") return {};
        if (j == "custom") return {{}, true};
        throw FormatError("system_ref", "expected \"full\" or {\"drop\": [...]}");
    }
    if (!j.is_object() || !j.contains("drop") || !j["drop"].is_array())
        throw FormatError("system_ref", "expected \"full\" or {\"drop\": [...]}");
    SystemRef ref;
    for (const auto& label : j["drop"]) {
        if (!label.is_string()) throw FormatError("system_ref", "drop labels must be strings");
        try {
            ref.dropped.push_back(Cell24::parse(label.get<std::string>()));
        } catch (const std::invalid_argument& e) {
            throw FormatError("system_ref", e.what());
        }
    }
    std::sort(ref.dropped.begin(), ref.dropped.end());
    ref.dropped.erase(std::unique(ref.dropped.begin(), ref.dropped.end()), ref.dropped.end());
    return ref;
}

RayBasisSystem resolve_system(const SystemRef& ref, const Polytope& polytope) {
    // A custom subset is verified against the full table it was drawn from.
    if (ref.custom) return full_system(polytope);
    return reduce(full_system(polytope), ref.dropped);
}

json system_to_json(const RayBasisSystem& system) {
    json bases = json::array();
    for (int id : system.basis_ids()) bases.push_back(system.polytope().basis(id).rays);
    json out = {{"system", system_ref_to_json(system.ref())},
                {"signature", signature(system).to_string()},
                {"rays", system.ray_indices()},
                {"bases", bases}};
    return out;
}

namespace {

int basis_id_of(const json& quad, const Polytope& polytope) {
    if (!quad.is_array() || quad.size() != 4) throw FormatError("bases_known", "each basis must list four rays");
    std::array<int, 4> rays{};
    for (std::size_t k = 0; k < 4; ++k) {
        if (!quad[k].is_number_integer()) throw FormatError("bases_known", "ray indices must be integers");
        rays[k] = quad[k].get<int>();
    }
    const auto id = polytope.find_basis(rays);
    if (!id) throw FormatError("bases_known", "rays " + quad.dump() + " do not form a basis");
    return *id;
}

}  // namespace

RayBasisSystem system_from_json(const json& j, const Polytope& polytope) {
    if (!j.is_object()) throw FormatError("system_object", "expected a JSON object");
    const SystemRef ref = j.contains("system") ? system_ref_from_json(j["system"]) : SystemRef{{}, true};
    if (!j.contains("bases")) return resolve_system(ref, polytope);
    if (!j["bases"].is_array()) throw FormatError("bases_known", "bases must be an array");

    std::vector<int> ids;
    for (const auto& quad : j["bases"]) ids.push_back(basis_id_of(quad, polytope));
    RayBasisSystem system(polytope, ids, ref);
    if (!ref.custom && system.basis_ids() != resolve_system(ref, polytope).basis_ids())
        throw FormatError("bases_match_system", "bases differ from the named reduction");
    if (j.contains("rays")) {
        if (!j["rays"].is_array()) throw FormatError("rays_match_bases", "rays must be an array");
        std::vector<int> rays;
        for (const auto& r : j["rays"]) {
            if (!r.is_number_integer()) throw FormatError("rays_match_bases", "ray indices must be integers");
            rays.push_back(r.get<int>());
        }
        std::sort(rays.begin(), rays.end());
        if (rays != system.ray_indices()) throw FormatError("rays_match_bases", "ray list is not the union of the bases");
    }
    return system;
}

// ---------------------------------------------------------------------------

Certificate make_certificate(const ParityProof& proof, const RayBasisSystem& host, std::optional<std::uint64_t> rng_seed,
                             std::optional<std::string> mode) {
    Certificate cert{proof, classify(proof, host.polytope()).to_string(), is_critical(proof, host), {}, rng_seed,
                     std::move(mode)};
    for (const auto& c : spanned_600cells(proof, host.polytope())) cert.spanned_600cells.push_back(c.to_string());
    return cert;
}

json to_json(const Certificate& cert, const Polytope& polytope) {
    json bases = json::array();
    for (int id : cert.proof.basis_ids) bases.push_back(polytope.basis(id).rays);
    json out = {{"system", system_ref_to_json(cert.proof.system)}, {"basis_ids", cert.proof.basis_ids}, {"bases", bases}};
    if (cert.symbol) out["symbol"] = *cert.symbol;
    if (cert.critical) out["critical"] = *cert.critical;
    if (!cert.spanned_600cells.empty()) out["spanned_600cells"] = cert.spanned_600cells;
    if (cert.rng_seed) out["rng_seed"] = *cert.rng_seed;
    if (cert.mode) out["mode"] = *cert.mode;
    return out;
}

Certificate certificate_from_json(const json& j, const Polytope& polytope) {
    if (!j.is_object()) throw FormatError("certificate_object", "expected a JSON object");
    Certificate cert;
    cert.proof.system = j.contains("system") ? system_ref_from_json(j["system"]) : SystemRef{};

    std::optional<std::vector<int>> from_ids;
    std::optional<std::vector<int>> from_bases;
    if (j.contains("basis_ids")) {
        if (!j["basis_ids"].is_array()) throw FormatError("basis_ids_known", "basis_ids must be an array");
        from_ids.emplace();
        for (const auto& id : j["basis_ids"]) {
            if (!id.is_number_integer() || id.get<long long>() < 1 || id.get<long long>() > kBasisCount)
                throw FormatError("basis_ids_known", "unknown basis id " + id.dump());
            from_ids->push_back(id.get<int>());
        }
    }
    if (j.contains("bases")) {
        if (!j["bases"].is_array()) throw FormatError("bases_known", "bases must be an array");
        from_bases.emplace();
        for (const auto& quad : j["bases"]) from_bases->push_back(basis_id_of(quad, polytope));
    }
    if (!from_ids && !from_bases) throw FormatError("has_bases", "certificate lists no bases");

    auto sorted_unique = [](std::vector<int> v, const char* invariant) {
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end()) throw FormatError(invariant, "a basis is listed twice");
        return v;
    };
    std::vector<int> ids;
    if (from_ids) ids = sorted_unique(*from_ids, "basis_ids_unique");
    if (from_bases) {
        auto b = sorted_unique(*from_bases, "bases_unique");
        if (from_ids && b != ids) throw FormatError("bases_match_basis_ids", "bases and basis_ids disagree");
        ids = std::move(b);
    }
    cert.proof = ParityProof::from_bases(polytope, cert.proof.system, std::move(ids));

    if (j.contains("symbol")) {
        if (!j["symbol"].is_string()) throw FormatError("symbol", "symbol must be a string");
        cert.symbol = j["symbol"].get<std::string>();
    }
    if (j.contains("critical")) {
        if (!j["critical"].is_boolean()) throw FormatError("critical", "critical must be a boolean");
        cert.critical = j["critical"].get<bool>();
    }
    if (j.contains("spanned_600cells")) {
        if (!j["spanned_600cells"].is_array()) throw FormatError("spanned_600cells", "must be an array");
        for (const auto& c : j["spanned_600cells"]) {
            if (!c.is_string()) throw FormatError("spanned_600cells", "labels must be strings");
            cert.spanned_600cells.push_back(c.get<std::string>());
        }
    }
    if (j.contains("rng_seed") && !j["rng_seed"].is_null()) {
        if (!j["rng_seed"].is_number_unsigned()) throw FormatError("rng_seed", "must be a non-negative integer");
        cert.rng_seed = j["rng_seed"].get<std::uint64_t>();
    }
    if (j.contains("mode") && !j["mode"].is_null()) {
        if (!j["mode"].is_string()) throw FormatError("mode", "must be a string");
        cert.mode = j["mode"].get<std::string>();
    }
    return cert;
}

json catalog_to_json(const Catalog& catalog) {
    json rows = json::array();
    for (const auto& [n, row] : catalog.rows) {
        json critical = json::array();
        json non_critical = json::array();
        for (const auto& s : row.critical) critical.push_back(s.ray_part_string());
        for (const auto& s : row.non_critical) non_critical.push_back(s.ray_part_string());
        rows.push_back({{"bases", n},
                        {"symbols", critical},
                        {"non_critical_symbols", non_critical},
                        {"proofs", row.proof_count},
                        {"critical_proofs", row.critical_count},
                        {"single_600cell_proofs", row.single_600cell_count}});
    }
    return {{"exhaustive", catalog.exhaustive},
            {"mode", to_string(catalog.mode_used)},
            {"kernel_dimension", catalog.kernel_dimension},
            {"rows", rows}};
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("readable_file", "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError("json_syntax", e.what());
    }
}

}  // namespace poly120
