#include "poly120/parity.hpp"

#include <algorithm>
#include <deque>

namespace poly120 {

namespace {

std::map<int, int> count_rays(const Polytope& polytope, const std::vector<int>& basis_ids) {
    std::map<int, int> counts;
    for (int id : basis_ids) {
        if (id < 1 || id > static_cast<int>(polytope.bases().size()))
            throw std::out_of_range("unknown basis id " + std::to_string(id));
        for (int r : polytope.basis(id).rays) ++counts[r];
    }
    return counts;
}

bool parity_holds(const std::vector<int>& basis_ids, const std::map<int, int>& counts) {
    if (basis_ids.size() % 2 == 0) return false;
    return std::all_of(counts.begin(), counts.end(), [](const auto& kv) { return kv.second % 2 == 0; });
}

std::string render(const std::vector<std::pair<int, int>>& part) {
    std::string out;
    for (const auto& [count, mult] : part) {
        if (!out.empty()) out += ' ';
        out += std::to_string(count) + "_" + std::to_string(mult);
    }
    return out;
}

}  // namespace

std::string ProofSymbol::ray_part_string() const { return render(ray_part); }

std::string ProofSymbol::to_string() const { return render(ray_part) + "-" + std::to_string(basis_count) + "_4"; }

ProofSymbol ProofSymbol::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("malformed proof symbol: " + std::string(text)); };
    const auto dash = text.rfind('-');
    if (dash == std::string_view::npos) throw fail();
    auto term = [&](std::string_view t) -> std::pair<int, int> {
        const auto us = t.find('_');
        if (us == std::string_view::npos || us == 0 || us + 1 == t.size()) throw fail();
        try {
            return {std::stoi(std::string(t.substr(0, us))), std::stoi(std::string(t.substr(us + 1)))};
        } catch (const std::exception&) {
            throw fail();
        }
    };
    ProofSymbol sym;
    std::string_view left = text.substr(0, dash);
    while (!left.empty()) {
        while (!left.empty() && left.front() == ' ') left.remove_prefix(1);
        if (left.empty()) break;
        const auto sp = std::min(left.find(' '), left.size());
        sym.ray_part.push_back(term(left.substr(0, sp)));
        left.remove_prefix(sp);
    }
    std::string_view right = text.substr(dash + 1);
    while (!right.empty() && right.front() == ' ') right.remove_prefix(1);
    const auto [count, per] = term(right);
    if (per != 4) throw fail();
    sym.basis_count = count;
    std::sort(sym.ray_part.begin(), sym.ray_part.end(), [](auto a, auto b) { return a.second < b.second; });
    return sym;
}

ParityProof ParityProof::from_bases(const Polytope& polytope, SystemRef system, std::vector<int> basis_ids) {
    std::sort(basis_ids.begin(), basis_ids.end());
    basis_ids.erase(std::unique(basis_ids.begin(), basis_ids.end()), basis_ids.end());
    auto counts = count_rays(polytope, basis_ids);
    return {std::move(system), std::move(basis_ids), std::move(counts)};
}

bool verify_parity(const ParityProof& proof, const RayBasisSystem& system) {
    for (int id : proof.basis_ids)
        if (!system.contains_basis(id))
            throw std::out_of_range("basis " + std::to_string(id) + " is not in the host system");
    std::vector<int> ids = proof.basis_ids;
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) return false;
    return parity_holds(ids, count_rays(system.polytope(), ids));
}

std::optional<std::string> parity_violation(const ParityProof& proof, const RayBasisSystem& system) {
    for (int id : proof.basis_ids)
        if (!system.contains_basis(id)) return "bases_in_system: basis " + std::to_string(id) + " is not in the host system";
    if (proof.basis_ids.empty()) return std::string("odd_basis_count: no bases");
    if (proof.basis_ids.size() % 2 == 0)
        return "odd_basis_count: " + std::to_string(proof.basis_ids.size()) + " bases";
    for (const auto& [ray, count] : count_rays(system.polytope(), proof.basis_ids))
        if (count % 2 != 0)
            return "even_ray_multiplicity: ray " + std::to_string(ray) + " occurs " + std::to_string(count) + " times";
    return std::nullopt;
}

ProofSymbol classify(const ParityProof& proof, const Polytope& polytope) {
    const auto counts = count_rays(polytope, proof.basis_ids);
    if (!parity_holds(proof.basis_ids, counts)) throw UnverifiedProof("not a parity proof");
    std::map<int, int> histogram;
    for (const auto& [ray, mult] : counts) ++histogram[mult];
    ProofSymbol sym;
    for (const auto& [mult, count] : histogram) sym.ray_part.emplace_back(count, mult);
    sym.basis_count = static_cast<int>(proof.basis_ids.size());
    return sym;
}

Gf2Matrix proof_matrix(const ParityProof& proof, const Polytope& polytope) {
    const auto counts = count_rays(polytope, proof.basis_ids);
    std::map<int, std::size_t> row;
    for (const auto& [ray, mult] : counts) row.emplace(ray, row.size());
    Gf2Matrix m(row.size(), proof.basis_ids.size());
    for (std::size_t c = 0; c < proof.basis_ids.size(); ++c)
        for (int r : polytope.basis(proof.basis_ids[c]).rays) m.set(row.at(r), c);
    return m;
}

bool is_critical(const ParityProof& proof, const RayBasisSystem& system) {
    if (!verify_parity(proof, system)) throw UnverifiedProof("not a parity proof");
    // The all-ones vector is always in the kernel; any other kernel vector y
    // makes y or y + 1 an odd-weight proper sub-proof.
    return proof_matrix(proof, system.polytope()).rank() + 1 == proof.basis_ids.size();
}

std::set<Cell600> spanned_600cells(const ParityProof& proof, const Polytope& polytope) {
    std::set<Cell600> cells;
    for (int id : proof.basis_ids)
        for (const auto& c : polytope.basis(id).tag.cells()) cells.insert(c);
    return cells;
}

std::vector<ParityProof> orbit(const ParityProof& proof, std::span<const RayPermutation> generators,
                               const Polytope& polytope) {
    const SystemRef full{};
    std::set<std::vector<int>> seen{proof.basis_ids};
    std::deque<std::vector<int>> queue{proof.basis_ids};
    while (!queue.empty()) {
        const auto current = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : generators) {
            std::vector<int> image;
            image.reserve(current.size());
            for (int id : current) {
                const auto& rays = polytope.basis(id).rays;
                const auto mapped = polytope.find_basis({g(rays[0]), g(rays[1]), g(rays[2]), g(rays[3])});
                if (!mapped)
                    throw NotASymmetry("permutation " + g.operator_name + " maps basis " + std::to_string(id) +
                                       " to a non-basis");
                image.push_back(*mapped);
            }
            std::sort(image.begin(), image.end());
            if (seen.insert(image).second) queue.push_back(std::move(image));
        }
    }
    std::vector<ParityProof> out;
    out.reserve(seen.size());
    for (const auto& ids : seen) out.push_back(ParityProof::from_bases(polytope, full, ids));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace poly120
