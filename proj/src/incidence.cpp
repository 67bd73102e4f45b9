#include "poly120/incidence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace poly120 {

std::string SystemSignature::to_string() const {
    std::string out;
    for (const auto& [count, mult] : ray_part) out += std::to_string(count) + "_" + std::to_string(mult) + " ";
    out += "- " + std::to_string(basis_count) + "_4";
    return out;
}

RayBasisSystem::RayBasisSystem(const Polytope& polytope, std::vector<int> basis_ids, SystemRef ref)
    : polytope_(&polytope), ref_(std::move(ref)), bases_(std::move(basis_ids)) {
    std::sort(bases_.begin(), bases_.end());
    bases_.erase(std::unique(bases_.begin(), bases_.end()), bases_.end());
    for (int id : bases_) {
        if (id < 1 || id > static_cast<int>(polytope.bases().size()))
            throw std::out_of_range("unknown basis id " + std::to_string(id));
        for (int r : polytope.basis(id).rays) ++multiplicity_[r];
    }
    rays_.reserve(multiplicity_.size());
    for (const auto& [r, m] : multiplicity_) rays_.push_back(r);
}

int RayBasisSystem::multiplicity(int ray) const {
    const auto it = multiplicity_.find(ray);
    return it == multiplicity_.end() ? 0 : it->second;
}

std::optional<std::size_t> RayBasisSystem::basis_position(int id) const {
    const auto it = std::lower_bound(bases_.begin(), bases_.end(), id);
    if (it == bases_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - bases_.begin());
}

std::optional<std::size_t> RayBasisSystem::ray_position(int ray) const {
    const auto it = std::lower_bound(rays_.begin(), rays_.end(), ray);
    if (it == rays_.end() || *it != ray) return std::nullopt;
    return static_cast<std::size_t>(it - rays_.begin());
}

RayBasisSystem full_system(const Polytope& polytope) {
    std::vector<int> ids(polytope.bases().size());
    std::iota(ids.begin(), ids.end(), 1);
    return {polytope, std::move(ids), {}};
}

RayBasisSystem reduce(const RayBasisSystem& system, const std::vector<Cell24>& dropped) {
    std::set<int> removed;
    for (const auto& cell : dropped)
        for (int r : cell.rays()) removed.insert(r);

    std::vector<int> kept;
    for (int id : system.basis_ids()) {
        const auto& rays = system.polytope().basis(id).rays;
        if (std::none_of(rays.begin(), rays.end(), [&](int r) { return removed.count(r) > 0; })) kept.push_back(id);
    }

    SystemRef ref = system.ref();
    ref.dropped.insert(ref.dropped.end(), dropped.begin(), dropped.end());
    std::sort(ref.dropped.begin(), ref.dropped.end());
    ref.dropped.erase(std::unique(ref.dropped.begin(), ref.dropped.end()), ref.dropped.end());
    return {system.polytope(), std::move(kept), std::move(ref)};
}

std::vector<Cell24> parse_drop_list(std::string_view text) {
    std::vector<Cell24> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = std::min(text.find(',', start), text.size());
        std::string_view item = text.substr(start, end - start);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        if (!item.empty()) out.push_back(Cell24::parse(item));
        start = end + 1;
    }
    return out;
}

std::string format_drop_list(const std::vector<Cell24>& labels) {
    std::string out;
    for (const auto& c : labels) {
        if (!out.empty()) out += ',';
        out += c.to_string();
    }
    return out;
}

RayBasisSystem reduced_system(std::string_view drop_labels, const Polytope& polytope) {
    return reduce(full_system(polytope), parse_drop_list(drop_labels));
}

SystemSignature signature(const RayBasisSystem& system) {
    std::map<int, int> histogram;
    for (const auto& [ray, mult] : system.multiplicities()) ++histogram[mult];
    SystemSignature sig;
    for (const auto& [mult, count] : histogram) sig.ray_part.emplace_back(count, mult);
    sig.basis_count = static_cast<int>(system.basis_count());
    return sig;
}

Gf2Matrix incidence_matrix(const RayBasisSystem& system) {
    Gf2Matrix m(system.ray_count(), system.basis_count());
    for (std::size_t c = 0; c < system.basis_count(); ++c)
        for (int r : system.polytope().basis(system.basis_ids()[c]).rays) m.set(*system.ray_position(r), c);
    return m;
}

}  // namespace poly120
