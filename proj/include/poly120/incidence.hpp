#pragma once

#include "poly120/gf2.hpp"
#include "poly120/polytope.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace poly120 {

/// Where a system came from: the full table, the full table minus some
/// 24-cells, or an arbitrary basis subset.
struct SystemRef {
    std::vector<Cell24> dropped;  // sorted, unique; empty for the full table
    bool custom = false;

    bool is_full() const { return dropped.empty() && !custom; }
    friend bool operator==(const SystemRef&, const SystemRef&) = default;
};

/// Ray-count histogram, e.g. "60_2 180_6 - 300_4".
struct SystemSignature {
    std::vector<std::pair<int, int>> ray_part;  // (count, multiplicity), multiplicity ascending
    int basis_count = 0;

    std::string to_string() const;
    friend bool operator==(const SystemSignature&, const SystemSignature&) = default;
};

/// A set of rays and 4-ray bases drawn from the 675-basis table.
class RayBasisSystem {
public:
    /// Builds a system from basis ids; the ray set is the union of their rays.
    RayBasisSystem(const Polytope& polytope, std::vector<int> basis_ids, SystemRef ref);

    const Polytope& polytope() const { return *polytope_; }
    const SystemRef& ref() const { return ref_; }

    const std::vector<int>& ray_indices() const { return rays_; }
    const std::vector<int>& basis_ids() const { return bases_; }
    std::size_t ray_count() const { return rays_.size(); }
    std::size_t basis_count() const { return bases_.size(); }

    /// Number of system bases containing the ray (0 if absent).
    int multiplicity(int ray) const;
    const std::map<int, int>& multiplicities() const { return multiplicity_; }

    bool contains_basis(int id) const { return basis_position(id).has_value(); }
    bool contains_ray(int ray) const { return ray_position(ray).has_value(); }
    /// Position of a basis in basis_ids() (column index of the incidence matrix).
    std::optional<std::size_t> basis_position(int id) const;
    /// Position of a ray in ray_indices() (row index of the incidence matrix).
    std::optional<std::size_t> ray_position(int ray) const;

private:
    const Polytope* polytope_;
    SystemRef ref_;
    std::vector<int> rays_;
    std::vector<int> bases_;
    std::map<int, int> multiplicity_;
};

/// The 300_9 - 675_4 system.
RayBasisSystem full_system(const Polytope& polytope = Polytope::shared());

/// Drops every ray of the named 24-cells and every basis touching one of them.
RayBasisSystem reduce(const RayBasisSystem& system, const std::vector<Cell24>& dropped);

/// Convenience: full_system() reduced by a comma-separated label list such as
/// "A'A,A'B". An empty string gives the full system.
RayBasisSystem reduced_system(std::string_view drop_labels, const Polytope& polytope = Polytope::shared());

/// Parses "A'A,A'B,..." (either label order accepted); throws std::invalid_argument.
std::vector<Cell24> parse_drop_list(std::string_view text);
std::string format_drop_list(const std::vector<Cell24>& labels);

SystemSignature signature(const RayBasisSystem& system);

/// Rows follow ray_indices(), columns follow basis_ids().
Gf2Matrix incidence_matrix(const RayBasisSystem& system);

}  // namespace poly120
