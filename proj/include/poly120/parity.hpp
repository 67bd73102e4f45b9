#pragma once

#include "poly120/incidence.hpp"

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace poly120 {

/// Ray-multiplicity histogram of a proof, e.g. "46_2 2_4-25_4".
struct ProofSymbol {
    std::vector<std::pair<int, int>> ray_part;  // (count, multiplicity), multiplicity ascending
    int basis_count = 0;

    std::string to_string() const;
    /// Just the ray part, "46_2 2_4", as printed in catalog rows.
    std::string ray_part_string() const;
    static ProofSymbol parse(std::string_view text);

    friend bool operator==(const ProofSymbol&, const ProofSymbol&) = default;
    friend auto operator<=>(const ProofSymbol&, const ProofSymbol&) = default;
};

/// A set of bases claimed to satisfy the odd/even parity conditions.
struct ParityProof {
    SystemRef system;
    std::vector<int> basis_ids;              // ascending, unique
    std::map<int, int> ray_multiplicities;   // occurrences within the proof's bases

    static ParityProof from_bases(const Polytope& polytope, SystemRef system, std::vector<int> basis_ids);

    std::size_t size() const { return basis_ids.size(); }
    friend bool operator==(const ParityProof& a, const ParityProof& b) { return a.basis_ids == b.basis_ids; }
    /// Canonical order: fewer bases first, then lexicographic basis ids.
    friend bool operator<(const ParityProof& a, const ParityProof& b) {
        if (a.basis_ids.size() != b.basis_ids.size()) return a.basis_ids.size() < b.basis_ids.size();
        return a.basis_ids < b.basis_ids;
    }
};

class UnverifiedProof : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Odd number of bases and every ray an even number of times. Multiplicities
/// are recomputed from the basis ids. Throws std::out_of_range if a basis is
/// not part of the system.
bool verify_parity(const ParityProof& proof, const RayBasisSystem& system);

/// Name and detail of the first parity condition the proof breaks, or
/// nullopt if it is a valid proof in the system.
std::optional<std::string> parity_violation(const ParityProof& proof, const RayBasisSystem& system);

/// Throws UnverifiedProof unless the parity conditions hold.
ProofSymbol classify(const ParityProof& proof, const Polytope& polytope = Polytope::shared());

/// No proper nonempty subset is itself a parity proof; equivalently the
/// proof's incidence columns have rank |bases| - 1 over GF(2).
/// Throws UnverifiedProof unless the parity conditions hold.
bool is_critical(const ParityProof& proof, const RayBasisSystem& system);

/// Incidence matrix restricted to the proof's bases (rows are its rays).
Gf2Matrix proof_matrix(const ParityProof& proof, const Polytope& polytope = Polytope::shared());

std::set<Cell600> spanned_600cells(const ParityProof& proof, const Polytope& polytope = Polytope::shared());

/// Closure of a proof under the group generated by ray permutations. Members
/// are hosted by the full system and returned in canonical order. Throws
/// NotASymmetry if some image of a basis is not a basis.
std::vector<ParityProof> orbit(const ParityProof& proof, std::span<const RayPermutation> generators,
                               const Polytope& polytope = Polytope::shared());

}  // namespace poly120
