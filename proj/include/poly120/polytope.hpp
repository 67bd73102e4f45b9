#pragma once

#include "poly120/golden.hpp"

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poly120 {

inline constexpr int kRayCount = 300;
inline constexpr int kBasisCount = 675;
inline constexpr int kRaysPerBasis = 4;

// ---------------------------------------------------------------------------
// Rotation operators

enum class OperatorName { U, V, W, X, Y };

struct RotationOperator {
    OperatorName name;
    GoldenMatrix4 matrix;  // matrix^period == identity, exactly
    unsigned period;
    bool negated;  // matrix is the negative of the printed table
};

char to_char(OperatorName name);
/// Accepts "U".."Y"; throws std::invalid_argument otherwise.
OperatorName parse_operator_name(std::string_view text);

/// Matrix entries exactly as tabulated for the five rotations.
GoldenMatrix4 transcribed_matrix(OperatorName name);

/// Exact rotation with matrix^period == I. A tabulated matrix whose period-th
/// power is -I is replaced by its negative, which acts identically on rays.
/// Throws std::logic_error if the matrix is not orthogonal or has neither
/// property.
RotationOperator make_operator(OperatorName name);

// ---------------------------------------------------------------------------
// Cell labels

/// One of the ten 600-cells: A..E (columns of the block table) or A'..E' (rows).
struct Cell600 {
    int letter = 0;  // 0..4 for A..E
    bool primed = false;

    std::string to_string() const;
    static Cell600 parse(std::string_view text);
    friend auto operator<=>(const Cell600&, const Cell600&) = default;
};

/// A block of the 5x5 ray table: the 24-cell shared by a primed row and an
/// unprimed column. Canonical text form "X'Y" (primed letter first).
struct Cell24 {
    int primed_row = 0;
    int unprimed_col = 0;

    std::string to_string() const;
    /// Accepts "X'Y" and "YX'"; throws std::invalid_argument.
    static Cell24 parse(std::string_view text);
    /// The 12 ray indices of this block, ascending.
    std::array<int, 12> rays() const;
    friend auto operator<=>(const Cell24&, const Cell24&) = default;
};

struct CellMembership {
    Cell600 unprimed;
    Cell600 primed;
    Cell24 cell24;
};

/// Block lookup for a ray index in 1..300; throws std::out_of_range.
CellMembership cell_membership(int index);

// ---------------------------------------------------------------------------
// Rays and bases

struct Ray {
    int index = 0;
    GoldenVector4 vector;
    Cell600 unprimed_cell;
    Cell600 primed_cell;
};

/// Returns v or -v, whichever has a positive first nonzero component.
/// Throws std::invalid_argument on the zero vector.
GoldenVector4 canonicalize(const GoldenVector4& v);

/// Ray 60n+12m+4l+i is the canonical form of W^n V^m U^l e_i.
std::vector<Ray> generate_rays();

/// A basis belongs either to a single 600-cell, or (the 75 block-table bases)
/// to a 24-cell and hence to one primed and one unprimed 600-cell.
struct BasisTag {
    std::optional<Cell24> cell24;
    Cell600 cell600;  // meaningful only when cell24 is empty

    std::string to_string() const;
    std::vector<Cell600> cells() const;
};

struct Basis {
    int id = 0;
    std::array<int, 4> rays{};  // strictly increasing
    BasisTag tag;
};

/// All 4-cliques of the orthogonality graph, sorted lexicographically and
/// numbered 1..675. Throws std::logic_error if the counts are off.
std::vector<Basis> enumerate_bases(std::span<const Ray> rays);

/// For each of the ten 600-cells, the ids of the 75 bases lying inside it.
std::map<Cell600, std::vector<int>> basis_600cell_tables(std::span<const Basis> bases);

// ---------------------------------------------------------------------------
// Ray permutations

class NotASymmetry : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RayPermutation {
    std::string operator_name;
    std::vector<int> mapping;  // mapping[i - 1] is the image of ray i

    int operator()(int ray) const { return mapping.at(static_cast<std::size_t>(ray - 1)); }
    /// Composition: (*this)(other(i)).
    RayPermutation after(const RayPermutation& other) const;
    bool is_bijection() const;
};

/// Image index of one ray under an operator, or nullopt if op * v(ray) is
/// not (up to sign) any of the 300 rays.
std::optional<int> ray_image(const RotationOperator& op, std::span<const Ray> rays, int index);

/// Permutation of all 300 rays; throws NotASymmetry when some image is not a ray.
RayPermutation ray_permutation(const RotationOperator& op, std::span<const Ray> rays);

// ---------------------------------------------------------------------------

/// The constructed 300-ray / 675-basis system with lookup tables.
class Polytope {
public:
    Polytope();

    /// Lazily built process-wide instance; safe for concurrent readers.
    static const Polytope& shared();

    const std::vector<Ray>& rays() const { return rays_; }
    const std::vector<Basis>& bases() const { return bases_; }
    const Ray& ray(int index) const { return rays_.at(static_cast<std::size_t>(index - 1)); }
    const Basis& basis(int id) const { return bases_.at(static_cast<std::size_t>(id - 1)); }

    /// Basis id for a set of four rays in any order.
    std::optional<int> find_basis(std::array<int, 4> rays) const;
    /// Rays orthogonal to the given one, ascending.
    const std::vector<int>& orthogonal_rays(int index) const {
        return orthogonal_.at(static_cast<std::size_t>(index - 1));
    }
    /// Ids of the bases containing a ray, ascending.
    const std::vector<int>& bases_of_ray(int index) const {
        return bases_of_ray_.at(static_cast<std::size_t>(index - 1));
    }
    const std::map<Cell600, std::vector<int>>& cell_tables() const { return cell_tables_; }

    const RayPermutation& permutation(OperatorName name) const;

private:
    std::vector<Ray> rays_;
    std::vector<Basis> bases_;
    std::map<std::array<int, 4>, int> basis_lookup_;
    std::vector<std::vector<int>> orthogonal_;
    std::vector<std::vector<int>> bases_of_ray_;
    std::map<Cell600, std::vector<int>> cell_tables_;
    std::map<OperatorName, RayPermutation> permutations_;  // U, V, W only
};

}  // namespace poly120
