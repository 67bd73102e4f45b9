#include "poly120/polytope.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>
#include <sstream>

namespace poly120 {

namespace {

constexpr std::string_view kLetters = "ABCDE";

// Matrix entries are 0, +-1/2, +-tau/2 or +-1/(2 tau) = +-(tau - 1)/2,
// written here as 0, h, t, i with an optional leading '-'.
GoldenMatrix4 matrix_from_codes(const char* rows) {
    std::istringstream in(rows);
    GoldenMatrix4 m;
    for (auto& row : m)
        for (auto& entry : row) {
            std::string code;
            in >> code;
            const bool negative = code.front() == '-';
            GoldenNumber value;
            switch (code.back()) {
                case '0': value = GoldenNumber(0); break;
                case 'h': value = GoldenNumber::from_ints(1, 0, 2); break;
                case 't': value = GoldenNumber::from_ints(0, 1, 2); break;
                case 'i': value = GoldenNumber::from_ints(-1, 1, 2); break;
                default: throw std::logic_error("bad matrix code " + code);
            }
            entry = negative ? -value : value;
        }
    return m;
}

const char* matrix_codes(OperatorName name) {
    switch (name) {
        case OperatorName::U:
            return " h  h  h -h "
                   " h  h -h  h "
                   " h -h  h  h "
                   " h -h -h -h ";
        case OperatorName::V:
            return " t  0 -h  i "
                   " 0  t -i -h "
                   " h  i  t  0 "
                   "-i  h  0  t ";
        case OperatorName::W:
            return " i -t  0  h "
                   " t  i  h  0 "
                   " 0 -h  i -t "
                   "-h  0  t  i ";
        case OperatorName::X:
            return " i  h  0  t "
                   "-h  i  t  0 "
                   " 0 -t  i  h "
                   "-t  0 -h  i ";
        case OperatorName::Y:
            return "-i -t  0 -h "
                   " t -i  h  0 "
                   " 0 -h -i  t "
                   " h  0 -t -i ";
    }
    throw std::logic_error("unknown operator");
}

int letter_index(char c) {
    const auto pos = kLetters.find(c);
    if (pos == std::string_view::npos) throw std::invalid_argument(std::string("not a cell letter: ") + c);
    return static_cast<int>(pos);
}

void check_dyadic(const GoldenVector4& v, const char* what) {
    for (const auto& c : v)
        if (!c.has_dyadic_denominators()) {
            std::fprintf(stderr, "poly120: non-dyadic denominator in %s: %s\n", what, c.to_string().c_str());
            throw std::logic_error(std::string("non-dyadic denominator in ") + what);
        }
}

}  // namespace

char to_char(OperatorName name) { return "UVWXY"[static_cast<int>(name)]; }

OperatorName parse_operator_name(std::string_view text) {
    if (text.size() == 1) {
        const auto pos = std::string_view("UVWXY").find(text[0]);
        if (pos != std::string_view::npos) return static_cast<OperatorName>(pos);
    }
    throw std::invalid_argument("unknown operator: " + std::string(text));
}

GoldenMatrix4 transcribed_matrix(OperatorName name) { return matrix_from_codes(matrix_codes(name)); }

RotationOperator make_operator(OperatorName name) {
    RotationOperator op{name, transcribed_matrix(name), name == OperatorName::U ? 3u : 5u, false};
    if (!is_orthogonal(op.matrix))
        throw std::logic_error(std::string("operator ") + to_char(name) + " is not orthogonal");
    const GoldenMatrix4 p = power(op.matrix, op.period);
    if (p != identity4()) {
        // The printed V and Y are fifth roots of -I; their negatives induce
        // the same ray map and have period exactly 5.
        const GoldenMatrix4 minus_identity = {negate(identity4()[0]), negate(identity4()[1]), negate(identity4()[2]),
                                              negate(identity4()[3])};
        if (p != minus_identity || op.period % 2 == 0)
            throw std::logic_error(std::string("operator ") + to_char(name) + " has the wrong period");
        for (auto& row : op.matrix) row = negate(row);
        op.negated = true;
    }
    return op;
}

// ---------------------------------------------------------------------------

std::string Cell600::to_string() const {
    std::string s(1, kLetters.at(static_cast<std::size_t>(letter)));
    if (primed) s += '\'';
    return s;
}

Cell600 Cell600::parse(std::string_view text) {
    if (text.size() == 1) return {letter_index(text[0]), false};
    if (text.size() == 2 && text[1] == '\'') return {letter_index(text[0]), true};
    throw std::invalid_argument("not a 600-cell label: " + std::string(text));
}

std::string Cell24::to_string() const {
    std::string s;
    s += kLetters.at(static_cast<std::size_t>(primed_row));
    s += '\'';
    s += kLetters.at(static_cast<std::size_t>(unprimed_col));
    return s;
}

Cell24 Cell24::parse(std::string_view text) {
    if (text.size() == 3) {
        try {
            if (text[1] == '\'') return {letter_index(text[0]), letter_index(text[2])};
            if (text[2] == '\'') return {letter_index(text[1]), letter_index(text[0])};
        } catch (const std::invalid_argument&) {
        }
    }
    throw std::invalid_argument("not a 24-cell label: " + std::string(text));
}

std::array<int, 12> Cell24::rays() const {
    std::array<int, 12> out{};
    for (int k = 0; k < 12; ++k) out[static_cast<std::size_t>(k)] = 60 * unprimed_col + 12 * primed_row + k + 1;
    return out;
}

CellMembership cell_membership(int index) {
    if (index < 1 || index > kRayCount) throw std::out_of_range("ray index out of range: " + std::to_string(index));
    const int col = (index - 1) / 60;
    const int row = ((index - 1) % 60) / 12;
    return {{col, false}, {row, true}, {row, col}};
}

// ---------------------------------------------------------------------------

GoldenVector4 canonicalize(const GoldenVector4& v) {
    for (const auto& c : v) {
        const int s = c.sign();
        if (s > 0) return v;
        if (s < 0) return negate(v);
    }
    throw std::invalid_argument("cannot canonicalize the zero vector");
}

std::vector<Ray> generate_rays() {
    const auto u = make_operator(OperatorName::U).matrix;
    const auto v = make_operator(OperatorName::V).matrix;
    const auto w = make_operator(OperatorName::W).matrix;

    std::vector<Ray> rays(kRayCount);
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m < 5; ++m)
            for (int l = 0; l < 3; ++l) {
                const GoldenMatrix4 g = power(w, static_cast<unsigned>(n)) * power(v, static_cast<unsigned>(m)) *
                                        power(u, static_cast<unsigned>(l));
                for (int i = 1; i <= 4; ++i) {
                    const int index = 60 * n + 12 * m + 4 * l + i;
                    GoldenVector4 col;
                    for (std::size_t r = 0; r < 4; ++r) col[r] = g[r][static_cast<std::size_t>(i - 1)];
                    check_dyadic(col, "ray vector");
                    const auto cells = cell_membership(index);
                    rays[static_cast<std::size_t>(index - 1)] = {index, canonicalize(col), cells.unprimed, cells.primed};
                }
            }

    std::vector<const GoldenVector4*> sorted;
    sorted.reserve(rays.size());
    for (const auto& r : rays) sorted.push_back(&r.vector);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a < *b; });
    if (std::adjacent_find(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a == *b; }) != sorted.end())
        throw std::logic_error("two generated rays coincide");
    return rays;
}

// ---------------------------------------------------------------------------

std::string BasisTag::to_string() const { return cell24 ? cell24->to_string() : cell600.to_string(); }

std::vector<Cell600> BasisTag::cells() const {
    if (cell24) return {{cell24->unprimed_col, false}, {cell24->primed_row, true}};
    return {cell600};
}

std::vector<Basis> enumerate_bases(std::span<const Ray> rays) {
    if (rays.size() != static_cast<std::size_t>(kRayCount)) throw std::invalid_argument("expected 300 rays");

    std::vector<std::vector<int>> adj(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = i + 1; j < rays.size(); ++j)
            if (inner_product(rays[i].vector, rays[j].vector).is_zero()) {
                adj[i].push_back(rays[j].index);
                adj[j].push_back(rays[i].index);
            }

    auto intersect = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    };
    auto above = [](const std::vector<int>& xs, int floor) {
        return std::vector<int>(std::upper_bound(xs.begin(), xs.end(), floor), xs.end());
    };

    std::vector<Basis> bases;
    for (int a = 1; a <= kRayCount; ++a) {
        const auto& na = adj[static_cast<std::size_t>(a - 1)];
        for (int b : above(na, a)) {
            const auto nab = intersect(na, adj[static_cast<std::size_t>(b - 1)]);
            for (int c : above(nab, b)) {
                const auto nabc = intersect(nab, adj[static_cast<std::size_t>(c - 1)]);
                for (int d : above(nabc, c)) bases.push_back({0, {a, b, c, d}, {}});
            }
        }
    }
    if (bases.size() != static_cast<std::size_t>(kBasisCount))
        throw std::logic_error("expected 675 bases, found " + std::to_string(bases.size()));

    std::vector<int> per_ray(rays.size(), 0);
    for (std::size_t k = 0; k < bases.size(); ++k) {
        auto& basis = bases[k];
        basis.id = static_cast<int>(k) + 1;  // clique order is already lexicographic
        for (int r : basis.rays) ++per_ray[static_cast<std::size_t>(r - 1)];

        const auto first = cell_membership(basis.rays[0]);
        bool same_col = true, same_row = true;
        for (int r : basis.rays) {
            const auto cm = cell_membership(r);
            same_col = same_col && cm.unprimed == first.unprimed;
            same_row = same_row && cm.primed == first.primed;
        }
        if (same_col && same_row)
            basis.tag.cell24 = first.cell24;
        else if (same_col)
            basis.tag.cell600 = first.unprimed;
        else if (same_row)
            basis.tag.cell600 = first.primed;
        else
            throw std::logic_error("basis outside every 600-cell");
    }
    for (int count : per_ray)
        if (count != 9) throw std::logic_error("ray multiplicity differs from 9");
    return bases;
}

std::map<Cell600, std::vector<int>> basis_600cell_tables(std::span<const Basis> bases) {
    std::map<Cell600, std::vector<int>> tables;
    for (const auto& b : bases) {
        const auto first = cell_membership(b.rays[0]);
        bool same_col = true, same_row = true;
        for (int r : b.rays) {
            const auto cm = cell_membership(r);
            same_col = same_col && cm.unprimed == first.unprimed;
            same_row = same_row && cm.primed == first.primed;
        }
        if (same_col) tables[first.unprimed].push_back(b.id);
        if (same_row) tables[first.primed].push_back(b.id);
    }
    return tables;
}

// ---------------------------------------------------------------------------

RayPermutation RayPermutation::after(const RayPermutation& other) const {
    RayPermutation out{operator_name + other.operator_name, std::vector<int>(other.mapping.size())};
    for (std::size_t i = 0; i < other.mapping.size(); ++i) out.mapping[i] = (*this)(other.mapping[i]);
    return out;
}

bool RayPermutation::is_bijection() const {
    std::vector<bool> seen(mapping.size(), false);
    for (int m : mapping) {
        if (m < 1 || m > static_cast<int>(mapping.size()) || seen[static_cast<std::size_t>(m - 1)]) return false;
        seen[static_cast<std::size_t>(m - 1)] = true;
    }
    return true;
}

namespace {

std::map<GoldenVector4, int> ray_index_map(std::span<const Ray> rays) {
    std::map<GoldenVector4, int> index;
    for (const auto& r : rays) index.emplace(r.vector, r.index);
    return index;
}

std::optional<int> lookup_image(const RotationOperator& op, const std::map<GoldenVector4, int>& index,
                                const GoldenVector4& v) {
    const auto it = index.find(canonicalize(op.matrix * v));
    if (it == index.end()) return std::nullopt;
    return it->second;
}

}  // namespace

std::optional<int> ray_image(const RotationOperator& op, std::span<const Ray> rays, int index) {
    if (index < 1 || index > static_cast<int>(rays.size())) throw std::out_of_range("ray index out of range");
    return lookup_image(op, ray_index_map(rays), rays[static_cast<std::size_t>(index - 1)].vector);
}

RayPermutation ray_permutation(const RotationOperator& op, std::span<const Ray> rays) {
    const auto index = ray_index_map(rays);
    RayPermutation perm{std::string(1, to_char(op.name)), std::vector<int>(rays.size())};
    for (std::size_t i = 0; i < rays.size(); ++i) {
        const auto image = lookup_image(op, index, rays[i].vector);
        if (!image)
            throw NotASymmetry(std::string("operator ") + to_char(op.name) + " maps ray " +
                               std::to_string(rays[i].index) + " outside the ray set");
        perm.mapping[i] = *image;
    }
    if (!perm.is_bijection()) throw NotASymmetry("operator image is not a bijection");
    return perm;
}

// ---------------------------------------------------------------------------

Polytope::Polytope() : rays_(generate_rays()), bases_(enumerate_bases(rays_)) {
    orthogonal_.resize(rays_.size());
    bases_of_ray_.resize(rays_.size());
    for (const auto& b : bases_) {
        basis_lookup_.emplace(b.rays, b.id);
        for (int r : b.rays) {
            bases_of_ray_[static_cast<std::size_t>(r - 1)].push_back(b.id);
            for (int s : b.rays)
                if (s != r) orthogonal_[static_cast<std::size_t>(r - 1)].push_back(s);
        }
    }
    for (auto& o : orthogonal_) {
        std::sort(o.begin(), o.end());
        o.erase(std::unique(o.begin(), o.end()), o.end());
    }
    cell_tables_ = basis_600cell_tables(bases_);
    for (auto name : {OperatorName::U, OperatorName::V, OperatorName::W})
        permutations_.emplace(name, ray_permutation(make_operator(name), rays_));
}

const Polytope& Polytope::shared() {
    static const Polytope instance;
    return instance;
}

std::optional<int> Polytope::find_basis(std::array<int, 4> rays) const {
    std::sort(rays.begin(), rays.end());
    const auto it = basis_lookup_.find(rays);
    if (it == basis_lookup_.end()) return std::nullopt;
    return it->second;
}

const RayPermutation& Polytope::permutation(OperatorName name) const {
    const auto it = permutations_.find(name);
    if (it == permutations_.end())
        throw NotASymmetry(std::string("operator ") + to_char(name) + " is not a symmetry of the full ray set");
    return it->second;
}

}  // namespace poly120
