#pragma once

// Fixture loading and independent oracles shared by the unit and acceptance tests.
// The oracles deliberately avoid the library's GF(2) machinery.

#include "poly120/io.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#ifndef POLY120_FIXTURES_DIR
#error "POLY120_FIXTURES_DIR must be defined"
#endif

namespace poly120::testing {

inline const char* const kDrop96 =
    "A'A,A'B,A'C,A'D,A'E,B'B,B'C,B'D,B'E,C'B,C'C,C'D,C'E,D'B,D'C,D'D,D'E";

inline std::string fixture_path(const std::string& name) {
    return std::string(POLY120_FIXTURES_DIR) + "/" + name;
}

inline Certificate load_fixture(const std::string& name) {
    return certificate_from_json(read_json_file(fixture_path(name)));
}

/// a + b(1 + sqrt 5)/2 in long double.
inline long double golden_value(const GoldenNumber& x) {
    const long double tau = (1.0L + std::sqrt(5.0L)) / 2.0L;
    const auto q = [](const mpq_class& r) {
        return static_cast<long double>(r.get_num().get_si()) / static_cast<long double>(r.get_den().get_si());
    };
    return q(x.rational_part()) + q(x.tau_part()) * tau;
}

/// Ray occurrence counts by direct tally.
inline std::map<int, int> tally_rays(const Polytope& p, const std::vector<int>& basis_ids) {
    std::map<int, int> counts;
    for (int id : basis_ids)
        for (int r : p.basis(id).rays) ++counts[r];
    return counts;
}

inline bool parity_oracle(const Polytope& p, const std::vector<int>& basis_ids) {
    if (basis_ids.size() % 2 == 0) return false;
    if (std::set<int>(basis_ids.begin(), basis_ids.end()).size() != basis_ids.size()) return false;
    for (const auto& [ray, n] : tally_rays(p, basis_ids))
        if (n % 2 != 0) return false;
    return true;
}

/// Walks every subset of the proof's bases in Gray-code order and reports
/// whether some proper nonempty odd-size subset has every ray covered an
/// even number of times. Feasible up to roughly 30 bases.
inline bool has_proper_subproof(const Polytope& p, const std::vector<int>& basis_ids) {
    const std::size_t n = basis_ids.size();
    std::map<int, int> local;
    for (int id : basis_ids)
        for (int r : p.basis(id).rays) local.emplace(r, static_cast<int>(local.size()));
    const std::size_t words = (local.size() + 63) / 64;
    std::vector<std::array<std::uint64_t, 4>> masks(n);
    for (std::size_t i = 0; i < n; ++i) {
        masks[i].fill(0);
        for (int r : p.basis(basis_ids[i]).rays) {
            const int k = local.at(r);
            masks[i][k / 64] |= std::uint64_t{1} << (k % 64);
        }
    }
    std::array<std::uint64_t, 4> acc{};
    std::size_t size = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t g = 1; g < total; ++g) {
        const int bit = __builtin_ctzll(g);
        for (std::size_t w = 0; w < words; ++w) acc[w] ^= masks[bit][w];
        const std::uint64_t gray = g ^ (g >> 1);
        size += ((gray >> bit) & 1u) ? 1 : std::size_t(-1);
        if (size % 2 == 1 && size < n) {
            bool zero = true;
            for (std::size_t w = 0; w < words && zero; ++w) zero = acc[w] == 0;
            if (zero) return true;
        }
    }
    return false;
}

/// The 75 bases of the block table: rays 60n+12m+4l+1 .. +4.
inline std::set<std::array<int, 4>> block_table_bases() {
    std::set<std::array<int, 4>> out;
    for (int n = 0; n < 5; ++n)
        for (int m = 0; m < 5; ++m)
            for (int l = 0; l < 3; ++l) {
                const int s = 60 * n + 12 * m + 4 * l;
                out.insert({s + 1, s + 2, s + 3, s + 4});
            }
    return out;
}

}  // namespace poly120::testing
