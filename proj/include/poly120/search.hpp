#pragma once

#include "poly120/parity.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace poly120 {

enum class SearchMode { incremental, kernel_enumerate, hybrid };

std::string to_string(SearchMode mode);
SearchMode parse_search_mode(std::string_view text);

struct SearchConfig {
    int target_bases = 19;  // largest proof size reported; odd
    int min_bases = 1;      // smallest proof size reported
    SearchMode mode = SearchMode::hybrid;
    std::optional<int> seed_basis;  // every reported proof contains it
    std::uint64_t rng_seed = 0;
    std::size_t max_solutions = 0;   // 0 = unlimited
    std::size_t kernel_dim_limit = 26;
    unsigned workers = 1;
    std::uint64_t node_limit = 0;    // per seed task, incremental mode; 0 = unlimited
    /// Skip proofs whose bases all lie in one common 600-cell.
    bool new_proofs_only = true;

    /// Throws std::invalid_argument on an even or non-positive target.
    void validate() const;
};

struct SearchResult {
    std::vector<ParityProof> proofs;  // canonical order
    bool exhaustive = false;          // every proof in range was enumerated
    SearchMode mode_used = SearchMode::incremental;
    std::size_t kernel_dimension = 0;
    std::uint64_t nodes = 0;          // incremental search nodes visited
};

class DimensionTooLarge : public std::runtime_error {
public:
    DimensionTooLarge(std::size_t dimension, std::size_t limit);
    std::size_t dimension() const { return dimension_; }
    std::size_t limit() const { return limit_; }

private:
    std::size_t dimension_;
    std::size_t limit_;
};

/// Number of free columns of the system's incidence matrix.
std::size_t kernel_dimension(const RayBasisSystem& system);

/// True when some 600-cell contains every basis of the proof.
bool within_one_600cell(const ParityProof& proof, const Polytope& polytope = Polytope::shared());

/// Walks every kernel vector of the incidence matrix in Gray-code order and
/// keeps the odd-weight ones in [min_bases, target_bases]. Throws
/// DimensionTooLarge when the kernel exceeds config.kernel_dim_limit.
SearchResult search_kernel(const RayBasisSystem& system, const SearchConfig& config);

/// Depth-first growth from a seed basis, branching on the bases that can
/// repair an odd ray. With no seed basis every basis is tried as the
/// smallest member of the proof, which makes the search exhaustive when no
/// solution cap or node limit cuts it short.
SearchResult search_incremental(const RayBasisSystem& system, const SearchConfig& config);

/// Kernel enumeration when the kernel is small enough, incremental otherwise;
/// kernel_enumerate and incremental modes force one route.
SearchResult search(const RayBasisSystem& system, const SearchConfig& config);

/// Worker count from POLY120_THREADS (default 1), never above `requested` if
/// that is nonzero.
unsigned worker_count(unsigned requested = 0);

struct CatalogRow {
    std::set<ProofSymbol> critical;
    std::set<ProofSymbol> non_critical;
    std::size_t proof_count = 0;
    std::size_t critical_count = 0;
    std::size_t single_600cell_count = 0;  // proofs inside one 600-cell, counted only
};

struct Catalog {
    std::map<int, CatalogRow> rows;  // keyed by basis count, every odd count in range
    bool exhaustive = false;
    SearchMode mode_used = SearchMode::incremental;
    std::size_t kernel_dimension = 0;
};

/// Distinct proof symbols by basis count. Proofs inside a single 600-cell are
/// only counted unless config.new_proofs_only is false. Throws
/// std::invalid_argument unless min_bases and max_bases are odd.
Catalog catalog(const RayBasisSystem& system, int min_bases, int max_bases, SearchConfig config);

}  // namespace poly120
