#include "poly120/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdlib>
#include <thread>

namespace poly120 {

std::string to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::incremental: return "incremental";
        case SearchMode::kernel_enumerate: return "kernel_enumerate";
        case SearchMode::hybrid: return "hybrid";
    }
    return "?";
}

SearchMode parse_search_mode(std::string_view text) {
    if (text == "incremental") return SearchMode::incremental;
    if (text == "kernel_enumerate" || text == "kernel") return SearchMode::kernel_enumerate;
    if (text == "hybrid") return SearchMode::hybrid;
    throw std::invalid_argument("unknown search mode: " + std::string(text));
}

void SearchConfig::validate() const {
    if (target_bases < 1 || target_bases % 2 == 0)
        throw std::invalid_argument("target_bases must be odd and >= 1, got " + std::to_string(target_bases));
    if (min_bases < 1) throw std::invalid_argument("min_bases must be >= 1");
}

DimensionTooLarge::DimensionTooLarge(std::size_t dimension, std::size_t limit)
    : std::runtime_error("kernel dimension " + std::to_string(dimension) + " exceeds limit " + std::to_string(limit)),
      dimension_(dimension),
      limit_(limit) {}

std::size_t kernel_dimension(const RayBasisSystem& system) {
    return system.basis_count() - incidence_matrix(system).rank();
}

namespace {

// Bits 0-4: A..E, bits 5-9: A'..E'.
unsigned cell_mask(const Basis& basis) {
    unsigned mask = 0;
    for (const auto& c : basis.tag.cells()) mask |= 1u << (c.letter + (c.primed ? 5 : 0));
    return mask;
}

}  // namespace

bool within_one_600cell(const ParityProof& proof, const Polytope& polytope) {
    unsigned common = 0x3ff;
    for (int id : proof.basis_ids) common &= cell_mask(polytope.basis(id));
    return common != 0;
}

unsigned worker_count(unsigned requested) {
    unsigned n = 1;
    if (const char* env = std::getenv("POLY120_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) n = static_cast<unsigned>(v);
    }
    if (requested > 0) n = std::min(n, requested);
    return n;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t operator()() { return splitmix64(state_++ * 0x9E3779B97F4A7C15ULL); }

private:
    std::uint64_t state_;
};

// Runs fn(task) for task in [0, count) on up to `workers` threads.
template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (workers == 1) {
        for (std::size_t t = 0; t < count; ++t) fn(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t t = next++; t < count; t = next++) fn(t);
        });
    for (auto& th : pool) th.join();
}

std::optional<int> local_seed(const RayBasisSystem& system, const SearchConfig& config) {
    if (!config.seed_basis) return std::nullopt;
    const auto pos = system.basis_position(*config.seed_basis);
    if (!pos) throw std::invalid_argument("seed basis " + std::to_string(*config.seed_basis) + " is not in the system");
    return static_cast<int>(*pos);
}

constexpr std::size_t kMaxRayWords = 5;  // 300 rays

// Local (position-based) view of a system for the search kernels.
struct Layout {
    const RayBasisSystem* system;
    std::vector<std::array<int, 4>> basis_rays;  // local ray positions
    std::vector<std::vector<int>> ray_bases;     // local basis positions, ascending
    std::vector<unsigned> masks;                 // 600-cell membership per basis

    explicit Layout(const RayBasisSystem& sys)
        : system(&sys), basis_rays(sys.basis_count()), ray_bases(sys.ray_count()), masks(sys.basis_count()) {
        if (sys.ray_count() > kMaxRayWords * 64) throw std::length_error("too many rays");
        for (std::size_t b = 0; b < sys.basis_count(); ++b) {
            const auto& basis = sys.polytope().basis(sys.basis_ids()[b]);
            masks[b] = cell_mask(basis);
            for (std::size_t k = 0; k < 4; ++k) {
                const int r = static_cast<int>(*sys.ray_position(basis.rays[k]));
                basis_rays[b][k] = r;
                ray_bases[static_cast<std::size_t>(r)].push_back(static_cast<int>(b));
            }
        }
    }

    bool single_cell(std::span<const int> support) const {
        unsigned common = 0x3ff;
        for (int b : support) common &= masks[static_cast<std::size_t>(b)];
        return common != 0;
    }

    std::vector<int> global_ids(std::span<const int> support) const {
        std::vector<int> ids;
        ids.reserve(support.size());
        for (int b : support) ids.push_back(system->basis_ids()[static_cast<std::size_t>(b)]);
        return ids;
    }
};

// Collects supports as sorted local basis positions.
struct CollectSink {
    const Layout* layout;
    bool new_only;
    std::vector<std::vector<int>> found;

    bool accept(std::span<const int> support) {
        if (new_only && layout->single_cell(support)) return false;
        found.emplace_back(support.begin(), support.end());
        return true;
    }
};

// Aggregates symbol/criticality statistics without storing proofs.
struct CatalogSink {
    const Layout* layout;
    bool new_only;
    std::map<int, CatalogRow> rows;

    bool accept(std::span<const int> support) {
        auto& row = rows[static_cast<int>(support.size())];
        if (layout->single_cell(support)) {
            ++row.single_600cell_count;
            if (new_only) return false;
        }
        ++row.proof_count;
        const auto& polytope = layout->system->polytope();
        const auto proof = ParityProof::from_bases(polytope, layout->system->ref(), layout->global_ids(support));
        const auto sym = classify(proof, polytope);
        if (proof_matrix(proof, polytope).rank() + 1 == proof.size()) {
            ++row.critical_count;
            row.critical.insert(sym);
        } else {
            row.non_critical.insert(sym);
        }
        return true;
    }
};

// ---------------------------------------------------------------------------
// Incremental search

template <typename Sink>
class DfsTask {
public:
    DfsTask(const Layout& layout, const SearchConfig& config, std::uint64_t rng_seed, Sink& sink)
        : layout_(layout),
          config_(config),
          sink_(sink),
          status_(layout.basis_rays.size(), kUndecided),
          undecided_(layout.ray_bases.size()),
          rng_(rng_seed) {
        for (std::size_t r = 0; r < undecided_.size(); ++r) undecided_[r] = static_cast<int>(layout.ray_bases[r].size());
        chosen_.reserve(static_cast<std::size_t>(config.target_bases) + 1);
    }

    // Proofs containing `seed` whose other bases avoid positions below `first_allowed`.
    void run(int seed, int first_allowed) {
        for (int b = 0; b < first_allowed; ++b)
            if (b != seed) exclude(b);
        include(seed);
        open();
    }

    bool truncated() const { return truncated_; }
    std::uint64_t nodes() const { return nodes_; }
    std::size_t accepted() const { return accepted_; }

private:
    static constexpr std::uint8_t kUndecided = 0, kIn = 1, kOut = 2;

    bool is_odd(int r) const { return (odd_[static_cast<std::size_t>(r) / 64] >> (r % 64)) & 1u; }

    void toggle(const std::array<int, 4>& rays, int undecided_delta) {
        for (int r : rays) {
            auto& w = odd_[static_cast<std::size_t>(r) / 64];
            const std::uint64_t bit = std::uint64_t{1} << (r % 64);
            w ^= bit;
            odd_count_ += (w & bit) ? 1 : -1;
            undecided_[static_cast<std::size_t>(r)] += undecided_delta;
        }
    }
    void include(int b) {
        status_[static_cast<std::size_t>(b)] = kIn;
        chosen_.push_back(b);
        toggle(layout_.basis_rays[static_cast<std::size_t>(b)], -1);
    }
    void uninclude(int b) {
        status_[static_cast<std::size_t>(b)] = kUndecided;
        chosen_.pop_back();
        toggle(layout_.basis_rays[static_cast<std::size_t>(b)], +1);
    }
    void exclude(int b) {
        status_[static_cast<std::size_t>(b)] = kOut;
        for (int r : layout_.basis_rays[static_cast<std::size_t>(b)]) --undecided_[static_cast<std::size_t>(r)];
    }
    void unexclude(int b) {
        status_[static_cast<std::size_t>(b)] = kUndecided;
        for (int r : layout_.basis_rays[static_cast<std::size_t>(b)]) ++undecided_[static_cast<std::size_t>(r)];
    }

    void open() {
        if (odd_count_ == 0) {
            closed();
            return;
        }
        ++nodes_;
        if (config_.node_limit && nodes_ > config_.node_limit) {
            truncated_ = true;
            return;
        }
        const int remaining = config_.target_bases - static_cast<int>(chosen_.size());
        // Each further basis repairs at most four odd rays.
        if (odd_count_ > 4 * remaining) return;

        // Branch on the odd ray with the fewest undecided bases.
        int pick = -1;
        int fewest = 1 << 30;
        for (std::size_t w = 0; w < kMaxRayWords; ++w)
            for (auto bits = odd_[w]; bits; bits &= bits - 1) {
                const int r = static_cast<int>(w * 64) + std::countr_zero(bits);
                const int u = undecided_[static_cast<std::size_t>(r)];
                if (u < fewest) {
                    if (u == 0) return;
                    fewest = u;
                    pick = r;
                }
            }

        struct Candidate {
            int basis;
            int gain;  // drop in the odd-ray count if included
            std::uint64_t tie;
        };
        std::array<Candidate, 32> candidates;
        std::size_t n = 0;
        for (int b : layout_.ray_bases[static_cast<std::size_t>(pick)]) {
            if (status_[static_cast<std::size_t>(b)] != kUndecided) continue;
            int gain = 0;
            for (int r : layout_.basis_rays[static_cast<std::size_t>(b)]) gain += is_odd(r) ? 1 : -1;
            candidates[n++] = {b, gain, rng_()};
        }
        std::sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n),
                  [](const Candidate& x, const Candidate& y) { return x.gain != y.gain ? x.gain > y.gain : x.tie < y.tie; });

        std::size_t excluded = 0;
        for (std::size_t k = 0; k < n; ++k) {
            include(candidates[k].basis);
            open();
            uninclude(candidates[k].basis);
            if (truncated_) break;
            exclude(candidates[k].basis);
            ++excluded;
        }
        for (std::size_t k = 0; k < excluded; ++k) unexclude(candidates[k].basis);
    }

    void closed() {
        const int size = static_cast<int>(chosen_.size());
        if (size % 2 == 1 && size >= config_.min_bases) {
            support_.assign(chosen_.begin(), chosen_.end());
            std::sort(support_.begin(), support_.end());
            if (sink_.accept(support_)) {
                ++accepted_;
                if (config_.max_solutions && accepted_ >= config_.max_solutions) {
                    truncated_ = true;
                    return;
                }
            }
        }
        // Grow by a further closed set whose smallest basis is b; a closed set
        // has at least two bases.
        if (config_.target_bases - size < 2) return;
        std::vector<int> excluded;
        for (std::size_t b = 0; b < status_.size(); ++b) {
            if (status_[b] != kUndecided) continue;
            include(static_cast<int>(b));
            open();
            uninclude(static_cast<int>(b));
            if (truncated_) break;
            exclude(static_cast<int>(b));
            excluded.push_back(static_cast<int>(b));
        }
        for (int b : excluded) unexclude(b);
    }

    const Layout& layout_;
    const SearchConfig& config_;
    Sink& sink_;
    std::vector<std::uint8_t> status_;
    std::array<std::uint64_t, kMaxRayWords> odd_{};
    std::vector<int> undecided_;
    int odd_count_ = 0;
    std::vector<int> chosen_;
    std::vector<int> support_;
    SplitMix64 rng_;
    std::uint64_t nodes_ = 0;
    std::size_t accepted_ = 0;
    bool truncated_ = false;
};

struct RunSummary {
    bool exhaustive = true;
    std::uint64_t nodes = 0;
};

// Runs one DFS task per seed position and hands each task's sink to `merge`
// in seed order.
template <typename MakeSink, typename Merge>
RunSummary run_incremental(const Layout& layout, const SearchConfig& config, MakeSink make_sink, Merge merge) {
    const auto& system = *layout.system;
    const auto seed = local_seed(system, config);
    std::vector<int> seeds;
    if (seed)
        seeds.push_back(*seed);
    else
        for (int b = 0; b < static_cast<int>(system.basis_count()); ++b) seeds.push_back(b);

    using SinkT = decltype(make_sink());
    struct Slot {
        std::optional<SinkT> sink;
        std::size_t accepted = 0;
        bool truncated = false;
        std::uint64_t nodes = 0;
    };
    std::vector<Slot> slots(seeds.size());
    const unsigned workers = std::max(1u, config.workers);

    // Fixed-size batches make a solution cap stop at the same seed whatever
    // the worker count.
    constexpr std::size_t kBatch = 32;
    std::size_t done = 0;
    std::size_t total = 0;
    RunSummary summary;
    while (done < seeds.size()) {
        const std::size_t end = std::min(seeds.size(), done + kBatch);
        parallel_for(end - done, workers, [&](std::size_t t) {
            const std::size_t k = done + t;
            const int s = seeds[k];
            auto& slot = slots[k];
            slot.sink.emplace(make_sink());
            const auto id = static_cast<std::uint64_t>(system.basis_ids()[static_cast<std::size_t>(s)]);
            DfsTask<SinkT> task(layout, config, splitmix64(config.rng_seed ^ splitmix64(id)), *slot.sink);
            task.run(s, seed ? 0 : s);
            slot.accepted = task.accepted();
            slot.truncated = task.truncated();
            slot.nodes = task.nodes();
        });
        for (std::size_t k = done; k < end; ++k) {
            total += slots[k].accepted;
            summary.exhaustive = summary.exhaustive && !slots[k].truncated;
            summary.nodes += slots[k].nodes;
            merge(std::move(*slots[k].sink));
            slots[k].sink.reset();
        }
        done = end;
        if (config.max_solutions && total >= config.max_solutions) break;
    }
    summary.exhaustive = summary.exhaustive && done == seeds.size();
    return summary;
}

std::vector<ParityProof> to_proofs(const Layout& layout, std::vector<std::vector<int>>& supports) {
    const auto& system = *layout.system;
    std::vector<ParityProof> out;
    out.reserve(supports.size());
    for (const auto& s : supports) out.push_back(ParityProof::from_bases(system.polytope(), system.ref(), layout.global_ids(s)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void cap(SearchResult& result, std::size_t max_solutions) {
    if (max_solutions && result.proofs.size() > max_solutions) {
        result.proofs.resize(max_solutions);
        result.exhaustive = false;
    }
}

// ---------------------------------------------------------------------------
// Kernel enumeration

template <typename MakeSink, typename Merge>
std::size_t run_kernel(const Layout& layout, const SearchConfig& config, MakeSink make_sink, Merge merge) {
    const auto& system = *layout.system;
    const auto basis = kernel_basis(incidence_matrix(system));
    const std::size_t dim = basis.size();
    if (dim > config.kernel_dim_limit || dim >= 63) throw DimensionTooLarge(dim, config.kernel_dim_limit);
    const auto seed = local_seed(system, config);

    const std::size_t words = (system.basis_count() + 63) / 64;
    std::vector<std::uint64_t> flat(dim * words);
    for (std::size_t j = 0; j < dim; ++j)
        std::copy(basis[j].words().begin(), basis[j].words().end(), flat.begin() + static_cast<std::ptrdiff_t>(j * words));

    const std::uint64_t steps = std::uint64_t{1} << dim;
    const std::size_t chunks = static_cast<std::size_t>(std::min<std::uint64_t>(steps, 256));
    const auto lo_bound = static_cast<std::size_t>(config.min_bases);
    const auto hi_bound = static_cast<std::size_t>(config.target_bases);

    using SinkT = decltype(make_sink());
    std::vector<std::optional<SinkT>> sinks(chunks);
    parallel_for(chunks, std::max(1u, config.workers), [&](std::size_t c) {
        auto& sink = sinks[c].emplace(make_sink());
        const std::uint64_t lo = steps * c / chunks;
        const std::uint64_t hi = steps * (c + 1) / chunks;
        std::vector<std::uint64_t> v(words, 0);
        const std::uint64_t gray = lo ^ (lo >> 1);
        for (std::size_t j = 0; j < dim; ++j)
            if ((gray >> j) & 1u)
                for (std::size_t w = 0; w < words; ++w) v[w] ^= flat[j * words + w];
        std::vector<int> support;
        auto consider = [&] {
            std::size_t weight = 0;
            for (auto x : v) weight += static_cast<std::size_t>(std::popcount(x));
            if (weight % 2 == 0 || weight < lo_bound || weight > hi_bound) return;
            if (seed && !((v[static_cast<std::size_t>(*seed) / 64] >> (*seed % 64)) & 1u)) return;
            support.clear();
            for (std::size_t w = 0; w < words; ++w)
                for (auto x = v[w]; x; x &= x - 1) support.push_back(static_cast<int>(w * 64) + std::countr_zero(x));
            sink.accept(support);
        };
        if (lo > 0) consider();
        for (std::uint64_t i = lo + 1; i < hi; ++i) {
            const auto* row = &flat[static_cast<std::size_t>(std::countr_zero(i)) * words];
            for (std::size_t w = 0; w < words; ++w) v[w] ^= row[w];
            consider();
        }
    });
    for (auto& s : sinks) merge(std::move(*s));
    return dim;
}

void merge_rows(std::map<int, CatalogRow>& into, std::map<int, CatalogRow>&& from) {
    for (auto& [n, row] : from) {
        auto& dst = into[n];
        dst.critical.merge(row.critical);
        dst.non_critical.merge(row.non_critical);
        dst.proof_count += row.proof_count;
        dst.critical_count += row.critical_count;
        dst.single_600cell_count += row.single_600cell_count;
    }
}

}  // namespace

SearchResult search_incremental(const RayBasisSystem& system, const SearchConfig& config) {
    config.validate();
    const Layout layout(system);
    std::vector<std::vector<int>> supports;
    const auto summary = run_incremental(
        layout, config, [&] { return CollectSink{&layout, config.new_proofs_only, {}}; },
        [&](CollectSink&& sink) {
            for (auto& s : sink.found) supports.push_back(std::move(s));
        });
    SearchResult result;
    result.mode_used = SearchMode::incremental;
    result.kernel_dimension = kernel_dimension(system);
    result.exhaustive = summary.exhaustive;
    result.nodes = summary.nodes;
    result.proofs = to_proofs(layout, supports);
    cap(result, config.max_solutions);
    return result;
}

SearchResult search_kernel(const RayBasisSystem& system, const SearchConfig& config) {
    config.validate();
    const Layout layout(system);
    std::vector<std::vector<int>> supports;
    SearchResult result;
    result.kernel_dimension = run_kernel(
        layout, config, [&] { return CollectSink{&layout, config.new_proofs_only, {}}; },
        [&](CollectSink&& sink) {
            for (auto& s : sink.found) supports.push_back(std::move(s));
        });
    result.mode_used = SearchMode::kernel_enumerate;
    result.exhaustive = true;
    result.proofs = to_proofs(layout, supports);
    cap(result, config.max_solutions);
    return result;
}

SearchResult search(const RayBasisSystem& system, const SearchConfig& config) {
    switch (config.mode) {
        case SearchMode::incremental: return search_incremental(system, config);
        case SearchMode::kernel_enumerate: return search_kernel(system, config);
        case SearchMode::hybrid: break;
    }
    if (kernel_dimension(system) <= config.kernel_dim_limit) return search_kernel(system, config);
    return search_incremental(system, config);
}

// ---------------------------------------------------------------------------

Catalog catalog(const RayBasisSystem& system, int min_bases, int max_bases, SearchConfig config) {
    if (min_bases < 1 || min_bases % 2 == 0 || max_bases % 2 == 0 || max_bases < min_bases)
        throw std::invalid_argument("catalog range must be odd and ordered");
    config.min_bases = min_bases;
    config.target_bases = max_bases;
    config.max_solutions = 0;
    config.validate();

    const Layout layout(system);
    Catalog cat;
    cat.kernel_dimension = kernel_dimension(system);
    for (int n = min_bases; n <= max_bases; n += 2) cat.rows[n];
    auto make_sink = [&] { return CatalogSink{&layout, config.new_proofs_only, {}}; };
    auto merge = [&](CatalogSink&& sink) { merge_rows(cat.rows, std::move(sink.rows)); };

    const bool use_kernel = config.mode == SearchMode::kernel_enumerate ||
                            (config.mode == SearchMode::hybrid && cat.kernel_dimension <= config.kernel_dim_limit);
    if (use_kernel) {
        run_kernel(layout, config, make_sink, merge);
        cat.mode_used = SearchMode::kernel_enumerate;
        cat.exhaustive = true;
    } else {
        const auto summary = run_incremental(layout, config, make_sink, merge);
        cat.mode_used = SearchMode::incremental;
        cat.exhaustive = summary.exhaustive;
    }
    return cat;
}

}  // namespace poly120
