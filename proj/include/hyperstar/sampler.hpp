#ifndef HYPERSTAR_SAMPLER_HPP
#define HYPERSTAR_SAMPLER_HPP

// Exact sampling of the independent-edge model H(n, k, p): draw the edge count
// M ~ Binomial(C(n,k), p), then a uniform M-subset of colex ranks, then unrank.

#include <hyperstar/combinatorics.hpp>
#include <hyperstar/hypergraph.hpp>
#include <hyperstar/random.hpp>
#include <hyperstar/regime.hpp>

#include <algorithm>
#include <cstdint>
#include <type_traits>
#include <vector>

namespace hyperstar {

struct SampleConfig {
    std::uint64_t n{};
    std::uint64_t k{};
    std::uint64_t seed{};
};

/// Largest edge count a single sample may hold.
inline constexpr std::uint64_t max_sampled_edges = std::uint64_t{1} << 28;

namespace detail {

inline void radix_sort(std::vector<std::uint64_t>& values, std::uint64_t bound) {
    int bits = 0;
    while (bits < 64 && (bound >> bits) != 0) ++bits;
    std::vector<std::uint64_t> scratch(values.size());
    for (int shift = 0; shift < bits; shift += 16) {
        std::vector<std::size_t> count(65537, 0);
        for (auto v : values) ++count[((v >> shift) & 0xffff) + 1];
        for (std::size_t i = 1; i < count.size(); ++i) count[i] += count[i - 1];
        for (auto v : values) scratch[count[(v >> shift) & 0xffff]++] = v;
        values.swap(scratch);
    }
}

template <class Index>
void sort_indices(std::vector<Index>& values, Index bound) {
    if constexpr (std::is_same_v<Index, std::uint64_t>) radix_sort(values, bound);
    else std::sort(values.begin(), values.end());
}

// Uniform `count`-subset of [0, total), ascending. Equivalent to drawing uniform
// indices one at a time and discarding repeats, processed in batches.
template <class Index>
std::vector<Index> select_distinct(Engine& rng, Index total, Index count) {
    if (count > total) throw capacity_error("requested more distinct indices than exist");
    if (count > total / 2) {
        if (total > (Index{1} << 30)) throw capacity_error("edge set too dense to materialise");
        auto excluded = select_distinct<Index>(rng, total, total - count);
        std::vector<Index> kept;
        kept.reserve(static_cast<std::size_t>(count));
        std::size_t j = 0;
        for (Index i = 0; i < total; ++i) {
            if (j < excluded.size() && excluded[j] == i) ++j;
            else kept.push_back(i);
        }
        return kept;
    }
    std::vector<Index> chosen;
    chosen.reserve(static_cast<std::size_t>(count));
    while (chosen.size() < static_cast<std::size_t>(count)) {
        const auto deficit = static_cast<std::size_t>(count) - chosen.size();
        for (std::size_t i = 0; i < deficit; ++i) chosen.push_back(static_cast<Index>(uniform_below(rng, total)));
        sort_indices(chosen, total);
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    }
    return chosen;
}

} // namespace detail

/// Reusable sampler for a fixed (n, k); caches the colex binomial table.
class Sampler {
public:
    Sampler(std::uint64_t n, std::uint64_t k) : codec_(check(n, k), k) {}

    std::uint64_t n() const { return codec_.n(); }
    std::uint64_t k() const { return codec_.k(); }

    /// Sample with explicit edge probability. The edge count and the subset use
    /// the independent streams "edge-count" and "edge-subset" of `seed`.
    Hypergraph draw(std::uint64_t seed, double p) const {
        const std::uint64_t n = codec_.n(), k = codec_.k();
        const u128 total = (k > n) ? u128{0} : codec_.size();
        Engine count_rng(derive_seed(seed, "edge-count"));
        const u128 m = sample_binomial(count_rng, total, p);
        if (m > max_sampled_edges)
            throw capacity_error("sampled edge count " + to_string(m) + " exceeds the cap of " +
                                 std::to_string(max_sampled_edges));
        Engine subset_rng(derive_seed(seed, "edge-subset"));
        std::vector<vertex_t> flat(static_cast<std::size_t>(m) * k);
        auto unrank_all = [&](const auto& indices) {
            codec_.unrank_ascending(std::span(indices), std::span<vertex_t>(flat));
        };
        if ((total >> 64) == 0)
            unrank_all(detail::select_distinct<std::uint64_t>(subset_rng, static_cast<std::uint64_t>(total),
                                                              static_cast<std::uint64_t>(m)));
        else
            unrank_all(detail::select_distinct<u128>(subset_rng, total, m));
        return Hypergraph::from_canonical(n, k, std::move(flat));
    }

    Hypergraph draw(std::uint64_t seed, const RegimeSpec& regime) const {
        return draw(seed, edge_probability(regime, codec_.n(), codec_.k()));
    }

private:
    static std::uint64_t check(std::uint64_t n, std::uint64_t k) {
        if (n < 1) throw invalid_input("sampler needs n >= 1");
        if (k < 2) throw invalid_input("sampler needs k >= 2");
        return n;
    }

    ColexCodec codec_;
};

inline Hypergraph sample(const SampleConfig& config, const RegimeSpec& regime) {
    const double p = edge_probability(regime, config.n, config.k);
    return Sampler(config.n, config.k).draw(config.seed, p);
}

} // namespace hyperstar

#endif // HYPERSTAR_SAMPLER_HPP
