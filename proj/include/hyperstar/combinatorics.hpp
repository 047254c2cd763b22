#ifndef HYPERSTAR_COMBINATORICS_HPP
#define HYPERSTAR_COMBINATORICS_HPP

#include <hyperstar/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hyperstar {

using u128 = unsigned __int128;
using vertex_t = std::uint32_t;

inline std::string to_string(u128 value) {
    if (value == 0) return "0";
    std::string digits;
    while (value > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

inline long double to_long_double(u128 value) {
    auto hi = static_cast<std::uint64_t>(value >> 64);
    auto lo = static_cast<std::uint64_t>(value);
    return static_cast<long double>(hi) * 18446744073709551616.0L + static_cast<long double>(lo);
}

/// Exact binomial coefficient C(n, r); std::nullopt when the value does not fit
/// in 128 bits. C(n, r) = 0 for r > n.
inline std::optional<u128> binom(std::uint64_t n, std::uint64_t r) {
    if (r > n) return u128{0};
    r = std::min(r, n - r);
    u128 acc = 1;
    // acc holds C(n - r + i, i) after step i; i divides acc * (n - r + i).
    for (std::uint64_t i = 1; i <= r; ++i) {
        u128 divisor = i;
        u128 factor = static_cast<u128>(n - r + i);
        u128 a = acc, b = divisor;
        while (b != 0) {
            u128 t = a % b;
            a = b;
            b = t;
        }
        acc /= a;
        divisor /= a;
        factor /= divisor;
        u128 next;
        if (__builtin_mul_overflow(acc, factor, &next)) return std::nullopt;
        acc = next;
    }
    return acc;
}

/// log C(n, r) for a real-valued top argument (n may itself be a huge count).
/// Returns -infinity when r > n.
inline double log_binom_real(long double n, std::uint64_t r) {
    auto rr = static_cast<long double>(r);
    if (rr > n) return -std::numeric_limits<double>::infinity();
    if (r == 0 || rr == n) return 0.0;
    if (r <= 64) {
        long double acc = 0.0L;
        for (std::uint64_t i = 0; i < r; ++i) acc += std::log(n - static_cast<long double>(i));
        return static_cast<double>(acc - std::lgamma(rr + 1.0L));
    }
    return static_cast<double>(std::lgamma(n + 1.0L) - std::lgamma(rr + 1.0L) -
                               std::lgamma(n - rr + 1.0L));
}

/// log C(n, r); exact when the integer fits in 128 bits.
inline double log_binom(std::uint64_t n, std::uint64_t r) {
    if (r > n) return -std::numeric_limits<double>::infinity();
    if (auto exact = binom(n, r)) return static_cast<double>(std::log(to_long_double(*exact)));
    return log_binom_real(static_cast<long double>(n), std::min(r, n - r));
}

/// C(n, r) as a floating-point count, valid whether or not it fits in 128 bits.
inline long double binom_real(std::uint64_t n, std::uint64_t r) {
    if (auto exact = binom(n, r)) return to_long_double(*exact);
    return std::exp(static_cast<long double>(log_binom(n, r)));
}

/// Colexicographic ranking of k-subsets of {0..n-1} (combinatorial number system):
/// rank({c_1 < ... < c_k}) = sum_j C(c_j, j).
class ColexCodec {
public:
    ColexCodec(std::uint64_t n, std::uint64_t k) : n_(n), k_(k) {
        if (k == 0) throw invalid_input("colex codec requires k >= 1");
        auto total = binom(n, k);
        if (!total) throw capacity_error("C(" + std::to_string(n) + "," + std::to_string(k) +
                                         ") exceeds 128 bits");
        total_ = *total;
        if (n * (k + 1) <= (std::uint64_t{1} << 25)) {
            table_.assign((k + 1) * n, 0);
            for (std::uint64_t j = 0; j <= k; ++j)
                for (std::uint64_t c = 0; c < n; ++c) table_[j * n + c] = saturated(c, j);
        }
    }

    std::uint64_t n() const { return n_; }
    std::uint64_t k() const { return k_; }
    u128 size() const { return total_; }

    /// Writes the subset with the given colex rank into out (ascending).
    void unrank(u128 index, std::span<vertex_t> out) const {
        check_index(index);
        if (out.size() != k_) throw invalid_input("unrank output has wrong arity");
        unrank_below(index, n_, k_, out);
    }

    /// Unranks ascending indices into consecutive k-blocks of out. The top element
    /// is nondecreasing along the input, so it is tracked with a forward cursor.
    template <class Index>
    void unrank_ascending(std::span<const Index> indices, std::span<vertex_t> out) const {
        if (out.size() != indices.size() * k_) throw invalid_input("unrank output has wrong size");
        std::uint64_t top = k_ - 1;
        for (std::size_t e = 0; e < indices.size(); ++e) {
            u128 index = indices[e];
            check_index(index);
            if (e > 0 && index <= static_cast<u128>(indices[e - 1]))
                throw invalid_input("unrank_ascending input is not strictly increasing");
            auto block = out.subspan(e * k_, k_);
            if (k_ < 3) {
                unrank_below(index, n_, k_, block);
                continue;
            }
            while (top + 1 < n_ && coefficient(top + 1, k_) <= index) ++top;
            block[k_ - 1] = static_cast<vertex_t>(top);
            unrank_below(index - coefficient(top, k_), top, k_ - 1, block);
        }
    }

    std::vector<vertex_t> unrank(u128 index) const {
        std::vector<vertex_t> out(k_);
        unrank(index, out);
        return out;
    }

    /// Inverse of unrank; subset must be strictly increasing with entries < n.
    u128 rank(std::span<const vertex_t> subset) const {
        if (subset.size() != k_) throw invalid_input("rank input has wrong arity");
        u128 index = 0;
        for (std::size_t j = 0; j < subset.size(); ++j) {
            if (subset[j] >= n_ || (j > 0 && subset[j] <= subset[j - 1]))
                throw invalid_input("rank input is not a strictly increasing subset of [0, n)");
            index += coefficient(subset[j], j + 1);
        }
        return index;
    }

private:
    void check_index(u128 index) const {
        if (index >= total_)
            throw invalid_input("subset index " + to_string(index) + " out of range [0, " +
                                to_string(total_) + ")");
    }

    // Fills out[0..levels) with the subset of rank index whose elements are < upper.
    void unrank_below(u128 index, std::uint64_t upper, std::uint64_t levels, std::span<vertex_t> out) const {
        for (std::uint64_t j = levels; j >= 1; --j) {
            std::uint64_t c;
            if (j == 1) {
                c = static_cast<std::uint64_t>(index);
            } else if (j == 2) {
                // the correction loops below absorb rounding in the estimate
                const auto guess =
                    (index >> 64) == 0
                        ? static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(
                                                                                static_cast<std::uint64_t>(index)))) /
                                                     2.0)
                        : static_cast<std::uint64_t>((1.0L + std::sqrt(1.0L + 8.0L * to_long_double(index))) / 2.0L);
                c = std::clamp<std::uint64_t>(guess, 1, upper - 1);
                while (c + 1 < upper && pair_count(c + 1) <= index) ++c;
                while (pair_count(c) > index) --c;
            } else {
                // largest c in [j-1, upper) with C(c, j) <= index
                std::uint64_t lo = j - 1, hi = upper - 1;
                while (lo < hi) {
                    std::uint64_t mid = lo + (hi - lo + 1) / 2;
                    if (coefficient(mid, j) <= index) lo = mid;
                    else hi = mid - 1;
                }
                c = lo;
            }
            out[j - 1] = static_cast<vertex_t>(c);
            index -= coefficient(c, j);
            upper = c;
        }
    }

    u128 coefficient(std::uint64_t c, std::uint64_t j) const {
        if (!table_.empty()) return table_[j * n_ + c];
        return saturated(c, j);
    }

    // Probes during the binary search may exceed 128 bits even though C(n, k) does not.
    static u128 saturated(std::uint64_t c, std::uint64_t j) {
        return binom(c, j).value_or(~u128{0});
    }

    static u128 pair_count(std::uint64_t c) { return c < 2 ? 0 : static_cast<u128>(c) * (c - 1) / 2; }

    std::uint64_t n_, k_;
    u128 total_{0};
    std::vector<u128> table_;
};

inline std::vector<vertex_t> unrank_kset(u128 index, std::uint64_t n, std::uint64_t k) {
    return ColexCodec(n, k).unrank(index);
}

inline u128 rank_kset(std::span<const vertex_t> subset, std::uint64_t n) {
    return ColexCodec(n, subset.size()).rank(subset);
}

} // namespace hyperstar

#endif // HYPERSTAR_COMBINATORICS_HPP
