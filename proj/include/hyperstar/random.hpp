#ifndef HYPERSTAR_RANDOM_HPP
#define HYPERSTAR_RANDOM_HPP

// Reproducible randomness. All engines are std::mt19937_64 (bit-exact across
// standard libraries); distributions are implemented here rather than taken from
// <random> because the standard leaves their algorithms unspecified.

#include <hyperstar/combinatorics.hpp>
#include <hyperstar/error.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace hyperstar {

using Engine = std::mt19937_64;

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// 64-bit FNV-1a, used to turn stream labels into integers.
constexpr std::uint64_t label_hash(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seed of a named stream: mix64(mix64(seed) ^ fnv1a(label)).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
    return mix64(mix64(seed) ^ label_hash(label));
}

/// Seed of one Monte Carlo trial: mix64(mix64(mix64(master) ^ n) ^ trial).
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t n, std::uint64_t trial) {
    return mix64(mix64(mix64(master) ^ n) ^ trial);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, bound) by masked rejection; bound > 0.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
    if (bound == 0) throw invalid_input("uniform_below needs a positive bound");
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1; mask |= mask >> 2; mask |= mask >> 4;
    mask |= mask >> 8; mask |= mask >> 16; mask |= mask >> 32;
    for (;;) {
        std::uint64_t x = rng() & mask;
        if (x < bound) return x;
    }
}

inline u128 uniform_below(Engine& rng, u128 bound) {
    if (bound == 0) throw invalid_input("uniform_below needs a positive bound");
    if ((bound >> 64) == 0) return uniform_below(rng, static_cast<std::uint64_t>(bound));
    u128 mask = bound - 1;
    for (int s = 1; s < 128; s <<= 1) mask |= mask >> s;
    for (;;) {
        u128 x = (static_cast<u128>(rng()) << 64 | rng()) & mask;
        if (x < bound) return x;
    }
}

namespace detail {

// Inversion by sequential search; intended for mean < 10 with p <= 1/2.
inline u128 binomial_inversion(Engine& rng, long double trials, double p) {
    const long double q = 1.0L - p;
    const long double ratio = p / q;
    long double pmf = std::exp(trials * std::log1p(-static_cast<long double>(p)));
    long double u = uniform01(rng);
    u128 k = 0;
    while (u > pmf && static_cast<long double>(k) < trials) {
        u -= pmf;
        ++k;
        pmf *= (trials - static_cast<long double>(k) + 1.0L) / static_cast<long double>(k) * ratio;
        if (pmf <= 0.0L) break;
    }
    return k;
}

// log f(x) / f(mode) for Binomial(trials, p), accumulated term by term so that
// the result stays accurate when trials is astronomically large.
inline long double binomial_log_ratio(long double trials, long double p, long double x, long double mode) {
    const long double q = 1.0L - p;
    long double acc = 0.0L;
    if (x > mode) {
        for (long double j = mode + 1; j <= x; j += 1) acc += std::log((trials - j + 1) * p / (j * q));
    } else {
        for (long double j = x + 1; j <= mode; j += 1) acc -= std::log((trials - j + 1) * p / (j * q));
    }
    return acc;
}

// Hörmann's transformed rejection with squeeze (BTRS); needs trials * p >= 10, p <= 1/2.
inline u128 binomial_btrs(Engine& rng, long double trials, double p) {
    const long double q = 1.0L - p;
    const long double spq = std::sqrt(trials * p * q);
    const long double b = 1.15L + 2.53L * spq;
    const long double a = -0.0873L + 0.0248L * b + 0.01L * p;
    const long double c = trials * p + 0.5L;
    const long double v_r = 0.92L - 4.2L / b;
    const long double alpha = (2.83L + 5.1L / b) * spq;
    const long double mode = std::floor((trials + 1.0L) * p);
    for (;;) {
        const long double u = uniform01(rng) - 0.5L;
        long double v = uniform01(rng);
        const long double us = 0.5L - std::fabs(u);
        const long double x = std::floor((2.0L * a / us + b) * u + c);
        if (x < 0 || x > trials) continue;
        if (us >= 0.07L && v <= v_r) return static_cast<u128>(x);
        v = v * alpha / (a / (us * us) + b);
        if (v <= 0) continue;
        if (std::log(v) <= binomial_log_ratio(trials, p, x, mode)) return static_cast<u128>(x);
    }
}

} // namespace detail

/// Exact Binomial(trials, p) variate for up to 128-bit trial counts.
inline u128 sample_binomial(Engine& rng, u128 trials, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw invalid_input("binomial probability outside [0, 1]");
    if (trials == 0 || p == 0.0) return 0;
    if (p == 1.0) return trials;
    const bool flip = p > 0.5;
    const double pp = flip ? 1.0 - p : p;
    const long double n = to_long_double(trials);
    u128 k = (n * pp < 10.0L) ? detail::binomial_inversion(rng, n, pp) : detail::binomial_btrs(rng, n, pp);
    if (k > trials) k = trials;
    return flip ? trials - k : k;
}

} // namespace hyperstar

#endif // HYPERSTAR_RANDOM_HPP
