#ifndef HYPERSTAR_DISTRIBUTIONS_HPP
#define HYPERSTAR_DISTRIBUTIONS_HPP

#include <hyperstar/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

namespace hyperstar {

/// Probability mass function on {0, ..., cap} plus one bucket for all values > cap.
struct Pmf {
    std::uint64_t cap = 64;
    std::map<std::uint64_t, double> mass;  // only values <= cap
    double overflow = 0.0;

    double at(std::uint64_t value) const {
        if (value > cap) return 0.0;
        auto it = mass.find(value);
        return it == mass.end() ? 0.0 : it->second;
    }
    double total() const {
        double acc = overflow;
        for (auto [v, p] : mass) acc += p;
        return acc;
    }
};

/// e^{-μ} μ^j / j!, evaluated in log space.
inline double poisson_pmf(double mu, std::uint64_t j) {
    if (!(mu >= 0.0)) throw invalid_input("Poisson mean must be non-negative");
    if (mu == 0.0) return j == 0 ? 1.0 : 0.0;
    const double jj = static_cast<double>(j);
    return std::exp(-mu + jj * std::log(mu) - std::lgamma(jj + 1.0));
}

/// Poisson(μ) truncated at cap, tail mass in the overflow bucket.
inline Pmf poisson_law(double mu, std::uint64_t cap = 64) {
    Pmf out{cap, {}, 0.0};
    double acc = 0.0;
    for (std::uint64_t j = 0; j <= cap; ++j) {
        const double p = poisson_pmf(mu, j);
        if (p > 0.0) out.mass[j] = p;
        acc += p;
    }
    out.overflow = std::max(0.0, 1.0 - acc);
    return out;
}

/// Law of C(Z, 2) for Z ~ Poisson(μ). Z = 0 and Z = 1 both map to 0; no other collisions.
inline Pmf choose_two_of_poisson(double mu, std::uint64_t cap = 64) {
    Pmf out{cap, {}, 0.0};
    double acc = 0.0;
    for (std::uint64_t z = 0;; ++z) {
        const std::uint64_t value = z < 2 ? 0 : z * (z - 1) / 2;
        if (value > cap) break;
        const double p = poisson_pmf(mu, z);
        out.mass[value] += p;
        acc += p;
    }
    out.overflow = std::max(0.0, 1.0 - acc);
    return out;
}

/// Limit law of X_0 in the window λ_n = ln n + c: C(Z, 2), Z ~ Poisson(e^{-c}).
inline Pmf x0_limit_pmf(double c, std::uint64_t cap = 64) { return choose_two_of_poisson(std::exp(-c), cap); }

/// ½ Σ |p_j - q_j| over the union support, overflow buckets compared directly.
inline double tv_distance(const Pmf& p, const Pmf& q) {
    if (p.cap != q.cap) throw invalid_input("pmfs have different value caps");
    for (const Pmf* f : {&p, &q}) {
        for (auto [v, m] : f->mass)
            if (m < 0.0) throw invalid_input("pmf has negative mass");
        if (f->overflow < 0.0 || std::fabs(f->total() - 1.0) > 1e-9)
            throw invalid_input("pmf is not normalised (total " + std::to_string(f->total()) + ")");
    }
    double acc = std::fabs(p.overflow - q.overflow);
    for (auto [v, m] : p.mass) acc += std::fabs(m - q.at(v));
    for (auto [v, m] : q.mass)
        if (!p.mass.contains(v)) acc += m;
    return std::min(1.0, 0.5 * acc);
}

inline nlohmann::json to_json(const Pmf& pmf) {
    nlohmann::json values = nlohmann::json::object();
    for (auto [v, m] : pmf.mass) values[std::to_string(v)] = m;
    return {{"cap", pmf.cap}, {"values", values}, {"overflow", pmf.overflow}};
}

} // namespace hyperstar

#endif // HYPERSTAR_DISTRIBUTIONS_HPP
