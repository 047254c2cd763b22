#ifndef HYPERSTAR_ORACLES_HPP
#define HYPERSTAR_ORACLES_HPP

// Closed-form expectations under H(n, k, p) and the limit laws of the collision
// statistics in each degree regime.

#include <hyperstar/combinatorics.hpp>
#include <hyperstar/error.hpp>
#include <hyperstar/regime.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace hyperstar {

namespace detail {

// log of p^a (1-p)^b with the conventions 0^0 = 1.
inline double log_bernoulli_weight(double p, long double a, long double b) {
    const double neg_inf = -std::numeric_limits<double>::infinity();
    double acc = 0.0;
    if (a > 0) {
        if (p == 0.0) return neg_inf;
        acc += static_cast<double>(a * std::log(static_cast<long double>(p)));
    }
    if (b > 0) {
        if (p == 1.0) return neg_inf;
        acc += static_cast<double>(b * std::log1p(-static_cast<long double>(p)));
    }
    return acc;
}

inline void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw invalid_input("probability must lie in [0, 1]");
}

// C(n - a, k - b) with the convention C(x, negative) = 0.
inline long double shifted_binom(std::uint64_t n, std::uint64_t k, std::uint64_t a, std::uint64_t b) {
    if (n < a || k < b) return 0.0L;
    return binom_real(n - a, k - b);
}

} // namespace detail

/// Exact E[X_r]: C(n,2) C(C(n-2,k-2), r) p^r (1-p)^(2C(n-2,k-1) + C(n-2,k-2) - r).
/// For r = 0 this is the expected number of degenerate (isolated) pairs.
inline double expected_Xr_exact(std::uint64_t n, std::uint64_t k, double p, std::uint64_t r) {
    detail::check_probability(p);
    if (n < 2) return 0.0;
    const long double both = detail::shifted_binom(n, k, 2, 2);  // k-sets containing u and v
    const long double one = detail::shifted_binom(n, k, 2, 1);   // containing u but not v
    if (static_cast<long double>(r) > both) return 0.0;
    double log_choose;
    auto exact_both = (k >= 2) ? binom(n - 2, k - 2) : std::optional<u128>{u128{0}};
    if (exact_both && (*exact_both >> 64) == 0) log_choose = log_binom(static_cast<std::uint64_t>(*exact_both), r);
    else log_choose = log_binom_real(both, r);
    const long double absent = 2.0L * one + both - static_cast<long double>(r);
    const double log_value = log_binom(n, 2) + log_choose +
                             detail::log_bernoulli_weight(p, static_cast<long double>(r), absent);
    return std::exp(log_value);
}

/// Leading-order E[X_r] ≈ (k-1)^r / (2 r!) n^(2-r) λ^r e^(-2λ).
inline double expected_Xr_asymptotic(std::uint64_t n, std::uint64_t k, double lambda, std::uint64_t r) {
    if (!(lambda >= 0.0)) throw invalid_input("expected degree must be non-negative");
    const double rr = static_cast<double>(r);
    double log_value = rr * std::log(static_cast<double>(k) - 1.0) - std::log(2.0) - std::lgamma(rr + 1.0) +
                       (2.0 - rr) * std::log(static_cast<double>(n)) - 2.0 * lambda;
    if (r > 0) {
        if (lambda == 0.0) return 0.0;
        log_value += rr * std::log(lambda);
    }
    return std::exp(log_value);
}

/// Exact expected number of vertex triples sharing one non-empty star:
/// C(n,3) (1 - (1-p)^A) (1-p)^B with A = C(n-3,k-3) edges containing the triple
/// and B = 3C(n-3,k-1) + 3C(n-3,k-2) edges meeting it in one or two vertices.
inline double expected_triples_exact(std::uint64_t n, std::uint64_t k, double p) {
    detail::check_probability(p);
    if (n < 3 || k < 3 || p == 0.0) return 0.0;
    const long double containing = detail::shifted_binom(n, k, 3, 3);
    const long double meeting = 3.0L * detail::shifted_binom(n, k, 3, 1) + 3.0L * detail::shifted_binom(n, k, 3, 2);
    if (containing == 0.0L) return 0.0;
    long double some_present;
    if (p == 1.0) some_present = 1.0L;
    else some_present = -std::expm1(containing * std::log1p(-static_cast<long double>(p)));
    const double log_value = log_binom(n, 3) + static_cast<double>(std::log(some_present)) +
                             detail::log_bernoulli_weight(p, 0.0L, meeting);
    return std::exp(log_value);
}

/// Exact E[I_n] = n (1-p)^C(n-1,k-1).
inline double expected_isolated_exact(std::uint64_t n, std::uint64_t k, double p) {
    detail::check_probability(p);
    const long double slots = detail::shifted_binom(n, k, 1, 1);
    return std::exp(std::log(static_cast<double>(n)) + detail::log_bernoulli_weight(p, 0.0L, slots));
}

/// One limiting distribution for one statistic.
struct LimitTerm {
    enum class Kind { poisson, choose_two_of_poisson, zero };
    std::string statistic;
    Kind kind{Kind::zero};
    double mean{};  // Poisson mean (of Z for choose_two_of_poisson)
};

struct LimitLaw {
    RegimeSpec regime;
    std::uint64_t k{};
    std::vector<LimitTerm> terms;

    const LimitTerm* find(const std::string& statistic) const {
        for (const auto& t : terms)
            if (t.statistic == statistic) return &t;
        return nullptr;
    }
};

/// Limit laws implied by the regime:
///   log+c=c          X0 -> C(Z,2), Z ~ Poisson(e^-c); X_r -> 0 for r >= 1; Y -> 0
///   halfloglog+w=w   X1, Y, dim_loc -> Poisson((k-1) e^(-2w) / 4); U_{>=3} -> 0
///   lambda=λ         X2 -> Poisson((k-1)^2 λ^2 e^(-2λ) / 4); X_{>=3} -> 0
inline LimitLaw limit_parameters(const RegimeSpec& regime, std::uint64_t k) {
    if (k < 2) throw invalid_input("uniformity k must be >= 2");
    using Kind = LimitTerm::Kind;
    LimitLaw law{regime, k, {}};
    const double km1 = static_cast<double>(k) - 1.0;
    if (auto* r = std::get_if<LogPlusC>(&regime)) {
        law.terms = {{"X0", Kind::choose_two_of_poisson, std::exp(-r->c)},
                     {"X_ge1", Kind::zero, 0.0},
                     {"Y", Kind::zero, 0.0}};
    } else if (auto* r = std::get_if<HalfLogLogPlusW>(&regime)) {
        const double mu = km1 / 4.0 * std::exp(-2.0 * r->w);
        law.terms = {{"X1", Kind::poisson, mu},
                     {"Y", Kind::poisson, mu},
                     {"dim_loc", Kind::poisson, mu},
                     {"U_ge3", Kind::zero, 0.0}};
    } else if (auto* r = std::get_if<FixedLambda>(&regime)) {
        if (!(r->lambda > 0.0)) throw infeasible_regime("lambda=" + format_double(r->lambda) + " has no limit law; need lambda > 0");
        const double mu = km1 * km1 / 4.0 * r->lambda * r->lambda * std::exp(-2.0 * r->lambda);
        law.terms = {{"X2", Kind::poisson, mu}, {"X_ge3", Kind::zero, 0.0}};
    } else {
        throw infeasible_regime("no limit law available for fixed-p regime " + to_string(regime));
    }
    return law;
}

inline std::string to_string(LimitTerm::Kind kind) {
    switch (kind) {
    case LimitTerm::Kind::poisson: return "poisson";
    case LimitTerm::Kind::choose_two_of_poisson: return "choose2_poisson";
    case LimitTerm::Kind::zero: return "zero";
    }
    return "unknown";
}

inline nlohmann::json to_json(const LimitLaw& law) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : law.terms) {
        nlohmann::json j{{"statistic", t.statistic}, {"law", to_string(t.kind)}};
        if (t.kind == LimitTerm::Kind::poisson) j["mean"] = t.mean;
        if (t.kind == LimitTerm::Kind::choose_two_of_poisson) {
            j["poisson_mean"] = t.mean;
            j["p_zero"] = std::exp(-t.mean) * (1.0 + t.mean);  // P(Z <= 1)
        }
        terms.push_back(std::move(j));
    }
    return {{"regime", to_string(law.regime)}, {"k", law.k}, {"limits", terms}};
}

} // namespace hyperstar

#endif // HYPERSTAR_ORACLES_HPP
