#ifndef HYPERSTAR_REGIME_HPP
#define HYPERSTAR_REGIME_HPP

#include <hyperstar/combinatorics.hpp>
#include <hyperstar/error.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace hyperstar {

struct FixedP { double p; };
struct FixedLambda { double lambda; };
/// λ_n = ln n + c
struct LogPlusC { double c; };
/// λ_n = (ln n + ln ln n) / 2 + w
struct HalfLogLogPlusW { double w; };

/// Degree regime. Textual grammar: p=<x> | lambda=<x> | log+c=<x> | halfloglog+w=<x>.
using RegimeSpec = std::variant<FixedP, FixedLambda, LogPlusC, HalfLogLogPlusW>;

/// Shortest decimal that round-trips.
inline std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

inline RegimeSpec parse_regime(std::string_view text) {
    auto eq = text.find('=');
    if (eq == std::string_view::npos)
        throw invalid_input("regime '" + std::string(text) + "' must look like key=value");
    auto key = text.substr(0, eq);
    auto value_text = text.substr(eq + 1);
    double value{};
    auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (ec != std::errc{} || ptr != value_text.data() + value_text.size() || !std::isfinite(value))
        throw invalid_input("regime '" + std::string(text) + "' has a malformed number");
    if (key == "p") {
        if (value < 0.0 || value > 1.0) throw invalid_input("p must lie in [0, 1]");
        return FixedP{value};
    }
    if (key == "lambda") return FixedLambda{value};
    if (key == "log+c") return LogPlusC{value};
    if (key == "halfloglog+w") return HalfLogLogPlusW{value};
    throw invalid_input("unknown regime '" + std::string(key) + "' (expected p, lambda, log+c or halfloglog+w)");
}

inline std::string to_string(const RegimeSpec& regime) {
    struct {
        std::string operator()(FixedP r) const { return "p=" + format_double(r.p); }
        std::string operator()(FixedLambda r) const { return "lambda=" + format_double(r.lambda); }
        std::string operator()(LogPlusC r) const { return "log+c=" + format_double(r.c); }
        std::string operator()(HalfLogLogPlusW r) const { return "halfloglog+w=" + format_double(r.w); }
    } visitor;
    return std::visit(visitor, regime);
}

/// C(n-1, k-1): the number of k-sets containing a fixed vertex.
inline long double edges_per_vertex(std::uint64_t n, std::uint64_t k) {
    if (n == 0 || k == 0) return 0.0L;
    return binom_real(n - 1, k - 1);
}

/// Expected vertex degree λ_n = p_n C(n-1, k-1) implied by the regime.
inline double expected_degree(const RegimeSpec& regime, std::uint64_t n, std::uint64_t k) {
    const double ln_n = std::log(static_cast<double>(n));
    struct {
        double ln_n;
        std::uint64_t n, k;
        double operator()(FixedP r) const { return static_cast<double>(r.p * edges_per_vertex(n, k)); }
        double operator()(FixedLambda r) const { return r.lambda; }
        double operator()(LogPlusC r) const { return ln_n + r.c; }
        double operator()(HalfLogLogPlusW r) const {
            if (n < 3) throw infeasible_regime("halfloglog+w needs n >= 3 so that ln ln n is defined");
            return 0.5 * (ln_n + std::log(ln_n)) + r.w;
        }
    } visitor{ln_n, n, k};
    return std::visit(visitor, regime);
}

/// Edge probability p_n = λ_n / C(n-1, k-1); FixedP is returned verbatim.
inline double edge_probability(const RegimeSpec& regime, std::uint64_t n, std::uint64_t k) {
    if (auto* fixed = std::get_if<FixedP>(&regime)) {
        if (fixed->p < 0.0 || fixed->p > 1.0) throw infeasible_regime("p must lie in [0, 1]");
        return fixed->p;
    }
    const long double slots = edges_per_vertex(n, k);
    if (slots < 1.0L)
        throw infeasible_regime("C(n-1, k-1) = 0 for n = " + std::to_string(n) + ", k = " + std::to_string(k));
    const double lambda = expected_degree(regime, n, k);
    if (!(lambda >= 0.0))
        throw infeasible_regime("regime " + to_string(regime) + " gives negative expected degree " +
                                format_double(lambda) + " at n = " + std::to_string(n));
    const auto p = static_cast<double>(lambda / slots);
    if (p > 1.0)
        throw infeasible_regime("regime " + to_string(regime) + " needs p = " + format_double(p) +
                                " > 1 at n = " + std::to_string(n) + ", k = " + std::to_string(k) +
                                "; feasible only for lambda <= C(n-1,k-1) = " +
                                format_double(static_cast<double>(slots)));
    return p;
}

} // namespace hyperstar

#endif // HYPERSTAR_REGIME_HPP
