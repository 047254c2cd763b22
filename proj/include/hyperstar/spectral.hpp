#ifndef HYPERSTAR_SPECTRAL_HPP
#define HYPERSTAR_SPECTRAL_HPP

#include <hyperstar/collisions.hpp>
#include <hyperstar/linalg.hpp>
#include <hyperstar/star_matrix.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace hyperstar {

/// Two eigenvalues match when |a - b| <= absolute + relative * max|λ|.
struct MatchTolerance {
    double absolute = 1e-8;
    double relative = 1e-10;
};

struct SpectralSplitReport {
    std::string kernel;
    std::size_t n = 0;
    std::vector<double> spec_M;         // ascending
    std::vector<double> spec_quotient;  // ascending, from D^{1/2} beta D^{-1/2}
    std::vector<double> unit_eigs;      // ascending
    bool matched = false;
    double max_match_error = 0.0;
    double equitable_deviation = 0.0;
    std::size_t dim_loc = 0;
    /// Kolmogorov distance between the ESDs of M and of its quotient.
    double esd_distance = 0.0;
};

/// Sup-distance between the empirical CDFs of two ascending lists. The gap is
/// tracked as the integer |i·|b| - j·|a|| and divided once, so the result is the
/// correctly rounded value of the exact rational distance.
inline double esd_kolmogorov(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw invalid_input("empirical spectral distribution of an empty list");
    const std::uint64_t na = a.size(), nb = b.size();
    std::uint64_t i = 0, j = 0, worst = 0;
    while (i < na || j < nb) {
        double x;
        if (j == nb || (i < na && a[i] <= b[j])) x = a[i];
        else x = b[j];
        while (i < na && a[i] == x) ++i;
        while (j < nb && b[j] == x) ++j;
        const std::uint64_t lhs = i * nb, rhs = j * na;
        worst = std::max(worst, lhs > rhs ? lhs - rhs : rhs - lhs);
    }
    return static_cast<double>(worst) / (static_cast<double>(na) * static_cast<double>(nb));
}

namespace detail {

// Pairs sorted lists elementwise; returns max |a_i - b_i| and whether every pair
// is within tolerance.
inline std::pair<bool, double> match_sorted(std::span<const double> a, std::span<const double> b,
                                            const MatchTolerance& tol) {
    if (a.size() != b.size()) return {false, std::numeric_limits<double>::infinity()};
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::fabs(v));
    for (double v : b) scale = std::max(scale, std::fabs(v));
    const double bound = tol.absolute + tol.relative * scale;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
    return {worst <= bound, worst};
}

} // namespace detail

/// Verifies Spec(M) = Spec(M̂) ⊎ {unit-eigenvalues} for a symmetric kernel.
inline SpectralSplitReport spectral_split_check(const Hypergraph& h, const StarKernel& kernel,
                                                const MatchTolerance& tol = {}) {
    if (!kernel.symmetric)
        throw invalid_input("spectral check requires symmetric kernel; '" + kernel.name + "' is not");
    const auto partition = build_partition(h);
    const auto m = build_matrix(h, kernel);
    SpectralSplitReport report;
    report.kernel = kernel.name;
    report.n = m.n();
    report.equitable_deviation = verify_equitable(m, partition, 0.0).max_deviation;
    const auto q = quotient(m, partition, 0.0);
    report.spec_M = symmetric_eigenvalues(m.entries);
    report.spec_quotient = symmetric_eigenvalues(symmetrized_quotient(q));
    report.unit_eigs = unit_eigenvalues(m, partition);
    std::sort(report.unit_eigs.begin(), report.unit_eigs.end());
    report.dim_loc = report.unit_eigs.size();

    std::vector<double> combined(report.spec_quotient);
    combined.insert(combined.end(), report.unit_eigs.begin(), report.unit_eigs.end());
    std::sort(combined.begin(), combined.end());
    auto [ok, worst] = detail::match_sorted(report.spec_M, combined, tol);
    report.matched = ok;
    report.max_match_error = worst;
    // Spec(M) is compared through its matched partner multiset so that rounding
    // noise on tied eigenvalues cannot move the empirical CDF.
    report.esd_distance = esd_kolmogorov(ok ? std::span<const double>(combined) : std::span<const double>(report.spec_M),
                                         report.spec_quotient);
    return report;
}

inline nlohmann::json to_json(const SpectralSplitReport& r) {
    return {{"kernel", r.kernel},
            {"n", r.n},
            {"spec_M", r.spec_M},
            {"spec_quotient", r.spec_quotient},
            {"unit_eigs", r.unit_eigs},
            {"matched", r.matched},
            {"max_match_error", r.max_match_error},
            {"equitable_deviation", r.equitable_deviation},
            {"dim_loc", r.dim_loc},
            {"esd_distance", r.esd_distance}};
}

/// x(0..steps) for x(t+1) = M x(t).
inline std::vector<std::vector<double>> propagate(const StarMatrix& m, std::span<const double> x0, std::size_t steps) {
    if (x0.size() != m.n())
        throw invalid_input("initial state has size " + std::to_string(x0.size()) + ", expected " +
                            std::to_string(m.n()));
    std::vector<std::vector<double>> trajectory;
    trajectory.reserve(steps + 1);
    trajectory.emplace_back(x0.begin(), x0.end());
    for (std::size_t t = 0; t < steps; ++t) trajectory.push_back(multiply(m.entries, trajectory.back()));
    return trajectory;
}

namespace detail {

// Largest within-unit spread of x, relative to max(1, max|x|).
inline double unit_spread(const UnitPartition& p, std::span<const double> x) {
    double scale = 1.0;
    for (double v : x) scale = std::max(scale, std::fabs(v));
    double worst = 0.0;
    for (std::size_t i = 0; i < p.unit_count(); ++i) {
        auto unit = p.unit(i);
        for (vertex_t v : unit.vertices) worst = std::max(worst, std::fabs(x[v] - x[unit.vertices[0]]));
    }
    return worst / scale;
}

} // namespace detail

/// True iff every state x(t), t <= steps, is constant on each unit within the
/// relative tolerance. x0 itself must be unit-constant.
inline bool unit_sync_preserved(const StarMatrix& m, const UnitPartition& p, std::span<const double> x0,
                                std::size_t steps, double tol) {
    if (p.n() != m.n()) throw invalid_input("partition and matrix have different vertex counts");
    if (x0.size() != m.n()) throw invalid_input("initial state has the wrong size");
    if (detail::unit_spread(p, x0) > tol) throw invalid_input("initial state is not unit-synchronized");
    std::vector<double> x(x0.begin(), x0.end());
    for (std::size_t t = 0; t < steps; ++t) {
        x = multiply(m.entries, x);
        if (detail::unit_spread(p, x) > tol) return false;
    }
    return true;
}

} // namespace hyperstar

#endif // HYPERSTAR_SPECTRAL_HPP
