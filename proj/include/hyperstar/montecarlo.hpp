#ifndef HYPERSTAR_MONTECARLO_HPP
#define HYPERSTAR_MONTECARLO_HPP

// Seeded Monte Carlo over H(n, k, p): per-trial seeds depend only on
// (master_seed, n, trial), results are stored by trial index and merged in
// index order, so summaries are identical for any number of workers.

#include <hyperstar/collisions.hpp>
#include <hyperstar/distributions.hpp>
#include <hyperstar/oracles.hpp>
#include <hyperstar/random.hpp>
#include <hyperstar/regime.hpp>
#include <hyperstar/sampler.hpp>
#include <hyperstar/spectral.hpp>
#include <hyperstar/star_matrix.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace hyperstar {

inline constexpr const char* version_string = "hyperstar 0.1.0";

struct ExperimentPlan {
    std::vector<std::uint64_t> n_list;
    std::uint64_t k = 3;
    RegimeSpec regime = FixedP{0.0};
    std::uint64_t trials = 1;
    std::uint64_t master_seed = 0;
    bool collect_spectral = false;
    std::uint64_t r_max = 3;
    std::uint64_t value_cap = 64;
};

inline void validate(const ExperimentPlan& plan) {
    if (plan.n_list.empty()) throw invalid_input("plan needs at least one n");
    if (plan.k < 2) throw invalid_input("plan needs k >= 2");
    if (plan.trials < 1) throw invalid_input("plan needs trials >= 1");
    if (plan.r_max < 2) throw invalid_input("plan needs r_max >= 2");
    for (auto n : plan.n_list) {
        if (n < 1) throw invalid_input("plan has n < 1");
        if (plan.collect_spectral && n > max_matrix_dimension)
            throw capacity_error("spectral collection needs n <= " + std::to_string(max_matrix_dimension));
        (void)edge_probability(plan.regime, n, plan.k);  // throws when infeasible
    }
}

inline nlohmann::json to_json(const ExperimentPlan& plan) {
    return {{"n_list", plan.n_list},         {"k", plan.k},
            {"regime", to_string(plan.regime)}, {"trials", plan.trials},
            {"master_seed", plan.master_seed}, {"collect_spectral", plan.collect_spectral},
            {"r_max", plan.r_max},           {"value_cap", plan.value_cap}};
}

inline ExperimentPlan plan_from_json(const nlohmann::json& j) {
    ExperimentPlan plan;
    try {
        plan.n_list = j.at("n_list").get<std::vector<std::uint64_t>>();
        plan.k = j.value("k", plan.k);
        plan.regime = parse_regime(j.at("regime").get<std::string>());
        plan.trials = j.value("trials", plan.trials);
        plan.master_seed = j.value("master_seed", plan.master_seed);
        plan.collect_spectral = j.value("collect_spectral", plan.collect_spectral);
        plan.r_max = j.value("r_max", plan.r_max);
        plan.value_cap = j.value("value_cap", plan.value_cap);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("malformed plan: ") + e.what());
    }
    validate(plan);
    return plan;
}

/// Statistics of a single trial.
struct TrialRecord {
    std::uint64_t m = 0, isolated = 0, y = 0, dim_loc = 0, u2 = 0, u_ge3 = 0;
    std::vector<std::uint64_t> x;       // X_0 .. X_{r_max}
    std::uint64_t x_beyond = 0;         // Σ_{r > r_max} X_r
    std::uint64_t x_ge3 = 0;            // Σ_{r >= 3} X_r
    std::vector<char> spectral_ok;      // per kernel, when collected
    std::vector<double> spectral_error;
    std::vector<char> esd_ok;
};

inline const std::vector<std::string>& spectral_kernel_names() {
    static const std::vector<std::string> names{"codegree", "banerjee", "laplacian"};
    return names;
}

inline TrialRecord run_trial(const Sampler& sampler, double p, std::uint64_t seed, const ExperimentPlan& plan) {
    const auto h = sampler.draw(seed, p);
    const auto partition = build_partition(h);
    const auto c = census(h, partition);
    TrialRecord rec;
    rec.m = c.m;
    rec.isolated = c.isolated;
    rec.y = c.nontrivial_units;
    rec.dim_loc = c.local_dimension;
    rec.u2 = c.U(2);
    rec.u_ge3 = c.large_units();
    rec.x.resize(plan.r_max + 1);
    for (std::uint64_t r = 0; r <= plan.r_max; ++r) rec.x[r] = c.X(r);
    rec.x_beyond = c.pairs_from(plan.r_max + 1);
    rec.x_ge3 = c.pairs_from(3);
    if (plan.collect_spectral) {
        for (const auto& name : spectral_kernel_names()) {
            auto report = spectral_split_check(h, kernel_by_name(name));
            rec.spectral_ok.push_back(report.matched && report.equitable_deviation == 0.0 &&
                                      report.max_match_error <= 1e-8);
            rec.spectral_error.push_back(report.max_match_error);
            rec.esd_ok.push_back(report.esd_distance <=
                                 static_cast<double>(report.dim_loc) / static_cast<double>(report.n));
        }
    }
    return rec;
}

struct Moments {
    double mean = 0.0;
    double variance = 0.0;  // unbiased
    double standard_error = 0.0;
};

struct SpectralTally {
    std::uint64_t passed = 0;
    std::uint64_t esd_bound_held = 0;
    double max_match_error = 0.0;
};

struct NSummary {
    std::uint64_t n = 0;
    double p = 0.0;
    double lambda = 0.0;
    std::uint64_t trials = 0;
    std::map<std::string, std::map<std::uint64_t, std::uint64_t>> histograms;  // full, uncapped
    std::map<std::string, Pmf> pmf;
    std::map<std::string, Moments> moments;
    std::map<std::uint64_t, double> expected_X;     // exact E[X_r]
    std::map<std::uint64_t, double> asymptotic_X;   // leading-order E[X_r]
    double expected_triples = 0.0;                  // exact E[T_n]
    double expected_isolated = 0.0;                 // exact E[I_n]
    std::map<std::string, double> z;
    std::map<std::string, std::string> oracle_status;  // ok | flag | fatal
    std::map<std::string, double> tv;
    std::map<std::string, double> events;
    std::map<std::string, std::uint64_t> violations;
    std::optional<LimitLaw> limit;
    std::map<std::string, SpectralTally> spectral;
};

struct ExperimentSummary {
    ExperimentPlan plan;
    std::vector<NSummary> per_n;

    bool any_fatal() const {
        for (const auto& s : per_n)
            for (const auto& [stat, status] : s.oracle_status)
                if (status == "fatal") return true;
        return false;
    }
};

namespace detail {

inline Pmf empirical_pmf(const std::map<std::uint64_t, std::uint64_t>& hist, std::uint64_t trials, std::uint64_t cap) {
    Pmf out{cap, {}, 0.0};
    std::uint64_t over = 0;
    for (auto [v, c] : hist) {
        if (v > cap) over += c;
        else out.mass[v] = static_cast<double>(c) / static_cast<double>(trials);
    }
    out.overflow = static_cast<double>(over) / static_cast<double>(trials);
    return out;
}

inline Moments moments_of(const std::map<std::uint64_t, std::uint64_t>& hist, std::uint64_t trials) {
    long double sq = 0.0L;
    u128 isum = 0;
    for (auto [v, c] : hist) isum += static_cast<u128>(v) * c;
    const long double t = static_cast<long double>(trials);
    const long double mean = to_long_double(isum) / t;
    for (auto [v, c] : hist) {
        const long double d = static_cast<long double>(v) - mean;
        sq += d * d * static_cast<long double>(c);
    }
    Moments m;
    m.mean = static_cast<double>(mean);
    m.variance = trials > 1 ? static_cast<double>(sq / (t - 1.0L)) : 0.0;
    m.standard_error = std::sqrt(m.variance / static_cast<double>(trials));
    return m;
}

// When every trial gave the same value the sample variance is 0; the counts are
// close to Poisson, so sqrt(oracle / trials) stands in for the standard error.
inline double z_score(const Moments& m, double oracle, std::uint64_t trials) {
    const double diff = m.mean - oracle;
    double se = m.standard_error;
    if (se == 0.0 && oracle > 0.0) se = std::sqrt(oracle / static_cast<double>(trials));
    if (se == 0.0) {
        if (std::fabs(diff) <= 1e-9 * std::max(1.0, std::fabs(oracle))) return 0.0;
        return diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
    }
    return diff / se;
}

inline Pmf law_pmf(const LimitTerm& term, std::uint64_t cap) {
    switch (term.kind) {
    case LimitTerm::Kind::poisson: return poisson_law(term.mean, cap);
    case LimitTerm::Kind::choose_two_of_poisson: return choose_two_of_poisson(term.mean, cap);
    case LimitTerm::Kind::zero: return poisson_law(0.0, cap);
    }
    return poisson_law(0.0, cap);
}

} // namespace detail

inline NSummary summarize(const ExperimentPlan& plan, std::uint64_t n, double p,
                          const std::vector<TrialRecord>& records) {
    NSummary s;
    s.n = n;
    s.p = p;
    s.lambda = static_cast<double>(p * edges_per_vertex(n, plan.k));
    s.trials = records.size();
    const auto trials = s.trials;

    auto& h = s.histograms;
    std::uint64_t x0_zero = 0, x0_pos = 0, u3 = 0, fingerprint = 0, xge3 = 0, dim_mismatch = 0;
    std::vector<std::uint64_t> x_pos(plan.r_max + 1, 0);
    for (const auto& rec : records) {
        for (std::uint64_t r = 0; r <= plan.r_max; ++r) {
            h["X" + std::to_string(r)][rec.x[r]]++;
            if (rec.x[r] > 0) ++x_pos[r];
        }
        h["X_gt_rmax"][rec.x_beyond]++;
        h["m"][rec.m]++;
        h["I_n"][rec.isolated]++;
        h["Y"][rec.y]++;
        h["dim_loc"][rec.dim_loc]++;
        h["U2"][rec.u2]++;
        h["U_ge3"][rec.u_ge3]++;
        x0_zero += rec.x[0] == 0;
        x0_pos += rec.x[0] > 0;
        u3 += rec.u_ge3 > 0;
        xge3 += rec.x_ge3 > 0;
        fingerprint += rec.y == 0;
        dim_mismatch += (rec.u_ge3 == 0 && rec.dim_loc != rec.y);
    }
    for (const auto& [name, hist] : h) s.moments[name] = detail::moments_of(hist, trials);
    for (const char* name : {"X0", "X1", "X2", "Y", "dim_loc"})
        s.pmf[name] = detail::empirical_pmf(h[name], trials, plan.value_cap);

    for (std::uint64_t r = 0; r <= plan.r_max; ++r) {
        const auto key = "X" + std::to_string(r);
        s.expected_X[r] = expected_Xr_exact(n, plan.k, p, r);
        s.asymptotic_X[r] = expected_Xr_asymptotic(n, plan.k, s.lambda, r);
        const double z = detail::z_score(s.moments[key], s.expected_X[r], trials);
        s.z[key] = z;
        if (r <= 2) s.oracle_status[key] = std::fabs(z) <= 4.0 ? "ok" : (std::fabs(z) <= 5.0 ? "flag" : "fatal");
    }
    s.expected_triples = expected_triples_exact(n, plan.k, p);
    s.expected_isolated = expected_isolated_exact(n, plan.k, p);

    const auto cap = plan.value_cap;
    s.tv["X0_recentered"] = tv_distance(s.pmf["X0"], choose_two_of_poisson(s.expected_isolated, cap));
    s.tv["X1_recentered"] = tv_distance(s.pmf["X1"], poisson_law(s.expected_X[1], cap));
    s.tv["X2_recentered"] = tv_distance(s.pmf["X2"], poisson_law(s.expected_X[2], cap));
    s.tv["Y_recentered"] = tv_distance(s.pmf["Y"], poisson_law(s.expected_X[1], cap));
    s.tv["dim_loc_recentered"] = tv_distance(s.pmf["dim_loc"], poisson_law(s.expected_X[1], cap));
    if (!std::holds_alternative<FixedP>(plan.regime)) {
        auto fixed_lambda = std::get_if<FixedLambda>(&plan.regime);
        if (!fixed_lambda || fixed_lambda->lambda > 0.0) {
            s.limit = limit_parameters(plan.regime, plan.k);
            for (const auto& term : s.limit->terms)
                if (s.pmf.contains(term.statistic))
                    s.tv[term.statistic + "_limit"] = tv_distance(s.pmf[term.statistic], detail::law_pmf(term, cap));
        }
    }

    const double t = static_cast<double>(trials);
    s.events["X0_eq_0"] = static_cast<double>(x0_zero) / t;
    s.events["X0_gt_0"] = static_cast<double>(x0_pos) / t;
    for (std::uint64_t r = 1; r <= plan.r_max; ++r)
        s.events["X" + std::to_string(r) + "_ge_1"] = static_cast<double>(x_pos[r]) / t;
    s.events["X_ge3_ge_1"] = static_cast<double>(xge3) / t;
    s.events["U_ge3_gt_0"] = static_cast<double>(u3) / t;
    s.events["fingerprint"] = static_cast<double>(fingerprint) / t;
    s.violations["dim_loc_ne_Y_without_large_units"] = dim_mismatch;

    if (plan.collect_spectral) {
        const auto& names = spectral_kernel_names();
        for (std::size_t i = 0; i < names.size(); ++i) {
            SpectralTally tally;
            for (const auto& rec : records) {
                tally.passed += rec.spectral_ok[i];
                tally.esd_bound_held += rec.esd_ok[i];
                tally.max_match_error = std::max(tally.max_match_error, rec.spectral_error[i]);
            }
            s.spectral[names[i]] = tally;
        }
    }
    return s;
}

/// Runs every trial of the plan on `workers` threads (>= 1).
inline ExperimentSummary run_experiment(const ExperimentPlan& plan, unsigned workers = 1) {
    validate(plan);
    workers = std::max(1u, workers);
    ExperimentSummary summary{plan, {}};
    for (auto n : plan.n_list) {
        const double p = edge_probability(plan.regime, n, plan.k);
        const Sampler sampler(n, plan.k);
        std::vector<TrialRecord> records(plan.trials);
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_lock;
        auto worker = [&] {
            try {
                for (std::uint64_t i; (i = next.fetch_add(1)) < plan.trials;)
                    records[i] = run_trial(sampler, p, trial_seed(plan.master_seed, n, i), plan);
            } catch (...) {
                std::lock_guard lock(failure_lock);
                if (!failure) failure = std::current_exception();
                next = plan.trials;
            }
        };
        if (workers == 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        }
        if (failure) std::rethrow_exception(failure);
        summary.per_n.push_back(summarize(plan, n, p, records));
    }
    return summary;
}

inline nlohmann::json to_json(const NSummary& s) {
    using nlohmann::json;
    json pmf = json::object(), moments = json::object(), exact = json::object(), asym = json::object();
    for (const auto& [k, v] : s.pmf) pmf[k] = to_json(v);
    for (const auto& [k, m] : s.moments)
        moments[k] = {{"mean", m.mean}, {"variance", m.variance}, {"standard_error", m.standard_error}};
    for (const auto& [r, v] : s.expected_X) exact[std::to_string(r)] = v;
    for (const auto& [r, v] : s.asymptotic_X) asym[std::to_string(r)] = v;
    json out{{"n", s.n},
             {"p", s.p},
             {"lambda", s.lambda},
             {"trials", s.trials},
             {"pmf", pmf},
             {"moments", moments},
             {"oracle", {{"E_X", exact}, {"E_X_asymptotic", asym}, {"E_T", s.expected_triples}, {"E_I", s.expected_isolated}}},
             {"z", s.z},
             {"oracle_status", s.oracle_status},
             {"tv", s.tv},
             {"events", s.events},
             {"violations", s.violations},
             {"limit", s.limit ? to_json(*s.limit) : json(nullptr)}};
    if (!s.spectral.empty()) {
        json spectral = json::object();
        for (const auto& [name, t] : s.spectral)
            spectral[name] = {{"passed", t.passed}, {"esd_bound_held", t.esd_bound_held}, {"max_match_error", t.max_match_error}};
        out["spectral"] = spectral;
    }
    return out;
}

inline nlohmann::json to_json(const ExperimentSummary& summary) {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& s : summary.per_n) results.push_back(to_json(s));
    return {{"version", version_string}, {"plan", to_json(summary.plan)}, {"results", results}};
}

/// value,count,probability rows for one histogram.
inline std::string histogram_to_csv(const std::map<std::uint64_t, std::uint64_t>& hist, std::uint64_t trials) {
    std::string out = "value,count,probability\n";
    for (auto [v, c] : hist)
        out += std::to_string(v) + ',' + std::to_string(c) + ',' +
               format_double(static_cast<double>(c) / static_cast<double>(trials)) + '\n';
    return out;
}

} // namespace hyperstar

#endif // HYPERSTAR_MONTECARLO_HPP
