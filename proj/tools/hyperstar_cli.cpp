// hyperstar: sample random k-uniform hypergraphs, count star collisions, build
// star-dependent matrices, verify their spectral split, and run seeded experiments.
//
// Exit codes: 0 success, 1 domain error, 2 usage error.

#include <hyperstar/hyperstar.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;
using namespace hyperstar;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
    const char* env = std::getenv("HYPERSTAR_SEED");
    if (!env || !*env) return 0;
    try {
        std::size_t used = 0;
        auto value = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw usage_error(std::string("HYPERSTAR_SEED='") + env + "' is not an unsigned integer");
    }
}

RegimeSpec regime_arg(const std::string& text) {
    try {
        return parse_regime(text);
    } catch (const invalid_input& e) {
        throw usage_error(e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write '" + path + "'");
    out << text;
}

// --- sample ---------------------------------------------------------------

struct SampleArgs {
    std::uint64_t n = 0, k = 0;
    std::string regime, out;
    std::optional<std::uint64_t> seed;
};

int run_sample(const SampleArgs& a) {
    const auto regime = regime_arg(a.regime);
    const std::uint64_t seed = a.seed ? *a.seed : default_seed();
    const double p = edge_probability(regime, a.n, a.k);
    const auto h = sample({a.n, a.k, seed}, regime);
    const json line{{"n", a.n},   {"k", a.k},       {"m", h.m()},
                    {"p", p},     {"lambda", static_cast<double>(p * edges_per_vertex(a.n, a.k))},
                    {"seed", seed}, {"regime", to_string(regime)}, {"version", version_string}};
    if (a.out.empty()) {
        std::cout << serialize_hg(h);
        std::cerr << line.dump() << '\n';
    } else {
        write_hg_file(h, a.out);
        std::cout << line.dump() << '\n';
    }
    return 0;
}

// --- census ---------------------------------------------------------------

int run_census(const std::string& file, bool csv) {
    const auto c = census(read_hg_file(file));
    if (csv) {
        std::cout << to_csv(c);
    } else {
        auto j = to_json(c);
        j["version"] = version_string;
        std::cout << j.dump() << '\n';
    }
    return 0;
}

// --- expect / limits ------------------------------------------------------

struct ExpectArgs {
    std::uint64_t n = 0, k = 0;
    std::optional<double> p;
    std::string regime;
    std::optional<std::uint64_t> r;
};

int run_expect(const ExpectArgs& a) {
    if (a.p.has_value() == !a.regime.empty()) throw usage_error("expect needs exactly one of --p or --regime");
    const RegimeSpec regime = a.p ? RegimeSpec{FixedP{*a.p}} : regime_arg(a.regime);
    const double p = edge_probability(regime, a.n, a.k);
    const double lambda = static_cast<double>(p * edges_per_vertex(a.n, a.k));
    json exact = json::object(), asymptotic = json::object();
    std::vector<std::uint64_t> rs;
    if (a.r) rs = {*a.r};
    else rs = {0, 1, 2, 3};
    for (auto r : rs) {
        exact[std::to_string(r)] = expected_Xr_exact(a.n, a.k, p, r);
        asymptotic[std::to_string(r)] = expected_Xr_asymptotic(a.n, a.k, lambda, r);
    }
    const json out{{"n", a.n},
                   {"k", a.k},
                   {"regime", to_string(regime)},
                   {"p", p},
                   {"lambda", lambda},
                   {"E_X", exact},
                   {"E_X_asymptotic", asymptotic},
                   {"E_T", expected_triples_exact(a.n, a.k, p)},
                   {"E_I", expected_isolated_exact(a.n, a.k, p)},
                   {"version", version_string}};
    std::cout << out.dump() << '\n';
    return 0;
}

int run_limits(std::uint64_t k, const std::string& regime_text) {
    auto j = to_json(limit_parameters(regime_arg(regime_text), k));
    j["version"] = version_string;
    std::cout << j.dump() << '\n';
    return 0;
}

// --- matrix / check -------------------------------------------------------

StarKernel kernel_arg(const std::string& name) {
    try {
        return kernel_by_name(name);
    } catch (const invalid_input& e) {
        throw usage_error(e.what());
    }
}

int run_matrix(const std::string& file, const std::string& kernel_name, const std::string& out,
               const std::string& quotient_out) {
    const auto kernel = kernel_arg(kernel_name);
    const auto h = read_hg_file(file);
    const auto m = build_matrix(h, kernel);
    const auto csv = matrix_to_csv(m.entries);
    if (out.empty()) std::cout << csv;
    else write_text(out, csv);
    if (!quotient_out.empty()) write_text(quotient_out, quotient_to_csv(quotient(m, build_partition(h))));
    return 0;
}

int run_check(const std::string& file, const std::string& kernel_name, double tol, bool as_json) {
    const auto kernel = kernel_arg(kernel_name);
    if (!kernel.symmetric) throw invalid_input("spectral check requires symmetric kernel; '" + kernel.name + "' is not");
    const auto h = read_hg_file(file);
    if (h.n() > max_matrix_dimension)
        throw capacity_error("check is capped at n <= " + std::to_string(max_matrix_dimension));
    const auto report = spectral_split_check(h, kernel, {tol, 1e-10});
    const auto partition = build_partition(h);
    const auto c = census(h, partition);
    const bool x0_identity = c.degenerate_pairs == c.isolated * (c.isolated - (c.isolated > 0)) / 2;
    const bool dim_identity = c.local_dimension + partition.part_count() == h.n() &&
                              c.local_dimension == report.unit_eigs.size();
    const bool equitable = report.equitable_deviation == 0.0;
    const bool ok = report.matched && equitable && x0_identity && dim_identity;

    if (as_json) {
        auto j = to_json(report);
        j["equitable"] = equitable;
        j["integer_identities"] = x0_identity && dim_identity;
        j["passed"] = ok;
        j["version"] = version_string;
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "kernel:              " << report.kernel << '\n'
                  << "n:                   " << report.n << '\n'
                  << "units (parts):       " << partition.part_count() << '\n'
                  << "dim H_loc:           " << report.dim_loc << '\n'
                  << "equitable deviation: " << report.equitable_deviation << '\n'
                  << "max match error:     " << report.max_match_error << '\n'
                  << "ESD distance:        " << report.esd_distance << " (bound " << report.dim_loc << "/" << report.n
                  << ")\n"
                  << "integer identities:  " << ((x0_identity && dim_identity) ? "hold" : "VIOLATED") << '\n'
                  << "spectral split:      " << (report.matched ? "matched" : "NOT matched") << '\n';
    }
    return ok ? 0 : 1;
}

// --- experiment -----------------------------------------------------------

struct ExperimentArgs {
    std::string plan_file, regime, out, histograms;
    std::vector<std::uint64_t> n_list;
    std::uint64_t k = 3, trials = 1000, r_max = 3, value_cap = 64;
    std::optional<std::uint64_t> seed;
    bool spectral = false;
    unsigned workers = 1;
};

int run_experiment_cmd(const ExperimentArgs& a, bool flags_given) {
    ExperimentPlan plan;
    if (!a.plan_file.empty()) {
        if (flags_given) throw usage_error("--plan cannot be combined with plan flags");
        std::ifstream in(a.plan_file);
        if (!in) throw invalid_input("cannot open plan '" + a.plan_file + "'");
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw invalid_input(std::string("plan is not valid JSON: ") + e.what());
        }
        plan = plan_from_json(j);
    } else {
        if (a.n_list.empty() || a.regime.empty()) throw usage_error("experiment needs --plan or --n and --regime");
        plan.n_list = a.n_list;
        plan.k = a.k;
        plan.regime = regime_arg(a.regime);
        plan.trials = a.trials;
        plan.master_seed = a.seed ? *a.seed : default_seed();
        plan.collect_spectral = a.spectral;
        plan.r_max = a.r_max;
        plan.value_cap = a.value_cap;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto summary = run_experiment(plan, a.workers);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto text = to_json(summary).dump(2) + '\n';
    if (a.out.empty()) std::cout << text;
    else write_text(a.out, text);
    if (!a.histograms.empty()) {
        std::filesystem::create_directories(a.histograms);
        for (const auto& s : summary.per_n)
            for (const auto& [name, hist] : s.histograms)
                write_text((std::filesystem::path(a.histograms) /
                            ("n" + std::to_string(s.n) + "_" + name + ".csv")).string(),
                           histogram_to_csv(hist, s.trials));
    }
    std::cerr << "wall time: " << seconds << " s\n";
    for (const auto& s : summary.per_n)
        for (const auto& [stat, status] : s.oracle_status)
            if (status != "ok")
                std::cerr << "warning: n=" << s.n << " " << stat << " mean is " << s.z.at(stat)
                          << " standard errors from its exact expectation (" << status << ")\n";
    return summary.any_fatal() ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Star collisions, units and spectral splits of random k-uniform hypergraphs"};
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);

    SampleArgs sample_args;
    auto* sample_cmd = app.add_subcommand("sample", "Sample H(n, k, p) and write a .hg file");
    sample_cmd->add_option("--n", sample_args.n, "Vertex count")->required()->check(CLI::PositiveNumber);
    sample_cmd->add_option("--k", sample_args.k, "Uniformity")->required()->check(CLI::Range(2, 1 << 30));
    sample_cmd->add_option("--regime", sample_args.regime, "p=<x> | lambda=<x> | log+c=<x> | halfloglog+w=<x>")
        ->required();
    sample_cmd->add_option("--seed", sample_args.seed, "Master seed (default: $HYPERSTAR_SEED or 0)");
    sample_cmd->add_option("--out", sample_args.out, "Output .hg path (default: stdout)");

    std::string census_file;
    bool census_csv = false, census_json = false;
    auto* census_cmd = app.add_subcommand("census", "Star-collision census of a .hg file");
    census_cmd->add_option("file", census_file, "Input .hg file")->required();
    auto* csv_flag = census_cmd->add_flag("--csv", census_csv, "CSV output");
    census_cmd->add_flag("--json", census_json, "JSON output (default)")->excludes(csv_flag);

    ExpectArgs expect_args;
    auto* expect_cmd = app.add_subcommand("expect", "Exact and asymptotic expectations of the census");
    expect_cmd->add_option("--n", expect_args.n, "Vertex count")->required()->check(CLI::PositiveNumber);
    expect_cmd->add_option("--k", expect_args.k, "Uniformity")->required()->check(CLI::Range(2, 1 << 30));
    auto* p_opt = expect_cmd->add_option("--p", expect_args.p, "Edge probability")->check(CLI::Range(0.0, 1.0));
    expect_cmd->add_option("--regime", expect_args.regime, "Degree regime")->excludes(p_opt);
    expect_cmd->add_option("--r", expect_args.r, "Support size (default: 0..3)");

    std::uint64_t limits_k = 0;
    std::string limits_regime;
    auto* limits_cmd = app.add_subcommand("limits", "Limit laws of the census in a regime");
    limits_cmd->add_option("--k", limits_k, "Uniformity")->required()->check(CLI::Range(2, 1 << 30));
    limits_cmd->add_option("--regime", limits_regime, "Degree regime")->required();

    std::string matrix_file, matrix_kernel = "codegree", matrix_out, matrix_quotient;
    auto* matrix_cmd = app.add_subcommand("matrix", "Export a star-dependent matrix as CSV");
    matrix_cmd->add_option("file", matrix_file, "Input .hg file")->required();
    matrix_cmd->add_option("--kernel", matrix_kernel, "codegree | banerjee | laplacian | randomwalk");
    matrix_cmd->add_option("--out", matrix_out, "Output CSV (default: stdout)");
    matrix_cmd->add_option("--quotient", matrix_quotient, "Also write the unit contraction as CSV");

    std::string check_file, check_kernel = "codegree";
    double check_tol = 1e-8;
    bool check_json = false;
    auto* check_cmd = app.add_subcommand("check", "Verify the spectral split of a star-dependent matrix");
    check_cmd->add_option("file", check_file, "Input .hg file")->required();
    check_cmd->add_option("--kernel", check_kernel, "codegree | banerjee | laplacian");
    check_cmd->add_option("--tol", check_tol, "Absolute eigenvalue matching tolerance")->check(CLI::NonNegativeNumber);
    check_cmd->add_flag("--json", check_json, "Print the report as JSON");

    ExperimentArgs exp_args;
    std::string n_text;
    auto* exp_cmd = app.add_subcommand("experiment", "Seeded Monte Carlo experiment");
    exp_cmd->add_option("--plan", exp_args.plan_file, "Plan JSON file");
    auto* n_opt = exp_cmd->add_option("--n", exp_args.n_list, "Vertex count(s)")->delimiter(',');
    auto* k_opt = exp_cmd->add_option("--k", exp_args.k, "Uniformity")->check(CLI::Range(2, 1 << 30));
    auto* regime_opt = exp_cmd->add_option("--regime", exp_args.regime, "Degree regime");
    auto* trials_opt = exp_cmd->add_option("--trials", exp_args.trials, "Trials per n")->check(CLI::PositiveNumber);
    auto* seed_opt = exp_cmd->add_option("--seed", exp_args.seed, "Master seed (default: $HYPERSTAR_SEED or 0)");
    auto* rmax_opt = exp_cmd->add_option("--r-max", exp_args.r_max, "Largest support size tracked")->check(CLI::Range(2, 1000));
    auto* cap_opt = exp_cmd->add_option("--value-cap", exp_args.value_cap, "pmf value cap");
    auto* spectral_opt = exp_cmd->add_flag("--spectral", exp_args.spectral, "Also verify spectral splits");
    exp_cmd->add_option("--out", exp_args.out, "Results JSON (default: stdout)");
    exp_cmd->add_option("--workers", exp_args.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
    exp_cmd->add_option("--histograms", exp_args.histograms, "Directory for histogram CSVs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*sample_cmd) return run_sample(sample_args);
        if (*census_cmd) return run_census(census_file, census_csv);
        if (*expect_cmd) return run_expect(expect_args);
        if (*limits_cmd) return run_limits(limits_k, limits_regime);
        if (*matrix_cmd) return run_matrix(matrix_file, matrix_kernel, matrix_out, matrix_quotient);
        if (*check_cmd) return run_check(check_file, check_kernel, check_tol, check_json);
        if (*exp_cmd) {
            bool flags = false;
            for (auto* opt : {n_opt, k_opt, regime_opt, trials_opt, seed_opt, rmax_opt, cap_opt, spectral_opt})
                flags = flags || opt->count() > 0;
            return run_experiment_cmd(exp_args, flags);
        }
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
