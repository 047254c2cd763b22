#include <hyperstar/distributions.hpp>
#include <hyperstar/montecarlo.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace hyperstar;

TEST(Distributions, PoissonPmf) {
    EXPECT_EQ(poisson_pmf(0.0, 0), 1.0);
    EXPECT_EQ(poisson_pmf(0.0, 3), 0.0);
    EXPECT_NEAR(poisson_pmf(2.0, 3), 8.0 / 6.0 * std::exp(-2.0), 1e-15);
    EXPECT_NEAR(poisson_law(3.0, 64).total(), 1.0, 1e-12);
    EXPECT_THROW(poisson_pmf(-1.0, 0), invalid_input);
}

TEST(Distributions, ChooseTwoOfPoisson) {
    auto law = x0_limit_pmf(0.0);
    EXPECT_NEAR(law.at(0), 2.0 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(law.at(1), std::exp(-1.0) / 2.0, 1e-15);
    EXPECT_NEAR(law.at(3), std::exp(-1.0) / 6.0, 1e-15);
    EXPECT_EQ(law.at(2), 0.0);
    EXPECT_NEAR(law.total(), 1.0, 1e-12);
    auto shifted = x0_limit_pmf(-2.0, 10);  // mean e^2, heavy mass past the cap
    EXPECT_GT(shifted.overflow, 0.5);
    EXPECT_NEAR(shifted.total(), 1.0, 1e-12);
}

TEST(Distributions, TotalVariation) {
    Pmf point{64, {{0, 1.0}}, 0.0};
    Pmf split{64, {{0, 0.5}, {1, 0.5}}, 0.0};
    Pmf far{64, {{7, 1.0}}, 0.0};
    Pmf tail{64, {}, 1.0};
    EXPECT_EQ(tv_distance(split, split), 0.0);
    EXPECT_EQ(tv_distance(point, far), 1.0);
    EXPECT_DOUBLE_EQ(tv_distance(point, split), 0.5);
    EXPECT_EQ(tv_distance(point, tail), 1.0);
    Pmf unnormalised{64, {{0, 0.7}}, 0.0};
    EXPECT_THROW(tv_distance(point, unnormalised), invalid_input);
    Pmf other_cap{10, {{0, 1.0}}, 0.0};
    EXPECT_THROW(tv_distance(point, other_cap), invalid_input);
}

TEST(Plan, JsonRoundTrip) {
    ExperimentPlan plan;
    plan.n_list = {100, 200};
    plan.k = 4;
    plan.regime = HalfLogLogPlusW{0.5};
    plan.trials = 17;
    plan.master_seed = 99;
    plan.value_cap = 12;
    auto back = plan_from_json(to_json(plan));
    EXPECT_EQ(to_json(back), to_json(plan));
    EXPECT_THROW(plan_from_json(nlohmann::json{{"regime", "p=0.1"}}), invalid_input);
    EXPECT_THROW(plan_from_json(nlohmann::json{{"n_list", {5}}, {"k", 3}, {"regime", "lambda=10"}}), infeasible_regime);
    EXPECT_THROW(plan_from_json(nlohmann::json{{"n_list", {5000}}, {"regime", "lambda=1"}, {"collect_spectral", true}}),
                 capacity_error);
}

TEST(Experiment, EmptyHypergraphsGivePointMass) {
    ExperimentPlan plan;
    plan.n_list = {100};
    plan.regime = FixedP{0.0};
    plan.trials = 10;
    plan.value_cap = 5000;
    auto s = run_experiment(plan).per_n.at(0);
    EXPECT_EQ(s.pmf.at("X0").at(4950), 1.0);
    EXPECT_EQ(s.histograms.at("X0").size(), 1u);
    EXPECT_EQ(s.events.at("X0_eq_0"), 0.0);
    EXPECT_EQ(s.oracle_status.at("X0"), "ok");
    EXPECT_EQ(s.oracle_status.at("X1"), "ok");

    plan.value_cap = 64;  // 4950 lands in the overflow bucket
    EXPECT_EQ(run_experiment(plan).per_n.at(0).pmf.at("X0").overflow, 1.0);
}

TEST(Experiment, MeanX1MatchesOracleOnTinyInstances) {
    ExperimentPlan plan;
    plan.n_list = {4};
    plan.regime = FixedP{0.5};
    plan.trials = 1000000;
    plan.master_seed = 2024;
    auto s = run_experiment(plan).per_n.at(0);
    EXPECT_DOUBLE_EQ(s.expected_X.at(1), 0.75);
    EXPECT_LE(std::fabs(s.moments.at("X1").mean - 0.75), 4.0 * s.moments.at("X1").standard_error);
    EXPECT_LE(std::fabs(s.z.at("X1")), 4.0);
    EXPECT_EQ(s.violations.at("dim_loc_ne_Y_without_large_units"), 0u);
}

TEST(Experiment, ResultsIndependentOfWorkerCount) {
    ExperimentPlan plan;
    plan.n_list = {30, 50};
    plan.regime = FixedLambda{1.5};
    plan.trials = 300;
    plan.master_seed = 5;
    plan.collect_spectral = true;
    const auto one = to_json(run_experiment(plan, 1)).dump();
    EXPECT_EQ(one, to_json(run_experiment(plan, 4)).dump());
    EXPECT_EQ(one, to_json(run_experiment(plan, 8)).dump());
    plan.master_seed = 6;
    EXPECT_NE(one, to_json(run_experiment(plan, 1)).dump());
}

TEST(Experiment, SpectralTallies) {
    ExperimentPlan plan;
    plan.n_list = {40};
    plan.regime = FixedLambda{1.0};
    plan.trials = 50;
    plan.collect_spectral = true;
    auto s = run_experiment(plan).per_n.at(0);
    for (const auto& name : spectral_kernel_names()) {
        EXPECT_EQ(s.spectral.at(name).passed, 50u) << name;
        EXPECT_EQ(s.spectral.at(name).esd_bound_held, 50u) << name;
    }
}

TEST(Experiment, HistogramCsv) {
    std::map<std::uint64_t, std::uint64_t> hist{{0, 3}, {2, 1}};
    EXPECT_EQ(histogram_to_csv(hist, 4), "value,count,probability\n0,3,0.75\n2,1,0.25\n");
}
