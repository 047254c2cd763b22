#include <hyperstar/collisions.hpp>
#include <hyperstar/linalg.hpp>
#include <hyperstar/sampler.hpp>
#include <hyperstar/spectral.hpp>
#include <hyperstar/star_matrix.hpp>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace hyperstar;

namespace {

Hypergraph single_edge() { return Hypergraph::create(4, 3, {{0, 1, 2}}); }
Hypergraph two_edges() { return Hypergraph::create(5, 3, {{0, 1, 2}, {0, 1, 3}}); }

DenseMatrix dense(std::size_t n, std::initializer_list<double> values) { return DenseMatrix(n, n, std::vector<double>(values)); }

void expect_all_near(const std::vector<double>& got, const std::vector<double>& want, double tol) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], tol) << "index " << i;
}

std::vector<double> eigen_oracle(const DenseMatrix& m) {
    Eigen::MatrixXd a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

} // namespace

TEST(StarMatrix, Codegree) {
    auto m = build_matrix(single_edge(), codegree_kernel());
    EXPECT_EQ(m.entries, dense(4, {1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0}));
    EXPECT_EQ(build_matrix(Hypergraph::create(4, 3, {}), codegree_kernel()).entries, DenseMatrix(4, 4));
}

TEST(StarMatrix, RandomWalkRows) {
    auto m = build_matrix(single_edge(), randomwalk_kernel());
    EXPECT_EQ(m.entries, dense(4, {0, .5, .5, 0, .5, 0, .5, 0, .5, .5, 0, 0, 0, 0, 0, 0}));
    auto g = build_matrix(sample({30, 3, 4}, FixedLambda{2.0}), randomwalk_kernel());
    auto h = sample({30, 3, 4}, FixedLambda{2.0});
    for (std::size_t u = 0; u < 30; ++u) {
        double row = 0.0;
        for (double x : g.entries.row(u)) row += x;
        EXPECT_NEAR(row, h.degree(static_cast<vertex_t>(u)) ? 1.0 : 0.0, 1e-12);
    }
}

TEST(StarMatrix, KernelEntries) {
    auto h = two_edges();
    auto b = build_matrix(h, banerjee_kernel());
    EXPECT_DOUBLE_EQ(b(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(b(0, 2), 0.5);
    EXPECT_DOUBLE_EQ(b(0, 0), 0.0);
    auto l = build_matrix(h, laplacian_kernel());
    EXPECT_DOUBLE_EQ(l(0, 0), 2.0);
    EXPECT_DOUBLE_EQ(l(0, 1), -1.0);
    EXPECT_DOUBLE_EQ(l(2, 3), 0.0);
    EXPECT_THROW(kernel_by_name("adjacency"), invalid_input);
}

TEST(StarMatrix, NonFiniteEntryNamesVertex) {
    StarKernel bad{"bad", [](StarSpan a, StarSpan, const Hypergraph&) { return 1.0 / static_cast<double>(a.size()); },
                   [](StarSpan, const Hypergraph&) { return 0.0; }, true};
    try {
        build_matrix(single_edge(), bad);
        FAIL();
    } catch (const numeric_error& e) {
        EXPECT_NE(std::string(e.what()).find("vertex 3"), std::string::npos) << e.what();
    }
}

TEST(Equitable, UnitPartitionIsExactlyEquitable) {
    for (const auto& name : {"codegree", "banerjee", "laplacian", "randomwalk"}) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            auto h = sample({40, 3, seed}, FixedLambda{1.0});
            auto check = verify_equitable(build_matrix(h, kernel_by_name(name)), build_partition(h), 0.0);
            ASSERT_TRUE(check.equitable);
            ASSERT_EQ(check.max_deviation, 0.0);
        }
    }
}

TEST(Equitable, PerturbationDetected) {
    auto h = single_edge();
    auto m = build_matrix(h, codegree_kernel());
    m.entries(0, 3) += 1.0;
    EXPECT_FALSE(verify_equitable(m, build_partition(h), 1e-12).equitable);
    std::vector<std::vector<vertex_t>> singletons{{0}, {1}, {2}, {3}};
    EXPECT_TRUE(verify_equitable(m, singletons, 0.0).equitable);
    std::vector<std::vector<vertex_t>> overlapping{{0, 1}, {1, 2, 3}};
    EXPECT_THROW(verify_equitable(m, overlapping, 0.0), invalid_input);
}

TEST(Quotient, Examples) {
    auto h = single_edge();
    auto q = quotient(build_matrix(h, codegree_kernel()), build_partition(h));
    EXPECT_EQ(q.parts, (std::vector<std::vector<vertex_t>>{{0, 1, 2}, {3}}));
    EXPECT_EQ(q.beta, dense(2, {3, 0, 0, 0}));

    auto g = two_edges();
    auto r = quotient(build_matrix(g, codegree_kernel()), build_partition(g));
    EXPECT_EQ(r.parts, (std::vector<std::vector<vertex_t>>{{0, 1}, {2}, {3}, {4}}));
    EXPECT_EQ(r.beta, dense(4, {4, 1, 1, 0, 2, 1, 0, 0, 2, 0, 1, 0, 0, 0, 0, 0}));

    auto e = Hypergraph::create(4, 3, {});
    EXPECT_EQ(quotient(build_matrix(e, codegree_kernel()), build_partition(e)).beta, DenseMatrix(4, 4));
    EXPECT_NE(quotient_to_csv(q).find("# parts: {0,1,2} {3}"), std::string::npos);
}

TEST(Lift, Examples) {
    auto h = single_edge();
    auto p = build_partition(h);
    std::vector<double> ones{1, 1}, indicator{1, 0};
    EXPECT_EQ(lift(p, ones), (std::vector<double>{1, 1, 1, 1}));
    EXPECT_EQ(lift(p, indicator), (std::vector<double>{1, 1, 1, 0}));
    auto m = build_matrix(h, codegree_kernel());
    EXPECT_EQ(multiply(m.entries, lift(p, indicator)), (std::vector<double>{3, 3, 3, 0}));
    std::vector<double> wrong{1};
    EXPECT_THROW(lift(p, wrong), invalid_input);
}

TEST(Lift, EigenpairsOfQuotientLift) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto h = sample({25, 3, seed}, FixedLambda{1.5});
        auto p = build_partition(h);
        auto m = build_matrix(h, laplacian_kernel());
        auto q = quotient(m, p);
        // power-free check: beta f = α f  implies  M lift(f) = α lift(f)
        Eigen::MatrixXd beta(q.beta.rows(), q.beta.cols());
        for (std::size_t i = 0; i < q.beta.rows(); ++i)
            for (std::size_t j = 0; j < q.beta.cols(); ++j) beta(i, j) = q.beta(i, j);
        Eigen::EigenSolver<Eigen::MatrixXd> solver(beta);
        for (Eigen::Index c = 0; c < beta.cols(); ++c) {
            if (std::fabs(solver.eigenvalues()(c).imag()) > 1e-12) continue;
            Eigen::VectorXd f = solver.eigenvectors().col(c).real();
            std::vector<double> fv(f.data(), f.data() + f.size());
            auto x = lift(p, fv);
            auto mx = multiply(m.entries, x);
            const double alpha = solver.eigenvalues()(c).real();
            for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(mx[i], alpha * x[i], 1e-9);
        }
    }
}

TEST(LocalBasis, Examples) {
    auto a = local_basis(build_partition(single_edge()));
    ASSERT_EQ(a.size(), 2u);
    EXPECT_EQ(a[0], (std::vector<double>{1, -1, 0, 0}));
    EXPECT_EQ(a[1], (std::vector<double>{1, 0, -1, 0}));
    EXPECT_TRUE(local_basis(build_partition(Hypergraph::create(4, 3, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}))).empty());
    auto b = local_basis(build_partition(two_edges()));
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0], (std::vector<double>{1, -1, 0, 0, 0}));
}

TEST(UnitEigenvalues, Examples) {
    auto h = single_edge();
    auto p = build_partition(h);
    EXPECT_EQ(unit_eigenvalues(build_matrix(h, codegree_kernel()), p), (std::vector<double>{0, 0}));
    EXPECT_EQ(unit_eigenvalues(build_matrix(h, laplacian_kernel()), p), (std::vector<double>{1.5, 1.5}));
    auto g = two_edges();
    EXPECT_EQ(unit_eigenvalues(build_matrix(g, codegree_kernel()), build_partition(g)), (std::vector<double>{0}));
}

TEST(Jacobi, Examples) {
    expect_all_near(symmetric_eigenvalues(DenseMatrix(4, 4)), {0, 0, 0, 0}, 1e-15);
    expect_all_near(symmetric_eigenvalues(build_matrix(single_edge(), codegree_kernel()).entries), {0, 0, 0, 3}, 1e-12);
    expect_all_near(symmetric_eigenvalues(build_matrix(two_edges(), codegree_kernel()).entries), {0, 0, 0, 1, 5}, 1e-12);
    EXPECT_THROW(symmetric_eigenvalues(dense(2, {0, 1, 0, 0})), invalid_input);
}

TEST(Jacobi, MatchesEigenOnRandomSymmetricMatrices) {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss;
    for (std::size_t n : {1, 2, 3, 7, 20, 64, 150}) {
        DenseMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = gauss(rng);
        auto ours = symmetric_eigenvalues(a);
        auto ref = eigen_oracle(a);
        double trace = 0.0, sum = 0.0, sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            trace += a(i, i);
            sum += ours[i];
            sq += ours[i] * ours[i];
        }
        EXPECT_NEAR(sum, trace, 1e-10 * n);
        EXPECT_NEAR(std::sqrt(sq), frobenius_norm(a), 1e-10 * n);
        expect_all_near(ours, ref, 1e-10 * static_cast<double>(n));
    }
}

TEST(Jacobi, MatchesEigenOnStarMatrices) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto h = sample({60, 3, seed}, FixedLambda{1.0 + 0.1 * static_cast<double>(seed)});
        for (const auto& name : {"codegree", "banerjee", "laplacian"}) {
            auto m = build_matrix(h, kernel_by_name(name)).entries;
            expect_all_near(symmetric_eigenvalues(m), eigen_oracle(m), 1e-9);
        }
    }
}

TEST(Esd, Examples) {
    std::vector<double> a{0, 1, 2}, zero{0}, one{1}, m{0, 0, 0, 3}, q{0, 3};
    EXPECT_EQ(esd_kolmogorov(a, a), 0.0);
    EXPECT_EQ(esd_kolmogorov(zero, one), 1.0);
    EXPECT_DOUBLE_EQ(esd_kolmogorov(m, q), 0.25);
    EXPECT_THROW(esd_kolmogorov(std::vector<double>{}, a), invalid_input);
}

TEST(SpectralSplit, Examples) {
    auto r = spectral_split_check(single_edge(), codegree_kernel());
    EXPECT_TRUE(r.matched);
    expect_all_near(r.spec_M, {0, 0, 0, 3}, 1e-12);
    expect_all_near(r.spec_quotient, {0, 3}, 1e-12);
    EXPECT_EQ(r.unit_eigs, (std::vector<double>{0, 0}));
    EXPECT_EQ(r.dim_loc, 2u);
    EXPECT_DOUBLE_EQ(r.esd_distance, 0.25);
    EXPECT_LE(r.esd_distance, 0.5);

    auto s = spectral_split_check(two_edges(), codegree_kernel());
    EXPECT_TRUE(s.matched);
    expect_all_near(s.spec_M, {0, 0, 0, 1, 5}, 1e-12);
    expect_all_near(s.spec_quotient, {0, 0, 1, 5}, 1e-12);
    EXPECT_EQ(s.unit_eigs, (std::vector<double>{0}));

    auto t = spectral_split_check(Hypergraph::create(4, 3, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}),
                                  laplacian_kernel());
    EXPECT_TRUE(t.unit_eigs.empty());
    EXPECT_EQ(t.spec_M, t.spec_quotient);
    EXPECT_THROW(spectral_split_check(single_edge(), randomwalk_kernel()), invalid_input);
}

TEST(SpectralSplit, RandomInstances) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto h = sample({20 + seed, 3, seed}, FixedLambda{0.5 + 0.04 * static_cast<double>(seed)});
        for (const auto& name : {"codegree", "banerjee", "laplacian"}) {
            auto r = spectral_split_check(h, kernel_by_name(name));
            ASSERT_TRUE(r.matched) << name << " seed " << seed;
            ASSERT_LE(r.max_match_error, 1e-8);
            ASSERT_EQ(r.equitable_deviation, 0.0);
            ASSERT_LE(r.esd_distance, static_cast<double>(r.dim_loc) / static_cast<double>(r.n));
        }
    }
}

TEST(Dynamics, Examples) {
    auto h = single_edge();
    auto zero = StarMatrix{"zero", DenseMatrix(4, 4)};
    std::vector<double> x0{1, 2, 3, 4};
    auto traj = propagate(zero, x0, 3);
    ASSERT_EQ(traj.size(), 4u);
    EXPECT_EQ(traj[1], (std::vector<double>(4, 0.0)));

    auto m = build_matrix(h, codegree_kernel());
    std::vector<double> eig{1, 1, 1, 0};
    auto t2 = propagate(m, eig, 5);
    for (std::size_t t = 0; t <= 5; ++t)
        for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(t2[t][i], std::pow(3.0, t) * eig[i], 1e-9 * std::pow(3.0, t));

    auto g = two_edges();
    auto l = build_matrix(g, laplacian_kernel());
    std::vector<double> local{1, -1, 0, 0, 0};
    const double alpha = l(0, 0) - l(0, 1);
    auto t3 = propagate(l, local, 6);
    for (std::size_t t = 0; t <= 6; ++t)
        for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(t3[t][i], std::pow(alpha, t) * local[i], 1e-9);
}

TEST(Dynamics, UnitSync) {
    auto h = single_edge();
    auto p = build_partition(h);
    std::vector<double> ones(4, 1.0), local{1, -1, 0, 0};
    for (const auto& name : {"codegree", "banerjee", "laplacian", "randomwalk"}) {
        auto m = build_matrix(h, kernel_by_name(name));
        EXPECT_TRUE(unit_sync_preserved(m, p, ones, 20, 1e-8));
        EXPECT_THROW(unit_sync_preserved(m, p, local, 5, 1e-8), invalid_input);
    }
}
