#include <cmath>
#include <doctest.h>
#include <random>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "rkbs/errors.hpp"
#include "rkbs/learn.hpp"

using namespace rkbs;
using oracles::random_vec;

namespace {

// m sample points in the interior of the pair's B1 domain, kept a fixed
// distance apart so the feature columns stay well conditioned
std::vector<double> sample_points(const RkbsPair& pair, int m, std::mt19937_64& rng) {
    const double lo = pair.map1.domain_min() + 0.05, hi = pair.map1.domain_max() - 0.05;
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> pts;
    while (static_cast<int>(pts.size()) < m) {
        const double x = u(rng);
        bool fresh = true;
        for (double p : pts) fresh = fresh && std::abs(p - x) > 0.12;
        if (fresh) pts.push_back(x);
    }
    return pts;
}

Vec random_targets(int m, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec t(m);
    for (int j = 0; j < m; ++j) t[j] = u(rng);
    return t;
}

// columns Phi1(x_j), the constraint functionals of the interpolation problem
Eigen::MatrixXd feature_columns(const RkbsPair& pair, const std::vector<double>& xs) {
    Eigen::MatrixXd cols(pair.space1.dim, static_cast<Eigen::Index>(xs.size()));
    for (size_t j = 0; j < xs.size(); ++j) cols.col(static_cast<Eigen::Index>(j)) = feature(pair.map1, xs[j]);
    return cols;
}

double max_data_residual(const RkbsPair& pair, const Vec& v, const SampleSet& samples) {
    double r = 0.0;
    for (int j = 0; j < samples.size(); ++j)
        r = std::max(r, std::abs(eval(pair, BFunction{Side::B1, v}, samples.x[static_cast<size_t>(j)]) -
                                 samples.t[j]));
    return r;
}

}  // namespace

TEST_SUITE("learn") {

TEST_CASE("sample set validation") {
    Vec t(2);
    t << 1.0, 2.0;
    CHECK_NOTHROW(SampleSet({0.1, 0.2}, t));
    CHECK_THROWS_AS(SampleSet({0.1}, t), ConfigError);
    CHECK_THROWS_AS(SampleSet({}, Vec()), ConfigError);
    CHECK_THROWS_AS(SampleSet({0.1, 0.1}, t), ConfigError);
    t[1] = std::nan("");
    CHECK_THROWS_AS(SampleSet({0.1, 0.2}, t), ConfigError);
}

TEST_CASE("hilbert case reduces to the gram solve") {
    std::mt19937_64 rng(71);
    const auto pair = make_gaussian_rkhs(25);
    for (int inst = 0; inst < 3; ++inst) {
        const auto xs = sample_points(pair, 4, rng);
        const SampleSet samples(xs, random_targets(4, rng));
        const auto rep = min_norm_interpolate(pair, samples);
        REQUIRE(rep.converged);

        const Eigen::MatrixXd F = feature_columns(pair, xs);
        const Eigen::MatrixXd G = F.transpose() * F;  // counting weights
        const Vec c = G.ldlt().solve(samples.t);
        const Vec v_exact = F * c;
        CHECK((rep.coef - v_exact).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(rep.norm_value == doctest::Approx(v_exact.norm()).epsilon(1e-8));
        CHECK(rep.constraint_residual < 1e-8);
        CHECK(rep.representer_residual < 1e-6);
        CHECK(rep.representer_coeffs.size() == 4);
    }
}

TEST_CASE("interpolation for non-hilbert smooth norms") {
    std::mt19937_64 rng(72);
    for (double p : {1.5, 3.0}) {
        const auto pair = make_power_mercer(p, 20);
        const auto xs = sample_points(pair, 3, rng);
        const SampleSet samples(xs, random_targets(3, rng));
        const auto rep = min_norm_interpolate(pair, samples);
        CHECK(rep.converged);
        CHECK(rep.constraint_residual < 1e-8);
        CHECK(max_data_residual(pair, rep.coef, samples) < 1e-8);
        CHECK(rep.representer_residual < 1e-6);
        CHECK(rep.multistart_spread < 1e-6);
        // every other interpolant of the same data has at least this norm:
        // perturb inside the null space of the constraint matrix so the
        // competitor stays exactly feasible
        const Eigen::MatrixXd A = feature_columns(pair, xs).transpose();
        const Eigen::MatrixXd null_proj =
            Eigen::MatrixXd::Identity(20, 20) - A.transpose() * (A * A.transpose()).ldlt().solve(A);
        for (int trial = 0; trial < 10; ++trial) {
            const Vec competitor = rep.coef + null_proj * (0.3 * random_vec(rng, 20));
            CHECK(max_data_residual(pair, competitor, samples) < 1e-8);
            CHECK(norm(pair.space2, competitor) >= rep.norm_value - 1e-7);
        }
    }
}

TEST_CASE("entropy-orlicz interpolation") {
    std::mt19937_64 rng(73);
    const auto pair = make_entropy_orlicz(15);
    const auto xs = sample_points(pair, 3, rng);
    const SampleSet samples(xs, random_targets(3, rng));
    const auto rep = min_norm_interpolate(pair, samples);
    CHECK(rep.converged);
    CHECK(rep.constraint_residual < 1e-8);
    CHECK(rep.representer_residual < 1e-6);
    const auto oracle = min_norm_oracle(pair, samples);
    CHECK(rep.norm_value == doctest::Approx(oracle.norm_value).epsilon(1e-5));
}

TEST_CASE("zero targets give the zero function") {
    std::mt19937_64 rng(74);
    const auto pair = make_power_mercer(1.5, 12);
    const auto xs = sample_points(pair, 3, rng);
    const auto rep = min_norm_interpolate(pair, SampleSet(xs, Vec::Zero(3)));
    CHECK(rep.converged);
    CHECK(rep.coef.cwiseAbs().maxCoeff() == 0.0);
    CHECK(rep.norm_value == 0.0);
}

TEST_CASE("penalized oracle agrees with the interpolator across instances") {
    std::mt19937_64 rng(75);
    const double ps[] = {1.5, 2.0, 3.0};
    for (int inst = 0; inst < 20; ++inst) {
        const auto pair = inst % 5 == 4 ? make_entropy_orlicz(10 + (inst % 3) * 2)
                                        : make_power_mercer(ps[inst % 3], 12 + (inst % 4) * 2);
        const int m = 2 + inst % 3;
        const auto xs = sample_points(pair, m, rng);
        const SampleSet samples(xs, random_targets(m, rng));
        const auto direct = min_norm_interpolate(pair, samples);
        const auto oracle = min_norm_oracle(pair, samples);
        CHECK(direct.norm_value == doctest::Approx(oracle.norm_value).epsilon(1e-5));
        CHECK(oracle.constraint_residual < 1e-5);
    }
}

TEST_CASE("oracle rejects sizes beyond its design envelope") {
    std::mt19937_64 rng(76);
    const auto pair = make_power_mercer(2.0, 201);
    const auto xs = sample_points(pair, 2, rng);
    CHECK_THROWS_AS(min_norm_oracle(pair, SampleSet(xs, random_targets(2, rng))), ConfigError);
    const auto small = make_power_mercer(2.0, 30);
    const auto xs11 = sample_points(small, 11, rng);
    CHECK_THROWS_AS(min_norm_oracle(small, SampleSet(xs11, random_targets(11, rng))), ConfigError);
}

TEST_CASE("rank-deficient features: consistent targets solve in the feasible subspace") {
    std::mt19937_64 rng(77);
    // four constraints through a three-dimensional feature space
    const auto pair = make_power_mercer(2.0, 3);
    const auto xs = sample_points(pair, 4, rng);
    const Eigen::MatrixXd F = feature_columns(pair, xs);
    const Vec v_true = random_vec(rng, 3);
    const Vec t = F.transpose() * v_true;  // counting weights make this f_v(x_j)
    const auto rep = min_norm_interpolate(pair, SampleSet(xs, t));
    CHECK(rep.converged);
    CHECK(rep.subspace_solution);
    CHECK(max_data_residual(pair, rep.coef, SampleSet(xs, t)) < 1e-8);
    CHECK(rep.norm_value <= v_true.norm() + 1e-8);
}

TEST_CASE("rank-deficient features: inconsistent targets are rejected") {
    std::mt19937_64 rng(78);
    const auto pair = make_power_mercer(2.0, 3);
    const auto xs = sample_points(pair, 4, rng);
    const Eigen::MatrixXd F = feature_columns(pair, xs);
    Vec t = F.transpose() * random_vec(rng, 3);
    t[3] += 0.5;  // push the last target off the feasible hyperplane
    CHECK_THROWS_AS(min_norm_interpolate(pair, SampleSet(xs, t)), SolverError);
}

TEST_CASE("regnet matches ridge regression at p=2 with square regularizer") {
    std::mt19937_64 rng(79);
    const auto pair = make_gaussian_rkhs(20);
    for (int inst = 0; inst < 3; ++inst) {
        const auto xs = sample_points(pair, 4, rng);
        const SampleSet samples(xs, random_targets(4, rng));
        const double lambda = 0.3 + 0.4 * inst;
        const auto rep = regnet(pair, samples, lambda);
        REQUIRE(rep.converged);
        const Eigen::MatrixXd F = feature_columns(pair, xs);
        Eigen::MatrixXd G = F.transpose() * F;
        G.diagonal().array() += lambda;
        const Vec v_ridge = F * G.ldlt().solve(samples.t);
        CHECK((rep.coef - v_ridge).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("regnet norm path is monotone in lambda") {
    std::mt19937_64 rng(80);
    const RkbsPair pairs[] = {make_power_mercer(1.5, 15), make_power_mercer(3.0, 15), make_entropy_orlicz(12)};
    for (const auto& pair : pairs) {
        const auto xs = sample_points(pair, 3, rng);
        const SampleSet samples(xs, random_targets(3, rng));
        double prev = -1.0;
        Vec warm;
        for (double lambda : {1e3, 1.0, 1e-2, 1e-5}) {
            const auto rep = regnet(pair, samples, lambda, Loss::square(), RegKind::Square, 1e-9, 2024,
                                    warm.size() > 0 ? &warm : nullptr);
            warm = rep.coef;
            if (prev >= 0.0) CHECK(rep.norm_value >= prev - 1e-8);
            prev = rep.norm_value;
        }
    }
}

TEST_CASE("regnet endpoints: huge lambda kills the fit, tiny lambda recovers min norm") {
    std::mt19937_64 rng(81);
    const auto pair = make_power_mercer(3.0, 15);
    const auto xs = sample_points(pair, 3, rng);
    const SampleSet samples(xs, random_targets(3, rng));
    const auto heavy = regnet(pair, samples, 1e8);
    CHECK(heavy.norm_value < 1e-6);
    const auto min_norm = min_norm_interpolate(pair, samples);
    Vec warm = min_norm.coef * 0.0;
    const double lambdas[] = {1e2, 1e-1, 1e-4, 1e-7, 1e-10};
    SolveReport light;
    for (double lambda : lambdas) {
        light = regnet(pair, samples, lambda, Loss::square(), RegKind::Square, 1e-9, 2024,
                       warm.cwiseAbs().maxCoeff() > 0.0 ? &warm : nullptr);
        warm = light.coef;
    }
    CHECK(light.norm_value == doctest::Approx(min_norm.norm_value).epsilon(1e-3));
}

TEST_CASE("identity regularizer returns the zero function above the dual threshold") {
    std::mt19937_64 rng(82);
    const auto pair = make_gaussian_rkhs(15);
    const auto xs = sample_points(pair, 3, rng);
    const SampleSet samples(xs, random_targets(3, rng));
    // the zero function is optimal once lambda dominates the dual norm of the
    // loss gradient at zero
    const Eigen::MatrixXd F = feature_columns(pair, xs);
    const Vec grad0 = F * (2.0 * -samples.t);  // d/dv sum (f_v(x)-t)^2 at v=0
    const double threshold = grad0.norm();     // l2 dual of l2
    const auto zero = regnet(pair, samples, 1.1 * threshold, Loss::square(), RegKind::Identity);
    CHECK(zero.converged);
    CHECK(zero.coef.cwiseAbs().maxCoeff() == 0.0);
    const auto live = regnet(pair, samples, 0.5 * threshold, Loss::square(), RegKind::Identity);
    CHECK(live.norm_value > 1e-4);
}

TEST_CASE("regnet validation") {
    std::mt19937_64 rng(83);
    const auto pair = make_gaussian_rkhs(10);
    const auto xs = sample_points(pair, 2, rng);
    const SampleSet samples(xs, random_targets(2, rng));
    CHECK_THROWS_AS(regnet(pair, samples, 0.0), ConfigError);
    CHECK_THROWS_AS(regnet(pair, samples, -1.0), ConfigError);
    CHECK_THROWS_AS(min_norm_interpolate(make_hat_delta(11), samples), ConfigError);  // l1 is not smooth
}

TEST_CASE("representer residual separates span members from outsiders") {
    std::mt19937_64 rng(84);
    const auto pair = make_gaussian_rkhs(20);
    const auto xs = sample_points(pair, 3, rng);
    const SampleSet samples(xs, random_targets(3, rng));
    CHECK(representer_residual(pair, Vec::Zero(20), samples) == 0.0);
    // at p=2 the norm gradient of v = F c is parallel to v itself
    const Eigen::MatrixXd F = feature_columns(pair, xs);
    Vec c(3);
    c << 1.0, -0.5, 2.0;
    const Vec inside = F * c;
    CHECK(representer_residual(pair, inside, samples) < 1e-10);
    const Vec outside = random_vec(rng, 20);
    const double r = representer_residual(pair, outside, samples);
    CHECK(r > 1e-3);
    CHECK(r <= 1.0 + 1e-12);
}

TEST_CASE("soft thresholding closed form on an identity design") {
    // delta features on both sides make the design the identity, so the
    // sparse fit decouples: v_i = sign(t_i) max(|t_i| - lambda/2, 0)
    Vec grid(4);
    grid << 0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0;
    const auto pair = make_rkbs_pair(FeatureSpace::counting(4, NormSpec::sup()),
                                     FeatureSpace::counting(4, NormSpec::l1()),
                                     FeatureMap::delta_grid(grid), FeatureMap::delta_grid(grid));
    Vec t(4);
    t << 1.0, -0.2, 0.05, 0.6;
    const std::vector<double> xs{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
    const double lambda = 0.3;
    const auto rep = l1_regnet(pair, SampleSet(xs, t), lambda);
    CHECK(rep.converged);
    for (int i = 0; i < 4; ++i) {
        const double expect = std::abs(t[i]) <= lambda / 2.0 ? 0.0 : t[i] - (t[i] > 0 ? 1 : -1) * lambda / 2.0;
        CHECK(rep.coef[i] == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(rep.support_size == 3);
}

TEST_CASE("lasso zero threshold and sparsity") {
    std::mt19937_64 rng(85);
    const auto pair = make_hat_delta(21);
    const auto xs = sample_points(pair, 4, rng);
    const SampleSet samples(xs, random_targets(4, rng));
    // above lambda_max = 2 ||A^T t||_inf the zero vector is stationary
    Eigen::MatrixXd A(4, 21);
    for (int j = 0; j < 4; ++j) A.row(j) = feature(pair.map1, xs[static_cast<size_t>(j)]).transpose();
    const double lambda_max = 2.0 * (A.transpose() * samples.t).cwiseAbs().maxCoeff();
    const auto zero = l1_regnet(pair, samples, 1.01 * lambda_max);
    CHECK(zero.support_size == 0);
    CHECK(zero.coef.cwiseAbs().maxCoeff() == 0.0);
    const auto live = l1_regnet(pair, samples, 0.05 * lambda_max);
    CHECK(live.support_size > 0);
    CHECK(live.support_size < 21);  // hat features overlap, the fit stays sparse
    CHECK(live.objective <= zero.objective + 1e-12);
    CHECK_THROWS_AS(l1_regnet(pair, samples, 0.0), ConfigError);
    // the l1 solver is only for l1-normed W2
    CHECK_THROWS_AS(l1_regnet(make_gaussian_rkhs(10), samples, 0.1), ConfigError);
}

TEST_CASE("spike recovery through the identity design") {
    // three spikes, samples exactly at the grid, moderate lambda: the support
    // comes back and off-spike coordinates stay zero
    const int n = 9;
    Vec grid(n);
    for (int i = 0; i < n; ++i) grid[i] = i / (n - 1.0);
    const auto pair = make_rkbs_pair(FeatureSpace::counting(n, NormSpec::sup()),
                                     FeatureSpace::counting(n, NormSpec::l1()),
                                     FeatureMap::delta_grid(grid), FeatureMap::delta_grid(grid));
    Vec t = Vec::Zero(n);
    t[1] = 2.0;
    t[4] = -1.5;
    t[7] = 1.0;
    std::vector<double> xs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) xs[static_cast<size_t>(i)] = grid[i];
    const auto rep = l1_regnet(pair, SampleSet(xs, t), 0.4);
    CHECK(rep.support_size == 3);
    CHECK(rep.coef[1] == doctest::Approx(1.8).epsilon(1e-10));
    CHECK(rep.coef[4] == doctest::Approx(-1.3).epsilon(1e-10));
    CHECK(rep.coef[7] == doctest::Approx(0.8).epsilon(1e-10));
}

}  // TEST_SUITE
