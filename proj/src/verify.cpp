#include "rkbs/verify.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include "rkbs/duality.hpp"
#include "rkbs/errors.hpp"
#include "rkbs/feature_space.hpp"
#include "rkbs/kernel.hpp"
#include "rkbs/learn.hpp"
#include "rkbs/rkbs_pair.hpp"
#include "rkbs/young.hpp"

namespace rkbs {

namespace {

struct Harness {
    std::ostream& out;
    bool all_ok = true;

    // A check returns "" on success, anything else is the failure detail.
    void run(const char* name, const std::function<std::string()>& check) {
        std::string detail;
        try {
            detail = check();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (detail.empty()) {
            out << "[ok]   " << name << "\n";
        } else {
            out << "[FAIL] " << name << ": " << detail << "\n";
            all_ok = false;
        }
    }
};

std::string expect(bool ok, const std::string& detail) { return ok ? std::string() : detail; }

std::string describe_gap(const char* what, double got, double want, double tol) {
    std::ostringstream s;
    s.precision(17);
    s << what << " got " << got << " want " << want << " (tol " << tol << ")";
    return s.str();
}

Vec random_vec(std::mt19937_64& rng, int n, double lo = -2.0, double hi = 2.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vec v(n);
    do {
        for (int i = 0; i < n; ++i) v[i] = u(rng);
    } while (v.lpNorm<Eigen::Infinity>() < 0.1);
    return v;
}

std::vector<NormSpec> smooth_specs() {
    const auto entropy = YoungPair::entropy();
    return {NormSpec::lp(1.5), NormSpec::lp(2.0), NormSpec::lp(3.0), NormSpec::orlicz_gauge(entropy),
            NormSpec::orlicz_dual(entropy)};
}

}  // namespace

bool verify_suite(uint64_t seed, std::ostream& out) {
    Harness h{out};
    std::mt19937_64 rng(seed);

    h.run("young inverse pairs", [&]() -> std::string {
        const std::vector<YoungPair> pairs = {YoungPair::power(2.0), YoungPair::power(3.0), YoungPair::entropy(),
                                              YoungPair::scaled_entropy(0.5)};
        for (const auto& pair : pairs)
            for (double t = 0.1; t <= 5.0; t += 0.37) {
                const double back = pair.psi(pair.phi(t));
                if (std::abs(back - t) > 1e-10 * std::max(1.0, t))
                    return describe_gap(("psi(phi(t)) for " + pair.describe()).c_str(), back, t, 1e-10);
            }
        return "";
    });

    h.run("young inequality gap", [&]() -> std::string {
        const std::vector<YoungPair> pairs = {YoungPair::power(2.5), YoungPair::entropy()};
        std::uniform_real_distribution<double> u(0.0, 4.0);
        for (const auto& pair : pairs)
            for (int i = 0; i < 200; ++i) {
                const double x = u(rng), y = u(rng);
                if (young_gap(pair, x, y) < -1e-12) return "negative gap at sampled (x, y)";
                if (young_gap(pair, pair.psi(y), y) > 1e-10) return "gap not closing at x = psi(y)";
            }
        return "";
    });

    h.run("power gauge norm equals p-norm", [&]() -> std::string {
        for (double p : {1.5, 2.0, 3.0}) {
            const auto pair = YoungPair::power(p);
            for (int i = 0; i < 20; ++i) {
                const Vec v = random_vec(rng, 7);
                Vec w = random_vec(rng, 7, 0.2, 2.0).cwiseAbs();
                const double gauge = gauge_norm(pair, v, w);
                const double lp = std::pow((w.array() * v.array().abs().pow(p)).sum(), 1.0 / p);
                if (std::abs(gauge - lp) > 1e-9 * lp) return describe_gap("gauge vs lp", gauge, lp, 1e-9);
            }
        }
        return "";
    });

    h.run("entropy norms match reference values", [&]() -> std::string {
        // High-precision reference evaluations of the two norms at (1, 2).
        const auto entropy = YoungPair::entropy();
        const Vec v = (Vec(2) << 1.0, 2.0).finished();
        const Vec w = Vec::Ones(2);
        const double gauge = gauge_norm(entropy, v, w);
        if (std::abs(gauge - 2.290641905452549) > 1e-11)
            return describe_gap("gauge (1,2)", gauge, 2.290641905452549, 1e-11);
        const double orlicz = orlicz_norm(entropy, v, w);
        if (std::abs(orlicz - 2.3160151977617607) > 1e-10)
            return describe_gap("orlicz (1,2)", orlicz, 2.3160151977617607, 1e-10);
        const double unit = gauge_norm(entropy, Vec::Ones(1), Vec::Ones(1));
        return expect(std::abs(unit - 1.0) <= 1e-12, "gauge of the unit vector is not 1");
    });

    h.run("orlicz norm equivalence band", [&]() -> std::string {
        const auto entropy = YoungPair::entropy();
        const double phi1 = entropy.Phi(1.0);
        for (int i = 0; i < 20; ++i) {
            const Vec v = random_vec(rng, 6);
            const Vec w = Vec::Ones(6);
            const double gauge = gauge_norm(entropy, v, w);
            const double orlicz = orlicz_norm(entropy, v, w);
            if (phi1 * gauge > orlicz + 1e-8 || orlicz > 2.0 * gauge + 1e-8)
                return describe_gap("band around gauge", orlicz, gauge, 1e-8);
        }
        return "";
    });

    h.run("duality map identities", [&]() -> std::string {
        for (const auto& spec : smooth_specs()) {
            const FeatureSpace space = FeatureSpace::counting(6, spec);
            const FeatureSpace dual_space = FeatureSpace::counting(6, spec.dual());
            for (int i = 0; i < 10; ++i) {
                const Vec f = random_vec(rng, 6);
                const Vec j = duality_map(space, f);
                const double nf = norm(space, f);
                const double pairing_value = pairing(space.weights, f, j);
                if (std::abs(pairing_value - nf * nf) > 1e-9 * (1.0 + nf * nf))
                    return describe_gap(("pairing(f, Jf) for " + spec.describe()).c_str(), pairing_value, nf * nf, 1e-9);
                const double dual = norm(dual_space, j);
                if (std::abs(dual - nf) > 1e-8 * (1.0 + nf))
                    return describe_gap(("dual norm of Jf for " + spec.describe()).c_str(), dual, nf, 1e-8);
            }
        }
        return "";
    });

    h.run("gateaux derivative vs finite differences", [&]() -> std::string {
        for (const auto& spec : smooth_specs()) {
            const FeatureSpace space = FeatureSpace::counting(6, spec);
            for (int i = 0; i < 10; ++i) {
                const Vec f = random_vec(rng, 6);
                const Vec dir = random_vec(rng, 6);
                const double analytic = pairing(space.weights, dir, gateaux_derivative(space, f));
                const double fd = gateaux_fd(space, f, dir, 1e-6);
                if (std::abs(analytic - fd) > 1e-5 * (1.0 + std::abs(fd)))
                    return describe_gap(("derivative for " + spec.describe()).c_str(), analytic, fd, 1e-5);
            }
        }
        return "";
    });

    h.run("semi-inner-product axioms", [&]() -> std::string {
        const std::vector<NormSpec> specs = {NormSpec::lp(3.0), NormSpec::orlicz_gauge(YoungPair::entropy())};
        std::uniform_real_distribution<double> scale(-3.0, 3.0);
        for (const auto& spec : specs) {
            const FeatureSpace space = FeatureSpace::counting(5, spec);
            for (int i = 0; i < 50; ++i) {
                const Vec f = random_vec(rng, 5), g2 = random_vec(rng, 5), target = random_vec(rng, 5);
                const double c = scale(rng);
                const double additivity =
                    std::abs(sip(space, f + g2, target).value - sip(space, f, target).value - sip(space, g2, target).value);
                if (additivity > 1e-10 * (1.0 + std::abs(sip(space, f, target).value)))
                    return "first-argument additivity broke";
                const double homogeneity = std::abs(sip(space, Vec(c * f), target).value - c * sip(space, f, target).value);
                if (homogeneity > 1e-10 * (1.0 + std::abs(c * sip(space, f, target).value)))
                    return "first-argument homogeneity broke";
                const double self = sip(space, f, f).value, nf = norm(space, f);
                if (std::abs(self - nf * nf) > 1e-10 * (1.0 + nf * nf)) return "[f,f] != ||f||^2";
                if (std::abs(sip(space, f, target).value) > nf * norm(space, target) * (1.0 + 1e-9))
                    return "Cauchy-Schwarz violated";
            }
        }
        return "";
    });

    h.run("sphere scan limits", [&]() -> std::string {
        const Vec x = (Vec(2) << 1.0, 0.0).finished();
        const Vec y = (Vec(2) << 1.0, 2.0).finished();
        std::vector<double> ks;
        for (double k = 1e-6; k <= 1e8 * 1.0001; k *= 10.0) ks.push_back(k);
        const auto scan = sip_sphere_scan(x, y, ks);
        const double l2 = scan_l2_limit(x, y), l1 = scan_l1_limit(x, y);
        for (const auto& pt : scan)
            if (pt.value < std::min(l1, l2) - 1e-12 || pt.value > std::max(l1, l2) + 1e-12)
                return "scan value escapes the [L2, L1] band";
        // Reference values from high-precision evaluation of the scan formula.
        if (std::abs(scan.front().value - 0.20000007999991200) > 1e-9)
            return describe_gap("S(1e-6)", scan.front().value, 0.20000007999991200, 1e-9);
        if (std::abs(scan.front().value - 0.2) > 1e-4) return "S(1e-6) is not within 1e-4 of the L2 limit";
        if (std::abs(scan.back().value - 0.32517602202166975) > 1e-9)
            return describe_gap("S(1e8)", scan.back().value, 0.32517602202166975, 1e-9);
        return "";
    });

    h.run("parallel gram and table match serial", [&]() -> std::string {
        const Kernel kernel = Kernel::gaussian(0.8, 2);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::MatrixXd pts(40, 2);
        for (Eigen::Index i = 0; i < pts.size(); ++i) pts(i / 2, i % 2) = u(rng);
        if ((gram(kernel, pts) - gram_serial(kernel, pts)).lpNorm<Eigen::Infinity>() != 0.0)
            return "gram differs between parallel and serial";
        std::vector<double> xs(30), ys(30);
        for (int i = 0; i < 30; ++i) xs[i] = u(rng), ys[i] = u(rng);
        const Kernel k1 = Kernel::gaussian(1.0, 1);
        const auto a = kernel_table(k1, xs, ys), b = kernel_table_serial(k1, xs, ys);
        return expect(a == b, "kernel table differs between parallel and serial");
    });

    h.run("series truncation bounds", [&]() -> std::string {
        const auto taylor = FeatureMap::gaussian_taylor(40);
        const Vec w = Vec::Ones(40);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int i = 0; i < 50; ++i) {
            const double x = u(rng), y = u(rng);
            const double err = std::abs(kernel_from_features(taylor, taylor, x, y, w) - std::exp(-(x - y) * (x - y)));
            if (err > 1e-12) return describe_gap("taylor kernel error", err, 0.0, 1e-12);
        }
        const double tail = mercer_truncation_bound(KernelKind::MercerGaussianTaylor, 39);
        if (std::abs(tail - 1.41659905366e-36) > 1e-9 * tail)
            return describe_gap("taylor tail(39)", tail, 1.41659905366e-36, 1e-9);
        const auto sine = FeatureMap::brownian_sine(2000);
        const Vec ws = Vec::Ones(2000);
        const double sine_bound = mercer_truncation_bound(KernelKind::MercerBrownianSine, 2000);
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        for (int i = 0; i < 10; ++i) {
            const double x = u01(rng), y = u01(rng);
            const double err = std::abs(kernel_from_features(sine, sine, x, y, ws) - (std::min(x, y) - x * y));
            if (err > sine_bound) return describe_gap("sine kernel error", err, 0.0, sine_bound);
        }
        return "";
    });

    h.run("reproducing property", [&]() -> std::string {
        const std::vector<RkbsPair> pairs = {make_gaussian_rkhs(25), make_power_mercer(3.0, 25), make_hat_delta(51),
                                             make_entropy_orlicz(15)};
        for (const auto& pair : pairs) {
            std::uniform_real_distribution<double> dom(pair.map1.domain_min(), pair.map1.domain_max());
            std::vector<double> pts1, pts2;
            for (int i = 0; i < 20; ++i) pts1.push_back(dom(rng));
            if (pair.map2.rule == FeatureRule::DeltaGrid) {
                std::uniform_int_distribution<int> pick(0, pair.map2.dim() - 1);
                for (int i = 0; i < 20; ++i) pts2.push_back(pair.map2.grid[pick(rng)]);
            } else {
                pts2 = pts1;
            }
            for (int i = 0; i < 5; ++i) {
                const BFunction f{Side::B1, random_vec(rng, pair.space2.dim)};
                const BFunction g{Side::B2, random_vec(rng, pair.space1.dim)};
                if (reproduce_residual(pair, f, pts1) > 1e-10 * (1.0 + bnorm(pair, f)))
                    return "B1 reproducing residual too large";
                if (reproduce_residual(pair, g, pts2) > 1e-10 * (1.0 + bnorm(pair, g)))
                    return "B2 reproducing residual too large";
            }
        }
        return "";
    });

    h.run("point evaluation bound", [&]() -> std::string {
        const std::vector<RkbsPair> pairs = {make_gaussian_rkhs(20), make_power_mercer(1.5, 20), make_hat_delta(31)};
        for (const auto& pair : pairs) {
            std::uniform_real_distribution<double> dom(pair.map1.domain_min(), pair.map1.domain_max());
            for (int i = 0; i < 50; ++i) {
                const double pt = dom(rng);
                const BFunction f{Side::B1, random_vec(rng, pair.space2.dim)};
                if (std::abs(eval(pair, f, pt)) > point_eval_constant(pair, pt, Side::B1) * bnorm(pair, f) + 1e-12)
                    return "B1 point evaluation bound violated";
            }
        }
        return "";
    });

    h.run("min-norm interpolation matches gram solve at p=2", [&]() -> std::string {
        const RkbsPair pair = make_gaussian_rkhs(30);
        std::uniform_real_distribution<double> dom(-0.9, 0.9);
        std::vector<double> x = {dom(rng), dom(rng), dom(rng), dom(rng)};
        const Vec t = random_vec(rng, 4);
        const SampleSet samples(x, t);
        const auto rep = min_norm_interpolate(pair, samples);
        Eigen::MatrixXd f_cols(30, 4);
        for (int j = 0; j < 4; ++j) f_cols.col(j) = feature(pair.map1, x[static_cast<size_t>(j)]);
        const Eigen::MatrixXd gram_m = f_cols.transpose() * f_cols;
        const Vec v_direct = f_cols * gram_m.colPivHouseholderQr().solve(t);
        return expect((rep.coef - v_direct).lpNorm<Eigen::Infinity>() <= 1e-8,
                      "solver and gram solve disagree beyond 1e-8");
    });

    h.run("regnet matches ridge closed form at p=2", [&]() -> std::string {
        const RkbsPair pair = make_gaussian_rkhs(30);
        std::uniform_real_distribution<double> dom(-0.9, 0.9);
        std::vector<double> x = {dom(rng), dom(rng), dom(rng), dom(rng)};
        const Vec t = random_vec(rng, 4);
        const SampleSet samples(x, t);
        const double lambda = 0.5;
        const auto rep = regnet(pair, samples, lambda);
        Eigen::MatrixXd f_cols(30, 4);
        for (int j = 0; j < 4; ++j) f_cols.col(j) = feature(pair.map1, x[static_cast<size_t>(j)]);
        Eigen::MatrixXd ridge = f_cols.transpose() * f_cols;
        ridge.diagonal().array() += lambda;
        const Vec v_direct = f_cols * ridge.colPivHouseholderQr().solve(t);
        return expect((rep.coef - v_direct).lpNorm<Eigen::Infinity>() <= 1e-8,
                      "solver and ridge closed form disagree beyond 1e-8");
    });

    h.run("l1 zero threshold", [&]() -> std::string {
        const RkbsPair pair = make_hat_delta(21);
        std::vector<double> x = {0.1, 0.35, 0.6, 0.9};
        const Vec t = random_vec(rng, 4);
        const SampleSet samples(x, t);
        Eigen::MatrixXd design(4, 21);
        for (int j = 0; j < 4; ++j) design.row(j) = feature(pair.map1, x[static_cast<size_t>(j)]).transpose();
        const double threshold = 2.0 * (design.transpose() * t).lpNorm<Eigen::Infinity>();
        const auto rep = l1_regnet(pair, samples, threshold * 1.01);
        if (rep.support_size != 0 || rep.coef.lpNorm<Eigen::Infinity>() != 0.0)
            return "solution above the zero threshold is not exactly zero";
        const auto rep2 = l1_regnet(pair, samples, threshold * 0.5);
        return expect(rep2.support_size > 0, "solution below the zero threshold vanished");
    });

    h.run("gram admissibility and duplicate rejection", [&]() -> std::string {
        const Kernel kernel = Kernel::gaussian(1.0, 1);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::MatrixXd pts(5, 1);
        for (int i = 0; i < 5; ++i) pts(i, 0) = u(rng) + 0.5 * i;
        const auto report = admissibility_check(kernel, pts);
        if (!report.nonsingular) return "gaussian gram at distinct points reported singular";
        Eigen::MatrixXd dup(2, 1);
        dup << 0.3, 0.3;
        try {
            gram(kernel, dup);
            return "duplicate points were not rejected";
        } catch (const ConfigError&) {
            return "";
        }
    });

    return h.all_ok;
}

}  // namespace rkbs
