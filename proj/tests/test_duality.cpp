#include <cmath>
#include <doctest.h>
#include <random>

#include "oracles.hpp"
#include "rkbs/duality.hpp"
#include "rkbs/errors.hpp"

using namespace rkbs;
using oracles::random_vec;
using oracles::random_weights;

namespace {

Vec vec2(double a, double b) {
    Vec v(2);
    v << a, b;
    return v;
}

std::vector<NormSpec> smooth_specs() {
    return {NormSpec::lp(1.5), NormSpec::lp(2.0), NormSpec::lp(3.0),
            NormSpec::orlicz_gauge(YoungPair::entropy()), NormSpec::orlicz_dual(YoungPair::entropy())};
}

}  // namespace

TEST_SUITE("duality") {

TEST_CASE("semi-inner product reduces to the inner product at p=2") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 20; ++i) {
        const int n = 2 + static_cast<int>(rng() % 5);
        const Vec w = random_weights(rng, n), f = random_vec(rng, n), g = random_vec(rng, n);
        const FeatureSpace space(n, w, NormSpec::lp(2.0));
        CHECK(sip(space, f, g).value == doctest::Approx((w.array() * f.array() * g.array()).sum()).epsilon(1e-12));
    }
}

TEST_CASE("semi-inner product axioms") {
    std::mt19937_64 rng(42);
    for (const auto& spec : {NormSpec::lp(1.5), NormSpec::orlicz_gauge(YoungPair::entropy()),
                             NormSpec::orlicz_gauge(YoungPair::scaled_entropy(2.0))}) {
        for (int i = 0; i < 60; ++i) {
            const int n = 2 + static_cast<int>(rng() % 5);
            const FeatureSpace space(n, random_weights(rng, n), spec);
            const Vec f = random_vec(rng, n), h = random_vec(rng, n), g = random_vec(rng, n);
            const double a = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
            // first-argument additivity and homogeneity
            CHECK(sip(space, (f + h).eval(), g).value ==
                  doctest::Approx(sip(space, f, g).value + sip(space, h, g).value).epsilon(1e-10));
            CHECK(sip(space, (a * f).eval(), g).value ==
                  doctest::Approx(a * sip(space, f, g).value).epsilon(1e-10));
            // [g,g] recovers the squared norm
            const double ng = norm(space, g);
            CHECK(sip(space, g, g).value == doctest::Approx(ng * ng).epsilon(1e-10));
            // Cauchy-Schwarz
            CHECK(std::abs(sip(space, f, g).value) <= norm(space, f) * ng + 1e-9);
        }
    }
}

TEST_CASE("sip second argument must be nonzero") {
    const FeatureSpace space = FeatureSpace::counting(2, NormSpec::lp(1.5));
    CHECK_THROWS_AS(sip(space, vec2(1.0, 1.0), vec2(0.0, 0.0)), ConfigError);
}

TEST_CASE("duality map closed form at integer p") {
    // p = 3: J(f) = sgn(f) |f|^2 / ||f||, counting weights
    const FeatureSpace space = FeatureSpace::counting(2, NormSpec::lp(3.0));
    const Vec f = vec2(1.0, -2.0);
    const double nf = std::pow(1.0 + 8.0, 1.0 / 3.0);
    const Vec j = duality_map(space, f);
    CHECK(j[0] == doctest::Approx(1.0 / nf).epsilon(1e-12));
    CHECK(j[1] == doctest::Approx(-4.0 / nf).epsilon(1e-12));
}

TEST_CASE("entropy duality map reference value") {
    const FeatureSpace space = FeatureSpace::counting(2, NormSpec::orlicz_gauge(YoungPair::entropy()));
    const Vec j = duality_map(space, vec2(1.0, 2.0));
    CHECK(j[0] == doctest::Approx(1.175141520567320).epsilon(1e-9));
    CHECK(j[1] == doctest::Approx(2.035949409223982).epsilon(1e-9));
    CHECK(pairing(Vec::Ones(2), vec2(1.0, 2.0), j) == doctest::Approx(5.247040339015285).epsilon(1e-9));
}

TEST_CASE("duality map identities for every smooth spec") {
    std::mt19937_64 rng(43);
    for (const auto& spec : smooth_specs()) {
        for (int i = 0; i < 40; ++i) {
            const int n = 2 + static_cast<int>(rng() % 5);
            const Vec w = random_weights(rng, n);
            const FeatureSpace space(n, w, spec);
            const FeatureSpace dual_space(n, w, spec.dual());
            const Vec f = random_vec(rng, n);
            const Vec j = duality_map(space, f);
            const double nf = norm(space, f);
            CHECK(pairing(w, f, j) == doctest::Approx(nf * nf).epsilon(1e-9));
            CHECK(norm(dual_space, j) == doctest::Approx(nf).epsilon(1e-8));
        }
    }
}

TEST_CASE("duality map of zero is zero, non-smooth specs are rejected") {
    const FeatureSpace space = FeatureSpace::counting(3, NormSpec::lp(1.5));
    CHECK(duality_map(space, Vec::Zero(3)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(duality_map(FeatureSpace::counting(3, NormSpec::l1()), Vec::Ones(3)), ConfigError);
    CHECK_THROWS_AS(duality_map(FeatureSpace::counting(3, NormSpec::sup()), Vec::Ones(3)), ConfigError);
}

TEST_CASE("gauge and dual duality maps invert each other") {
    std::mt19937_64 rng(44);
    const Vec w = random_weights(rng, 4);
    const FeatureSpace gauge(4, w, NormSpec::orlicz_gauge(YoungPair::entropy()));
    const FeatureSpace dual(4, w, NormSpec::orlicz_dual(YoungPair::entropy()));
    for (int i = 0; i < 10; ++i) {
        const Vec f = random_vec(rng, 4);
        // J_dual(J_gauge(f)) = f whenever the identities pin both sides
        const Vec back = duality_map(dual, duality_map(gauge, f));
        CHECK((back - f).cwiseAbs().maxCoeff() < 1e-7 * (1.0 + f.cwiseAbs().maxCoeff()));
    }
}

TEST_CASE("gateaux derivative matches central finite differences") {
    std::mt19937_64 rng(45);
    for (const auto& spec : smooth_specs()) {
        for (int i = 0; i < 25; ++i) {
            const int n = 2 + static_cast<int>(rng() % 5);
            const Vec w = random_weights(rng, n);
            const FeatureSpace space(n, w, spec);
            const Vec f = random_vec(rng, n), h = random_vec(rng, n);
            const double analytic = pairing(w, h, gateaux_derivative(space, f));
            const double fd = gateaux_fd(space, f, h, 1e-6);
            CHECK(analytic == doctest::Approx(fd).epsilon(1e-5));
        }
    }
    // the worked 2-D entropy example
    const FeatureSpace space = FeatureSpace::counting(2, NormSpec::orlicz_gauge(YoungPair::entropy()));
    const Vec f = vec2(1.0, 2.0), h = vec2(1.0, -1.0);
    CHECK(pairing(Vec::Ones(2), h, gateaux_derivative(space, f)) ==
          doctest::Approx(gateaux_fd(space, f, h, 1e-6)).epsilon(1e-5));
    CHECK(gateaux_derivative(space, Vec::Zero(2)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sphere scan reference values and limit band") {
    const Vec x = vec2(1.0, 0.0), y = vec2(1.0, 2.0);
    CHECK(scan_l2_limit(x, y) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(scan_l1_limit(x, y) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    const auto pts = sip_sphere_scan(x, y, {1e-6, 1.0, 1e2, 1e8});
    REQUIRE(pts.size() == 4);
    CHECK(pts[0].value == doctest::Approx(0.20000007999991200).epsilon(1e-12));
    CHECK(pts[1].value == doctest::Approx(0.23981246656813144).epsilon(1e-12));
    CHECK(pts[2].value == doctest::Approx(0.30319289698939155).epsilon(1e-12));
    CHECK(pts[3].value == doctest::Approx(0.32517602202166975).epsilon(1e-12));
    // low-k end converges fast, high-k end crawls at 1/log k and stays
    // visibly short of 1/3 for any k a double can hold
    CHECK(std::abs(pts[0].value - 0.2) < 1e-6);
    CHECK(std::abs(pts[3].value - 1.0 / 3.0) > 5e-3);
    for (const auto& pt : pts) {
        CHECK(pt.value >= 0.2 - 1e-12);
        CHECK(pt.value <= 1.0 / 3.0 + 1e-12);
    }
    for (size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].value >= pts[i - 1].value);
}

TEST_CASE("sphere scan agrees with the scaled-entropy sip on the unit sphere") {
    // once ||y|| = 1 in the scaled-entropy gauge space, sip evaluates at
    // alpha = 1 and its phi-weighted ratio is exactly the scan formula (the
    // scale factor k of phi cancels between numerator and denominator)
    const double k = 7.0;
    Vec y = vec2(1.0, 2.0);
    const Vec x = vec2(0.4, -1.3);
    const FeatureSpace space(2, Vec::Ones(2), NormSpec::orlicz_gauge(YoungPair::scaled_entropy(k)));
    y /= norm(space, y);
    const auto v = sip(space, x, y);
    CHECK(v.alpha_used == doctest::Approx(1.0).epsilon(1e-10));
    const auto scan = sip_sphere_scan(x, y, {k});
    REQUIRE(scan.size() == 1);
    CHECK(v.value == doctest::Approx(scan[0].value).epsilon(1e-9));
}

}  // TEST_SUITE
