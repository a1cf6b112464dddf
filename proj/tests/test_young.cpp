#include <cmath>
#include <doctest.h>
#include <limits>
#include <stdexcept>

#include "oracles.hpp"
#include "rkbs/errors.hpp"
#include "rkbs/young.hpp"

using rkbs::ConfigError;
using rkbs::YoungPair;

TEST_SUITE("young") {

TEST_CASE("power family closed forms") {
    const double p = 2.5, q = p / (p - 1.0);
    const auto pair = YoungPair::power(p);
    for (double t : {0.0, 0.3, 1.0, 2.7, 10.0}) {
        CHECK(pair.phi(t) == doctest::Approx(std::pow(t, p - 1.0)).epsilon(1e-14));
        CHECK(pair.psi(t) == doctest::Approx(std::pow(t, q - 1.0)).epsilon(1e-14));
        CHECK(pair.Phi(t) == doctest::Approx(std::pow(t, p) / p).epsilon(1e-14));
        CHECK(pair.Psi(t) == doctest::Approx(std::pow(t, q) / q).epsilon(1e-14));
    }
    CHECK(pair.p() == p);
    CHECK(pair.q() == doctest::Approx(q));
}

TEST_CASE("entropy family values") {
    const auto pair = YoungPair::entropy();
    CHECK(pair.Phi(1.0) == doctest::Approx(2.0 * std::log(2.0) - 1.0).epsilon(1e-15));
    CHECK(pair.Phi(1.0) == doctest::Approx(0.3862943611198906).epsilon(1e-15));
    CHECK(pair.Psi(1.0) == doctest::Approx(std::exp(1.0) - 2.0).epsilon(1e-15));
    CHECK(pair.phi(std::exp(1.0) - 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pair.psi(std::log(2.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(pair.phi(0.0) == 0.0);
    CHECK(pair.Phi(0.0) == 0.0);
}

TEST_CASE("Phi and Psi agree with quadrature of phi and psi") {
    for (const auto& pair : {YoungPair::power(1.7), YoungPair::power(3.0), YoungPair::entropy(),
                             YoungPair::scaled_entropy(0.5), YoungPair::scaled_entropy(2.0)}) {
        for (double t = 0.1; t <= 5.0; t += 0.37) {
            const double Phi_num = oracles::integrate_from_zero([&](double u) { return pair.phi(u); }, t);
            const double Psi_num = oracles::integrate_from_zero([&](double u) { return pair.psi(u); }, t);
            CHECK(pair.Phi(t) == doctest::Approx(Phi_num).epsilon(1e-10));
            CHECK(pair.Psi(t) == doctest::Approx(Psi_num).epsilon(1e-10));
        }
    }
}

TEST_CASE("phi and psi are inverses") {
    for (const auto& pair : {YoungPair::power(1.5), YoungPair::power(2.0), YoungPair::entropy(),
                             YoungPair::scaled_entropy(3.0)}) {
        for (double t = 0.05; t <= 8.0; t += 0.61) {
            CHECK(pair.psi(pair.phi(t)) == doctest::Approx(t).epsilon(1e-12));
            CHECK(pair.phi(pair.psi(t)) == doctest::Approx(t).epsilon(1e-12));
        }
    }
}

TEST_CASE("young inequality with equality on the graph of phi") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (const auto& pair : {YoungPair::power(2.5), YoungPair::entropy(), YoungPair::scaled_entropy(0.7)}) {
        for (int i = 0; i < 200; ++i) {
            const double x = u(rng), y = u(rng);
            const double gap = pair.Phi(x) + pair.Psi(y) - x * y;
            CHECK(gap >= -1e-12);
        }
        for (double x = 0.2; x <= 4.0; x += 0.43) {
            const double y = pair.phi(x);
            const double gap = pair.Phi(x) + pair.Psi(y) - x * y;
            CHECK(std::abs(gap) < 1e-10);
        }
    }
}

TEST_CASE("scaled entropy rescales the base family") {
    const double k = 1.7;
    const auto base = YoungPair::entropy();
    const auto scaled = YoungPair::scaled_entropy(k);
    for (double t = 0.1; t <= 3.0; t += 0.29) {
        CHECK(scaled.Phi(t) == doctest::Approx(base.Phi(k * t)).epsilon(1e-13));
        CHECK(scaled.phi(t) == doctest::Approx(k * base.phi(k * t)).epsilon(1e-13));
        CHECK(scaled.Psi(t) == doctest::Approx(base.Psi(t / k)).epsilon(1e-13));
    }
}

TEST_CASE("conjugate swaps the two roles") {
    const auto pair = YoungPair::entropy();
    const auto conj = pair.conjugate();
    CHECK(conj.conjugated());
    CHECK(conj.same_family(pair));
    for (double t = 0.2; t <= 4.0; t += 0.53) {
        CHECK(conj.phi(t) == pair.psi(t));
        CHECK(conj.Phi(t) == pair.Psi(t));
        CHECK(conj.psi(t) == pair.phi(t));
        CHECK(conj.Psi(t) == pair.Phi(t));
    }
    CHECK(conj.conjugate().Phi(1.3) == pair.Phi(1.3));
}

TEST_CASE("negative arguments are clamped only at round-off scale") {
    const auto pair = YoungPair::entropy();
    CHECK(pair.phi(-1e-15) == 0.0);
    CHECK(pair.Phi(-1e-15) == 0.0);
    CHECK_THROWS_AS(pair.phi(-1e-3), ConfigError);
    CHECK_THROWS_AS(pair.Psi(-0.5), ConfigError);
}

TEST_CASE("entropy exp overflow raises range_error, saturating variants do not") {
    const auto pair = YoungPair::entropy();
    CHECK_THROWS_AS(pair.psi(800.0), std::range_error);
    CHECK_THROWS_AS(pair.Psi(800.0), std::range_error);
    CHECK(std::isinf(pair.conjugate().Phi_sat(800.0)));
    CHECK(pair.Phi_sat(800.0) == doctest::Approx(pair.Phi(800.0)));
    // scaled family shifts the overflow threshold by k
    const auto scaled = YoungPair::scaled_entropy(2.0);
    CHECK_NOTHROW(scaled.psi(1000.0));
    CHECK_THROWS_AS(scaled.psi(1500.0), std::range_error);
}

TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(YoungPair::power(1.0), ConfigError);
    CHECK_THROWS_AS(YoungPair::power(0.5), ConfigError);
    CHECK_THROWS_AS(YoungPair::scaled_entropy(0.0), ConfigError);
    CHECK_THROWS_AS(YoungPair::scaled_entropy(-2.0), ConfigError);
    CHECK_NOTHROW(YoungPair::power(1.0000001));
}

TEST_CASE("describe names the family") {
    CHECK(YoungPair::power(2.0).describe().find("power") != std::string::npos);
    CHECK(YoungPair::entropy().describe().find("entropy") != std::string::npos);
    CHECK(YoungPair::scaled_entropy(0.5).describe().find("0.5") != std::string::npos);
}

}  // TEST_SUITE
