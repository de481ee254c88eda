#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covertlab/key_length.hpp"
#include "covertlab/tilt.hpp"

using namespace covertlab;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("psi: zero tilt gives zero cumulant") {
    CHECK(psi(NoiseModel::gaussian(1.0), 0.0, 0.5) == 0.0);
    CHECK(psi(NoiseModel::exponential(2.0), 0.0, 0.25) == 0.0);
}

TEST_CASE("psi: pinned closed-form values") {
    CHECK(std::abs(psi(NoiseModel::gaussian(1.0), 0.1, 0.5) -
                   0.038999032906601513) <= 1e-15);
    CHECK(std::abs(psi(NoiseModel::exponential(1.0), 0.1, 0.25) -
                   0.034437339147075945) <= 1e-15);
}

TEST_CASE("psi: scale parameters drop out") {
    for (double rho : {0.25, 0.5}) {
        CHECK(psi(NoiseModel::gaussian(1.0), 0.1, rho) ==
              doctest::Approx(psi(NoiseModel::gaussian(3.0), 0.1, rho)));
        CHECK(psi(NoiseModel::exponential(1.0), 0.1, rho) ==
              doctest::Approx(psi(NoiseModel::exponential(0.2), 0.1, rho)));
    }
}

TEST_CASE("psi: closed form matches the 2-D quadrature oracle") {
    for (double gamma : {0.05, 0.1}) {
        for (double rho : {0.25, 0.5}) {
            for (const auto& model :
                 {NoiseModel::gaussian(1.0), NoiseModel::exponential(1.0)}) {
                CAPTURE(family_name(model.family()));
                CAPTURE(gamma);
                CAPTURE(rho);
                CHECK(std::abs(psi(model, gamma, rho) -
                               psi_quadrature(model, gamma, rho)) <= 1e-5);
            }
        }
    }
}

TEST_CASE("psi: divergence guards") {
    CHECK_THROWS_AS(psi(NoiseModel::exponential(1.0), 0.1, 1.0),
                    std::range_error);
    // rho^2 gamma >= 1 is unreachable for rho <= 1 and gamma < 1, so the
    // Gaussian guard only fires at the corner point.
    CHECK_NOTHROW(psi(NoiseModel::gaussian(1.0), 0.99, 1.0));
    CHECK_THROWS_AS(psi(NoiseModel::laplace(1.0), 0.1, 0.5),
                    std::invalid_argument);
    CHECK_THROWS_AS(psi(NoiseModel::gaussian(1.0), 0.1, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(psi(NoiseModel::gaussian(1.0), 0.1, 1.5),
                    std::invalid_argument);
}

TEST_CASE("psi: vanishes with the tilt at fixed rho") {
    for (const auto& model :
         {NoiseModel::gaussian(1.0), NoiseModel::exponential(1.0)}) {
        double previous = kInf;
        for (double gamma : {0.2, 0.1, 0.05, 0.01, 0.001}) {
            const double value = psi(model, gamma, 0.5);
            CHECK(value > 0.0);
            CHECK(value < previous);
            previous = value;
        }
        CHECK(previous <= 2e-3);
    }
}

TEST_CASE("psi: exponential leading order rho/(1-rho), error halving") {
    for (double rho : {0.25, 0.5}) {
        const auto ratio_error = [&](double gamma) {
            const double lead = gamma * rho / (1.0 - rho);
            return std::abs(psi(NoiseModel::exponential(1.0), gamma, rho) /
                                lead - 1.0);
        };
        CHECK(ratio_error(1e-3) <= 0.5 * ratio_error(1e-2));
    }
}

TEST_CASE("psi_general_upper: dominates the exact cumulant") {
    for (const auto& model :
         {NoiseModel::gaussian(1.0), NoiseModel::exponential(1.0)}) {
        for (double rho : {0.1, 0.3}) {
            CHECK(psi_general_upper(model, 0.05, rho) >=
                  psi(model, 0.05, rho) - 1e-12);
        }
    }
    // Bounded non-closed-form family evaluates.
    CHECK(std::isfinite(psi_general_upper(NoiseModel::laplace(1.0), 0.05, 0.2)));
    // Unbounded density refuses.
    CHECK_THROWS_AS(
        psi_general_upper(NoiseModel::generalized_gamma(0.5, 1.0, 1.0), 0.05,
                          0.2),
        std::domain_error);
}

TEST_CASE("resolvability bound: pinned and limiting values") {
    // Exponent zero: bound = ln(2)/rho.
    const double rho = 0.25;
    const double psi_value = 0.001;
    const long n = 1000;
    const double total = static_cast<double>(n) * psi_value / rho;
    CHECK(resolvability_bound(psi_value, total / 2.0, total / 2.0, n, rho) ==
          doctest::Approx(std::log(2.0) / rho));

    // Decays to zero as the key grows; monotone in both arguments.
    double previous = kInf;
    for (double key : {0.0, 10.0, 40.0, 160.0}) {
        const double value = resolvability_bound(0.0, key, 0.0, n, 0.5);
        CHECK(value < std::log(2.0) / 0.5 + 1e-12);
        CHECK(value <= previous);
        previous = value;
    }
    CHECK(resolvability_bound(0.0, 1000.0, 0.0, n, 0.5) <= 1e-200);

    CHECK(resolvability_bound(0.002, 50.0, 50.0, n, 0.5) >
          resolvability_bound(0.001, 50.0, 50.0, n, 0.5));

    // Huge positive exponents must not overflow.
    CHECK(std::isfinite(resolvability_bound(1.0, 0.0, 0.0, 100000, 0.5)));
}

TEST_CASE("resolvability bound: the sub-sqrt key schedule example") {
    // Gaussian, delta = 1, n = 1e4, rho = n^-1/4, ln|M| = sqrt(n),
    // ln|K| = rho sqrt(n) + 2 n^0.4; the bound lands around 2.2e-3.
    const long n = 10000;
    const double rho = std::pow(static_cast<double>(n), -0.25);
    const double xi = std::pow(static_cast<double>(n), 0.4);
    const double msg = 100.0;
    const double key = rho * 100.0 + 2.0 * xi;
    const double gamma =
        gamma_achievability(NoiseModel::gaussian(1.0), 1.0, n, 1.25);
    const double psi_value = psi(NoiseModel::gaussian(1.0), gamma, rho);
    const double bound = resolvability_bound(psi_value, key, msg, n, rho);
    CHECK(std::abs(bound - 0.0021702657064138158) <= 1e-12);
    CHECK(bound < 1e-2);
    // Doubling the key slack pushes the leak far down.
    CHECK(resolvability_bound(psi_value, 2.0 * key, msg, n, rho) < 1e-6);
}

TEST_CASE("sufficient_key_length: sub-sqrt trend in n") {
    for (const auto& model :
         {NoiseModel::gaussian(1.0), NoiseModel::exponential(1.0)}) {
        const auto small = sufficient_key_length(model, 1.0, 10000, 1e-3,
                                                 KeySchedule::sub_sqrt);
        const auto large = sufficient_key_length(model, 1.0, 1000000, 1e-3,
                                                 KeySchedule::sub_sqrt);
        CAPTURE(family_name(model.family()));
        REQUIRE(small.feasible);
        REQUIRE(large.feasible);
        CHECK(small.key_nats / 100.0 > large.key_nats / 1000.0);
        CHECK(small.resolvability_bound <= 1e-3 + 1e-12);
        CHECK(large.resolvability_bound <= 1e-3 + 1e-12);
    }
}

TEST_CASE("sufficient_key_length: infinite target needs no key") {
    const auto report = sufficient_key_length(NoiseModel::gaussian(1.0), 1.0,
                                              10000, kInf,
                                              KeySchedule::sub_sqrt);
    CHECK(report.feasible);
    CHECK(report.key_nats == 0.0);
}

TEST_CASE("sufficient_key_length: general schedule stays O(n)") {
    const auto at_n = [&](long n) {
        return sufficient_key_length(NoiseModel::laplace(1.0), 1.0, n, 1e-3,
                                     KeySchedule::general_o_n);
    };
    const auto small = at_n(1000);
    const auto large = at_n(8000);
    REQUIRE(small.feasible);
    REQUIRE(large.feasible);
    // Linear envelope: key/n stays bounded (within 2x across an 8x span).
    CHECK(large.key_nats / 8000.0 <= 2.0 * (small.key_nats / 1000.0) + 1.0);
}

TEST_CASE("sufficient_key_length: argument guards") {
    CHECK_THROWS_AS(sufficient_key_length(NoiseModel::gaussian(1.0), 1.0, 10000,
                                          0.0, KeySchedule::sub_sqrt),
                    std::invalid_argument);
    // Sub-sqrt schedule is scoped to the two closed-form families.
    CHECK_THROWS_AS(sufficient_key_length(NoiseModel::laplace(1.0), 1.0, 10000,
                                          1e-3, KeySchedule::sub_sqrt),
                    std::invalid_argument);
    // The general schedule needs a bounded density.
    CHECK_THROWS_AS(
        sufficient_key_length(NoiseModel::generalized_gamma(0.5, 1.0, 1.0), 1.0,
                              10000, 1e-3, KeySchedule::general_o_n),
        std::domain_error);
}
