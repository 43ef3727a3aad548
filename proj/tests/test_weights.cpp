#include "varmult/rng.hpp"
#include "varmult/weights.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace varmult;

namespace {

WeightGrid random_weight(std::uint64_t seed, int n) {
    Rng r(seed);
    WeightGrid w;
    w.spacing = 1.0 / n;
    for (int j = 0; j < n; ++j) w.samples.push_back(std::exp(r.uniform(-2.0, 2.0)));
    return w;
}

} // namespace

TEST_CASE("flat weight has characteristic exactly 1") {
    // w = 1: both window averages are exactly 1, no roundoff anywhere.
    for (double p : {1.5, 2.0, 4.0})
        CHECK(ap_constant(constant_weight(64, 1.0, 0.01), p) == 1.0);
    // Other constants pass through exp/log and pick up one ulp or so.
    for (double p : {1.5, 2.0, 4.0})
        CHECK(ap_constant(constant_weight(64, 3.0, 0.01), p) ==
              doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ap_constant matches the enumeration oracle") {
    for (int trial = 0; trial < 20; ++trial) {
        const WeightGrid w = random_weight(0xA0 + trial, 24 + trial);
        for (double p : {1.5, 2.0, 3.0}) {
            const double fast = ap_constant(w, p);
            const double slow = ap_constant_oracle(w, p);
            CHECK(fast == doctest::Approx(slow).epsilon(1e-10));
        }
    }
}

TEST_CASE("characteristic is at least 1 and nonincreasing in p") {
    for (int trial = 0; trial < 20; ++trial) {
        const WeightGrid w = random_weight(0xB0 + trial, 32);
        double prev = 1e300;
        for (double p : {1.25, 1.5, 2.0, 3.0, 5.0}) {
            const double ap = ap_constant(w, p);
            CHECK(ap >= 1.0 - 1e-12);
            CHECK(ap <= prev * (1.0 + 1e-12));
            prev = ap;
        }
    }
}

TEST_CASE("ap_constant input validation") {
    const WeightGrid w = constant_weight(8, 1.0, 0.1);
    CHECK_THROWS_AS(ap_constant(w, 1.0), std::invalid_argument);
    WeightGrid bad = w;
    bad.samples[3] = 0.0;
    CHECK_THROWS_AS(ap_constant(bad, 2.0), std::invalid_argument);
    WeightGrid empty;
    empty.spacing = 0.1;
    CHECK_THROWS_AS(ap_constant(empty, 2.0), std::invalid_argument);
}

TEST_CASE("power weight is in A_p exactly when -1 < a < p-1 (finite proxy)") {
    // The finite-window characteristic stays modest inside the range and
    // blows up as a approaches the endpoint.
    const double p = 2.0;
    const double inside = ap_constant(power_weight(256, 0.5, 0.5), p);
    const double near_edge = ap_constant(power_weight(256, 0.95, 0.5), p);
    CHECK(inside < near_edge);
    const double c512 = ap_constant(power_weight(512, 0.5, 0.5), p);
    const double c1024 = ap_constant(power_weight(1024, 0.5, 0.5), p);
    CHECK(std::abs(c1024 - c512) <= 0.02 * c512);
}

TEST_CASE("step weight characteristic grows with the ratio") {
    const double p = 2.0;
    double prev = 0.0;
    for (double ratio : {1.0, 2.0, 8.0, 64.0}) {
        const double ap = ap_constant(step_weight(64, ratio, 0.1), p);
        CHECK(ap >= prev - 1e-12);
        prev = ap;
    }
    CHECK(ap_constant(step_weight(64, 1.0, 0.1), p) == 1.0);
}

TEST_CASE("weighted lp norm: hand value and infinity") {
    const SpaceDescriptor sc = SpaceDescriptor::scalar();
    Signal f = zero_signal(sc, 4, 1.0);
    f.data = {Complex(1.0, 0.0), Complex(-2.0, 0.0), Complex(0.0, 3.0), Complex(0.0, 0.0)};
    const WeightGrid w = constant_weight(4, 2.0, 0.25);
    // sum |f|^2 * 2 * 0.25 = (1+4+9)*0.5 = 7.
    CHECK(weighted_lp_norm(f, w, Exponent::finite(2.0)) ==
          doctest::Approx(std::sqrt(7.0)).epsilon(1e-13));
    CHECK(weighted_lp_norm(f, w, Exponent::infinity()) == 3.0);
    const std::vector<double> vals{1.0, 2.0, 3.0, 0.0};
    CHECK(weighted_lp_norm(vals, w, Exponent::finite(2.0)) ==
          doctest::Approx(std::sqrt(7.0)).epsilon(1e-13));
}

TEST_CASE("weighted lp norm validates grid agreement") {
    const SpaceDescriptor sc = SpaceDescriptor::scalar();
    const Signal f = zero_signal(sc, 4, 1.0);
    const WeightGrid wrong_len = constant_weight(8, 1.0, 0.25);
    CHECK_THROWS_AS(weighted_lp_norm(f, wrong_len, Exponent::finite(2.0)),
                    std::invalid_argument);
    const WeightGrid wrong_dx = constant_weight(4, 1.0, 0.1);
    CHECK_THROWS_AS(weighted_lp_norm(f, wrong_dx, Exponent::finite(2.0)),
                    std::invalid_argument);
}

TEST_CASE("weight family validation") {
    CHECK_THROWS_AS(constant_weight(0, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(constant_weight(8, -1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(power_weight(7, 0.5, 0.5), std::invalid_argument);  // odd grid
    CHECK_THROWS_AS(step_weight(8, 0.0, 0.1), std::invalid_argument);
}
