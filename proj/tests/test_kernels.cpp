#include "varmult/kernels.hpp"
#include "varmult/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace varmult;
using namespace varmult::kernels;

namespace {

struct Arrays {
    std::vector<double> re, im, w, best;
};

Arrays random_arrays(std::uint64_t seed, std::size_t n) {
    Rng r(seed);
    Arrays a;
    for (std::size_t i = 0; i < n; ++i) {
        a.re.push_back(r.gaussian());
        a.im.push_back(r.gaussian());
        a.w.push_back(std::exp(r.uniform(-1.0, 1.0)));
        a.best.push_back(i == 0 ? 0.0 : std::abs(r.gaussian()));
    }
    return a;
}

} // namespace

TEST_CASE("classify_pow covers the specialized exponents") {
    PowKind k;
    CHECK(classify_pow(1.0, k));
    CHECK(k == PowKind::one);
    CHECK(classify_pow(4.0, k));
    CHECK(k == PowKind::four);
    CHECK_FALSE(classify_pow(1.5, k));
    CHECK_FALSE(classify_pow(2.5, k));
}

TEST_CASE("variation_pow matches pow() on exact cases") {
    CHECK(variation_pow(9.0, PowKind::one) == 3.0);
    CHECK(variation_pow(9.0, PowKind::two) == 9.0);
    CHECK(variation_pow(9.0, PowKind::three) == 27.0);
    CHECK(variation_pow(9.0, PowKind::four) == 81.0);
    CHECK(variation_pow_general(2.0, 2.0) == 2.0);
    CHECK(variation_pow_general(2.0, 1.5) == doctest::Approx(std::pow(2.0, 0.75)).epsilon(1e-15));
}

TEST_CASE("scalar implementation is always registered") {
    const Impl& s = scalar_impl();
    CHECK(std::string(s.name) == "scalar");
    CHECK(find("scalar") == &s);
    CHECK(available().size() >= 1);
    CHECK(available()[0] == &s);
    CHECK(find("no_such_kernel") == nullptr);
}

TEST_CASE("set_active rejects unknown names") {
    CHECK_THROWS_AS(set_active("neon"), std::invalid_argument);
}

TEST_CASE("every available implementation is bit-identical to scalar") {
    const Impl& ref = scalar_impl();
    // Sizes straddle the 4-lane blocking boundary and the tail path.
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{3},
                          std::size_t{4}, std::size_t{5}, std::size_t{8},
                          std::size_t{13}, std::size_t{64}, std::size_t{257}}) {
        const Arrays a = random_arrays(0xBEEF + n, n == 0 ? 1 : n);
        for (const Impl* impl : available()) {
            for (PowKind pk : {PowKind::one, PowKind::two, PowKind::three, PowKind::four}) {
                CHECK(impl->sum_pow(a.re.data(), a.im.data(), n, pk) ==
                      ref.sum_pow(a.re.data(), a.im.data(), n, pk));
                CHECK(impl->weighted_sum_pow(a.re.data(), a.im.data(), a.w.data(), n, pk) ==
                      ref.weighted_sum_pow(a.re.data(), a.im.data(), a.w.data(), n, pk));
                if (n > 0) {
                    CHECK(impl->dp_row(a.re.data(), a.im.data(), a.best.data(), n - 1, pk) ==
                          ref.dp_row(a.re.data(), a.im.data(), a.best.data(), n - 1, pk));
                }
            }
            CHECK(impl->max_norm_sq(a.re.data(), a.im.data(), n) ==
                  ref.max_norm_sq(a.re.data(), a.im.data(), n));
        }
    }
}

TEST_CASE("sum_pow agrees with a direct loop") {
    const Arrays a = random_arrays(0x51, 37);
    double direct = 0.0;
    for (std::size_t i = 0; i < 37; ++i)
        direct += a.re[i] * a.re[i] + a.im[i] * a.im[i];
    const double got = scalar_impl().sum_pow(a.re.data(), a.im.data(), 37, PowKind::two);
    CHECK(got == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("general fallbacks agree with specialized kernels on integer s") {
    const Arrays a = random_arrays(0x52, 21);
    for (double s : {1.0, 2.0, 3.0, 4.0}) {
        PowKind pk;
        REQUIRE(classify_pow(s, pk));
        CHECK(sum_pow_general(a.re.data(), a.im.data(), 21, s) ==
              scalar_impl().sum_pow(a.re.data(), a.im.data(), 21, pk));
        CHECK(dp_row_general(a.re.data(), a.im.data(), a.best.data(), 20, s) ==
              scalar_impl().dp_row(a.re.data(), a.im.data(), a.best.data(), 20, pk));
        CHECK(weighted_sum_pow_general(a.re.data(), a.im.data(), a.w.data(), 21, s) ==
              scalar_impl().weighted_sum_pow(a.re.data(), a.im.data(), a.w.data(), 21, pk));
    }
}

TEST_CASE("dp_row returns -inf for the empty candidate set") {
    const Arrays a = random_arrays(0x53, 4);
    const double v = scalar_impl().dp_row(a.re.data(), a.im.data(), a.best.data(), 0, PowKind::two);
    CHECK(std::isinf(v));
    CHECK(v < 0.0);
}

TEST_CASE("max_norm_sq of the empty array is zero") {
    CHECK(scalar_impl().max_norm_sq(nullptr, nullptr, 0) == 0.0);
}
