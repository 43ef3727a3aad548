#include "varmult/carleson.hpp"
#include "varmult/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace varmult;

namespace {

Signal random_signal(Rng& r, const SpaceDescriptor& space, int n) {
    Signal f = zero_signal(space, n, 1.0);
    for (Complex& z : f.data) z = r.cgaussian();
    return f;
}

} // namespace

TEST_CASE("partial sums at the band edges") {
    Rng r(0xC0);
    const int n = 16;
    const Signal f = random_signal(r, SpaceDescriptor::scalar(), n);
    const Signal none = partial_fourier(f, -n / 2);
    for (const Complex& z : none.data) CHECK(std::abs(z) <= 1e-12);
    const Signal all = partial_fourier(f, n / 2);
    for (std::size_t i = 0; i < f.data.size(); ++i)
        CHECK(std::abs(all.data[i] - f.data[i]) <= 1e-10);
    CHECK_THROWS_AS(partial_fourier(f, n), std::invalid_argument);
}

TEST_CASE("maximal function dominates every partial sum and is dominated by variation") {
    Rng r(0xC1);
    const int n = 8;
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    const Signal f = random_signal(r, space, n);
    const std::vector<double> maxi = carleson_maximal(f);
    for (int cut = -n / 2; cut <= n / 2; ++cut) {
        const Signal pf = partial_fourier(f, cut);
        for (int j = 0; j < n; ++j)
            CHECK(norm(space, pf.sample_value(j)) <=
                  maxi[static_cast<std::size_t>(j)] * (1.0 + 1e-9) + 1e-12);
    }
    // C_* f <= C(0) + V^q of the cut path pointwise; the zero cut is the zero
    // signal here, so the variational value dominates the maximal one.
    for (double q : {1.0, 2.0, 3.0}) {
        const std::vector<double> vq = variational_carleson(f, q);
        for (int j = 0; j < n; ++j)
            CHECK(maxi[static_cast<std::size_t>(j)] <=
                  vq[static_cast<std::size_t>(j)] * (1.0 + 1e-9) + 1e-12);
    }
}

TEST_CASE("variational carleson dp equals the family enumeration oracle") {
    Rng root(0xC2);
    const SpaceDescriptor scalar = SpaceDescriptor::scalar();
    const SpaceDescriptor seq = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    for (int trial = 0; trial < 24; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        const int n = (trial % 3 == 0) ? 2 : (trial % 3 == 1) ? 4 : 8;
        const SpaceDescriptor& space = (trial % 2 == 0) ? scalar : seq;
        const Signal f = random_signal(r, space, n);
        for (double q : {1.0, 2.0, 3.0}) {
            const std::vector<double> objs = variational_carleson_objective(f, q);
            for (int j = 0; j < n; ++j) {
                CHECK(objs[static_cast<std::size_t>(j)] ==
                      variational_carleson_brute_objective(f, q, j));
                CHECK(variational_carleson(f, q)[static_cast<std::size_t>(j)] ==
                      doctest::Approx(variational_carleson_brute(f, q, j)).epsilon(1e-13));
            }
        }
    }
}

TEST_CASE("brute enumeration refuses large grids") {
    Rng r(0xC3);
    const Signal f = random_signal(r, SpaceDescriptor::scalar(), 16);
    CHECK_THROWS_AS(variational_carleson_brute_objective(f, 2.0, 0),
                    std::invalid_argument);
}

TEST_CASE("variational value decreases in q") {
    Rng r(0xC4);
    const Signal f = random_signal(r, SpaceDescriptor::scalar(), 16);
    const std::vector<double> v1 = variational_carleson(f, 1.0);
    const std::vector<double> v2 = variational_carleson(f, 2.0);
    const std::vector<double> v4 = variational_carleson(f, 4.0);
    for (int j = 0; j < 16; ++j) {
        CHECK(v2[static_cast<std::size_t>(j)] <=
              v1[static_cast<std::size_t>(j)] * (1.0 + 1e-12) + 1e-12);
        CHECK(v4[static_cast<std::size_t>(j)] <=
              v2[static_cast<std::size_t>(j)] * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("family functional is dominated by the variational value") {
    Rng root(0xC5);
    for (int trial = 0; trial < 12; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        const int n = 16;
        const Signal f = random_signal(r, SpaceDescriptor::scalar(), n);
        // Dyadic blocks form a valid disjoint family.
        IntervalFamily fam = dyadic_partition(n);
        for (double q : {1.0, 2.0}) {
            const std::vector<double> rf = rubio_functional(f, fam, q);
            const std::vector<double> vq = variational_carleson(f, q);
            for (int j = 0; j < n; ++j)
                CHECK(rf[static_cast<std::size_t>(j)] <=
                      vq[static_cast<std::size_t>(j)] * (1.0 + 1e-9) + 1e-12);
        }
    }
}

TEST_CASE("family validation rejects overlap") {
    IntervalFamily overlap{{0, 4}, {3, 6}};
    CHECK_THROWS_AS(validate_family("test", overlap, 16), std::invalid_argument);
    IntervalFamily touching{{0, 4}, {4, 6}};
    validate_family("test", touching, 16);  // touching endpoints are fine
    IntervalFamily outside{{-10, -8}};
    CHECK_THROWS_AS(validate_family("test", outside, 8), std::invalid_argument);
}

TEST_CASE("single mode: variational value is the mode magnitude everywhere") {
    const int n = 16;
    const SpaceDescriptor sc = SpaceDescriptor::scalar();
    Signal f = zero_signal(sc, n, 1.0);
    const double two_pi = 6.283185307179586476925286766559;
    const int k = 3;
    const Complex amp(0.8, -0.6);  // |amp| = 1
    for (int j = 0; j < n; ++j) {
        const double ang = two_pi * k * j / static_cast<double>(n);
        f.data[static_cast<std::size_t>(j)] = amp * Complex(std::cos(ang), std::sin(ang));
    }
    // The cut path jumps once (zero before k+1, the full mode after), so the
    // q-variation at every point is |f(x_j)| = 1.
    for (double q : {1.0, 2.0, 3.0}) {
        const std::vector<double> vq = variational_carleson(f, q);
        for (int j = 0; j < n; ++j)
            CHECK(vq[static_cast<std::size_t>(j)] == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("rubio growth experiment shape and exponent guard") {
    const SpaceDescriptor sc = SpaceDescriptor::scalar();
    const auto factory = [](const std::string& name, int n) {
        if (name == "constant") return constant_weight(n, 1.0, 1.0 / n);
        return step_weight(n, 4.0, 1.0 / n);
    };
    const std::vector<RubioGrowthRow> rows = rubio_growth_experiment(
        sc, 4.0, 4.0, {8, 16}, {"constant", "step"}, factory, 3, 0xC6);
    CHECK(rows.size() == 2 * 2 * 3);
    for (const RubioGrowthRow& row : rows) {
        CHECK(row.signal_norm > 0.0);
        CHECK(row.ratio == doctest::Approx(row.functional_norm / row.signal_norm)
                               .epsilon(1e-12));
    }
    // p must exceed the dual exponent of q: q = 4 -> q' = 4/3, p = 4/3 throws.
    CHECK_THROWS_AS(rubio_growth_experiment(sc, 4.0 / 3.0, 4.0, {8}, {"constant"},
                                            factory, 1, 0xC7),
                    std::invalid_argument);
}
