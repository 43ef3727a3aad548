#include "varmult/randomized.hpp"
#include "varmult/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace varmult;

namespace {

ElementValue random_element(Rng& r, int dim) {
    ElementValue v(static_cast<std::size_t>(dim));
    for (Complex& z : v) z = r.cgaussian();
    return v;
}

} // namespace

TEST_CASE("hilbert space second moment is the sum of squared norms, exactly") {
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3);
    Rng root(0x30);
    for (int trial = 0; trial < 20; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        const int k = 1 + trial % 10;
        std::vector<ElementValue> xs;
        double sum_sq = 0.0;
        for (int i = 0; i < k; ++i) {
            xs.push_back(random_element(r, 3));
            sum_sq += norm_sq(space, xs.back());
        }
        const RademacherEstimate est = rademacher_mean(space, xs, 2.0, 4);
        CHECK(est.method == EstimateMethod::Exact);
        CHECK(est.std_error == 0.0);
        CHECK(est.sample_count == (std::int64_t{1} << k));
        CHECK(std::abs(est.mean - std::sqrt(sum_sq)) <=
              1e-12 * std::max(1.0, std::sqrt(sum_sq)));
    }
}

TEST_CASE("single vector: every moment returns its norm") {
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(4.0), 2);
    Rng r(0x31);
    const std::vector<ElementValue> xs{random_element(r, 2)};
    const double n = norm(space, xs[0]);
    for (double moment : {1.0, 2.0, 4.0}) {
        const RademacherEstimate est = rademacher_mean(space, xs, moment, 4);
        CHECK(est.mean == doctest::Approx(n).epsilon(1e-13));
    }
}

TEST_CASE("eighth roots on one vector also return its norm") {
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    Rng r(0x32);
    const std::vector<ElementValue> xs{random_element(r, 2)};
    const RademacherEstimate est =
        rademacher_mean(space, xs, 2.0, 4, 0x5161D5, SignMode::EighthRoots);
    CHECK(est.method == EstimateMethod::Exact);
    CHECK(est.sample_count == 8);
    CHECK(est.mean == doctest::Approx(norm(space, xs[0])).epsilon(1e-13));
}

TEST_CASE("eighth-root second moment matches the plus-minus one on hilbert space") {
    // On a Hilbert space both ensembles give E||sum eps x||^2 = sum ||x||^2.
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    Rng r(0x33);
    std::vector<ElementValue> xs;
    for (int i = 0; i < 4; ++i) xs.push_back(random_element(r, 2));
    const double a = rademacher_mean(space, xs, 2.0, 4).mean;
    const double b =
        rademacher_mean(space, xs, 2.0, 4, 0x5161D5, SignMode::EighthRoots).mean;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("monte carlo agrees with enumeration within three standard errors") {
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    Rng root(0x34);
    int hits = 0;
    for (int trial = 0; trial < 20; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        std::vector<ElementValue> xs;
        for (int i = 0; i < 5; ++i) xs.push_back(random_element(r, 2));
        const double exact = rademacher_mean(space, xs, 1.0, 4).mean;
        const RademacherEstimate mc = rademacher_mean_mc(space, xs, 1.0, 40000, r.bits());
        CHECK(mc.method == EstimateMethod::MonteCarlo);
        CHECK(mc.std_error > 0.0);
        if (std::abs(mc.mean - exact) <= 3.0 * mc.std_error) ++hits;
    }
    CHECK(hits >= 19);
}

TEST_CASE("large families fall back to monte carlo automatically") {
    const SpaceDescriptor space = SpaceDescriptor::scalar();
    Rng r(0x35);
    std::vector<ElementValue> xs;
    for (int i = 0; i < 20; ++i) xs.push_back(random_element(r, 1));
    const RademacherEstimate est = rademacher_mean(space, xs, 2.0, 5000, 0x36);
    CHECK(est.method == EstimateMethod::MonteCarlo);
    CHECK(est.sample_count == 5000);
    // Hilbert identity still holds statistically.
    double sum_sq = 0.0;
    for (const ElementValue& x : xs) sum_sq += norm_sq(space, x);
    CHECK(est.mean == doctest::Approx(std::sqrt(sum_sq)).epsilon(0.05));
}

TEST_CASE("rademacher mean input validation") {
    const SpaceDescriptor space = SpaceDescriptor::scalar();
    CHECK_THROWS_AS(rademacher_mean(space, {}, 2.0, 4), std::invalid_argument);
    Rng r(0x37);
    const std::vector<ElementValue> xs{random_element(r, 1)};
    CHECK_THROWS_AS(rademacher_mean(space, xs, 0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(rademacher_mean_mc(space, xs, 2.0, 1, 0x38), std::invalid_argument);
}

TEST_CASE("hilbert spaces have type 2 and cotype 2 with constant 1") {
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3);
    Rng r(0x39);
    std::vector<ElementValue> fam;
    for (int i = 0; i < 6; ++i) fam.push_back(random_element(r, 3));
    CHECK(type_constant(space, fam, 2.0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(cotype_constant(space, fam, Exponent::finite(2.0)) ==
          doctest::Approx(1.0).epsilon(1e-10));
    // Weaker exponents only lower the witnessed constant.
    CHECK(type_constant(space, fam, 1.0) <= 1.0 + 1e-10);
    CHECK(cotype_constant(space, fam, Exponent::finite(4.0)) <= 1.0 + 1e-10);
    CHECK_THROWS_AS(type_constant(space, fam, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(cotype_constant(space, fam, Exponent::finite(1.5)),
                    std::invalid_argument);
}

TEST_CASE("l1 coordinate basis witnesses nontrivial type constants") {
    // In l^1_n the basis vectors give E||sum eps e_i|| = n while the l^2
    // aggregate is sqrt(n): the type-2 constant witnessed is sqrt(n).
    const int n = 4;
    const SpaceDescriptor l1 = SpaceDescriptor::sequence_p(Exponent::finite(1.0), n);
    std::vector<ElementValue> basis;
    for (int i = 0; i < n; ++i) {
        ElementValue e(static_cast<std::size_t>(n), Complex(0.0, 0.0));
        e[static_cast<std::size_t>(i)] = Complex(1.0, 0.0);
        basis.push_back(std::move(e));
    }
    CHECK(type_constant(l1, basis, 2.0) == doctest::Approx(std::sqrt(4.0)).epsilon(1e-10));
    // l^inf basis vectors: sums always have sup norm 1 while the l^2
    // aggregate is sqrt(n), witnessing cotype-2 constant sqrt(n).
    const SpaceDescriptor li = SpaceDescriptor::sequence_p(Exponent::infinity(), n);
    CHECK(cotype_constant(li, basis, Exponent::finite(2.0)) ==
          doctest::Approx(std::sqrt(4.0)).epsilon(1e-10));
}

TEST_CASE("rbound of {I, -I} is 1 and singletons give the operator norm") {
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    const OperatorValue id = op_identity(space);
    const OperatorValue neg = op_scale(Complex(-1.0, 0.0), id);
    CHECK(rbound_lower({id, neg}, 24, 0x40) == doctest::Approx(1.0).epsilon(1e-12));
    Rng r(0x41);
    std::vector<Complex> diag{Complex(0.3, 0.0), Complex(0.0, 2.5)};
    const OperatorValue d = op_diagonal(space, diag);
    CHECK(rbound_lower({d}, 24, 0x42) == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("rbound dominates every member's operator norm") {
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    Rng r(0x43);
    std::vector<OperatorValue> ops;
    double max_norm = 0.0;
    for (int i = 0; i < 3; ++i) {
        std::vector<Complex> diag{r.cgaussian(), r.cgaussian()};
        for (const Complex& z : diag) max_norm = std::max(max_norm, std::abs(z));
        ops.push_back(op_diagonal(space, diag));
    }
    const double rb = rbound_lower(ops, 24, 0x44);
    CHECK(rb >= max_norm - 1e-12);
}

TEST_CASE("rbound input validation") {
    CHECK_THROWS_AS(rbound_lower({}, 8, 0x45), std::invalid_argument);
    const SpaceDescriptor a = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    const SpaceDescriptor b = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3);
    CHECK_THROWS_AS(rbound_lower({op_identity(a), op_identity(b)}, 8, 0x46),
                    std::invalid_argument);
}

TEST_CASE("rr-to-rbound rows: exact upper and ratio at most one") {
    const std::vector<RrToRboundRow> rows = rr_to_rbound_experiment(
        3, 1.5, Exponent::finite(3.0), Exponent::finite(3.0), 6, 12, 0x47);
    CHECK(rows.size() == 6);
    for (const RrToRboundRow& row : rows) {
        CHECK(row.upper > 0.0);
        CHECK(row.rbound <= row.upper * (1.0 + 1e-9));
        CHECK(row.ratio == doctest::Approx(row.rbound / row.upper).epsilon(1e-12));
        CHECK(row.pieces >= 1);
    }
    // Exponent relation must hold: 1/r = 1/t - 1/q.
    CHECK_THROWS_AS(rr_to_rbound_experiment(3, 1.5, Exponent::finite(3.0),
                                            Exponent::finite(2.0), 2, 8, 0x48),
                    std::invalid_argument);
}

TEST_CASE("cotype-from-bumps rows: recovery and the hilbert ratio") {
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    const std::vector<CotypeFromRubioRow> rows =
        cotype_from_rubio_experiment(space, 64, 4, 4.0, 2.0, 5, 0x49);
    CHECK(rows.size() == 5);
    for (const CotypeFromRubioRow& row : rows) {
        CHECK(row.recovery_error <= 1e-10);
        // q = 2 on a Hilbert space: the direct ratio is exactly 1.
        CHECK(row.direct_ratio == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(row.rubio_ratio == doctest::Approx(row.direct_ratio).epsilon(1e-9));
    }
    CHECK_THROWS_AS(cotype_from_rubio_experiment(space, 16, 4, 4.0, 2.0, 1, 0x4A),
                    std::invalid_argument);  // band does not fit
}
