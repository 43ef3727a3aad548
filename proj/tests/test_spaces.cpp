#include "varmult/rng.hpp"
#include "varmult/spaces.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace varmult;

TEST_CASE("descriptor construction and accessors") {
    const SpaceDescriptor sc = SpaceDescriptor::scalar();
    CHECK(sc.kind() == SpaceKind::Scalar);
    CHECK(sc.dim() == 1);

    const SpaceDescriptor lp = SpaceDescriptor::sequence_p(Exponent::finite(3.0), 5);
    CHECK(lp.kind() == SpaceKind::SequenceP);
    CHECK(lp.dim() == 5);
    CHECK(lp.exponent().value() == 3.0);

    const SpaceDescriptor st = SpaceDescriptor::schatten(Exponent::finite(2.0), 3);
    CHECK(st.dim() == 9);
    CHECK(st.side() == 3);
    CHECK_THROWS_AS(lp.side(), std::invalid_argument);

    CHECK_THROWS_AS(SpaceDescriptor::sequence_p(Exponent::finite(2.0), 0), std::invalid_argument);
    CHECK_THROWS_AS(SpaceDescriptor::schatten(Exponent::finite(2.0), 300), std::invalid_argument);
}

TEST_CASE("sequence norms: hand values") {
    const SpaceDescriptor l1 = SpaceDescriptor::sequence_p(Exponent::finite(1.0), 2);
    const SpaceDescriptor l2 = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    const SpaceDescriptor li = SpaceDescriptor::sequence_p(Exponent::infinity(), 2);
    const ElementValue v{Complex(3.0, 0.0), Complex(0.0, 4.0)};
    CHECK(norm(l1, v) == 7.0);
    CHECK(norm(l2, v) == 5.0);
    CHECK(norm(li, v) == 4.0);
    CHECK(norm_sq(l2, v) == 25.0);
}

TEST_CASE("norm_sq is the direct coordinate sum for hilbertian spaces") {
    const SpaceDescriptor l2 = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3);
    Rng r(0x11);
    ElementValue v{r.cgaussian(), r.cgaussian(), r.cgaussian()};
    double direct = 0.0;
    for (const Complex& z : v) direct += z.real() * z.real() + z.imag() * z.imag();
    CHECK(norm_sq(l2, v) == direct);
}

TEST_CASE("schatten norms via singular values") {
    const SpaceDescriptor s1 = SpaceDescriptor::schatten(Exponent::finite(1.0), 2);
    const SpaceDescriptor s2 = SpaceDescriptor::schatten(Exponent::finite(2.0), 2);
    const SpaceDescriptor si = SpaceDescriptor::schatten(Exponent::infinity(), 2);
    // diag(3, 4) as a matrix.
    const ElementValue m{Complex(3.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
                         Complex(4.0, 0.0)};
    CHECK(norm(s1, m) == doctest::Approx(7.0).epsilon(1e-12));
    CHECK(norm(s2, m) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(norm(si, m) == doctest::Approx(4.0).epsilon(1e-12));
    const std::vector<double> sv = singular_values(s2, m);
    REQUIRE(sv.size() == 2);
    CHECK(sv[0] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(sv[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("element length must match the descriptor") {
    const SpaceDescriptor l2 = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3);
    CHECK_THROWS_AS(norm(l2, ElementValue{Complex(1.0, 0.0)}), std::invalid_argument);
}

TEST_CASE("operator algebra shapes") {
    const SpaceDescriptor a = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    const OperatorValue id = op_identity(a);
    CHECK(op_is_identity(id));
    CHECK(op_is_diagonal(id));
    const OperatorValue d = op_diagonal(a, {Complex(2.0, 0.0), Complex(0.0, 1.0)});
    CHECK(op_is_diagonal(d));
    CHECK_FALSE(op_is_identity(d));
    const ElementValue v{Complex(1.0, 0.0), Complex(1.0, 0.0)};
    const ElementValue dv = op_apply(d, v);
    CHECK(dv[0] == Complex(2.0, 0.0));
    CHECK(dv[1] == Complex(0.0, 1.0));
    const OperatorValue sum = op_add(d, op_scale(Complex(-1.0, 0.0), d));
    for (const Complex& z : sum.entries) CHECK(z == Complex(0.0, 0.0));
    CHECK_THROWS_AS(op_diagonal(a, {Complex(1.0, 0.0)}), std::invalid_argument);
}

TEST_CASE("exact operator norm of diagonals is the max modulus for any p") {
    for (double p : {1.0, 1.5, 2.0, 4.0}) {
        const SpaceDescriptor sp = SpaceDescriptor::sequence_p(Exponent::finite(p), 3);
        const OperatorValue d =
            op_diagonal(sp, {Complex(0.3, 0.4), Complex(-2.0, 0.0), Complex(0.0, 1.0)});
        const OperatorNormResult r = operator_norm(d, NormMode::Exact);
        CHECK(r.certified);
        CHECK(r.value == 2.0);
    }
    const SpaceDescriptor li = SpaceDescriptor::sequence_p(Exponent::infinity(), 2);
    const OperatorNormResult r =
        operator_norm(op_diagonal(li, {Complex(0.5, 0.0), Complex(0.0, -3.0)}), NormMode::Exact);
    CHECK(r.certified);
    CHECK(r.value == 3.0);
}

TEST_CASE("exact hilbertian operator norm equals the top singular value") {
    const SpaceDescriptor l2 = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    OperatorValue t = op_zero(l2, l2);
    // [[0, 2], [0, 0]]: norm 2.
    t.entries[1] = Complex(2.0, 0.0);
    const OperatorNormResult r = operator_norm(t, NormMode::Exact);
    CHECK(r.certified);
    CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("exact mode refuses genuinely non-exact cases") {
    const SpaceDescriptor l3 = SpaceDescriptor::sequence_p(Exponent::finite(3.0), 2);
    OperatorValue t = op_zero(l3, l3);
    t.entries[0] = Complex(1.0, 0.0);
    t.entries[1] = Complex(1.0, 0.0);
    t.entries[2] = Complex(1.0, 0.0);
    CHECK_THROWS_AS(operator_norm(t, NormMode::Exact), std::invalid_argument);
    CHECK(op_is_identity(op_identity(l3)));
    CHECK(operator_norm(op_identity(l3), NormMode::Exact).value == 1.0);
}

TEST_CASE("estimate mode is a lower bound and finds diagonal norms") {
    Rng r(0x22);
    for (int trial = 0; trial < 10; ++trial) {
        const SpaceDescriptor sp = SpaceDescriptor::sequence_p(Exponent::finite(4.0), 3);
        std::vector<Complex> diag;
        double maxmod = 0.0;
        for (int i = 0; i < 3; ++i) {
            diag.push_back(r.cgaussian());
            maxmod = std::max(maxmod, std::abs(diag.back()));
        }
        const OperatorValue d = op_diagonal(sp, diag);
        const OperatorNormResult est = operator_norm(d, NormMode::Estimate, 32, r.bits());
        CHECK_FALSE(est.certified);
        // Basis probing hits the best diagonal entry exactly.
        CHECK(est.value == doctest::Approx(maxmod).epsilon(1e-12));
        CHECK(est.value <= maxmod * (1.0 + 1e-12));
    }
}

TEST_CASE("estimate never exceeds the exact hilbertian norm") {
    Rng r(0x23);
    const SpaceDescriptor l2 = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3);
    for (int trial = 0; trial < 10; ++trial) {
        OperatorValue t = op_zero(l2, l2);
        for (Complex& z : t.entries) z = r.cgaussian();
        const double exact = operator_norm(t, NormMode::Exact).value;
        const double est = operator_norm(t, NormMode::Estimate, 48, r.bits()).value;
        CHECK(est <= exact * (1.0 + 1e-9));
        CHECK(est >= 0.5 * exact);  // ascent should get in the ballpark
    }
}
