// Finite-dimensional model spaces: scalars, weighted sequence spaces l^p_n,
// and Schatten classes S^t on side x side matrices. Elements are flat complex
// coordinate vectors; operators are dense matrices tagged with domain and
// codomain descriptors.
#pragma once

#include "varmult/exponent.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace varmult {

using Complex = std::complex<double>;

// Coordinates of a space element, length must equal the descriptor's dim().
using ElementValue = std::vector<Complex>;

enum class SpaceKind { Scalar, SequenceP, Schatten };

class SpaceDescriptor {
public:
    // Defaults to the scalar space so aggregates holding a descriptor can be
    // default-constructed; every API validates descriptors it receives.
    SpaceDescriptor() : SpaceDescriptor(SpaceKind::Scalar, Exponent::finite(2.0), 1, 0) {}

    static SpaceDescriptor scalar();
    // l^p over n coordinates, n >= 1.
    static SpaceDescriptor sequence_p(Exponent p, int n);
    // Schatten-t class over side x side complex matrices, 1 <= side <= 256
    // (dense SVD cost cap).
    static SpaceDescriptor schatten(Exponent t, int side);

    SpaceKind kind() const { return kind_; }
    const Exponent& exponent() const { return exponent_; }
    // Number of complex coordinates an element carries (1, n, side*side).
    int dim() const { return dim_; }
    // Matrix side for Schatten spaces; logic error otherwise.
    int side() const;

    std::string str() const;

    friend bool operator==(const SpaceDescriptor& a, const SpaceDescriptor& b) {
        return a.kind_ == b.kind_ && a.exponent_ == b.exponent_ && a.dim_ == b.dim_;
    }
    friend bool operator!=(const SpaceDescriptor& a, const SpaceDescriptor& b) { return !(a == b); }

private:
    SpaceDescriptor(SpaceKind k, Exponent e, int dim, int side)
        : kind_(k), exponent_(e), dim_(dim), side_(side) {}
    SpaceKind kind_;
    Exponent exponent_;
    int dim_;
    int side_;
};

// Norm of an element in its space. Schatten norms go through singular values.
double norm(const SpaceDescriptor& space, const ElementValue& v);

// Squared norm. For Scalar and SequenceP(2) this is the direct coordinate sum
// of squares (no root-then-square); the variation DP and its brute-force
// oracle both consume this primitive, which is what allows bit-identical
// objective comparisons between them. Other spaces return norm()^2.
double norm_sq(const SpaceDescriptor& space, const ElementValue& v);

// Singular values (descending) of a Schatten element's matrix.
std::vector<double> singular_values(const SpaceDescriptor& space, const ElementValue& v);

struct OperatorValue {
    SpaceDescriptor domain;
    SpaceDescriptor codomain;
    // Row-major codomain.dim() x domain.dim() matrix.
    std::vector<Complex> entries;
};

OperatorValue op_identity(const SpaceDescriptor& space);
OperatorValue op_diagonal(const SpaceDescriptor& space, const std::vector<Complex>& diag);
OperatorValue op_zero(const SpaceDescriptor& domain, const SpaceDescriptor& codomain);
bool op_is_identity(const OperatorValue& T);
bool op_is_diagonal(const OperatorValue& T);

ElementValue op_apply(const OperatorValue& T, const ElementValue& v);
OperatorValue op_sub(const OperatorValue& A, const OperatorValue& B);
OperatorValue op_add(const OperatorValue& A, const OperatorValue& B);
OperatorValue op_scale(Complex c, const OperatorValue& A);

enum class NormMode { Exact, Estimate };

struct OperatorNormResult {
    double value = 0.0;
    // True when the value is an exact operator norm, false for the probing
    // lower-bound estimate.
    bool certified = false;
};

// Operator norm of T : domain -> codomain.
//
// Exact mode handles: the identity (norm 1); maps between Hilbertian spaces
// (Scalar / SequenceP(2) / Schatten(2)) via SVD; and diagonal matrices between
// equal SequenceP or Scalar descriptors, where the norm is max |d_i| for every
// p in [1, inf]. Anything else throws: silently falling back to an estimate
// would misreport certification.
//
// Estimate mode returns a certified=false lower bound from seeded probing
// (basis vectors, random unit vectors, multiplicative coordinate ascent);
// `budget` scales the probe count.
OperatorNormResult operator_norm(const OperatorValue& T, NormMode mode,
                                 int budget = 64, std::uint64_t seed = 0x5EED);

} // namespace varmult
