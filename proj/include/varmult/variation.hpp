// Variation-space machinery: s-variation seminorms of sampled paths (O(N^2)
// dynamic program exactly equivalent to increasing-subset enumeration), step
// functions and their atom bounds, Holder control, and the exact
// difference-quotient integral for step functions.
#pragma once

#include "varmult/exponent.hpp"
#include "varmult/spaces.hpp"

#include <cstddef>
#include <vector>

namespace varmult {

// A function of one real variable observed at finitely many strictly
// increasing times. Variation quantities depend only on the sample order,
// never on the time gaps; times matter for Holder and disjointness checks.
struct SampledPath {
    std::vector<double> times;
    std::vector<ElementValue> values;
    SpaceDescriptor space;
};

// Right-open step function sum_k 1_{[b_k, b_{k+1})} c_k, identically zero
// outside [b_0, b_M). breakpoints has M+1 entries, pieces has M.
struct StepFunction {
    std::vector<double> breakpoints;
    std::vector<ElementValue> pieces;
    SpaceDescriptor space;
};

void validate_path(const char* fn, const SampledPath& path);
void validate_step(const char* fn, const StepFunction& f);

// Shared increment primitive: ||b - a||^s computed through the squared norm,
// with the specialized s = 1, 2, 3, 4 paths of kernels::variation_pow. The
// DP, the SIMD row kernels, and the brute-force oracle all evaluate
// increments through this exact routine; the acceptance suite compares their
// objectives bit-for-bit, which only holds with a single shared definition.
double increment_pow(const SpaceDescriptor& space, const ElementValue& a,
                     const ElementValue& b, double s);

// Root of a DP objective: x^(1/s) with the same special cases everywhere.
double root_pow(double x, double s);

// s-variation seminorm: sup over increasing subsets of sample indices of
// (sum_i ||v(t_{i+1}) - v(t_i)||^s)^(1/s). s must be a finite real >= 1.
double vs_seminorm(const SampledPath& path, double s);

// Pre-root DP objective (the sup of increment power sums). Exposed because
// oracle comparisons are made on objectives, bit-for-bit.
double vs_seminorm_objective(const SampledPath& path, double s);

// The same DP over a scalar complex path in split (SoA) form; `best` is a
// caller-provided scratch buffer of at least n doubles. Used by the Carleson
// module, which runs one DP per grid point and cannot afford per-point
// element allocation.
double vs_objective_complex(const double* re, const double* im, std::size_t n,
                            double s, double* best);

// Largest sample norm (the discrete sup norm of the path).
double sup_norm(const SampledPath& path);

// V^s norm = sup norm + seminorm; V^inf is the sup norm by convention.
double vs_norm(const SampledPath& path, Exponent s);

// l^r aggregate of per-path V^s norms (seminorms when homogeneous = true).
// Paths must live on pairwise disjoint time intervals (touching endpoints
// allowed, right-open semantics) and share one space.
double ell_r_vs_norm(const std::vector<SampledPath>& paths, Exponent r, double s,
                     bool homogeneous);

// Atom-decomposition upper bound (sum_I ||c_I||^s)^(1/s) of a step function.
double rs_atom_upper(const StepFunction& f, double s);

// Holder seminorm sup_{i<j} ||v_j - v_i|| / (t_j - t_i)^alpha, alpha in (0, 1].
double holder_seminorm(const SampledPath& path, double alpha);
double holder_norm(const SampledPath& path, double alpha);

// Exact value of integral ||f(x+h) - f(x)||^r dx for a step function: the
// integrand is piecewise constant on the cells cut by {b_i} and {b_i - h},
// so the integral is a finite closed-form sum. Requires h > 0, r >= 1 finite.
double difference_seminorm(const StepFunction& f, double r, double h);

// Exhaustive enumeration oracle for vs_seminorm over every increasing subset
// of samples. Accepts at most 16 increments (17 samples); throws beyond that.
// Agrees with the DP bit-for-bit on the pre-root objective.
double brute_force_vs(const SampledPath& path, double s);
double brute_force_vs_objective(const SampledPath& path, double s);

// Canonical sampling of a step function: one flanking zero sample on each
// side (the function vanishes outside its support, and that jump carries
// variation), every breakpoint, and one interior point per piece. On this
// path vs_seminorm equals the continuum variation of f.
SampledPath path_from_step(const StepFunction& f);

// Pointwise evaluation, zero outside the support, right-open at breakpoints.
ElementValue step_eval(const StepFunction& f, double x);

} // namespace varmult
