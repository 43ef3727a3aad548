// Fourier multipliers on the periodic grid: operator-valued symbols sampled
// at integer frequencies, frequency projections, the dyadic band partition,
// symbol variation profiles, the diagonal resolvent family, and a probing
// estimator for weighted multiplier norms.
#pragma once

#include "varmult/fourier.hpp"
#include "varmult/weights.hpp"

#include <cstdint>
#include <vector>

namespace varmult {

// A symbol assigns an operator m(k) : domain -> codomain to every integer
// frequency k in [-N/2, N/2). Scalar and diagonal symbols are stored as such:
// their operator norms (on any l^p) are exact, and most of the lab runs on
// them. General symbols hold dense bin-major matrices.
class Symbol {
public:
    enum class Kind { Scalar, Diagonal, General };

    // m(k) = values[bin] * identity on `space`.
    static Symbol scalar(int n, const SpaceDescriptor& space, std::vector<Complex> values);
    // m(k) = diag(diags[bin * dim .. bin * dim + dim)) on `space`.
    static Symbol diagonal(int n, const SpaceDescriptor& space, std::vector<Complex> diags);
    // Dense matrices, bin-major, each row-major codomain.dim() x domain.dim().
    static Symbol general(int n, const SpaceDescriptor& domain, const SpaceDescriptor& codomain,
                          std::vector<Complex> matrices);

    Kind kind() const { return kind_; }
    int grid() const { return n_; }
    const SpaceDescriptor& domain() const { return domain_; }
    const SpaceDescriptor& codomain() const { return codomain_; }

    // Scalar value / diagonal entries at a signed frequency.
    Complex scalar_at(int k) const;
    std::vector<Complex> diagonal_at(int k) const;
    // Dense materialization of m(k) (any kind).
    OperatorValue operator_at(int k) const;

    // out = m(k at bin b) * in, dimensions codomain.dim() / domain.dim().
    void apply_bin(int b, const Complex* in, Complex* out) const;

    // Pointwise product (this after other... both symbols on one grid with
    // other.codomain == this->domain); used by the algebra tests.
    Symbol compose(const Symbol& other) const;

    Symbol scaled(Complex c) const;

private:
    Symbol(Kind k, int n, SpaceDescriptor dom, SpaceDescriptor cod, std::vector<Complex> store)
        : kind_(k), n_(n), domain_(dom), codomain_(cod), store_(std::move(store)) {}
    Kind kind_;
    int n_;
    SpaceDescriptor domain_;
    SpaceDescriptor codomain_;
    // Scalar: n values; Diagonal: n*dim entries; General: n*dy*dx entries.
    std::vector<Complex> store_;
};

// T_m f: forward transform, multiply each bin by m(k), inverse transform.
Signal apply_multiplier(const Symbol& m, const Signal& f);

// S_I f: keep the modes with frequency in [I.lo, I.hi), zero the rest.
Signal frequency_projection(const FrequencyInterval& I, const Signal& f);

// Dyadic partition of the integer band [-N/2, N/2): the zero cell [0, 1),
// positive blocks [2^j, min(2^{j+1}, N/2)), mirrored negative blocks
// (-2^{j+1}, -2^j] (stored half-open as [-2^{j+1}+1, -2^j+1)), and the
// unpaired Nyquist frequency -N/2 as the truncated topmost negative block.
// Cells are returned zero first, then positive ascending, then negative
// with ascending magnitude, Nyquist last; they tile the band disjointly.
std::vector<FrequencyInterval> dyadic_partition(int n);

// Per-block s-variation seminorm of the symbol restricted to the integer
// frequencies of each block. Exact operator-norm increments for scalar and
// diagonal symbols; probing lower bounds for general symbols. Variation
// between integer frequencies is invisible at grid resolution (callers that
// need continuum profiles sample analytic symbols on real-valued paths).
std::vector<double> symbol_variation_profile(const Symbol& m,
                                             const std::vector<FrequencyInterval>& blocks,
                                             double s);

// Diagonal resolvent entry a_level(xi) = 2^level / (i xi + 2^level)
//                                      = 1 / (1 + i xi 2^{-level}).
Complex resolvent_entry(int level, double xi);

// The resolvent symbol m(xi) = A(i xi + A)^{-1}, A = diag(2^1, ..., 2^dims),
// sampled at the integer grid frequencies (the frequency variable is taken as
// the bare integer k, without a 2*pi factor; experiments echo this choice).
Symbol resolvent_symbol(int dims, int n, Exponent p);

struct MultiplierNormEstimate {
    double value = 0.0;
    Signal best_probe;
};

// Lower-bound estimate of ||T_m||_{L^p(w) -> L^p(w)} as the best ratio
// ||T_m f||_{L^p(w)} / ||f||_{L^p(w)} over a probe schedule: every single
// mode (whose ratio reduces exactly to the operator ratio of m(k) and is
// evaluated in closed form), seeded random bumps per dyadic block, `probes`
// random Gaussian signals, and additive ascent refinement around the
// incumbent. The returned probe realizes the reported ratio up to transform
// roundoff.
MultiplierNormEstimate estimate_multiplier_norm(const Symbol& m, Exponent p,
                                                const WeightGrid& w, int probes,
                                                std::uint64_t seed);

} // namespace varmult
