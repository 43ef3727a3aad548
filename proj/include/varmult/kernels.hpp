// Numeric inner-loop kernels over complex split (SoA) arrays, with a scalar
// reference implementation and an AVX2 variant selected at runtime. The two
// implementations are required to produce bit-identical doubles: both use the
// same 4-lane accumulator blocking, the same horizontal combine order, no FP
// contraction, and only IEEE-exact lane ops (+, -, *, sqrt, max). Tests
// enforce exact equality, not tolerances.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace varmult::kernels {

// Specialized integer powers of a complex magnitude. General real exponents
// take the *_general fallback (scalar only: a vectorized pow would not be
// bit-reproducible against libm).
enum class PowKind { one, two, three, four };

// True and sets `kind` when s is one of the specialized exponents.
inline bool classify_pow(double s, PowKind& kind) {
    if (s == 1.0) { kind = PowKind::one; return true; }
    if (s == 2.0) { kind = PowKind::two; return true; }
    if (s == 3.0) { kind = PowKind::three; return true; }
    if (s == 4.0) { kind = PowKind::four; return true; }
    return false;
}

// Canonical powered magnitude |z|^s given the squared magnitude |z|^2. Every
// variation/norm code path (DP, brute-force oracle, scalar and SIMD kernels)
// funnels through this exact sequence of operations; bit-identical oracle
// comparisons depend on it.
inline double variation_pow(double norm_sq, PowKind kind) {
    switch (kind) {
        case PowKind::one: return std::sqrt(norm_sq);
        case PowKind::two: return norm_sq;
        case PowKind::three: return norm_sq * std::sqrt(norm_sq);
        case PowKind::four: return norm_sq * norm_sq;
    }
    return norm_sq;
}

inline double variation_pow_general(double norm_sq, double s) {
    PowKind kind;
    if (classify_pow(s, kind)) return variation_pow(norm_sq, kind);
    return std::pow(norm_sq, 0.5 * s);
}

// One kernel implementation. All arrays are complex split form: re[i] + i*im[i].
struct Impl {
    const char* name;

    // sum_i |z_i|^pk
    double (*sum_pow)(const double* re, const double* im, std::size_t n, PowKind pk);

    // max_i |z_i|^2 (callers take one sqrt for the sup norm); 0 for n = 0.
    double (*max_norm_sq)(const double* re, const double* im, std::size_t n);

    // sum_i w_i * |z_i|^pk
    double (*weighted_sum_pow)(const double* re, const double* im, const double* w,
                               std::size_t n, PowKind pk);

    // Variation DP row update:
    //   max_{0 <= i < j} ( best[i] + variation_pow(|z_j - z_i|^2, pk) )
    // Returns -inf for j = 0 (empty candidate set).
    double (*dp_row)(const double* re, const double* im, const double* best,
                     std::size_t j, PowKind pk);
};

// The scalar reference (always available).
const Impl& scalar_impl();

// Currently active implementation. Resolved once on first use: the AVX2
// variant when compiled in and supported by the CPU, unless the environment
// variable VARMULT_KERNELS requests {auto, scalar, avx2} explicitly.
const Impl& active();

// All implementations usable on this machine (reference first).
std::vector<const Impl*> available();

// Look up by name ("scalar", "avx2"); nullptr when absent or unusable here.
const Impl* find(std::string_view name);

// Force a specific implementation (tests use this); throws std::invalid_argument
// for names that are unknown or unusable on this CPU.
void set_active(std::string_view name);

// General-exponent fallbacks (single scalar code path, shared by both kernel
// selections so results never depend on the dispatch decision).
double sum_pow_general(const double* re, const double* im, std::size_t n, double s);
double weighted_sum_pow_general(const double* re, const double* im, const double* w,
                                std::size_t n, double s);
double dp_row_general(const double* re, const double* im, const double* best,
                      std::size_t j, double s);

} // namespace varmult::kernels
