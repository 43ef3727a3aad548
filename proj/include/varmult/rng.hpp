// Deterministic random source. All experiment randomness flows from a single
// user-provided seed through forked sub-streams, so identical configs yield
// byte-identical outputs. Distribution transforms are written out by hand
// (std::uniform_real_distribution / std::normal_distribution are not pinned
// across standard library versions).
#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace varmult {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed), seed_mix_(seed) {}

    // Derive an independent stream; mixing uses splitmix64 so nearby stream
    // ids do not correlate.
    Rng fork(std::uint64_t stream) const {
        std::uint64_t z = seed_mix_ + (stream + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z = z ^ (z >> 31);
        return Rng(z);
    }

    std::uint64_t bits() { return eng_(); }

    // Uniform in [0, 1) with 53 significant bits.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Inclusive integer range.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        // Rejection-free modulo is fine here: span is tiny relative to 2^64,
        // bias is < 2^-50 and irrelevant for experiment sampling.
        return lo + static_cast<std::int64_t>(eng_() % span);
    }

    // Rademacher sign.
    double sign() { return (eng_() & 1u) ? 1.0 : -1.0; }

    // Standard normal via Box-Muller (no cached spare: keeps the stream
    // position a pure function of the call count).
    double gaussian() {
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        double u2 = uniform01();
        const double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    std::complex<double> cgaussian() {
        double re = gaussian();
        double im = gaussian();
        return {re, im};
    }

private:
    std::mt19937_64 eng_;
    std::uint64_t seed_mix_ = 0;
};

} // namespace varmult
