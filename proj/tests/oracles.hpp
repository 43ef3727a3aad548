// Slow reference implementations used only by tests.
#pragma once

#include "varmult/signal.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace varmult::testing {

// Direct O(N^2) DFT with the library's normalization (forward = plain sum).
inline std::vector<Complex> naive_dft(const std::vector<Complex>& a) {
    const std::size_t n = a.size();
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    const double two_pi = 6.283185307179586476925286766559;
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = -two_pi * static_cast<double>(j) *
                               static_cast<double>(k) / static_cast<double>(n);
            acc += a[j] * Complex(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

inline std::vector<Complex> naive_idft(const std::vector<Complex>& a) {
    const std::size_t n = a.size();
    std::vector<Complex> out(n, Complex(0.0, 0.0));
    const double two_pi = 6.283185307179586476925286766559;
    for (std::size_t j = 0; j < n; ++j) {
        Complex acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double ang = two_pi * static_cast<double>(j) *
                               static_cast<double>(k) / static_cast<double>(n);
            acc += a[k] * Complex(std::cos(ang), std::sin(ang));
        }
        out[j] = acc / static_cast<double>(n);
    }
    return out;
}

} // namespace varmult::testing
