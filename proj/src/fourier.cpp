#include "varmult/fourier.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace varmult {

Signal zero_signal(const SpaceDescriptor& space, int n, double period) {
    Signal f;
    f.space = space;
    f.period = period;
    f.data.assign(static_cast<std::size_t>(n) * space.dim(), Complex{0.0, 0.0});
    validate_signal("zero_signal", f);
    return f;
}

void validate_signal(const char* fn, const Signal& f) {
    int n = f.size();
    if (n < 2 || (n & (n - 1)) != 0) {
        throw std::invalid_argument(std::string(fn) + ": sample count must be a power of two >= 2, got " +
                                    std::to_string(n));
    }
    if (f.data.size() != static_cast<std::size_t>(n) * f.space.dim()) {
        throw std::invalid_argument(std::string(fn) + ": storage length " +
                                    std::to_string(f.data.size()) + " is not sample count " +
                                    std::to_string(n) + " x dim " + std::to_string(f.space.dim()));
    }
    if (!std::isfinite(f.period) || f.period <= 0.0) {
        throw std::invalid_argument(std::string(fn) + ": period must be positive, got " +
                                    std::to_string(f.period));
    }
}

void validate_interval(const char* fn, const FrequencyInterval& I, int n) {
    if (I.lo >= I.hi) {
        throw std::invalid_argument(std::string(fn) + ": empty frequency interval " + interval_str(I));
    }
    if (I.lo < -n / 2 || I.hi > n / 2) {
        throw std::invalid_argument(std::string(fn) + ": interval " + interval_str(I) +
                                    " leaves the band [-" + std::to_string(n / 2) + ", " +
                                    std::to_string(n / 2) + ")");
    }
}

std::string interval_str(const FrequencyInterval& I) {
    return "[" + std::to_string(I.lo) + ", " + std::to_string(I.hi) + ")";
}

namespace {

void fft_radix2(std::vector<Complex>& a, bool inverse) {
    std::size_t n = a.size();
    if (n == 0) return;
    if ((n & (n - 1)) != 0) {
        throw std::invalid_argument("fft: length must be a power of two, got " + std::to_string(n));
    }
    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // Direct-evaluated twiddle table (no multiplicative recurrence: keeps
    // every root of unity accurate to the ulp, which the 1e-10 round-trip
    // contract at N = 2^14 relies on).
    const double two_pi = 6.283185307179586476925286766559;
    double sgn = inverse ? 1.0 : -1.0;
    std::vector<Complex> tw(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
        double ang = sgn * two_pi * static_cast<double>(j) / static_cast<double>(n);
        tw[j] = Complex(std::cos(ang), std::sin(ang));
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                Complex u = a[i + k];
                Complex v = a[i + k + len / 2] * tw[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
    if (inverse) {
        double scale = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= scale;
    }
}

} // namespace

void fft_forward(std::vector<Complex>& a) { fft_radix2(a, false); }
void fft_inverse(std::vector<Complex>& a) { fft_radix2(a, true); }

std::vector<Complex> signal_spectrum(const Signal& f) {
    validate_signal("signal_spectrum", f);
    int n = f.size();
    int dim = f.space.dim();
    std::vector<Complex> out(f.data.size());
    std::vector<Complex> col(static_cast<std::size_t>(n));
    for (int c = 0; c < dim; ++c) {
        for (int j = 0; j < n; ++j) col[static_cast<std::size_t>(j)] = f.sample(j)[c];
        fft_forward(col);
        for (int b = 0; b < n; ++b) out[static_cast<std::size_t>(b) * dim + c] = col[static_cast<std::size_t>(b)];
    }
    return out;
}

Signal signal_from_spectrum(const std::vector<Complex>& spectrum,
                            const SpaceDescriptor& space, int n, double period) {
    if (spectrum.size() != static_cast<std::size_t>(n) * space.dim()) {
        throw std::invalid_argument("signal_from_spectrum: spectrum length " +
                                    std::to_string(spectrum.size()) + " is not bin count " +
                                    std::to_string(n) + " x dim " + std::to_string(space.dim()));
    }
    Signal f = zero_signal(space, n, period);
    int dim = space.dim();
    std::vector<Complex> col(static_cast<std::size_t>(n));
    for (int c = 0; c < dim; ++c) {
        for (int b = 0; b < n; ++b) col[static_cast<std::size_t>(b)] = spectrum[static_cast<std::size_t>(b) * dim + c];
        fft_inverse(col);
        for (int j = 0; j < n; ++j) f.sample(j)[c] = col[static_cast<std::size_t>(j)];
    }
    return f;
}

} // namespace varmult
