// Scalar reference kernels. Deliberately written with the same 4-lane
// accumulator blocking and combine order as the AVX2 variant so the two
// produce bit-identical doubles (this file is compiled with -ffp-contract=off;
// a fused a*b+c in only one variant would break exact equality).
#include "varmult/kernels.hpp"

#include <limits>

namespace varmult::kernels {

namespace {

double sum_pow_scalar(const double* re, const double* im, std::size_t n, PowKind pk) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (int l = 0; l < 4; ++l) {
            double x = re[i + l];
            double y = im[i + l];
            double d2 = x * x + y * y;
            acc[l] += variation_pow(d2, pk);
        }
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        double x = re[i];
        double y = im[i];
        double d2 = x * x + y * y;
        tail += variation_pow(d2, pk);
    }
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + tail;
}

double max_norm_sq_scalar(const double* re, const double* im, std::size_t n) {
    // max is exact (no rounding), so a plain loop matches any lane order.
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = re[i];
        double y = im[i];
        double d2 = x * x + y * y;
        if (d2 > m) m = d2;
    }
    return m;
}

double weighted_sum_pow_scalar(const double* re, const double* im, const double* w,
                               std::size_t n, PowKind pk) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (int l = 0; l < 4; ++l) {
            double x = re[i + l];
            double y = im[i + l];
            double d2 = x * x + y * y;
            acc[l] += w[i + l] * variation_pow(d2, pk);
        }
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        double x = re[i];
        double y = im[i];
        double d2 = x * x + y * y;
        tail += w[i] * variation_pow(d2, pk);
    }
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + tail;
}

double dp_row_scalar(const double* re, const double* im, const double* best,
                     std::size_t j, PowKind pk) {
    // Candidates are independent and max is exact, so a plain loop is
    // bit-identical to the vector variant's lane-parallel evaluation.
    double m = -std::numeric_limits<double>::infinity();
    double xj = re[j];
    double yj = im[j];
    for (std::size_t i = 0; i < j; ++i) {
        double dx = xj - re[i];
        double dy = yj - im[i];
        double d2 = dx * dx + dy * dy;
        double cand = best[i] + variation_pow(d2, pk);
        if (cand > m) m = cand;
    }
    return m;
}

} // namespace

const Impl& scalar_impl() {
    static const Impl impl{
        "scalar",
        &sum_pow_scalar,
        &max_norm_sq_scalar,
        &weighted_sum_pow_scalar,
        &dp_row_scalar,
    };
    return impl;
}

double sum_pow_general(const double* re, const double* im, std::size_t n, double s) {
    PowKind pk;
    if (classify_pow(s, pk)) return sum_pow_scalar(re, im, n, pk);
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (int l = 0; l < 4; ++l) {
            double x = re[i + l];
            double y = im[i + l];
            acc[l] += std::pow(x * x + y * y, 0.5 * s);
        }
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        double x = re[i];
        double y = im[i];
        tail += std::pow(x * x + y * y, 0.5 * s);
    }
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + tail;
}

double weighted_sum_pow_general(const double* re, const double* im, const double* w,
                                std::size_t n, double s) {
    PowKind pk;
    if (classify_pow(s, pk)) return weighted_sum_pow_scalar(re, im, w, n, pk);
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (int l = 0; l < 4; ++l) {
            double x = re[i + l];
            double y = im[i + l];
            acc[l] += w[i + l] * std::pow(x * x + y * y, 0.5 * s);
        }
    }
    double tail = 0.0;
    for (; i < n; ++i) {
        double x = re[i];
        double y = im[i];
        tail += w[i] * std::pow(x * x + y * y, 0.5 * s);
    }
    return ((acc[0] + acc[1]) + (acc[2] + acc[3])) + tail;
}

double dp_row_general(const double* re, const double* im, const double* best,
                      std::size_t j, double s) {
    PowKind pk;
    if (classify_pow(s, pk)) return active().dp_row(re, im, best, j, pk);
    double m = -std::numeric_limits<double>::infinity();
    double xj = re[j];
    double yj = im[j];
    for (std::size_t i = 0; i < j; ++i) {
        double dx = xj - re[i];
        double dy = yj - im[i];
        double cand = best[i] + std::pow(dx * dx + dy * dy, 0.5 * s);
        if (cand > m) m = cand;
    }
    return m;
}

} // namespace varmult::kernels
