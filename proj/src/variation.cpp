#include "varmult/variation.hpp"

#include "varmult/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace varmult {

namespace {

void check_exponent(const char* fn, double s) {
    if (!std::isfinite(s) || s < 1.0) {
        throw std::invalid_argument(std::string(fn) +
                                    ": variation exponent must be a finite real >= 1, got " +
                                    std::to_string(s));
    }
}

// Scalar fast path applies to every one-coordinate space whose norm is the
// complex magnitude computed as sqrt(re^2 + im^2); Schatten side-1 spaces go
// through the SVD and are excluded to keep norms and kernels bit-consistent.
bool scalar_like(const SpaceDescriptor& space) {
    return space.dim() == 1 && space.kind() != SpaceKind::Schatten;
}

} // namespace

void validate_path(const char* fn, const SampledPath& path) {
    if (path.times.empty()) {
        throw std::invalid_argument(std::string(fn) + ": path has no samples");
    }
    if (path.times.size() != path.values.size()) {
        throw std::invalid_argument(std::string(fn) + ": path has " +
                                    std::to_string(path.times.size()) + " times but " +
                                    std::to_string(path.values.size()) + " values");
    }
    for (std::size_t i = 1; i < path.times.size(); ++i) {
        if (!(path.times[i] > path.times[i - 1])) {
            throw std::invalid_argument(std::string(fn) +
                                        ": sample times must be strictly increasing (violated at index " +
                                        std::to_string(i) + ")");
        }
    }
    for (const auto& v : path.values) {
        if (static_cast<int>(v.size()) != path.space.dim()) {
            throw std::invalid_argument(std::string(fn) + ": path value has " +
                                        std::to_string(v.size()) + " coordinates but space " +
                                        path.space.str() + " expects " +
                                        std::to_string(path.space.dim()));
        }
    }
}

void validate_step(const char* fn, const StepFunction& f) {
    if (f.breakpoints.size() < 2) {
        throw std::invalid_argument(std::string(fn) + ": step function needs at least 2 breakpoints");
    }
    if (f.pieces.size() + 1 != f.breakpoints.size()) {
        throw std::invalid_argument(std::string(fn) + ": step function has " +
                                    std::to_string(f.breakpoints.size()) + " breakpoints but " +
                                    std::to_string(f.pieces.size()) + " pieces");
    }
    for (std::size_t i = 1; i < f.breakpoints.size(); ++i) {
        if (!(f.breakpoints[i] > f.breakpoints[i - 1])) {
            throw std::invalid_argument(std::string(fn) +
                                        ": breakpoints must be strictly increasing (violated at index " +
                                        std::to_string(i) + ")");
        }
    }
    for (const auto& c : f.pieces) {
        if (static_cast<int>(c.size()) != f.space.dim()) {
            throw std::invalid_argument(std::string(fn) + ": piece value has " +
                                        std::to_string(c.size()) + " coordinates but space " +
                                        f.space.str() + " expects " + std::to_string(f.space.dim()));
        }
    }
}

double increment_pow(const SpaceDescriptor& space, const ElementValue& a,
                     const ElementValue& b, double s) {
    if (scalar_like(space)) {
        double dx = b[0].real() - a[0].real();
        double dy = b[0].imag() - a[0].imag();
        return kernels::variation_pow_general(dx * dx + dy * dy, s);
    }
    ElementValue diff(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) diff[i] = b[i] - a[i];
    return kernels::variation_pow_general(norm_sq(space, diff), s);
}

double root_pow(double x, double s) {
    if (s == 1.0) return x;
    if (s == 2.0) return std::sqrt(x);
    return std::pow(x, 1.0 / s);
}

double vs_objective_complex(const double* re, const double* im, std::size_t n,
                            double s, double* best) {
    if (n <= 1) return 0.0;
    kernels::PowKind pk;
    bool special = kernels::classify_pow(s, pk);
    const auto& k = kernels::active();
    best[0] = 0.0;
    double top = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        double row = special ? k.dp_row(re, im, best, j, pk)
                             : kernels::dp_row_general(re, im, best, j, s);
        double bj = row > 0.0 ? row : 0.0;
        best[j] = bj;
        if (bj > top) top = bj;
    }
    return top;
}

double vs_seminorm_objective(const SampledPath& path, double s) {
    validate_path("vs_seminorm", path);
    check_exponent("vs_seminorm", s);
    std::size_t n = path.values.size();
    if (n <= 1) return 0.0;

    if (scalar_like(path.space)) {
        std::vector<double> re(n), im(n), best(n);
        for (std::size_t i = 0; i < n; ++i) {
            re[i] = path.values[i][0].real();
            im[i] = path.values[i][0].imag();
        }
        return vs_objective_complex(re.data(), im.data(), n, s, best.data());
    }

    // Generic spaces: same DP with increments through the shared primitive.
    std::vector<double> best(n);
    best[0] = 0.0;
    double top = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        double row = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < j; ++i) {
            double cand = best[i] + increment_pow(path.space, path.values[i], path.values[j], s);
            if (cand > row) row = cand;
        }
        double bj = row > 0.0 ? row : 0.0;
        best[j] = bj;
        if (bj > top) top = bj;
    }
    return top;
}

double vs_seminorm(const SampledPath& path, double s) {
    return root_pow(vs_seminorm_objective(path, s), s);
}

double sup_norm(const SampledPath& path) {
    validate_path("sup_norm", path);
    double m = 0.0;
    for (const auto& v : path.values) {
        double n = norm(path.space, v);
        if (n > m) m = n;
    }
    return m;
}

double vs_norm(const SampledPath& path, Exponent s) {
    if (s.is_infinite()) return sup_norm(path);
    return sup_norm(path) + vs_seminorm(path, s.value());
}

double ell_r_vs_norm(const std::vector<SampledPath>& paths, Exponent r, double s,
                     bool homogeneous) {
    check_exponent("ell_r_vs_norm", s);
    if (paths.empty()) return 0.0;
    for (const auto& p : paths) {
        validate_path("ell_r_vs_norm", p);
        if (p.space != paths.front().space) {
            throw std::invalid_argument("ell_r_vs_norm: paths must share one space, got " +
                                        paths.front().space.str() + " and " + p.space.str());
        }
    }
    // Pairwise-disjoint time intervals (right-open: touching endpoints allowed).
    std::vector<std::size_t> order(paths.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return paths[a].times.front() < paths[b].times.front();
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        const auto& prev = paths[order[k - 1]];
        const auto& cur = paths[order[k]];
        if (cur.times.front() < prev.times.back()) {
            throw std::invalid_argument("ell_r_vs_norm: path intervals overlap near t = " +
                                        std::to_string(cur.times.front()));
        }
    }

    std::vector<double> vals;
    vals.reserve(paths.size());
    for (const auto& p : paths) {
        vals.push_back(homogeneous ? vs_seminorm(p, s) : vs_norm(p, Exponent::finite(s)));
    }
    if (r.is_infinite()) {
        double m = 0.0;
        for (double v : vals) m = std::max(m, v);
        return m;
    }
    double rv = r.value();
    double total = 0.0;
    for (double v : vals) total += std::pow(v, rv);
    return std::pow(total, 1.0 / rv);
}

double rs_atom_upper(const StepFunction& f, double s) {
    validate_step("rs_atom_upper", f);
    check_exponent("rs_atom_upper", s);
    double total = 0.0;
    for (const auto& c : f.pieces) {
        total += kernels::variation_pow_general(norm_sq(f.space, c), s);
    }
    return root_pow(total, s);
}

double holder_seminorm(const SampledPath& path, double alpha) {
    validate_path("holder_seminorm", path);
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
        throw std::invalid_argument("holder_seminorm: alpha must lie in (0, 1], got " +
                                    std::to_string(alpha));
    }
    double m = 0.0;
    std::size_t n = path.values.size();
    ElementValue diff(path.space.dim());
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            for (std::size_t c = 0; c < diff.size(); ++c) {
                diff[c] = path.values[j][c] - path.values[i][c];
            }
            double ratio = norm(path.space, diff) /
                           std::pow(path.times[j] - path.times[i], alpha);
            if (ratio > m) m = ratio;
        }
    }
    return m;
}

double holder_norm(const SampledPath& path, double alpha) {
    return sup_norm(path) + holder_seminorm(path, alpha);
}

double difference_seminorm(const StepFunction& f, double r, double h) {
    validate_step("difference_seminorm", f);
    check_exponent("difference_seminorm", r);
    if (!std::isfinite(h) || h <= 0.0) {
        throw std::invalid_argument("difference_seminorm: shift h must be positive, got " +
                                    std::to_string(h));
    }
    // The integrand ||f(x+h) - f(x)||^r is piecewise constant on the cells cut
    // by {b_i} and {b_i - h}; outside [b_0 - h, b_M) it vanishes identically.
    std::vector<double> cuts;
    cuts.reserve(2 * f.breakpoints.size());
    for (double b : f.breakpoints) {
        cuts.push_back(b);
        cuts.push_back(b - h);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    ElementValue diff(f.space.dim());
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        double u = cuts[k - 1];
        double v = cuts[k];
        if (v <= u) continue;
        double mid = u + 0.5 * (v - u);
        ElementValue a = step_eval(f, mid);
        ElementValue b = step_eval(f, mid + h);
        for (std::size_t c = 0; c < diff.size(); ++c) diff[c] = b[c] - a[c];
        double nrm = norm(f.space, diff);
        if (nrm > 0.0) total += std::pow(nrm, r) * (v - u);
    }
    return total;
}

double brute_force_vs_objective(const SampledPath& path, double s) {
    validate_path("brute_force_vs", path);
    check_exponent("brute_force_vs", s);
    std::size_t n = path.values.size();
    if (n <= 1) return 0.0;
    if (n > 17) {
        throw std::invalid_argument("brute_force_vs: path has " + std::to_string(n - 1) +
                                    " increments; the exhaustive oracle accepts at most 16");
    }
    // Pairwise increment powers via the shared primitive, then enumerate every
    // increasing subset of sample indices as a bitmask.
    std::vector<double> P(n * n, 0.0);
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            P[i * n + j] = increment_pow(path.space, path.values[i], path.values[j], s);
        }
    }
    double top = 0.0;
    std::uint32_t full = static_cast<std::uint32_t>(1u << n);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        double acc = 0.0;
        int prev = -1;
        for (std::size_t b = 0; b < n; ++b) {
            if (mask & (1u << b)) {
                if (prev >= 0) acc += P[static_cast<std::size_t>(prev) * n + b];
                prev = static_cast<int>(b);
            }
        }
        if (acc > top) top = acc;
    }
    return top;
}

double brute_force_vs(const SampledPath& path, double s) {
    return root_pow(brute_force_vs_objective(path, s), s);
}

ElementValue step_eval(const StepFunction& f, double x) {
    ElementValue zero(static_cast<std::size_t>(f.space.dim()), Complex{0.0, 0.0});
    if (x < f.breakpoints.front() || x >= f.breakpoints.back()) return zero;
    auto it = std::upper_bound(f.breakpoints.begin(), f.breakpoints.end(), x);
    std::size_t idx = static_cast<std::size_t>(it - f.breakpoints.begin());
    return f.pieces[idx - 1];
}

SampledPath path_from_step(const StepFunction& f) {
    validate_step("path_from_step", f);
    double span = f.breakpoints.back() - f.breakpoints.front();
    double pad = span;
    SampledPath p;
    p.space = f.space;
    ElementValue zero(static_cast<std::size_t>(f.space.dim()), Complex{0.0, 0.0});
    p.times.push_back(f.breakpoints.front() - pad);
    p.values.push_back(zero);
    for (std::size_t k = 0; k + 1 < f.breakpoints.size(); ++k) {
        double lo = f.breakpoints[k];
        double hi = f.breakpoints[k + 1];
        p.times.push_back(lo);
        p.values.push_back(f.pieces[k]);
        p.times.push_back(lo + 0.5 * (hi - lo));
        p.values.push_back(f.pieces[k]);
    }
    p.times.push_back(f.breakpoints.back());
    p.values.push_back(zero);
    return p;
}

} // namespace varmult
