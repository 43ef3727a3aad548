#include "varmult/randomized.hpp"

#include "varmult/carleson.hpp"
#include "varmult/fourier.hpp"
#include "varmult/multiplier.hpp"
#include "varmult/parallel.hpp"
#include "varmult/rng.hpp"
#include "varmult/signal.hpp"
#include "varmult/variation.hpp"
#include "varmult/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace varmult {

namespace {

constexpr int kExactSignLimit = 12;  // 2^12 patterns
constexpr int kExactRootLimit = 4;   // 8^4 patterns

void check_family(const char* fn, const SpaceDescriptor& space,
                  const std::vector<ElementValue>& xs) {
    if (xs.empty()) throw std::invalid_argument(std::string(fn) + ": empty family");
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (static_cast<int>(xs[k].size()) != space.dim()) {
            throw std::invalid_argument(std::string(fn) + ": element " +
                                        std::to_string(k) + " has " +
                                        std::to_string(xs[k].size()) +
                                        " coordinates but space " + space.str() +
                                        " expects " + std::to_string(space.dim()));
        }
    }
}

// ||v||^moment, routed through norm_sq for moment 2 so the Hilbert identity
// E||sum eps x||^2 = sum ||x||^2 holds at full precision.
double norm_pow(const SpaceDescriptor& space, const ElementValue& v, double moment) {
    if (moment == 2.0) return norm_sq(space, v);
    double nrm = norm(space, v);
    if (moment == 1.0) return nrm;
    return std::pow(nrm, moment);
}

double root_of_mean(double mean_raw, double moment) {
    if (mean_raw <= 0.0) return 0.0;
    if (moment == 1.0) return mean_raw;
    if (moment == 2.0) return std::sqrt(mean_raw);
    return std::pow(mean_raw, 1.0 / moment);
}

std::array<Complex, 8> eighth_roots() {
    std::array<Complex, 8> w{};
    for (int d = 0; d < 8; ++d) {
        double t = 2.0 * std::numbers::pi * static_cast<double>(d) / 8.0;
        w[static_cast<std::size_t>(d)] = Complex(std::cos(t), std::sin(t));
    }
    return w;
}

// Exact average over every sign pattern. The sum for each pattern is built
// from scratch (no incremental updates), so the accumulation order is fixed
// and no drift builds up across patterns.
RademacherEstimate exact_mean(const SpaceDescriptor& space,
                              const std::vector<ElementValue>& xs, double moment,
                              SignMode mode) {
    const int k = static_cast<int>(xs.size());
    const int dim = space.dim();
    ElementValue s(static_cast<std::size_t>(dim));
    double acc = 0.0;
    std::int64_t patterns = 0;
    if (mode == SignMode::PlusMinusOne) {
        patterns = std::int64_t{1} << k;
        for (std::int64_t bits = 0; bits < patterns; ++bits) {
            std::fill(s.begin(), s.end(), Complex(0.0, 0.0));
            for (int n = 0; n < k; ++n) {
                double eps = ((bits >> n) & 1) ? -1.0 : 1.0;
                for (int c = 0; c < dim; ++c)
                    s[static_cast<std::size_t>(c)] += eps * xs[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)];
            }
            acc += norm_pow(space, s, moment);
        }
    } else {
        const std::array<Complex, 8> w = eighth_roots();
        patterns = 1;
        for (int n = 0; n < k; ++n) patterns *= 8;
        for (std::int64_t code = 0; code < patterns; ++code) {
            std::fill(s.begin(), s.end(), Complex(0.0, 0.0));
            std::int64_t digits = code;
            for (int n = 0; n < k; ++n) {
                Complex eps = w[static_cast<std::size_t>(digits % 8)];
                digits /= 8;
                for (int c = 0; c < dim; ++c)
                    s[static_cast<std::size_t>(c)] += eps * xs[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)];
            }
            acc += norm_pow(space, s, moment);
        }
    }
    RademacherEstimate est;
    est.mean = root_of_mean(acc / static_cast<double>(patterns), moment);
    est.std_error = 0.0;
    est.method = EstimateMethod::Exact;
    est.sample_count = patterns;
    return est;
}

RademacherEstimate monte_carlo_mean(const SpaceDescriptor& space,
                                    const std::vector<ElementValue>& xs,
                                    double moment, std::int64_t budget,
                                    std::uint64_t seed, SignMode mode) {
    const int k = static_cast<int>(xs.size());
    const int dim = space.dim();
    constexpr std::int64_t batch = 4096;
    const std::int64_t nbatches = (budget + batch - 1) / batch;
    std::vector<double> sum_y(static_cast<std::size_t>(nbatches), 0.0);
    std::vector<double> sum_y2(static_cast<std::size_t>(nbatches), 0.0);
    const std::array<Complex, 8> w = eighth_roots();
    Rng root(seed);
    // Per-batch forked streams with a fixed sequential reduction afterwards:
    // the result does not depend on the worker count.
    parallel_for(static_cast<int>(nbatches), [&](int b0, int b1) {
        ElementValue s(static_cast<std::size_t>(dim));
        for (int b = b0; b < b1; ++b) {
            Rng r = root.fork(static_cast<std::uint64_t>(b));
            std::int64_t lo = static_cast<std::int64_t>(b) * batch;
            std::int64_t hi = std::min(budget, lo + batch);
            double acc = 0.0, acc2 = 0.0;
            for (std::int64_t i = lo; i < hi; ++i) {
                std::fill(s.begin(), s.end(), Complex(0.0, 0.0));
                for (int n = 0; n < k; ++n) {
                    Complex eps = mode == SignMode::PlusMinusOne
                                      ? Complex(r.sign(), 0.0)
                                      : w[static_cast<std::size_t>(r.uniform_int(0, 7))];
                    for (int c = 0; c < dim; ++c)
                        s[static_cast<std::size_t>(c)] += eps * xs[static_cast<std::size_t>(n)][static_cast<std::size_t>(c)];
                }
                double y = norm_pow(space, s, moment);
                acc += y;
                acc2 += y * y;
            }
            sum_y[static_cast<std::size_t>(b)] = acc;
            sum_y2[static_cast<std::size_t>(b)] = acc2;
        }
    });
    double total = 0.0, total2 = 0.0;
    for (std::int64_t b = 0; b < nbatches; ++b) {
        total += sum_y[static_cast<std::size_t>(b)];
        total2 += sum_y2[static_cast<std::size_t>(b)];
    }
    const double m = static_cast<double>(budget);
    const double mean_raw = total / m;
    double var = std::max(0.0, (total2 - m * mean_raw * mean_raw) / (m - 1.0));
    const double se_raw = std::sqrt(var / m);
    RademacherEstimate est;
    est.mean = root_of_mean(mean_raw, moment);
    // Delta method through x -> x^(1/moment).
    est.std_error = mean_raw > 0.0
                        ? se_raw * (1.0 / moment) * std::pow(mean_raw, 1.0 / moment - 1.0)
                        : se_raw;
    est.method = EstimateMethod::MonteCarlo;
    est.sample_count = budget;
    return est;
}

} // namespace

RademacherEstimate rademacher_mean(const SpaceDescriptor& space,
                                   const std::vector<ElementValue>& xs,
                                   double moment, std::int64_t budget,
                                   std::uint64_t seed, SignMode mode) {
    check_family("rademacher_mean", space, xs);
    if (!(moment >= 1.0) || !std::isfinite(moment))
        throw std::invalid_argument("rademacher_mean: moment must be a finite real >= 1");
    const int k = static_cast<int>(xs.size());
    const bool exact = mode == SignMode::PlusMinusOne ? k <= kExactSignLimit
                                                      : k <= kExactRootLimit;
    if (exact) return exact_mean(space, xs, moment, mode);
    if (budget < 2)
        throw std::invalid_argument(
            "rademacher_mean: Monte Carlo budget must be >= 2 for " +
            std::to_string(k) + " vectors");
    return monte_carlo_mean(space, xs, moment, budget, seed, mode);
}

RademacherEstimate rademacher_mean_mc(const SpaceDescriptor& space,
                                      const std::vector<ElementValue>& xs,
                                      double moment, std::int64_t budget,
                                      std::uint64_t seed, SignMode mode) {
    check_family("rademacher_mean_mc", space, xs);
    if (!(moment >= 1.0) || !std::isfinite(moment))
        throw std::invalid_argument("rademacher_mean_mc: moment must be a finite real >= 1");
    if (budget < 2)
        throw std::invalid_argument("rademacher_mean_mc: budget must be >= 2");
    return monte_carlo_mean(space, xs, moment, budget, seed, mode);
}

double type_constant(const SpaceDescriptor& space,
                     const std::vector<ElementValue>& family, double t,
                     std::int64_t budget, std::uint64_t seed) {
    check_family("type_constant", space, family);
    if (!(t >= 1.0 && t <= 2.0))
        throw std::invalid_argument("type_constant: t must lie in [1, 2]");
    double sum = 0.0;
    for (const ElementValue& x : family) sum += std::pow(norm(space, x), t);
    if (sum <= 0.0)
        throw std::invalid_argument("type_constant: family norms are all zero");
    const double denom = std::pow(sum, 1.0 / t);
    return rademacher_mean(space, family, 2.0, budget, seed).mean / denom;
}

double cotype_constant(const SpaceDescriptor& space,
                       const std::vector<ElementValue>& family,
                       const Exponent& q, std::int64_t budget,
                       std::uint64_t seed) {
    check_family("cotype_constant", space, family);
    if (!q.is_infinite() && !(q.value() >= 2.0))
        throw std::invalid_argument("cotype_constant: q must lie in [2, inf]");
    double agg = 0.0;
    if (q.is_infinite()) {
        for (const ElementValue& x : family) agg = std::max(agg, norm(space, x));
    } else {
        double sum = 0.0;
        for (const ElementValue& x : family) sum += std::pow(norm(space, x), q.value());
        agg = std::pow(sum, 1.0 / q.value());
    }
    const double rad = rademacher_mean(space, family, 2.0, budget, seed).mean;
    if (rad <= 0.0)
        throw std::invalid_argument("cotype_constant: family norms are all zero");
    return agg / rad;
}

namespace {

// First-moment ratio of a fixed assignment: both means are exact (tuple
// length <= 12), so the value is attained, never an overshoot.
double assignment_ratio(const std::vector<OperatorValue>& ops,
                        const std::vector<int>& idx,
                        const std::vector<ElementValue>& xs) {
    const SpaceDescriptor& dom = ops.front().domain;
    const SpaceDescriptor& cod = ops.front().codomain;
    std::vector<ElementValue> txs(xs.size());
    for (std::size_t n = 0; n < xs.size(); ++n)
        txs[n] = op_apply(ops[static_cast<std::size_t>(idx[n])], xs[n]);
    const double den = exact_mean(dom, xs, 1.0, SignMode::PlusMinusOne).mean;
    if (den < 1e-300) return 0.0;
    const double num = exact_mean(cod, txs, 1.0, SignMode::PlusMinusOne).mean;
    return num / den;
}

} // namespace

double rbound_lower(const std::vector<OperatorValue>& ops, int budget,
                    std::uint64_t seed) {
    if (ops.empty()) throw std::invalid_argument("rbound_lower: empty operator family");
    for (const OperatorValue& T : ops) {
        if (T.domain != ops.front().domain || T.codomain != ops.front().codomain)
            throw std::invalid_argument(
                "rbound_lower: operators must share domain and codomain");
    }
    Rng root(seed);
    double best = 0.0;
    // Length-1 tuples reduce to single-vector ratios ||T x|| / ||x||; the
    // probing estimator maximizes exactly that, so its value is admissible.
    for (std::size_t i = 0; i < ops.size(); ++i) {
        Rng child = root.fork(0x510000u + i);
        best = std::max(best,
                        operator_norm(ops[i], NormMode::Estimate, 16, child.bits()).value);
    }
    const int dim = ops.front().domain.dim();
    const int trials = std::max(budget, 0);
    for (int trial = 0; trial < trials; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        const int len = static_cast<int>(r.uniform_int(2, 8));
        std::vector<int> idx(static_cast<std::size_t>(len));
        for (int n = 0; n < len; ++n)
            idx[static_cast<std::size_t>(n)] =
                static_cast<int>(r.uniform_int(0, static_cast<std::int64_t>(ops.size()) - 1));
        std::vector<ElementValue> xs(static_cast<std::size_t>(len));
        for (int n = 0; n < len; ++n) {
            ElementValue v(static_cast<std::size_t>(dim));
            for (int c = 0; c < dim; ++c) v[static_cast<std::size_t>(c)] = r.cgaussian();
            xs[static_cast<std::size_t>(n)] = std::move(v);
        }
        double cur = assignment_ratio(ops, idx, xs);
        // Multiplicative coordinate ascent, one vector at a time, until a
        // full sweep stalls (capped).
        static constexpr double kSteps[] = {2.0, 0.5, 1.1, 1.0 / 1.1};
        for (int sweep = 0; sweep < 8; ++sweep) {
            bool improved = false;
            for (int n = 0; n < len; ++n) {
                for (double step : kSteps) {
                    ElementValue saved = xs[static_cast<std::size_t>(n)];
                    for (Complex& z : xs[static_cast<std::size_t>(n)]) z *= step;
                    double cand = assignment_ratio(ops, idx, xs);
                    if (cand > cur * (1.0 + 1e-12)) {
                        cur = cand;
                        improved = true;
                    } else {
                        xs[static_cast<std::size_t>(n)] = std::move(saved);
                    }
                }
            }
            if (!improved) break;
        }
        best = std::max(best, cur);
    }
    return best;
}

std::vector<RrToRboundRow> rr_to_rbound_experiment(int dim, double t,
                                                   const Exponent& q,
                                                   const Exponent& r,
                                                   int trials, int budget,
                                                   std::uint64_t seed) {
    if (dim < 1 || dim > 64)
        throw std::invalid_argument("rr_to_rbound_experiment: dim must lie in [1, 64]");
    if (!(t >= 1.0 && t <= 2.0))
        throw std::invalid_argument("rr_to_rbound_experiment: t must lie in [1, 2]");
    if (!q.is_infinite() && !(q.value() >= 2.0))
        throw std::invalid_argument("rr_to_rbound_experiment: q must lie in [2, inf]");
    if (trials < 1)
        throw std::invalid_argument("rr_to_rbound_experiment: trials must be >= 1");
    const double want = 1.0 / t - (q.is_infinite() ? 0.0 : 1.0 / q.value());
    const double got = r.is_infinite() ? 0.0 : 1.0 / r.value();
    if (std::abs(want - got) > 1e-9)
        throw std::invalid_argument(
            "rr_to_rbound_experiment: exponent relation 1/r = 1/t - 1/q violated "
            "(1/r = " + std::to_string(got) + ", 1/t - 1/q = " + std::to_string(want) + ")");
    const SpaceDescriptor domain = SpaceDescriptor::sequence_p(q, dim);
    const SpaceDescriptor codomain = SpaceDescriptor::sequence_p(Exponent::finite(t), dim);
    // With domain l^q and codomain l^t, the diagonal operator norm is exactly
    // the l^r norm of the diagonal (Holder, 1/r = 1/t - 1/q), which is what
    // makes the l^r aggregate below exact rather than estimated.
    const SpaceDescriptor piece_space = SpaceDescriptor::sequence_p(r, dim);
    Rng root(seed);
    std::vector<RrToRboundRow> rows;
    rows.reserve(static_cast<std::size_t>(trials));
    for (int trial = 0; trial < trials; ++trial) {
        Rng tr = root.fork(static_cast<std::uint64_t>(trial));
        const int pieces = static_cast<int>(tr.uniform_int(1, 5));
        std::vector<OperatorValue> ops;
        StepFunction agg;
        agg.space = piece_space;
        for (int m = 0; m <= pieces; ++m) agg.breakpoints.push_back(static_cast<double>(m));
        for (int m = 0; m < pieces; ++m) {
            ElementValue diag(static_cast<std::size_t>(dim));
            for (int c = 0; c < dim; ++c) {
                const double mag = tr.uniform(0.05, 1.0);
                const double phase = tr.uniform(0.0, 2.0 * std::numbers::pi);
                diag[static_cast<std::size_t>(c)] =
                    Complex(mag * std::cos(phase), mag * std::sin(phase));
            }
            OperatorValue T = op_zero(domain, codomain);
            for (int c = 0; c < dim; ++c)
                T.entries[static_cast<std::size_t>(c) * static_cast<std::size_t>(dim) +
                          static_cast<std::size_t>(c)] = diag[static_cast<std::size_t>(c)];
            ops.push_back(std::move(T));
            agg.pieces.push_back(std::move(diag));
        }
        double upper = 0.0;
        if (r.is_infinite()) {
            for (const ElementValue& d : agg.pieces)
                upper = std::max(upper, norm(piece_space, d));
        } else {
            upper = rs_atom_upper(agg, r.value());
        }
        Rng rb = tr.fork(7);
        const double rb_value = rbound_lower(ops, budget, rb.bits());
        RrToRboundRow row;
        row.trial = trial;
        row.pieces = pieces;
        row.rbound = rb_value;
        row.upper = upper;
        row.ratio = upper > 0.0 ? rb_value / upper : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::vector<CotypeFromRubioRow> cotype_from_rubio_experiment(
    const SpaceDescriptor& space, int grid_n, int modes, double p, double q,
    int trials, std::uint64_t seed, SignMode mode) {
    if (grid_n < 8 || (grid_n & (grid_n - 1)) != 0)
        throw std::invalid_argument(
            "cotype_from_rubio_experiment: grid size must be a power of two >= 8");
    if (modes < 1 || modes > 64)
        throw std::invalid_argument(
            "cotype_from_rubio_experiment: modes must lie in [1, 64]");
    if (3 * modes + 1 >= grid_n / 2)
        throw std::invalid_argument(
            "cotype_from_rubio_experiment: mode band reaches frequency " +
            std::to_string(3 * modes + 1) + " but an " + std::to_string(grid_n) +
            "-point grid only resolves |xi| < " + std::to_string(grid_n / 2));
    if (!std::isfinite(p) || !(p >= 1.0))
        throw std::invalid_argument(
            "cotype_from_rubio_experiment: p must be a finite real >= 1");
    if (!std::isfinite(q) || !(q >= 2.0))
        throw std::invalid_argument(
            "cotype_from_rubio_experiment: q must be a finite real >= 2");
    if (trials < 1)
        throw std::invalid_argument("cotype_from_rubio_experiment: trials must be >= 1");

    const int n = grid_n;
    const int dim = space.dim();
    const std::array<Complex, 8> w8 = eighth_roots();
    // Two-mode bump with spectrum {0, 1}; its modulus stays >= 0.3, so
    // nothing degenerates at the grid points.
    std::vector<Complex> phi(static_cast<std::size_t>(n));
    std::vector<double> phi_abs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / n;
        phi[static_cast<std::size_t>(j)] = 1.0 + 0.7 * Complex(std::cos(a), std::sin(a));
        phi_abs[static_cast<std::size_t>(j)] = std::abs(phi[static_cast<std::size_t>(j)]);
    }
    const WeightGrid flat = constant_weight(n, 1.0, 1.0 / n);
    const Exponent pe = Exponent::finite(p);
    const double phi_lp = weighted_lp_norm(phi_abs, flat, pe);

    IntervalFamily family;
    for (int m = 1; m <= modes; ++m)
        family.push_back(FrequencyInterval{3 * m - 1, 3 * m + 2});

    Rng root(seed);
    std::vector<CotypeFromRubioRow> rows;
    rows.reserve(static_cast<std::size_t>(trials));
    ElementValue diff(static_cast<std::size_t>(dim));
    for (int trial = 0; trial < trials; ++trial) {
        Rng tr = root.fork(static_cast<std::uint64_t>(trial));
        std::vector<ElementValue> xs(static_cast<std::size_t>(modes));
        std::vector<Complex> signs(static_cast<std::size_t>(modes));
        for (int m = 0; m < modes; ++m) {
            ElementValue v(static_cast<std::size_t>(dim));
            for (int c = 0; c < dim; ++c) v[static_cast<std::size_t>(c)] = tr.cgaussian();
            xs[static_cast<std::size_t>(m)] = std::move(v);
            signs[static_cast<std::size_t>(m)] =
                mode == SignMode::PlusMinusOne
                    ? Complex(tr.sign(), 0.0)
                    : w8[static_cast<std::size_t>(tr.uniform_int(0, 7))];
        }
        Signal f = zero_signal(space, n, 1.0);
        for (int j = 0; j < n; ++j) {
            Complex* out = f.sample(j);
            for (int m = 0; m < modes; ++m) {
                const double a =
                    2.0 * std::numbers::pi * static_cast<double>(3 * (m + 1)) * j / n;
                const Complex coef = phi[static_cast<std::size_t>(j)] *
                                     Complex(std::cos(a), std::sin(a)) *
                                     signs[static_cast<std::size_t>(m)];
                const ElementValue& x = xs[static_cast<std::size_t>(m)];
                for (int c = 0; c < dim; ++c) out[c] += coef * x[static_cast<std::size_t>(c)];
            }
        }
        double recovery = 0.0;
        for (int m = 0; m < modes; ++m) {
            const Signal proj = frequency_projection(family[static_cast<std::size_t>(m)], f);
            const ElementValue& x = xs[static_cast<std::size_t>(m)];
            for (int j = 0; j < n; ++j) {
                const double a =
                    2.0 * std::numbers::pi * static_cast<double>(3 * (m + 1)) * j / n;
                const Complex coef = phi[static_cast<std::size_t>(j)] *
                                     Complex(std::cos(a), std::sin(a)) *
                                     signs[static_cast<std::size_t>(m)];
                const Complex* got = proj.sample(j);
                for (int c = 0; c < dim; ++c)
                    diff[static_cast<std::size_t>(c)] =
                        got[c] - coef * x[static_cast<std::size_t>(c)];
                recovery = std::max(recovery, norm(space, diff));
            }
        }
        const std::vector<double> rf = rubio_functional(f, family, q);
        const double rf_lp = weighted_lp_norm(rf, flat, pe);
        Rng rs = tr.fork(5);
        const double rad =
            rademacher_mean(space, xs, 2.0, std::int64_t{1} << 15, rs.bits(), mode).mean;
        double sum = 0.0;
        for (const ElementValue& x : xs) sum += std::pow(norm(space, x), q);
        const double agg = std::pow(sum, 1.0 / q);
        CotypeFromRubioRow row;
        row.trial = trial;
        row.recovery_error = recovery;
        row.rad_mean = rad;
        row.norm_aggregate = agg;
        row.direct_ratio = rad > 0.0 ? agg / rad : 0.0;
        row.rubio_ratio = rad > 0.0 && phi_lp > 0.0 ? rf_lp / (phi_lp * rad) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace varmult
