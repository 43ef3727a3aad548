#include "varmult/carleson.hpp"

#include "varmult/kernels.hpp"
#include "varmult/parallel.hpp"
#include "varmult/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace varmult {

void validate_family(const char* fn, const IntervalFamily& fam, int n) {
    for (const auto& I : fam) validate_interval(fn, I, n);
    std::vector<FrequencyInterval> sorted = fam;
    std::sort(sorted.begin(), sorted.end(),
              [](const FrequencyInterval& a, const FrequencyInterval& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].lo < sorted[i - 1].hi) {
            throw std::invalid_argument(std::string(fn) + ": family intervals " +
                                        interval_str(sorted[i - 1]) + " and " +
                                        interval_str(sorted[i]) + " overlap");
        }
    }
}

namespace {

void check_q(const char* fn, double q) {
    if (!std::isfinite(q) || q < 1.0) {
        throw std::invalid_argument(std::string(fn) +
                                    ": variation exponent must be a finite real >= 1, got " +
                                    std::to_string(q));
    }
}

// Spectrum in increasing-frequency order (k = t - N/2), scaled by 1/N so a
// running sum reproduces the inverse-transform partial sums.
std::vector<Complex> scaled_freq_ordered_spectrum(const Signal& f) {
    int n = f.size();
    int dim = f.space.dim();
    std::vector<Complex> spec = signal_spectrum(f);
    std::vector<Complex> out(spec.size());
    double inv = 1.0 / static_cast<double>(n);
    for (int t = 0; t < n; ++t) {
        int k = t - n / 2;
        int b = bin_for_freq(k, n);
        for (int c = 0; c < dim; ++c) {
            out[static_cast<std::size_t>(t) * dim + c] =
                spec[static_cast<std::size_t>(b) * dim + c] * inv;
        }
    }
    return out;
}

// Exact twiddle table e^{2 pi i t / n}.
std::vector<Complex> twiddles(int n) {
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<Complex> tw(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        double ang = two_pi * static_cast<double>(t) / static_cast<double>(n);
        tw[static_cast<std::size_t>(t)] = Complex(std::cos(ang), std::sin(ang));
    }
    return tw;
}

// Cut path P_0, ..., P_n at grid point j: P_t = C_{t - n/2} f(x_j). out must
// hold (n + 1) * dim complex values.
void cut_path_at(const std::vector<Complex>& freq_spec, const std::vector<Complex>& tw,
                 int n, int dim, int j, Complex* out) {
    for (int c = 0; c < dim; ++c) out[c] = Complex{0.0, 0.0};
    for (int t = 0; t < n; ++t) {
        int k = t - n / 2;
        long long idx = (static_cast<long long>(k) * j) % n;
        if (idx < 0) idx += n;
        Complex e = tw[static_cast<std::size_t>(idx)];
        const Complex* coef = freq_spec.data() + static_cast<std::size_t>(t) * dim;
        Complex* prev = out + static_cast<std::size_t>(t) * dim;
        Complex* next = out + static_cast<std::size_t>(t + 1) * dim;
        for (int c = 0; c < dim; ++c) next[c] = prev[c] + coef[c] * e;
    }
}

} // namespace

Signal partial_fourier(const Signal& f, int cut) {
    validate_signal("partial_fourier", f);
    int n = f.size();
    if (cut < -n / 2 || cut > n / 2) {
        throw std::invalid_argument("partial_fourier: cut " + std::to_string(cut) +
                                    " outside [-" + std::to_string(n / 2) + ", " +
                                    std::to_string(n / 2) + "]");
    }
    int dim = f.space.dim();
    std::vector<Complex> spec = signal_spectrum(f);
    for (int b = 0; b < n; ++b) {
        if (freq_for_bin(b, n) >= cut) {
            Complex* p = spec.data() + static_cast<std::size_t>(b) * dim;
            for (int c = 0; c < dim; ++c) p[c] = Complex{0.0, 0.0};
        }
    }
    return signal_from_spectrum(spec, f.space, n, f.period);
}

std::vector<double> carleson_maximal(const Signal& f) {
    validate_signal("carleson_maximal", f);
    int n = f.size();
    int dim = f.space.dim();
    std::vector<Complex> freq_spec = scaled_freq_ordered_spectrum(f);
    std::vector<Complex> tw = twiddles(n);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    bool scalar_path = (dim == 1 && f.space.kind() != SpaceKind::Schatten);
    parallel_for(n, [&](std::int64_t begin, std::int64_t end) {
        std::vector<Complex> path(static_cast<std::size_t>(n + 1) * dim);
        ElementValue v(static_cast<std::size_t>(dim));
        for (std::int64_t j = begin; j < end; ++j) {
            cut_path_at(freq_spec, tw, n, dim, static_cast<int>(j), path.data());
            double m = 0.0;
            for (int t = 0; t <= n; ++t) {
                double ns;
                if (scalar_path) {
                    Complex z = path[static_cast<std::size_t>(t)];
                    ns = z.real() * z.real() + z.imag() * z.imag();
                } else {
                    for (int c = 0; c < dim; ++c) v[static_cast<std::size_t>(c)] = path[static_cast<std::size_t>(t) * dim + c];
                    double nn = norm(f.space, v);
                    ns = nn * nn;
                }
                if (ns > m) m = ns;
            }
            out[static_cast<std::size_t>(j)] = std::sqrt(m);
        }
    });
    return out;
}

std::vector<double> variational_carleson_objective(const Signal& f, double q) {
    validate_signal("variational_carleson", f);
    check_q("variational_carleson", q);
    int n = f.size();
    int dim = f.space.dim();
    std::vector<Complex> freq_spec = scaled_freq_ordered_spectrum(f);
    std::vector<Complex> tw = twiddles(n);
    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    bool scalar_path = (dim == 1 && f.space.kind() != SpaceKind::Schatten);
    parallel_for(n, [&](std::int64_t begin, std::int64_t end) {
        std::vector<Complex> path(static_cast<std::size_t>(n + 1) * dim);
        std::vector<double> re(static_cast<std::size_t>(n + 1)), im(static_cast<std::size_t>(n + 1)),
            scratch(static_cast<std::size_t>(n + 1));
        for (std::int64_t j = begin; j < end; ++j) {
            cut_path_at(freq_spec, tw, n, dim, static_cast<int>(j), path.data());
            if (scalar_path) {
                for (int t = 0; t <= n; ++t) {
                    re[static_cast<std::size_t>(t)] = path[static_cast<std::size_t>(t)].real();
                    im[static_cast<std::size_t>(t)] = path[static_cast<std::size_t>(t)].imag();
                }
                out[static_cast<std::size_t>(j)] =
                    vs_objective_complex(re.data(), im.data(), static_cast<std::size_t>(n + 1), q,
                                         scratch.data());
            } else {
                SampledPath sp;
                sp.space = f.space;
                sp.times.resize(static_cast<std::size_t>(n + 1));
                sp.values.resize(static_cast<std::size_t>(n + 1));
                for (int t = 0; t <= n; ++t) {
                    sp.times[static_cast<std::size_t>(t)] = static_cast<double>(t);
                    const Complex* p = path.data() + static_cast<std::size_t>(t) * dim;
                    sp.values[static_cast<std::size_t>(t)] = ElementValue(p, p + dim);
                }
                out[static_cast<std::size_t>(j)] = vs_seminorm_objective(sp, q);
            }
        }
    });
    return out;
}

std::vector<double> variational_carleson(const Signal& f, double q) {
    std::vector<double> out = variational_carleson_objective(f, q);
    for (double& v : out) v = root_pow(v, q);
    return out;
}

std::vector<double> rubio_functional(const Signal& f, const IntervalFamily& fam, double q) {
    validate_signal("rubio_functional", f);
    check_q("rubio_functional", q);
    int n = f.size();
    validate_family("rubio_functional", fam, n);
    int dim = f.space.dim();
    std::vector<Complex> spec = signal_spectrum(f);
    std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
    std::vector<Complex> masked(spec.size());
    ElementValue v(static_cast<std::size_t>(dim));
    for (const auto& I : fam) {
        std::fill(masked.begin(), masked.end(), Complex{0.0, 0.0});
        for (int k = I.lo; k < I.hi; ++k) {
            int b = bin_for_freq(k, n);
            for (int c = 0; c < dim; ++c) {
                masked[static_cast<std::size_t>(b) * dim + c] =
                    spec[static_cast<std::size_t>(b) * dim + c];
            }
        }
        Signal part = signal_from_spectrum(masked, f.space, n, f.period);
        for (int j = 0; j < n; ++j) {
            const Complex* p = part.sample(j);
            for (int c = 0; c < dim; ++c) v[static_cast<std::size_t>(c)] = p[c];
            acc[static_cast<std::size_t>(j)] +=
                kernels::variation_pow_general(norm_sq(f.space, v), q);
        }
    }
    for (double& a : acc) a = root_pow(a, q);
    return acc;
}

double variational_carleson_brute_objective(const Signal& f, double q, int point) {
    validate_signal("variational_carleson_brute", f);
    check_q("variational_carleson_brute", q);
    int n = f.size();
    if (n > 8) {
        throw std::invalid_argument("variational_carleson_brute: grid size " + std::to_string(n) +
                                    " exceeds the enumeration cap of 8");
    }
    if (point < 0 || point >= n) {
        throw std::invalid_argument("variational_carleson_brute: point " + std::to_string(point) +
                                    " outside the grid of " + std::to_string(n));
    }
    int dim = f.space.dim();
    std::vector<Complex> freq_spec = scaled_freq_ordered_spectrum(f);
    std::vector<Complex> tw = twiddles(n);
    std::vector<Complex> path(static_cast<std::size_t>(n + 1) * dim);
    cut_path_at(freq_spec, tw, n, dim, point, path.data());
    std::vector<ElementValue> P(static_cast<std::size_t>(n + 1));
    for (int t = 0; t <= n; ++t) {
        const Complex* p = path.data() + static_cast<std::size_t>(t) * dim;
        P[static_cast<std::size_t>(t)] = ElementValue(p, p + dim);
    }
    // Depth-first enumeration of families of disjoint cut intervals [a, b)
    // (as cut-index pairs a < b); every node's accumulated power sum is a
    // candidate. ||S_{[a,b)} f(x)|| = ||P_b - P_a|| through the shared
    // increment primitive, so sums match the DP's arithmetic exactly.
    double top = 0.0;
    const SpaceDescriptor& space = f.space;
    std::function<void(int, double)> dfs = [&](int pos, double acc) {
        if (acc > top) top = acc;
        for (int a = pos; a < n; ++a) {
            for (int b = a + 1; b <= n; ++b) {
                dfs(b, acc + increment_pow(space, P[static_cast<std::size_t>(a)],
                                           P[static_cast<std::size_t>(b)], q));
            }
        }
    };
    dfs(0, 0.0);
    return top;
}

double variational_carleson_brute(const Signal& f, double q, int point) {
    return root_pow(variational_carleson_brute_objective(f, q, point), q);
}

std::vector<RubioGrowthRow> rubio_growth_experiment(
    const SpaceDescriptor& space, double p, double q, const std::vector<int>& sizes,
    const std::vector<std::string>& weight_names,
    const std::function<WeightGrid(const std::string&, int)>& weight_factory,
    int trials, std::uint64_t seed) {
    if (!std::isfinite(p) || p <= 1.0) {
        throw std::invalid_argument("rubio_growth_experiment: requires finite p > 1, got " +
                                    std::to_string(p));
    }
    check_q("rubio_growth_experiment", q);
    // The weighted estimate needs p > q' (dual of q); at p = q' it is false.
    if (q == 1.0) {
        throw std::invalid_argument(
            "rubio_growth_experiment: q = 1 has q' = inf, so no finite p satisfies p > q'");
    }
    double q_dual = q / (q - 1.0);
    if (!(p > q_dual)) {
        throw std::invalid_argument("rubio_growth_experiment: requires p > q' = q/(q-1); got p = " +
                                    std::to_string(p) + ", q' = " + std::to_string(q_dual));
    }
    if (trials < 1) {
        throw std::invalid_argument("rubio_growth_experiment: trials must be >= 1, got " +
                                    std::to_string(trials));
    }
    Rng root(seed);
    std::vector<RubioGrowthRow> rows;
    std::uint64_t stream = 0;
    for (int n : sizes) {
        for (const auto& wname : weight_names) {
            WeightGrid w = weight_factory(wname, n);
            validate_weight("rubio_growth_experiment", w);
            if (w.samples.size() != static_cast<std::size_t>(n)) {
                throw std::invalid_argument("rubio_growth_experiment: weight '" + wname +
                                            "' has " + std::to_string(w.samples.size()) +
                                            " samples for grid " + std::to_string(n));
            }
            double period = w.spacing * static_cast<double>(n);
            for (int t = 0; t < trials; ++t) {
                Rng rng = root.fork(stream++);
                Signal f = zero_signal(space, n, period);
                for (auto& z : f.data) z = rng.cgaussian();
                std::vector<double> func = variational_carleson(f, q);
                double num = weighted_lp_norm(func, w, Exponent::finite(p));
                double den = weighted_lp_norm(f, w, Exponent::finite(p));
                RubioGrowthRow row;
                row.n = n;
                row.weight = wname;
                row.trial = t;
                row.signal_norm = den;
                row.functional_norm = num;
                row.ratio = den > 0.0 ? num / den : 0.0;
                rows.push_back(row);
            }
        }
    }
    return rows;
}

} // namespace varmult
