#include "varmult/multiplier.hpp"

#include "varmult/kernels.hpp"
#include "varmult/rng.hpp"
#include "varmult/variation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace varmult {

namespace {

void check_grid(const char* fn, int n) {
    if (n < 2 || (n & (n - 1)) != 0) {
        throw std::invalid_argument(std::string(fn) + ": grid size must be a power of two >= 2, got " +
                                    std::to_string(n));
    }
}

int checked_bin(const char* fn, int k, int n) {
    if (k < -n / 2 || k >= n / 2) {
        throw std::invalid_argument(std::string(fn) + ": frequency " + std::to_string(k) +
                                    " outside the band [-" + std::to_string(n / 2) + ", " +
                                    std::to_string(n / 2) + ")");
    }
    return bin_for_freq(k, n);
}

} // namespace

Symbol Symbol::scalar(int n, const SpaceDescriptor& space, std::vector<Complex> values) {
    check_grid("Symbol::scalar", n);
    if (values.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("Symbol::scalar: expected " + std::to_string(n) +
                                    " values, got " + std::to_string(values.size()));
    }
    return Symbol(Kind::Scalar, n, space, space, std::move(values));
}

Symbol Symbol::diagonal(int n, const SpaceDescriptor& space, std::vector<Complex> diags) {
    check_grid("Symbol::diagonal", n);
    if (space.kind() == SpaceKind::Schatten) {
        throw std::invalid_argument(
            "Symbol::diagonal: diagonal symbols act on scalar or sequence spaces, not " +
            space.str());
    }
    if (diags.size() != static_cast<std::size_t>(n) * space.dim()) {
        throw std::invalid_argument("Symbol::diagonal: expected " +
                                    std::to_string(static_cast<std::size_t>(n) * space.dim()) +
                                    " entries, got " + std::to_string(diags.size()));
    }
    return Symbol(Kind::Diagonal, n, space, space, std::move(diags));
}

Symbol Symbol::general(int n, const SpaceDescriptor& domain, const SpaceDescriptor& codomain,
                       std::vector<Complex> matrices) {
    check_grid("Symbol::general", n);
    std::size_t want = static_cast<std::size_t>(n) * domain.dim() * codomain.dim();
    if (matrices.size() != want) {
        throw std::invalid_argument("Symbol::general: expected " + std::to_string(want) +
                                    " entries, got " + std::to_string(matrices.size()));
    }
    return Symbol(Kind::General, n, domain, codomain, std::move(matrices));
}

Complex Symbol::scalar_at(int k) const {
    int b = checked_bin("Symbol::scalar_at", k, n_);
    if (kind_ != Kind::Scalar) {
        throw std::invalid_argument("Symbol::scalar_at: symbol is not scalar-valued");
    }
    return store_[static_cast<std::size_t>(b)];
}

std::vector<Complex> Symbol::diagonal_at(int k) const {
    int b = checked_bin("Symbol::diagonal_at", k, n_);
    int dim = domain_.dim();
    switch (kind_) {
        case Kind::Scalar: {
            return std::vector<Complex>(static_cast<std::size_t>(dim), store_[static_cast<std::size_t>(b)]);
        }
        case Kind::Diagonal: {
            const Complex* p = store_.data() + static_cast<std::size_t>(b) * dim;
            return std::vector<Complex>(p, p + dim);
        }
        case Kind::General:
            throw std::invalid_argument("Symbol::diagonal_at: symbol holds dense matrices");
    }
    return {};
}

OperatorValue Symbol::operator_at(int k) const {
    int b = checked_bin("Symbol::operator_at", k, n_);
    int dx = domain_.dim();
    int dy = codomain_.dim();
    switch (kind_) {
        case Kind::Scalar: {
            OperatorValue T = op_identity(domain_);
            return op_scale(store_[static_cast<std::size_t>(b)], T);
        }
        case Kind::Diagonal: {
            const Complex* p = store_.data() + static_cast<std::size_t>(b) * dx;
            return op_diagonal(domain_, std::vector<Complex>(p, p + dx));
        }
        case Kind::General: {
            const Complex* p = store_.data() + static_cast<std::size_t>(b) * dx * dy;
            OperatorValue T{domain_, codomain_, std::vector<Complex>(p, p + static_cast<std::size_t>(dx) * dy)};
            return T;
        }
    }
    return op_identity(domain_);
}

void Symbol::apply_bin(int b, const Complex* in, Complex* out) const {
    int dx = domain_.dim();
    int dy = codomain_.dim();
    switch (kind_) {
        case Kind::Scalar: {
            Complex c = store_[static_cast<std::size_t>(b)];
            for (int i = 0; i < dx; ++i) out[i] = c * in[i];
            return;
        }
        case Kind::Diagonal: {
            const Complex* d = store_.data() + static_cast<std::size_t>(b) * dx;
            for (int i = 0; i < dx; ++i) out[i] = d[i] * in[i];
            return;
        }
        case Kind::General: {
            const Complex* mat = store_.data() + static_cast<std::size_t>(b) * dx * dy;
            for (int r = 0; r < dy; ++r) {
                Complex acc{0.0, 0.0};
                const Complex* row = mat + static_cast<std::size_t>(r) * dx;
                for (int c = 0; c < dx; ++c) acc += row[c] * in[c];
                out[r] = acc;
            }
            return;
        }
    }
}

Symbol Symbol::compose(const Symbol& other) const {
    if (n_ != other.n_) {
        throw std::invalid_argument("Symbol::compose: grids differ: " + std::to_string(n_) +
                                    " vs " + std::to_string(other.n_));
    }
    if (other.codomain_ != domain_) {
        throw std::invalid_argument("Symbol::compose: inner spaces differ: " + domain_.str() +
                                    " vs " + other.codomain_.str());
    }
    int n = n_;
    if (kind_ == Kind::Scalar && other.kind_ == Kind::Scalar) {
        std::vector<Complex> vals(static_cast<std::size_t>(n));
        for (int b = 0; b < n; ++b) {
            vals[static_cast<std::size_t>(b)] =
                store_[static_cast<std::size_t>(b)] * other.store_[static_cast<std::size_t>(b)];
        }
        return Symbol(Kind::Scalar, n, other.domain_, codomain_, std::move(vals));
    }
    if (kind_ != Kind::General && other.kind_ != Kind::General) {
        // Diagonal x {diagonal, scalar}: entrywise product.
        int dim = domain_.dim();
        std::vector<Complex> diags(static_cast<std::size_t>(n) * dim);
        for (int b = 0; b < n; ++b) {
            for (int i = 0; i < dim; ++i) {
                Complex a = (kind_ == Kind::Scalar) ? store_[static_cast<std::size_t>(b)]
                                                    : store_[static_cast<std::size_t>(b) * dim + i];
                Complex bb = (other.kind_ == Kind::Scalar)
                                 ? other.store_[static_cast<std::size_t>(b)]
                                 : other.store_[static_cast<std::size_t>(b) * dim + i];
                diags[static_cast<std::size_t>(b) * dim + i] = a * bb;
            }
        }
        return Symbol(Kind::Diagonal, n, other.domain_, codomain_, std::move(diags));
    }
    // Dense fallback.
    int dx = other.domain_.dim();
    int dm = domain_.dim();
    int dy = codomain_.dim();
    std::vector<Complex> mats(static_cast<std::size_t>(n) * dx * dy, Complex{0.0, 0.0});
    for (int b = 0; b < n; ++b) {
        OperatorValue A = operator_at(freq_for_bin(b, n));
        OperatorValue B = other.operator_at(freq_for_bin(b, n));
        Complex* out = mats.data() + static_cast<std::size_t>(b) * dx * dy;
        for (int r = 0; r < dy; ++r) {
            for (int c = 0; c < dx; ++c) {
                Complex acc{0.0, 0.0};
                for (int t = 0; t < dm; ++t) {
                    acc += A.entries[static_cast<std::size_t>(r) * dm + t] *
                           B.entries[static_cast<std::size_t>(t) * dx + c];
                }
                out[static_cast<std::size_t>(r) * dx + c] = acc;
            }
        }
    }
    return Symbol(Kind::General, n, other.domain_, codomain_, std::move(mats));
}

Symbol Symbol::scaled(Complex c) const {
    Symbol out = *this;
    for (auto& e : out.store_) e *= c;
    return out;
}

Signal apply_multiplier(const Symbol& m, const Signal& f) {
    validate_signal("apply_multiplier", f);
    if (f.size() != m.grid()) {
        throw std::invalid_argument("apply_multiplier: signal grid " + std::to_string(f.size()) +
                                    " does not match symbol grid " + std::to_string(m.grid()));
    }
    if (f.space != m.domain()) {
        throw std::invalid_argument("apply_multiplier: signal space " + f.space.str() +
                                    " does not match symbol domain " + m.domain().str());
    }
    int n = f.size();
    int dx = m.domain().dim();
    int dy = m.codomain().dim();
    std::vector<Complex> spec = signal_spectrum(f);
    std::vector<Complex> out_spec(static_cast<std::size_t>(n) * dy);
    for (int b = 0; b < n; ++b) {
        m.apply_bin(b, spec.data() + static_cast<std::size_t>(b) * dx,
                    out_spec.data() + static_cast<std::size_t>(b) * dy);
    }
    return signal_from_spectrum(out_spec, m.codomain(), n, f.period);
}

Signal frequency_projection(const FrequencyInterval& I, const Signal& f) {
    validate_signal("frequency_projection", f);
    int n = f.size();
    validate_interval("frequency_projection", I, n);
    int dim = f.space.dim();
    std::vector<Complex> spec = signal_spectrum(f);
    for (int b = 0; b < n; ++b) {
        int k = freq_for_bin(b, n);
        if (k < I.lo || k >= I.hi) {
            Complex* p = spec.data() + static_cast<std::size_t>(b) * dim;
            for (int c = 0; c < dim; ++c) p[c] = Complex{0.0, 0.0};
        }
    }
    return signal_from_spectrum(spec, f.space, n, f.period);
}

std::vector<FrequencyInterval> dyadic_partition(int n) {
    check_grid("dyadic_partition", n);
    std::vector<FrequencyInterval> out;
    out.push_back({0, 1});
    for (int lo = 1; lo < n / 2; lo *= 2) {
        out.push_back({lo, std::min(2 * lo, n / 2)});
    }
    for (int lo = 1; lo < n / 2; lo *= 2) {
        // The mirror of [lo, 2lo) is the integer set (-2lo, -lo], half-open
        // form [-2lo + 1, -lo + 1).
        out.push_back({-2 * lo + 1, -lo + 1});
    }
    out.push_back({-n / 2, -n / 2 + 1});
    return out;
}

namespace {

// Generic variation DP over abstract increment squared-norms.
double dp_objective(int count, const std::function<double(int, int)>& inc_norm_sq, double s) {
    if (count <= 1) return 0.0;
    std::vector<double> best(static_cast<std::size_t>(count));
    best[0] = 0.0;
    double top = 0.0;
    for (int j = 1; j < count; ++j) {
        double row = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < j; ++i) {
            double cand = best[static_cast<std::size_t>(i)] +
                          kernels::variation_pow_general(inc_norm_sq(i, j), s);
            if (cand > row) row = cand;
        }
        best[static_cast<std::size_t>(j)] = row > 0.0 ? row : 0.0;
        if (best[static_cast<std::size_t>(j)] > top) top = best[static_cast<std::size_t>(j)];
    }
    return top;
}

} // namespace

std::vector<double> symbol_variation_profile(const Symbol& m,
                                             const std::vector<FrequencyInterval>& blocks,
                                             double s) {
    if (!std::isfinite(s) || s < 1.0) {
        throw std::invalid_argument("symbol_variation_profile: variation exponent must be a finite real >= 1, got " +
                                    std::to_string(s));
    }
    int n = m.grid();
    std::vector<double> out;
    out.reserve(blocks.size());
    for (const auto& I : blocks) {
        validate_interval("symbol_variation_profile", I, n);
        int width = I.hi - I.lo;
        double obj = 0.0;
        switch (m.kind()) {
            case Symbol::Kind::Scalar: {
                std::vector<double> re(static_cast<std::size_t>(width)), im(static_cast<std::size_t>(width)),
                    scratch(static_cast<std::size_t>(width));
                for (int k = I.lo; k < I.hi; ++k) {
                    Complex v = m.scalar_at(k);
                    re[static_cast<std::size_t>(k - I.lo)] = v.real();
                    im[static_cast<std::size_t>(k - I.lo)] = v.imag();
                }
                obj = vs_objective_complex(re.data(), im.data(), static_cast<std::size_t>(width), s,
                                           scratch.data());
                break;
            }
            case Symbol::Kind::Diagonal: {
                int dim = m.domain().dim();
                std::vector<std::vector<Complex>> vals(static_cast<std::size_t>(width));
                for (int k = I.lo; k < I.hi; ++k) vals[static_cast<std::size_t>(k - I.lo)] = m.diagonal_at(k);
                obj = dp_objective(width,
                                   [&](int i, int j) {
                                       // Diagonal operator norm on l^p: max entry magnitude.
                                       double best_d2 = 0.0;
                                       for (int c = 0; c < dim; ++c) {
                                           Complex d = vals[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] -
                                                       vals[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
                                           double d2 = d.real() * d.real() + d.imag() * d.imag();
                                           if (d2 > best_d2) best_d2 = d2;
                                       }
                                       return best_d2;
                                   },
                                   s);
                break;
            }
            case Symbol::Kind::General: {
                std::vector<OperatorValue> ops;
                ops.reserve(static_cast<std::size_t>(width));
                for (int k = I.lo; k < I.hi; ++k) ops.push_back(m.operator_at(k));
                obj = dp_objective(width,
                                   [&](int i, int j) {
                                       OperatorValue diff = op_sub(ops[static_cast<std::size_t>(j)],
                                                                   ops[static_cast<std::size_t>(i)]);
                                       double v = operator_norm(diff, NormMode::Estimate, 8, 0x9a0b).value;
                                       return v * v;
                                   },
                                   s);
                break;
            }
        }
        out.push_back(root_pow(obj, s));
    }
    return out;
}

Complex resolvent_entry(int level, double xi) {
    if (level < 1 || level > 512) {
        throw std::invalid_argument("resolvent_entry: level must lie in [1, 512], got " +
                                    std::to_string(level));
    }
    Complex denom(1.0, std::ldexp(xi, -level));
    return Complex{1.0, 0.0} / denom;
}

Symbol resolvent_symbol(int dims, int n, Exponent p) {
    if (dims < 1 || dims > 64) {
        throw std::invalid_argument("resolvent_symbol: dims must lie in [1, 64], got " +
                                    std::to_string(dims));
    }
    check_grid("resolvent_symbol", n);
    SpaceDescriptor space = SpaceDescriptor::sequence_p(p, dims);
    std::vector<Complex> diags(static_cast<std::size_t>(n) * dims);
    for (int b = 0; b < n; ++b) {
        double xi = static_cast<double>(freq_for_bin(b, n));
        for (int j = 1; j <= dims; ++j) {
            diags[static_cast<std::size_t>(b) * dims + (j - 1)] = resolvent_entry(j, xi);
        }
    }
    return Symbol::diagonal(n, space, std::move(diags));
}

namespace {

double pipeline_ratio(const Symbol& m, const Signal& f, const WeightGrid& w, Exponent p) {
    double den = weighted_lp_norm(f, w, p);
    if (!(den > 0.0) || !std::isfinite(den)) return 0.0;
    return weighted_lp_norm(apply_multiplier(m, f), w, p) / den;
}

// Operator ratio ||m(k)v|| / ||v|| maximized over cheap probe vectors; for
// scalar and diagonal symbols this is the exact operator norm of m(k).
double bin_operator_ratio(const Symbol& m, int k, Rng& rng, ElementValue& arg_best) {
    int dx = m.domain().dim();
    switch (m.kind()) {
        case Symbol::Kind::Scalar: {
            arg_best.assign(static_cast<std::size_t>(dx), Complex{0.0, 0.0});
            arg_best[0] = Complex{1.0, 0.0};
            return std::abs(m.scalar_at(k));
        }
        case Symbol::Kind::Diagonal: {
            std::vector<Complex> d = m.diagonal_at(k);
            int arg = 0;
            double best = -1.0;
            for (int i = 0; i < dx; ++i) {
                double a = std::abs(d[static_cast<std::size_t>(i)]);
                if (a > best) { best = a; arg = i; }
            }
            arg_best.assign(static_cast<std::size_t>(dx), Complex{0.0, 0.0});
            arg_best[static_cast<std::size_t>(arg)] = Complex{1.0, 0.0};
            return best;
        }
        case Symbol::Kind::General: {
            OperatorValue T = m.operator_at(k);
            double best = -1.0;
            ElementValue v(static_cast<std::size_t>(dx), Complex{0.0, 0.0});
            for (int i = 0; i < dx; ++i) {
                std::fill(v.begin(), v.end(), Complex{0.0, 0.0});
                v[static_cast<std::size_t>(i)] = Complex{1.0, 0.0};
                double dn = norm(m.domain(), v);
                double r = norm(m.codomain(), op_apply(T, v)) / dn;
                if (r > best) { best = r; arg_best = v; }
            }
            for (int t = 0; t < 2; ++t) {
                for (auto& c : v) c = rng.cgaussian();
                double dn = norm(m.domain(), v);
                if (dn == 0.0) continue;
                double r = norm(m.codomain(), op_apply(T, v)) / dn;
                if (r > best) { best = r; arg_best = v; }
            }
            return best;
        }
    }
    return 0.0;
}

Signal mode_signal(const SpaceDescriptor& space, int n, double period, int k,
                   const ElementValue& v) {
    Signal f = zero_signal(space, n, period);
    const double two_pi = 6.283185307179586476925286766559;
    int dim = space.dim();
    for (int j = 0; j < n; ++j) {
        double ang = two_pi * static_cast<double>(k) * static_cast<double>(j) / static_cast<double>(n);
        Complex e(std::cos(ang), std::sin(ang));
        for (int c = 0; c < dim; ++c) f.sample(j)[c] = v[static_cast<std::size_t>(c)] * e;
    }
    return f;
}

} // namespace

MultiplierNormEstimate estimate_multiplier_norm(const Symbol& m, Exponent p,
                                                const WeightGrid& w, int probes,
                                                std::uint64_t seed) {
    int n = m.grid();
    if (w.samples.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("estimate_multiplier_norm: weight grid has " +
                                    std::to_string(w.samples.size()) + " samples but the symbol grid is " +
                                    std::to_string(n));
    }
    validate_weight("estimate_multiplier_norm", w);
    if (probes < 0) {
        throw std::invalid_argument("estimate_multiplier_norm: probe count must be >= 0, got " +
                                    std::to_string(probes));
    }
    double period = w.spacing * static_cast<double>(n);
    Rng rng(seed);
    Rng mode_rng = rng.fork(1);
    Rng bump_rng = rng.fork(2);
    Rng gauss_rng = rng.fork(3);
    Rng ascent_rng = rng.fork(4);

    double best = -1.0;
    int best_k = 0;
    ElementValue best_vec;
    // Single modes reduce exactly: ||T_m (v e_k)||_{L^p(w)} / ||v e_k||_{L^p(w)}
    // = ||m(k)v|| / ||v|| for every weight, because |e_k| == 1 pointwise.
    ElementValue arg;
    for (int b = 0; b < n; ++b) {
        int k = freq_for_bin(b, n);
        double r = bin_operator_ratio(m, k, mode_rng, arg);
        if (r > best) {
            best = r;
            best_k = k;
            best_vec = arg;
        }
    }
    Signal best_probe = mode_signal(m.domain(), n, period, best_k, best_vec);

    int dim = m.domain().dim();
    // Random dyadic bumps: spectrum supported on one block.
    for (const auto& I : dyadic_partition(n)) {
        for (int rep = 0; rep < 2; ++rep) {
            std::vector<Complex> spec(static_cast<std::size_t>(n) * dim, Complex{0.0, 0.0});
            for (int k = I.lo; k < I.hi; ++k) {
                Complex* cell = spec.data() + static_cast<std::size_t>(bin_for_freq(k, n)) * dim;
                for (int c = 0; c < dim; ++c) cell[c] = bump_rng.cgaussian();
            }
            Signal f = signal_from_spectrum(spec, m.domain(), n, period);
            double r = pipeline_ratio(m, f, w, p);
            if (r > best) { best = r; best_probe = f; }
        }
    }
    // Plain random signals.
    for (int t = 0; t < probes; ++t) {
        Signal f = zero_signal(m.domain(), n, period);
        for (auto& z : f.data) z = gauss_rng.cgaussian();
        double r = pipeline_ratio(m, f, w, p);
        if (r > best) { best = r; best_probe = f; }
    }
    // Additive ascent around the incumbent.
    double probe_scale = weighted_lp_norm(best_probe, w, p);
    const double deltas[] = {0.5, 0.2, 0.05};
    for (int round = 0; round < 2; ++round) {
        for (double delta : deltas) {
            for (int t = 0; t < 3; ++t) {
                Signal g = zero_signal(m.domain(), n, period);
                for (auto& z : g.data) z = ascent_rng.cgaussian();
                double gs = weighted_lp_norm(g, w, p);
                if (!(gs > 0.0)) continue;
                double kappa = delta * probe_scale / gs;
                Signal f = best_probe;
                for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] += kappa * g.data[i];
                double r = pipeline_ratio(m, f, w, p);
                if (r > best) {
                    best = r;
                    best_probe = f;
                    probe_scale = weighted_lp_norm(best_probe, w, p);
                }
            }
        }
    }
    return {best, best_probe};
}

} // namespace varmult
