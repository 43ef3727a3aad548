#include "varmult/weights.hpp"

#include "varmult/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace varmult {

void validate_weight(const char* fn, const WeightGrid& w) {
    if (w.samples.empty()) {
        throw std::invalid_argument(std::string(fn) + ": weight grid has no samples");
    }
    if (!std::isfinite(w.spacing) || w.spacing <= 0.0) {
        throw std::invalid_argument(std::string(fn) + ": weight spacing must be positive, got " +
                                    std::to_string(w.spacing));
    }
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        double v = w.samples[i];
        if (!std::isfinite(v) || v <= 0.0) {
            throw std::invalid_argument(std::string(fn) + ": weight sample " + std::to_string(i) +
                                        " must be strictly positive and finite, got " +
                                        std::to_string(v));
        }
    }
}

namespace {

void check_p(const char* fn, double p) {
    if (!std::isfinite(p) || p <= 1.0) {
        throw std::invalid_argument(std::string(fn) + ": A_p requires finite p > 1, got " +
                                    std::to_string(p));
    }
}

} // namespace

double ap_constant(const WeightGrid& w, double p) {
    validate_weight("ap_constant", w);
    check_p("ap_constant", p);
    std::size_t n = w.samples.size();
    double dual_pow = -1.0 / (p - 1.0);
    std::vector<double> pw(n + 1, 0.0);
    std::vector<double> pu(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        pw[i + 1] = pw[i] + w.samples[i];
        pu[i + 1] = pu[i] + std::exp(dual_pow * std::log(w.samples[i]));
    }
    double best = 0.0;
    for (std::size_t len = 1; len <= n; ++len) {
        // Divide rather than multiply by 1/len: len/len and exp(0) are then
        // exact, so the constant weight yields characteristic 1.0 exactly.
        double len_d = static_cast<double>(len);
        for (std::size_t start = 0; start + len <= n; ++start) {
            double avg_w = (pw[start + len] - pw[start]) / len_d;
            double avg_u = (pu[start + len] - pu[start]) / len_d;
            double val = avg_w * std::pow(avg_u, p - 1.0);
            if (val > best) best = val;
        }
    }
    return best;
}

double ap_constant_oracle(const WeightGrid& w, double p) {
    validate_weight("ap_constant_oracle", w);
    check_p("ap_constant_oracle", p);
    std::size_t n = w.samples.size();
    double dual_pow = -1.0 / (p - 1.0);
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::exp(dual_pow * std::log(w.samples[i]));
    double best = 0.0;
    for (std::size_t start = 0; start < n; ++start) {
        // Kahan-compensated running sums over the growing window.
        double sw = 0.0, cw = 0.0;
        double su = 0.0, cu = 0.0;
        for (std::size_t end = start; end < n; ++end) {
            double yw = w.samples[end] - cw;
            double tw = sw + yw;
            cw = (tw - sw) - yw;
            sw = tw;
            double yu = u[end] - cu;
            double tu = su + yu;
            cu = (tu - su) - yu;
            su = tu;
            double len = static_cast<double>(end - start + 1);
            double val = (sw / len) * std::pow(su / len, p - 1.0);
            if (val > best) best = val;
        }
    }
    return best;
}

namespace {

void check_grid_match(const char* fn, const Signal& f, const WeightGrid& w) {
    int n = f.size();
    if (w.samples.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument(std::string(fn) + ": weight grid has " +
                                    std::to_string(w.samples.size()) + " samples but the signal has " +
                                    std::to_string(n));
    }
    double dx = f.period / static_cast<double>(n);
    if (std::abs(dx - w.spacing) > 1e-12 * dx) {
        throw std::invalid_argument(std::string(fn) + ": weight spacing " +
                                    std::to_string(w.spacing) + " does not match the signal grid step " +
                                    std::to_string(dx));
    }
}

} // namespace

double weighted_lp_norm(const Signal& f, const WeightGrid& w, Exponent p) {
    validate_signal("weighted_lp_norm", f);
    validate_weight("weighted_lp_norm", w);
    check_grid_match("weighted_lp_norm", f, w);
    int n = f.size();
    if (p.is_infinite()) {
        double m = 0.0;
        for (int j = 0; j < n; ++j) {
            double v = norm(f.space, f.sample_value(j));
            if (v > m) m = v;
        }
        return m;
    }
    double pv = p.value();
    double total;
    if (f.space.dim() == 1 && f.space.kind() != SpaceKind::Schatten) {
        std::vector<double> re(static_cast<std::size_t>(n)), im(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            re[static_cast<std::size_t>(j)] = f.sample(j)[0].real();
            im[static_cast<std::size_t>(j)] = f.sample(j)[0].imag();
        }
        kernels::PowKind pk;
        total = kernels::classify_pow(pv, pk)
                    ? kernels::active().weighted_sum_pow(re.data(), im.data(), w.samples.data(),
                                                         static_cast<std::size_t>(n), pk)
                    : kernels::weighted_sum_pow_general(re.data(), im.data(), w.samples.data(),
                                                        static_cast<std::size_t>(n), pv);
    } else {
        total = 0.0;
        for (int j = 0; j < n; ++j) {
            total += std::pow(norm(f.space, f.sample_value(j)), pv) * w.samples[static_cast<std::size_t>(j)];
        }
    }
    double dx = f.period / static_cast<double>(n);
    return std::pow(total * dx, 1.0 / pv);
}

double weighted_lp_norm(const std::vector<double>& values, const WeightGrid& w, Exponent p) {
    validate_weight("weighted_lp_norm", w);
    if (values.size() != w.samples.size()) {
        throw std::invalid_argument("weighted_lp_norm: grid function has " +
                                    std::to_string(values.size()) + " samples but the weight has " +
                                    std::to_string(w.samples.size()));
    }
    if (p.is_infinite()) {
        double m = 0.0;
        for (double v : values) {
            double a = std::abs(v);
            if (a > m) m = a;
        }
        return m;
    }
    double pv = p.value();
    double total = 0.0;
    for (std::size_t j = 0; j < values.size(); ++j) {
        total += std::pow(std::abs(values[j]), pv) * w.samples[j];
    }
    return std::pow(total * w.spacing, 1.0 / pv);
}

WeightGrid constant_weight(int n, double value, double spacing) {
    WeightGrid w{std::vector<double>(static_cast<std::size_t>(n), value), spacing};
    validate_weight("constant_weight", w);
    return w;
}

WeightGrid power_weight(int n, double a, double half_width) {
    if (n < 1 || !std::isfinite(half_width) || half_width <= 0.0) {
        throw std::invalid_argument("power_weight: need n >= 1 and positive half_width");
    }
    double dx = 2.0 * half_width / static_cast<double>(n);
    WeightGrid w;
    w.spacing = dx;
    w.samples.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = (static_cast<double>(i) + 0.5) * dx - half_width;
        w.samples[static_cast<std::size_t>(i)] = std::pow(std::abs(x), a);
    }
    validate_weight("power_weight", w);
    return w;
}

WeightGrid step_weight(int n, double ratio, double spacing) {
    WeightGrid w;
    w.spacing = spacing;
    w.samples.assign(static_cast<std::size_t>(n), 1.0);
    for (int i = n / 2; i < n; ++i) w.samples[static_cast<std::size_t>(i)] = ratio;
    validate_weight("step_weight", w);
    return w;
}

} // namespace varmult
