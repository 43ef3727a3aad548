#include "varmult/acceptance.hpp"

#include "varmult/carleson.hpp"
#include "varmult/config.hpp"
#include "varmult/experiments.hpp"
#include "varmult/fourier.hpp"
#include "varmult/multiplier.hpp"
#include "varmult/randomized.hpp"
#include "varmult/rng.hpp"
#include "varmult/signal.hpp"
#include "varmult/variation.hpp"
#include "varmult/weights.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

namespace varmult {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

ElementValue random_element(Rng& r, int dim) {
    ElementValue v(static_cast<std::size_t>(dim));
    for (int c = 0; c < dim; ++c) v[static_cast<std::size_t>(c)] = r.cgaussian();
    return v;
}

Signal random_signal(Rng& r, const SpaceDescriptor& space, int n) {
    Signal f = zero_signal(space, n, 1.0);
    for (Complex& z : f.data) z = r.cgaussian();
    return f;
}

StepFunction random_step(Rng& r, const SpaceDescriptor& space, int pieces,
                         const std::vector<double>& budgets) {
    StepFunction f;
    f.space = space;
    for (int i = 0; i <= pieces; ++i)
        f.breakpoints.push_back((i + 0.8 * r.uniform01()) / (pieces + 1));
    for (int i = 0; i < pieces; ++i) {
        ElementValue v = random_element(r, space.dim());
        double nv = norm(space, v);
        if (nv <= 0.0) {
            v[0] = Complex(1.0, 0.0);
            nv = norm(space, v);
        }
        const double scale = budgets[static_cast<std::size_t>(i)] / nv;
        for (Complex& z : v) z *= scale;
        f.pieces.push_back(std::move(v));
    }
    return f;
}

// ---- criterion bodies ---------------------------------------------------

// Resolvent difference floor: analytic entries and the certified diagonal
// operator-norm path must both sit on 1/sqrt(10).
CriterionResult crit_1() {
    CriterionResult res{1, "resolvent difference norms", false, 0.0, ""};
    const int dims = 20;
    const double target = 1.0 / std::sqrt(10.0);
    const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(4.0), dims);
    bool ok = true;
    double min_norm = 1e300, worst_entry = 0.0;
    for (int n = 1; n <= dims; ++n) {
        const double lo = std::ldexp(1.0, n), hi = std::ldexp(1.0, n + 1);
        std::vector<Complex> da(static_cast<std::size_t>(dims)),
            db(static_cast<std::size_t>(dims));
        for (int j = 1; j <= dims; ++j) {
            da[static_cast<std::size_t>(j - 1)] = resolvent_entry(j, lo);
            db[static_cast<std::size_t>(j - 1)] = resolvent_entry(j, hi);
        }
        const OperatorNormResult nm = operator_norm(
            op_sub(op_diagonal(space, db), op_diagonal(space, da)), NormMode::Exact);
        ok = ok && nm.certified && nm.value >= target - 1e-9;
        min_norm = std::min(min_norm, nm.value);
        const double entry = std::abs(resolvent_entry(n, hi) - resolvent_entry(n, lo));
        worst_entry = std::max(worst_entry, std::abs(entry - target));
        ok = ok && std::abs(entry - target) <= 1e-12;
    }
    res.passed = ok;
    res.detail = "min norm " + fmt(min_norm) + ", worst entry gap " + fmt(worst_entry);
    return res;
}

// 1000 random paths: DP objective bit-identical to brute enumeration, root
// within 1e-12.
CriterionResult crit_2() {
    CriterionResult res{2, "variation oracle", false, 0.0, ""};
    const SpaceDescriptor scalar = SpaceDescriptor::scalar();
    const SpaceDescriptor seq = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3);
    static constexpr double kS[] = {1.0, 1.5, 2.0, 3.0};
    Rng root(0xACC2);
    int matches = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        const SpaceDescriptor& space = (trial % 2 == 0) ? scalar : seq;
        const int n = static_cast<int>(r.uniform_int(2, 13));
        SampledPath path;
        path.space = space;
        for (int j = 0; j < n; ++j) {
            path.times.push_back(static_cast<double>(j));
            path.values.push_back(random_element(r, space.dim()));
        }
        bool trial_ok = true;
        for (double s : kS) {
            const double dp = vs_seminorm_objective(path, s);
            const double br = brute_force_vs_objective(path, s);
            trial_ok = trial_ok && dp == br;
            const double dv = vs_seminorm(path, s), bv = brute_force_vs(path, s);
            trial_ok = trial_ok && std::abs(dv - bv) <= 1e-12 * std::max(1.0, bv);
        }
        if (trial_ok) ++matches;
    }
    res.passed = matches == trials;
    res.detail = std::to_string(matches) + "/" + std::to_string(trials) + " exact";
    return res;
}

// Monotone paths, two-jump indicators, constant paths.
CriterionResult crit_3() {
    CriterionResult res{3, "closed forms", false, 0.0, ""};
    static constexpr double kS[] = {1.0, 1.5, 2.0, 3.0};
    Rng root(0xACC3);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        const int n = static_cast<int>(r.uniform_int(3, 12));
        SampledPath path;
        path.space = SpaceDescriptor::scalar();
        double v = r.uniform(-2.0, 2.0);
        for (int j = 0; j < n; ++j) {
            path.times.push_back(static_cast<double>(j));
            path.values.push_back({Complex(v, 0.0)});
            v += r.uniform(0.0, 1.0) + 1e-3;
        }
        const double total = path.values.back()[0].real() - path.values.front()[0].real();
        for (double s : kS) {
            const double err = std::abs(vs_seminorm(path, s) - total);
            worst = std::max(worst, err);
            ok = ok && err <= 1e-12;
        }
    }
    SampledPath jumps;
    jumps.space = SpaceDescriptor::scalar();
    for (int j = 0; j < 3; ++j) {
        jumps.times.push_back(static_cast<double>(j));
        jumps.values.push_back({Complex(j == 1 ? 1.0 : 0.0, 0.0)});
    }
    for (double s : kS) {
        const double err = std::abs(vs_seminorm(jumps, s) - std::pow(2.0, 1.0 / s));
        worst = std::max(worst, err);
        ok = ok && err <= 1e-12;
    }
    for (const SpaceDescriptor& space :
         {SpaceDescriptor::scalar(), SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3)}) {
        SampledPath flat;
        flat.space = space;
        Rng r = root.fork(99);
        const ElementValue c = random_element(r, space.dim());
        for (int j = 0; j < 6; ++j) {
            flat.times.push_back(static_cast<double>(j));
            flat.values.push_back(c);
        }
        for (double s : kS) ok = ok && vs_seminorm(flat, s) == 0.0;
    }
    res.passed = ok;
    res.detail = "worst closed-form error " + fmt(worst);
    return res;
}

// Atom / step / difference-quotient embedding bounds.
CriterionResult crit_4() {
    CriterionResult res{4, "embedding bounds", false, 0.0, ""};
    static constexpr double kS[] = {1.0, 1.5, 2.0, 3.0};
    static constexpr double kH[] = {0.4, 0.2, 0.1, 0.05, 0.025};
    const SpaceDescriptor scalar = SpaceDescriptor::scalar();
    const SpaceDescriptor seq = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    Rng root(0xACC4);
    bool ok = true;
    for (int trial = 0; trial < 500; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        const SpaceDescriptor& space = (trial % 2 == 0) ? scalar : seq;
        const double s = kS[trial % 4];
        const int m = static_cast<int>(r.uniform_int(1, 5));
        std::vector<double> budgets(static_cast<std::size_t>(m));
        double pot = 0.0;
        for (double& b : budgets) {
            b = std::abs(r.gaussian()) + 0.05;
            pot += std::pow(b, s);
        }
        const double unit = std::pow(pot, 1.0 / s);
        for (double& b : budgets) b /= unit;
        const StepFunction atom = random_step(r, space, m, budgets);
        ok = ok && vs_seminorm(path_from_step(atom), s) <= 2.0 + 1e-10;
        for (double& b : budgets) b *= r.uniform(0.5, 2.0);
        const StepFunction step = random_step(r, space, m, budgets);
        ok = ok && vs_seminorm(path_from_step(step), s) <=
                       2.0 * rs_atom_upper(step, s) + 1e-10;
        if (trial < 100) {
            const double r_exp = (trial % 2 == 0) ? 2.0 : 1.5;
            const double vs_pow = std::pow(vs_seminorm(path_from_step(step), r_exp), r_exp);
            for (double h : kH)
                ok = ok && difference_seminorm(step, r_exp, h) <= h * vs_pow + 1e-10;
        }
    }
    res.passed = ok;
    res.detail = "500 atoms, 500 steps, 100 h-sweeps";
    return res;
}

// Transform round-trip, Littlewood-Paley reconstruction, projection algebra,
// and p = 2 Plancherel exactness.
CriterionResult crit_5() {
    CriterionResult res{5, "multiplier algebra", false, 0.0, ""};
    Rng root(0xACC5);
    bool ok = true;
    double worst = 0.0;
    {
        const int n = 1 << 14;
        Rng r = root.fork(1);
        std::vector<Complex> data(static_cast<std::size_t>(n));
        for (Complex& z : data) z = r.cgaussian();
        std::vector<Complex> copy = data;
        fft_forward(copy);
        fft_inverse(copy);
        double err = 0.0;
        for (int j = 0; j < n; ++j)
            err = std::max(err, std::abs(copy[static_cast<std::size_t>(j)] -
                                         data[static_cast<std::size_t>(j)]));
        worst = std::max(worst, err);
        ok = ok && err <= 1e-10;
    }
    for (int n : {64, 1024, 4096}) {
        Rng r = root.fork(static_cast<std::uint64_t>(n));
        const Signal f = random_signal(r, SpaceDescriptor::scalar(), n);
        Signal recon = zero_signal(f.space, n, 1.0);
        for (const FrequencyInterval& cell : dyadic_partition(n)) {
            const Signal part = frequency_projection(cell, f);
            for (std::size_t i = 0; i < recon.data.size(); ++i) recon.data[i] += part.data[i];
        }
        double err = 0.0;
        for (std::size_t i = 0; i < recon.data.size(); ++i)
            err = std::max(err, std::abs(recon.data[i] - f.data[i]));
        worst = std::max(worst, err);
        ok = ok && err <= 1e-10;
    }
    {
        const int n = 256;
        Rng r = root.fork(77);
        const Signal f = random_signal(r, SpaceDescriptor::scalar(), n);
        const std::vector<FrequencyInterval> cells = dyadic_partition(n);
        const FrequencyInterval a = cells[1], b = cells[2];
        const Signal pa = frequency_projection(a, f);
        const Signal paa = frequency_projection(a, pa);
        const Signal pba = frequency_projection(b, pa);
        double err = 0.0;
        for (std::size_t i = 0; i < pa.data.size(); ++i) {
            err = std::max(err, std::abs(paa.data[i] - pa.data[i]));
            err = std::max(err, std::abs(pba.data[i]));
        }
        worst = std::max(worst, err);
        ok = ok && err <= 1e-10;
    }
    {
        // Diagonal Hilbert-valued symbol: the probe-based p = 2 norm must
        // equal the max singular value across bins.
        const int n = 64;
        const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3);
        Rng r = root.fork(99);
        std::vector<Complex> diags(static_cast<std::size_t>(n) * 3);
        for (Complex& z : diags) z = r.cgaussian();
        const Symbol m = Symbol::diagonal(n, space, diags);
        const WeightGrid w = constant_weight(n, 1.0, 1.0 / n);
        const double est =
            estimate_multiplier_norm(m, Exponent::finite(2.0), w, 6, r.bits()).value;
        double truth = 0.0;
        for (int k = -n / 2; k < n / 2; ++k)
            truth = std::max(truth, operator_norm(m.operator_at(k), NormMode::Exact).value);
        worst = std::max(worst, std::abs(est - truth));
        ok = ok && std::abs(est - truth) <= 1e-9;
        // General symbols only promise a lower bound.
        std::vector<Complex> mats(static_cast<std::size_t>(n) * 9);
        for (Complex& z : mats) z = r.cgaussian();
        const Symbol g = Symbol::general(n, space, space, mats);
        const double gest =
            estimate_multiplier_norm(g, Exponent::finite(2.0), w, 6, r.bits()).value;
        double gtruth = 0.0;
        for (int k = -n / 2; k < n / 2; ++k)
            gtruth = std::max(gtruth, operator_norm(g.operator_at(k), NormMode::Exact).value);
        ok = ok && gest <= gtruth + 1e-12;
    }
    res.passed = ok;
    res.detail = "worst error " + fmt(worst);
    return res;
}

// Variational Carleson DP against the exhaustive family oracle, plus the
// interval-functional chain.
CriterionResult crit_6() {
    CriterionResult res{6, "carleson oracle", false, 0.0, ""};
    const SpaceDescriptor scalar = SpaceDescriptor::scalar();
    const SpaceDescriptor seq = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
    static constexpr double kQ[] = {1.0, 2.0, 3.0};
    static constexpr int kN[] = {2, 4, 8};
    Rng root(0xACC6);
    bool all_match = true, all_chain = true;
    for (int trial = 0; trial < 200; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        const int n = kN[trial % 3];
        const SpaceDescriptor& space = (trial % 2 == 0) ? scalar : seq;
        const Signal f = random_signal(r, space, n);
        const int pairs = static_cast<int>(r.uniform_int(1, std::max(1, n / 2)));
        std::set<int> cuts;
        while (static_cast<int>(cuts.size()) < 2 * pairs)
            cuts.insert(static_cast<int>(r.uniform_int(-n / 2, n / 2)));
        IntervalFamily fam;
        for (auto it = cuts.begin(); it != cuts.end();) {
            const int lo = *it++;
            const int hi = *it++;
            fam.push_back(FrequencyInterval{lo, hi});
        }
        for (double q : kQ) {
            const std::vector<double> objs = variational_carleson_objective(f, q);
            const std::vector<double> vals = variational_carleson(f, q);
            const std::vector<double> rf = rubio_functional(f, fam, q);
            for (int j = 0; j < n; ++j) {
                all_match = all_match &&
                            objs[static_cast<std::size_t>(j)] ==
                                variational_carleson_brute_objective(f, q, j);
                all_chain = all_chain &&
                            rf[static_cast<std::size_t>(j)] <=
                                vals[static_cast<std::size_t>(j)] * (1.0 + 1e-9) + 1e-12;
            }
        }
    }
    res.passed = all_match && all_chain;
    res.detail = std::string(all_match ? "objectives exact" : "objective mismatch") +
                 ", " + (all_chain ? "chain holds" : "chain violated");
    return res;
}

// Muckenhoupt suite: exact value on the flat weight, monotonicity in p,
// grid-doubling stability for power weights.
CriterionResult crit_7() {
    CriterionResult res{7, "weight suite", false, 0.0, ""};
    bool ok = true;
    for (int n : {64, 512})
        for (double p : {1.5, 2.0, 3.0, 4.0})
            ok = ok && ap_constant(constant_weight(n, 1.0, 1.0 / n), p) == 1.0;
    static constexpr double kP[] = {1.5, 2.0, 2.5, 3.0, 4.0};
    Rng root(0xACC7);
    for (int trial = 0; trial < 100; ++trial) {
        Rng r = root.fork(static_cast<std::uint64_t>(trial));
        const int n = 128;
        WeightGrid w;
        w.spacing = 1.0 / n;
        for (int j = 0; j < n; ++j) w.samples.push_back(std::exp(r.uniform(-2.0, 2.0)));
        double prev = 1e300;
        for (double p : kP) {
            const double ap = ap_constant(w, p);
            ok = ok && ap <= prev + 1e-10;
            prev = ap;
        }
    }
    for (double a : {0.5, -0.3}) {
        for (double p : {2.0, 3.0}) {
            const double c512 = ap_constant(power_weight(512, a, 0.5), p);
            const double c1024 = ap_constant(power_weight(1024, a, 0.5), p);
            ok = ok && std::abs(c1024 - c512) <= 0.02 * c512;
        }
    }
    res.passed = ok;
    res.detail = "flat weight exact, 100 monotone weights, power doubling <= 2%";
    return res;
}

// Rademacher suite: Hilbert identity, Monte Carlo vs enumeration coverage,
// convex-hull stability of the R-bound search.
CriterionResult crit_8() {
    CriterionResult res{8, "rademacher suite", false, 0.0, ""};
    Rng root(0xACC8);
    bool ok = true;
    {
        const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 3);
        for (int trial = 0; trial < 50; ++trial) {
            Rng r = root.fork(static_cast<std::uint64_t>(trial));
            const int k = static_cast<int>(r.uniform_int(1, 10));
            std::vector<ElementValue> xs;
            double sum_sq = 0.0;
            for (int i = 0; i < k; ++i) {
                xs.push_back(random_element(r, 3));
                sum_sq += norm_sq(space, xs.back());
            }
            const RademacherEstimate est = rademacher_mean(space, xs, 2.0, 4);
            ok = ok && est.method == EstimateMethod::Exact && est.std_error == 0.0;
            ok = ok && std::abs(est.mean - std::sqrt(sum_sq)) <=
                           1e-12 * std::max(1.0, std::sqrt(sum_sq));
        }
    }
    int covered = 0;
    const int mc_trials = 500;
    {
        const SpaceDescriptor scalar = SpaceDescriptor::scalar();
        const SpaceDescriptor seq = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
        for (int trial = 0; trial < mc_trials; ++trial) {
            Rng r = root.fork(0x800000u + static_cast<std::uint64_t>(trial));
            const SpaceDescriptor& space = (trial % 2 == 0) ? scalar : seq;
            const int k = 3 + trial % 6;
            std::vector<ElementValue> xs;
            for (int i = 0; i < k; ++i) xs.push_back(random_element(r, space.dim()));
            const double exact = rademacher_mean(space, xs, 1.0, 4).mean;
            const RademacherEstimate mc =
                rademacher_mean_mc(space, xs, 1.0, 100000, r.bits());
            if (mc.std_error > 0.0 && std::abs(mc.mean - exact) <= 3.0 * mc.std_error)
                ++covered;
        }
        ok = ok && covered >= 495;  // >= 99% of 500
    }
    {
        const SpaceDescriptor space = SpaceDescriptor::sequence_p(Exponent::finite(2.0), 2);
        for (int rep = 0; rep < 5; ++rep) {
            Rng r = root.fork(0x900000u + static_cast<std::uint64_t>(rep));
            std::vector<OperatorValue> fam;
            for (int i = 0; i < 3; ++i) {
                std::vector<Complex> diag(2);
                for (Complex& z : diag) {
                    const double mag = r.uniform(0.2, 1.0);
                    const double ph = r.uniform(0.0, 2.0 * 3.141592653589793);
                    z = Complex(mag * std::cos(ph), mag * std::sin(ph));
                }
                fam.push_back(op_diagonal(space, diag));
            }
            const double base = rbound_lower(fam, 48, 0xC0117E57);
            std::vector<OperatorValue> hull = fam;
            hull.push_back(op_scale(0.5, op_add(fam[0], fam[1])));
            const double enlarged = rbound_lower(hull, 48, 0xC0117E57);
            ok = ok && enlarged <= base * 1.10 + 1e-9;
        }
    }
    res.passed = ok;
    res.detail = "MC coverage " + std::to_string(covered) + "/" +
                 std::to_string(mc_trials) + ", hull stable";
    return res;
}

// Trend gates: multiplier-norm ratio stability across grid refinement, the
// weighted variational Carleson ratio across refinement, and the resolvent
// profile divergence against its flat multiplier norm.
CriterionResult crit_9() {
    CriterionResult res{9, "boundedness trends", false, 0.0, ""};
    std::ostringstream detail;
    bool ok = true;
    {
        // (a) 50 normalized step symbols, s = 1.5, p = 4, flat weight.
        const double s = 1.5;
        const Exponent p = Exponent::finite(4.0);
        Rng root(0xACC9A);
        double ratio_coarse = 0.0, ratio_fine = 0.0;
        for (int n : {256, 2048}) {
            const WeightGrid w = constant_weight(n, 1.0, 1.0 / n);
            const std::vector<FrequencyInterval> blocks = dyadic_partition(n);
            double worst = 0.0;
            for (int i = 0; i < 50; ++i) {
                Rng r = root.fork(static_cast<std::uint64_t>(i));
                const Symbol m = random_step_symbol(n, r.bits());
                double sup = 0.0;
                for (int k = -n / 2; k < n / 2; ++k)
                    sup = std::max(sup, std::abs(m.scalar_at(k)));
                double blockmax = 0.0;
                for (double v : symbol_variation_profile(m, blocks, s))
                    blockmax = std::max(blockmax, v);
                const double vsn = sup + blockmax;
                Rng pr = r.fork(3);
                const double est =
                    estimate_multiplier_norm(m, p, w, 10, pr.bits()).value;
                if (vsn > 0.0) worst = std::max(worst, est / vsn);
            }
            if (n == 256) ratio_coarse = worst;
            else ratio_fine = worst;
        }
        const bool gate = ratio_fine <= 1.25 * ratio_coarse;
        ok = ok && gate;
        detail << "(a) " << fmt(ratio_coarse) << " -> " << fmt(ratio_fine)
               << (gate ? " ok" : " FAIL");
    }
    {
        // (b) p = q = 4, flat and |x|^(1/2) weights, 100 scalar signals.
        const double q = 4.0;
        const Exponent p = Exponent::finite(4.0);
        Rng root(0xACC9B);
        double flat_coarse = 0.0, flat_fine = 0.0, pow_coarse = 0.0, pow_fine = 0.0;
        for (int n : {256, 1024}) {
            const WeightGrid wflat = constant_weight(n, 1.0, 1.0 / n);
            const WeightGrid wpow = power_weight(n, 0.5, 0.5);
            double worst_flat = 0.0, worst_pow = 0.0;
            for (int i = 0; i < 100; ++i) {
                Rng r = root.fork(static_cast<std::uint64_t>(n) * 1000u +
                                  static_cast<std::uint64_t>(i));
                const Signal f = random_signal(r, SpaceDescriptor::scalar(), n);
                const std::vector<double> vals = variational_carleson(f, q);
                worst_flat = std::max(worst_flat, weighted_lp_norm(vals, wflat, p) /
                                                      weighted_lp_norm(f, wflat, p));
                worst_pow = std::max(worst_pow, weighted_lp_norm(vals, wpow, p) /
                                                    weighted_lp_norm(f, wpow, p));
            }
            if (n == 256) {
                flat_coarse = worst_flat;
                pow_coarse = worst_pow;
            } else {
                flat_fine = worst_flat;
                pow_fine = worst_pow;
            }
        }
        const bool gate = std::abs(flat_fine - flat_coarse) <= 0.20 * flat_coarse &&
                          std::abs(pow_fine - pow_coarse) <= 0.20 * pow_coarse;
        ok = ok && gate;
        detail << "; (b) flat " << fmt(flat_coarse) << " -> " << fmt(flat_fine)
               << ", pow " << fmt(pow_coarse) << " -> " << fmt(pow_fine)
               << (gate ? " ok" : " FAIL");
    }
    {
        // (c) resolvent profile diverges linearly while the probed norm is flat.
        const std::vector<DecayRow> rows =
            decay_condition_profile(12, 2.0, 2.0, Exponent::finite(4.0), 256, 10, 0xACC9C);
        bool grow = true;
        for (std::size_t i = 1; i < rows.size(); ++i)
            grow = grow && rows[i].profile > rows[i - 1].profile;
        // Linear divergence: the late increments of profile^r cluster around
        // their median (within 20%).
        std::vector<double> incs;
        for (std::size_t i = 4; i < rows.size(); ++i)
            incs.push_back(rows[i].profile_pow_r - rows[i - 1].profile_pow_r);
        std::vector<double> sorted = incs;
        std::sort(sorted.begin(), sorted.end());
        const double med = sorted[sorted.size() / 2];
        bool linear = med > 0.0;
        for (double d : incs) linear = linear && std::abs(d - med) <= 0.20 * med;
        double nmin = 1e300, nmax = 0.0;
        for (const DecayRow& row : rows) {
            nmin = std::min(nmin, row.mult_norm);
            nmax = std::max(nmax, row.mult_norm);
        }
        const bool flat = nmin >= 0.9 && nmax <= 1.002 && nmax <= 1.05 * nmin;
        const bool gate = grow && linear && flat;
        ok = ok && gate;
        detail << "; (c) profile " << fmt(rows.front().profile) << " -> "
               << fmt(rows.back().profile) << ", norm in [" << fmt(nmin) << ", "
               << fmt(nmax) << "]" << (gate ? " ok" : " FAIL");
    }
    res.passed = ok;
    res.detail = detail.str();
    return res;
}

using CritFn = CriterionResult (*)();

CriterionResult timed(CritFn fn) {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r = fn();
    const auto t1 = std::chrono::steady_clock::now();
    r.seconds = std::chrono::duration<double>(t1 - t0).count();
    return r;
}

} // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& indices) {
    static constexpr CritFn kFns[] = {&crit_1, &crit_2, &crit_3, &crit_4, &crit_5,
                                      &crit_6, &crit_7, &crit_8, &crit_9};
    std::set<int> want(indices.begin(), indices.end());
    if (want.empty())
        for (int i = 1; i <= 10; ++i) want.insert(i);
    for (int i : want)
        if (i < 1 || i > 10)
            throw std::invalid_argument("run_acceptance: criteria are numbered 1..10");
    // The runtime gate times criteria 1-8, so they must all run with it.
    if (want.count(10))
        for (int i = 1; i <= 8; ++i) want.insert(i);
    std::vector<CriterionResult> out;
    double core_seconds = 0.0;
    bool core_passed = true;
    for (int i : want) {
        if (i == 10) continue;
        CriterionResult r = timed(kFns[i - 1]);
        if (i <= 8) {
            core_seconds += r.seconds;
            core_passed = core_passed && r.passed;
        }
        out.push_back(std::move(r));
    }
    if (want.count(10)) {
        CriterionResult r;
        r.index = 10;
        r.name = "selftest runtime";
        r.seconds = core_seconds;
        r.passed = core_passed && core_seconds < 300.0;
        r.detail = "criteria 1-8 in " + fmt(core_seconds) + " s (< 300 s budget)" +
                   (core_passed ? "" : ", with failures");
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_criterion(const CriterionResult& r) {
    std::ostringstream out;
    out << "[" << (r.passed ? "PASS" : "FAIL") << "] criterion " << r.index << ": "
        << r.name << " (" << fmt(r.seconds) << " s) " << r.detail;
    return out.str();
}

} // namespace varmult
