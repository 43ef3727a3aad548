// Discrete Carleson machinery: partial Fourier sums over frequency cuts, the
// pointwise maximal and q-variational Carleson functions, the square-function
// style family functional, and an exhaustive family-enumeration oracle.
//
// The q-variational value at a point equals the supremum over families of
// pairwise disjoint frequency intervals of (sum_I ||S_I f(x)||^q)^{1/q}: any
// family is dominated by the filled subsequence through its endpoints (added
// increments are nonnegative), and filled subsequences are families, so the
// two suprema coincide. The oracle enumerates families; the DP walks
// subsequences; the acceptance suite compares them bit-for-bit.
#pragma once

#include "varmult/multiplier.hpp"
#include "varmult/variation.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace varmult {

// Pairwise disjoint frequency intervals inside the band.
using IntervalFamily = std::vector<FrequencyInterval>;

void validate_family(const char* fn, const IntervalFamily& fam, int n);

// Partial sum over the modes with frequency k < cut; cut in [-N/2, N/2]
// (cut = -N/2 gives the zero signal, cut = N/2 reproduces f).
Signal partial_fourier(const Signal& f, int cut);

// Pointwise maximal function over all cuts: out[j] = max_a ||C_a f(x_j)||.
std::vector<double> carleson_maximal(const Signal& f);

// Pointwise q-variation of the cut path a -> C_a f(x_j); q finite >= 1.
std::vector<double> variational_carleson(const Signal& f, double q);
// Pre-root objectives (sup of increment power sums), for oracle comparison.
std::vector<double> variational_carleson_objective(const Signal& f, double q);

// Pointwise family functional out[j] = (sum_I ||S_I f(x_j)||^q)^{1/q}.
std::vector<double> rubio_functional(const Signal& f, const IntervalFamily& fam, double q);

// Exhaustive enumeration over every family of pairwise disjoint cut intervals
// at one grid point; grids of at most 8 samples. Pre-root objective.
double variational_carleson_brute_objective(const Signal& f, double q, int point);
double variational_carleson_brute(const Signal& f, double q, int point);

struct RubioGrowthRow {
    int n = 0;
    std::string weight;
    int trial = 0;
    double signal_norm = 0.0;
    double functional_norm = 0.0;
    double ratio = 0.0;
};

// Weighted growth table for the variational functional: for each grid size
// and weight name, draws seeded random signals and records
// ||C^q_* f||_{L^p(w)} / ||f||_{L^p(w)}. The underlying estimate requires
// p > q' (dual of q); violating that is a caller error, and the limiting
// case p = q' is genuinely false, so both throw.
std::vector<RubioGrowthRow> rubio_growth_experiment(
    const SpaceDescriptor& space, double p, double q, const std::vector<int>& sizes,
    const std::vector<std::string>& weight_names,
    const std::function<WeightGrid(const std::string&, int)>& weight_factory,
    int trials, std::uint64_t seed);

} // namespace varmult
