// Discrete Muckenhoupt machinery: positive weight grids, the finite-window
// A_p characteristic, and weighted L^p norms of signals and scalar grid
// functions.
#pragma once

#include "varmult/exponent.hpp"
#include "varmult/signal.hpp"

#include <vector>

namespace varmult {

// Uniformly spaced strictly positive weight samples. Window averages only
// depend on sample order; the spacing enters integrals.
struct WeightGrid {
    std::vector<double> samples;
    double spacing = 1.0;
};

void validate_weight(const char* fn, const WeightGrid& w);

// Finite A_p characteristic: max over every contiguous index window J of
//   (avg_J w) * (avg_J w^{-1/(p-1)})^{p-1},
// the discrete form of (1/|J| int_J w)(1/|J| int_J w^{1-p'})^{p-1}. The
// dual-exponent power is evaluated in log space. O(N^2) windows via prefix
// sums. Requires p > 1.
double ap_constant(const WeightGrid& w, double p);

// Independent window-enumeration oracle with Kahan-compensated sums (no
// prefix differencing); used to pin ap_constant in tests.
double ap_constant_oracle(const WeightGrid& w, double p);

// Weighted L^p norm (sum_j ||f(x_j)||^p w_j dx)^(1/p); p = inf is the plain
// sup of sample norms. The weight grid must have one sample per signal sample
// and the same spacing as the signal's grid.
double weighted_lp_norm(const Signal& f, const WeightGrid& w, Exponent p);

// Same for a nonnegative scalar grid function (maximal/variational outputs).
double weighted_lp_norm(const std::vector<double>& values, const WeightGrid& w, Exponent p);

// Standard families.
WeightGrid constant_weight(int n, double value, double spacing);
// w(x) = |x|^a on the symmetric cell-centered grid x_i = (i + 0.5) dx - L,
// dx = 2L/n. For even n the grid never hits x = 0.
WeightGrid power_weight(int n, double a, double half_width);
// 1 on the left half of the grid, `ratio` on the right.
WeightGrid step_weight(int n, double ratio, double spacing);

} // namespace varmult
