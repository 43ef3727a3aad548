// Rademacher averages, type/cotype constants for finite families, and
// R-boundedness lower bounds, with exact sign enumeration when the pattern
// space is small enough to walk outright.
#pragma once

#include "varmult/exponent.hpp"
#include "varmult/spaces.hpp"

#include <cstdint>
#include <vector>

namespace varmult {

// Sign ensemble: real +/-1 signs, or eighth roots of unity standing in for
// complex Steinhaus signs. Surfaces that report eighth-root results must say
// so; the substitution is an approximation, not the continuous ensemble.
enum class SignMode { PlusMinusOne, EighthRoots };

enum class EstimateMethod { Exact, MonteCarlo };

struct RademacherEstimate {
    // (E || sum_n eps_n x_n ||^moment)^(1/moment).
    double mean = 0.0;
    // Standard error of `mean` (delta method through the root); exactly 0 for
    // exact enumeration.
    double std_error = 0.0;
    EstimateMethod method = EstimateMethod::Exact;
    std::int64_t sample_count = 0;
};

// Averaged sign sum of the family. Enumeration is exact when the pattern
// count is small (2^K for +/-1 with K <= 12, 8^K for eighth roots with
// K <= 4); otherwise Monte Carlo with `budget` samples (budget >= 2).
RademacherEstimate rademacher_mean(const SpaceDescriptor& space,
                                   const std::vector<ElementValue>& xs,
                                   double moment, std::int64_t budget,
                                   std::uint64_t seed = 0x5161D5,
                                   SignMode mode = SignMode::PlusMinusOne);

// Forced Monte Carlo sampling regardless of family size; exists so the
// sampling path can be cross-checked against exact enumeration.
RademacherEstimate rademacher_mean_mc(const SpaceDescriptor& space,
                                      const std::vector<ElementValue>& xs,
                                      double moment, std::int64_t budget,
                                      std::uint64_t seed = 0x5161D5,
                                      SignMode mode = SignMode::PlusMinusOne);

// Best type-t constant witnessed by this finite family: the Rademacher second
// moment divided by the l^t norm of the coordinate norms. t in [1, 2].
double type_constant(const SpaceDescriptor& space,
                     const std::vector<ElementValue>& family, double t,
                     std::int64_t budget = 1 << 16,
                     std::uint64_t seed = 0x7C0DE);

// Best cotype-q constant witnessed by this finite family: the l^q norm of the
// coordinate norms divided by the Rademacher second moment. q in [2, inf].
double cotype_constant(const SpaceDescriptor& space,
                       const std::vector<ElementValue>& family,
                       const Exponent& q, std::int64_t budget = 1 << 16,
                       std::uint64_t seed = 0x7C0DE);

// Lower bound for the R-bound of the family: the largest observed ratio
//   E || sum_k eps_k T_{i_k} x_k ||  /  E || sum_k eps_k x_k ||
// over single-operator probing (tuple length 1, where the ratio reduces to
// ||T x|| / ||x||) and `budget` random assignments of tuple length 2..8 whose
// vectors are refined by multiplicative coordinate ascent. Both Rademacher
// means are exact enumerations, so every reported ratio is genuinely attained
// and the result never exceeds the true R-bound.
double rbound_lower(const std::vector<OperatorValue>& ops, int budget = 40,
                    std::uint64_t seed = 0x2B0D);

struct RrToRboundRow {
    int trial = 0;
    int pieces = 0;
    double rbound = 0.0;  // rbound_lower of the trial's piece set
    double upper = 0.0;   // l^r aggregate of the exact piece norms
    double ratio = 0.0;   // rbound / upper
};

// Random diagonal step symbols from SequenceP(q, dim) to SequenceP(t, dim),
// checked against the exponent relation 1/r = 1/t - 1/q. Per trial: a piece
// set of random diagonal operators, its rbound_lower, and the l^r aggregate
// of the piece norms (exact for diagonals: the l^r norm of the diagonal
// vector, by Holder with 1/r = 1/t - 1/q). The ratio column is the trend the
// caller watches; no universal constant is asserted.
std::vector<RrToRboundRow> rr_to_rbound_experiment(int dim, double t,
                                                   const Exponent& q,
                                                   const Exponent& r,
                                                   int trials, int budget,
                                                   std::uint64_t seed);

struct CotypeFromRubioRow {
    int trial = 0;
    // max over modes and grid points of || S_{I_n} f - phi e_{3n} eps_n x_n ||.
    double recovery_error = 0.0;
    // Rademacher second moment of the drawn family.
    double rad_mean = 0.0;
    // l^q norm of the x_n norms.
    double norm_aggregate = 0.0;
    double direct_ratio = 0.0;  // norm_aggregate / rad_mean
    // Same ratio recovered through the interval functional:
    // ||RF||_{L^p} / (||phi||_{L^p} * rad_mean).
    double rubio_ratio = 0.0;
};

// Modulated-bump cotype construction: f = sum_n phi e_{3n} eps_n x_n with
// phi a two-mode bump (spectrum {0, 1}) and separated frequency intervals
// I_n = [3n - 1, 3n + 2). Verifies that the projection family recovers each
// term on the discrete grid and reports the cotype-q ratio both directly and
// through the interval functional. Requires 3 * modes + 1 < grid_n / 2.
std::vector<CotypeFromRubioRow> cotype_from_rubio_experiment(
    const SpaceDescriptor& space, int grid_n, int modes, double p, double q,
    int trials, std::uint64_t seed, SignMode mode = SignMode::PlusMinusOne);

} // namespace varmult
