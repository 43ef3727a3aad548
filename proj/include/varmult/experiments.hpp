// Experiment registry and runner: maps validated configs onto the library
// operations and writes one CSV plus one human-readable summary per run.
#pragma once

#include "varmult/config.hpp"
#include "varmult/multiplier.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace varmult {

inline constexpr const char* library_version = "1.0.0";

struct ExperimentInfo {
    std::string name;
    std::string description;
};

// Registered experiments, stable order.
const std::vector<ExperimentInfo>& list_experiments();

struct RunArtifacts {
    bool passed = false;  // every built-in assertion held
    int assertions_total = 0;
    int assertions_failed = 0;
    std::string csv_path;
    std::string summary_path;
};

// Validates the config (experiment name, applicable keys, exponent
// relations), honors the VARMULT_SEED override, runs the experiment, and
// writes <output>/<experiment>-<seed>.csv and .summary.txt. The CSV body is
// a deterministic function of (config, effective seed); timestamps appear
// only in the summary.
RunArtifacts run_experiment(const ExperimentConfig& cfg);

// Scalar symbol that is piecewise constant with a few random jumps inside
// every dyadic block (so the per-block variation is positive); values lie in
// the closed unit disk. Shared between the multiplier-ratio experiment and
// the acceptance gate so both probe the same symbol population.
Symbol random_step_symbol(int n, std::uint64_t seed);

struct DecayRow {
    int dims = 0;
    int blocks = 0;             // dyadic blocks entering the profile
    double profile = 0.0;       // l^r aggregate of per-block V^s seminorms
    double profile_pow_r = 0.0; // the aggregate before the 1/r root
    double mult_norm = 0.0;     // probed multiplier norm of the same symbol
};

// Resolvent-symbol decay study: for dims = 1..max_dims, the l^r(V^s) profile
// over the continuum dyadic blocks +/-[2^b, 2^(b+1)), b = -4..dims (sampled
// on log-spaced analytic paths including the right endpoint; blocks below
// 2^-4 contribute geometrically negligible tails), against the probed
// multiplier norm on an n-point grid.
std::vector<DecayRow> decay_condition_profile(int max_dims, double r, double s,
                                              const Exponent& p, int grid_n,
                                              int probes, std::uint64_t seed);

} // namespace varmult
