// Flat key = value experiment configs: one key per line, comma-separated
// lists, '#' comment lines. No structured-format dependency, trivially
// diffable.
#pragma once

#include "varmult/exponent.hpp"
#include "varmult/spaces.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace varmult {

struct WeightSpec {
    std::string name;            // constant | power | step
    double param = 0.0;          // value / exponent / ratio
    bool has_param = false;

    std::string str() const;
};

struct ExperimentConfig {
    std::string experiment;
    std::optional<SpaceDescriptor> space;
    std::optional<Exponent> p;
    std::optional<Exponent> q;
    std::optional<Exponent> r;
    std::optional<double> s;
    std::optional<double> t;
    std::optional<double> theta;  // metadata only; echoed in the summary
    std::vector<int> grid_sizes;
    std::optional<int> n_dims;
    std::optional<int> modes;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;  // mandatory before running
    std::vector<WeightSpec> weights;
    std::optional<std::string> signs;  // rademacher | eighth_roots
    std::optional<std::string> output;
};

// "scalar" | "sequence_p:<p>:<n>" | "schatten:<t>:<side>", p/t real or "inf".
SpaceDescriptor parse_space(const std::string& text);

// "inf" or a finite real >= 1.
Exponent parse_exponent(const std::string& text);

// Parses config text; unknown or duplicate keys and malformed values throw
// with the line number and field name.
ExperimentConfig parse_config(const std::string& text);

// Reads and parses a config file.
ExperimentConfig load_config(const std::string& path);

// Canonical `key = value` echo of every populated field, one per line, in a
// fixed order (used by summaries; deterministic).
std::string config_echo(const ExperimentConfig& cfg);

} // namespace varmult
