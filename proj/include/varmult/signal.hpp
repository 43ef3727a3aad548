// Periodic vector-valued signals on a power-of-two grid, and integer
// frequency intervals. Grid point j sits at x_j = j * period / N; frequencies
// live in the symmetric band [-N/2, N/2).
#pragma once

#include "varmult/spaces.hpp"

#include <string>
#include <vector>

namespace varmult {

struct Signal {
    // Sample-major storage: coordinate c of sample j is data[j * dim + c].
    std::vector<Complex> data;
    SpaceDescriptor space;
    double period = 1.0;

    int size() const {
        int d = space.dim();
        return d > 0 ? static_cast<int>(data.size()) / d : 0;
    }
    Complex* sample(int j) { return data.data() + static_cast<std::size_t>(j) * space.dim(); }
    const Complex* sample(int j) const {
        return data.data() + static_cast<std::size_t>(j) * space.dim();
    }
    ElementValue sample_value(int j) const {
        const Complex* p = sample(j);
        return ElementValue(p, p + space.dim());
    }
};

Signal zero_signal(const SpaceDescriptor& space, int n, double period);

// Validates: sample count a power of two >= 2, positive finite period,
// storage length n * dim.
void validate_signal(const char* fn, const Signal& f);

// Half-open integer frequency interval [lo, hi).
struct FrequencyInterval {
    int lo = 0;
    int hi = 0;
};

// Interval must be nonempty and contained in the band [-N/2, N/2].
void validate_interval(const char* fn, const FrequencyInterval& I, int n);

std::string interval_str(const FrequencyInterval& I);

} // namespace varmult
