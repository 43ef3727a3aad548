// Lebesgue/sequence-space exponents, including infinity, with duality.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace varmult {

// An exponent p in [1, inf]. Finite values are stored as doubles; infinity is
// a distinguished state so callers never compare against HUGE_VAL by hand.
class Exponent {
public:
    static Exponent finite(double p) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("Exponent::finite: value is not finite");
        }
        if (p < 1.0) {
            throw std::invalid_argument("Exponent::finite: exponent must be >= 1, got " + std::to_string(p));
        }
        Exponent e;
        e.value_ = p;
        return e;
    }

    static Exponent infinity() {
        Exponent e;
        e.value_ = std::numeric_limits<double>::infinity();
        return e;
    }

    // Accepts a finite value >= 1 or +infinity.
    static Exponent from_double(double p) {
        return std::isinf(p) ? infinity() : finite(p);
    }

    bool is_infinite() const { return std::isinf(value_); }

    // Finite value accessor; misuse on an infinite exponent is a logic error.
    double value() const {
        if (is_infinite()) {
            throw std::invalid_argument("Exponent::value: exponent is infinite");
        }
        return value_;
    }

    // Raw double, +inf for the infinite exponent (for display and arithmetic
    // that handles inf natively).
    double raw() const { return value_; }

    friend bool operator==(const Exponent& a, const Exponent& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(value_); }

private:
    Exponent() = default;
    double value_ = 2.0;
};

// Holder dual: 1/p + 1/p' = 1. Maps 1 <-> inf and fixes 2.
inline Exponent dual_exponent(const Exponent& p) {
    if (p.is_infinite()) return Exponent::finite(1.0);
    double v = p.value();
    if (v == 1.0) return Exponent::infinity();
    return Exponent::finite(v / (v - 1.0));
}

} // namespace varmult
