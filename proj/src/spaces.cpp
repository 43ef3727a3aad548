#include "varmult/spaces.hpp"

#include "varmult/kernels.hpp"
#include "varmult/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace varmult {

namespace {

using RowMajorMat =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_element(const char* fn, const SpaceDescriptor& space, const ElementValue& v) {
    if (static_cast<int>(v.size()) != space.dim()) {
        throw std::invalid_argument(std::string(fn) + ": value has " +
                                    std::to_string(v.size()) + " coordinates but space " +
                                    space.str() + " expects " + std::to_string(space.dim()));
    }
}

// Split an element into SoA buffers for the kernels.
void split(const ElementValue& v, std::vector<double>& re, std::vector<double>& im) {
    re.resize(v.size());
    im.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        re[i] = v[i].real();
        im[i] = v[i].imag();
    }
}

double lp_of(const std::vector<double>& re, const std::vector<double>& im, const Exponent& p) {
    const auto& k = kernels::active();
    std::size_t n = re.size();
    if (p.is_infinite()) {
        return std::sqrt(k.max_norm_sq(re.data(), im.data(), n));
    }
    double pv = p.value();
    kernels::PowKind pk;
    double s = pv;
    double total = kernels::classify_pow(s, pk)
                       ? k.sum_pow(re.data(), im.data(), n, pk)
                       : kernels::sum_pow_general(re.data(), im.data(), n, s);
    if (pv == 1.0) return total;
    if (pv == 2.0) return std::sqrt(total);
    return std::pow(total, 1.0 / pv);
}

} // namespace

SpaceDescriptor SpaceDescriptor::scalar() {
    return SpaceDescriptor(SpaceKind::Scalar, Exponent::finite(2.0), 1, 0);
}

SpaceDescriptor SpaceDescriptor::sequence_p(Exponent p, int n) {
    if (n < 1) {
        throw std::invalid_argument("SpaceDescriptor::sequence_p: dimension must be >= 1, got " +
                                    std::to_string(n));
    }
    return SpaceDescriptor(SpaceKind::SequenceP, p, n, 0);
}

SpaceDescriptor SpaceDescriptor::schatten(Exponent t, int side) {
    if (side < 1 || side > 256) {
        throw std::invalid_argument("SpaceDescriptor::schatten: side must be in [1, 256], got " +
                                    std::to_string(side));
    }
    return SpaceDescriptor(SpaceKind::Schatten, t, side * side, side);
}

int SpaceDescriptor::side() const {
    if (kind_ != SpaceKind::Schatten) {
        throw std::invalid_argument("SpaceDescriptor::side: not a Schatten space: " + str());
    }
    return side_;
}

std::string SpaceDescriptor::str() const {
    switch (kind_) {
        case SpaceKind::Scalar: return "scalar";
        case SpaceKind::SequenceP:
            return "sequence_p(" + exponent_.str() + ", " + std::to_string(dim_) + ")";
        case SpaceKind::Schatten:
            return "schatten(" + exponent_.str() + ", " + std::to_string(side_) + ")";
    }
    return "?";
}

std::vector<double> singular_values(const SpaceDescriptor& space, const ElementValue& v) {
    if (space.kind() != SpaceKind::Schatten) {
        throw std::invalid_argument("singular_values: space is not Schatten: " + space.str());
    }
    check_element("singular_values", space, v);
    int side = space.side();
    Eigen::Map<const RowMajorMat> m(v.data(), side, side);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    std::vector<double> sv(svd.singularValues().data(),
                           svd.singularValues().data() + side);
    return sv;
}

double norm(const SpaceDescriptor& space, const ElementValue& v) {
    check_element("norm", space, v);
    switch (space.kind()) {
        case SpaceKind::Scalar: {
            double x = v[0].real();
            double y = v[0].imag();
            return std::sqrt(x * x + y * y);
        }
        case SpaceKind::SequenceP: {
            std::vector<double> re, im;
            split(v, re, im);
            return lp_of(re, im, space.exponent());
        }
        case SpaceKind::Schatten: {
            std::vector<double> sv = singular_values(space, v);
            const Exponent& t = space.exponent();
            if (t.is_infinite()) return sv.empty() ? 0.0 : sv.front();
            double tv = t.value();
            double total = 0.0;
            for (double s : sv) total += std::pow(s, tv);
            return std::pow(total, 1.0 / tv);
        }
    }
    return 0.0;
}

double norm_sq(const SpaceDescriptor& space, const ElementValue& v) {
    check_element("norm_sq", space, v);
    if (space.kind() == SpaceKind::Scalar) {
        double x = v[0].real();
        double y = v[0].imag();
        return x * x + y * y;
    }
    if (space.kind() == SpaceKind::SequenceP && space.exponent() == Exponent::finite(2.0)) {
        std::vector<double> re, im;
        split(v, re, im);
        return kernels::active().sum_pow(re.data(), im.data(), re.size(),
                                         kernels::PowKind::two);
    }
    double n = norm(space, v);
    return n * n;
}

OperatorValue op_identity(const SpaceDescriptor& space) {
    int d = space.dim();
    OperatorValue T{space, space, std::vector<Complex>(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0})};
    for (int i = 0; i < d; ++i) T.entries[static_cast<std::size_t>(i) * d + i] = Complex{1.0, 0.0};
    return T;
}

OperatorValue op_diagonal(const SpaceDescriptor& space, const std::vector<Complex>& diag) {
    int d = space.dim();
    if (static_cast<int>(diag.size()) != d) {
        throw std::invalid_argument("op_diagonal: expected " + std::to_string(d) +
                                    " diagonal entries, got " + std::to_string(diag.size()));
    }
    OperatorValue T{space, space, std::vector<Complex>(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0})};
    for (int i = 0; i < d; ++i) T.entries[static_cast<std::size_t>(i) * d + i] = diag[i];
    return T;
}

OperatorValue op_zero(const SpaceDescriptor& domain, const SpaceDescriptor& codomain) {
    return OperatorValue{domain, codomain,
                         std::vector<Complex>(static_cast<std::size_t>(domain.dim()) * codomain.dim(),
                                              Complex{0.0, 0.0})};
}

bool op_is_identity(const OperatorValue& T) {
    if (T.domain != T.codomain) return false;
    int d = T.domain.dim();
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            Complex want = (r == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
            if (T.entries[static_cast<std::size_t>(r) * d + c] != want) return false;
        }
    }
    return true;
}

bool op_is_diagonal(const OperatorValue& T) {
    if (T.domain.dim() != T.codomain.dim()) return false;
    int d = T.domain.dim();
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            if (r != c && T.entries[static_cast<std::size_t>(r) * d + c] != Complex{0.0, 0.0}) {
                return false;
            }
        }
    }
    return true;
}

ElementValue op_apply(const OperatorValue& T, const ElementValue& v) {
    int dx = T.domain.dim();
    int dy = T.codomain.dim();
    if (static_cast<int>(v.size()) != dx) {
        throw std::invalid_argument("op_apply: value has " + std::to_string(v.size()) +
                                    " coordinates but operator domain " + T.domain.str() +
                                    " expects " + std::to_string(dx));
    }
    ElementValue out(static_cast<std::size_t>(dy), Complex{0.0, 0.0});
    for (int r = 0; r < dy; ++r) {
        Complex acc{0.0, 0.0};
        const Complex* row = T.entries.data() + static_cast<std::size_t>(r) * dx;
        for (int c = 0; c < dx; ++c) acc += row[c] * v[c];
        out[static_cast<std::size_t>(r)] = acc;
    }
    return out;
}

namespace {

void check_same_shape(const char* fn, const OperatorValue& A, const OperatorValue& B) {
    if (A.domain != B.domain || A.codomain != B.codomain) {
        throw std::invalid_argument(std::string(fn) + ": operator shapes differ: " +
                                    A.domain.str() + "->" + A.codomain.str() + " vs " +
                                    B.domain.str() + "->" + B.codomain.str());
    }
}

} // namespace

OperatorValue op_sub(const OperatorValue& A, const OperatorValue& B) {
    check_same_shape("op_sub", A, B);
    OperatorValue out = A;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] -= B.entries[i];
    return out;
}

OperatorValue op_add(const OperatorValue& A, const OperatorValue& B) {
    check_same_shape("op_add", A, B);
    OperatorValue out = A;
    for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i] += B.entries[i];
    return out;
}

OperatorValue op_scale(Complex c, const OperatorValue& A) {
    OperatorValue out = A;
    for (auto& e : out.entries) e *= c;
    return out;
}

namespace {

bool hilbertian(const SpaceDescriptor& s) {
    switch (s.kind()) {
        case SpaceKind::Scalar: return true;
        case SpaceKind::SequenceP: return s.exponent() == Exponent::finite(2.0);
        case SpaceKind::Schatten: return s.exponent() == Exponent::finite(2.0);
    }
    return false;
}

double sigma_max(const OperatorValue& T) {
    int dx = T.domain.dim();
    int dy = T.codomain.dim();
    Eigen::Map<const RowMajorMat> m(T.entries.data(), dy, dx);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

double probe_ratio(const OperatorValue& T, const ElementValue& v) {
    double dn = norm(T.domain, v);
    if (dn == 0.0 || !std::isfinite(dn)) return 0.0;
    return norm(T.codomain, op_apply(T, v)) / dn;
}

} // namespace

OperatorNormResult operator_norm(const OperatorValue& T, NormMode mode,
                                 int budget, std::uint64_t seed) {
    int dx = T.domain.dim();
    int dy = T.codomain.dim();
    if (static_cast<std::size_t>(dx) * static_cast<std::size_t>(dy) != T.entries.size()) {
        throw std::invalid_argument("operator_norm: entry count " + std::to_string(T.entries.size()) +
                                    " does not match " + std::to_string(dy) + "x" + std::to_string(dx));
    }

    if (mode == NormMode::Exact) {
        if (op_is_identity(T)) return {1.0, true};
        if (hilbertian(T.domain) && hilbertian(T.codomain)) return {sigma_max(T), true};
        // Diagonal matrices between equal sequence descriptors: the operator
        // norm on l^p is max |d_i| for every p in [1, inf].
        bool seq_like = (T.domain.kind() == SpaceKind::SequenceP ||
                         T.domain.kind() == SpaceKind::Scalar);
        if (seq_like && T.domain == T.codomain && op_is_diagonal(T)) {
            double m = 0.0;
            for (int i = 0; i < dx; ++i) {
                Complex d = T.entries[static_cast<std::size_t>(i) * dx + i];
                double a = std::abs(d);
                if (a > m) m = a;
            }
            return {m, true};
        }
        throw std::invalid_argument("operator_norm: no exact algorithm for " + T.domain.str() +
                                    " -> " + T.codomain.str() +
                                    " with this matrix structure; use estimate mode");
    }

    // Estimate: seeded probing lower bound.
    if (budget < 1) {
        throw std::invalid_argument("operator_norm: probe budget must be >= 1, got " +
                                    std::to_string(budget));
    }
    Rng rng(seed);
    double best = 0.0;
    ElementValue best_v;

    ElementValue v(static_cast<std::size_t>(dx), Complex{0.0, 0.0});
    if (dx <= 128) {
        for (int c = 0; c < dx; ++c) {
            std::fill(v.begin(), v.end(), Complex{0.0, 0.0});
            v[static_cast<std::size_t>(c)] = Complex{1.0, 0.0};
            double r = probe_ratio(T, v);
            if (r > best) { best = r; best_v = v; }
        }
    }
    for (int trial = 0; trial < budget; ++trial) {
        for (int c = 0; c < dx; ++c) v[static_cast<std::size_t>(c)] = rng.cgaussian();
        double r = probe_ratio(T, v);
        if (r > best) { best = r; best_v = v; }
    }
    // Multiplicative coordinate ascent around the incumbent.
    if (!best_v.empty() && dx <= 128) {
        const Complex steps[] = {{2.0, 0.0}, {0.5, 0.0}, {0.0, 1.0}, {1.1, 0.0}, {1.0 / 1.1, 0.0}};
        for (int round = 0; round < 3; ++round) {
            for (int c = 0; c < dx; ++c) {
                for (Complex f : steps) {
                    ElementValue w = best_v;
                    w[static_cast<std::size_t>(c)] *= f;
                    double r = probe_ratio(T, w);
                    if (r > best) { best = r; best_v = w; }
                }
            }
        }
    }
    return {best, false};
}

} // namespace varmult
