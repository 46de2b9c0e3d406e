#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace fvd {

// Error taxonomy shared by the library and the CLI (exit codes 2/3/4).
class argument_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class construction_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Matrix = std::vector<std::vector<double>>;

// Axis-parallel half-open box [lo, hi).
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    int dim() const { return static_cast<int>(lo.size()); }

    void validate() const {
        if (lo.size() != hi.size() || lo.empty())
            throw argument_error("box: lo/hi dimension mismatch");
        for (std::size_t j = 0; j < lo.size(); ++j) {
            if (!std::isfinite(lo[j]) || !std::isfinite(hi[j]))
                throw argument_error("box: unbounded or non-finite face");
            if (hi[j] < lo[j])
                throw argument_error("box: max < min in coordinate " + std::to_string(j));
        }
    }

    double volume() const {
        double v = 1.0;
        for (std::size_t j = 0; j < lo.size(); ++j) v *= (hi[j] - lo[j]);
        return v;
    }

    bool contains(const std::vector<double>& x) const {
        for (std::size_t j = 0; j < lo.size(); ++j)
            if (x[j] < lo[j] || x[j] >= hi[j]) return false;
        return true;
    }
};

// Neumaier compensated accumulator.
struct NeumaierSum {
    double s = 0.0;
    double c = 0.0;

    void add(double x) {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }

    double value() const { return s + c; }
};

// splitmix64; the documented deterministic generator for all seeded sampling.
// state' = state + 0x9E3779B97F4A7C15; output mixes with two xor-shift-multiply rounds.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

// FNV-1a, used for config hashes embedded in CLI outputs.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001B3ULL;
    }
    return h;
}

// Gauss-Jordan inverse with partial pivoting; throws on singular input.
inline Matrix invert_matrix(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix a = m;
    Matrix inv(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) throw numerical_error("invert_matrix: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const double p = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline double matrix_inf_norm(const Matrix& m) {
    double best = 0.0;
    for (const auto& row : m) {
        double s = 0.0;
        for (double v : row) s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

inline Matrix transpose(const Matrix& m) {
    const std::size_t n = m.size(), k = m.empty() ? 0 : m[0].size();
    Matrix t(k, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) t[j][i] = m[i][j];
    return t;
}

inline std::vector<double> mat_vec(const Matrix& m, const std::vector<double>& x) {
    std::vector<double> y(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
    return y;
}

} // namespace fvd
