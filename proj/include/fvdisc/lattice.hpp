#pragma once

// Frolov admissible lattices built from the integer polynomial
// P(x) = prod_{j=1}^d (x - (2j-1)) - 1, which has d distinct real roots
// (one in each (2j-2, 2j)) and is irreducible over Q for d <= 6.
// The lattice L(m) = A m with Vandermonde rows A[i][j] = root_i^j has
// |prod_j L_j(m)| >= 1 for m != 0, and every axis-parallel box of volume
// |P| holds at most |P| + 1 lattice points.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fvdisc/common.hpp"

namespace fvd {

struct FrolovPolynomial {
    int degree = 0;
    std::vector<long long> coefficients; // index k holds the coefficient of x^k
    std::vector<double> roots;           // ascending

    double eval(double x) const {
        double v = 0.0;
        for (int k = degree; k >= 0; --k) v = v * x + static_cast<double>(coefficients[k]);
        return v;
    }

    double deriv(double x) const {
        double v = 0.0;
        for (int k = degree; k >= 1; --k) v = v * x + static_cast<double>(k) * static_cast<double>(coefficients[k]);
        return v;
    }
};

namespace detail {

inline std::vector<long long> frolov_coefficients(int d) {
    // prod_{j=1}^d (x - (2j-1)), expanded exactly in 64-bit integers, minus 1.
    std::vector<long long> c{1};
    for (int j = 1; j <= d; ++j) {
        const long long root = 2 * j - 1;
        std::vector<long long> next(c.size() + 1, 0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= root * c[k];
        }
        c = std::move(next);
    }
    c[0] -= 1;
    return c;
}

inline double bisect_root(const FrolovPolynomial& p, double lo, double hi) {
    double flo = p.eval(lo);
    double fhi = p.eval(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw construction_error("frolov polynomial: no sign change in bracket");
    while (hi - lo > 1e-14) {
        const double mid = 0.5 * (lo + hi);
        const double fm = p.eval(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    // two Newton polish steps
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 2; ++it) {
        const double dp = p.deriv(x);
        if (dp != 0.0) x -= p.eval(x) / dp;
    }
    return x;
}

} // namespace detail

inline FrolovPolynomial make_frolov_polynomial(int d) {
    if (d < 1 || d > 6) throw argument_error("frolov polynomial: d must be in [1, 6]");
    FrolovPolynomial p;
    p.degree = d;
    p.coefficients = detail::frolov_coefficients(d);
    p.roots.reserve(d);
    double maxc = 0.0;
    for (long long c : p.coefficients) maxc = std::max(maxc, std::abs(static_cast<double>(c)));
    for (int j = 1; j <= d; ++j) {
        const double r = detail::bisect_root(p, 2.0 * j - 2.0, 2.0 * j);
        if (std::abs(p.eval(r)) > 1e-10 * maxc)
            throw construction_error("frolov polynomial: residual too large at root");
        p.roots.push_back(r);
    }
    for (int j = 1; j < d; ++j)
        if (p.roots[j] <= p.roots[j - 1])
            throw construction_error("frolov polynomial: roots not strictly increasing");
    return p;
}

struct AdmissibleLattice {
    int d = 0;
    double a = 1.0;
    FrolovPolynomial poly;
    Matrix A;       // A[i][j] = roots[i]^j
    Matrix A_inv;   // A^{-1}
    Matrix A_inv_T; // (A^{-1})^T
    double det_A = 0.0;
};

inline AdmissibleLattice build_frolov_lattice(int d, double a) {
    if (d < 2 || d > 6) throw argument_error("build_frolov_lattice: d must be in [2, 6]");
    if (!(a > 1.0)) throw argument_error("build_frolov_lattice: a must exceed 1");
    AdmissibleLattice lat;
    lat.d = d;
    lat.a = a;
    lat.poly = make_frolov_polynomial(d);
    lat.A.assign(d, std::vector<double>(d));
    for (int i = 0; i < d; ++i) {
        double pw = 1.0;
        for (int j = 0; j < d; ++j) {
            lat.A[i][j] = pw;
            pw *= lat.poly.roots[i];
        }
    }
    lat.A_inv = invert_matrix(lat.A);
    if (matrix_inf_norm(lat.A) * matrix_inf_norm(lat.A_inv) > 1e12)
        throw numerical_error("build_frolov_lattice: lattice matrix ill-conditioned");
    lat.A_inv_T = transpose(lat.A_inv);
    lat.det_A = 1.0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) lat.det_A *= (lat.poly.roots[j] - lat.poly.roots[i]);
    return lat;
}

// Degenerate d=1 lattice with A = [1] (integer lattice scaled by 1/a).
inline AdmissibleLattice unit_lattice_1d(double a) {
    if (!(a > 0.0)) throw argument_error("unit_lattice_1d: a must be positive");
    AdmissibleLattice lat;
    lat.d = 1;
    lat.a = a;
    lat.poly.degree = 1;
    lat.poly.coefficients = {-1, 1}; // x - 1, a stand-in; roots holds the single generator 1
    lat.poly.roots = {1.0};
    lat.A = {{1.0}};
    lat.A_inv = {{1.0}};
    lat.A_inv_T = {{1.0}};
    lat.det_A = 1.0;
    return lat;
}

struct NormFormResult {
    double min_abs = 0.0;
    std::vector<long long> argmin;
};

namespace detail {

// Odometer over integer vectors m with lo[i] <= m[i] <= hi[i].
inline void for_each_integer_vector(const std::vector<long long>& lo,
                                    const std::vector<long long>& hi,
                                    const std::function<void(const std::vector<long long>&)>& fn) {
    const std::size_t d = lo.size();
    std::vector<long long> m(lo);
    for (std::size_t i = 0; i < d; ++i)
        if (hi[i] < lo[i]) return;
    while (true) {
        fn(m);
        std::size_t i = 0;
        while (i < d) {
            if (++m[i] <= hi[i]) break;
            m[i] = lo[i];
            ++i;
        }
        if (i == d) return;
    }
}

inline std::size_t candidate_count(const std::vector<long long>& lo, const std::vector<long long>& hi) {
    long double n = 1.0L;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (hi[i] < lo[i]) return 0;
        n *= static_cast<long double>(hi[i] - lo[i] + 1);
        if (n > 1e18L) return static_cast<std::size_t>(-1);
    }
    return static_cast<std::size_t>(n);
}

// Integer range of sum_j M[i][j] * [lo_j, hi_j], padded by eps.
inline void interval_range(const Matrix& m, const Box& box, double scale,
                           std::vector<long long>& ilo, std::vector<long long>& ihi) {
    const std::size_t d = m.size();
    ilo.assign(d, 0);
    ihi.assign(d, 0);
    for (std::size_t i = 0; i < d; ++i) {
        double lo = 0.0, hi = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double c = scale * m[i][j];
            if (c >= 0) {
                lo += c * box.lo[j];
                hi += c * box.hi[j];
            } else {
                lo += c * box.hi[j];
                hi += c * box.lo[j];
            }
        }
        ilo[i] = static_cast<long long>(std::floor(lo - 1e-9));
        ihi[i] = static_cast<long long>(std::ceil(hi + 1e-9));
    }
}

} // namespace detail

inline NormFormResult norm_form_min(const AdmissibleLattice& lat, long long M,
                                    std::size_t cap = 200'000'000) {
    if (M < 1) throw argument_error("norm_form_min: M must be >= 1");
    long double vol = 1.0L;
    for (int i = 0; i < lat.d; ++i) vol *= static_cast<long double>(2 * M + 1);
    if (vol > static_cast<long double>(cap))
        throw resource_error("norm_form_min: search volume exceeds cap");
    NormFormResult res;
    res.min_abs = std::numeric_limits<double>::infinity();
    std::vector<long long> lo(lat.d, -M), hi(lat.d, M);
    detail::for_each_integer_vector(lo, hi, [&](const std::vector<long long>& m) {
        bool zero = true;
        for (long long v : m)
            if (v != 0) { zero = false; break; }
        if (zero) return;
        double prod = 1.0;
        for (int i = 0; i < lat.d; ++i) {
            double li = 0.0;
            for (int j = 0; j < lat.d; ++j) li += lat.A[i][j] * static_cast<double>(m[j]);
            prod *= li;
        }
        if (std::abs(prod) < res.min_abs) {
            res.min_abs = std::abs(prod);
            res.argmin = m;
        }
    });
    return res;
}

// Number of lattice points A m in the half-open box.
inline long long box_point_count(const AdmissibleLattice& lat, const Box& box,
                                 std::size_t cap = 200'000'000) {
    box.validate();
    if (box.dim() != lat.d) throw argument_error("box_point_count: dimension mismatch");
    std::vector<long long> ilo, ihi;
    detail::interval_range(lat.A_inv, box, 1.0, ilo, ihi); // m = A^{-1} y
    if (detail::candidate_count(ilo, ihi) > cap)
        throw resource_error("box_point_count: candidate range exceeds cap");
    long long count = 0;
    detail::for_each_integer_vector(ilo, ihi, [&](const std::vector<long long>& m) {
        for (int i = 0; i < lat.d; ++i) {
            double yi = 0.0;
            for (int j = 0; j < lat.d; ++j) yi += lat.A[i][j] * static_cast<double>(m[j]);
            if (yi < box.lo[i] || yi >= box.hi[i]) return;
        }
        ++count;
    });
    return count;
}

struct DualPoint {
    std::vector<long long> m;
    std::vector<double> x; // (A^{-1})^T m / a
};

// All dual-lattice points (A^{-1})^T m / a inside the half-open target box.
inline std::vector<DualPoint> enumerate_dual_points(const AdmissibleLattice& lat, const Box& target,
                                                    std::size_t cap = 100'000'000) {
    target.validate();
    if (target.dim() != lat.d) throw argument_error("enumerate_dual_points: dimension mismatch");
    for (int j = 0; j < lat.d; ++j)
        if (target.lo[j] < -2.0 || target.hi[j] > 3.0)
            throw argument_error("enumerate_dual_points: target must lie in [-2, 3)^d");
    // x = (A^{-1})^T m / a  =>  m = a A^T x; range by interval arithmetic.
    std::vector<long long> ilo, ihi;
    detail::interval_range(transpose(lat.A), target, lat.a, ilo, ihi);
    if (detail::candidate_count(ilo, ihi) > cap)
        throw resource_error("enumerate_dual_points: candidate range exceeds cap");
    std::vector<DualPoint> out;
    detail::for_each_integer_vector(ilo, ihi, [&](const std::vector<long long>& m) {
        std::vector<double> x(lat.d, 0.0);
        for (int i = 0; i < lat.d; ++i) {
            for (int j = 0; j < lat.d; ++j) x[i] += lat.A_inv_T[i][j] * static_cast<double>(m[j]);
            x[i] /= lat.a;
        }
        if (target.contains(x)) out.push_back({m, std::move(x)});
    });
    std::sort(out.begin(), out.end(), [](const DualPoint& p, const DualPoint& q) { return p.m < q.m; });
    return out;
}

struct DyadicBlock {
    std::vector<int> s;

    // [2^{s_j-1}] <= |k_j| < 2^{s_j} per coordinate, with [.] the integer part.
    bool contains(const std::vector<double>& k) const {
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double lo = (s[j] == 0) ? 0.0 : std::ldexp(1.0, s[j] - 1);
            const double hi = std::ldexp(1.0, s[j]);
            const double ak = std::abs(k[j]);
            if (ak < lo || ak >= hi) return false;
        }
        return true;
    }
};

// |rho(s) cap {a A m : m != 0}|. m = 0 is excluded: every consumer sums over k != 0.
inline long long count_points_in_dyadic_block(const AdmissibleLattice& lat, const DyadicBlock& blk,
                                              int norm_cap = 40, std::size_t cap = 200'000'000) {
    if (static_cast<int>(blk.s.size()) != lat.d)
        throw argument_error("count_points_in_dyadic_block: dimension mismatch");
    int n = 0;
    for (int sj : blk.s) {
        if (sj < 0) throw argument_error("count_points_in_dyadic_block: s must be nonnegative");
        n += sj;
    }
    if (n > norm_cap) throw argument_error("count_points_in_dyadic_block: ||s||_1 exceeds cap");
    Box envelope;
    envelope.lo.resize(lat.d);
    envelope.hi.resize(lat.d);
    for (int j = 0; j < lat.d; ++j) {
        envelope.lo[j] = -std::ldexp(1.0, blk.s[j]);
        envelope.hi[j] = std::ldexp(1.0, blk.s[j]);
    }
    std::vector<long long> ilo, ihi;
    detail::interval_range(lat.A_inv, envelope, 1.0 / lat.a, ilo, ihi); // m = A^{-1} (y / a)
    if (detail::candidate_count(ilo, ihi) > cap)
        throw resource_error("count_points_in_dyadic_block: candidate range exceeds cap");
    long long count = 0;
    detail::for_each_integer_vector(ilo, ihi, [&](const std::vector<long long>& m) {
        bool zero = true;
        for (long long v : m)
            if (v != 0) { zero = false; break; }
        if (zero) return;
        std::vector<double> y(lat.d, 0.0);
        for (int i = 0; i < lat.d; ++i)
            for (int j = 0; j < lat.d; ++j) y[i] += lat.a * lat.A[i][j] * static_cast<double>(m[j]);
        if (blk.contains(y)) ++count;
    });
    return count;
}

} // namespace fvd
