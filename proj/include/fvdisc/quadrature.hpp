#pragma once

// Cubature application, spatial and Fourier-side quadrature errors for the
// periodized hat kernels, exponential sums Lambda(k), the lower-bound
// functional sum_{k!=0} |Lambda(k)|^2 nu(k)^{-r}, and the dyadic diagnostic
// sigma^r(n, u).

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fvdisc/common.hpp"
#include "fvdisc/kernels.hpp"
#include "fvdisc/pointset.hpp"

namespace fvd {

inline double apply_cubature(const WeightedPointSet& ps,
                             const std::function<double(const std::vector<double>&)>& f) {
    NeumaierSum s;
    for (std::size_t mu = 0; mu < ps.size(); ++mu) {
        const double v = f(ps.points[mu]);
        if (!std::isfinite(v))
            throw numerical_error("apply_cubature: non-finite value at node " + std::to_string(mu));
        s.add(ps.weights[mu] * v);
    }
    return s.value();
}

// sum_mu lambda_mu h~^r(xi^mu, z, u) - pr(u)^r, the signed error against the
// exact integral of the periodized kernel.
inline double quadrature_error_spatial(const WeightedPointSet& ps, const HatSpec& spec) {
    spec.validate();
    if (spec.dim() != ps.d) throw argument_error("quadrature_error_spatial: dimension mismatch");
    const double integral = std::pow(spec.pr_u(), spec.r);
    return apply_cubature(ps, [&](const std::vector<double>& x) { return periodized_hat_eval(spec, x); })
           - integral;
}

struct ExponentialSumTable {
    int d = 0;
    int K = 0;
    std::vector<std::complex<double>> values; // row-major over (k_1 + K, ..., k_d + K)
    std::size_t m = 0;
    double weight_mass = 0.0;

    std::size_t side() const { return static_cast<std::size_t>(2 * K + 1); }

    std::size_t index(const std::vector<int>& k) const {
        std::size_t idx = 0;
        for (int j = 0; j < d; ++j) idx = idx * side() + static_cast<std::size_t>(k[j] + K);
        return idx;
    }

    std::complex<double> at(const std::vector<int>& k) const { return values[index(k)]; }
};

namespace detail {

inline bool next_freq(std::vector<int>& k, int K) {
    for (int j = static_cast<int>(k.size()) - 1; j >= 0; --j) {
        if (++k[j] <= K) return true;
        k[j] = -K;
    }
    return false;
}

} // namespace detail

// Lambda(k) = sum_mu lambda_mu e^{2 pi i (k, xi^mu)} for all ||k||_inf <= K.
// Phases are evaluated directly per (k, mu) pair; no phase recurrences.
inline ExponentialSumTable exponential_sums(const WeightedPointSet& ps, int K,
                                            std::size_t cap = 400'000'000) {
    if (K < 1) throw argument_error("exponential_sums: K must be >= 1");
    ExponentialSumTable tab;
    tab.d = ps.d;
    tab.K = K;
    tab.m = ps.size();
    tab.weight_mass = ps.weight_mass();
    long double cells = 1.0L;
    for (int j = 0; j < ps.d; ++j) cells *= static_cast<long double>(2 * K + 1);
    if (cells * static_cast<long double>(ps.size()) > static_cast<long double>(cap))
        throw resource_error("exponential_sums: (2K+1)^d * m exceeds cap");
    tab.values.assign(static_cast<std::size_t>(cells), {0.0, 0.0});

    const double two_pi = 2.0 * 3.14159265358979323846;
    std::vector<int> k(ps.d, -K);
    std::size_t idx = 0;
    do {
        NeumaierSum re, im;
        for (std::size_t mu = 0; mu < ps.size(); ++mu) {
            double phase = 0.0;
            for (int j = 0; j < ps.d; ++j) phase += k[j] * ps.points[mu][j];
            phase *= two_pi;
            re.add(ps.weights[mu] * std::cos(phase));
            im.add(ps.weights[mu] * std::sin(phase));
        }
        tab.values[idx++] = {re.value(), im.value()};
    } while (detail::next_freq(k, K));
    return tab;
}

inline std::vector<double> lambda_star(const ExponentialSumTable& tab) {
    std::vector<double> out(tab.values.size());
    for (std::size_t i = 0; i < tab.values.size(); ++i) out[i] = std::norm(tab.values[i]);
    return out;
}

struct FourierError {
    double value = 0.0;
    double tail_bound = 0.0;
    double imag_residual = 0.0;
};

namespace detail {

// sum_{|k| <= K} min(u^r, |k|^{-r}) including k = 0, plus a certified bound
// for the |k| > K tail (integral comparison).
inline void coordinate_tail_sums(int r, double u, int K, double& inside, double& tail) {
    inside = std::pow(u, r);
    for (int k = 1; k <= K; ++k)
        inside += 2.0 * std::min(std::pow(u, r), std::pow(static_cast<double>(k), -r));
    tail = 2.0 * std::pow(static_cast<double>(K), 1.0 - r) / (r - 1.0);
}

} // namespace detail

// Fourier-series form of the quadrature error for the periodized hat:
//   error = sum_{k != 0} Lambda(k) hhat(k) + (Lambda(0) - 1) pr(u)^r,
//   hhat(k) = prod_j e^{-2 pi i k_j z_j} hat_fourier(r, k_j, u_j),
// truncated at ||k||_inf <= K together with a certified tail bound
//   sum|lambda| * sum_{||k||_inf > K} prod_j min(u_j^r, |k_j|^{-r}).
inline FourierError quadrature_error_fourier(const WeightedPointSet& ps, const HatSpec& spec,
                                             const ExponentialSumTable& tab) {
    spec.validate();
    if (spec.r < 2)
        throw argument_error("quadrature_error_fourier: requires r >= 2 (series not absolutely convergent)");
    if (spec.dim() != ps.d || tab.d != ps.d)
        throw argument_error("quadrature_error_fourier: dimension mismatch");

    const double two_pi = 2.0 * 3.14159265358979323846;
    const int K = tab.K;
    std::vector<int> k(ps.d, -K);
    std::size_t idx = 0;
    NeumaierSum re, im;
    do {
        bool zero = true;
        for (int kj : k)
            if (kj != 0) { zero = false; break; }
        if (!zero) {
            double mag = 1.0, zphase = 0.0;
            for (int j = 0; j < ps.d; ++j) {
                mag *= hat_fourier(spec.r, static_cast<double>(k[j]), spec.u[j]);
                zphase -= two_pi * k[j] * spec.z[j];
            }
            if (mag != 0.0) {
                const std::complex<double> term = tab.values[idx] * std::polar(1.0, zphase) * mag;
                re.add(term.real());
                im.add(term.imag());
            }
        }
        ++idx;
    } while (detail::next_freq(k, K));

    const double pr_r = std::pow(spec.pr_u(), spec.r);
    std::vector<int> zero_k(ps.d, 0);
    const double lambda0 = tab.at(zero_k).real();

    FourierError out;
    out.value = re.value() + (lambda0 - 1.0) * pr_r;
    out.imag_residual = std::abs(im.value());

    double inside = 1.0, total_up = 1.0;
    for (int j = 0; j < ps.d; ++j) {
        double in_j, tail_j;
        detail::coordinate_tail_sums(spec.r, spec.u[j], K, in_j, tail_j);
        inside *= in_j;
        total_up *= (in_j + tail_j);
    }
    out.tail_bound = tab.weight_mass * (total_up - inside);
    return out;
}

inline FourierError quadrature_error_fourier(const WeightedPointSet& ps, const HatSpec& spec, int K,
                                             std::size_t cap = 400'000'000) {
    return quadrature_error_fourier(ps, spec, exponential_sums(ps, K, cap));
}

struct LowerBoundValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

// Lower-bound functional sum_{0 < ||k||_inf <= K} |Lambda(k)|^2 nu(kbar)^{-r},
// nu(kbar) = prod_j max(|k_j|, 1), with a certified tail bound (sum|lambda|)^2 *
// tail of the nu^{-r} cube sum.
inline LowerBoundValue lower_bound_functional(const ExponentialSumTable& tab, double r) {
    if (!(r > 1.0)) throw argument_error("lower_bound_functional: r must exceed 1");
    const int K = tab.K;
    std::vector<int> k(tab.d, -K);
    std::size_t idx = 0;
    NeumaierSum s;
    do {
        bool zero = true;
        for (int kj : k)
            if (kj != 0) { zero = false; break; }
        if (!zero) {
            double nu = 1.0;
            for (int kj : k) nu *= std::max(std::abs(static_cast<double>(kj)), 1.0);
            s.add(std::norm(tab.values[idx]) * std::pow(nu, -r));
        }
        ++idx;
    } while (detail::next_freq(k, K));

    double inside = 1.0, total_up = 1.0;
    for (int j = 0; j < tab.d; ++j) {
        double in_j = 1.0;
        for (int kk = 1; kk <= K; ++kk) in_j += 2.0 * std::pow(static_cast<double>(kk), -r);
        const double tail_j = 2.0 * std::pow(static_cast<double>(K), 1.0 - r) / (r - 1.0);
        inside *= in_j;
        total_up *= (in_j + tail_j);
    }
    LowerBoundValue out;
    out.value = s.value();
    out.tail_bound = tab.weight_mass * tab.weight_mass * (total_up - inside);
    return out;
}

// sigma^r(n, u) = sum_{||s||_1 = n} prod_j min((2^{s_j} u_j)^{r/2}, (2^{s_j} u_j)^{-r/2}),
// computed in the log domain over the compositions of n into d parts.
inline double sigma_r(int n, const std::vector<double>& u, int r) {
    if (n < 0 || n > 60) throw argument_error("sigma_r: n must lie in [0, 60]");
    if (r < 1) throw argument_error("sigma_r: r must be >= 1");
    const int d = static_cast<int>(u.size());
    if (d < 1) throw argument_error("sigma_r: empty width vector");
    const double log2 = std::log(2.0);
    NeumaierSum total;
    std::vector<int> s(d, 0);
    std::function<void(int, int)> rec = [&](int j, int remaining) {
        if (j == d - 1) {
            s[j] = remaining;
            double log_term = 0.0;
            for (int i = 0; i < d; ++i)
                log_term -= std::abs(s[i] * log2 + std::log(u[i])) * (0.5 * r);
            total.add(std::exp(log_term));
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            s[j] = v;
            rec(j + 1, remaining - v);
        }
    };
    rec(0, n);
    return total.value();
}

} // namespace fvd
