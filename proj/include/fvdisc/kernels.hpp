#pragma once

// r-smooth hat kernels h^r (r-fold convolutions of the interval indicator
// chi_{[-u/2,u/2)}), their tensor products and periodizations, the closed-form
// Fourier transform, and the smooth window w forming a partition of unity.

#include <cmath>
#include <vector>

#include "fvdisc/common.hpp"

namespace fvd {

struct HatSpec {
    int r = 2;
    std::vector<double> z; // shift in [0,1)^d
    std::vector<double> u; // widths, each in (0, 1/2]

    int dim() const { return static_cast<int>(u.size()); }

    void validate() const {
        if (r < 1) throw argument_error("HatSpec: r must be >= 1");
        if (z.size() != u.size() || u.empty()) throw argument_error("HatSpec: z/u dimension mismatch");
        for (double uj : u)
            if (!(uj > 0.0) || uj > 0.5) throw argument_error("HatSpec: widths must lie in (0, 1/2]");
    }

    double pr_u() const {
        double p = 1.0;
        for (double uj : u) p *= uj;
        return p;
    }
};

namespace detail {

inline double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

} // namespace detail

// h^r(x, u): for r = 1 the indicator of [-u/2, u/2) (left-closed); for r >= 2
// the truncated-power expansion of the r-fold indicator convolution,
//   h^r(x,u) = (1/(r-1)!) sum_{k=0}^{r} (-1)^k C(r,k) (x + ru/2 - ku)_+^{r-1}.
inline double hat_eval(int r, double x, double u) {
    if (r < 1) throw argument_error("hat_eval: r must be >= 1");
    if (!(u > 0.0) || u > 0.5) throw argument_error("hat_eval: u must lie in (0, 1/2]");
    if (r == 1) return (x >= -u / 2 && x < u / 2) ? 1.0 : 0.0;
    const double half = 0.5 * r * u;
    if (x <= -half || x >= half) return 0.0;
    double s = 0.0;
    for (int k = 0; k <= r; ++k) {
        const double t = x + half - k * u;
        if (t <= 0.0) break; // arguments decrease with k
        const double term = detail::binomial(r, k) * std::pow(t, r - 1);
        s += (k % 2 == 0) ? term : -term;
    }
    return s / detail::factorial(r - 1);
}

// integral of h^r(., u) over R; each convolution factor contributes u
inline double hat_integral(int r, double u) {
    if (r < 1) throw argument_error("hat_integral: r must be >= 1");
    if (!(u > 0.0) || u > 0.5) throw argument_error("hat_integral: u must lie in (0, 1/2]");
    return std::pow(u, r);
}

// Fourier transform of h^r(., u): (sin(pi u y) / (pi y))^r, which is u^r at y = 0.
inline double hat_fourier(int r, double y, double u) {
    if (r < 1) throw argument_error("hat_fourier: r must be >= 1");
    if (!(u > 0.0) || u > 0.5) throw argument_error("hat_fourier: u must lie in (0, 1/2]");
    if (y == 0.0) return std::pow(u, r);
    const double pi = 3.14159265358979323846;
    return std::pow(std::sin(pi * u * y) / (pi * y), r);
}

inline double tensor_hat_eval(const HatSpec& spec, const std::vector<double>& x) {
    spec.validate();
    if (x.size() != spec.u.size()) throw argument_error("tensor_hat_eval: dimension mismatch");
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        p *= hat_eval(spec.r, x[j] - spec.z[j], spec.u[j]);
        if (p == 0.0) return 0.0;
    }
    return p;
}

namespace detail {

// 1-periodic univariate periodization; shift range fixed to +-(ceil(r/4)+1),
// which covers supp(h^r) subset (-r/4, r/4) for u <= 1/2.
inline double periodized_hat_1d(int r, double x, double z, double u) {
    const int range = (r + 3) / 4 + 1;
    double s = 0.0;
    for (int n = -range; n <= range; ++n) s += hat_eval(r, x - z + n, u);
    return s;
}

} // namespace detail

inline double periodized_hat_eval(const HatSpec& spec, const std::vector<double>& x) {
    spec.validate();
    if (x.size() != spec.u.size()) throw argument_error("periodized_hat_eval: dimension mismatch");
    double p = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        p *= detail::periodized_hat_1d(spec.r, x[j], spec.z[j], spec.u[j]);
        if (p == 0.0) return 0.0;
    }
    return p;
}

// Smooth window with supp(w) in (-1/2, 3/2) whose integer translates sum to 1.
// Built from the classical smooth step g(t) = sigma(t) / (sigma(t) + sigma(1-t)),
// sigma(t) = exp(-1/t) for t > 0 and 0 otherwise.
inline double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

inline double window_eval(double t) {
    if (t <= -0.5 || t >= 1.5) return 0.0;
    if (t <= 0.5) return smooth_step(t + 0.5);
    return smooth_step(1.5 - t);
}

inline double window_weight(const std::vector<double>& eta) {
    double p = 1.0;
    for (double t : eta) p *= window_eval(t);
    return p;
}

} // namespace fvd
