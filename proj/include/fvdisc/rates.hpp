#pragma once

// Ordinary least squares on log-log pairs, used for empirical decay-rate checks.

#include <cmath>
#include <vector>

#include "fvdisc/common.hpp"

namespace fvd {

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    std::size_t n = 0;
};

inline RateFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3)
        throw argument_error("fit_log_log: need at least 3 pairs");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw argument_error("fit_log_log: pairs must be positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (std::abs(denom) <= 1e-12 * (n * sxx + sx * sx + 1.0))
        throw argument_error("fit_log_log: degenerate abscissae");
    RateFit fit;
    fit.n = n;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    if (!std::isfinite(fit.slope)) throw numerical_error("fit_log_log: non-finite slope");
    return fit;
}

} // namespace fvd
