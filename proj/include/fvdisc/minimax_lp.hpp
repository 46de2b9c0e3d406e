#pragma once

// Minimax weight optimization: min over lambda of max_i |c_i - sum_mu lambda_mu H_{i mu}|,
// optionally with a mass constraint sum|lambda| <= B, solved as a linear program
// (lambda = p - q split, Chebyshev variable t) by a dense two-phase simplex.
// Pivoting is Dantzig pricing with a switch to Bland's rule after a run of
// degenerate pivots, which prevents cycling.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fvdisc/common.hpp"

namespace fvd {

namespace detail {

// min c^T x  s.t.  A x <= b, x >= 0. Returns the optimal x; throws
// numerical_error on iteration-cap nonconvergence (message carries best value)
// and argument_error on infeasibility.
class DenseSimplex {
public:
    DenseSimplex(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                 const std::vector<double>& c)
        : rows_(a.size()), structural_(c.size()) {
        n_art_ = 0;
        for (double bi : b)
            if (bi < 0.0) ++n_art_;
        cols_ = structural_ + rows_ + n_art_; // structural + slack + artificial
        tab_.assign(rows_, std::vector<double>(cols_ + 1, 0.0));
        basis_.assign(rows_, 0);
        cost_ = c;

        std::size_t art = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            const double sign = (b[i] < 0.0) ? -1.0 : 1.0;
            for (std::size_t j = 0; j < structural_; ++j) tab_[i][j] = sign * a[i][j];
            tab_[i][structural_ + i] = sign; // slack
            tab_[i][cols_] = sign * b[i];
            if (b[i] < 0.0) {
                const std::size_t aj = structural_ + rows_ + art++;
                tab_[i][aj] = 1.0;
                basis_[i] = aj;
            } else {
                basis_[i] = structural_ + i;
            }
        }
    }

    // returns objective value of min c^T x
    double solve(std::size_t max_iters) {
        if (n_art_ > 0) {
            std::vector<double> phase1(cols_, 0.0);
            for (std::size_t j = structural_ + rows_; j < cols_; ++j) phase1[j] = 1.0;
            const double art_sum = run(phase1, max_iters);
            if (art_sum > 1e-7) throw argument_error("simplex: infeasible constraint system");
            drive_out_artificials();
        }
        std::vector<double> full(cols_, 0.0);
        std::copy(cost_.begin(), cost_.end(), full.begin());
        first_phase_cols_ = structural_ + rows_; // artificials stay priced out
        return run(full, max_iters);
    }

    std::vector<double> solution() const {
        std::vector<double> x(structural_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < structural_) x[basis_[i]] = tab_[i][cols_];
        return x;
    }

    std::size_t iterations() const { return iters_; }

private:
    std::size_t usable_cols() const { return first_phase_cols_ ? first_phase_cols_ : cols_; }

    double objective(const std::vector<double>& obj) const {
        double v = 0.0;
        for (std::size_t i = 0; i < rows_; ++i)
            if (basis_[i] < obj.size()) v += obj[basis_[i]] * tab_[i][cols_];
        return v;
    }

    double run(const std::vector<double>& obj, std::size_t max_iters) {
        int degenerate_run = 0;
        while (true) {
            std::vector<double> reduced(usable_cols());
            for (std::size_t j = 0; j < usable_cols(); ++j) {
                double cj = (j < obj.size()) ? obj[j] : 0.0;
                for (std::size_t i = 0; i < rows_; ++i)
                    if (basis_[i] < obj.size()) cj -= obj[basis_[i]] * tab_[i][j];
                reduced[j] = cj;
            }
            const bool bland = degenerate_run > 16;
            std::size_t enter = usable_cols();
            double best = -1e-9;
            for (std::size_t j = 0; j < usable_cols(); ++j) {
                if (reduced[j] < best) {
                    enter = j;
                    if (bland) break; // Bland: first improving index
                    best = reduced[j];
                }
            }
            if (enter == usable_cols()) return objective(obj);
            // ratio test, smallest-index tie-break
            std::size_t leave = rows_;
            double best_ratio = 0.0;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (tab_[i][enter] <= 1e-11) continue;
                const double ratio = tab_[i][cols_] / tab_[i][enter];
                if (leave == rows_ || ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows_) throw numerical_error("simplex: unbounded objective");
            degenerate_run = (best_ratio < 1e-11) ? degenerate_run + 1 : 0;
            pivot(leave, enter);
            if (++iters_ > max_iters)
                throw numerical_error("simplex: iteration cap reached, best objective so far " +
                                      std::to_string(objective(obj)));
        }
    }

    void pivot(std::size_t leave, std::size_t enter) {
        const double p = tab_[leave][enter];
        for (double& v : tab_[leave]) v /= p;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == leave) continue;
            const double f = tab_[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) tab_[i][j] -= f * tab_[leave][j];
        }
        basis_[leave] = enter;
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < structural_ + rows_) continue;
            for (std::size_t j = 0; j < structural_ + rows_; ++j) {
                if (std::abs(tab_[i][j]) > 1e-9) {
                    pivot(i, j);
                    break;
                }
            }
        }
    }

    std::size_t rows_, structural_, cols_, n_art_;
    std::size_t first_phase_cols_ = 0;
    std::size_t iters_ = 0;
    std::vector<std::vector<double>> tab_;
    std::vector<std::size_t> basis_;
    std::vector<double> cost_;
};

} // namespace detail

struct MinimaxResult {
    std::vector<double> weights;
    double value = 0.0;
    std::size_t iterations = 0;
};

// H: samples x m matrix of test-function values at the nodes; targets: exact
// integrals c_i. has_mass_bound enables the sum|lambda| <= B constraint.
inline MinimaxResult optimize_weights_minimax(const std::vector<std::vector<double>>& H,
                                              const std::vector<double>& targets,
                                              bool has_mass_bound = false, double mass_bound = 0.0,
                                              std::size_t max_iters = 0) {
    const std::size_t samples = H.size();
    if (samples == 0 || targets.size() != samples)
        throw argument_error("optimize_weights_minimax: constraint sample must be nonempty");
    const std::size_t m = H[0].size();
    if (m == 0) throw argument_error("optimize_weights_minimax: empty position list");
    if (m > 500 || samples > 20000)
        throw resource_error("optimize_weights_minimax: instance exceeds LP scale guard");
    if (has_mass_bound && mass_bound < 0.0)
        throw argument_error("optimize_weights_minimax: B must be nonnegative");

    // variables x = (p_1..p_m, q_1..q_m, t); lambda = p - q
    const std::size_t nvars = 2 * m + 1;
    const std::size_t nrows = 2 * samples + (has_mass_bound ? 1 : 0);
    std::vector<std::vector<double>> a(nrows, std::vector<double>(nvars, 0.0));
    std::vector<double> b(nrows, 0.0);
    for (std::size_t i = 0; i < samples; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            a[2 * i][j] = H[i][j];      //  H lambda - t <= c_i
            a[2 * i][m + j] = -H[i][j];
            a[2 * i + 1][j] = -H[i][j]; // -H lambda - t <= -c_i
            a[2 * i + 1][m + j] = H[i][j];
        }
        a[2 * i][2 * m] = -1.0;
        a[2 * i + 1][2 * m] = -1.0;
        b[2 * i] = targets[i];
        b[2 * i + 1] = -targets[i];
    }
    if (has_mass_bound) {
        for (std::size_t j = 0; j < 2 * m; ++j) a[nrows - 1][j] = 1.0;
        b[nrows - 1] = mass_bound;
    }
    std::vector<double> cost(nvars, 0.0);
    cost[2 * m] = 1.0;

    if (max_iters == 0) max_iters = 200 * (nrows + nvars);
    detail::DenseSimplex lp(a, b, cost);
    MinimaxResult res;
    res.value = lp.solve(max_iters);
    const std::vector<double> x = lp.solution();
    res.weights.resize(m);
    for (std::size_t j = 0; j < m; ++j) res.weights[j] = x[j] - x[m + j];
    res.iterations = lp.iterations();
    return res;
}

} // namespace fvd
