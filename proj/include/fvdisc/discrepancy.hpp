#pragma once

// Sup-type discrepancy estimators. The sup over (z, u) is discretized on a
// deterministic grid plus seeded width samples on the constraint surface
// pr(u) = v, then polished by coordinate pattern search; the reported value is
// a certified lower bound on the true sup (a max over evaluated candidates).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "fvdisc/common.hpp"
#include "fvdisc/kernels.hpp"
#include "fvdisc/minimax_lp.hpp"
#include "fvdisc/pointset.hpp"

namespace fvd {

struct SearchSpec {
    int z_grid = 16;
    int u_samples = 16;
    int refine_iters = 24;
    std::uint64_t seed = 1;
};

struct DiscrepancyReport {
    double value = 0.0;
    std::vector<double> argmax_z;
    std::vector<double> argmax_u;
    std::string mode;
    std::string weight_mode = "native";
    int r = 0;
    double v = 0.0; // constraint value (V in the non-periodic mode)
    SearchSpec search;

    nlohmann::json to_json() const {
        return {{"value", value},
                {"argmax_z", argmax_z},
                {"argmax_u", argmax_u},
                {"mode", mode},
                {"weight_mode", weight_mode},
                {"r", r},
                {"v", v},
                {"search",
                 {{"z_grid", search.z_grid},
                  {"u_samples", search.u_samples},
                  {"refine_iters", search.refine_iters},
                  {"seed", search.seed}}}};
    }
};

namespace detail {

// exponent weights w (sum = 1, w_j >= beta_min) mapped to widths u_j = v^{w_j}
inline std::vector<double> widths_from_exponents(const std::vector<double>& w, double v) {
    std::vector<double> u(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) u[j] = std::exp(w[j] * std::log(v));
    return u;
}

// seeded samples on the simplex {w >= beta_min, sum w = 1} via sorted uniform
// spacings; the symmetric point is always candidate 0.
inline std::vector<std::vector<double>> sample_exponent_weights(int d, double beta_min, int count,
                                                                std::uint64_t seed) {
    std::vector<std::vector<double>> out;
    out.push_back(std::vector<double>(d, 1.0 / d));
    if (d == 1) return out;
    SplitMix64 rng(seed);
    const double slack = 1.0 - d * beta_min;
    for (int i = 1; i < count; ++i) {
        std::vector<double> cuts(d - 1);
        for (double& c : cuts) c = rng.next_double();
        std::sort(cuts.begin(), cuts.end());
        std::vector<double> w(d);
        double prev = 0.0;
        for (int j = 0; j < d; ++j) {
            const double next = (j == d - 1) ? 1.0 : cuts[j];
            w[j] = beta_min + slack * (next - prev);
            prev = next;
        }
        out.push_back(std::move(w));
    }
    return out;
}

inline bool lex_less(const std::vector<double>& a, const std::vector<double>& b,
                     const std::vector<double>& c, const std::vector<double>& d) {
    if (a != b) return a < b;
    return c < d;
}

struct SupState {
    double value = -1.0;
    std::vector<double> z;
    std::vector<double> w; // exponent weights

    void offer(double val, const std::vector<double>& zc, const std::vector<double>& wc) {
        if (val > value || (val == value && lex_less(zc, z, wc, w))) {
            value = val;
            z = zc;
            w = wc;
        }
    }
};

// greedy coordinate pattern search; z moves wrap mod 1 when periodic, else clamp
// to [0,1]; w moves transfer mass between coordinate pairs on the simplex.
template <class Eval>
inline void pattern_search(SupState& best, double beta_min, bool periodic_z, int iters,
                           double init_step, Eval&& eval) {
    const int d = static_cast<int>(best.z.size());
    double step = init_step;
    for (int it = 0; it < iters; ++it) {
        bool improved = false;
        for (int j = 0; j < d; ++j) {
            for (double dir : {-1.0, 1.0}) {
                std::vector<double> z = best.z;
                z[j] += dir * step;
                if (periodic_z)
                    z[j] -= std::floor(z[j]);
                else
                    z[j] = std::clamp(z[j], 0.0, 1.0);
                const double val = eval(z, best.w);
                if (val > best.value) {
                    best.value = val;
                    best.z = z;
                    improved = true;
                }
            }
        }
        for (int i = 0; i < d && d > 1; ++i) {
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                std::vector<double> w = best.w;
                const double delta = std::min(step, w[i] - beta_min);
                if (delta <= 0.0) continue;
                w[i] -= delta;
                w[j] += delta;
                const double val = eval(best.z, w);
                if (val > best.value) {
                    best.value = val;
                    best.w = w;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
}

template <class Eval>
inline SupState grid_search(int d, double v, double umax, const SearchSpec& search, bool periodic_z,
                            Eval&& eval) {
    if (search.z_grid < 2 || search.u_samples < 1)
        throw argument_error("SearchSpec: z_grid >= 2 and u_samples >= 1 required");
    const double beta_min = std::log(umax) / std::log(v); // w_j >= beta_min keeps u_j <= umax
    if (beta_min * d > 1.0 + 1e-12)
        throw argument_error("constraint volume incompatible with the width cap");
    const auto wsamples = sample_exponent_weights(d, beta_min, search.u_samples, search.seed);

    SupState best;
    std::vector<int> idx(d, 0);
    std::vector<double> z(d);
    while (true) {
        for (int j = 0; j < d; ++j) z[j] = static_cast<double>(idx[j]) / search.z_grid;
        for (const auto& w : wsamples) best.offer(eval(z, w), z, w);
        int j = d - 1;
        while (j >= 0 && ++idx[j] == search.z_grid) idx[j--] = 0;
        if (j < 0) break;
    }
    pattern_search(best, beta_min, periodic_z, search.refine_iters, 0.5 / search.z_grid, eval);
    return best;
}

} // namespace detail

// max over sampled (z, u) with pr(u) = v of |pr(u)^r - sum lambda h~^r(xi, z, u)|
inline DiscrepancyReport periodic_fixed_volume_discrepancy(const WeightedPointSet& ps, int r, double v,
                                                           const SearchSpec& search) {
    if (r < 1) throw argument_error("periodic_fixed_volume_discrepancy: r must be >= 1");
    if (!(v > 0.0) || v > std::pow(0.5, ps.d))
        throw argument_error("periodic_fixed_volume_discrepancy: v must lie in (0, 2^-d]");
    auto eval = [&](const std::vector<double>& z, const std::vector<double>& w) {
        HatSpec spec{r, z, detail::widths_from_exponents(w, v)};
        NeumaierSum s;
        for (std::size_t mu = 0; mu < ps.size(); ++mu)
            s.add(ps.weights[mu] * periodized_hat_eval(spec, ps.points[mu]));
        return std::abs(std::pow(v, r) - s.value());
    };
    const auto best = detail::grid_search(ps.d, v, 0.5, search, true, eval);
    DiscrepancyReport rep;
    rep.value = best.value;
    rep.argmax_z = best.z;
    rep.argmax_u = detail::widths_from_exponents(best.w, v);
    rep.mode = "periodic_fixed_volume";
    rep.r = r;
    rep.v = v;
    rep.search = search;
    return rep;
}

// Non-periodic mode: boxes B = prod [x0_j - r u_j/2, x0_j + r u_j/2) of volume
// V = r^d pr(u) kept inside [0,1]^d; the grid variable z_j in [0,1] selects the
// feasible center x0_j = r u_j/2 + z_j (1 - r u_j).
inline DiscrepancyReport fixed_volume_discrepancy(const WeightedPointSet& ps, int r, double V,
                                                  const SearchSpec& search) {
    if (r < 1) throw argument_error("fixed_volume_discrepancy: r must be >= 1");
    const double umax = std::min(0.5, 1.0 / r);
    const double v_eff = V / std::pow(static_cast<double>(r), ps.d);
    if (!(v_eff > 0.0) || v_eff > std::pow(umax, ps.d))
        throw argument_error("fixed_volume_discrepancy: V incompatible with the width cap");
    auto eval = [&](const std::vector<double>& z, const std::vector<double>& w) {
        const std::vector<double> u = detail::widths_from_exponents(w, v_eff);
        std::vector<double> x0(ps.d);
        for (int j = 0; j < ps.d; ++j) x0[j] = 0.5 * r * u[j] + z[j] * (1.0 - r * u[j]);
        NeumaierSum s;
        for (std::size_t mu = 0; mu < ps.size(); ++mu) {
            double p = ps.weights[mu];
            for (int j = 0; j < ps.d && p != 0.0; ++j)
                p *= hat_eval(r, ps.points[mu][j] - x0[j], u[j]);
            s.add(p);
        }
        return std::abs(std::pow(v_eff, r) - s.value());
    };
    const auto best = detail::grid_search(ps.d, v_eff, umax, search, false, eval);
    DiscrepancyReport rep;
    rep.value = best.value;
    rep.argmax_u = detail::widths_from_exponents(best.w, v_eff);
    rep.argmax_z.resize(ps.d);
    for (int j = 0; j < ps.d; ++j)
        rep.argmax_z[j] = 0.5 * r * rep.argmax_u[j] + best.z[j] * (1.0 - r * rep.argmax_u[j]);
    rep.mode = "fixed_volume";
    rep.r = r;
    rep.v = V;
    rep.search = search;
    return rep;
}

inline DiscrepancyReport global_smooth_discrepancy(const WeightedPointSet& ps, int r,
                                                   const SearchSpec& search,
                                                   const std::vector<double>& v_grid) {
    if (v_grid.empty()) throw argument_error("global_smooth_discrepancy: v_grid must be nonempty");
    DiscrepancyReport best;
    best.value = -1.0;
    for (double v : v_grid) {
        DiscrepancyReport rep = periodic_fixed_volume_discrepancy(ps, r, v, search);
        if (rep.value > best.value) best = rep;
    }
    best.mode = "global";
    return best;
}

// Exact classical star discrepancy over the coordinate-induced candidate grid
// (unweighted counting; the supremum over the closure of [0,1)^d).
inline double star_discrepancy_exact(const WeightedPointSet& ps, double eval_cap = 2e8) {
    const std::size_t m = ps.size();
    const int d = ps.d;
    std::vector<std::vector<double>> cand(d);
    for (int j = 0; j < d; ++j) {
        for (const auto& p : ps.points) cand[j].push_back(p[j]);
        cand[j].push_back(1.0);
        std::sort(cand[j].begin(), cand[j].end());
        cand[j].erase(std::unique(cand[j].begin(), cand[j].end()), cand[j].end());
    }
    double cells = 1.0;
    for (int j = 0; j < d; ++j) cells *= static_cast<double>(cand[j].size());
    if (cells * static_cast<double>(m) * d > eval_cap)
        throw resource_error("star_discrepancy_exact: grid too large; use a sampled estimate");

    double best = 0.0;
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> b(d);
    while (true) {
        double vol = 1.0;
        for (int j = 0; j < d; ++j) {
            b[j] = cand[j][idx[j]];
            vol *= b[j];
        }
        std::size_t strict = 0, closed = 0;
        for (const auto& p : ps.points) {
            bool s_in = true, c_in = true;
            for (int j = 0; j < d; ++j) {
                if (p[j] >= b[j]) s_in = false;
                if (p[j] > b[j]) { c_in = false; break; }
            }
            strict += s_in;
            closed += c_in;
        }
        best = std::max(best, vol - static_cast<double>(strict) / m);
        best = std::max(best, static_cast<double>(closed) / m - vol);
        int j = d - 1;
        while (j >= 0 && ++idx[j] == cand[j].size()) idx[j--] = 0;
        if (j < 0) break;
    }
    return best;
}

// B_r(t, x) = prod ((r-1)!)^{-1} (t_j - x_j)_+^{r-1}; at r = 1 the 0^0
// convention is the indicator of t_j > x_j (half-open boxes).
inline double b_r_eval(int r, const std::vector<double>& t, const std::vector<double>& x) {
    double fact = 1.0;
    for (int k = 2; k < r; ++k) fact *= k;
    double p = 1.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        const double diff = t[j] - x[j];
        if (r == 1) {
            if (!(diff > 0.0)) return 0.0;
        } else {
            if (diff <= 0.0) return 0.0;
            p *= std::pow(diff, r - 1) / fact;
        }
    }
    return p;
}

inline DiscrepancyReport b_r_discrepancy(const WeightedPointSet& ps, int r, const SearchSpec& search) {
    if (r < 1) throw argument_error("b_r_discrepancy: r must be >= 1");
    double fact = 1.0;
    for (int k = 2; k <= r; ++k) fact *= k;
    auto objective = [&](const std::vector<double>& t) {
        NeumaierSum s;
        for (std::size_t mu = 0; mu < ps.size(); ++mu)
            s.add(ps.weights[mu] * b_r_eval(r, t, ps.points[mu]));
        double exact = 1.0;
        for (double tj : t) exact *= std::pow(tj, r) / fact;
        return std::abs(s.value() - exact);
    };

    DiscrepancyReport rep;
    rep.mode = "b_r";
    rep.r = r;
    rep.value = -1.0;
    std::vector<int> idx(ps.d, 0);
    std::vector<double> t(ps.d);
    while (true) {
        for (int j = 0; j < ps.d; ++j)
            t[j] = static_cast<double>(idx[j] + 1) / search.z_grid; // t in (0, 1]
        const double val = objective(t);
        if (val > rep.value || (val == rep.value && t < rep.argmax_z)) {
            rep.value = val;
            rep.argmax_z = t;
        }
        int j = ps.d - 1;
        while (j >= 0 && ++idx[j] == search.z_grid) idx[j--] = 0;
        if (j < 0) break;
    }
    double step = 0.5 / search.z_grid;
    for (int it = 0; it < search.refine_iters; ++it) {
        bool improved = false;
        for (int j = 0; j < ps.d; ++j) {
            for (double dir : {-1.0, 1.0}) {
                std::vector<double> tt = rep.argmax_z;
                tt[j] = std::clamp(tt[j] + dir * step, 1e-12, 1.0);
                const double val = objective(tt);
                if (val > rep.value) {
                    rep.value = val;
                    rep.argmax_z = tt;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    rep.search = search;
    return rep;
}

// Minimax weights for the periodic hat family at the given nodes; constraints
// are (z, u) pairs with targets pr(u)^r.
inline MinimaxResult optimize_weights_minimax_periodic(const std::vector<std::vector<double>>& positions,
                                                       int r,
                                                       const std::vector<HatSpec>& constraint_sample,
                                                       bool has_mass_bound = false,
                                                       double mass_bound = 0.0) {
    if (positions.empty()) throw argument_error("optimize_weights_minimax: empty position list");
    if (constraint_sample.empty())
        throw argument_error("optimize_weights_minimax: constraint sample must be nonempty");
    std::vector<std::vector<double>> H(constraint_sample.size(), std::vector<double>(positions.size()));
    std::vector<double> targets(constraint_sample.size());
    for (std::size_t i = 0; i < constraint_sample.size(); ++i) {
        const HatSpec& spec = constraint_sample[i];
        if (spec.r != r) throw argument_error("optimize_weights_minimax: constraint r mismatch");
        for (std::size_t muIdx = 0; muIdx < positions.size(); ++muIdx)
            H[i][muIdx] = periodized_hat_eval(spec, positions[muIdx]);
        targets[i] = std::pow(spec.pr_u(), r);
    }
    return optimize_weights_minimax(H, targets, has_mass_bound, mass_bound);
}

} // namespace fvd
