#pragma once

// Largest empty axis-parallel box (dispersion). Exact search over the
// coordinate-induced candidate grid: every maximal empty box has each face at
// 0, 1, or a point coordinate. Sup semantics with half-open boxes mean a point
// on the boundary does not block a box; emptiness is tested on the interior.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fvdisc/common.hpp"

namespace fvd {

struct EmptyBoxResult {
    double volume = 0.0;
    std::vector<double> lo;
    std::vector<double> hi;
    std::string method = "exact_grid";
};

namespace detail {

struct DispersionSearch {
    const std::vector<std::vector<double>>& pts;
    int d;
    EmptyBoxResult best;
    std::vector<double> lo, hi;

    DispersionSearch(const std::vector<std::vector<double>>& p, int dim) : pts(p), d(dim) {
        lo.assign(d, 0.0);
        hi.assign(d, 1.0);
        best.volume = -1.0;
    }

    // active: indices strictly inside the slabs fixed for dims < dim
    void recurse(int dim, const std::vector<int>& active, double area) {
        if (dim == d - 1) {
            std::vector<double> ys{0.0, 1.0};
            for (int i : active) ys.push_back(pts[i][dim]);
            std::sort(ys.begin(), ys.end());
            for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
                const double gap = ys[k + 1] - ys[k];
                const double vol = area * gap;
                if (vol > best.volume) {
                    lo[dim] = ys[k];
                    hi[dim] = ys[k + 1];
                    best.volume = vol;
                    best.lo = lo;
                    best.hi = hi;
                }
            }
            return;
        }
        std::vector<double> cs{0.0, 1.0};
        for (int i : active) cs.push_back(pts[i][dim]);
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        for (std::size_t a = 0; a < cs.size(); ++a) {
            for (std::size_t b = a + 1; b < cs.size(); ++b) {
                const double width = cs[b] - cs[a];
                if (area * width <= best.volume) continue; // cannot beat current best
                std::vector<int> inside;
                for (int i : active)
                    if (pts[i][dim] > cs[a] && pts[i][dim] < cs[b]) inside.push_back(i);
                lo[dim] = cs[a];
                hi[dim] = cs[b];
                recurse(dim + 1, inside, area * width);
            }
        }
    }
};

} // namespace detail

inline EmptyBoxResult dispersion(const std::vector<std::vector<double>>& pts, int d,
                                 double candidate_cap = 6e10) {
    if (d < 1) throw argument_error("dispersion: d must be >= 1");
    for (const auto& p : pts)
        if (static_cast<int>(p.size()) != d) throw argument_error("dispersion: dimension mismatch");
    const double n = static_cast<double>(pts.size());
    if (std::pow(n + 2.0, 2.0 * d) > candidate_cap)
        throw resource_error("dispersion: candidate grid exceeds cap");
    if (pts.empty()) {
        EmptyBoxResult r;
        r.volume = 1.0;
        r.lo.assign(d, 0.0);
        r.hi.assign(d, 1.0);
        return r;
    }
    detail::DispersionSearch search(pts, d);
    std::vector<int> all(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) all[i] = static_cast<int>(i);
    search.recurse(0, all, 1.0);
    return search.best;
}

struct DispersionRow {
    std::size_t n = 0;
    double disp = 0.0;
    double n_times_disp = 0.0;
};

inline std::vector<DispersionRow> dispersion_times_n_curve(
    const std::vector<std::vector<std::vector<double>>>& families, int d) {
    std::vector<DispersionRow> rows;
    for (const auto& pts : families) {
        const EmptyBoxResult r = dispersion(pts, d);
        rows.push_back({pts.size(), r.volume, static_cast<double>(pts.size()) * r.volume});
    }
    return rows;
}

} // namespace fvd
