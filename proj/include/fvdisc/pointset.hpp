#pragma once

// Weighted point sets on [0,1)^d: Frolov dual-lattice sets, their periodized
// (windowed) variants, Fibonacci sets (d = 2), and a seeded uniform baseline.
// CSV format: header "x1,...,xd,weight", 17-significant-digit decimals,
// with a JSON sidecar carrying the construction metadata.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fvdisc/common.hpp"
#include "fvdisc/kernels.hpp"
#include "fvdisc/lattice.hpp"

namespace fvd {

struct WeightedPointSet {
    int d = 0;
    std::vector<std::vector<double>> points;  // xi^mu in [0,1)^d
    std::vector<double> weights;              // lambda_mu
    std::vector<std::vector<double>> pre_wrap_points; // eta^mu, periodized Frolov only
    nlohmann::json meta;

    std::size_t size() const { return points.size(); }

    double weight_sum() const {
        NeumaierSum s;
        for (double w : weights) s.add(w);
        return s.value();
    }

    double weight_mass() const {
        NeumaierSum s;
        for (double w : weights) s.add(std::abs(w));
        return s.value();
    }

    void validate() const {
        if (points.size() != weights.size() || points.empty())
            throw argument_error("point set: |points| and |weights| must match and be >= 1");
        for (const auto& p : points) {
            if (static_cast<int>(p.size()) != d) throw argument_error("point set: dimension mismatch");
            for (double c : p)
                if (c < 0.0 || c >= 1.0) throw argument_error("point set: coordinate outside [0,1)");
        }
    }
};

namespace detail {

inline AdmissibleLattice lattice_for(int d, double a) {
    return d == 1 ? unit_lattice_1d(a) : build_frolov_lattice(d, a);
}

inline Box unit_box(int d) {
    Box b;
    b.lo.assign(d, 0.0);
    b.hi.assign(d, 1.0);
    return b;
}

} // namespace detail

inline WeightedPointSet frolov_pointset(int d, double a) {
    const AdmissibleLattice lat = detail::lattice_for(d, a);
    const auto pts = enumerate_dual_points(lat, detail::unit_box(d));
    if (pts.empty()) throw construction_error("frolov_pointset: no dual points in [0,1)^d");
    WeightedPointSet ps;
    ps.d = d;
    const double lambda = 1.0 / (std::pow(a, d) * std::abs(lat.det_A));
    for (const auto& p : pts) {
        ps.points.push_back(p.x);
        ps.weights.push_back(lambda);
    }
    ps.meta = {{"kind", "frolov"}, {"d", d}, {"a", a}, {"N", ps.points.size()}};
    return ps;
}

inline WeightedPointSet periodized_frolov_pointset(int d, double a) {
    const AdmissibleLattice lat = detail::lattice_for(d, a);
    Box window;
    window.lo.assign(d, -0.5);
    window.hi.assign(d, 1.5);
    const auto pts = enumerate_dual_points(lat, window);
    if (pts.empty()) throw construction_error("periodized_frolov_pointset: no dual points in window");
    WeightedPointSet ps;
    ps.d = d;
    const double norm = 1.0 / (std::pow(a, d) * std::abs(lat.det_A));
    for (const auto& p : pts) {
        std::vector<double> xi(d);
        for (int j = 0; j < d; ++j) {
            xi[j] = p.x[j] - std::floor(p.x[j]);
            if (xi[j] >= 1.0) xi[j] = 0.0; // guard against floor rounding at 1-epsilon
        }
        ps.pre_wrap_points.push_back(p.x);
        ps.points.push_back(std::move(xi));
        ps.weights.push_back(norm * window_weight(p.x));
    }
    ps.meta = {{"kind", "frolov-periodized"}, {"d", d}, {"a", a}, {"m", ps.points.size()}};
    return ps;
}

inline long long fibonacci_number(int n) {
    if (n < 1) throw argument_error("fibonacci_number: n must be >= 1");
    long long b0 = 1, b1 = 1; // b_1 = b_2 = 1
    for (int k = 3; k <= n; ++k) {
        const long long next = b0 + b1;
        b0 = b1;
        b1 = next;
    }
    return b1;
}

// {(mu/b_n, {mu b_{n-1}/b_n})}, mu = 0..b_n-1, equal weights 1/b_n.
inline WeightedPointSet fibonacci_pointset(int n) {
    if (n < 3) throw argument_error("fibonacci_pointset: n must be >= 3");
    const long long bn = fibonacci_number(n);
    const long long bp = fibonacci_number(n - 1);
    WeightedPointSet ps;
    ps.d = 2;
    for (long long mu = 0; mu < bn; ++mu) {
        const double x = static_cast<double>(mu) / static_cast<double>(bn);
        const double y = static_cast<double>((mu * bp) % bn) / static_cast<double>(bn);
        ps.points.push_back({x, y});
        ps.weights.push_back(1.0 / static_cast<double>(bn));
    }
    ps.meta = {{"kind", "fibonacci"}, {"n", n}, {"b_n", bn}, {"b_prev", bp}};
    return ps;
}

inline WeightedPointSet random_pointset(std::size_t m, int d, std::uint64_t seed) {
    if (m < 1) throw argument_error("random_pointset: m must be >= 1");
    if (d < 1) throw argument_error("random_pointset: d must be >= 1");
    WeightedPointSet ps;
    ps.d = d;
    SplitMix64 rng(seed);
    for (std::size_t mu = 0; mu < m; ++mu) {
        std::vector<double> p(d);
        for (int j = 0; j < d; ++j) p[j] = rng.next_double();
        ps.points.push_back(std::move(p));
        ps.weights.push_back(1.0 / static_cast<double>(m));
    }
    ps.meta = {{"kind", "random"}, {"m", m}, {"d", d}, {"seed", seed}};
    return ps;
}

inline nlohmann::json lattice_to_json(const AdmissibleLattice& lat) {
    nlohmann::json j;
    j["d"] = lat.d;
    j["a"] = lat.a;
    j["coefficients"] = lat.poly.coefficients;
    j["roots"] = lat.poly.roots;
    j["A"] = lat.A;
    j["A_inv_T"] = lat.A_inv_T;
    j["det_A"] = lat.det_A;
    return j;
}

inline void write_pointset_csv(const WeightedPointSet& ps, std::ostream& os) {
    for (int j = 0; j < ps.d; ++j) os << "x" << (j + 1) << ",";
    os << "weight\n";
    for (std::size_t mu = 0; mu < ps.size(); ++mu) {
        for (int j = 0; j < ps.d; ++j) os << fmt17(ps.points[mu][j]) << ",";
        os << fmt17(ps.weights[mu]) << "\n";
    }
}

inline void write_pointset(const WeightedPointSet& ps, const std::string& base_path) {
    std::ofstream csv(base_path + ".csv");
    if (!csv) throw argument_error("cannot open output file " + base_path + ".csv");
    write_pointset_csv(ps, csv);
    std::ofstream side(base_path + ".json");
    nlohmann::json meta = ps.meta;
    meta["count"] = ps.size();
    meta["weight_sum"] = ps.weight_sum();
    meta["weight_mass"] = ps.weight_mass();
    side << meta.dump(2) << "\n";
}

inline WeightedPointSet read_pointset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw argument_error("cannot open point set file " + path);
    std::string line;
    if (!std::getline(in, line)) throw argument_error(path + ": empty file");
    std::size_t cols = 1;
    for (char c : line) cols += (c == ',');
    if (cols < 2) throw argument_error(path + ":1: header must be x1,...,xd,weight");
    WeightedPointSet ps;
    ps.d = static_cast<int>(cols) - 1;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                vals.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw argument_error(path + ":" + std::to_string(lineno) + ": cannot parse '" + cell + "'");
            }
        }
        if (vals.size() != cols)
            throw argument_error(path + ":" + std::to_string(lineno) + ": wrong column count");
        ps.points.push_back(std::vector<double>(vals.begin(), vals.end() - 1));
        ps.weights.push_back(vals.back());
    }
    ps.validate();
    ps.meta = {{"kind", "file"}, {"path", path}};
    return ps;
}

} // namespace fvd
