#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fvdisc/discrepancy.hpp"
#include "oracles.hpp"

using namespace fvd;

namespace {

WeightedPointSet make_set(std::vector<std::vector<double>> pts, std::vector<double> w) {
    WeightedPointSet ps;
    ps.d = static_cast<int>(pts.front().size());
    ps.points = std::move(pts);
    ps.weights = std::move(w);
    return ps;
}

double reevaluate_periodic(const WeightedPointSet& ps, const DiscrepancyReport& rep) {
    HatSpec spec{rep.r, rep.argmax_z, rep.argmax_u};
    NeumaierSum s;
    for (std::size_t mu = 0; mu < ps.size(); ++mu)
        s.add(ps.weights[mu] * periodized_hat_eval(spec, ps.points[mu]));
    return std::abs(std::pow(rep.v, rep.r) - s.value());
}

} // namespace

TEST_CASE("periodic fixed-volume: degenerate and analytic cases") {
    SearchSpec search;
    auto zero = make_set({{0.1, 0.2}, {0.7, 0.4}}, {0.0, 0.0});
    auto rep = periodic_fixed_volume_discrepancy(zero, 2, 0.25, search);
    CHECK(rep.value == doctest::Approx(0.0625).epsilon(1e-14));
    CHECK(rep.mode == "periodic_fixed_volume");

    // single point, d = 1, r = 2, v = 1/2: width is forced to 1/2 and the
    // supremum 1/4 is attained both where the hat peaks and where it vanishes
    auto one = make_set({{0.0}}, {1.0});
    rep = periodic_fixed_volume_discrepancy(one, 2, 0.5, search);
    CHECK(rep.value == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rep.argmax_u[0] == doctest::Approx(0.5));

    // dense z-scan oracle for the same instance
    double oracle_val = 0.0;
    HatSpec spec{2, {0.0}, {0.5}};
    for (int i = 0; i < 10000; ++i) {
        spec.z[0] = i / 10000.0;
        oracle_val = std::max(oracle_val,
                              std::abs(0.25 - periodized_hat_eval(spec, one.points[0])));
    }
    CHECK(rep.value >= oracle_val - 1e-9);

    CHECK_THROWS_AS(periodic_fixed_volume_discrepancy(one, 0, 0.25, search), argument_error);
    CHECK_THROWS_AS(periodic_fixed_volume_discrepancy(zero, 2, 0.3, search), argument_error);
}

TEST_CASE("periodic fixed-volume: argmax reevaluation and grid nesting") {
    const auto fib = fibonacci_pointset(10); // b = 55
    SearchSpec coarse;
    coarse.z_grid = 8;
    coarse.refine_iters = 0;
    coarse.u_samples = 8;
    SearchSpec fine = coarse;
    fine.z_grid = 16; // superset of the coarse z grid
    SearchSpec refined = fine;
    refined.refine_iters = 24;

    for (double v : {0.25, 0.1}) {
        const auto rc = periodic_fixed_volume_discrepancy(fib, 2, v, coarse);
        const auto rf = periodic_fixed_volume_discrepancy(fib, 2, v, fine);
        const auto rr = periodic_fixed_volume_discrepancy(fib, 2, v, refined);
        CHECK(rf.value >= rc.value - 1e-15);
        CHECK(rr.value >= rf.value - 1e-15);
        CHECK(std::abs(reevaluate_periodic(fib, rr) - rr.value) <= 1e-12);
    }

    // dense-grid oracle at the forced width u = (1/2, 1/2)
    double oracle_val = 0.0;
    HatSpec spec{2, {0.0, 0.0}, {0.5, 0.5}};
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 200; ++j) {
            spec.z = {i / 200.0, j / 200.0};
            NeumaierSum s;
            for (std::size_t mu = 0; mu < fib.size(); ++mu)
                s.add(fib.weights[mu] * periodized_hat_eval(spec, fib.points[mu]));
            oracle_val = std::max(oracle_val, std::abs(0.0625 - s.value()));
        }
    const auto rr = periodic_fixed_volume_discrepancy(fib, 2, 0.25, refined);
    CHECK(rr.value >= oracle_val * 0.95);
    CHECK(rr.value <= oracle_val * 1.05);
}

TEST_CASE("non-periodic fixed-volume") {
    SearchSpec search;
    // single point at 1/2, r = 1, V = 1/2: every feasible box of volume 1/2
    // contains the point, so the deviation is |1/2 - 1| everywhere
    auto one = make_set({{0.5}}, {1.0});
    auto rep = fixed_volume_discrepancy(one, 1, 0.5, search);
    CHECK(rep.value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rep.mode == "fixed_volume");

    // zero weights: value is pr(u)^r with pr(u) = V / r^d
    auto zero = make_set({{0.3, 0.3}}, {0.0});
    rep = fixed_volume_discrepancy(zero, 2, 0.5, search);
    CHECK(rep.value == doctest::Approx(std::pow(0.5 / 4.0, 2)).epsilon(1e-14));

    // reported box stays inside the unit cube
    const auto fib = fibonacci_pointset(8);
    rep = fixed_volume_discrepancy(fib, 2, 0.25, search);
    for (int j = 0; j < 2; ++j) {
        CHECK(rep.argmax_z[j] - rep.r * rep.argmax_u[j] / 2 >= -1e-12);
        CHECK(rep.argmax_z[j] + rep.r * rep.argmax_u[j] / 2 <= 1.0 + 1e-12);
    }

    // V too large for the width cap u <= min(1/2, 1/r)
    CHECK_THROWS_AS(fixed_volume_discrepancy(zero, 2, 2.0, search), argument_error);
}

TEST_CASE("global smooth discrepancy takes the max over the volume grid") {
    SearchSpec search;
    search.z_grid = 8;
    search.u_samples = 4;
    const auto fib = fibonacci_pointset(8);
    const std::vector<double> grid{0.03125, 0.0625, 0.125, 0.25};
    double best = 0.0;
    for (double v : grid)
        best = std::max(best, periodic_fixed_volume_discrepancy(fib, 2, v, search).value);
    const auto rep = global_smooth_discrepancy(fib, 2, search, grid);
    CHECK(rep.value == doctest::Approx(best));
    CHECK(rep.mode == "global");
    CHECK_THROWS_AS(global_smooth_discrepancy(fib, 2, search, {}), argument_error);
}

TEST_CASE("exact star discrepancy") {
    CHECK(star_discrepancy_exact(make_set({{0.0, 0.0}}, {1.0})) == doctest::Approx(1.0));

    // 1-D left endpoints i/m have star discrepancy exactly 1/m
    for (int m : {4, 7, 16}) {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < m; ++i) pts.push_back({static_cast<double>(i) / m});
        CHECK(star_discrepancy_exact(make_set(pts, std::vector<double>(m, 1.0 / m))) ==
              doctest::Approx(1.0 / m).epsilon(1e-13));
    }

    // cross-check against a fine-grid scan on random 2-D sets
    SplitMix64 rng(7);
    for (int trial = 0; trial < 3; ++trial) {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 20; ++i) pts.push_back({rng.next_double(), rng.next_double()});
        const auto ps = make_set(pts, std::vector<double>(20, 0.05));
        const double exact = star_discrepancy_exact(ps);
        const double scanned = oracle::star_discrepancy_grid(ps.points, 64);
        CHECK(exact >= scanned - 1e-12);
        CHECK(exact <= scanned + 0.1); // scan misses at most the grid resolution
    }

    const auto fib = fibonacci_pointset(10);
    const double dstar = star_discrepancy_exact(fib);
    CHECK(dstar > 0.0);
    CHECK(dstar < 0.2);
}

TEST_CASE("B_r discrepancy") {
    SearchSpec search;
    // zero weights: the objective is prod t_j^r / r!, maximal at t = 1
    auto zero = make_set({{0.5, 0.5}}, {0.0});
    auto rep = b_r_discrepancy(zero, 2, search);
    CHECK(rep.value == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(rep.argmax_z[0] == doctest::Approx(1.0));

    // single point at 0, d = 1, r = 2: |t - t^2/2| peaks at t = 1 with value 1/2
    auto one = make_set({{0.0}}, {1.0});
    rep = b_r_discrepancy(one, 2, search);
    CHECK(rep.value == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(rep.argmax_z[0] == doctest::Approx(1.0));

    // r = 1 reduces to a star-type deviation: bounded by the exact star value
    for (int n : {6, 8, 10}) {
        const auto fib = fibonacci_pointset(n);
        const double star = star_discrepancy_exact(fib);
        SearchSpec dense;
        dense.z_grid = 64;
        const auto r1 = b_r_discrepancy(fib, 1, dense);
        CHECK(r1.value <= star + 1e-12);
        CHECK(r1.value >= 0.25 * star);
    }

    CHECK_THROWS_AS(b_r_discrepancy(one, 0, search), argument_error);
}

TEST_CASE("minimax weights for the periodic hat family") {
    // single node, single constraint: residual can be driven to zero
    std::vector<HatSpec> single{{2, {0.5}, {0.5}}};
    auto res = optimize_weights_minimax_periodic({{0.5}}, 2, single);
    CHECK(res.value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(res.weights[0] == doctest::Approx(0.25 / periodized_hat_eval(single[0], {0.5})));

    // optimized weights do at least as well as the native equal weights
    const auto fib = fibonacci_pointset(6); // b = 8
    std::vector<HatSpec> sample;
    SplitMix64 rng(5);
    for (int i = 0; i < 40; ++i)
        sample.push_back({2,
                          {rng.next_double(), rng.next_double()},
                          {0.05 + 0.45 * rng.next_double(), 0.05 + 0.45 * rng.next_double()}});
    const auto opt = optimize_weights_minimax_periodic(fib.points, 2, sample);
    double equal = 0.0;
    for (const auto& spec : sample) {
        NeumaierSum s;
        for (std::size_t mu = 0; mu < fib.size(); ++mu)
            s.add(fib.weights[mu] * periodized_hat_eval(spec, fib.points[mu]));
        equal = std::max(equal, std::abs(std::pow(spec.pr_u(), 2) - s.value()));
    }
    CHECK(opt.value <= equal + 1e-10);

    // the mass bound is honored and only degrades the objective
    const double bound = 0.5;
    const auto capped = optimize_weights_minimax_periodic(fib.points, 2, sample, true, bound);
    double mass = 0.0;
    for (double w : capped.weights) mass += std::abs(w);
    CHECK(mass <= bound + 1e-9);
    CHECK(capped.value >= opt.value - 1e-10);

    CHECK_THROWS_AS(optimize_weights_minimax_periodic({}, 2, single), argument_error);
    CHECK_THROWS_AS(optimize_weights_minimax_periodic({{0.5}}, 3, single), argument_error);
}

TEST_CASE("discrepancy report serializes") {
    SearchSpec search;
    const auto rep = periodic_fixed_volume_discrepancy(make_set({{0.0}}, {1.0}), 2, 0.5, search);
    const auto j = rep.to_json();
    CHECK(j["mode"] == "periodic_fixed_volume");
    CHECK(j["r"] == 2);
    CHECK(j["value"].get<double>() == doctest::Approx(rep.value));
    CHECK(j["argmax_z"].size() == 1);
}
