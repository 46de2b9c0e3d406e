#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "fvdisc/pointset.hpp"
#include "oracles.hpp"

using namespace fvd;

TEST_CASE("frolov pointset: d=1 degenerate mode") {
    const auto ps = frolov_pointset(1, 4.0);
    REQUIRE(ps.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(ps.points[i][0] == doctest::Approx(0.25 * i));
        CHECK(ps.weights[i] == doctest::Approx(0.25));
    }
}

TEST_CASE("frolov pointset: equals lattice enumeration, count bounded") {
    const auto ps = frolov_pointset(2, 8.0);
    const auto lat = build_frolov_lattice(2, 8.0);
    Box unit{{0.0, 0.0}, {1.0, 1.0}};
    const auto pts = enumerate_dual_points(lat, unit);
    REQUIRE(ps.size() == pts.size());
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (int j = 0; j < 2; ++j) CHECK(ps.points[i][j] == pts[i].x[j]);
    CHECK(static_cast<double>(ps.size()) <= 4.0 * 64.0); // N <= C(A) a^d
    const double lambda = 1.0 / (64.0 * std::abs(lat.det_A));
    for (double w : ps.weights) CHECK(w == lambda);
}

TEST_CASE("periodized frolov pointset: wrap and weights") {
    const auto ps = periodized_frolov_pointset(2, 8.0);
    REQUIRE(ps.pre_wrap_points.size() == ps.size());
    CHECK(static_cast<double>(ps.size()) <= 4.0 * 4.0 * 64.0);
    const auto lat = build_frolov_lattice(2, 8.0);
    const double norm = 1.0 / (64.0 * std::abs(lat.det_A));
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (int j = 0; j < 2; ++j) {
            const double eta = ps.pre_wrap_points[i][j];
            double frac = eta - std::floor(eta);
            if (frac >= 1.0) frac = 0.0;
            CHECK(ps.points[i][j] == frac); // exact in floating arithmetic
            if (eta >= 0.0 && eta <= 0.5) CHECK(ps.points[i][j] == eta);
        }
        CHECK(ps.weights[i] == norm * window_weight(ps.pre_wrap_points[i]));
    }
    CHECK(ps.weight_mass() <= 2.0);
}

TEST_CASE("periodized frolov: weight sum approaches 1 as a grows") {
    double prev = 1e9;
    for (double a : {8.0, 16.0, 32.0}) {
        const auto ps = periodized_frolov_pointset(2, a);
        const double gap = std::abs(ps.weight_sum() - 1.0);
        CHECK(gap < prev + 1e-12);
        prev = gap;
        if (a == 32.0) CHECK(gap <= 0.1);
    }
}

TEST_CASE("fibonacci pointset: b_n = 5 by hand") {
    const auto ps = fibonacci_pointset(5); // b_5 = 5, b_4 = 3
    REQUIRE(ps.size() == 5);
    const std::vector<std::vector<double>> expect{
        {0.0, 0.0}, {0.2, 0.6}, {0.4, 0.2}, {0.6, 0.8}, {0.8, 0.4}};
    for (std::size_t i = 0; i < 5; ++i)
        for (int j = 0; j < 2; ++j) CHECK(ps.points[i][j] == doctest::Approx(expect[i][j]).epsilon(1e-15));
    for (double w : ps.weights) CHECK(w == 0.2);
    CHECK(ps.weight_sum() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(fibonacci_pointset(2), argument_error);
}

TEST_CASE("fibonacci second coordinates are a permutation of the grid") {
    for (int n = 3; fibonacci_number(n) <= 233; ++n) {
        const auto ps = fibonacci_pointset(n);
        const long long bn = fibonacci_number(n);
        std::set<long long> seen;
        for (const auto& p : ps.points)
            seen.insert(static_cast<long long>(std::llround(p[1] * static_cast<double>(bn))));
        CHECK(seen.size() == static_cast<std::size_t>(bn));
    }
}

TEST_CASE("random pointset: determinism and weights") {
    const auto a = random_pointset(100, 3, 7);
    const auto b = random_pointset(100, 3, 7);
    CHECK(a.points == b.points);
    CHECK(a.weights == b.weights);
    const auto c = random_pointset(100, 3, 8);
    CHECK(a.points != c.points);
    CHECK(a.weight_sum() == doctest::Approx(1.0).epsilon(1e-12));
    for (const auto& p : a.points)
        for (double x : p) CHECK((x >= 0.0 && x < 1.0));
    CHECK_THROWS_AS(random_pointset(0, 2, 1), argument_error);
}

TEST_CASE("CSV round trip") {
    const auto ps = fibonacci_pointset(7);
    const std::string base = "pointset_roundtrip_tmp";
    write_pointset(ps, base);
    const auto back = read_pointset_csv(base + ".csv");
    REQUIRE(back.size() == ps.size());
    CHECK(back.d == 2);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        CHECK(back.points[i] == ps.points[i]); // 17 significant digits round-trip doubles
        CHECK(back.weights[i] == ps.weights[i]);
    }
    std::remove((base + ".csv").c_str());
    std::remove((base + ".json").c_str());
}

TEST_CASE("CSV parse errors name the line") {
    const std::string path = "pointset_bad_tmp.csv";
    {
        std::ofstream f(path);
        f << "x1,x2,weight\n0.1,0.2,0.3\noops,0.2,0.3\n";
    }
    CHECK_THROWS_WITH_AS(read_pointset_csv(path), doctest::Contains(":3:"), argument_error);
    std::remove(path.c_str());
}
