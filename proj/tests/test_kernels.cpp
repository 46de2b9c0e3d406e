#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fvdisc/kernels.hpp"
#include "oracles.hpp"

using namespace fvd;

TEST_CASE("hat_eval closed form, small cases") {
    CHECK(hat_eval(1, 0.0, 0.5) == 1.0);
    CHECK(hat_eval(1, 0.25, 0.5) == 0.0);  // right endpoint open
    CHECK(hat_eval(1, -0.25, 0.5) == 1.0); // left endpoint closed
    CHECK(hat_eval(2, 0.0, 0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(hat_eval(2, 0.2, 0.5) == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(hat_eval(2, 0.6, 0.5) == 0.0);
    CHECK_THROWS_AS(hat_eval(0, 0.0, 0.5), argument_error);
    CHECK_THROWS_AS(hat_eval(2, 0.0, 0.7), argument_error);
    CHECK_THROWS_AS(hat_eval(2, 0.0, 0.0), argument_error);
}

TEST_CASE("hat_eval matches the convolution recursion") {
    // h^r = h^{r-1} * h^1, checked by trapezoid convolution
    for (int r = 2; r <= 5; ++r) {
        const double u = 0.4;
        for (int i = 0; i < 40; ++i) {
            const double x = -1.0 + 2.0 * i / 39.0;
            const double direct = hat_eval(r, x, u);
            const double conv =
                oracle::convolve_with_indicator([&](double t) { return hat_eval(r - 1, t, u); }, u, x,
                                                r - 1, 4000);
            CHECK(std::abs(direct - conv) <= 1e-6);
        }
    }
    const double conv3 = oracle::convolve_with_indicator(
        [&](double t) { return hat_eval(2, t, 0.4); }, 0.4, 0.1, 2, 20000);
    CHECK(std::abs(hat_eval(3, 0.1, 0.4) - conv3) <= 1e-7);
}

TEST_CASE("hat symmetry for r >= 2") {
    for (int r = 2; r <= 5; ++r)
        for (double u : {0.1, 0.3, 0.5})
            for (int i = 0; i < 50; ++i) {
                const double x = 0.49 * r * u * (i / 49.0);
                CHECK(std::abs(hat_eval(r, x, u) - hat_eval(r, -x, u)) <= 1e-12);
            }
}

TEST_CASE("hat_integral is u^r, cross-checked by quadrature") {
    CHECK(hat_integral(1, 0.5) == 0.5);
    CHECK(hat_integral(3, 0.5) == 0.125);
    const double quad = oracle::trapezoid([](double x) { return hat_eval(2, x, 0.3); }, -0.4, 0.4,
                                          200000);
    CHECK(hat_integral(2, 0.3) == doctest::Approx(0.09).epsilon(1e-12));
    CHECK(quad == doctest::Approx(0.09).epsilon(1e-9));
}

TEST_CASE("hat_fourier closed form and decay bound") {
    CHECK(hat_fourier(2, 0.0, 0.5) == 0.25);
    const double pi = 3.14159265358979323846;
    CHECK(hat_fourier(2, 1.0, 0.5) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-14));
    CHECK(hat_fourier(4, 2.0, 0.5) == doctest::Approx(0.0).epsilon(1e-14));
    // |h^(y)| <= min(u^r, |y|^-r) with constant 1 for the exact sin kernel
    for (int r = 1; r <= 4; ++r)
        for (double u : {0.05, 0.2, 0.5})
            for (int i = 1; i <= 200; ++i) {
                const double y = 0.1 * i;
                const double bound = std::min(std::pow(u, r), std::pow(y, -static_cast<double>(r)));
                CHECK(std::abs(hat_fourier(r, y, u)) <= bound + 1e-15);
            }
}

TEST_CASE("hat_fourier matches the numeric Fourier integral") {
    for (int r = 2; r <= 4; ++r)
        for (double y : {0.5, 1.0, 3.0, 8.0}) {
            const double u = 0.3;
            const double num = oracle::fourier_integral_real(
                [&](double x) { return hat_eval(r, x, u); }, y, -r * u / 2, r * u / 2, 100000);
            CHECK(std::abs(hat_fourier(r, y, u) - num) <= 1e-6);
        }
}

TEST_CASE("tensor and periodized evaluation") {
    HatSpec spec{2, {0.5, 0.5}, {0.25, 0.5}};
    CHECK(tensor_hat_eval(spec, {0.6, 0.7}) == doctest::Approx(0.15 * 0.3).epsilon(1e-13));
    CHECK(tensor_hat_eval(spec, {0.5, 0.5}) ==
          doctest::Approx(hat_eval(2, 0, 0.25) * hat_eval(2, 0, 0.5)).epsilon(1e-14));
    CHECK(tensor_hat_eval(spec, {0.9, 0.5}) == 0.0); // outside support in x1
    CHECK_THROWS_AS(tensor_hat_eval(spec, {0.5}), argument_error);

    HatSpec one{2, {0.0}, {0.5}};
    CHECK(periodized_hat_eval(one, {0.9}) == doctest::Approx(0.4).epsilon(1e-13));
    for (int i = 0; i < 20; ++i) {
        const double x = i / 20.0;
        CHECK(periodized_hat_eval(one, {x}) ==
              doctest::Approx(periodized_hat_eval(one, {std::fmod(x + 1.0, 1.0)})).epsilon(1e-13));
    }
    // periodization preserves the integral
    double riemann = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) riemann += periodized_hat_eval(one, {(i + 0.5) / n}) / n;
    CHECK(riemann == doctest::Approx(0.25).epsilon(1e-6));
    HatSpec bad{2, {0.0}, {0.6}};
    CHECK_THROWS_AS(periodized_hat_eval(bad, {0.5}), argument_error);
}

TEST_CASE("window: smoothness anchors and partition of unity") {
    CHECK(window_eval(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(window_eval(-0.6) == 0.0);
    CHECK(window_eval(1.5) == 0.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = i / 1000.0;
        double s = 0.0;
        for (int k = -2; k <= 2; ++k) s += window_eval(t + k);
        worst = std::max(worst, std::abs(s - 1.0));
    }
    CHECK(worst <= 1e-12);
    for (int i = 0; i <= 1000; ++i) {
        const double t = -0.5 + i / 1000.0;
        CHECK(std::abs(window_eval(t) + window_eval(t + 1.0) - 1.0) <= 1e-12);
    }
}
