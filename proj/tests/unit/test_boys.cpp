#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/boys.hpp"
#include "support/reference_values.hpp"

using namespace radscf;

TEST_SUITE("boys") {

TEST_CASE("value at zero is the moment integral 1/(2n+1)") {
    for (int n = 0; n <= 16; ++n) {
        CAPTURE(n);
        CHECK(std::abs(boys(n, 0.0) - 1.0 / (2 * n + 1)) < 1e-14);
    }
}

TEST_CASE("order zero matches the closed error-function form") {
    for (double x : {1e-8, 0.1, 1.0, 5.0, 10.0, 30.0, 34.9, 35.1, 60.0, 200.0}) {
        const double exact = 0.5 * std::sqrt(M_PI / x) * std::erf(std::sqrt(x));
        CAPTURE(x);
        CHECK(boys(0, x) == doctest::Approx(exact).epsilon(1e-12));
    }
    CHECK(boys(0, 10.0) == doctest::Approx(refvals::kBoysF0At10).epsilon(1e-13));
}

TEST_CASE("downward recursion identity holds across the argument range") {
    // F_{n-1}(x) = (2x F_n(x) + exp(-x)) / (2n - 1)
    for (double x : {0.05, 0.7, 3.0, 12.0, 33.0, 40.0, 90.0}) {
        std::vector<double> f;
        boys_array(8, x, f);
        for (int n = 8; n >= 1; --n) {
            const double lhs = f[n - 1];
            const double rhs = (2.0 * x * f[n] + std::exp(-x)) / (2 * n - 1);
            CAPTURE(x);
            CAPTURE(n);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        }
    }
}

TEST_CASE("values are continuous across the evaluation branch switch") {
    for (int n = 0; n <= 4; ++n) {
        const double below = boys(n, 35.0 - 1e-9);
        const double above = boys(n, 35.0 + 1e-9);
        CAPTURE(n);
        CHECK(below == doctest::Approx(above).epsilon(1e-9));
    }
}

TEST_CASE("fill variant agrees with single-order evaluation") {
    double buf[6];
    boys_fill(5, 2.5, buf);
    for (int n = 0; n <= 5; ++n) {
        CHECK(buf[n] == doctest::Approx(boys(n, 2.5)).epsilon(1e-13));
    }
}

TEST_CASE("monotonicity: decreasing in both order and argument") {
    for (int n = 0; n < 6; ++n) {
        CHECK(boys(n + 1, 3.0) < boys(n, 3.0));
        CHECK(boys(n, 4.0) < boys(n, 3.0));
    }
}

}  // TEST_SUITE
