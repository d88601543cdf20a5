#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gfl/formulas.hpp"

using namespace gfl;

TEST_CASE("harmonic numbers, exact and float") {
    CHECK(harmonic(0) == 0);
    CHECK(harmonic(1) == 1);
    CHECK(harmonic(2) == rational(3, 2));
    CHECK(harmonic(3) == rational(11, 6));
    CHECK(harmonic(4) == rational(25, 12));
    CHECK(harmonic_double(3) == doctest::Approx(11.0 / 6).epsilon(1e-15));
    // H(m) - ln m converges to the Euler-Mascheroni constant from above.
    double h = harmonic_double(1'000'000);
    CHECK(h - std::log(1e6) == doctest::Approx(0.5772161649).epsilon(1e-6));
}

TEST_CASE("single-information covering expectation on the complete graph") {
    CHECK(single_info_expectation_complete(2) == 1);
    CHECK(single_info_expectation_complete(3) == 3);
    CHECK(single_info_expectation_complete(4) == rational(11, 2));
    CHECK(single_info_expectation_complete(5) == rational(25, 3));
}

TEST_CASE("stage expectations sum to the covering expectation") {
    for (int n : {2, 3, 5, 8}) {
        Rational sum = 0;
        for (int k = 1; k < n; ++k) sum += delta_expectation(n, k);
        CHECK(sum == single_info_expectation_complete(n));
    }
    CHECK(delta_expectation(3, 1) == rational(3, 2));
    CHECK(delta_expectation(4, 2) == rational(3, 2));
}

TEST_CASE("star closed forms") {
    CHECK(star_total_expectation(1) == 1);
    CHECK(star_total_expectation(2) == 5);
    CHECK(star_total_expectation(3) == 10);
    CHECK(star_hub_expectation(1) == 1);
    CHECK(star_hub_expectation(2) == 3);
    CHECK(star_ratio(1) == 1);
    CHECK(star_ratio(2) == rational(5, 3));
    // The ratio climbs toward 2 but never reaches it.
    Rational prev = 0;
    for (int leaves = 1; leaves <= 6; ++leaves) {
        Rational r = star_ratio(leaves);
        CHECK(r > prev);
        CHECK(r < 2);
        prev = r;
    }
}

TEST_CASE("ring single-information expectation") {
    CHECK(ring_single_info_expectation(3) == 3);
    CHECK(ring_single_info_expectation(4) == 6);
    CHECK(ring_single_info_expectation(5) == 10);
    CHECK(ring_single_info_expectation(100) == 4950);
}

TEST_CASE("first-step identity residual") {
    // Frozen exact chain values for n = 3: M(2) = 7/2, A(3) = 3, A(2) = 3/2.
    CHECK(recurrence_residual(3, 2, rational(7, 2), 3, rational(3, 2)) == 0);
    // Perturbing one input breaks the identity by the expected amount.
    CHECK(recurrence_residual(3, 2, rational(7, 2), 3, 0) == rational(3, 2));
    CHECK(recurrence_residual(3, 2, 4, 3, rational(3, 2)) == rational(3, 2));
}

TEST_CASE("total-time bounds") {
    BoundsReport b2 = total_time_bounds(2);
    CHECK(b2.m1 == 1);
    CHECK(b2.lower == 1);
    CHECK(b2.upper == rational(3, 2));
    CHECK(b2.ratio_lower == 1);
    CHECK(b2.ratio_upper == rational(3, 2));

    BoundsReport b3 = total_time_bounds(3);
    CHECK(b3.lower == 3);
    CHECK(b3.upper == rational(9, 2));
    CHECK(b3.ratio_lower == 1);

    BoundsReport b4 = total_time_bounds(4);
    CHECK(b4.m1 == rational(11, 2));
    CHECK(b4.lower == 6);
    CHECK(b4.upper == rational(33, 4));
    CHECK(b4.ratio_lower == rational(12, 11));
    CHECK(b4.ratio_upper == rational(3, 2));
}

TEST_CASE("float ratio floor agrees with the exact one") {
    CHECK(bounds_ratio_lower_double(4) == doctest::Approx(12.0 / 11).epsilon(1e-12));
    CHECK(bounds_ratio_lower_double(3) == doctest::Approx(1.0).epsilon(1e-12));
    // 3/2 - 3/(4 H(n-1)) approaches 3/2 from below as n grows.
    CHECK(bounds_ratio_lower_double(4096) > 1.40);
    CHECK(bounds_ratio_lower_double(4096) < 1.5);
}

TEST_CASE("discrete to continuous conversion divides by the edge count") {
    CHECK(continuous_flooding_expectation(Rational(4), 3) == rational(4, 3));
    CHECK(continuous_flooding_expectation(Rational(1), 1) == 1);
    CHECK(continuous_flooding_expectation(4.0, 3) == doctest::Approx(4.0 / 3).epsilon(1e-15));
}
