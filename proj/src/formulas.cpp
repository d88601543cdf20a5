#include "gfl/formulas.hpp"

#include <stdexcept>

namespace gfl {

Rational harmonic(long m) {
    if (m < 0) throw std::invalid_argument("harmonic sum needs m >= 0");
    Rational h = 0;
    for (long i = 1; i <= m; ++i) h += rational(1, i);
    return h;
}

double harmonic_double(long long m) {
    if (m < 0) throw std::invalid_argument("harmonic sum needs m >= 0");
    double sum = 0.0, carry = 0.0;
    // Ascending order plus compensation keeps the error near one ulp.
    for (long long i = m; i >= 1; --i) {
        const double y = 1.0 / static_cast<double>(i) - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    return sum;
}

Rational single_info_expectation_complete(int n) {
    if (n < 2) throw std::invalid_argument("complete-graph expectation needs n >= 2");
    return Rational(n - 1) * harmonic(n - 1);
}

Rational delta_expectation(int n, int k) {
    if (n < 2 || k < 1 || k >= n)
        throw std::invalid_argument("stage expectation needs n >= 2 and 1 <= k < n");
    return rational(static_cast<long>(n) * (n - 1), 2L * k * (n - k));
}

Rational star_total_expectation(int leaves) {
    if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
    return Rational(2 * leaves) * harmonic(leaves) - 1;
}

Rational star_hub_expectation(int leaves) {
    if (leaves < 1) throw std::invalid_argument("star needs at least one leaf");
    return Rational(leaves) * harmonic(leaves);
}

Rational star_ratio(int leaves) {
    return 2 - 1 / star_hub_expectation(leaves);
}

Rational ring_single_info_expectation(int n) {
    if (n < 3) throw std::invalid_argument("ring needs n >= 3");
    return rational(static_cast<long>(n) * (n - 1), 2);
}

Rational recurrence_residual(int n, int k, const Rational& Mk, const Rational& Ak1,
                             const Rational& Ak) {
    if (n < 2 || k < 1 || k > n)
        throw std::invalid_argument("identity needs n >= 2 and 1 <= k <= n");
    const Rational lhs = rational(static_cast<long>(2 * n - k - 1) * k, 2) * Mk;
    const Rational pairs = rational(static_cast<long>(n) * (n - 1), 2);
    const Rational rhs = pairs + Rational(static_cast<long>(k) * (n - k)) * Ak1 +
                         rational(static_cast<long>(k) * (k - 1), 2) * Ak;
    return lhs - rhs;
}

BoundsReport total_time_bounds(int n) {
    if (n < 2) throw std::invalid_argument("bounds need n >= 2");
    BoundsReport report;
    report.n = n;
    report.m1 = single_info_expectation_complete(n);
    report.upper = rational(3, 2) * report.m1;
    if (n >= 4) {
        report.lower = report.upper - rational(3, 4) * (n - 1);
    } else {
        report.lower = report.m1;
    }
    report.ratio_lower = report.lower / report.m1;
    report.ratio_upper = rational(3, 2);
    return report;
}

double bounds_ratio_lower_double(long long n) {
    if (n < 2) throw std::invalid_argument("bounds need n >= 2");
    if (n < 4) return 1.0;
    return 1.5 - 0.75 / harmonic_double(n - 1);
}

Rational continuous_flooding_expectation(const Rational& discrete_mean, long long edge_count) {
    if (edge_count < 1) throw std::invalid_argument("conversion needs at least one edge");
    return discrete_mean / Rational(static_cast<long>(edge_count));
}

double continuous_flooding_expectation(double discrete_mean, long long edge_count) {
    if (edge_count < 1) throw std::invalid_argument("conversion needs at least one edge");
    return discrete_mean / static_cast<double>(edge_count);
}

}  // namespace gfl
