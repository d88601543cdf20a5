#pragma once

#include "gfl/rational.hpp"

namespace gfl {

// Exact harmonic sum H(m) = 1 + 1/2 + ... + 1/m, H(0) = 0. Intended for
// m up to ~10^4; beyond that use harmonic_double.
Rational harmonic(long m);

// Compensated (Kahan) float summation for sizes past the exact range.
double harmonic_double(long long m);

// Expected steps for one tagged information to cover the complete graph:
// (n-1) * H(n-1).
Rational single_info_expectation_complete(int n);

// Expected wait to go from k to k+1 holders of one information on the
// complete graph: n(n-1) / (2k(n-k)), the mean of the geometric stage.
Rational delta_expectation(int n, int k);

// Star with `leaves` edges, every site initially holding a distinct
// information: expected total propagation time 2*leaves*H(leaves) - 1.
Rational star_total_expectation(int leaves);

// Hub information coverage time: leaves * H(leaves) (coupon collection over
// the edges).
Rational star_hub_expectation(int leaves);

// Total-over-hub ratio 2 - 1/(leaves*H(leaves)); increases toward 2.
Rational star_ratio(int leaves);

// Ring single-information coverage: every stage has exactly two extending
// edges among n, so the n-1 stages are Geometric(2/n) and the sum is
// n(n-1)/2. Verified against the exact chain at n = 3,4,5.
Rational ring_single_info_expectation(int n);

// LHS - RHS of the first-step identity
//   ((2n-k-1)k/2) M(k) = C(n,2) + k(n-k) A(k+1) + C(k,2) A(k)
// at the supplied values; zero iff the triple satisfies it.
Rational recurrence_residual(int n, int k, const Rational& Mk, const Rational& Ak1,
                             const Rational& Ak);

struct BoundsReport {
    int n = 0;
    Rational m1;           // single-information expectation
    Rational lower;        // lower bound on the total expectation
    Rational upper;        // (3/2) m1
    Rational ratio_lower;  // lower / m1
    Rational ratio_upper;  // exactly 3/2
};

// Bounds on the expected total time for the complete graph. For n >= 4 the
// lower bound is (3/2)m1 - (3/4)(n-1); for n in {2,3} it degrades to the
// monotonicity floor m1.
BoundsReport total_time_bounds(int n);

// Float path for the ratio window's lower edge at sizes where the exact
// harmonic is impractical.
double bounds_ratio_lower_double(long long n);

// Discrete-step expectation to continuous (unit-rate exponential edge
// clocks) flooding expectation: divide by the edge count.
Rational continuous_flooding_expectation(const Rational& discrete_mean, long long edge_count);
double continuous_flooding_expectation(double discrete_mean, long long edge_count);

}  // namespace gfl
