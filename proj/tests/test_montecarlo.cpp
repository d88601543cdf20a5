#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gfl/formulas.hpp"
#include "gfl/graph.hpp"
#include "gfl/montecarlo.hpp"

using namespace gfl;

TEST_CASE("normal quantile") {
    CHECK(normal_quantile(0.5) == 0.0);
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.575829303548901).epsilon(1e-12));
    CHECK(normal_quantile(0.1) == doctest::Approx(-normal_quantile(0.9)).epsilon(1e-12));
    CHECK_THROWS_AS(normal_quantile(0.0), std::invalid_argument);
    CHECK_THROWS_AS(normal_quantile(1.0), std::invalid_argument);
}

TEST_CASE("estimate accumulates exact moments") {
    Estimate e("demo", 0.95, 7);
    e.add(1);
    e.add(2);
    e.add(3);
    CHECK(e.reps() == 3);
    CHECK(e.sum() == 6);
    CHECK(e.mean() == 2.0);
    CHECK(e.variance() == 1.0);
    CHECK(e.standard_error() == doctest::Approx(std::sqrt(1.0 / 3)).epsilon(1e-15));
    CHECK(e.ci_low() < 2.0);
    CHECK(e.ci_high() > 2.0);
    CHECK_THROWS_AS(e.add(-1), std::invalid_argument);
}

TEST_CASE("merge is exact and order-insensitive") {
    Estimate a("q", 0.95, 1), b("q", 0.95, 1), whole("q", 0.95, 1);
    for (long long v : {4, 9, 2}) {
        a.add(v);
        whole.add(v);
    }
    for (long long v : {7, 1}) {
        b.add(v);
        whole.add(v);
    }
    Estimate ab = merge(a, b), ba = merge(b, a);
    for (const Estimate* m : {&ab, &ba}) {
        CHECK(m->reps() == whole.reps());
        CHECK(m->sum() == whole.sum());
        CHECK(m->sum_squares() == whole.sum_squares());
        CHECK(m->mean() == whole.mean());
        CHECK(m->variance() == whole.variance());
    }
    Estimate other("different", 0.95, 1);
    other.add(1);
    CHECK_THROWS_AS(merge(a, other), std::invalid_argument);
}

TEST_CASE("degenerate distribution has zero error") {
    // On the two-site graph every replication takes exactly one step.
    StopSpec spec;
    spec.want_total = true;
    EstimatorConfig cfg;
    cfg.reps = 200;
    EstimateSet set = estimate(make_complete(2), Scenario::distinct_all(), spec, cfg);
    CHECK(set.total->mean() == 1.0);
    CHECK(set.total->standard_error() == 0.0);
    CHECK(set.total->ci_half_width() == 0.0);
}

TEST_CASE("estimator input validation") {
    StopSpec nothing;
    EstimatorConfig cfg;
    CHECK_THROWS_AS(estimate(make_complete(3), Scenario::distinct_all(), nothing, cfg),
                    std::invalid_argument);
    StopSpec spec;
    spec.want_total = true;
    cfg.reps = 0;
    CHECK_THROWS_AS(estimate(make_complete(3), Scenario::distinct_all(), spec, cfg),
                    std::invalid_argument);
}

TEST_CASE("quantity names identify the stopping times") {
    StopSpec spec;
    spec.targets = {{0}, {0, 2}};
    spec.want_total = true;
    spec.y_sites = {1};
    EstimatorConfig cfg;
    cfg.reps = 10;
    EstimateSet set = estimate(make_complete(3), Scenario::distinct_all(), spec, cfg);
    CHECK(set.targets[0].quantity() == "tau_0");
    CHECK(set.targets[1].quantity() == "tau_0+2");
    CHECK(set.total->quantity() == "tau_total");
    CHECK(set.y_sites[0].quantity() == "y_1");
}

TEST_CASE("estimates agree with exact expectations at three sigma") {
    StopSpec spec;
    spec.want_total = true;
    EstimatorConfig cfg;
    cfg.reps = 100'000;
    EstimateSet set = estimate(make_complete(3), Scenario::distinct_all(), spec, cfg);
    double exact = 4.0;  // exact chain value for the three-site total time
    CHECK(std::abs(set.total->mean() - exact) < 3 * set.total->standard_error());

    StopSpec single;
    single.targets = {{0}};
    cfg.reps = 20'000;
    EstimateSet one = estimate(make_complete(8), Scenario::distinct_all(), single, cfg);
    double m1 = to_double(single_info_expectation_complete(8));  // 363/20
    CHECK(std::abs(one.targets[0].mean() - m1) < 3 * one.targets[0].standard_error());
}

TEST_CASE("thread count never changes the accumulated sums") {
    StopSpec spec;
    spec.targets = {{0}};
    spec.want_total = true;
    spec.y_sites = {2};
    for (long long reps : {1, 7, 1000}) {
        EstimatorConfig one;
        one.reps = reps;
        one.threads = 1;
        EstimatorConfig four = one;
        four.threads = 4;
        EstimateSet a = estimate(make_complete(4), Scenario::distinct_all(), spec, one);
        EstimateSet b = estimate(make_complete(4), Scenario::distinct_all(), spec, four);
        CHECK(a.total->sum() == b.total->sum());
        CHECK(a.total->sum_squares() == b.total->sum_squares());
        CHECK(a.targets[0].sum() == b.targets[0].sum());
        CHECK(a.y_sites[0].sum() == b.y_sites[0].sum());
    }
}

TEST_CASE("step-cap failures report the same replication on any thread count") {
    StopSpec spec;
    spec.want_total = true;
    std::string what_single, what_multi;
    uint64_t seed_single = 0, seed_multi = 1;
    EstimatorConfig cfg;
    cfg.reps = 64;
    cfg.step_cap = 2;  // three sites cannot finish in two steps
    cfg.threads = 1;
    try {
        estimate(make_complete(3), Scenario::distinct_all(), spec, cfg);
    } catch (const StepCapExceeded& e) {
        what_single = e.what();
        seed_single = e.partial().seed;
    }
    cfg.threads = 8;
    try {
        estimate(make_complete(3), Scenario::distinct_all(), spec, cfg);
    } catch (const StepCapExceeded& e) {
        what_multi = e.what();
        seed_multi = e.partial().seed;
    }
    REQUIRE_FALSE(what_single.empty());
    CHECK(what_single == what_multi);
    CHECK(seed_single == seed_multi);
}

TEST_CASE("two-sample gap statistic") {
    Estimate a("g", 0.95, 1), b("g", 0.95, 1);
    for (long long v : {1, 2, 3, 4}) a.add(v);
    for (long long v : {1, 2, 3, 4}) b.add(v);
    CHECK(two_sample_mean_gap(a, b) == 0.0);
    Estimate c("g", 0.95, 1);
    for (long long v : {11, 12, 13, 14}) c.add(v);
    double se = std::sqrt(a.standard_error() * a.standard_error() +
                          c.standard_error() * c.standard_error());
    CHECK(two_sample_mean_gap(a, c) == doctest::Approx(10.0 / se).epsilon(1e-12));
    // Zero spread and distinct means is an unbounded discrepancy.
    Estimate d1("g", 0.95, 1), d2("g", 0.95, 1);
    d1.add(1);
    d1.add(1);
    d2.add(2);
    d2.add(2);
    CHECK(std::isinf(two_sample_mean_gap(d1, d2)));
}

TEST_CASE("ratio estimate on the three-site complete graph brackets 4/3") {
    EstimatorConfig cfg;
    cfg.reps = 5'000;
    RatioEstimate r = estimate_propagation_ratio(make_complete(3), FamilyHint::Complete, cfg);
    REQUIRE(r.denom_exact.has_value());
    CHECK(*r.denom_exact == 3);
    CHECK(r.denominator_half_width() == 0.0);
    CHECK_FALSE(r.min_over_sites);
    CHECK(r.ci_low() <= 4.0 / 3);
    CHECK(r.ci_high() >= 4.0 / 3);
    CHECK(r.ratio() == doctest::Approx(4.0 / 3).epsilon(0.05));
}

TEST_CASE("ratio estimate on the two-leaf star brackets 5/3") {
    EstimatorConfig cfg;
    cfg.reps = 10'000;
    RatioEstimate r = estimate_propagation_ratio(make_star(2), FamilyHint::Star, cfg);
    REQUIRE(r.denom_exact.has_value());
    CHECK(*r.denom_exact == 3);
    double exact = to_double(star_ratio(2));
    CHECK(r.ci_low() <= exact);
    CHECK(r.ci_high() >= exact);
}

TEST_CASE("family hints validate the graph shape") {
    EstimatorConfig cfg;
    cfg.reps = 10;
    CHECK_THROWS_AS(estimate_propagation_ratio(make_star(3), FamilyHint::Complete, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_propagation_ratio(make_complete(4), FamilyHint::Star, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_propagation_ratio(make_star(3), FamilyHint::Ring, cfg),
                    std::invalid_argument);
}

TEST_CASE("transitive hint estimates the denominator at site 0") {
    EstimatorConfig cfg;
    cfg.reps = 2'000;
    RatioEstimate r = estimate_propagation_ratio(make_ring(6), FamilyHint::Transitive, cfg);
    REQUIRE(r.denom_estimate.has_value());
    CHECK_FALSE(r.denom_exact.has_value());
    CHECK_FALSE(r.min_over_sites);
    CHECK(r.denom_estimate->quantity() == "tau_0");
    CHECK(r.ratio() > 1.0);
    CHECK(r.ratio() < 2.0);
}

TEST_CASE("unhinted ratio takes the minimum over per-site estimates") {
    Graph path(3, {{0, 1}, {1, 2}});
    EstimatorConfig cfg;
    cfg.reps = 3'000;
    RatioEstimate r = estimate_propagation_ratio(path, FamilyHint::None, cfg);
    REQUIRE(r.denom_estimate.has_value());
    CHECK(r.min_over_sites);
    // reps are split across the three sites
    CHECK(r.denom_estimate->reps() == 1'000);
    // the middle site's information spreads fastest on a path
    CHECK(r.denom_estimate->quantity() == "tau_1");
    CHECK(r.ratio() > 1.0);
}

TEST_CASE("confidence intervals cover the true mean at the stated level") {
    // 100 independent masters; each 95% interval should cover the exact value
    // 4 about 95 times. Fewer than 90 would be a miscalibrated interval.
    StopSpec spec;
    spec.want_total = true;
    int covered = 0;
    for (uint64_t master = 1; master <= 100; ++master) {
        EstimatorConfig cfg;
        cfg.reps = 1'000;
        cfg.master_seed = master;
        EstimateSet set = estimate(make_complete(3), Scenario::distinct_all(), spec, cfg);
        if (set.total->ci_low() <= 4.0 && 4.0 <= set.total->ci_high()) ++covered;
    }
    CHECK(covered >= 90);
    CHECK(covered <= 100);
}
