#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfl/graph.hpp"
#include "gfl/process.hpp"
#include "gfl/rational.hpp"

namespace gfl {

// Inverse standard normal CDF (Acklam's rational approximation polished with
// one Halley step on erfc).
double normal_quantile(double p);

struct EstimatorConfig {
    long long reps = 10'000;
    uint64_t master_seed = 42;
    long long step_cap = 100'000'000;
    double ci_level = 0.95;
    int threads = 0;  // 0 = hardware concurrency
};

// Sample statistics over integer step counts. The accumulators are integer
// sums, so merging partial estimates is exact and the result is identical for
// any grouping of the same replications.
class Estimate {
public:
    Estimate() = default;
    Estimate(std::string quantity, double ci_level, uint64_t master_seed);

    void add(long long value);

    const std::string& quantity() const { return quantity_; }
    long long reps() const { return reps_; }
    uint64_t master_seed() const { return master_seed_; }
    double ci_level() const { return ci_level_; }

    double mean() const;
    double variance() const;  // sample variance (n-1 denominator)
    double standard_error() const;
    double ci_half_width() const;
    double ci_low() const { return mean() - ci_half_width(); }
    double ci_high() const { return mean() + ci_half_width(); }

    long long sum() const { return sum_; }
    unsigned __int128 sum_squares() const { return sum_sq_; }

    friend Estimate merge(const Estimate& a, const Estimate& b);

private:
    std::string quantity_;
    long long reps_ = 0;
    long long sum_ = 0;
    unsigned __int128 sum_sq_ = 0;
    double ci_level_ = 0.95;
    uint64_t master_seed_ = 0;
};

// Combines two estimates of the same quantity from disjoint seed ranges.
Estimate merge(const Estimate& a, const Estimate& b);

// |mean difference| in units of the combined standard error.
double two_sample_mean_gap(const Estimate& a, const Estimate& b);

struct EstimateSet {
    std::vector<Estimate> targets;  // parallel to StopSpec.targets
    std::optional<Estimate> total;
    std::vector<Estimate> y_sites;  // parallel to StopSpec.y_sites
};

// cfg.reps independent runs, replication i seeded by derive_seed(master, i),
// one Estimate per requested stopping time. Replications may execute on
// several threads; the result is bit-identical at any thread count.
EstimateSet estimate(const Graph& g, const Scenario& s, const StopSpec& spec,
                     const EstimatorConfig& cfg);

// How the ratio denominator min_x E[tau_x] is obtained.
enum class FamilyHint {
    None,        // min over per-site estimates, reps split across sites
    Transitive,  // one site's estimate stands for all
    Complete,    // exact closed form
    Star,        // exact hub closed form
    Ring,        // exact closed form
};

struct RatioEstimate {
    Estimate numerator;  // total propagation time
    std::optional<Estimate> denom_estimate;
    std::optional<Rational> denom_exact;
    bool min_over_sites = false;  // denominator is a min of estimates (biased low)

    double denominator_mean() const;
    double denominator_half_width() const;
    double ratio() const { return numerator.mean() / denominator_mean(); }
    // Conservative interval arithmetic on [mean +- hw] / [mean -+ hw].
    double ci_low() const;
    double ci_high() const;
};

RatioEstimate estimate_propagation_ratio(const Graph& g, FamilyHint hint,
                                         const EstimatorConfig& cfg);

}  // namespace gfl
