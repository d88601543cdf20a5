#include "gfl/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "gfl/formulas.hpp"

namespace gfl {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("quantile needs p strictly inside (0, 1)");

    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double plow = 0.02425;

    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the exact CDF brings the error near machine eps.
    constexpr double sqrt2 = 1.4142135623730950488;
    constexpr double sqrt2pi = 2.5066282746310005024;
    const double err = 0.5 * std::erfc(-x / sqrt2) - p;
    const double u = err * sqrt2pi * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

Estimate::Estimate(std::string quantity, double ci_level, uint64_t master_seed)
    : quantity_(std::move(quantity)), ci_level_(ci_level), master_seed_(master_seed) {
    if (!(ci_level > 0.0 && ci_level < 1.0))
        throw std::invalid_argument("confidence level must lie strictly inside (0, 1)");
}

void Estimate::add(long long value) {
    if (value < 0) throw std::invalid_argument("step counts are nonnegative");
    ++reps_;
    sum_ += value;
    sum_sq_ += static_cast<unsigned __int128>(value) * static_cast<unsigned __int128>(value);
}

double Estimate::mean() const {
    if (reps_ == 0) return 0.0;
    return static_cast<double>(sum_) / static_cast<double>(reps_);
}

double Estimate::variance() const {
    if (reps_ < 2) return 0.0;
    // reps*sum_sq - sum^2 is exact in 128 bits and nonnegative.
    const unsigned __int128 scaled =
        static_cast<unsigned __int128>(reps_) * sum_sq_ -
        static_cast<unsigned __int128>(sum_) * static_cast<unsigned __int128>(sum_);
    return static_cast<double>(scaled) /
           (static_cast<double>(reps_) * static_cast<double>(reps_ - 1));
}

double Estimate::standard_error() const {
    if (reps_ == 0) return 0.0;
    return std::sqrt(variance() / static_cast<double>(reps_));
}

double Estimate::ci_half_width() const {
    return normal_quantile(0.5 + ci_level_ / 2.0) * standard_error();
}

Estimate merge(const Estimate& a, const Estimate& b) {
    if (a.quantity_ != b.quantity_ || a.ci_level_ != b.ci_level_ ||
        a.master_seed_ != b.master_seed_)
        throw std::invalid_argument("refusing to merge estimates of different quantities");
    Estimate out(a.quantity_, a.ci_level_, a.master_seed_);
    out.reps_ = a.reps_ + b.reps_;
    out.sum_ = a.sum_ + b.sum_;
    out.sum_sq_ = a.sum_sq_ + b.sum_sq_;
    return out;
}

double two_sample_mean_gap(const Estimate& a, const Estimate& b) {
    const double se = std::sqrt(a.standard_error() * a.standard_error() +
                                b.standard_error() * b.standard_error());
    const double gap = std::abs(a.mean() - b.mean());
    if (se == 0.0) return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return gap / se;
}

namespace {

std::string target_name(const std::vector<int>& infos) {
    std::string name = "tau_";
    for (size_t i = 0; i < infos.size(); ++i) {
        if (i) name += '+';
        name += std::to_string(infos[i]);
    }
    return name;
}

EstimateSet blank_set(const StopSpec& spec, const EstimatorConfig& cfg) {
    EstimateSet set;
    for (const auto& target : spec.targets)
        set.targets.emplace_back(target_name(target), cfg.ci_level, cfg.master_seed);
    if (spec.want_total) set.total.emplace("tau_total", cfg.ci_level, cfg.master_seed);
    for (int site : spec.y_sites)
        set.y_sites.emplace_back("y_" + std::to_string(site), cfg.ci_level, cfg.master_seed);
    return set;
}

void accumulate(EstimateSet& set, const RunRecord& record) {
    for (size_t j = 0; j < set.targets.size(); ++j) set.targets[j].add(record.tau_target[j]);
    if (set.total) set.total->add(*record.tau_total);
    for (size_t j = 0; j < set.y_sites.size(); ++j) set.y_sites[j].add(record.y_first_full[j]);
}

}  // namespace

EstimateSet estimate(const Graph& g, const Scenario& s, const StopSpec& spec,
                     const EstimatorConfig& cfg) {
    if (cfg.reps < 1) throw std::invalid_argument("need at least one replication");
    if (spec.targets.empty() && !spec.want_total && spec.y_sites.empty())
        throw std::invalid_argument("nothing to estimate: no stopping time requested");

    StopSpec local = spec;
    local.step_cap = cfg.step_cap;
    local.record_trajectory = false;

    int threads = cfg.threads > 0
                      ? cfg.threads
                      : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = static_cast<int>(std::min<long long>(threads, cfg.reps));

    struct Block {
        EstimateSet set;
        std::exception_ptr error;
    };
    std::vector<Block> blocks(threads);

    auto work = [&](int block_index, long long lo, long long hi) {
        Block& block = blocks[block_index];
        block.set = blank_set(local, cfg);
        try {
            for (long long i = lo; i < hi; ++i) {
                const RunRecord record = run(g, s, local, derive_seed(cfg.master_seed, i));
                accumulate(block.set, record);
            }
        } catch (...) {
            block.error = std::current_exception();
        }
    };

    const long long base = cfg.reps / threads;
    const long long extra = cfg.reps % threads;
    if (threads == 1) {
        work(0, 0, cfg.reps);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        long long lo = 0;
        for (int b = 0; b < threads; ++b) {
            const long long hi = lo + base + (b < extra ? 1 : 0);
            pool.emplace_back(work, b, lo, hi);
            lo = hi;
        }
        for (auto& t : pool) t.join();
    }

    // Blocks cover ascending replication ranges, so the first stored error is
    // the one with the smallest failing replication index.
    for (const Block& block : blocks)
        if (block.error) std::rethrow_exception(block.error);

    EstimateSet out = std::move(blocks[0].set);
    for (int b = 1; b < threads; ++b) {
        const EstimateSet& part = blocks[b].set;
        for (size_t j = 0; j < out.targets.size(); ++j)
            out.targets[j] = merge(out.targets[j], part.targets[j]);
        if (out.total) *out.total = merge(*out.total, *part.total);
        for (size_t j = 0; j < out.y_sites.size(); ++j)
            out.y_sites[j] = merge(out.y_sites[j], part.y_sites[j]);
    }
    return out;
}

double RatioEstimate::denominator_mean() const {
    if (denom_exact) return to_double(*denom_exact);
    return denom_estimate->mean();
}

double RatioEstimate::denominator_half_width() const {
    if (denom_exact) return 0.0;
    return denom_estimate->ci_half_width();
}

double RatioEstimate::ci_low() const {
    const double den_hi = denominator_mean() + denominator_half_width();
    if (den_hi <= 0.0) return 0.0;
    return numerator.ci_low() / den_hi;
}

double RatioEstimate::ci_high() const {
    const double den_lo = denominator_mean() - denominator_half_width();
    if (den_lo <= 0.0) return std::numeric_limits<double>::infinity();
    return numerator.ci_high() / den_lo;
}

namespace {

// Distinct sub-streams so the total-time and single-information runs never
// share a replication seed.
constexpr uint64_t kTotalStream = 0x746f74616c2d3030ull;
constexpr uint64_t kSingleStream = 0x73696e676c652d30ull;

Estimate estimate_single_info(const Graph& g, int site, const EstimatorConfig& cfg) {
    StopSpec spec;
    spec.targets = {{site}};
    EstimateSet set = estimate(g, Scenario::distinct_all(), spec, cfg);
    return set.targets[0];
}

}  // namespace

RatioEstimate estimate_propagation_ratio(const Graph& g, FamilyHint hint,
                                         const EstimatorConfig& cfg) {
    const int n = g.site_count();
    RatioEstimate out;

    EstimatorConfig total_cfg = cfg;
    total_cfg.master_seed = derive_seed(cfg.master_seed, kTotalStream);
    StopSpec total_spec;
    total_spec.want_total = true;
    out.numerator = *estimate(g, Scenario::distinct_all(), total_spec, total_cfg).total;

    EstimatorConfig single_cfg = cfg;
    single_cfg.master_seed = derive_seed(cfg.master_seed, kSingleStream);

    switch (hint) {
        case FamilyHint::Complete:
            if (!(g == make_complete(n)))
                throw std::invalid_argument("complete-family hint given a non-complete graph");
            out.denom_exact = single_info_expectation_complete(n);
            break;
        case FamilyHint::Star:
            if (!(g == make_star(n - 1)))
                throw std::invalid_argument(
                    "star-family hint needs the hub at site 0 with edges to every leaf");
            out.denom_exact = star_hub_expectation(n - 1);
            break;
        case FamilyHint::Ring:
            if (!(g == make_ring(n)))
                throw std::invalid_argument("ring-family hint given a non-ring layout");
            out.denom_exact = ring_single_info_expectation(n);
            break;
        case FamilyHint::Transitive:
            out.denom_estimate = estimate_single_info(g, 0, single_cfg);
            break;
        case FamilyHint::None: {
            const long long per_site = std::max<long long>(1, cfg.reps / n);
            out.min_over_sites = true;
            for (int site = 0; site < n; ++site) {
                EstimatorConfig site_cfg = single_cfg;
                site_cfg.master_seed = derive_seed(single_cfg.master_seed, site);
                site_cfg.reps = per_site;
                Estimate candidate = estimate_single_info(g, site, site_cfg);
                if (!out.denom_estimate || candidate.mean() < out.denom_estimate->mean())
                    out.denom_estimate = std::move(candidate);
            }
            break;
        }
    }
    return out;
}

}  // namespace gfl
