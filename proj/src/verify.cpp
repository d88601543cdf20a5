#include "gfl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gfl/formulas.hpp"
#include "gfl/graph.hpp"
#include "gfl/montecarlo.hpp"
#include "gfl/oracle.hpp"
#include "gfl/rng.hpp"

namespace gfl {

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.pass; });
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }

// Single information placed at site 0; the other sites start empty.
Scenario lone_info(int sites) {
    std::vector<std::vector<int>> sets(sites);
    sets[0] = {0};
    return Scenario::custom(1, std::move(sets));
}

std::string chain_string(const std::vector<Rational>& values) {
    std::string s;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) s += " <= ";
        s += to_fraction(values[i]);
    }
    return s;
}

bool non_decreasing(const std::vector<Rational>& values) {
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1]) return false;
    return true;
}

}  // namespace

VerifyReport verify_exact_suite() {
    VerifyReport report;
    auto add = [&](std::string name, bool pass, std::string measured, std::string expected,
                   std::string provenance) {
        report.checks.push_back({std::move(name), pass, std::move(measured),
                                 std::move(expected), std::move(provenance)});
    };

    std::vector<ExactTable> tables;
    for (int n = 2; n <= 4; ++n) tables.push_back(exact_tables(n));
    auto table = [&](int n) -> const ExactTable& { return tables[n - 2]; };

    for (int n = 2; n <= 4; ++n) {
        const Rational closed = single_info_expectation_complete(n);
        const Rational& oracle = table(n).Mk(1);
        add("single-info-closed-form-complete" + std::to_string(n), oracle == closed,
            to_fraction(oracle), to_fraction(closed), "oracle");
    }

    for (int leaves = 1; leaves <= 3; ++leaves) {
        const Rational closed = star_total_expectation(leaves);
        const Rational oracle = expected_hitting_time(
            make_star(leaves), Scenario::distinct_all(), OracleTarget::all_informed(leaves + 1));
        add("star-total-closed-form-leaves" + std::to_string(leaves), oracle == closed,
            to_fraction(oracle), to_fraction(closed), "oracle");
    }

    for (int n = 3; n <= 4; ++n) {
        for (int k = 2; k <= n - 1; ++k) {
            const Rational residual = recurrence_residual(n, k, table(n).Mk(k),
                                                          table(n).Ak(k + 1), table(n).Ak(k));
            add("first-step-identity-n" + std::to_string(n) + "-k" + std::to_string(k),
                residual == 0, to_fraction(residual), "0", "oracle");
        }
    }

    for (int n = 3; n <= 4; ++n) {
        const ExactTable& t = table(n);
        std::vector<Rational> interleaved;
        for (int k = 2; k <= n; ++k) {
            interleaved.push_back(t.Ak(k));
            interleaved.push_back(t.Mk(k - 1));
        }
        interleaved.push_back(t.Mk(n));
        add("interleaving-chain-n" + std::to_string(n), non_decreasing(interleaved),
            chain_string(interleaved), "non-decreasing", "oracle");
        add("monotone-covering-times-n" + std::to_string(n), non_decreasing(t.M),
            chain_string(t.M), "non-decreasing", "oracle");
        std::vector<Rational> a(t.A);
        add("monotone-duplicated-times-n" + std::to_string(n), non_decreasing(a),
            chain_string(a), "non-decreasing", "oracle");
    }

    for (int n = 3; n <= 4; ++n) {
        const BoundsReport bounds = total_time_bounds(n);
        const Rational& total = table(n).Mk(n);
        add("total-time-bounds-n" + std::to_string(n),
            bounds.lower <= total && total <= bounds.upper, to_fraction(total),
            "[" + to_fraction(bounds.lower) + ", " + to_fraction(bounds.upper) + "]",
            "closed-form");
    }

    {
        const struct {
            const char* name;
            Graph graph;
        } instances[] = {
            {"complete3", make_complete(3)},
            {"path3", path3()},
            {"star3", make_star(3)},
        };
        for (const auto& inst : instances) {
            Rational worst = 0;
            for (int site = 0; site < inst.graph.site_count(); ++site) {
                const Rational gap = reversal_gap(inst.graph, site, 50);
                if (gap > worst) worst = gap;
            }
            add(std::string("reversal-cdf-gap-") + inst.name, worst == 0, to_fraction(worst),
                "0", "oracle");
        }
    }

    {
        const struct {
            const char* name;
            Graph graph;
        } instances[] = {
            {"complete2", make_complete(2)}, {"complete3", make_complete(3)},
            {"complete4", make_complete(4)}, {"path3", path3()},
            {"star3", make_star(3)},         {"ring4", make_ring(4)},
        };
        for (const auto& inst : instances) {
            ChainSolver solver(inst.graph, Scenario::distinct_all());
            const auto cdf = solver.hitting_time_cdf(
                OracleTarget::all_informed(inst.graph.site_count()), 50);
            const Rational deficit = 1 - cdf.back();
            add(std::string("cdf-near-absorption-") + inst.name,
                deficit < rational(1, 1000), to_fraction(deficit), "< 1/1000", "oracle");
        }
    }

    for (int n = 3; n <= 5; ++n) {
        const Rational closed = ring_single_info_expectation(n);
        const Rational oracle = expected_hitting_time(make_ring(n), lone_info(n),
                                                      OracleTarget::all_sites_hold(1u));
        add("ring-single-info-closed-form-n" + std::to_string(n), oracle == closed,
            to_fraction(oracle), to_fraction(closed), "oracle");
    }

    {
        const Rational converted = continuous_flooding_expectation(table(3).Mk(3), 3);
        add("continuous-conversion-complete3", converted == rational(4, 3),
            to_fraction(converted), "4/3", "oracle");
        const Rational unit = continuous_flooding_expectation(Rational(1), 1);
        add("continuous-conversion-unit", unit == 1, to_fraction(unit), "1", "closed-form");
    }

    return report;
}

namespace {

// Seed 0 already yields a connected 12-site p=0.4 graph (24 edges);
// pinned so the statistical suite always tests one fixed graph.
constexpr uint64_t kErdosGraphSeed = 0;

Estimate estimate_single(const Graph& g, int site, const EstimatorConfig& cfg) {
    StopSpec spec;
    spec.targets = {{site}};
    return estimate(g, Scenario::distinct_all(), spec, cfg).targets[0];
}

Estimate estimate_total(const Graph& g, const EstimatorConfig& cfg) {
    StopSpec spec;
    spec.want_total = true;
    return *estimate(g, Scenario::distinct_all(), spec, cfg).total;
}

}  // namespace

VerifyReport verify_mc_suite(const McVerifyOptions& options) {
    VerifyReport report;
    auto add = [&](std::string name, bool pass, std::string measured, std::string expected) {
        report.checks.push_back(
            {std::move(name), pass, std::move(measured), std::move(expected), "monte-carlo"});
    };
    auto reps = [&](long long dflt) {
        return options.reps_override ? *options.reps_override : dflt;
    };
    auto cfg_for = [&](uint64_t tag, long long rep_count) {
        EstimatorConfig cfg;
        cfg.reps = rep_count;
        cfg.master_seed = derive_seed(options.master_seed, tag);
        cfg.threads = options.threads;
        return cfg;
    };

    {
        const Graph g = make_complete(8);
        const Estimate tau = estimate_single(g, 0, cfg_for(11, reps(100'000)));
        const Estimate y = [&] {
            StopSpec spec;
            spec.y_sites = {0};
            return estimate(g, Scenario::distinct_all(), spec, cfg_for(12, reps(100'000)))
                .y_sites[0];
        }();
        const double gap = two_sample_mean_gap(tau, y);
        add("reversal-sampled-complete8", gap < 4.0,
            "spread=" + fmt(tau.mean()) + " gather=" + fmt(y.mean()) + " gap=" + fmt(gap),
            "standardized gap < 4");
    }

    {
        const struct {
            const char* name;
            Graph graph;
            uint64_t tag;
        } instances[] = {
            {"complete8", make_complete(8), 20},
            {"star8", make_star(8), 21},
            {"ring8", make_ring(8), 22},
            {"er12", make_erdos_renyi(12, 0.4, kErdosGraphSeed), 23},
        };
        for (const auto& inst : instances) {
            if (!is_connected(inst.graph)) {
                add(std::string("double-bound-") + inst.name, false, "graph disconnected",
                    "connected pinned graph");
                continue;
            }
            const uint64_t base = derive_seed(options.master_seed, inst.tag);
            EstimatorConfig total_cfg;
            total_cfg.reps = reps(20'000);
            total_cfg.threads = options.threads;
            total_cfg.master_seed = derive_seed(base, 0);
            const Estimate total = estimate_total(inst.graph, total_cfg);

            double worst = -std::numeric_limits<double>::infinity();
            int worst_site = -1;
            for (int site = 0; site < inst.graph.site_count(); ++site) {
                EstimatorConfig site_cfg = total_cfg;
                site_cfg.master_seed = derive_seed(base, 1 + site);
                const Estimate single = estimate_single(inst.graph, site, site_cfg);
                const double sigma =
                    std::sqrt(total.standard_error() * total.standard_error() +
                              4.0 * single.standard_error() * single.standard_error());
                const double excess = total.mean() - 2.0 * single.mean();
                const double margin =
                    sigma > 0.0 ? excess / sigma
                                : (excess > 0.0 ? std::numeric_limits<double>::infinity()
                                                : -std::numeric_limits<double>::infinity());
                if (margin > worst) {
                    worst = margin;
                    worst_site = site;
                }
            }
            add(std::string("double-bound-") + inst.name, worst <= 3.0,
                "worst site " + std::to_string(worst_site) + " standardized excess " + fmt(worst),
                "total <= 2 x single + 3 sigma at every site");
        }
    }

    RatioEstimate ratio1024;
    bool have1024 = false;
    std::vector<RatioEstimate> kept_ratios;
    for (const int n : {256, 1024}) {
        const uint64_t tag = n == 256 ? 31 : 32;
        const RatioEstimate ratio = estimate_propagation_ratio(
            make_complete(n), FamilyHint::Complete, cfg_for(tag, reps(2'000)));
        const double sigma_ratio = ratio.numerator.standard_error() / ratio.denominator_mean();
        const double lo = bounds_ratio_lower_double(n) - 3.0 * sigma_ratio;
        const double hi = 1.5 + 3.0 * sigma_ratio;
        add("ratio-window-complete" + std::to_string(n),
            ratio.ratio() >= lo && ratio.ratio() <= hi, fmt(ratio.ratio()),
            "[" + fmt(lo) + ", " + fmt(hi) + "]");
        kept_ratios.push_back(ratio);
        if (n == 1024) {
            ratio1024 = ratio;
            have1024 = true;
        }
    }

    for (const int leaves : {4, 16, 64}) {
        const RatioEstimate ratio = estimate_propagation_ratio(
            make_star(leaves), FamilyHint::Star, cfg_for(40 + leaves, reps(10'000)));
        const double exact = to_double(star_ratio(leaves));
        const double sigma_ratio = ratio.numerator.standard_error() / ratio.denominator_mean();
        add("ratio-star-leaves" + std::to_string(leaves),
            std::abs(ratio.ratio() - exact) <= 3.0 * sigma_ratio,
            fmt(ratio.ratio()) + " +- 3 sigma = " + fmt(3.0 * sigma_ratio), fmt(exact));
        kept_ratios.push_back(ratio);
    }

    {
        const RatioEstimate r16 = estimate_propagation_ratio(make_ring(16), FamilyHint::Ring,
                                                             cfg_for(51, reps(5'000)));
        const RatioEstimate r256 = estimate_propagation_ratio(make_ring(256), FamilyHint::Ring,
                                                              cfg_for(52, reps(5'000)));
        add("ratio-ring-trend", r256.ratio() < r16.ratio(),
            "n16=" + fmt(r16.ratio()) + " n256=" + fmt(r256.ratio()),
            "ratio at 256 strictly below ratio at 16");
        kept_ratios.push_back(r16);
        kept_ratios.push_back(r256);
    }

    if (have1024) {
        const int n = 1024;
        const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
        const double converted = ratio1024.numerator.mean() / pairs;
        const double target = 3.0 * std::log(static_cast<double>(n)) / n;
        const double sigma_ratio = ratio1024.numerator.standard_error() /
                                   ratio1024.denominator_mean();
        const double radius = (0.75 / harmonic_double(n - 1) + 6.0 * sigma_ratio) *
                              ratio1024.denominator_mean() / pairs;
        add("continuous-conversion-complete1024", std::abs(converted - target) <= radius,
            fmt(converted), fmt(target) + " +- " + fmt(radius));
    }

    {
        double worst = std::numeric_limits<double>::infinity();
        for (const RatioEstimate& r : kept_ratios) worst = std::min(worst, r.ci_high());
        add("ratio-floor", kept_ratios.empty() || worst >= 1.0, fmt(worst),
            "every ratio interval reaches 1");
    }

    return report;
}

}  // namespace gfl
