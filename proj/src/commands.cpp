#include "gfl/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gfl/formulas.hpp"
#include "gfl/graph.hpp"
#include "gfl/montecarlo.hpp"
#include "gfl/oracle.hpp"
#include "gfl/output.hpp"
#include "gfl/verify.hpp"

namespace gfl {
namespace {

// Bad invocations exit 2; runtime failures (bad data, caps, disconnection)
// exit 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

long long oracle_size_cap() {
    const char* env = std::getenv("GFL_ORACLE_CAP");
    if (!env || !*env) return kDefaultOracleSizeCap;
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (*end != '\0' || value < 2)
        throw UsageError("GFL_ORACLE_CAP must be an integer >= 2");
    return value;
}

std::string graph_label(const ExperimentSpec& spec) {
    return spec.family.empty() ? "file" : spec.family;
}

Graph build_graph(const ExperimentSpec& spec) {
    const std::string family =
        spec.family.empty() && !spec.graph_path.empty() ? "file" : spec.family;
    if (family == "complete") {
        if (spec.n < 2) throw UsageError("--n (>= 2) is required for the complete family");
        return make_complete(spec.n);
    }
    if (family == "star") {
        if (spec.leaves < 1) throw UsageError("--leaves (>= 1) is required for the star family");
        return make_star(spec.leaves);
    }
    if (family == "ring") {
        if (spec.n < 3) throw UsageError("--n (>= 3) is required for the ring family");
        return make_ring(spec.n);
    }
    if (family == "er") {
        if (spec.n < 2 || spec.p <= 0.0 || spec.p > 1.0)
            throw UsageError("the er family needs --n >= 2 and --p in (0, 1]");
        return make_erdos_renyi(spec.n, spec.p, spec.graph_seed);
    }
    if (family == "file") {
        if (spec.graph_path.empty()) throw UsageError("--graph PATH is required");
        std::ifstream in(spec.graph_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read graph file " + spec.graph_path);
        std::ostringstream text;
        text << in.rdbuf();
        return from_edge_list(text.str());
    }
    throw UsageError("unknown graph family '" + family +
                     "' (use complete, star, ring, er, or --graph PATH)");
}

Scenario scenario_from(const ExperimentSpec& spec) {
    if (spec.scenario == "distinct") return Scenario::distinct_all();
    if (spec.scenario == "dupfirst") return Scenario::duplicated_first();
    throw UsageError("unknown scenario '" + spec.scenario + "' (use distinct or dupfirst)");
}

std::vector<std::vector<int>> parse_targets(const std::vector<std::string>& raw) {
    std::vector<std::vector<int>> targets;
    for (const std::string& text : raw) {
        std::vector<int> infos;
        size_t pos = 0;
        while (pos <= text.size()) {
            const size_t comma = std::min(text.find(',', pos), text.size());
            const std::string token = text.substr(pos, comma - pos);
            char* end = nullptr;
            const long value = std::strtol(token.c_str(), &end, 10);
            if (token.empty() || *end != '\0' || value < 0)
                throw UsageError("bad --target entry '" + text +
                                 "': expected comma-separated information indices");
            infos.push_back(static_cast<int>(value));
            pos = comma + 1;
        }
        targets.push_back(std::move(infos));
    }
    return targets;
}

EstimatorConfig estimator_config(const ExperimentSpec& spec) {
    EstimatorConfig cfg;
    cfg.reps = spec.reps;
    cfg.master_seed = spec.seed;
    cfg.step_cap = spec.step_cap;
    cfg.ci_level = spec.ci_level;
    cfg.threads = spec.threads;
    return cfg;
}

ResultRow exact_row(std::string quantity, std::string graph, int n, std::string scenario,
                    const Rational& value) {
    ResultRow row;
    row.quantity = std::move(quantity);
    row.graph = std::move(graph);
    row.n = n;
    row.scenario = std::move(scenario);
    row.mean = to_double(value);
    row.ci_low = row.mean;
    row.ci_high = row.mean;
    row.fraction = to_fraction(value);
    return row;
}

ResultRow estimate_row(const Estimate& estimate, const std::string& graph, int n,
                       const std::string& scenario, uint64_t seed) {
    ResultRow row;
    row.quantity = estimate.quantity();
    row.graph = graph;
    row.n = n;
    row.scenario = scenario;
    row.mean = estimate.mean();
    row.stderr_value = estimate.standard_error();
    row.ci_low = estimate.ci_low();
    row.ci_high = estimate.ci_high();
    row.reps = estimate.reps();
    row.seed = seed;
    return row;
}

void write_result_rows(const ExperimentSpec& spec, std::ostream& os,
                       const std::vector<ResultRow>& rows) {
    if (spec.format == "csv")
        write_rows_csv(os, rows);
    else if (spec.format == "json")
        write_rows_json(os, spec, rows);
    else
        throw UsageError("unknown format '" + spec.format + "' (use csv or json)");
}

int cmd_gen(const ExperimentSpec& spec, std::ostream& os) {
    const Graph g = build_graph(spec);
    os << to_edge_list(g);
    return kExitOk;
}

int cmd_simulate(const ExperimentSpec& spec, std::ostream& os) {
    const Graph g = build_graph(spec);
    const Scenario s = scenario_from(spec);

    StopSpec stop;
    stop.targets = parse_targets(spec.targets);
    stop.want_total = spec.total;
    stop.y_sites = spec.y_sites;
    if (stop.targets.empty() && !stop.want_total && stop.y_sites.empty())
        throw UsageError("request at least one stopping time: --total, --target, or --y-site");

    const EstimateSet set = estimate(g, s, stop, estimator_config(spec));

    std::vector<ResultRow> rows;
    const std::string label = graph_label(spec);
    for (const Estimate& e : set.targets)
        rows.push_back(estimate_row(e, label, g.site_count(), s.name(), spec.seed));
    if (set.total)
        rows.push_back(estimate_row(*set.total, label, g.site_count(), s.name(), spec.seed));
    for (const Estimate& e : set.y_sites)
        rows.push_back(estimate_row(e, label, g.site_count(), s.name(), spec.seed));
    write_result_rows(spec, os, rows);
    return kExitOk;
}

int cmd_exact(const ExperimentSpec& spec, std::ostream& os) {
    std::vector<ResultRow> rows;
    const std::string& f = spec.formula;
    auto need_n = [&](int floor) {
        if (spec.n < floor)
            throw UsageError("--n (>= " + std::to_string(floor) + ") is required for " + f);
        return spec.n;
    };
    auto need_leaves = [&] {
        if (spec.leaves < 1) throw UsageError("--leaves (>= 1) is required for " + f);
        return spec.leaves;
    };

    if (f == "m1") {
        const int n = need_n(2);
        rows.push_back(
            exact_row("m1", "complete", n, "distinct", single_info_expectation_complete(n)));
    } else if (f == "delta") {
        const int n = need_n(2);
        if (spec.k < 1 || spec.k >= n)
            throw UsageError("--k in [1, n-1] is required for delta");
        rows.push_back(exact_row("delta_" + std::to_string(spec.k), "complete", n, "distinct",
                                 delta_expectation(n, spec.k)));
    } else if (f == "star-total") {
        const int leaves = need_leaves();
        rows.push_back(exact_row("star_total", "star", leaves + 1, "distinct",
                                 star_total_expectation(leaves)));
    } else if (f == "star-hub") {
        const int leaves = need_leaves();
        rows.push_back(exact_row("star_hub", "star", leaves + 1, "distinct",
                                 star_hub_expectation(leaves)));
    } else if (f == "star-ratio") {
        const int leaves = need_leaves();
        rows.push_back(
            exact_row("star_ratio", "star", leaves + 1, "distinct", star_ratio(leaves)));
    } else if (f == "ring-m1") {
        const int n = need_n(3);
        rows.push_back(
            exact_row("ring_m1", "ring", n, "distinct", ring_single_info_expectation(n)));
    } else if (f == "harmonic") {
        const int n = need_n(0);
        rows.push_back(exact_row("harmonic", "-", n, "-", harmonic(n)));
    } else if (f == "bounds") {
        const int n = need_n(2);
        const BoundsReport b = total_time_bounds(n);
        rows.push_back(exact_row("bounds_lower", "complete", n, "distinct", b.lower));
        rows.push_back(exact_row("bounds_upper", "complete", n, "distinct", b.upper));
    } else if (f == "ratio-bounds") {
        const int n = need_n(2);
        const BoundsReport b = total_time_bounds(n);
        rows.push_back(exact_row("ratio_lower", "complete", n, "distinct", b.ratio_lower));
        rows.push_back(exact_row("ratio_upper", "complete", n, "distinct", b.ratio_upper));
    } else if (f.empty()) {
        throw UsageError("--formula is required");
    } else {
        throw UsageError("unknown formula '" + f +
                         "' (use m1, delta, star-total, star-hub, star-ratio, ring-m1, "
                         "harmonic, bounds, ratio-bounds)");
    }
    write_result_rows(spec, os, rows);
    return kExitOk;
}

int cmd_oracle(const ExperimentSpec& spec, std::ostream& os) {
    if (!spec.tables && spec.cdf.empty())
        throw UsageError("oracle needs --tables or --cdf");
    std::vector<ResultRow> rows;

    if (spec.tables) {
        if (spec.n < 2) throw UsageError("--n (>= 2) is required for --tables");
        if (spec.float_path) {
            const ExactTableDouble t = exact_tables_double(spec.n, spec.state_cap);
            for (int k = 1; k <= spec.n; ++k) {
                ResultRow row;
                row.quantity = "M_" + std::to_string(k);
                row.graph = "complete";
                row.n = spec.n;
                row.scenario = "distinct";
                row.mean = t.M[k - 1];
                row.ci_low = row.mean;
                row.ci_high = row.mean;
                rows.push_back(std::move(row));
            }
            for (size_t i = 0; i < t.A.size(); ++i) {
                ResultRow row;
                row.quantity = "A_" + std::to_string(i + 2);
                row.graph = "complete";
                row.n = spec.n;
                row.scenario = "dupfirst";
                row.mean = t.A[i];
                row.ci_low = row.mean;
                row.ci_high = row.mean;
                rows.push_back(std::move(row));
            }
        } else {
            const long long cap = oracle_size_cap();
            if (spec.n > cap)
                throw std::runtime_error(
                    "exact oracle capped at n = " + std::to_string(cap) +
                    "; raise GFL_ORACLE_CAP or pass --float-path");
            const ExactTable t = exact_tables(spec.n, static_cast<int>(cap), spec.state_cap);
            for (int k = 1; k <= spec.n; ++k)
                rows.push_back(exact_row("M_" + std::to_string(k), "complete", spec.n,
                                         "distinct", t.Mk(k)));
            for (int k = 2; k <= static_cast<int>(t.A.size()) + 1; ++k)
                rows.push_back(exact_row("A_" + std::to_string(k), "complete", spec.n,
                                         "dupfirst", t.Ak(k)));
        }
    }

    if (!spec.cdf.empty()) {
        if (spec.family.empty() && spec.n < 2)
            throw UsageError("--n (>= 2) is required for --cdf");
        const Graph g = spec.family.empty() ? make_complete(spec.n) : build_graph(spec);
        const Scenario s = scenario_from(spec);
        const int infos = s.info_count(g.site_count());

        OracleTarget target = OracleTarget::all_informed(infos);
        if (spec.cdf == "total") {
            // already built
        } else if (spec.cdf == "single") {
            if (spec.site < 0 || spec.site >= 32)
                throw UsageError("--site must lie in [0, 31] for --cdf single");
            target = OracleTarget::all_sites_hold(1u << spec.site);
        } else if (spec.cdf == "site") {
            target = OracleTarget::site_holds_all(spec.site);
        } else {
            throw UsageError("unknown --cdf kind '" + spec.cdf +
                             "' (use total, single, or site)");
        }

        const auto cdf = hitting_time_cdf(g, s, target, spec.horizon, spec.state_cap);
        const std::string label = spec.family.empty() ? "complete" : graph_label(spec);
        for (size_t t = 0; t < cdf.size(); ++t)
            rows.push_back(exact_row("P_le_" + std::to_string(t), label, g.site_count(),
                                     s.name(), cdf[t]));
    }

    write_result_rows(spec, os, rows);
    return kExitOk;
}

int cmd_verify(const ExperimentSpec& spec, std::ostream& os, std::ostream& err) {
    if (spec.suite != "exact" && spec.suite != "mc" && spec.suite != "all")
        throw UsageError("unknown suite '" + spec.suite + "' (use exact, mc, or all)");

    ExperimentSpec local = spec;
    if (spec.fresh_seed) {
        std::random_device device;
        local.seed = (static_cast<uint64_t>(device()) << 32) ^ device();
        err << "fresh master seed: " << local.seed << '\n';
    }

    VerifyReport report;
    if (local.suite == "exact" || local.suite == "all") {
        VerifyReport exact = verify_exact_suite();
        report.checks.insert(report.checks.end(), exact.checks.begin(), exact.checks.end());
    }
    if (local.suite == "mc" || local.suite == "all") {
        McVerifyOptions options;
        options.master_seed = local.seed;
        options.threads = local.threads;
        if (local.reps > 0) options.reps_override = local.reps;
        VerifyReport mc = verify_mc_suite(options);
        report.checks.insert(report.checks.end(), mc.checks.begin(), mc.checks.end());
    }

    if (local.format == "csv")
        write_verify_csv(os, report);
    else if (local.format == "json")
        write_verify_json(os, local, report);
    else
        throw UsageError("unknown format '" + local.format + "' (use csv or json)");

    if (!report.all_pass()) {
        for (const VerifyCheck& check : report.checks)
            if (!check.pass) err << "failed check: " << check.name << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_ratio_sweep(const ExperimentSpec& spec, std::ostream& os, std::ostream& err) {
    std::vector<RatioRow> rows;
    EstimatorConfig cfg = estimator_config(spec);

    const std::string family =
        spec.family.empty() && !spec.graph_path.empty() ? "file" : spec.family;
    if (family == "file") {
        const Graph g = build_graph(spec);
        const RatioEstimate r = estimate_propagation_ratio(g, FamilyHint::None, cfg);
        RatioRow row{"file",      g.site_count(), r.ratio(), r.ci_low(), r.ci_high(),
                     1.0,         2.0,            spec.reps, spec.seed,  r.min_over_sites};
        rows.push_back(row);
        if (r.min_over_sites)
            err << "note: denominator is a minimum over per-site estimates and is biased low\n";
    } else if (family == "complete" || family == "star" || family == "ring") {
        if (spec.sizes.empty())
            throw UsageError(family == "star" ? "--leaves SIZE[,SIZE...] is required"
                                              : "--n SIZE[,SIZE...] is required");
        for (const int size : spec.sizes) {
            Graph g = family == "complete" ? make_complete(size)
                      : family == "star"   ? make_star(size)
                                           : make_ring(size);
            const FamilyHint hint = family == "complete" ? FamilyHint::Complete
                                    : family == "star"   ? FamilyHint::Star
                                                         : FamilyHint::Ring;
            double bound_lower = 1.0, bound_upper = 2.0;
            if (family == "complete") {
                bound_lower = bounds_ratio_lower_double(size);
                bound_upper = 1.5;
            } else if (family == "star") {
                bound_lower = bound_upper = to_double(star_ratio(size));
            }
            EstimatorConfig size_cfg = cfg;
            size_cfg.master_seed = derive_seed(spec.seed, static_cast<uint64_t>(size));
            const RatioEstimate r = estimate_propagation_ratio(g, hint, size_cfg);
            RatioRow row{family,      size,        r.ratio(), r.ci_low(), r.ci_high(),
                         bound_lower, bound_upper, spec.reps, spec.seed,  r.min_over_sites};
            rows.push_back(row);
        }
    } else {
        throw UsageError("ratio-sweep families: complete, star, ring, or --graph PATH");
    }

    if (spec.format == "csv")
        write_ratio_csv(os, rows);
    else if (spec.format == "json")
        write_ratio_json(os, spec, rows);
    else
        throw UsageError("unknown format '" + spec.format + "' (use csv or json)");
    return kExitOk;
}

int cmd_convert(const ExperimentSpec& spec, std::ostream& os) {
    std::vector<ResultRow> rows;

    if (!spec.discrete_mean.empty()) {
        if (spec.edges_count < 1)
            throw UsageError("--edges (>= 1) is required with --discrete-mean");
        bool exact = true;
        Rational q;
        try {
            q = Rational(spec.discrete_mean, 10);
            if (q.get_den() == 0)
                throw UsageError("zero denominator in --discrete-mean");
            q.canonicalize();
        } catch (const std::invalid_argument&) {
            exact = false;
        }
        if (exact) {
            if (q < 0) throw UsageError("the discrete mean must be nonnegative");
            rows.push_back(exact_row("flood_continuous", "-", 0, "-",
                                     continuous_flooding_expectation(q, spec.edges_count)));
        } else {
            char* end = nullptr;
            const double value = std::strtod(spec.discrete_mean.c_str(), &end);
            if (*end != '\0' || value < 0)
                throw UsageError("cannot parse --discrete-mean '" + spec.discrete_mean +
                                 "' (use a nonnegative integer, fraction, or decimal)");
            ResultRow row;
            row.quantity = "flood_continuous";
            row.graph = "-";
            row.scenario = "-";
            row.mean = continuous_flooding_expectation(value, spec.edges_count);
            row.ci_low = row.mean;
            row.ci_high = row.mean;
            rows.push_back(std::move(row));
        }
    } else if (!spec.family.empty() || !spec.graph_path.empty()) {
        const Graph g = build_graph(spec);
        StopSpec stop;
        stop.want_total = true;
        const EstimateSet set = estimate(g, Scenario::distinct_all(), stop,
                                         estimator_config(spec));
        const Estimate& total = *set.total;
        const double edges = static_cast<double>(g.edge_count());
        ResultRow row;
        row.quantity = "flood_continuous";
        row.graph = graph_label(spec);
        row.n = g.site_count();
        row.scenario = "distinct";
        row.mean = total.mean() / edges;
        row.stderr_value = total.standard_error() / edges;
        row.ci_low = total.ci_low() / edges;
        row.ci_high = total.ci_high() / edges;
        row.reps = total.reps();
        row.seed = spec.seed;
        rows.push_back(std::move(row));
    } else {
        throw UsageError("convert needs --discrete-mean with --edges, or a graph to simulate");
    }

    write_result_rows(spec, os, rows);
    return kExitOk;
}

template <typename Fn>
int with_output(const ExperimentSpec& spec, std::ostream& fallback, Fn&& fn) {
    if (spec.out.empty()) return fn(fallback);
    std::ofstream file(spec.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output path " + spec.out);
    return fn(file);
}

}  // namespace

int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        if (spec.dump_spec) {
            out << spec_to_json(spec).dump(2) << '\n';
            return kExitOk;
        }
        if (spec.command == "gen")
            return with_output(spec, out, [&](std::ostream& os) { return cmd_gen(spec, os); });
        if (spec.command == "simulate")
            return with_output(spec, out,
                               [&](std::ostream& os) { return cmd_simulate(spec, os); });
        if (spec.command == "exact")
            return with_output(spec, out, [&](std::ostream& os) { return cmd_exact(spec, os); });
        if (spec.command == "oracle")
            return with_output(spec, out,
                               [&](std::ostream& os) { return cmd_oracle(spec, os); });
        if (spec.command == "verify")
            return with_output(spec, out,
                               [&](std::ostream& os) { return cmd_verify(spec, os, err); });
        if (spec.command == "ratio-sweep")
            return with_output(spec, out,
                               [&](std::ostream& os) { return cmd_ratio_sweep(spec, os, err); });
        if (spec.command == "convert")
            return with_output(spec, out,
                               [&](std::ostream& os) { return cmd_convert(spec, os); });
        throw UsageError("unknown command '" + spec.command + "'");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace gfl
