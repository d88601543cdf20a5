#include <iostream>

#include <CLI11.hpp>

#include "gfl/cli_spec.hpp"
#include "gfl/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"multi-information spreading over graph edges: simulation, exact analysis, "
                 "and claim verification"};
    app.require_subcommand(1);

    gfl::ExperimentSpec spec;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--format", spec.format, "output format: csv or json");
        cmd->add_option("--out", spec.out, "write results to this path instead of stdout");
        cmd->add_flag("--dump-spec", spec.dump_spec,
                      "print the parsed run spec as JSON and exit");
    };
    auto add_estimator = [&](CLI::App* cmd) {
        cmd->add_option("--reps", spec.reps, "replication count");
        cmd->add_option("--seed", spec.seed, "master seed");
        cmd->add_option("--step-cap", spec.step_cap, "abort any run past this many steps");
        cmd->add_option("--ci-level", spec.ci_level, "confidence level in (0, 1)");
        cmd->add_option("--threads", spec.threads, "worker threads (0 = all cores)");
    };
    auto add_graph = [&](CLI::App* cmd, bool with_n) {
        cmd->add_option("--family", spec.family, "complete | star | ring | er");
        if (with_n) cmd->add_option("--n", spec.n, "site count");
        cmd->add_option("--leaves", spec.leaves, "star leaf count");
        cmd->add_option("--p", spec.p, "er edge probability");
        cmd->add_option("--graph-seed", spec.graph_seed, "er generation seed");
        cmd->add_option("--graph", spec.graph_path, "edge-list file instead of a family");
    };

    CLI::App* gen = app.add_subcommand("gen", "emit a canonical edge list");
    add_graph(gen, true);
    gen->add_option("--seed", spec.graph_seed, "er generation seed (alias of --graph-seed)");
    add_output(gen);

    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo estimates of stopping times");
    add_graph(simulate, true);
    simulate->add_option("--scenario", spec.scenario, "distinct | dupfirst");
    simulate->add_option("--target", spec.targets,
                         "information subset such as 0 or 0,2 (repeatable)");
    simulate->add_flag("--total", spec.total, "estimate the full-coverage stopping time");
    simulate->add_option("--y-site", spec.y_sites,
                         "site whose first fully informed step is wanted (repeatable)");
    add_estimator(simulate);
    add_output(simulate);

    CLI::App* exact = app.add_subcommand("exact", "closed-form values, exact");
    exact->add_option("--formula", spec.formula,
                      "m1 | delta | star-total | star-hub | star-ratio | ring-m1 | harmonic "
                      "| bounds | ratio-bounds");
    exact->add_option("--n", spec.n, "site count (order for harmonic)");
    exact->add_option("--leaves", spec.leaves, "star leaf count");
    exact->add_option("--k", spec.k, "stage index for delta");
    add_output(exact);

    CLI::App* oracle = app.add_subcommand("oracle", "exact chain solves on tiny instances");
    oracle->add_option("--n", spec.n, "site count (complete graph unless --family given)");
    add_graph(oracle, false);
    oracle->add_flag("--tables", spec.tables, "emit the full covering-time tables");
    oracle->add_option("--cdf", spec.cdf, "total | single | site");
    oracle->add_option("--site", spec.site, "site index for --cdf single/site");
    oracle->add_option("--horizon", spec.horizon, "CDF horizon in steps");
    oracle->add_option("--scenario", spec.scenario, "distinct | dupfirst");
    oracle->add_flag("--float-path", spec.float_path,
                     "double-precision tables past the exact size cap");
    oracle->add_option("--state-cap", spec.state_cap, "reachable-configuration cap");
    add_output(oracle);

    CLI::App* verify = app.add_subcommand("verify", "run the built-in claim checks");
    verify->add_option("--suite", spec.suite, "exact | mc | all");
    verify->add_option("--reps", spec.reps,
                       "override every statistical check's replication count");
    verify->add_option("--seed", spec.seed, "master seed for the statistical checks");
    verify->add_flag("--fresh-seed", spec.fresh_seed,
                     "draw a fresh master seed instead of the pinned default");
    verify->add_option("--threads", spec.threads, "worker threads (0 = all cores)");
    add_output(verify);

    CLI::App* sweep = app.add_subcommand("ratio-sweep", "propagation ratios across sizes");
    sweep->add_option("--family", spec.family, "complete | star | ring (or --graph PATH)");
    sweep->add_option("--n", spec.sizes, "size list, e.g. 64,256,1024")->delimiter(',');
    sweep->add_option("--leaves", spec.sizes, "leaf-count list for star")->delimiter(',');
    sweep->add_option("--graph", spec.graph_path, "edge-list file");
    add_estimator(sweep);
    add_output(sweep);

    CLI::App* convert =
        app.add_subcommand("convert", "discrete mean to continuous flooding expectation");
    convert->add_option("--discrete-mean", spec.discrete_mean,
                        "discrete-step mean: integer, fraction p/q, or decimal");
    convert->add_option("--edges", spec.edges_count, "edge count dividing the mean");
    add_graph(convert, true);
    add_estimator(convert);
    add_output(convert);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? gfl::kExitOk : gfl::kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    spec.command = sub->get_name();
    // For verify, an absent --reps means "use each check's own size".
    if (spec.command == "verify" && sub->count("--reps") == 0) spec.reps = 0;

    return gfl::run_experiment(spec, std::cout, std::cerr);
}
