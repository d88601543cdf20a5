#include "gfl/cli_spec.hpp"

namespace gfl {

nlohmann::ordered_json spec_to_json(const ExperimentSpec& spec) {
    nlohmann::ordered_json j;
    j["command"] = spec.command;
    j["family"] = spec.family;
    j["n"] = spec.n;
    j["leaves"] = spec.leaves;
    j["p"] = spec.p;
    j["graph_seed"] = spec.graph_seed;
    j["graph_path"] = spec.graph_path;
    j["sizes"] = spec.sizes;
    j["scenario"] = spec.scenario;
    j["targets"] = spec.targets;
    j["total"] = spec.total;
    j["y_sites"] = spec.y_sites;
    j["reps"] = spec.reps;
    j["seed"] = spec.seed;
    j["step_cap"] = spec.step_cap;
    j["ci_level"] = spec.ci_level;
    j["threads"] = spec.threads;
    j["fresh_seed"] = spec.fresh_seed;
    j["tables"] = spec.tables;
    j["cdf"] = spec.cdf;
    j["site"] = spec.site;
    j["horizon"] = spec.horizon;
    j["float_path"] = spec.float_path;
    j["state_cap"] = spec.state_cap;
    j["formula"] = spec.formula;
    j["k"] = spec.k;
    j["discrete_mean"] = spec.discrete_mean;
    j["edges_count"] = spec.edges_count;
    j["suite"] = spec.suite;
    j["format"] = spec.format;
    j["out"] = spec.out;
    j["dump_spec"] = spec.dump_spec;
    return j;
}

ExperimentSpec spec_from_json(const nlohmann::json& j) {
    ExperimentSpec spec;
    spec.command = j.value("command", spec.command);
    spec.family = j.value("family", spec.family);
    spec.n = j.value("n", spec.n);
    spec.leaves = j.value("leaves", spec.leaves);
    spec.p = j.value("p", spec.p);
    spec.graph_seed = j.value("graph_seed", spec.graph_seed);
    spec.graph_path = j.value("graph_path", spec.graph_path);
    spec.sizes = j.value("sizes", spec.sizes);
    spec.scenario = j.value("scenario", spec.scenario);
    spec.targets = j.value("targets", spec.targets);
    spec.total = j.value("total", spec.total);
    spec.y_sites = j.value("y_sites", spec.y_sites);
    spec.reps = j.value("reps", spec.reps);
    spec.seed = j.value("seed", spec.seed);
    spec.step_cap = j.value("step_cap", spec.step_cap);
    spec.ci_level = j.value("ci_level", spec.ci_level);
    spec.threads = j.value("threads", spec.threads);
    spec.fresh_seed = j.value("fresh_seed", spec.fresh_seed);
    spec.tables = j.value("tables", spec.tables);
    spec.cdf = j.value("cdf", spec.cdf);
    spec.site = j.value("site", spec.site);
    spec.horizon = j.value("horizon", spec.horizon);
    spec.float_path = j.value("float_path", spec.float_path);
    spec.state_cap = j.value("state_cap", spec.state_cap);
    spec.formula = j.value("formula", spec.formula);
    spec.k = j.value("k", spec.k);
    spec.discrete_mean = j.value("discrete_mean", spec.discrete_mean);
    spec.edges_count = j.value("edges_count", spec.edges_count);
    spec.suite = j.value("suite", spec.suite);
    spec.format = j.value("format", spec.format);
    spec.out = j.value("out", spec.out);
    spec.dump_spec = j.value("dump_spec", spec.dump_spec);
    return spec;
}

}  // namespace gfl
