#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace gfl {

// Everything a CLI invocation can ask for, flattened. Round-trips through
// JSON so `--dump-spec` output can reproduce the run.
struct ExperimentSpec {
    std::string command;  // gen | simulate | exact | oracle | verify | ratio-sweep | convert

    // graph selection
    std::string family;  // complete | star | ring | er | file
    int n = 0;
    int leaves = 0;
    double p = 0.0;
    uint64_t graph_seed = 0;
    std::string graph_path;
    std::vector<int> sizes;  // ratio-sweep: n (or leaves) list

    // scenario and stopping times
    std::string scenario = "distinct";  // distinct | dupfirst
    std::vector<std::string> targets;   // information subsets, e.g. "0" or "0,2"
    bool total = false;
    std::vector<int> y_sites;

    // estimator
    long long reps = 10'000;
    uint64_t seed = 42;
    long long step_cap = 100'000'000;
    double ci_level = 0.95;
    int threads = 0;
    bool fresh_seed = false;

    // oracle
    bool tables = false;
    std::string cdf;  // "" | total | single | site
    int site = 0;
    int horizon = 50;
    bool float_path = false;
    long long state_cap = 200'000;

    // exact
    std::string formula;
    int k = 0;

    // convert; the mean stays textual ("4", "7/2", "3.25") so integer and
    // fraction inputs convert exactly
    std::string discrete_mean;
    long long edges_count = 0;

    // verify
    std::string suite = "all";

    // output
    std::string format = "csv";  // csv | json
    std::string out;
    bool dump_spec = false;

    bool operator==(const ExperimentSpec&) const = default;
};

nlohmann::ordered_json spec_to_json(const ExperimentSpec& spec);
ExperimentSpec spec_from_json(const nlohmann::json& j);

}  // namespace gfl
