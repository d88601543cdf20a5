#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gfl/cli_spec.hpp"
#include "gfl/verify.hpp"

namespace gfl {

// Shortest decimal rendering that parses back to the same double.
std::string format_double(double value);

// One row of the shared quantity schema:
// quantity,graph,n,scenario,mean,stderr,ci_low,ci_high,reps,seed
struct ResultRow {
    std::string quantity;
    std::string graph;    // family name, "file", or "-"
    int n = 0;
    std::string scenario; // "distinct" | "dupfirst" | "-"
    double mean = 0.0;
    double stderr_value = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    long long reps = 0;
    std::optional<uint64_t> seed;
    std::optional<std::string> fraction;  // lossless rational, JSON output only
};

struct RatioRow {
    std::string family;
    int n = 0;
    double ratio = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double bound_lower = 0.0;
    double bound_upper = 0.0;
    long long reps = 0;
    uint64_t seed = 0;
    bool denom_biased = false;  // denominator is a min of estimates, biased low
};

void write_rows_csv(std::ostream& os, const std::vector<ResultRow>& rows);
void write_rows_json(std::ostream& os, const ExperimentSpec& spec,
                     const std::vector<ResultRow>& rows);

void write_ratio_csv(std::ostream& os, const std::vector<RatioRow>& rows);
void write_ratio_json(std::ostream& os, const ExperimentSpec& spec,
                      const std::vector<RatioRow>& rows);

void write_verify_csv(std::ostream& os, const VerifyReport& report);
void write_verify_json(std::ostream& os, const ExperimentSpec& spec, const VerifyReport& report);

nlohmann::ordered_json meta_json(const ExperimentSpec& spec);

}  // namespace gfl
