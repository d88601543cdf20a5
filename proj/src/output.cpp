#include "gfl/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "gfl/version.hpp"

namespace gfl {

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[40];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

namespace {

// Fields holding free text (verify messages) may contain commas or quotes.
std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

nlohmann::ordered_json row_json(const ResultRow& row) {
    nlohmann::ordered_json j;
    j["quantity"] = row.quantity;
    j["graph"] = row.graph;
    j["n"] = row.n;
    j["scenario"] = row.scenario;
    j["mean"] = row.mean;
    j["stderr"] = row.stderr_value;
    j["ci_low"] = row.ci_low;
    j["ci_high"] = row.ci_high;
    j["reps"] = row.reps;
    if (row.seed)
        j["seed"] = *row.seed;
    else
        j["seed"] = nullptr;
    if (row.fraction) {
        j["fraction"] = *row.fraction;
        j["decimal"] = row.mean;
    }
    return j;
}

}  // namespace

void write_rows_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
    os << "quantity,graph,n,scenario,mean,stderr,ci_low,ci_high,reps,seed\n";
    for (const ResultRow& row : rows) {
        os << row.quantity << ',' << row.graph << ',' << row.n << ',' << row.scenario << ','
           << format_double(row.mean) << ',' << format_double(row.stderr_value) << ','
           << format_double(row.ci_low) << ',' << format_double(row.ci_high) << ',' << row.reps
           << ',';
        if (row.seed) os << *row.seed;
        os << '\n';
    }
}

void write_rows_json(std::ostream& os, const ExperimentSpec& spec,
                     const std::vector<ResultRow>& rows) {
    nlohmann::ordered_json j;
    j["meta"] = meta_json(spec);
    j["results"] = nlohmann::ordered_json::array();
    for (const ResultRow& row : rows) j["results"].push_back(row_json(row));
    os << j.dump(2) << '\n';
}

void write_ratio_csv(std::ostream& os, const std::vector<RatioRow>& rows) {
    os << "family,n,ratio,ci_low,ci_high,bound_lower,bound_upper,reps,seed,denom_biased\n";
    for (const RatioRow& row : rows) {
        os << row.family << ',' << row.n << ',' << format_double(row.ratio) << ','
           << format_double(row.ci_low) << ',' << format_double(row.ci_high) << ','
           << format_double(row.bound_lower) << ',' << format_double(row.bound_upper) << ','
           << row.reps << ',' << row.seed << ',' << (row.denom_biased ? "true" : "false")
           << '\n';
    }
}

void write_ratio_json(std::ostream& os, const ExperimentSpec& spec,
                      const std::vector<RatioRow>& rows) {
    nlohmann::ordered_json j;
    j["meta"] = meta_json(spec);
    j["results"] = nlohmann::ordered_json::array();
    for (const RatioRow& row : rows) {
        nlohmann::ordered_json r;
        r["family"] = row.family;
        r["n"] = row.n;
        r["ratio"] = row.ratio;
        r["ci_low"] = row.ci_low;
        r["ci_high"] = row.ci_high;
        r["bound_lower"] = row.bound_lower;
        r["bound_upper"] = row.bound_upper;
        r["reps"] = row.reps;
        r["seed"] = row.seed;
        r["denom_biased"] = row.denom_biased;
        j["results"].push_back(std::move(r));
    }
    os << j.dump(2) << '\n';
}

void write_verify_csv(std::ostream& os, const VerifyReport& report) {
    os << "check,status,measured,expected,provenance\n";
    for (const VerifyCheck& check : report.checks) {
        os << csv_escape(check.name) << ',' << (check.pass ? "pass" : "FAIL") << ','
           << csv_escape(check.measured) << ',' << csv_escape(check.expected) << ','
           << check.provenance << '\n';
    }
}

void write_verify_json(std::ostream& os, const ExperimentSpec& spec,
                       const VerifyReport& report) {
    nlohmann::ordered_json j;
    j["meta"] = meta_json(spec);
    j["checks"] = nlohmann::ordered_json::array();
    for (const VerifyCheck& check : report.checks) {
        nlohmann::ordered_json c;
        c["check"] = check.name;
        c["status"] = check.pass ? "pass" : "FAIL";
        c["measured"] = check.measured;
        c["expected"] = check.expected;
        c["provenance"] = check.provenance;
        j["checks"].push_back(std::move(c));
    }
    j["all_pass"] = report.all_pass();
    os << j.dump(2) << '\n';
}

nlohmann::ordered_json meta_json(const ExperimentSpec& spec) {
    nlohmann::ordered_json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    // Concurrency never changes results, so the echoed spec normalizes the
    // thread count; outputs stay byte-identical across thread settings.
    ExperimentSpec echoed = spec;
    echoed.threads = 0;
    meta["spec"] = spec_to_json(echoed);
    return meta;
}

}  // namespace gfl
