#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gfl {

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string measured;
    std::string expected;
    std::string provenance;  // "oracle" | "closed-form" | "monte-carlo"
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

// Exact checks: oracle tables vs closed forms, recurrence residuals, the
// ordering chains, reversal CDFs, bound containment, conversion. All
// zero-tolerance rational comparisons; runs in seconds.
VerifyReport verify_exact_suite();

struct McVerifyOptions {
    uint64_t master_seed = 42;
    int threads = 0;
    // When set, replaces each check's default replication count (smoke runs).
    std::optional<long long> reps_override;
};

// Statistical checks with 3-sigma margins: the two-times bound across graph
// families, the complete-graph ratio window, star ratios, the ring trend, the
// sampled reversal identity, and the continuous conversion at scale.
VerifyReport verify_mc_suite(const McVerifyOptions& options = {});

}  // namespace gfl
