#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfl/graph.hpp"
#include "gfl/rng.hpp"

namespace gfl {

// Per-site information bitsets in machine words plus the step counter.
// Row x holds the informations site x knows; rows only ever gain bits.
struct InfoState {
    int sites = 0;
    int infos = 0;
    int words = 0;
    long long t = 0;
    std::vector<uint64_t> bits;  // sites rows of `words` words each

    InfoState(int site_count, int info_count);

    uint64_t* row(int site) { return bits.data() + static_cast<size_t>(site) * words; }
    const uint64_t* row(int site) const {
        return bits.data() + static_cast<size_t>(site) * words;
    }

    void grant(int site, int info);
    bool has(int site, int info) const;
    // True iff every set bit of mask (words-wide) is present in the site row.
    bool holds_mask(int site, const uint64_t* mask) const;
    bool fully_informed(int site) const;
    std::vector<int> site_infos(int site) const;
    // Word mask with the low `infos` bits set, words-wide.
    std::vector<uint64_t> full_mask() const;
};

class Scenario {
public:
    enum class Kind { DistinctAll, DuplicatedFirst, Custom };

    static Scenario distinct_all();
    static Scenario duplicated_first();
    static Scenario custom(int info_count, std::vector<std::vector<int>> per_site);

    Kind kind() const { return kind_; }
    std::string name() const;
    // Information count for a graph with `sites` sites; throws on a size
    // mismatch (DistinctAll: m = n; DuplicatedFirst: m = n-1, n >= 3).
    int info_count(int sites) const;
    const std::vector<std::vector<int>>& custom_sets() const { return custom_sets_; }

private:
    Scenario(Kind kind, int custom_infos, std::vector<std::vector<int>> sets)
        : kind_(kind), custom_infos_(custom_infos), custom_sets_(std::move(sets)) {}

    Kind kind_;
    int custom_infos_ = 0;
    std::vector<std::vector<int>> custom_sets_;
};

struct StopSpec {
    std::vector<std::vector<int>> targets;  // information subsets H
    bool want_total = false;
    std::vector<int> y_sites;  // sites whose first-fully-informed step is wanted
    bool record_trajectory = false;
    long long step_cap = 100'000'000;
};

struct RunRecord {
    std::vector<long long> tau_target;    // parallel to StopSpec.targets
    std::optional<long long> tau_total;
    std::vector<long long> y_first_full;  // parallel to StopSpec.y_sites
    std::vector<int> informed_trajectory; // fully-informed count at t = 0..steps_taken
    long long steps_taken = 0;
    uint64_t seed = 0;
};

class StepCapExceeded : public std::runtime_error {
public:
    StepCapExceeded(const std::string& what, RunRecord partial);
    const RunRecord& partial() const { return partial_; }

private:
    RunRecord partial_;
};

// Initial configuration for a connected graph under the scenario.
InfoState init_state(const Graph& g, const Scenario& s);

// One step: a uniformly chosen edge's endpoints both take the union of their
// sets; everything else is unchanged; t advances by one.
void step(InfoState& state, const Graph& g, Xoshiro256pp& rng);

// Advances until every requested stopping time has been observed, recording
// for each the exact first step at which its predicate held. Deterministic
// for a fixed seed. Throws StepCapExceeded with the partial record if the
// cap trips first.
RunRecord run(const Graph& g, const Scenario& s, const StopSpec& spec, uint64_t seed);

int count_fully_informed(const InfoState& state);

}  // namespace gfl
