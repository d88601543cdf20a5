#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gfl/graph.hpp"
#include "gfl/process.hpp"
#include "gfl/rational.hpp"

namespace gfl {

inline constexpr long long kDefaultStateCap = 200'000;
inline constexpr int kDefaultOracleSizeCap = 4;

// Dense index over the configurations reachable from a scenario's initial
// state. A configuration is the tuple of per-site information masks with the
// step counter ignored, packed site-major into a word (needs n*m <= 64).
struct ConfigurationIndex {
    int sites = 0;
    int infos = 0;
    std::vector<uint64_t> packed;                // index -> packed configuration
    std::unordered_map<uint64_t, int> index_of;  // packed -> index
    int initial = -1;

    int state_count() const { return static_cast<int>(packed.size()); }
    uint32_t site_mask(int state, int site) const {
        return static_cast<uint32_t>((packed[state] >> (site * infos)) & ((1ull << infos) - 1));
    }
};

class StateCapExceeded : public std::runtime_error {
public:
    StateCapExceeded(long long reached, long long cap);
    long long reached() const { return reached_; }

private:
    long long reached_;
};

class UnreachableTarget : public std::runtime_error {
public:
    explicit UnreachableTarget(const std::string& what) : std::runtime_error(what) {}
};

ConfigurationIndex enumerate_reachable(const Graph& g, const Scenario& s,
                                       long long state_cap = kDefaultStateCap);

// Stopping predicate over configurations: either "every site holds the mask"
// (total propagation of an information subset) or "this site holds all
// informations" (first fully informed time of one site).
struct OracleTarget {
    enum class Kind { AllSitesHold, SiteHoldsAll };
    Kind kind = Kind::AllSitesHold;
    uint32_t info_mask = 0;
    int site = 0;

    static OracleTarget all_sites_hold(uint32_t mask) { return {Kind::AllSitesHold, mask, 0}; }
    static OracleTarget all_informed(int infos) {
        return {Kind::AllSitesHold, static_cast<uint32_t>((1ull << infos) - 1), 0};
    }
    static OracleTarget site_holds_all(int site) { return {Kind::SiteHoldsAll, 0, site}; }
};

// Exact solver over the reachable configuration space. Proper transitions
// strictly grow the total information mass, so ordering states by mass makes
// the hitting-time system triangular and the solve is a single exact
// back-substitution pass; the distribution iteration gives exact CDFs.
class ChainSolver {
public:
    ChainSolver(const Graph& g, const Scenario& s, long long state_cap = kDefaultStateCap);

    const ConfigurationIndex& configurations() const { return index_; }
    long long edge_count() const { return edge_count_; }

    Rational expected_hitting_time(const OracleTarget& target) const;
    double expected_hitting_time_double(const OracleTarget& target) const;
    // P[tau <= t] for t = 0..horizon, exact.
    std::vector<Rational> hitting_time_cdf(const OracleTarget& target, int horizon) const;

private:
    std::vector<char> target_states(const OracleTarget& target) const;

    ConfigurationIndex index_;
    long long edge_count_ = 0;
    // CSR of proper transitions (self-loops kept as counts only).
    std::vector<int> offsets_;
    std::vector<std::pair<int, int>> transitions_;  // (next state, edge multiplicity)
    std::vector<int> self_loops_;
    std::vector<int> by_mass_desc_;  // topological order for the solve
};

Rational expected_hitting_time(const Graph& g, const Scenario& s, const OracleTarget& target,
                               long long state_cap = kDefaultStateCap);
std::vector<Rational> hitting_time_cdf(const Graph& g, const Scenario& s,
                                       const OracleTarget& target, int horizon,
                                       long long state_cap = kDefaultStateCap);

// sup_{t <= horizon} |P[tau_x <= t] - P[Y_x <= t]| from two exact CDFs under
// the all-distinct scenario; the reversal duality makes it exactly zero.
Rational reversal_gap(const Graph& g, int site, int horizon,
                      long long state_cap = kDefaultStateCap);

// Exact expectation tables for the complete graph on n sites: M(k) is the
// covering expectation of k tagged informations from the all-distinct start,
// k = 1..n; A(k) the expectation of k-1 tagged informations from the
// duplicated-first start, k = 2..n.
struct ExactTable {
    int n = 0;
    std::vector<Rational> M;
    std::vector<Rational> A;

    const Rational& Mk(int k) const { return M.at(k - 1); }
    const Rational& Ak(int k) const { return A.at(k - 2); }
};

ExactTable exact_tables(int n, int size_cap = kDefaultOracleSizeCap,
                        long long state_cap = kDefaultStateCap);

// Double-arithmetic variant for sizes past the exact comfort zone (n = 5
// smoke checks); same enumeration, float back-substitution.
struct ExactTableDouble {
    int n = 0;
    std::vector<double> M;
    std::vector<double> A;
};

ExactTableDouble exact_tables_double(int n, long long state_cap);

}  // namespace gfl
