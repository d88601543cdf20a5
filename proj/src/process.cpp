#include "gfl/process.hpp"

#include <algorithm>
#include <string>

namespace gfl {

InfoState::InfoState(int site_count, int info_count)
    : sites(site_count),
      infos(info_count),
      words((info_count + 63) / 64),
      bits(static_cast<size_t>(site_count) * ((info_count + 63) / 64), 0) {
    if (site_count < 1 || info_count < 1)
        throw std::invalid_argument("state needs at least one site and one information");
}

void InfoState::grant(int site, int info) {
    row(site)[info >> 6] |= 1ull << (info & 63);
}

bool InfoState::has(int site, int info) const {
    return (row(site)[info >> 6] >> (info & 63)) & 1ull;
}

bool InfoState::holds_mask(int site, const uint64_t* mask) const {
    const uint64_t* r = row(site);
    for (int w = 0; w < words; ++w)
        if (mask[w] & ~r[w]) return false;
    return true;
}

std::vector<uint64_t> InfoState::full_mask() const {
    std::vector<uint64_t> mask(words, ~0ull);
    if (infos & 63) mask[words - 1] = (1ull << (infos & 63)) - 1;
    return mask;
}

bool InfoState::fully_informed(int site) const {
    const uint64_t* r = row(site);
    for (int w = 0; w < words - 1; ++w)
        if (r[w] != ~0ull) return false;
    uint64_t last = (infos & 63) ? (1ull << (infos & 63)) - 1 : ~0ull;
    return r[words - 1] == last;
}

std::vector<int> InfoState::site_infos(int site) const {
    std::vector<int> out;
    for (int i = 0; i < infos; ++i)
        if (has(site, i)) out.push_back(i);
    return out;
}

Scenario Scenario::distinct_all() { return Scenario(Kind::DistinctAll, 0, {}); }

Scenario Scenario::duplicated_first() { return Scenario(Kind::DuplicatedFirst, 0, {}); }

Scenario Scenario::custom(int info_count, std::vector<std::vector<int>> per_site) {
    if (info_count < 1) throw std::invalid_argument("custom scenario needs at least one information");
    bool any = false;
    for (const auto& set : per_site) {
        for (int info : set) {
            if (info < 0 || info >= info_count)
                throw std::invalid_argument("custom scenario information out of range");
            any = true;
        }
    }
    if (!any) throw std::invalid_argument("custom scenario must place at least one information");
    return Scenario(Kind::Custom, info_count, std::move(per_site));
}

std::string Scenario::name() const {
    switch (kind_) {
        case Kind::DistinctAll: return "distinct";
        case Kind::DuplicatedFirst: return "dupfirst";
        case Kind::Custom: return "custom";
    }
    return "?";
}

int Scenario::info_count(int sites) const {
    switch (kind_) {
        case Kind::DistinctAll:
            return sites;
        case Kind::DuplicatedFirst:
            if (sites < 3)
                throw std::invalid_argument("duplicated-first scenario needs n >= 3");
            return sites - 1;
        case Kind::Custom:
            if (static_cast<int>(custom_sets_.size()) != sites)
                throw std::invalid_argument("custom scenario covers " +
                                            std::to_string(custom_sets_.size()) + " sites, graph has " +
                                            std::to_string(sites));
            return custom_infos_;
    }
    return 0;
}

StepCapExceeded::StepCapExceeded(const std::string& what, RunRecord partial)
    : std::runtime_error(what), partial_(std::move(partial)) {}

InfoState init_state(const Graph& g, const Scenario& s) {
    if (!is_connected(g)) throw std::invalid_argument("graph is not connected");
    const int n = g.site_count();
    const int m = s.info_count(n);
    InfoState state(n, m);
    switch (s.kind()) {
        case Scenario::Kind::DistinctAll:
            for (int x = 0; x < n; ++x) state.grant(x, x);
            break;
        case Scenario::Kind::DuplicatedFirst:
            state.grant(0, 0);
            state.grant(1, 0);
            for (int x = 2; x < n; ++x) state.grant(x, x - 1);
            break;
        case Scenario::Kind::Custom:
            for (int x = 0; x < n; ++x)
                for (int info : s.custom_sets()[x]) state.grant(x, info);
            break;
    }
    return state;
}

void step(InfoState& state, const Graph& g, Xoshiro256pp& rng) {
    const auto [a, b] = g.edges()[rng.bounded(g.edges().size())];
    uint64_t* ra = state.row(a);
    uint64_t* rb = state.row(b);
    for (int w = 0; w < state.words; ++w) {
        const uint64_t u = ra[w] | rb[w];
        ra[w] = u;
        rb[w] = u;
    }
    ++state.t;
}

int count_fully_informed(const InfoState& state) {
    int count = 0;
    for (int x = 0; x < state.sites; ++x) count += state.fully_informed(x);
    return count;
}

namespace {

// Per-run bookkeeping for one stopping predicate of the form
// "every site holds mask".
struct TargetTracker {
    std::vector<uint64_t> mask;
    std::vector<char> satisfied;
    int satisfied_count = 0;
    long long hit_at = -1;
};

std::vector<uint64_t> build_mask(const std::vector<int>& infos, int m, int words) {
    std::vector<uint64_t> mask(words, 0);
    if (infos.empty()) throw std::invalid_argument("stopping target must be nonempty");
    for (int info : infos) {
        if (info < 0 || info >= m)
            throw std::invalid_argument("stopping target information " + std::to_string(info) +
                                        " out of range");
        mask[info >> 6] |= 1ull << (info & 63);
    }
    return mask;
}

}  // namespace

RunRecord run(const Graph& g, const Scenario& s, const StopSpec& spec, uint64_t seed) {
    InfoState state = init_state(g, s);
    const int n = state.sites;
    const auto full = state.full_mask();

    std::vector<TargetTracker> trackers;
    trackers.reserve(spec.targets.size() + (spec.want_total ? 1 : 0));
    for (const auto& target : spec.targets)
        trackers.push_back({build_mask(target, state.infos, state.words), {}, 0, -1});
    const int total_tracker = spec.want_total ? static_cast<int>(trackers.size()) : -1;
    if (spec.want_total) trackers.push_back({full, {}, 0, -1});

    std::vector<char> site_full(n, 0);
    int full_count = 0;
    for (int x = 0; x < n; ++x) {
        if (state.fully_informed(x)) {
            site_full[x] = 1;
            ++full_count;
        }
    }

    std::vector<long long> y_hits(spec.y_sites.size(), -1);
    std::vector<int> y_index_of_site(n, -1);
    for (size_t i = 0; i < spec.y_sites.size(); ++i) {
        int site = spec.y_sites[i];
        if (site < 0 || site >= n)
            throw std::invalid_argument("requested site " + std::to_string(site) + " out of range");
        y_index_of_site[site] = static_cast<int>(i);
        if (site_full[site]) y_hits[i] = 0;
    }

    long long pending = static_cast<long long>(trackers.size());
    for (auto& tracker : trackers) {
        tracker.satisfied.assign(n, 0);
        for (int x = 0; x < n; ++x) {
            if (state.holds_mask(x, tracker.mask.data())) {
                tracker.satisfied[x] = 1;
                ++tracker.satisfied_count;
            }
        }
        if (tracker.satisfied_count == n) {
            tracker.hit_at = 0;
            --pending;
        }
    }
    for (long long hit : y_hits) pending += (hit < 0);

    RunRecord record;
    record.seed = seed;
    if (spec.record_trajectory) record.informed_trajectory.push_back(full_count);

    Xoshiro256pp rng(seed);
    const auto& edges = g.edges();
    const uint64_t edge_count = edges.size();

    while (pending > 0) {
        if (state.t >= spec.step_cap) {
            record.steps_taken = state.t;
            for (size_t i = 0; i < spec.targets.size(); ++i)
                record.tau_target.push_back(trackers[i].hit_at);
            if (spec.want_total) record.tau_total = trackers[total_tracker].hit_at;
            record.y_first_full.assign(y_hits.begin(), y_hits.end());
            throw StepCapExceeded("step cap " + std::to_string(spec.step_cap) +
                                      " reached before all stopping times were observed (seed " +
                                      std::to_string(seed) + ")",
                                  std::move(record));
        }
        const auto [a, b] = edges[rng.bounded(edge_count)];
        uint64_t* ra = state.row(a);
        uint64_t* rb = state.row(b);
        for (int w = 0; w < state.words; ++w) {
            const uint64_t u = ra[w] | rb[w];
            ra[w] = u;
            rb[w] = u;
        }
        ++state.t;

        for (int endpoint : {a, b}) {
            for (auto& tracker : trackers) {
                if (tracker.hit_at >= 0 || tracker.satisfied[endpoint]) continue;
                if (state.holds_mask(endpoint, tracker.mask.data())) {
                    tracker.satisfied[endpoint] = 1;
                    if (++tracker.satisfied_count == n) {
                        tracker.hit_at = state.t;
                        --pending;
                    }
                }
            }
            if (!site_full[endpoint] && state.fully_informed(endpoint)) {
                site_full[endpoint] = 1;
                ++full_count;
                if (int yi = y_index_of_site[endpoint]; yi >= 0 && y_hits[yi] < 0) {
                    y_hits[yi] = state.t;
                    --pending;
                }
            }
        }
        if (spec.record_trajectory) record.informed_trajectory.push_back(full_count);
    }

    record.steps_taken = state.t;
    for (size_t i = 0; i < spec.targets.size(); ++i) record.tau_target.push_back(trackers[i].hit_at);
    if (spec.want_total) record.tau_total = trackers[total_tracker].hit_at;
    record.y_first_full.assign(y_hits.begin(), y_hits.end());
    return record;
}

}  // namespace gfl
