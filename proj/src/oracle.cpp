#include "gfl/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace gfl {

StateCapExceeded::StateCapExceeded(long long reached, long long cap)
    : std::runtime_error("reachable configuration count passed " + std::to_string(cap) +
                         " (saw " + std::to_string(reached) +
                         "); raise the state cap or shrink the instance"),
      reached_(reached) {}

namespace {

uint64_t pack_initial(const InfoState& st) {
    uint64_t packed = 0;
    for (int x = 0; x < st.sites; ++x)
        packed |= (st.row(x)[0] & ((st.infos == 64) ? ~0ull : (1ull << st.infos) - 1))
                  << (x * st.infos);
    return packed;
}

}  // namespace

ConfigurationIndex enumerate_reachable(const Graph& g, const Scenario& s, long long state_cap) {
    const int n = g.site_count();
    const int m = s.info_count(n);
    if (static_cast<long long>(n) * m > 64)
        throw std::invalid_argument("exact chain needs sites*informations <= 64, got " +
                                    std::to_string(n) + "*" + std::to_string(m));
    InfoState st = init_state(g, s);

    ConfigurationIndex index;
    index.sites = n;
    index.infos = m;
    const uint64_t row_mask = (m == 64) ? ~0ull : (1ull << m) - 1;

    const uint64_t start = pack_initial(st);
    index.packed.push_back(start);
    index.index_of.emplace(start, 0);
    index.initial = 0;

    for (size_t head = 0; head < index.packed.size(); ++head) {
        const uint64_t p = index.packed[head];
        for (const auto& [a, b] : g.edges()) {
            const uint64_t u = ((p >> (a * m)) | (p >> (b * m))) & row_mask;
            const uint64_t next =
                (p & ~(row_mask << (a * m)) & ~(row_mask << (b * m))) | (u << (a * m)) |
                (u << (b * m));
            if (next == p) continue;
            if (index.index_of.emplace(next, index.state_count()).second) {
                if (index.state_count() >= state_cap)
                    throw StateCapExceeded(index.state_count() + 1, state_cap);
                index.packed.push_back(next);
            }
        }
    }
    return index;
}

ChainSolver::ChainSolver(const Graph& g, const Scenario& s, long long state_cap)
    : index_(enumerate_reachable(g, s, state_cap)), edge_count_(g.edge_count()) {
    const int m = index_.infos;
    const uint64_t row_mask = (m == 64) ? ~0ull : (1ull << m) - 1;
    const int states = index_.state_count();

    offsets_.assign(states + 1, 0);
    self_loops_.assign(states, 0);
    std::vector<int> nexts;
    for (int sidx = 0; sidx < states; ++sidx) {
        const uint64_t p = index_.packed[sidx];
        nexts.clear();
        for (const auto& [a, b] : g.edges()) {
            const uint64_t u = ((p >> (a * m)) | (p >> (b * m))) & row_mask;
            const uint64_t next =
                (p & ~(row_mask << (a * m)) & ~(row_mask << (b * m))) | (u << (a * m)) |
                (u << (b * m));
            if (next == p) {
                ++self_loops_[sidx];
            } else {
                nexts.push_back(index_.index_of.at(next));
            }
        }
        std::sort(nexts.begin(), nexts.end());
        for (size_t i = 0; i < nexts.size();) {
            size_t j = i;
            while (j < nexts.size() && nexts[j] == nexts[i]) ++j;
            transitions_.emplace_back(nexts[i], static_cast<int>(j - i));
            i = j;
        }
        offsets_[sidx + 1] = static_cast<int>(transitions_.size());
    }

    by_mass_desc_.resize(states);
    std::iota(by_mass_desc_.begin(), by_mass_desc_.end(), 0);
    std::stable_sort(by_mass_desc_.begin(), by_mass_desc_.end(), [this](int lhs, int rhs) {
        return std::popcount(index_.packed[lhs]) > std::popcount(index_.packed[rhs]);
    });
}

std::vector<char> ChainSolver::target_states(const OracleTarget& target) const {
    const int n = index_.sites;
    const int m = index_.infos;
    const uint32_t full = static_cast<uint32_t>((1ull << m) - 1);
    if (target.kind == OracleTarget::Kind::AllSitesHold) {
        if (target.info_mask & ~full)
            throw UnreachableTarget("target mentions informations the scenario never places");
    } else {
        if (target.site < 0 || target.site >= n)
            throw UnreachableTarget("target site " + std::to_string(target.site) +
                                    " out of range");
    }

    std::vector<char> hit(index_.state_count(), 0);
    for (int sidx = 0; sidx < index_.state_count(); ++sidx) {
        if (target.kind == OracleTarget::Kind::AllSitesHold) {
            bool all = true;
            for (int x = 0; x < n && all; ++x)
                all = (index_.site_mask(sidx, x) & target.info_mask) == target.info_mask;
            hit[sidx] = all;
        } else {
            hit[sidx] = index_.site_mask(sidx, target.site) == full;
        }
    }
    return hit;
}

Rational ChainSolver::expected_hitting_time(const OracleTarget& target) const {
    const std::vector<char> hit = target_states(target);
    std::vector<Rational> expect(index_.state_count(), Rational(0));
    // Proper transitions strictly grow information mass, so scanning states
    // in descending mass order sees every successor before its sources.
    for (int sidx : by_mass_desc_) {
        if (hit[sidx]) continue;
        const long long proper = edge_count_ - self_loops_[sidx];
        if (proper <= 0)
            throw UnreachableTarget("state with no outgoing proper transition misses the target");
        Rational acc(static_cast<long>(edge_count_));
        for (int i = offsets_[sidx]; i < offsets_[sidx + 1]; ++i)
            acc += transitions_[i].second * expect[transitions_[i].first];
        expect[sidx] = acc / static_cast<long>(proper);
    }
    return expect[index_.initial];
}

double ChainSolver::expected_hitting_time_double(const OracleTarget& target) const {
    const std::vector<char> hit = target_states(target);
    std::vector<double> expect(index_.state_count(), 0.0);
    for (int sidx : by_mass_desc_) {
        if (hit[sidx]) continue;
        const long long proper = edge_count_ - self_loops_[sidx];
        if (proper <= 0)
            throw UnreachableTarget("state with no outgoing proper transition misses the target");
        double acc = static_cast<double>(edge_count_);
        for (int i = offsets_[sidx]; i < offsets_[sidx + 1]; ++i)
            acc += transitions_[i].second * expect[transitions_[i].first];
        expect[sidx] = acc / static_cast<double>(proper);
    }
    return expect[index_.initial];
}

std::vector<Rational> ChainSolver::hitting_time_cdf(const OracleTarget& target,
                                                    int horizon) const {
    if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
    const std::vector<char> hit = target_states(target);
    const int states = index_.state_count();

    // Distribution as integer numerators over the common denominator
    // edge_count^t; target states absorb mass on entry.
    std::vector<mpz_class> num(states, 0), scratch(states, 0);
    num[index_.initial] = 1;
    mpz_class den = 1;

    std::vector<Rational> cdf;
    cdf.reserve(horizon + 1);
    auto absorbed = [&]() {
        mpz_class total = 0;
        for (int sidx = 0; sidx < states; ++sidx)
            if (hit[sidx]) total += num[sidx];
        Rational p(total, den);
        p.canonicalize();
        return p;
    };
    cdf.push_back(absorbed());

    for (int t = 1; t <= horizon; ++t) {
        for (auto& v : scratch) v = 0;
        for (int sidx = 0; sidx < states; ++sidx) {
            if (num[sidx] == 0) continue;
            if (hit[sidx]) {
                scratch[sidx] += num[sidx] * static_cast<long>(edge_count_);
                continue;
            }
            if (self_loops_[sidx] > 0) scratch[sidx] += num[sidx] * self_loops_[sidx];
            for (int i = offsets_[sidx]; i < offsets_[sidx + 1]; ++i)
                scratch[transitions_[i].first] += num[sidx] * transitions_[i].second;
        }
        num.swap(scratch);
        den *= static_cast<long>(edge_count_);
        cdf.push_back(absorbed());
    }
    return cdf;
}

Rational expected_hitting_time(const Graph& g, const Scenario& s, const OracleTarget& target,
                               long long state_cap) {
    return ChainSolver(g, s, state_cap).expected_hitting_time(target);
}

std::vector<Rational> hitting_time_cdf(const Graph& g, const Scenario& s,
                                       const OracleTarget& target, int horizon,
                                       long long state_cap) {
    return ChainSolver(g, s, state_cap).hitting_time_cdf(target, horizon);
}

Rational reversal_gap(const Graph& g, int site, int horizon, long long state_cap) {
    ChainSolver solver(g, Scenario::distinct_all(), state_cap);
    const auto spread = solver.hitting_time_cdf(
        OracleTarget::all_sites_hold(1u << site), horizon);
    const auto gather = solver.hitting_time_cdf(OracleTarget::site_holds_all(site), horizon);
    Rational gap = 0;
    for (int t = 0; t <= horizon; ++t) {
        Rational diff = spread[t] - gather[t];
        if (diff < 0) diff = -diff;
        if (diff > gap) gap = diff;
    }
    return gap;
}

ExactTable exact_tables(int n, int size_cap, long long state_cap) {
    if (n < 2) throw std::invalid_argument("exact tables need n >= 2");
    if (n > size_cap)
        throw std::invalid_argument("exact tables capped at n = " + std::to_string(size_cap) +
                                    "; use the float variant past that");
    const Graph g = make_complete(n);
    ExactTable table;
    table.n = n;

    ChainSolver distinct(g, Scenario::distinct_all(), state_cap);
    for (int k = 1; k <= n; ++k)
        table.M.push_back(distinct.expected_hitting_time(
            OracleTarget::all_sites_hold(static_cast<uint32_t>((1ull << k) - 1))));

    if (n >= 3) {
        ChainSolver duplicated(g, Scenario::duplicated_first(), state_cap);
        for (int k = 2; k <= n; ++k)
            table.A.push_back(duplicated.expected_hitting_time(
                OracleTarget::all_sites_hold(static_cast<uint32_t>((1ull << (k - 1)) - 1))));
    }
    return table;
}

ExactTableDouble exact_tables_double(int n, long long state_cap) {
    if (n < 2) throw std::invalid_argument("exact tables need n >= 2");
    const Graph g = make_complete(n);
    ExactTableDouble table;
    table.n = n;

    ChainSolver distinct(g, Scenario::distinct_all(), state_cap);
    for (int k = 1; k <= n; ++k)
        table.M.push_back(distinct.expected_hitting_time_double(
            OracleTarget::all_sites_hold(static_cast<uint32_t>((1ull << k) - 1))));

    if (n >= 3) {
        ChainSolver duplicated(g, Scenario::duplicated_first(), state_cap);
        for (int k = 2; k <= n; ++k)
            table.A.push_back(duplicated.expected_hitting_time_double(
                OracleTarget::all_sites_hold(static_cast<uint32_t>((1ull << (k - 1)) - 1))));
    }
    return table;
}

}  // namespace gfl
