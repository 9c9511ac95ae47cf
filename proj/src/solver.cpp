#include "peakmdp/solver.hpp"

#include <algorithm>
#include <cmath>

namespace peakmdp {
namespace {

// Value lookups for the selection loop. Memoryless evaluates against the
// processed peaks; memoized reads a dense table.
class OnDemandLookup {
public:
    OnDemandLookup(const PeakList& processed, const MdpInstance& instance, SolveStats* stats)
        : processed_(processed), instance_(instance), stats_(stats) {}

    double operator()(StateId s) const {
        if (stats_) ++stats_->value_lookups;
        return value_on_demand(processed_, s, instance_);
    }

private:
    const PeakList& processed_;
    const MdpInstance& instance_;
    SolveStats* stats_;
};

class TableLookup {
public:
    TableLookup(const std::vector<double>& table, SolveStats* stats) : table_(table), stats_(stats) {}

    double operator()(StateId s) const {
        if (stats_) ++stats_->value_lookups;
        return table_.at(s.index);
    }

private:
    const std::vector<double>& table_;
    SolveStats* stats_;
};

template <typename Lookup>
double best_neighbor_value(const Environment& env, StateId s, const Lookup& lookup) {
    double best = 0.0;
    for (const Transition& t : env.neighbors(s)) {
        best = std::max(best, lookup(t.next));
    }
    return best;
}

// Delta values for the remaining rewards. A reward's best continuation may
// pass through other remaining rewards before reaching a processed peak or a
// candidate cycle, so neighbor values are taken from the tentative function
// (processed, candidates and the deltas themselves) and relaxed until stable.
// At most |remaining| + 1 rounds: an optimal prefix visits each remaining
// reward at most once. Every value is the return of an actual path.
template <typename Lookup>
CandidateSet deltas_with(std::span<const RewardId> remaining, const CandidateSet& candidates,
                         const MdpInstance& instance, const Lookup& lookup) {
    const Environment& env = instance.env();
    const double gamma = instance.gamma();
    std::vector<Peak> deltas;
    deltas.reserve(remaining.size());
    for (RewardId id : remaining) {
        deltas.push_back(Peak::delta(id, instance.reward(id).state, 0.0));
    }

    auto tentative = [&](StateId s) {
        return std::max({lookup(s), value_on_demand(candidates.peaks(), s, env, gamma),
                         value_on_demand(deltas, s, env, gamma)});
    };

    for (std::size_t round = 0; round <= remaining.size(); ++round) {
        bool changed = false;
        for (Peak& d : deltas) {
            const RewardSource& r = instance.reward(d.rewards[0]);
            double best = 0.0;
            for (const Transition& t : env.neighbors(r.state)) {
                best = std::max(best, tentative(t.next));
            }
            const double v = std::max(r.value + gamma * best, lookup(r.state));
            if (v > d.primary.value) {
                d.primary.value = v;
                changed = true;
            }
        }
        if (!changed) break;
    }

    CandidateSet out;
    for (Peak& d : deltas) out.insert(std::move(d));
    return out;
}

template <typename Lookup>
CandidateSet prune_with(CandidateSet candidates, const MdpInstance& instance, const Lookup& lookup) {
    candidates.remove_if([&](const Peak& p) {
        return best_neighbor_value(instance.env(), p.primary.state, lookup) > p.primary.value;
    });
    return candidates;
}

void note_sizes(SolveStats* stats, std::size_t candidates, std::size_t deltas, std::size_t processed) {
    if (!stats) return;
    stats->max_candidates = std::max(stats->max_candidates, candidates);
    stats->max_deltas = std::max(stats->max_deltas, deltas);
    stats->max_bookkeeping = std::max(stats->max_bookkeeping, candidates + deltas + processed);
}

// The selection loop shared by both modes. `make_lookup` builds the value
// backend for the current processed list; `on_select` runs after each append.
template <typename MakeLookup, typename OnSelect>
PeakList select_peaks(const MdpInstance& instance, SolveStats* stats, MakeLookup make_lookup, OnSelect on_select) {
    const std::size_t n_rewards = instance.rewards().size();
    PeakList processed;
    processed.reserve(n_rewards);
    CandidateSet candidates = precompute_peaks(instance);

    std::vector<RewardId> remaining(n_rewards);
    for (RewardId id = 0; id < n_rewards; ++id) remaining[id] = id;

    while (!remaining.empty()) {
        const auto lookup = make_lookup(processed);
        CandidateSet deltas = deltas_with(remaining, candidates, instance, lookup);
        candidates = prune_with(std::move(candidates), instance, lookup);
        note_sizes(stats, candidates.size(), deltas.size(), processed.size());

        // Deltas are never empty while rewards remain.
        Peak selected = deltas.best();
        if (!candidates.empty() && ranks_before(candidates.best(), selected)) {
            selected = candidates.best();
        }

        processed.append(selected);
        candidates = remove_affected_peaks(std::move(candidates), selected);
        std::erase_if(remaining, [&](RewardId id) { return selected.covers(id); });
        on_select(selected);
        if (stats) ++stats->iterations;
    }
    return processed;
}

}  // namespace

CandidateSet precompute_peaks(const MdpInstance& instance) {
    const Environment& env = instance.env();
    const double gamma = instance.gamma();
    const double pair_scale = 1.0 / (1.0 - gamma * gamma);
    CandidateSet out;

    for (const RewardSource& r : instance.rewards()) {
        const Distance cycle = env.min_cycle_length(r.state);
        out.insert(Peak::baseline(r.id, r.state, r.value / (1.0 - std::pow(gamma, static_cast<double>(cycle)))));
    }

    // (low id, high id) of pairs already built.
    std::vector<std::pair<RewardId, RewardId>> built;
    for (const RewardSource& r : instance.rewards()) {
        const RewardSource* partner = nullptr;
        for (const Transition& t : env.neighbors(r.state)) {
            const auto id = instance.reward_at(t.next);
            if (!id || env.distance(t.next, r.state) != 1) continue;
            const RewardSource& cand = instance.reward(*id);
            if (!partner || cand.value > partner->value) partner = &cand;
        }
        if (!partner) continue;

        const std::pair<RewardId, RewardId> key{std::min(r.id, partner->id), std::max(r.id, partner->id)};
        if (std::find(built.begin(), built.end(), key) != built.end()) continue;
        built.push_back(key);

        const bool r_first = r.value > partner->value || (r.value == partner->value && r.id < partner->id);
        const RewardSource& pri = r_first ? r : *partner;
        const RewardSource& sec = r_first ? *partner : r;
        out.insert(Peak::combined(pri.id, {pri.state, (pri.value + gamma * sec.value) * pair_scale},
                                  sec.id, {sec.state, (sec.value + gamma * pri.value) * pair_scale}));
    }
    return out;
}

CandidateSet compute_deltas(const PeakList& processed, std::span<const RewardId> remaining,
                            const MdpInstance& instance, const CandidateSet& candidates) {
    return deltas_with(remaining, candidates, instance, OnDemandLookup(processed, instance, nullptr));
}

CandidateSet prune_invalid_peaks(CandidateSet candidates, const PeakList& processed, const MdpInstance& instance) {
    return prune_with(std::move(candidates), instance, OnDemandLookup(processed, instance, nullptr));
}

CandidateSet remove_affected_peaks(CandidateSet candidates, const Peak& selected) {
    candidates.remove_if([&](const Peak& p) { return p.shares_reward_with(selected); });
    return candidates;
}

PeakList solve_memoryless(const MdpInstance& instance, SolveStats* stats) {
    return select_peaks(
        instance, stats, [&](const PeakList& processed) { return OnDemandLookup(processed, instance, stats); },
        [](const Peak&) {});
}

MemoizedSolution solve_memoized(const MdpInstance& instance, SolveStats* stats) {
    const Environment& env = instance.env();
    const double gamma = instance.gamma();
    MemoizedSolution out;
    out.values.assign(env.state_count(), 0.0);

    auto compose = [&](const Peak& p) {
        for (std::size_t i = 0; i < out.values.size(); ++i) {
            const StateId s{i};
            double& v = out.values[i];
            v = std::max(v, decayed(p.primary.value, gamma, env.distance(s, p.primary.state)));
            if (p.secondary) {
                v = std::max(v, decayed(p.secondary->value, gamma, env.distance(s, p.secondary->state)));
            }
        }
    };
    out.peaks = select_peaks(
        instance, stats, [&](const PeakList&) { return TableLookup(out.values, stats); }, compose);
    return out;
}

}  // namespace peakmdp
