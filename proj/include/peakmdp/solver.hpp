#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "peakmdp/mdp.hpp"
#include "peakmdp/peak.hpp"

namespace peakmdp {

/// Instrumentation of one solve. Sizes count Peak entries.
struct SolveStats {
    std::size_t iterations = 0;
    std::size_t max_candidates = 0;
    std::size_t max_deltas = 0;
    /// Largest simultaneous candidates + deltas + processed count.
    std::size_t max_bookkeeping = 0;
    /// Number of state values looked up (on demand or from the table).
    std::size_t value_lookups = 0;
};

/// One Baseline peak per reward, r / (1 - gamma^c) with c the minimum cycle
/// length, plus one Combined peak per reward that has an adjacent reward
/// (paired with its highest-valued neighbor, first by action on ties).
/// A pair reached from both endpoints is built once; the endpoint with the
/// higher reward (lower id on ties) becomes the primary.
CandidateSet precompute_peaks(const MdpInstance& instance);

/// Delta candidates for the `remaining` rewards:
/// max(r + gamma * best neighbor value, current value) at the reward state.
/// Neighbor values come from the processed peaks, the pending `candidates`
/// and the other deltas, relaxed until no delta improves.
CandidateSet compute_deltas(const PeakList& processed, std::span<const RewardId> remaining,
                            const MdpInstance& instance, const CandidateSet& candidates = {});

/// Drops candidates whose primary state has a neighbor valued strictly above
/// the candidate's primary value.
CandidateSet prune_invalid_peaks(CandidateSet candidates, const PeakList& processed, const MdpInstance& instance);

/// Drops candidates that share a reward with `selected`.
CandidateSet remove_affected_peaks(CandidateSet candidates, const Peak& selected);

/// Solves the MDP without any per-state storage. Values are recovered with
/// value_on_demand; the result lists peaks in selection order.
PeakList solve_memoryless(const MdpInstance& instance, SolveStats* stats = nullptr);

struct MemoizedSolution {
    PeakList peaks;
    std::vector<double> values;  // indexed by StateId
};

/// Same selection sequence as solve_memoryless, but keeps a dense value table
/// that is max-composed with each selected peak and used for neighbor lookups.
MemoizedSolution solve_memoized(const MdpInstance& instance, SolveStats* stats = nullptr);

}  // namespace peakmdp
