#pragma once

#include <cstddef>
#include <vector>

#include "peakmdp/mdp.hpp"

namespace peakmdp {

/// Arbitrary deterministic transition graph.
///
/// All-pairs distances are computed once by BFS at construction (the
/// transition structure is stationary), so memory is O(|S|^2). Meant for small
/// environments and for exercising the solver off the grid.
class GraphWorld final : public Environment {
public:
    /// `successors[s]` lists the transitions out of state s. Actions must be
    /// below `action_count`, unique per state, and targets must be valid states.
    GraphWorld(std::size_t action_count, std::vector<std::vector<Transition>> successors);

    std::size_t state_count() const noexcept override { return successors_.size(); }
    std::size_t action_count() const noexcept override { return action_count_; }
    NeighborList neighbors(StateId s) const override;
    Distance distance(StateId from, StateId to) const override;
    Distance min_cycle_length(StateId s) const override;
    void check_no_dead_ends() const override;

private:
    std::size_t action_count_;
    std::vector<std::vector<Transition>> successors_;
    std::vector<Distance> dist_;  // row-major |S| x |S|
};

}  // namespace peakmdp
