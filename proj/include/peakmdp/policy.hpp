#pragma once

#include <cstddef>
#include <vector>

#include "peakmdp/mdp.hpp"
#include "peakmdp/oracle.hpp"
#include "peakmdp/peak.hpp"

namespace peakmdp {

struct NeighborChoice {
    ActionId action;
    StateId state;
    double value = 0.0;
};

/// Evaluates every successor of `s` on demand and returns the best one
/// (lowest action on ties). Throws DomainError if `s` has no successor.
NeighborChoice find_max_neighbor(const PeakList& peaks, StateId s, const Environment& env, double gamma,
                                 std::size_t* evaluations = nullptr);

struct TrajectoryStep {
    std::size_t step = 0;
    StateId state;   // state the action is taken from
    ActionId action;
    double value = 0.0;  // on-demand value of `state`
};

struct Trajectory {
    std::vector<TrajectoryStep> steps;
    /// value_on_demand calls made; at most steps * |A| + 1.
    std::size_t evaluations = 0;
    StateId final_state;
};

class DeadEndError : public Error {
public:
    DeadEndError(const std::string& what, Trajectory partial) : Error(what), partial_(std::move(partial)) {}
    const Trajectory& partial() const noexcept { return partial_; }

private:
    Trajectory partial_;
};

/// Follows the greedy policy of the peak-defined value function for `steps`
/// transitions, evaluating only the current state's neighbors at each step.
Trajectory follow_local_policy(const PeakList& peaks, StateId initial, std::size_t steps, const Environment& env,
                               double gamma);

/// value_on_demand at every state. The one |S|-sized convenience.
ValueTable reconstruct_value_function(const PeakList& peaks, const Environment& env, double gamma);

inline ValueTable reconstruct_value_function(const PeakList& peaks, const MdpInstance& instance) {
    return reconstruct_value_function(peaks, instance.env(), instance.gamma());
}

}  // namespace peakmdp
