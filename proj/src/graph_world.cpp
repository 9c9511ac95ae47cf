#include "peakmdp/graph_world.hpp"

#include <algorithm>
#include <deque>
#include <string>

namespace peakmdp {

GraphWorld::GraphWorld(std::size_t action_count, std::vector<std::vector<Transition>> successors)
    : action_count_(action_count), successors_(std::move(successors)) {
    const std::size_t n = successors_.size();
    if (n == 0) {
        throw ValidationError(ValidationCode::BadShape, "graph has no states");
    }
    for (std::size_t s = 0; s < n; ++s) {
        auto& out = successors_[s];
        std::sort(out.begin(), out.end(), [](const Transition& a, const Transition& b) { return a.action < b.action; });
        for (std::size_t i = 0; i < out.size(); ++i) {
            if (out[i].action.index >= action_count_ || out[i].next.index >= n ||
                (i > 0 && out[i].action == out[i - 1].action)) {
                throw ValidationError(ValidationCode::BadShape,
                                      "invalid or duplicate transition out of state " + std::to_string(s));
            }
        }
    }

    dist_.assign(n * n, kUnreachable);
    std::deque<std::size_t> frontier;
    for (std::size_t src = 0; src < n; ++src) {
        Distance* row = &dist_[src * n];
        row[src] = 0;
        frontier.assign(1, src);
        while (!frontier.empty()) {
            const std::size_t u = frontier.front();
            frontier.pop_front();
            for (const Transition& t : successors_[u]) {
                if (row[t.next.index] == kUnreachable) {
                    row[t.next.index] = row[u] + 1;
                    frontier.push_back(t.next.index);
                }
            }
        }
    }
}

NeighborList GraphWorld::neighbors(StateId s) const {
    check_state(s);
    const auto& out = successors_[s.index];
    return NeighborList(out.begin(), out.end());
}

Distance GraphWorld::distance(StateId from, StateId to) const {
    check_state(from);
    check_state(to);
    return dist_[from.index * successors_.size() + to.index];
}

Distance GraphWorld::min_cycle_length(StateId s) const {
    check_state(s);
    Distance best = kUnreachable;
    for (const Transition& t : successors_[s.index]) {
        const Distance back = distance(t.next, s);
        if (back != kUnreachable) {
            best = std::min<Distance>(best, back + 1);
        }
    }
    if (best == kUnreachable) {
        throw NoCycleError("no action cycle through state " + std::to_string(s.index));
    }
    return best;
}

void GraphWorld::check_no_dead_ends() const {
    for (std::size_t s = 0; s < successors_.size(); ++s) {
        if (successors_[s].empty()) {
            throw NoCycleError("state " + std::to_string(s) + " has no successor");
        }
    }
}

}  // namespace peakmdp
