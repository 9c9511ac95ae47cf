#include "peakmdp/policy.hpp"

#include <string>

namespace peakmdp {

NeighborChoice find_max_neighbor(const PeakList& peaks, StateId s, const Environment& env, double gamma,
                                 std::size_t* evaluations) {
    const NeighborList nbrs = env.neighbors(s);
    if (nbrs.empty()) {
        throw DomainError("state " + std::to_string(s.index) + " has no neighbors");
    }
    NeighborChoice best{nbrs.front().action, nbrs.front().next, -1.0};
    for (const Transition& t : nbrs) {
        const double v = value_on_demand(peaks.peaks(), t.next, env, gamma);
        if (evaluations) ++*evaluations;
        if (v > best.value) best = {t.action, t.next, v};
    }
    return best;
}

Trajectory follow_local_policy(const PeakList& peaks, StateId initial, std::size_t steps, const Environment& env,
                               double gamma) {
    if (steps == 0) {
        throw DomainError("step budget must be at least 1");
    }
    Trajectory out;
    out.steps.reserve(steps);
    StateId current = initial;
    double current_value = value_on_demand(peaks.peaks(), current, env, gamma);
    ++out.evaluations;
    for (std::size_t k = 0; k < steps; ++k) {
        NeighborChoice next;
        try {
            next = find_max_neighbor(peaks, current, env, gamma, &out.evaluations);
        } catch (const DomainError& e) {
            out.final_state = current;
            throw DeadEndError(std::string("dead end after ") + std::to_string(k) + " steps: " + e.what(),
                               std::move(out));
        }
        out.steps.push_back({k, current, next.action, current_value});
        current = next.state;
        current_value = next.value;
    }
    out.final_state = current;
    return out;
}

ValueTable reconstruct_value_function(const PeakList& peaks, const Environment& env, double gamma) {
    ValueTable table;
    table.gamma = gamma;
    table.values.resize(env.state_count());
    for (std::size_t s = 0; s < table.values.size(); ++s) {
        table.values[s] = value_on_demand(peaks.peaks(), StateId{s}, env, gamma);
    }
    return table;
}

}  // namespace peakmdp
