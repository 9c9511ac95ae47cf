#include "peakmdp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace peakmdp {
namespace {

// Compressed successor lists, built once per solve.
struct Adjacency {
    std::vector<std::size_t> offsets;
    std::vector<std::size_t> targets;

    explicit Adjacency(const Environment& env) {
        const std::size_t n = env.state_count();
        offsets.reserve(n + 1);
        targets.reserve(n * env.action_count());
        offsets.push_back(0);
        for (std::size_t s = 0; s < n; ++s) {
            for (const Transition& t : env.neighbors(StateId{s})) {
                targets.push_back(t.next.index);
            }
            offsets.push_back(targets.size());
        }
    }
};

std::vector<double> dense_rewards(const MdpInstance& instance) {
    std::vector<double> r(instance.env().state_count(), 0.0);
    for (const RewardSource& src : instance.rewards()) {
        r[src.state.index] = src.value;
    }
    return r;
}

}  // namespace

ValueTable value_iteration(const MdpInstance& instance, double residual, const SweepObserver& observer) {
    if (!(residual > 0.0)) {
        throw DomainError("residual must be positive");
    }
    const double gamma = instance.gamma();
    const std::size_t n = instance.env().state_count();
    const Adjacency adj(instance.env());
    const std::vector<double> reward = dense_rewards(instance);

    const double bound = std::ceil(std::log(residual * (1.0 - gamma)) / std::log(gamma));
    const std::size_t cap = 10 * static_cast<std::size_t>(std::max(1.0, bound));

    std::vector<double> current(n, 0.0);
    std::vector<double> next(n, 0.0);
    for (std::size_t sweep = 1; sweep <= cap; ++sweep) {
        double change = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            double best = 0.0;
            for (std::size_t k = adj.offsets[s]; k < adj.offsets[s + 1]; ++k) {
                best = std::max(best, current[adj.targets[k]]);
            }
            next[s] = reward[s] + gamma * best;
            change = std::max(change, std::abs(next[s] - current[s]));
        }
        current.swap(next);
        if (observer) observer(sweep, change);
        if (change < residual) {
            return ValueTable{std::move(current), gamma, change, sweep};
        }
    }
    throw ConvergenceError("value iteration did not reach residual " + std::to_string(residual) + " within " +
                           std::to_string(cap) + " sweeps");
}

ActionId greedy_policy(std::span<const double> values, const Environment& env, StateId s) {
    const NeighborList nbrs = env.neighbors(s);
    if (nbrs.empty()) {
        throw DomainError("state " + std::to_string(s.index) + " has no neighbors");
    }
    const Transition* best = &nbrs.front();
    for (const Transition& t : nbrs) {
        if (values[t.next.index] > values[best->next.index]) best = &t;
    }
    return best->action;
}

ActionId greedy_policy(const ValueTable& table, const MdpInstance& instance, StateId s) {
    return greedy_policy(table.values, instance.env(), s);
}

double bellman_residual(std::span<const double> values, const MdpInstance& instance) {
    const Environment& env = instance.env();
    double worst = 0.0;
    for (std::size_t s = 0; s < env.state_count(); ++s) {
        double best = 0.0;
        for (const Transition& t : env.neighbors(StateId{s})) {
            best = std::max(best, values[t.next.index]);
        }
        const auto id = instance.reward_at(StateId{s});
        const double r = id ? instance.reward(*id).value : 0.0;
        worst = std::max(worst, std::abs(r + instance.gamma() * best - values[s]));
    }
    return worst;
}

}  // namespace peakmdp
