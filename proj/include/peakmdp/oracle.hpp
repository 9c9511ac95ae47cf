#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "peakmdp/mdp.hpp"

namespace peakmdp {

inline constexpr double kDefaultResidual = 1e-9;

/// Dense value function, one entry per StateId.
struct ValueTable {
    std::vector<double> values;
    double gamma = 0.0;
    /// Max-norm change of the final sweep (0 for tables not produced by iteration).
    double residual = 0.0;
    std::size_t iterations = 0;

    double operator[](StateId s) const { return values.at(s.index); }
    std::size_t size() const noexcept { return values.size(); }
};

/// Called after every sweep with (sweep number starting at 1, max-norm change).
using SweepObserver = std::function<void(std::size_t, double)>;

/// Synchronous (Jacobi) value iteration from V = 0 with the backup
/// V(s) = R(s) + gamma * max_{s'} V(s'), stopping once the max-norm change
/// drops below `residual`. Throws ConvergenceError past
/// 10 * ceil(log(residual * (1 - gamma)) / log(gamma)) sweeps.
ValueTable value_iteration(const MdpInstance& instance, double residual = kDefaultResidual,
                           const SweepObserver& observer = {});

/// Action leading to the neighbor with the highest table value; lowest action on ties.
ActionId greedy_policy(const ValueTable& table, const MdpInstance& instance, StateId s);
ActionId greedy_policy(std::span<const double> values, const Environment& env, StateId s);

/// Largest |B V - V| over states, recomputed from scratch.
double bellman_residual(std::span<const double> values, const MdpInstance& instance);

}  // namespace peakmdp
