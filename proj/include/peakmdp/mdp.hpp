#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "peakmdp/errors.hpp"

namespace peakmdp {

struct StateId {
    std::size_t index = 0;
    friend constexpr auto operator<=>(StateId, StateId) = default;
};

struct ActionId {
    std::size_t index = 0;
    friend constexpr auto operator<=>(ActionId, ActionId) = default;
};

/// Ordinal of a reward source within its instance.
using RewardId = std::size_t;

/// Connected distance between two states. `kUnreachable` when no path exists.
using Distance = std::uint32_t;
inline constexpr Distance kUnreachable = std::numeric_limits<Distance>::max();

struct Transition {
    ActionId action;
    StateId next;
    friend constexpr bool operator==(const Transition&, const Transition&) = default;
};

/// Successors of one state, ordered by action. Inline storage covers grid worlds.
using NeighborList = boost::container::small_vector<Transition, 4>;

/// Deterministic transition structure plus the connected distance between states.
///
/// Implementations are immutable after construction.
class Environment {
public:
    virtual ~Environment() = default;

    virtual std::size_t state_count() const noexcept = 0;
    virtual std::size_t action_count() const noexcept = 0;

    /// Deterministic successors of `s`, one per available action, ordered by ActionId.
    virtual NeighborList neighbors(StateId s) const = 0;

    /// Length of the shortest action sequence from `from` to `to`.
    virtual Distance distance(StateId from, StateId to) const = 0;

    /// Length of the shortest action sequence leaving `s` and returning to it.
    /// Throws NoCycleError when none exists.
    virtual Distance min_cycle_length(StateId s) const = 0;

    /// Throws NoCycleError if some state has no successor.
    virtual void check_no_dead_ends() const = 0;

    /// Successor of `s` under `a`, or nullopt if the action is unavailable there.
    std::optional<StateId> step(StateId s, ActionId a) const;

    bool contains(StateId s) const noexcept { return s.index < state_count(); }
    void check_state(StateId s) const;
};

struct RewardSource {
    RewardId id = 0;
    StateId state;
    double value = 0.0;
};

/// Environment, positive state rewards and the discount factor.
class MdpInstance {
public:
    /// Validates every invariant; throws ValidationError naming the broken rule.
    MdpInstance(std::shared_ptr<const Environment> env, std::vector<RewardSource> rewards, double gamma);

    const Environment& env() const noexcept { return *env_; }
    const std::shared_ptr<const Environment>& env_ptr() const noexcept { return env_; }
    std::span<const RewardSource> rewards() const noexcept { return rewards_; }
    const RewardSource& reward(RewardId id) const { return rewards_.at(id); }
    double gamma() const noexcept { return gamma_; }

    /// Reward id at `s`, if `s` is a reward state. O(log |R|).
    std::optional<RewardId> reward_at(StateId s) const;

private:
    std::shared_ptr<const Environment> env_;
    std::vector<RewardSource> rewards_;
    // (state index, reward id), sorted by state.
    std::vector<std::pair<std::size_t, RewardId>> by_state_;
    double gamma_;
};

/// value * gamma^distance; zero for unreachable targets. Every value lookup in
/// the library goes through this so that memoized and on-demand paths agree
/// bit-for-bit.
double decayed(double value, double gamma, Distance d) noexcept;

}  // namespace peakmdp
