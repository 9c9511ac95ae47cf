#include "peakmdp/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace peakmdp {

std::string_view to_string(ValidationCode code) {
    switch (code) {
    case ValidationCode::Malformed: return "malformed";
    case ValidationCode::UnknownField: return "unknown_field";
    case ValidationCode::BadShape: return "bad_shape";
    case ValidationCode::GammaOutOfRange: return "gamma_out_of_range";
    case ValidationCode::EmptyRewards: return "empty_rewards";
    case ValidationCode::NonPositiveReward: return "non_positive_reward";
    case ValidationCode::RewardOutOfBounds: return "reward_out_of_bounds";
    case ValidationCode::DuplicateReward: return "duplicate_reward";
    case ValidationCode::NoCycle: return "no_cycle";
    }
    return "unknown";
}

std::optional<StateId> Environment::step(StateId s, ActionId a) const {
    for (const Transition& t : neighbors(s)) {
        if (t.action == a) {
            return t.next;
        }
    }
    return std::nullopt;
}

void Environment::check_state(StateId s) const {
    if (!contains(s)) {
        throw DomainError("state " + std::to_string(s.index) + " outside environment of " +
                          std::to_string(state_count()) + " states");
    }
}

MdpInstance::MdpInstance(std::shared_ptr<const Environment> env, std::vector<RewardSource> rewards, double gamma)
    : env_(std::move(env)), rewards_(std::move(rewards)), gamma_(gamma) {
    if (!env_) {
        throw ValidationError(ValidationCode::Malformed, "missing environment");
    }
    if (!(gamma_ > 0.0 && gamma_ < 1.0)) {
        throw ValidationError(ValidationCode::GammaOutOfRange,
                              "gamma must lie in the open interval (0, 1), got " + std::to_string(gamma_));
    }
    if (rewards_.empty()) {
        throw ValidationError(ValidationCode::EmptyRewards, "at least one reward source is required");
    }
    by_state_.reserve(rewards_.size());
    for (std::size_t i = 0; i < rewards_.size(); ++i) {
        RewardSource& r = rewards_[i];
        r.id = i;
        if (!(r.value > 0.0) || !std::isfinite(r.value)) {
            throw ValidationError(ValidationCode::NonPositiveReward,
                                  "reward " + std::to_string(i) + " has value " + std::to_string(r.value));
        }
        if (!env_->contains(r.state)) {
            throw ValidationError(ValidationCode::RewardOutOfBounds,
                                  "reward " + std::to_string(i) + " at state " + std::to_string(r.state.index));
        }
        by_state_.emplace_back(r.state.index, i);
    }
    std::sort(by_state_.begin(), by_state_.end());
    auto dup = std::adjacent_find(by_state_.begin(), by_state_.end(),
                                  [](const auto& a, const auto& b) { return a.first == b.first; });
    if (dup != by_state_.end()) {
        throw ValidationError(ValidationCode::DuplicateReward,
                              "two rewards at state " + std::to_string(dup->first));
    }
    try {
        env_->check_no_dead_ends();
        for (const RewardSource& r : rewards_) {
            env_->min_cycle_length(r.state);
        }
    } catch (const NoCycleError& e) {
        throw ValidationError(ValidationCode::NoCycle, e.what());
    }
}

std::optional<RewardId> MdpInstance::reward_at(StateId s) const {
    auto it = std::lower_bound(by_state_.begin(), by_state_.end(), s.index,
                               [](const auto& entry, std::size_t idx) { return entry.first < idx; });
    if (it != by_state_.end() && it->first == s.index) {
        return it->second;
    }
    return std::nullopt;
}

double decayed(double value, double gamma, Distance d) noexcept {
    if (d == kUnreachable) {
        return 0.0;
    }
    return value * std::pow(gamma, static_cast<double>(d));
}

}  // namespace peakmdp
