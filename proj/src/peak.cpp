#include "peakmdp/peak.hpp"

#include <algorithm>
#include <string>

namespace peakmdp {

std::string_view to_string(PeakKind kind) {
    switch (kind) {
    case PeakKind::Baseline: return "baseline";
    case PeakKind::Combined: return "combined";
    case PeakKind::Delta: return "delta";
    }
    return "unknown";
}

PeakKind peak_kind_from_string(std::string_view name) {
    if (name == "baseline") return PeakKind::Baseline;
    if (name == "combined") return PeakKind::Combined;
    if (name == "delta") return PeakKind::Delta;
    throw ValidationError(ValidationCode::Malformed, "unknown peak kind '" + std::string(name) + "'");
}

Peak Peak::baseline(RewardId id, StateId state, double value) {
    Peak p;
    p.kind = PeakKind::Baseline;
    p.primary = {state, value};
    p.rewards = {id, 0};
    p.reward_count = 1;
    return p;
}

Peak Peak::delta(RewardId id, StateId state, double value) {
    Peak p = baseline(id, state, value);
    p.kind = PeakKind::Delta;
    return p;
}

Peak Peak::combined(RewardId pri_id, PeakSite pri, RewardId sec_id, PeakSite sec) {
    Peak p;
    p.kind = PeakKind::Combined;
    p.primary = pri;
    p.secondary = sec;
    p.rewards = {pri_id, sec_id};
    p.reward_count = 2;
    return p;
}

bool Peak::covers(RewardId id) const noexcept {
    const auto ids = covered();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool Peak::shares_reward_with(const Peak& other) const noexcept {
    return std::any_of(other.covered().begin(), other.covered().end(), [this](RewardId id) { return covers(id); });
}

double Peak::value() const noexcept {
    return secondary ? std::max(primary.value, secondary->value) : primary.value;
}

bool ranks_before(const Peak& a, const Peak& b) noexcept {
    const double va = a.value();
    const double vb = b.value();
    if (va != vb) return va > vb;
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.primary.state != b.primary.state) return a.primary.state < b.primary.state;
    const std::size_t sa = a.secondary ? a.secondary->state.index : 0;
    const std::size_t sb = b.secondary ? b.secondary->state.index : 0;
    return sa < sb;
}

double value_on_demand(std::span<const Peak> peaks, StateId s, const Environment& env, double gamma) {
    env.check_state(s);
    double best = 0.0;
    for (const Peak& p : peaks) {
        best = std::max(best, decayed(p.primary.value, gamma, env.distance(s, p.primary.state)));
        if (p.secondary) {
            best = std::max(best, decayed(p.secondary->value, gamma, env.distance(s, p.secondary->state)));
        }
    }
    return best;
}

void CandidateSet::insert(Peak peak) {
    auto pos = std::upper_bound(peaks_.begin(), peaks_.end(), peak, ranks_before);
    peaks_.insert(pos, std::move(peak));
}

}  // namespace peakmdp
