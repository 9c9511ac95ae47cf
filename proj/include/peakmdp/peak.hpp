#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "peakmdp/mdp.hpp"

namespace peakmdp {

enum class PeakKind { Baseline = 0, Combined = 1, Delta = 2 };

std::string_view to_string(PeakKind kind);
PeakKind peak_kind_from_string(std::string_view name);

struct PeakSite {
    StateId state;
    double value = 0.0;
    friend bool operator==(const PeakSite&, const PeakSite&) = default;
};

/// A local maximum of the value function induced by one reward (Baseline,
/// Delta) or an adjacent pair of rewards (Combined, which fills `secondary`).
struct Peak {
    PeakKind kind = PeakKind::Baseline;
    PeakSite primary;
    std::optional<PeakSite> secondary;
    std::array<RewardId, 2> rewards{};
    std::size_t reward_count = 0;

    static Peak baseline(RewardId id, StateId state, double value);
    static Peak delta(RewardId id, StateId state, double value);
    static Peak combined(RewardId pri_id, PeakSite pri, RewardId sec_id, PeakSite sec);

    std::span<const RewardId> covered() const noexcept { return {rewards.data(), reward_count}; }
    bool covers(RewardId id) const noexcept;
    bool shares_reward_with(const Peak& other) const noexcept;

    /// Height of the peak: the larger of the primary and secondary values.
    double value() const noexcept;

    friend bool operator==(const Peak&, const Peak&) = default;
};

/// Selection order: value descending, then Baseline < Combined < Delta, then
/// primary state ascending, then secondary state ascending.
bool ranks_before(const Peak& a, const Peak& b) noexcept;

/// Max over `peaks` of value * gamma^distance. Zero for an empty span.
double value_on_demand(std::span<const Peak> peaks, StateId s, const Environment& env, double gamma);

/// Candidate peaks kept sorted by `ranks_before`, best first.
class CandidateSet {
public:
    void insert(Peak peak);

    template <typename Pred>
    std::size_t remove_if(Pred pred) {
        const auto old = peaks_.size();
        std::erase_if(peaks_, pred);
        return old - peaks_.size();
    }

    bool empty() const noexcept { return peaks_.empty(); }
    std::size_t size() const noexcept { return peaks_.size(); }
    const Peak& best() const { return peaks_.front(); }
    auto begin() const noexcept { return peaks_.begin(); }
    auto end() const noexcept { return peaks_.end(); }
    std::span<const Peak> peaks() const noexcept { return peaks_; }

private:
    std::vector<Peak> peaks_;
};

/// Processed peaks in selection order: the solver's output in place of a value table.
class PeakList {
public:
    PeakList() = default;
    explicit PeakList(std::vector<Peak> peaks) : peaks_(std::move(peaks)) {}

    void append(Peak peak) { peaks_.push_back(std::move(peak)); }
    bool empty() const noexcept { return peaks_.empty(); }
    std::size_t size() const noexcept { return peaks_.size(); }
    const Peak& operator[](std::size_t i) const { return peaks_[i]; }
    auto begin() const noexcept { return peaks_.begin(); }
    auto end() const noexcept { return peaks_.end(); }
    std::span<const Peak> peaks() const noexcept { return peaks_; }
    void reserve(std::size_t n) { peaks_.reserve(n); }

    friend bool operator==(const PeakList&, const PeakList&) = default;

private:
    std::vector<Peak> peaks_;
};

inline double value_on_demand(const PeakList& peaks, StateId s, const MdpInstance& instance) {
    return value_on_demand(peaks.peaks(), s, instance.env(), instance.gamma());
}

}  // namespace peakmdp
