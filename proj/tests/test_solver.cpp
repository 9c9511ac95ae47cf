#include "doctest.h"

#include <set>

#include "peakmdp/graph_world.hpp"
#include "peakmdp/oracle.hpp"
#include "peakmdp/policy.hpp"
#include "peakmdp/solver.hpp"
#include "support/generators.hpp"

using namespace peakmdp;
using testing::grid_instance;

namespace {

std::vector<Peak> of_kind(const CandidateSet& set, PeakKind kind) {
    std::vector<Peak> out;
    for (const Peak& p : set) {
        if (p.kind == kind) out.push_back(p);
    }
    return out;
}

}  // namespace

TEST_CASE("value_on_demand") {
    const MdpInstance inst = grid_instance(10, 10, 0.9, {{5, 5, 10.0}});
    const GridWorld& grid = dynamic_cast<const GridWorld&>(inst.env());

    SUBCASE("empty list gives zero") {
        CHECK(value_on_demand(PeakList{}, grid.state_at(3, 3), inst) == 0.0);
    }
    SUBCASE("zero distance returns the stored value exactly") {
        const PeakList peaks({Peak::baseline(0, grid.state_at(5, 5), 52.6316)});
        CHECK(value_on_demand(peaks, grid.state_at(5, 5), inst) == 52.6316);
    }
    SUBCASE("distance decay matches value iteration") {
        // Oracle: value iteration at distance 3 from a lone reward of 10.
        const ValueTable vi = value_iteration(inst, 1e-9);
        const StateId probe = grid.state_at(5, 8);
        CHECK(vi[probe] == doctest::Approx(38.3684).epsilon(1e-6));

        const PeakList peaks = solve_memoryless(inst);
        CHECK(value_on_demand(peaks, probe, inst) == doctest::Approx(38.3684).epsilon(1e-6));
        CHECK(std::abs(value_on_demand(peaks, probe, inst) - vi[probe]) < 1e-6);
        CHECK(value_on_demand(PeakList({Peak::baseline(0, grid.state_at(5, 5), 52.6316)}), probe, inst) ==
              doctest::Approx(52.6316 * 0.729).epsilon(1e-12));
    }
    SUBCASE("secondary slot participates") {
        const PeakList peaks({Peak::combined(0, {grid.state_at(0, 0), 5.0}, 1, {grid.state_at(9, 9), 8.0})});
        CHECK(value_on_demand(peaks, grid.state_at(9, 8), inst) == doctest::Approx(7.2));
        CHECK(value_on_demand(peaks, grid.state_at(0, 1), inst) == doctest::Approx(4.5));
    }
    SUBCASE("invalid state") {
        CHECK_THROWS_AS(value_on_demand(PeakList{}, StateId{100}, inst), DomainError);
    }
}

TEST_CASE("precompute_peaks") {
    SUBCASE("lone reward gives one baseline at r / (1 - gamma^2)") {
        const MdpInstance inst = grid_instance(10, 10, 0.9, {{4, 4, 10.0}});
        const CandidateSet c = precompute_peaks(inst);
        REQUIRE(c.size() == 1);
        CHECK(c.best().kind == PeakKind::Baseline);
        CHECK(c.best().primary.value == doctest::Approx(52.6316).epsilon(1e-6));
        // Oracle: the reward state's value under value iteration.
        CHECK(value_iteration(inst, 1e-9)[c.best().primary.state] == doctest::Approx(52.6316).epsilon(1e-6));
    }
    SUBCASE("adjacent rewards add a combined peak") {
        const MdpInstance inst = grid_instance(10, 10, 0.9, {{4, 4, 10.0}, {5, 4, 5.0}});
        const CandidateSet c = precompute_peaks(inst);
        const auto combined = of_kind(c, PeakKind::Combined);
        REQUIRE(combined.size() == 1);
        REQUIRE(combined[0].secondary.has_value());
        CHECK(combined[0].primary.value == doctest::Approx(76.3158).epsilon(1e-6));
        CHECK(combined[0].secondary->value == doctest::Approx(73.6842).epsilon(1e-6));
        CHECK(combined[0].covered().size() == 2);
        CHECK(of_kind(c, PeakKind::Baseline).size() == 2);

        const ValueTable vi = value_iteration(inst, 1e-9);
        CHECK(std::abs(vi[inst.reward(0).state] - combined[0].primary.value) < 1e-6);
        CHECK(std::abs(vi[inst.reward(1).state] - combined[0].secondary->value) < 1e-6);
    }
    SUBCASE("pair is built once with the larger reward as primary") {
        const MdpInstance inst = grid_instance(6, 6, 0.9, {{2, 2, 3.0}, {3, 2, 7.0}});
        const auto combined = of_kind(precompute_peaks(inst), PeakKind::Combined);
        REQUIRE(combined.size() == 1);
        CHECK(combined[0].primary.state == inst.reward(1).state);
        CHECK(combined[0].primary.value >= combined[0].secondary->value);
    }
    SUBCASE("partner is the highest-valued neighbor") {
        // Middle reward 4 between 2 (west) and 9 (east); the 2 pairs with 4.
        const MdpInstance inst = grid_instance(6, 6, 0.5, {{1, 1, 2.0}, {2, 1, 4.0}, {3, 1, 9.0}});
        const auto combined = of_kind(precompute_peaks(inst), PeakKind::Combined);
        REQUIRE(combined.size() == 2);
        std::set<std::pair<RewardId, RewardId>> pairs;
        for (const Peak& p : combined) pairs.insert({std::min(p.rewards[0], p.rewards[1]), std::max(p.rewards[0], p.rewards[1])});
        CHECK(pairs == std::set<std::pair<RewardId, RewardId>>{{0, 1}, {1, 2}});
    }
    SUBCASE("distant rewards give baselines only") {
        const MdpInstance inst = grid_instance(10, 10, 0.9, {{1, 1, 10.0}, {3, 1, 5.0}});
        const CandidateSet c = precompute_peaks(inst);
        CHECK(of_kind(c, PeakKind::Baseline).size() == 2);
        CHECK(of_kind(c, PeakKind::Combined).empty());
    }
    SUBCASE("baseline uses the minimum cycle of the environment") {
        std::vector<std::vector<Transition>> ring(3);
        for (std::size_t s = 0; s < 3; ++s) ring[s].push_back({ActionId{0}, StateId{(s + 1) % 3}});
        const MdpInstance inst(std::make_shared<GraphWorld>(1, ring), {{0, StateId{0}, 1.0}}, 0.5);
        CHECK(precompute_peaks(inst).best().primary.value == doctest::Approx(1.0 / (1.0 - 0.125)));
    }
    SUBCASE("candidates are sorted best first") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            const CandidateSet c = precompute_peaks(testing::random_instance(rng));
            for (std::size_t k = 1; k < c.size(); ++k) CHECK_FALSE(ranks_before(c.peaks()[k], c.peaks()[k - 1]));
        }
    }
}

TEST_CASE("compute_deltas") {
    const MdpInstance inst = grid_instance(10, 10, 0.9, {{5, 5, 10.0}, {5, 6, 1.0}, {5, 7, 1.0}});
    const GridWorld& grid = dynamic_cast<const GridWorld&>(inst.env());
    const PeakList processed({Peak::baseline(0, grid.state_at(5, 5), 52.6316)});

    SUBCASE("reward adjacent to a processed peak") {
        const std::vector<RewardId> remaining{1};
        const CandidateSet d = compute_deltas(processed, remaining, inst);
        REQUIRE(d.size() == 1);
        CHECK(d.best().kind == PeakKind::Delta);
        CHECK(d.best().primary.value == doctest::Approx(48.3684).epsilon(1e-6));
        CHECK(d.best().covered()[0] == 1);
    }
    SUBCASE("empty processed list stays between the bare reward and its baseline") {
        const std::vector<RewardId> remaining{1};
        const double v = compute_deltas(PeakList{}, remaining, inst).best().primary.value;
        CHECK(v >= 1.0);
        CHECK(v <= 1.0 / (1.0 - 0.81));
    }
    SUBCASE("nothing remaining") {
        CHECK(compute_deltas(processed, std::vector<RewardId>{}, inst).empty());
    }
    SUBCASE("chains through another remaining reward") {
        // Reward 2 reaches the peak through reward 1: 1 + 0.9 * (1 + 0.9 * 52.6316).
        const std::vector<RewardId> remaining{1, 2};
        const CandidateSet d = compute_deltas(processed, remaining, inst);
        double chained = 0.0;
        for (const Peak& p : d) {
            if (p.covers(2)) chained = p.primary.value;
        }
        CHECK(chained == doctest::Approx(1.0 + 0.9 * (1.0 + 0.9 * 52.6316)).epsilon(1e-12));
    }
    SUBCASE("two cells from the peak matches value iteration") {
        const MdpInstance apart = grid_instance(10, 10, 0.9, {{5, 5, 10.0}, {5, 7, 1.0}});
        const PeakList first({solve_memoryless(apart)[0]});
        const std::vector<RewardId> remaining{1};
        const double delta = compute_deltas(first, remaining, apart).best().primary.value;
        CHECK(delta == doctest::Approx(43.6316).epsilon(1e-6));
        CHECK(std::abs(value_iteration(apart, 1e-9)[apart.reward(1).state] - delta) < 1e-6);
    }
}

TEST_CASE("prune_invalid_peaks") {
    const MdpInstance inst = grid_instance(10, 10, 0.9, {{5, 5, 10.0}, {5, 7, 1.0}});
    const GridWorld& grid = dynamic_cast<const GridWorld&>(inst.env());
    const PeakList processed({Peak::baseline(0, grid.state_at(5, 5), 52.6316)});

    CandidateSet candidates;
    candidates.insert(Peak::baseline(1, grid.state_at(5, 7), 1.0 / 0.19));

    SUBCASE("candidate overshadowed by a neighbor is removed") {
        // Neighbor (5,6) holds 0.9 * 52.6316 = 47.37 > 5.26.
        CHECK(prune_invalid_peaks(candidates, processed, inst).empty());
    }
    SUBCASE("nothing processed keeps everything") {
        CHECK(prune_invalid_peaks(candidates, PeakList{}, inst).size() == 1);
    }
    SUBCASE("candidate above all neighbors is retained") {
        CandidateSet tall;
        tall.insert(Peak::baseline(1, grid.state_at(5, 7), 48.0));
        CHECK(prune_invalid_peaks(tall, processed, inst).size() == 1);
    }
    SUBCASE("equal value is retained") {
        CandidateSet level;
        level.insert(Peak::baseline(1, grid.state_at(5, 7), value_on_demand(processed, grid.state_at(5, 6), inst)));
        CHECK(prune_invalid_peaks(level, processed, inst).size() == 1);
    }
}

TEST_CASE("remove_affected_peaks") {
    const MdpInstance inst = grid_instance(6, 6, 0.9, {{1, 1, 5.0}, {2, 1, 4.0}, {3, 1, 3.0}, {5, 5, 2.0}});
    const CandidateSet all = precompute_peaks(inst);

    SUBCASE("combined selection removes everything touching its rewards") {
        Peak selected;
        for (const Peak& p : all) {
            if (p.kind == PeakKind::Combined && p.covers(0) && p.covers(1)) selected = p;
        }
        REQUIRE(selected.kind == PeakKind::Combined);
        const CandidateSet left = remove_affected_peaks(all, selected);
        CHECK(left.size() < all.size());
        for (const Peak& p : left) {
            CHECK_FALSE(p.covers(0));
            CHECK_FALSE(p.covers(1));
        }
        CHECK(left.size() == 2);  // baselines of rewards 2 and 3
    }
    SUBCASE("reward nobody else touches leaves the rest alone") {
        CandidateSet others = all;
        others.remove_if([](const Peak& p) { return p.covers(3); });
        const Peak selected = Peak::baseline(3, inst.reward(3).state, 2.0 / 0.19);
        CHECK(remove_affected_peaks(others, selected).size() == others.size());
        CHECK(remove_affected_peaks(all, selected).size() == all.size() - 1);
    }
}

TEST_CASE("solve_memoryless") {
    SUBCASE("single reward gives one baseline") {
        const MdpInstance inst = grid_instance(6, 6, 0.9, {{4, 2, 10.0}});
        const PeakList peaks = solve_memoryless(inst);
        REQUIRE(peaks.size() == 1);
        CHECK(peaks[0].kind == PeakKind::Baseline);
        CHECK(peaks[0].primary.state == dynamic_cast<const GridWorld&>(inst.env()).state_at(4, 2));
    }
    SUBCASE("50x50 with five rewards matches value iteration") {
        const MdpInstance inst =
            grid_instance(50, 50, 0.9, {{3, 4, 1.0}, {20, 30, 10.0}, {21, 30, 4.0}, {45, 2, 7.0}, {10, 40, 3.0}});
        const ValueTable vi = value_iteration(inst, 1e-9);
        const ValueTable rebuilt = reconstruct_value_function(solve_memoryless(inst), inst);
        CHECK(testing::max_abs_diff(vi.values, rebuilt.values) <= 1e-6);
    }
    SUBCASE("chained rewards resolve to the optimum") {
        // 9 -> 3 -> (10 <-> 7) beats pairing the 9 with the 3.
        const MdpInstance inst = grid_instance(4, 2, 0.5, {{0, 0, 9.0}, {1, 0, 3.0}, {3, 0, 2.0}, {1, 1, 10.0},
                                                           {2, 1, 7.0}, {3, 1, 6.0}});
        const ValueTable rebuilt = reconstruct_value_function(solve_memoryless(inst), inst);
        CHECK(rebuilt[inst.reward(0).state] == doctest::Approx(15.0));
        CHECK(testing::max_abs_diff(value_iteration(inst, 1e-9).values, rebuilt.values) <= 1e-6);
    }
}

TEST_CASE("solver properties on random instances") {
    std::mt19937_64 rng(20240611);
    testing::InstanceShape shape;
    shape.max_side = 20;
    for (int trial = 0; trial < 150; ++trial) {
        const MdpInstance inst = testing::random_instance(rng, shape);
        if (inst.env().state_count() > 400) continue;
        SolveStats stats;
        const PeakList peaks = solve_memoryless(inst, &stats);
        const std::size_t n_rewards = inst.rewards().size();

        // Coverage: every reward exactly once.
        std::vector<int> seen(n_rewards, 0);
        for (const Peak& p : peaks) {
            for (RewardId id : p.covered()) ++seen[id];
            REQUIRE(p.primary.value > 0.0);
            REQUIRE(p.covered().size() == (p.kind == PeakKind::Combined ? 2u : 1u));
            if (p.kind == PeakKind::Combined) {
                REQUIRE(inst.env().distance(p.primary.state, p.secondary->state) == 1);
            }
        }
        REQUIRE(std::all_of(seen.begin(), seen.end(), [](int n) { return n == 1; }));
        REQUIRE(peaks.size() <= n_rewards);

        // Selection values never increase.
        for (std::size_t k = 1; k < peaks.size(); ++k) REQUIRE(peaks[k].value() <= peaks[k - 1].value());

        // Bookkeeping bounded by |R| * |A| + |R|.
        REQUIRE(stats.max_bookkeeping <= n_rewards * inst.env().action_count() + n_rewards);
        REQUIRE(stats.iterations == peaks.size());

        // Oracle equivalence.
        const ValueTable vi = value_iteration(inst, 1e-9);
        const ValueTable rebuilt = reconstruct_value_function(peaks, inst);
        REQUIRE(testing::max_abs_diff(vi.values, rebuilt.values) <= 1e-6);

        // Off-reward states obey V(s) = gamma * max neighbor V.
        for (std::size_t s = 0; s < rebuilt.size(); ++s) {
            if (inst.reward_at(StateId{s})) continue;
            double best = 0.0;
            for (const Transition& t : inst.env().neighbors(StateId{s})) best = std::max(best, rebuilt.values[t.next.index]);
            REQUIRE(rebuilt.values[s] == doctest::Approx(inst.gamma() * best).epsilon(1e-12));
        }

        // Memoized mode selects the same peaks and its table is the reconstruction.
        const MemoizedSolution memo = solve_memoized(inst);
        REQUIRE(memo.peaks == peaks);
        REQUIRE(testing::max_abs_diff(memo.values, rebuilt.values) <= 1e-12);
    }
}

TEST_CASE("solver on graph environments matches value iteration") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        // Random connected undirected graph: a spanning path plus extra edges.
        const std::size_t n = 6 + rng() % 10;
        const std::size_t degree_cap = 4;
        std::vector<std::vector<Transition>> succ(n);
        auto link = [&](std::size_t a, std::size_t b) {
            if (a == b || succ[a].size() >= degree_cap || succ[b].size() >= degree_cap) return;
            for (const Transition& t : succ[a]) {
                if (t.next.index == b) return;
            }
            succ[a].push_back({ActionId{succ[a].size()}, StateId{b}});
            succ[b].push_back({ActionId{succ[b].size()}, StateId{a}});
        };
        for (std::size_t s = 1; s < n; ++s) link(s - 1, s);
        for (int e = 0; e < 6; ++e) link(rng() % n, rng() % n);
        auto env = std::make_shared<GraphWorld>(degree_cap, succ);

        std::set<std::size_t> cells;
        const std::size_t k = 1 + rng() % 4;
        while (cells.size() < k) cells.insert(rng() % n);
        std::vector<RewardSource> rewards;
        for (std::size_t c : cells) rewards.push_back({0, StateId{c}, double(1 + rng() % 10)});
        const MdpInstance inst(env, rewards, trial % 2 ? 0.9 : 0.5);

        const ValueTable rebuilt = reconstruct_value_function(solve_memoryless(inst), inst);
        CHECK(testing::max_abs_diff(value_iteration(inst, 1e-10).values, rebuilt.values) <= 1e-6);
    }
}
