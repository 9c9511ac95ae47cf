#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "peakmdp/mdp.hpp"

namespace peakmdp::bench {

enum class Experiment { Rewards, States, Discount };
enum class SolverKind { Memoized, Memoryless, ValueIteration };

std::string_view to_string(Experiment e);
std::string_view to_string(SolverKind s);
Experiment experiment_from_string(std::string_view name);
SolverKind solver_from_string(std::string_view name);

struct GridShape {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t states() const noexcept { return width * height; }
};

/// One sweep: every (grid, reward count, gamma) combination is a sweep point,
/// each run on `configs_per_point` random reward layouts. The experiment
/// names the axis being varied; the other lists normally hold one value.
struct SweepConfig {
    Experiment experiment = Experiment::Rewards;
    std::vector<GridShape> grids;
    std::vector<std::size_t> reward_counts;
    std::vector<double> gammas;
    std::size_t configs_per_point = 10;
    std::uint64_t seed = 1;
    std::vector<SolverKind> solvers;
    double residual = 1e-9;

    /// 50x50 reward-count sweep, 5-reward state-count sweep up to 50x50, or
    /// 50x50 5-reward discount sweep; 10 configurations per point, all solvers.
    static SweepConfig defaults(Experiment e);

    /// Throws ValidationError on an empty parameter list, configs_per_point of
    /// 0, or a reward count larger than some grid.
    void validate() const;
};

/// Overrides `SweepConfig::defaults(experiment)` with whatever fields the
/// document sets: "experiment" (required), "grids" ([[w, h], ...]),
/// "reward_counts", "gammas", "configs_per_point", "seed", "solvers", "residual".
SweepConfig load_sweep_config(std::string_view text);

struct BenchRecord {
    Experiment experiment = Experiment::Rewards;
    std::size_t config_id = 0;
    SolverKind solver = SolverKind::Memoryless;
    std::size_t n_rewards = 0;
    std::size_t n_states = 0;
    double gamma = 0.0;
    double wall_seconds = 0.0;
    std::optional<double> max_abs_diff_vs_vi;

    // Not part of the CSV.
    std::size_t vi_iterations = 0;
    std::string error;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// `n_rewards` distinct cells drawn uniformly, integer values uniform in
/// [1, 10]. Fully determined by the arguments.
MdpInstance generate_config(std::uint64_t seed, GridShape grid, std::size_t n_rewards, double gamma);

/// Seed of configuration `config_index` at sweep point `point_index`.
std::uint64_t config_seed(std::uint64_t sweep_seed, std::size_t point_index, std::size_t config_index);

using ProgressFn = std::function<void(const BenchRecord&)>;

/// Runs every requested solver on every configuration, timing only the solve
/// call. Rows are in sweep order, then solver name. When value iteration ran
/// on a configuration, every row of that configuration carries the max-abs
/// difference to its table. A failed solve yields a row with `error` set and
/// the sweep carries on.
std::vector<BenchRecord> run_sweep(const SweepConfig& config, const ProgressFn& progress = {});

inline constexpr std::string_view kCsvHeader =
    "experiment,config_id,solver,n_rewards,n_states,gamma,wall_seconds,max_abs_diff_vs_vi";

/// Header plus one row per successful record. Failed records are skipped.
std::string write_csv(std::span<const BenchRecord> records);
std::vector<BenchRecord> read_csv(std::string_view text);

}  // namespace peakmdp::bench
