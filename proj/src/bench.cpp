#include "peakmdp/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "peakmdp/grid_world.hpp"
#include "peakmdp/oracle.hpp"
#include "peakmdp/policy.hpp"
#include "peakmdp/solver.hpp"

namespace peakmdp::bench {
namespace {

using nlohmann::json;

[[noreturn]] void bad_config(const std::string& what) {
    throw ValidationError(ValidationCode::Malformed, "sweep config: " + what);
}

std::string format_real(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_real(std::string_view s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ValidationError(ValidationCode::Malformed, "bad number '" + std::string(s) + "' in CSV");
    }
    return v;
}

std::size_t parse_count(std::string_view s) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        throw ValidationError(ValidationCode::Malformed, "bad integer '" + std::string(s) + "' in CSV");
    }
    return v;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

template <typename T>
std::vector<T> list_of(const json& doc, const char* key) {
    const json& v = doc.at(key);
    if (!v.is_array()) bad_config(std::string(key) + " must be an array");
    try {
        return v.get<std::vector<T>>();
    } catch (const json::exception&) {
        bad_config(std::string(key) + " has entries of the wrong type");
    }
}

}  // namespace

std::string_view to_string(Experiment e) {
    switch (e) {
    case Experiment::Rewards: return "rewards";
    case Experiment::States: return "states";
    case Experiment::Discount: return "discount";
    }
    return "unknown";
}

std::string_view to_string(SolverKind s) {
    switch (s) {
    case SolverKind::Memoized: return "memoized";
    case SolverKind::Memoryless: return "memoryless";
    case SolverKind::ValueIteration: return "vi";
    }
    return "unknown";
}

Experiment experiment_from_string(std::string_view name) {
    for (Experiment e : {Experiment::Rewards, Experiment::States, Experiment::Discount}) {
        if (to_string(e) == name) return e;
    }
    throw ValidationError(ValidationCode::Malformed, "unknown experiment '" + std::string(name) + "'");
}

SolverKind solver_from_string(std::string_view name) {
    for (SolverKind s : {SolverKind::Memoized, SolverKind::Memoryless, SolverKind::ValueIteration}) {
        if (to_string(s) == name) return s;
    }
    throw ValidationError(ValidationCode::Malformed, "unknown solver '" + std::string(name) + "'");
}

SweepConfig SweepConfig::defaults(Experiment e) {
    SweepConfig c;
    c.experiment = e;
    c.solvers = {SolverKind::ValueIteration, SolverKind::Memoized, SolverKind::Memoryless};
    switch (e) {
    case Experiment::Rewards:
        c.grids = {{50, 50}};
        c.reward_counts = {1, 2, 5, 10, 15, 20, 25, 30, 40, 50};
        c.gammas = {0.9};
        break;
    case Experiment::States:
        c.grids = {{10, 10}, {20, 20}, {30, 30}, {40, 40}, {50, 50}};
        c.reward_counts = {5};
        c.gammas = {0.9};
        break;
    case Experiment::Discount:
        c.grids = {{50, 50}};
        c.reward_counts = {5};
        c.gammas = {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
        break;
    }
    return c;
}

void SweepConfig::validate() const {
    if (grids.empty() || reward_counts.empty() || gammas.empty()) {
        bad_config("grids, reward_counts and gammas must be non-empty");
    }
    if (configs_per_point < 1) bad_config("configs_per_point must be at least 1");
    if (!(residual > 0.0)) bad_config("residual must be positive");
    for (const GridShape& g : grids) {
        if (g.width < 1 || g.height < 1) bad_config("grid dimensions must be at least 1");
        for (std::size_t n : reward_counts) {
            if (n < 1 || n > g.states()) {
                bad_config("reward count " + std::to_string(n) + " does not fit a " + std::to_string(g.width) + "x" +
                           std::to_string(g.height) + " grid");
            }
        }
    }
    for (double gamma : gammas) {
        if (!(gamma > 0.0 && gamma < 1.0)) {
            throw ValidationError(ValidationCode::GammaOutOfRange, "sweep config: gamma must lie in (0, 1)");
        }
    }
}

SweepConfig load_sweep_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad_config(e.what());
    }
    if (!doc.is_object()) bad_config("document must be an object");
    static const std::unordered_set<std::string> known = {"experiment", "grids",  "reward_counts", "gammas",
                                                          "configs_per_point", "seed", "solvers", "residual"};
    for (const auto& item : doc.items()) {
        if (!known.count(item.key())) {
            throw ValidationError(ValidationCode::UnknownField, "sweep config: unknown field '" + item.key() + "'");
        }
    }
    if (!doc.contains("experiment") || !doc.at("experiment").is_string()) bad_config("'experiment' is required");

    SweepConfig c = SweepConfig::defaults(experiment_from_string(doc.at("experiment").get<std::string>()));
    if (doc.contains("grids")) {
        c.grids.clear();
        for (const auto& pair : list_of<std::vector<std::size_t>>(doc, "grids")) {
            if (pair.size() != 2) bad_config("each grid must be [width, height]");
            c.grids.push_back({pair[0], pair[1]});
        }
    }
    if (doc.contains("reward_counts")) c.reward_counts = list_of<std::size_t>(doc, "reward_counts");
    if (doc.contains("gammas")) c.gammas = list_of<double>(doc, "gammas");
    if (doc.contains("solvers")) {
        c.solvers.clear();
        for (const auto& name : list_of<std::string>(doc, "solvers")) c.solvers.push_back(solver_from_string(name));
    }
    try {
        if (doc.contains("configs_per_point")) c.configs_per_point = doc.at("configs_per_point").get<std::size_t>();
        if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("residual")) c.residual = doc.at("residual").get<double>();
    } catch (const json::exception&) {
        bad_config("configs_per_point, seed and residual must be numbers");
    }
    c.validate();
    return c;
}

std::uint64_t config_seed(std::uint64_t sweep_seed, std::size_t point_index, std::size_t config_index) {
    std::seed_seq seq{static_cast<std::uint32_t>(sweep_seed), static_cast<std::uint32_t>(sweep_seed >> 32),
                      static_cast<std::uint32_t>(point_index), static_cast<std::uint32_t>(config_index)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

MdpInstance generate_config(std::uint64_t seed, GridShape grid, std::size_t n_rewards, double gamma) {
    const std::size_t n_states = grid.states();
    if (n_rewards > n_states) {
        throw ValidationError(ValidationCode::Malformed, "cannot place " + std::to_string(n_rewards) +
                                                             " rewards on " + std::to_string(n_states) + " states");
    }
    std::mt19937_64 rng(seed);
    // Floyd's sampling: n distinct cells in O(n) draws.
    std::vector<std::size_t> cells;
    std::unordered_set<std::size_t> taken;
    cells.reserve(n_rewards);
    for (std::size_t j = n_states - n_rewards; j < n_states; ++j) {
        const std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(rng);
        const std::size_t cell = taken.count(t) ? j : t;
        taken.insert(cell);
        cells.push_back(cell);
    }
    std::uniform_int_distribution<int> value(1, 10);
    std::vector<RewardSource> rewards;
    rewards.reserve(n_rewards);
    for (std::size_t cell : cells) {
        rewards.push_back({rewards.size(), StateId{cell}, static_cast<double>(value(rng))});
    }
    return MdpInstance(std::make_shared<const GridWorld>(grid.width, grid.height), std::move(rewards), gamma);
}

std::vector<BenchRecord> run_sweep(const SweepConfig& config, const ProgressFn& progress) {
    config.validate();
    using Clock = std::chrono::steady_clock;
    const auto seconds_since = [](Clock::time_point start) {
        return std::max(std::chrono::duration<double>(Clock::now() - start).count(), 1e-9);
    };

    std::vector<SolverKind> solvers = config.solvers;
    std::sort(solvers.begin(), solvers.end(), [](SolverKind a, SolverKind b) { return to_string(a) < to_string(b); });
    solvers.erase(std::unique(solvers.begin(), solvers.end()), solvers.end());
    const bool with_vi = std::find(solvers.begin(), solvers.end(), SolverKind::ValueIteration) != solvers.end();

    std::vector<BenchRecord> out;
    std::size_t point = 0;
    std::size_t config_id = 0;
    for (const GridShape& grid : config.grids) {
        for (std::size_t n_rewards : config.reward_counts) {
            for (double gamma : config.gammas) {
                for (std::size_t c = 0; c < config.configs_per_point; ++c, ++config_id) {
                    const MdpInstance instance =
                        generate_config(config_seed(config.seed, point, c), grid, n_rewards, gamma);

                    BenchRecord base;
                    base.experiment = config.experiment;
                    base.config_id = config_id;
                    base.n_rewards = n_rewards;
                    base.n_states = grid.states();
                    base.gamma = gamma;

                    // Value iteration goes first so the peak solvers can be compared with it.
                    std::optional<ValueTable> vi_table;
                    BenchRecord vi_row = base;
                    vi_row.solver = SolverKind::ValueIteration;
                    if (with_vi) {
                        try {
                            const auto start = Clock::now();
                            vi_table = value_iteration(instance, config.residual);
                            vi_row.wall_seconds = seconds_since(start);
                            vi_row.vi_iterations = vi_table->iterations;
                            vi_row.max_abs_diff_vs_vi = 0.0;
                        } catch (const std::exception& e) {
                            vi_row.error = e.what();
                        }
                    }

                    for (SolverKind solver : solvers) {
                        BenchRecord row = base;
                        row.solver = solver;
                        if (solver == SolverKind::ValueIteration) {
                            row = vi_row;
                        } else {
                            try {
                                std::vector<double> values;
                                const auto start = Clock::now();
                                if (solver == SolverKind::Memoryless) {
                                    const PeakList peaks = solve_memoryless(instance);
                                    row.wall_seconds = seconds_since(start);
                                    if (vi_table) values = reconstruct_value_function(peaks, instance).values;
                                } else {
                                    MemoizedSolution sol = solve_memoized(instance);
                                    row.wall_seconds = seconds_since(start);
                                    values = std::move(sol.values);
                                }
                                if (vi_table) row.max_abs_diff_vs_vi = max_abs_diff(values, vi_table->values);
                            } catch (const std::exception& e) {
                                row.error = e.what();
                            }
                        }
                        if (progress) progress(row);
                        out.push_back(std::move(row));
                    }
                }
                ++point;
            }
        }
    }
    return out;
}

std::string write_csv(std::span<const BenchRecord> records) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const BenchRecord& r : records) {
        if (!r.error.empty()) continue;
        out += to_string(r.experiment);
        out += ',' + std::to_string(r.config_id);
        out += ',';
        out += to_string(r.solver);
        out += ',' + std::to_string(r.n_rewards);
        out += ',' + std::to_string(r.n_states);
        out += ',' + format_real(r.gamma);
        out += ',' + format_real(r.wall_seconds);
        out += ',';
        if (r.max_abs_diff_vs_vi) out += format_real(*r.max_abs_diff_vs_vi);
        out += '\n';
    }
    return out;
}

std::vector<BenchRecord> read_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ValidationError(ValidationCode::Malformed, "CSV header does not match the bench schema");
    }
    std::vector<BenchRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string_view> fields;
        std::string_view rest(line);
        for (;;) {
            const auto comma = rest.find(',');
            fields.push_back(rest.substr(0, comma));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (fields.size() != 8) {
            throw ValidationError(ValidationCode::Malformed, "CSV row has " + std::to_string(fields.size()) + " fields");
        }
        BenchRecord r;
        r.experiment = experiment_from_string(fields[0]);
        r.config_id = parse_count(fields[1]);
        r.solver = solver_from_string(fields[2]);
        r.n_rewards = parse_count(fields[3]);
        r.n_states = parse_count(fields[4]);
        r.gamma = parse_real(fields[5]);
        r.wall_seconds = parse_real(fields[6]);
        if (!fields[7].empty()) r.max_abs_diff_vs_vi = parse_real(fields[7]);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace peakmdp::bench
