// Command-line front end: solve instances, query values, follow the policy,
// compare against value iteration and run benchmark sweeps.
//
// Exit codes: 0 success, 1 invalid input, 2 solve failure, 3 tolerance breach.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "peakmdp/bench.hpp"
#include "peakmdp/documents.hpp"
#include "peakmdp/instance_io.hpp"
#include "peakmdp/oracle.hpp"
#include "peakmdp/policy.hpp"
#include "peakmdp/solver.hpp"

namespace {

using namespace peakmdp;
using Clock = std::chrono::steady_clock;

constexpr int kExitInvalid = 1;
constexpr int kExitSolveFailed = 2;
constexpr int kExitTolerance = 3;
constexpr double kCompareTolerance = 1e-6;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

StateId parse_cell(const std::string& text, const GridWorld& grid) {
    const auto comma = text.find(',');
    std::size_t x = 0;
    std::size_t y = 0;
    try {
        if (comma == std::string::npos) throw std::invalid_argument("missing comma");
        std::size_t used_x = 0;
        std::size_t used_y = 0;
        const std::string xs = text.substr(0, comma);
        const std::string ys = text.substr(comma + 1);
        if (xs.empty() || ys.empty() || xs[0] == '-' || ys[0] == '-') throw std::invalid_argument("sign");
        x = std::stoul(xs, &used_x);
        y = std::stoul(ys, &used_y);
        if (used_x != xs.size() || used_y != ys.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
        throw ValidationError(ValidationCode::Malformed, "expected a cell as x,y but got '" + text + "'");
    }
    if (x >= grid.width() || y >= grid.height()) {
        throw ValidationError(ValidationCode::RewardOutOfBounds, "cell " + text + " is outside the " +
                                                                     std::to_string(grid.width()) + "x" +
                                                                     std::to_string(grid.height()) + " grid");
    }
    return grid.state_at(x, y);
}

int cmd_solve(const std::string& instance_path, const std::string& mode, const std::string& out_path) {
    const MdpInstance instance = load_instance_file(instance_path);
    PeakList peaks;
    const auto start = Clock::now();
    try {
        peaks = mode == "memoized" ? solve_memoized(instance).peaks : solve_memoryless(instance);
    } catch (const Error& e) {
        std::cerr << "solve failed: " << e.what() << "\n";
        return kExitSolveFailed;
    }
    const double elapsed = seconds_since(start);
    write_text_file(out_path, dump_peak_list(peaks, grid_of(instance.env()), instance.gamma()));
    std::printf("peaks: %zu\nwall_seconds: %.6e\n", peaks.size(), elapsed);
    return 0;
}

int cmd_value(const std::string& peaks_path, const std::string& cell) {
    const PeakListDocument doc = load_peak_list(read_text_file(peaks_path));
    const StateId s = parse_cell(cell, *doc.grid);
    std::printf("%.9g\n", value_on_demand(doc.peaks.peaks(), s, *doc.grid, doc.gamma));
    return 0;
}

int cmd_follow(const std::string& peaks_path, const std::string& start, std::size_t steps) {
    const PeakListDocument doc = load_peak_list(read_text_file(peaks_path));
    const StateId initial = parse_cell(start, *doc.grid);
    if (steps < 1) {
        throw ValidationError(ValidationCode::Malformed, "--steps must be at least 1");
    }
    try {
        const Trajectory t = follow_local_policy(doc.peaks, initial, steps, *doc.grid, doc.gamma);
        std::fputs(dump_trajectory(t, *doc.grid).c_str(), stdout);
    } catch (const DeadEndError& e) {
        std::fputs(dump_trajectory(e.partial(), *doc.grid).c_str(), stdout);
        std::cerr << e.what() << "\n";
        return kExitSolveFailed;
    }
    return 0;
}

int cmd_compare(const std::string& instance_path, double residual, const std::string& values_out) {
    const MdpInstance instance = load_instance_file(instance_path);
    ValueTable vi;
    PeakList peaks;
    double vi_seconds = 0.0;
    double memoryless_seconds = 0.0;
    try {
        auto start = Clock::now();
        vi = value_iteration(instance, residual);
        vi_seconds = seconds_since(start);
        start = Clock::now();
        peaks = solve_memoryless(instance);
        memoryless_seconds = seconds_since(start);
    } catch (const Error& e) {
        std::cerr << "solve failed: " << e.what() << "\n";
        return kExitSolveFailed;
    }
    const ValueTable rebuilt = reconstruct_value_function(peaks, instance);
    double diff = 0.0;
    for (std::size_t i = 0; i < vi.size(); ++i) diff = std::max(diff, std::abs(vi.values[i] - rebuilt.values[i]));
    if (!values_out.empty()) {
        write_text_file(values_out, dump_value_table(vi, grid_of(instance.env())));
    }
    std::printf("max_abs_diff: %.3e\nvi_seconds: %.6e\nvi_iterations: %zu\nmemoryless_seconds: %.6e\npeaks: %zu\n",
                diff, vi_seconds, vi.iterations, memoryless_seconds, peaks.size());
    if (!(diff <= kCompareTolerance)) {
        std::cerr << "difference exceeds tolerance " << kCompareTolerance << "\n";
        return kExitTolerance;
    }
    return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_path) {
    const bench::SweepConfig config = bench::load_sweep_config(read_text_file(config_path));
    const auto records = bench::run_sweep(config, [](const bench::BenchRecord& r) {
        if (!r.error.empty()) {
            std::cerr << "config " << r.config_id << " " << bench::to_string(r.solver) << " failed: " << r.error
                      << "\n";
        }
    });
    write_text_file(out_path, bench::write_csv(records));
    std::printf("rows: %zu\n", records.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for deterministic sparse-reward grid MDPs using peak lists"};
    app.require_subcommand(1);

    std::string path;
    std::string out;
    std::string mode = "memoryless";
    std::string cell;
    std::size_t steps = 1;
    double residual = kDefaultResidual;
    std::string values_out;

    auto* solve = app.add_subcommand("solve", "Solve an instance and write its peak list");
    solve->add_option("instance", path, "Instance document")->required();
    solve->add_option("--mode", mode, "memoryless or memoized")->check(CLI::IsMember({"memoryless", "memoized"}));
    solve->add_option("--out", out, "Peak list output path")->required();

    auto* value = app.add_subcommand("value", "Evaluate one state from a peak list");
    value->add_option("peaklist", path, "Peak list document")->required();
    value->add_option("--state", cell, "Cell as x,y")->required();

    auto* follow = app.add_subcommand("follow", "Follow the optimal policy from a start cell");
    follow->add_option("peaklist", path, "Peak list document")->required();
    follow->add_option("--start", cell, "Cell as x,y")->required();
    follow->add_option("--steps", steps, "Number of transitions")->required();

    auto* compare = app.add_subcommand("compare", "Check the peak solution against value iteration");
    compare->add_option("instance", path, "Instance document")->required();
    compare->add_option("--residual", residual, "Value iteration stopping residual");
    compare->add_option("--values-out", values_out, "Write the value iteration table here");

    auto* bench_cmd = app.add_subcommand("bench", "Run a timing sweep and write CSV");
    bench_cmd->add_option("config", path, "Sweep config document")->required();
    bench_cmd->add_option("--out", out, "CSV output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (*solve) return cmd_solve(path, mode, out);
        if (*value) return cmd_value(path, cell);
        if (*follow) return cmd_follow(path, cell, steps);
        if (*compare) return cmd_compare(path, residual, values_out);
        if (*bench_cmd) return cmd_bench(path, out);
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
