// Command-line front end: analyze / run / policy-analyze / gen / experiment.
//
// Exit codes: 0 success, 1 usage error, 2 bad task/policy/sketch file or
// violated invariant, 3 caps hit without convergence.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "navlearn/analysis.hpp"
#include "navlearn/convergence.hpp"
#include "navlearn/engine.hpp"
#include "navlearn/experiments.hpp"
#include "navlearn/generators.hpp"
#include "navlearn/scheduler.hpp"
#include "navlearn/task.hpp"
#include "navlearn/task_io.hpp"

namespace {

using namespace navlearn;

/// Flag-level problems found after CLI11 parsing (range syntax, p bounds).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int parse_positive_int(const std::string& text) {
    size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw UsageError("'" + text + "' is not a number");
    }
    if (used != text.size()) throw UsageError("'" + text + "' is not a number");
    if (value < 1) throw UsageError("sizes must be at least 1, got '" + text + "'");
    return value;
}

/// "2..8", "3", or comma-separated mixtures like "2..4,7". Ranges are
/// inclusive.
std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    size_t pos = 0;
    while (true) {
        size_t comma = text.find(',', pos);
        std::string piece =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        if (piece.empty()) throw UsageError("empty entry in --sizes '" + text + "'");
        size_t dots = piece.find("..");
        if (dots == std::string::npos) {
            sizes.push_back(parse_positive_int(piece));
        } else {
            int lo = parse_positive_int(piece.substr(0, dots));
            int hi = parse_positive_int(piece.substr(dots + 2));
            if (lo > hi)
                throw UsageError("descending range '" + piece + "' in --sizes");
            for (int v = lo; v <= hi; ++v) sizes.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return sizes;
}

void require_open_interval(double p) {
    if (!(p > 0.0 && p < 1.0)) throw UsageError("--p must lie strictly between 0 and 1");
}

/// Writes through a .tmp sibling and renames on success, so a failed
/// invocation never leaves a partial file at the target path.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& emit) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        try {
            emit(out);
            out.flush();
        } catch (...) {
            out.close();
            std::filesystem::remove(tmp);
            throw;
        }
        if (!out) {
            out.close();
            std::filesystem::remove(tmp);
            throw std::runtime_error("write to '" + tmp.string() + "' failed");
        }
    }
    std::filesystem::rename(tmp, path);
}

void emit_output(const std::string& out_path, const std::function<void(std::ostream&)>& emit) {
    if (out_path.empty())
        emit(std::cout);
    else
        write_file_atomically(out_path, emit);
}

Task load_and_validate(const std::string& path) {
    Task task = load_task_file(path);
    std::vector<std::string> problems = validate(task);
    if (!problems.empty()) {
        std::string message = "invalid task '" + path + "':";
        for (const std::string& p : problems) message += "\n  " + p;
        throw TaskFormatError(0, message);
    }
    return task;
}

const char* cell(bool b) { return b ? "1" : "0"; }

std::string describe_set(const Task& task, const StateSet& set) {
    if (set.empty()) return "none";
    return format_state_set(task, set);
}

int cmd_analyze(const std::string& task_path, const std::string& out_path) {
    Task task = load_and_validate(task_path);
    LayerSequence layers = reducibility_layers(task, goal_states(task));
    auto [unstable, border] = unstable_and_border(task);
    NecessaryConditionsReport conditions = check_necessary_conditions(task);

    const StateSet& reduce = layers.fixpoint();
    std::cout << "task: " << task_path << "\n";
    std::cout << "states: " << task.num_states() << "  actions: " << task.num_actions()
              << "  start states: " << task.start_states().size()
              << "  goal states: " << goal_states(task).size() << "\n";
    std::cout << "reducibility layers: " << layers.fixpoint_index << "\n";
    if (is_reducible(task))
        std::cout << "reducible: all " << task.num_states() << " states\n";
    else
        std::cout << "reducible: " << reduce.size() << " of " << task.num_states() << " states\n";
    std::cout << "unstable states: " << describe_set(task, unstable) << "\n";
    std::cout << "border states: " << describe_set(task, border) << "\n";
    std::cout << "every reachable state has a path to the goals: "
              << (conditions.every_reachable_state_reaches_goals ? "yes" : "no") << "\n";
    std::cout << "start states inside the reducibility fixpoint: "
              << (conditions.start_states_reducible ? "yes" : "no") << "\n";

    if (!out_path.empty()) {
        write_file_atomically(out_path, [&](std::ostream& out) {
            out << "state,in_reduce,in_unstable,in_border,reducibility_layer_index\n";
            for (StateId q = 0; q < task.num_states(); ++q) {
                out << task.state_name(q) << ',' << cell(reduce.contains(q)) << ','
                    << cell(unstable.contains(q)) << ',' << cell(border.contains(q)) << ',';
                if (auto layer = layers.first_layer_containing(q)) out << *layer;
                out << '\n';
            }
        });
    }
    return 0;
}

struct RunFlags {
    std::string task_path;
    std::string scheduler;
    uint64_t seed = 0;
    uint64_t step_cap = 1'000'000;
    uint64_t trial_cap = 100'000;
    std::string policy_path;
    std::string out_path;
    std::string policy_out_path;
};

int cmd_run(const RunFlags& flags) {
    Task task = load_and_validate(flags.task_path);

    std::mt19937_64 rng(flags.seed);
    Policy initial = flags.policy_path.empty() ? random_initial_policy(task, rng)
                                               : load_policy_file(task, flags.policy_path);

    RotatingScheduler rotating;
    RandomScheduler random(rng);
    Scheduler& scheduler =
        flags.scheduler == "rotating" ? static_cast<Scheduler&>(rotating) : random;

    RunOptions options;
    options.step_cap = flags.step_cap;
    options.trial_cap = flags.trial_cap;
    RunRecord record = run_until_convergence(task, scheduler, initial, options);

    emit_output(flags.out_path, [&](std::ostream& out) {
        out << "trial_index,start_state,length,terminated_with_reward,policy_changed,"
               "converged_here\n";
        for (const TrialSummary& t : record.trials) {
            out << t.trial_index << ',' << task.state_name(t.start_state) << ',' << t.length
                << ',' << cell(t.terminated_with_reward) << ',' << cell(t.policy_changed) << ','
                << cell(t.converged_here) << '\n';
        }
    });

    if (!flags.policy_out_path.empty()) {
        const Policy& final_or_last =
            record.final_policy ? *record.final_policy : record.last_policy;
        write_file_atomically(flags.policy_out_path, [&](std::ostream& out) {
            out << serialize_policy(task, final_or_last);
        });
    }

    if (record.convergence_trial_index) {
        std::cerr << "converged at trial " << *record.convergence_trial_index << "\n";
        return 0;
    }
    std::cerr << "no convergence within caps (" << record.trials.size() << " trials run)\n";
    return 3;
}

int cmd_policy_analyze(const std::string& task_path, const std::string& policy_path,
                       const std::string& out_path) {
    Task task = load_and_validate(task_path);
    Policy policy = load_policy_file(task, policy_path);
    PolicyAnalysis report = analyze_policy(task, policy);

    const StateSet& forward = report.forward.fixpoint();
    const StateSet& backward = report.backward.fixpoint();
    StateSet gap(task.num_states());
    for (StateId q = 0; q < task.num_states(); ++q)
        if (forward.contains(q) && !backward.contains(q)) gap.insert(q);

    std::cout << "task: " << task_path << "\n";
    std::cout << "policy: " << policy_path << "\n";
    std::cout << "ground: " << describe_set(task, report.ground) << "\n";
    std::cout << "forward fixpoint: " << describe_set(task, forward) << "\n";
    std::cout << "backward fixpoint: " << describe_set(task, backward) << "\n";
    std::cout << "forward states missing from backward: " << describe_set(task, gap) << "\n";
    std::cout << "final-policy form test (forward subset of backward): "
              << (report.is_final ? "PASS" : "FAIL") << "\n";

    if (!out_path.empty()) {
        write_file_atomically(out_path, [&](std::ostream& out) {
            out << "state,policy_action,in_ground,in_forward,in_backward,in_gap\n";
            for (StateId q = 0; q < task.num_states(); ++q) {
                out << task.state_name(q) << ',' << task.action_name(policy.at(q)) << ','
                    << cell(report.ground.contains(q)) << ',' << cell(forward.contains(q)) << ','
                    << cell(backward.contains(q)) << ',' << cell(gap.contains(q)) << '\n';
            }
        });
    }
    return 0;
}

int emit_task(const Task& task, const std::string& out_path) {
    emit_output(out_path, [&](std::ostream& out) { out << serialize_task(task); });
    return 0;
}

struct ConvergenceFlags {
    std::string family;
    std::string sizes;
    int runs = 0;
    double p = 0.9;
    uint64_t seed = 0;
    uint64_t step_cap = 1'000'000;
    uint64_t trial_cap = 100'000;
    int jobs = 1;
    std::string out_path;
};

int cmd_experiment_convergence(const ConvergenceFlags& flags) {
    require_open_interval(flags.p);
    ConvergenceExperimentSpec spec;
    spec.family = flags.family == "corridor" ? TaskFamily::corridor : TaskFamily::chain;
    spec.sizes = parse_sizes(flags.sizes);
    spec.runs_per_size = flags.runs;
    spec.p = flags.p;
    spec.master_seed = flags.seed;
    spec.caps.step_cap = flags.step_cap;
    spec.caps.trial_cap = flags.trial_cap;
    spec.jobs = flags.jobs;

    ConvergenceTable table = convergence_index_experiment(spec);
    emit_output(flags.out_path, [&](std::ostream& out) { write_csv(table, out); });

    int failures = 0;
    for (const ConvergencePoint& row : table.rows) failures += row.failures;
    if (failures > 0) {
        std::cerr << failures << " run(s) hit the caps without converging\n";
        return 3;
    }
    return 0;
}

struct TrialLengthFlags {
    std::string task_path;
    int runs = 0;
    int trials = 0;
    double p = 0.9;
    uint64_t seed = 0;
    uint64_t step_cap = 1'000'000;
    int skip_first = 0;
    int jobs = 1;
    std::string out_path;
};

int cmd_experiment_trial_length(const TrialLengthFlags& flags) {
    require_open_interval(flags.p);
    Task task = load_and_validate(flags.task_path);

    TrialLengthExperimentSpec spec;
    spec.runs = flags.runs;
    spec.trials_per_run = flags.trials;
    spec.p = flags.p;
    spec.master_seed = flags.seed;
    spec.caps.step_cap = flags.step_cap;
    spec.jobs = flags.jobs;

    TrialLengthTable table = trial_length_experiment(task, spec);
    emit_output(flags.out_path,
                [&](std::ostream& out) { write_csv(table, out, flags.skip_first); });

    if (table.truncated_trials > 0) {
        std::cerr << table.truncated_trials << " trial(s) hit the step cap\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"navigation learning toolkit: simulate cycle-detection learners and analyze "
                 "task structure"};
    app.require_subcommand(1);

    std::string an_task, an_out;
    CLI::App* analyze = app.add_subcommand("analyze", "reducibility and structure report");
    analyze->add_option("--task", an_task, "task file")->required();
    analyze->add_option("--out", an_out, "per-state CSV output path");

    RunFlags run_flags;
    CLI::App* run = app.add_subcommand("run", "run a learner until convergence or caps");
    run->add_option("--task", run_flags.task_path, "task file")->required();
    run->add_option("--scheduler", run_flags.scheduler, "option scheduler")
        ->required()
        ->check(CLI::IsMember({"rotating", "random"}));
    run->add_option("--seed", run_flags.seed,
                    "seed for the initial policy and the random scheduler");
    run->add_option("--step-cap", run_flags.step_cap, "per-trial step limit")
        ->check(CLI::PositiveNumber);
    run->add_option("--trial-cap", run_flags.trial_cap, "trial limit")
        ->check(CLI::PositiveNumber);
    run->add_option("--policy", run_flags.policy_path,
                    "initial policy file (default: seeded random policy)");
    run->add_option("--out", run_flags.out_path, "per-trial CSV output path");
    run->add_option("--policy-out", run_flags.policy_out_path,
                    "write the end-of-run policy to this file");

    std::string pa_task, pa_policy, pa_out;
    CLI::App* policy_analyze =
        app.add_subcommand("policy-analyze", "final-policy form test for a policy file");
    policy_analyze->add_option("--task", pa_task, "task file")->required();
    policy_analyze->add_option("--policy", pa_policy, "policy file")->required();
    policy_analyze->add_option("--out", pa_out, "per-state CSV output path");

    CLI::App* gen = app.add_subcommand("gen", "emit generated task files");
    gen->require_subcommand(1);
    int corridor_length = 0;
    std::string gen_corridor_out;
    CLI::App* gen_corridor = gen->add_subcommand("corridor", "corridor grid task");
    gen_corridor->add_option("--length", corridor_length, "corridor length")->required();
    gen_corridor->add_option("--out", gen_corridor_out, "output path (default stdout)");
    int chain_n = 0;
    std::string gen_chain_out;
    CLI::App* gen_chain = gen->add_subcommand("chain", "linear chain task");
    gen_chain->add_option("--n", chain_n, "number of chain actions")->required();
    gen_chain->add_option("--out", gen_chain_out, "output path (default stdout)");
    std::string sketch_path, gen_grid_out;
    CLI::App* gen_grid = gen->add_subcommand("grid", "grid task from a sketch file");
    gen_grid->add_option("--spec", sketch_path,
                         "sketch file ('.' cell, '#' absent, 'S' start, 'G' goal)")
        ->required();
    gen_grid->add_option("--out", gen_grid_out, "output path (default stdout)");

    CLI::App* experiment = app.add_subcommand("experiment", "seeded batch experiments");
    experiment->require_subcommand(1);
    ConvergenceFlags conv_flags;
    CLI::App* conv = experiment->add_subcommand(
        "convergence", "quantile of convergence trial indexes per task size");
    conv->add_option("--family", conv_flags.family, "task family")
        ->required()
        ->check(CLI::IsMember({"corridor", "chain"}));
    conv->add_option("--sizes", conv_flags.sizes, "sizes, e.g. 2..8 or 2,4,6")->required();
    conv->add_option("--runs", conv_flags.runs, "runs per size")
        ->required()
        ->check(CLI::PositiveNumber);
    conv->add_option("--p", conv_flags.p, "quantile order (default 0.9)");
    conv->add_option("--seed", conv_flags.seed, "master seed");
    conv->add_option("--step-cap", conv_flags.step_cap, "per-trial step limit")
        ->check(CLI::PositiveNumber);
    conv->add_option("--trial-cap", conv_flags.trial_cap, "per-run trial limit")
        ->check(CLI::PositiveNumber);
    conv->add_option("--jobs", conv_flags.jobs, "worker threads")->check(CLI::PositiveNumber);
    conv->add_option("--out", conv_flags.out_path, "CSV output path (default stdout)");

    TrialLengthFlags len_flags;
    CLI::App* length = experiment->add_subcommand(
        "trial-length", "quantile of trial lengths per trial index");
    length->add_option("--task", len_flags.task_path, "task file")->required();
    length->add_option("--runs", len_flags.runs, "number of runs")
        ->required()
        ->check(CLI::PositiveNumber);
    length->add_option("--trials", len_flags.trials, "trials per run")
        ->required()
        ->check(CLI::PositiveNumber);
    length->add_option("--p", len_flags.p, "quantile order (default 0.9)");
    length->add_option("--seed", len_flags.seed, "master seed");
    length->add_option("--step-cap", len_flags.step_cap, "per-trial step limit")
        ->check(CLI::PositiveNumber);
    length->add_option("--skip-first", len_flags.skip_first,
                       "omit the first N trial indexes from the CSV")
        ->check(CLI::NonNegativeNumber);
    length->add_option("--jobs", len_flags.jobs, "worker threads")->check(CLI::PositiveNumber);
    length->add_option("--out", len_flags.out_path, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(an_task, an_out);
        if (run->parsed()) return cmd_run(run_flags);
        if (policy_analyze->parsed()) return cmd_policy_analyze(pa_task, pa_policy, pa_out);
        if (gen->parsed()) {
            if (gen_corridor->parsed()) return emit_task(corridor_task(corridor_length),
                                                         gen_corridor_out);
            if (gen_chain->parsed()) return emit_task(chain_task(chain_n), gen_chain_out);
            if (gen_grid->parsed()) {
                std::ifstream in(sketch_path, std::ios::binary);
                if (!in) throw std::runtime_error("cannot open sketch '" + sketch_path + "'");
                std::string text((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
                return emit_task(grid_task(parse_grid_sketch(text)), gen_grid_out);
            }
        }
        if (experiment->parsed()) {
            if (conv->parsed()) return cmd_experiment_convergence(conv_flags);
            if (length->parsed()) return cmd_experiment_trial_length(len_flags);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
