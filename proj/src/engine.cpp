#include "navlearn/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "navlearn/convergence.hpp"
#include "navlearn/scheduler.hpp"

namespace navlearn {
namespace {

void fill_options(const Task& task, const Configuration& cfg, std::vector<Option>& out) {
    out.clear();
    if (is_branching(cfg)) {
        for (ActionId a = 0; a < task.num_actions(); ++a)
            for (StateId s : task.successors(cfg.state, a)) out.push_back({a, s});
    } else {
        ActionId a = cfg.policy.at(cfg.state);
        for (StateId s : task.successors(cfg.state, a)) out.push_back({a, s});
    }
}

// One trial, mutating `policy` in place so runs carry it across trials
// without copies. Full transition records (with configuration snapshots)
// are produced only when `record` is non-null.
TrialSummary run_one_trial(const Task& task, StateId start, Policy& policy, Scheduler& scheduler,
                           uint64_t step_cap, TrialRecord* record) {
    Configuration cfg;
    cfg.state = start;
    cfg.policy = std::move(policy);
    cfg.memory = StateSet(task.num_states());

    Policy start_policy = cfg.policy;
    TrialSummary summary;
    summary.start_state = start;
    if (record) record->start_state = start;

    std::vector<Option> opts;
    opts.reserve(16);
    for (;;) {
        bool branching = is_branching(cfg);
        fill_options(task, cfg, opts);
        Option chosen = scheduler.choose(cfg, opts);
        bool rewarded = task.is_reward(cfg.state, chosen.action);

        TransitionRecord transition;
        if (record) {
            transition.source = cfg;
            transition.action = chosen.action;
            transition.next_state = chosen.next;
            transition.is_reward = rewarded;
            transition.source_branching = branching;
        }

        cfg.policy.set(cfg.state, chosen.action);
        cfg.memory.insert(cfg.state);
        cfg.state = chosen.next;
        ++summary.length;
        if (branching) ++summary.branching_steps;

        if (record) {
            transition.target = cfg;
            record->transitions.push_back(std::move(transition));
        }

        if (rewarded) {
            summary.terminated_with_reward = true;
            break;
        }
        if (summary.length >= step_cap) {
            summary.truncated = true;
            break;
        }
    }

    summary.policy_changed = !(cfg.policy == start_policy);
    policy = std::move(cfg.policy);
    if (record) {
        record->end_policy = policy;
        record->length = summary.length;
        record->terminated_with_reward = summary.terminated_with_reward;
        record->truncated = summary.truncated;
    }
    return summary;
}

// Shared run loop. fixed_trials == 0 means run until convergence (or until
// a truncation / the trial cap ends the run without it).
RunRecord run_impl(const Task& task, Scheduler& scheduler, Policy policy, const RunOptions& options,
                   uint64_t fixed_trials) {
    RunRecord rec;
    const auto& starts = task.start_states();
    if (starts.empty()) throw std::logic_error("cannot run a task with no start states");
    rec.start_rotation = options.start_rotation % starts.size();

    uint64_t max_trials = fixed_trials ? fixed_trials : options.trial_cap;
    for (uint64_t t = 1; t <= max_trials; ++t) {
        StateId start = starts[rec.start_rotation];
        rec.start_rotation = (rec.start_rotation + 1) % starts.size();

        TrialRecord record;
        TrialSummary summary = run_one_trial(task, start, policy, scheduler, options.step_cap,
                                             options.keep_trial_records ? &record : nullptr);
        summary.trial_index = t;

        if (summary.terminated_with_reward && !rec.convergence_trial_index &&
            is_final_policy(task, policy)) {
            summary.converged_here = true;
            rec.convergence_trial_index = t;
            rec.final_policy = policy;
        }

        rec.trials.push_back(summary);
        if (options.keep_trial_records) rec.trial_records.push_back(std::move(record));

        if (fixed_trials == 0 && (rec.convergence_trial_index || summary.truncated)) break;
    }
    rec.last_policy = std::move(policy);
    return rec;
}

}  // namespace

std::vector<Option> options(const Task& task, const Configuration& cfg) {
    std::vector<Option> out;
    fill_options(task, cfg, out);
    return out;
}

Configuration apply_option(const Task& task, const Configuration& cfg, const Option& option) {
    std::vector<Option> admissible = options(task, cfg);
    if (std::find(admissible.begin(), admissible.end(), option) == admissible.end())
        throw std::logic_error("option (" + task.action_name(option.action) + ", " +
                               task.state_name(option.next) +
                               ") is not admissible for this configuration");
    Configuration next = cfg;
    next.policy.set(cfg.state, option.action);
    next.memory.insert(cfg.state);
    next.state = option.next;
    return next;
}

TrialRecord run_trial(const Task& task, StateId start, const Policy& policy, Scheduler& scheduler,
                      uint64_t step_cap) {
    TrialRecord record;
    Policy working = policy;
    run_one_trial(task, start, working, scheduler, step_cap, &record);
    return record;
}

RunRecord run_until_convergence(const Task& task, Scheduler& scheduler, Policy initial_policy,
                                const RunOptions& options) {
    return run_impl(task, scheduler, std::move(initial_policy), options, 0);
}

RunRecord run_fixed_trials(const Task& task, Scheduler& scheduler, Policy initial_policy,
                           uint64_t trials, const RunOptions& options) {
    return run_impl(task, scheduler, std::move(initial_policy), options, trials);
}

}  // namespace navlearn
