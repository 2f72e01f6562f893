#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "navlearn/task.hpp"

namespace navlearn {

class Scheduler;

/// Full learner state between steps: current state, current policy, and the
/// working memory of states already departed from in the running trial.
struct Configuration {
    StateId state = 0;
    Policy policy;
    StateSet memory;

    bool operator==(const Configuration&) const = default;
};

struct ConfigurationHash {
    size_t operator()(const Configuration& cfg) const {
        size_t h = cfg.memory.hash();
        h = h * 1099511628211ull ^ static_cast<size_t>(cfg.state);
        for (ActionId a : cfg.policy.assignment) h = h * 1099511628211ull ^ static_cast<size_t>(a);
        return h;
    }
};

/// One admissible step: perform `action` and land on `next`.
struct Option {
    ActionId action = 0;
    StateId next = 0;

    bool operator==(const Option&) const = default;
};

/// A configuration branches when its current state is already in working
/// memory, i.e. the trial has come back to a state it departed from before.
inline bool is_branching(const Configuration& cfg) { return cfg.memory.contains(cfg.state); }

/// Admissible options of a configuration, canonically ordered (action order,
/// then successor order). Branching configurations offer every action; all
/// others offer only the policy action.
std::vector<Option> options(const Task& task, const Configuration& cfg);

/// Applies an option: the departed state's policy entry becomes the chosen
/// action, the departed state joins working memory, and the current state
/// becomes the chosen successor. No other policy entry changes. Throws
/// std::logic_error when the option is not admissible for cfg.
Configuration apply_option(const Task& task, const Configuration& cfg, const Option& option);

struct TransitionRecord {
    Configuration source;
    ActionId action = 0;
    StateId next_state = 0;
    Configuration target;
    bool is_reward = false;
    bool source_branching = false;
};

/// One trial: from (start, policy, empty memory) until a rewarded step or
/// the step cap. A truncated trial is data, not an error.
struct TrialRecord {
    StateId start_state = 0;
    std::vector<TransitionRecord> transitions;
    Policy end_policy;
    uint64_t length = 0;
    bool terminated_with_reward = false;
    bool truncated = false;
};

TrialRecord run_trial(const Task& task, StateId start, const Policy& policy, Scheduler& scheduler,
                      uint64_t step_cap);

/// Per-trial bookkeeping kept for every trial of a run (cheap; no
/// configuration copies).
struct TrialSummary {
    uint64_t trial_index = 0;  // 1-based position in the run
    StateId start_state = 0;
    uint64_t length = 0;
    bool terminated_with_reward = false;
    bool truncated = false;
    bool policy_changed = false;  // end policy differs from the trial's start policy
    bool converged_here = false;  // this trial's end policy was detected as final
    uint64_t branching_steps = 0;  // transitions taken from a branching configuration

    bool operator==(const TrialSummary&) const = default;
};

struct RunOptions {
    uint64_t step_cap = 1'000'000;
    uint64_t trial_cap = 100'000;
    /// Initial position of the round-robin rotation over the start states.
    size_t start_rotation = 0;
    /// Keep full TrialRecords (with configurations) alongside the summaries.
    bool keep_trial_records = false;
};

/// A run: consecutive trials with round-robin start states, the policy
/// carried from trial to trial and working memory reset each trial.
struct RunRecord {
    std::vector<TrialSummary> trials;
    std::vector<TrialRecord> trial_records;  // filled only when requested
    /// 1-based index of the first trial whose end policy passed the
    /// final-policy form test; absent when caps were hit first.
    std::optional<uint64_t> convergence_trial_index;
    std::optional<Policy> final_policy;
    /// Policy after the last executed trial (equals final_policy on
    /// converged runs).
    Policy last_policy;
    /// Round-robin position after the run; pass as start_rotation to
    /// continue the same run.
    size_t start_rotation = 0;
};

/// Runs trials until the first end-of-trial policy passes the final-policy
/// form test. Stops without convergence when a trial truncates or trial_cap
/// trials complete.
RunRecord run_until_convergence(const Task& task, Scheduler& scheduler, Policy initial_policy,
                                const RunOptions& options = {});

/// Runs exactly `trials` trials regardless of convergence (truncated trials
/// are recorded and the run continues). Convergence is still detected and
/// reported when it happens.
RunRecord run_fixed_trials(const Task& task, Scheduler& scheduler, Policy initial_policy,
                           uint64_t trials, const RunOptions& options = {});

}  // namespace navlearn
