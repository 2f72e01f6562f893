#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "navlearn/state_set.hpp"

namespace navlearn {

/// A deterministic total policy: one action per state, indexed by StateId.
struct Policy {
    std::vector<ActionId> assignment;

    ActionId at(StateId q) const { return assignment[static_cast<size_t>(q)]; }
    void set(StateId q, ActionId a) { assignment[static_cast<size_t>(q)] = a; }

    bool operator==(const Policy&) const = default;
};

/// A navigation task: finitely many states and actions, nonempty start set,
/// rewarded (state, action) pairs, and a nondeterministic transition table
/// assigning each (state, action) a nonempty set of successor states.
///
/// States and actions are identified by their declaration order, which is
/// the canonical total order used for every set iteration in the toolkit.
/// Construction canonicalizes rewards and successor sets (sorted ascending)
/// but performs no semantic checks; `validate` reports violations, so tests
/// and callers may build intentionally broken tasks.
class Task {
public:
    Task() = default;

    Task(std::vector<std::string> states,
         std::vector<std::string> actions,
         std::vector<StateId> start_states,
         std::vector<std::pair<StateId, ActionId>> rewards,
         std::vector<std::vector<std::vector<StateId>>> delta);

    int num_states() const { return static_cast<int>(states_.size()); }
    int num_actions() const { return static_cast<int>(actions_.size()); }

    const std::vector<std::string>& states() const { return states_; }
    const std::vector<std::string>& actions() const { return actions_; }
    const std::string& state_name(StateId q) const { return states_[static_cast<size_t>(q)]; }
    const std::string& action_name(ActionId a) const { return actions_[static_cast<size_t>(a)]; }

    std::optional<StateId> state_id(std::string_view name) const;
    std::optional<ActionId> action_id(std::string_view name) const;

    /// Start states in ascending canonical order.
    const std::vector<StateId>& start_states() const { return start_states_; }

    /// Rewarded pairs sorted by (state, action).
    const std::vector<std::pair<StateId, ActionId>>& rewards() const { return rewards_; }

    bool is_reward(StateId q, ActionId a) const {
        return reward_flags_[static_cast<size_t>(q) * actions_.size() + static_cast<size_t>(a)];
    }

    /// Successor set of (q, a) in ascending canonical order.
    const std::vector<StateId>& successors(StateId q, ActionId a) const {
        return delta_[static_cast<size_t>(q)][static_cast<size_t>(a)];
    }

    const std::vector<std::vector<std::vector<StateId>>>& delta() const { return delta_; }

    bool operator==(const Task& other) const;

private:
    std::vector<std::string> states_;
    std::vector<std::string> actions_;
    std::vector<StateId> start_states_;
    std::vector<std::pair<StateId, ActionId>> rewards_;
    std::vector<std::vector<std::vector<StateId>>> delta_;

    // Derived lookups, rebuilt on construction.
    std::unordered_map<std::string, StateId> state_index_;
    std::unordered_map<std::string, ActionId> action_index_;
    std::vector<char> reward_flags_;  // num_states x num_actions
};

/// States with at least one rewarded action. Nonempty for every valid task.
StateSet goal_states(const Task& task);

/// Checks every task invariant and returns one message per violation;
/// an empty report means the task is well formed.
std::vector<std::string> validate(const Task& task);

/// Renders a state set as "{name, name, ...}" in canonical order.
std::string format_state_set(const Task& task, const StateSet& set);

}  // namespace navlearn
