#include "navlearn/task.hpp"

#include <algorithm>
#include <sstream>

namespace navlearn {

Task::Task(std::vector<std::string> states,
           std::vector<std::string> actions,
           std::vector<StateId> start_states,
           std::vector<std::pair<StateId, ActionId>> rewards,
           std::vector<std::vector<std::vector<StateId>>> delta)
    : states_(std::move(states)),
      actions_(std::move(actions)),
      start_states_(std::move(start_states)),
      rewards_(std::move(rewards)),
      delta_(std::move(delta)) {
    std::sort(start_states_.begin(), start_states_.end());
    std::sort(rewards_.begin(), rewards_.end());
    for (auto& row : delta_)
        for (auto& image : row) std::sort(image.begin(), image.end());

    for (size_t i = 0; i < states_.size(); ++i) state_index_.emplace(states_[i], static_cast<StateId>(i));
    for (size_t i = 0; i < actions_.size(); ++i) action_index_.emplace(actions_[i], static_cast<ActionId>(i));

    reward_flags_.assign(states_.size() * actions_.size(), 0);
    for (auto [q, a] : rewards_) {
        if (q >= 0 && static_cast<size_t>(q) < states_.size() && a >= 0 &&
            static_cast<size_t>(a) < actions_.size())
            reward_flags_[static_cast<size_t>(q) * actions_.size() + static_cast<size_t>(a)] = 1;
    }
}

std::optional<StateId> Task::state_id(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    return it == state_index_.end() ? std::nullopt : std::optional<StateId>(it->second);
}

std::optional<ActionId> Task::action_id(std::string_view name) const {
    auto it = action_index_.find(std::string(name));
    return it == action_index_.end() ? std::nullopt : std::optional<ActionId>(it->second);
}

bool Task::operator==(const Task& other) const {
    return states_ == other.states_ && actions_ == other.actions_ &&
           start_states_ == other.start_states_ && rewards_ == other.rewards_ &&
           delta_ == other.delta_;
}

StateSet goal_states(const Task& task) {
    StateSet goals(task.num_states());
    for (auto [q, a] : task.rewards()) {
        if (q >= 0 && q < task.num_states()) goals.insert(q);
    }
    return goals;
}

std::vector<std::string> validate(const Task& task) {
    std::vector<std::string> report;
    const int nq = task.num_states();
    const int na = task.num_actions();

    if (nq == 0) report.push_back("task has no states");
    if (na == 0) report.push_back("task has no actions");

    for (int i = 0; i < nq; ++i)
        for (int j = i + 1; j < nq; ++j)
            if (task.states()[static_cast<size_t>(i)] == task.states()[static_cast<size_t>(j)])
                report.push_back("duplicate state name '" + task.states()[static_cast<size_t>(i)] + "'");
    for (int i = 0; i < na; ++i)
        for (int j = i + 1; j < na; ++j)
            if (task.actions()[static_cast<size_t>(i)] == task.actions()[static_cast<size_t>(j)])
                report.push_back("duplicate action name '" + task.actions()[static_cast<size_t>(i)] + "'");

    if (task.start_states().empty()) report.push_back("start state set is empty");
    for (StateId q : task.start_states())
        if (q < 0 || q >= nq) report.push_back("start state index out of range");

    if (task.rewards().empty()) report.push_back("reward set is empty");
    for (size_t i = 0; i < task.rewards().size(); ++i) {
        auto [q, a] = task.rewards()[i];
        if (q < 0 || q >= nq || a < 0 || a >= na) {
            report.push_back("reward pair references unknown state or action");
            continue;
        }
        if (i > 0 && task.rewards()[i] == task.rewards()[i - 1])
            report.push_back("duplicate reward pair (" + task.state_name(q) + ", " + task.action_name(a) + ")");
    }

    if (static_cast<int>(task.delta().size()) != nq) {
        report.push_back("transition table does not cover every state");
        return report;
    }
    for (int q = 0; q < nq; ++q) {
        const auto& row = task.delta()[static_cast<size_t>(q)];
        if (static_cast<int>(row.size()) != na) {
            report.push_back("transition table row for state '" + task.state_name(q) +
                             "' does not cover every action");
            continue;
        }
        for (int a = 0; a < na; ++a) {
            const auto& image = row[static_cast<size_t>(a)];
            if (image.empty())
                report.push_back("empty successor set for (" + task.state_name(q) + ", " +
                                 task.action_name(a) + ")");
            for (size_t i = 0; i < image.size(); ++i) {
                if (image[i] < 0 || image[i] >= nq) {
                    report.push_back("successor out of range for (" + task.state_name(q) + ", " +
                                     task.action_name(a) + ")");
                    break;
                }
                if (i > 0 && image[i] == image[i - 1]) {
                    report.push_back("duplicate successor for (" + task.state_name(q) + ", " +
                                     task.action_name(a) + ")");
                    break;
                }
            }
        }
    }
    return report;
}

std::string format_state_set(const Task& task, const StateSet& set) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (StateId q : set.to_vector()) {
        if (!first) out << ", ";
        out << task.state_name(q);
        first = false;
    }
    out << "}";
    return out.str();
}

}  // namespace navlearn
