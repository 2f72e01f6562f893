#include "navlearn/analysis.hpp"

#include <deque>

namespace navlearn {

std::optional<int> LayerSequence::first_layer_containing(StateId q) const {
    for (size_t i = 0; i < layers.size(); ++i)
        if (layers[i].contains(q)) return static_cast<int>(i) + 1;
    return std::nullopt;
}

LayerSequence reducibility_layers(const Task& task, const StateSet& seed) {
    LayerSequence seq;
    seq.layers.push_back(seed);
    for (;;) {
        const StateSet& prev = seq.layers.back();
        StateSet next = prev;
        for (StateId q = 0; q < task.num_states(); ++q) {
            if (next.contains(q)) continue;
            for (ActionId a = 0; a < task.num_actions(); ++a) {
                if (prev.contains_all(task.successors(q, a))) {
                    next.insert(q);
                    break;
                }
            }
        }
        if (next == prev) break;
        seq.layers.push_back(std::move(next));
    }
    seq.fixpoint_index = static_cast<int>(seq.layers.size());
    return seq;
}

StateSet reduce_set(const Task& task) {
    return reducibility_layers(task, goal_states(task)).fixpoint();
}

bool is_reducible(const Task& task) {
    return reduce_set(task).size() == task.num_states();
}

std::pair<StateSet, StateSet> unstable_and_border(const Task& task) {
    StateSet reduced = reduce_set(task);
    StateSet unstable(task.num_states());
    for (StateId q = 0; q < task.num_states(); ++q)
        if (!reduced.contains(q)) unstable.insert(q);

    StateSet border(task.num_states());
    for (StateId q : reduced.to_vector()) {
        for (ActionId a = 0; a < task.num_actions(); ++a) {
            if (unstable.contains_any(task.successors(q, a))) {
                border.insert(q);
                break;
            }
        }
    }
    return {unstable, border};
}

namespace {

// Breadth-first search over unrewarded steps from every state in `from`.
StateSet reach_forward(const Task& task, const std::vector<StateId>& from) {
    StateSet seen(task.num_states());
    std::deque<StateId> queue;
    for (StateId q : from) {
        if (!seen.contains(q)) {
            seen.insert(q);
            queue.push_back(q);
        }
    }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        for (ActionId a = 0; a < task.num_actions(); ++a) {
            if (task.is_reward(q, a)) continue;
            for (StateId s : task.successors(q, a)) {
                if (!seen.contains(s)) {
                    seen.insert(s);
                    queue.push_back(s);
                }
            }
        }
    }
    return seen;
}

// States with an unrewarded path into `targets`: backward closure under the
// step relation, computed by iterating until no state joins.
StateSet reach_backward(const Task& task, const StateSet& targets) {
    StateSet seen = targets;
    bool grew = true;
    while (grew) {
        grew = false;
        for (StateId q = 0; q < task.num_states(); ++q) {
            if (seen.contains(q)) continue;
            for (ActionId a = 0; a < task.num_actions(); ++a) {
                if (task.is_reward(q, a)) continue;
                if (seen.contains_any(task.successors(q, a))) {
                    seen.insert(q);
                    grew = true;
                    break;
                }
            }
        }
    }
    return seen;
}

}  // namespace

bool path_exists(const Task& task, StateId from, const StateSet& targets) {
    if (targets.contains(from)) return true;
    return reach_forward(task, {from}).intersects(targets);
}

StateSet reachable_states(const Task& task) {
    return reach_forward(task, task.start_states());
}

NecessaryConditionsReport check_necessary_conditions(const Task& task) {
    NecessaryConditionsReport report;
    report.reachable = reachable_states(task);

    StateSet reaches_goals = reach_backward(task, goal_states(task));
    report.without_path_to_goals = StateSet(task.num_states());
    for (StateId q = 0; q < task.num_states(); ++q)
        if (!reaches_goals.contains(q)) report.without_path_to_goals.insert(q);

    report.every_reachable_state_reaches_goals =
        !report.reachable.intersects(report.without_path_to_goals);

    StateSet reduced = reduce_set(task);
    report.start_states_reducible = true;
    for (StateId q : task.start_states())
        if (!reduced.contains(q)) report.start_states_reducible = false;

    return report;
}

}  // namespace navlearn
