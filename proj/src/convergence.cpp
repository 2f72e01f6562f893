#include "navlearn/convergence.hpp"

namespace navlearn {

StateSet ground(const Task& task, const Policy& policy) {
    StateSet result(task.num_states());
    for (StateId q : goal_states(task).to_vector())
        if (task.is_reward(q, policy.at(q))) result.insert(q);
    return result;
}

LayerSequence forward_set(const Task& task, const Policy& policy) {
    StateSet grounded = ground(task, policy);

    LayerSequence seq;
    StateSet first(task.num_states());
    for (StateId q : task.start_states()) first.insert(q);
    seq.layers.push_back(std::move(first));

    for (;;) {
        const StateSet& prev = seq.layers.back();
        StateSet next = prev;
        for (StateId q : prev.to_vector()) {
            if (grounded.contains(q)) continue;
            for (StateId s : task.successors(q, policy.at(q))) next.insert(s);
        }
        if (next == prev) break;
        seq.layers.push_back(std::move(next));
    }
    seq.fixpoint_index = static_cast<int>(seq.layers.size());
    return seq;
}

LayerSequence backward_set(const Task& task, const Policy& policy) {
    LayerSequence seq;
    seq.layers.push_back(ground(task, policy));

    for (;;) {
        const StateSet& prev = seq.layers.back();
        StateSet next = prev;
        for (StateId q = 0; q < task.num_states(); ++q) {
            if (next.contains(q)) continue;
            if (prev.contains_all(task.successors(q, policy.at(q)))) next.insert(q);
        }
        if (next == prev) break;
        seq.layers.push_back(std::move(next));
    }
    seq.fixpoint_index = static_cast<int>(seq.layers.size());
    return seq;
}

bool is_final_policy(const Task& task, const Policy& policy) {
    return forward_set(task, policy).fixpoint().is_subset_of(backward_set(task, policy).fixpoint());
}

PolicyAnalysis analyze_policy(const Task& task, const Policy& policy) {
    PolicyAnalysis out;
    out.ground = ground(task, policy);
    out.forward = forward_set(task, policy);
    out.backward = backward_set(task, policy);
    out.is_final = out.forward.fixpoint().is_subset_of(out.backward.fixpoint());
    return out;
}

}  // namespace navlearn
