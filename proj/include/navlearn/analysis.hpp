#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "navlearn/task.hpp"

namespace navlearn {

/// A monotone sequence of state sets ending at its fixpoint. layers[0] is
/// the seed (ordinal 1); the sequence stops at the first layer whose
/// successor would repeat it, so layers.size() == fixpoint_index and no two
/// stored layers are equal.
struct LayerSequence {
    std::vector<StateSet> layers;
    int fixpoint_index = 0;  // 1-based ordinal of the last (fixpoint) layer

    const StateSet& fixpoint() const { return layers.back(); }

    /// 1-based ordinal of the first layer containing q, if any.
    std::optional<int> first_layer_containing(StateId q) const;
};

/// Layer i extends layer i-1 with every state that has some action whose
/// successors all lie in layer i-1. Grows monotonically, so the fixpoint is
/// reached after at most num_states + 1 layers.
LayerSequence reducibility_layers(const Task& task, const StateSet& seed);

/// Fixpoint of the layer recurrence seeded with the goal states.
StateSet reduce_set(const Task& task);

/// True when reduce_set covers every state.
bool is_reducible(const Task& task);

/// unstable = states outside reduce_set; border = states inside reduce_set
/// with at least one action that can land in unstable. Returned as
/// (unstable, border).
std::pair<StateSet, StateSet> unstable_and_border(const Task& task);

/// True when some path of unrewarded steps leads from `from` to a state in
/// `targets` (the empty path counts when `from` is already a target).
/// Existence of such a path with all-distinct states coincides with plain
/// reachability, so this is a breadth-first search.
bool path_exists(const Task& task, StateId from, const StateSet& targets);

/// States reachable from the start states via unrewarded steps.
StateSet reachable_states(const Task& task);

/// The two structural conditions every learnable task satisfies:
/// (a) every reachable state has an unrewarded path to the goal states, and
/// (b) every start state lies in reduce_set.
struct NecessaryConditionsReport {
    StateSet reachable;
    StateSet without_path_to_goals;  // over all states, reachable or not
    bool every_reachable_state_reaches_goals = false;
    bool start_states_reducible = false;

    bool all_hold() const { return every_reachable_state_reaches_goals && start_states_reducible; }
};

NecessaryConditionsReport check_necessary_conditions(const Task& task);

}  // namespace navlearn
