#pragma once

#include "navlearn/analysis.hpp"
#include "navlearn/task.hpp"

namespace navlearn {

/// Goal states whose assigned action is rewarded: {q in goals | (q, policy(q)) rewarded}.
StateSet ground(const Task& task, const Policy& policy);

/// Forward closure of the start states under the policy: layer 1 is the
/// start set; each later layer adds the policy successors of members outside
/// ground(policy). Over-approximates the states a policy-following run can
/// visit.
LayerSequence forward_set(const Task& task, const Policy& policy);

/// Backward closure of ground(policy): a state joins once all its policy
/// successors are already in. States in the fixpoint are guaranteed to reach
/// a rewarded step under the policy.
LayerSequence backward_set(const Task& task, const Policy& policy);

/// The final-policy form test: true iff the forward fixpoint is contained in
/// the backward fixpoint. An end-of-trial policy passes exactly when no
/// later trial can ever modify it.
bool is_final_policy(const Task& task, const Policy& policy);

struct PolicyAnalysis {
    StateSet ground;
    LayerSequence forward;
    LayerSequence backward;
    bool is_final = false;
};

PolicyAnalysis analyze_policy(const Task& task, const Policy& policy);

}  // namespace navlearn
