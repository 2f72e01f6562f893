#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "navlearn/task.hpp"
#include "navlearn/task_io.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
    return std::string(NAVLEARN_FIXTURES_DIR) + "/" + name;
}

inline navlearn::Task load_fixture(const std::string& name) {
    return navlearn::load_task_file(fixture_path(name));
}

/// Policy from action names listed in canonical state order.
inline navlearn::Policy make_policy(const navlearn::Task& task,
                                    const std::vector<std::string>& action_names) {
    navlearn::Policy p;
    for (const auto& name : action_names) {
        auto a = task.action_id(name);
        if (!a) throw std::runtime_error("unknown action " + name);
        p.assignment.push_back(*a);
    }
    if (static_cast<int>(p.assignment.size()) != task.num_states())
        throw std::runtime_error("policy size mismatch");
    return p;
}

inline std::vector<std::string> names_of(const navlearn::Task& task, const navlearn::StateSet& set) {
    std::vector<std::string> out;
    for (navlearn::StateId q : set.to_vector()) out.push_back(task.state_name(q));
    return out;
}

// ---------------------------------------------------------------------------
// Independent oracles. These recompute results from the raw definitions with
// plain std::set iteration (no early fixpoint exit, no bitsets) so they share
// no machinery with the library implementations they check.
// ---------------------------------------------------------------------------

/// Final-policy form test by naive set iteration.
inline bool oracle_is_final(const navlearn::Task& task, const navlearn::Policy& policy) {
    int n = task.num_states();

    std::set<int> grounded;
    for (auto [q, a] : task.rewards())
        if (policy.at(q) == a) grounded.insert(q);

    std::set<int> forward(task.start_states().begin(), task.start_states().end());
    for (int round = 0; round <= n + 1; ++round) {
        std::set<int> next = forward;
        for (int q : forward) {
            if (grounded.count(q)) continue;
            for (int s : task.successors(q, policy.at(q))) next.insert(s);
        }
        forward = next;
    }

    std::set<int> backward = grounded;
    for (int round = 0; round <= n + 1; ++round) {
        std::set<int> next = backward;
        for (int q = 0; q < n; ++q) {
            bool covered = true;
            for (int s : task.successors(q, policy.at(q)))
                if (!backward.count(s)) covered = false;
            if (covered) next.insert(q);
        }
        backward = next;
    }

    return std::includes(backward.begin(), backward.end(), forward.begin(), forward.end());
}

/// Enumerates paths of unrewarded steps with all-distinct states by DFS.
inline bool oracle_path_dfs(const navlearn::Task& task, int q, const std::set<int>& targets,
                            std::vector<char>& visited) {
    for (int a = 0; a < task.num_actions(); ++a) {
        if (task.is_reward(q, a)) continue;
        for (int s : task.successors(q, a)) {
            if (visited[static_cast<size_t>(s)]) continue;
            if (targets.count(s)) return true;
            visited[static_cast<size_t>(s)] = 1;
            if (oracle_path_dfs(task, s, targets, visited)) return true;
            visited[static_cast<size_t>(s)] = 0;
        }
    }
    return false;
}

inline bool oracle_path_exists(const navlearn::Task& task, int from, const std::set<int>& targets) {
    if (targets.count(from)) return true;
    std::vector<char> visited(static_cast<size_t>(task.num_states()), 0);
    visited[static_cast<size_t>(from)] = 1;
    return oracle_path_dfs(task, from, targets, visited);
}

/// Sorting-free order statistic: scans for the value whose rank interval
/// covers the wanted index.
inline double oracle_quantile(const std::vector<double>& values, double p) {
    double pn = p * static_cast<double>(values.size());
    auto j = static_cast<size_t>(pn);
    size_t wanted = pn - static_cast<double>(j) > 0.0 ? j + 1 : j;  // 1-based
    for (double candidate : values) {
        size_t below = 0, at_or_below = 0;
        for (double v : values) {
            if (v < candidate) ++below;
            if (v <= candidate) ++at_or_below;
        }
        if (below < wanted && wanted <= at_or_below) return candidate;
    }
    throw std::logic_error("oracle_quantile: no candidate matched");
}

// ---------------------------------------------------------------------------
// Random instances for property tests.
// ---------------------------------------------------------------------------

inline int pick(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

/// A small random task, valid by construction.
inline navlearn::Task random_task(std::mt19937_64& rng, int max_states = 6, int max_actions = 3) {
    int nq = pick(rng, 1, max_states);
    int na = pick(rng, 1, max_actions);
    std::vector<std::string> states, actions;
    for (int i = 0; i < nq; ++i) states.push_back("s" + std::to_string(i));
    for (int i = 0; i < na; ++i) actions.push_back("x" + std::to_string(i));

    std::vector<navlearn::StateId> start;
    for (int q = 0; q < nq; ++q)
        if (rng() % 2) start.push_back(q);
    if (start.empty()) start.push_back(pick(rng, 0, nq - 1));

    std::vector<std::pair<navlearn::StateId, navlearn::ActionId>> rewards;
    for (int q = 0; q < nq; ++q)
        for (int a = 0; a < na; ++a)
            if (rng() % 4 == 0) rewards.emplace_back(q, a);
    if (rewards.empty()) rewards.emplace_back(pick(rng, 0, nq - 1), pick(rng, 0, na - 1));

    std::vector<std::vector<std::vector<navlearn::StateId>>> delta(
        static_cast<size_t>(nq), std::vector<std::vector<navlearn::StateId>>(static_cast<size_t>(na)));
    for (int q = 0; q < nq; ++q)
        for (int a = 0; a < na; ++a) {
            auto& image = delta[static_cast<size_t>(q)][static_cast<size_t>(a)];
            for (int s = 0; s < nq; ++s)
                if (rng() % 3 == 0) image.push_back(s);
            if (image.empty()) image.push_back(pick(rng, 0, nq - 1));
        }

    return navlearn::Task(std::move(states), std::move(actions), std::move(start),
                          std::move(rewards), std::move(delta));
}

inline navlearn::Policy random_policy_on(const navlearn::Task& task, std::mt19937_64& rng) {
    navlearn::Policy p;
    for (int q = 0; q < task.num_states(); ++q)
        p.assignment.push_back(pick(rng, 0, task.num_actions() - 1));
    return p;
}

/// Calls fn with every total policy of the task (num_actions^num_states of
/// them), in lexicographic order.
template <typename Fn>
inline void for_each_policy(const navlearn::Task& task, Fn&& fn) {
    navlearn::Policy p;
    p.assignment.assign(static_cast<size_t>(task.num_states()), 0);
    for (;;) {
        fn(p);
        int q = 0;
        while (q < task.num_states()) {
            if (++p.assignment[static_cast<size_t>(q)] < task.num_actions()) break;
            p.assignment[static_cast<size_t>(q)] = 0;
            ++q;
        }
        if (q == task.num_states()) return;
    }
}

}  // namespace testutil
