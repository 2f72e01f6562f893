#include "navlearn/scheduler.hpp"

namespace navlearn {

Policy random_initial_policy(const Task& task, std::mt19937_64& rng) {
    Policy policy;
    policy.assignment.resize(static_cast<size_t>(task.num_states()));
    for (StateId q = 0; q < task.num_states(); ++q) {
        auto a = static_cast<size_t>(unit_draw(rng) * static_cast<double>(task.num_actions()));
        if (a >= static_cast<size_t>(task.num_actions())) a = static_cast<size_t>(task.num_actions()) - 1;
        policy.assignment[static_cast<size_t>(q)] = static_cast<ActionId>(a);
    }
    return policy;
}

uint64_t derive_seed(uint64_t master_seed, uint64_t salt_a, uint64_t salt_b) {
    auto mix = [](uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(master_seed) ^ salt_a) ^ salt_b);
}

}  // namespace navlearn
