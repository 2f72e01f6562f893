#pragma once

#include <random>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "navlearn/engine.hpp"

namespace navlearn {

/// Chooses among the admissible options of a configuration. `opts` is always
/// nonempty and canonically ordered; the engine consults the scheduler on
/// every step, so a scheduler sees each configuration occurrence exactly
/// once.
class Scheduler {
public:
    virtual ~Scheduler() = default;
    virtual Option choose(const Configuration& cfg, std::span<const Option> opts) = 0;
};

/// Deterministic fair scheduler: keyed on the full configuration, the i-th
/// occurrence of a configuration picks the option with ordinal
/// (i mod |opts|) + 1. Every option of an infinitely recurring configuration
/// is therefore taken infinitely often.
class RotatingScheduler : public Scheduler {
public:
    Option choose(const Configuration& cfg, std::span<const Option> opts) override {
        uint64_t& count = counts_[cfg];
        Option picked = opts[count % opts.size()];
        ++count;
        return picked;
    }

private:
    std::unordered_map<Configuration, uint64_t, ConfigurationHash> counts_;
};

/// Converts the next generator output to a double in [0, 1) using the top
/// 53 bits, so results are identical on every platform.
inline double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Seeded scheduler drawing one uniform index over the whole option set,
/// covering action and successor choice in a single draw.
class RandomScheduler : public Scheduler {
public:
    explicit RandomScheduler(uint64_t seed) : rng_(seed) {}
    explicit RandomScheduler(std::mt19937_64 rng) : rng_(rng) {}

    Option choose(const Configuration&, std::span<const Option> opts) override {
        auto i = static_cast<size_t>(unit_draw(rng_) * static_cast<double>(opts.size()));
        if (i >= opts.size()) i = opts.size() - 1;  // guard the rounding edge
        return opts[i];
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Replays a fixed option script, verifying each scripted option is
/// admissible where it is used. With `loop` the script repeats forever.
/// Intended for reproducing worked trials step by step.
class ScriptedScheduler : public Scheduler {
public:
    explicit ScriptedScheduler(std::vector<Option> script, bool loop = false)
        : script_(std::move(script)), loop_(loop) {}

    Option choose(const Configuration&, std::span<const Option> opts) override {
        if (pos_ >= script_.size()) {
            if (!loop_ || script_.empty()) throw std::runtime_error("option script exhausted");
            pos_ = 0;
        }
        Option next = script_[pos_++];
        for (const Option& o : opts)
            if (o == next) return next;
        throw std::runtime_error("scripted option is not admissible here");
    }

private:
    std::vector<Option> script_;
    size_t pos_ = 0;
    bool loop_ = false;
};

/// Draws one uniformly random action per state, in canonical state order.
Policy random_initial_policy(const Task& task, std::mt19937_64& rng);

/// Per-run seed derivation: a splitmix64-style mix of the master seed and
/// two salts (e.g. task size and run index), so runs are independent and a
/// (master_seed, salts) triple always names the same run.
uint64_t derive_seed(uint64_t master_seed, uint64_t salt_a, uint64_t salt_b);

}  // namespace navlearn
