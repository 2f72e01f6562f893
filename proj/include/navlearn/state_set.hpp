#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace navlearn {

/// Index of a state in a task's canonical (declaration) order.
using StateId = int;
/// Index of an action in a task's canonical (declaration) order.
using ActionId = int;

/// A set of states over a fixed universe of `universe_size` states.
///
/// Backed by a bit vector so membership tests and inserts are O(1) and the
/// whole set fits a few machine words for the task sizes this toolkit
/// targets. All iteration helpers yield members in ascending canonical
/// order, which keeps every downstream report and CSV deterministic.
class StateSet {
public:
    StateSet() = default;

    explicit StateSet(int universe_size)
        : universe_(universe_size), bits_((universe_size + 63) / 64, 0) {}

    static StateSet of(int universe_size, std::initializer_list<StateId> members) {
        StateSet s(universe_size);
        for (StateId q : members) s.insert(q);
        return s;
    }

    static StateSet full(int universe_size) {
        StateSet s(universe_size);
        for (StateId q = 0; q < universe_size; ++q) s.insert(q);
        return s;
    }

    int universe_size() const { return universe_; }

    bool contains(StateId q) const {
        assert(q >= 0 && q < universe_);
        return (bits_[static_cast<size_t>(q) >> 6] >> (q & 63)) & 1u;
    }

    void insert(StateId q) {
        assert(q >= 0 && q < universe_);
        bits_[static_cast<size_t>(q) >> 6] |= uint64_t{1} << (q & 63);
    }

    void clear() {
        for (auto& w : bits_) w = 0;
    }

    int size() const {
        int n = 0;
        for (uint64_t w : bits_) n += std::popcount(w);
        return n;
    }

    bool empty() const {
        for (uint64_t w : bits_)
            if (w) return false;
        return true;
    }

    bool is_subset_of(const StateSet& other) const {
        assert(universe_ == other.universe_);
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & ~other.bits_[i]) return false;
        return true;
    }

    bool intersects(const StateSet& other) const {
        assert(universe_ == other.universe_);
        for (size_t i = 0; i < bits_.size(); ++i)
            if (bits_[i] & other.bits_[i]) return true;
        return false;
    }

    void insert_all(const StateSet& other) {
        assert(universe_ == other.universe_);
        for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
    }

    /// True when every state in `ids` is a member.
    bool contains_all(const std::vector<StateId>& ids) const {
        for (StateId q : ids)
            if (!contains(q)) return false;
        return true;
    }

    /// True when at least one state in `ids` is a member.
    bool contains_any(const std::vector<StateId>& ids) const {
        for (StateId q : ids)
            if (contains(q)) return true;
        return false;
    }

    /// Members in ascending canonical order.
    std::vector<StateId> to_vector() const {
        std::vector<StateId> out;
        out.reserve(static_cast<size_t>(size()));
        for (StateId q = 0; q < universe_; ++q)
            if (contains(q)) out.push_back(q);
        return out;
    }

    bool operator==(const StateSet& other) const = default;

    size_t hash() const {
        size_t h = static_cast<size_t>(universe_);
        for (uint64_t w : bits_) h = h * 1099511628211ull ^ w;
        return h;
    }

private:
    int universe_ = 0;
    std::vector<uint64_t> bits_;
};

}  // namespace navlearn
