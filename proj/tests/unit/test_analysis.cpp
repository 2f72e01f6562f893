#include <doctest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "navlearn/analysis.hpp"

using namespace navlearn;

TEST_CASE("reducibility layers of the three-state loop fixture") {
    Task task = testutil::load_fixture("reducible3.task");
    LayerSequence seq = reducibility_layers(task, goal_states(task));

    REQUIRE(seq.layers.size() == 3);
    CHECK(seq.fixpoint_index == 3);
    CHECK(testutil::names_of(task, seq.layers[0]) == std::vector<std::string>{"3"});
    CHECK(testutil::names_of(task, seq.layers[1]) == std::vector<std::string>{"2", "3"});
    CHECK(testutil::names_of(task, seq.layers[2]) == std::vector<std::string>{"1", "2", "3"});

    CHECK(seq.first_layer_containing(*task.state_id("3")) == 1);
    CHECK(seq.first_layer_containing(*task.state_id("2")) == 2);
    CHECK(seq.first_layer_containing(*task.state_id("1")) == 3);

    CHECK(is_reducible(task));
    auto [unstable, border] = unstable_and_border(task);
    CHECK(unstable.empty());
    CHECK(border.empty());
}

TEST_CASE("an all-states seed is already its own fixpoint") {
    Task task = testutil::load_fixture("unstable3.task");
    LayerSequence seq = reducibility_layers(task, StateSet::full(task.num_states()));
    CHECK(seq.layers.size() == 1);
    CHECK(seq.fixpoint_index == 1);
    CHECK(seq.fixpoint() == StateSet::full(task.num_states()));
}

TEST_CASE("the drift-trap fixture is only partially reducible") {
    Task task = testutil::load_fixture("unstable3.task");

    CHECK_FALSE(is_reducible(task));
    CHECK(testutil::names_of(task, reduce_set(task)) == std::vector<std::string>{"1", "3"});

    auto [unstable, border] = unstable_and_border(task);
    CHECK(testutil::names_of(task, unstable) == std::vector<std::string>{"2"});
    CHECK(testutil::names_of(task, border) == std::vector<std::string>{"1"});

    // Both structural conditions still hold: state 2 keeps a lucky path to
    // the goal, it just cannot guarantee one.
    NecessaryConditionsReport report = check_necessary_conditions(task);
    CHECK(report.every_reachable_state_reaches_goals);
    CHECK(report.start_states_reducible);
    CHECK(report.all_hold());
    CHECK(testutil::names_of(task, report.reachable) ==
          std::vector<std::string>{"1", "2", "3"});
    CHECK(report.without_path_to_goals.empty());
}

TEST_CASE("necessary conditions fail for an unwinnable start") {
    Task task = parse_task(
        "states: 1 2\n"
        "start: 2\n"
        "actions: a\n"
        "reward: 1 a\n"
        "delta: 1 a -> 1\n"
        "delta: 2 a -> 2\n");
    NecessaryConditionsReport report = check_necessary_conditions(task);
    CHECK_FALSE(report.start_states_reducible);
    CHECK_FALSE(report.every_reachable_state_reaches_goals);
    CHECK_FALSE(report.all_hold());
    CHECK(testutil::names_of(task, report.without_path_to_goals) ==
          std::vector<std::string>{"2"});
}

TEST_CASE("unrewarded paths exist exactly when the step graph connects") {
    Task task = testutil::load_fixture("unstable3.task");
    StateSet goals = goal_states(task);
    CHECK(path_exists(task, *task.state_id("1"), goals));
    CHECK(path_exists(task, *task.state_id("2"), goals));
    CHECK(path_exists(task, *task.state_id("3"), goals));  // empty path

    // 1 is unreachable from 2 and 3.
    StateSet one = StateSet::of(task.num_states(), {*task.state_id("1")});
    CHECK_FALSE(path_exists(task, *task.state_id("2"), one));
    CHECK_FALSE(path_exists(task, *task.state_id("3"), one));
}

TEST_CASE("rewarded steps do not count as path steps") {
    // The only way from 1 to 2 uses a rewarded action, so no path exists.
    Task task = parse_task(
        "states: 1 2\n"
        "start: 1\n"
        "actions: a\n"
        "reward: 1 a\n"
        "delta: 1 a -> 2\n"
        "delta: 2 a -> 2\n");
    StateSet two = StateSet::of(2, {1});
    CHECK_FALSE(path_exists(task, 0, two));
}

TEST_CASE("path_exists agrees with exhaustive simple-path enumeration") {
    std::mt19937_64 rng(7101);
    for (int i = 0; i < 150; ++i) {
        Task task = testutil::random_task(rng);
        StateSet targets(task.num_states());
        std::set<int> oracle_targets;
        for (StateId q = 0; q < task.num_states(); ++q) {
            if (rng() % 3 == 0) {
                targets.insert(q);
                oracle_targets.insert(q);
            }
        }
        for (StateId from = 0; from < task.num_states(); ++from) {
            CAPTURE(i);
            CAPTURE(from);
            CHECK(path_exists(task, from, targets) ==
                  testutil::oracle_path_exists(task, from, oracle_targets));
        }
    }
}

TEST_CASE("layer sequences grow monotonically to a fixpoint") {
    std::mt19937_64 rng(7102);
    for (int i = 0; i < 150; ++i) {
        Task task = testutil::random_task(rng);
        LayerSequence seq = reducibility_layers(task, goal_states(task));

        CHECK(seq.fixpoint_index == static_cast<int>(seq.layers.size()));
        CHECK(seq.layers.size() <= static_cast<size_t>(task.num_states()) + 1);
        for (size_t l = 1; l < seq.layers.size(); ++l) {
            CHECK(seq.layers[l - 1].is_subset_of(seq.layers[l]));
            CHECK_FALSE(seq.layers[l - 1] == seq.layers[l]);
        }

        // One more application of the recurrence must not grow the fixpoint.
        const StateSet& fix = seq.fixpoint();
        StateSet again = fix;
        for (StateId q = 0; q < task.num_states(); ++q)
            for (ActionId a = 0; a < task.num_actions(); ++a)
                if (fix.contains_all(task.successors(q, a))) again.insert(q);
        CHECK(again == fix);
    }
}

TEST_CASE("unstable states can always drift back into unstable territory") {
    std::mt19937_64 rng(7103);
    for (int i = 0; i < 150; ++i) {
        Task task = testutil::random_task(rng);
        auto [unstable, border] = unstable_and_border(task);
        for (StateId q : unstable.to_vector())
            for (ActionId a = 0; a < task.num_actions(); ++a)
                CHECK(unstable.contains_any(task.successors(q, a)));
        for (StateId q : border.to_vector()) CHECK_FALSE(unstable.contains(q));

        if (is_reducible(task)) {
            CHECK(unstable.empty());
            CHECK(check_necessary_conditions(task).all_hold());
        }
    }
}
