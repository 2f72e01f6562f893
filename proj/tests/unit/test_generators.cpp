#include <doctest.h>

#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "navlearn/analysis.hpp"
#include "navlearn/convergence.hpp"
#include "navlearn/generators.hpp"
#include "navlearn/task_io.hpp"

using namespace navlearn;

namespace {

// Frozen copy of the landing-offset table; the generator must match it
// entry for entry.
const std::array<std::vector<Offset>, 9> kExpectedOffsets = {{
    {{0, 0}},
    {{-1, 0}, {-1, -1}, {-1, 1}},
    {{1, 0}, {1, -1}, {1, 1}},
    {{0, 1}, {-1, 1}, {1, 1}},
    {{0, -1}, {1, -1}, {-1, -1}},
    {{-1, 1}, {-1, 0}, {0, 1}},
    {{-1, -1}, {0, -1}, {-1, 0}},
    {{1, 1}, {0, 1}, {1, 0}},
    {{1, -1}, {1, 0}, {0, -1}},
}};

std::vector<std::string> successor_names(const Task& task, const std::string& state,
                                         const std::string& action) {
    std::vector<std::string> out;
    for (StateId s : task.successors(*task.state_id(state), *task.action_id(action)))
        out.push_back(task.state_name(s));
    return out;
}

}  // namespace

TEST_CASE("the landing-offset table is exactly the frozen copy") {
    const auto& offsets = grid_offsets();
    REQUIRE(offsets.size() == kExpectedOffsets.size());
    for (size_t a = 0; a < offsets.size(); ++a) {
        CAPTURE(kGridActionNames[a]);
        REQUIRE(offsets[a].size() == kExpectedOffsets[a].size());
        for (size_t i = 0; i < offsets[a].size(); ++i) {
            CHECK(offsets[a][i].dx == kExpectedOffsets[a][i].dx);
            CHECK(offsets[a][i].dy == kExpectedOffsets[a][i].dy);
        }
    }
    const char* expected_names[9] = {"finish",  "left",      "right",    "up",        "down",
                                     "left-up", "left-down", "right-up", "right-down"};
    for (size_t a = 0; a < 9; ++a) CHECK(std::string(kGridActionNames[a]) == expected_names[a]);
}

TEST_CASE("grid movements drift sideways; blocked movements stay put") {
    GridSpec spec;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) spec.cells.push_back({x, y});
    spec.starts.push_back({0, 0});
    spec.goals.push_back({2, 2});
    Task task = grid_task(spec);

    CHECK(task.num_states() == 9);
    CHECK(task.num_actions() == 9);
    CHECK(validate(task).empty());

    // Interior cell: every movement image is the frozen offset triple.
    CHECK(successor_names(task, "1,1", "left") == std::vector<std::string>{"0,0", "0,1", "0,2"});
    CHECK(successor_names(task, "1,1", "right") == std::vector<std::string>{"2,0", "2,1", "2,2"});
    CHECK(successor_names(task, "1,1", "up") == std::vector<std::string>{"0,2", "1,2", "2,2"});
    CHECK(successor_names(task, "1,1", "down") == std::vector<std::string>{"0,0", "1,0", "2,0"});
    CHECK(successor_names(task, "1,1", "left-up") == std::vector<std::string>{"0,1", "0,2", "1,2"});
    CHECK(successor_names(task, "1,1", "right-down") ==
          std::vector<std::string>{"1,0", "2,0", "2,1"});

    // Edge cell: any movement with a missing landing cell is stationary.
    CHECK(successor_names(task, "0,1", "left") == std::vector<std::string>{"0,1"});
    CHECK(successor_names(task, "0,0", "down") == std::vector<std::string>{"0,0"});
    CHECK(successor_names(task, "2,2", "right-up") == std::vector<std::string>{"2,2"});

    // finish stays in place everywhere and is rewarded exactly on goals.
    CHECK(successor_names(task, "1,1", "finish") == std::vector<std::string>{"1,1"});
    CHECK(task.is_reward(*task.state_id("2,2"), *task.action_id("finish")));
    CHECK_FALSE(task.is_reward(*task.state_id("1,1"), *task.action_id("finish")));
    CHECK(task.rewards().size() == 1);
    CHECK(testutil::names_of(task, goal_states(task)) == std::vector<std::string>{"2,2"});
}

TEST_CASE("corridor geometry: five rows, middle-row start, 3x3 goal patch") {
    Task task = corridor_task(1);
    CHECK(task.num_states() == 20);  // 4 columns x 5 rows
    CHECK(task.state_name(task.start_states()[0]) == "0,2");
    CHECK(goal_states(task).size() == 9);
    StateSet goals = goal_states(task);
    for (int x = 1; x <= 3; ++x)
        for (int y = 1; y <= 3; ++y) CHECK(goals.contains(*task.state_id(cell_name({x, y}))));

    Task longer = corridor_task(7);
    CHECK(longer.num_states() == 50);  // 10 columns x 5 rows
    CHECK(longer.state_name(longer.start_states()[0]) == "0,2");
    CHECK(goal_states(longer).size() == 9);
    // Nearest goal column is exactly `length` away from the start cell.
    CHECK(goal_states(longer).contains(*longer.state_id("7,1")));
    CHECK_FALSE(goal_states(longer).contains(*longer.state_id("6,3")));

    CHECK_THROWS_AS(corridor_task(0), std::invalid_argument);
}

TEST_CASE("chain transitions jump forward on the matching action, reset otherwise") {
    Task task = chain_task(3);
    CHECK(task.states() == std::vector<std::string>{"1", "2", "3", "4"});
    CHECK(task.actions() == std::vector<std::string>{"a1", "a2", "a3"});
    CHECK(task.start_states() == std::vector<StateId>{0});
    CHECK(testutil::names_of(task, goal_states(task)) == std::vector<std::string>{"4"});
    CHECK(task.rewards().size() == 3);  // every action is rewarded at 4

    CHECK(successor_names(task, "1", "a1") == std::vector<std::string>{"2", "3", "4"});
    CHECK(successor_names(task, "2", "a2") == std::vector<std::string>{"3", "4"});
    CHECK(successor_names(task, "3", "a3") == std::vector<std::string>{"4"});
    CHECK(successor_names(task, "2", "a1") == std::vector<std::string>{"1"});
    CHECK(successor_names(task, "2", "a3") == std::vector<std::string>{"1"});
    CHECK(successor_names(task, "4", "a2") == std::vector<std::string>{"4"});

    Task tiny = chain_task(1);
    CHECK(tiny.num_states() == 2);
    CHECK(successor_names(tiny, "1", "a1") == std::vector<std::string>{"2"});

    CHECK_THROWS_AS(chain_task(0), std::invalid_argument);
}

TEST_CASE("generated families validate and reduce at every size") {
    for (int size = 1; size <= 15; ++size) {
        CAPTURE(size);
        Task corridor = corridor_task(size);
        CHECK(validate(corridor).empty());
        CHECK(is_reducible(corridor));

        Task chain = chain_task(size);
        CHECK(validate(chain).empty());
        CHECK(is_reducible(chain));
    }
}

TEST_CASE("chain form test: in-order is the only passing shape, sizes to 6") {
    for (int n = 5; n <= 6; ++n) {  // 1..4 covered exhaustively elsewhere
        CAPTURE(n);
        Task task = chain_task(n);
        int passing = 0;
        testutil::for_each_policy(task, [&](const Policy& p) {
            bool in_order = true;
            for (StateId q = 0; q < n; ++q)
                if (p.at(q) != q) in_order = false;
            bool final = is_final_policy(task, p);
            if (final != in_order) CHECK(final == in_order);
            if (final) ++passing;
        });
        CHECK(passing == n);  // one per choice of the goal state's (irrelevant) action
    }
}

TEST_CASE("grid sketches parse with y increasing upward") {
    GridSpec spec = parse_grid_sketch(
        "..\n"
        "S#\n");
    CHECK(spec.cells.size() == 3);
    REQUIRE(spec.starts.size() == 1);
    CHECK(spec.starts[0] == Cell{0, 0});
    CHECK(spec.goals.empty());

    // (1, 0) is the hole; (0, 1) and (1, 1) are the top row.
    std::vector<Cell> cells = spec.cells;
    std::sort(cells.begin(), cells.end());
    CHECK(cells == std::vector<Cell>{{0, 0}, {0, 1}, {1, 1}});

    CHECK_THROWS_AS(parse_grid_sketch("S.\n.!\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_sketch(""), std::invalid_argument);
    CHECK_THROWS_AS(grid_task(spec), std::invalid_argument);  // no goals
}

TEST_CASE("the pocket-grid fixture matches its sketch and splits as expected") {
    std::ifstream sketch_in(testutil::fixture_path("pocket_grid.sketch"));
    REQUIRE(sketch_in.good());
    std::ostringstream sketch_text;
    sketch_text << sketch_in.rdbuf();

    Task from_sketch = grid_task(parse_grid_sketch(sketch_text.str()));
    Task fixture = testutil::load_fixture("pocket_grid.task");
    CHECK(from_sketch == fixture);

    CHECK(validate(fixture).empty());
    CHECK_FALSE(is_reducible(fixture));

    // The one-cell-wide pocket is unenterable and unleavable beyond its
    // mouth; exactly its interior is unstable.
    auto [unstable, border] = unstable_and_border(fixture);
    CHECK(testutil::names_of(fixture, unstable) ==
          std::vector<std::string>{"4,2", "5,2", "6,2"});
    CHECK(border.empty());

    NecessaryConditionsReport report = check_necessary_conditions(fixture);
    CHECK(report.start_states_reducible);
    CHECK(report.every_reachable_state_reaches_goals);
    CHECK_FALSE(report.without_path_to_goals.empty());
}

TEST_CASE("malformed grid geometry is rejected") {
    GridSpec dup;
    dup.cells = {{0, 0}, {0, 0}};
    dup.starts = {{0, 0}};
    dup.goals = {{0, 0}};
    CHECK_THROWS_AS(grid_task(dup), std::invalid_argument);

    GridSpec off;
    off.cells = {{0, 0}};
    off.starts = {{5, 5}};
    off.goals = {{0, 0}};
    CHECK_THROWS_AS(grid_task(off), std::invalid_argument);
}
