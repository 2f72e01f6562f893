#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "navlearn/task.hpp"

namespace navlearn {

struct Cell {
    int x = 0;
    int y = 0;  // y grows upward

    auto operator<=>(const Cell&) const = default;
};

struct Offset {
    int dx = 0;
    int dy = 0;
};

/// The nine grid actions in canonical order. finish is the only candidate
/// reward action; the eight movements drift sideways.
inline constexpr int kGridActionCount = 9;
inline constexpr std::array<const char*, kGridActionCount> kGridActionNames = {
    "finish",  "left",    "right",    "up",       "down",
    "left-up", "left-down", "right-up", "right-down"};

/// Landing offsets per action: the intended cell plus its two drift
/// neighbours. A movement applies only when all three landing cells exist;
/// otherwise the action leaves the agent in place, exactly like finish on a
/// non-goal cell.
const std::array<std::vector<Offset>, kGridActionCount>& grid_offsets();

/// Geometry of a grid task. Cells may form any shape (holes allowed);
/// starts and goals must be cells and goals must be nonempty.
struct GridSpec {
    std::vector<Cell> cells;
    std::vector<Cell> starts;
    std::vector<Cell> goals;
};

/// Builds the navigation task of a grid: one state per cell (named "x,y",
/// ordered by (x, y)), the nine actions above, rewards (g, finish) for every
/// goal g. Throws std::invalid_argument on malformed geometry.
Task grid_task(const GridSpec& spec);

/// Five-row corridor with a single start on the left wall's middle row and
/// a 3x3 goal patch on the right; `length` is the horizontal distance from
/// the start cell to the nearest goal column (so columns run 0..length+2).
Task corridor_task(int length);

/// Order-sensitive chain task: states 1..n+1 with start 1, actions a1..an.
/// Action ai at state i jumps anywhere forward (i+1..n+1); every other
/// action at i resets to 1. All actions are rewarded at n+1.
Task chain_task(int n);

/// Parses a picture of a grid, one row per line: '.' cell, '#' no cell,
/// 'S' start cell, 'G' goal cell. The top line is the highest y (y grows
/// upward). Throws std::invalid_argument on unknown characters or an empty
/// picture.
GridSpec parse_grid_sketch(std::string_view text);

/// State token used by grid_task for a cell, "x,y".
std::string cell_name(Cell c);

}  // namespace navlearn
