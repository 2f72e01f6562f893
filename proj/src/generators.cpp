#include "navlearn/generators.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace navlearn {

const std::array<std::vector<Offset>, kGridActionCount>& grid_offsets() {
    static const std::array<std::vector<Offset>, kGridActionCount> table = {{
        {{0, 0}},                        // finish
        {{-1, 0}, {-1, -1}, {-1, 1}},    // left
        {{1, 0}, {1, -1}, {1, 1}},       // right
        {{0, 1}, {-1, 1}, {1, 1}},       // up
        {{0, -1}, {1, -1}, {-1, -1}},    // down
        {{-1, 1}, {-1, 0}, {0, 1}},      // left-up
        {{-1, -1}, {0, -1}, {-1, 0}},    // left-down
        {{1, 1}, {0, 1}, {1, 0}},        // right-up
        {{1, -1}, {1, 0}, {0, -1}},      // right-down
    }};
    return table;
}

std::string cell_name(Cell c) {
    return std::to_string(c.x) + "," + std::to_string(c.y);
}

Task grid_task(const GridSpec& spec) {
    if (spec.cells.empty()) throw std::invalid_argument("grid has no cells");
    if (spec.goals.empty()) throw std::invalid_argument("grid has no goal cells");
    if (spec.starts.empty()) throw std::invalid_argument("grid has no start cells");

    std::vector<Cell> cells = spec.cells;
    std::sort(cells.begin(), cells.end());
    if (std::adjacent_find(cells.begin(), cells.end()) != cells.end())
        throw std::invalid_argument("duplicate grid cell");

    std::map<Cell, StateId> ids;
    std::vector<std::string> states;
    states.reserve(cells.size());
    for (const Cell& c : cells) {
        ids.emplace(c, static_cast<StateId>(states.size()));
        states.push_back(cell_name(c));
    }
    auto id_of = [&](const Cell& c, const char* role) {
        auto it = ids.find(c);
        if (it == ids.end())
            throw std::invalid_argument(std::string(role) + " cell " + cell_name(c) +
                                        " is not a grid cell");
        return it->second;
    };

    std::vector<StateId> start;
    start.reserve(spec.starts.size());
    for (const Cell& c : spec.starts) start.push_back(id_of(c, "start"));

    std::vector<std::pair<StateId, ActionId>> rewards;
    rewards.reserve(spec.goals.size());
    for (const Cell& c : spec.goals) rewards.emplace_back(id_of(c, "goal"), 0);  // finish

    std::vector<std::string> actions(kGridActionNames.begin(), kGridActionNames.end());
    const auto& offsets = grid_offsets();

    std::vector<std::vector<std::vector<StateId>>> delta(
        cells.size(), std::vector<std::vector<StateId>>(actions.size()));
    for (size_t qi = 0; qi < cells.size(); ++qi) {
        const Cell& from = cells[qi];
        for (size_t ai = 0; ai < actions.size(); ++ai) {
            std::vector<StateId> image;
            if (ai != 0) {  // movements; finish always stays in place
                image.reserve(offsets[ai].size());
                for (const Offset& o : offsets[ai]) {
                    auto it = ids.find(Cell{from.x + o.dx, from.y + o.dy});
                    if (it == ids.end()) {
                        image.clear();
                        break;
                    }
                    image.push_back(it->second);
                }
            }
            if (image.empty()) image.push_back(static_cast<StateId>(qi));
            delta[qi][ai] = std::move(image);
        }
    }

    return Task(std::move(states), std::move(actions), std::move(start), std::move(rewards),
                std::move(delta));
}

Task corridor_task(int length) {
    if (length < 1) throw std::invalid_argument("corridor length must be at least 1");
    GridSpec spec;
    for (int x = 0; x <= length + 2; ++x)
        for (int y = 0; y <= 4; ++y) spec.cells.push_back({x, y});
    spec.starts.push_back({0, 2});
    for (int x = length; x <= length + 2; ++x)
        for (int y = 1; y <= 3; ++y) spec.goals.push_back({x, y});
    return grid_task(spec);
}

Task chain_task(int n) {
    if (n < 1) throw std::invalid_argument("chain needs at least one action");
    std::vector<std::string> states, actions;
    for (int i = 1; i <= n + 1; ++i) states.push_back(std::to_string(i));
    for (int i = 1; i <= n; ++i) actions.push_back("a" + std::to_string(i));

    std::vector<std::pair<StateId, ActionId>> rewards;
    for (int a = 0; a < n; ++a) rewards.emplace_back(n, a);  // every action at state n+1

    std::vector<std::vector<std::vector<StateId>>> delta(
        states.size(), std::vector<std::vector<StateId>>(actions.size()));
    for (int q = 0; q < n; ++q) {
        for (int a = 0; a < n; ++a) {
            if (a == q) {
                for (int s = q + 1; s <= n; ++s) delta[q][a].push_back(s);
            } else {
                delta[q][a].push_back(0);
            }
        }
    }
    for (int a = 0; a < n; ++a) delta[n][a].push_back(n);

    return Task(std::move(states), std::move(actions), {0}, std::move(rewards), std::move(delta));
}

GridSpec parse_grid_sketch(std::string_view text) {
    std::vector<std::string> rows;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string row(text.substr(pos, end - pos));
        if (!row.empty() && row.back() == '\r') row.pop_back();
        rows.push_back(row);
        if (end == text.size()) break;
        pos = end + 1;
    }
    while (!rows.empty() && rows.back().empty()) rows.pop_back();
    if (rows.empty()) throw std::invalid_argument("grid sketch is empty");

    GridSpec spec;
    int height = static_cast<int>(rows.size());
    for (int r = 0; r < height; ++r) {
        int y = height - 1 - r;  // top line has the highest y
        for (int x = 0; x < static_cast<int>(rows[static_cast<size_t>(r)].size()); ++x) {
            char ch = rows[static_cast<size_t>(r)][static_cast<size_t>(x)];
            Cell c{x, y};
            switch (ch) {
                case '#':
                    break;
                case '.':
                    spec.cells.push_back(c);
                    break;
                case 'S':
                    spec.cells.push_back(c);
                    spec.starts.push_back(c);
                    break;
                case 'G':
                    spec.cells.push_back(c);
                    spec.goals.push_back(c);
                    break;
                default:
                    throw std::invalid_argument("unknown grid sketch character '" +
                                                std::string(1, ch) + "'");
            }
        }
    }
    return spec;
}

}  // namespace navlearn
