#include "navlearn/task_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace navlearn {
namespace {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

// Strips comments, splits on whitespace, drops blank lines.
std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        if (size_t hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

        Line line;
        line.number = number;
        std::istringstream words{std::string(raw)};
        std::string tok;
        while (words >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));

        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw TaskFormatError(line, message);
}

}  // namespace

Task parse_task(std::string_view text) {
    std::vector<std::string> states, actions;
    std::unordered_map<std::string, StateId> state_ids;
    std::unordered_map<std::string, ActionId> action_ids;
    std::vector<StateId> start;
    std::vector<std::pair<StateId, ActionId>> rewards;
    std::vector<std::vector<std::vector<StateId>>> delta;
    std::vector<std::vector<char>> delta_seen;
    bool have_states = false, have_start = false, have_actions = false;

    auto lookup_state = [&](const std::string& name, int line) {
        auto it = state_ids.find(name);
        if (it == state_ids.end()) fail(line, "undeclared state '" + name + "'");
        return it->second;
    };
    auto lookup_action = [&](const std::string& name, int line) {
        auto it = action_ids.find(name);
        if (it == action_ids.end()) fail(line, "undeclared action '" + name + "'");
        return it->second;
    };

    for (const Line& line : tokenize(text)) {
        const std::string& key = line.tokens.front();
        auto rest = [&](size_t i) { return line.tokens.begin() + static_cast<long>(i); };

        if (key == "states:") {
            if (have_states) fail(line.number, "duplicate states: line");
            if (line.tokens.size() < 2) fail(line.number, "states: needs at least one state");
            for (auto it = rest(1); it != line.tokens.end(); ++it) {
                if (!state_ids.emplace(*it, static_cast<StateId>(states.size())).second)
                    fail(line.number, "duplicate state '" + *it + "'");
                states.push_back(*it);
            }
            have_states = true;
        } else if (key == "start:") {
            if (have_start) fail(line.number, "duplicate start: line");
            if (line.tokens.size() < 2) fail(line.number, "start: needs at least one state");
            std::set<StateId> seen;
            for (auto it = rest(1); it != line.tokens.end(); ++it) {
                StateId q = lookup_state(*it, line.number);
                if (!seen.insert(q).second) fail(line.number, "duplicate start state '" + *it + "'");
                start.push_back(q);
            }
            have_start = true;
        } else if (key == "actions:") {
            if (have_actions) fail(line.number, "duplicate actions: line");
            if (line.tokens.size() < 2) fail(line.number, "actions: needs at least one action");
            for (auto it = rest(1); it != line.tokens.end(); ++it) {
                if (!action_ids.emplace(*it, static_cast<ActionId>(actions.size())).second)
                    fail(line.number, "duplicate action '" + *it + "'");
                actions.push_back(*it);
            }
            have_actions = true;
            delta.assign(states.size(), std::vector<std::vector<StateId>>(actions.size()));
            delta_seen.assign(states.size(), std::vector<char>(actions.size(), 0));
        } else if (key == "reward:") {
            if (line.tokens.size() != 3) fail(line.number, "reward: needs exactly one state and one action");
            StateId q = lookup_state(line.tokens[1], line.number);
            ActionId a = lookup_action(line.tokens[2], line.number);
            if (std::find(rewards.begin(), rewards.end(), std::make_pair(q, a)) != rewards.end())
                fail(line.number, "duplicate reward (" + line.tokens[1] + ", " + line.tokens[2] + ")");
            rewards.emplace_back(q, a);
        } else if (key == "delta:") {
            if (line.tokens.size() < 5 || line.tokens[3] != "->")
                fail(line.number, "delta: needs '<state> <action> -> <state>...'");
            StateId q = lookup_state(line.tokens[1], line.number);
            ActionId a = lookup_action(line.tokens[2], line.number);
            if (delta_seen[static_cast<size_t>(q)][static_cast<size_t>(a)])
                fail(line.number,
                     "duplicate delta for (" + line.tokens[1] + ", " + line.tokens[2] + ")");
            std::vector<StateId> image;
            std::set<StateId> seen;
            for (auto it = rest(4); it != line.tokens.end(); ++it) {
                StateId s = lookup_state(*it, line.number);
                if (!seen.insert(s).second)
                    fail(line.number, "duplicate successor '" + *it + "' in delta image");
                image.push_back(s);
            }
            delta[static_cast<size_t>(q)][static_cast<size_t>(a)] = std::move(image);
            delta_seen[static_cast<size_t>(q)][static_cast<size_t>(a)] = 1;
        } else {
            fail(line.number, "unknown directive '" + key + "'");
        }
    }

    if (!have_states) fail(0, "missing states: line");
    if (!have_actions) fail(0, "missing actions: line");
    if (!have_start) fail(0, "missing start: line");
    if (rewards.empty()) fail(0, "at least one reward: line is required");
    for (size_t q = 0; q < states.size(); ++q)
        for (size_t a = 0; a < actions.size(); ++a)
            if (!delta_seen[q][a])
                fail(0, "missing delta for (" + states[q] + "," + actions[a] + ")");

    return Task(std::move(states), std::move(actions), std::move(start), std::move(rewards),
                std::move(delta));
}

Task load_task_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TaskFormatError(0, "cannot open task file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_task(buf.str());
}

std::string serialize_task(const Task& task) {
    std::ostringstream out;
    out << "states:";
    for (const auto& s : task.states()) out << " " << s;
    out << "\nstart:";
    for (StateId q : task.start_states()) out << " " << task.state_name(q);
    out << "\nactions:";
    for (const auto& a : task.actions()) out << " " << a;
    out << "\n";
    for (auto [q, a] : task.rewards())
        out << "reward: " << task.state_name(q) << " " << task.action_name(a) << "\n";
    for (StateId q = 0; q < task.num_states(); ++q)
        for (ActionId a = 0; a < task.num_actions(); ++a) {
            out << "delta: " << task.state_name(q) << " " << task.action_name(a) << " ->";
            for (StateId s : task.successors(q, a)) out << " " << task.state_name(s);
            out << "\n";
        }
    return out.str();
}

Policy parse_policy(const Task& task, std::string_view text) {
    Policy policy;
    policy.assignment.assign(static_cast<size_t>(task.num_states()), -1);
    for (const Line& line : tokenize(text)) {
        if (line.tokens.size() != 2)
            fail(line.number, "policy line needs exactly '<state> <action>'");
        auto q = task.state_id(line.tokens[0]);
        if (!q) fail(line.number, "undeclared state '" + line.tokens[0] + "'");
        auto a = task.action_id(line.tokens[1]);
        if (!a) fail(line.number, "undeclared action '" + line.tokens[1] + "'");
        if (policy.assignment[static_cast<size_t>(*q)] != -1)
            fail(line.number, "duplicate policy entry for state '" + line.tokens[0] + "'");
        policy.assignment[static_cast<size_t>(*q)] = *a;
    }
    for (StateId q = 0; q < task.num_states(); ++q)
        if (policy.assignment[static_cast<size_t>(q)] == -1)
            fail(0, "policy is missing an action for state '" + task.state_name(q) + "'");
    return policy;
}

Policy load_policy_file(const Task& task, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw TaskFormatError(0, "cannot open policy file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_policy(task, buf.str());
}

std::string serialize_policy(const Task& task, const Policy& policy) {
    std::ostringstream out;
    for (StateId q = 0; q < task.num_states(); ++q)
        out << task.state_name(q) << " " << task.action_name(policy.at(q)) << "\n";
    return out.str();
}

}  // namespace navlearn
