#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "navlearn/task.hpp"

namespace navlearn {

/// Raised on any defect in a task or policy file. `line` is 1-based and 0
/// when the defect is not tied to a single line (e.g. a missing section).
class TaskFormatError : public std::runtime_error {
public:
    TaskFormatError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Parses the line-oriented task format:
///
///   states: 1 2 3
///   start: 1
///   actions: a b
///   reward: 3 a
///   delta: 1 a -> 1 3
///
/// '#' starts a comment, blank lines are ignored, tokens are separated by
/// whitespace. Declaration order of states and actions fixes the canonical
/// order. Every (state, action) pair needs exactly one delta line with a
/// nonempty, duplicate-free successor list. Throws TaskFormatError.
Task parse_task(std::string_view text);

/// Reads and parses a task file; file system errors and format defects both
/// surface as TaskFormatError.
Task load_task_file(const std::filesystem::path& path);

/// Canonical text form of a task; parse_task(serialize_task(t)) == t, and
/// files already in canonical form round-trip byte for byte.
std::string serialize_task(const Task& task);

/// Parses a policy file with one "state action" pair per line (comments and
/// blank lines as above). Every task state must be assigned exactly once.
Policy parse_policy(const Task& task, std::string_view text);

Policy load_policy_file(const Task& task, const std::filesystem::path& path);

std::string serialize_policy(const Task& task, const Policy& policy);

}  // namespace navlearn
