#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "navlearn/analysis.hpp"
#include "navlearn/convergence.hpp"
#include "navlearn/engine.hpp"
#include "navlearn/experiments.hpp"
#include "navlearn/generators.hpp"
#include "navlearn/scheduler.hpp"
#include "navlearn/task.hpp"
#include "navlearn/task_io.hpp"

namespace py = pybind11;
using namespace navlearn;

namespace {

StateId state_or_throw(const Task& task, const std::string& name) {
    if (auto id = task.state_id(name)) return *id;
    throw py::value_error("unknown state '" + name + "'");
}

ActionId action_or_throw(const Task& task, const std::string& name) {
    if (auto id = task.action_id(name)) return *id;
    throw py::value_error("unknown action '" + name + "'");
}

std::vector<std::string> set_names(const Task& task, const StateSet& set) {
    std::vector<std::string> names;
    for (StateId q : set.to_vector()) names.push_back(task.state_name(q));
    return names;
}

std::vector<std::vector<std::string>> layer_names(const Task& task, const LayerSequence& seq) {
    std::vector<std::vector<std::string>> out;
    for (const StateSet& layer : seq.layers) out.push_back(set_names(task, layer));
    return out;
}

Policy policy_from_dict(const Task& task, const py::dict& assignment) {
    Policy policy;
    policy.assignment.assign(static_cast<size_t>(task.num_states()), -1);
    for (auto item : assignment) {
        StateId q = state_or_throw(task, py::cast<std::string>(item.first));
        policy.set(q, action_or_throw(task, py::cast<std::string>(item.second)));
    }
    for (StateId q = 0; q < task.num_states(); ++q)
        if (policy.at(q) < 0)
            throw py::value_error("policy misses state '" + task.state_name(q) + "'");
    return policy;
}

py::dict policy_to_dict(const Task& task, const Policy& policy) {
    py::dict out;
    for (StateId q = 0; q < task.num_states(); ++q)
        out[py::str(task.state_name(q))] = task.action_name(policy.at(q));
    return out;
}

py::dict run_summary(const Task& task, const RunRecord& record) {
    py::dict out;
    out["converged"] = record.convergence_trial_index.has_value();
    out["convergence_trial_index"] = record.convergence_trial_index
                                         ? py::object(py::int_(*record.convergence_trial_index))
                                         : py::object(py::none());
    out["trials"] = record.trials.size();
    std::vector<uint64_t> lengths;
    for (const TrialSummary& t : record.trials) lengths.push_back(t.length);
    out["trial_lengths"] = lengths;
    out["final_policy"] = record.final_policy
                              ? py::object(policy_to_dict(task, *record.final_policy))
                              : py::object(py::none());
    out["last_policy"] = policy_to_dict(task, record.last_policy);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "cycle-detection learning on nondeterministic navigation tasks";

    py::register_exception<TaskFormatError>(m, "TaskFormatError", PyExc_ValueError);

    py::class_<Task>(m, "Task")
        .def_property_readonly("num_states", &Task::num_states)
        .def_property_readonly("num_actions", &Task::num_actions)
        .def_property_readonly("states", [](const Task& t) { return t.states(); })
        .def_property_readonly("actions", [](const Task& t) { return t.actions(); })
        .def_property_readonly("start_states",
                               [](const Task& t) {
                                   std::vector<std::string> names;
                                   for (StateId q : t.start_states())
                                       names.push_back(t.state_name(q));
                                   return names;
                               })
        .def_property_readonly("rewards",
                               [](const Task& t) {
                                   std::vector<std::pair<std::string, std::string>> pairs;
                                   for (auto [q, a] : t.rewards())
                                       pairs.emplace_back(t.state_name(q), t.action_name(a));
                                   return pairs;
                               })
        .def("successors",
             [](const Task& t, const std::string& state, const std::string& action) {
                 std::vector<std::string> names;
                 for (StateId q : t.successors(state_or_throw(t, state),
                                               action_or_throw(t, action)))
                     names.push_back(t.state_name(q));
                 return names;
             })
        .def("is_reward",
             [](const Task& t, const std::string& state, const std::string& action) {
                 return t.is_reward(state_or_throw(t, state), action_or_throw(t, action));
             })
        .def("__eq__", [](const Task& a, const Task& b) { return a == b; })
        .def("__repr__", [](const Task& t) {
            std::ostringstream out;
            out << "<Task states=" << t.num_states() << " actions=" << t.num_actions() << ">";
            return out.str();
        });

    m.def("parse_task", [](const std::string& text) { return parse_task(text); },
          py::arg("text"));
    m.def("load_task_file", [](const std::string& path) { return load_task_file(path); },
          py::arg("path"));
    m.def("serialize_task", &serialize_task, py::arg("task"));
    m.def("validate", &validate, py::arg("task"));
    m.def("goal_states", [](const Task& t) { return set_names(t, goal_states(t)); },
          py::arg("task"));

    m.def("reducibility_layers",
          [](const Task& t) { return layer_names(t, reducibility_layers(t, goal_states(t))); },
          py::arg("task"));
    m.def("reduce_set", [](const Task& t) { return set_names(t, reduce_set(t)); },
          py::arg("task"));
    m.def("is_reducible", &is_reducible, py::arg("task"));
    m.def("unstable_and_border",
          [](const Task& t) {
              auto [unstable, border] = unstable_and_border(t);
              return std::make_pair(set_names(t, unstable), set_names(t, border));
          },
          py::arg("task"));
    m.def("check_necessary_conditions",
          [](const Task& t) {
              NecessaryConditionsReport report = check_necessary_conditions(t);
              py::dict out;
              out["reachable"] = set_names(t, report.reachable);
              out["without_path_to_goals"] = set_names(t, report.without_path_to_goals);
              out["every_reachable_state_reaches_goals"] =
                  report.every_reachable_state_reaches_goals;
              out["start_states_reducible"] = report.start_states_reducible;
              out["all_hold"] = report.all_hold();
              return out;
          },
          py::arg("task"));

    m.def("ground",
          [](const Task& t, const py::dict& policy) {
              return set_names(t, ground(t, policy_from_dict(t, policy)));
          },
          py::arg("task"), py::arg("policy"));
    m.def("forward_layers",
          [](const Task& t, const py::dict& policy) {
              return layer_names(t, forward_set(t, policy_from_dict(t, policy)));
          },
          py::arg("task"), py::arg("policy"));
    m.def("backward_layers",
          [](const Task& t, const py::dict& policy) {
              return layer_names(t, backward_set(t, policy_from_dict(t, policy)));
          },
          py::arg("task"), py::arg("policy"));
    m.def("is_final_policy",
          [](const Task& t, const py::dict& policy) {
              return is_final_policy(t, policy_from_dict(t, policy));
          },
          py::arg("task"), py::arg("policy"));

    m.def("corridor_task", &corridor_task, py::arg("length"));
    m.def("chain_task", &chain_task, py::arg("n"));
    m.def("grid_task_from_sketch",
          [](const std::string& sketch) { return grid_task(parse_grid_sketch(sketch)); },
          py::arg("sketch"));

    m.def("run_until_convergence",
          [](const Task& task, uint64_t seed, const std::string& scheduler, uint64_t step_cap,
             uint64_t trial_cap, const py::object& initial_policy) {
              std::mt19937_64 rng(seed);
              Policy init = initial_policy.is_none()
                                ? random_initial_policy(task, rng)
                                : policy_from_dict(task, initial_policy.cast<py::dict>());
              RunOptions options;
              options.step_cap = step_cap;
              options.trial_cap = trial_cap;
              RunRecord record;
              if (scheduler == "rotating") {
                  RotatingScheduler s;
                  record = run_until_convergence(task, s, init, options);
              } else if (scheduler == "random") {
                  RandomScheduler s(rng);
                  record = run_until_convergence(task, s, init, options);
              } else {
                  throw py::value_error("scheduler must be 'rotating' or 'random'");
              }
              return run_summary(task, record);
          },
          py::arg("task"), py::arg("seed") = 0, py::arg("scheduler") = "random",
          py::arg("step_cap") = 1'000'000, py::arg("trial_cap") = 100'000,
          py::arg("initial_policy") = py::none());

    m.def("quantile", &quantile, py::arg("values"), py::arg("p"));
    m.def("derive_seed", &derive_seed, py::arg("master_seed"), py::arg("salt_a"),
          py::arg("salt_b"));

    m.def("convergence_experiment_csv",
          [](const std::string& family, const std::vector<int>& sizes, int runs, double p,
             uint64_t seed, uint64_t step_cap, uint64_t trial_cap, int jobs) {
              ConvergenceExperimentSpec spec;
              if (family == "corridor")
                  spec.family = TaskFamily::corridor;
              else if (family == "chain")
                  spec.family = TaskFamily::chain;
              else
                  throw py::value_error("family must be 'corridor' or 'chain'");
              spec.sizes = sizes;
              spec.runs_per_size = runs;
              spec.p = p;
              spec.master_seed = seed;
              spec.caps.step_cap = step_cap;
              spec.caps.trial_cap = trial_cap;
              spec.jobs = jobs;
              std::ostringstream out;
              write_csv(convergence_index_experiment(spec), out);
              return out.str();
          },
          py::arg("family"), py::arg("sizes"), py::arg("runs"), py::arg("p") = 0.9,
          py::arg("seed") = 0, py::arg("step_cap") = 1'000'000,
          py::arg("trial_cap") = 100'000, py::arg("jobs") = 1);
}
