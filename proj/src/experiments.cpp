#include "navlearn/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "navlearn/engine.hpp"
#include "navlearn/generators.hpp"
#include "navlearn/scheduler.hpp"

namespace navlearn {

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile of an empty list");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile order must lie in (0, 1)");
    std::sort(values.begin(), values.end());
    double pn = p * static_cast<double>(values.size());
    auto j = static_cast<size_t>(pn);
    size_t index = pn - static_cast<double>(j) > 0.0 ? j + 1 : j;  // 1-based
    return values[index - 1];
}

std::string format_number(double value) {
    if (value == static_cast<double>(static_cast<long long>(value)))
        return std::to_string(static_cast<long long>(value));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

namespace {

// Runs body(0..count-1); result slots must be indexed by the argument so the
// outcome is identical for any number of workers.
void parallel_for(int count, int jobs, const std::function<void(int)>& body) {
    jobs = std::max(1, std::min(jobs, count));
    if (jobs == 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    }
    for (auto& t : workers) t.join();
}

RunOptions caps_to_options(const ExperimentCaps& caps) {
    RunOptions options;
    options.step_cap = caps.step_cap;
    options.trial_cap = caps.trial_cap;
    return options;
}

}  // namespace

ConvergenceTable convergence_index_experiment(const ConvergenceExperimentSpec& spec) {
    if (spec.runs_per_size < 1) throw std::invalid_argument("experiment needs at least one run");
    ConvergenceTable table;
    table.spec = spec;

    for (int size : spec.sizes) {
        Task task = spec.family == TaskFamily::corridor ? corridor_task(size) : chain_task(size);
        std::vector<std::optional<uint64_t>> outcomes(static_cast<size_t>(spec.runs_per_size));

        parallel_for(spec.runs_per_size, spec.jobs, [&](int r) {
            std::mt19937_64 rng(derive_seed(spec.master_seed, static_cast<uint64_t>(size),
                                            static_cast<uint64_t>(r)));
            Policy initial = random_initial_policy(task, rng);
            RandomScheduler scheduler(rng);
            RunRecord rec = run_until_convergence(task, scheduler, std::move(initial),
                                                  caps_to_options(spec.caps));
            outcomes[static_cast<size_t>(r)] = rec.convergence_trial_index;
        });

        ConvergencePoint point;
        point.size = size;
        point.runs = spec.runs_per_size;
        std::vector<double> indexes;
        for (const auto& outcome : outcomes) {
            if (outcome)
                indexes.push_back(static_cast<double>(*outcome));
            else
                ++point.failures;
        }
        if (!indexes.empty()) {
            point.has_quantile = true;
            point.quantile = quantile(std::move(indexes), spec.p);
        }
        table.rows.push_back(point);
    }
    return table;
}

TrialLengthTable trial_length_experiment(const Task& task, const TrialLengthExperimentSpec& spec) {
    if (spec.runs < 1) throw std::invalid_argument("experiment needs at least one run");
    if (spec.trials_per_run < 1) throw std::invalid_argument("experiment needs at least one trial");
    TrialLengthTable table;
    table.spec = spec;

    std::vector<RunRecord> runs(static_cast<size_t>(spec.runs));
    parallel_for(spec.runs, spec.jobs, [&](int r) {
        std::mt19937_64 rng(derive_seed(spec.master_seed, static_cast<uint64_t>(task.num_states()),
                                        static_cast<uint64_t>(r)));
        Policy initial = random_initial_policy(task, rng);
        RandomScheduler scheduler(rng);
        runs[static_cast<size_t>(r)] =
            run_fixed_trials(task, scheduler, std::move(initial),
                             static_cast<uint64_t>(spec.trials_per_run), caps_to_options(spec.caps));
    });

    for (int j = 0; j < spec.trials_per_run; ++j) {
        TrialLengthPoint point;
        point.trial_index = static_cast<uint64_t>(j) + 1;
        std::vector<double> lengths;
        lengths.reserve(runs.size());
        for (const RunRecord& run : runs) {
            const TrialSummary& trial = run.trials[static_cast<size_t>(j)];
            if (trial.truncated)
                ++table.truncated_trials;
            else
                lengths.push_back(static_cast<double>(trial.length));
        }
        if (!lengths.empty()) {
            point.has_quantile = true;
            point.length_quantile = quantile(std::move(lengths), spec.p);
        }
        table.rows.push_back(point);
    }
    return table;
}

void write_csv(const ConvergenceTable& table, std::ostream& out) {
    out << "# family=" << (table.spec.family == TaskFamily::corridor ? "corridor" : "chain")
        << " sizes=";
    for (size_t i = 0; i < table.spec.sizes.size(); ++i) {
        if (i) out << ",";
        out << table.spec.sizes[i];
    }
    out << " runs=" << table.spec.runs_per_size << " p=" << format_number(table.spec.p)
        << " seed=" << table.spec.master_seed << " step-cap=" << table.spec.caps.step_cap
        << " trial-cap=" << table.spec.caps.trial_cap << "\n";
    out << "size,quantile,runs,failures\n";
    for (const ConvergencePoint& point : table.rows) {
        out << point.size << ",";
        if (point.has_quantile) out << format_number(point.quantile);
        out << "," << point.runs << "," << point.failures << "\n";
    }
}

void write_csv(const TrialLengthTable& table, std::ostream& out, int skip_first) {
    out << "# runs=" << table.spec.runs << " trials=" << table.spec.trials_per_run
        << " p=" << format_number(table.spec.p) << " seed=" << table.spec.master_seed
        << " step-cap=" << table.spec.caps.step_cap << " trial-cap=" << table.spec.caps.trial_cap
        << " skip-first=" << skip_first << " truncated-trials=" << table.truncated_trials << "\n";
    out << "trial_index,length_quantile\n";
    for (const TrialLengthPoint& point : table.rows) {
        if (point.trial_index <= static_cast<uint64_t>(skip_first)) continue;
        out << point.trial_index << ",";
        if (point.has_quantile) out << format_number(point.length_quantile);
        out << "\n";
    }
}

}  // namespace navlearn
