#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "navlearn/task.hpp"

namespace navlearn {

/// Type-1 (inverse empirical CDF) quantile: with n values sorted ascending
/// and j = floor(p * n), returns the (j+1)-th smallest when p * n has a
/// fractional part and the j-th smallest otherwise. Always one of the
/// values. Throws std::invalid_argument on an empty list or p outside (0,1).
double quantile(std::vector<double> values, double p);

/// Prints integers without a decimal point and everything else with up to 12
/// significant digits, so CSV output is stable across runs and platforms.
std::string format_number(double value);

struct ExperimentCaps {
    uint64_t step_cap = 1'000'000;
    uint64_t trial_cap = 100'000;
};

enum class TaskFamily { corridor, chain };

struct ConvergenceExperimentSpec {
    TaskFamily family = TaskFamily::corridor;
    std::vector<int> sizes;
    int runs_per_size = 0;
    double p = 0.9;
    uint64_t master_seed = 0;
    ExperimentCaps caps;
    int jobs = 1;
};

struct ConvergencePoint {
    int size = 0;
    bool has_quantile = false;  // false when every run failed
    double quantile = 0.0;
    int runs = 0;
    int failures = 0;  // runs that hit a cap, excluded from the quantile
};

struct ConvergenceTable {
    ConvergenceExperimentSpec spec;
    std::vector<ConvergencePoint> rows;
};

/// For each size: builds the family task, executes runs_per_size seeded
/// random-scheduler runs (seed = derive_seed(master_seed, size, run_index),
/// which also draws the initial policy), and reports the p-quantile of the
/// convergence trial indexes. Deterministic for fixed spec values, whatever
/// `jobs` is.
ConvergenceTable convergence_index_experiment(const ConvergenceExperimentSpec& spec);

struct TrialLengthExperimentSpec {
    int runs = 0;
    int trials_per_run = 0;
    double p = 0.9;
    uint64_t master_seed = 0;
    ExperimentCaps caps;
    int jobs = 1;
};

struct TrialLengthPoint {
    uint64_t trial_index = 0;  // 1-based
    bool has_quantile = false;
    double length_quantile = 0.0;
};

struct TrialLengthTable {
    TrialLengthExperimentSpec spec;
    std::vector<TrialLengthPoint> rows;  // one per trial index
    uint64_t truncated_trials = 0;       // excluded from the quantiles
};

/// Executes `runs` seeded runs of exactly trials_per_run trials each
/// (continuing past convergence) and reports, per trial index, the
/// p-quantile of that trial's length across runs. Seeds derive from
/// (master_seed, num_states, run_index).
TrialLengthTable trial_length_experiment(const Task& task, const TrialLengthExperimentSpec& spec);

/// CSV with a '#' metadata line naming every reproducibility parameter,
/// then header size,quantile,runs,failures. The quantile field is empty for
/// rows without one.
void write_csv(const ConvergenceTable& table, std::ostream& out);

/// CSV with a '#' metadata line, then header trial_index,length_quantile.
/// The first `skip_first` trial indexes are omitted (early trials dominated
/// by the initial random policy).
void write_csv(const TrialLengthTable& table, std::ostream& out, int skip_first = 0);

}  // namespace navlearn
