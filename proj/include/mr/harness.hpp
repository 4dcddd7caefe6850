#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mr/algorithms.hpp"
#include "mr/instance.hpp"

namespace mr {

enum class SweepVariable { Migrants, Localities, Jobs, Professions };

std::string to_string(SweepVariable v);
SweepVariable sweep_variable_from_string(const std::string& s);

// One parameter sweep: the varied quantity, its values, and the fixed
// configuration shared by all settings. Budgets follow
// budget_factor * |V|^2 * |L| per setting.
struct SweepSpec {
    SweepVariable variable = SweepVariable::Migrants;
    std::vector<int> values;
    ModelKind model = ModelKind::Interview;
    int replicates = 10;
    std::uint64_t run_seed = 0;

    int migrants = 100;
    int localities = 10;
    int professions = 2;
    int fixed_profession_jobs = 50;  // Jobs sweep: job count of the fixed profession

    int in_run_samples = 1000;
    int rescore_samples = 10000;
    double budget_factor = 100.0;

    // Emit measured wall-clock times; off by default so that repeated runs
    // produce byte-identical reports.
    bool record_timing = false;

    void validate() const;
};

// Generator configuration for one setting value of the sweep.
GeneratorParams generator_for_setting(const SweepSpec& spec, int value,
                                      std::uint64_t instance_seed);
std::uint64_t instance_seed_for(const SweepSpec& spec, int value, int replicate);
std::uint64_t budget_for_setting(const SweepSpec& spec, int value);

struct CellResult {
    int setting_value = 0;
    std::string algorithm;
    int replicate = 0;
    double final_f = 0.0;       // re-scored with a fresh estimator
    double f_hat_in_run = 0.0;  // estimate at selection time
    std::uint64_t evaluations = 0;
    std::uint64_t wall_ms = 0;
    std::string error;          // non-empty if the solver failed
    std::vector<std::pair<std::uint64_t, double>> trace;
};

struct AggregateRow {
    int setting_value = 0;
    std::string algorithm;
    int replicates = 0;
    double mean = 0.0;
    double stddev = 0.0;
    double wilcoxon_p_vs_ref = 1.0;
    double rank = 0.0;
};

struct ExperimentReport {
    SweepSpec spec;
    std::vector<std::string> algorithms;       // in run order
    std::string reference_algorithm;
    std::vector<CellResult> cells;             // setting-major, replicate, algorithm
    std::vector<AggregateRow> aggregates;
    std::map<std::string, double> average_rank;
};

// Runs every algorithm on every replicate instance of every setting value,
// re-scores each returned assignment with a fresh rescore_samples estimator,
// and aggregates mean/std, Wilcoxon p-values against the reference algorithm,
// and per-setting ranks. Deterministic for a fixed run_seed regardless of
// thread count.
ExperimentReport run_experiment(const SweepSpec& spec,
                                const std::vector<SolverConfig>& configs,
                                int threads = 1);

enum class ReportFormat { CSV, Markdown, PlotData };

std::string emit_report(const ExperimentReport& report, ReportFormat format);

// Loss-free persistence for the `report` subcommand.
std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);

// Best-so-far value of a trace at an evaluation checkpoint.
double trace_value_at(const std::vector<std::pair<std::uint64_t, double>>& trace,
                      std::uint64_t evaluations);

// Checkpoint fractions used for plot data: 1%, 2%, 5%, 10%, ..., 100%.
const std::vector<double>& checkpoint_fractions();

}  // namespace mr
