#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mr/algorithms.hpp"
#include "mr/errors.hpp"
#include "mr/harness.hpp"
#include "mr/instance.hpp"
#include "mr/objective.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t seed) {
    if (opt->count() > 0) return seed;
    std::random_device rd;
    std::uint64_t picked = (static_cast<std::uint64_t>(rd()) << 32) | rd();
    std::cout << "seed: " << picked << "\n";
    return picked;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct GenerateArgs {
    mr::GeneratorParams params;
    std::string model = "interview";
    std::string profession_mode = "even";
    std::string job_mode = "equal";
    std::string capacity_mode = "jobs";
    std::uint64_t seed = 0;
    std::string out_path;
};

struct RunArgs {
    std::string instance_path;
    std::string algorithm = "gsemo-sr";
    int samples = 1000;
    int rescore_samples = 10000;
    std::uint64_t budget = 0;  // 0 -> 100 * |V|^2 * |L|
    std::uint64_t seed = 0;
    double p_m = 0.5;
    double crossover = 0.9;
    double mutation = 1.0;
    int population = 0;
    int neighborhood = 20;
};

struct ExperimentArgs {
    std::string sweep = "migrants";
    std::vector<int> values;
    std::string model = "interview";
    std::vector<std::string> algorithms;
    int replicates = 10;
    std::uint64_t seed = 0;
    int migrants = 100;
    int localities = 10;
    int professions = 2;
    int fixed_jobs = 50;
    int samples = 1000;
    int rescore_samples = 10000;
    double budget_factor = 100.0;
    bool record_timing = false;
    std::string scale = "paper";
    int threads = 1;
    std::string out_prefix = "experiment";
};

struct ReportArgs {
    std::string in_path;
    std::string format = "markdown";
    std::string out_path;
};

int do_generate(const GenerateArgs& args) {
    mr::GeneratorParams p = args.params;
    p.model = mr::model_kind_from_string(args.model);
    p.seed = args.seed;
    if (args.profession_mode == "even")
        p.profession_mode = mr::ProfessionMode::EvenSplit;
    else if (args.profession_mode == "random")
        p.profession_mode = mr::ProfessionMode::RandomAtLeastOne;
    else
        throw mr::ValidationError("unknown profession mode: '" + args.profession_mode + "'");
    if (args.job_mode == "equal")
        p.job_mode = mr::JobDistributionMode::EqualPerLocality;
    else if (args.job_mode == "random")
        p.job_mode = mr::JobDistributionMode::RandomAtLeastOnePerLocality;
    else if (args.job_mode == "ten")
        p.job_mode = mr::JobDistributionMode::FixedTenPerLocality;
    else
        throw mr::ValidationError("unknown job mode: '" + args.job_mode + "'");
    if (args.capacity_mode == "jobs")
        p.capacity_mode = mr::CapacityMode::EqualToJobs;
    else if (args.capacity_mode == "ten")
        p.capacity_mode = mr::CapacityMode::FixedTen;
    else
        throw mr::ValidationError("unknown capacity mode: '" + args.capacity_mode + "'");

    mr::Instance inst = mr::generate_instance(p);
    write_file(args.out_path, mr::serialize_instance(inst));
    std::cout << "wrote " << args.out_path << " (" << inst.num_migrants() << " migrants, "
              << inst.num_localities() << " localities)\n";
    return kExitOk;
}

int do_run(const RunArgs& args) {
    mr::Instance inst = mr::load_instance_file(args.instance_path);

    mr::SolverConfig cfg;
    cfg.algorithm = mr::algorithm_from_string(args.algorithm);
    cfg.budget = args.budget != 0
                     ? args.budget
                     : static_cast<std::uint64_t>(100) * inst.num_migrants() *
                           inst.num_migrants() * inst.num_localities();
    cfg.seed = args.seed;
    cfg.p_m = args.p_m;
    cfg.crossover_prob = args.crossover;
    cfg.mutation_prob = args.mutation;
    cfg.population_size = args.population;
    cfg.neighborhood_size = args.neighborhood;
    cfg.validate();

    mr::Evaluator in_run = mr::Evaluator::monte_carlo(args.samples, cfg.seed);
    mr::SolverResult result = mr::run_solver(inst, in_run, cfg);

    mr::Evaluator rescore =
        mr::Evaluator::monte_carlo(args.rescore_samples, mr::mix_seed(cfg.seed, 0x726573636f7265ULL));
    double final_f = rescore.estimate(inst, result.best);

    std::cout << "algorithm: " << args.algorithm << "\n"
              << "evaluations: " << result.evaluations_used << "\n"
              << "f_hat_in_run: " << result.best_f1 << "\n"
              << "final_f: " << final_f << "\n"
              << "assignment: " << result.best.to_pair_string() << "\n";
    return kExitOk;
}

int do_experiment(const ExperimentArgs& args) {
    mr::SweepSpec spec;
    spec.variable = mr::sweep_variable_from_string(args.sweep);
    spec.values = args.values;
    spec.model = mr::model_kind_from_string(args.model);
    spec.replicates = args.replicates;
    spec.run_seed = args.seed;
    spec.migrants = args.migrants;
    spec.localities = args.localities;
    spec.professions = args.professions;
    spec.fixed_profession_jobs = args.fixed_jobs;
    spec.in_run_samples = args.samples;
    spec.rescore_samples = args.rescore_samples;
    spec.budget_factor = args.budget_factor;
    spec.record_timing = args.record_timing;
    if (args.scale == "desk") {
        spec.migrants = std::min(spec.migrants, 30);
        spec.localities = std::min(spec.localities, 5);
        spec.in_run_samples = std::min(spec.in_run_samples, 100);
        spec.rescore_samples = std::min(spec.rescore_samples, 1000);
        for (int& v : spec.values) {
            if (spec.variable == mr::SweepVariable::Migrants) v = std::min(v, 30);
            if (spec.variable == mr::SweepVariable::Localities) v = std::min(v, 5);
        }
    } else if (args.scale != "paper") {
        throw mr::ValidationError("unknown scale: '" + args.scale + "'");
    }
    spec.validate();

    std::vector<mr::SolverConfig> configs;
    std::vector<std::string> names = args.algorithms;
    if (names.empty())
        names = {"additive", "greedy", "gsemo-sr", "nsga2-100", "nsga2-2r", "moead"};
    for (const auto& name : names) {
        mr::SolverConfig cfg;
        cfg.algorithm = mr::algorithm_from_string(name);
        cfg.budget = 1;  // overwritten per setting
        configs.push_back(cfg);
    }

    mr::ExperimentReport report = mr::run_experiment(spec, configs, args.threads);
    write_file(args.out_prefix + ".json", mr::report_to_json(report));
    write_file(args.out_prefix + ".csv", mr::emit_report(report, mr::ReportFormat::CSV));
    write_file(args.out_prefix + ".md", mr::emit_report(report, mr::ReportFormat::Markdown));
    write_file(args.out_prefix + "_plot.csv",
               mr::emit_report(report, mr::ReportFormat::PlotData));
    std::cout << "wrote " << args.out_prefix << ".{json,csv,md} and " << args.out_prefix
              << "_plot.csv\n";
    return kExitOk;
}

int do_report(const ReportArgs& args) {
    mr::ExperimentReport report = mr::report_from_json(read_file(args.in_path));
    mr::ReportFormat format;
    if (args.format == "csv")
        format = mr::ReportFormat::CSV;
    else if (args.format == "markdown")
        format = mr::ReportFormat::Markdown;
    else if (args.format == "plot")
        format = mr::ReportFormat::PlotData;
    else
        throw mr::ValidationError("unknown format: '" + args.format + "'");
    std::string text = mr::emit_report(report, format);
    if (args.out_path.empty())
        std::cout << text;
    else
        write_file(args.out_path, text);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Migrant resettlement benchmark harness"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "Write a generated instance file");
    generate->add_option("--model", gen.model, "interview|coordination");
    generate->add_option("--migrants", gen.params.num_migrants, "Number of migrants")->required();
    generate->add_option("--localities", gen.params.num_localities, "Number of localities")
        ->required();
    generate->add_option("--jobs", gen.params.num_jobs, "Total number of jobs")->required();
    generate->add_option("--professions", gen.params.num_professions, "Number of professions");
    generate->add_option("--profession-mode", gen.profession_mode, "even|random");
    generate->add_option("--job-mode", gen.job_mode, "equal|random|ten");
    generate->add_option("--capacity-mode", gen.capacity_mode, "jobs|ten");
    generate->add_option("--jobs-per-profession", gen.params.jobs_per_profession,
                         "Per-profession job counts (must sum to --jobs)");
    generate->add_flag("--jobs-match-professions", gen.params.jobs_match_migrant_professions,
                       "Job count per profession equals migrant count per profession");
    auto* gen_seed = generate->add_option("--seed", gen.seed, "Generator seed");
    generate->add_option("--out", gen.out_path, "Output instance file")->required();

    RunArgs run;
    auto* run_cmd = app.add_subcommand("run", "Run one solver on one instance");
    run_cmd->add_option("--instance", run.instance_path, "Instance file")->required();
    run_cmd->add_option("--algorithm", run.algorithm,
                        "additive|greedy|gsemo|gsemo-s|gsemo-r|gsemo-sr|nsga2-100|nsga2-2r|moead");
    run_cmd->add_option("--samples", run.samples, "Monte-Carlo samples per in-run evaluation");
    run_cmd->add_option("--rescore-samples", run.rescore_samples,
                        "Samples for the final re-score");
    run_cmd->add_option("--budget", run.budget, "Evaluation budget (0 = 100*|V|^2*|L|)");
    auto* run_seed = run_cmd->add_option("--seed", run.seed, "Run seed");
    run_cmd->add_option("--p-m", run.p_m, "GSEMO-SR bit-wise mutation probability");
    run_cmd->add_option("--crossover", run.crossover, "NSGA-II crossover probability");
    run_cmd->add_option("--mutation", run.mutation, "NSGA-II mutation probability");
    run_cmd->add_option("--population", run.population, "Population size (0 = default)");
    run_cmd->add_option("--neighborhood", run.neighborhood, "MOEA/D neighborhood size");

    ExperimentArgs exp;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a parameter sweep and write reports");
    exp_cmd->add_option("--sweep", exp.sweep, "migrants|localities|jobs|professions");
    exp_cmd->add_option("--values", exp.values, "Sweep values")->required();
    exp_cmd->add_option("--model", exp.model, "interview|coordination");
    exp_cmd->add_option("--algorithms", exp.algorithms, "Algorithms to compare");
    exp_cmd->add_option("--replicates", exp.replicates, "Replicates per setting");
    auto* exp_seed = exp_cmd->add_option("--seed", exp.seed, "Run seed");
    exp_cmd->add_option("--migrants", exp.migrants, "Fixed migrant count");
    exp_cmd->add_option("--localities", exp.localities, "Fixed locality count");
    exp_cmd->add_option("--professions", exp.professions, "Fixed profession count");
    exp_cmd->add_option("--fixed-jobs", exp.fixed_jobs,
                        "Job count of the fixed profession (jobs sweep)");
    exp_cmd->add_option("--samples", exp.samples, "In-run Monte-Carlo samples");
    exp_cmd->add_option("--rescore-samples", exp.rescore_samples, "Re-score samples");
    exp_cmd->add_option("--budget-factor", exp.budget_factor, "Budget = factor*|V|^2*|L|");
    exp_cmd->add_flag("--record-timing", exp.record_timing, "Record wall-clock times");
    exp_cmd->add_option("--scale", exp.scale, "paper|desk (desk clamps sizes and samples)");
    exp_cmd->add_option("--threads", exp.threads, "Worker thread cap");
    exp_cmd->add_option("--out", exp.out_prefix, "Output file prefix");

    ReportArgs rep;
    auto* rep_cmd = app.add_subcommand("report", "Re-render a stored report");
    rep_cmd->add_option("--in", rep.in_path, "Stored report (.json)")->required();
    rep_cmd->add_option("--format", rep.format, "csv|markdown|plot");
    rep_cmd->add_option("--out", rep.out_path, "Output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) {
            gen.seed = resolve_seed(gen_seed, gen.seed);
            return do_generate(gen);
        }
        if (run_cmd->parsed()) {
            run.seed = resolve_seed(run_seed, run.seed);
            return do_run(run);
        }
        if (exp_cmd->parsed()) {
            exp.seed = resolve_seed(exp_seed, exp.seed);
            return do_experiment(exp);
        }
        if (rep_cmd->parsed()) return do_report(rep);
    } catch (const mr::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const mr::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
