#include "mr/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "mr/errors.hpp"
#include "mr/rng.hpp"
#include "mr/stats.hpp"

namespace mr {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace

std::string to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::Migrants: return "migrants";
        case SweepVariable::Localities: return "localities";
        case SweepVariable::Jobs: return "jobs";
        case SweepVariable::Professions: return "professions";
    }
    return "?";
}

SweepVariable sweep_variable_from_string(const std::string& s) {
    if (s == "migrants") return SweepVariable::Migrants;
    if (s == "localities") return SweepVariable::Localities;
    if (s == "jobs") return SweepVariable::Jobs;
    if (s == "professions") return SweepVariable::Professions;
    throw ValidationError("unknown sweep variable: '" + s + "'");
}

void SweepSpec::validate() const {
    if (values.empty()) throw ValidationError("sweep value list must be non-empty");
    if (replicates < 1) throw ValidationError("replicates must be >= 1");
    if (in_run_samples < 1 || rescore_samples < 1)
        throw ValidationError("sample counts must be >= 1");
    if (budget_factor <= 0.0) throw ValidationError("budget_factor must be positive");
}

std::uint64_t instance_seed_for(const SweepSpec& spec, int value, int replicate) {
    return mix_seed(spec.run_seed, static_cast<std::uint64_t>(spec.variable),
                    static_cast<std::uint64_t>(value), static_cast<std::uint64_t>(replicate));
}

GeneratorParams generator_for_setting(const SweepSpec& spec, int value,
                                      std::uint64_t instance_seed) {
    GeneratorParams p;
    p.model = spec.model;
    p.seed = instance_seed;
    switch (spec.variable) {
        case SweepVariable::Migrants:
            p.num_migrants = value;
            p.num_localities = spec.localities;
            p.num_jobs = value;  // |J| = |V|
            p.num_professions = spec.professions;
            p.profession_mode = ProfessionMode::EvenSplit;
            p.job_mode = JobDistributionMode::EqualPerLocality;
            p.capacity_mode = CapacityMode::EqualToJobs;
            break;
        case SweepVariable::Localities:
            p.num_migrants = spec.migrants;
            p.num_localities = value;
            p.num_jobs = spec.migrants;  // |J| = |V|
            p.num_professions = spec.professions;
            p.profession_mode = ProfessionMode::EvenSplit;
            p.job_mode = JobDistributionMode::RandomAtLeastOnePerLocality;
            p.capacity_mode = CapacityMode::EqualToJobs;
            break;
        case SweepVariable::Jobs:
            p.num_migrants = spec.migrants;
            p.num_localities = spec.localities;
            p.num_professions = 2;
            p.num_jobs = value + spec.fixed_profession_jobs;
            p.jobs_per_profession = {value, spec.fixed_profession_jobs};
            p.profession_mode = ProfessionMode::EvenSplit;
            p.job_mode = JobDistributionMode::RandomAtLeastOnePerLocality;
            p.capacity_mode = CapacityMode::FixedTen;
            break;
        case SweepVariable::Professions:
            p.num_migrants = spec.migrants;
            p.num_localities = spec.localities;
            p.num_jobs = spec.migrants;
            p.num_professions = value;
            p.profession_mode = ProfessionMode::RandomAtLeastOne;
            p.jobs_match_migrant_professions = true;
            p.job_mode = JobDistributionMode::FixedTenPerLocality;
            p.capacity_mode = CapacityMode::FixedTen;
            break;
    }
    return p;
}

std::uint64_t budget_for_setting(const SweepSpec& spec, int value) {
    std::uint64_t v = spec.variable == SweepVariable::Migrants
                          ? static_cast<std::uint64_t>(value)
                          : static_cast<std::uint64_t>(spec.migrants);
    std::uint64_t l = spec.variable == SweepVariable::Localities
                          ? static_cast<std::uint64_t>(value)
                          : static_cast<std::uint64_t>(spec.localities);
    return static_cast<std::uint64_t>(spec.budget_factor * static_cast<double>(v * v * l));
}

const std::vector<double>& checkpoint_fractions() {
    static const std::vector<double> kFractions = {0.01, 0.02, 0.05, 0.10, 0.20, 0.30,
                                                   0.40, 0.50, 0.60, 0.70, 0.80, 0.90, 1.00};
    return kFractions;
}

double trace_value_at(const std::vector<std::pair<std::uint64_t, double>>& trace,
                      std::uint64_t evaluations) {
    double value = 0.0;
    for (const auto& [evals, f] : trace) {
        if (evals > evaluations) break;
        value = f;
    }
    return value;
}

namespace {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    int workers = std::min<std::size_t>(threads, count);
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace

ExperimentReport run_experiment(const SweepSpec& spec,
                                const std::vector<SolverConfig>& configs, int threads) {
    spec.validate();
    if (configs.empty()) throw ValidationError("experiment needs at least one algorithm");

    ExperimentReport report;
    report.spec = spec;
    for (const auto& c : configs) report.algorithms.push_back(to_string(c.algorithm));
    report.reference_algorithm = "gsemo-sr";
    if (std::find(report.algorithms.begin(), report.algorithms.end(),
                  report.reference_algorithm) == report.algorithms.end())
        report.reference_algorithm = report.algorithms.front();

    struct CellKey {
        int value_index;
        int replicate;
        int config_index;
    };
    std::vector<CellKey> keys;
    for (int vi = 0; vi < static_cast<int>(spec.values.size()); ++vi)
        for (int rep = 0; rep < spec.replicates; ++rep)
            for (int ci = 0; ci < static_cast<int>(configs.size()); ++ci)
                keys.push_back({vi, rep, ci});

    report.cells.resize(keys.size());
    parallel_for(keys.size(), threads, [&](std::size_t k) {
        const CellKey& key = keys[k];
        const int value = spec.values[key.value_index];
        CellResult& cell = report.cells[k];
        cell.setting_value = value;
        cell.replicate = key.replicate;
        cell.algorithm = to_string(configs[key.config_index].algorithm);
        const auto started = std::chrono::steady_clock::now();
        try {
            const std::uint64_t inst_seed = instance_seed_for(spec, value, key.replicate);
            Instance inst = generate_instance(generator_for_setting(spec, value, inst_seed));

            SolverConfig cfg = configs[key.config_index];
            cfg.budget = budget_for_setting(spec, value);
            cfg.seed = mix_seed(inst_seed, fnv1a(cell.algorithm));
            Evaluator in_run =
                Evaluator::monte_carlo(spec.in_run_samples, mix_seed(cfg.seed, 0x6576616cULL));
            SolverResult result = run_solver(inst, in_run, cfg);

            Evaluator rescore = Evaluator::monte_carlo(
                spec.rescore_samples, mix_seed(cfg.seed, 0x726573636f7265ULL));
            cell.final_f = rescore.estimate(inst, result.best);
            cell.f_hat_in_run = result.best_f1;
            cell.evaluations = result.evaluations_used;
            cell.trace = std::move(result.trace);
        } catch (const std::exception& e) {
            cell.error = e.what();
        }
        if (spec.record_timing)
            cell.wall_ms = static_cast<std::uint64_t>(
                std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - started)
                    .count());
    });

    // Aggregate per (setting, algorithm) in declared order.
    std::map<std::string, std::vector<double>> rank_accumulator;
    for (int vi = 0; vi < static_cast<int>(spec.values.size()); ++vi) {
        const int value = spec.values[vi];
        std::vector<std::vector<double>> finals(configs.size());
        for (const auto& cell : report.cells)
            if (cell.setting_value == value && cell.error.empty())
                for (int ci = 0; ci < static_cast<int>(configs.size()); ++ci)
                    if (cell.algorithm == report.algorithms[ci])
                        finals[ci].push_back(cell.final_f);
        int ref_index = 0;
        for (int ci = 0; ci < static_cast<int>(configs.size()); ++ci)
            if (report.algorithms[ci] == report.reference_algorithm) ref_index = ci;
        std::vector<double> means(configs.size());
        for (int ci = 0; ci < static_cast<int>(configs.size()); ++ci)
            means[ci] = mean(finals[ci]);
        std::vector<double> ranks = rank_values(means, /*descending=*/true);
        for (int ci = 0; ci < static_cast<int>(configs.size()); ++ci) {
            AggregateRow row;
            row.setting_value = value;
            row.algorithm = report.algorithms[ci];
            row.replicates = static_cast<int>(finals[ci].size());
            row.mean = means[ci];
            row.stddev = sample_stddev(finals[ci]);
            row.wilcoxon_p_vs_ref =
                ci == ref_index || finals[ci].size() != finals[ref_index].size()
                    ? 1.0
                    : wilcoxon_signed_rank(finals[ref_index], finals[ci]);
            row.rank = ranks[ci];
            report.aggregates.push_back(row);
            rank_accumulator[row.algorithm].push_back(row.rank);
        }
    }
    for (const auto& [algo, ranks] : rank_accumulator) report.average_rank[algo] = mean(ranks);
    return report;
}

namespace {

std::string format_double(double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

std::string format_fixed(double v, int digits) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(digits) << v;
    return ss.str();
}

std::string emit_csv(const ExperimentReport& r) {
    std::ostringstream out;
    out << "sweep_var,sweep_value,model,algorithm,replicate,final_f,f_hat_in_run,"
           "evaluations,wall_ms,mean,std,wilcoxon_p_vs_ref,rank\n";
    for (const auto& c : r.cells) {
        out << to_string(r.spec.variable) << ',' << c.setting_value << ','
            << to_string(r.spec.model) << ',' << c.algorithm << ',' << c.replicate << ',';
        if (c.error.empty())
            out << format_double(c.final_f) << ',' << format_double(c.f_hat_in_run) << ','
                << c.evaluations << ',' << c.wall_ms;
        else
            out << "error:" << c.error << ",,,";
        out << ",,,,\n";
    }
    for (const auto& a : r.aggregates) {
        out << to_string(r.spec.variable) << ',' << a.setting_value << ','
            << to_string(r.spec.model) << ',' << a.algorithm << ",agg,,,,,"
            << format_double(a.mean) << ',' << format_double(a.stddev) << ','
            << format_double(a.wilcoxon_p_vs_ref) << ',' << format_double(a.rank) << '\n';
    }
    return out.str();
}

std::string emit_markdown(const ExperimentReport& r) {
    std::ostringstream out;
    out << "## " << to_string(r.spec.model) << " model, varying "
        << to_string(r.spec.variable) << "\n\n";
    out << "| algorithm |";
    for (int v : r.spec.values) out << ' ' << v << " |";
    out << " Avg.R. |\n|---|";
    for (std::size_t i = 0; i < r.spec.values.size(); ++i) out << "---|";
    out << "---|\n";

    auto aggregate_for = [&](const std::string& algo, int value) -> const AggregateRow* {
        for (const auto& a : r.aggregates)
            if (a.algorithm == algo && a.setting_value == value) return &a;
        return nullptr;
    };
    for (const auto& algo : r.algorithms) {
        out << "| " << algo << " |";
        for (int v : r.spec.values) {
            const AggregateRow* row = aggregate_for(algo, v);
            if (row == nullptr) {
                out << " - |";
                continue;
            }
            bool best = true;
            const AggregateRow* ref = aggregate_for(r.reference_algorithm, v);
            for (const auto& other : r.algorithms) {
                const AggregateRow* o = aggregate_for(other, v);
                if (o != nullptr && o->mean > row->mean) best = false;
            }
            std::string cell = format_fixed(row->mean, 2) + "±" + format_fixed(row->stddev, 2);
            if (ref != nullptr && algo != r.reference_algorithm &&
                row->wilcoxon_p_vs_ref < 0.05 && ref->mean > row->mean)
                cell += "•";
            out << ' ' << (best ? "**" + cell + "**" : cell) << " |";
        }
        auto it = r.average_rank.find(algo);
        out << ' ' << (it == r.average_rank.end() ? std::string("-")
                                                  : format_fixed(it->second, 2))
            << " |\n";
    }
    out << "\n- `•`: " << r.reference_algorithm
        << " is significantly better (Wilcoxon signed-rank, p < 0.05).\n"
        << "- Bold: largest mean per setting.\n";
    return out.str();
}

std::string emit_plotdata(const ExperimentReport& r) {
    std::ostringstream out;
    out << "sweep_value,algorithm,checkpoint_evals,mean_best_f\n";
    for (int v : r.spec.values) {
        std::uint64_t budget = budget_for_setting(r.spec, v);
        for (const auto& algo : r.algorithms) {
            for (double frac : checkpoint_fractions()) {
                std::uint64_t checkpoint =
                    static_cast<std::uint64_t>(std::llround(frac * static_cast<double>(budget)));
                std::vector<double> vals;
                for (const auto& c : r.cells)
                    if (c.setting_value == v && c.algorithm == algo && c.error.empty())
                        vals.push_back(trace_value_at(c.trace, checkpoint));
                out << v << ',' << algo << ',' << checkpoint << ','
                    << format_double(mean(vals)) << '\n';
            }
        }
    }
    return out.str();
}

}  // namespace

std::string emit_report(const ExperimentReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::CSV: return emit_csv(report);
        case ReportFormat::Markdown: return emit_markdown(report);
        case ReportFormat::PlotData: return emit_plotdata(report);
    }
    throw std::logic_error("unhandled report format");
}

std::string report_to_json(const ExperimentReport& r) {
    json j;
    j["spec"] = {{"variable", to_string(r.spec.variable)},
                 {"values", r.spec.values},
                 {"model", to_string(r.spec.model)},
                 {"replicates", r.spec.replicates},
                 {"run_seed", r.spec.run_seed},
                 {"migrants", r.spec.migrants},
                 {"localities", r.spec.localities},
                 {"professions", r.spec.professions},
                 {"fixed_profession_jobs", r.spec.fixed_profession_jobs},
                 {"in_run_samples", r.spec.in_run_samples},
                 {"rescore_samples", r.spec.rescore_samples},
                 {"budget_factor", r.spec.budget_factor},
                 {"record_timing", r.spec.record_timing}};
    j["algorithms"] = r.algorithms;
    j["reference_algorithm"] = r.reference_algorithm;
    j["cells"] = json::array();
    for (const auto& c : r.cells) {
        json trace = json::array();
        for (const auto& [e, f] : c.trace) trace.push_back({e, f});
        j["cells"].push_back({{"setting_value", c.setting_value},
                              {"algorithm", c.algorithm},
                              {"replicate", c.replicate},
                              {"final_f", c.final_f},
                              {"f_hat_in_run", c.f_hat_in_run},
                              {"evaluations", c.evaluations},
                              {"wall_ms", c.wall_ms},
                              {"error", c.error},
                              {"trace", std::move(trace)}});
    }
    j["aggregates"] = json::array();
    for (const auto& a : r.aggregates)
        j["aggregates"].push_back({{"setting_value", a.setting_value},
                                   {"algorithm", a.algorithm},
                                   {"replicates", a.replicates},
                                   {"mean", a.mean},
                                   {"stddev", a.stddev},
                                   {"wilcoxon_p_vs_ref", a.wilcoxon_p_vs_ref},
                                   {"rank", a.rank}});
    j["average_rank"] = r.average_rank;
    return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid report document: ") + e.what());
    }
    ExperimentReport r;
    try {
        const auto& s = j.at("spec");
        r.spec.variable = sweep_variable_from_string(s.at("variable").get<std::string>());
        r.spec.values = s.at("values").get<std::vector<int>>();
        r.spec.model = model_kind_from_string(s.at("model").get<std::string>());
        r.spec.replicates = s.at("replicates").get<int>();
        r.spec.run_seed = s.at("run_seed").get<std::uint64_t>();
        r.spec.migrants = s.at("migrants").get<int>();
        r.spec.localities = s.at("localities").get<int>();
        r.spec.professions = s.at("professions").get<int>();
        r.spec.fixed_profession_jobs = s.at("fixed_profession_jobs").get<int>();
        r.spec.in_run_samples = s.at("in_run_samples").get<int>();
        r.spec.rescore_samples = s.at("rescore_samples").get<int>();
        r.spec.budget_factor = s.at("budget_factor").get<double>();
        r.spec.record_timing = s.at("record_timing").get<bool>();
        r.algorithms = j.at("algorithms").get<std::vector<std::string>>();
        r.reference_algorithm = j.at("reference_algorithm").get<std::string>();
        for (const auto& c : j.at("cells")) {
            CellResult cell;
            cell.setting_value = c.at("setting_value").get<int>();
            cell.algorithm = c.at("algorithm").get<std::string>();
            cell.replicate = c.at("replicate").get<int>();
            cell.final_f = c.at("final_f").get<double>();
            cell.f_hat_in_run = c.at("f_hat_in_run").get<double>();
            cell.evaluations = c.at("evaluations").get<std::uint64_t>();
            cell.wall_ms = c.at("wall_ms").get<std::uint64_t>();
            cell.error = c.at("error").get<std::string>();
            for (const auto& t : c.at("trace"))
                cell.trace.emplace_back(t.at(0).get<std::uint64_t>(), t.at(1).get<double>());
            r.cells.push_back(std::move(cell));
        }
        for (const auto& a : j.at("aggregates")) {
            AggregateRow row;
            row.setting_value = a.at("setting_value").get<int>();
            row.algorithm = a.at("algorithm").get<std::string>();
            row.replicates = a.at("replicates").get<int>();
            row.mean = a.at("mean").get<double>();
            row.stddev = a.at("stddev").get<double>();
            row.wilcoxon_p_vs_ref = a.at("wilcoxon_p_vs_ref").get<double>();
            row.rank = a.at("rank").get<double>();
            r.aggregates.push_back(std::move(row));
        }
        r.average_rank = j.at("average_rank").get<std::map<std::string, double>>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad report document: ") + e.what());
    }
    return r;
}

}  // namespace mr
