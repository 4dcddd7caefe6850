#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mr/errors.hpp"
#include "mr/harness.hpp"
#include "mr/stats.hpp"

using namespace mr;

namespace {

SweepSpec tiny_spec() {
    SweepSpec spec;
    spec.variable = SweepVariable::Migrants;
    spec.values = {4, 6};
    spec.model = ModelKind::Interview;
    spec.replicates = 3;
    spec.run_seed = 99;
    spec.localities = 2;
    spec.professions = 1;
    spec.in_run_samples = 10;
    spec.rescore_samples = 50;
    spec.budget_factor = 2.0;
    return spec;
}

std::vector<SolverConfig> tiny_configs() {
    SolverConfig greedy;
    greedy.algorithm = Algorithm::Greedy;
    greedy.budget = 1;
    SolverConfig gsemo;
    gsemo.algorithm = Algorithm::GSEMO_SR;
    gsemo.budget = 1;
    return {greedy, gsemo};
}

}  // namespace

TEST_CASE("sweep variable names round trip") {
    for (auto v : {SweepVariable::Migrants, SweepVariable::Localities, SweepVariable::Jobs,
                   SweepVariable::Professions})
        CHECK(sweep_variable_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(sweep_variable_from_string("size"), ValidationError);
}

TEST_CASE("budget scales as factor * |V|^2 * |L|") {
    SweepSpec spec = tiny_spec();
    CHECK(budget_for_setting(spec, 4) == 2 * 4 * 4 * 2);
    spec.variable = SweepVariable::Localities;
    spec.migrants = 10;
    CHECK(budget_for_setting(spec, 3) == 2 * 10 * 10 * 3);
}

TEST_CASE("instance seeds are pure functions of their coordinates") {
    SweepSpec spec = tiny_spec();
    CHECK(instance_seed_for(spec, 4, 0) == instance_seed_for(spec, 4, 0));
    CHECK(instance_seed_for(spec, 4, 0) != instance_seed_for(spec, 4, 1));
    CHECK(instance_seed_for(spec, 4, 0) != instance_seed_for(spec, 6, 0));
    SweepSpec other = spec;
    other.run_seed = 100;
    CHECK(instance_seed_for(spec, 4, 0) != instance_seed_for(other, 4, 0));
}

TEST_CASE("generator settings track the swept variable") {
    SweepSpec spec = tiny_spec();
    GeneratorParams p = generator_for_setting(spec, 6, 1);
    CHECK(p.num_migrants == 6);
    CHECK(p.num_localities == 2);
    CHECK(p.num_jobs == 6);

    spec.variable = SweepVariable::Localities;
    p = generator_for_setting(spec, 3, 1);
    CHECK(p.num_migrants == spec.migrants);
    CHECK(p.num_localities == 3);

    spec.variable = SweepVariable::Jobs;
    spec.fixed_profession_jobs = 50;
    p = generator_for_setting(spec, 30, 1);
    CHECK(p.num_professions == 2);
    CHECK(p.jobs_per_profession == std::vector<int>{30, 50});
    CHECK(p.num_jobs == 80);

    spec.variable = SweepVariable::Professions;
    spec.migrants = 100;
    spec.localities = 10;
    p = generator_for_setting(spec, 7, 1);
    CHECK(p.num_professions == 7);
    CHECK(p.jobs_match_migrant_professions);
    CHECK(generate_instance(p).num_migrants() == 100);
}

TEST_CASE("trace lookup is a step function") {
    std::vector<std::pair<std::uint64_t, double>> trace = {{0, 0.0}, {5, 1.0}, {9, 2.5}};
    CHECK(trace_value_at(trace, 0) == 0.0);
    CHECK(trace_value_at(trace, 4) == 0.0);
    CHECK(trace_value_at(trace, 5) == 1.0);
    CHECK(trace_value_at(trace, 8) == 1.0);
    CHECK(trace_value_at(trace, 100) == 2.5);
}

TEST_CASE("checkpoint fractions span 1% to 100%") {
    const auto& f = checkpoint_fractions();
    CHECK(f.front() == 0.01);
    CHECK(f.back() == 1.0);
    CHECK(std::is_sorted(f.begin(), f.end()));
    CHECK(std::count(f.begin(), f.end(), 0.05) == 1);
}

TEST_CASE("experiment runs all cells and aggregates them") {
    SweepSpec spec = tiny_spec();
    std::vector<SolverConfig> configs = tiny_configs();
    ExperimentReport report = run_experiment(spec, configs);

    CHECK(report.cells.size() == 2 * 3 * 2);  // values x replicates x algorithms
    for (const auto& cell : report.cells) {
        CHECK(cell.error.empty());
        CHECK(cell.final_f >= 0.0);
        CHECK(cell.evaluations > 0);
    }
    CHECK(report.aggregates.size() == 2 * 2);

    // Aggregate means equal the arithmetic mean of their replicate cells.
    for (const auto& agg : report.aggregates) {
        std::vector<double> values;
        for (const auto& cell : report.cells)
            if (cell.setting_value == agg.setting_value && cell.algorithm == agg.algorithm)
                values.push_back(cell.final_f);
        CHECK(values.size() == 3);
        CHECK(agg.mean == doctest::Approx(mean(values)).epsilon(1e-12));
    }

    // Per setting, ranks are a permutation of 1..#algorithms (ties averaged).
    for (int value : spec.values) {
        double rank_sum = 0.0;
        for (const auto& agg : report.aggregates)
            if (agg.setting_value == value) rank_sum += agg.rank;
        CHECK(rank_sum == doctest::Approx(1.0 + 2.0).epsilon(1e-12));
    }
    CHECK(report.average_rank.size() == 2);
}

TEST_CASE("reports are deterministic and thread-count independent") {
    SweepSpec spec = tiny_spec();
    std::vector<SolverConfig> configs = tiny_configs();
    std::string one = report_to_json(run_experiment(spec, configs, 1));
    std::string four = report_to_json(run_experiment(spec, configs, 4));
    CHECK(one == four);
    CHECK(one == report_to_json(run_experiment(spec, configs, 2)));
}

TEST_CASE("adding an algorithm never changes existing results") {
    SweepSpec spec = tiny_spec();
    std::vector<SolverConfig> two = tiny_configs();
    std::vector<SolverConfig> three = two;
    SolverConfig extra;
    extra.algorithm = Algorithm::Additive;
    extra.budget = 1;
    three.push_back(extra);
    ExperimentReport small = run_experiment(spec, two);
    ExperimentReport large = run_experiment(spec, three);
    for (const auto& cell : small.cells) {
        bool found = false;
        for (const auto& other : large.cells)
            if (other.setting_value == cell.setting_value &&
                other.algorithm == cell.algorithm && other.replicate == cell.replicate) {
                CHECK(other.final_f == cell.final_f);
                CHECK(other.evaluations == cell.evaluations);
                found = true;
            }
        CHECK(found);
    }
}

TEST_CASE("report JSON round trips") {
    ExperimentReport report = run_experiment(tiny_spec(), tiny_configs());
    std::string text = report_to_json(report);
    ExperimentReport back = report_from_json(text);
    CHECK(report_to_json(back) == text);
    CHECK_THROWS_AS(report_from_json("{"), ParseError);
    CHECK_THROWS_AS(report_from_json("{}"), ParseError);
}

TEST_CASE("CSV report lists every replicate and aggregate") {
    ExperimentReport report = run_experiment(tiny_spec(), tiny_configs());
    std::string csv = emit_report(report, ReportFormat::CSV);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line ==
          "sweep_var,sweep_value,model,algorithm,replicate,final_f,f_hat_in_run,"
          "evaluations,wall_ms,mean,std,wilcoxon_p_vs_ref,rank");
    int rows = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 12 + 4);  // cells + aggregates

    ExperimentReport empty;
    empty.spec = tiny_spec();
    std::string empty_csv = emit_report(empty, ReportFormat::CSV);
    CHECK(empty_csv.find('\n') == empty_csv.size() - 1);  // header only
}

TEST_CASE("markdown report bolds the best mean") {
    ExperimentReport report = run_experiment(tiny_spec(), tiny_configs());
    std::string md = emit_report(report, ReportFormat::Markdown);
    CHECK(md.find("| greedy |") != std::string::npos);
    CHECK(md.find("| gsemo-sr |") != std::string::npos);
    CHECK(md.find("**") != std::string::npos);
}

TEST_CASE("plot data traces are non-decreasing per algorithm") {
    ExperimentReport report = run_experiment(tiny_spec(), tiny_configs());
    std::string plot = emit_report(report, ReportFormat::PlotData);
    std::istringstream in(plot);
    std::string line;
    std::getline(in, line);  // header
    std::map<std::pair<int, std::string>, double> last;
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string value, algo, evals, f;
        std::getline(cells, value, ',');
        std::getline(cells, algo, ',');
        std::getline(cells, evals, ',');
        std::getline(cells, f, ',');
        auto key = std::make_pair(std::stoi(value), algo);
        double fv = std::stod(f);
        auto it = last.find(key);
        if (it != last.end()) CHECK(fv >= it->second);
        last[key] = fv;
        ++rows;
    }
    CHECK(rows == 2 * 2 * static_cast<int>(checkpoint_fractions().size()));
}

TEST_CASE("spec validation rejects degenerate sweeps") {
    SweepSpec spec = tiny_spec();
    spec.values.clear();
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = tiny_spec();
    spec.replicates = 0;
    CHECK_THROWS_AS(run_experiment(spec, tiny_configs()), ValidationError);
    spec = tiny_spec();
    CHECK_THROWS_AS(run_experiment(spec, {}), ValidationError);
}
