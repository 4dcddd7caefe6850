#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace mr {

enum class ModelKind { Interview, Coordination };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& s);

struct Migrant {
    int id = 0;
    int profession = 0;
};

struct Locality {
    int id = 0;
    int capacity = 0;
    std::vector<int> jobs_by_profession;  // length = num_professions

    int total_jobs() const;
};

// Dense row-major matrix of matching probabilities.
struct ProbMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }

    bool operator==(const ProbMatrix&) const = default;
};

// A migrant resettlement problem instance. Immutable after construction;
// safe to share read-only across threads.
struct Instance {
    ModelKind model = ModelKind::Interview;
    int num_professions = 0;
    std::vector<Migrant> migrants;
    std::vector<Locality> localities;
    // Interview: |V| x |L|, entry (v, l). Coordination: |V| x |Pi|, entry (v, pi).
    ProbMatrix probs;

    std::size_t num_migrants() const { return migrants.size(); }
    std::size_t num_localities() const { return localities.size(); }
    std::size_t num_pairs() const { return migrants.size() * localities.size(); }

    // Size of the largest feasible solution: sum of locality capacities,
    // clamped by the number of migrants.
    std::size_t max_feasible_size() const;

    // Throws ValidationError if any invariant is violated.
    void validate() const;

    bool operator==(const Instance&) const;
};

enum class ProfessionMode { EvenSplit, RandomAtLeastOne };
enum class JobDistributionMode { EqualPerLocality, RandomAtLeastOnePerLocality, FixedTenPerLocality };
enum class CapacityMode { EqualToJobs, FixedTen };

struct GeneratorParams {
    ModelKind model = ModelKind::Interview;
    int num_migrants = 0;
    int num_localities = 0;
    int num_jobs = 0;
    int num_professions = 1;
    ProfessionMode profession_mode = ProfessionMode::EvenSplit;
    JobDistributionMode job_mode = JobDistributionMode::EqualPerLocality;
    CapacityMode capacity_mode = CapacityMode::EqualToJobs;
    // When non-empty, fixes the number of jobs of each profession (length must
    // equal num_professions and entries must sum to num_jobs).
    std::vector<int> jobs_per_profession;
    // When true, the job count of each profession equals the number of
    // migrants with that profession (overrides jobs_per_profession).
    bool jobs_match_migrant_professions = false;
    std::uint64_t seed = 0;

    void validate() const;
};

Instance generate_instance(const GeneratorParams& params);

// Structured-text persistence (JSON schema; see README). Round-trip is
// value-exact: parse(serialize(I)) == I.
std::string serialize_instance(const Instance& instance);
Instance parse_instance(const std::string& text);
Instance load_instance_file(const std::string& path);
void save_instance_file(const Instance& instance, const std::string& path);

}  // namespace mr
