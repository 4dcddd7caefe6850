#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mr/instance.hpp"
#include "mr/objective.hpp"
#include "mr/solution.hpp"

namespace mr {

enum class Algorithm {
    Additive,
    Greedy,
    GSEMO,
    GSEMO_S,   // matrix-swap mutation, no repair
    GSEMO_R,   // repair, bit-wise mutation only
    GSEMO_SR,
    NSGA2_100,
    NSGA2_2r,
    MOEAD,
};

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct SolverConfig {
    Algorithm algorithm = Algorithm::GSEMO_SR;
    std::uint64_t budget = 1;          // objective evaluations
    std::uint64_t seed = 0;
    double p_m = 0.5;                  // GSEMO-SR bit-wise mutation probability
    double crossover_prob = 0.9;
    double mutation_prob = 1.0;
    int population_size = 0;           // 0 -> algorithm default (100, or 2(r+1))
    int neighborhood_size = 20;        // MOEA/D

    void validate() const;
};

struct SolverResult {
    Assignment best;
    double best_f1 = 0.0;              // f-hat at selection time
    std::uint64_t evaluations_used = 0;
    // (evaluation count, best-so-far f-hat); first entry at 0 evaluations.
    std::vector<std::pair<std::uint64_t, double>> trace;
};

SolverResult additive(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg);
SolverResult greedy(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg);
SolverResult gsemo(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg);
SolverResult gsemo_sr(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg);
SolverResult nsga2(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg);
SolverResult moead(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg);

// Dispatch on cfg.algorithm.
SolverResult run_solver(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg);

// Argmax f-hat among feasible candidates; ties broken by fewer selected
// pairs, then lowest lexicographic bit string. Throws if no candidate is
// feasible.
struct ScoredAssignment {
    Assignment assignment;
    ObjectivePair objectives;
};
const ScoredAssignment& select_best_feasible(const std::vector<ScoredAssignment>& candidates);

}  // namespace mr
