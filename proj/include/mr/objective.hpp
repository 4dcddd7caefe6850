#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "mr/instance.hpp"
#include "mr/rng.hpp"
#include "mr/solution.hpp"

namespace mr {

struct BipartiteGraph {
    int left = 0;
    int right = 0;
    std::vector<std::pair<int, int>> edges;
};

// Exact maximum-cardinality matching size (Hopcroft-Karp).
int max_bipartite_matching(const BipartiteGraph& g);

// One realization of the interview process: per (locality, profession) group,
// migrants interview in a uniformly random order; a migrant facing j remaining
// jobs is employed with probability 1-(1-p)^j. Returns total employed.
// Pre: a feasible.
int interview_sample(const Instance& inst, const Assignment& a, Rng& rng);

// One realization of the coordination process: per locality, sample the
// bipartite graph between assigned migrants and all local jobs (edge (v, job
// of profession pi) present with probability p_{v,pi}) and return the summed
// maximum matching size. Pre: a feasible.
int coordination_sample(const Instance& inst, const Assignment& a, Rng& rng);

// Exact expectation of the model objective. Enumerates per-group permutations
// (interview, group size <= 8) or free-edge subsets (coordination, <= 20 free
// edges); throws OracleLimitError beyond those limits. Pre: a feasible.
double exact_objective(const Instance& inst, const Assignment& a);

namespace detail {
struct EvalContext;
}

// A configured objective estimator: Monte-Carlo mean over a fixed sample
// count, or the exact oracle. One estimate() call counts as one objective
// evaluation regardless of sample count. Monte-Carlo sample s of call c draws
// from an RNG stream derived from (seed, c, s), so estimates are a pure
// function of (seed, call sequence).
class Evaluator {
public:
    enum class Kind { MonteCarlo, Exact };

    static Evaluator monte_carlo(int samples, std::uint64_t seed);
    static Evaluator exact();

    Evaluator(Evaluator&&) noexcept;
    Evaluator& operator=(Evaluator&&) noexcept;
    ~Evaluator();

    Kind kind() const { return kind_; }
    int samples() const { return samples_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t evaluations() const { return calls_; }

    // Pre: a feasible. Increments the evaluation counter by exactly 1.
    double estimate(const Instance& inst, const Assignment& a);

    // Bi-objective wrapper: infeasible solutions get (-1, |a|_0) with no estimator
    // call; feasible ones get (estimate(a), |a|_0).
    ObjectivePair bi_objective(const Instance& inst, const Assignment& a);

private:
    Evaluator(Kind kind, int samples, std::uint64_t seed);

    Kind kind_;
    int samples_;
    std::uint64_t seed_;
    std::uint64_t calls_ = 0;
    std::unique_ptr<detail::EvalContext> ctx_;
};

}  // namespace mr
