#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "mr/errors.hpp"
#include "mr/instance.hpp"
#include "mr/objective.hpp"
#include "mr/rng.hpp"
#include "mr/solution.hpp"

using namespace mr;

namespace {

// ---- test-side oracles, written directly against the model definitions ----

// Expected number employed when migrants with success probabilities `ps`
// interview in the given fixed order for `jobs` jobs: track the distribution
// over the number of remaining jobs.
double fixed_order_employment(const std::vector<double>& ps, const std::vector<int>& order,
                              int jobs) {
    std::map<int, double> dist{{jobs, 1.0}};
    double employed = 0.0;
    for (int who : order) {
        std::map<int, double> next;
        for (auto [j, pr] : dist) {
            if (j == 0) {
                next[0] += pr;
                continue;
            }
            double hire = 1.0 - std::pow(1.0 - ps[who], j);
            employed += pr * hire;
            next[j - 1] += pr * hire;
            next[j] += pr * (1.0 - hire);
        }
        dist = std::move(next);
    }
    return employed;
}

// Average over all interview orders of one (locality, profession) group.
double group_employment(const std::vector<double>& ps, int jobs) {
    std::vector<int> order(ps.size());
    std::iota(order.begin(), order.end(), 0);
    double total = 0.0;
    long long count = 0;
    std::sort(order.begin(), order.end());
    do {
        total += fixed_order_employment(ps, order, jobs);
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    return total / static_cast<double>(count);
}

double interview_oracle(const Instance& inst, const Assignment& a) {
    double total = 0.0;
    for (std::size_t l = 0; l < inst.num_localities(); ++l) {
        for (int pi = 0; pi < inst.num_professions; ++pi) {
            std::vector<double> ps;
            for (std::size_t v = 0; v < inst.num_migrants(); ++v)
                if (a.cell(v, l) && inst.migrants[v].profession == pi)
                    ps.push_back(inst.probs.at(v, l));
            if (!ps.empty())
                total += group_employment(ps, inst.localities[l].jobs_by_profession[pi]);
        }
    }
    return total;
}

// Maximum matching by brute-force recursion over the edge list.
int matching_oracle(const std::vector<std::pair<int, int>>& edges, std::size_t i,
                    unsigned long used_left, unsigned long used_right) {
    if (i == edges.size()) return 0;
    int best = matching_oracle(edges, i + 1, used_left, used_right);
    auto [u, v] = edges[i];
    if (!(used_left >> u & 1) && !(used_right >> v & 1))
        best = std::max(best, 1 + matching_oracle(edges, i + 1, used_left | (1UL << u),
                                                  used_right | (1UL << v)));
    return best;
}

// Expected maximum matching per locality by enumerating edge subsets.
double coordination_oracle(const Instance& inst, const Assignment& a) {
    double total = 0.0;
    for (std::size_t l = 0; l < inst.num_localities(); ++l) {
        std::vector<int> migrants;
        for (std::size_t v = 0; v < inst.num_migrants(); ++v)
            if (a.cell(v, l)) migrants.push_back(static_cast<int>(v));
        std::vector<int> job_profs;
        for (int pi = 0; pi < inst.num_professions; ++pi)
            for (int c = 0; c < inst.localities[l].jobs_by_profession[pi]; ++c)
                job_profs.push_back(pi);
        std::vector<std::pair<int, int>> potential;  // (migrant index, job slot)
        std::vector<double> probs;
        for (std::size_t mi = 0; mi < migrants.size(); ++mi)
            for (std::size_t s = 0; s < job_profs.size(); ++s) {
                double p = inst.probs.at(migrants[mi], job_profs[s]);
                if (p > 0.0) {
                    potential.emplace_back(static_cast<int>(mi), static_cast<int>(s));
                    probs.push_back(p);
                }
            }
        REQUIRE(potential.size() <= 22);
        for (unsigned long mask = 0; mask < (1UL << potential.size()); ++mask) {
            double weight = 1.0;
            std::vector<std::pair<int, int>> present;
            for (std::size_t e = 0; e < potential.size(); ++e) {
                if (mask >> e & 1) {
                    weight *= probs[e];
                    present.push_back(potential[e]);
                } else {
                    weight *= 1.0 - probs[e];
                }
            }
            if (weight > 0.0) total += weight * matching_oracle(present, 0, 0, 0);
        }
    }
    return total;
}

Instance interview_instance() {
    Instance inst;
    inst.model = ModelKind::Interview;
    inst.num_professions = 2;
    inst.migrants = {{0, 0}, {1, 0}, {2, 1}, {3, 0}};
    inst.localities = {{0, 3, {1, 1}}, {1, 2, {2, 0}}};
    inst.probs.rows = 4;
    inst.probs.cols = 2;
    inst.probs.data = {0.5, 0.3, 0.8, 0.6, 0.4, 0.9, 0.7, 0.2};
    inst.validate();
    return inst;
}

Instance coordination_instance() {
    Instance inst;
    inst.model = ModelKind::Coordination;
    inst.num_professions = 2;
    inst.migrants = {{0, 0}, {1, 0}, {2, 1}};
    inst.localities = {{0, 2, {2, 0}}, {1, 2, {0, 1}}};
    inst.probs.rows = 3;
    inst.probs.cols = 2;
    inst.probs.data = {0.5, 0.0, 0.25, 0.0, 0.0, 0.75};
    inst.validate();
    return inst;
}

std::vector<Assignment> all_feasible(const Instance& inst) {
    std::vector<Assignment> out;
    std::size_t n = inst.num_pairs();
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        Assignment a = Assignment::for_instance(inst);
        for (std::size_t b = 0; b < n; ++b)
            if (mask >> b & 1) a.set_bit(b, true);
        if (is_feasible(inst, a)) out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

TEST_CASE("hopcroft-karp matches brute force") {
    Rng rng(101);
    for (int t = 0; t < 300; ++t) {
        BipartiteGraph g;
        g.left = 1 + static_cast<int>(rng.next_index(5));
        g.right = 1 + static_cast<int>(rng.next_index(5));
        for (int u = 0; u < g.left; ++u)
            for (int v = 0; v < g.right; ++v)
                if (rng.bernoulli(0.4)) g.edges.emplace_back(u, v);
        CHECK(max_bipartite_matching(g) == matching_oracle(g.edges, 0, 0, 0));
    }
}

TEST_CASE("single migrant interview expectation is 1-(1-p)^j") {
    Instance inst;
    inst.model = ModelKind::Interview;
    inst.num_professions = 1;
    inst.migrants = {{0, 0}};
    inst.localities = {{0, 1, {2}}};
    inst.probs = {1, 1, {0.5}};
    inst.validate();
    Assignment a(1, 1);
    a.set_bit(0, true);
    CHECK(exact_objective(inst, a) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("two equal migrants, one job") {
    // Either order: first succeeds w.p. 0.5, else second gets the same shot.
    Instance inst;
    inst.model = ModelKind::Interview;
    inst.num_professions = 1;
    inst.migrants = {{0, 0}, {1, 0}};
    inst.localities = {{0, 2, {1}}};
    inst.probs = {2, 1, {0.5, 0.5}};
    inst.validate();
    Assignment a(2, 1);
    a.set_bit(0, true);
    a.set_bit(1, true);
    CHECK(exact_objective(inst, a) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("interview exact oracle matches the test-side enumeration") {
    Instance inst = interview_instance();
    for (const auto& a : all_feasible(inst))
        CHECK(exact_objective(inst, a) ==
              doctest::Approx(interview_oracle(inst, a)).epsilon(1e-10));
}

TEST_CASE("coordination exact oracle matches the test-side enumeration") {
    Instance inst = coordination_instance();
    for (const auto& a : all_feasible(inst))
        CHECK(exact_objective(inst, a) ==
              doctest::Approx(coordination_oracle(inst, a)).epsilon(1e-10));
}

TEST_CASE("monte carlo estimate converges to the exact value") {
    for (Instance inst : {interview_instance(), coordination_instance()}) {
        Assignment a = Assignment::for_instance(inst);
        a.set_cell(0, 0, true);
        a.set_cell(1, 0, true);
        if (inst.model == ModelKind::Coordination) a.set_cell(2, 1, true);
        else a.set_cell(2, 1, true);
        REQUIRE(is_feasible(inst, a));
        double exact = exact_objective(inst, a);
        const int samples = 200000;
        Evaluator mc = Evaluator::monte_carlo(samples, 5);
        double est = mc.estimate(inst, a);
        // Employment counts are bounded by 3, so per-sample variance <= 9/4.
        double se = 1.5 / std::sqrt(static_cast<double>(samples));
        CHECK(std::abs(est - exact) < 5.0 * se);
    }
}

TEST_CASE("estimates are a pure function of seed and call index") {
    Instance inst = interview_instance();
    Assignment a = Assignment::for_instance(inst);
    a.set_cell(0, 0, true);
    a.set_cell(3, 1, true);
    Evaluator e1 = Evaluator::monte_carlo(500, 42);
    Evaluator e2 = Evaluator::monte_carlo(500, 42);
    double first = e1.estimate(inst, a);
    CHECK(first == e2.estimate(inst, a));
    // Later calls draw fresh samples even for the same argument.
    CHECK(e1.estimate(inst, a) != first);
    Evaluator e3 = Evaluator::monte_carlo(500, 43);
    CHECK(e3.estimate(inst, a) != first);
}

TEST_CASE("one estimate call counts as one evaluation") {
    Instance inst = interview_instance();
    Assignment a = Assignment::for_instance(inst);
    a.set_cell(0, 0, true);
    Evaluator mc = Evaluator::monte_carlo(1000, 1);
    CHECK(mc.evaluations() == 0);
    mc.estimate(inst, a);
    mc.estimate(inst, a);
    CHECK(mc.evaluations() == 2);
}

TEST_CASE("bi-objective wrapper penalizes infeasible solutions") {
    Instance inst = interview_instance();
    Evaluator mc = Evaluator::monte_carlo(100, 1);
    Assignment bad = Assignment::for_instance(inst);
    bad.set_cell(0, 0, true);
    bad.set_cell(0, 1, true);  // migrant 0 assigned twice
    ObjectivePair p = mc.bi_objective(inst, bad);
    CHECK(p.f1 == -1.0);
    CHECK(p.f2 == static_cast<long long>(bad.zeros()));
    CHECK(mc.evaluations() == 0);  // no estimator call charged

    Assignment empty = Assignment::for_instance(inst);
    ObjectivePair q = mc.bi_objective(inst, empty);
    CHECK(q.f1 == 0.0);
    CHECK(q.f2 == static_cast<long long>(inst.num_pairs()));
    CHECK(dominates(q, p));
}

TEST_CASE("exact evaluator agrees with exact_objective") {
    Instance inst = coordination_instance();
    Assignment a = Assignment::for_instance(inst);
    a.set_cell(0, 0, true);
    a.set_cell(2, 1, true);
    Evaluator ex = Evaluator::exact();
    CHECK(ex.estimate(inst, a) == exact_objective(inst, a));
    CHECK(ex.evaluations() == 1);
}

TEST_CASE("oracle refuses instances beyond its enumeration limits") {
    Instance inst;
    inst.model = ModelKind::Interview;
    inst.num_professions = 1;
    for (int i = 0; i < 9; ++i) inst.migrants.push_back({i, 0});
    inst.localities = {{0, 9, {9}}};
    inst.probs.rows = 9;
    inst.probs.cols = 1;
    inst.probs.data.assign(9, 0.5);
    inst.validate();
    Assignment a(9, 1);
    for (std::size_t b = 0; b < 9; ++b) a.set_bit(b, true);
    CHECK_THROWS_AS(exact_objective(inst, a), OracleLimitError);
}

TEST_CASE("interview sampler empirical mean approaches the group formula") {
    Instance inst;
    inst.model = ModelKind::Interview;
    inst.num_professions = 1;
    inst.migrants = {{0, 0}, {1, 0}, {2, 0}};
    inst.localities = {{0, 3, {2}}};
    inst.probs = {3, 1, {0.9, 0.2, 0.6}};
    inst.validate();
    Assignment a(3, 1);
    for (std::size_t b = 0; b < 3; ++b) a.set_bit(b, true);
    double exact = group_employment({0.9, 0.2, 0.6}, 2);
    Rng rng(77);
    double total = 0.0;
    const int samples = 100000;
    for (int s = 0; s < samples; ++s) total += interview_sample(inst, a, rng);
    CHECK(total / samples == doctest::Approx(exact).epsilon(0.02));
}
