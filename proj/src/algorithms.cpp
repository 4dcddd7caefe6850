#include "mr/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mr/errors.hpp"

namespace mr {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Additive: return "additive";
        case Algorithm::Greedy: return "greedy";
        case Algorithm::GSEMO: return "gsemo";
        case Algorithm::GSEMO_S: return "gsemo-s";
        case Algorithm::GSEMO_R: return "gsemo-r";
        case Algorithm::GSEMO_SR: return "gsemo-sr";
        case Algorithm::NSGA2_100: return "nsga2-100";
        case Algorithm::NSGA2_2r: return "nsga2-2r";
        case Algorithm::MOEAD: return "moead";
    }
    return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "additive") return Algorithm::Additive;
    if (s == "greedy") return Algorithm::Greedy;
    if (s == "gsemo") return Algorithm::GSEMO;
    if (s == "gsemo-s") return Algorithm::GSEMO_S;
    if (s == "gsemo-r") return Algorithm::GSEMO_R;
    if (s == "gsemo-sr") return Algorithm::GSEMO_SR;
    if (s == "nsga2-100") return Algorithm::NSGA2_100;
    if (s == "nsga2-2r") return Algorithm::NSGA2_2r;
    if (s == "moead") return Algorithm::MOEAD;
    throw ValidationError("unknown algorithm: '" + s + "'");
}

void SolverConfig::validate() const {
    if (budget < 1) throw ValidationError("budget must be >= 1");
    if (!(p_m > 0.0 && p_m <= 1.0)) throw ValidationError("p_m must be in (0,1]");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
        throw ValidationError("crossover_prob must be in [0,1]");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
        throw ValidationError("mutation_prob must be in [0,1]");
    if (population_size < 0) throw ValidationError("population_size must be >= 0");
    if (neighborhood_size < 1) throw ValidationError("neighborhood_size must be >= 1");
}

namespace {

bool better_tie(const Assignment& cand, const Assignment& incumbent) {
    std::size_t cs = cand.popcount(), is = incumbent.popcount();
    if (cs != is) return cs < is;
    return cand < incumbent;
}

// Best feasible solution seen so far, plus the anytime trace.
class BestTracker {
public:
    BestTracker(const Instance& inst) : best_(Assignment::for_instance(inst)) {
        trace_.emplace_back(0, 0.0);
    }

    void offer(const Assignment& a, double f1, std::uint64_t evals) {
        if (f1 > best_f1_ || (f1 == best_f1_ && better_tie(a, best_))) {
            if (f1 > best_f1_) trace_.emplace_back(evals, f1);
            best_ = a;
            best_f1_ = f1;
        }
    }

    SolverResult finish(std::uint64_t evals) && {
        return {std::move(best_), best_f1_, evals, std::move(trace_)};
    }

private:
    Assignment best_;
    double best_f1_ = 0.0;
    std::vector<std::pair<std::uint64_t, double>> trace_;
};

// Successive-shortest-path min-cost max-flow; augments only while the
// shortest path has negative cost, which solves max-weight b-matching.
class MinCostFlow {
public:
    explicit MinCostFlow(int nodes) : head_(nodes, -1) {}

    void add_edge(int from, int to, int capacity, double cost) {
        edges_.push_back({to, head_[from], capacity, cost});
        head_[from] = static_cast<int>(edges_.size()) - 1;
        edges_.push_back({from, head_[to], 0, -cost});
        head_[to] = static_cast<int>(edges_.size()) - 1;
    }

    // Sends flow along negative-cost shortest paths until none remains.
    void run(int source, int sink) {
        const int n = static_cast<int>(head_.size());
        for (;;) {
            std::vector<double> dist(n, std::numeric_limits<double>::infinity());
            std::vector<int> prev_edge(n, -1);
            dist[source] = 0.0;
            // Bellman-Ford; graphs here are tiny bipartite networks.
            for (int round = 0; round < n; ++round) {
                bool changed = false;
                for (int u = 0; u < n; ++u) {
                    if (!std::isfinite(dist[u])) continue;
                    for (int e = head_[u]; e != -1; e = edges_[e].next) {
                        if (edges_[e].capacity <= 0) continue;
                        double nd = dist[u] + edges_[e].cost;
                        if (nd < dist[edges_[e].to] - 1e-15) {
                            dist[edges_[e].to] = nd;
                            prev_edge[edges_[e].to] = e;
                            changed = true;
                        }
                    }
                }
                if (!changed) break;
            }
            if (prev_edge[sink] == -1 || dist[sink] >= -1e-12) break;
            for (int v = sink; v != source;) {
                int e = prev_edge[v];
                edges_[e].capacity -= 1;
                edges_[e ^ 1].capacity += 1;
                v = edges_[e ^ 1].to;
            }
        }
    }

    bool unit_flow_on(int edge_index) const { return edges_[edge_index ^ 1].capacity > 0; }

private:
    struct Edge {
        int to;
        int next;
        int capacity;
        double cost;
    };
    std::vector<int> head_;
    std::vector<Edge> edges_;
};

// Feasibility bookkeeping for incremental pair additions.
struct FeasibilityState {
    std::vector<bool> row_used;
    std::vector<int> col_count;
    const Instance* inst;

    explicit FeasibilityState(const Instance& instance)
        : row_used(instance.num_migrants(), false),
          col_count(instance.num_localities(), 0),
          inst(&instance) {}

    bool can_add(std::size_t v, std::size_t l) const {
        return !row_used[v] && col_count[l] < inst->localities[l].capacity;
    }
    void add(std::size_t v, std::size_t l) {
        row_used[v] = true;
        ++col_count[l];
    }
};

// Feasible-by-construction random solution: migrants in random order, each
// assigned with probability 1/2 to a random locality with spare capacity.
Assignment random_feasible(const Instance& inst, Rng& rng) {
    Assignment a = Assignment::for_instance(inst);
    FeasibilityState state(inst);
    std::vector<int> order(inst.num_migrants());
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    std::vector<int> open;
    for (int v : order) {
        if (!rng.bernoulli(0.5)) continue;
        open.clear();
        for (std::size_t l = 0; l < inst.num_localities(); ++l)
            if (state.col_count[l] < inst.localities[l].capacity)
                open.push_back(static_cast<int>(l));
        if (open.empty()) break;
        int l = open[rng.next_index(open.size())];
        a.set_cell(v, l, true);
        state.add(v, l);
    }
    return a;
}

}  // namespace

const ScoredAssignment& select_best_feasible(const std::vector<ScoredAssignment>& candidates) {
    const ScoredAssignment* best = nullptr;
    for (const auto& c : candidates) {
        if (c.objectives.f1 < 0.0) continue;
        if (best == nullptr || c.objectives.f1 > best->objectives.f1 ||
            (c.objectives.f1 == best->objectives.f1 &&
             better_tie(c.assignment, best->assignment)))
            best = &c;
    }
    if (best == nullptr) throw std::invalid_argument("no feasible candidate");
    return *best;
}

SolverResult additive(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t num_v = inst.num_migrants();
    const std::size_t num_l = inst.num_localities();
    const std::size_t n = num_v * num_l;
    if (cfg.budget < n)
        throw BudgetError("additive needs |V|*|L| = " + std::to_string(n) +
                          " evaluations, budget is " + std::to_string(cfg.budget));

    BestTracker tracker(inst);
    std::uint64_t evals = 0;

    // Singleton weights w(v,l) = f-hat({(v,l)}).
    std::vector<double> weight(n, 0.0);
    Assignment singleton = Assignment::for_instance(inst);
    for (std::size_t v = 0; v < num_v; ++v) {
        for (std::size_t l = 0; l < num_l; ++l) {
            if (inst.localities[l].capacity < 1) continue;
            singleton.set_cell(v, l, true);
            weight[v * num_l + l] = evaluator.estimate(inst, singleton);
            ++evals;
            singleton.set_cell(v, l, false);
        }
    }

    // Max-weight assignment with migrant degree <= 1 and locality capacity
    // cap_l, as a min-cost flow with negated weights.
    const int source = static_cast<int>(num_v + num_l);
    const int sink = source + 1;
    MinCostFlow flow(sink + 1);
    std::vector<int> pair_edge(n, -1);
    int edge_counter = 0;
    for (std::size_t v = 0; v < num_v; ++v) {
        flow.add_edge(source, static_cast<int>(v), 1, 0.0);
        edge_counter += 2;
    }
    for (std::size_t v = 0; v < num_v; ++v) {
        for (std::size_t l = 0; l < num_l; ++l) {
            double w = weight[v * num_l + l];
            if (w <= 0.0 || inst.localities[l].capacity < 1) continue;
            pair_edge[v * num_l + l] = edge_counter;
            flow.add_edge(static_cast<int>(v), static_cast<int>(num_v + l), 1, -w);
            edge_counter += 2;
        }
    }
    for (std::size_t l = 0; l < num_l; ++l) {
        flow.add_edge(static_cast<int>(num_v + l), sink, inst.localities[l].capacity, 0.0);
        edge_counter += 2;
    }
    flow.run(source, sink);

    Assignment result = Assignment::for_instance(inst);
    double weight_sum = 0.0;
    for (std::size_t v = 0; v < num_v; ++v) {
        for (std::size_t l = 0; l < num_l; ++l) {
            int e = pair_edge[v * num_l + l];
            if (e != -1 && flow.unit_flow_on(e)) {
                result.set_cell(v, l, true);
                weight_sum += weight[v * num_l + l];
            }
        }
    }

    double final_value = weight_sum;
    if (evals < cfg.budget) {
        final_value = evaluator.estimate(inst, result);
        ++evals;
    }
    tracker.offer(result, final_value, evals);
    return std::move(tracker).finish(evals);
}

SolverResult greedy(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg) {
    cfg.validate();
    const std::size_t num_l = inst.num_localities();
    BestTracker tracker(inst);
    Assignment current = Assignment::for_instance(inst);
    FeasibilityState state(inst);
    double current_value = 0.0;
    std::uint64_t evals = 0;
    bool out_of_budget = false;

    for (;;) {
        double best_value = 0.0;
        double best_gain = 0.0;
        std::size_t best_pair = static_cast<std::size_t>(-1);
        for (std::size_t v = 0; v < inst.num_migrants() && !out_of_budget; ++v) {
            if (state.row_used[v]) continue;
            for (std::size_t l = 0; l < num_l; ++l) {
                if (!state.can_add(v, l)) continue;
                if (evals >= cfg.budget) {
                    out_of_budget = true;
                    break;
                }
                current.set_cell(v, l, true);
                double value = evaluator.estimate(inst, current);
                ++evals;
                current.set_cell(v, l, false);
                double gain = value - current_value;
                if (gain > best_gain) {  // strict: ties keep the lowest pair index
                    best_gain = gain;
                    best_value = value;
                    best_pair = v * num_l + l;
                }
            }
        }
        if (out_of_budget || best_pair == static_cast<std::size_t>(-1) || best_gain <= 0.0)
            break;
        std::size_t v = best_pair / num_l, l = best_pair % num_l;
        current.set_cell(v, l, true);
        state.add(v, l);
        current_value = best_value;
        tracker.offer(current, current_value, evals);
    }
    return std::move(tracker).finish(evals);
}

namespace {

struct ArchiveMember {
    Assignment assignment;
    ObjectivePair objectives;
};

SolverResult gsemo_variant(const Instance& inst, Evaluator& evaluator,
                           const SolverConfig& cfg, bool use_swap, bool use_repair) {
    cfg.validate();
    Rng rng(mix_seed(cfg.seed, 0x6773656d6fULL));
    BestTracker tracker(inst);

    std::vector<ArchiveMember> archive;
    Assignment zero = Assignment::for_instance(inst);
    archive.push_back({zero, {0.0, static_cast<long long>(zero.size())}});

    std::uint64_t evals = 0;
    for (std::uint64_t iter = 0; iter < cfg.budget && evals < cfg.budget; ++iter) {
        const Assignment& parent = archive[rng.next_index(archive.size())].assignment;
        Assignment offspring;
        if (!use_swap || rng.next_double() <= cfg.p_m) {
            offspring = bitwise_mutation(parent, rng);
        } else {
            SwapMode mode = rng.bernoulli(0.5) ? SwapMode::Rows : SwapMode::Columns;
            offspring = matrix_swap_mutation(parent, rng, mode);
        }
        if (use_repair) offspring = repair(inst, offspring, rng);

        ObjectivePair objs = evaluator.bi_objective(inst, offspring);
        const bool feasible = objs.f1 >= 0.0;
        if (feasible) {
            ++evals;
            tracker.offer(offspring, objs.f1, evals);
        }
        bool strictly_dominated = false;
        for (const auto& m : archive) {
            if (dominates(m.objectives, objs)) {
                strictly_dominated = true;
                break;
            }
        }
        if (!strictly_dominated) {
            std::erase_if(archive, [&](const ArchiveMember& m) {
                return weakly_dominates(objs, m.objectives);
            });
            archive.push_back({std::move(offspring), objs});
        }
    }
    return std::move(tracker).finish(evals);
}

}  // namespace

SolverResult gsemo(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg) {
    return gsemo_variant(inst, evaluator, cfg, false, false);
}

SolverResult gsemo_sr(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg) {
    return gsemo_variant(inst, evaluator, cfg, true, true);
}

namespace {

struct RankedMember {
    Assignment assignment;
    ObjectivePair objectives;
    int rank = 0;
    double crowding = 0.0;
};

void non_dominated_sort(std::vector<RankedMember>& pop) {
    const std::size_t n = pop.size();
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<int>> dominated(n);
    std::vector<int> front;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dominates(pop[i].objectives, pop[j].objectives)) {
                dominated[i].push_back(static_cast<int>(j));
                ++domination_count[j];
            } else if (dominates(pop[j].objectives, pop[i].objectives)) {
                dominated[j].push_back(static_cast<int>(i));
                ++domination_count[i];
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (domination_count[i] == 0) {
            pop[i].rank = 0;
            front.push_back(static_cast<int>(i));
        }
    int rank = 0;
    while (!front.empty()) {
        std::vector<int> next;
        for (int i : front) {
            for (int j : dominated[i]) {
                if (--domination_count[j] == 0) {
                    pop[j].rank = rank + 1;
                    next.push_back(j);
                }
            }
        }
        ++rank;
        front = std::move(next);
    }
}

void crowding_distance(std::vector<RankedMember>& pop) {
    const double inf = std::numeric_limits<double>::infinity();
    for (auto& m : pop) m.crowding = 0.0;
    int max_rank = 0;
    for (const auto& m : pop) max_rank = std::max(max_rank, m.rank);
    std::vector<int> idx;
    for (int r = 0; r <= max_rank; ++r) {
        idx.clear();
        for (std::size_t i = 0; i < pop.size(); ++i)
            if (pop[i].rank == r) idx.push_back(static_cast<int>(i));
        if (idx.empty()) continue;
        for (int objective = 0; objective < 2; ++objective) {
            auto value = [&](int i) {
                return objective == 0 ? pop[i].objectives.f1
                                      : static_cast<double>(pop[i].objectives.f2);
            };
            std::sort(idx.begin(), idx.end(), [&](int a, int b) {
                if (value(a) != value(b)) return value(a) < value(b);
                return a < b;
            });
            double lo = value(idx.front()), hi = value(idx.back());
            pop[idx.front()].crowding = inf;
            pop[idx.back()].crowding = inf;
            if (hi <= lo) continue;
            for (std::size_t k = 1; k + 1 < idx.size(); ++k)
                if (pop[idx[k]].crowding != inf)
                    pop[idx[k]].crowding += (value(idx[k + 1]) - value(idx[k - 1])) / (hi - lo);
        }
    }
}

// Rank first, then crowding, then lowest index.
std::size_t tournament(const std::vector<RankedMember>& pop, Rng& rng) {
    std::size_t a = rng.next_index(pop.size());
    std::size_t b = rng.next_index(pop.size());
    if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank ? a : b;
    if (pop[a].crowding != pop[b].crowding) return pop[a].crowding > pop[b].crowding ? a : b;
    return std::min(a, b);
}

int default_population(const Instance& inst, const SolverConfig& cfg) {
    if (cfg.population_size > 0) return cfg.population_size;
    if (cfg.algorithm == Algorithm::NSGA2_2r) {
        long long cap_sum = 0;
        for (const auto& l : inst.localities) cap_sum += l.capacity;
        return static_cast<int>(2 * (cap_sum + 1));
    }
    return 100;
}

}  // namespace

SolverResult nsga2(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg) {
    cfg.validate();
    const int pop_size = std::max(2, default_population(inst, cfg));
    Rng rng(mix_seed(cfg.seed, 0x6e73676132ULL));
    BestTracker tracker(inst);
    std::uint64_t evals = 0;

    std::vector<RankedMember> pop;
    Assignment zero = Assignment::for_instance(inst);
    pop.push_back({zero, {0.0, static_cast<long long>(zero.size())}, 0, 0.0});
    while (static_cast<int>(pop.size()) < pop_size && evals < cfg.budget) {
        Assignment a = random_feasible(inst, rng);
        double f1 = evaluator.estimate(inst, a);
        ++evals;
        tracker.offer(a, f1, evals);
        long long zeros = static_cast<long long>(a.zeros());
        pop.push_back({std::move(a), {f1, zeros}, 0, 0.0});
    }

    // Discarded infeasible offspring consume no evaluation; this cap keeps
    // runs finite when feasible offspring become vanishingly rare.
    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap =
        cfg.budget * 50 + 1000ULL * static_cast<std::uint64_t>(pop_size);

    while (evals < cfg.budget && attempts < attempt_cap) {
        non_dominated_sort(pop);
        crowding_distance(pop);
        std::vector<RankedMember> offspring;
        while (static_cast<int>(offspring.size()) < pop_size && evals < cfg.budget &&
               attempts < attempt_cap) {
            const Assignment& p1 = pop[tournament(pop, rng)].assignment;
            const Assignment& p2 = pop[tournament(pop, rng)].assignment;
            Assignment c1 = p1, c2 = p2;
            if (rng.next_double() < cfg.crossover_prob)
                std::tie(c1, c2) = one_point_crossover(p1, p2, rng);
            for (Assignment* c : {&c1, &c2}) {
                if (rng.next_double() < cfg.mutation_prob) *c = bitwise_mutation(*c, rng);
                ++attempts;
                if (static_cast<int>(offspring.size()) >= pop_size || evals >= cfg.budget)
                    continue;
                if (!is_feasible(inst, *c)) continue;  // discarded before evaluation
                double f1 = evaluator.estimate(inst, *c);
                ++evals;
                tracker.offer(*c, f1, evals);
                offspring.push_back({*c, {f1, static_cast<long long>(c->zeros())}, 0, 0.0});
            }
        }
        if (offspring.empty()) continue;
        for (auto& o : offspring) pop.push_back(std::move(o));
        non_dominated_sort(pop);
        crowding_distance(pop);
        std::vector<std::size_t> order(pop.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (pop[a].rank != pop[b].rank) return pop[a].rank < pop[b].rank;
            return pop[a].crowding > pop[b].crowding;
        });
        std::vector<RankedMember> next;
        next.reserve(pop_size);
        for (std::size_t k = 0; k < order.size() && static_cast<int>(next.size()) < pop_size;
             ++k)
            next.push_back(std::move(pop[order[k]]));
        pop = std::move(next);
    }
    return std::move(tracker).finish(evals);
}

SolverResult moead(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg) {
    cfg.validate();
    const int pop_size = std::max(2, default_population(inst, cfg));
    const int neighborhood = std::min(cfg.neighborhood_size, pop_size);
    Rng rng(mix_seed(cfg.seed, 0x6d6f656164ULL));
    BestTracker tracker(inst);
    std::uint64_t evals = 0;

    // Uniformly spaced weight vectors on the 2-simplex.
    std::vector<std::pair<double, double>> weights(pop_size);
    for (int i = 0; i < pop_size; ++i) {
        double w = static_cast<double>(i) / static_cast<double>(pop_size - 1);
        weights[i] = {w, 1.0 - w};
    }
    std::vector<std::vector<int>> neighbors(pop_size);
    for (int i = 0; i < pop_size; ++i) {
        std::vector<int> order(pop_size);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            double da = std::abs(weights[a].first - weights[i].first);
            double db = std::abs(weights[b].first - weights[i].first);
            return da < db;
        });
        neighbors[i].assign(order.begin(), order.begin() + neighborhood);
    }

    std::vector<ScoredAssignment> pop;
    Assignment zero = Assignment::for_instance(inst);
    pop.push_back({zero, {0.0, static_cast<long long>(zero.size())}});
    while (static_cast<int>(pop.size()) < pop_size && evals < cfg.budget) {
        Assignment a = random_feasible(inst, rng);
        double f1 = evaluator.estimate(inst, a);
        ++evals;
        tracker.offer(a, f1, evals);
        long long zeros = static_cast<long long>(a.zeros());
        pop.push_back({std::move(a), {f1, zeros}});
    }
    while (static_cast<int>(pop.size()) < pop_size)
        pop.push_back(pop.back());  // budget ran out during init

    ObjectivePair ideal = pop.front().objectives;
    for (const auto& m : pop) {
        ideal.f1 = std::max(ideal.f1, m.objectives.f1);
        ideal.f2 = std::max(ideal.f2, m.objectives.f2);
    }

    auto scalarized = [&](const ObjectivePair& o, const std::pair<double, double>& w,
                          const ObjectivePair& nadir) {
        auto norm = [](double f, double lo, double hi) {
            return hi > lo ? (f - lo) / (hi - lo) : f - lo;
        };
        double g1 = w.first * (1.0 - norm(o.f1, nadir.f1, ideal.f1));
        double g2 = w.second * (1.0 - norm(static_cast<double>(o.f2),
                                           static_cast<double>(nadir.f2),
                                           static_cast<double>(ideal.f2)));
        return std::max(g1, g2);
    };

    std::uint64_t attempts = 0;
    const std::uint64_t attempt_cap =
        cfg.budget * 50 + 1000ULL * static_cast<std::uint64_t>(pop_size);
    while (evals < cfg.budget && attempts < attempt_cap) {
        // Running nadir: worst objective values in the current population.
        ObjectivePair nadir = pop.front().objectives;
        for (const auto& m : pop) {
            nadir.f1 = std::min(nadir.f1, m.objectives.f1);
            nadir.f2 = std::min(nadir.f2, m.objectives.f2);
        }
        for (int i = 0; i < pop_size && evals < cfg.budget && attempts < attempt_cap; ++i) {
            ++attempts;
            const auto& nb = neighbors[i];
            const Assignment& p1 = pop[nb[rng.next_index(nb.size())]].assignment;
            const Assignment& p2 = pop[nb[rng.next_index(nb.size())]].assignment;
            Assignment child = p1;
            if (rng.next_double() < cfg.crossover_prob)
                child = one_point_crossover(p1, p2, rng).first;
            if (rng.next_double() < cfg.mutation_prob) child = bitwise_mutation(child, rng);
            if (!is_feasible(inst, child)) continue;  // discarded before evaluation
            double f1 = evaluator.estimate(inst, child);
            ++evals;
            tracker.offer(child, f1, evals);
            ObjectivePair objs{f1, static_cast<long long>(child.zeros())};
            ideal.f1 = std::max(ideal.f1, objs.f1);
            ideal.f2 = std::max(ideal.f2, objs.f2);
            for (int j : nb)
                if (scalarized(objs, weights[j], nadir) <
                    scalarized(pop[j].objectives, weights[j], nadir))
                    pop[j] = {child, objs};
        }
    }
    return std::move(tracker).finish(evals);
}

SolverResult run_solver(const Instance& inst, Evaluator& evaluator, const SolverConfig& cfg) {
    switch (cfg.algorithm) {
        case Algorithm::Additive: return additive(inst, evaluator, cfg);
        case Algorithm::Greedy: return greedy(inst, evaluator, cfg);
        case Algorithm::GSEMO: return gsemo_variant(inst, evaluator, cfg, false, false);
        case Algorithm::GSEMO_S: return gsemo_variant(inst, evaluator, cfg, true, false);
        case Algorithm::GSEMO_R: return gsemo_variant(inst, evaluator, cfg, false, true);
        case Algorithm::GSEMO_SR: return gsemo_variant(inst, evaluator, cfg, true, true);
        case Algorithm::NSGA2_100:
        case Algorithm::NSGA2_2r: return nsga2(inst, evaluator, cfg);
        case Algorithm::MOEAD: return moead(inst, evaluator, cfg);
    }
    throw std::logic_error("unhandled algorithm");
}

}  // namespace mr
