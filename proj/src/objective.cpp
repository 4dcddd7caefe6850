#include "mr/objective.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "mr/errors.hpp"

namespace mr {

int max_bipartite_matching(const BipartiteGraph& g) {
    if (g.left == 0 || g.right == 0 || g.edges.empty()) return 0;
    std::vector<std::vector<int>> adj(g.left);
    for (auto [u, v] : g.edges) {
        if (u < 0 || u >= g.left || v < 0 || v >= g.right)
            throw std::invalid_argument("bipartite edge endpoint out of range");
        adj[u].push_back(v);
    }
    const int kInf = std::numeric_limits<int>::max();
    std::vector<int> match_l(g.left, -1), match_r(g.right, -1), dist(g.left);
    int result = 0;
    for (;;) {
        // BFS layering from free left vertices.
        std::queue<int> q;
        for (int u = 0; u < g.left; ++u) {
            if (match_l[u] == -1) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = kInf;
            }
        }
        bool found_augmenting = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                int w = match_r[v];
                if (w == -1) {
                    found_augmenting = true;
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        if (!found_augmenting) break;
        // Layered DFS augmentation.
        auto dfs = [&](auto&& self, int u) -> bool {
            for (int v : adj[u]) {
                int w = match_r[v];
                if (w == -1 || (dist[w] == dist[u] + 1 && self(self, w))) {
                    match_l[u] = v;
                    match_r[v] = u;
                    return true;
                }
            }
            dist[u] = kInf;
            return false;
        };
        for (int u = 0; u < g.left; ++u)
            if (match_l[u] == -1 && dfs(dfs, u)) ++result;
    }
    return result;
}

namespace detail {

// Per-instance tables and scratch buffers shared by the simulation hot loops.
struct EvalContext {
    const Instance* inst = nullptr;
    int num_localities = 0;
    int num_professions = 0;
    std::vector<int> profession;        // per migrant
    std::vector<int> job_count;         // index l * |Pi| + pi
    std::vector<int> job_total;         // per locality
    std::vector<int> slot_offset;       // job slot base of (l, pi), within locality l
    // Interview: pow_table[v * |L| + l][j] = (1 - p_{v,l})^j, j = 0..job_{l,pi(v)}.
    std::vector<std::vector<double>> pow_table;

    std::vector<std::vector<int>> buckets;
    std::vector<int> touched;
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::uint64_t> adj_masks;
    std::vector<int> match_r;

    void build(const Instance& instance) {
        inst = &instance;
        num_localities = static_cast<int>(instance.num_localities());
        num_professions = instance.num_professions;
        const int num_migrants = static_cast<int>(instance.num_migrants());

        profession.resize(num_migrants);
        for (int v = 0; v < num_migrants; ++v) profession[v] = instance.migrants[v].profession;

        job_count.assign(num_localities * num_professions, 0);
        job_total.assign(num_localities, 0);
        slot_offset.assign(num_localities * num_professions, 0);
        for (int l = 0; l < num_localities; ++l) {
            int off = 0;
            for (int pi = 0; pi < num_professions; ++pi) {
                int c = instance.localities[l].jobs_by_profession[pi];
                job_count[l * num_professions + pi] = c;
                slot_offset[l * num_professions + pi] = off;
                off += c;
            }
            job_total[l] = off;
        }

        if (instance.model == ModelKind::Interview) {
            pow_table.assign(static_cast<std::size_t>(num_migrants) * num_localities, {});
            for (int v = 0; v < num_migrants; ++v) {
                for (int l = 0; l < num_localities; ++l) {
                    int jobs = job_count[l * num_professions + profession[v]];
                    auto& t = pow_table[static_cast<std::size_t>(v) * num_localities + l];
                    t.resize(jobs + 1);
                    const double q = 1.0 - instance.probs.at(v, l);
                    t[0] = 1.0;
                    for (int j = 1; j <= jobs; ++j) t[j] = t[j - 1] * q;
                }
            }
            buckets.assign(static_cast<std::size_t>(num_localities) * num_professions, {});
        } else {
            buckets.assign(num_localities, {});
        }
        touched.clear();
    }

    void collect_pairs(const Assignment& a) {
        pairs.clear();
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a.cell(i, j)) pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }

    int interview_sample(Rng& rng) {
        for (auto [v, l] : pairs) {
            int b = l * num_professions + profession[v];
            if (buckets[b].empty()) touched.push_back(b);
            buckets[b].push_back(v);
        }
        int employed = 0;
        for (int b : touched) {
            auto& group = buckets[b];
            rng.shuffle(group);
            int l = b / num_professions;
            int jobs = job_count[b];
            for (int v : group) {
                if (jobs == 0) break;
                double success =
                    1.0 - pow_table[static_cast<std::size_t>(v) * num_localities + l][jobs];
                if (rng.bernoulli(success)) {
                    ++employed;
                    --jobs;
                }
            }
            group.clear();
        }
        touched.clear();
        return employed;
    }

    // Augmenting path over bitmask adjacency; right side has <= 64 job slots.
    bool augment(int u, std::uint64_t& visited) {
        std::uint64_t avail = adj_masks[u] & ~visited;
        while (avail) {
            int slot = std::countr_zero(avail);
            std::uint64_t bit = std::uint64_t{1} << slot;
            avail &= ~bit;
            visited |= bit;
            if (match_r[slot] == -1 || augment(match_r[slot], visited)) {
                match_r[slot] = u;
                return true;
            }
        }
        return false;
    }

    int matching_from_masks(int num_left, int num_slots) {
        match_r.assign(num_slots, -1);
        int size = 0;
        for (int u = 0; u < num_left; ++u) {
            std::uint64_t visited = 0;
            if (augment(u, visited)) ++size;
        }
        return size;
    }

    int coordination_sample(Rng& rng) {
        for (auto [v, l] : pairs) {
            if (buckets[l].empty()) touched.push_back(l);
            buckets[l].push_back(v);
        }
        int employed = 0;
        for (int l : touched) {
            auto& group = buckets[l];
            int slots = job_total[l];
            if (slots > 0) {
                if (slots > 64) {
                    employed += coordination_sample_large(l, group, rng);
                } else {
                    adj_masks.assign(group.size(), 0);
                    for (std::size_t ui = 0; ui < group.size(); ++ui) {
                        int v = group[ui];
                        for (int pi = 0; pi < num_professions; ++pi) {
                            int c = job_count[l * num_professions + pi];
                            if (c == 0) continue;
                            double p = inst->probs.at(v, pi);
                            if (p <= 0.0) continue;
                            int off = slot_offset[l * num_professions + pi];
                            for (int s = 0; s < c; ++s)
                                if (rng.bernoulli(p))
                                    adj_masks[ui] |= std::uint64_t{1} << (off + s);
                        }
                    }
                    employed += matching_from_masks(static_cast<int>(group.size()), slots);
                }
            }
            group.clear();
        }
        touched.clear();
        return employed;
    }

    int coordination_sample_large(int l, const std::vector<int>& group, Rng& rng) {
        BipartiteGraph g;
        g.left = static_cast<int>(group.size());
        g.right = job_total[l];
        for (std::size_t ui = 0; ui < group.size(); ++ui) {
            int v = group[ui];
            for (int pi = 0; pi < num_professions; ++pi) {
                int c = job_count[l * num_professions + pi];
                double p = inst->probs.at(v, pi);
                if (c == 0 || p <= 0.0) continue;
                int off = slot_offset[l * num_professions + pi];
                for (int s = 0; s < c; ++s)
                    if (rng.bernoulli(p)) g.edges.emplace_back(static_cast<int>(ui), off + s);
            }
        }
        return max_bipartite_matching(g);
    }

    double exact_interview() const;
    double exact_coordination() const;
};

namespace {

constexpr int kMaxInterviewGroup = 8;
constexpr int kMaxFreeEdges = 20;

// Exact expectation of employed migrants for one group under a fixed order:
// track the distribution over remaining jobs.
double fixed_order_expectation(const Instance& inst, const std::vector<int>& order,
                               int locality, int jobs) {
    std::vector<double> dist(jobs + 1, 0.0);
    std::vector<double> next(jobs + 1, 0.0);
    dist[jobs] = 1.0;
    double expected = 0.0;
    for (int v : order) {
        const double q = 1.0 - inst.probs.at(v, locality);
        std::fill(next.begin(), next.end(), 0.0);
        for (int j = 0; j <= jobs; ++j) {
            if (dist[j] == 0.0) continue;
            double success = 1.0 - std::pow(q, j);
            expected += dist[j] * success;
            if (j > 0) next[j - 1] += dist[j] * success;
            next[j] += dist[j] * (1.0 - success);
        }
        std::swap(dist, next);
    }
    return expected;
}

}  // namespace

double EvalContext::exact_interview() const {
    double total = 0.0;
    std::vector<std::vector<int>> groups(
        static_cast<std::size_t>(num_localities) * num_professions);
    for (auto [v, l] : pairs) groups[l * num_professions + profession[v]].push_back(v);
    for (int b = 0; b < static_cast<int>(groups.size()); ++b) {
        auto& group = groups[b];
        if (group.empty() || job_count[b] == 0) continue;
        if (static_cast<int>(group.size()) > kMaxInterviewGroup)
            throw OracleLimitError("oracle limit exceeded: interview group of size " +
                                   std::to_string(group.size()) + " > " +
                                   std::to_string(kMaxInterviewGroup));
        std::sort(group.begin(), group.end());
        int l = b / num_professions;
        double sum = 0.0;
        std::size_t count = 0;
        do {
            sum += fixed_order_expectation(*inst, group, l, job_count[b]);
            ++count;
        } while (std::next_permutation(group.begin(), group.end()));
        total += sum / static_cast<double>(count);
    }
    return total;
}

double EvalContext::exact_coordination() const {
    double total = 0.0;
    std::vector<std::vector<int>> groups(num_localities);
    for (auto [v, l] : pairs) groups[l].push_back(v);
    for (int l = 0; l < num_localities; ++l) {
        const auto& group = groups[l];
        int slots = job_total[l];
        if (group.empty() || slots == 0) continue;
        if (slots > 64) throw OracleLimitError("oracle limit exceeded: > 64 job slots");
        std::vector<std::uint64_t> forced(group.size(), 0);
        struct FreeEdge {
            int migrant_index;
            int slot;
            double p;
        };
        std::vector<FreeEdge> free_edges;
        for (std::size_t ui = 0; ui < group.size(); ++ui) {
            int v = group[ui];
            for (int pi = 0; pi < num_professions; ++pi) {
                int c = job_count[l * num_professions + pi];
                double p = inst->probs.at(v, pi);
                if (c == 0 || p <= 0.0) continue;
                int off = slot_offset[l * num_professions + pi];
                for (int s = 0; s < c; ++s) {
                    if (p >= 1.0)
                        forced[ui] |= std::uint64_t{1} << (off + s);
                    else
                        free_edges.push_back({static_cast<int>(ui), off + s, p});
                }
            }
        }
        if (static_cast<int>(free_edges.size()) > kMaxFreeEdges)
            throw OracleLimitError("oracle limit exceeded: " +
                                   std::to_string(free_edges.size()) + " free edges > " +
                                   std::to_string(kMaxFreeEdges));
        const std::size_t subsets = std::size_t{1} << free_edges.size();
        EvalContext scratch;  // only used for matching buffers
        double expectation = 0.0;
        std::vector<std::uint64_t> adj(group.size());
        for (std::size_t mask = 0; mask < subsets; ++mask) {
            double prob = 1.0;
            std::copy(forced.begin(), forced.end(), adj.begin());
            for (std::size_t e = 0; e < free_edges.size(); ++e) {
                if (mask & (std::size_t{1} << e)) {
                    prob *= free_edges[e].p;
                    adj[free_edges[e].migrant_index] |= std::uint64_t{1}
                                                        << free_edges[e].slot;
                } else {
                    prob *= 1.0 - free_edges[e].p;
                }
            }
            if (prob == 0.0) continue;
            scratch.adj_masks = adj;
            expectation +=
                prob * scratch.matching_from_masks(static_cast<int>(group.size()), slots);
        }
        total += expectation;
    }
    return total;
}

}  // namespace detail

namespace {

detail::EvalContext make_context(const Instance& inst, const Assignment& a,
                                 bool check_feasibility) {
    if (check_feasibility && !is_feasible(inst, a))
        throw std::invalid_argument("sampler requires a feasible assignment");
    detail::EvalContext ctx;
    ctx.build(inst);
    ctx.collect_pairs(a);
    return ctx;
}

}  // namespace

int interview_sample(const Instance& inst, const Assignment& a, Rng& rng) {
    if (inst.model != ModelKind::Interview)
        throw std::invalid_argument("interview_sample requires an interview-model instance");
    auto ctx = make_context(inst, a, true);
    return ctx.interview_sample(rng);
}

int coordination_sample(const Instance& inst, const Assignment& a, Rng& rng) {
    if (inst.model != ModelKind::Coordination)
        throw std::invalid_argument(
            "coordination_sample requires a coordination-model instance");
    auto ctx = make_context(inst, a, true);
    return ctx.coordination_sample(rng);
}

double exact_objective(const Instance& inst, const Assignment& a) {
    auto ctx = make_context(inst, a, true);
    return inst.model == ModelKind::Interview ? ctx.exact_interview()
                                              : ctx.exact_coordination();
}

Evaluator::Evaluator(Kind kind, int samples, std::uint64_t seed)
    : kind_(kind), samples_(samples), seed_(seed) {}

Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;
Evaluator::~Evaluator() = default;

Evaluator Evaluator::monte_carlo(int samples, std::uint64_t seed) {
    if (samples <= 0) throw std::invalid_argument("sample count must be positive");
    return Evaluator(Kind::MonteCarlo, samples, seed);
}

Evaluator Evaluator::exact() { return Evaluator(Kind::Exact, 0, 0); }

double Evaluator::estimate(const Instance& inst, const Assignment& a) {
    const std::uint64_t call = calls_++;
    if (!ctx_ || ctx_->inst != &inst) {
        ctx_ = std::make_unique<detail::EvalContext>();
        ctx_->build(inst);
    }
    ctx_->collect_pairs(a);
    if (kind_ == Kind::Exact)
        return inst.model == ModelKind::Interview ? ctx_->exact_interview()
                                                  : ctx_->exact_coordination();
    long long sum = 0;
    const bool interview = inst.model == ModelKind::Interview;
    for (int s = 0; s < samples_; ++s) {
        Rng rng(mix_seed(seed_, call, static_cast<std::uint64_t>(s)));
        sum += interview ? ctx_->interview_sample(rng) : ctx_->coordination_sample(rng);
    }
    return static_cast<double>(sum) / static_cast<double>(samples_);
}

ObjectivePair Evaluator::bi_objective(const Instance& inst, const Assignment& a) {
    const long long zeros = static_cast<long long>(a.zeros());
    if (!is_feasible(inst, a)) return {-1.0, zeros};
    return {estimate(inst, a), zeros};
}

}  // namespace mr
