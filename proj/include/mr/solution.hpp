#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mr/instance.hpp"
#include "mr/rng.hpp"

namespace mr {

// Subset of migrant-locality pairs as an n-bit vector, n = |V|*|L|.
// Bit (i*|L| + j) selects the pair (migrant i, locality j), so the matrix
// view has migrants as rows and localities as columns.
class Assignment {
public:
    Assignment() = default;
    Assignment(std::size_t num_migrants, std::size_t num_localities)
        : rows_(num_migrants), cols_(num_localities), bits_(num_migrants * num_localities, 0) {}

    static Assignment for_instance(const Instance& inst) {
        return Assignment(inst.num_migrants(), inst.num_localities());
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return bits_.size(); }

    bool bit(std::size_t idx) const { return bits_[idx] != 0; }
    void set_bit(std::size_t idx, bool v) { bits_[idx] = v ? 1 : 0; }
    void flip_bit(std::size_t idx) { bits_[idx] ^= 1; }

    bool cell(std::size_t migrant, std::size_t locality) const {
        return bits_[migrant * cols_ + locality] != 0;
    }
    void set_cell(std::size_t migrant, std::size_t locality, bool v) {
        bits_[migrant * cols_ + locality] = v ? 1 : 0;
    }

    std::size_t popcount() const;
    std::size_t zeros() const { return size() - popcount(); }

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);

    // Selected (migrant, locality) pairs in lexicographic order.
    std::vector<std::pair<int, int>> selected_pairs() const;
    // Textual form used in reports and golden tests, e.g. "(0,1) (2,0)".
    std::string to_pair_string() const;

    const std::vector<std::uint8_t>& raw() const { return bits_; }

    bool operator==(const Assignment&) const = default;
    // Lexicographic order on the bit string; used for deterministic ties.
    bool operator<(const Assignment& o) const { return bits_ < o.bits_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> bits_;
};

// Bi-objective value: f1 is the estimated expected employed count (-1 for
// infeasible solutions), f2 the number of 0-bits. Both are maximized.
struct ObjectivePair {
    double f1 = 0.0;
    long long f2 = 0;

    bool operator==(const ObjectivePair&) const = default;
};

enum class DominanceRelation {
    FirstDominates,
    SecondDominates,
    FirstWeaklyDominates,
    SecondWeaklyDominates,
    Equal,
    Incomparable,
};

DominanceRelation compare(const ObjectivePair& p, const ObjectivePair& q);

inline bool weakly_dominates(const ObjectivePair& p, const ObjectivePair& q) {
    return p.f1 >= q.f1 && p.f2 >= q.f2;
}
inline bool dominates(const ObjectivePair& p, const ObjectivePair& q) {
    return weakly_dominates(p, q) && (p.f1 > q.f1 || p.f2 > q.f2);
}

// True iff every row sum <= 1 and every column-j sum <= cap_{l_j}.
bool is_feasible(const Instance& inst, const Assignment& a);

// Each bit flips independently with probability 1/n.
Assignment bitwise_mutation(const Assignment& a, Rng& rng);

// Cut index i uniform on {1..n}; bits after position i are exchanged.
std::pair<Assignment, Assignment> one_point_crossover(const Assignment& a,
                                                      const Assignment& b, Rng& rng);
// Deterministic variant used by tests; cut in {1..n}.
std::pair<Assignment, Assignment> one_point_crossover_at(const Assignment& a,
                                                         const Assignment& b,
                                                         std::size_t cut);

enum class SwapMode { Rows, Columns };

// Two indices drawn uniformly with replacement (self-swap is a no-op) and the
// corresponding rows or columns exchanged.
Assignment matrix_swap_mutation(const Assignment& a, Rng& rng, SwapMode mode);

// Rows first (each row left with <= 1 one-bit), then columns against the
// locality capacities. Excess 1-bits to clear are chosen uniformly. Only
// 1 -> 0 flips occur; a feasible input comes back unchanged.
Assignment repair(const Instance& inst, const Assignment& a, Rng& rng);

}  // namespace mr
