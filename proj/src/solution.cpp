#include "mr/solution.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mr {

std::size_t Assignment::popcount() const {
    std::size_t c = 0;
    for (std::uint8_t b : bits_) c += b;
    return c;
}

void Assignment::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c)
        std::swap(bits_[i * cols_ + c], bits_[j * cols_ + c]);
}

void Assignment::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r)
        std::swap(bits_[r * cols_ + i], bits_[r * cols_ + j]);
}

std::vector<std::pair<int, int>> Assignment::selected_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (cell(i, j)) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return out;
}

std::string Assignment::to_pair_string() const {
    std::ostringstream ss;
    bool first = true;
    for (auto [v, l] : selected_pairs()) {
        if (!first) ss << ' ';
        ss << '(' << v << ',' << l << ')';
        first = false;
    }
    return ss.str();
}

DominanceRelation compare(const ObjectivePair& p, const ObjectivePair& q) {
    bool pq = weakly_dominates(p, q);
    bool qp = weakly_dominates(q, p);
    if (pq && qp) return DominanceRelation::Equal;
    if (pq) return p.f1 > q.f1 || p.f2 > q.f2 ? DominanceRelation::FirstDominates
                                              : DominanceRelation::FirstWeaklyDominates;
    if (qp) return q.f1 > p.f1 || q.f2 > p.f2 ? DominanceRelation::SecondDominates
                                              : DominanceRelation::SecondWeaklyDominates;
    return DominanceRelation::Incomparable;
}

bool is_feasible(const Instance& inst, const Assignment& a) {
    if (a.rows() != inst.num_migrants() || a.cols() != inst.num_localities())
        throw std::invalid_argument("assignment size does not match instance");
    std::vector<int> col_sum(a.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        int row_sum = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.cell(i, j)) {
                if (++row_sum > 1) return false;
                ++col_sum[j];
            }
        }
    }
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (col_sum[j] > inst.localities[j].capacity) return false;
    return true;
}

Assignment bitwise_mutation(const Assignment& a, Rng& rng) {
    Assignment off = a;
    const double p = 1.0 / static_cast<double>(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (rng.bernoulli(p)) off.flip_bit(i);
    return off;
}

std::pair<Assignment, Assignment> one_point_crossover_at(const Assignment& a,
                                                         const Assignment& b,
                                                         std::size_t cut) {
    if (a.size() != b.size() || a.cols() != b.cols())
        throw std::invalid_argument("crossover parents must have equal shape");
    Assignment ca = a, cb = b;
    for (std::size_t i = cut; i < a.size(); ++i) {
        ca.set_bit(i, b.bit(i));
        cb.set_bit(i, a.bit(i));
    }
    return {std::move(ca), std::move(cb)};
}

std::pair<Assignment, Assignment> one_point_crossover(const Assignment& a,
                                                      const Assignment& b, Rng& rng) {
    std::size_t cut = 1 + rng.next_index(a.size());
    return one_point_crossover_at(a, b, cut);
}

Assignment matrix_swap_mutation(const Assignment& a, Rng& rng, SwapMode mode) {
    Assignment off = a;
    if (mode == SwapMode::Rows) {
        std::size_t i = rng.next_index(a.rows());
        std::size_t j = rng.next_index(a.rows());
        off.swap_rows(i, j);
    } else {
        std::size_t i = rng.next_index(a.cols());
        std::size_t j = rng.next_index(a.cols());
        off.swap_cols(i, j);
    }
    return off;
}

namespace {

// Uniformly clear `excess` of the given 1-bit positions via partial shuffle.
void clear_excess(Assignment& a, std::vector<std::size_t>& ones, std::size_t excess,
                  Rng& rng) {
    for (std::size_t k = 0; k < excess; ++k) {
        std::size_t pick = k + rng.next_index(ones.size() - k);
        std::swap(ones[k], ones[pick]);
        a.set_bit(ones[k], false);
    }
}

}  // namespace

Assignment repair(const Instance& inst, const Assignment& a, Rng& rng) {
    Assignment out = a;
    std::vector<std::size_t> ones;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        ones.clear();
        for (std::size_t j = 0; j < out.cols(); ++j)
            if (out.cell(i, j)) ones.push_back(i * out.cols() + j);
        if (ones.size() > 1) clear_excess(out, ones, ones.size() - 1, rng);
    }
    for (std::size_t j = 0; j < out.cols(); ++j) {
        ones.clear();
        for (std::size_t i = 0; i < out.rows(); ++i)
            if (out.cell(i, j)) ones.push_back(i * out.cols() + j);
        std::size_t cap = static_cast<std::size_t>(inst.localities[j].capacity);
        if (ones.size() > cap) clear_excess(out, ones, ones.size() - cap, rng);
    }
    return out;
}

}  // namespace mr
