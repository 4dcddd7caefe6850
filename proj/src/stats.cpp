#include "mr/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>

namespace mr {

double mean(const std::vector<double>& v) {
    if (v.empty()) return 0.0;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_stddev(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<double> rank_values(const std::vector<double>& values, bool descending) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return descending ? values[a] > values[b] : values[a] < values[b];
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

namespace {

constexpr std::size_t kExactLimit = 12;

// Doubled ranks so tied (half-integer) average ranks stay integral.
struct RankedDiffs {
    std::vector<long long> ranks2;  // 2 * rank of |d_i|
    std::vector<bool> positive;
    long long w_plus2 = 0;          // 2 * W+
};

RankedDiffs rank_differences(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("wilcoxon requires equally sized samples");
    std::vector<double> abs_d;
    std::vector<bool> pos;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        if (d == 0.0) continue;
        abs_d.push_back(std::abs(d));
        pos.push_back(d > 0.0);
    }
    std::vector<double> r = rank_values(abs_d, /*descending=*/false);
    RankedDiffs out;
    out.positive = std::move(pos);
    out.ranks2.resize(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        out.ranks2[i] = static_cast<long long>(std::llround(2.0 * r[i]));
        if (out.positive[i]) out.w_plus2 += out.ranks2[i];
    }
    return out;
}

double exact_p(const RankedDiffs& d) {
    const std::size_t n = d.ranks2.size();
    const std::size_t total = std::size_t{1} << n;
    std::size_t le = 0, ge = 0;
    for (std::size_t mask = 0; mask < total; ++mask) {
        long long w = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i)) w += d.ranks2[i];
        if (w <= d.w_plus2) ++le;
        if (w >= d.w_plus2) ++ge;
    }
    double p = 2.0 * static_cast<double>(std::min(le, ge)) / static_cast<double>(total);
    return std::min(p, 1.0);
}

double normal_p(const RankedDiffs& d) {
    const double n = static_cast<double>(d.ranks2.size());
    const double w_plus = static_cast<double>(d.w_plus2) / 2.0;
    const double mu = n * (n + 1.0) / 4.0;
    double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
    // Tie correction: subtract sum(t^3 - t)/48 over groups of tied ranks.
    std::vector<long long> sorted = d.ranks2;
    std::sort(sorted.begin(), sorted.end());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        double t = static_cast<double>(j - i + 1);
        var -= (t * t * t - t) / 48.0;
        i = j + 1;
    }
    if (var <= 0.0) return 1.0;
    double z = (std::abs(w_plus - mu) - 0.5) / std::sqrt(var);  // continuity correction
    if (z < 0.0) z = 0.0;
    return std::erfc(z / std::sqrt(2.0));
}

}  // namespace

double wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b,
                            WilcoxonMode mode) {
    RankedDiffs d = rank_differences(a, b);
    if (d.ranks2.empty()) return 1.0;
    bool exact = mode == WilcoxonMode::Exact ||
                 (mode == WilcoxonMode::Auto && d.ranks2.size() <= kExactLimit);
    return exact ? exact_p(d) : normal_p(d);
}

}  // namespace mr
