#pragma once

#include <vector>

namespace mr {

enum class WilcoxonMode { Auto, Exact, Normal };

// Two-sided Wilcoxon signed-rank test on paired samples. Zero differences are
// dropped before ranking; if none remain the p-value is 1. Exact mode
// enumerates all 2^n sign assignments (Auto switches to the tie-corrected
// normal approximation above n = 12 effective pairs).
double wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b,
                            WilcoxonMode mode = WilcoxonMode::Auto);

double mean(const std::vector<double>& v);
// Sample standard deviation; 0 for fewer than two values.
double sample_stddev(const std::vector<double>& v);

// Ranks 1..k with ties averaged; rank 1 goes to the largest value when
// `descending`, to the smallest otherwise.
std::vector<double> rank_values(const std::vector<double>& values, bool descending);

}  // namespace mr
