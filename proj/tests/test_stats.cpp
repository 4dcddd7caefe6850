#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "mr/rng.hpp"
#include "mr/stats.hpp"

using namespace mr;

TEST_CASE("identical samples give p = 1") {
    std::vector<double> a = {1.0, 2.0, 3.0};
    CHECK(wilcoxon_signed_rank(a, a) == 1.0);
}

TEST_CASE("six all-positive differences: exact p = 2/64") {
    std::vector<double> a = {1, 2, 3, 4, 5, 6};
    std::vector<double> b = {0, 1.5, 2, 3.5, 4, 5.9};
    CHECK(wilcoxon_signed_rank(a, b) == doctest::Approx(0.03125).epsilon(1e-15));
    // Symmetric in direction.
    CHECK(wilcoxon_signed_rank(b, a) == doctest::Approx(0.03125).epsilon(1e-15));
}

TEST_CASE("five all-positive differences: exact p = 2/32") {
    std::vector<double> a = {2, 4, 6, 8, 10};
    std::vector<double> b = {1, 3, 5, 7, 9.5};
    double p = wilcoxon_signed_rank(a, b);
    CHECK(p == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(p > 0.05);  // not significant at the usual level
}

TEST_CASE("zero differences are dropped before ranking") {
    // The three tied pairs contribute nothing; the remaining five act as the
    // all-positive five-pair case.
    std::vector<double> a = {7, 7, 7, 2, 4, 6, 8, 10};
    std::vector<double> b = {7, 7, 7, 1, 3, 5, 7, 9.5};
    CHECK(wilcoxon_signed_rank(a, b) == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("mixed signs enumerate correctly") {
    // Differences +1, +2, +3, -4 -> ranks 1..4, W+ = 6 of max 10.
    // Enumeration over 16 sign patterns: P(W+ >= 6) = 10/16, P(W+ <= 6) = 11/16,
    // two-sided p = 2 * 10/16 = 1.25 capped at 1... recomputed in-test below.
    std::vector<double> a = {1, 2, 3, 0};
    std::vector<double> b = {0, 0, 0, 4};
    double p = wilcoxon_signed_rank(a, b, WilcoxonMode::Exact);
    // Independent enumeration of the null distribution of W+.
    int le = 0, ge = 0, total = 0;
    for (int mask = 0; mask < 16; ++mask) {
        int w = 0;
        for (int i = 0; i < 4; ++i)
            if (mask >> i & 1) w += i + 1;
        ++total;
        if (w <= 6) ++le;
        if (w >= 6) ++ge;
    }
    double expected = std::min(1.0, 2.0 * std::min(le, ge) / static_cast<double>(total));
    CHECK(p == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("normal approximation tracks the exact tail at n = 12") {
    Rng rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> a(12), b(12);
        for (int i = 0; i < 12; ++i) {
            a[i] = rng.next_double();
            b[i] = rng.next_double();
        }
        double exact = wilcoxon_signed_rank(a, b, WilcoxonMode::Exact);
        double normal = wilcoxon_signed_rank(a, b, WilcoxonMode::Normal);
        CHECK(std::abs(exact - normal) < 0.02);
    }
}

TEST_CASE("auto mode switches to the approximation above 12 pairs") {
    Rng rng(505);
    std::vector<double> a(20), b(20);
    for (int i = 0; i < 20; ++i) {
        a[i] = rng.next_double();
        b[i] = rng.next_double();
    }
    CHECK(wilcoxon_signed_rank(a, b, WilcoxonMode::Auto) ==
          wilcoxon_signed_rank(a, b, WilcoxonMode::Normal));
    std::vector<double> a12(a.begin(), a.begin() + 12), b12(b.begin(), b.begin() + 12);
    CHECK(wilcoxon_signed_rank(a12, b12, WilcoxonMode::Auto) ==
          wilcoxon_signed_rank(a12, b12, WilcoxonMode::Exact));
}

TEST_CASE("tied absolute differences share averaged ranks") {
    // |d| = {1, 1, 2}: the two ones share rank 1.5. All positive ->
    // W+ = 6 = max; P(W+ >= 6) = 1/8, two-sided p = 0.25.
    std::vector<double> a = {2, 3, 5};
    std::vector<double> b = {1, 2, 3};
    CHECK(wilcoxon_signed_rank(a, b) == doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("mean and sample standard deviation") {
    CHECK(mean({}) == 0.0);
    CHECK(mean({2.0, 4.0}) == 3.0);
    CHECK(sample_stddev({5.0}) == 0.0);
    CHECK(sample_stddev({2.0, 4.0}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(sample_stddev({1.0, 2.0, 3.0, 4.0}) ==
          doctest::Approx(std::sqrt(5.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("ranking with ties averaged") {
    std::vector<double> v = {3.0, 1.0, 3.0, 2.0};
    std::vector<double> desc = rank_values(v, true);
    CHECK(desc == std::vector<double>{1.5, 4.0, 1.5, 3.0});
    std::vector<double> asc = rank_values(v, false);
    CHECK(asc == std::vector<double>{3.5, 1.0, 3.5, 2.0});
}
