#include <cmath>
#include <vector>

#include <doctest.h>

#include "iristat/quantile.hpp"

using namespace iristat::stats;

TEST_CASE("quantiles interpolate linearly between order statistics") {
    const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
    CHECK(quantile_sorted(v, 0.0) == 1.0);
    CHECK(quantile_sorted(v, 1.0) == 4.0);
    CHECK(quantile_sorted(v, 0.5) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(quantile_sorted(v, 1.0 / 3.0) == doctest::Approx(2.0).epsilon(1e-14));
    const std::vector<double> two{10.0, 20.0};
    CHECK(quantile_sorted(two, 0.25) == doctest::Approx(12.5).epsilon(1e-15));
    const std::vector<double> one{7.0};
    CHECK(quantile_sorted(one, 0.9) == 7.0);
}

TEST_CASE("interpolated ECDF inverts the quantile") {
    const std::vector<double> v{1.0, 2.0, 4.0};
    CHECK(ecdf_interp_sorted(v, 1.0) == 0.0);
    CHECK(ecdf_interp_sorted(v, 4.0) == 1.0);
    CHECK(ecdf_interp_sorted(v, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ecdf_interp_sorted(v, 3.0) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(ecdf_interp_sorted(v, 1.5) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(ecdf_interp_sorted(v, 0.5) == 0.0);
    CHECK(ecdf_interp_sorted(v, 9.0) == 1.0);

    for (double p : {0.1, 0.35, 0.6, 0.85}) {
        const double x = quantile_sorted(v, p);
        CHECK(ecdf_interp_sorted(v, x) == doctest::Approx(p).epsilon(1e-12));
    }
}

TEST_CASE("a value on a run of duplicates takes the rightmost position") {
    const std::vector<double> v{1.0, 2.0, 2.0, 3.0};
    // Upper inverse of the quantile: every p in [1/3, 2/3] maps to 2.0, and
    // the ECDF picks the top of that flat segment so x -> p -> x holds.
    CHECK(ecdf_interp_sorted(v, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(quantile_sorted(v, ecdf_interp_sorted(v, 2.0)) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(ecdf_interp_sorted(v, 2.5) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("qq of a sample against itself lies on the diagonal") {
    const std::vector<double> a{0.3, 0.1, 0.9, 0.5, 0.7};
    const std::vector<double> probs{0.1, 0.25, 0.5, 0.75, 0.9};
    for (const auto& [x, y] : qq_map(a, a, probs))
        CHECK(x == doctest::Approx(y).epsilon(1e-15));
}

TEST_CASE("qq of a shifted sample is the diagonal plus the shift") {
    std::vector<double> a{0.3, 0.1, 0.45, 0.5, 0.27, 0.33};
    std::vector<double> b;
    for (double v : a) b.push_back(v + 0.1);
    const std::vector<double> probs{0.2, 0.4, 0.6, 0.8};
    for (const auto& [x, y] : qq_map(a, b, probs))
        CHECK(y == doctest::Approx(x + 0.1).epsilon(1e-12));
}

TEST_CASE("qq validates its probability grid") {
    const std::vector<double> a{0.1, 0.2};
    CHECK_THROWS_AS((void)qq_map(a, a, std::vector<double>{0.0, 0.5}),
                    iristat::DomainError);
    CHECK_THROWS_AS((void)qq_map(a, a, std::vector<double>{0.5, 0.2}),
                    iristat::DomainError);
    CHECK_THROWS_AS((void)qq_map(std::vector<double>{}, a,
                                 std::vector<double>{0.5}),
                    iristat::EmptySample);
}

TEST_CASE("remapping onto the same sample is the identity") {
    const std::vector<double> a{0.2, 0.3, 0.4, 0.5, 0.6};
    const auto r = threshold_remap(a, a, 0.37);
    CHECK_FALSE(r.clamped);
    CHECK(r.threshold == doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("remapping onto a scaled sample scales the threshold") {
    std::vector<double> a, b;
    for (int i = 0; i <= 100; ++i) {
        a.push_back(0.2 + 0.004 * i);       // uniform on [0.2, 0.6]
        b.push_back(0.9 * (0.2 + 0.004 * i));
    }
    const auto r = threshold_remap(a, b, 0.4);
    CHECK_FALSE(r.clamped);
    CHECK(r.threshold == doctest::Approx(0.36).epsilon(1e-9));
}

TEST_CASE("remap round-trips through both directions") {
    std::vector<double> a, b;
    for (int i = 0; i <= 200; ++i) {
        a.push_back(0.3 + 0.001 * i);
        b.push_back(0.25 + 0.0015 * i);
    }
    const auto forward = threshold_remap(a, b, 0.41);
    const auto back = threshold_remap(b, a, forward.threshold);
    CHECK(back.threshold == doctest::Approx(0.41).epsilon(1e-9));
}

TEST_CASE("thresholds outside the reference support clamp and say so") {
    const std::vector<double> ref{0.4, 0.45, 0.5};
    const std::vector<double> target{0.2, 0.3, 0.35};
    const auto low = threshold_remap(ref, target, 0.1);
    CHECK(low.clamped);
    CHECK(low.threshold == 0.2);
    const auto high = threshold_remap(ref, target, 0.9);
    CHECK(high.clamped);
    CHECK(high.threshold == 0.35);
    CHECK_THROWS_AS((void)threshold_remap(ref, target, 0.0),
                    iristat::DomainError);
    CHECK_THROWS_AS((void)threshold_remap(ref, target, 1.0),
                    iristat::DomainError);
}

TEST_CASE("analytic remap between post-rotation models lands near 0.38") {
    const ExtremeValueModel reference{{260, 0.5}, 7};
    const ExtremeValueModel target{{228, 0.5}, 7};
    const auto r = threshold_remap(reference, target, 0.39);
    CHECK_FALSE(r.clamped);
    CHECK(r.threshold >= 0.37);
    CHECK(r.threshold <= 0.39);
}

TEST_CASE("analytic remap onto the same model is the identity") {
    const ExtremeValueModel m{{228, 0.5}, 7};
    const auto r = threshold_remap(m, m, 0.39);
    CHECK(r.threshold == doctest::Approx(0.39).epsilon(1e-9));
}
