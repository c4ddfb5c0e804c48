#include <cmath>
#include <map>
#include <vector>

#include <doctest.h>

#include "iristat/fmr.hpp"
#include "iristat/histogram.hpp"
#include "support/chi2.hpp"
#include "support/rational_binomial.hpp"
#include "support/sampling.hpp"

using namespace iristat::stats;

TEST_CASE("empirical FMR counts scores strictly below the threshold") {
    const std::vector<double> s{0.1, 0.2, 0.3};
    CHECK(fmr_at_threshold(s, 0.25) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(fmr_at_threshold(s, 0.15) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(fmr_at_threshold(s, 0.1) == 0.0);   // strict inequality
    CHECK(fmr_at_threshold(s, 0.31) == 1.0);
    CHECK_THROWS_AS((void)fmr_at_threshold(std::vector<double>{}, 0.2),
                    iristat::EmptySample);
}

TEST_CASE("analytic binomial FMR sums the left tail strictly below t") {
    const BinomialModel m{4, 0.5};  // pmf = 1,4,6,4,1 over 16
    CHECK(fmr_at_threshold(m, 0.3) == doctest::Approx(5.0 / 16.0).epsilon(1e-13));
    CHECK(fmr_at_threshold(m, 0.25) == doctest::Approx(1.0 / 16.0).epsilon(1e-13));
    CHECK(fmr_at_threshold(m, 0.8125) == doctest::Approx(15.0 / 16.0).epsilon(1e-13));
}

TEST_CASE("deep-tail FMR matches exact rational summation") {
    const BinomialModel m{228, 0.5};
    // 0.33 * 228 = 75.24, so the mass of m = 0..75 counts
    const auto exact = testsupport::exact_binomial_cdf(228, 75, 1, 2);
    const double fmr = fmr_at_threshold(m, 0.33);
    CHECK(testsupport::relative_error(fmr, exact) < 1e-10);
    CHECK(fmr < 1e-6);  // deep left tail at this scale
    CHECK(fmr > 0.0);
}

TEST_CASE("extreme-value FMR reduces to the base at k = 1 and compounds") {
    const BinomialModel base{4, 0.5};
    const ExtremeValueModel k1{base, 1};
    CHECK(fmr_at_threshold(k1, 0.3) ==
          doctest::Approx(fmr_at_threshold(base, 0.3)).epsilon(1e-13));
    const ExtremeValueModel k2{base, 2};
    // P(min < 0.3) = 1 - (1 - 5/16)^2 = 135/256
    CHECK(fmr_at_threshold(k2, 0.3) ==
          doctest::Approx(135.0 / 256.0).epsilon(1e-13));
}

TEST_CASE("equal group rates give an equity factor of exactly one") {
    const std::map<std::string, double> rates{
        {"a", 2e-6}, {"b", 2e-6}, {"c", 2e-6}};
    const auto r = equity_measure(rates);
    CHECK(r.factor == 1.0);
    CHECK(r.worst == 2e-6);
    CHECK(r.geometric_mean == doctest::Approx(2e-6).epsilon(1e-14));
}

TEST_CASE("a four-fold outlier inflates the factor to four to the two-thirds") {
    const std::map<std::string, double> rates{
        {"a", 1e-6}, {"b", 1e-6}, {"c", 4e-6}};
    const auto r = equity_measure(rates);
    const double expected = std::exp((2.0 / 3.0) * std::log(4.0));
    CHECK(std::fabs(r.factor - expected) / expected < 1e-12);
    CHECK(r.worst == 4e-6);
}

TEST_CASE("the equity factor ignores a common rate scale") {
    std::map<std::string, double> rates{{"a", 1e-6}, {"b", 3e-6}, {"c", 7e-6}};
    const auto r1 = equity_measure(rates);
    for (auto& [k, v] : rates) v *= 1e3;
    const auto r2 = equity_measure(rates);
    CHECK(r1.factor == doctest::Approx(r2.factor).epsilon(1e-13));
    CHECK(r1.factor > 1.0);
}

TEST_CASE("degenerate equity inputs are rejected") {
    CHECK(equity_measure({{"only", 1e-5}}).factor == 1.0);
    CHECK_THROWS_AS((void)equity_measure({}), iristat::EmptySample);
    CHECK_THROWS_AS((void)equity_measure({{"a", 0.0}, {"b", 1e-6}}),
                    iristat::NonPositiveRate);
    CHECK_THROWS_AS((void)equity_measure({{"a", -1e-6}}),
                    iristat::NonPositiveRate);
}

TEST_CASE("histograms bin right-open with a closed final bin") {
    const auto empty = build_histogram(std::vector<double>{});
    CHECK(empty.total == 0);
    CHECK(empty.bin_count() == 200);
    for (auto c : empty.counts) CHECK(c == 0);

    const auto h = build_histogram(std::vector<double>{0.5});
    CHECK(h.total == 1);
    CHECK(h.counts[100] == 1);  // 0.5 opens bin [0.500, 0.505)

    const auto edges = build_histogram(
        std::vector<double>{0.0, 0.0049, 0.005, 0.9999, 1.0});
    CHECK(edges.counts[0] == 2);
    CHECK(edges.counts[1] == 1);
    CHECK(edges.counts[199] == 2);  // 1.0 closes into the last bin

    const auto coarse = build_histogram(std::vector<double>{0.31}, 0.01);
    CHECK(coarse.bin_count() == 100);
    CHECK(coarse.counts[31] == 1);
}

TEST_CASE("histogram rejects out-of-range scores and bad widths") {
    CHECK_THROWS_AS((void)build_histogram(std::vector<double>{-0.1}),
                    iristat::DomainError);
    CHECK_THROWS_AS((void)build_histogram(std::vector<double>{1.5}),
                    iristat::DomainError);
    CHECK_THROWS_AS((void)build_histogram(std::vector<double>{std::nan("")}),
                    iristat::DomainError);
    CHECK_THROWS_AS((void)build_histogram(std::vector<double>{0.5}, 0.0),
                    iristat::DomainError);
}

TEST_CASE("chi-square gate accepts a histogram of its own model") {
    const std::uint32_t n = 228;
    const BinomialModel model{n, 0.5};
    const auto scores = testsupport::binomial_half_scores(31337, 50000, n);
    const auto hist = build_histogram(scores);

    // expected count per bin: lattice mass falling inside each bin
    const auto pmf = binomial_pmf_grid(model);
    std::vector<double> expected(hist.bin_count(), 0.0);
    for (std::uint32_t m = 0; m <= n; ++m)
        expected[hist.bin_index(static_cast<double>(m) / n)] +=
            pmf[m] * static_cast<double>(hist.total);

    // merge sparse bins so the chi-square approximation holds
    double chi2 = 0.0;
    double pending_obs = 0.0, pending_exp = 0.0;
    int used_bins = 0;
    for (std::size_t b = 0; b < expected.size(); ++b) {
        pending_obs += static_cast<double>(hist.counts[b]);
        pending_exp += expected[b];
        if (pending_exp >= 5.0) {
            chi2 += (pending_obs - pending_exp) * (pending_obs - pending_exp) /
                    pending_exp;
            pending_obs = pending_exp = 0.0;
            ++used_bins;
        }
    }
    if (pending_exp > 0.0) {
        chi2 += (pending_obs - pending_exp) * (pending_obs - pending_exp) /
                std::max(pending_exp, 1e-12);
        ++used_bins;
    }
    REQUIRE(used_bins > 10);
    const double p = testsupport::chi2_sf(chi2, used_bins - 1);
    CHECK(p > 0.001);
}

TEST_CASE("chi-square survival helper matches table values") {
    CHECK(testsupport::chi2_sf(3.841, 1.0) == doctest::Approx(0.05).epsilon(0.01));
    CHECK(testsupport::chi2_sf(0.0, 5.0) == 1.0);
    CHECK(testsupport::chi2_sf(15.086, 5.0) == doctest::Approx(0.01).epsilon(0.01));
}
