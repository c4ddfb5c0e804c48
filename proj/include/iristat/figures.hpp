#pragma once

#include <string>
#include <utility>
#include <vector>

#include "iristat/binomial.hpp"
#include "iristat/errors.hpp"
#include "iristat/extreme_value.hpp"
#include "iristat/histogram.hpp"

namespace iristat::reports {

enum class FigureKind {
    histogram_overlay,  // one histogram plus a model curve
    histogram_compare,  // two histograms superimposed
    ev_overlay,         // best-of-k histogram plus order-statistic curve
    qq,                 // quantile-quantile polyline with diagonal reference
};

struct FigureSpec {
    FigureKind kind = FigureKind::histogram_overlay;
    std::string title;
    std::string x_label = "fractional Hamming distance";
    std::string y_label = "count";
    std::string output_path;
};

struct FigureData {
    std::vector<stats::Histogram> histograms;
    std::vector<std::string> labels;  // one per histogram, used in the legend
    // Model curve as (score, expected count) pairs; see the helpers below.
    std::vector<std::pair<double, double>> curve;
    // QQ points as (reference quantile, target quantile).
    std::vector<std::pair<double, double>> points;
};

// Expected bin counts along the lattice m/n: y = total · bin_width · n · pmf(m).
std::vector<std::pair<double, double>> binomial_expected_counts(
    const stats::BinomialModel& model, const stats::Histogram& hist);
std::vector<std::pair<double, double>> ev_expected_counts(
    const stats::ExtremeValueModel& model, const stats::Histogram& hist);

std::string render_figure(const FigureSpec& spec, const FigureData& data);
void write_figure(const FigureSpec& spec, const FigureData& data);

}  // namespace iristat::reports
