#pragma once

#include <map>
#include <span>
#include <string>

#include "iristat/extreme_value.hpp"

namespace iristat::stats {

// False Match Rate: probability mass strictly below the decision threshold.
double fmr_at_threshold(std::span<const double> scores, double t);
double fmr_at_threshold(const BinomialModel& model, double t);
double fmr_at_threshold(const ExtremeValueModel& model, double t);

struct EquityReport {
    std::map<std::string, double> per_group_fmr;
    double geometric_mean = 0.0;
    double worst = 0.0;
    double factor = 1.0;  // worst / geometric mean; 1.0 = parity
};

// Factor by which the worst per-group FMR exceeds the geometric mean FMR.
// Computed in log space on the ratios fmr/worst, so equal inputs give
// exactly 1.0 and the factor is invariant under rescaling all rates.
EquityReport equity_measure(const std::map<std::string, double>& per_group_fmr);

}  // namespace iristat::stats
