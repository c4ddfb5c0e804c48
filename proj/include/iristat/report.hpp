#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "iristat/dof.hpp"
#include "iristat/fmr.hpp"
#include "iristat/ks.hpp"
#include "iristat/quantile.hpp"

namespace iristat::reports {

struct FitRecord {
    std::string label;
    stats::DofEstimate estimate;
};

struct KsRecord {
    std::string label_a;
    std::string label_b;
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    stats::KsResult result;
};

struct RemapRecord {
    std::string reference_label;
    std::string target_label;
    double threshold_in = 0.0;
    stats::RemapResult result;
};

struct EquityRecord {
    std::string label;
    stats::EquityReport report;
};

// Collects analysis results and writes them twice: a JSON-lines file for
// machines and a long-format CSV summary (record,label,metric,value) for
// people. Records appear grouped by type, in insertion order within a type.
class ReportBundle {
public:
    void add_fit(std::string label, const stats::DofEstimate& estimate);
    void add_ks(std::string label_a, std::string label_b, std::size_t count_a,
                std::size_t count_b, const stats::KsResult& result);
    void add_remap(std::string reference_label, std::string target_label,
                   double threshold_in, const stats::RemapResult& result);
    void add_equity(std::string label, const stats::EquityReport& report);

    bool empty() const {
        return fits_.empty() && ks_.empty() && remaps_.empty() &&
               equity_.empty();
    }
    const std::vector<FitRecord>& fits() const { return fits_; }
    const std::vector<KsRecord>& ks_tests() const { return ks_; }
    const std::vector<RemapRecord>& remaps() const { return remaps_; }
    const std::vector<EquityRecord>& equity() const { return equity_; }

    std::string jsonl() const;
    std::string csv() const;
    void write_jsonl(const std::string& path) const;
    void write_csv(const std::string& path) const;

private:
    std::vector<FitRecord> fits_;
    std::vector<KsRecord> ks_;
    std::vector<RemapRecord> remaps_;
    std::vector<EquityRecord> equity_;
};

}  // namespace iristat::reports
