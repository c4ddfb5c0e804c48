#include "iristat/report.hpp"

#include <fstream>

#include <json.hpp>

#include "iristat/errors.hpp"
#include "iristat/text.hpp"

namespace iristat::reports {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void csv_row(std::string& out, const std::string& record,
             const std::string& label, const std::string& metric,
             const std::string& value) {
    out += record;
    out += ',';
    out += csv_field(label);
    out += ',';
    out += csv_field(metric);
    out += ',';
    out += value;
    out += '\n';
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open report output: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace

void ReportBundle::add_fit(std::string label, const stats::DofEstimate& estimate) {
    fits_.push_back({std::move(label), estimate});
}

void ReportBundle::add_ks(std::string label_a, std::string label_b,
                          std::size_t count_a, std::size_t count_b,
                          const stats::KsResult& result) {
    ks_.push_back({std::move(label_a), std::move(label_b), count_a, count_b,
                   result});
}

void ReportBundle::add_remap(std::string reference_label,
                             std::string target_label, double threshold_in,
                             const stats::RemapResult& result) {
    remaps_.push_back({std::move(reference_label), std::move(target_label),
                       threshold_in, result});
}

void ReportBundle::add_equity(std::string label,
                              const stats::EquityReport& report) {
    equity_.push_back({std::move(label), report});
}

std::string ReportBundle::jsonl() const {
    std::string out;
    for (const auto& f : fits_) {
        ordered_json j;
        j["record"] = "fit";
        j["label"] = f.label;
        j["count"] = f.estimate.count;
        j["mean"] = f.estimate.mean;
        j["stddev"] = f.estimate.stddev;
        j["dof"] = f.estimate.model.n;
        j["dof_raw"] = f.estimate.dof_raw;
        j["p"] = f.estimate.model.p;
        out += j.dump();
        out += '\n';
    }
    for (const auto& k : ks_) {
        ordered_json j;
        j["record"] = "ks";
        j["a"] = k.label_a;
        j["b"] = k.label_b;
        j["count_a"] = k.count_a;
        j["count_b"] = k.count_b;
        j["d"] = k.result.d;
        j["p_value"] = k.result.p_value;
        out += j.dump();
        out += '\n';
    }
    for (const auto& r : remaps_) {
        ordered_json j;
        j["record"] = "remap";
        j["reference"] = r.reference_label;
        j["target"] = r.target_label;
        j["threshold_in"] = r.threshold_in;
        j["threshold_out"] = r.result.threshold;
        j["clamped"] = r.result.clamped;
        out += j.dump();
        out += '\n';
    }
    for (const auto& e : equity_) {
        ordered_json j;
        j["record"] = "equity";
        j["label"] = e.label;
        ordered_json groups;
        for (const auto& [group, fmr] : e.report.per_group_fmr)
            groups[group] = fmr;
        j["fmr"] = groups;
        j["geometric_mean"] = e.report.geometric_mean;
        j["worst"] = e.report.worst;
        j["factor"] = e.report.factor;
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::string ReportBundle::csv() const {
    std::string out = "record,label,metric,value\n";
    for (const auto& f : fits_) {
        csv_row(out, "fit", f.label, "count", std::to_string(f.estimate.count));
        csv_row(out, "fit", f.label, "mean", format_double(f.estimate.mean));
        csv_row(out, "fit", f.label, "stddev", format_double(f.estimate.stddev));
        csv_row(out, "fit", f.label, "dof", std::to_string(f.estimate.model.n));
        csv_row(out, "fit", f.label, "dof_raw", format_double(f.estimate.dof_raw));
        csv_row(out, "fit", f.label, "p", format_double(f.estimate.model.p));
    }
    for (const auto& k : ks_) {
        const std::string label = k.label_a + " vs " + k.label_b;
        csv_row(out, "ks", label, "d", format_double(k.result.d));
        csv_row(out, "ks", label, "p_value", format_double(k.result.p_value));
    }
    for (const auto& r : remaps_) {
        const std::string label = r.reference_label + " -> " + r.target_label;
        csv_row(out, "remap", label, "threshold_in", format_double(r.threshold_in));
        csv_row(out, "remap", label, "threshold_out",
                format_double(r.result.threshold));
        csv_row(out, "remap", label, "clamped", r.result.clamped ? "1" : "0");
    }
    for (const auto& e : equity_) {
        for (const auto& [group, fmr] : e.report.per_group_fmr)
            csv_row(out, "equity", e.label, "fmr:" + group, format_double(fmr));
        csv_row(out, "equity", e.label, "geometric_mean",
                format_double(e.report.geometric_mean));
        csv_row(out, "equity", e.label, "worst", format_double(e.report.worst));
        csv_row(out, "equity", e.label, "factor", format_double(e.report.factor));
    }
    return out;
}

void ReportBundle::write_jsonl(const std::string& path) const {
    write_text(path, jsonl());
}

void ReportBundle::write_csv(const std::string& path) const {
    write_text(path, csv());
}

}  // namespace iristat::reports
