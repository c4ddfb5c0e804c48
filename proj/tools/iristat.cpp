// iristat: synthetic iris-code cohorts, all-against-all masked Hamming
// comparison, and the score statistics built on top (degrees-of-freedom
// fit, best-of-k extreme-value model, KS tests, threshold remapping, FMR
// equity), with CSV/JSONL/SVG report output.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iristat/binomial.hpp"
#include "iristat/dof.hpp"
#include "iristat/errors.hpp"
#include "iristat/extreme_value.hpp"
#include "iristat/figures.hpp"
#include "iristat/fmr.hpp"
#include "iristat/histogram.hpp"
#include "iristat/icb_io.hpp"
#include "iristat/ks.hpp"
#include "iristat/match.hpp"
#include "iristat/quantile.hpp"
#include "iristat/report.hpp"
#include "iristat/score_io.hpp"
#include "iristat/simgen.hpp"
#include "iristat/text.hpp"

namespace {

using iristat::format_double;
using nlohmann::ordered_json;

bool g_json = false;

void emit(const ordered_json& summary, const std::string& text) {
    if (g_json)
        std::printf("%s\n", summary.dump().c_str());
    else
        std::printf("%s\n", text.c_str());
}

struct Moments {
    std::size_t count = 0;
    double mean = std::numeric_limits<double>::quiet_NaN();
    double stddev = std::numeric_limits<double>::quiet_NaN();
};

Moments moments(std::span<const double> v) {
    Moments m;
    m.count = v.size();
    if (v.empty()) return m;
    double sum = 0.0;
    for (double x : v) sum += x;
    m.mean = sum / static_cast<double>(v.size());
    if (v.size() < 2) return m;
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
    return m;
}

// "label=path"; a bare path labels itself with its stem.
std::pair<std::string, std::string> split_labeled(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos)
        return {std::filesystem::path(arg).stem().string(), arg};
    return {arg.substr(0, eq), arg.substr(eq + 1)};
}

std::vector<double> qq_probs() {
    std::vector<double> probs;
    probs.reserve(199);
    for (int i = 1; i < 200; ++i) probs.push_back(i / 200.0);
    return probs;
}

// ---------------------------------------------------------------- gen

struct GenOpts {
    iristat::simgen::CohortSpec spec;
    double mask_fraction = 0.0;
    std::uint64_t mask_seed = 1;
    std::string out;
};

void run_gen(const GenOpts& o) {
    auto cohort = iristat::simgen::generate_cohort(o.spec);
    if (o.mask_fraction > 0.0)
        cohort = iristat::simgen::generate_masks(std::move(cohort),
                                                 o.mask_fraction, o.mask_seed);
    iristat::codes::write_icb_file(o.out, cohort);
    ordered_json j;
    j["record"] = "gen";
    j["codes"] = o.spec.n_codes;
    j["dof"] = o.spec.dof;
    j["mean_hd"] = o.spec.mean_hd;
    j["seed"] = o.spec.seed;
    j["out"] = o.out;
    emit(j, "codes=" + std::to_string(o.spec.n_codes) +
                " seed=" + std::to_string(o.spec.seed) + " out=" + o.out);
}

void setup_gen(CLI::App& app) {
    auto o = std::make_shared<GenOpts>();
    auto* cmd = app.add_subcommand("gen", "generate a synthetic cohort (ICB1)");
    cmd->add_option("--n", o->spec.n_codes, "number of codes")->required();
    cmd->add_option("--dof", o->spec.dof, "effective degrees of freedom")
        ->required();
    cmd->add_option("--mean-hd", o->spec.mean_hd,
                    "target impostor mean distance (0, 0.5]");
    cmd->add_option("--seed", o->spec.seed, "generator seed");
    cmd->add_option("--angular", o->spec.layout.angular_resolution,
                    "angular resolution");
    cmd->add_option("--radial", o->spec.layout.radial_resolution,
                    "radial resolution");
    cmd->add_option("--phase", o->spec.layout.phase_bits, "phase bits");
    cmd->add_option("--mask-fraction", o->mask_fraction,
                    "occluded angular fraction [0, 1)");
    cmd->add_option("--mask-seed", o->mask_seed, "occlusion placement seed");
    cmd->add_option("--out", o->out, "output template file")->required();
    cmd->callback([o] { run_gen(*o); });
}

// ---------------------------------------------------------------- match

struct MatchOpts {
    std::string codes_path;
    std::string out;
    iristat::codes::MatchConfig cfg;
    bool quiet = false;
};

void run_match(const MatchOpts& o) {
    const auto cohort = iristat::codes::read_icb_file(o.codes_path);
    iristat::codes::ProgressFn progress;
    if (!o.quiet) {
        progress = [](std::uint64_t done, std::uint64_t total) {
            std::fprintf(stderr, "\r%llu / %llu pairs",
                         static_cast<unsigned long long>(done),
                         static_cast<unsigned long long>(total));
            if (done == total) std::fputc('\n', stderr);
            std::fflush(stderr);
        };
    }
    const auto records = iristat::codes::all_pairs(cohort, o.cfg, progress);
    iristat::codes::write_scores_csv_file(o.out, records);

    std::vector<double> valid_hd;
    valid_hd.reserve(records.size());
    for (const auto& r : records)
        if (r.valid) valid_hd.push_back(r.hd);
    const auto m = moments(valid_hd);

    ordered_json j;
    j["record"] = "match";
    j["pairs"] = records.size();
    j["valid"] = valid_hd.size();
    j["mean"] = m.mean;
    j["stddev"] = m.stddev;
    j["rotations"] = o.cfg.rotations;
    j["out"] = o.out;
    emit(j, "pairs=" + std::to_string(records.size()) +
                " valid=" + std::to_string(valid_hd.size()) +
                " mean=" + format_double(m.mean) +
                " stddev=" + format_double(m.stddev) + " out=" + o.out);
}

void setup_match(CLI::App& app) {
    auto o = std::make_shared<MatchOpts>();
    auto* cmd =
        app.add_subcommand("match", "all-against-all comparison of a cohort");
    cmd->add_option("--codes", o->codes_path, "ICB1 template file")->required();
    cmd->add_option("--rotations", o->cfg.rotations,
                    "odd rotation count for the best-match search");
    cmd->add_option("--min-overlap", o->cfg.min_overlap,
                    "jointly valid bits required to score a pair");
    cmd->add_option("--threads", o->cfg.threads,
                    "worker thread hint (0 = hardware)")
        ->envname("IRISTAT_THREADS");
    cmd->add_flag("--quiet", o->quiet, "suppress the progress counter");
    cmd->add_option("--out", o->out, "output score CSV")->required();
    cmd->callback([o] { run_match(*o); });
}

// ---------------------------------------------------------------- fit

void run_fit(const std::string& scores_path) {
    const auto values = iristat::codes::read_score_values_file(scores_path);
    const auto est = iristat::stats::estimate_dof(values);
    ordered_json j;
    j["record"] = "fit";
    j["count"] = est.count;
    j["mean"] = est.mean;
    j["stddev"] = est.stddev;
    j["dof"] = est.model.n;
    j["dof_raw"] = est.dof_raw;
    j["p"] = est.model.p;
    emit(j, "count=" + std::to_string(est.count) +
                " mean=" + format_double(est.mean) +
                " stddev=" + format_double(est.stddev) +
                " dof=" + std::to_string(est.model.n) +
                " dof_raw=" + format_double(est.dof_raw) +
                " p=" + format_double(est.model.p));
}

void setup_fit(CLI::App& app) {
    auto path = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand(
        "fit", "fit the binomial degrees-of-freedom model to scores");
    cmd->add_option("scores", *path, "score CSV (or one value per line)")
        ->required();
    cmd->callback([path] { run_fit(*path); });
}

// ---------------------------------------------------------------- ev

struct EvOpts {
    std::string scores_path;
    std::uint32_t dof = 0;
    double p = 0.5;
    std::uint32_t rotations = 7;
    double threshold = -1.0;
    double bin_width = 0.005;
    std::string fig;
};

void run_ev(const EvOpts& o) {
    std::vector<double> values;
    if (!o.scores_path.empty())
        values = iristat::codes::read_score_values_file(o.scores_path);

    iristat::stats::BinomialModel base;
    if (o.dof > 0) {
        base = {o.dof, o.p};
        base.validate();
    } else if (!values.empty()) {
        base = iristat::stats::estimate_dof(values).model;
    } else {
        throw iristat::DomainError("ev: provide --dof or --scores");
    }
    const iristat::stats::ExtremeValueModel model{base, o.rotations};

    const auto pmf = iristat::stats::ev_pmf_grid(model);
    const auto mode_m = static_cast<std::uint32_t>(
        std::max_element(pmf.begin(), pmf.end()) - pmf.begin());
    const double mode = static_cast<double>(mode_m) / base.n;
    const double mean = iristat::stats::ev_mean(model);

    ordered_json j;
    j["record"] = "ev";
    j["base_n"] = base.n;
    j["base_p"] = base.p;
    j["k"] = model.k;
    j["ev_mean"] = mean;
    j["ev_mode"] = mode;
    std::string text = "base_n=" + std::to_string(base.n) +
                       " base_p=" + format_double(base.p) +
                       " k=" + std::to_string(model.k) +
                       " ev_mean=" + format_double(mean) +
                       " ev_mode=" + format_double(mode);
    if (o.threshold >= 0.0) {
        const double fmr = iristat::stats::fmr_at_threshold(model, o.threshold);
        j["threshold"] = o.threshold;
        j["fmr"] = fmr;
        text += " fmr@" + format_double(o.threshold) + "=" + format_double(fmr);
    }
    if (!o.fig.empty()) {
        if (values.empty())
            throw iristat::DomainError("ev: --fig needs --scores to histogram");
        const auto hist = iristat::stats::build_histogram(values, o.bin_width);
        iristat::reports::FigureSpec spec;
        spec.kind = iristat::reports::FigureKind::ev_overlay;
        spec.title = "best-of-" + std::to_string(model.k) + " score distribution";
        spec.output_path = o.fig;
        iristat::reports::FigureData data;
        data.histograms.push_back(hist);
        data.curve = iristat::reports::ev_expected_counts(model, hist);
        iristat::reports::write_figure(spec, data);
        j["fig"] = o.fig;
        text += " fig=" + o.fig;
    }
    emit(j, text);
}

void setup_ev(CLI::App& app) {
    auto o = std::make_shared<EvOpts>();
    auto* cmd = app.add_subcommand(
        "ev", "best-of-k extreme-value model of the impostor minimum");
    cmd->add_option("--scores", o->scores_path,
                    "scores to fit the base model from (or to histogram)");
    cmd->add_option("--dof", o->dof, "base degrees of freedom (skips fitting)");
    cmd->add_option("--p", o->p, "base per-bit disagreement probability");
    cmd->add_option("--rotations", o->rotations, "number of draws k");
    cmd->add_option("--threshold", o->threshold, "report FMR below this score");
    cmd->add_option("--bin-width", o->bin_width, "histogram bin width");
    cmd->add_option("--fig", o->fig, "write an overlay figure (SVG)");
    cmd->callback([o] { run_ev(*o); });
}

// ---------------------------------------------------------------- ks

void run_ks(const std::string& a_path, const std::string& b_path) {
    const auto a = iristat::codes::read_score_values_file(a_path);
    const auto b = iristat::codes::read_score_values_file(b_path);
    const auto r = iristat::stats::ks_two_sample(a, b);
    ordered_json j;
    j["record"] = "ks";
    j["count_a"] = a.size();
    j["count_b"] = b.size();
    j["d"] = r.d;
    j["p_value"] = r.p_value;
    emit(j, "d=" + format_double(r.d) + " p_value=" + format_double(r.p_value));
}

void setup_ks(CLI::App& app) {
    auto a = std::make_shared<std::string>();
    auto b = std::make_shared<std::string>();
    auto* cmd = app.add_subcommand(
        "ks", "two-sample Kolmogorov-Smirnov test between score sets");
    cmd->add_option("a", *a, "first score file")->required();
    cmd->add_option("b", *b, "second score file")->required();
    cmd->callback([a, b] { run_ks(*a, *b); });
}

// ---------------------------------------------------------------- qq

struct QqOpts {
    std::string ref_path;
    std::string target_path;
    double threshold = 0.0;
    bool analytic = false;
    std::uint32_t rotations = 7;
    std::string fig;
};

void run_qq(const QqOpts& o) {
    const auto ref = iristat::codes::read_score_values_file(o.ref_path);
    const auto target = iristat::codes::read_score_values_file(o.target_path);

    iristat::stats::RemapResult r;
    if (o.analytic) {
        const iristat::stats::ExtremeValueModel ev_ref{
            iristat::stats::estimate_dof(ref).model, o.rotations};
        const iristat::stats::ExtremeValueModel ev_target{
            iristat::stats::estimate_dof(target).model, o.rotations};
        r = iristat::stats::threshold_remap(ev_ref, ev_target, o.threshold);
    } else {
        r = iristat::stats::threshold_remap(ref, target, o.threshold);
    }

    ordered_json j;
    j["record"] = "qq";
    j["method"] = o.analytic ? "analytic" : "empirical";
    j["threshold_in"] = o.threshold;
    j["threshold_out"] = r.threshold;
    j["clamped"] = r.clamped;
    std::string text = "threshold_in=" + format_double(o.threshold) +
                       " threshold_out=" + format_double(r.threshold) +
                       " clamped=" + std::string(r.clamped ? "1" : "0");

    if (!o.fig.empty()) {
        const auto probs = qq_probs();
        iristat::reports::FigureSpec spec;
        spec.kind = iristat::reports::FigureKind::qq;
        spec.title = "quantile-quantile";
        spec.x_label = "reference quantile";
        spec.y_label = "target quantile";
        spec.output_path = o.fig;
        iristat::reports::FigureData data;
        data.points = iristat::stats::qq_map(ref, target, probs);
        iristat::reports::write_figure(spec, data);
        j["fig"] = o.fig;
        text += " fig=" + o.fig;
    }
    emit(j, text);
}

void setup_qq(CLI::App& app) {
    auto o = std::make_shared<QqOpts>();
    auto* cmd = app.add_subcommand(
        "qq", "remap a decision threshold from one cohort onto another");
    cmd->add_option("--ref", o->ref_path, "reference score file")->required();
    cmd->add_option("--target", o->target_path, "target score file")->required();
    cmd->add_option("--threshold", o->threshold, "threshold on the reference")
        ->required();
    cmd->add_flag("--analytic", o->analytic,
                  "remap on fitted best-of-k models instead of raw quantiles");
    cmd->add_option("--rotations", o->rotations,
                    "k for the analytic best-of-k models");
    cmd->add_option("--fig", o->fig, "write a quantile-quantile figure (SVG)");
    cmd->callback([o] { run_qq(*o); });
}

// ---------------------------------------------------------------- equity

struct EquityOpts {
    std::vector<std::string> rates;   // group=value
    std::vector<std::string> scores;  // group=path
    double threshold = -1.0;
};

void run_equity(const EquityOpts& o) {
    std::map<std::string, double> per_group;
    for (const auto& entry : o.rates) {
        const auto [group, value] = split_labeled(entry);
        double rate = 0.0;
        if (!iristat::parse_double(value, rate))
            throw iristat::DomainError("equity: bad rate value: " + entry);
        per_group[group] = rate;
    }
    if (!o.scores.empty()) {
        if (o.threshold < 0.0)
            throw iristat::DomainError(
                "equity: score files need --threshold to compute FMR");
        for (const auto& entry : o.scores) {
            const auto [group, path] = split_labeled(entry);
            const auto values = iristat::codes::read_score_values_file(path);
            per_group[group] =
                iristat::stats::fmr_at_threshold(values, o.threshold);
        }
    }
    const auto r = iristat::stats::equity_measure(per_group);

    ordered_json j;
    j["record"] = "equity";
    ordered_json groups;
    std::string text;
    for (const auto& [group, fmr] : r.per_group_fmr) {
        groups[group] = fmr;
        text += "fmr:" + group + "=" + format_double(fmr) + " ";
    }
    j["fmr"] = groups;
    j["geometric_mean"] = r.geometric_mean;
    j["worst"] = r.worst;
    j["factor"] = r.factor;
    text += "geometric_mean=" + format_double(r.geometric_mean) +
            " worst=" + format_double(r.worst) +
            " factor=" + format_double(r.factor);
    emit(j, text);
}

void setup_equity(CLI::App& app) {
    auto o = std::make_shared<EquityOpts>();
    auto* cmd = app.add_subcommand(
        "equity", "worst-group FMR against the geometric mean FMR");
    cmd->add_option("--rate", o->rates,
                    "group=value false-match rate (repeatable)");
    cmd->add_option("scores", o->scores,
                    "group=path score files; FMR taken at --threshold");
    cmd->add_option("--threshold", o->threshold, "decision threshold");
    cmd->callback([o] { run_equity(*o); });
}

// ---------------------------------------------------------------- report

struct ReportOpts {
    std::vector<std::string> scores;  // label=path
    std::string out_dir;
    std::uint32_t rotations = 7;
    double threshold = -1.0;         // remap first -> second when given
    double equity_threshold = -1.0;  // analytic FMR equity when given
    double bin_width = 0.005;
};

void run_report(const ReportOpts& o) {
    namespace fs = std::filesystem;
    namespace rep = iristat::reports;
    namespace st = iristat::stats;

    const fs::path dir(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw iristat::IoError("cannot create " + o.out_dir + ": " + ec.message());

    struct Cohort {
        std::string label;
        std::vector<double> values;
        st::DofEstimate fit;
        st::Histogram hist;
    };
    std::vector<Cohort> cohorts;
    rep::ReportBundle bundle;
    std::vector<std::string> written;

    auto emit_figure = [&](const rep::FigureSpec& spec, const rep::FigureData& data) {
        rep::write_figure(spec, data);
        written.push_back(spec.output_path);
    };

    for (const auto& entry : o.scores) {
        auto [label, path] = split_labeled(entry);
        Cohort c;
        c.label = std::move(label);
        c.values = iristat::codes::read_score_values_file(path);
        c.fit = st::estimate_dof(c.values);
        c.hist = st::build_histogram(c.values, o.bin_width);
        bundle.add_fit(c.label, c.fit);

        rep::FigureSpec spec;
        spec.kind = rep::FigureKind::histogram_overlay;
        spec.title = c.label + " impostor scores";
        spec.output_path = (dir / (c.label + "_hist.svg")).string();
        rep::FigureData data;
        data.histograms.push_back(c.hist);
        data.labels.push_back(c.label);
        data.curve = rep::binomial_expected_counts(c.fit.model, c.hist);
        emit_figure(spec, data);
        cohorts.push_back(std::move(c));
    }

    for (std::size_t i = 0; i < cohorts.size(); ++i) {
        for (std::size_t j = i + 1; j < cohorts.size(); ++j) {
            bundle.add_ks(cohorts[i].label, cohorts[j].label,
                          cohorts[i].values.size(), cohorts[j].values.size(),
                          st::ks_two_sample(cohorts[i].values, cohorts[j].values));
        }
    }

    if (cohorts.size() >= 2) {
        const auto& ref = cohorts[0];
        const auto& target = cohorts[1];
        if (o.threshold > 0.0) {
            const st::ExtremeValueModel ev_ref{ref.fit.model, o.rotations};
            const st::ExtremeValueModel ev_target{target.fit.model, o.rotations};
            bundle.add_remap(ref.label, target.label, o.threshold,
                             st::threshold_remap(ev_ref, ev_target, o.threshold));
        }

        rep::FigureSpec cmp;
        cmp.kind = rep::FigureKind::histogram_compare;
        cmp.title = ref.label + " vs " + target.label;
        cmp.output_path = (dir / "compare.svg").string();
        rep::FigureData cmp_data;
        cmp_data.histograms = {ref.hist, target.hist};
        cmp_data.labels = {ref.label, target.label};
        emit_figure(cmp, cmp_data);

        rep::FigureSpec qq;
        qq.kind = rep::FigureKind::qq;
        qq.title = ref.label + " vs " + target.label + " quantiles";
        qq.x_label = ref.label + " quantile";
        qq.y_label = target.label + " quantile";
        qq.output_path = (dir / "qq.svg").string();
        rep::FigureData qq_data;
        const auto probs = qq_probs();
        qq_data.points = st::qq_map(ref.values, target.values, probs);
        emit_figure(qq, qq_data);
    }

    if (o.equity_threshold > 0.0 && !cohorts.empty()) {
        std::map<std::string, double> per_group;
        for (const auto& c : cohorts) {
            const st::ExtremeValueModel ev{c.fit.model, o.rotations};
            per_group[c.label] =
                st::fmr_at_threshold(ev, o.equity_threshold);
        }
        bundle.add_equity("analytic@" + format_double(o.equity_threshold),
                          st::equity_measure(per_group));
    }

    const auto jsonl_path = (dir / "report.jsonl").string();
    const auto csv_path = (dir / "report.csv").string();
    bundle.write_jsonl(jsonl_path);
    bundle.write_csv(csv_path);
    written.push_back(jsonl_path);
    written.push_back(csv_path);

    ordered_json j;
    j["record"] = "report";
    j["out_dir"] = o.out_dir;
    j["files"] = written;
    std::string text = "out_dir=" + o.out_dir + " files=";
    for (std::size_t i = 0; i < written.size(); ++i) {
        if (i) text += ',';
        text += fs::path(written[i]).filename().string();
    }
    emit(j, text);
}

void setup_report(CLI::App& app) {
    auto o = std::make_shared<ReportOpts>();
    auto* cmd = app.add_subcommand(
        "report", "fit, compare and plot one or more score cohorts");
    cmd->add_option("--scores", o->scores, "label=path score file (repeatable)")
        ->required();
    cmd->add_option("--out-dir", o->out_dir, "output directory")->required();
    cmd->add_option("--rotations", o->rotations,
                    "k for analytic best-of-k remap and FMR");
    cmd->add_option("--threshold", o->threshold,
                    "remap this threshold from the first cohort to the second");
    cmd->add_option("--equity-threshold", o->equity_threshold,
                    "analytic FMR equity across cohorts at this threshold");
    cmd->add_option("--bin-width", o->bin_width, "histogram bin width");
    cmd->callback([o] { run_report(*o); });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "iris-template comparison and score statistics\n"
        "synthetic cohorts, masked Hamming matching, DoF/extreme-value "
        "models, KS, QQ remapping, FMR equity"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read defaults from a TOML/INI file");
    app.add_flag("--json", g_json, "machine-readable one-line JSON summaries");

    setup_gen(app);
    setup_match(app);
    setup_fit(app);
    setup_ev(app);
    setup_ks(app);
    setup_qq(app);
    setup_equity(app);
    setup_report(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const iristat::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const iristat::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
