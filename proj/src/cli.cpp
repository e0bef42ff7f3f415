#include "epsball/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "epsball/dataset.hpp"
#include "epsball/density.hpp"
#include "epsball/diagnostics.hpp"
#include "epsball/errors.hpp"
#include "epsball/expansion.hpp"
#include "epsball/io.hpp"
#include "epsball/oracle.hpp"
#include "epsball/pca.hpp"
#include "epsball/regions.hpp"
#include "epsball/version.hpp"

namespace epsball {

namespace {

double parse_shape(const std::string& spec) {
    if (spec == "auto") return 0.0;
    double v = 0.0;
    std::size_t consumed = 0;
    try {
        v = std::stod(spec, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != spec.size() || !(v > 0.0) || !std::isfinite(v))
        throw validation_error("--shape must be a positive number or 'auto'");
    return v;
}

// Attached to --shape so malformed values are rejected at flag-parse time.
const CLI::Validator shape_validator(
    [](std::string& s) -> std::string {
        try {
            parse_shape(s);
        } catch (const validation_error&) {
            return "must be a positive number or 'auto'";
        }
        return {};
    },
    "SHAPE");

// Radii rows keyed back to dataset indices; every index 0..n-1 must appear
// exactly once.
std::vector<double> radii_to_eps(const std::vector<radii_row>& rows, std::size_t n,
                                 const std::string& path) {
    if (rows.size() != n) {
        std::ostringstream msg;
        msg << "radii file " << path << " has " << rows.size() << " rows for " << n
            << " dataset points";
        throw validation_error(msg.str());
    }
    std::vector<double> eps(n, -1.0);
    for (const auto& r : rows) {
        if (r.index >= n || eps[r.index] >= 0.0)
            throw validation_error("radii file " + path +
                                   " has a missing or duplicated point index");
        eps[r.index] = r.epsilon;
    }
    for (double e : eps)
        if (!(e >= 0.0) || !std::isfinite(e))
            throw validation_error("radii file " + path + " has a negative or non-finite radius");
    return eps;
}

dataset working_copy(const dataset& ds, bool normalize) {
    return normalize ? normalize_features(ds) : ds;
}

struct compute_opts {
    std::string input;
    std::string label;
    std::string shape = "auto";
    std::string output;
    run_config cfg;
    std::string mode = "strict";
    bool with_oracle = false;
    double oracle_fine_step = 1e-4;
};

int do_compute(const compute_opts& o) {
    run_config cfg = o.cfg;
    cfg.shape = parse_shape(o.shape);
    cfg.mode = o.mode == "paper" ? run_mode::paper : run_mode::strict;

    const dataset ds = load_dataset_file(o.input, label_selector::parse(o.label));
    if (ds.single_class())
        std::cerr << "warning: dataset has a single class; cross-class constraints are vacuous\n";

    const auto t0 = std::chrono::steady_clock::now();
    const radius_result res = expand(ds, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::optional<std::vector<double>> oracle_eps;
    if (o.with_oracle) {
        const dataset work = working_copy(ds, cfg.normalize);
        oracle_config ocfg;
        ocfg.fine_step = o.oracle_fine_step;
        ocfg.min_step = cfg.min_step;
        ocfg.shape = res.shape_used;
        oracle_eps = fine_step_expand(work, ocfg);
    }

    std::ostringstream out;
    out << "index,class_id,epsilon,density,stop_reason";
    if (oracle_eps) out << ",oracle_epsilon";
    out << '\n';
    for (std::size_t i = 0; i < ds.size(); ++i) {
        out << i << ',' << ds[i].class_id << ',' << fmt17(res.epsilons[i]) << ','
            << fmt17(res.densities[i]) << ',' << to_string(res.stop_reasons[i]);
        if (oracle_eps) out << ',' << fmt17((*oracle_eps)[i]);
        out << '\n';
    }
    write_text_atomic(o.output, out.str());

    std::size_t collisions = 0, underflows = 0, capped = 0;
    for (auto r : res.stop_reasons) {
        if (r == stop_reason::collision) ++collisions;
        else if (r == stop_reason::step_underflow) ++underflows;
        else ++capped;
    }

    nlohmann::json meta{
        {"command", "compute"},
        {"version", EPSBALL_VERSION},
        {"input", o.input},
        {"output", o.output},
        {"mode", o.mode},
        {"shape_requested", o.shape},
        {"shape_used", res.shape_used},
        {"min_step", cfg.min_step},
        {"max_sweeps", cfg.max_sweeps},
        {"normalize", cfg.normalize},
        {"sequential", cfg.sequential},
        {"threads_requested", cfg.threads},
        {"points", ds.size()},
        {"dim", ds.dim()},
        {"classes", ds.classes()},
        {"sweeps", res.sweeps},
        {"stop_counts",
         {{"collision", collisions}, {"step_underflow", underflows}, {"sweep_cap", capped}}},
        {"timing_ms", ms},
    };
    write_text_atomic(o.output + ".meta.json", meta.dump(2) + "\n");

    if (capped > 0)
        std::cerr << "warning: " << capped << " points were still active at the sweep cap\n";
    std::cout << "computed " << ds.size() << " radii in " << res.sweeps << " sweeps (mode "
              << o.mode << ", shape " << fmt17(res.shape_used) << ") -> " << o.output << '\n';
    return 0;
}

struct verify_opts {
    std::string input;
    std::string label;
    std::string radii;
    double tolerance = 1e-12;
    bool normalize = false;
};

int do_verify(const verify_opts& o) {
    const dataset ds = load_dataset_file(o.input, label_selector::parse(o.label));
    const auto eps = radii_to_eps(load_radii_file(o.radii), ds.size(), o.radii);
    const dataset work = working_copy(ds, o.normalize);

    double worst = std::numeric_limits<double>::infinity();
    std::size_t wi = 0, wj = 0;
    for (const auto& [i, j] : cross_class_pairs(work)) {
        const double slack = distance(work[i].coords, work[j].coords) - (eps[i] + eps[j]);
        if (slack < worst) {
            worst = slack;
            wi = i;
            wj = j;
        }
    }

    if (!std::isfinite(worst)) {
        std::cout << "verify: OK (no cross-class pairs)\n";
        return 0;
    }
    if (worst < -o.tolerance) {
        std::cout << "verify: overlap detected: slack " << fmt17(worst) << " at pair (" << wi
                  << "," << wj << ") exceeds tolerance " << fmt17(o.tolerance) << '\n';
        return 1;
    }
    std::cout << "verify: OK (worst slack " << fmt17(worst) << " at pair (" << wi << "," << wj
              << "), tolerance " << fmt17(o.tolerance) << ")\n";
    return 0;
}

struct density_opts {
    std::string input;
    std::string label;
    std::string shape = "auto";
    std::string query;
    std::string class_filter;
    std::string output;
};

int do_density(const density_opts& o) {
    const dataset ds = load_dataset_file(o.input, label_selector::parse(o.label));
    const auto queries = load_points_file(o.query);
    for (const auto& q : queries)
        if (q.size() != ds.dim()) {
            std::ostringstream msg;
            msg << "query rows have " << q.size() << " features, dataset has " << ds.dim();
            throw validation_error(msg.str());
        }

    double shape = parse_shape(o.shape);
    if (shape == 0.0) shape = ds.size() < 2 ? 1.0 : default_shape(ds);
    const density_model model{&ds, shape};

    std::vector<std::string> classes;
    if (o.class_filter.empty()) {
        classes = ds.classes();
    } else {
        if (!ds.has_class(o.class_filter))
            throw validation_error("unknown class '" + o.class_filter + "'");
        classes.push_back(o.class_filter);
    }

    std::ostringstream out;
    out << "query_index,class_id,density\n";
    for (std::size_t q = 0; q < queries.size(); ++q)
        for (const auto& c : classes)
            out << q << ',' << c << ',' << fmt17(class_density(model, queries[q], c)) << '\n';

    if (o.output.empty())
        std::cout << out.str();
    else
        write_text_atomic(o.output, out.str());
    return 0;
}

struct sample_opts {
    std::string input;
    std::string label;
    std::string radii;
    std::size_t point = 0;
    std::size_t count = 0;
    std::uint64_t seed = 0;
    bool normalize = false;
    std::string output;
};

int do_sample(const sample_opts& o) {
    const dataset ds = load_dataset_file(o.input, label_selector::parse(o.label));
    const auto eps = radii_to_eps(load_radii_file(o.radii), ds.size(), o.radii);
    if (o.point >= ds.size())
        throw validation_error("--point index out of range");
    const dataset work = working_copy(ds, o.normalize);

    const safe_region region{work[o.point].coords, eps[o.point], work[o.point].class_id};
    const auto pts = sample(region, o.count, o.seed);

    std::ostringstream out;
    for (std::size_t k = 0; k < work.dim(); ++k) out << (k ? "," : "") << 'x' << k;
    out << '\n';
    for (const auto& p : pts) {
        for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << fmt17(p[k]);
        out << '\n';
    }
    write_text_atomic(o.output, out.str());
    std::cout << "sampled " << pts.size() << " points from region " << o.point << " -> "
              << o.output << '\n';
    return 0;
}

struct report_opts {
    std::string input;
    std::string label;
    std::string radii;
    bool normalize = false;
    std::string output;
};

int do_report(const report_opts& o) {
    const dataset ds = load_dataset_file(o.input, label_selector::parse(o.label));
    const auto rows = load_radii_file(o.radii);
    const auto eps = radii_to_eps(rows, ds.size(), o.radii);
    std::vector<double> densities(ds.size());
    for (const auto& r : rows) densities[r.index] = r.density;
    const dataset work = working_copy(ds, o.normalize);

    const diagnostics_report rep = build_report(work, eps, densities);

    double worst_component = 0.0;
    for (double g : rep.g_slack) worst_component = std::min(worst_component, g);

    // A degenerate fit has NaN alpha; JSON has no NaN, so it serializes as
    // null, which is the intended "undefined" marker.
    nlohmann::json doc{
        {"points", ds.size()},
        {"dim", ds.dim()},
        {"alpha", rep.fit.alpha},
        {"beta", rep.fit.beta},
        {"r_squared", rep.fit.r_squared},
        {"degenerate_fit", rep.fit.degenerate},
        {"worst_pair", {{"i", rep.worst_i}, {"j", rep.worst_j}, {"slack", rep.worst_slack}}},
        {"worst_g_component", worst_component},
        {"g_slack", rep.g_slack},
        {"volumes", rep.volumes},
        {"h_residuals", rep.fit.residuals},
    };
    const std::string text = doc.dump(2) + "\n";
    if (o.output.empty())
        std::cout << text;
    else
        write_text_atomic(o.output, text);
    return 0;
}

struct plot_opts {
    std::string input;
    std::string label;
    std::string radii;
    bool normalize = false;
    std::string output;
};

int do_plot_data(const plot_opts& o) {
    const dataset ds = load_dataset_file(o.input, label_selector::parse(o.label));
    const auto eps = radii_to_eps(load_radii_file(o.radii), ds.size(), o.radii);
    const dataset work = working_copy(ds, o.normalize);

    const auto proj = project_2d(work);
    std::ostringstream out;
    out << "pc1,pc2,class_id,epsilon\n";
    for (std::size_t i = 0; i < work.size(); ++i)
        out << fmt17(proj[i][0]) << ',' << fmt17(proj[i][1]) << ',' << work[i].class_id << ','
            << fmt17(eps[i]) << '\n';
    write_text_atomic(o.output, out.str());
    std::cout << "wrote projected coordinates for " << work.size() << " points -> " << o.output
              << '\n';
    return 0;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Per-sample safe perturbation radii from class-conditional RBF densities"};
    app.set_version_flag("--version", std::string("epsball ") + EPSBALL_VERSION);
    app.require_subcommand(1);

    compute_opts co;
    auto* compute = app.add_subcommand(
        "compute", "Expand per-point radii and write them with a JSON sidecar");
    compute->add_option("--input", co.input, "dataset file (.csv or .json)")->required();
    compute->add_option("--label", co.label, "label column name or 0-based index (default: last)");
    compute->add_option("--shape", co.shape, "RBF width gamma, or 'auto' for the median heuristic")
        ->check(shape_validator);
    compute->add_option("--min-step", co.cfg.min_step, "smallest step still applied");
    compute->add_option("--mode", co.mode, "paper (one-step overlap) or strict (clamped)")
        ->check(CLI::IsMember({"paper", "strict"}));
    compute->add_option("--max-sweeps", co.cfg.max_sweeps, "safety cap on sweeps");
    compute->add_flag("--normalize", co.cfg.normalize, "z-score features first");
    compute->add_flag("--allow-single-class", co.cfg.allow_single_class,
                      "permit a dataset with one class");
    compute->add_flag("--sequential", co.cfg.sequential,
                      "row-order in-place sweeps (comparison mode)");
    compute->add_option("--threads", co.cfg.threads,
                        "worker count (0: EPSBALL_THREADS, then hardware)");
    compute->add_flag("--oracle", co.with_oracle,
                      "also run the fine-step reference and emit its radii");
    compute->add_option("--oracle-fine-step", co.oracle_fine_step,
                        "growth quantum for --oracle");
    compute->add_option("--output", co.output, "radii CSV path")->required();

    verify_opts vo;
    auto* verify = app.add_subcommand("verify", "Check a radii file for cross-class overlap");
    verify->add_option("--input", vo.input, "dataset file")->required();
    verify->add_option("--label", vo.label, "label column name or 0-based index");
    verify->add_option("--radii", vo.radii, "radii CSV from compute")->required();
    verify->add_option("--tolerance", vo.tolerance, "largest acceptable negative slack");
    verify->add_flag("--normalize", vo.normalize, "evaluate in z-scored feature space");

    density_opts dn;
    auto* density = app.add_subcommand("density", "Evaluate class densities at query points");
    density->add_option("--input", dn.input, "dataset file")->required();
    density->add_option("--label", dn.label, "label column name or 0-based index");
    density->add_option("--shape", dn.shape, "RBF width gamma, or 'auto'")->check(shape_validator);
    density->add_option("--query", dn.query, "CSV of query points")->required();
    density->add_option("--class", dn.class_filter, "restrict output to one class");
    density->add_option("--output", dn.output, "output CSV path (default: stdout)");

    sample_opts so;
    auto* samp = app.add_subcommand("sample", "Draw uniform points from one safe region");
    samp->add_option("--input", so.input, "dataset file")->required();
    samp->add_option("--label", so.label, "label column name or 0-based index");
    samp->add_option("--radii", so.radii, "radii CSV from compute")->required();
    samp->add_option("--point", so.point, "0-based point index")->required();
    samp->add_option("--count", so.count, "number of samples")->required();
    samp->add_option("--seed", so.seed, "RNG seed")->required();
    samp->add_flag("--normalize", so.normalize, "sample in z-scored feature space");
    samp->add_option("--output", so.output, "output CSV path")->required();

    report_opts ro;
    auto* report = app.add_subcommand("report", "Emit the full diagnostics report as JSON");
    report->add_option("--input", ro.input, "dataset file")->required();
    report->add_option("--label", ro.label, "label column name or 0-based index");
    report->add_option("--radii", ro.radii, "radii CSV from compute")->required();
    report->add_flag("--normalize", ro.normalize, "evaluate in z-scored feature space");
    report->add_option("--output", ro.output, "output JSON path (default: stdout)");

    plot_opts po;
    auto* plot = app.add_subcommand(
        "plot-data", "Project points onto the first two principal components");
    plot->add_option("--input", po.input, "dataset file")->required();
    plot->add_option("--label", po.label, "label column name or 0-based index");
    plot->add_option("--radii", po.radii, "radii CSV from compute")->required();
    plot->add_flag("--normalize", po.normalize, "project z-scored features");
    plot->add_option("--output", po.output, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed()) return do_compute(co);
        if (verify->parsed()) return do_verify(vo);
        if (density->parsed()) return do_density(dn);
        if (samp->parsed()) return do_sample(so);
        if (report->parsed()) return do_report(ro);
        if (plot->parsed()) return do_plot_data(po);
        std::cerr << "error: no subcommand given\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace epsball
