#include "bq1d/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "bq1d/certificate.hpp"
#include "bq1d/checkpoint.hpp"
#include "bq1d/diagnostics.hpp"
#include "bq1d/parallel.hpp"
#include "bq1d/picard.hpp"
#include "bq1d/svg.hpp"

namespace fs = std::filesystem;

namespace bq1d {

namespace {

std::string fmt17(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SmoothProfile load_table_profile(const std::string& name, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open table " + path);
    std::vector<double> xs, vs;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double x, v;
        if (ss >> x >> v) {
            xs.push_back(x);
            vs.push_back(v);
        }
    }
    return tabulated_profile(name, std::move(xs), std::move(vs));
}

std::vector<double> tracked_labels_for(const RunConfig& c, const InitialData& data) {
    std::vector<double> labels;
    if (c.scenario == Scenario::blowup) {
        for (int n = 1; n <= c.n_max; ++n) labels.push_back(find_xn(data.rho0, n));
    }
    return labels;
}

Layout layout_for(const RunConfig& c) {
    return c.layout == "graded" ? Layout::graded : Layout::uniform;
}

StepControl control_for(const RunConfig& c) {
    StepControl ctl;
    ctl.dt_max = c.dt_max;
    ctl.cfl = c.cfl;
    ctl.t_end = c.t_end;
    ctl.sup_dxu_stop = c.sup_dxu_stop;
    ctl.min_gap_ratio_stop = c.min_gap_ratio_stop;
    ctl.snapshot_every = c.snapshot_every;
    if (c.regrid_gap_max > 0.0) ctl.regrid_gap_max = c.regrid_gap_max;
    return ctl;
}

void write_plots(const fs::path& dir, const DiagnosticSeries& series,
                 const CertificateTrace* trace, const BlowupBoundReport* bound) {
    {
        PlotSpec spec{"sup |omega| over time", "t", "sup|omega|", true, 1e-16};
        write_line_plot((dir / "plot_sup_omega.svg").string(), spec,
                        {{"sup|omega|", series.t, series.sup_omega}});
    }
    if (trace != nullptr) {
        std::vector<PlotSeries> phi_series, psi_series;
        for (int j = 0; j < trace->n_max; ++j) {
            const std::string nm = "n=" + std::to_string(j + 1);
            phi_series.push_back({nm, trace->t, trace->phi[j]});
            psi_series.push_back({nm, trace->t, trace->psi[j]});
        }
        PlotSpec phi_spec{"tracked characteristics Phi_n(t)", "t", "Phi_n", true, 1e-16};
        write_line_plot((dir / "plot_phi_n.svg").string(), phi_spec, phi_series);
        PlotSpec psi_spec{"psi_n(t) = -ln Phi_n(t)", "t", "psi_n", false, 0.0};
        write_line_plot((dir / "plot_psi_n.svg").string(), psi_spec, psi_series);
    }
    if (bound != nullptr && !bound->a_n.empty()) {
        PlotSeries measured{"a_n (measured, capped)", {}, {}};
        PlotSeries reference{"3n+6", {}, {}};
        PlotSeries recursion{"recursion from a_1", {}, {}};
        const auto rec = recursion_iterate(bound->a_n.front().a_n,
                                           static_cast<int>(bound->a_n.size()));
        for (std::size_t j = 0; j < bound->a_n.size(); ++j) {
            const double n = bound->a_n[j].n;
            measured.x.push_back(n);
            measured.y.push_back(bound->a_n[j].a_n);
            reference.x.push_back(n);
            reference.y.push_back(3.0 * n + 6.0);
            recursion.x.push_back(n);
            recursion.y.push_back(rec[j].value);
        }
        PlotSpec spec{"a_n vs 3n+6", "n", "a_n", false, 0.0};
        write_line_plot((dir / "plot_recursion.svg").string(), spec,
                        {measured, reference, recursion});
    }
}

struct CrosscheckResult {
    bool ran = false;
    double sup_omega_diff = 0.0;
    std::vector<double> iterate_distance;
    bool non_contraction = false;
};

void write_summary(const fs::path& path, const RunConfig& c, const Trajectory& traj,
                   const DiagnosticSeries& series, std::size_t global_steps,
                   const CrosscheckResult& cross) {
    nlohmann::ordered_json doc;
    doc["schema"] = "bq1d-summary-v1";
    doc["scenario"] = to_string(c.scenario);
    doc["termination"] = to_string(traj.termination);
    doc["flagged"] = traj.termination == Termination::blowup_flagged;
    doc["unreliable_quadrature"] = traj.unreliable;
    if (traj.termination == Termination::blowup_flagged) {
        doc["flag_time"] = traj.flag_time;
        doc["theoretical_bound"] = 2.0;
    }
    doc["t_final"] = traj.records.back().t;
    doc["steps"] = global_steps;
    doc["records"] = traj.records.size();
    doc["i_omega_final"] = series.i_omega.back();
    doc["i_dxu_final"] = series.i_dxu.back();
    doc["i_dxrho_final"] = series.i_dxrho.back();
    doc["min_tracked_phi_final"] = series.min_tracked_phi.back();
    if (c.solver == SolverKind::picard_crosscheck) {
        nlohmann::ordered_json pc;
        pc["ran"] = cross.ran;
        if (cross.ran) {
            pc["sup_omega_diff"] = cross.sup_omega_diff;
            pc["iterate_distance"] = cross.iterate_distance;
            pc["non_contraction"] = cross.non_contraction;
        } else {
            pc["skipped_reason"] = "lagrangian run did not reach t_end";
        }
        doc["picard_crosscheck"] = std::move(pc);
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string());
    f << doc.dump(1, '\t') << '\n';
}

}  // namespace

std::string resolve_output_dir(const std::string& configured) {
    const char* root = std::getenv("BQ1D_OUTPUT_ROOT");
    if (root == nullptr || root[0] == '\0') return configured;
    return (fs::path(root) / configured).string();
}

InitialData make_initial_data(const RunConfig& c) {
    switch (c.scenario) {
        case Scenario::blowup: return InitialData::blowup(c.M);
        case Scenario::zero: return InitialData::zero();
        case Scenario::transport_only: return InitialData::transport_only(c.M);
        case Scenario::custom_tabulated:
            return InitialData{load_table_profile("rho0_table", c.rho0_table),
                               load_table_profile("omega0_table", c.omega0_table), c.M};
    }
    throw std::logic_error("make_initial_data: bad scenario");
}

RunResult run(const RunConfig& config) {
    RunResult result;
    const fs::path dir = resolve_output_dir(config.output_dir);
    result.output_dir = dir.string();

    InitialData data;
    std::vector<double> tracked;
    ParticleState state;
    std::vector<StepRecord> prior_records;
    std::size_t first_step = 0;
    try {
        data = make_initial_data(config);
        tracked = tracked_labels_for(config, data);
        if (config.resume_from.empty()) {
            std::vector<double> extra = tracked;
            extra.push_back(0.5);
            state = discretize(data, config.N, layout_for(config), extra);
        } else {
            Checkpoint c = read_checkpoint(config.resume_from);
            if (c.tracked_labels != tracked) {
                result.exit_code = kExitConfig;
                result.message = "resume checkpoint tracks different labels than the config";
                return result;
            }
            state = std::move(c.state);
            prior_records = std::move(c.records);
            first_step = c.step_index;
            if (!prior_records.empty()) prior_records.pop_back();  // re-observed by advance
        }
    } catch (const std::invalid_argument& e) {
        result.exit_code = kExitConfig;
        result.message = e.what();
        return result;
    } catch (const std::exception& e) {
        result.exit_code = kExitIo;
        result.message = e.what();
        return result;
    }

    Trajectory traj;
    try {
        traj = advance(state, control_for(config), data, tracked, first_step);
    } catch (const std::exception& e) {
        result.exit_code = kExitBreakdown;
        result.message = e.what();
        return result;
    }

    // Stitch resumed records so artifacts always cover t = 0 onwards. The
    // checkpointed record at the seam must be re-derived bit-for-bit from
    // the restored state; anything else means the config diverged.
    if (!config.resume_from.empty() && !traj.records.empty()) {
        const StepRecord& seam = traj.records.front();
        Checkpoint probe = read_checkpoint(config.resume_from);
        if (!probe.records.empty() &&
            (probe.records.back().t != seam.t ||
             probe.records.back().sup_dxu != seam.sup_dxu ||
             probe.records.back().sup_omega != seam.sup_omega)) {
            result.exit_code = kExitConfig;
            result.message = "resume does not reproduce the checkpointed record; config mismatch";
            return result;
        }
    }
    if (!prior_records.empty()) {
        std::vector<StepRecord> all = std::move(prior_records);
        all.insert(all.end(), traj.records.begin(), traj.records.end());
        traj.records = std::move(all);
    }

    result.termination = traj.termination;
    result.flagged = traj.termination == Termination::blowup_flagged;
    result.flag_time = traj.flag_time;
    result.t_final = traj.records.back().t;
    result.steps = first_step + traj.steps;

    try {
        fs::create_directories(dir);
        std::ofstream cfg(dir / "config.json", std::ios::binary);
        cfg << serialize_config(config);
        if (!cfg) throw std::runtime_error("cannot write config.json");
        cfg.close();

        const DiagnosticSeries series = accumulate(traj);
        result.i_omega_final = series.i_omega.back();
        result.min_tracked_phi = series.min_tracked_phi.back();
        write_diagnostics_csv((dir / "diagnostics.csv").string(), series);

        const bool have_certificate =
            static_cast<int>(traj.tracked_labels.size()) >= config.n_max && config.n_max >= 1 &&
            traj.records.size() >= 3;
        CertificateTrace trace;
        BlowupBoundReport bound;
        if (have_certificate) {
            trace = track(traj, config.n_max);
            const InequalityReport ineq = check_inequalities(trace);
            bound = blowup_bound_report(trace);
            write_certificate_json((dir / "certificate.json").string(), trace, ineq, bound);
        } else {
            std::ofstream f(dir / "certificate.json", std::ios::binary);
            f << "{\n\t\"schema\": \"bq1d-certificate-v1\",\n\t\"tracked\": false\n}\n";
        }

        // Checkpoints: one per cadenced snapshot (records up to that step),
        // plus the final state under a stable name.
        for (const Snapshot& snap : traj.snapshots) {
            Checkpoint c;
            c.step_index = snap.step;
            c.state = snap.state;
            c.tracked_labels = traj.tracked_labels;
            const std::size_t count = snap.step + 1;  // records 0..step
            c.records.assign(traj.records.begin(),
                             traj.records.begin() +
                                 static_cast<std::ptrdiff_t>(std::min(count, traj.records.size())));
            char name[64];
            std::snprintf(name, sizeof(name), "checkpoint_%08zu.ckpt", snap.step);
            write_checkpoint((dir / name).string(), c);
            if (&snap == &traj.snapshots.back())
                write_checkpoint((dir / "checkpoint_final.ckpt").string(), c);
        }

        CrosscheckResult cross;
        if (config.solver == SolverKind::picard_crosscheck &&
            traj.termination == Termination::reached_t_end) {
            const PicardResult pic = picard_solve(data, config.t_end, config.picard_iters,
                                                  config.N, config.picard_time_steps);
            double sup_lag = 0.0, sup_pic = 0.0;
            for (double v : traj.final_state.omega) sup_lag = std::max(sup_lag, std::fabs(v));
            for (double v : pic.final_state.omega) sup_pic = std::max(sup_pic, std::fabs(v));
            cross.ran = true;
            cross.sup_omega_diff = std::fabs(sup_lag - sup_pic);
            cross.iterate_distance = pic.iterate_distance;
            cross.non_contraction = pic.non_contraction;
        }

        write_plots(dir, series, have_certificate ? &trace : nullptr,
                    have_certificate ? &bound : nullptr);
        write_summary(dir / "summary.json", config, traj, series, result.steps, cross);
    } catch (const std::exception& e) {
        result.exit_code = kExitIo;
        result.message = e.what();
        return result;
    }

    if (traj.termination == Termination::broken_ordering) {
        result.exit_code = kExitBreakdown;
        result.message = "particle ordering broke before t_end without a blow-up flag";
    }
    return result;
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<double>& m_values) {
    std::vector<SweepRow> rows(m_values.size());
    std::vector<std::future<void>> workers;
    workers.reserve(m_values.size());
    for (std::size_t i = 0; i < m_values.size(); ++i) {
        workers.push_back(std::async(std::launch::async, [&base, &rows, &m_values, i] {
            par::scoped_serial serial;  // parallelism lives across runs here
            RunConfig c = base;
            c.M = m_values[i];
            char sub[48];
            std::snprintf(sub, sizeof(sub), "M_%.6g", m_values[i]);
            c.output_dir = (fs::path(base.output_dir) / sub).string();
            RunResult r = run(c);
            rows[i] = {m_values[i], r.exit_code, r.flagged,
                       r.flagged ? r.flag_time : std::numeric_limits<double>::quiet_NaN(),
                       r.i_omega_final, r.min_tracked_phi};
        }));
    }
    for (auto& w : workers) w.get();

    const fs::path dir = resolve_output_dir(base.output_dir);
    fs::create_directories(dir);
    std::ofstream f(dir / "sweep_summary.csv", std::ios::binary);
    f << "# bq1d-sweep-v1\n";
    f << "M,exit_code,flagged,flag_time,max_I_omega,min_tracked_phi\n";
    for (const SweepRow& r : rows) {
        f << fmt17(r.M) << ',' << r.exit_code << ',' << (r.flagged ? 1 : 0) << ','
          << fmt17(r.flag_time) << ',' << fmt17(r.max_i_omega) << ','
          << fmt17(r.min_tracked_phi) << '\n';
    }
    return rows;
}

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int verify(const std::string& run_dir) {
    const fs::path dir = run_dir;
    try {
        const RunConfig config = load_config((dir / "config.json").string());
        Checkpoint ckpt = read_checkpoint((dir / "checkpoint_final.ckpt").string());
        const auto summary = nlohmann::json::parse(read_file(dir / "summary.json"));

        Trajectory traj;
        traj.records = std::move(ckpt.records);
        traj.tracked_labels = ckpt.tracked_labels;
        traj.final_state = std::move(ckpt.state);
        const std::string term = summary.at("termination").get<std::string>();
        traj.termination = term == "blowup_flagged"    ? Termination::blowup_flagged
                           : term == "broken_ordering" ? Termination::broken_ordering
                                                       : Termination::reached_t_end;
        if (traj.termination == Termination::blowup_flagged)
            traj.flag_time = summary.at("flag_time").get<double>();

        const fs::path tmp_csv = dir / "verify_diagnostics.csv";
        const fs::path tmp_json = dir / "verify_certificate.json";
        const DiagnosticSeries series = accumulate(traj);
        write_diagnostics_csv(tmp_csv.string(), series);
        bool ok = read_file(tmp_csv) == read_file(dir / "diagnostics.csv");
        fs::remove(tmp_csv);

        if (static_cast<int>(traj.tracked_labels.size()) >= config.n_max &&
            traj.records.size() >= 3 && !traj.tracked_labels.empty()) {
            const CertificateTrace trace = track(traj, config.n_max);
            const InequalityReport ineq = check_inequalities(trace);
            const BlowupBoundReport bound = blowup_bound_report(trace);
            write_certificate_json(tmp_json.string(), trace, ineq, bound);
            ok = ok && read_file(tmp_json) == read_file(dir / "certificate.json");
            fs::remove(tmp_json);
        }
        std::printf("verify %s: %s\n", run_dir.c_str(), ok ? "artifacts reproduce" : "MISMATCH");
        return ok ? kExitOk : 1;
    } catch (const std::exception& e) {
        std::printf("verify %s: error: %s\n", run_dir.c_str(), e.what());
        return kExitIo;
    }
}

}  // namespace bq1d
