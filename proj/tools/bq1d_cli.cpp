// bq1d command line: batch runs of the 1D model, parameter sweeps over the
// vorticity plateau height, the discrete recursion check, and artifact
// re-verification.
//
//   bq1d run <config.json>
//   bq1d sweep <config.json> --M 50,100,200
//   bq1d check-recursion --a1 9 --n 50
//   bq1d verify <run-dir>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bq1d/certificate.hpp"
#include "bq1d/runner.hpp"

namespace {

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

int do_run(const std::string& config_path) {
    bq1d::RunConfig config;
    try {
        config = bq1d::load_config(config_path);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return bq1d::kExitConfig;
    }
    const bq1d::RunResult r = bq1d::run(config);
    if (!r.message.empty()) std::fprintf(stderr, "error: %s\n", r.message.c_str());
    std::printf("run: %s  termination=%s", r.output_dir.c_str(),
                bq1d::to_string(r.termination));
    if (r.flagged) std::printf("  flag_time=%.8g (theoretical bound 2)", r.flag_time);
    std::printf("  t_final=%.8g  steps=%zu\n", r.t_final, r.steps);
    return r.exit_code;
}

int do_sweep(const std::string& config_path, const std::string& m_list) {
    bq1d::RunConfig base;
    std::vector<double> ms;
    try {
        base = bq1d::load_config(config_path);
        ms = parse_list(m_list);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return bq1d::kExitConfig;
    }
    const auto rows = bq1d::sweep(base, ms);
    std::printf("%-10s %-6s %-10s %-14s %-14s %s\n", "M", "exit", "flagged", "flag_time",
                "max_I_omega", "min_tracked_phi");
    for (const auto& r : rows) {
        std::printf("%-10g %-6d %-10s %-14.8g %-14.6g %g\n", r.M, r.exit_code,
                    r.flagged ? "yes" : "no", r.flag_time, r.max_i_omega, r.min_tracked_phi);
    }
    for (const auto& r : rows)
        if (r.exit_code != bq1d::kExitOk) return r.exit_code;
    return bq1d::kExitOk;
}

int do_check_recursion(double a1, int n) {
    const auto states = bq1d::recursion_iterate(a1, n);
    bool all_hold = true;
    std::printf("%-4s %-22s %-10s %s\n", "n", "a_n", "saturated", "a_n >= 3n+6");
    for (const auto& st : states) {
        const bool holds = st.holds_bound();
        all_hold = all_hold && holds;
        std::printf("%-4d %-22.15g %-10s %s\n", st.n, st.value, st.saturated ? "yes" : "no",
                    holds ? "yes" : "no");
    }
    std::printf("induction bound %s for a1=%.17g up to n=%d\n",
                all_hold ? "holds" : "FAILS", a1, n);
    return all_hold ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lagrangian simulator and inequality lab for a 1D Boussinesq-type model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string m_list = "50,100,200";
    std::string run_dir;
    double a1 = 9.0;
    int n = 50;

    auto* run_cmd = app.add_subcommand("run", "run one scenario from a JSON config");
    run_cmd->add_option("config", config_path, "config file")->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "run the scenario for several M values");
    sweep_cmd->add_option("config", config_path, "config template")->required();
    sweep_cmd->add_option("--M", m_list, "comma-separated plateau heights");

    auto* rec_cmd = app.add_subcommand("check-recursion", "iterate a_n = e^{a-3n}-1+a");
    rec_cmd->add_option("--a1", a1, "starting value");
    rec_cmd->add_option("--n", n, "iterations");

    auto* verify_cmd = app.add_subcommand("verify", "re-derive artifacts from checkpoints");
    verify_cmd->add_option("dir", run_dir, "run output directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) return do_run(config_path);
    if (sweep_cmd->parsed()) return do_sweep(config_path, m_list);
    if (rec_cmd->parsed()) return do_check_recursion(a1, n);
    if (verify_cmd->parsed()) return bq1d::verify(run_dir);
    return bq1d::kExitConfig;
}
