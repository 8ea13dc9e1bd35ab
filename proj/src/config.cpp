#include "bq1d/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bq1d {

using json = nlohmann::ordered_json;

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::blowup: return "blowup";
        case Scenario::zero: return "zero";
        case Scenario::transport_only: return "transport_only";
        case Scenario::custom_tabulated: return "custom_tabulated";
    }
    return "unknown";
}

const char* to_string(SolverKind s) {
    return s == SolverKind::lagrangian ? "lagrangian" : "picard_crosscheck";
}

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("config: " + what);
}

Scenario parse_scenario(const std::string& s) {
    if (s == "blowup") return Scenario::blowup;
    if (s == "zero") return Scenario::zero;
    if (s == "transport_only") return Scenario::transport_only;
    if (s == "custom_tabulated") return Scenario::custom_tabulated;
    bad("unknown scenario '" + s + "'");
}

SolverKind parse_solver(const std::string& s) {
    if (s == "lagrangian") return SolverKind::lagrangian;
    if (s == "picard_crosscheck") return SolverKind::picard_crosscheck;
    bad("unknown solver '" + s + "'");
}

const std::set<std::string> kKnownKeys = {
    "version",        "scenario",        "M",
    "N",              "layout",          "dt_max",
    "cfl",            "t_end",           "sup_dxu_stop",
    "min_gap_ratio_stop", "snapshot_every", "output_dir",
    "seed",           "n_max",           "solver",
    "picard_iters",   "picard_time_steps", "regrid_gap_max",
    "resume_from",    "rho0_table",      "omega0_table"};

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        bad(std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) bad("top level must be an object");
    for (const auto& item : doc.items())
        if (kKnownKeys.find(item.key()) == kKnownKeys.end())
            bad("unknown key '" + item.key() + "'");

    RunConfig c;
    auto get = [&](const char* key, auto& field) {
        if (doc.contains(key)) {
            try {
                field = doc.at(key).get<std::decay_t<decltype(field)>>();
            } catch (const json::exception&) {
                bad(std::string("bad type for '") + key + "'");
            }
        }
    };
    get("version", c.version);
    if (c.version != 1) bad("unsupported version");
    std::string scenario = to_string(c.scenario);
    std::string solver = to_string(c.solver);
    get("scenario", scenario);
    c.scenario = parse_scenario(scenario);
    get("M", c.M);
    get("N", c.N);
    get("layout", c.layout);
    get("dt_max", c.dt_max);
    get("cfl", c.cfl);
    get("t_end", c.t_end);
    get("sup_dxu_stop", c.sup_dxu_stop);
    get("min_gap_ratio_stop", c.min_gap_ratio_stop);
    get("snapshot_every", c.snapshot_every);
    get("output_dir", c.output_dir);
    get("seed", c.seed);
    get("n_max", c.n_max);
    get("solver", solver);
    c.solver = parse_solver(solver);
    get("picard_iters", c.picard_iters);
    get("picard_time_steps", c.picard_time_steps);
    get("regrid_gap_max", c.regrid_gap_max);
    get("resume_from", c.resume_from);
    get("rho0_table", c.rho0_table);
    get("omega0_table", c.omega0_table);

    if (c.layout != "uniform" && c.layout != "graded") bad("layout must be uniform or graded");
    if (c.M < 0.0) bad("M must be >= 0");
    if (c.N < 16) bad("N must be >= 16");
    if (!(c.dt_max > 0.0)) bad("dt_max must be positive");
    if (!(c.cfl > 0.0 && c.cfl <= 1.0)) bad("cfl must be in (0,1]");
    if (c.t_end < 0.0) bad("t_end must be >= 0");
    if (!(c.sup_dxu_stop > 0.0)) bad("sup_dxu_stop must be positive");
    if (!(c.min_gap_ratio_stop > 0.0)) bad("min_gap_ratio_stop must be positive");
    if (c.snapshot_every == 0) bad("snapshot_every must be >= 1");
    if (c.n_max < 1 || c.n_max > 16) bad("n_max must be in [1,16]");
    if (c.picard_iters < 1) bad("picard_iters must be >= 1");
    if (c.picard_time_steps < 1) bad("picard_time_steps must be >= 1");
    if (c.regrid_gap_max < 0.0) bad("regrid_gap_max must be >= 0");
    if (c.scenario == Scenario::custom_tabulated &&
        (c.rho0_table.empty() || c.omega0_table.empty()))
        bad("custom_tabulated requires rho0_table and omega0_table");
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::invalid_argument("config: cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
    json doc;
    doc["version"] = c.version;
    doc["scenario"] = to_string(c.scenario);
    doc["M"] = c.M;
    doc["N"] = c.N;
    doc["layout"] = c.layout;
    doc["dt_max"] = c.dt_max;
    doc["cfl"] = c.cfl;
    doc["t_end"] = c.t_end;
    doc["sup_dxu_stop"] = c.sup_dxu_stop;
    doc["min_gap_ratio_stop"] = c.min_gap_ratio_stop;
    doc["snapshot_every"] = c.snapshot_every;
    doc["output_dir"] = c.output_dir;
    doc["seed"] = c.seed;
    doc["n_max"] = c.n_max;
    doc["solver"] = to_string(c.solver);
    doc["picard_iters"] = c.picard_iters;
    doc["picard_time_steps"] = c.picard_time_steps;
    doc["regrid_gap_max"] = c.regrid_gap_max;
    doc["resume_from"] = c.resume_from;
    doc["rho0_table"] = c.rho0_table;
    doc["omega0_table"] = c.omega0_table;
    return doc.dump(1, '\t') + "\n";
}

}  // namespace bq1d
