// Config parsing (round-trip, unknown keys, validation) and checkpoint
// round-trip fidelity.

#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "bq1d/checkpoint.hpp"
#include "bq1d/config.hpp"
#include "harness.hpp"

using namespace bq1d;
using testing::record;
using testing::section;

namespace {

bool parse_fails(const std::string& text) {
    try {
        parse_config(text);
        return false;
    } catch (const std::invalid_argument&) {
        return true;
    }
}

}  // namespace

int main() {
    section("config round-trip");
    {
        RunConfig c;
        c.scenario = Scenario::blowup;
        c.M = 137.5;
        c.N = 1234;
        c.layout = "uniform";
        c.dt_max = 2.5e-4;
        c.cfl = 0.3;
        c.t_end = 1.25;
        c.n_max = 6;
        c.solver = SolverKind::picard_crosscheck;
        c.picard_iters = 5;
        c.output_dir = "some/dir";
        c.seed = 99;
        const RunConfig back = parse_config(serialize_config(c));
        record("parse(serialize(c)) == c", back == c);
        const RunConfig again = parse_config(serialize_config(back));
        record("stable under a second round-trip", again == back);
    }

    section("validation");
    record("unknown key rejected", parse_fails(R"({"version":1,"scenari":"zero"})"));
    record("bad scenario rejected", parse_fails(R"({"version":1,"scenario":"boom"})"));
    record("bad version rejected", parse_fails(R"({"version":7})"));
    record("negative M rejected", parse_fails(R"({"version":1,"M":-3})"));
    record("tiny N rejected", parse_fails(R"({"version":1,"N":4})"));
    record("cfl > 1 rejected", parse_fails(R"({"version":1,"cfl":1.5})"));
    record("zero dt_max rejected", parse_fails(R"({"version":1,"dt_max":0})"));
    record("bad layout rejected", parse_fails(R"({"version":1,"layout":"exotic"})"));
    record("n_max cap enforced", parse_fails(R"({"version":1,"n_max":40})"));
    record("custom_tabulated needs tables",
           parse_fails(R"({"version":1,"scenario":"custom_tabulated"})"));
    record("non-JSON rejected", parse_fails("not json at all"));
    record("valid minimal config accepted", !parse_fails(R"({"version":1})"));

    section("checkpoint round-trip");
    {
        Checkpoint c;
        c.step_index = 42;
        c.state.t = 0.375;
        c.state.label = {0.0, 0.25, 0.5, 1.0};
        c.state.pos = {0.0, 0.2, 0.45, 1.0};
        c.state.rho = {0.0, 1.0, 2.0, 0.0};
        c.state.omega = {0.0, 3.5, -1.25, 0.0};
        StepRecord r;
        r.t = 0.375;
        r.sup_omega = 3.5;
        r.sup_dxu = 1.5;
        r.sup_dxrho = 8.0;
        r.l2_omega = 1.1;
        r.min_gap_ratio = 0.8;
        r.x_min_omega = 0.2;
        r.phi_half = 0.45;
        r.tracked = {{0.2, 1.0, 2.0, 3.0, 4.0}, {0.45, -1.0, 0.5, 0.25, 0.0}};
        c.records = {r, r};
        c.tracked_labels = {0.25, 0.5};

        const std::string path = "test_ckpt_roundtrip.ckpt";
        write_checkpoint(path, c);
        const Checkpoint back = read_checkpoint(path);
        std::remove(path.c_str());

        bool same = back.step_index == c.step_index && back.state.t == c.state.t &&
                    back.state.label == c.state.label && back.state.pos == c.state.pos &&
                    back.state.rho == c.state.rho && back.state.omega == c.state.omega &&
                    back.tracked_labels == c.tracked_labels &&
                    back.records.size() == c.records.size();
        if (same) {
            const StepRecord& b = back.records[1];
            same = b.t == r.t && b.sup_omega == r.sup_omega && b.sup_dxu == r.sup_dxu &&
                   b.sup_dxrho == r.sup_dxrho && b.l2_omega == r.l2_omega &&
                   b.min_gap_ratio == r.min_gap_ratio && b.x_min_omega == r.x_min_omega &&
                   b.phi_half == r.phi_half && b.tracked.size() == r.tracked.size() &&
                   b.tracked[1].omega_cap == r.tracked[1].omega_cap &&
                   b.tracked[1].rhs_mid == r.tracked[1].rhs_mid;
        }
        record("bit-exact fields after write/read", same);

        bool threw = false;
        try {
            read_checkpoint("no_such_file.ckpt");
        } catch (const std::runtime_error&) {
            threw = true;
        }
        record("missing file throws", threw);
    }

    return testing::summary("test_config_io");
}
