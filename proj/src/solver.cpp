#include "bq1d/solver.hpp"

#include <algorithm>
#include <stdexcept>

#include "bq1d/interp.hpp"
#include "bq1d/parallel.hpp"

namespace bq1d {

const char* to_string(Termination t) {
    switch (t) {
        case Termination::reached_t_end: return "reached_t_end";
        case Termination::blowup_flagged: return "blowup_flagged";
        case Termination::broken_ordering: return "broken_ordering";
    }
    return "unknown";
}

void density_gradient(const ParticleState& s, std::vector<double>& out) {
    const std::size_t n = s.size();
    out.resize(n);
    if (n < 2) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    par::parallel_map(n, [&](std::size_t i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        out[i] = (s.rho[hi] - s.rho[lo]) / (s.pos[hi] - s.pos[lo]);
    });
}

namespace {

struct Stage {
    std::vector<double> u;      // d pos / dt
    std::vector<double> dxrho;  // d omega / dt
};

// Right-hand side at a stage state held in (pos, omega); labels and rho are
// those of the base state.
void eval_rhs(const ParticleState& base, const std::vector<double>& pos,
              const std::vector<double>& omega, Stage& k, bool& singular) {
    const std::size_t n = pos.size();
    SuffixQuadrature q = suffix_over_y(pos, omega);
    singular = singular || q.singular;
    k.u.resize(n);
    k.dxrho.resize(n);
    par::parallel_map(n, [&](std::size_t i) {
        const double v = -(pos[i] * q.at_node[i]);
        k.u[i] = v == 0.0 ? 0.0 : v;
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        k.dxrho[i] = (base.rho[hi] - base.rho[lo]) / (pos[hi] - pos[lo]);
    });
}

void axpy_state(const ParticleState& base, double c, const Stage& k,
                std::vector<double>& pos, std::vector<double>& omega) {
    const std::size_t n = base.size();
    pos.resize(n);
    omega.resize(n);
    par::parallel_map(n, [&](std::size_t i) {
        pos[i] = base.pos[i] + c * k.u[i];
        omega[i] = base.omega[i] + c * k.dxrho[i];
    });
}

}  // namespace

ParticleState step(const ParticleState& s, double dt) { return step(s, dt, nullptr); }

ParticleState step(const ParticleState& s, double dt, bool* stage_singular) {
    if (s.broken) throw std::logic_error("step: state is broken");
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

    const std::size_t n = s.size();
    Stage k1, k2, k3, k4;
    std::vector<double> pos_s, omega_s;
    bool singular = false;

    eval_rhs(s, s.pos, s.omega, k1, singular);
    axpy_state(s, 0.5 * dt, k1, pos_s, omega_s);
    eval_rhs(s, pos_s, omega_s, k2, singular);
    axpy_state(s, 0.5 * dt, k2, pos_s, omega_s);
    eval_rhs(s, pos_s, omega_s, k3, singular);
    axpy_state(s, dt, k3, pos_s, omega_s);
    eval_rhs(s, pos_s, omega_s, k4, singular);

    ParticleState out;
    out.t = s.t + dt;
    out.label = s.label;
    out.rho = s.rho;  // conserved, copied bit-exactly
    out.pos.resize(n);
    out.omega.resize(n);
    const double dt6 = dt / 6.0;
    par::parallel_map(n, [&](std::size_t i) {
        out.pos[i] = s.pos[i] + dt6 * (k1.u[i] + 2.0 * (k2.u[i] + k3.u[i]) + k4.u[i]);
        out.omega[i] =
            s.omega[i] + dt6 * (k1.dxrho[i] + 2.0 * (k2.dxrho[i] + k3.dxrho[i]) + k4.dxrho[i]);
    });
    out.broken = !out.ordered();
    if (stage_singular != nullptr && singular) *stage_singular = true;
    return out;
}

StepRecord make_record(const ParticleState& s, const VelocityField& field,
                       const std::vector<double>& tracked_labels, double label_half,
                       bool* unreliable) {
    const std::size_t n = s.size();
    StepRecord rec;
    rec.t = s.t;
    rec.sup_omega = par::max_abs(s.omega);
    rec.sup_dxu = field.sup_velocity_gradient();
    rec.min_gap_ratio = s.min_gap_ratio();

    std::vector<double> dxrho;
    density_gradient(s, dxrho);
    rec.sup_dxrho = par::max_abs(dxrho);

    rec.x_min_omega = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::fabs(s.omega[i]) > 1e-8) {
            rec.x_min_omega = s.pos[i];
            break;
        }
    }

    // L2 norm of omega in position space.
    if (n >= 2) {
        std::vector<double> seg(n - 1);
        par::parallel_map(n - 1, [&](std::size_t i) {
            seg[i] = 0.5 * (s.omega[i] * s.omega[i] + s.omega[i + 1] * s.omega[i + 1]) *
                     (s.pos[i + 1] - s.pos[i]);
        });
        rec.l2_omega = std::sqrt(par::sum(seg));
    }

    const std::size_t half_idx = s.index_of_label(label_half);
    if (half_idx < n) rec.phi_half = s.pos[half_idx];

    if (!tracked_labels.empty()) {
        std::vector<double> omega_sq(n);
        par::parallel_map(n, [&](std::size_t i) { omega_sq[i] = s.omega[i] * s.omega[i]; });
        SuffixQuadrature qsq = suffix_over_y(s.pos, omega_sq);
        SuffixQuadrature qrho = suffix_over_y(s.pos, dxrho);
        if (unreliable != nullptr && (qsq.singular || qrho.singular)) *unreliable = true;

        rec.tracked.resize(tracked_labels.size());
        for (std::size_t j = 0; j < tracked_labels.size(); ++j) {
            const std::size_t idx = s.index_of_label(tracked_labels[j]);
            if (idx >= n) throw std::logic_error("make_record: tracked label is not a particle");
            TrackedSample& ts = rec.tracked[j];
            ts.pos = s.pos[idx];
            ts.omega_cap = field.omega_cap_node(idx);
            ts.rhs_sq = qsq.at_node[idx];
            ts.rhs_rho = qrho.at_node[idx];
            ts.rhs_mid = half_idx < n ? qrho.at_node[idx] - qrho.at_node[half_idx] : 0.0;
        }
    }
    if (unreliable != nullptr && field.unreliable()) *unreliable = true;
    return rec;
}

ParticleState regrid(const ParticleState& s, const SmoothProfile& rho0, double gap_max) {
    const std::size_t n = s.size();
    std::vector<std::size_t> wide;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (s.pos[i + 1] - s.pos[i] > gap_max) wide.push_back(i);
    if (wide.empty()) return s;

    MonotoneCubic pos_of_label(s.label, s.pos);
    MonotoneCubic omega_of_label(s.label, s.omega);

    ParticleState out;
    out.t = s.t;
    out.broken = s.broken;
    out.label.reserve(n + wide.size());
    out.pos.reserve(n + wide.size());
    out.rho.reserve(n + wide.size());
    out.omega.reserve(n + wide.size());
    std::size_t w = 0;
    for (std::size_t i = 0; i < n; ++i) {
        out.label.push_back(s.label[i]);
        out.pos.push_back(s.pos[i]);
        out.rho.push_back(s.rho[i]);
        out.omega.push_back(s.omega[i]);
        if (w < wide.size() && wide[w] == i) {
            const double m = 0.5 * (s.label[i] + s.label[i + 1]);
            out.label.push_back(m);
            out.pos.push_back(pos_of_label(m));
            out.rho.push_back(rho0(m));
            out.omega.push_back(omega_of_label(m));
            ++w;
        }
    }
    if (!out.ordered()) out.broken = true;
    return out;
}

Trajectory advance(const ParticleState& initial, const StepControl& control,
                   const InitialData& data, const std::vector<double>& tracked_labels,
                   std::size_t first_step_index) {
    if (initial.broken) throw std::logic_error("advance: initial state is broken");
    if (!(control.cfl > 0.0 && control.cfl <= 1.0))
        throw std::invalid_argument("advance: cfl must be in (0,1]");
    if (!(control.dt_max > 0.0)) throw std::invalid_argument("advance: dt_max must be positive");

    Trajectory traj;
    traj.tracked_labels = tracked_labels;
    traj.half_tracked = initial.index_of_label(traj.label_half) < initial.size();

    ParticleState state = initial;
    std::size_t step_index = first_step_index;
    for (;;) {
        VelocityField field(state);
        if (field.unreliable()) traj.unreliable = true;
        StepRecord rec =
            make_record(state, field, tracked_labels, traj.label_half, &traj.unreliable);
        traj.records.push_back(rec);
        if (step_index % control.snapshot_every == 0)
            traj.snapshots.push_back({step_index, state});

        const bool flagged = rec.sup_dxu > control.sup_dxu_stop ||
                             rec.min_gap_ratio < control.min_gap_ratio_stop ||
                             traj.unreliable;
        if (flagged) {
            traj.termination = Termination::blowup_flagged;
            traj.flag_time = state.t;
            break;
        }
        if (state.t >= control.t_end) {
            traj.termination = Termination::reached_t_end;
            break;
        }
        if (traj.steps >= control.max_steps)
            throw std::runtime_error("advance: step budget exhausted");

        double dt = std::min(control.dt_max, control.cfl / std::max(1.0, rec.sup_dxu));
        const double remaining = control.t_end - state.t;
        const bool final_step = dt >= remaining;
        if (final_step) dt = remaining;

        ParticleState next = step(state, dt, &traj.unreliable);
        if (final_step) next.t = control.t_end;  // pin against roundoff drift
        if (next.broken) {
            traj.termination = Termination::broken_ordering;
            break;
        }
        state = std::move(next);
        if (control.regrid_gap_max < std::numeric_limits<double>::infinity())
            state = regrid(state, data.rho0, control.regrid_gap_max);
        ++traj.steps;
        ++step_index;
    }

    traj.final_state = std::move(state);
    if (traj.snapshots.empty() || traj.snapshots.back().state.t != traj.final_state.t)
        traj.snapshots.push_back({step_index, traj.final_state});
    return traj;
}

}  // namespace bq1d
