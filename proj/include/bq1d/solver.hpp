#pragma once

// Time integration of the coupled characteristic system
//   d(phi_i)/dt   = u(t, phi_i) = -phi_i Omega(phi_i)
//   d(omega_i)/dt = (d rho/dx)(phi_i)
// with rho conserved per particle and (d rho/dx) taken as the centered
// label-wise difference over current positions. Classical RK4 with the
// velocity field rebuilt from the stage state at every stage; adaptive dt
// keyed to sup|u'|, which is also the blow-up gauge.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "bq1d/biotsavart.hpp"
#include "bq1d/particles.hpp"

namespace bq1d {

struct StepControl {
    double dt_max = 1e-3;
    double cfl = 0.4;  // in (0,1]; dt = min(dt_max, cfl / max(1, sup|u'|))
    double t_end = 1.0;
    double sup_dxu_stop = 1e6;         // blow-up flag: sup|u'| above this
    double min_gap_ratio_stop = 1e-10;  // blow-up flag: gap compression below this
    std::size_t snapshot_every = 256;   // full-state snapshot cadence (steps)
    double regrid_gap_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 2'000'000;
};

enum class Termination { reached_t_end, blowup_flagged, broken_ordering };

const char* to_string(Termination t);

// Per tracked label, quantities entering the certificate inequalities:
// position Phi, Omega(Phi), and the suffix quadratures
//   rhs_sq  = integral_Phi^1 omega^2/y dy
//   rhs_rho = integral_Phi^1 (d rho/dx)/y dy
//   rhs_mid = integral_Phi^{phi_half} (d rho/dx)/y dy
struct TrackedSample {
    double pos = 0.0;
    double omega_cap = 0.0;
    double rhs_sq = 0.0;
    double rhs_rho = 0.0;
    double rhs_mid = 0.0;
};

struct StepRecord {
    double t = 0.0;
    double sup_omega = 0.0;
    double sup_dxu = 0.0;
    double sup_dxrho = 0.0;
    double l2_omega = 0.0;
    double min_gap_ratio = 1.0;
    double x_min_omega = 1.0;  // leftmost position with |omega| > 1e-8
    double phi_half = std::numeric_limits<double>::quiet_NaN();
    std::vector<TrackedSample> tracked;
};

struct Snapshot {
    std::size_t step = 0;
    ParticleState state;
};

struct Trajectory {
    std::vector<double> tracked_labels;  // certificate order: x_1 > x_2 > ...
    double label_half = 0.5;
    bool half_tracked = false;
    std::vector<StepRecord> records;   // one per accepted step, t=0 included
    std::vector<Snapshot> snapshots;   // cadence + final state
    ParticleState final_state;
    Termination termination = Termination::reached_t_end;
    bool unreliable = false;  // near-origin quadrature of nonzero omega seen
    double flag_time = std::numeric_limits<double>::quiet_NaN();
    std::size_t steps = 0;
};

// Centered label-wise density gradient over current positions (one-sided at
// the ends). This is the vorticity source; it blows up exactly when
// characteristics compress.
void density_gradient(const ParticleState& s, std::vector<double>& out);

// One classical RK4 step of size dt. Returns the advanced state; sets
// `broken` if particle ordering is violated afterwards. If stage_singular
// is given, it is set when any stage quadrature hit a near-origin particle
// with nonzero vorticity.
ParticleState step(const ParticleState& s, double dt);
ParticleState step(const ParticleState& s, double dt, bool* stage_singular);

// Observation of the current state (the per-step record).
StepRecord make_record(const ParticleState& s, const VelocityField& field,
                       const std::vector<double>& tracked_labels, double label_half,
                       bool* unreliable = nullptr);

// Inserts particles at label-space midpoints of cells whose position gap
// exceeds gap_max: rho from rho0 at the new label (exact), position and
// omega by monotone cubic interpolation in label space. No triggers, no
// change.
ParticleState regrid(const ParticleState& s, const SmoothProfile& rho0, double gap_max);

// Adaptive-dt advance with per-step records and cadenced snapshots.
// `data` supplies rho0 for regrid insertions.
Trajectory advance(const ParticleState& initial, const StepControl& control,
                   const InitialData& data, const std::vector<double>& tracked_labels = {},
                   std::size_t first_step_index = 0);

}  // namespace bq1d
