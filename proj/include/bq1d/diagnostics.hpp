#pragma once

// Regularity functionals along a trajectory: the three gauge integrals
//   I_omega = int ||omega||_inf dt,  I_dxu = int ||u'||_inf dt,
//   I_dxrho = int ||d rho/dx||_inf dt
// (each finite iff the solution stays classical), the pointwise log bound
// |u'(x)| <= ||omega||_inf (1 - ln x), the Hardy bound ||Omega||_p <=
// p ||omega||_p, and the evolution identity for Omega along tracked
// characteristics.

#include <cstddef>
#include <string>
#include <vector>

#include "bq1d/profiles.hpp"
#include "bq1d/solver.hpp"

namespace bq1d {

struct DiagnosticSeries {
    std::vector<double> t;
    std::vector<double> sup_omega;
    std::vector<double> sup_dxu;
    std::vector<double> sup_dxrho;
    std::vector<double> l2_omega;
    std::vector<double> min_tracked_phi;
    std::vector<double> i_omega;   // running trapezoid integrals, nondecreasing
    std::vector<double> i_dxu;
    std::vector<double> i_dxrho;
    std::vector<double> residual_x1;  // identity residual at the first tracked label
};

DiagnosticSeries accumulate(const Trajectory& traj);

struct ResidualSample {
    double t = 0.0;
    double value = 0.0;
    bool one_sided = false;  // first/last sample: lower-accuracy difference
};

// Residual of the evolution identity along the tracked characteristic j:
//   d/dt Omega(t, Phi(t)) - [ int_Phi^1 omega^2/y dy + int_Phi^1 (drho/dx)/y dy ].
// Time derivative by 3-point nonuniform differences (one-sided at the ends).
std::vector<ResidualSample> omega_identity_residual(const Trajectory& traj,
                                                    std::size_t tracked_index);

struct HardyPair {
    double lhs = 0.0;  // ||Omega||_p
    double rhs = 0.0;  // p ||omega||_p
};

// Quadrature on a dense uniform grid (profile) or the particle mesh (state).
HardyPair hardy_check(const SmoothProfile& omega, double p, std::size_t grid = 4096);
HardyPair hardy_check(const ParticleState& state, double p);

struct LogBoundResult {
    double worst_ratio = 0.0;  // max |u'(x)| / (||omega||_inf (1 - ln x))
    double at_x = 0.0;
};

// Excludes x < kOriginEps; returns 0 for identically zero vorticity.
LogBoundResult log_bound_check(const ParticleState& state);

// Per-record slack of the bound
//   ||u'||_inf <= ||omega||_inf (1 + e^{I_omega} (-ln x_min)),
// x_min the leftmost position carrying |omega| > 1e-8. Returns the worst
// (most positive) value of lhs - rhs over the records; <= 0 means the bound
// held everywhere.
double bkm_link_worst_excess(const Trajectory& traj);

// Worst defect of the a-priori characteristic bound
//   phi_t(x) >= x^{exp(I_omega(t))}
// over all snapshots and particles, as min over samples of
// phi / x^{exp(I_omega)} (>= 1 - 1e-3 expected; 0^anything handled).
double apriori_characteristic_floor(const Trajectory& traj);

// Fixed, versioned CSV schema (one row per record).
void write_diagnostics_csv(const std::string& path, const DiagnosticSeries& s);

}  // namespace bq1d
