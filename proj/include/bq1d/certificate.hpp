#pragma once

// The blow-up certificate: tracks the characteristic family Phi_n(t)
// originating from x_n (rho0(x_n) = 1/2 + 2^-n), monitors
//   Omega_n(t) = Omega(t, Phi_n(t)),  psi_n(t) = -ln Phi_n(t),
//   psi_n' = Omega_n (exact identity), psi_n'' by differencing Omega_n,
// and verifies the inequality chain
//   (A)  psi_n''(t)  >= int_{Phi_n}^{phi_t(1/2)} (drho/dx)/y dy - 4
//   (B)  psi_n''(t)  >= 2^-n e^{psi_{n-1}(t)} - 4          (n >= 2)
// plus the discrete recursion a_n >= e^{a_{n-1} - 3n} - 1 + a_{n-1} on the
// schedule t_1 = 1, t_{n+1} = t_n + 2^-n (limit 2). All checks are
// one-sided residuals with stated tolerances; classical-window capping is
// explicit everywhere since the computed solution may break down before
// the schedule is reached.

#include <cstddef>
#include <string>
#include <vector>

#include "bq1d/solver.hpp"

namespace bq1d {

struct CertificateTrace {
    int n_max = 0;
    std::vector<double> labels;  // x_1 > x_2 > ... > x_{n_max}
    std::vector<double> rho_n;   // rho0(x_n) = 1/2 + 2^-n
    std::vector<double> schedule_t;        // t_n = 1, 1.5, 1.75, ...
    std::vector<double> schedule_t_tilde;  // t_n + 2^-(n+1)
    double flag_time = 0.0;  // NaN when the run reached t_end unflagged
    bool flagged = false;

    std::vector<double> t;  // record times
    // per n (outer index n-1), per record time (inner):
    std::vector<std::vector<double>> phi;
    std::vector<std::vector<double>> omega_n;
    std::vector<std::vector<double>> psi;
    std::vector<std::vector<double>> psi_dd;     // d/dt Omega_n by 3-pt differences
    std::vector<std::vector<double>> rhs_mid;    // int_{Phi_n}^{phi_half} (drho/dx)/y dy
    std::vector<double> phi_half;                // position of the label-1/2 characteristic
};

// Requires traj.tracked_labels to carry at least n_max labels in
// certificate order (x_1 first). Throws otherwise.
CertificateTrace track(const Trajectory& traj, int n_max);

struct InequalityReport {
    // Residual minima are over interior records with t < min(5, flag time)
    // and Phi_{n-1} above the quadrature reliability floor; `warned` counts
    // samples excluded by the floor.
    struct PerN {
        int n = 0;
        double min_residual_crude = 0.0;   // (A), defined for all n
        double min_residual_chain = 0.0;   // (B), defined for n >= 2 (0 for n=1)
        double min_omega_n = 0.0;          // over t < min(5, flag)
        std::size_t warned = 0;
    };
    std::vector<PerN> per_n;
    double min_omega1_to_1 = 0.0;  // min Omega_1 over recorded t <= min(1, flag)
    double omega1_at_0 = 0.0;
    double psi1_end = 0.0;    // psi_1 at the last classical record <= 1
    double psi1_at_1 = 0.0;   // interpolated at t = 1 when reached, else NaN
    bool schedule_reached = false;  // flag time (if any) exceeded t_1 = 1
    double min_psi_ordering = 0.0;  // min over records/n of psi_n - psi_{n-1}
};

// Quadrature reliability floor for Phi_n, frozen from refinement studies.
inline constexpr double kPhiReliabilityFloor = 1e-11;

InequalityReport check_inequalities(const CertificateTrace& trace);

struct RecursionState {
    int n = 0;
    double value = 0.0;   // min(a_n, 700); meaningless when saturated
    bool saturated = false;  // treated as +infinity in >= comparisons
    bool holds_bound() const { return saturated || value >= 3.0 * n + 6.0; }
};

// Iterates a_n = e^{a_{n-1} - 3n} - 1 + a_{n-1} in saturating log-domain
// arithmetic (threshold 700).
std::vector<RecursionState> recursion_iterate(double a1, int n_max);

struct BlowupBoundReport {
    double flag_time = 0.0;
    bool flagged = false;
    double theoretical_bound = 2.0;  // limit of the schedule
    struct Measured {
        int n = 0;
        double t_n = 0.0;       // schedule time
        double t_used = 0.0;    // min(t_n, last classical record time)
        bool capped = false;    // t_n was past the classical window
        double a_n = 0.0;       // psi_n(t_used)
    };
    std::vector<Measured> a_n;
    double growth_slope = 0.0;  // least-squares slope of a_n over n
    double min_tracked_phi_end = 0.0;
};

BlowupBoundReport blowup_bound_report(const CertificateTrace& trace);

// Versioned JSON report: per-n series, inequality minima, recursion table
// seeded by the measured a_1, schedule constants.
void write_certificate_json(const std::string& path, const CertificateTrace& trace,
                            const InequalityReport& ineq, const BlowupBoundReport& bound);

}  // namespace bq1d
