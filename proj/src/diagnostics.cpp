#include "bq1d/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "bq1d/biotsavart.hpp"
#include "bq1d/parallel.hpp"

namespace bq1d {

namespace {

double derivative_3pt(double tm, double t0, double tp, double fm, double f0, double fp) {
    const double hm = t0 - tm;
    const double hp = tp - t0;
    return (-hp / (hm * (hm + hp))) * fm + ((hp - hm) / (hm * hp)) * f0 +
           (hm / (hp * (hm + hp))) * fp;
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

DiagnosticSeries accumulate(const Trajectory& traj) {
    const auto& R = traj.records;
    if (R.empty()) throw std::invalid_argument("accumulate: empty trajectory");
    DiagnosticSeries s;
    const std::size_t n = R.size();
    s.t.resize(n);
    s.sup_omega.resize(n);
    s.sup_dxu.resize(n);
    s.sup_dxrho.resize(n);
    s.l2_omega.resize(n);
    s.min_tracked_phi.resize(n);
    s.i_omega.assign(n, 0.0);
    s.i_dxu.assign(n, 0.0);
    s.i_dxrho.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        s.t[k] = R[k].t;
        s.sup_omega[k] = R[k].sup_omega;
        s.sup_dxu[k] = R[k].sup_dxu;
        s.sup_dxrho[k] = R[k].sup_dxrho;
        s.l2_omega[k] = R[k].l2_omega;
        if (!R[k].tracked.empty()) {
            double m = HUGE_VAL;
            for (const auto& ts : R[k].tracked) m = std::min(m, ts.pos);
            s.min_tracked_phi[k] = m;
        } else {
            s.min_tracked_phi[k] = 0.0;  // nothing tracked; endpoints only
        }
        if (k > 0) {
            const double dt = R[k].t - R[k - 1].t;
            s.i_omega[k] = s.i_omega[k - 1] + 0.5 * dt * (R[k].sup_omega + R[k - 1].sup_omega);
            s.i_dxu[k] = s.i_dxu[k - 1] + 0.5 * dt * (R[k].sup_dxu + R[k - 1].sup_dxu);
            s.i_dxrho[k] = s.i_dxrho[k - 1] + 0.5 * dt * (R[k].sup_dxrho + R[k - 1].sup_dxrho);
        }
    }
    if (!R.front().tracked.empty()) {
        const auto res = omega_identity_residual(traj, 0);
        s.residual_x1.resize(n);
        for (std::size_t k = 0; k < n; ++k) s.residual_x1[k] = res[k].value;
    } else {
        s.residual_x1.assign(n, 0.0);
    }
    return s;
}

std::vector<ResidualSample> omega_identity_residual(const Trajectory& traj,
                                                    std::size_t tracked_index) {
    const auto& R = traj.records;
    if (R.size() < 3)
        throw std::invalid_argument("omega_identity_residual: need at least 3 records");
    if (tracked_index >= traj.tracked_labels.size())
        throw std::invalid_argument("omega_identity_residual: tracked index out of range");

    const std::size_t n = R.size();
    auto omega_cap_at = [&](std::size_t k) { return R[k].tracked[tracked_index].omega_cap; };
    auto rhs_at = [&](std::size_t k) {
        return R[k].tracked[tracked_index].rhs_sq + R[k].tracked[tracked_index].rhs_rho;
    };

    std::vector<ResidualSample> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t m = k == 0 ? 0 : (k + 1 == n ? n - 3 : k - 1);
        const double d = derivative_3pt(R[m].t, R[m + 1].t, R[m + 2].t, omega_cap_at(m),
                                        omega_cap_at(m + 1), omega_cap_at(m + 2));
        // 3-point derivative evaluated at the middle node; at the ends we
        // re-expand the same stencil about the end node.
        double dd = d;
        if (k == 0 || k + 1 == n) {
            const double t0 = R[k].t;
            const double ta = R[m].t, tb = R[m + 1].t, tc = R[m + 2].t;
            const double fa = omega_cap_at(m), fb = omega_cap_at(m + 1), fc = omega_cap_at(m + 2);
            // quadratic through the three samples, differentiated at t0
            const double la = (2.0 * t0 - tb - tc) / ((ta - tb) * (ta - tc));
            const double lb = (2.0 * t0 - ta - tc) / ((tb - ta) * (tb - tc));
            const double lc = (2.0 * t0 - ta - tb) / ((tc - ta) * (tc - tb));
            dd = la * fa + lb * fb + lc * fc;
        }
        out[k] = {R[k].t, dd - rhs_at(k), k == 0 || k + 1 == n};
    }
    return out;
}

namespace {

double lp_norm_grid(std::span<const double> x, std::span<const double> v, double p) {
    // trapezoid of |v|^p over x, then 1/p power
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = std::pow(std::fabs(v[i]), p);
        const double b = std::pow(std::fabs(v[i + 1]), p);
        acc += 0.5 * (a + b) * (x[i + 1] - x[i]);
    }
    return std::pow(acc, 1.0 / p);
}

}  // namespace

HardyPair hardy_check(const SmoothProfile& omega, double p, std::size_t grid) {
    if (!(p >= 1.0)) throw std::invalid_argument("hardy_check: p must be >= 1");
    std::vector<double> x(grid + 1), om(grid + 1);
    for (std::size_t j = 0; j <= grid; ++j) {
        x[j] = static_cast<double>(j) / static_cast<double>(grid);
        om[j] = omega(x[j]);
    }
    SuffixQuadrature q = suffix_over_y(x, om);
    return {lp_norm_grid(x, q.at_node, p), p * lp_norm_grid(x, om, p)};
}

HardyPair hardy_check(const ParticleState& state, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("hardy_check: p must be >= 1");
    SuffixQuadrature q = suffix_over_y(state.pos, state.omega);
    return {lp_norm_grid(state.pos, q.at_node, p), p * lp_norm_grid(state.pos, state.omega, p)};
}

LogBoundResult log_bound_check(const ParticleState& state) {
    const double sup = par::max_abs(state.omega);
    if (sup == 0.0) return {0.0, 0.0};
    VelocityField field(state);
    LogBoundResult best;
    const std::size_t n = state.size();
    auto consider = [&](double x, double grad) {
        if (x < kOriginEps || x > 1.0) return;
        const double bound = sup * (1.0 - std::log(x));
        const double r = std::fabs(grad) / bound;
        if (r > best.worst_ratio) best = {r, x};
    };
    for (std::size_t i = 0; i < n; ++i) {
        consider(state.pos[i], field.velocity_gradient_node(i));
        if (i + 1 < n) {
            const double m = 0.5 * (state.pos[i] + state.pos[i + 1]);
            if (m >= kOriginEps) consider(m, field.velocity_gradient(m));
        }
    }
    return best;
}

double bkm_link_worst_excess(const Trajectory& traj) {
    double worst = -HUGE_VAL;
    double i_omega = 0.0;
    const auto& R = traj.records;
    for (std::size_t k = 0; k < R.size(); ++k) {
        if (k > 0)
            i_omega += 0.5 * (R[k].t - R[k - 1].t) * (R[k].sup_omega + R[k - 1].sup_omega);
        const double neg_log = R[k].x_min_omega > 0.0 ? -std::log(R[k].x_min_omega) : 700.0;
        const double rhs = R[k].sup_omega * (1.0 + std::exp(std::min(i_omega, 700.0)) * neg_log);
        worst = std::max(worst, R[k].sup_dxu - rhs);
    }
    return worst;
}

double apriori_characteristic_floor(const Trajectory& traj) {
    // I_omega at snapshot times, reconstructed from the records.
    const auto& R = traj.records;
    double floor_ratio = HUGE_VAL;
    for (const auto& snapshot : traj.snapshots) {
        const ParticleState& snap = snapshot.state;
        double i_omega = 0.0;
        for (std::size_t k = 1; k < R.size() && R[k].t <= snap.t; ++k)
            i_omega += 0.5 * (R[k].t - R[k - 1].t) * (R[k].sup_omega + R[k - 1].sup_omega);
        const double e = std::exp(std::min(i_omega, 700.0));
        for (std::size_t i = 0; i < snap.size(); ++i) {
            const double x = snap.label[i];
            if (x <= 0.0 || x >= 1.0) continue;
            const double lower = std::pow(x, e);
            if (lower == 0.0) continue;  // below double resolution, no content
            floor_ratio = std::min(floor_ratio, snap.pos[i] / lower);
        }
    }
    return floor_ratio;
}

void write_diagnostics_csv(const std::string& path, const DiagnosticSeries& s) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_diagnostics_csv: cannot open " + path);
    f << "# bq1d-diagnostics-v1\n";
    f << "t,sup_omega,sup_dxu,sup_dxrho,I_omega,I_dxu,I_dxrho,min_tracked_phi,residual_x1\n";
    for (std::size_t k = 0; k < s.t.size(); ++k) {
        f << format_double(s.t[k]) << ',' << format_double(s.sup_omega[k]) << ','
          << format_double(s.sup_dxu[k]) << ',' << format_double(s.sup_dxrho[k]) << ','
          << format_double(s.i_omega[k]) << ',' << format_double(s.i_dxu[k]) << ','
          << format_double(s.i_dxrho[k]) << ',' << format_double(s.min_tracked_phi[k]) << ','
          << format_double(s.residual_x1[k]) << '\n';
    }
    if (!f) throw std::runtime_error("write_diagnostics_csv: write failed for " + path);
}

}  // namespace bq1d
