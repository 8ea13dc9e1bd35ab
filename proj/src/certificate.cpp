#include "bq1d/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace bq1d {

namespace {

double derivative_3pt(double tm, double t0, double tp, double fm, double f0, double fp) {
    const double hm = t0 - tm;
    const double hp = tp - t0;
    return (-hp / (hm * (hm + hp))) * fm + ((hp - hm) / (hm * hp)) * f0 +
           (hm / (hp * (hm + hp))) * fp;
}

constexpr double kSaturation = 700.0;

}  // namespace

CertificateTrace track(const Trajectory& traj, int n_max) {
    if (n_max < 1) throw std::invalid_argument("track: n_max must be >= 1");
    if (traj.tracked_labels.size() < static_cast<std::size_t>(n_max))
        throw std::invalid_argument("track: trajectory does not track enough labels");
    if (traj.records.size() < 3) throw std::invalid_argument("track: need >= 3 records");

    const auto& R = traj.records;
    const std::size_t m = R.size();
    CertificateTrace tr;
    tr.n_max = n_max;
    tr.flagged = traj.termination == Termination::blowup_flagged;
    tr.flag_time = traj.flag_time;
    tr.labels.assign(traj.tracked_labels.begin(), traj.tracked_labels.begin() + n_max);
    tr.rho_n.resize(n_max);
    for (int n = 1; n <= n_max; ++n) tr.rho_n[n - 1] = 0.5 + std::ldexp(1.0, -n);
    tr.schedule_t.resize(n_max);
    tr.schedule_t_tilde.resize(n_max);
    double tn = 1.0;
    for (int n = 1; n <= n_max; ++n) {
        tr.schedule_t[n - 1] = tn;
        tr.schedule_t_tilde[n - 1] = tn + std::ldexp(1.0, -(n + 1));
        tn += std::ldexp(1.0, -n);
    }

    tr.t.resize(m);
    tr.phi_half.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        tr.t[k] = R[k].t;
        tr.phi_half[k] = R[k].phi_half;
    }
    tr.phi.assign(n_max, std::vector<double>(m));
    tr.omega_n.assign(n_max, std::vector<double>(m));
    tr.psi.assign(n_max, std::vector<double>(m));
    tr.psi_dd.assign(n_max, std::vector<double>(m));
    tr.rhs_mid.assign(n_max, std::vector<double>(m));
    for (int j = 0; j < n_max; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            const TrackedSample& ts = R[k].tracked[j];
            tr.phi[j][k] = ts.pos;
            tr.omega_n[j][k] = ts.omega_cap;
            tr.psi[j][k] = -std::log(ts.pos);
            tr.rhs_mid[j][k] = ts.rhs_mid;
        }
        // psi'' = d/dt Omega_n: one numerical derivative only, since
        // psi' = Omega_n is exact.
        for (std::size_t k = 0; k < m; ++k) {
            const std::size_t b = k == 0 ? 1 : (k + 1 == m ? m - 2 : k);
            tr.psi_dd[j][k] =
                derivative_3pt(tr.t[b - 1], tr.t[b], tr.t[b + 1], tr.omega_n[j][b - 1],
                               tr.omega_n[j][b], tr.omega_n[j][b + 1]);
        }
    }
    return tr;
}

InequalityReport check_inequalities(const CertificateTrace& tr) {
    const std::size_t m = tr.t.size();
    const double t_cap = tr.flagged ? std::min(5.0, tr.flag_time) : 5.0;
    InequalityReport rep;
    rep.per_n.resize(tr.n_max);
    rep.min_psi_ordering = HUGE_VAL;

    for (int j = 0; j < tr.n_max; ++j) {
        auto& pn = rep.per_n[j];
        pn.n = j + 1;
        pn.min_residual_crude = HUGE_VAL;
        pn.min_residual_chain = HUGE_VAL;
        pn.min_omega_n = HUGE_VAL;
        for (std::size_t k = 0; k < m; ++k) {
            const double t = tr.t[k];
            if (t >= t_cap) break;
            pn.min_omega_n = std::min(pn.min_omega_n, tr.omega_n[j][k]);
            if (j > 0) {
                rep.min_psi_ordering =
                    std::min(rep.min_psi_ordering, tr.psi[j][k] - tr.psi[j - 1][k]);
            }
            const bool interior = k > 0 && k + 1 < m;
            if (!interior) continue;  // one-sided psi'' is lower accuracy
            if (j > 0 && tr.phi[j - 1][k] < kPhiReliabilityFloor) {
                ++pn.warned;
                continue;
            }
            // (A): psi_n'' >= rhs_mid - 4
            pn.min_residual_crude =
                std::min(pn.min_residual_crude, tr.psi_dd[j][k] - (tr.rhs_mid[j][k] - 4.0));
            // (B): psi_n'' >= 2^-n e^{psi_{n-1}} - 4, n >= 2
            if (j > 0) {
                const double expo = tr.psi[j - 1][k];
                const double rhs =
                    expo > kSaturation ? HUGE_VAL
                                       : std::ldexp(1.0, -(j + 1)) * std::exp(expo) - 4.0;
                pn.min_residual_chain = std::min(pn.min_residual_chain, tr.psi_dd[j][k] - rhs);
            }
        }
        if (j == 0) pn.min_residual_chain = std::numeric_limits<double>::quiet_NaN();
    }

    rep.omega1_at_0 = tr.omega_n[0][0];
    rep.min_omega1_to_1 = HUGE_VAL;
    const double one_cap = std::min(1.0, t_cap);
    double psi1_end = tr.psi[0][0];
    for (std::size_t k = 0; k < m && tr.t[k] <= one_cap; ++k) {
        rep.min_omega1_to_1 = std::min(rep.min_omega1_to_1, tr.omega_n[0][k]);
        psi1_end = tr.psi[0][k];
    }
    rep.psi1_end = psi1_end;
    rep.schedule_reached = !tr.flagged || tr.flag_time >= 1.0;
    rep.psi1_at_1 = std::numeric_limits<double>::quiet_NaN();
    if (rep.schedule_reached) {
        for (std::size_t k = 1; k < m; ++k) {
            if (tr.t[k] >= 1.0) {
                const double w = (1.0 - tr.t[k - 1]) / (tr.t[k] - tr.t[k - 1]);
                rep.psi1_at_1 = tr.psi[0][k - 1] + w * (tr.psi[0][k] - tr.psi[0][k - 1]);
                break;
            }
        }
    }
    return rep;
}

std::vector<RecursionState> recursion_iterate(double a1, int n_max) {
    std::vector<RecursionState> out;
    out.reserve(static_cast<std::size_t>(std::max(n_max, 0)));
    RecursionState st{1, std::min(a1, kSaturation), a1 > kSaturation};
    if (n_max >= 1) out.push_back(st);
    for (int n = 2; n <= n_max; ++n) {
        if (st.saturated) {
            // e^{a-3n} dominates everything representable; stays saturated
            st = {n, kSaturation, true};
        } else {
            const double z = st.value - 3.0 * static_cast<double>(n);
            if (z > kSaturation) {
                st = {n, kSaturation, true};
            } else {
                const double v = std::expm1(z) + st.value;
                st = v > kSaturation ? RecursionState{n, kSaturation, true}
                                     : RecursionState{n, v, false};
            }
        }
        out.push_back(st);
    }
    return out;
}

BlowupBoundReport blowup_bound_report(const CertificateTrace& tr) {
    BlowupBoundReport rep;
    rep.flagged = tr.flagged;
    rep.flag_time = tr.flag_time;
    const std::size_t m = tr.t.size();
    const double t_last = tr.t.back();

    rep.a_n.resize(tr.n_max);
    for (int j = 0; j < tr.n_max; ++j) {
        auto& a = rep.a_n[j];
        a.n = j + 1;
        a.t_n = tr.schedule_t[j];
        a.capped = a.t_n > t_last;
        a.t_used = a.capped ? t_last : a.t_n;
        if (a.capped) {
            a.a_n = tr.psi[j].back();
        } else {
            a.a_n = tr.psi[j].back();
            for (std::size_t k = 1; k < m; ++k) {
                if (tr.t[k] >= a.t_n) {
                    const double w = (a.t_n - tr.t[k - 1]) / (tr.t[k] - tr.t[k - 1]);
                    a.a_n = tr.psi[j][k - 1] + w * (tr.psi[j][k] - tr.psi[j][k - 1]);
                    break;
                }
            }
        }
    }
    // Least-squares slope of a_n against n.
    const std::size_t cnt = rep.a_n.size();
    if (cnt >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& a : rep.a_n) {
            sx += a.n;
            sy += a.a_n;
            sxx += static_cast<double>(a.n) * a.n;
            sxy += a.n * a.a_n;
        }
        const double d = cnt * sxx - sx * sx;
        rep.growth_slope = d != 0.0 ? (cnt * sxy - sx * sy) / d : 0.0;
    }
    double mn = HUGE_VAL;
    for (int j = 0; j < tr.n_max; ++j) mn = std::min(mn, tr.phi[j].back());
    rep.min_tracked_phi_end = mn;
    return rep;
}

void write_certificate_json(const std::string& path, const CertificateTrace& tr,
                            const InequalityReport& ineq, const BlowupBoundReport& bound) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["schema"] = "bq1d-certificate-v1";
    doc["n_max"] = tr.n_max;
    doc["flagged"] = tr.flagged;
    if (tr.flagged) doc["flag_time"] = tr.flag_time;
    doc["theoretical_bound"] = bound.theoretical_bound;
    doc["schedule_t"] = tr.schedule_t;
    doc["schedule_t_tilde"] = tr.schedule_t_tilde;
    doc["labels"] = tr.labels;
    doc["rho_n"] = tr.rho_n;
    doc["t"] = tr.t;
    doc["phi_half"] = tr.phi_half;
    json per_n = json::array();
    for (int j = 0; j < tr.n_max; ++j) {
        json e;
        e["n"] = j + 1;
        e["phi"] = tr.phi[j];
        e["omega_n"] = tr.omega_n[j];
        e["psi"] = tr.psi[j];
        e["min_residual_crude"] = ineq.per_n[j].min_residual_crude;
        e["min_residual_chain"] = ineq.per_n[j].min_residual_chain;
        e["min_omega_n"] = ineq.per_n[j].min_omega_n;
        e["warned_samples"] = ineq.per_n[j].warned;
        per_n.push_back(std::move(e));
    }
    doc["per_n"] = std::move(per_n);
    json iq;
    iq["omega1_at_0"] = ineq.omega1_at_0;
    iq["min_omega1_to_1"] = ineq.min_omega1_to_1;
    iq["psi1_end"] = ineq.psi1_end;
    iq["schedule_reached"] = ineq.schedule_reached;
    if (ineq.schedule_reached) iq["psi1_at_1"] = ineq.psi1_at_1;
    iq["min_psi_ordering"] = ineq.min_psi_ordering;
    doc["inequalities"] = std::move(iq);
    json an = json::array();
    for (const auto& a : bound.a_n) {
        json e;
        e["n"] = a.n;
        e["t_n"] = a.t_n;
        e["t_used"] = a.t_used;
        e["capped"] = a.capped;
        e["a_n"] = a.a_n;
        an.push_back(std::move(e));
    }
    doc["a_n_measured"] = std::move(an);
    doc["a_n_growth_slope"] = bound.growth_slope;
    doc["min_tracked_phi_end"] = bound.min_tracked_phi_end;
    json rec = json::array();
    const double a1 = bound.a_n.empty() ? 0.0 : bound.a_n.front().a_n;
    for (const auto& st : recursion_iterate(a1, tr.n_max)) {
        json e;
        e["n"] = st.n;
        e["value"] = st.value;
        e["saturated"] = st.saturated;
        e["holds_3n_plus_6"] = st.holds_bound();
        rec.push_back(std::move(e));
    }
    doc["recursion_from_measured_a1"] = std::move(rec);

    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_certificate_json: cannot open " + path);
    f << doc.dump(1, '\t') << '\n';
    if (!f) throw std::runtime_error("write_certificate_json: write failed for " + path);
}

}  // namespace bq1d
