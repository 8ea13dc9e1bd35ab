#include "bq1d/biotsavart.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>

#include "bq1d/parallel.hpp"

namespace bq1d {

SuffixQuadrature suffix_over_y(std::span<const double> pos, std::span<const double> v) {
    const std::size_t n = pos.size();
    SuffixQuadrature q;
    q.integrand.resize(n);
    q.at_node.resize(n);
    if (n == 0) return q;

    std::atomic<bool> singular{false};
    par::parallel_map(n, [&](std::size_t i) {
        if (pos[i] >= kOriginEps) {
            q.integrand[i] = v[i] / pos[i];
        } else if (v[i] == 0.0) {
            // removable singularity: v/y -> v'(0)
            q.integrand[i] =
                (i + 1 < n) ? (v[i + 1] - v[i]) / (pos[i + 1] - pos[i]) : 0.0;
        } else {
            q.integrand[i] = 0.0;
            singular.store(true, std::memory_order_relaxed);
        }
    });
    q.singular = singular.load();

    if (n == 1) {
        q.at_node[0] = 0.0;
        return q;
    }
    std::vector<double> seg(n - 1);
    par::parallel_map(n - 1, [&](std::size_t i) {
        seg[i] = 0.5 * (q.integrand[i] + q.integrand[i + 1]) * (pos[i + 1] - pos[i]);
    });
    par::suffix_sum(seg, q.at_node);
    return q;
}

VelocityField::VelocityField(const ParticleState& state) : state_(&state) {
    omega_cap_ = suffix_over_y(state.pos, state.omega);
    unreliable_ = omega_cap_.singular;
}

double VelocityField::omega_interp(std::size_t cell, double x) const {
    const auto& s = *state_;
    const double t = (x - s.pos[cell]) / (s.pos[cell + 1] - s.pos[cell]);
    return s.omega[cell] + t * (s.omega[cell + 1] - s.omega[cell]);
}

double VelocityField::omega_cap(double x) const {
    const auto& pos = state_->pos;
    assert(!pos.empty() && x >= pos.front());
    if (x >= pos.back()) return 0.0;
    const auto it = std::upper_bound(pos.begin(), pos.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - pos.begin()) - 1;
    if (pos[k] == x) return omega_cap_.at_node[k];
    const double fx =
        x >= kOriginEps ? omega_interp(k, x) / x : omega_cap_.integrand[k];
    return omega_cap_.at_node[k + 1] +
           0.5 * (fx + omega_cap_.integrand[k + 1]) * (pos[k + 1] - x);
}

double VelocityField::velocity_node(std::size_t i) const {
    const double v = -(state_->pos[i] * omega_cap_.at_node[i]);
    return v == 0.0 ? 0.0 : v;  // normalize -0
}

double VelocityField::velocity(double x) const {
    if (x == 0.0) return 0.0;
    const double v = -(x * omega_cap(x));
    return v == 0.0 ? 0.0 : v;
}

double VelocityField::velocity_gradient_node(std::size_t i) const {
    return state_->omega[i] - omega_cap_.at_node[i];
}

double VelocityField::velocity_gradient(double x) const {
    const auto& pos = state_->pos;
    assert(x > 0.0 || pos.front() == 0.0);
    if (x >= pos.back()) return state_->omega.back();
    const auto it = std::upper_bound(pos.begin(), pos.end(), x);
    const std::size_t k = static_cast<std::size_t>(it - pos.begin()) - 1;
    if (pos[k] == x) return velocity_gradient_node(k);
    return omega_interp(k, x) - omega_cap(x);
}

double VelocityField::sup_velocity_gradient() const {
    const auto& s = *state_;
    const std::size_t n = s.size();
    if (n == 0) return 0.0;
    std::vector<double> vals(2 * n - 1);
    par::parallel_map(n, [&](std::size_t i) {
        vals[2 * i] = std::fabs(velocity_gradient_node(i));
        if (i + 1 < n) {
            // cell midpoint, evaluated directly from the node suffix value
            const double m = 0.5 * (s.pos[i] + s.pos[i + 1]);
            const double fm =
                m >= kOriginEps ? omega_interp(i, m) / m : omega_cap_.integrand[i];
            const double oc = omega_cap_.at_node[i + 1] +
                              0.5 * (fm + omega_cap_.integrand[i + 1]) * (s.pos[i + 1] - m);
            vals[2 * i + 1] = std::fabs(omega_interp(i, m) - oc);
        }
    });
    return par::max(vals);
}

}  // namespace bq1d
