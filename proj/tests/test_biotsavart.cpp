// Model Biot-Savart law against closed-form oracles, quadrature
// convergence order, sign/monotonicity structure, additivity, and the
// near-origin unreliability flag.

#include <cmath>
#include <vector>

#include "bq1d/biotsavart.hpp"
#include "harness.hpp"

using namespace bq1d;
using testing::record;
using testing::section;

namespace {

// test field 1: omega = y(1-y); Omega(x) = (1-x)^2/2 (integrand linear)
double omega_a(double y) { return y * (1.0 - y); }
double omega_cap_a(double x) { return 0.5 * (1.0 - x) * (1.0 - x); }

// test field 2: omega = y(1-y)^2; Omega(x) = (1-x)^3/3 (integrand curved,
// exposes the trapezoid's second-order error)
double omega_b(double y) { return y * (1.0 - y) * (1.0 - y); }
double omega_cap_b(double x) { return (1.0 - x) * (1.0 - x) * (1.0 - x) / 3.0; }

ParticleState uniform_state(std::size_t n, double (*f)(double)) {
    ParticleState s;
    s.label.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        s.label[i] = static_cast<double>(i) / static_cast<double>(n);
    s.pos = s.label;
    s.rho.assign(n + 1, 0.0);
    s.omega.resize(n + 1);
    for (std::size_t i = 0; i <= n; ++i) s.omega[i] = f(s.label[i]);
    return s;
}

double lsq_slope(const std::vector<double>& log_n, const std::vector<double>& log_e) {
    const std::size_t m = log_n.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sx += log_n[i];
        sy += log_e[i];
        sxx += log_n[i] * log_n[i];
        sxy += log_n[i] * log_e[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

int main() {
    section("zero field");
    {
        ParticleState s = uniform_state(64, [](double) { return 0.0; });
        VelocityField f(s);
        bool all_zero = true;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (f.omega_cap_node(i) != 0.0 || f.velocity_node(i) != 0.0) all_zero = false;
        record("omega_cap and velocity vanish", all_zero);
        record("sup velocity gradient is 0", f.sup_velocity_gradient() == 0.0);
        record("not unreliable", !f.unreliable());
    }

    section("closed forms for omega = y(1-y) at x = 1/2");
    {
        ParticleState s = uniform_state(2000, omega_a);
        VelocityField f(s);
        record("omega_cap(1/2) = 0.125",
               testing::close_abs(f.omega_cap(0.5), 0.125, 1e-12),
               testing::qoi(f.omega_cap(0.5), 0.125));
        record("velocity(1/2) = -0.0625",
               testing::close_abs(f.velocity(0.5), -0.0625, 1e-12),
               testing::qoi(f.velocity(0.5), -0.0625));
        record("velocity_gradient(1/2) = 0.125",
               testing::close_abs(f.velocity_gradient(0.5), 0.125, 1e-12),
               testing::qoi(f.velocity_gradient(0.5), 0.125));
        record("velocity(0) == 0 exactly", f.velocity(0.0) == 0.0);
        record("velocity(1) == 0 exactly", f.velocity(1.0) == 0.0);
        const double sup = f.sup_velocity_gradient();
        record("sup|u'| matches the scanned closed-form max 1/2",
               testing::close_abs(sup, 0.5, 1e-4), testing::qoi(sup, 0.5));
    }

    section("quadrature convergence order (curved integrand)");
    {
        std::vector<double> log_n, log_cap, log_vel, log_grad;
        for (std::size_t n : {250, 500, 1000, 2000}) {
            ParticleState s = uniform_state(n, omega_b);
            VelocityField f(s);
            const double e_cap = std::fabs(f.omega_cap(0.5) - omega_cap_b(0.5));
            const double e_vel = std::fabs(f.velocity(0.5) - (-0.5 * omega_cap_b(0.5)));
            // velocity gradient error dominated by interpolation; sample
            // off-node points of the y(1-y) field
            ParticleState sa = uniform_state(n, omega_a);
            VelocityField fa(sa);
            double e_grad = 0.0;
            for (int k = 0; k < 64; ++k) {
                const double x = 0.1037 + 0.8 * k / 64.0 + 0.3 / (static_cast<double>(n) * 7.1);
                const double exact = omega_a(x) - omega_cap_a(x);
                e_grad += std::fabs(fa.velocity_gradient(x) - exact);
            }
            e_grad /= 64.0;
            log_n.push_back(std::log2(static_cast<double>(n)));
            log_cap.push_back(std::log2(e_cap));
            log_vel.push_back(std::log2(e_vel));
            log_grad.push_back(std::log2(e_grad));
        }
        const double p_cap = -lsq_slope(log_n, log_cap);
        const double p_vel = -lsq_slope(log_n, log_vel);
        const double p_grad = -lsq_slope(log_n, log_grad);
        record("omega_cap order in [1.8, 2.2]", p_cap >= 1.8 && p_cap <= 2.2,
               testing::qoi(p_cap, 2.0));
        record("velocity order in [1.8, 2.2]", p_vel >= 1.8 && p_vel <= 2.2,
               testing::qoi(p_vel, 2.0));
        record("velocity_gradient order in [1.8, 2.2]", p_grad >= 1.8 && p_grad <= 2.2,
               testing::qoi(p_grad, 2.0));
    }

    section("self-convergence of sup|u'| under refinement");
    {
        ParticleState s1 = uniform_state(1000, omega_b);
        ParticleState s2 = uniform_state(2000, omega_b);
        const double a = VelocityField(s1).sup_velocity_gradient();
        const double b = VelocityField(s2).sup_velocity_gradient();
        record("N and 2N agree to O(N^-2)", std::fabs(a - b) <= 1e-5,
               testing::qoi(std::fabs(a - b), 1e-5));
    }

    section("structure: nonnegative omega");
    {
        InitialData data = InitialData::blowup(200.0);
        ParticleState s = discretize(data, 2000, Layout::graded);
        VelocityField f(s);
        bool noninc = true, u_nonpos = true;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            if (f.omega_cap_node(i + 1) > f.omega_cap_node(i) + 1e-15) noninc = false;
            if (f.velocity_node(i) > 0.0) u_nonpos = false;
        }
        record("Omega nonincreasing", noninc);
        record("u <= 0 everywhere", u_nonpos);
        record("Omega(1) == 0", f.omega_cap_node(s.size() - 1) == 0.0);
        // additivity over a particle-aligned split
        const double x = s.pos[400], xp = s.pos[1200];
        double seg = 0.0;
        for (std::size_t i = 400; i < 1200; ++i) {
            const double fi = s.omega[i] / s.pos[i];
            const double fj = s.omega[i + 1] / s.pos[i + 1];
            seg += 0.5 * (fi + fj) * (s.pos[i + 1] - s.pos[i]);
        }
        const double lhs = f.omega_cap(x);
        const double rhs = f.omega_cap(xp) + seg;
        record("additivity across a split point", testing::close_rel(lhs, rhs, 1e-12),
               testing::qoi(lhs - rhs, 0.0));
    }

    section("near-origin handling");
    {
        ParticleState s;
        s.label = {0.0, 1e-4, 0.5, 1.0};
        s.pos = {0.0, 5e-15, 0.5, 1.0};
        s.rho.assign(4, 0.0);
        s.omega = {0.0, 3.0, 1.0, 0.0};
        VelocityField f(s);
        record("nonzero omega at the origin flags unreliable", f.unreliable());
        s.omega[1] = 0.0;
        VelocityField g(s);
        record("zero omega at the origin stays reliable", !g.unreliable());
    }

    return testing::summary("test_biotsavart");
}
