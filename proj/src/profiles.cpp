#include "bq1d/profiles.hpp"

#include "bq1d/interp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace bq1d {

namespace {

[[noreturn]] void fail(const std::string& who, const std::string& what) {
    throw std::logic_error("profile '" + who + "': " + what);
}

double centered_derivative(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

double centered_second_derivative(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

}  // namespace

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

SmoothProfile::SmoothProfile(std::string name, std::function<double(double)> eval,
                             double support_lo, double support_hi,
                             std::vector<MonotoneSegment> segments, EdgePolicy edges)
    : name_(std::move(name)),
      eval_(std::move(eval)),
      support_lo_(support_lo),
      support_hi_(support_hi),
      segments_(std::move(segments)),
      edges_(edges) {
    validate();
}

void SmoothProfile::validate() const {
    constexpr double h = 1e-6;
    constexpr double tol = 1e-6;
    constexpr int samples = 10000;

    for (double edge : {support_lo_, support_hi_}) {
        if (std::fabs(eval_(edge)) > tol) fail(name_, "nonzero value at support edge");
        const bool interior_edge = edge > 0.0 && edge < 1.0;
        if (edges_ == EdgePolicy::flat && interior_edge) {
            if (std::fabs(centered_derivative(eval_, edge, h)) > tol)
                fail(name_, "nonzero first derivative at support edge");
            if (std::fabs(centered_second_derivative(eval_, edge, h)) > tol)
                fail(name_, "nonzero second derivative at support edge");
        }
    }
    // Zero outside the support (spot-checked on both sides).
    for (int i = 1; i <= 64; ++i) {
        const double dl = support_lo_ * static_cast<double>(i) / 64.0;
        if (dl >= 0.0 && eval_(dl * 0.999) != 0.0 && dl * 0.999 < support_lo_)
            fail(name_, "nonzero value left of support");
        const double dr = support_hi_ + (1.0 - support_hi_) * static_cast<double>(i) / 64.0;
        if (dr <= 1.0 && dr > support_hi_ && eval_(dr) != 0.0)
            fail(name_, "nonzero value right of support");
    }
    for (const auto& seg : segments_) {
        double prev = eval_(seg.lo);
        for (int i = 1; i < samples; ++i) {
            const double x = seg.lo + (seg.hi - seg.lo) * static_cast<double>(i) /
                                          static_cast<double>(samples - 1);
            const double v = eval_(x);
            switch (seg.kind) {
                case Monotonicity::increasing:
                    if (v < prev) fail(name_, "declared increasing segment decreases");
                    break;
                case Monotonicity::decreasing:
                    if (v > prev) fail(name_, "declared decreasing segment increases");
                    break;
                case Monotonicity::constant:
                    if (v != prev) fail(name_, "declared constant segment varies");
                    break;
            }
            prev = v;
        }
    }
}

namespace {

// Strictly increasing cubic reparameterization of the left branch,
// w : [1/4, 1/2] -> [0, 1] with w(1/3) = 1/2 exactly and w' > 0.
// The end slope w'(1/2) = 4 keeps the double-precision saturation band of
// smooth_step(w(x)) out of (0.26, 0.49), so the branch is strictly
// increasing there even at machine resolution.
double left_branch_arg(double x) {
    const double d = x - 0.25;
    return ((72.0 * d - 36.0) * d + 8.5) * d;
}

double rho0_eval(double x) {
    if (x <= 0.25 || x >= 0.75) return 0.0;
    if (x < 0.5) return 2.0 * smooth_step(left_branch_arg(x));
    const double d = 0.75 - x;
    return 2.0 * smooth_step(((72.0 * d - 36.0) * d + 8.5) * d);
}

constexpr double kOmegaRampWidth = 0.05;  // [0.25,0.30] up, [0.45,0.50] down

}  // namespace

SmoothProfile build_rho0() {
    SmoothProfile p("rho0", rho0_eval, 0.25, 0.75,
                    {{0.25, 0.5, Monotonicity::increasing},
                     {0.5, 0.75, Monotonicity::decreasing}});
    // Pinned values of the construction.
    if (std::fabs(p(1.0 / 3.0) - 1.0) > 1e-12) fail("rho0", "value at 1/3 not pinned to 1");
    if (p(0.5) != 2.0) fail("rho0", "max at 1/2 not pinned to 2");
    return p;
}

SmoothProfile build_omega0(double M) {
    if (!(M > 0.0)) throw std::invalid_argument("build_omega0: M must be positive");
    auto eval = [M](double x) {
        if (x <= 0.25 || x >= 0.5) return 0.0;
        if (x < 0.3) return M * smooth_step((x - 0.25) / kOmegaRampWidth);
        if (x <= 0.45) return M;
        return M * smooth_step((0.5 - x) / kOmegaRampWidth);
    };
    return SmoothProfile("omega0", eval, 0.25, 0.5,
                         {{0.25, 0.3, Monotonicity::increasing},
                          {0.3, 0.45, Monotonicity::constant},
                          {0.45, 0.5, Monotonicity::decreasing}});
}

SmoothProfile tabulated_profile(std::string name, std::vector<double> x,
                                std::vector<double> value) {
    if (x.empty() || x.front() < 0.0 || x.back() > 1.0)
        throw std::invalid_argument("tabulated_profile: x outside [0,1]");
    const double lo = x.front();
    const double hi = x.back();
    const double v_lo = value.front();
    const double v_hi = value.back();
    MonotoneCubic cubic(std::move(x), std::move(value));
    auto eval = [cubic = std::move(cubic), lo, hi, v_lo, v_hi](double q) -> double {
        if (q < lo || q > hi) return 0.0;
        if (q == lo) return v_lo;
        if (q == hi) return v_hi;
        return cubic(q);
    };
    return SmoothProfile(std::move(name), std::move(eval), lo, hi, {}, EdgePolicy::free);
}

InitialData InitialData::blowup(double M) {
    if (M < 0.0) throw std::invalid_argument("InitialData::blowup: M must be >= 0");
    if (M == 0.0) {
        // Degenerate member of the family: density bump, no vorticity.
        auto zero_eval = [](double) { return 0.0; };
        return InitialData{build_rho0(), SmoothProfile("zero", zero_eval, 0.25, 0.5, {}), 0.0};
    }
    return InitialData{build_rho0(), build_omega0(M), M};
}

InitialData InitialData::zero() {
    auto zero_eval = [](double) { return 0.0; };
    return InitialData{SmoothProfile("zero", zero_eval, 0.0, 1.0, {}),
                       SmoothProfile("zero", zero_eval, 0.0, 1.0, {}), 0.0};
}

InitialData InitialData::transport_only(double M) {
    auto zero_eval = [](double) { return 0.0; };
    return InitialData{SmoothProfile("zero", zero_eval, 0.0, 1.0, {}), build_omega0(M), M};
}

double find_xn(const SmoothProfile& rho0, int n) {
    if (n < 1) throw std::invalid_argument("find_xn: n must be >= 1");
    const double target = 0.5 + std::ldexp(1.0, -n);
    double lo = 0.25;
    double hi = 0.5;
    const double flo = rho0(lo);
    const double fhi = rho0(hi);
    if (!(flo < target && target <= fhi)) {
        std::ostringstream os;
        os << "find_xn: target " << target << " outside increasing branch range [" << flo
           << ", " << fhi << "]";
        throw std::domain_error(os.str());
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (rho0(mid) < target ? lo : hi) = mid;
    }
    // hi is the leftmost point with rho0 >= target; machine-level bracket.
    if (std::fabs(rho0(hi) - target) > 1e-12)
        fail(rho0.name(), "find_xn bisection did not reach value tolerance");
    return hi;
}

}  // namespace bq1d
