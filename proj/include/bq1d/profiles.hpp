#pragma once

// Initial-data profiles: a C-infinity bump pair (rho0, omega0) with pinned
// values, plus tabulated profiles for property tests. Profiles are pure
// evaluation rules on [0,1] with compact support and declared monotone
// segments; every constructor self-checks its invariants and throws on
// violation.

#include <functional>
#include <string>
#include <vector>

namespace bq1d {

enum class Monotonicity { increasing, decreasing, constant };

struct MonotoneSegment {
    double lo = 0.0;
    double hi = 0.0;
    Monotonicity kind = Monotonicity::constant;
};

// Edge policy: `flat` demands the value and its first two derivatives
// vanish at the support edges (the compactly-supported bump family);
// `free` only demands the value outside the support be zero (arbitrary
// tabulated profiles). Support edges lying on the domain boundary 0/1 are
// exempt from the derivative checks either way.
enum class EdgePolicy { flat, free };

class SmoothProfile {
public:
    SmoothProfile() = default;
    SmoothProfile(std::string name, std::function<double(double)> eval,
                  double support_lo, double support_hi,
                  std::vector<MonotoneSegment> segments,
                  EdgePolicy edges = EdgePolicy::flat);

    double operator()(double x) const { return eval_(x); }
    double support_lo() const { return support_lo_; }
    double support_hi() const { return support_hi_; }
    const std::string& name() const { return name_; }
    const std::vector<MonotoneSegment>& segments() const { return segments_; }

    // Self-check: zero outside support, value and first two centered
    // finite-difference derivatives (h = 1e-6) below 1e-6 at the support
    // endpoints, declared segments monotone on a 1e4-point sample.
    // Throws std::logic_error with a diagnostic on failure.
    void validate() const;

private:
    std::string name_;
    std::function<double(double)> eval_;
    double support_lo_ = 0.0;
    double support_hi_ = 0.0;
    std::vector<MonotoneSegment> segments_;
    EdgePolicy edges_ = EdgePolicy::flat;
};

// The smooth transition 0 -> 1 on [0,1], flat to all orders at both ends:
// s(x) = g(x) / (g(x) + g(1-x)), g(x) = exp(-1/x) for x > 0.
double smooth_step(double x);

// Density bump: supported on [1/4, 3/4], strictly increasing on the open
// left branch with rho0(1/3) = 1 (exact by construction) and max value
// rho0(1/2) = 2, strictly decreasing back to zero on [1/2, 3/4].
SmoothProfile build_rho0();

// Vorticity bump: supported on [1/4, 1/2], identically M on [0.3, 0.45].
// Rejects M <= 0.
SmoothProfile build_omega0(double M);

// Profile from samples (x strictly increasing in [0,1]): monotone cubic
// interpolation inside [x.front(), x.back()], zero outside. Used for the
// custom_tabulated scenario and randomized property tests.
SmoothProfile tabulated_profile(std::string name, std::vector<double> x,
                                std::vector<double> value);

struct InitialData {
    SmoothProfile rho0;
    SmoothProfile omega0;
    double M = 0.0;

    static InitialData blowup(double M);
    static InitialData zero();
    static InitialData transport_only(double M);  // rho0 = 0, omega0 = bump
};

// Solves rho0(x) = 1/2 + 2^-n on the increasing branch [1/4, 1/2] by
// bisection; |rho0(x) - target| <= 1e-12 on return. Throws if the target
// is outside the branch range (requires n >= 1).
double find_xn(const SmoothProfile& rho0, int n);

}  // namespace bq1d
