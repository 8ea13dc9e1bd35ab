#pragma once

// Model Biot-Savart law on [0,1]:
//   Omega(x) = integral_x^1 omega(y)/y dy,  u(x) = -x Omega(x),
//   u'(x) = -Omega(x) + omega(x).
// Quadrature is composite trapezoid on the (nonuniform) particle mesh with
// piecewise-linear interpolation of omega between particles. Node values
// come from one chunked suffix pass, so evaluating a full state is O(N)
// and identical across serial/OpenMP backends.

#include <cstddef>
#include <span>
#include <vector>

#include "bq1d/particles.hpp"

namespace bq1d {

// Positions closer to the origin than this are treated as at the origin:
// the integrand v/y is replaced by the one-sided slope of v when v = 0
// there (removable singularity) and flagged singular otherwise.
inline constexpr double kOriginEps = 1e-14;

struct SuffixQuadrature {
    std::vector<double> at_node;  // at_node[i] = integral_{pos_i}^{pos_back} v/y dy
    std::vector<double> integrand;  // v_i / pos_i after the origin convention
    bool singular = false;
};

SuffixQuadrature suffix_over_y(std::span<const double> pos, std::span<const double> v);

class VelocityField {
public:
    explicit VelocityField(const ParticleState& state);

    // True if some particle sits at the origin (pos < kOriginEps) with
    // nonzero vorticity: the quadrature of omega/y is singular there and
    // every value derived from this field is suspect.
    bool unreliable() const { return unreliable_; }

    double omega_cap_node(std::size_t i) const { return omega_cap_.at_node[i]; }
    double omega_cap(double x) const;  // requires pos.front() <= x <= 1

    double velocity_node(std::size_t i) const;
    double velocity(double x) const;  // exact 0 at x = 0 and x = 1

    double velocity_gradient_node(std::size_t i) const;
    double velocity_gradient(double x) const;

    // Max of |u'| over particle positions and cell midpoints.
    double sup_velocity_gradient() const;

    const ParticleState& state() const { return *state_; }

private:
    double omega_interp(std::size_t cell, double x) const;

    const ParticleState* state_;
    SuffixQuadrature omega_cap_;
    bool unreliable_ = false;
};

}  // namespace bq1d
