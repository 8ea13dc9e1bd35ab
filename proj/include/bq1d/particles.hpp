#pragma once

// Lagrangian particle state: ordered labels on [0,1] carrying position,
// conserved density, and vorticity. Labels and densities never change after
// discretization (insertion excepted); positions and vorticities evolve.

#include <cstddef>
#include <vector>

#include "bq1d/profiles.hpp"

namespace bq1d {

enum class Layout { uniform, graded };

struct ParticleState {
    double t = 0.0;
    std::vector<double> label;  // strictly increasing, label.front()=0, label.back()=1
    std::vector<double> pos;    // characteristics; strictly increasing while classical
    std::vector<double> rho;    // conserved along characteristics, stored once
    std::vector<double> omega;
    bool broken = false;  // ordering violated; no further steps are taken

    std::size_t size() const { return label.size(); }
    bool ordered() const;
    double min_gap_ratio() const;  // min over i of (pos gap) / (label gap)

    // Index of an exactly tracked label (inserted at discretization time).
    // Returns size() if the label is not a particle.
    std::size_t index_of_label(double x) const;
};

// Particles at t = 0 with pos = label, rho = rho0(label), omega = omega0(label).
// The graded layout concentrates labels near the left support edge
// (density ~ 1/(x - 1/4 + 1e-3) on [1/4, 1/2]). extra_labels are inserted
// exactly (replacing any label closer than 1e-9). Rejects N < 16.
ParticleState discretize(const InitialData& data, std::size_t N, Layout layout,
                         const std::vector<double>& extra_labels = {});

}  // namespace bq1d
