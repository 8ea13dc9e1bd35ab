#include "bq1d/particles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bq1d {

bool ParticleState::ordered() const {
    for (std::size_t i = 0; i + 1 < pos.size(); ++i)
        if (!(pos[i] < pos[i + 1])) return false;
    return true;
}

double ParticleState::min_gap_ratio() const {
    double r = HUGE_VAL;
    for (std::size_t i = 0; i + 1 < pos.size(); ++i) {
        const double g = (pos[i + 1] - pos[i]) / (label[i + 1] - label[i]);
        if (g < r) r = g;
    }
    return r;
}

std::size_t ParticleState::index_of_label(double x) const {
    const auto it = std::lower_bound(label.begin(), label.end(), x);
    if (it != label.end() && *it == x) return static_cast<std::size_t>(it - label.begin());
    return size();
}

namespace {

std::vector<double> uniform_labels(std::size_t N) {
    std::vector<double> x(N + 1);
    for (std::size_t i = 0; i <= N; ++i)
        x[i] = static_cast<double>(i) / static_cast<double>(N);
    return x;
}

// Graded label distribution: cumulative weight of
//   w(x) = 1 + A / (x - 1/4 + eps) restricted to [1/4, 1/2],
// inverted on a uniform quantile grid. Clusters labels where the blow-up
// scenario compresses characteristics.
std::vector<double> graded_labels(std::size_t N) {
    constexpr double eps = 1e-3;
    constexpr double A = 0.25;
    auto cumulative = [&](double x) {
        const double c = std::clamp(x, 0.25, 0.5);
        return x + A * (std::log(c - 0.25 + eps) - std::log(eps));
    };
    const double total = cumulative(1.0);
    std::vector<double> x(N + 1);
    x[0] = 0.0;
    x[N] = 1.0;
    for (std::size_t i = 1; i < N; ++i) {
        const double q = total * static_cast<double>(i) / static_cast<double>(N);
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (cumulative(mid) < q ? lo : hi) = mid;
        }
        x[i] = hi;
    }
    return x;
}

}  // namespace

ParticleState discretize(const InitialData& data, std::size_t N, Layout layout,
                         const std::vector<double>& extra_labels) {
    if (N < 16) throw std::invalid_argument("discretize: N must be >= 16");

    std::vector<double> labels =
        layout == Layout::uniform ? uniform_labels(N) : graded_labels(N);

    for (double x : extra_labels) {
        if (!(x > 0.0 && x < 1.0))
            throw std::invalid_argument("discretize: tracked label outside (0,1)");
        auto it = std::lower_bound(labels.begin(), labels.end(), x);
        if (it != labels.end() && std::fabs(*it - x) < 1e-9) {
            *it = x;  // replace a near-coincident label with the exact one
        } else if (it != labels.begin() && std::fabs(*(it - 1) - x) < 1e-9) {
            *(it - 1) = x;
        } else {
            labels.insert(it, x);
        }
    }
    for (std::size_t i = 0; i + 1 < labels.size(); ++i)
        if (!(labels[i] < labels[i + 1]))
            throw std::logic_error("discretize: labels not strictly increasing");

    ParticleState s;
    s.t = 0.0;
    s.label = labels;
    s.pos = labels;
    s.rho.resize(labels.size());
    s.omega.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        s.rho[i] = data.rho0(labels[i]);
        s.omega[i] = data.omega0(labels[i]);
    }
    return s;
}

}  // namespace bq1d
