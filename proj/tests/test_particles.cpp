// Discretization: exact sampling at labels, uniform/graded layouts,
// exact insertion of tracked labels, and state invariants.

#include <stdexcept>

#include "bq1d/particles.hpp"
#include "harness.hpp"

using namespace bq1d;
using testing::record;
using testing::section;

int main() {
    const InitialData data = InitialData::blowup(200.0);

    section("uniform layout");
    {
        const ParticleState s = discretize(data, 1000, Layout::uniform);
        bool exact = s.size() == 1001;
        for (std::size_t i = 0; i < s.size() && exact; ++i) {
            if (s.pos[i] != static_cast<double>(i) / 1000.0) exact = false;
            if (s.pos[i] != s.label[i]) exact = false;
        }
        record("positions are {i/1000} at t=0", exact);
        bool rho_exact = true, omega_exact = true, plateau = true;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s.rho[i] != data.rho0(s.label[i])) rho_exact = false;
            if (s.omega[i] != data.omega0(s.label[i])) omega_exact = false;
            if (s.label[i] >= 0.3 && s.label[i] <= 0.45 && s.omega[i] != 200.0) plateau = false;
        }
        record("rho sampled exactly", rho_exact);
        record("omega sampled exactly", omega_exact);
        record("omega == M on plateau labels", plateau);
        record("min_gap_ratio is 1 at t=0", s.min_gap_ratio() == 1.0);
        record("ordered", s.ordered());
    }

    section("rejects undersized grids");
    {
        bool threw = false;
        try {
            discretize(data, 8, Layout::uniform);
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        record("N < 16 throws", threw);
    }

    section("graded layout");
    {
        const ParticleState s = discretize(data, 2000, Layout::graded);
        record("endpoints exact", s.label.front() == 0.0 && s.label.back() == 1.0);
        record("ordered", s.ordered());
        std::size_t in_cluster = 0;
        for (double x : s.label)
            if (x >= 0.25 && x <= 0.5) ++in_cluster;
        record("labels cluster near the left support edge",
               static_cast<double>(in_cluster) / static_cast<double>(s.size()) > 0.4,
               testing::qoi(static_cast<double>(in_cluster) / static_cast<double>(s.size()),
                            0.4));
    }

    section("tracked label insertion");
    {
        const std::vector<double> extra{find_xn(data.rho0, 1), find_xn(data.rho0, 2), 0.5};
        const ParticleState s = discretize(data, 500, Layout::graded, extra);
        bool found = true;
        for (double x : extra)
            if (s.index_of_label(x) >= s.size()) found = false;
        record("tracked labels are particles (exact match)", found);
        record("rho at tracked label exact",
               s.rho[s.index_of_label(extra[0])] == data.rho0(extra[0]));
        record("still ordered after insertion", s.ordered());
    }

    return testing::summary("test_particles");
}
