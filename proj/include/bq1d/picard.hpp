#pragma once

// Reference solver: the local-existence iteration scheme, discretized
// semi-Lagrangian on a fixed Eulerian grid. Iterate n solves the linear
// transport problems
//   dt rho_n + u_{n-1} dx rho_n = 0,    dt omega_n + u_{n-1} dx omega_n = dx rho_n
// along backward characteristics of the frozen velocity u_{n-1}, then
// rebuilds u_n = -x int_x^1 omega_n/y dy. Starts from u_0 frozen at the
// initial vorticity. Independent of the Lagrangian path; used for
// cross-validation on short horizons.

#include <cstddef>
#include <vector>

#include "bq1d/particles.hpp"

namespace bq1d {

struct PicardResult {
    ParticleState final_state;          // Eulerian grid state at t_end (pos = label)
    std::vector<double> iterate_distance;  // d_n = max(||omega_n - omega_{n-1}||_inf,
                                           //           ||rho_n - rho_{n-1}||_inf)
    bool non_contraction = false;  // distance grew 3 consecutive iterations
};

// t_end is intended small (local existence horizon); n_iter >= 1; N >= 16
// grid cells. time_steps controls the inner uniform time grid (default 64).
PicardResult picard_solve(const InitialData& data, double t_end, int n_iter, std::size_t N,
                          std::size_t time_steps = 64);

}  // namespace bq1d
