#include "bq1d/picard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bq1d/biotsavart.hpp"
#include "bq1d/parallel.hpp"

namespace bq1d {

namespace {

// Space-time table on the fixed grid: row k = time slice t_k.
struct Table {
    std::size_t rows = 0, cols = 0;
    std::vector<double> v;
    void init(std::size_t r, std::size_t c) {
        rows = r;
        cols = c;
        v.assign(r * c, 0.0);
    }
    double* row(std::size_t k) { return v.data() + k * cols; }
    const double* row(std::size_t k) const { return v.data() + k * cols; }
};

double interp_space(const double* slice, std::size_t N, double h, double x) {
    if (x <= 0.0) return slice[0];
    if (x >= 1.0) return slice[N];
    const double p = x / h;
    std::size_t j = static_cast<std::size_t>(p);
    if (j >= N) j = N - 1;
    const double t = p - static_cast<double>(j);
    return slice[j] + t * (slice[j + 1] - slice[j]);
}

// u(t, x) with linear interpolation between the two bracketing slices.
double interp_u(const Table& u, std::size_t N, double h, double dt, double t, double x) {
    const double p = t / dt;
    std::size_t k = static_cast<std::size_t>(p);
    if (k + 1 >= u.rows) k = u.rows - 2;
    const double th = p - static_cast<double>(k);
    const double a = interp_space(u.row(k), N, h, x);
    const double b = interp_space(u.row(k + 1), N, h, x);
    return a + th * (b - a);
}

// Backward characteristic from (t_k, x) to t = 0 under the frozen field u.
// Visits every slice time; path[m] = position at t_m for m = 0..k.
void backtrack(const Table& u, std::size_t N, double h, double dt, std::size_t k, double x,
               std::vector<double>& path) {
    path.resize(k + 1);
    path[k] = x;
    double xi = x;
    for (std::size_t m = k; m-- > 0;) {
        const double tm = static_cast<double>(m + 1) * dt;
        const double k1 = interp_u(u, N, h, dt, tm, xi);
        const double k2 = interp_u(u, N, h, dt, tm - 0.5 * dt, xi - 0.5 * dt * k1);
        const double k3 = interp_u(u, N, h, dt, tm - 0.5 * dt, xi - 0.5 * dt * k2);
        const double k4 = interp_u(u, N, h, dt, tm - dt, xi - dt * k3);
        xi -= dt / 6.0 * (k1 + 2.0 * (k2 + k3) + k4);
        xi = std::clamp(xi, 0.0, 1.0);
        path[m] = xi;
    }
}

void velocity_from_omega(const std::vector<double>& grid, const double* omega_slice,
                         std::size_t N, double* u_slice) {
    std::vector<double> om(omega_slice, omega_slice + N + 1);
    SuffixQuadrature q = suffix_over_y(grid, om);
    for (std::size_t j = 0; j <= N; ++j) {
        const double v = -(grid[j] * q.at_node[j]);
        u_slice[j] = v == 0.0 ? 0.0 : v;
    }
}

}  // namespace

PicardResult picard_solve(const InitialData& data, double t_end, int n_iter, std::size_t N,
                          std::size_t time_steps) {
    if (n_iter < 1) throw std::invalid_argument("picard_solve: n_iter must be >= 1");
    if (N < 16) throw std::invalid_argument("picard_solve: N must be >= 16");
    if (t_end < 0.0) throw std::invalid_argument("picard_solve: t_end must be >= 0");

    const std::size_t K = t_end > 0.0 ? time_steps : 0;
    const double dt = K > 0 ? t_end / static_cast<double>(K) : 0.0;
    const double h = 1.0 / static_cast<double>(N);
    std::vector<double> grid(N + 1);
    for (std::size_t j = 0; j <= N; ++j) grid[j] = static_cast<double>(j) * h;

    // Iterate 0: fields frozen at the initial data, u_0 from omega_0.
    Table rho_prev, omega_prev, u_prev;
    rho_prev.init(K + 1, N + 1);
    omega_prev.init(K + 1, N + 1);
    u_prev.init(K + 1, N + 1);
    {
        std::vector<double> u0(N + 1);
        std::vector<double> om0(N + 1);
        for (std::size_t j = 0; j <= N; ++j) om0[j] = data.omega0(grid[j]);
        velocity_from_omega(grid, om0.data(), N, u0.data());
        for (std::size_t k = 0; k <= K; ++k) {
            for (std::size_t j = 0; j <= N; ++j) {
                rho_prev.row(k)[j] = data.rho0(grid[j]);
                omega_prev.row(k)[j] = om0[j];
                u_prev.row(k)[j] = u0[j];
            }
        }
    }

    PicardResult result;
    Table rho_n, omega_n, dxrho_n, u_n;
    for (int n = 1; n <= n_iter; ++n) {
        rho_n.init(K + 1, N + 1);
        omega_n.init(K + 1, N + 1);
        dxrho_n.init(K + 1, N + 1);
        u_n.init(K + 1, N + 1);

        // Pass 1: rho_n by backward characteristics of u_{n-1}.
        for (std::size_t k = 0; k <= K; ++k) {
            double* out = rho_n.row(k);
            par::parallel_map(N + 1, [&](std::size_t j) {
                thread_local std::vector<double> path;
                backtrack(u_prev, N, h, dt, k, grid[j], path);
                out[j] = data.rho0(path[0]);
            });
        }
        // dx rho_n on the grid (centered, one-sided at the ends).
        for (std::size_t k = 0; k <= K; ++k) {
            const double* r = rho_n.row(k);
            double* g = dxrho_n.row(k);
            par::parallel_map(N + 1, [&](std::size_t j) {
                const std::size_t lo = j == 0 ? 0 : j - 1;
                const std::size_t hi = j == N ? N : j + 1;
                g[j] = (r[hi] - r[lo]) / (grid[hi] - grid[lo]);
            });
        }
        // Pass 2: omega_n = omega_0(label) + time integral of dx rho_n
        // along the same backward path.
        for (std::size_t k = 0; k <= K; ++k) {
            double* out = omega_n.row(k);
            par::parallel_map(N + 1, [&](std::size_t j) {
                thread_local std::vector<double> path;
                backtrack(u_prev, N, h, dt, k, grid[j], path);
                double acc = 0.0;
                for (std::size_t m = 1; m <= k; ++m) {
                    const double a = interp_space(dxrho_n.row(m - 1), N, h, path[m - 1]);
                    const double b = interp_space(dxrho_n.row(m), N, h, path[m]);
                    acc += 0.5 * dt * (a + b);
                }
                out[j] = data.omega0(path[0]) + acc;
            });
        }
        for (std::size_t k = 0; k <= K; ++k)
            velocity_from_omega(grid, omega_n.row(k), N, u_n.row(k));

        // Sup distance to the previous iterate over the whole table.
        std::vector<double> diff(rho_n.v.size());
        par::parallel_map(diff.size(), [&](std::size_t i) {
            diff[i] = std::max(std::fabs(rho_n.v[i] - rho_prev.v[i]),
                               std::fabs(omega_n.v[i] - omega_prev.v[i]));
        });
        result.iterate_distance.push_back(par::max(diff));

        std::swap(rho_prev, rho_n);
        std::swap(omega_prev, omega_n);
        std::swap(u_prev, u_n);
    }

    int growing = 0;
    for (std::size_t i = 1; i < result.iterate_distance.size(); ++i) {
        growing = result.iterate_distance[i] > result.iterate_distance[i - 1] ? growing + 1 : 0;
        if (growing >= 3) result.non_contraction = true;
    }

    ParticleState& s = result.final_state;
    s.t = t_end;
    s.label = grid;
    s.pos = grid;
    s.rho.assign(rho_prev.row(K), rho_prev.row(K) + N + 1);
    s.omega.assign(omega_prev.row(K), omega_prev.row(K) + N + 1);
    return result;
}

}  // namespace bq1d
