// Kernel benchmark: serial reference vs OpenMP backend on the hot paths
// (suffix quadrature, field assembly, RK4 step). Both backends execute the
// same chunked algorithm, so the checksum column doubles as a bit-exactness
// check; a naive non-chunked suffix sum is timed as a baseline.
//
//   bq1d_bench [N] [reps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

#include "bq1d/biotsavart.hpp"
#include "bq1d/parallel.hpp"
#include "bq1d/solver.hpp"

using namespace bq1d;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <class F>
double time_best(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = clock_type::now();
        f();
        best = std::min(best, seconds_since(t0));
    }
    return best;
}

double checksum(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? static_cast<std::size_t>(std::atoll(argv[1])) : 500000;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 5;

    InitialData data = InitialData::blowup(200.0);
    ParticleState state = discretize(data, n, Layout::graded);
    std::printf("bq1d_bench: N=%zu reps=%d openmp_compiled=%d\n", state.size(), reps,
                par::openmp_compiled() ? 1 : 0);

    std::vector<double> omega_serial, omega_omp;

    // naive (non-chunked) suffix sum as the accuracy baseline
    std::vector<double> naive(state.size());
    const double t_naive = time_best(reps, [&] {
        const auto& pos = state.pos;
        const auto& om = state.omega;
        naive[pos.size() - 1] = 0.0;
        for (std::size_t i = pos.size() - 1; i-- > 0;) {
            const double fi = om[i] / std::max(pos[i], kOriginEps);
            const double fj = om[i + 1] / std::max(pos[i + 1], kOriginEps);
            naive[i] = naive[i + 1] + 0.5 * (fi + fj) * (pos[i + 1] - pos[i]);
        }
    });

    par::force_serial(true);
    const double t_suffix_serial = time_best(reps, [&] {
        omega_serial = suffix_over_y(state.pos, state.omega).at_node;
    });
    const double t_field_serial = time_best(reps, [&] { VelocityField f(state); });
    const double t_step_serial = time_best(reps, [&] { (void)step(state, 1e-6); });

    par::force_serial(false);
    const double t_suffix_omp = time_best(reps, [&] {
        omega_omp = suffix_over_y(state.pos, state.omega).at_node;
    });
    const double t_field_omp = time_best(reps, [&] { VelocityField f(state); });
    const double t_step_omp = time_best(reps, [&] { (void)step(state, 1e-6); });

    const bool bitexact =
        omega_serial.size() == omega_omp.size() &&
        std::memcmp(omega_serial.data(), omega_omp.data(),
                    omega_serial.size() * sizeof(double)) == 0;

    std::printf("%-22s %12s %12s %9s\n", "kernel", "serial [ms]", "openmp [ms]", "speedup");
    std::printf("%-22s %12.3f %12.3f %9.2f\n", "suffix_quadrature", 1e3 * t_suffix_serial,
                1e3 * t_suffix_omp, t_suffix_serial / t_suffix_omp);
    std::printf("%-22s %12.3f %12.3f %9.2f\n", "velocity_field", 1e3 * t_field_serial,
                1e3 * t_field_omp, t_field_serial / t_field_omp);
    std::printf("%-22s %12.3f %12.3f %9.2f\n", "rk4_step", 1e3 * t_step_serial,
                1e3 * t_step_omp, t_step_serial / t_step_omp);
    std::printf("naive suffix: %.3f ms, |chunked - naive| checksum delta = %.3e\n",
                1e3 * t_naive, checksum(omega_serial) - checksum(naive));
    std::printf("serial vs openmp bit-exact: %s\n", bitexact ? "yes" : "NO");
    return bitexact ? 0 : 1;
}
