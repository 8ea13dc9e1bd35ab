// Reference solver: fixed points, geometric contraction of the iteration,
// and cross-validation against the Lagrangian path.

#include <cmath>
#include <stdexcept>

#include "bq1d/picard.hpp"
#include "bq1d/solver.hpp"
#include "harness.hpp"

using namespace bq1d;
using testing::record;
using testing::section;

int main() {
    section("zero data");
    {
        const PicardResult r = picard_solve(InitialData::zero(), 0.1, 4, 64);
        bool zero = true;
        for (double v : r.final_state.omega) zero = zero && v == 0.0;
        for (double v : r.final_state.rho) zero = zero && v == 0.0;
        record("iterates stay identically zero", zero);
        record("distances are zero", r.iterate_distance.back() == 0.0);
        record("no contraction warning", !r.non_contraction);
    }

    section("contraction (M = 10, t_end = 0.05)");
    {
        const PicardResult r = picard_solve(InitialData::blowup(10.0), 0.05, 8, 1000);
        bool decreasing = true;
        // geometric decrease with ratio at most 0.8 once the iteration has
        // locked on (skip the first gap), down to the roundoff floor
        for (std::size_t i = 2; i < r.iterate_distance.size(); ++i) {
            const double prev = r.iterate_distance[i - 1];
            const double cur = r.iterate_distance[i];
            if (prev > 1e-12 && cur > 0.8 * prev) decreasing = false;
        }
        record("iterate distances decrease geometrically", decreasing,
               testing::qoi(r.iterate_distance.back(), 1e-6));
        record("final distance below 1e-6",
               r.iterate_distance.back() <= 1e-6,
               testing::qoi(r.iterate_distance.back(), 1e-6));
        record("no contraction warning", !r.non_contraction);
    }

    section("cross-validation vs the Lagrangian solver");
    {
        const InitialData data = InitialData::blowup(10.0);
        const PicardResult pic = picard_solve(data, 0.05, 8, 2000);
        const ParticleState s0 = discretize(data, 2000, Layout::uniform);
        StepControl c;
        c.dt_max = 2.5e-4;
        c.cfl = 0.2;
        c.t_end = 0.05;
        const Trajectory lag = advance(s0, c, data);
        double sup_lag = 0.0, sup_pic = 0.0;
        for (double v : lag.final_state.omega) sup_lag = std::max(sup_lag, std::fabs(v));
        for (double v : pic.final_state.omega) sup_pic = std::max(sup_pic, std::fabs(v));
        const double diff = std::fabs(sup_lag - sup_pic);
        record("sup-norm discrepancy <= 1e-4", diff <= 1e-4, testing::qoi(diff, 1e-4));
    }

    section("transport only: omega sup preserved");
    {
        const PicardResult r = picard_solve(InitialData::transport_only(1.0), 0.05, 6, 500);
        double sup = 0.0;
        for (double v : r.final_state.omega) sup = std::max(sup, std::fabs(v));
        record("sup|omega| stays 1", testing::close_abs(sup, 1.0, 1e-10),
               testing::qoi(sup, 1.0));
    }

    section("input validation");
    {
        bool threw = false;
        try {
            picard_solve(InitialData::zero(), 0.1, 0, 64);
        } catch (const std::invalid_argument&) {
            threw = true;
        }
        record("rejects n_iter < 1", threw);
    }

    return testing::summary("test_picard");
}
