// Kernel-layer checks: chunked reductions and the suffix scan agree with
// naive references, and the OpenMP backend is bit-identical to the serial
// one (same chunked arithmetic, different execution).

#include <cstring>
#include <numeric>
#include <random>
#include <vector>

#include "bq1d/parallel.hpp"
#include "harness.hpp"

using namespace bq1d;
using testing::record;
using testing::section;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

}  // namespace

int main() {
    section("chunked reductions vs naive references");
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{1023}, std::size_t{1024},
                          std::size_t{1025}, std::size_t{3 * 1024 + 17}, std::size_t{100000}}) {
        auto v = random_vector(n, 42 + static_cast<unsigned>(n));
        double naive_sum = 0.0, naive_max = -HUGE_VAL, naive_maxabs = 0.0;
        for (double x : v) {
            naive_sum += x;
            naive_max = std::max(naive_max, x);
            naive_maxabs = std::max(naive_maxabs, std::fabs(x));
        }
        const std::string tag = " n=" + std::to_string(n);
        record("sum close to naive" + tag, testing::close_rel(par::sum(v), naive_sum, 1e-12) ||
                                               (n == 0 && par::sum(v) == 0.0));
        if (n > 0) {
            record("max equals naive" + tag, par::max(v) == naive_max);
            record("max_abs equals naive" + tag, par::max_abs(v) == naive_maxabs);
        }
    }

    section("suffix scan");
    {
        const std::size_t n = 3 * 1024 + 500;
        auto seg = random_vector(n, 7);
        std::vector<double> out(n + 1), naive(n + 1);
        par::suffix_sum(seg, out);
        naive[n] = 0.0;
        for (std::size_t i = n; i-- > 0;) naive[i] = naive[i + 1] + seg[i];
        double worst = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            worst = std::max(worst, std::fabs(out[i] - naive[i]));
        record("suffix_sum close to naive", worst <= 1e-12, testing::qoi(worst, 1e-12));
        record("suffix_sum ends at zero", out[n] == 0.0);
    }

    section("serial and OpenMP backends bit-identical");
    {
        const std::size_t n = 10 * 1024 + 321;
        auto seg = random_vector(n, 99);
        std::vector<double> a(n + 1), b(n + 1);
        par::force_serial(true);
        par::suffix_sum(seg, a);
        const double sum_serial = par::sum(seg);
        const double max_serial = par::max(seg);
        par::force_serial(false);
        par::suffix_sum(seg, b);
        const double sum_omp = par::sum(seg);
        const double max_omp = par::max(seg);
        record("suffix_sum bit-identical",
               std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
        record("sum bit-identical", sum_serial == sum_omp);
        record("max bit-identical", max_serial == max_omp);
        record("openmp flag reporting consistent",
               par::openmp_compiled() || !par::openmp_active());
    }

    return testing::summary("test_parallel");
}
