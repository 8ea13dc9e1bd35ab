#include "bq1d/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#ifdef BQ1D_USE_OPENMP
#include <omp.h>
#endif

namespace bq1d::par {

namespace {
thread_local bool g_force_serial = false;

bool env_serial() {
    static const bool v = [] {
        const char* s = std::getenv("BQ1D_SERIAL");
        return s != nullptr && s[0] != '\0' && s[0] != '0';
    }();
    return v;
}
}  // namespace

bool openmp_compiled() {
#ifdef BQ1D_USE_OPENMP
    return true;
#else
    return false;
#endif
}

bool openmp_active() {
    return openmp_compiled() && !g_force_serial && !env_serial();
}

void force_serial(bool on) { g_force_serial = on; }

scoped_serial::scoped_serial() : previous_(g_force_serial) { g_force_serial = true; }
scoped_serial::~scoped_serial() { g_force_serial = previous_; }

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

void for_each_chunk(std::size_t n, void (*f)(std::size_t, void*), void* ctx) {
    const std::size_t nc = chunk_count(n);
    if (nc == 0) return;
#ifdef BQ1D_USE_OPENMP
    if (openmp_active() && nc > 1) {
        #pragma omp parallel for schedule(static)
        for (long long c = 0; c < static_cast<long long>(nc); ++c) {
            f(static_cast<std::size_t>(c), ctx);
        }
        return;
    }
#endif
    for (std::size_t c = 0; c < nc; ++c) f(c, ctx);
}

namespace {

template <class Fold>
double chunked_fold(std::span<const double> v, double init, Fold fold) {
    const std::size_t n = v.size();
    if (n == 0) return init;
    const std::size_t nc = chunk_count(n);
    std::vector<double> partial(nc, init);
    parallel_chunks(n, [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(lo + kChunk, n);
        double acc = init;
        for (std::size_t i = lo; i < hi; ++i) acc = fold(acc, v[i]);
        partial[c] = acc;
    });
    double acc = init;
    for (double p : partial) acc = fold(acc, p);
    return acc;
}

}  // namespace

double sum(std::span<const double> v) {
    return chunked_fold(v, 0.0, [](double a, double b) { return a + b; });
}

double max(std::span<const double> v) {
    return chunked_fold(v, -HUGE_VAL, [](double a, double b) { return a > b ? a : b; });
}

double max_abs(std::span<const double> v) {
    return chunked_fold(v, 0.0, [](double a, double b) {
        const double m = std::fabs(b);
        return a > m ? a : m;
    });
}

double min(std::span<const double> v) {
    return chunked_fold(v, HUGE_VAL, [](double a, double b) { return a < b ? a : b; });
}

void suffix_sum(std::span<const double> seg, std::span<double> out) {
    const std::size_t m = seg.size();
    // out has m+1 entries; out[m] = 0.
    out[m] = 0.0;
    if (m == 0) return;
    const std::size_t nc = chunk_count(m);
    std::vector<double> chunk_total(nc, 0.0);
    // Pass 1: suffix within each chunk, chunk totals recorded.
    parallel_chunks(m, [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(lo + kChunk, m);
        double acc = 0.0;
        for (std::size_t i = hi; i-- > lo;) {
            acc += seg[i];
            out[i] = acc;
        }
        chunk_total[c] = acc;
    });
    // Serial suffix of chunk totals gives each chunk's offset.
    std::vector<double> offset(nc, 0.0);
    double acc = 0.0;
    for (std::size_t c = nc; c-- > 0;) {
        offset[c] = acc;  // total of all chunks to the right
        acc += chunk_total[c];
    }
    // Pass 2: add offsets.
    parallel_chunks(m, [&](std::size_t c) {
        const double off = offset[c];
        if (off == 0.0) return;
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(lo + kChunk, m);
        for (std::size_t i = lo; i < hi; ++i) out[i] += off;
    });
}

}  // namespace bq1d::par
