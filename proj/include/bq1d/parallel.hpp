#pragma once

// Data-parallel kernel layer. Every kernel is defined over a fixed chunk
// decomposition of the index range, and partial results are combined in
// chunk order. The OpenMP backend and the serial reference therefore
// produce bit-identical results for any thread count, which the rest of
// the code relies on for reproducible runs and checkpoint-resume.

#include <cstddef>
#include <span>
#include <vector>

namespace bq1d::par {

// Chunk size of the fixed decomposition. Frozen: changing it changes the
// rounding of chunked sums (an algorithm change, not a backend change).
inline constexpr std::size_t kChunk = 1024;

// Backend selection. The OpenMP backend is used when compiled in and not
// suppressed; scoped_serial suppresses it on the current thread (used by
// sweep workers, which parallelize across runs instead).
bool openmp_compiled();
bool openmp_active();
void force_serial(bool on);

class scoped_serial {
public:
    scoped_serial();
    ~scoped_serial();
    scoped_serial(const scoped_serial&) = delete;
    scoped_serial& operator=(const scoped_serial&) = delete;

private:
    bool previous_;
};

std::size_t chunk_count(std::size_t n);

// Runs f(c) for each chunk index c in [0, chunk_count(n)). Chunks are
// independent; f must only write state owned by its chunk.
void for_each_chunk(std::size_t n, void (*f)(std::size_t, void*), void* ctx);

template <class F>
void parallel_chunks(std::size_t n, F&& f) {
    auto thunk = [](std::size_t c, void* ctx) { (*static_cast<F*>(ctx))(c); };
    for_each_chunk(n, thunk, &f);
}

// Elementwise map: out[i] = f(i). Disjoint writes, bit-exact by construction.
template <class F>
void parallel_map(std::size_t n, F&& f) {
    parallel_chunks(n, [&](std::size_t c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
        for (std::size_t i = lo; i < hi; ++i) f(i);
    });
}

// Chunked reductions: per-chunk partials evaluated left-to-right within the
// chunk, then combined serially in chunk order.
double sum(std::span<const double> v);
double max(std::span<const double> v);
double max_abs(std::span<const double> v);
double min(std::span<const double> v);

// Suffix "integral" scan: given per-segment values s_0..s_{m-1}, returns
// out_i = s_i + s_{i+1} + ... + s_{m-1} with out_m = 0, evaluated per chunk
// and offset by the serial suffix of chunk totals.
void suffix_sum(std::span<const double> seg, std::span<double> out);

}  // namespace bq1d::par
