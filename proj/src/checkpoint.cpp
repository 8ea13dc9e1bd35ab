#include "bq1d/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace bq1d {

static_assert(std::endian::native == std::endian::little,
              "checkpoint format assumes a little-endian host");

namespace {

constexpr char kMagic[8] = {'B', 'Q', '1', 'D', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u64(std::ofstream& f, std::uint64_t v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_f64(std::ofstream& f, double v) {
    f.write(reinterpret_cast<const char*>(&v), sizeof v);
}
void put_vec(std::ofstream& f, const std::vector<double>& v) {
    put_u64(f, v.size());
    f.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
}

std::uint64_t get_u64(std::ifstream& f) {
    std::uint64_t v = 0;
    f.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
double get_f64(std::ifstream& f) {
    double v = 0;
    f.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}
std::vector<double> get_vec(std::ifstream& f) {
    const std::uint64_t n = get_u64(f);
    if (n > (1ull << 32)) throw std::runtime_error("checkpoint: implausible array length");
    std::vector<double> v(n);
    f.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(double)));
    return v;
}

}  // namespace

void write_checkpoint(const std::string& path, const Checkpoint& c) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_checkpoint: cannot open " + path);
    f.write(kMagic, sizeof kMagic);
    const std::uint32_t ver = kVersion;
    f.write(reinterpret_cast<const char*>(&ver), sizeof ver);
    put_u64(f, c.step_index);
    put_f64(f, c.state.t);
    put_u64(f, c.state.broken ? 1 : 0);
    put_vec(f, c.state.label);
    put_vec(f, c.state.pos);
    put_vec(f, c.state.rho);
    put_vec(f, c.state.omega);
    put_vec(f, c.tracked_labels);
    put_u64(f, c.records.size());
    for (const StepRecord& r : c.records) {
        put_f64(f, r.t);
        put_f64(f, r.sup_omega);
        put_f64(f, r.sup_dxu);
        put_f64(f, r.sup_dxrho);
        put_f64(f, r.l2_omega);
        put_f64(f, r.min_gap_ratio);
        put_f64(f, r.x_min_omega);
        put_f64(f, r.phi_half);
        put_u64(f, r.tracked.size());
        for (const TrackedSample& ts : r.tracked) {
            put_f64(f, ts.pos);
            put_f64(f, ts.omega_cap);
            put_f64(f, ts.rhs_sq);
            put_f64(f, ts.rhs_rho);
            put_f64(f, ts.rhs_mid);
        }
    }
    if (!f) throw std::runtime_error("write_checkpoint: write failed for " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_checkpoint: cannot open " + path);
    char magic[8];
    f.read(magic, sizeof magic);
    if (!f || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw std::runtime_error("read_checkpoint: bad magic in " + path);
    std::uint32_t ver = 0;
    f.read(reinterpret_cast<char*>(&ver), sizeof ver);
    if (ver != kVersion) throw std::runtime_error("read_checkpoint: unsupported version");
    Checkpoint c;
    c.step_index = get_u64(f);
    c.state.t = get_f64(f);
    c.state.broken = get_u64(f) != 0;
    c.state.label = get_vec(f);
    c.state.pos = get_vec(f);
    c.state.rho = get_vec(f);
    c.state.omega = get_vec(f);
    c.tracked_labels = get_vec(f);
    const std::uint64_t nrec = get_u64(f);
    if (nrec > (1ull << 32)) throw std::runtime_error("checkpoint: implausible record count");
    c.records.resize(nrec);
    for (StepRecord& r : c.records) {
        r.t = get_f64(f);
        r.sup_omega = get_f64(f);
        r.sup_dxu = get_f64(f);
        r.sup_dxrho = get_f64(f);
        r.l2_omega = get_f64(f);
        r.min_gap_ratio = get_f64(f);
        r.x_min_omega = get_f64(f);
        r.phi_half = get_f64(f);
        const std::uint64_t nt = get_u64(f);
        if (nt > (1ull << 20)) throw std::runtime_error("checkpoint: implausible tracked count");
        r.tracked.resize(nt);
        for (TrackedSample& ts : r.tracked) {
            ts.pos = get_f64(f);
            ts.omega_cap = get_f64(f);
            ts.rhs_sq = get_f64(f);
            ts.rhs_rho = get_f64(f);
            ts.rhs_mid = get_f64(f);
        }
    }
    if (!f) throw std::runtime_error("read_checkpoint: truncated file " + path);
    return c;
}

}  // namespace bq1d
