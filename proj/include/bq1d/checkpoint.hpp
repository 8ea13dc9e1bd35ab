#pragma once

// Versioned binary checkpoint: step index, full particle state, tracked
// labels, and the per-step record history up to the checkpoint. Storing
// the records makes a resumed run's artifacts byte-identical from t = 0.
// Format: magic "BQ1DCKPT", u32 version, then little-endian 64-bit fields.

#include <string>
#include <vector>

#include "bq1d/solver.hpp"

namespace bq1d {

struct Checkpoint {
    std::uint64_t step_index = 0;
    ParticleState state;
    std::vector<double> tracked_labels;
    std::vector<StepRecord> records;
};

void write_checkpoint(const std::string& path, const Checkpoint& c);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace bq1d
