#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dlmc/diagnostics.hpp"
#include "dlmc/samplers.hpp"

namespace dlmc {

struct RunOptions {
  std::int64_t n_steps = 0;
  std::int64_t burn_in = 0;  // events before this step index are warmup
  std::int64_t thin = 1;     // record every thin-th post-burn-in step
  bool record_samples = false;
  bool record_energy = true;

  void validate() const;
};

// Receives every post-burn-in, thinned state/event pair.
class Recorder {
 public:
  virtual ~Recorder() = default;
  virtual void on_step(std::int64_t step, const State& s, const StepEvent& ev) = 0;
};

// Chain output: post-burn-in event counters, thinned series, and running
// moments. Recorded series are deterministic for a fixed seed; wall timing
// is carried separately and never enters digests.
struct Trace {
  std::int64_t n_steps = 0;
  std::int64_t burn_in = 0;
  std::int64_t thin = 1;

  // post-burn-in event counters (every step, not thinned)
  std::int64_t n_events = 0;
  std::int64_t n_accepted = 0;
  std::int64_t sum_coords_changed = 0;

  // thinned records
  std::vector<std::int64_t> steps;
  std::vector<double> energies;
  std::vector<std::uint8_t> accepted;
  std::vector<std::int32_t> coords_changed;
  std::vector<State> samples;  // only when record_samples

  MomentAccumulator moments;  // over all post-burn-in states
  double wall_seconds = 0.0;

  FlipStats flip_stats() const {
    return flip_stats_from_counts(n_events, n_accepted, sum_coords_changed);
  }
  double seconds_per_step() const {
    return n_steps > 0 ? wall_seconds / static_cast<double>(n_steps) : 0.0;
  }
};

FlipStats flip_stats(const Trace& trace);

// Runs `sampler` (built from spec) for opts.n_steps from theta0, feeding
// post-burn-in thinned steps to the trace and any extra recorders.
Trace run_chain(const EnergyModel& model, const SamplerSpec& spec,
                const State& theta0, const RunOptions& opts, Rng& rng,
                const std::vector<Recorder*>& recorders = {});

// FNV-1a digest over the recorded series (samples, energies, flags);
// identical seeds and configs give identical digests.
std::uint64_t trace_digest(const Trace& trace);

// One row per recorded step: step,energy,accepted,coords_changed.
void save_trace_csv(const Trace& trace, const std::string& path);

// Compact sample dump. Header: magic "DLMCSMP1" (8 bytes), uint32 dim,
// uint64 count, uint8 value width in bytes; then count*dim codes.
void save_samples_binary(const std::vector<State>& samples, int dim,
                         const std::string& path);
std::vector<State> load_samples_binary(const std::string& path);

}  // namespace dlmc
