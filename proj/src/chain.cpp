#include "dlmc/chain.hpp"

#include <chrono>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace dlmc {

void RunOptions::validate() const {
  if (n_steps < 0) throw std::invalid_argument("n_steps must be >= 0");
  if (burn_in < 0 || burn_in > n_steps)
    throw std::invalid_argument("burn_in must lie in [0, n_steps]");
  if (thin < 1) throw std::invalid_argument("thin must be >= 1");
}

FlipStats flip_stats(const Trace& trace) { return trace.flip_stats(); }

Trace run_chain(const EnergyModel& model, const SamplerSpec& spec,
                const State& theta0, const RunOptions& opts, Rng& rng,
                const std::vector<Recorder*>& recorders) {
  opts.validate();
  check_state(model.domain(), theta0);
  auto sampler = make_sampler(spec, model);

  Trace trace;
  trace.n_steps = opts.n_steps;
  trace.burn_in = opts.burn_in;
  trace.thin = opts.thin;

  State s = theta0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::int64_t step = 0; step < opts.n_steps; ++step) {
    const StepEvent ev = sampler->step(s, rng);
    if (step < opts.burn_in) continue;
    trace.n_events += 1;
    trace.n_accepted += ev.accepted ? 1 : 0;
    trace.sum_coords_changed += ev.n_coords_changed;
    trace.moments.add(model.domain(), s);
    if ((step - opts.burn_in) % opts.thin != 0) continue;
    trace.steps.push_back(step);
    if (opts.record_energy) trace.energies.push_back(ev.energy_after);
    trace.accepted.push_back(ev.accepted ? 1 : 0);
    trace.coords_changed.push_back(ev.n_coords_changed);
    if (opts.record_samples) trace.samples.push_back(s);
    for (Recorder* r : recorders) r->on_step(step, s, ev);
  }
  trace.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return trace;
}

namespace {

void fnv_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

std::uint64_t trace_digest(const Trace& trace) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv_bytes(h, trace.steps.data(), trace.steps.size() * sizeof(std::int64_t));
  fnv_bytes(h, trace.energies.data(), trace.energies.size() * sizeof(double));
  fnv_bytes(h, trace.accepted.data(), trace.accepted.size());
  fnv_bytes(h, trace.coords_changed.data(),
            trace.coords_changed.size() * sizeof(std::int32_t));
  for (const State& s : trace.samples)
    fnv_bytes(h, s.codes.data(), s.codes.size() * sizeof(std::int32_t));
  return h;
}

void save_trace_csv(const Trace& trace, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << "step,energy,accepted,coords_changed\n";
  char buf[64];
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const double e = i < trace.energies.size() ? trace.energies[i] : 0.0;
    std::snprintf(buf, sizeof buf, "%.17g", e);
    f << trace.steps[i] << ',' << buf << ',' << int(trace.accepted[i]) << ','
      << trace.coords_changed[i] << '\n';
  }
}

void save_samples_binary(const std::vector<State>& samples, int dim,
                         const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  const char magic[8] = {'D', 'L', 'M', 'C', 'S', 'M', 'P', '1'};
  f.write(magic, 8);
  const std::uint32_t d = static_cast<std::uint32_t>(dim);
  const std::uint64_t count = samples.size();
  const std::uint8_t width = 1;  // codes fit a byte for S <= 256
  f.write(reinterpret_cast<const char*>(&d), 4);
  f.write(reinterpret_cast<const char*>(&count), 8);
  f.write(reinterpret_cast<const char*>(&width), 1);
  std::vector<std::uint8_t> row(dim);
  for (const State& s : samples) {
    if (s.dim() != dim) throw std::invalid_argument("sample dim mismatch");
    for (int i = 0; i < dim; ++i) {
      if (s.codes[i] < 0 || s.codes[i] > 255)
        throw std::invalid_argument("sample code does not fit value width 1");
      row[i] = static_cast<std::uint8_t>(s.codes[i]);
    }
    f.write(reinterpret_cast<const char*>(row.data()), dim);
  }
}

std::vector<State> load_samples_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, "DLMCSMP1", 8) != 0)
    throw std::runtime_error("bad sample dump magic in " + path);
  std::uint32_t d = 0;
  std::uint64_t count = 0;
  std::uint8_t width = 0;
  f.read(reinterpret_cast<char*>(&d), 4);
  f.read(reinterpret_cast<char*>(&count), 8);
  f.read(reinterpret_cast<char*>(&width), 1);
  if (!f || width != 1) throw std::runtime_error("unsupported sample dump header in " + path);
  std::vector<State> out(count);
  std::vector<std::uint8_t> row(d);
  for (std::uint64_t n = 0; n < count; ++n) {
    f.read(reinterpret_cast<char*>(row.data()), d);
    if (!f) throw std::runtime_error("truncated sample dump: " + path);
    out[n].codes.assign(row.begin(), row.end());
  }
  return out;
}

}  // namespace dlmc
