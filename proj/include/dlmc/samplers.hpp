#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "dlmc/dlp.hpp"

namespace dlmc {

// Per-step record emitted by every sampler. For unadjusted samplers
// `accepted` is always true and log_accept_ratio is empty.
struct StepEvent {
  State proposed;
  bool accepted = true;
  int n_coords_changed = 0;           // Hamming(pre-step, post-step)
  std::optional<double> log_accept_ratio;
  double energy_after = 0.0;
};

enum class CoordOrder { Systematic, Random };

struct DulaSpec {
  DlpConfig cfg;
};
struct DmalaSpec {
  DlpConfig cfg;  // grad_source must be FullBatch (MH needs exact q)
};
struct Gibbs1Spec {
  CoordOrder order = CoordOrder::Systematic;
};
// Locally-balanced proposal over the Hamming-1 ball plus the current state,
// MH-corrected. alpha only weighs the self term against single moves; a
// large alpha recovers the pure sqrt-weight proposal.
struct Lb1Spec {
  double alpha = 1e6;
};
// Simplified gradient-informed single-flip baseline: proposes one coordinate
// change drawn from the softmax of first-order Taylor half-energy-changes
// over all single-coordinate moves, MH-corrected.
struct GradFlip1Spec {};
struct RbmBlockGibbsSpec {};

using SamplerSpec = std::variant<DulaSpec, DmalaSpec, Gibbs1Spec, Lb1Spec,
                                 GradFlip1Spec, RbmBlockGibbsSpec>;

std::string sampler_name(const SamplerSpec& spec);

// A chain driver bound to one model. step() advances the state in place and
// reports what happened. Samplers own per-chain caches only; the model is
// shared and immutable, so chains may run concurrently.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual std::string name() const = 0;
  virtual StepEvent step(State& s, Rng& rng) = 0;
};

// Builds a sampler for the spec; validates model/spec compatibility
// (e.g. block-Gibbs requires an RbmModel, DMALA requires full-batch
// gradients).
std::unique_ptr<Sampler> make_sampler(const SamplerSpec& spec,
                                      const EnergyModel& model);

// Single-step helpers matching the sampler variants; thin wrappers used by
// tests that want one transition without constructing a chain.
StepEvent step_dula(const EnergyModel& m, State& s, const DlpConfig& cfg, Rng& rng);
StepEvent step_dmala(const EnergyModel& m, State& s, const DlpConfig& cfg, Rng& rng);
StepEvent step_gibbs1(const EnergyModel& m, State& s, Rng& rng,
                      CoordOrder order = CoordOrder::Random,
                      std::int64_t step_index = 0);
StepEvent step_lb1(const EnergyModel& m, State& s, double alpha, Rng& rng);

}  // namespace dlmc
