#include "dlmc/samplers.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dlmc/numerics.hpp"
#include "dlmc/rbm.hpp"

namespace dlmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool mh_accept(double log_ratio, Rng& rng) {
  if (log_ratio >= 0.0) return true;
  return std::log(rng.uniform()) < log_ratio;
}

class DulaSampler : public Sampler {
 public:
  DulaSampler(const EnergyModel& model, DulaSpec spec)
      : model_(model), spec_(std::move(spec)) {
    spec_.cfg.validate(model.domain().dim());
  }

  std::string name() const override {
    return spec_.cfg.grad_source == GradSource::Stochastic ? "dula_stochastic" : "dula";
  }

  StepEvent step(State& s, Rng& rng) override {
    const Proposal p = build_proposal(model_, s, spec_.cfg, rng);
    State next = sample_proposal(p, rng);
    StepEvent ev;
    ev.n_coords_changed = hamming_distance(s, next);
    ev.proposed = next;
    ev.accepted = true;
    s = std::move(next);
    ev.energy_after = model_.energy(s);
    return ev;
  }

 private:
  const EnergyModel& model_;
  DulaSpec spec_;
};

class DmalaSampler : public Sampler {
 public:
  DmalaSampler(const EnergyModel& model, DmalaSpec spec)
      : model_(model), spec_(std::move(spec)) {
    spec_.cfg.validate(model.domain().dim());
    if (spec_.cfg.grad_source != GradSource::FullBatch)
      throw std::invalid_argument(
          "DMALA requires full-batch gradients; noisy gradients break the MH correction "
          "(use DULA for the stochastic variant)");
  }

  std::string name() const override { return "dmala"; }

  StepEvent step(State& s, Rng& rng) override {
    if (!cache_valid_ || !(cached_state_ == s)) {
      cached_energy_ = model_.energy(s);
      cached_grad_ = model_.grad_vec(s);
      cached_state_ = s;
      cache_valid_ = true;
    }
    const Proposal fwd =
        build_proposal_with_grad(model_.domain(), s, spec_.cfg, cached_grad_);
    State candidate = sample_proposal(fwd, rng);

    StepEvent ev;
    ev.proposed = candidate;
    if (candidate == s) {
      // self-proposal: the ratio is exactly 1
      ev.accepted = true;
      ev.n_coords_changed = 0;
      ev.log_accept_ratio = 0.0;
      ev.energy_after = cached_energy_;
      return ev;
    }

    const double cand_energy = model_.energy(candidate);
    const Eigen::VectorXd cand_grad = model_.grad_vec(candidate);
    const Proposal rev =
        build_proposal_with_grad(model_.domain(), candidate, spec_.cfg, cand_grad);
    const double log_fwd = proposal_logprob(fwd, candidate);
    const double log_rev = proposal_logprob(rev, s);
    double log_ratio = cand_energy - cached_energy_ + log_rev - log_fwd;
    if (log_fwd == kNegInf && log_rev == kNegInf) log_ratio = kNegInf;  // unreachable pair
    ev.log_accept_ratio = log_ratio;

    if (mh_accept(log_ratio, rng)) {
      ev.accepted = true;
      ev.n_coords_changed = hamming_distance(s, candidate);
      s = std::move(candidate);
      cached_state_ = s;
      cached_energy_ = cand_energy;
      cached_grad_ = cand_grad;
    } else {
      ev.accepted = false;
      ev.n_coords_changed = 0;
    }
    ev.energy_after = cached_energy_;
    return ev;
  }

 private:
  const EnergyModel& model_;
  DmalaSpec spec_;
  bool cache_valid_ = false;
  State cached_state_;
  double cached_energy_ = 0.0;
  Eigen::VectorXd cached_grad_;
};

// Single-site Gibbs: resamples one coordinate from its exact conditional
// p(theta_i | theta_-i) ~ exp(U), evaluated through the generic energy
// interface (S full evaluations per step).
class Gibbs1Sampler : public Sampler {
 public:
  Gibbs1Sampler(const EnergyModel& model, Gibbs1Spec spec,
                std::int64_t start_counter = 0)
      : model_(model), spec_(spec), counter_(start_counter) {
    if (model.domain().is_one_hot())
      throw std::invalid_argument("Gibbs1 expects scalar-coded coordinates");
  }

  std::string name() const override { return "gibbs1"; }

  StepEvent step(State& s, Rng& rng) override {
    const DiscreteDomain& domain = model_.domain();
    const int d = domain.dim();
    const int S = domain.n_values();
    const int i = spec_.order == CoordOrder::Systematic
                      ? static_cast<int>(counter_++ % d)
                      : static_cast<int>(rng.uniform_index(d));
    if (!cache_valid_ || !(cached_state_ == s)) {
      cached_energy_ = model_.energy(s);
      cached_state_ = s;
      cache_valid_ = true;
    }
    std::vector<double> logits(S), probs(S);
    std::vector<double> energies(S);
    State probe = s;
    for (int v = 0; v < S; ++v) {
      if (v == s.codes[i]) {
        energies[v] = cached_energy_;
      } else {
        probe.codes[i] = v;
        energies[v] = model_.energy(probe);
      }
      logits[v] = energies[v];
    }
    stable_softmax(logits, probs);
    const double u = rng.uniform();
    double acc = 0.0;
    int pick = S - 1;
    for (int v = 0; v < S; ++v) {
      acc += probs[v];
      if (u < acc) {
        pick = v;
        break;
      }
    }
    StepEvent ev;
    ev.n_coords_changed = pick != s.codes[i];
    s.codes[i] = pick;
    ev.proposed = s;
    ev.accepted = true;
    ev.energy_after = energies[pick];
    cached_state_ = s;
    cached_energy_ = energies[pick];
    return ev;
  }

 private:
  const EnergyModel& model_;
  Gibbs1Spec spec_;
  std::int64_t counter_ = 0;
  bool cache_valid_ = false;
  State cached_state_;
  double cached_energy_ = 0.0;
};

// Candidate list for the Hamming-1 ball samplers: entry 0 is the current
// state, followed by every single-coordinate change.
struct BallMove {
  int coord;  // -1 for the self entry
  int code;
};

class Lb1Sampler : public Sampler {
 public:
  Lb1Sampler(const EnergyModel& model, Lb1Spec spec) : model_(model), spec_(spec) {
    if (!(spec_.alpha > 0.0)) throw std::invalid_argument("LB1: alpha must be positive");
    if (model.domain().is_one_hot())
      throw std::invalid_argument("LB1 expects scalar-coded coordinates");
  }

  std::string name() const override { return "lb1"; }

  // Half-energy-difference weights over the ball around `s`; returns log
  // weights aligned with the moves() layout and the energies of candidates.
  void ball_log_weights(const State& s, double base_energy,
                        std::vector<double>& log_w, std::vector<double>& energy,
                        std::vector<BallMove>& moves) const {
    const DiscreteDomain& domain = model_.domain();
    const int d = domain.dim();
    const int S = domain.n_values();
    moves.clear();
    log_w.clear();
    energy.clear();
    moves.push_back({-1, 0});
    log_w.push_back(0.0);
    energy.push_back(base_energy);
    State probe = s;
    for (int i = 0; i < d; ++i) {
      const int cur = s.codes[i];
      for (int v = 0; v < S; ++v) {
        if (v == cur) continue;
        probe.codes[i] = v;
        const double u = model_.energy(probe);
        moves.push_back({i, v});
        energy.push_back(u);
        log_w.push_back(0.5 * (u - base_energy) -
                        domain.sq_dist(v, cur) / (2.0 * spec_.alpha));
      }
      probe.codes[i] = cur;
    }
  }

  StepEvent step(State& s, Rng& rng) override {
    if (!cache_valid_ || !(cached_state_ == s)) {
      cached_energy_ = model_.energy(s);
      cached_state_ = s;
      cache_valid_ = true;
    }
    std::vector<double> log_w, energies;
    std::vector<BallMove> moves;
    ball_log_weights(s, cached_energy_, log_w, energies, moves);
    const double lse_fwd = log_sum_exp(log_w);
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t pick = log_w.size() - 1;
    for (std::size_t k = 0; k < log_w.size(); ++k) {
      acc += std::exp(log_w[k] - lse_fwd);
      if (u < acc) {
        pick = k;
        break;
      }
    }

    StepEvent ev;
    if (moves[pick].coord < 0) {
      ev.proposed = s;
      ev.accepted = true;
      ev.n_coords_changed = 0;
      ev.log_accept_ratio = 0.0;
      ev.energy_after = cached_energy_;
      return ev;
    }

    State candidate = s;
    candidate.codes[moves[pick].coord] = moves[pick].code;
    const double cand_energy = energies[pick];
    ev.proposed = candidate;

    std::vector<double> rev_log_w, rev_energies;
    std::vector<BallMove> rev_moves;
    ball_log_weights(candidate, cand_energy, rev_log_w, rev_energies, rev_moves);
    const double lse_rev = log_sum_exp(rev_log_w);
    // locate the reverse move (same coordinate, back to the old code)
    const int coord = moves[pick].coord;
    const int old_code = s.codes[coord];
    double rev_logit = kNegInf;
    for (std::size_t k = 0; k < rev_moves.size(); ++k) {
      if (rev_moves[k].coord == coord && rev_moves[k].code == old_code) {
        rev_logit = rev_log_w[k];
        break;
      }
    }
    const double log_ratio = (cand_energy - cached_energy_) +
                             (rev_logit - lse_rev) - (log_w[pick] - lse_fwd);
    ev.log_accept_ratio = log_ratio;
    if (mh_accept(log_ratio, rng)) {
      ev.accepted = true;
      ev.n_coords_changed = 1;
      s = std::move(candidate);
      cached_state_ = s;
      cached_energy_ = cand_energy;
    } else {
      ev.accepted = false;
      ev.n_coords_changed = 0;
    }
    ev.energy_after = cached_energy_;
    return ev;
  }

 private:
  const EnergyModel& model_;
  Lb1Spec spec_;
  bool cache_valid_ = false;
  State cached_state_;
  double cached_energy_ = 0.0;
};

class GradFlip1Sampler : public Sampler {
 public:
  GradFlip1Sampler(const EnergyModel& model) : model_(model) {
    if (model.domain().is_one_hot())
      throw std::invalid_argument("GradFlip1 expects scalar-coded coordinates");
  }

  std::string name() const override { return "gradflip1"; }

  // log weights of all single-coordinate moves from s given the gradient at s
  void move_log_weights(const State& s, const Eigen::VectorXd& g,
                        std::vector<double>& log_w, std::vector<BallMove>& moves) const {
    const DiscreteDomain& domain = model_.domain();
    moves.clear();
    log_w.clear();
    for (int i = 0; i < domain.dim(); ++i) {
      const double v_cur = domain.coord_value(s.codes[i]);
      for (int v = 0; v < domain.n_values(); ++v) {
        if (v == s.codes[i]) continue;
        moves.push_back({i, v});
        log_w.push_back(0.5 * g[i] * (domain.coord_value(v) - v_cur));
      }
    }
  }

  StepEvent step(State& s, Rng& rng) override {
    if (!cache_valid_ || !(cached_state_ == s)) {
      cached_energy_ = model_.energy(s);
      cached_grad_ = model_.grad_vec(s);
      cached_state_ = s;
      cache_valid_ = true;
    }
    std::vector<double> log_w;
    std::vector<BallMove> moves;
    move_log_weights(s, cached_grad_, log_w, moves);
    const double lse_fwd = log_sum_exp(log_w);
    const double u = rng.uniform();
    double acc = 0.0;
    std::size_t pick = log_w.size() - 1;
    for (std::size_t k = 0; k < log_w.size(); ++k) {
      acc += std::exp(log_w[k] - lse_fwd);
      if (u < acc) {
        pick = k;
        break;
      }
    }
    State candidate = s;
    candidate.codes[moves[pick].coord] = moves[pick].code;

    StepEvent ev;
    ev.proposed = candidate;
    const double cand_energy = model_.energy(candidate);
    const Eigen::VectorXd cand_grad = model_.grad_vec(candidate);
    std::vector<double> rev_log_w;
    std::vector<BallMove> rev_moves;
    move_log_weights(candidate, cand_grad, rev_log_w, rev_moves);
    const double lse_rev = log_sum_exp(rev_log_w);
    const int coord = moves[pick].coord;
    const int old_code = s.codes[coord];
    double rev_logit = kNegInf;
    for (std::size_t k = 0; k < rev_moves.size(); ++k) {
      if (rev_moves[k].coord == coord && rev_moves[k].code == old_code) {
        rev_logit = rev_log_w[k];
        break;
      }
    }
    const double log_ratio = (cand_energy - cached_energy_) +
                             (rev_logit - lse_rev) - (log_w[pick] - lse_fwd);
    ev.log_accept_ratio = log_ratio;
    if (mh_accept(log_ratio, rng)) {
      ev.accepted = true;
      ev.n_coords_changed = 1;
      s = std::move(candidate);
      cached_state_ = s;
      cached_energy_ = cand_energy;
      cached_grad_ = cand_grad;
    } else {
      ev.accepted = false;
      ev.n_coords_changed = 0;
    }
    ev.energy_after = cached_energy_;
    return ev;
  }

 private:
  const EnergyModel& model_;
  bool cache_valid_ = false;
  State cached_state_;
  double cached_energy_ = 0.0;
  Eigen::VectorXd cached_grad_;
};

class RbmBlockGibbsSampler : public Sampler {
 public:
  explicit RbmBlockGibbsSampler(const RbmModel& model) : model_(model) {}

  std::string name() const override { return "block_gibbs"; }

  StepEvent step(State& s, Rng& rng) override {
    const Eigen::VectorXd ph = model_.hidden_conditional(s);
    Eigen::VectorXd h(ph.size());
    for (Eigen::Index j = 0; j < ph.size(); ++j) h[j] = rng.bernoulli(ph[j]) ? 1.0 : 0.0;
    const Eigen::VectorXd px = model_.visible_conditional(h);
    State next = s;
    for (Eigen::Index i = 0; i < px.size(); ++i)
      next.codes[i] = rng.bernoulli(px[i]) ? 1 : 0;
    StepEvent ev;
    ev.proposed = next;
    ev.accepted = true;
    ev.n_coords_changed = hamming_distance(s, next);
    s = std::move(next);
    ev.energy_after = model_.energy(s);
    return ev;
  }

 private:
  const RbmModel& model_;
};

}  // namespace

std::string sampler_name(const SamplerSpec& spec) {
  return std::visit(
      [](const auto& sp) -> std::string {
        using T = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<T, DulaSpec>)
          return sp.cfg.grad_source == GradSource::Stochastic ? "dula_stochastic" : "dula";
        else if constexpr (std::is_same_v<T, DmalaSpec>)
          return "dmala";
        else if constexpr (std::is_same_v<T, Gibbs1Spec>)
          return "gibbs1";
        else if constexpr (std::is_same_v<T, Lb1Spec>)
          return "lb1";
        else if constexpr (std::is_same_v<T, GradFlip1Spec>)
          return "gradflip1";
        else
          return "block_gibbs";
      },
      spec);
}

std::unique_ptr<Sampler> make_sampler(const SamplerSpec& spec,
                                      const EnergyModel& model) {
  return std::visit(
      [&](const auto& sp) -> std::unique_ptr<Sampler> {
        using T = std::decay_t<decltype(sp)>;
        if constexpr (std::is_same_v<T, DulaSpec>) {
          if (sp.cfg.grad_source == GradSource::Stochastic &&
              !model.supports_stoch_grad())
            throw std::invalid_argument("stochastic DULA needs a model with stoch_grad");
          return std::make_unique<DulaSampler>(model, sp);
        } else if constexpr (std::is_same_v<T, DmalaSpec>) {
          return std::make_unique<DmalaSampler>(model, sp);
        } else if constexpr (std::is_same_v<T, Gibbs1Spec>) {
          return std::make_unique<Gibbs1Sampler>(model, sp);
        } else if constexpr (std::is_same_v<T, Lb1Spec>) {
          return std::make_unique<Lb1Sampler>(model, sp);
        } else if constexpr (std::is_same_v<T, GradFlip1Spec>) {
          return std::make_unique<GradFlip1Sampler>(model);
        } else {
          const auto* rbm = dynamic_cast<const RbmModel*>(&model);
          if (!rbm)
            throw std::invalid_argument("block-Gibbs requires an RbmModel");
          return std::make_unique<RbmBlockGibbsSampler>(*rbm);
        }
      },
      spec);
}

StepEvent step_dula(const EnergyModel& m, State& s, const DlpConfig& cfg, Rng& rng) {
  DulaSampler sampler(m, DulaSpec{cfg});
  return sampler.step(s, rng);
}

StepEvent step_dmala(const EnergyModel& m, State& s, const DlpConfig& cfg, Rng& rng) {
  DmalaSampler sampler(m, DmalaSpec{cfg});
  return sampler.step(s, rng);
}

StepEvent step_gibbs1(const EnergyModel& m, State& s, Rng& rng, CoordOrder order,
                      std::int64_t step_index) {
  Gibbs1Sampler sampler(m, Gibbs1Spec{order}, step_index);
  return sampler.step(s, rng);
}

StepEvent step_lb1(const EnergyModel& m, State& s, double alpha, Rng& rng) {
  Lb1Sampler sampler(m, Lb1Spec{alpha});
  return sampler.step(s, rng);
}

}  // namespace dlmc
