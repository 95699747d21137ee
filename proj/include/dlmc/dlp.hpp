#pragma once

#include <optional>

#include <Eigen/Core>

#include "dlmc/energy_model.hpp"

namespace dlmc {

enum class GradSource { FullBatch, Stochastic };

// Settings for the discrete Langevin proposal. `precond` holds per-coordinate
// positive stepsize scales g_i: coordinate i uses an effective stepsize
// alpha * g_i in the locality penalty (g_i = 1 when absent reproduces the
// unscaled proposal bitwise). `locality_term` exists for the ablation that
// removes the squared-displacement penalty; it is not a sampling mode.
struct DlpConfig {
  double alpha = 0.1;
  std::optional<Eigen::VectorXd> precond;
  GradSource grad_source = GradSource::FullBatch;
  MinibatchSpec minibatch{};
  bool locality_term = true;

  void validate(int dim) const;
};

// d independent categorical distributions over per-coordinate successor
// values, built from one gradient evaluation at the current state:
//   logit_i(v) = 1/2 grad_i (v - theta_i) - (v - theta_i)^2 / (2 alpha g_i),
// with the one-hot vector form 1/2 grad_i'(v - theta_i) - |v - theta_i|^2/(2 alpha g_i)
// for one-hot coordinates. Supports exact log-probability evaluation of any
// candidate state, which is what the MH correction consumes.
class Proposal {
 public:
  const DiscreteDomain& domain() const { return domain_; }
  const State& current() const { return current_; }
  int dim() const { return domain_.dim(); }
  int n_candidates() const { return domain_.n_values(); }

  double prob(int coord, int code) const { return probs_(coord, code); }
  double log_prob_entry(int coord, int code) const { return log_probs_(coord, code); }

  // Gradient vector the tables were built from.
  const Eigen::VectorXd& grad_used() const { return grad_; }

  // Sum over coordinates of log sum_v exp(logit_i(v)) with the current-value
  // logit fixed at 0; this is the joint proposal normalizer Z_alpha(theta)
  // appearing in the unadjusted chain's stationary distribution.
  double log_normalizer() const { return log_normalizer_; }

  // Assemble a proposal directly from per-coordinate probability tables
  // (rows = coordinates). Low-level hook for tests and synthetic tables.
  static Proposal from_tables(const DiscreteDomain& domain, const State& current,
                              const Eigen::MatrixXd& tables);

 private:
  friend Proposal build_proposal(const EnergyModel&, const State&,
                                 const DlpConfig&, Rng&);
  Proposal() : domain_(DiscreteDomain::binary01(1)) {}

  DiscreteDomain domain_;
  State current_;
  Eigen::MatrixXd probs_;      // dim x S
  Eigen::MatrixXd log_probs_;  // dim x S; -inf where flushed to zero
  Eigen::VectorXd grad_;
  double log_normalizer_ = 0.0;
};

// Builds the proposal at `s`. rng is consumed only when cfg requests a
// stochastic gradient (one draw per call). Throws std::domain_error on a
// non-finite gradient.
Proposal build_proposal(const EnergyModel& model, const State& s,
                        const DlpConfig& cfg, Rng& rng);

// Deterministic core: builds the tables from an already-evaluated gradient.
// Used by MH samplers and exact kernels that reuse cached gradients.
Proposal build_proposal_with_grad(const DiscreteDomain& domain, const State& s,
                                  const DlpConfig& cfg,
                                  const Eigen::VectorXd& grad);

// Draws each coordinate independently from its categorical table.
// Coordinate draws come from a counter-based stream, so the result does not
// depend on coordinate evaluation order.
State sample_proposal(const Proposal& p, Rng& rng);

// log q(to | current) = sum_i log q_i(to_i | current); -inf when some
// coordinate's probability was flushed to zero (a valid MH reject).
double proposal_logprob(const Proposal& p, const State& to);

// Closed-form per-coordinate flip probabilities for two-valued domains
// (binary {0,1} or spin {-1,+1}); the vectorized special case of the
// categorical tables. Sampling flips coordinate i iff u_i <= P_i.
Eigen::VectorXd binary_flip_probs(const EnergyModel& model, const State& s,
                                  double alpha);

// Measures how far the averaged stochastic proposal sits from the full-batch
// proposal, coordinate by coordinate, together with the theoretical bound
// 2 sigma_hat exp(-1/(2 alpha) + L_hat) evaluated from the same draws.
struct StochasticBiasProbe {
  Eigen::VectorXd l1_per_coord;  // || mean_n qhat_i - q_i ||_1
  double sigma_hat = 0.0;        // max per-coordinate gradient std
  double l_hat = 0.0;            // max observed |gradient| entry
  double bound = 0.0;
};

StochasticBiasProbe stochastic_proposal_bias_probe(const EnergyModel& model,
                                                   const State& s, double alpha,
                                                   int n_draws,
                                                   const MinibatchSpec& mb,
                                                   Rng& rng);

}  // namespace dlmc
