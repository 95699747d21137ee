#include "dlmc/dlp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dlmc/numerics.hpp"

namespace dlmc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_finite_grad(const Eigen::VectorXd& g) {
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (!std::isfinite(g[i]))
      throw std::domain_error("DLP: non-finite gradient entry (invalid energy model state)");
}

}  // namespace

void DlpConfig::validate(int dim) const {
  if (!(alpha > 0.0)) throw std::invalid_argument("DLP stepsize must be positive");
  if (precond) {
    if (precond->size() != dim)
      throw std::invalid_argument("DLP preconditioner length must equal dim");
    for (Eigen::Index i = 0; i < precond->size(); ++i)
      if (!((*precond)[i] > 0.0))
        throw std::invalid_argument("DLP preconditioner entries must be positive");
  }
  if (grad_source == GradSource::Stochastic &&
      (minibatch.batch_size < 1 || minibatch.data_size < 1))
    throw std::invalid_argument("stochastic DLP requires a valid minibatch spec");
}

Proposal Proposal::from_tables(const DiscreteDomain& domain, const State& current,
                               const Eigen::MatrixXd& tables) {
  check_state(domain, current);
  if (tables.rows() != domain.dim() || tables.cols() != domain.n_values())
    throw std::invalid_argument("Proposal::from_tables: table shape mismatch");
  Proposal p;
  p.domain_ = domain;
  p.current_ = current;
  p.probs_ = tables;
  p.log_probs_.resize(tables.rows(), tables.cols());
  for (Eigen::Index i = 0; i < tables.rows(); ++i) {
    const double row_sum = tables.row(i).sum();
    if (std::abs(row_sum - 1.0) > 1e-10)
      throw std::invalid_argument("Proposal::from_tables: row does not sum to 1");
    for (Eigen::Index k = 0; k < tables.cols(); ++k)
      p.log_probs_(i, k) =
          tables(i, k) < kProbFlushThreshold ? kNegInf : std::log(tables(i, k));
  }
  p.grad_ = Eigen::VectorXd::Zero(domain.grad_dim());
  p.log_normalizer_ = 0.0;
  return p;
}

Proposal build_proposal(const EnergyModel& model, const State& s,
                        const DlpConfig& cfg, Rng& rng) {
  const DiscreteDomain& domain = model.domain();
  Eigen::VectorXd g(domain.grad_dim());
  std::span<double> gs(g.data(), static_cast<std::size_t>(g.size()));
  if (cfg.grad_source == GradSource::Stochastic) {
    check_state(domain, s);
    cfg.validate(domain.dim());
    model.stoch_grad(s, cfg.minibatch, rng, gs);
  } else {
    model.grad(s, gs);
  }
  return build_proposal_with_grad(domain, s, cfg, g);
}

Proposal build_proposal_with_grad(const DiscreteDomain& domain, const State& s,
                                  const DlpConfig& cfg,
                                  const Eigen::VectorXd& g) {
  check_state(domain, s);
  cfg.validate(domain.dim());
  if (g.size() != domain.grad_dim())
    throw std::invalid_argument("build_proposal_with_grad: gradient length mismatch");
  check_finite_grad(g);

  const int d = domain.dim();
  const int S = domain.n_values();
  Proposal p;
  p.domain_ = domain;
  p.current_ = s;
  p.grad_ = g;
  p.probs_.resize(d, S);
  p.log_probs_.resize(d, S);

  std::vector<double> logits(S), probs(S);
  double log_norm = 0.0;
  for (int i = 0; i < d; ++i) {
    const double gi = cfg.precond ? (*cfg.precond)[i] : 1.0;
    const int cur = s.codes[i];
    if (domain.is_one_hot()) {
      const double g_cur = g[i * S + cur];
      for (int k = 0; k < S; ++k) {
        const double grad_term = 0.5 * (g[i * S + k] - g_cur);
        const double penalty =
            cfg.locality_term ? domain.sq_dist(k, cur) / (2.0 * cfg.alpha * gi) : 0.0;
        logits[k] = grad_term - penalty;
      }
    } else {
      const double v_cur = domain.coord_value(cur);
      for (int k = 0; k < S; ++k) {
        const double dv = domain.coord_value(k) - v_cur;
        const double penalty = cfg.locality_term ? dv * dv / (2.0 * cfg.alpha * gi) : 0.0;
        logits[k] = 0.5 * g[i] * dv - penalty;
      }
    }
    log_norm += log_sum_exp(logits);
    stable_softmax(logits, probs);
    for (int k = 0; k < S; ++k) {
      const double pk = probs[k] < kProbFlushThreshold ? 0.0 : probs[k];
      p.probs_(i, k) = pk;
      p.log_probs_(i, k) = pk == 0.0 ? kNegInf : std::log(pk);
    }
  }
  p.log_normalizer_ = log_norm;
  return p;
}

State sample_proposal(const Proposal& p, Rng& rng) {
  const std::uint64_t base = rng.next_u64();
  State out = p.current();
  const int d = p.dim();
  const int S = p.n_candidates();
  for (int i = 0; i < d; ++i) {
    const double u = coord_uniform(base, static_cast<std::uint64_t>(i));
    double acc = 0.0;
    int pick = S - 1;  // guard against rounding in the final bin
    for (int k = 0; k < S; ++k) {
      acc += p.prob(i, k);
      if (u < acc) {
        pick = k;
        break;
      }
    }
    out.codes[i] = pick;
  }
  return out;
}

double proposal_logprob(const Proposal& p, const State& to) {
  check_state(p.domain(), to);
  double lp = 0.0;
  for (int i = 0; i < p.dim(); ++i) lp += p.log_prob_entry(i, to.codes[i]);
  return lp;
}

Eigen::VectorXd binary_flip_probs(const EnergyModel& model, const State& s,
                                  double alpha) {
  const DiscreteDomain& domain = model.domain();
  if (domain.n_values() != 2 || domain.is_one_hot())
    throw std::invalid_argument("binary_flip_probs: domain must be two-valued");
  if (!(alpha > 0.0)) throw std::invalid_argument("binary_flip_probs: alpha must be positive");
  check_state(domain, s);

  const Eigen::VectorXd g = model.grad_vec(s);
  check_finite_grad(g);
  Eigen::VectorXd p(domain.dim());
  for (int i = 0; i < domain.dim(); ++i) {
    const double v_cur = domain.coord_value(s.codes[i]);
    const double dv = domain.coord_value(1 - s.codes[i]) - v_cur;
    p[i] = sigmoid(0.5 * g[i] * dv - dv * dv / (2.0 * alpha));
  }
  return p;
}

StochasticBiasProbe stochastic_proposal_bias_probe(const EnergyModel& model,
                                                   const State& s, double alpha,
                                                   int n_draws,
                                                   const MinibatchSpec& mb,
                                                   Rng& rng) {
  const DiscreteDomain& domain = model.domain();
  if (domain.n_values() != 2 || domain.is_one_hot())
    throw std::invalid_argument("stochastic_proposal_bias_probe: binary domain required");
  if (!model.supports_stoch_grad())
    throw std::invalid_argument("stochastic_proposal_bias_probe: model lacks stoch_grad");
  if (n_draws < 1) throw std::invalid_argument("n_draws must be >= 1");

  const int d = domain.dim();
  DlpConfig full_cfg{.alpha = alpha};
  Rng unused(0);
  const Proposal q = build_proposal(model, s, full_cfg, unused);

  const Eigen::VectorXd g_full = model.grad_vec(s);
  Eigen::MatrixXd qhat_mean = Eigen::MatrixXd::Zero(d, 2);
  Eigen::VectorXd g_sum = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd g_sumsq = Eigen::VectorXd::Zero(d);
  double l_hat = g_full.cwiseAbs().maxCoeff();

  Eigen::VectorXd ghat(d);
  std::span<double> gs(ghat.data(), static_cast<std::size_t>(ghat.size()));
  std::vector<double> logits(2), probs(2);
  for (int n = 0; n < n_draws; ++n) {
    model.stoch_grad(s, mb, rng, gs);
    check_finite_grad(ghat);
    for (int i = 0; i < d; ++i) {
      const double v_cur = domain.coord_value(s.codes[i]);
      for (int k = 0; k < 2; ++k) {
        const double dv = domain.coord_value(k) - v_cur;
        logits[k] = 0.5 * ghat[i] * dv - dv * dv / (2.0 * alpha);
      }
      stable_softmax(logits, probs);
      for (auto& pk : probs)
        if (pk < kProbFlushThreshold) pk = 0.0;
      qhat_mean(i, 0) += probs[0];
      qhat_mean(i, 1) += probs[1];
      g_sum[i] += ghat[i];
      g_sumsq[i] += ghat[i] * ghat[i];
      l_hat = std::max(l_hat, std::abs(ghat[i]));
    }
  }
  qhat_mean /= static_cast<double>(n_draws);

  StochasticBiasProbe out;
  out.l1_per_coord.resize(d);
  double sigma_sq_max = 0.0;
  for (int i = 0; i < d; ++i) {
    out.l1_per_coord[i] =
        std::abs(qhat_mean(i, 0) - q.prob(i, 0)) + std::abs(qhat_mean(i, 1) - q.prob(i, 1));
    const double mean = g_sum[i] / n_draws;
    sigma_sq_max = std::max(sigma_sq_max, g_sumsq[i] / n_draws - mean * mean);
  }
  out.sigma_hat = std::sqrt(std::max(0.0, sigma_sq_max));
  out.l_hat = l_hat;
  out.bound = 2.0 * out.sigma_hat * std::exp(-1.0 / (2.0 * alpha) + out.l_hat);
  return out;
}

}  // namespace dlmc
