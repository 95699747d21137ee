#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "dlmc/enumeration.hpp"
#include "dlmc/models.hpp"
#include "dlmc/samplers.hpp"

namespace dlmc {

// Exact target over the full state space, indexed lexicographically.
struct ExactDistribution {
  DiscreteDomain domain;
  Eigen::VectorXd probs;  // length S^d, sums to 1
  double log_z = 0.0;     // log normalizing constant of exp(U)
};

ExactDistribution exact_target(const EnergyModel& model,
                               std::int64_t cap = kDefaultStateCap);

// Per-coordinate mean of the coordinate values under the exact target.
Eigen::VectorXd exact_mean(const EnergyModel& model,
                           std::int64_t cap = kDefaultStateCap);

// Dense one-step transition matrix of a sampler; rows sum to 1 with the MH
// accept/reject mass folded into the diagonal for adjusted samplers.
struct TransitionKernel {
  DiscreteDomain domain;
  Eigen::MatrixXd p;
  std::string provenance;
};

// Supported: DULA, DMALA, Gibbs-1 (random scan), LB-1, RBM block-Gibbs.
TransitionKernel exact_kernel(const EnergyModel& model, const SamplerSpec& spec,
                              std::int64_t cap = kDefaultStateCap);

enum class StationaryMethod { Auto, Dense, Power };

// Left eigenvector of the kernel for eigenvalue 1. The dense path solves the
// left null space of the generator (off-diagonal entries with diagonal
// -rowsum), which stays accurate even for nearly-frozen kernels; the power
// path iterates to residual ||vP - v||_1 <= tol and falls back to the dense
// solve when it stalls. Throws on a reducible kernel (e.g. a stepsize so
// small the proposal underflowed to the identity).
Eigen::VectorXd stationary_distribution(const TransitionKernel& kernel,
                                        StationaryMethod method = StationaryMethod::Auto,
                                        double tol = 1e-12,
                                        std::int64_t max_iters = 1'000'000);

double l1_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q);
inline double tv_distance(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  return 0.5 * l1_distance(p, q);
}

// Entrywise detailed-balance defect max |pi_i P_ij - pi_j P_ji| relative to
// the larger flow; 0 for an exactly reversible kernel.
double detailed_balance_defect(const Eigen::VectorXd& pi, const Eigen::MatrixXd& p);

// Stationary distribution of the unadjusted DLP chain in the closed form of
// the reversibility construction: pi_alpha(theta) ~ Z_alpha(theta) pi(theta)
// with Z_alpha the joint proposal normalizer at theta. Exact for
// log-quadratic targets.
Eigen::VectorXd dula_stationary_closed_form(const EnergyModel& model,
                                            const DlpConfig& cfg,
                                            std::int64_t cap = kDefaultStateCap);

// Z * exp(-(1 + alpha lambda_min) / (2 alpha)); the equivalent split form
// Z * exp(-1/(2 alpha) - lambda_min / 2) is evaluated as a cross-check and
// must agree to floating-point accuracy.
double theorem1_bound(const LogQuadraticModel& model, double alpha,
                      std::int64_t cap = kDefaultStateCap);

// Asymptotic bias of exact DULA on the 1-d perturbed-quadratic family, per
// perturbation strength, at a fixed stepsize.
struct PerturbationBiasRow {
  double eps = 0.0;
  double l1 = 0.0;
};

std::vector<PerturbationBiasRow> theorem2_probe(const std::vector<double>& eps_values,
                                                double a, double b, double alpha);

bool is_nondecreasing(const std::vector<double>& xs, double tol = 0.0);

}  // namespace dlmc
