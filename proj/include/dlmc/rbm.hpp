#pragma once

#include <string>

#include <Eigen/Core>

#include "dlmc/energy_model.hpp"

namespace dlmc {

// Restricted Boltzmann machine marginal over visible units x in {0,1}^v:
//   U(x) = sum_j softplus(Wx + a)_j + b'x,
// i.e. the hidden units h are summed out of the joint
//   E(x,h) = h'Wx + a'h + b'x.
// The continuous extension is the same softplus expression on R^v, so
// grad U(x) = W' sigmoid(Wx + a) + b.
class RbmModel : public EnergyModel {
 public:
  RbmModel(Eigen::MatrixXd w, Eigen::VectorXd hidden_bias,
           Eigen::VectorXd visible_bias);

  const DiscreteDomain& domain() const override { return domain_; }
  double energy(const State& s) const override;
  void grad(const State& s, std::span<double> out) const override;
  double extension_energy(std::span<const double> x) const override;

  int n_visible() const { return static_cast<int>(w_.cols()); }
  int n_hidden() const { return static_cast<int>(w_.rows()); }
  const Eigen::MatrixXd& w() const { return w_; }
  const Eigen::VectorXd& hidden_bias() const { return a_; }
  const Eigen::VectorXd& visible_bias() const { return b_; }

  // p(h_j = 1 | x) = sigmoid(Wx + a)_j
  Eigen::VectorXd hidden_conditional(const State& x) const;
  // p(x_i = 1 | h) = sigmoid(W'h + b)_i
  Eigen::VectorXd visible_conditional(const Eigen::VectorXd& h) const;

  // Joint energy E(x,h) = h'Wx + a'h + b'x for enumeration checks.
  double joint_energy(const State& x, const Eigen::VectorXd& h) const;

 private:
  Eigen::MatrixXd w_;   // h x v
  Eigen::VectorXd a_;   // hidden bias, length h
  Eigen::VectorXd b_;   // visible bias, length v
  DiscreteDomain domain_;
};

// Gaussian weights with scale sigma_w, zero biases.
RbmModel random_rbm(int n_visible, int n_hidden, double sigma_w, Rng& rng);

// Text format: line "rbm <v> <h>", then h rows of W (v values each), a line
// of h hidden biases, a line of v visible biases. Binary format: magic
// "RBMB", int32 v, int32 h, then doubles W (row-major h x v), a, b.
void save_rbm_text(const RbmModel& model, const std::string& path);
RbmModel load_rbm_text(const std::string& path);
void save_rbm_binary(const RbmModel& model, const std::string& path);
RbmModel load_rbm_binary(const std::string& path);

// One epoch of CD-1 on binary rows of `data` (n x v); returns the updated
// model. Minimal utility for producing tiny trained RBMs from synthetic data.
RbmModel train_rbm_cd1(const RbmModel& init, const Eigen::MatrixXd& data,
                       int epochs, double learning_rate, Rng& rng);

}  // namespace dlmc
