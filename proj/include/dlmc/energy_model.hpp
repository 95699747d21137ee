#pragma once

#include <span>

#include <Eigen/Core>

#include "dlmc/domain.hpp"
#include "dlmc/rng.hpp"

namespace dlmc {

// Minibatch descriptor for stochastic gradients: batch_size of data_size
// items per draw. batch_size == data_size means the full batch (the
// stochastic estimate then equals the exact gradient).
struct MinibatchSpec {
  int batch_size = 1;
  int data_size = 1;

  bool full_batch() const { return batch_size >= data_size; }
};

// An unnormalized target pi(theta) = exp(U(theta)) / Z over a factorized
// discrete domain. Implementations declare a differentiable continuous
// extension of U; grad() must be the analytic gradient of that extension
// (checkable against extension_energy() by central differences), and
// stoch_grad() must be unbiased for grad().
class EnergyModel {
 public:
  virtual ~EnergyModel() = default;

  virtual const DiscreteDomain& domain() const = 0;

  virtual double energy(const State& s) const = 0;

  // Gradient of the continuous extension at the embedding of s;
  // out.size() == domain().grad_dim().
  virtual void grad(const State& s, std::span<double> out) const = 0;

  // Value of the declared continuous extension at an arbitrary real point
  // x of length domain().grad_dim().
  virtual double extension_energy(std::span<const double> x) const = 0;

  virtual bool supports_stoch_grad() const { return false; }

  // Unbiased stochastic gradient estimate. Default throws.
  virtual void stoch_grad(const State& s, const MinibatchSpec& mb, Rng& rng,
                          std::span<double> out) const;

  Eigen::VectorXd grad_vec(const State& s) const {
    Eigen::VectorXd g(domain().grad_dim());
    grad(s, std::span<double>(g.data(), static_cast<std::size_t>(g.size())));
    return g;
  }
};

// Central-difference gradient of the model's continuous extension at a
// discrete point; the independent oracle for grad().
Eigen::VectorXd finite_diff_grad(const EnergyModel& model, const State& s,
                                 double h = 1e-5);

}  // namespace dlmc
