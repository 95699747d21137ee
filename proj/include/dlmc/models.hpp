#pragma once

#include <memory>
#include <vector>

#include <Eigen/Core>

#include "dlmc/energy_model.hpp"

namespace dlmc {

// Log-quadratic target: U(theta) = theta'W theta + b'theta (+ offset), so
// pi(theta) ~ exp(theta'W theta + b'theta). W is stored symmetric; a
// non-symmetric input A is replaced by (A+A')/2. The continuous extension is
// the same quadratic form on R^d, hence grad = 2W theta + b.
class LogQuadraticModel : public EnergyModel {
 public:
  LogQuadraticModel(Eigen::MatrixXd w, Eigen::VectorXd b, DiscreteDomain domain,
                    double offset = 0.0);

  const DiscreteDomain& domain() const override { return domain_; }
  double energy(const State& s) const override;
  void grad(const State& s, std::span<double> out) const override;
  double extension_energy(std::span<const double> x) const override;

  const Eigen::MatrixXd& w() const { return w_; }
  const Eigen::VectorXd& b() const { return b_; }
  double offset() const { return offset_; }

 private:
  Eigen::MatrixXd w_;
  Eigen::VectorXd b_;
  DiscreteDomain domain_;
  double offset_;
};

// 2-D lattice Ising model: U(theta) = a * theta'J theta + b * sum(theta),
// with J the 0/1 adjacency matrix of the rows x cols grid.
class IsingLatticeModel : public LogQuadraticModel {
 public:
  IsingLatticeModel(int rows, int cols, double coupling, double bias,
                    bool periodic, DiscreteDomain domain, Eigen::MatrixXd w,
                    Eigen::VectorXd b, double offset,
                    Eigen::MatrixXi adjacency);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double coupling() const { return coupling_; }
  double bias() const { return bias_; }
  bool periodic() const { return periodic_; }
  const Eigen::MatrixXi& adjacency() const { return adjacency_; }

 private:
  int rows_, cols_;
  double coupling_, bias_;
  bool periodic_;
  Eigen::MatrixXi adjacency_;
};

// 0/1 adjacency matrix of the rows x cols grid graph (4-neighborhood,
// open boundary unless periodic).
Eigen::MatrixXi lattice_adjacency(int rows, int cols, bool periodic = false);

// Spin-valued lattice Ising model on {-1,+1}^(rows*cols).
IsingLatticeModel build_lattice_ising(int rows, int cols, double coupling,
                                      double bias, bool periodic = false);

// The same distribution reparameterized on {0,1}^(rows*cols) via
// theta = 2x - 1; energies match the spin model state-for-state. This is the
// parameterization the lattice sampling experiments run in, where a single
// coordinate flip has unit squared displacement.
IsingLatticeModel build_lattice_ising_binary(int rows, int cols, double coupling,
                                             double bias, bool periodic = false);

// Smallest eigenvalue of W. Dense symmetric eigensolver up to d = 512,
// shifted power iteration (tolerance 1e-9) beyond.
double lambda_min(const LogQuadraticModel& model);

// 1-d perturbed-quadratic target on {-1,+1}:
// U(theta) = a theta^2 + b theta + 2 eps sin(theta pi / 2).
// The extension's gradient 2 a theta + b + eps pi cos(theta pi / 2) is blind
// to eps at theta = +-1, which is the point of the counterexample.
class Perturbed1DModel : public EnergyModel {
 public:
  Perturbed1DModel(double a, double b, double eps);

  const DiscreteDomain& domain() const override { return domain_; }
  double energy(const State& s) const override;
  void grad(const State& s, std::span<double> out) const override;
  double extension_energy(std::span<const double> x) const override;

  double a() const { return a_; }
  double b() const { return b_; }
  double eps() const { return eps_; }

 private:
  double a_, b_, eps_;
  DiscreteDomain domain_;
};

// Wraps a model with an additive-noise stochastic gradient:
//   ghat = grad + sigma_eff * xi,   xi ~ N(0, I),
// where sigma_eff = sigma * sqrt(data_size / batch_size - 1). A full batch
// gives sigma_eff = 0 and ghat == grad exactly.
class AdditiveNoiseModel : public EnergyModel {
 public:
  AdditiveNoiseModel(std::shared_ptr<const EnergyModel> base, double sigma);

  const DiscreteDomain& domain() const override { return base_->domain(); }
  double energy(const State& s) const override { return base_->energy(s); }
  void grad(const State& s, std::span<double> out) const override {
    base_->grad(s, out);
  }
  double extension_energy(std::span<const double> x) const override {
    return base_->extension_energy(x);
  }
  bool supports_stoch_grad() const override { return true; }
  void stoch_grad(const State& s, const MinibatchSpec& mb, Rng& rng,
                  std::span<double> out) const override;

  double sigma() const { return sigma_; }

 private:
  std::shared_ptr<const EnergyModel> base_;
  double sigma_;
};

// Log-quadratic energy split into per-datum terms U = sum_k U_k; the
// stochastic gradient averages a uniformly drawn subset scaled by N/n.
class MinibatchQuadraticModel : public EnergyModel {
 public:
  MinibatchQuadraticModel(std::vector<Eigen::MatrixXd> w_terms,
                          std::vector<Eigen::VectorXd> b_terms,
                          DiscreteDomain domain);

  const DiscreteDomain& domain() const override { return domain_; }
  double energy(const State& s) const override;
  void grad(const State& s, std::span<double> out) const override;
  double extension_energy(std::span<const double> x) const override;
  bool supports_stoch_grad() const override { return true; }
  void stoch_grad(const State& s, const MinibatchSpec& mb, Rng& rng,
                  std::span<double> out) const override;

  int n_terms() const { return static_cast<int>(w_terms_.size()); }
  const LogQuadraticModel& total() const { return total_; }

 private:
  std::vector<Eigen::MatrixXd> w_terms_;
  std::vector<Eigen::VectorXd> b_terms_;
  DiscreteDomain domain_;
  LogQuadraticModel total_;
};

// Random log-quadratic model (Gaussian W and b) for property tests and
// synthetic benchmarks.
LogQuadraticModel random_log_quadratic(int dim, DomainKind kind, double scale,
                                       Rng& rng);

// Random per-datum decomposition whose terms sum to the given totals.
MinibatchQuadraticModel random_minibatch_quadratic(int dim, DomainKind kind,
                                                   double scale, int n_terms,
                                                   Rng& rng);

}  // namespace dlmc
