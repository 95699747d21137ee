#include "dlmc/models.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace dlmc {

namespace {

Eigen::Map<const Eigen::VectorXd> as_vec(std::span<const double> x) {
  return {x.data(), static_cast<Eigen::Index>(x.size())};
}

}  // namespace

LogQuadraticModel::LogQuadraticModel(Eigen::MatrixXd w, Eigen::VectorXd b,
                                     DiscreteDomain domain, double offset)
    : w_(0.5 * (w + w.transpose())), b_(std::move(b)), domain_(domain), offset_(offset) {
  if (domain_.is_one_hot())
    throw std::invalid_argument("LogQuadraticModel: one-hot domains not supported");
  if (w_.rows() != domain_.dim() || w_.cols() != domain_.dim() || b_.size() != domain_.dim())
    throw std::invalid_argument("LogQuadraticModel: shape mismatch with domain");
}

double LogQuadraticModel::energy(const State& s) const {
  const Eigen::VectorXd x = embed(domain_, s);
  return x.dot(w_ * x) + b_.dot(x) + offset_;
}

void LogQuadraticModel::grad(const State& s, std::span<double> out) const {
  const Eigen::VectorXd x = embed(domain_, s);
  Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size())) =
      2.0 * (w_ * x) + b_;
}

double LogQuadraticModel::extension_energy(std::span<const double> x) const {
  const auto v = as_vec(x);
  return v.dot(w_ * v) + b_.dot(v) + offset_;
}

IsingLatticeModel::IsingLatticeModel(int rows, int cols, double coupling,
                                     double bias, bool periodic,
                                     DiscreteDomain domain, Eigen::MatrixXd w,
                                     Eigen::VectorXd b, double offset,
                                     Eigen::MatrixXi adjacency)
    : LogQuadraticModel(std::move(w), std::move(b), domain, offset),
      rows_(rows),
      cols_(cols),
      coupling_(coupling),
      bias_(bias),
      periodic_(periodic),
      adjacency_(std::move(adjacency)) {}

Eigen::MatrixXi lattice_adjacency(int rows, int cols, bool periodic) {
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("lattice_adjacency: rows and cols must be >= 1");
  const int d = rows * cols;
  Eigen::MatrixXi j = Eigen::MatrixXi::Zero(d, d);
  auto id = [cols](int r, int c) { return r * cols + c; };
  auto connect = [&](int u, int v) {
    if (u == v) return;  // periodic wrap on a side of length <= 2 degenerates
    j(u, v) = 1;
    j(v, u) = 1;
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) connect(id(r, c), id(r, c + 1));
      else if (periodic && cols > 2) connect(id(r, c), id(r, 0));
      if (r + 1 < rows) connect(id(r, c), id(r + 1, c));
      else if (periodic && rows > 2) connect(id(r, c), id(0, c));
    }
  }
  return j;
}

IsingLatticeModel build_lattice_ising(int rows, int cols, double coupling,
                                      double bias, bool periodic) {
  const Eigen::MatrixXi j = lattice_adjacency(rows, cols, periodic);
  const int d = rows * cols;
  const Eigen::MatrixXd w = coupling * j.cast<double>();
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(d, bias);
  return {rows,     cols, coupling, bias, periodic, DiscreteDomain::spin_pm1(d),
          w,        b,    0.0,      j};
}

IsingLatticeModel build_lattice_ising_binary(int rows, int cols, double coupling,
                                             double bias, bool periodic) {
  const Eigen::MatrixXi j = lattice_adjacency(rows, cols, periodic);
  const int d = rows * cols;
  const Eigen::MatrixXd jd = j.cast<double>();
  // U(x) for theta = 2x-1: expand a*theta'J theta + bias*sum(theta).
  const Eigen::MatrixXd w = 4.0 * coupling * jd;
  const Eigen::VectorXd b =
      Eigen::VectorXd::Constant(d, 2.0 * bias) - 4.0 * coupling * (jd * Eigen::VectorXd::Ones(d));
  const double offset = coupling * jd.sum() - bias * d;
  return {rows,     cols, coupling, bias, periodic, DiscreteDomain::binary01(d),
          w,        b,    offset,   j};
}

double lambda_min(const LogQuadraticModel& model) {
  const Eigen::MatrixXd& w = model.w();
  const int d = static_cast<int>(w.rows());
  if (d <= 512) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
  }
  // Shifted power iteration on cI - W; c from the Gershgorin upper bound so
  // the dominant eigenvalue of the shifted matrix is c - lambda_min.
  double c = 0.0;
  for (int i = 0; i < d; ++i) {
    double row = w(i, i);
    for (int k = 0; k < d; ++k)
      if (k != i) row += std::abs(w(i, k));
    c = std::max(c, row);
  }
  c += 1.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(d).normalized();
  double lam = 0.0;
  for (int it = 0; it < 100000; ++it) {
    Eigen::VectorXd u = c * v - w * v;
    const double norm = u.norm();
    if (norm == 0.0) return c;  // W == cI
    u /= norm;
    const double next = u.dot(c * u - w * u);
    if (std::abs(next - lam) <= 1e-9 * std::max(1.0, std::abs(next)) && it > 2) {
      lam = next;
      break;
    }
    lam = next;
    v = u;
  }
  return c - lam;
}

Perturbed1DModel::Perturbed1DModel(double a, double b, double eps)
    : a_(a), b_(b), eps_(eps), domain_(DiscreteDomain::spin_pm1(1)) {}

double Perturbed1DModel::energy(const State& s) const {
  const double t = domain_.coord_value(s.codes[0]);
  return a_ * t * t + b_ * t + 2.0 * eps_ * std::sin(t * std::numbers::pi / 2.0);
}

void Perturbed1DModel::grad(const State& s, std::span<double> out) const {
  const double t = domain_.coord_value(s.codes[0]);
  out[0] = 2.0 * a_ * t + b_ + eps_ * std::numbers::pi * std::cos(t * std::numbers::pi / 2.0);
}

double Perturbed1DModel::extension_energy(std::span<const double> x) const {
  const double t = x[0];
  return a_ * t * t + b_ * t + 2.0 * eps_ * std::sin(t * std::numbers::pi / 2.0);
}

AdditiveNoiseModel::AdditiveNoiseModel(std::shared_ptr<const EnergyModel> base,
                                       double sigma)
    : base_(std::move(base)), sigma_(sigma) {
  if (sigma_ < 0.0) throw std::invalid_argument("AdditiveNoiseModel: sigma must be >= 0");
}

void AdditiveNoiseModel::stoch_grad(const State& s, const MinibatchSpec& mb,
                                    Rng& rng, std::span<double> out) const {
  base_->grad(s, out);
  if (mb.full_batch() || sigma_ == 0.0) return;
  const double sigma_eff =
      sigma_ * std::sqrt(static_cast<double>(mb.data_size) / mb.batch_size - 1.0);
  for (auto& g : out) g += sigma_eff * rng.normal();
}

MinibatchQuadraticModel::MinibatchQuadraticModel(
    std::vector<Eigen::MatrixXd> w_terms, std::vector<Eigen::VectorXd> b_terms,
    DiscreteDomain domain)
    : w_terms_(std::move(w_terms)),
      b_terms_(std::move(b_terms)),
      domain_(domain),
      total_([&] {
        if (w_terms_.empty() || w_terms_.size() != b_terms_.size())
          throw std::invalid_argument("MinibatchQuadraticModel: bad term lists");
        Eigen::MatrixXd w = w_terms_[0];
        Eigen::VectorXd b = b_terms_[0];
        for (std::size_t k = 1; k < w_terms_.size(); ++k) {
          w += w_terms_[k];
          b += b_terms_[k];
        }
        return LogQuadraticModel(std::move(w), std::move(b), domain);
      }()) {
  for (auto& w : w_terms_) w = 0.5 * (w + w.transpose().eval());
}

double MinibatchQuadraticModel::energy(const State& s) const { return total_.energy(s); }

void MinibatchQuadraticModel::grad(const State& s, std::span<double> out) const {
  total_.grad(s, out);
}

double MinibatchQuadraticModel::extension_energy(std::span<const double> x) const {
  return total_.extension_energy(x);
}

void MinibatchQuadraticModel::stoch_grad(const State& s, const MinibatchSpec& mb,
                                         Rng& rng, std::span<double> out) const {
  const int n_total = n_terms();
  if (mb.data_size != n_total)
    throw std::invalid_argument("MinibatchQuadraticModel: data_size must equal n_terms");
  const int n = std::min(mb.batch_size, n_total);
  if (n <= 0) throw std::invalid_argument("MinibatchQuadraticModel: batch_size must be positive");
  if (n == n_total) {
    grad(s, out);
    return;
  }
  // partial Fisher-Yates draw of n distinct term indices
  std::vector<int> idx(n_total);
  for (int i = 0; i < n_total; ++i) idx[i] = i;
  const Eigen::VectorXd x = embed(domain_, s);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(domain_.dim());
  for (int i = 0; i < n; ++i) {
    const int j = i + static_cast<int>(rng.uniform_index(n_total - i));
    std::swap(idx[i], idx[j]);
    const int k = idx[i];
    g += 2.0 * (w_terms_[k] * x) + b_terms_[k];
  }
  g *= static_cast<double>(n_total) / n;
  Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size())) = g;
}

LogQuadraticModel random_log_quadratic(int dim, DomainKind kind, double scale,
                                       Rng& rng) {
  Eigen::MatrixXd w(dim, dim);
  Eigen::VectorXd b(dim);
  for (int i = 0; i < dim; ++i) {
    b[i] = scale * rng.normal();
    for (int j = 0; j < dim; ++j) w(i, j) = scale * rng.normal();
  }
  DiscreteDomain domain = kind == DomainKind::SpinPM1 ? DiscreteDomain::spin_pm1(dim)
                                                      : DiscreteDomain::binary01(dim);
  return {w, b, domain};
}

MinibatchQuadraticModel random_minibatch_quadratic(int dim, DomainKind kind,
                                                   double scale, int n_terms,
                                                   Rng& rng) {
  std::vector<Eigen::MatrixXd> ws;
  std::vector<Eigen::VectorXd> bs;
  ws.reserve(n_terms);
  bs.reserve(n_terms);
  for (int k = 0; k < n_terms; ++k) {
    Eigen::MatrixXd w(dim, dim);
    Eigen::VectorXd b(dim);
    for (int i = 0; i < dim; ++i) {
      b[i] = scale * rng.normal() / n_terms;
      for (int j = 0; j < dim; ++j) w(i, j) = scale * rng.normal() / n_terms;
    }
    ws.push_back(std::move(w));
    bs.push_back(std::move(b));
  }
  DiscreteDomain domain = kind == DomainKind::SpinPM1 ? DiscreteDomain::spin_pm1(dim)
                                                      : DiscreteDomain::binary01(dim);
  return {std::move(ws), std::move(bs), domain};
}

}  // namespace dlmc
