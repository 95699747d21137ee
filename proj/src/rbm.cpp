#include "dlmc/rbm.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "dlmc/numerics.hpp"

namespace dlmc {

RbmModel::RbmModel(Eigen::MatrixXd w, Eigen::VectorXd hidden_bias,
                   Eigen::VectorXd visible_bias)
    : w_(std::move(w)),
      a_(std::move(hidden_bias)),
      b_(std::move(visible_bias)),
      domain_(DiscreteDomain::binary01(static_cast<int>(w_.cols()))) {
  if (a_.size() != w_.rows() || b_.size() != w_.cols())
    throw std::invalid_argument("RbmModel: bias shapes do not match W");
}

double RbmModel::energy(const State& s) const {
  const Eigen::VectorXd x = embed(domain_, s);
  const Eigen::VectorXd pre = w_ * x + a_;
  double u = b_.dot(x);
  for (Eigen::Index j = 0; j < pre.size(); ++j) u += softplus(pre[j]);
  return u;
}

void RbmModel::grad(const State& s, std::span<double> out) const {
  const Eigen::VectorXd x = embed(domain_, s);
  Eigen::VectorXd sig = w_ * x + a_;
  for (Eigen::Index j = 0; j < sig.size(); ++j) sig[j] = sigmoid(sig[j]);
  Eigen::Map<Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size())) =
      w_.transpose() * sig + b_;
}

double RbmModel::extension_energy(std::span<const double> x) const {
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  const Eigen::VectorXd pre = w_ * v + a_;
  double u = b_.dot(v);
  for (Eigen::Index j = 0; j < pre.size(); ++j) u += softplus(pre[j]);
  return u;
}

Eigen::VectorXd RbmModel::hidden_conditional(const State& x) const {
  Eigen::VectorXd p = w_ * embed(domain_, x) + a_;
  for (Eigen::Index j = 0; j < p.size(); ++j) p[j] = sigmoid(p[j]);
  return p;
}

Eigen::VectorXd RbmModel::visible_conditional(const Eigen::VectorXd& h) const {
  Eigen::VectorXd p = w_.transpose() * h + b_;
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = sigmoid(p[i]);
  return p;
}

double RbmModel::joint_energy(const State& x, const Eigen::VectorXd& h) const {
  const Eigen::VectorXd xv = embed(domain_, x);
  return h.dot(w_ * xv) + a_.dot(h) + b_.dot(xv);
}

RbmModel random_rbm(int n_visible, int n_hidden, double sigma_w, Rng& rng) {
  Eigen::MatrixXd w(n_hidden, n_visible);
  for (int j = 0; j < n_hidden; ++j)
    for (int i = 0; i < n_visible; ++i) w(j, i) = sigma_w * rng.normal();
  return {w, Eigen::VectorXd::Zero(n_hidden), Eigen::VectorXd::Zero(n_visible)};
}

void save_rbm_text(const RbmModel& model, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.precision(17);
  const int v = model.n_visible(), h = model.n_hidden();
  f << "rbm " << v << " " << h << "\n";
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i < v; ++i) f << (i ? " " : "") << model.w()(j, i);
    f << "\n";
  }
  for (int j = 0; j < h; ++j) f << (j ? " " : "") << model.hidden_bias()[j];
  f << "\n";
  for (int i = 0; i < v; ++i) f << (i ? " " : "") << model.visible_bias()[i];
  f << "\n";
}

RbmModel load_rbm_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::string tag;
  int v = 0, h = 0;
  f >> tag >> v >> h;
  if (tag != "rbm" || v < 1 || h < 1)
    throw std::runtime_error("bad RBM text header in " + path);
  Eigen::MatrixXd w(h, v);
  Eigen::VectorXd a(h), b(v);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < v; ++i) f >> w(j, i);
  for (int j = 0; j < h; ++j) f >> a[j];
  for (int i = 0; i < v; ++i) f >> b[i];
  if (!f) throw std::runtime_error("truncated RBM text file: " + path);
  return {w, a, b};
}

void save_rbm_binary(const RbmModel& model, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  const char magic[4] = {'R', 'B', 'M', 'B'};
  f.write(magic, 4);
  const std::int32_t v = model.n_visible(), h = model.n_hidden();
  f.write(reinterpret_cast<const char*>(&v), 4);
  f.write(reinterpret_cast<const char*>(&h), 4);
  // Eigen default storage is column-major; write row-major as documented.
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < v; ++i) {
      const double x = model.w()(j, i);
      f.write(reinterpret_cast<const char*>(&x), 8);
    }
  f.write(reinterpret_cast<const char*>(model.hidden_bias().data()), 8 * h);
  f.write(reinterpret_cast<const char*>(model.visible_bias().data()), 8 * v);
}

RbmModel load_rbm_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  char magic[4];
  f.read(magic, 4);
  if (!f || std::memcmp(magic, "RBMB", 4) != 0)
    throw std::runtime_error("bad RBM binary magic in " + path);
  std::int32_t v = 0, h = 0;
  f.read(reinterpret_cast<char*>(&v), 4);
  f.read(reinterpret_cast<char*>(&h), 4);
  if (!f || v < 1 || h < 1) throw std::runtime_error("bad RBM binary dims in " + path);
  Eigen::MatrixXd w(h, v);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < v; ++i) {
      double x;
      f.read(reinterpret_cast<char*>(&x), 8);
      w(j, i) = x;
    }
  Eigen::VectorXd a(h), b(v);
  f.read(reinterpret_cast<char*>(a.data()), 8 * h);
  f.read(reinterpret_cast<char*>(b.data()), 8 * v);
  if (!f) throw std::runtime_error("truncated RBM binary file: " + path);
  return {w, a, b};
}

RbmModel train_rbm_cd1(const RbmModel& init, const Eigen::MatrixXd& data,
                       int epochs, double learning_rate, Rng& rng) {
  Eigen::MatrixXd w = init.w();
  Eigen::VectorXd a = init.hidden_bias();
  Eigen::VectorXd b = init.visible_bias();
  const int v = init.n_visible(), h = init.n_hidden();
  if (data.cols() != v) throw std::invalid_argument("train_rbm_cd1: data width != n_visible");

  auto sig = [](Eigen::VectorXd z) {
    for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = sigmoid(z[k]);
    return z;
  };

  for (int e = 0; e < epochs; ++e) {
    for (Eigen::Index n = 0; n < data.rows(); ++n) {
      const Eigen::VectorXd x0 = data.row(n).transpose();
      const Eigen::VectorXd ph0 = sig(w * x0 + a);
      Eigen::VectorXd h0(h);
      for (int j = 0; j < h; ++j) h0[j] = rng.bernoulli(ph0[j]) ? 1.0 : 0.0;
      const Eigen::VectorXd px1 = sig(w.transpose() * h0 + b);
      Eigen::VectorXd x1(v);
      for (int i = 0; i < v; ++i) x1[i] = rng.bernoulli(px1[i]) ? 1.0 : 0.0;
      const Eigen::VectorXd ph1 = sig(w * x1 + a);
      w += learning_rate * (ph0 * x0.transpose() - ph1 * x1.transpose());
      a += learning_rate * (ph0 - ph1);
      b += learning_rate * (x0 - x1);
    }
  }
  return {w, a, b};
}

}  // namespace dlmc
