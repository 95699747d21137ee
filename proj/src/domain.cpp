#include "dlmc/domain.hpp"

#include <cmath>
#include <stdexcept>

namespace dlmc {

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::Binary01: return "binary01";
    case DomainKind::SpinPM1: return "spin";
    case DomainKind::Categorical: return "categorical";
    case DomainKind::OneHot: return "one_hot";
  }
  return "?";
}

DiscreteDomain::DiscreteDomain(DomainKind kind, int dim, int n_values)
    : kind_(kind), dim_(dim), n_values_(n_values) {
  if (dim < 1) throw std::invalid_argument("DiscreteDomain: dim must be >= 1");
  if (n_values < 2) throw std::invalid_argument("DiscreteDomain: need at least 2 values per coordinate");
}

DiscreteDomain DiscreteDomain::binary01(int dim) { return {DomainKind::Binary01, dim, 2}; }
DiscreteDomain DiscreteDomain::spin_pm1(int dim) { return {DomainKind::SpinPM1, dim, 2}; }
DiscreteDomain DiscreteDomain::categorical(int dim, int n_values) {
  return {DomainKind::Categorical, dim, n_values};
}
DiscreteDomain DiscreteDomain::one_hot(int dim, int n_values) {
  return {DomainKind::OneHot, dim, n_values};
}

double DiscreteDomain::coord_value(int code) const {
  switch (kind_) {
    case DomainKind::Binary01:
    case DomainKind::Categorical:
      return static_cast<double>(code);
    case DomainKind::SpinPM1:
      return 2.0 * code - 1.0;
    case DomainKind::OneHot:
      throw std::logic_error("coord_value: one-hot coordinates have no scalar value");
  }
  return 0.0;
}

int DiscreteDomain::grad_dim() const {
  return is_one_hot() ? dim_ * n_values_ : dim_;
}

double DiscreteDomain::sq_dist(int code_a, int code_b) const {
  if (code_a == code_b) return 0.0;
  if (is_one_hot()) return 2.0;
  const double d = coord_value(code_a) - coord_value(code_b);
  return d * d;
}

double DiscreteDomain::log2_total_states() const {
  return dim_ * std::log2(static_cast<double>(n_values_));
}

int hamming_distance(const State& a, const State& b) {
  if (a.codes.size() != b.codes.size())
    throw std::invalid_argument("hamming_distance: dimension mismatch");
  int h = 0;
  for (std::size_t i = 0; i < a.codes.size(); ++i) h += a.codes[i] != b.codes[i];
  return h;
}

Eigen::VectorXd embed(const DiscreteDomain& domain, const State& s) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(domain.grad_dim());
  if (domain.is_one_hot()) {
    const int S = domain.n_values();
    for (int i = 0; i < domain.dim(); ++i) x[i * S + s.codes[i]] = 1.0;
  } else {
    for (int i = 0; i < domain.dim(); ++i) x[i] = domain.coord_value(s.codes[i]);
  }
  return x;
}

void check_state(const DiscreteDomain& domain, const State& s) {
  if (s.dim() != domain.dim())
    throw std::invalid_argument("state dimension does not match domain");
  for (int c : s.codes)
    if (c < 0 || c >= domain.n_values())
      throw std::invalid_argument("state coordinate outside domain value set");
}

State default_state(const DiscreteDomain& domain) {
  State s;
  s.codes.assign(domain.dim(), 0);
  return s;
}

std::string format_state(const State& s) {
  std::string out = "(";
  for (int i = 0; i < s.dim(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.codes[i]);
  }
  out += ")";
  return out;
}

}  // namespace dlmc
