#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace dlmc {

enum class DomainKind { Binary01, SpinPM1, Categorical, OneHot };

std::string to_string(DomainKind k);

// A factorized finite domain: d coordinates, each taking one of S values.
// Binary01 coordinates live in {0,1}, SpinPM1 in {-1,+1}, Categorical(S) in
// {0,...,S-1}, and OneHot(S) coordinates are S-vectors with exactly one 1.
// States store a per-coordinate value *code* in {0,...,S-1}; the code's
// numeric embedding is given by coord_value / embed.
class DiscreteDomain {
 public:
  static DiscreteDomain binary01(int dim);
  static DiscreteDomain spin_pm1(int dim);
  static DiscreteDomain categorical(int dim, int n_values);
  static DiscreteDomain one_hot(int dim, int n_values);

  DomainKind kind() const { return kind_; }
  int dim() const { return dim_; }
  int n_values() const { return n_values_; }  // S per coordinate
  bool is_one_hot() const { return kind_ == DomainKind::OneHot; }

  // Scalar embedding of a value code (Binary01/Categorical: the code itself;
  // SpinPM1: 2*code-1). Not meaningful for OneHot.
  double coord_value(int code) const;

  // Length of the real embedding a gradient is taken with respect to:
  // dim for scalar coordinates, dim*S for one-hot.
  int grad_dim() const;

  // Squared Euclidean displacement between two value codes of one coordinate
  // in the proposal geometry (1 for a binary flip, 4 for a spin flip,
  // (a-b)^2 for integers, 2 for distinct one-hot vectors).
  double sq_dist(int code_a, int code_b) const;

  // log2 of the total state count S^d.
  double log2_total_states() const;

  bool operator==(const DiscreteDomain& o) const {
    return kind_ == o.kind_ && dim_ == o.dim_ && n_values_ == o.n_values_;
  }

 private:
  DiscreteDomain(DomainKind kind, int dim, int n_values);
  DomainKind kind_;
  int dim_;
  int n_values_;
};

// A point of the domain, stored as one value code per coordinate.
struct State {
  std::vector<std::int32_t> codes;

  int dim() const { return static_cast<int>(codes.size()); }
  bool operator==(const State& o) const { return codes == o.codes; }
};

// Number of coordinates on which two states differ.
int hamming_distance(const State& a, const State& b);

// Real embedding of a state (length domain.grad_dim()); this is the point
// the continuous extension of an energy is evaluated at.
Eigen::VectorXd embed(const DiscreteDomain& domain, const State& s);

// Validates that every code is a member of the domain's value set; throws
// std::invalid_argument otherwise.
void check_state(const DiscreteDomain& domain, const State& s);

// All-zero-code state (all 0 / all -1 / category 0).
State default_state(const DiscreteDomain& domain);

std::string format_state(const State& s);

}  // namespace dlmc
