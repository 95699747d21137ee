#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dlmc/domain.hpp"
#include "dlmc/rng.hpp"

namespace dlmc {

// Running per-coordinate first moments in coordinate-value space.
// Merging is associative and order-independent, so per-chain accumulators
// can be combined after parallel runs.
class MomentAccumulator {
 public:
  MomentAccumulator() = default;
  explicit MomentAccumulator(int dim) : sums_(Eigen::VectorXd::Zero(dim)) {}

  void add(const DiscreteDomain& domain, const State& s);
  void add_values(const Eigen::VectorXd& values);
  void merge(const MomentAccumulator& other);

  std::int64_t count() const { return count_; }
  Eigen::VectorXd mean() const;

 private:
  Eigen::VectorXd sums_;
  std::int64_t count_ = 0;
};

// sqrt(mean_i (est_i - truth_i)^2)
double mean_rmse(const Eigen::VectorXd& estimated, const Eigen::VectorXd& truth);

// Effective sample size of a scalar series: N / (1 + 2 sum_k rho_k), with
// autocorrelations summed while they stay positive (initial-positive
// truncation) and the result clamped to [1, N]. A zero-variance series
// returns N by convention. Requires at least 10 points.
double ess(std::span<const double> series);

// Unbiased MMD^2 with the exponential Hamming kernel
// k(x, y) = exp(-hamming(x, y) / d).
struct MmdResult {
  double mmd2 = 0.0;
  double log_mmd2 = 0.0;  // log(max(mmd2, floor))
};

inline constexpr double kMmdLogFloor = 1e-12;

MmdResult mmd_hamming(std::span<const State> samples_a,
                      std::span<const State> samples_b, int dim);

// Kernel Gram matrix for PSD checks and permutation tests.
Eigen::MatrixXd mmd_kernel_matrix(std::span<const State> samples, int dim);

// Label-permutation null for the two-sample MMD^2: returns the observed
// statistic and the given null quantile from n_permutations shuffles.
struct MmdPermutationTest {
  double observed_mmd2 = 0.0;
  double threshold = 0.0;  // null quantile of MMD^2
  bool below_threshold = false;
};

MmdPermutationTest mmd_permutation_test(std::span<const State> samples_a,
                                        std::span<const State> samples_b, int dim,
                                        int n_permutations, double quantile,
                                        Rng& rng);

// Mean coordinates changed per accepted step and the acceptance rate,
// computed from post-burn-in step-event counters. Throws on an empty trace.
struct FlipStats {
  double mean_coords_changed = 0.0;  // per accepted step
  double acceptance_rate = 0.0;
};

FlipStats flip_stats_from_counts(std::int64_t n_events, std::int64_t n_accepted,
                                 std::int64_t sum_coords_changed);

}  // namespace dlmc
