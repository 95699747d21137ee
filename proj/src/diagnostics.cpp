#include "dlmc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dlmc {

void MomentAccumulator::add(const DiscreteDomain& domain, const State& s) {
  if (sums_.size() == 0) sums_ = Eigen::VectorXd::Zero(domain.dim());
  for (int i = 0; i < domain.dim(); ++i) sums_[i] += domain.coord_value(s.codes[i]);
  ++count_;
}

void MomentAccumulator::add_values(const Eigen::VectorXd& values) {
  if (sums_.size() == 0) sums_ = Eigen::VectorXd::Zero(values.size());
  sums_ += values;
  ++count_;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  if (sums_.size() != other.sums_.size())
    throw std::invalid_argument("MomentAccumulator::merge: dimension mismatch");
  sums_ += other.sums_;
  count_ += other.count_;
}

Eigen::VectorXd MomentAccumulator::mean() const {
  if (count_ == 0) throw std::logic_error("MomentAccumulator: empty");
  return sums_ / static_cast<double>(count_);
}

double mean_rmse(const Eigen::VectorXd& estimated, const Eigen::VectorXd& truth) {
  if (estimated.size() != truth.size())
    throw std::invalid_argument("mean_rmse: length mismatch");
  return std::sqrt((estimated - truth).squaredNorm() /
                   static_cast<double>(estimated.size()));
}

double ess(std::span<const double> series) {
  const std::int64_t n = static_cast<std::int64_t>(series.size());
  if (n < 10) throw std::invalid_argument("ess: need at least 10 points");
  double mean = 0.0;
  for (double x : series) mean += x;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double x : series) var += (x - mean) * (x - mean);
  var /= static_cast<double>(n);
  if (var == 0.0) return static_cast<double>(n);  // constant series

  double tail = 0.0;
  for (std::int64_t k = 1; k < n - 1; ++k) {
    double c = 0.0;
    for (std::int64_t t = 0; t + k < n; ++t) c += (series[t] - mean) * (series[t + k] - mean);
    const double rho = c / (static_cast<double>(n) * var);
    if (rho <= 0.0) break;
    tail += rho;
  }
  const double out = static_cast<double>(n) / (1.0 + 2.0 * tail);
  return std::clamp(out, 1.0, static_cast<double>(n));
}

namespace {

double hamming_kernel(const State& a, const State& b, int dim) {
  return std::exp(-static_cast<double>(hamming_distance(a, b)) / dim);
}

// the three kernel sums of the unbiased estimator
double mmd2_unbiased(std::span<const State> a, std::span<const State> b, int dim) {
  const std::int64_t m = static_cast<std::int64_t>(a.size());
  const std::int64_t n = static_cast<std::int64_t>(b.size());
  if (m < 2 || n < 2) throw std::invalid_argument("mmd_hamming: need >= 2 samples per set");
  double kaa = 0.0, kbb = 0.0, kab = 0.0;
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = i + 1; j < m; ++j) kaa += hamming_kernel(a[i], a[j], dim);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j) kbb += hamming_kernel(b[i], b[j], dim);
  for (std::int64_t i = 0; i < m; ++i)
    for (std::int64_t j = 0; j < n; ++j) kab += hamming_kernel(a[i], b[j], dim);
  return 2.0 * kaa / (static_cast<double>(m) * (m - 1)) +
         2.0 * kbb / (static_cast<double>(n) * (n - 1)) -
         2.0 * kab / (static_cast<double>(m) * n);
}

}  // namespace

MmdResult mmd_hamming(std::span<const State> samples_a,
                      std::span<const State> samples_b, int dim) {
  MmdResult r;
  r.mmd2 = mmd2_unbiased(samples_a, samples_b, dim);
  r.log_mmd2 = std::log(std::max(r.mmd2, kMmdLogFloor));
  return r;
}

Eigen::MatrixXd mmd_kernel_matrix(std::span<const State> samples, int dim) {
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      k(i, j) = hamming_kernel(samples[i], samples[j], dim);
      k(j, i) = k(i, j);
    }
  }
  return k;
}

MmdPermutationTest mmd_permutation_test(std::span<const State> samples_a,
                                        std::span<const State> samples_b, int dim,
                                        int n_permutations, double quantile,
                                        Rng& rng) {
  if (n_permutations < 1) throw std::invalid_argument("need >= 1 permutation");
  if (!(quantile > 0.0 && quantile < 1.0))
    throw std::invalid_argument("quantile must be in (0,1)");

  MmdPermutationTest out;
  out.observed_mmd2 = mmd2_unbiased(samples_a, samples_b, dim);

  std::vector<State> pool(samples_a.begin(), samples_a.end());
  pool.insert(pool.end(), samples_b.begin(), samples_b.end());
  const std::size_t m = samples_a.size();
  std::vector<double> null_stats(n_permutations);
  for (int p = 0; p < n_permutations; ++p) {
    for (std::size_t i = pool.size() - 1; i > 0; --i) {
      const std::size_t j = rng.uniform_index(i + 1);
      std::swap(pool[i], pool[j]);
    }
    null_stats[p] = mmd2_unbiased(std::span<const State>(pool.data(), m),
                                  std::span<const State>(pool.data() + m, pool.size() - m),
                                  dim);
  }
  std::sort(null_stats.begin(), null_stats.end());
  const auto idx = static_cast<std::size_t>(
      std::min<double>(n_permutations - 1.0, std::ceil(quantile * n_permutations) - 1.0));
  out.threshold = null_stats[std::max<std::size_t>(idx, 0)];
  out.below_threshold = out.observed_mmd2 < out.threshold;
  return out;
}

FlipStats flip_stats_from_counts(std::int64_t n_events, std::int64_t n_accepted,
                                 std::int64_t sum_coords_changed) {
  if (n_events <= 0) throw std::invalid_argument("flip_stats: empty trace");
  FlipStats f;
  f.acceptance_rate = static_cast<double>(n_accepted) / static_cast<double>(n_events);
  f.mean_coords_changed =
      n_accepted > 0 ? static_cast<double>(sum_coords_changed) / static_cast<double>(n_accepted)
                     : 0.0;
  return f;
}

}  // namespace dlmc
