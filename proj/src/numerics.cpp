#include "dlmc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dlmc {

void stable_softmax(std::span<const double> logits, std::span<double> out) {
  if (logits.empty()) throw std::domain_error("stable_softmax: empty logits");
  if (logits.size() != out.size())
    throw std::invalid_argument("stable_softmax: size mismatch");
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : logits) {
    if (!std::isfinite(v))
      throw std::domain_error("stable_softmax: non-finite logit (invalid energy or gradient)");
    mx = std::max(mx, v);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double shifted = logits[i] - mx;
    out[i] = shifted < -kSoftmaxFlushGap ? 0.0 : std::exp(shifted);
    sum += out[i];
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] /= sum;
}

std::vector<double> stable_softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  stable_softmax(logits, out);
  return out;
}

double log_sum_exp(std::span<const double> x) {
  if (x.empty()) throw std::domain_error("log_sum_exp: empty input");
  double mx = -std::numeric_limits<double>::infinity();
  for (double v : x) mx = std::max(mx, v);
  if (!std::isfinite(mx)) return mx;  // all -inf, or a nan propagates
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - mx);
  return mx + std::log(sum);
}

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double softplus(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

}  // namespace dlmc
