#pragma once

#include <span>
#include <vector>

namespace dlmc {

// Logits this far below the max are flushed to probability zero.
inline constexpr double kSoftmaxFlushGap = 745.0;

// Probabilities below this are treated as exactly zero by the proposal
// machinery; their log is -inf.
inline constexpr double kProbFlushThreshold = 1e-300;

// Max-subtracted softmax. Entries more than kSoftmaxFlushGap below the max
// come out exactly 0. Throws std::domain_error on non-finite input (which
// signals an invalid energy or gradient upstream).
std::vector<double> stable_softmax(std::span<const double> logits);

// In-place variant writing into `out` (same size as logits).
void stable_softmax(std::span<const double> logits, std::span<double> out);

// log(sum(exp(x))) with max subtraction; empty input is an error.
double log_sum_exp(std::span<const double> x);

double sigmoid(double x);

// log(1 + exp(x)) without overflow.
double softplus(double x);

}  // namespace dlmc
