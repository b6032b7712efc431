#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace errp::stats {

double normal_cdf(double z);

// Two-sample Wilcoxon rank-sum test, two-sided, normal approximation with
// tie correction. Returns p = 1 for degenerate inputs (all values equal or a
// zero-variance rank distribution).
double ranksum_test(std::span<const double> a, std::span<const double> b);

// Centered moving average with a shrinking symmetric window at the edges:
// at index i the half-width is min(half, i, n-1-i), so the output length
// equals the input length and edge values average fewer samples.
Eigen::VectorXd moving_average_centered(const Eigen::Ref<const Eigen::VectorXd>& x, int window);

double mean(std::span<const double> v);
double sample_sd(std::span<const double> v);

}  // namespace errp::stats
