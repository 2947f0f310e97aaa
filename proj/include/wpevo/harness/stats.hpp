#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wpevo::stats {

/// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation; 0 when either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Spearman rank correlation (Pearson on average ranks).
double spearman(std::span<const double> x, std::span<const double> y);

double mean(std::span<const double> values);

/// Exact one-sided sign test: P(X >= wins) for X ~ Binomial(wins + losses, 1/2).
double sign_test_one_sided(std::size_t wins, std::size_t losses);

}  // namespace wpevo::stats
