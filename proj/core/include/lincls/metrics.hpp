#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lincls/dataset.hpp"

namespace lincls {

/// Fraction of mismatched labels.
double zero_one_loss(std::span<const ClassIndex> predicted, std::span<const ClassIndex> truth);

/// sqrt of the mean over instances and classes of (onehot(y) - p)^2.
/// `probabilities` is row-major N x num_classes.
double rmse(std::span<const double> probabilities, std::span<const ClassIndex> truth,
            std::size_t num_classes);

/// Kohavi-Wolpert bias and variance from per-instance prediction tallies.
struct BVResult {
  double bias = 0;
  double variance = 0;
  /// tallies[l][c]: number of trials in which instance l was predicted as c.
  std::vector<std::vector<std::size_t>> tallies;
};

/// bias(x) = 1/2 sum_c (1[c = y] - p_c)^2, variance(x) = 1/2 (1 - sum_c p_c^2),
/// averaged over instances, with p the empirical prediction distribution.
BVResult bias_variance_from_tallies(std::vector<std::vector<std::size_t>> tallies,
                                    std::span<const ClassIndex> truth);

/// Two-tailed binomial sign test over non-draws:
/// min(1, 2 * sum_{j <= min(w, l)} C(w + l, j) / 2^(w + l)). Returns 1 when
/// there are no non-draws.
double sign_test(std::size_t wins, std::size_t losses);

struct WDLRecord {
  std::size_t wins = 0;
  std::size_t draws = 0;
  std::size_t losses = 0;
  double p_value = 1;
};

/// Per-dataset comparison of a lower-is-better metric: a < b - tol is a win
/// for A, |a - b| <= tol a draw, anything else a loss.
WDLRecord wdl_compare(std::span<const double> a, std::span<const double> b, double tie_tol = 1e-4);

}  // namespace lincls
