#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lincls/dataset.hpp"
#include "lincls/experiment.hpp"
#include "lincls/metrics.hpp"
#include "lincls/solvers.hpp"

namespace lincls {

struct FoldResult {
  std::size_t round = 0;
  std::size_t fold = 0;
  double zero_one = 0;
  double rmse = 0;
  double train_seconds = 0;
  double test_seconds = 0;
  /// Terminal training objective, summed over the models of the fold.
  double final_objective = 0;
  std::size_t iterations = 0;
  std::vector<std::string> stop_reasons;
  std::vector<SolverTrace> traces;
  std::vector<std::size_t> test_rows;
  std::vector<ClassIndex> predictions;
};

/// Stream seed for (seed, a, b); distinct inputs give independent streams.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Stratified assignment of rows to `folds` folds. Each class is shuffled
/// with an RNG seeded by `seed` and dealt round-robin, continuing the deal
/// across classes so fold sizes differ by at most one. Rows within a fold are
/// ascending. Throws DataError when some class has a single instance (its
/// training partition would miss that class) or when N < folds.
std::vector<std::vector<std::size_t>> stratified_folds(std::span<const ClassIndex> labels,
                                                       std::size_t num_classes,
                                                       std::size_t folds, std::uint64_t seed);

/// `rounds` x `folds` cross-validation. Preprocessing and training see the
/// training partition only. Results are ordered by (round, fold).
std::vector<FoldResult> cross_validate(const ExperimentSpec& spec, const Dataset& data);

/// Trains on the first dataset and returns labels for the second.
using Learner = std::function<std::vector<ClassIndex>(const Dataset& train, const Dataset& test)>;

Learner make_learner(const ExperimentSpec& spec);

/// Repeated 2-fold cross-validation bias-variance estimate: `trials` rounds,
/// each instance predicted once per round.
BVResult bias_variance(const Learner& learner, const Dataset& data, std::size_t trials,
                       std::uint64_t seed);
BVResult bias_variance(const ExperimentSpec& spec, const Dataset& data, std::size_t trials);

}  // namespace lincls
