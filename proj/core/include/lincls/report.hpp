#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lincls/cross_validation.hpp"
#include "lincls/experiment.hpp"
#include "lincls/metrics.hpp"

namespace lincls {

struct WDLTable {
  std::string metric;
  std::string label_a;
  std::string label_b;
  WDLRecord record;
};

struct EvaluationReport {
  ExperimentSpec spec;
  std::string dataset;
  std::size_t instances = 0;
  /// Report label only: "Big" when instances >= big_threshold, else "Little".
  std::size_t big_threshold = 100000;
  std::vector<FoldResult> folds;
  std::optional<BVResult> bias_variance;
  std::size_t bias_variance_trials = 0;
  std::vector<WDLTable> wdl;
  std::vector<std::string> trace_paths;

  std::string size_label() const { return instances >= big_threshold ? "Big" : "Little"; }
  double mean_zero_one() const;
  double mean_rmse() const;
  double mean_train_seconds() const;
  double mean_test_seconds() const;
};

/// Pretty-printed JSON. Keys are emitted in a fixed order, so identical
/// inputs give identical bytes apart from the *_seconds fields. Fold traces
/// and per-instance predictions are not embedded; per-instance tallies are.
std::string report_to_json(const EvaluationReport& report);

/// Inverse of report_to_json; throws DataError on malformed input.
EvaluationReport report_from_json(std::string_view json);

}  // namespace lincls
