#pragma once

#include <tuple>
#include <vector>

#include "lincls/dataset.hpp"

namespace lincls {

/// Label of the category appended to qualitative attributes for missing and
/// unseen values.
inline constexpr const char* kMissingCategory = "⟂";

enum class MissingCategory {
  /// Append the extra category only to attributes with missing training cells.
  when_needed,
  /// Append it to every qualitative attribute, so that schemas agree across
  /// folds and a missing test cell always has a slot.
  always,
};

/// Mean-substitution for quantitative attributes and a distinct category for
/// qualitative ones, fitted on one dataset and applied to others.
class ImputationModel {
 public:
  /// Throws DataError when a quantitative attribute has no observed values.
  static ImputationModel fit(const Dataset& train,
                             MissingCategory policy = MissingCategory::when_needed);

  /// Throws DataError if the schema differs from the fitted one, or if a
  /// qualitative attribute without a reserved category has a missing cell.
  Dataset apply(const Dataset& data) const;

  const Schema& output_schema() const noexcept { return output_schema_; }
  const std::vector<double>& means() const noexcept { return means_; }

 private:
  Schema input_schema_;
  Schema output_schema_;
  std::vector<double> means_;            // NaN for qualitative attributes
  std::vector<bool> reserved_category_;  // per attribute
};

/// Fits on `data` and applies to it.
Dataset impute_missing(const Dataset& data);

/// Per-quantitative-attribute [min, max] from training data; maps values to
/// [0, 1] with clamping. Constant attributes map to 0.
class NormalizationModel {
 public:
  struct Range {
    double min = 0;
    double max = 0;
  };

  /// Requires no missing quantitative cells.
  static NormalizationModel fit(const Dataset& train);
  Dataset apply(const Dataset& data) const;

  /// Empty optional-like range (min = max = NaN) for qualitative attributes.
  const std::vector<Range>& ranges() const noexcept { return ranges_; }

 private:
  Schema schema_;
  std::vector<Range> ranges_;
};

std::tuple<Dataset, Dataset, NormalizationModel> fit_apply_normalization(const Dataset& train,
                                                                         const Dataset& test);

/// Two-class relabelling: the most frequent class (lowest index on ties)
/// becomes class 0, every other instance class 1.
Dataset binarize_majority(const Dataset& data);

/// Replaces each qualitative attribute with one 0/1 quantitative column per
/// category. Missing qualitative cells become missing in every column.
Dataset one_hot_encode(const Dataset& data);

}  // namespace lincls
