#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lincls/dataset.hpp"

namespace lincls {

enum class DiscretizationMethod { ewd, efd, mdlp };

std::string_view to_string(DiscretizationMethod method);
/// Accepts "ewd", "efd", "mdlp" (case-insensitive); throws std::invalid_argument.
DiscretizationMethod parse_discretization_method(std::string_view name);

/// Strictly increasing thresholds for one attribute. A value v falls into
/// interval #{t_j <= v}, so m thresholds give m + 1 intervals.
struct CutPoints {
  std::size_t attribute = 0;
  std::vector<double> thresholds;
  DiscretizationMethod method = DiscretizationMethod::mdlp;

  std::size_t num_intervals() const noexcept { return thresholds.size() + 1; }
  std::size_t interval_of(double value) const;

  bool operator==(const CutPoints&) const = default;
};

/// Equal-width bins over [min, max]. Throws std::invalid_argument if k == 0
/// or the column is empty or has missing cells.
CutPoints fit_ewd(std::span<const double> column, std::size_t k);

/// Equal-frequency bins of about N/k sorted values; a run of identical values
/// never straddles a threshold.
CutPoints fit_efd(std::span<const double> column, std::size_t k);

/// Recursive entropy-minimising binary splits with the MDL stopping rule.
CutPoints fit_mdlp(std::span<const double> column, std::span<const ClassIndex> labels);

/// Outcome of the first (whole-column) MDLP split decision.
struct MdlpSplit {
  bool has_candidate = false;
  bool accepted = false;
  double cut = 0;
  double gain = 0;
  /// Right-hand side of the MDL acceptance inequality.
  double threshold = 0;
};

MdlpSplit mdlp_best_split(std::span<const double> column, std::span<const ClassIndex> labels);

/// One CutPoints per quantitative attribute of the schema it was fitted on.
class DiscretizationModel {
 public:
  DiscretizationModel() = default;
  DiscretizationModel(Schema schema, std::vector<CutPoints> cuts);

  /// Labels are consulted only for MDLP. `k` is ignored by MDLP.
  static DiscretizationModel fit(const Dataset& train, DiscretizationMethod method,
                                 std::size_t k = 3);

  /// Quantitative attributes become qualitative with one category per
  /// interval; qualitative attributes pass through. Missing cells stay
  /// missing. Throws DataError on schema mismatch.
  Dataset apply(const Dataset& data) const;

  const Schema& input_schema() const noexcept { return schema_; }
  const std::vector<CutPoints>& cuts() const noexcept { return cuts_; }
  bool empty() const noexcept { return cuts_.empty(); }
  /// Qualitative cardinalities of the transformed attributes, in cut order.
  std::vector<std::size_t> cardinalities() const;

  /// {"attributes": [{"name", "method", "thresholds"}...]}
  std::string to_json() const;
  static DiscretizationModel from_json(std::string_view json, const Schema& schema);

 private:
  Schema schema_;
  std::vector<CutPoints> cuts_;
};

}  // namespace lincls
