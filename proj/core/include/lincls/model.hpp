#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lincls/layout.hpp"
#include "lincls/objectives.hpp"

namespace lincls {

class DiscretizationModel;

/// Trained linear classifier over a preprocessed schema.
///
/// NLL and MSE models use one softmax block per class. Hinge models use
/// either a single block (binary; class 0 scores +s, class 1 scores -s) or,
/// when `one_vs_all` is set, one independently trained block per class.
struct LinearModel {
  ObjectiveKind kind = ObjectiveKind::nll;
  ParameterLayout layout;
  std::vector<double> params;
  double lambda = 0;
  bool one_vs_all = false;

  const Schema& schema() const noexcept { return layout.schema(); }
  std::size_t num_classes() const noexcept { return layout.schema().num_classes(); }

  /// Per-class decision values: softmax scores for NLL/MSE, margins for hinge.
  std::vector<double> decision_values(std::span<const double> instance) const;
};

/// First index of the maximum.
ClassIndex argmax(std::span<const double> values);

/// Softmax for NLL/MSE; for hinge each decision value z is squashed by
/// 1/(1+exp(-2z)) and the results normalised to sum to one.
std::vector<double> predict_proba(const LinearModel& model, std::span<const double> instance);

/// Argmax of the decision values, ties to the lowest class index.
ClassIndex predict_label(const LinearModel& model, std::span<const double> instance);

/// JSON with the layout description, flat parameters, objective kind and
/// lambda. When `discretization` is given it is embedded under
/// "discretization".
std::string model_to_json(const LinearModel& model,
                          const DiscretizationModel* discretization = nullptr);
LinearModel model_from_json(std::string_view json);

}  // namespace lincls
