#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lincls/dataset.hpp"
#include "lincls/discretizer.hpp"
#include "lincls/model.hpp"
#include "lincls/preprocess.hpp"
#include "lincls/solvers.hpp"

namespace lincls {

/// LR: softmax NLL. SVC: binary L2 hinge. SVC-OVA: one hinge model per class.
/// ANN0: softmax trained on squared error.
enum class ClassifierKind { lr, svc, svc_ova, ann0 };

std::string_view to_string(ClassifierKind kind);
/// Accepts LR, SVC, SVC-OVA, ANN0 (case-insensitive).
ClassifierKind parse_classifier_kind(std::string_view name);
inline constexpr std::string_view kClassifierNames = "{LR, SVC, SVC-OVA, ANN0}";

ObjectiveKind objective_for(ClassifierKind kind);

struct ExperimentSpec {
  ClassifierKind classifier = ClassifierKind::lr;
  bool discretize = false;
  DiscretizationMethod method = DiscretizationMethod::mdlp;
  std::size_t bins = 3;
  /// Unset: 0 for LR/ANN0, 1 for the hinge classifiers.
  std::optional<double> lambda;
  bool regularize_intercept = false;
  SolverConfig solver;
  std::size_t rounds = 2;
  std::size_t folds = 2;
  std::uint64_t seed = 1;
  /// Folds trained concurrently; results do not depend on it.
  std::size_t threads = 1;

  double resolved_lambda() const;
  /// Throws std::invalid_argument.
  void validate() const;
};

struct TrainedClassifier {
  LinearModel model;
  /// One trace per optimisation (one per class for SVC-OVA).
  std::vector<SolverTrace> traces;
};

/// Trains on preprocessed data (no missing cells). SVC on more than two
/// classes throws DataError; a non-finite objective throws NumericError.
TrainedClassifier train_classifier(const Dataset& train, ClassifierKind kind,
                                   const ObjectiveConfig& objective, const SolverConfig& solver);

/// Imputation, then discretization or [0,1] normalization, then training,
/// all fitted on the training data only.
struct Pipeline {
  ImputationModel imputation;
  std::optional<NormalizationModel> normalization;
  std::optional<DiscretizationModel> discretization;
  TrainedClassifier classifier;

  Dataset transform(const Dataset& data) const;
  /// Row-major N x C probabilities and labels for raw (untransformed) data.
  void predict(const Dataset& data, std::vector<ClassIndex>& labels,
               std::vector<double>& probabilities) const;
};

Pipeline fit_pipeline(const ExperimentSpec& spec, const Dataset& train,
                      const SolverConfig& solver);

}  // namespace lincls
