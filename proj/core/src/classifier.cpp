#include <stdexcept>

#include "lincls/error.hpp"
#include "lincls/experiment.hpp"
#include "lincls/objectives.hpp"
#include "text_util.hpp"

namespace lincls {

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::lr: return "LR";
    case ClassifierKind::svc: return "SVC";
    case ClassifierKind::svc_ova: return "SVC-OVA";
    case ClassifierKind::ann0: return "ANN0";
  }
  return "?";
}

ClassifierKind parse_classifier_kind(std::string_view name) {
  const auto n = detail::lower(name);
  if (n == "lr") return ClassifierKind::lr;
  if (n == "svc") return ClassifierKind::svc;
  if (n == "svc-ova") return ClassifierKind::svc_ova;
  if (n == "ann0") return ClassifierKind::ann0;
  throw std::invalid_argument("unknown classifier '" + std::string(name) +
                              "'; valid classifiers are " + std::string(kClassifierNames));
}

ObjectiveKind objective_for(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::lr: return ObjectiveKind::nll;
    case ClassifierKind::svc:
    case ClassifierKind::svc_ova: return ObjectiveKind::hinge;
    case ClassifierKind::ann0: return ObjectiveKind::mse;
  }
  return ObjectiveKind::nll;
}

double ExperimentSpec::resolved_lambda() const {
  return lambda.value_or(ObjectiveConfig::default_lambda(objective_for(classifier)));
}

void ExperimentSpec::validate() const {
  if (rounds < 1) throw std::invalid_argument("rounds must be at least 1");
  if (folds < 2) throw std::invalid_argument("folds must be at least 2");
  if (bins < 1) throw std::invalid_argument("bin count must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (!(resolved_lambda() >= 0)) throw std::invalid_argument("lambda must be non-negative");
  solver.validate();
}

namespace {

void check_solution(const SolverResult& result) {
  if (result.trace.stop_reason == StopReason::numeric_failure) {
    throw NumericError("objective became non-finite during optimisation");
  }
}

}  // namespace

TrainedClassifier train_classifier(const Dataset& train, ClassifierKind kind,
                                   const ObjectiveConfig& objective, const SolverConfig& solver) {
  const auto& schema = train.schema();
  TrainedClassifier out;
  out.model.kind = objective_for(kind);
  out.model.lambda = objective.lambda;
  ObjectiveConfig config = objective;
  config.kind = out.model.kind;

  switch (kind) {
    case ClassifierKind::lr:
    case ClassifierKind::ann0: {
      out.model.layout = ParameterLayout::softmax(schema);
      std::vector<double> x0(out.model.layout.size(), 0.0);
      SolverResult result = kind == ClassifierKind::lr
                                ? minimize(NllObjective(out.model.layout, train, config), x0, solver)
                                : minimize(MseObjective(out.model.layout, train, config), x0, solver);
      check_solution(result);
      out.model.params = std::move(result.solution);
      out.traces.push_back(std::move(result.trace));
      break;
    }
    case ClassifierKind::svc: {
      if (schema.num_classes() != 2) {
        throw DataError("SVC needs a binary class attribute (found " +
                        std::to_string(schema.num_classes()) +
                        " classes); binarize the dataset or use SVC-OVA");
      }
      out.model.layout = ParameterLayout::single_block(schema);
      std::vector<double> x0(out.model.layout.size(), 0.0);
      auto result = minimize(HingeObjective(out.model.layout, train, 0, config), x0, solver);
      check_solution(result);
      out.model.params = std::move(result.solution);
      out.traces.push_back(std::move(result.trace));
      break;
    }
    case ClassifierKind::svc_ova: {
      out.model.one_vs_all = true;
      out.model.layout = ParameterLayout::softmax(schema);
      const auto block = ParameterLayout::single_block(schema);
      out.model.params.reserve(out.model.layout.size());
      for (ClassIndex c = 0; c < schema.num_classes(); ++c) {
        std::vector<double> x0(block.size(), 0.0);
        auto result = minimize(HingeObjective(block, train, c, config), x0, solver);
        check_solution(result);
        out.model.params.insert(out.model.params.end(), result.solution.begin(),
                                result.solution.end());
        out.traces.push_back(std::move(result.trace));
      }
      break;
    }
  }
  return out;
}

Dataset Pipeline::transform(const Dataset& data) const {
  Dataset out = imputation.apply(data);
  if (discretization) return discretization->apply(out);
  if (normalization) return normalization->apply(out);
  return out;
}

void Pipeline::predict(const Dataset& data, std::vector<ClassIndex>& labels,
                       std::vector<double>& probabilities) const {
  const Dataset ready = transform(data);
  const auto& model = classifier.model;
  const std::size_t classes = model.num_classes();
  labels.resize(ready.size());
  probabilities.resize(ready.size() * classes);
  for (std::size_t r = 0; r < ready.size(); ++r) {
    const auto p = predict_proba(model, ready.row(r));
    labels[r] = predict_label(model, ready.row(r));
    std::copy(p.begin(), p.end(), probabilities.begin() + static_cast<std::ptrdiff_t>(r * classes));
  }
}

Pipeline fit_pipeline(const ExperimentSpec& spec, const Dataset& train,
                      const SolverConfig& solver) {
  Pipeline p{ImputationModel::fit(train, MissingCategory::always), std::nullopt, std::nullopt, {}};
  Dataset ready = p.imputation.apply(train);
  if (spec.discretize) {
    p.discretization = DiscretizationModel::fit(ready, spec.method, spec.bins);
    ready = p.discretization->apply(ready);
  } else {
    p.normalization = NormalizationModel::fit(ready);
    ready = p.normalization->apply(ready);
  }
  ObjectiveConfig objective{objective_for(spec.classifier), spec.resolved_lambda(),
                            spec.regularize_intercept};
  p.classifier = train_classifier(ready, spec.classifier, objective, solver);
  return p;
}

}  // namespace lincls
