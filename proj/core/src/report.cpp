#include "lincls/report.hpp"

#include <numeric>

#include <json.hpp>

#include "lincls/error.hpp"

namespace lincls {

namespace {

using nlohmann::ordered_json;

template <class Member>
double mean_of(const std::vector<FoldResult>& folds, Member member) {
  if (folds.empty()) return 0;
  double sum = 0;
  for (const auto& f : folds) sum += f.*member;
  return sum / static_cast<double>(folds.size());
}

ordered_json solver_to_json(const SolverConfig& s) {
  return {{"name", std::string(to_string(s.kind))},
          {"max_iterations", s.max_iterations},
          {"max_epochs", s.max_epochs},
          {"tolerance", s.tolerance},
          {"c1", s.c1},
          {"c2", s.c2},
          {"lbfgs_memory", s.lbfgs_memory},
          {"tron_eta0", s.tron_eta0},
          {"tron_sigma", {s.tron_sigma1, s.tron_sigma2, s.tron_sigma3}},
          {"sgd_step0", s.sgd_step0},
          {"sgd_decay", s.sgd_decay},
          {"sgd_batch", s.sgd_batch}};
}

SolverConfig solver_from_json(const ordered_json& j) {
  SolverConfig s;
  s.kind = parse_solver_kind(j.at("name").get<std::string>());
  s.max_iterations = j.at("max_iterations").get<std::size_t>();
  s.max_epochs = j.at("max_epochs").get<std::size_t>();
  s.tolerance = j.at("tolerance").get<double>();
  s.c1 = j.at("c1").get<double>();
  s.c2 = j.at("c2").get<double>();
  s.lbfgs_memory = j.at("lbfgs_memory").get<std::size_t>();
  s.tron_eta0 = j.at("tron_eta0").get<double>();
  const auto sigma = j.at("tron_sigma").get<std::vector<double>>();
  if (sigma.size() != 3) throw DataError("tron_sigma must have three entries");
  s.tron_sigma1 = sigma[0];
  s.tron_sigma2 = sigma[1];
  s.tron_sigma3 = sigma[2];
  s.sgd_step0 = j.at("sgd_step0").get<double>();
  s.sgd_decay = j.at("sgd_decay").get<double>();
  s.sgd_batch = j.at("sgd_batch").get<std::size_t>();
  return s;
}

ordered_json spec_to_json(const ExperimentSpec& spec) {
  return {{"classifier", std::string(to_string(spec.classifier))},
          {"discretize", spec.discretize},
          {"discretization_method", std::string(to_string(spec.method))},
          {"bins", spec.bins},
          {"lambda", spec.resolved_lambda()},
          {"regularize_intercept", spec.regularize_intercept},
          {"solver", solver_to_json(spec.solver)},
          {"rounds", spec.rounds},
          {"folds", spec.folds},
          {"seed", spec.seed}};
}

ExperimentSpec spec_from_json(const ordered_json& j) {
  ExperimentSpec spec;
  spec.classifier = parse_classifier_kind(j.at("classifier").get<std::string>());
  spec.discretize = j.at("discretize").get<bool>();
  spec.method = parse_discretization_method(j.at("discretization_method").get<std::string>());
  spec.bins = j.at("bins").get<std::size_t>();
  spec.lambda = j.at("lambda").get<double>();
  spec.regularize_intercept = j.at("regularize_intercept").get<bool>();
  spec.solver = solver_from_json(j.at("solver"));
  spec.rounds = j.at("rounds").get<std::size_t>();
  spec.folds = j.at("folds").get<std::size_t>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

ordered_json wdl_to_json(const WDLRecord& r) {
  return {{"wins", r.wins}, {"draws", r.draws}, {"losses", r.losses}, {"p_value", r.p_value}};
}

}  // namespace

double EvaluationReport::mean_zero_one() const { return mean_of(folds, &FoldResult::zero_one); }
double EvaluationReport::mean_rmse() const { return mean_of(folds, &FoldResult::rmse); }
double EvaluationReport::mean_train_seconds() const {
  return mean_of(folds, &FoldResult::train_seconds);
}
double EvaluationReport::mean_test_seconds() const {
  return mean_of(folds, &FoldResult::test_seconds);
}

std::string report_to_json(const EvaluationReport& report) {
  ordered_json folds = ordered_json::array();
  for (const auto& f : report.folds) {
    folds.push_back({{"round", f.round},
                     {"fold", f.fold},
                     {"zero_one_loss", f.zero_one},
                     {"rmse", f.rmse},
                     {"final_objective", f.final_objective},
                     {"iterations", f.iterations},
                     {"stop_reasons", f.stop_reasons},
                     {"train_seconds", f.train_seconds},
                     {"test_seconds", f.test_seconds}});
  }
  ordered_json j{{"dataset", report.dataset},
                 {"instances", report.instances},
                 {"size_label", report.size_label()},
                 {"big_threshold", report.big_threshold},
                 {"spec", spec_to_json(report.spec)},
                 {"folds", folds},
                 {"aggregate",
                  {{"zero_one_loss", report.mean_zero_one()},
                   {"rmse", report.mean_rmse()},
                   {"train_seconds", report.mean_train_seconds()},
                   {"test_seconds", report.mean_test_seconds()}}}};
  if (report.bias_variance) {
    j["bias_variance"] = {{"trials", report.bias_variance_trials},
                          {"bias", report.bias_variance->bias},
                          {"variance", report.bias_variance->variance},
                          {"tallies", report.bias_variance->tallies}};
  }
  ordered_json wdl = ordered_json::array();
  for (const auto& t : report.wdl) {
    wdl.push_back({{"metric", t.metric}, {"a", t.label_a}, {"b", t.label_b},
                   {"record", wdl_to_json(t.record)}});
  }
  j["wdl"] = wdl;
  j["trace_paths"] = report.trace_paths;
  return j.dump(2) + "\n";
}

EvaluationReport report_from_json(std::string_view json) {
  try {
    const auto j = ordered_json::parse(json);
    EvaluationReport r;
    r.dataset = j.at("dataset").get<std::string>();
    r.instances = j.at("instances").get<std::size_t>();
    r.big_threshold = j.at("big_threshold").get<std::size_t>();
    r.spec = spec_from_json(j.at("spec"));
    for (const auto& f : j.at("folds")) {
      FoldResult fr;
      fr.round = f.at("round").get<std::size_t>();
      fr.fold = f.at("fold").get<std::size_t>();
      fr.zero_one = f.at("zero_one_loss").get<double>();
      fr.rmse = f.at("rmse").get<double>();
      fr.final_objective = f.at("final_objective").get<double>();
      fr.iterations = f.at("iterations").get<std::size_t>();
      fr.stop_reasons = f.at("stop_reasons").get<std::vector<std::string>>();
      fr.train_seconds = f.at("train_seconds").get<double>();
      fr.test_seconds = f.at("test_seconds").get<double>();
      r.folds.push_back(std::move(fr));
    }
    if (j.contains("bias_variance")) {
      const auto& bv = j.at("bias_variance");
      BVResult b;
      b.bias = bv.at("bias").get<double>();
      b.variance = bv.at("variance").get<double>();
      b.tallies = bv.at("tallies").get<std::vector<std::vector<std::size_t>>>();
      r.bias_variance = std::move(b);
      r.bias_variance_trials = bv.at("trials").get<std::size_t>();
    }
    for (const auto& t : j.at("wdl")) {
      const auto& rec = t.at("record");
      r.wdl.push_back({t.at("metric").get<std::string>(), t.at("a").get<std::string>(),
                       t.at("b").get<std::string>(),
                       {rec.at("wins").get<std::size_t>(), rec.at("draws").get<std::size_t>(),
                        rec.at("losses").get<std::size_t>(), rec.at("p_value").get<double>()}});
    }
    r.trace_paths = j.at("trace_paths").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace lincls
