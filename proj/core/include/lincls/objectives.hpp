#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "lincls/dataset.hpp"
#include "lincls/function.hpp"
#include "lincls/layout.hpp"

namespace lincls {

enum class ObjectiveKind { nll, hinge, mse };

std::string_view to_string(ObjectiveKind kind);
ObjectiveKind parse_objective_kind(std::string_view name);

struct ObjectiveConfig {
  ObjectiveKind kind = ObjectiveKind::nll;
  /// NLL and MSE: weight of the (lambda/2)||beta||^2 penalty.
  /// Hinge: weight of the squared-hinge loss term against (1/2)||beta||^2.
  double lambda = 0.0;
  bool regularize_intercept = false;

  /// 0 for NLL and MSE, 1 for hinge.
  static double default_lambda(ObjectiveKind kind) { return kind == ObjectiveKind::hinge ? 1.0 : 0.0; }
  static ObjectiveConfig defaults(ObjectiveKind kind) { return {kind, default_lambda(kind), false}; }
};

struct ObjectiveEval {
  double value = 0;
  std::vector<double> gradient;
};

/// Shared state for objectives that are sums over the rows of a dataset.
class LinearObjective : public DifferentiableFunction {
 public:
  LinearObjective(const ParameterLayout& layout, const Dataset& data, const ObjectiveConfig& config);

  std::size_t dimension() const override { return layout_.size(); }
  std::size_t num_terms() const override { return features_.rows(); }

  const ParameterLayout& layout() const noexcept { return layout_; }
  const ObjectiveConfig& config() const noexcept { return config_; }

 protected:
  bool regularized(std::size_t slot) const {
    return config_.regularize_intercept || !layout_.is_intercept(slot);
  }
  /// Adds (weight/2)||beta||^2 over regularized slots; grad may be empty.
  double add_penalty(double weight, std::span<const double> x, std::span<double> grad) const;
  void check_sizes(std::span<const double> x, std::span<double> out) const;

  ParameterLayout layout_;
  FeatureMatrix features_;
  std::vector<ClassIndex> labels_;
  ObjectiveConfig config_;
};

/// Softmax negative log-likelihood, one parameter block per class.
class NllObjective final : public LinearObjective {
 public:
  NllObjective(const ParameterLayout& layout, const Dataset& data, const ObjectiveConfig& config);

  double evaluate(std::span<const double> x, std::span<double> grad) const override;
  bool has_hessian_vec() const override { return true; }
  void hessian_vec(std::span<const double> x, std::span<const double> v,
                   std::span<double> out) const override;
  void term_gradient(std::span<const double> x, std::span<const std::size_t> terms,
                     std::span<double> grad) const override;
};

/// L2-loss hinge: (1/2)||beta||^2 + lambda * sum max(0, 1 - y beta^T phi)^2
/// with y = +1 for `positive_class` and -1 otherwise. Single-block layout.
class HingeObjective final : public LinearObjective {
 public:
  HingeObjective(const ParameterLayout& layout, const Dataset& data, ClassIndex positive_class,
                 const ObjectiveConfig& config);

  double evaluate(std::span<const double> x, std::span<double> grad) const override;
  bool has_hessian_vec() const override { return true; }
  /// Generalized Hessian: identity on regularized slots plus
  /// 2 lambda sum over the active set of phi phi^T.
  void hessian_vec(std::span<const double> x, std::span<const double> v,
                   std::span<double> out) const override;
  void term_gradient(std::span<const double> x, std::span<const std::size_t> terms,
                     std::span<double> grad) const override;

  double sign(std::size_t row) const { return signs_[row]; }

 private:
  std::vector<double> signs_;
};

/// (1/2) sum_l sum_c (onehot_c(y_l) - P(c|x_l))^2 + (lambda/2)||beta||^2.
class MseObjective final : public LinearObjective {
 public:
  MseObjective(const ParameterLayout& layout, const Dataset& data, const ObjectiveConfig& config);

  double evaluate(std::span<const double> x, std::span<double> grad) const override;
  bool has_hessian_vec() const override { return true; }
  /// Central difference of the gradient along v.
  void hessian_vec(std::span<const double> x, std::span<const double> v,
                   std::span<double> out) const override;
  void term_gradient(std::span<const double> x, std::span<const std::size_t> terms,
                     std::span<double> grad) const override;
};

ObjectiveEval nll_eval(const ParameterLayout& layout, std::span<const double> params,
                       const Dataset& data, const ObjectiveConfig& config);
std::vector<double> nll_hessian_vec(const ParameterLayout& layout, std::span<const double> params,
                                    const Dataset& data, std::span<const double> v,
                                    const ObjectiveConfig& config);

/// Class 0 is the positive class.
ObjectiveEval hinge_eval(const ParameterLayout& layout, std::span<const double> params,
                         const Dataset& data, const ObjectiveConfig& config);
std::vector<double> hinge_hessian_vec(const ParameterLayout& layout,
                                      std::span<const double> params, const Dataset& data,
                                      std::span<const double> v, const ObjectiveConfig& config);

ObjectiveEval mse_eval(const ParameterLayout& layout, std::span<const double> params,
                       const Dataset& data, const ObjectiveConfig& config);
std::vector<double> mse_hessian_vec(const ParameterLayout& layout, std::span<const double> params,
                                    const Dataset& data, std::span<const double> v,
                                    const ObjectiveConfig& config);

}  // namespace lincls
