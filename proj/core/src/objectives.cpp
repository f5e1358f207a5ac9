#include "lincls/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "text_util.hpp"

namespace lincls {

namespace {

double norm2(std::span<const double> v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

// Class scores for row r into `scores` and their softmax into `probs` (may
// alias `scores`); returns log-sum-exp.
double row_softmax(const FeatureMatrix& features, std::size_t r, std::span<const double> x,
                   std::size_t block_size, std::span<double> scores, std::span<double> probs) {
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < scores.size(); ++c) {
    scores[c] = features.dot(r, x, c * block_size);
    top = std::max(top, scores[c]);
  }
  double sum = 0;
  for (std::size_t c = 0; c < scores.size(); ++c) sum += probs[c] = std::exp(scores[c] - top);
  for (auto& p : probs) p /= sum;
  return top + std::log(sum);
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::nll: return "nll";
    case ObjectiveKind::hinge: return "hinge";
    case ObjectiveKind::mse: return "mse";
  }
  return "?";
}

ObjectiveKind parse_objective_kind(std::string_view name) {
  const auto n = detail::lower(name);
  if (n == "nll") return ObjectiveKind::nll;
  if (n == "hinge") return ObjectiveKind::hinge;
  if (n == "mse") return ObjectiveKind::mse;
  throw std::invalid_argument("unknown objective '" + std::string(name) + "'");
}

LinearObjective::LinearObjective(const ParameterLayout& layout, const Dataset& data,
                                 const ObjectiveConfig& config)
    : layout_(layout),
      features_(layout, data),
      labels_(data.labels().begin(), data.labels().end()),
      config_(config) {
  if (!(config_.lambda >= 0) || !std::isfinite(config_.lambda)) {
    throw std::invalid_argument("lambda must be finite and non-negative");
  }
}

double LinearObjective::add_penalty(double weight, std::span<const double> x,
                                    std::span<double> grad) const {
  if (weight == 0) return 0;
  double sq = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!regularized(i)) continue;
    sq += x[i] * x[i];
    if (!grad.empty()) grad[i] += weight * x[i];
  }
  return 0.5 * weight * sq;
}

void LinearObjective::check_sizes(std::span<const double> x, std::span<double> out) const {
  if (x.size() != dimension() || (!out.empty() && out.size() != dimension())) {
    throw std::invalid_argument("parameter vector size does not match the layout");
  }
}

// ---------------------------------------------------------------------------
// NLL

NllObjective::NllObjective(const ParameterLayout& layout, const Dataset& data,
                           const ObjectiveConfig& config)
    : LinearObjective(layout, data, config) {
  if (layout.blocks() != layout.schema().num_classes()) {
    throw std::invalid_argument("NLL needs one parameter block per class");
  }
}

double NllObjective::evaluate(std::span<const double> x, std::span<double> grad) const {
  check_sizes(x, grad);
  if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
  const std::size_t classes = layout_.blocks();
  const std::size_t bs = layout_.block_size();
  std::vector<double> s(classes), p(classes);
  double value = 0;
  for (std::size_t r = 0; r < features_.rows(); ++r) {
    const double lse = row_softmax(features_, r, x, bs, s, p);
    value += lse - s[labels_[r]];
    if (grad.empty()) continue;
    for (std::size_t c = 0; c < classes; ++c) {
      features_.axpy(r, p[c] - (c == labels_[r] ? 1.0 : 0.0), grad, c * bs);
    }
  }
  return value + add_penalty(config_.lambda, x, grad);
}

void NllObjective::hessian_vec(std::span<const double> x, std::span<const double> v,
                               std::span<double> out) const {
  check_sizes(x, out);
  if (v.size() != dimension()) throw std::invalid_argument("direction size mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t classes = layout_.blocks();
  const std::size_t bs = layout_.block_size();
  std::vector<double> s(classes), u(classes);
  for (std::size_t r = 0; r < features_.rows(); ++r) {
    row_softmax(features_, r, x, bs, s, s);
    double mean_u = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      u[c] = features_.dot(r, v, c * bs);
      mean_u += s[c] * u[c];
    }
    for (std::size_t c = 0; c < classes; ++c) {
      features_.axpy(r, s[c] * (u[c] - mean_u), out, c * bs);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (regularized(i)) out[i] += config_.lambda * v[i];
  }
}

void NllObjective::term_gradient(std::span<const double> x, std::span<const std::size_t> terms,
                                 std::span<double> grad) const {
  check_sizes(x, grad);
  std::fill(grad.begin(), grad.end(), 0.0);
  const std::size_t classes = layout_.blocks();
  const std::size_t bs = layout_.block_size();
  const double scale = terms.empty() ? 0.0 : 1.0 / static_cast<double>(terms.size());
  std::vector<double> p(classes);
  for (auto r : terms) {
    row_softmax(features_, r, x, bs, p, p);
    for (std::size_t c = 0; c < classes; ++c) {
      features_.axpy(r, scale * (p[c] - (c == labels_[r] ? 1.0 : 0.0)), grad, c * bs);
    }
  }
  add_penalty(config_.lambda / static_cast<double>(num_terms()), x, grad);
}

// ---------------------------------------------------------------------------
// Hinge

HingeObjective::HingeObjective(const ParameterLayout& layout, const Dataset& data,
                               ClassIndex positive_class, const ObjectiveConfig& config)
    : LinearObjective(layout, data, config) {
  if (layout.blocks() != 1) throw std::invalid_argument("hinge loss uses a single block");
  if (positive_class >= data.schema().num_classes()) {
    throw std::invalid_argument("positive class out of range");
  }
  signs_.resize(labels_.size());
  for (std::size_t r = 0; r < labels_.size(); ++r) {
    signs_[r] = labels_[r] == positive_class ? 1.0 : -1.0;
  }
}

double HingeObjective::evaluate(std::span<const double> x, std::span<double> grad) const {
  check_sizes(x, grad);
  if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
  double loss = 0;
  for (std::size_t r = 0; r < features_.rows(); ++r) {
    const double margin = signs_[r] * features_.dot(r, x, 0);
    if (margin >= 1) continue;
    loss += (1 - margin) * (1 - margin);
    if (!grad.empty()) features_.axpy(r, 2 * config_.lambda * (margin - 1) * signs_[r], grad, 0);
  }
  return config_.lambda * loss + add_penalty(1.0, x, grad);
}

void HingeObjective::hessian_vec(std::span<const double> x, std::span<const double> v,
                                 std::span<double> out) const {
  check_sizes(x, out);
  if (v.size() != dimension()) throw std::invalid_argument("direction size mismatch");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = regularized(i) ? v[i] : 0.0;
  for (std::size_t r = 0; r < features_.rows(); ++r) {
    const double margin = signs_[r] * features_.dot(r, x, 0);
    if (margin >= 1) continue;
    features_.axpy(r, 2 * config_.lambda * features_.dot(r, v, 0), out, 0);
  }
}

void HingeObjective::term_gradient(std::span<const double> x, std::span<const std::size_t> terms,
                                   std::span<double> grad) const {
  check_sizes(x, grad);
  std::fill(grad.begin(), grad.end(), 0.0);
  const double scale = terms.empty() ? 0.0 : 1.0 / static_cast<double>(terms.size());
  for (auto r : terms) {
    const double margin = signs_[r] * features_.dot(r, x, 0);
    if (margin >= 1) continue;
    features_.axpy(r, scale * 2 * config_.lambda * (margin - 1) * signs_[r], grad, 0);
  }
  add_penalty(1.0 / static_cast<double>(num_terms()), x, grad);
}

// ---------------------------------------------------------------------------
// MSE

MseObjective::MseObjective(const ParameterLayout& layout, const Dataset& data,
                           const ObjectiveConfig& config)
    : LinearObjective(layout, data, config) {
  if (layout.blocks() != layout.schema().num_classes()) {
    throw std::invalid_argument("MSE needs one parameter block per class");
  }
}

namespace {

// Adds scale * d(0.5 sum_c (t_c - p_c)^2)/d(beta) for one row; returns the row's error.
double mse_row(const FeatureMatrix& features, std::size_t r, ClassIndex y,
               std::span<const double> x, std::size_t block_size, std::span<double> p,
               std::span<double> grad, double scale) {
  row_softmax(features, r, x, block_size, p, p);
  double err = 0;
  double a = 0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    const double e = p[c] - (c == y ? 1.0 : 0.0);
    err += e * e;
    a += e * p[c];
  }
  if (!grad.empty()) {
    for (std::size_t c = 0; c < p.size(); ++c) {
      const double e = p[c] - (c == y ? 1.0 : 0.0);
      features.axpy(r, scale * p[c] * (e - a), grad, c * block_size);
    }
  }
  return 0.5 * err;
}

}  // namespace

double MseObjective::evaluate(std::span<const double> x, std::span<double> grad) const {
  check_sizes(x, grad);
  if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
  std::vector<double> p(layout_.blocks());
  double value = 0;
  for (std::size_t r = 0; r < features_.rows(); ++r) {
    value += mse_row(features_, r, labels_[r], x, layout_.block_size(), p, grad, 1.0);
  }
  return value + add_penalty(config_.lambda, x, grad);
}

void MseObjective::hessian_vec(std::span<const double> x, std::span<const double> v,
                               std::span<double> out) const {
  check_sizes(x, out);
  if (v.size() != dimension()) throw std::invalid_argument("direction size mismatch");
  const double vnorm = norm2(v);
  if (vnorm == 0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double h = 1e-6 * (1 + norm2(x)) / (vnorm + 1e-12);
  std::vector<double> plus(x.begin(), x.end()), minus(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    plus[i] += h * v[i];
    minus[i] -= h * v[i];
  }
  std::vector<double> g_minus(x.size());
  evaluate(plus, out);
  evaluate(minus, g_minus);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (out[i] - g_minus[i]) / (2 * h);
}

void MseObjective::term_gradient(std::span<const double> x, std::span<const std::size_t> terms,
                                 std::span<double> grad) const {
  check_sizes(x, grad);
  std::fill(grad.begin(), grad.end(), 0.0);
  const double scale = terms.empty() ? 0.0 : 1.0 / static_cast<double>(terms.size());
  std::vector<double> p(layout_.blocks());
  for (auto r : terms) mse_row(features_, r, labels_[r], x, layout_.block_size(), p, grad, scale);
  add_penalty(config_.lambda / static_cast<double>(num_terms()), x, grad);
}

// ---------------------------------------------------------------------------
// Free-function entry points

namespace {

template <class Objective, class... Extra>
ObjectiveEval eval_with(const ParameterLayout& layout, std::span<const double> params,
                        const Dataset& data, const ObjectiveConfig& config, Extra... extra) {
  Objective f(layout, data, extra..., config);
  ObjectiveEval out;
  out.gradient.resize(f.dimension());
  out.value = f.evaluate(params, out.gradient);
  return out;
}

template <class Objective, class... Extra>
std::vector<double> hv_with(const ParameterLayout& layout, std::span<const double> params,
                            const Dataset& data, std::span<const double> v,
                            const ObjectiveConfig& config, Extra... extra) {
  Objective f(layout, data, extra..., config);
  std::vector<double> out(f.dimension());
  f.hessian_vec(params, v, out);
  return out;
}

}  // namespace

ObjectiveEval nll_eval(const ParameterLayout& layout, std::span<const double> params,
                       const Dataset& data, const ObjectiveConfig& config) {
  return eval_with<NllObjective>(layout, params, data, config);
}

std::vector<double> nll_hessian_vec(const ParameterLayout& layout, std::span<const double> params,
                                    const Dataset& data, std::span<const double> v,
                                    const ObjectiveConfig& config) {
  return hv_with<NllObjective>(layout, params, data, v, config);
}

ObjectiveEval hinge_eval(const ParameterLayout& layout, std::span<const double> params,
                         const Dataset& data, const ObjectiveConfig& config) {
  return eval_with<HingeObjective>(layout, params, data, config, ClassIndex{0});
}

std::vector<double> hinge_hessian_vec(const ParameterLayout& layout,
                                      std::span<const double> params, const Dataset& data,
                                      std::span<const double> v, const ObjectiveConfig& config) {
  return hv_with<HingeObjective>(layout, params, data, v, config, ClassIndex{0});
}

ObjectiveEval mse_eval(const ParameterLayout& layout, std::span<const double> params,
                       const Dataset& data, const ObjectiveConfig& config) {
  return eval_with<MseObjective>(layout, params, data, config);
}

std::vector<double> mse_hessian_vec(const ParameterLayout& layout, std::span<const double> params,
                                    const Dataset& data, std::span<const double> v,
                                    const ObjectiveConfig& config) {
  return hv_with<MseObjective>(layout, params, data, v, config);
}

}  // namespace lincls
