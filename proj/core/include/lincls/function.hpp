#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

namespace lincls {

/// A smooth (or piecewise-smooth) objective over R^dimension().
class DifferentiableFunction {
 public:
  virtual ~DifferentiableFunction() = default;

  virtual std::size_t dimension() const = 0;

  /// Objective value at x. Writes the gradient into `grad` unless it is empty.
  virtual double evaluate(std::span<const double> x, std::span<double> grad) const = 0;

  double value(std::span<const double> x) const { return evaluate(x, {}); }

  virtual bool has_hessian_vec() const { return false; }

  /// out = H(x) v
  virtual void hessian_vec(std::span<const double> /*x*/, std::span<const double> /*v*/,
                           std::span<double> /*out*/) const {
    throw std::logic_error("Hessian-vector products are not available for this objective");
  }

  /// Number of additive terms (instances) for stochastic gradients; 0 if the
  /// function has no such decomposition.
  virtual std::size_t num_terms() const { return 0; }

  /// Unbiased estimate of grad(f)/num_terms() from the listed terms.
  virtual void term_gradient(std::span<const double> /*x*/, std::span<const std::size_t> /*terms*/,
                             std::span<double> /*grad*/) const {
    throw std::logic_error("stochastic gradients are not available for this objective");
  }
};

}  // namespace lincls
