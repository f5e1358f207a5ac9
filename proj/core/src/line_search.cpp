#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lincls/solvers.hpp"
#include "vec.hpp"

namespace lincls {

namespace {

struct Trial {
  double step = 0;
  double value = 0;
  double slope = 0;  // directional derivative
  std::vector<double> point;
  std::vector<double> gradient;
};

// Minimiser of the cubic through (a, fa, da) and (b, fb, db), or NaN.
double cubic_minimizer(const Trial& a, const Trial& b) {
  const double d1 = a.slope + b.slope - 3 * (a.value - b.value) / (a.step - b.step);
  const double disc = d1 * d1 - a.slope * b.slope;
  if (!(disc >= 0)) return std::nan("");
  const double d2 = std::copysign(std::sqrt(disc), b.step - a.step);
  const double denom = b.slope - a.slope + 2 * d2;
  if (denom == 0) return std::nan("");
  return b.step - (b.step - a.step) * (b.slope + d2 - d1) / denom;
}

}  // namespace

LineSearchResult line_search(const DifferentiableFunction& f, std::span<const double> x, double fx,
                             std::span<const double> gx, std::span<const double> direction,
                             const LineSearchOptions& options) {
  const double slope0 = detail::dot(gx, direction);
  if (!(slope0 < 0)) {
    throw std::invalid_argument("line search direction is not a descent direction");
  }
  if (!(options.initial_step > 0)) throw std::invalid_argument("initial step must be positive");

  LineSearchResult result;
  auto evaluate = [&](double step) {
    Trial t;
    t.step = step;
    t.point.assign(x.begin(), x.end());
    detail::axpy(step, direction, t.point);
    t.gradient.resize(x.size());
    t.value = f.evaluate(t.point, t.gradient);
    t.slope = std::isfinite(t.value) ? detail::dot(t.gradient, direction) : std::nan("");
    ++result.evaluations;
    return t;
  };
  auto armijo_fails = [&](const Trial& t) {
    return !std::isfinite(t.value) || t.value > fx + options.c1 * t.step * slope0;
  };
  auto curvature_holds = [&](const Trial& t) {
    return std::abs(t.slope) <= -options.c2 * slope0;
  };
  auto accept = [&](Trial& t) {
    result.ok = true;
    result.step = t.step;
    result.value = t.value;
    result.point = std::move(t.point);
    result.gradient = std::move(t.gradient);
    return result;
  };

  // lo always satisfies sufficient decrease and has the lowest value seen.
  auto zoom = [&](Trial lo, Trial hi) -> LineSearchResult {
    while (result.evaluations < options.max_trials) {
      const double left = std::min(lo.step, hi.step);
      const double right = std::max(lo.step, hi.step);
      const double width = right - left;
      double step = std::isfinite(hi.value) ? cubic_minimizer(lo, hi) : std::nan("");
      if (!std::isfinite(step) || step < left + 0.1 * width || step > right - 0.1 * width) {
        step = 0.5 * (lo.step + hi.step);
      }
      if (width <= 1e-16 * std::max(1.0, right)) break;
      Trial t = evaluate(step);
      if (armijo_fails(t) || t.value >= lo.value) {
        hi = std::move(t);
      } else {
        if (curvature_holds(t)) return accept(t);
        if (t.slope * (hi.step - lo.step) >= 0) hi = lo;
        lo = std::move(t);
      }
    }
    result.ok = false;
    result.step = 0;
    result.value = fx;
    return result;
  };

  Trial prev;
  prev.step = 0;
  prev.value = fx;
  prev.slope = slope0;
  prev.point.assign(x.begin(), x.end());
  prev.gradient.assign(gx.begin(), gx.end());

  double step = options.initial_step;
  for (std::size_t i = 0; result.evaluations < options.max_trials; ++i) {
    Trial t = evaluate(step);
    if (armijo_fails(t) || (i > 0 && t.value >= prev.value)) return zoom(std::move(prev), std::move(t));
    if (curvature_holds(t)) return accept(t);
    if (t.slope >= 0) return zoom(std::move(t), std::move(prev));
    prev = std::move(t);
    step *= 2;
  }
  result.ok = false;
  result.value = fx;
  return result;
}

}  // namespace lincls
