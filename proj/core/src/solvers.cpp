#include "lincls/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

#include "text_util.hpp"
#include "vec.hpp"

namespace lincls {

using detail::axpy;
using detail::dot;
using detail::norm;

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::gd: return "GD";
    case SolverKind::cg: return "CG";
    case SolverKind::qn: return "QN";
    case SolverKind::tron: return "Tron";
    case SolverKind::sgd: return "SGD";
  }
  return "?";
}

SolverKind parse_solver_kind(std::string_view name) {
  const auto n = detail::lower(name);
  if (n == "gd") return SolverKind::gd;
  if (n == "cg") return SolverKind::cg;
  if (n == "qn") return SolverKind::qn;
  if (n == "tron") return SolverKind::tron;
  if (n == "sgd") return SolverKind::sgd;
  throw std::invalid_argument("unknown solver '" + std::string(name) + "'; valid solvers are " +
                              std::string(kSolverNames));
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::converged: return "converged";
    case StopReason::max_iterations: return "max_iterations";
    case StopReason::line_search_failed: return "line_search_failed";
    case StopReason::no_progress: return "no_progress";
    case StopReason::numeric_failure: return "numeric_failure";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(0 < c1 && c1 < c2 && c2 < 1)) throw std::invalid_argument("need 0 < c1 < c2 < 1");
  if (!(0 < tron_sigma1 && tron_sigma1 < tron_sigma2 && tron_sigma2 < 1 && 1 < tron_sigma3)) {
    throw std::invalid_argument("need 0 < sigma1 < sigma2 < 1 < sigma3");
  }
  if (!(tolerance > 0)) throw std::invalid_argument("tolerance must be positive");
  if (!(tron_eta0 >= 0 && tron_eta0 < 0.25)) throw std::invalid_argument("need 0 <= eta0 < 0.25");
  if (lbfgs_memory == 0) throw std::invalid_argument("L-BFGS memory must be positive");
  if (!(sgd_step0 > 0) || !(sgd_decay >= 0)) throw std::invalid_argument("bad SGD step schedule");
  if (sgd_batch == 0) throw std::invalid_argument("SGD batch size must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

// Bookkeeping shared by all solvers: trace entries, timing, stop rule.
class Run {
 public:
  Run(const SolverConfig& config, std::span<const double> x0)
      : config_(config), start_(Clock::now()), x_(x0.begin(), x0.end()) {
    config_.validate();
  }

  void record(std::size_t iteration, double value, double grad_norm, double step, bool accepted) {
    TraceEntry e{iteration, value, grad_norm, step, accepted,
                 std::chrono::duration<double>(Clock::now() - start_).count()};
    trace_.entries.push_back(e);
    if (config_.on_iteration) config_.on_iteration(e);
  }

  void set_tolerance(double initial_grad_norm) {
    threshold_ = config_.tolerance * std::max(1.0, initial_grad_norm);
  }
  bool converged(double grad_norm) const { return grad_norm <= threshold_; }

  SolverResult finish(StopReason reason, std::size_t iterations, double value) {
    trace_.stop_reason = reason;
    trace_.iterations = iterations;
    return SolverResult{std::move(x_), value, std::move(trace_)};
  }

  std::vector<double>& x() { return x_; }
  const SolverConfig& config() const { return config_; }

 private:
  const SolverConfig& config_;
  Clock::time_point start_;
  std::vector<double> x_;
  SolverTrace trace_;
  double threshold_ = 0;
};

enum class Direction { steepest, conjugate, quasi_newton };

// Line-search driven minimisation with steepest-descent, PR+ or L-BFGS
// directions.
SolverResult line_search_minimize(const DifferentiableFunction& f, std::span<const double> x0,
                                  const SolverConfig& config, Direction rule) {
  if (x0.size() != f.dimension()) throw std::invalid_argument("initial point has wrong size");
  Run run(config, x0);
  auto& x = run.x();
  const std::size_t n = x.size();
  std::vector<double> g(n);
  double fx = f.evaluate(x, g);
  double gnorm = norm(g);
  run.set_tolerance(gnorm);
  run.record(0, fx, gnorm, 0, true);
  if (!std::isfinite(fx) || !detail::all_finite(g)) {
    return run.finish(StopReason::numeric_failure, 0, fx);
  }

  LineSearchOptions ls_opts{config.c1, config.c2, 1.0, 50};
  std::vector<double> d(n), g_prev(n);
  double prev_step = 0, prev_slope = 0;

  // L-BFGS memory
  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  std::vector<double> alpha(config.lbfgs_memory);

  std::size_t since_restart = 0;
  for (std::size_t k = 1; k <= config.max_iterations; ++k) {
    if (run.converged(gnorm)) return run.finish(StopReason::converged, k - 1, fx);

    // Search direction
    switch (rule) {
      case Direction::steepest:
        for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
        break;
      case Direction::conjugate: {
        double beta = 0;
        if (k > 1 && since_restart < n) {
          double num = 0;
          for (std::size_t i = 0; i < n; ++i) num += g[i] * (g[i] - g_prev[i]);
          beta = std::max(0.0, num / dot(g_prev, g_prev));
        }
        if (beta == 0) since_restart = 0;
        for (std::size_t i = 0; i < n; ++i) d[i] = -g[i] + beta * d[i];
        if (!(dot(g, d) < 0)) {
          for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
          since_restart = 0;
        }
        ++since_restart;
        break;
      }
      case Direction::quasi_newton: {
        for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
        const std::size_t m = s_hist.size();
        for (std::size_t j = m; j-- > 0;) {
          alpha[j] = rho_hist[j] * dot(s_hist[j], d);
          axpy(-alpha[j], y_hist[j], d);
        }
        if (m > 0) {
          const double gamma = dot(s_hist.back(), y_hist.back()) / dot(y_hist.back(), y_hist.back());
          for (double& v : d) v *= gamma;
        }
        for (std::size_t j = 0; j < m; ++j) {
          const double b = rho_hist[j] * dot(y_hist[j], d);
          axpy(alpha[j] - b, s_hist[j], d);
        }
        if (!(dot(g, d) < 0)) {
          for (std::size_t i = 0; i < n; ++i) d[i] = -g[i];
          s_hist.clear();
          y_hist.clear();
          rho_hist.clear();
        }
        break;
      }
    }

    // Initial trial step
    const double slope = dot(g, d);
    if (rule == Direction::quasi_newton && !s_hist.empty()) {
      ls_opts.initial_step = 1.0;
    } else if (k == 1 || prev_step == 0) {
      ls_opts.initial_step = std::min(1.0, 1.0 / norm(d));
    } else {
      ls_opts.initial_step = prev_step * prev_slope / slope;
    }
    if (!(ls_opts.initial_step > 0) || !std::isfinite(ls_opts.initial_step)) ls_opts.initial_step = 1.0;

    auto ls = line_search(f, x, fx, g, d, ls_opts);
    if (!ls.ok) {
      run.record(k, fx, gnorm, 0, false);
      return run.finish(StopReason::line_search_failed, k, fx);
    }
    if (!std::isfinite(ls.value) || !detail::all_finite(ls.gradient)) {
      return run.finish(StopReason::numeric_failure, k, fx);
    }

    if (rule == Direction::quasi_newton) {
      std::vector<double> s(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = ls.point[i] - x[i];
        y[i] = ls.gradient[i] - g[i];
      }
      const double sy = dot(s, y);
      if (sy > 1e-10) {
        if (s_hist.size() == config.lbfgs_memory) {
          s_hist.pop_front();
          y_hist.pop_front();
          rho_hist.pop_front();
        }
        s_hist.push_back(std::move(s));
        y_hist.push_back(std::move(y));
        rho_hist.push_back(1.0 / sy);
      }
    }

    prev_step = ls.step;
    prev_slope = slope;
    g_prev = g;
    x = std::move(ls.point);
    g = std::move(ls.gradient);
    fx = ls.value;
    gnorm = norm(g);
    run.record(k, fx, gnorm, ls.step, true);
  }
  return run.finish(run.converged(gnorm) ? StopReason::converged : StopReason::max_iterations,
                    config.max_iterations, fx);
}

// Positive tau with ||s + tau d|| = radius.
double to_boundary(std::span<const double> s, std::span<const double> d, double radius) {
  const double sd = dot(s, d);
  const double dd = dot(d, d);
  const double ss = dot(s, s);
  const double rad = std::sqrt(std::max(0.0, sd * sd + dd * (radius * radius - ss)));
  return sd >= 0 ? (radius * radius - ss) / (sd + rad) : (rad - sd) / dd;
}

}  // namespace

SteihaugResult cg_steihaug(const HessianVecOp& hv, std::span<const double> g, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("trust radius must be positive");
  const std::size_t n = g.size();
  SteihaugResult out;
  out.step.assign(n, 0.0);
  out.residual.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.residual[i] = -g[i];
  auto& s = out.step;
  auto& r = out.residual;

  const double gnorm = norm(g);
  const double tol = 0.1 * std::min(1.0, std::sqrt(gnorm)) * gnorm;
  std::vector<double> d = r, hd(n);
  double rr = dot(r, r);

  auto finish = [&] {
    // m(0) - m(s) = -(g^T s + s^T H s / 2) = -(g^T s - s^T r) / 2 with r = -g - Hs
    out.model_decrease = -0.5 * (dot(g, s) - dot(s, r));
    return out;
  };

  if (std::sqrt(rr) <= tol) return finish();
  const std::size_t max_iter = std::max<std::size_t>(n, 1) * 2;
  while (out.iterations < max_iter) {
    ++out.iterations;
    hv(d, hd);
    const double dhd = dot(d, hd);
    if (!(dhd > 0)) {
      const double tau = to_boundary(s, d, radius);
      axpy(tau, d, s);
      axpy(-tau, hd, r);
      out.hit_boundary = true;
      return finish();
    }
    const double alpha = rr / dhd;
    std::vector<double> next = s;
    axpy(alpha, d, next);
    if (norm(next) >= radius) {
      const double tau = to_boundary(s, d, radius);
      axpy(tau, d, s);
      axpy(-tau, hd, r);
      out.hit_boundary = true;
      return finish();
    }
    s = std::move(next);
    axpy(-alpha, hd, r);
    const double rr_new = dot(r, r);
    if (std::sqrt(rr_new) <= tol) break;
    const double beta = rr_new / rr;
    for (std::size_t i = 0; i < n; ++i) d[i] = r[i] + beta * d[i];
    rr = rr_new;
  }
  return finish();
}

SolverResult gradient_descent(const DifferentiableFunction& f, std::span<const double> x0,
                              const SolverConfig& config) {
  return line_search_minimize(f, x0, config, Direction::steepest);
}

SolverResult nonlinear_cg(const DifferentiableFunction& f, std::span<const double> x0,
                          const SolverConfig& config) {
  return line_search_minimize(f, x0, config, Direction::conjugate);
}

SolverResult lbfgs(const DifferentiableFunction& f, std::span<const double> x0,
                   const SolverConfig& config) {
  return line_search_minimize(f, x0, config, Direction::quasi_newton);
}

SolverResult tron(const DifferentiableFunction& f, std::span<const double> x0,
                  const SolverConfig& config) {
  if (!f.has_hessian_vec()) throw std::invalid_argument("TRON needs Hessian-vector products");
  if (x0.size() != f.dimension()) throw std::invalid_argument("initial point has wrong size");
  Run run(config, x0);
  auto& x = run.x();
  const std::size_t n = x.size();
  std::vector<double> g(n), g_new(n), x_new(n);
  double fx = f.evaluate(x, g);
  double gnorm = norm(g);
  double radius = gnorm;
  run.set_tolerance(gnorm);
  run.record(0, fx, gnorm, radius, true);
  if (!std::isfinite(fx) || !detail::all_finite(g)) {
    return run.finish(StopReason::numeric_failure, 0, fx);
  }

  const HessianVecOp hv = [&](std::span<const double> v, std::span<double> out) {
    f.hessian_vec(x, v, out);
  };
  for (std::size_t k = 1; k <= config.max_iterations; ++k) {
    if (run.converged(gnorm)) return run.finish(StopReason::converged, k - 1, fx);

    auto cg = cg_steihaug(hv, g, radius);
    const double snorm = norm(cg.step);
    for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + cg.step[i];
    const double f_new = f.evaluate(x_new, g_new);
    if (!std::isfinite(f_new) || !detail::all_finite(g_new)) {
      run.record(k, fx, gnorm, radius, false);
      return run.finish(StopReason::numeric_failure, k, fx);
    }
    const double actual = fx - f_new;
    const double predicted = cg.model_decrease;
    const double rho = predicted > 0 ? actual / predicted : -1.0;
    const bool accepted = rho > config.tron_eta0;

    if (rho < 0.25) {
      radius = config.tron_sigma1 * std::min(snorm, radius);
    } else if (rho > 0.75 && cg.hit_boundary) {
      radius = config.tron_sigma3 * radius;
    }

    if (accepted) {
      x.swap(x_new);
      g.swap(g_new);
      fx = f_new;
      gnorm = norm(g);
    }
    run.record(k, fx, gnorm, radius, accepted);

    const double scale = 1e-12 * std::abs(fx);
    if (predicted <= 0 || (std::abs(actual) <= scale && std::abs(predicted) <= scale) ||
        !(radius > 0)) {
      return run.finish(run.converged(gnorm) ? StopReason::converged : StopReason::no_progress, k,
                        fx);
    }
  }
  return run.finish(run.converged(gnorm) ? StopReason::converged : StopReason::max_iterations,
                    config.max_iterations, fx);
}

SolverResult sgd(const DifferentiableFunction& f, std::span<const double> x0,
                 const SolverConfig& config) {
  const std::size_t terms = f.num_terms();
  if (terms == 0) throw std::invalid_argument("SGD needs an objective with per-instance terms");
  if (x0.size() != f.dimension()) throw std::invalid_argument("initial point has wrong size");
  Run run(config, x0);
  auto& x = run.x();
  const std::size_t n = x.size();
  std::vector<double> g(n), batch_grad(n);
  double fx = f.evaluate(x, g);
  double gnorm = norm(g);
  run.set_tolerance(gnorm);
  run.record(0, fx, gnorm, config.sgd_step0, true);

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(terms);
  std::iota(order.begin(), order.end(), 0);
  std::size_t t = 0;
  double eta = config.sgd_step0;
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    if (run.converged(gnorm)) return run.finish(StopReason::converged, epoch - 1, fx);
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t begin = 0; begin < terms; begin += config.sgd_batch) {
      const std::size_t end = std::min(terms, begin + config.sgd_batch);
      f.term_gradient(x, std::span<const std::size_t>(order).subspan(begin, end - begin),
                      batch_grad);
      eta = config.sgd_step0 / (1.0 + static_cast<double>(t) * config.sgd_decay);
      axpy(-eta, batch_grad, x);
      ++t;
    }
    fx = f.evaluate(x, g);
    gnorm = norm(g);
    run.record(epoch, fx, gnorm, eta, true);
    if (!std::isfinite(fx) || !detail::all_finite(x)) {
      return run.finish(StopReason::numeric_failure, epoch, fx);
    }
  }
  return run.finish(run.converged(gnorm) ? StopReason::converged : StopReason::max_iterations,
                    config.max_epochs, fx);
}

SolverResult minimize(const DifferentiableFunction& f, std::span<const double> x0,
                      const SolverConfig& config) {
  switch (config.kind) {
    case SolverKind::gd: return gradient_descent(f, x0, config);
    case SolverKind::cg: return nonlinear_cg(f, x0, config);
    case SolverKind::qn: return lbfgs(f, x0, config);
    case SolverKind::tron: return tron(f, x0, config);
    case SolverKind::sgd: return sgd(f, x0, config);
  }
  throw std::invalid_argument("unknown solver");
}

}  // namespace lincls
