#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lincls/function.hpp"

namespace lincls {

enum class SolverKind { gd, cg, qn, tron, sgd };

/// Names accepted on the command line: GD, QN, CG, Tron, SGD.
std::string_view to_string(SolverKind kind);
/// Case-insensitive; throws std::invalid_argument listing the valid names.
SolverKind parse_solver_kind(std::string_view name);
inline constexpr std::string_view kSolverNames = "{GD, QN, CG, Tron, SGD}";

struct TraceEntry {
  std::size_t iteration = 0;
  double objective = 0;
  double grad_norm = 0;
  /// Line-search step length, trust-region radius, or SGD learning rate.
  double step = 0;
  bool accepted = true;
  double cumulative_seconds = 0;
};

enum class StopReason {
  converged,
  max_iterations,
  line_search_failed,
  no_progress,
  numeric_failure,
};

std::string_view to_string(StopReason reason);

struct SolverTrace {
  std::vector<TraceEntry> entries;
  StopReason stop_reason = StopReason::max_iterations;
  /// Outer iterations performed (epochs for SGD).
  std::size_t iterations = 0;
};

/// Columns: iteration,objective,grad_norm,step,cumulative_seconds
void write_trace_csv(const SolverTrace& trace, std::ostream& out);
std::string trace_to_csv(const SolverTrace& trace);

struct SolverConfig {
  SolverKind kind = SolverKind::tron;
  std::size_t max_iterations = 10000;
  std::size_t max_epochs = 100;
  /// Stop when ||grad|| <= tolerance * max(1, ||grad(beta0)||).
  double tolerance = 1e-4;
  double c1 = 1e-4;
  double c2 = 0.9;
  std::size_t lbfgs_memory = 10;
  double tron_eta0 = 1e-4;
  double tron_sigma1 = 0.25;
  double tron_sigma2 = 0.5;
  double tron_sigma3 = 4.0;
  double sgd_step0 = 0.1;
  double sgd_decay = 1e-3;
  std::size_t sgd_batch = 1;
  std::uint64_t seed = 1;
  /// Called once per trace entry.
  std::function<void(const TraceEntry&)> on_iteration;

  /// Throws std::invalid_argument when a constant is out of range.
  void validate() const;
};

struct SolverResult {
  std::vector<double> solution;
  double value = 0;
  SolverTrace trace;
};

struct LineSearchOptions {
  double c1 = 1e-4;
  double c2 = 0.9;
  double initial_step = 1.0;
  std::size_t max_trials = 50;
};

struct LineSearchResult {
  bool ok = false;
  double step = 0;
  double value = 0;
  std::vector<double> point;
  std::vector<double> gradient;
  std::size_t evaluations = 0;
};

/// Strong Wolfe line search along `direction` from x (value fx, gradient gx).
/// Throws std::invalid_argument if the direction is not a descent direction.
LineSearchResult line_search(const DifferentiableFunction& f, std::span<const double> x, double fx,
                             std::span<const double> gx, std::span<const double> direction,
                             const LineSearchOptions& options = {});

using HessianVecOp = std::function<void(std::span<const double>, std::span<double>)>;

struct SteihaugResult {
  std::vector<double> step;
  /// -g - H step
  std::vector<double> residual;
  bool hit_boundary = false;
  std::size_t iterations = 0;
  /// m(0) - m(step) for m(s) = g^T s + s^T H s / 2.
  double model_decrease = 0;
};

/// Truncated CG for H s = -g inside ||s|| <= radius.
SteihaugResult cg_steihaug(const HessianVecOp& hv, std::span<const double> g, double radius);

SolverResult gradient_descent(const DifferentiableFunction& f, std::span<const double> x0,
                              const SolverConfig& config);
/// Polak-Ribiere+ nonlinear conjugate gradient.
SolverResult nonlinear_cg(const DifferentiableFunction& f, std::span<const double> x0,
                          const SolverConfig& config);
SolverResult lbfgs(const DifferentiableFunction& f, std::span<const double> x0,
                   const SolverConfig& config);
/// Trust-region Newton; needs f.has_hessian_vec().
SolverResult tron(const DifferentiableFunction& f, std::span<const double> x0,
                  const SolverConfig& config);
/// Needs f.num_terms() > 0.
SolverResult sgd(const DifferentiableFunction& f, std::span<const double> x0,
                 const SolverConfig& config);

/// Dispatches on config.kind.
SolverResult minimize(const DifferentiableFunction& f, std::span<const double> x0,
                      const SolverConfig& config);

}  // namespace lincls
