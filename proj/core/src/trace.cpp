#include <ostream>
#include <sstream>

#include "lincls/solvers.hpp"
#include "text_util.hpp"

namespace lincls {

void write_trace_csv(const SolverTrace& trace, std::ostream& out) {
  using detail::format_double;
  out << "iteration,objective,grad_norm,step,cumulative_seconds\n";
  for (const auto& e : trace.entries) {
    out << e.iteration << ',' << format_double(e.objective) << ',' << format_double(e.grad_norm)
        << ',' << format_double(e.step) << ',' << format_double(e.cumulative_seconds) << '\n';
  }
}

std::string trace_to_csv(const SolverTrace& trace) {
  std::ostringstream out;
  write_trace_csv(trace, out);
  return out.str();
}

}  // namespace lincls
