#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <ostream>

#include "lincls/lincls.hpp"

namespace lincls::cli {

namespace {

struct Options {
  std::string dataset;
  std::string schema;
  std::size_t rounds = 2;
  std::size_t folds = 2;
  std::string classifier;
  std::string solver = "Tron";
  bool discretize = false;
  bool verbose = false;
  std::string method = "mdlp";
  std::size_t bins = 3;
  std::optional<double> lambda;
  std::uint64_t seed = 1;
  std::string out;
  std::string trace_dir;
  std::size_t bv_trials = 0;
  bool binarize = false;
  std::size_t threads = 1;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Dataset load_dataset(const Options& o) {
  const std::filesystem::path path(o.dataset);
  auto ext = path.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext == ".csv") {
    if (o.schema.empty()) throw UsageError("a CSV dataset needs --schema <header.arff>");
    return parse_csv(read_text_file(path), parse_arff_schema(read_text_file(o.schema)));
  }
  if (!o.schema.empty()) throw UsageError("--schema only applies to CSV datasets");
  return parse_arff(read_text_file(path));
}

ExperimentSpec build_spec(const Options& o) {
  ExperimentSpec spec;
  try {
    spec.classifier = parse_classifier_kind(o.classifier);
    spec.solver.kind = parse_solver_kind(o.solver);
    spec.method = parse_discretization_method(o.method);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.discretize = o.discretize;
  spec.bins = o.bins;
  spec.lambda = o.lambda;
  spec.rounds = o.rounds;
  spec.folds = o.folds;
  spec.seed = o.seed;
  spec.threads = o.threads;
  spec.solver.seed = o.seed;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

std::vector<std::string> write_traces(const std::vector<FoldResult>& folds,
                                      const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  for (const auto& f : folds) {
    for (std::size_t m = 0; m < f.traces.size(); ++m) {
      std::string name = "round" + std::to_string(f.round) + "_fold" + std::to_string(f.fold);
      if (f.traces.size() > 1) name += "_model" + std::to_string(m);
      const auto path = (std::filesystem::path(dir) / (name + ".csv")).string();
      std::ofstream file(path);
      if (!file) throw DataError("cannot write trace file " + path);
      write_trace_csv(f.traces[m], file);
      paths.push_back(path);
    }
  }
  return paths;
}

int execute(const Options& o, std::ostream& out, std::ostream& err) {
  auto spec = build_spec(o);
  auto data = load_dataset(o);
  if (o.binarize) data = binarize_majority(data);

  std::mutex err_mutex;
  if (o.verbose) {
    spec.solver.on_iteration = [&](const TraceEntry& e) {
      std::lock_guard lock(err_mutex);
      err << "iter " << e.iteration << " objective " << e.objective << " grad_norm "
          << e.grad_norm << (e.accepted ? "" : " rejected") << '\n';
    };
  }

  EvaluationReport report;
  report.spec = spec;
  report.spec.solver.on_iteration = nullptr;
  report.dataset = std::filesystem::path(o.dataset).filename().string();
  report.instances = data.size();
  report.folds = cross_validate(spec, data);
  if (o.bv_trials > 0) {
    report.bias_variance = bias_variance(spec, data, o.bv_trials);
    report.bias_variance_trials = o.bv_trials;
  }
  if (!o.trace_dir.empty()) report.trace_paths = write_traces(report.folds, o.trace_dir);

  const auto json = report_to_json(report);
  if (o.out.empty()) {
    out << json << '\n';
  } else {
    std::ofstream file(o.out);
    if (!file) throw DataError("cannot write report " + o.out);
    file << json << '\n';
    out << to_string(spec.classifier) << (spec.discretize ? "(d)" : "") << ' '
        << to_string(spec.solver.kind) << " folds=" << report.folds.size()
        << " zero_one=" << report.mean_zero_one() << " rmse=" << report.mean_rmse();
    if (report.bias_variance) {
      out << " bias=" << report.bias_variance->bias
          << " variance=" << report.bias_variance->variance;
    }
    out << '\n';
  }
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Linear classifiers with optional discretization, evaluated by repeated CV",
               "lincls"};
  app.add_option("-t", o.dataset, "Dataset (.arff, or .csv with --schema)")->required();
  app.add_option("-i", o.rounds, "Rounds of cross-validation")->capture_default_str();
  app.add_option("-x", o.folds, "Folds per round")->capture_default_str();
  app.add_option("-W", o.classifier, "Classifier {LR, SVC, SVC-OVA, ANN0}")->required();
  app.add_option("-O", o.solver, "Solver {GD, QN, CG, Tron, SGD}")->capture_default_str();
  app.add_flag("-D", o.discretize, "Discretize quantitative attributes");
  app.add_flag("-V", o.verbose, "Print per-iteration objective values to stderr");
  app.add_option("--disc-method", o.method, "ewd, efd or mdlp")->capture_default_str();
  app.add_option("--bins", o.bins, "Bins for ewd/efd")->capture_default_str();
  app.add_option("--lambda", o.lambda, "Regularization weight");
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--out", o.out, "Write the JSON report here instead of stdout");
  app.add_option("--trace", o.trace_dir, "Directory for per-fold trace CSVs");
  app.add_option("--bv-trials", o.bv_trials, "Also estimate bias/variance over this many trials");
  app.add_flag("--binarize", o.binarize, "Relabel as majority class vs the rest");
  app.add_option("--schema", o.schema, "ARFF header describing a CSV dataset");
  app.add_option("--threads", o.threads, "Folds trained concurrently")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "lincls: " << e.what() << '\n';
    return usage_error;
  }

  try {
    return execute(o, out, err);
  } catch (const UsageError& e) {
    err << "lincls: " << e.what() << '\n';
    return usage_error;
  } catch (const NumericError& e) {
    err << "lincls: numeric failure: " << e.what() << '\n';
    return numeric_error;
  } catch (const DataError& e) {
    err << "lincls: " << e.what() << '\n';
    return data_error;
  } catch (const std::exception& e) {
    err << "lincls: " << e.what() << '\n';
    return data_error;
  }
}

}  // namespace lincls::cli
