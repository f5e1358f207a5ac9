#include "lincls/cross_validation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <thread>

#include "lincls/error.hpp"

namespace lincls {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::size_t> complement(std::size_t n, const std::vector<std::size_t>& sorted_rows) {
  std::vector<std::size_t> out;
  out.reserve(n - sorted_rows.size());
  std::size_t j = 0;
  for (std::size_t r = 0; r < n; ++r) {
    if (j < sorted_rows.size() && sorted_rows[j] == r) {
      ++j;
    } else {
      out.push_back(r);
    }
  }
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

FoldResult run_fold(const ExperimentSpec& spec, const Dataset& data, std::size_t round,
                    std::size_t fold, const std::vector<std::size_t>& test_rows) {
  FoldResult out;
  out.round = round;
  out.fold = fold;
  out.test_rows = test_rows;
  const auto train_rows = complement(data.size(), test_rows);
  const Dataset train = data.subset(train_rows);
  const Dataset test = data.subset(test_rows);

  SolverConfig solver = spec.solver;
  solver.seed = derive_seed(spec.seed, round, fold + 1);

  auto start = std::chrono::steady_clock::now();
  const Pipeline pipeline = fit_pipeline(spec, train, solver);
  out.train_seconds = seconds_since(start);

  start = std::chrono::steady_clock::now();
  std::vector<double> proba;
  pipeline.predict(test, out.predictions, proba);
  out.test_seconds = seconds_since(start);

  out.zero_one = zero_one_loss(out.predictions, test.labels());
  out.rmse = rmse(proba, test.labels(), data.schema().num_classes());
  for (const auto& t : pipeline.classifier.traces) {
    if (!t.entries.empty()) out.final_objective += t.entries.back().objective;
    out.iterations += t.iterations;
    out.stop_reasons.emplace_back(to_string(t.stop_reason));
  }
  out.traces = pipeline.classifier.traces;
  return out;
}

// Runs task(i) for i in [0, count) on up to `threads` workers.
template <class Task>
void run_tasks(std::size_t count, std::size_t threads, Task task) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ (b * 0x632be59bd9b4e019ULL));
}

std::vector<std::vector<std::size_t>> stratified_folds(std::span<const ClassIndex> labels,
                                                       std::size_t num_classes,
                                                       std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("need at least two folds");
  if (labels.size() < folds) {
    throw DataError("cannot split " + std::to_string(labels.size()) + " instances into " +
                    std::to_string(folds) + " folds");
  }
  std::vector<std::vector<std::size_t>> by_class(num_classes);
  for (std::size_t r = 0; r < labels.size(); ++r) by_class.at(labels[r]).push_back(r);
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (by_class[c].size() == 1) {
      throw DataError("class " + std::to_string(c) +
                      " has a single instance; some training fold would lack it");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::size_t>> out(folds);
  std::size_t deal = 0;
  for (auto& rows : by_class) {
    std::shuffle(rows.begin(), rows.end(), rng);
    for (auto r : rows) out[deal++ % folds].push_back(r);
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

std::vector<FoldResult> cross_validate(const ExperimentSpec& spec, const Dataset& data) {
  spec.validate();
  const std::size_t classes = data.schema().num_classes();
  std::vector<std::vector<std::vector<std::size_t>>> assignments;
  for (std::size_t round = 0; round < spec.rounds; ++round) {
    assignments.push_back(
        stratified_folds(data.labels(), classes, spec.folds, derive_seed(spec.seed, round)));
  }
  std::vector<FoldResult> results(spec.rounds * spec.folds);
  run_tasks(results.size(), spec.threads, [&](std::size_t i) {
    const std::size_t round = i / spec.folds;
    const std::size_t fold = i % spec.folds;
    results[i] = run_fold(spec, data, round, fold, assignments[round][fold]);
  });
  return results;
}

Learner make_learner(const ExperimentSpec& spec) {
  return [spec](const Dataset& train, const Dataset& test) {
    const Pipeline pipeline = fit_pipeline(spec, train, spec.solver);
    std::vector<ClassIndex> labels;
    std::vector<double> proba;
    pipeline.predict(test, labels, proba);
    return labels;
  };
}

BVResult bias_variance(const Learner& learner, const Dataset& data, std::size_t trials,
                       std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("bias-variance estimation needs at least two trials");
  const std::size_t classes = data.schema().num_classes();
  std::vector<std::vector<std::size_t>> tallies(data.size(), std::vector<std::size_t>(classes, 0));
  for (std::size_t t = 0; t < trials; ++t) {
    const auto folds = stratified_folds(data.labels(), classes, 2, derive_seed(seed, t, 0xb1a5));
    for (const auto& test_rows : folds) {
      const auto train_rows = complement(data.size(), test_rows);
      const auto predictions = learner(data.subset(train_rows), data.subset(test_rows));
      if (predictions.size() != test_rows.size()) {
        throw std::logic_error("learner returned the wrong number of predictions");
      }
      for (std::size_t i = 0; i < test_rows.size(); ++i) {
        ++tallies[test_rows[i]].at(predictions[i]);
      }
    }
  }
  return bias_variance_from_tallies(std::move(tallies), data.labels());
}

BVResult bias_variance(const ExperimentSpec& spec, const Dataset& data, std::size_t trials) {
  spec.validate();
  return bias_variance(make_learner(spec), data, trials, spec.seed);
}

}  // namespace lincls
