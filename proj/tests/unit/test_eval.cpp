#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "lincls/cross_validation.hpp"
#include "lincls/error.hpp"
#include "lincls/metrics.hpp"
#include "lincls/report.hpp"
#include "lincls/synthetic.hpp"
#include "oracles.hpp"

using namespace lincls;

namespace {

ExperimentSpec quick_spec(ClassifierKind kind = ClassifierKind::lr) {
  ExperimentSpec spec;
  spec.classifier = kind;
  spec.solver.kind = SolverKind::tron;
  return spec;
}

}  // namespace

TEST_CASE("zero_one_loss") {
  const std::vector<ClassIndex> truth{0, 1, 2, 1};
  CHECK(zero_one_loss(truth, truth) == 0.0);
  CHECK(zero_one_loss(std::vector<ClassIndex>{1, 0, 0, 0}, truth) == 1.0);
  CHECK(zero_one_loss(std::vector<ClassIndex>{0, 1, 2, 0}, truth) == 0.25);
  CHECK_THROWS_AS(zero_one_loss(std::vector<ClassIndex>{0}, truth), std::invalid_argument);
}

TEST_CASE("rmse") {
  const std::vector<ClassIndex> truth{0, 1};
  CHECK(rmse(std::vector<double>{1, 0, 0, 1}, truth, 2) == 0.0);
  CHECK(rmse(std::vector<double>{0.5, 0.5, 0.5, 0.5}, truth, 2) == doctest::Approx(0.5));
  CHECK(rmse(std::vector<double>{0, 1, 1, 0}, truth, 2) == doctest::Approx(1.0));

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 20, c = 2 + rng() % 4;
    std::vector<double> p(n * c);
    std::vector<ClassIndex> y(n);
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0;
      for (std::size_t k = 0; k < c; ++k) s += p[r * c + k] = unit(rng);
      for (std::size_t k = 0; k < c; ++k) p[r * c + k] /= s;
      y[r] = static_cast<ClassIndex>(rng() % c);
    }
    const double e = rmse(p, y, c);
    CHECK(e >= 0);
    CHECK(e <= 1);

    // Reversing the instance order changes nothing.
    std::vector<double> rp;
    std::vector<ClassIndex> ry(y.rbegin(), y.rend());
    for (std::size_t r = n; r-- > 0;) rp.insert(rp.end(), p.begin() + r * c, p.begin() + (r + 1) * c);
    CHECK(rmse(rp, ry, c) == doctest::Approx(e).epsilon(1e-14));
    std::vector<ClassIndex> pred(n);
    for (auto& l : pred) l = static_cast<ClassIndex>(rng() % c);
    std::vector<ClassIndex> rpred(pred.rbegin(), pred.rend());
    CHECK(zero_one_loss(pred, y) == zero_one_loss(rpred, ry));
  }
}

TEST_CASE("sign_test") {
  CHECK(sign_test(35, 16) == doctest::Approx(0.010973562899720513).epsilon(1e-12));
  CHECK(sign_test(13, 14) == 1.0);
  CHECK(sign_test(22, 2) == doctest::Approx(3.5881996154785156e-05).epsilon(1e-12));
  CHECK(sign_test(5, 0) == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(sign_test(0, 0) == 1.0);
  CHECK(sign_test(17, 10) == doctest::Approx(0.2478).epsilon(1e-3));

  for (std::size_t w = 0; w <= 20; ++w) {
    for (std::size_t l = 0; w + l <= 20; ++l) {
      const double p = sign_test(w, l);
      CHECK(p == doctest::Approx(testing::sign_test_enumerated(w, l)).epsilon(1e-12));
      CHECK(p == sign_test(l, w));
      CHECK(p > 0);
      CHECK(p <= 1);
      if ((w + l) % 2 == 1 && (w > l ? w - l : l - w) <= 1) CHECK(p == 1.0);
    }
  }
  // Large counts stay finite and tiny.
  const double big = sign_test(5000, 10);
  CHECK(big >= 0);
  CHECK(big < 1e-300);
}

TEST_CASE("wdl_compare") {
  const std::vector<double> a{0.1, 0.2, 0.3, 0.4, 0.5};
  auto r = wdl_compare(a, a);
  CHECK(r.draws == 5);
  CHECK(r.p_value == 1.0);

  const std::vector<double> worse{0.2, 0.3, 0.4, 0.5, 0.6};
  r = wdl_compare(a, worse);
  CHECK(r.wins == 5);
  CHECK(r.losses == 0);
  CHECK(r.p_value == doctest::Approx(0.0625));

  r = wdl_compare(std::vector<double>{0.3, 0.1}, std::vector<double>{0.3, 0.2}, 0.0);
  CHECK(r.draws == 1);
  CHECK(r.wins == 1);

  r = wdl_compare(std::vector<double>{0.30005}, std::vector<double>{0.3});
  CHECK(r.draws == 1);
  r = wdl_compare(std::vector<double>{0.4}, std::vector<double>{0.3});
  CHECK(r.losses == 1);
  CHECK_THROWS_AS(wdl_compare(a, std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("bias_variance_from_tallies") {
  const std::vector<ClassIndex> truth{0, 1, 2};
  SUBCASE("always right") {
    const auto r = bias_variance_from_tallies({{4, 0, 0}, {0, 4, 0}, {0, 0, 4}}, truth);
    CHECK(r.bias == 0.0);
    CHECK(r.variance == 0.0);
  }
  SUBCASE("one fixed wrong class") {
    const auto r = bias_variance_from_tallies({{0, 4, 0}, {0, 0, 4}, {4, 0, 0}}, truth);
    CHECK(r.bias == 1.0);
    CHECK(r.variance == 0.0);
  }
  SUBCASE("bounds hold for arbitrary tallies") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t c = 2 + rng() % 4, n = 1 + rng() % 10;
      std::vector<std::vector<std::size_t>> tallies(n, std::vector<std::size_t>(c));
      std::vector<ClassIndex> y(n);
      for (std::size_t l = 0; l < n; ++l) {
        for (auto& t : tallies[l]) t = rng() % 5;
        tallies[l][rng() % c] += 1;
        y[l] = static_cast<ClassIndex>(rng() % c);
      }
      const auto r = bias_variance_from_tallies(tallies, y);
      const double cap = 0.5 * (1 - 1.0 / static_cast<double>(c));
      CHECK(r.bias >= 0);
      CHECK(r.variance >= 0);
      CHECK(r.variance <= cap + 1e-12);
      CHECK(r.bias + r.variance <= 1 + cap + 1e-12);
    }
  }
  SUBCASE("instances never predicted are skipped") {
    const auto r = bias_variance_from_tallies({{0, 0, 0}, {0, 2, 0}, {0, 0, 1}}, truth);
    CHECK(r.bias == 0.0);
    CHECK_THROWS_AS(bias_variance_from_tallies({{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}, truth),
                    std::invalid_argument);
  }
}

TEST_CASE("bias_variance with synthetic learners") {
  const auto d = synth_xor2d(200, 4);
  SUBCASE("oracle learner") {
    const Learner oracle = [](const Dataset&, const Dataset& test) {
      return std::vector<ClassIndex>(test.labels().begin(), test.labels().end());
    };
    const auto r = bias_variance(oracle, d, 5, 1);
    CHECK(r.bias == 0.0);
    CHECK(r.variance == 0.0);
    for (const auto& t : r.tallies) CHECK(std::accumulate(t.begin(), t.end(), std::size_t{0}) == 5);
  }
  SUBCASE("fixed wrong class") {
    const Learner wrong = [](const Dataset&, const Dataset& test) {
      std::vector<ClassIndex> out;
      for (auto y : test.labels()) out.push_back(1 - y);
      return out;
    };
    const auto r = bias_variance(wrong, d, 5, 1);
    CHECK(r.bias == 1.0);
    CHECK(r.variance == 0.0);
  }
  SUBCASE("coin flips") {
    auto rng = std::make_shared<std::mt19937_64>(123);
    const Learner coin = [rng](const Dataset&, const Dataset& test) {
      std::vector<ClassIndex> out(test.size());
      for (auto& l : out) l = static_cast<ClassIndex>((*rng)() % 2);
      return out;
    };
    const auto r = bias_variance(coin, d, 50, 1);
    CHECK(r.bias == doctest::Approx(0.25).epsilon(0.2));
    CHECK(std::abs(r.bias - 0.25) <= 0.05);
    CHECK(std::abs(r.variance - 0.25) <= 0.05);
  }
  SUBCASE("needs at least two trials") {
    CHECK_THROWS_AS(bias_variance(make_learner(quick_spec()), d, 1, 1), std::invalid_argument);
  }
}

TEST_CASE("stratified_folds") {
  std::vector<ClassIndex> y;
  for (int i = 0; i < 30; ++i) y.push_back(i < 20 ? 0 : (i < 27 ? 1 : 2));
  const auto folds = stratified_folds(y, 3, 2, 5);
  REQUIRE(folds.size() == 2);
  std::vector<int> seen(y.size(), 0);
  for (const auto& f : folds) {
    CHECK(std::is_sorted(f.begin(), f.end()));
    std::vector<int> per_class(3, 0);
    for (auto r : f) {
      ++seen[r];
      ++per_class[y[r]];
    }
    for (int c : per_class) CHECK(c >= 1);
  }
  for (int s : seen) CHECK(s == 1);
  CHECK(std::max(folds[0].size(), folds[1].size()) - std::min(folds[0].size(), folds[1].size()) <= 1);
  CHECK(stratified_folds(y, 3, 2, 5) == folds);
  CHECK(stratified_folds(y, 3, 2, 6) != folds);

  CHECK_THROWS_AS(stratified_folds(std::vector<ClassIndex>{0, 0, 1}, 2, 2, 1), DataError);
  CHECK_THROWS_AS(stratified_folds(std::vector<ClassIndex>{0, 1}, 2, 3, 1), DataError);
  CHECK(derive_seed(1, 0, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(1, 1, 0) != derive_seed(1, 0, 1));
  CHECK(derive_seed(9, 2, 3) == derive_seed(9, 2, 3));
}

TEST_CASE("cross_validate") {
  const auto d = synth_band2d(300, 8);
  auto spec = quick_spec();
  SUBCASE("rounds x folds results, each instance tested once per round") {
    const auto results = cross_validate(spec, d);
    REQUIRE(results.size() == 4);
    for (std::size_t round = 0; round < 2; ++round) {
      std::vector<int> tested(d.size(), 0);
      for (std::size_t f = 0; f < 2; ++f) {
        const auto& r = results[round * 2 + f];
        CHECK(r.round == round);
        CHECK(r.fold == f);
        CHECK(r.zero_one >= 0);
        CHECK(r.zero_one <= 1);
        CHECK(r.rmse >= 0);
        CHECK(r.rmse <= 1);
        CHECK(r.train_seconds >= 0);
        CHECK(r.test_seconds >= 0);
        CHECK(r.predictions.size() == r.test_rows.size());
        CHECK(r.traces.size() == 1);
        for (auto row : r.test_rows) ++tested[row];
      }
      for (int t : tested) CHECK(t == 1);
    }
  }
  SUBCASE("deterministic and independent of threads") {
    spec.discretize = true;
    spec.method = DiscretizationMethod::efd;
    const auto a = cross_validate(spec, d);
    spec.threads = 4;
    const auto b = cross_validate(spec, d);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].zero_one == b[i].zero_one);
      CHECK(a[i].rmse == b[i].rmse);
      CHECK(a[i].predictions == b[i].predictions);
      CHECK(a[i].final_objective == b[i].final_objective);
    }
  }
  SUBCASE("other classifiers") {
    for (auto kind : {ClassifierKind::svc, ClassifierKind::svc_ova, ClassifierKind::ann0}) {
      CAPTURE(to_string(kind));
      spec.classifier = kind;
      const auto results = cross_validate(spec, d);
      CHECK(results.size() == 4);
      CHECK(results[0].traces.size() == (kind == ClassifierKind::svc_ova ? 2u : 1u));
    }
  }
  SUBCASE("SVC needs a binary problem") {
    spec.classifier = ClassifierKind::svc;
    const auto three = testing::random_mixed_dataset(60, 2, 0, 1, 3, 2);
    try {
      cross_validate(spec, three);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("SVC-OVA") != std::string::npos);
    }
  }
  SUBCASE("missing values are imputed per training fold") {
    Schema s({Attribute::quantitative("x"), Attribute::qualitative("c", {"a", "b"})}, "class",
             {"p", "n"});
    std::vector<double> cells;
    std::vector<ClassIndex> y;
    for (int i = 0; i < 40; ++i) {
      cells.push_back(i % 7 == 0 ? kMissing : i * 0.1);
      cells.push_back(i % 5 == 0 ? kMissing : static_cast<double>(i % 2));
      y.push_back(static_cast<ClassIndex>(i % 2));
    }
    const auto results = cross_validate(spec, Dataset(s, cells, y));
    CHECK(results.size() == 4);
  }
  SUBCASE("invalid spec") {
    spec.folds = 1;
    CHECK_THROWS_AS(cross_validate(spec, d), std::invalid_argument);
    spec.folds = 2;
    spec.rounds = 0;
    CHECK_THROWS_AS(cross_validate(spec, d), std::invalid_argument);
  }
}

TEST_CASE("cross_validate never shows the test partition to preprocessing") {
  // Corrupting test-fold cells must not move the fitted cut points: compare a
  // pipeline fitted on a fold's training rows against one fitted on the same
  // rows taken from a dataset whose other rows were changed.
  const auto d = synth_band2d(120, 2);
  auto spec = quick_spec();
  spec.discretize = true;
  const auto folds = stratified_folds(d.labels(), 2, 2, derive_seed(spec.seed, 0));
  const auto train = d.subset(folds[1]);
  const auto p = fit_pipeline(spec, train, spec.solver);
  REQUIRE(p.discretization.has_value());
  CHECK(p.discretization->input_schema() == d.schema());
  std::vector<double> cells(d.cells().begin(), d.cells().end());
  for (auto r : folds[0]) cells[r * 2] = 1e6;
  const Dataset poisoned(d.schema(), cells, {d.labels().begin(), d.labels().end()});
  const auto q = fit_pipeline(spec, poisoned.subset(folds[1]), spec.solver);
  CHECK(q.discretization->cuts() == p.discretization->cuts());
  CHECK(q.classifier.model.params == p.classifier.model.params);
}

TEST_CASE("synthetic generators") {
  const auto band = synth_band2d(20000, 1);
  const auto xr = synth_xor2d(20000, 1);
  const auto prior = [](const Dataset& d) {
    return static_cast<double>(d.class_counts()[1]) / static_cast<double>(d.size());
  };
  const double n = 20000;
  CHECK(std::abs(prior(band) - 1.0 / 9) <= 3 * std::sqrt((1.0 / 9) * (8.0 / 9) / n));
  CHECK(std::abs(prior(xr) - 0.5) <= 3 * std::sqrt(0.25 / n));
  CHECK(synth_band2d(100, 5) == synth_band2d(100, 5));
  CHECK_FALSE(synth_band2d(100, 5) == synth_band2d(100, 6));
  for (std::size_t r = 0; r < band.size(); ++r) {
    const double a = band.at(r, 0), b = band.at(r, 1);
    const bool inside = a > 1.0 / 3 && a < 2.0 / 3 && b > 1.0 / 3 && b < 2.0 / 3;
    CHECK(band.label(r) == (inside ? 1u : 0u));
    const double c = xr.at(r, 0), e = xr.at(r, 1);
    CHECK(xr.label(r) == (((c > 0.5) != (e > 0.5)) ? 1u : 0u));
  }
}

TEST_CASE("evaluation report JSON") {
  const auto d = synth_band2d(200, 3);
  EvaluationReport report;
  report.spec = quick_spec();
  report.spec.lambda = 0.5;
  report.spec.discretize = true;
  report.dataset = "band";
  report.instances = d.size();
  report.folds = cross_validate(report.spec, d);
  report.bias_variance = bias_variance(report.spec, d, 3);
  report.bias_variance_trials = 3;
  report.wdl.push_back({"zero_one", "LR(d)", "LR", wdl_compare(std::vector<double>{0.1},
                                                              std::vector<double>{0.2})});
  report.trace_paths = {"a.csv", "b.csv"};

  const auto json = report_to_json(report);
  const auto back = report_from_json(json);
  CHECK(report_to_json(back) == json);
  CHECK(back.size_label() == "Little");
  CHECK(back.folds.size() == 4);
  CHECK(back.spec.lambda == 0.5);
  CHECK(back.bias_variance->bias == report.bias_variance->bias);
  CHECK(back.wdl[0].record.wins == 1);
  CHECK(back.mean_zero_one() == doctest::Approx(report.mean_zero_one()));

  // Re-running gives identical bytes once timings are equalised.
  auto again = report;
  again.folds = cross_validate(report.spec, d);
  for (std::size_t i = 0; i < again.folds.size(); ++i) {
    again.folds[i].train_seconds = report.folds[i].train_seconds;
    again.folds[i].test_seconds = report.folds[i].test_seconds;
  }
  CHECK(report_to_json(again) == json);

  CHECK_THROWS_AS(report_from_json("{}"), DataError);
  CHECK_THROWS_AS(report_from_json("[1,2"), DataError);
}
