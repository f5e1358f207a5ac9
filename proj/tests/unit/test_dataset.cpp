#include <doctest.h>

#include <random>

#include "lincls/error.hpp"
#include "lincls/io.hpp"
#include "lincls/preprocess.hpp"
#include "oracles.hpp"

using namespace lincls;

namespace {

const char* kWeather = R"(% toy weather data
@relation weather

@attribute temperature numeric
@attribute humidity real
@attribute play {yes,no}

@data
85,85,no
80,?,yes
'83',86,yes
)";

Schema abc_schema() {
  return Schema({Attribute::quantitative("a"), Attribute::qualitative("b", {"x", "y"})}, "class",
                {"p", "q"});
}

Dataset column_dataset(std::vector<double> values) {
  std::vector<ClassIndex> labels(values.size(), 0);
  labels[0] = 1;
  return Dataset(Schema({Attribute::quantitative("v")}, "class", {"a", "b"}), std::move(values),
                 std::move(labels));
}

}  // namespace

TEST_CASE("parse_arff reads numeric attributes and a nominal class") {
  const auto d = parse_arff(kWeather);
  CHECK(d.size() == 3);
  CHECK(d.schema().num_quantitative() == 2);
  CHECK(d.schema().num_qualitative() == 0);
  CHECK(d.schema().num_classes() == 2);
  CHECK(d.schema().relation() == "weather");
  CHECK(d.at(0, 0) == 85);
  CHECK(d.label(0) == 1);
  CHECK(d.at(2, 0) == 83);
}

TEST_CASE("parse_arff marks '?' cells as missing") {
  const auto d = parse_arff(kWeather);
  CHECK(is_missing(d.at(1, 1)));
  CHECK_FALSE(is_missing(d.at(1, 0)));
}

TEST_CASE("parse_arff stores nominal attributes as category indices") {
  const auto d = parse_arff(
      "@RELATION r\n@ATTRIBUTE 'outlook type' {sunny, 'over cast', rainy}\n"
      "@attribute class {a,b}\n@DATA\nrainy,a\n'over cast',b\n");
  CHECK(d.schema().attribute(0).name == "outlook type");
  CHECK(d.schema().attribute(0).cardinality() == 3);
  CHECK(d.at(0, 0) == 2);
  CHECK(d.at(1, 0) == 1);
}

TEST_CASE("parse_arff errors carry the line number") {
  SUBCASE("undeclared nominal value") {
    try {
      parse_arff("@relation r\n@attribute c {a,b}\n@attribute class {y,n}\n@data\na,y\nz,n\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 6);
    }
  }
  SUBCASE("row arity mismatch") {
    try {
      parse_arff("@relation r\n@attribute a numeric\n@attribute class {y,n}\n@data\n1,y,3\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 5);
    }
  }
  SUBCASE("unsupported types and sparse rows") {
    CHECK_THROWS_AS(parse_arff("@relation r\n@attribute s string\n@attribute class {y,n}\n@data\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_arff("@relation r\n@attribute a numeric\n@attribute class {y,n}\n@data\n{0 1}\n"),
                    ParseError);
  }
  SUBCASE("numeric class attribute") {
    CHECK_THROWS_AS(parse_arff("@relation r\n@attribute a numeric\n@attribute t numeric\n@data\n1,2\n"),
                    ParseError);
  }
  SUBCASE("malformed header") {
    CHECK_THROWS_AS(parse_arff("@attribute a numeric\n@relation r\n"), ParseError);
    CHECK_THROWS_AS(parse_arff("@relation r\n@attribute a numeric\n@attribute class {y,n}\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_arff("@relation r\n@attribute a {x,x}\n@attribute class {y,n}\n@data\nx,y\n"),
                    ParseError);
  }
  SUBCASE("unparsable number") {
    CHECK_THROWS_AS(parse_arff("@relation r\n@attribute a numeric\n@attribute class {y,n}\n@data\n1.2.3,y\n"),
                    ParseError);
  }
}

TEST_CASE("write_arff output reparses to an equal dataset") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1e3, 1e3);
  for (int trial = 0; trial < 20; ++trial) {
    auto d = testing::random_mixed_dataset(15, 2, 2, 3, 3, 100 + trial);
    std::vector<double> cells(d.cells().begin(), d.cells().end());
    // Awkward doubles and some missing cells.
    for (std::size_t i = 0; i < cells.size(); i += 7) cells[i] = kMissing;
    for (std::size_t r = 0; r < d.size(); ++r) {
      if (!is_missing(cells[r * 4])) cells[r * 4] = unit(rng) / 3.0;
    }
    Dataset messy(d.schema(), cells, {d.labels().begin(), d.labels().end()});
    CHECK(parse_arff(write_arff(messy)) == messy);
  }
}

TEST_CASE("parse_csv follows the schema") {
  const auto schema = abc_schema();
  SUBCASE("two rows") {
    const auto d = parse_csv("a,b,class\n1.5,x,p\n2,y,q\n", schema);
    CHECK(d.size() == 2);
    CHECK(d.at(1, 0) == 2.0);
    CHECK(d.at(1, 1) == 1.0);
    CHECK(d.label(1) == 1);
  }
  SUBCASE("empty quantitative cell is missing") {
    const auto d = parse_csv("a,b,class\n,x,p\n", schema);
    CHECK(is_missing(d.at(0, 0)));
  }
  SUBCASE("arity mismatch") {
    CHECK_THROWS_AS(parse_csv("a,b,class\n1,x,p,extra\n", schema), ParseError);
  }
  SUBCASE("bad header and bad number") {
    CHECK_THROWS_AS(parse_csv("a,c,class\n1,x,p\n", schema), ParseError);
    CHECK_THROWS_AS(parse_csv("a,b,class\nabc,x,p\n", schema), ParseError);
  }
}

TEST_CASE("Dataset validates its invariants") {
  const auto schema = abc_schema();
  CHECK_THROWS_AS(Dataset(schema, {1.0, 0.0, 2.0}, {0}), DataError);      // arity
  CHECK_THROWS_AS(Dataset(schema, {1.0, 2.0}, {0}), DataError);           // category index
  CHECK_THROWS_AS(Dataset(schema, {1.0, 0.0}, {2}), DataError);           // label
  CHECK_THROWS_AS(Dataset(schema, {}, {}), DataError);                    // empty
  CHECK_THROWS(Schema({}, "class", {"only"}));
  CHECK_THROWS(Attribute::qualitative("e", {}));
}

TEST_CASE("impute_missing") {
  SUBCASE("quantitative mean") {
    const auto d = impute_missing(column_dataset({1, 2, kMissing, 3}));
    CHECK(d.at(2, 0) == doctest::Approx(2.0));
    CHECK_FALSE(d.has_missing());
  }
  SUBCASE("qualitative distinct category") {
    Schema s({Attribute::qualitative("c", {"a", "b"})}, "class", {"p", "q"});
    const auto d = impute_missing(Dataset(s, {0, kMissing, 1}, {0, 1, 0}));
    const auto& attr = d.schema().attribute(0);
    CHECK(attr.cardinality() == 3);
    CHECK(attr.values.back() == kMissingCategory);
    CHECK(d.at(1, 0) == 2);
    CHECK_FALSE(d.has_missing());
  }
  SUBCASE("no missing cells leaves the dataset unchanged") {
    const auto d = testing::random_mixed_dataset(10, 2, 1, 3, 2, 3);
    CHECK(impute_missing(d) == d);
  }
  SUBCASE("entirely missing quantitative attribute") {
    CHECK_THROWS_AS(impute_missing(column_dataset({kMissing, kMissing})), DataError);
  }
  SUBCASE("fitted statistics come from the training data") {
    const auto train = column_dataset({0, 10});
    const auto test = column_dataset({kMissing, 4});
    const auto model = ImputationModel::fit(train);
    CHECK(model.apply(test).at(0, 0) == 5.0);
  }
  SUBCASE("reserved category covers missing test cells") {
    Schema s({Attribute::qualitative("c", {"a", "b"})}, "class", {"p", "q"});
    Dataset train(s, {0, 1}, {0, 1});
    Dataset test(s, {kMissing}, {0});
    CHECK_THROWS_AS(ImputationModel::fit(train).apply(test), DataError);
    const auto model = ImputationModel::fit(train, MissingCategory::always);
    CHECK(model.apply(test).at(0, 0) == 2);
    CHECK(model.apply(train).schema() == model.apply(test).schema());
  }
}

TEST_CASE("normalization") {
  SUBCASE("endpoints map to 0 and 1") {
    auto [tr, te, model] = fit_apply_normalization(column_dataset({0, 5, 10}), column_dataset({5, 5}));
    CHECK(tr.at(0, 0) == 0.0);
    CHECK(tr.at(1, 0) == 0.5);
    CHECK(tr.at(2, 0) == 1.0);
    CHECK(model.ranges()[0].min == 0);
    CHECK(model.ranges()[0].max == 10);
  }
  SUBCASE("test values are clamped") {
    auto [tr, te, model] = fit_apply_normalization(column_dataset({0, 10}), column_dataset({12, -3}));
    CHECK(te.at(0, 0) == 1.0);
    CHECK(te.at(1, 0) == 0.0);
  }
  SUBCASE("constant column maps to zero") {
    auto [tr, te, model] = fit_apply_normalization(column_dataset({7, 7}), column_dataset({9, 7}));
    CHECK(tr.at(0, 0) == 0.0);
    CHECK(tr.at(1, 0) == 0.0);
    CHECK(te.at(0, 0) == 0.0);
  }
  SUBCASE("every cell lands in [0,1]") {
    const auto train = testing::random_mixed_dataset(50, 3, 1, 2, 2, 11);
    const auto test = testing::random_mixed_dataset(50, 3, 1, 2, 2, 12);
    auto [tr, te, model] = fit_apply_normalization(train, test);
    for (const auto* d : {&tr, &te}) {
      for (std::size_t r = 0; r < d->size(); ++r) {
        for (std::size_t a = 0; a < 3; ++a) {
          CHECK(d->at(r, a) >= 0.0);
          CHECK(d->at(r, a) <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("binarize_majority") {
  Schema s({Attribute::quantitative("v")}, "class", {"A", "B", "C"});
  SUBCASE("majority against the rest") {
    std::vector<ClassIndex> labels = {0, 0, 0, 0, 0, 1, 1, 1, 2, 2};
    const auto d = binarize_majority(Dataset(s, std::vector<double>(10, 1.0), labels));
    const auto counts = d.class_counts();
    CHECK(d.schema().num_classes() == 2);
    CHECK(d.schema().class_labels()[0] == "A");
    CHECK(counts[0] == 5);
    CHECK(counts[1] == 5);
    CHECK(d.size() == 10);
  }
  SUBCASE("ties go to the lowest class index") {
    std::vector<ClassIndex> labels = {2, 1, 2, 1, 0};
    const auto d = binarize_majority(Dataset(s, std::vector<double>(5, 1.0), labels));
    CHECK(d.schema().class_labels()[0] == "B");
    CHECK(d.label(1) == 0);
    CHECK(d.label(0) == 1);
  }
  SUBCASE("binary input is relabelled bijectively") {
    Schema b({Attribute::quantitative("v")}, "class", {"n", "y"});
    const auto d = binarize_majority(Dataset(b, {1, 2, 3}, {1, 1, 0}));
    CHECK(d.label(0) == 0);
    CHECK(d.label(1) == 0);
    CHECK(d.label(2) == 1);
    CHECK(d.schema().class_labels()[0] == "y");
  }
}

TEST_CASE("one_hot_encode") {
  SUBCASE("categories become indicator columns") {
    Schema s({Attribute::qualitative("c", {"a", "b", "c"}), Attribute::quantitative("v")}, "class",
             {"p", "q"});
    const auto d = one_hot_encode(Dataset(s, {0, 2.5, 2, 1.5}, {0, 1}));
    CHECK(d.schema().size() == 4);
    CHECK(d.schema().num_qualitative() == 0);
    CHECK(d.at(0, 0) == 1);
    CHECK(d.at(0, 1) == 0);
    CHECK(d.at(0, 2) == 0);
    CHECK(d.at(0, 3) == 2.5);
    CHECK(d.at(1, 2) == 1);
  }
  SUBCASE("all-quantitative data is unchanged") {
    const auto d = testing::random_mixed_dataset(10, 3, 0, 1, 2, 5);
    CHECK(one_hot_encode(d) == d);
  }
  SUBCASE("each group has exactly one 1 per row; N and labels preserved") {
    const auto d = testing::random_mixed_dataset(40, 1, 2, 2, 3, 9);
    const auto e = one_hot_encode(d);
    CHECK(e.size() == d.size());
    CHECK(std::equal(e.labels().begin(), e.labels().end(), d.labels().begin()));
    for (std::size_t r = 0; r < e.size(); ++r) {
      CHECK(e.at(r, 1) + e.at(r, 2) == 1.0);
      CHECK(e.at(r, 3) + e.at(r, 4) == 1.0);
    }
  }
}
