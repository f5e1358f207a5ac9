#include "lincls/model.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "lincls/discretizer.hpp"
#include "lincls/error.hpp"

namespace lincls {

std::vector<double> LinearModel::decision_values(std::span<const double> instance) const {
  const std::size_t classes = num_classes();
  std::vector<double> z(classes);
  if (kind == ObjectiveKind::hinge && !one_vs_all) {
    const double s = linear_score(layout, params, instance, 0);
    z[0] = s;
    z[1] = -s;
    return z;
  }
  for (std::size_t c = 0; c < classes; ++c) z[c] = linear_score(layout, params, instance, c);
  return z;
}

ClassIndex argmax(std::span<const double> values) {
  return static_cast<ClassIndex>(std::max_element(values.begin(), values.end()) - values.begin());
}

std::vector<double> predict_proba(const LinearModel& model, std::span<const double> instance) {
  auto z = model.decision_values(instance);
  if (model.kind != ObjectiveKind::hinge) {
    softmax_inplace(z);
    return z;
  }
  double sum = 0;
  for (double& v : z) {
    v = 1.0 / (1.0 + std::exp(-2.0 * v));
    sum += v;
  }
  if (sum > 0) {
    for (double& v : z) v /= sum;
  } else {
    std::fill(z.begin(), z.end(), 1.0 / static_cast<double>(z.size()));
  }
  return z;
}

ClassIndex predict_label(const LinearModel& model, std::span<const double> instance) {
  return argmax(model.decision_values(instance));
}

namespace {

nlohmann::json schema_to_json(const Schema& schema) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const auto& a : schema.attributes()) {
    nlohmann::json j{{"name", a.name},
                     {"type", a.is_qualitative() ? "qualitative" : "quantitative"}};
    if (a.is_qualitative()) j["values"] = a.values;
    attrs.push_back(std::move(j));
  }
  return {{"relation", schema.relation()},
          {"attributes", attrs},
          {"class", {{"name", schema.class_name()}, {"values", schema.class_labels()}}}};
}

Schema schema_from_json(const nlohmann::json& j) {
  std::vector<Attribute> attrs;
  for (const auto& a : j.at("attributes")) {
    const auto name = a.at("name").get<std::string>();
    if (a.at("type").get<std::string>() == "qualitative") {
      attrs.push_back(Attribute::qualitative(name, a.at("values").get<std::vector<std::string>>()));
    } else {
      attrs.push_back(Attribute::quantitative(name));
    }
  }
  return Schema(std::move(attrs), j.at("class").at("name").get<std::string>(),
                j.at("class").at("values").get<std::vector<std::string>>(),
                j.at("relation").get<std::string>());
}

}  // namespace

std::string model_to_json(const LinearModel& model, const DiscretizationModel* discretization) {
  nlohmann::json offsets = nlohmann::json::array();
  for (std::size_t a = 0; a < model.schema().size(); ++a) {
    offsets.push_back(model.layout.attribute_offset(a));
  }
  nlohmann::json j{
      {"objective", std::string(to_string(model.kind))},
      {"lambda", model.lambda},
      {"one_vs_all", model.one_vs_all},
      {"layout",
       {{"blocks", model.layout.blocks()},
        {"block_size", model.layout.block_size()},
        {"attribute_offsets", offsets},
        {"schema", schema_to_json(model.schema())}}},
      {"parameters", model.params},
  };
  if (discretization) j["discretization"] = nlohmann::json::parse(discretization->to_json());
  return j.dump(2);
}

LinearModel model_from_json(std::string_view json) {
  try {
    const auto j = nlohmann::json::parse(json);
    LinearModel m;
    m.kind = parse_objective_kind(j.at("objective").get<std::string>());
    m.lambda = j.at("lambda").get<double>();
    m.one_vs_all = j.at("one_vs_all").get<bool>();
    const auto& lj = j.at("layout");
    m.layout = ParameterLayout(schema_from_json(lj.at("schema")), lj.at("blocks").get<std::size_t>());
    if (m.layout.block_size() != lj.at("block_size").get<std::size_t>()) {
      throw DataError("model JSON block size disagrees with its schema");
    }
    m.params = j.at("parameters").get<std::vector<double>>();
    if (m.params.size() != m.layout.size()) {
      throw DataError("model JSON has " + std::to_string(m.params.size()) + " parameters, layout needs " +
                      std::to_string(m.layout.size()));
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model JSON: ") + e.what());
  }
}

}  // namespace lincls
