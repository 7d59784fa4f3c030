#include "credal/model_io.hpp"

#include <fstream>

namespace credal {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& context, const std::string& message) {
  throw validation_error(context + ": " + message);
}

int get_outcomes(const Json& doc, const std::string& context) {
  if (!doc.contains("outcomes") || !doc["outcomes"].is_number_integer())
    fail(context, "missing integer field 'outcomes'");
  int m = doc["outcomes"].get<int>();
  if (m < 2) fail(context, "'outcomes' must be at least 2");
  return m;
}

std::vector<double> get_number_array(const Json& v, std::size_t size,
                                     const std::string& context, const char* name) {
  if (!v.is_array() || v.size() != size)
    fail(context, std::string("field '") + name + "' must be an array of " +
                      std::to_string(size) + " numbers");
  std::vector<double> out;
  out.reserve(size);
  for (const auto& x : v) {
    if (!x.is_number()) fail(context, std::string("field '") + name + "' holds a non-number");
    out.push_back(x.get<double>());
  }
  return out;
}

std::string get_label(const Json& doc) {
  return doc.contains("label") && doc["label"].is_string() ? doc["label"].get<std::string>() : "";
}

Json open_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw validation_error(path + ": " + e.what());
  }
}

}  // namespace

int ModelDocument::outcomes() const {
  return std::visit([](const auto& m) { return m.outcomes(); }, model);
}

std::string kind_name(ModelDocument::Kind kind) {
  switch (kind) {
    case ModelDocument::Kind::point: return "point";
    case ModelDocument::Kind::interval: return "interval";
    case ModelDocument::Kind::ds: return "ds";
  }
  return "?";
}

std::vector<int> mask_to_outcomes(SubsetMask mask) {
  std::vector<int> out;
  for (SubsetMask bits = mask; bits != 0; bits &= bits - 1)
    out.push_back(std::countr_zero(bits) + 1);
  return out;
}

SubsetMask outcomes_to_mask(const std::vector<int>& outcomes, int outcome_count,
                            const std::string& context) {
  SubsetMask mask = 0;
  for (int o : outcomes) {
    if (o < 1 || o > outcome_count)
      fail(context, "subset element " + std::to_string(o) + " outside 1.." +
                        std::to_string(outcome_count));
    SubsetMask bit = singleton_mask(o - 1);
    if (mask & bit) fail(context, "subset repeats outcome " + std::to_string(o));
    mask |= bit;
  }
  if (mask == 0) fail(context, "empty subset");
  return mask;
}

ModelDocument parse_model(const Json& doc, const std::string& context, Tolerance tol) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    fail(context, "model document must be an object with a string 'kind'");
  std::string kind = doc["kind"].get<std::string>();
  int m = get_outcomes(doc, context);
  ModelDocument out;
  out.label = get_label(doc);

  if (kind == "point") {
    PointDistribution d{get_number_array(doc.value("probs", Json::array()), m, context, "probs")};
    require_valid(validate_point_distribution(d, tol), context);
    out.model = std::move(d);
  } else if (kind == "interval") {
    IntervalDistribution d;
    d.lower = get_number_array(doc.value("lower", Json::array()), m, context, "lower");
    d.upper = get_number_array(doc.value("upper", Json::array()), m, context, "upper");
    require_valid(validate_interval_distribution(d, tol), context);
    out.model = std::move(d);
  } else if (kind == "ds") {
    if (!doc.contains("masses") || !doc["masses"].is_array())
      fail(context, "ds document needs an array field 'masses'");
    MassFunction mf;
    mf.outcome_count = m;
    for (const auto& entry : doc["masses"]) {
      if (!entry.is_object() || !entry.contains("subset") || !entry.contains("mass") ||
          !entry["subset"].is_array() || !entry["mass"].is_number())
        fail(context, "each mass entry needs a 'subset' array and a numeric 'mass'");
      std::vector<int> subset;
      for (const auto& o : entry["subset"]) {
        if (!o.is_number_integer()) fail(context, "subset elements must be integers");
        subset.push_back(o.get<int>());
      }
      SubsetMask mask = outcomes_to_mask(subset, m, context);
      if (mf.masses.count(mask)) fail(context, "duplicate mass entry for a subset");
      mf.masses[mask] = entry["mass"].get<double>();
    }
    require_valid(validate_mass_function(mf, tol), context);
    out.model = std::move(mf);
  } else {
    fail(context, "unknown kind '" + kind + "' (expected point, interval, or ds)");
  }
  return out;
}

ModelDocument load_model_file(const std::string& path, Tolerance tol) {
  return parse_model(open_json(path), path, tol);
}

LikelihoodMatrix parse_likelihoods(const Json& doc, const std::string& context, Tolerance tol) {
  if (!doc.is_object() || doc.value("kind", "") != "likelihoods")
    fail(context, "expected an object with kind 'likelihoods'");
  int m = get_outcomes(doc, context);
  if (!doc.contains("rows") || !doc["rows"].is_array() || doc["rows"].empty())
    fail(context, "needs a nonempty 'rows' array");
  LikelihoodMatrix lik;
  for (const auto& row : doc["rows"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      fail(context, "each row needs " + std::to_string(m) + " entries");
    std::vector<Interval> parsed;
    for (const auto& cell : row) {
      if (cell.is_number()) {
        double v = cell.get<double>();
        parsed.push_back({v, v});
      } else if (cell.is_array() && cell.size() == 2 && cell[0].is_number() &&
                 cell[1].is_number()) {
        parsed.push_back({cell[0].get<double>(), cell[1].get<double>()});
      } else {
        fail(context, "each likelihood entry is a number or a [lower, upper] pair");
      }
    }
    lik.rows.push_back(std::move(parsed));
  }
  require_valid(validate_likelihood_matrix(lik, m, tol), context);
  return lik;
}

LikelihoodMatrix load_likelihoods_file(const std::string& path, Tolerance tol) {
  return parse_likelihoods(open_json(path), path, tol);
}

Json to_json(const PointDistribution& d, const std::string& label) {
  Json doc;
  doc["kind"] = "point";
  doc["outcomes"] = d.outcomes();
  doc["probs"] = d.probs;
  if (!label.empty()) doc["label"] = label;
  return doc;
}

Json to_json(const IntervalDistribution& d, const std::string& label) {
  Json doc;
  doc["kind"] = "interval";
  doc["outcomes"] = d.outcomes();
  doc["lower"] = d.lower;
  doc["upper"] = d.upper;
  if (!label.empty()) doc["label"] = label;
  return doc;
}

Json to_json(const MassFunction& m, const std::string& label) {
  Json doc;
  doc["kind"] = "ds";
  doc["outcomes"] = m.outcomes();
  Json masses = Json::array();
  for (const auto& [subset, mass] : m.masses) {
    Json entry;
    entry["subset"] = mask_to_outcomes(subset);
    entry["mass"] = mass;
    masses.push_back(std::move(entry));
  }
  doc["masses"] = std::move(masses);
  if (!label.empty()) doc["label"] = label;
  return doc;
}

Json to_json(const LikelihoodMatrix& lik, const std::string& label) {
  Json doc;
  doc["kind"] = "likelihoods";
  doc["outcomes"] = lik.outcomes();
  Json rows = Json::array();
  for (const auto& row : lik.rows) {
    Json cells = Json::array();
    for (const Interval& iv : row) cells.push_back(Json::array({iv.lo, iv.hi}));
    rows.push_back(std::move(cells));
  }
  doc["rows"] = std::move(rows);
  if (!label.empty()) doc["label"] = label;
  return doc;
}

Json to_json(const ModelDocument& doc) {
  return std::visit([&](const auto& m) { return to_json(m, doc.label); }, doc.model);
}

}  // namespace credal
