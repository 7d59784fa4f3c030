#ifndef CREDAL_MODEL_IO_HPP
#define CREDAL_MODEL_IO_HPP

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "credal/core.hpp"

namespace credal {

// On-disk model document. Outcomes are 1-based in files; subsets are sorted
// outcome arrays such as [1,3].
struct ModelDocument {
  std::variant<PointDistribution, IntervalDistribution, MassFunction> model;
  std::string label;

  enum class Kind { point, interval, ds };
  Kind kind() const { return static_cast<Kind>(model.index()); }
  int outcomes() const;
};

std::string kind_name(ModelDocument::Kind kind);

// Parsers validate payloads and throw validation_error with file context.
ModelDocument parse_model(const nlohmann::ordered_json& doc, const std::string& context,
                          Tolerance tol = {});
ModelDocument load_model_file(const std::string& path, Tolerance tol = {});

LikelihoodMatrix parse_likelihoods(const nlohmann::ordered_json& doc, const std::string& context,
                                   Tolerance tol = {});
LikelihoodMatrix load_likelihoods_file(const std::string& path, Tolerance tol = {});

nlohmann::ordered_json to_json(const ModelDocument& doc);
nlohmann::ordered_json to_json(const PointDistribution& d, const std::string& label = "");
nlohmann::ordered_json to_json(const IntervalDistribution& d, const std::string& label = "");
nlohmann::ordered_json to_json(const MassFunction& m, const std::string& label = "");
nlohmann::ordered_json to_json(const LikelihoodMatrix& lik, const std::string& label = "");

std::vector<int> mask_to_outcomes(SubsetMask mask);
SubsetMask outcomes_to_mask(const std::vector<int>& outcomes, int outcome_count,
                            const std::string& context);

}  // namespace credal

#endif
