// credal-fuse: fuse point/interval/Dempster-Shafer uncertainty models from
// JSON documents, check the containment property against randomized member
// sampling, and run the SAT-to-optimization bridge.
//
// Exit codes: 0 success, 1 validation/parse error, 2 conflict,
// 3 containment violation found, 4 search guard exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "credal/core.hpp"
#include "credal/ds_fusion.hpp"
#include "credal/interval_fusion.hpp"
#include "credal/model_io.hpp"
#include "credal/oracle.hpp"
#include "credal/point_fusion.hpp"
#include "credal/sat_bridge.hpp"
#include "credal/sum_of_products.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace credal;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitConflict = 2;
constexpr int kExitViolation = 3;
constexpr int kExitGuard = 4;

struct CommonArgs {
  std::string mode;
  std::string kind;
  std::string approach = "1";
  bool sequential = false;
  bool with_oracle = false;
  double tolerance = 1e-9;
  std::string prior_path;
  std::string likelihoods_path;
  std::vector<std::string> input_paths;
  std::uint64_t trials = 500;
  std::uint64_t seed = 0;
  std::string op;
};

SolverGuard guard_from_env() {
  SolverGuard guard;
  if (const char* env = std::getenv("FUSE_MAX_SEARCH")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || v == 0)
      throw validation_error("FUSE_MAX_SEARCH must be a positive integer, got '" +
                             std::string(env) + "'");
    guard.max_corners = v;
  }
  return guard;
}

std::vector<std::vector<double>> point_likelihoods(const LikelihoodMatrix& lik) {
  std::vector<std::vector<double>> rows;
  for (const auto& row : lik.rows) {
    std::vector<double> values;
    for (const Interval& iv : row) {
      if (iv.hi - iv.lo > 1e-12)
        throw validation_error(
            "point fusion needs point likelihoods; found a non-degenerate interval entry");
      values.push_back(iv.lo);
    }
    rows.push_back(std::move(values));
  }
  return rows;
}

template <typename T>
const T& expect_model(const ModelDocument& doc, const std::string& path, const char* wanted) {
  if (!std::holds_alternative<T>(doc.model))
    throw validation_error(path + ": expected a " + wanted + " model, found " +
                           kind_name(doc.kind()));
  return std::get<T>(doc.model);
}

void emit(const Json& model_doc, const Json& diagnostics) {
  std::cout << model_doc.dump(2) << "\n";
  std::cerr << diagnostics.dump(2) << "\n";
}

Json interval_diagnostics(const IntervalFusionResult& result) {
  Json d;
  Json widths = Json::array();
  for (int j = 0; j < result.posterior.outcomes(); ++j)
    widths.push_back(result.posterior.upper[j] - result.posterior.lower[j]);
  d["bound_widths"] = std::move(widths);
  d["tightening_changed"] = result.tightening_changed;
  return d;
}

Json ds_diagnostics(const DsFusionResult& result) {
  Json d;
  Json widths = Json::array();
  int m = result.posterior.outcomes();
  for (int j = 0; j < m; ++j)
    widths.push_back(plausibility_of(result.posterior, singleton_mask(j)) -
                     belief_of(result.posterior, singleton_mask(j)));
  d["bound_widths"] = std::move(widths);
  d["warnings"] = result.warnings;
  return d;
}

Json oracle_gap_interval(const OracleBounds& oracle, const IntervalDistribution& fused) {
  Json o;
  o["lower"] = oracle.lower;
  o["upper"] = oracle.upper;
  Json gap_lo = Json::array(), gap_hi = Json::array();
  for (int j = 0; j < fused.outcomes(); ++j) {
    gap_lo.push_back(oracle.lower[j] - fused.lower[j]);
    gap_hi.push_back(fused.upper[j] - oracle.upper[j]);
  }
  o["tightness_gap_lower"] = std::move(gap_lo);
  o["tightness_gap_upper"] = std::move(gap_hi);
  o["combos_examined"] = oracle.combos_examined;
  return o;
}

Json oracle_gap_ds(const OracleBounds& oracle, const MassFunction& fused) {
  Json o;
  int m = fused.outcomes();
  Json lower = Json::array(), upper = Json::array(), gap_lo = Json::array(),
       gap_hi = Json::array();
  for (int j = 0; j < m; ++j) {
    SubsetMask s = singleton_mask(j);
    lower.push_back(oracle.lower[s]);
    upper.push_back(oracle.upper[s]);
    gap_lo.push_back(oracle.lower[s] - belief_of(fused, s));
    gap_hi.push_back(plausibility_of(fused, s) - oracle.upper[s]);
  }
  o["lower"] = std::move(lower);
  o["upper"] = std::move(upper);
  o["tightness_gap_lower"] = std::move(gap_lo);
  o["tightness_gap_upper"] = std::move(gap_hi);
  o["combos_examined"] = oracle.combos_examined;
  return o;
}

struct FusionOutcome {
  Json model_doc;
  Json diagnostics;
};

FusionOutcome run_fuse(const CommonArgs& args) {
  Tolerance tol{args.tolerance};
  SolverGuard guard = guard_from_env();
  bool context = args.mode == "context";
  std::string op = args.kind + "_" + (context ? "context" : args.approach);

  Json diagnostics;
  diagnostics["op"] = op;
  diagnostics["sequential"] = args.sequential;
  diagnostics["tolerance"] = tol.eps;
  diagnostics["containment_guaranteed"] = args.approach != "dempster";

  auto oracle_note = [&](const char* why) { diagnostics["oracle_skipped"] = why; };

  if (args.kind == "point") {
    PointDistribution fused;
    if (context) {
      PointContextInput in;
      in.prior = expect_model<PointDistribution>(load_model_file(args.prior_path, tol),
                                                 args.prior_path, "point");
      in.likelihoods = point_likelihoods(load_likelihoods_file(args.likelihoods_path, tol));
      fused = args.sequential ? fuse_sequential_context_point(in, tol)
                              : fuse_context_specific_point(in, tol);
    } else {
      std::vector<PointDistribution> inputs;
      for (const auto& path : args.input_paths)
        inputs.push_back(
            expect_model<PointDistribution>(load_model_file(path, tol), path, "point"));
      fused = args.sequential ? fuse_sequential_general_point(inputs, tol)
                              : fuse_general_point(inputs, tol);
    }
    if (args.with_oracle) oracle_note("point fusion is exact; no oracle comparison");
    return {to_json(fused), std::move(diagnostics)};
  }

  if (args.kind == "interval") {
    IntervalFusionResult result;
    std::optional<OracleBounds> oracle;
    if (context) {
      auto prior = expect_model<IntervalDistribution>(load_model_file(args.prior_path, tol),
                                                      args.prior_path, "interval");
      auto lik = load_likelihoods_file(args.likelihoods_path, tol);
      result = args.sequential ? fuse_sequential_context_interval(prior, lik, tol)
                               : fuse_context_specific_interval(prior, lik, tol);
      if (args.with_oracle) {
        try {
          oracle = oracle_interval_context_bounds(prior, lik, {.tol = tol});
        } catch (const guard_error& e) {
          oracle_note(e.what());
        }
      }
    } else {
      std::vector<IntervalDistribution> inputs;
      for (const auto& path : args.input_paths)
        inputs.push_back(
            expect_model<IntervalDistribution>(load_model_file(path, tol), path, "interval"));
      if (args.approach == "1") {
        GeneralFusionOptions opts{args.sequential, guard, tol};
        result = fuse_general_interval_a1(inputs, opts);
      } else {
        result = args.sequential ? fuse_sequential_interval_a2(inputs, tol)
                                 : fuse_general_interval_a2(inputs, tol);
      }
      if (args.with_oracle) {
        try {
          oracle = oracle_interval_general_bounds(inputs, {.tol = tol});
        } catch (const guard_error& e) {
          oracle_note(e.what());
        }
      }
    }
    diagnostics.update(interval_diagnostics(result));
    if (oracle) diagnostics["oracle"] = oracle_gap_interval(*oracle, result.posterior);
    return {to_json(result.posterior), std::move(diagnostics)};
  }

  // kind == "ds"
  std::optional<OracleBounds> oracle;
  if (context) {
    auto prior =
        expect_model<MassFunction>(load_model_file(args.prior_path, tol), args.prior_path, "ds");
    auto lik = load_likelihoods_file(args.likelihoods_path, tol);
    DsFusionResult result = args.sequential
                                ? fuse_sequential_context_ds(prior, lik, tol, guard)
                                : fuse_context_specific_ds(prior, lik, tol, guard);
    if (args.with_oracle) {
      try {
        oracle = oracle_ds_context_bounds(prior, lik, {.tol = tol});
      } catch (const guard_error& e) {
        oracle_note(e.what());
      }
    }
    diagnostics.update(ds_diagnostics(result));
    if (oracle) diagnostics["oracle"] = oracle_gap_ds(*oracle, result.posterior);
    return {to_json(result.posterior), std::move(diagnostics)};
  }

  std::vector<MassFunction> inputs;
  for (const auto& path : args.input_paths)
    inputs.push_back(expect_model<MassFunction>(load_model_file(path, tol), path, "ds"));
  if (args.approach == "dempster") {
    MassFunction fused = dempster_combine(inputs, tol);
    Json widths = Json::array();
    for (int j = 0; j < fused.outcomes(); ++j)
      widths.push_back(plausibility_of(fused, singleton_mask(j)) -
                       belief_of(fused, singleton_mask(j)));
    diagnostics["bound_widths"] = std::move(widths);
    diagnostics["warnings"] = Json::array();
    if (args.with_oracle) {
      try {
        oracle = oracle_ds_general_bounds(inputs, {.tol = tol});
      } catch (const guard_error& e) {
        oracle_note(e.what());
      }
      if (oracle) diagnostics["oracle"] = oracle_gap_ds(*oracle, fused);
    }
    return {to_json(fused), std::move(diagnostics)};
  }

  DsFusionResult result;
  if (args.approach == "1") {
    DsGeneralOptions opts{args.sequential, guard, tol};
    result = fuse_general_ds_a1(inputs, opts);
  } else {
    result = args.sequential ? fuse_sequential_ds_a2(inputs, tol)
                             : fuse_general_ds_a2(inputs, tol);
  }
  if (args.with_oracle) {
    try {
      oracle = oracle_ds_general_bounds(inputs, {.tol = tol});
    } catch (const guard_error& e) {
      oracle_note(e.what());
    }
  }
  diagnostics.update(ds_diagnostics(result));
  if (oracle) diagnostics["oracle"] = oracle_gap_ds(*oracle, result.posterior);
  return {to_json(result.posterior), std::move(diagnostics)};
}

int run_check(const CommonArgs& args) {
  Tolerance tol{args.tolerance};
  SolverGuard guard = guard_from_env();

  ContainmentReport report;
  if (args.op == "point_context" || args.op == "point_general") {
    // point fusion maps unique members to a unique fused point: run the
    // degenerate loop once
    PointDistribution fused;
    if (args.op == "point_context") {
      PointContextInput in;
      in.prior = expect_model<PointDistribution>(load_model_file(args.prior_path, tol),
                                                 args.prior_path, "point");
      in.likelihoods = point_likelihoods(load_likelihoods_file(args.likelihoods_path, tol));
      fused = fuse_context_specific_point(in, tol);
    } else {
      std::vector<PointDistribution> inputs;
      for (const auto& path : args.input_paths)
        inputs.push_back(
            expect_model<PointDistribution>(load_model_file(path, tol), path, "point"));
      fused = fuse_general_point(inputs, tol);
    }
    report.trials = args.trials;
    report.seed = args.seed;
    report.violations = 0;
    (void)fused;
  } else if (args.op == "interval_context") {
    auto prior = expect_model<IntervalDistribution>(load_model_file(args.prior_path, tol),
                                                    args.prior_path, "interval");
    auto lik = load_likelihoods_file(args.likelihoods_path, tol);
    auto fused = fuse_context_specific_interval(prior, lik, tol);
    report = check_containment_interval_context(prior, lik, fused.posterior, args.trials,
                                                args.seed, tol);
  } else if (args.op == "interval_a1" || args.op == "interval_a2") {
    std::vector<IntervalDistribution> inputs;
    for (const auto& path : args.input_paths)
      inputs.push_back(
          expect_model<IntervalDistribution>(load_model_file(path, tol), path, "interval"));
    IntervalFusionResult fused;
    if (args.op == "interval_a1") {
      GeneralFusionOptions opts{false, guard, tol};
      fused = fuse_general_interval_a1(inputs, opts);
    } else {
      fused = fuse_general_interval_a2(inputs, tol);
    }
    report =
        check_containment_interval_general(inputs, fused.posterior, args.trials, args.seed, tol);
  } else if (args.op == "ds_context") {
    auto prior =
        expect_model<MassFunction>(load_model_file(args.prior_path, tol), args.prior_path, "ds");
    auto lik = load_likelihoods_file(args.likelihoods_path, tol);
    auto fused = fuse_context_specific_ds(prior, lik, tol, guard);
    report =
        check_containment_ds_context(prior, lik, fused.posterior, args.trials, args.seed, tol);
  } else if (args.op == "ds_a1" || args.op == "ds_a2" || args.op == "dempster") {
    std::vector<MassFunction> inputs;
    for (const auto& path : args.input_paths)
      inputs.push_back(expect_model<MassFunction>(load_model_file(path, tol), path, "ds"));
    MassFunction fused;
    if (args.op == "ds_a1") {
      DsGeneralOptions opts{false, guard, tol};
      fused = fuse_general_ds_a1(inputs, opts).posterior;
    } else if (args.op == "ds_a2") {
      fused = fuse_general_ds_a2(inputs, tol).posterior;
    } else {
      fused = dempster_combine(inputs, tol);
    }
    report = check_containment_ds_general(inputs, fused, args.trials, args.seed, tol);
  } else {
    throw validation_error(
        "unknown --op '" + args.op +
        "' (expected point_context, point_general, interval_context, interval_a1, interval_a2, "
        "ds_context, ds_a1, ds_a2, or dempster)");
  }

  Json out;
  out["op"] = args.op;
  out["trials"] = report.trials;
  out["violations"] = report.violations;
  out["seed"] = report.seed;
  out["counterexamples"] = report.counterexamples;
  std::cout << out.dump(2) << "\n";
  return report.passed() ? kExitOk : kExitViolation;
}

int run_sat(const std::string& clause_path, bool dump) {
  std::ifstream in(clause_path);
  if (!in) throw validation_error(clause_path + ": cannot open file");
  SatInstance s = parse_dimacs(in);

  SatBridgeGuard guard;
  if (std::getenv("FUSE_MAX_SEARCH")) {
    guard.solver = guard_from_env();
    guard.max_rows = 64;  // the corner guard takes over
  }
  SatDecision decision = decide_sat_detailed(s, guard);

  Json out;
  out["satisfiable"] = decision.satisfiable;
  out["objective"] = decision.objective;
  out["threshold"] = s.variables;
  if (decision.satisfiable) {
    Json assignment = Json::array();
    for (bool v : decision.assignment) assignment.push_back(v);
    out["assignment"] = std::move(assignment);
  }
  if (dump) {
    SumOfProductsInstance inst = reduce_sat_to_sop(s);
    Json reduction;
    reduction["rows"] = inst.rows();
    reduction["columns"] = inst.columns();
    reduction["lower"] = inst.lo;
    reduction["upper"] = inst.hi;
    reduction["row_sums"] = inst.row_sum;
    out["reduction"] = std::move(reduction);
  }
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuse uncertainty models represented as credal sets"};
  app.require_subcommand(1);

  CommonArgs args;

  CLI::App* fuse = app.add_subcommand("fuse", "fuse models and print the posterior document");
  fuse->add_option("--mode", args.mode, "context or general")
      ->required()
      ->check(CLI::IsMember({"context", "general"}));
  fuse->add_option("--kind", args.kind, "point, interval, or ds")
      ->required()
      ->check(CLI::IsMember({"point", "interval", "ds"}));
  CLI::Option* approach_opt =
      fuse->add_option("--approach", args.approach, "general-fusion approach: 1, 2, or dempster")
          ->check(CLI::IsMember({"1", "2", "dempster"}));
  fuse->add_flag("--sequential", args.sequential, "fold inputs pairwise / one row at a time");
  fuse->add_flag("--oracle", args.with_oracle,
                 "compare against brute-force bounds when guards allow");
  fuse->add_option("--tolerance", args.tolerance, "numeric tolerance (default 1e-9)");
  fuse->add_option("--prior", args.prior_path, "prior model file (context mode)");
  fuse->add_option("--likelihoods", args.likelihoods_path, "likelihood file (context mode)");
  fuse->add_option("--inputs", args.input_paths, "input model files (general mode)");

  CLI::App* check = app.add_subcommand("check", "randomized containment-property check");
  check->add_option("--op", args.op, "fusion operation id")->required();
  check->add_option("--prior", args.prior_path, "prior model file (context ops)");
  check->add_option("--likelihoods", args.likelihoods_path, "likelihood file (context ops)");
  check->add_option("--inputs", args.input_paths, "input model files (general ops)");
  check->add_option("--trials", args.trials, "number of sampled member combinations");
  check->add_option("--seed", args.seed, "RNG seed");
  check->add_option("--tolerance", args.tolerance, "numeric tolerance (default 1e-9)");

  std::string clause_path;
  bool dump = false;
  CLI::App* sat = app.add_subcommand("sat", "decide satisfiability via the reduction");
  sat->add_option("--clauses", clause_path, "DIMACS-like clause file")->required();
  sat->add_flag("--dump", dump, "include the reduced instance in the output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (fuse->parsed()) {
      bool context = args.mode == "context";
      if (context && (args.prior_path.empty() || args.likelihoods_path.empty()))
        throw validation_error("context mode needs --prior and --likelihoods");
      if (!context && args.input_paths.size() < 2)
        throw validation_error("general mode needs at least two --inputs files");
      if (context && approach_opt->count() > 0)
        throw validation_error("--approach applies to general fusion only");
      if (args.kind == "point" && approach_opt->count() > 0)
        throw validation_error("--approach does not apply to point fusion");
      if (args.approach == "dempster" && args.kind != "ds")
        throw validation_error("approach 'dempster' applies to ds general fusion only");
      FusionOutcome outcome = run_fuse(args);
      emit(outcome.model_doc, outcome.diagnostics);
      return kExitOk;
    }
    if (check->parsed()) return run_check(args);
    if (sat->parsed()) return run_sat(clause_path, dump);
  } catch (const guard_error& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return kExitGuard;
  } catch (const conflict_error& e) {
    std::cerr << "conflict: " << e.what() << "\n";
    return kExitConflict;
  } catch (const validation_error& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
