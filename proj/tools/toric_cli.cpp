// Command-line front end: construct the standard fan families, analyze and
// classify fan files, contract extremal rays, and run the verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 input error,
// 3 hard classification failure (a certified theorem was contradicted).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toric/classifier.hpp"
#include "toric/constructions.hpp"
#include "toric/divisor.hpp"
#include "toric/io.hpp"
#include "toric/mori.hpp"
#include "toric/verify.hpp"

namespace {

using toric::Json;

void emit(const Json& j, bool pretty) {
  if (pretty)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << j.dump() << "\n";
}

toric::Fan load_fan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw toric::Error("io_error", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return toric::fan_from_json_text(buf.str());
}

int run_construct(const std::string& kind, const std::vector<long long>& params,
                  bool pretty) {
  std::vector<toric::Int> args(params.begin(), params.end());
  toric::Fan fan = [&] {
    if (kind == "pn") {
      if (args.size() != 1) throw toric::Error("bad_params", "pn needs one argument: n");
      return toric::projective_space(static_cast<int>(params[0]));
    }
    if (kind == "wps") return toric::weighted_projective(args);
    if (kind == "bundle") return toric::bundle_over_p1(args);
    if (kind == "floptarget") {
      if (args.size() != 1) throw toric::Error("bad_params", "floptarget needs one argument: n");
      return toric::flop_target(static_cast<int>(params[0]));
    }
    throw toric::Error("bad_params", "unknown kind " + kind);
  }();
  emit(toric::fan_to_json(fan), pretty);
  return 0;
}

int run_analyze(const std::string& path, bool pretty) {
  toric::Fan fan = load_fan(path);
  Json j;
  j["tool_version"] = toric::kToolVersion;
  j["fan_digest"] = toric::fan_digest(fan);
  if (fan.name()) j["fan_name"] = *fan.name();
  j["dim"] = fan.dim();
  j["rays"] = fan.ray_count();
  j["max_cones"] = fan.max_cones().size();
  j["simplicial"] = fan.is_simplicial();
  j["smooth"] = fan.is_smooth();
  bool complete = fan.is_complete();
  j["complete"] = complete;
  if (complete) {
    j["walls"] = fan.walls().size();
    j["projective"] = toric::has_ample_divisor(fan);
    toric::ClassGroup cl(fan);
    Json clj;
    clj["free_rank"] = cl.free_rank();
    Json tors = Json::array();
    for (const toric::Int& d : cl.torsion_moduli())
      tors.push_back(d.convert_to<long long>());
    clj["torsion"] = std::move(tors);
    j["class_group"] = std::move(clj);
    j["picard_rank"] = toric::rho(fan);
    auto kcd = toric::cartier_data(fan, toric::canonical_divisor(fan));
    j["k_q_cartier"] = kcd.has_value();
    if (kcd) {
      j["k_cartier"] = kcd->cartier;
      j["k_cartier_index"] = kcd->cartier_index.convert_to<long long>();
      auto div = toric::divisibility_index(fan);
      j["N"] = div.status == toric::DivisibilityResult::Status::Ok
                   ? Json(div.n.convert_to<long long>())
                   : Json(nullptr);
      auto rays = toric::mori_cone(fan);
      Json mori = Json::array();
      for (const auto& r : rays) {
        Json rj;
        Json vals = Json::array();
        for (const toric::Int& v : r.values) vals.push_back(v.convert_to<long long>());
        rj["class"] = std::move(vals);
        rj["walls"] = r.walls;
        rj["length"] = toric::rat_to_json(toric::extremal_length(fan, r));
        mori.push_back(std::move(rj));
      }
      j["extremal_rays"] = std::move(mori);
    }
  }
  emit(j, pretty);
  return 0;
}

int run_classify(const std::string& path, bool pretty) {
  toric::Fan fan = load_fan(path);
  toric::ClassificationReport rep = toric::classify(fan);
  emit(toric::report_to_json(rep, fan), pretty);
  return 0;
}

int run_contract(const std::string& path, const std::string& ray_spec, bool pretty) {
  toric::Fan fan = load_fan(path);
  std::vector<toric::CurveClass> rays = toric::mori_cone(fan);
  const toric::CurveClass* chosen = nullptr;
  if (ray_spec.find(',') == std::string::npos) {
    int idx = -1;
    try {
      idx = std::stoi(ray_spec);
    } catch (...) {
      throw toric::Error("bad_params", "--ray must be an index or comma-separated class");
    }
    if (idx < 0 || idx >= static_cast<int>(rays.size())) {
      std::ostringstream os;
      os << "extremal ray index out of range; the Mori cone has " << rays.size()
         << " rays:";
      for (std::size_t i = 0; i < rays.size(); ++i) {
        os << " [" << i << "]=(";
        for (std::size_t k = 0; k < rays[i].values.size(); ++k)
          os << (k ? "," : "") << rays[i].values[k];
        os << ")";
      }
      throw toric::Error("ray_not_extremal", os.str());
    }
    chosen = &rays[idx];
  } else {
    std::vector<toric::Int> vals;
    std::stringstream ss(ray_spec);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(toric::Int(item));
    toric::Vec wanted(vals.begin(), vals.end());
    for (const auto& r : rays)
      if (r.values == toric::primitive(wanted)) chosen = &r;
    if (!chosen) {
      std::ostringstream os;
      os << "class is not an extremal ray; the Mori cone has " << rays.size() << " rays:";
      for (std::size_t i = 0; i < rays.size(); ++i) {
        os << " [" << i << "]=(";
        for (std::size_t k = 0; k < rays[i].values.size(); ++k)
          os << (k ? "," : "") << rays[i].values[k];
        os << ")";
      }
      throw toric::Error("ray_not_extremal", os.str());
    }
  }
  toric::ContractionResult con = toric::contract_ray(fan, *chosen);
  emit(toric::contraction_to_json(con), pretty);
  return 0;
}

int run_verify(const toric::VerifyOptions& options, bool pretty) {
  std::vector<toric::CheckResult> checks = toric::run_verification(options);
  bool all = true;
  for (const auto& ck : checks) {
    all = all && ck.pass;
    std::ostringstream line;
    line << (ck.pass ? "[PASS] " : "[FAIL] ") << ck.id << " " << ck.name << " — "
         << ck.statement;
    if (!ck.details.empty()) line << " (" << ck.details << ")";
    std::cerr << line.str() << "\n";
  }
  Json j;
  j["tool_version"] = toric::kToolVersion;
  j["options"] = Json{{"max_n", options.max_n},
                      {"weight_bound", options.weight_bound},
                      {"trials", options.trials}};
  Json arr = Json::array();
  for (const auto& ck : checks) {
    Json cj;
    cj["id"] = ck.id;
    cj["name"] = ck.name;
    cj["statement"] = ck.statement;
    cj["pass"] = ck.pass;
    cj["details"] = ck.details;
    if (!ck.reproducer.is_null()) cj["reproducer"] = ck.reproducer;
    arr.push_back(std::move(cj));
  }
  j["checks"] = std::move(arr);
  j["all_pass"] = all;
  emit(j, pretty);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toric — exact toolkit for complete fans, divisors, intersection "
               "numbers, Mori cones, and anticanonical divisibility"};
  app.require_subcommand(1);
  bool pretty = false;

  auto* construct = app.add_subcommand("construct", "emit a standard fan as JSON");
  std::string kind;
  std::vector<long long> params;
  construct->add_option("kind", kind, "pn | wps | bundle | floptarget")->required();
  construct->add_option("params", params, "integer parameters");

  auto* analyze = app.add_subcommand("analyze", "invariants of a fan file");
  std::string analyze_path;
  analyze->add_option("fan", analyze_path, "path to fan JSON")->required();

  auto* classify = app.add_subcommand("classify", "classification report for a fan file");
  std::string classify_path;
  classify->add_option("fan", classify_path, "path to fan JSON")->required();

  auto* contract = app.add_subcommand("contract", "contract an extremal ray");
  std::string contract_path, ray_spec;
  contract->add_option("fan", contract_path, "path to fan JSON")->required();
  contract->add_option("--ray", ray_spec, "extremal ray index or class c1,c2,...")
      ->required();

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  toric::VerifyOptions options;
  std::string suite = "paper";
  verify->add_option("--suite", suite, "suite name (default: paper)");
  verify->add_option("--max-n", options.max_n, "largest dimension to exercise");
  verify->add_option("--weight-bound", options.weight_bound,
                     "weight bound for the exhaustive enumeration");
  verify->add_option("--trials", options.trials, "randomized trial count");
  verify->add_flag("--inject-corruption", options.inject_corruption,
                   "self-test: corrupt an expected value to prove failures are caught");

  for (CLI::App* sub : {construct, analyze, classify, contract, verify})
    sub->add_flag("--pretty", pretty, "indent JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*construct) return run_construct(kind, params, pretty);
    if (*analyze) return run_analyze(analyze_path, pretty);
    if (*classify) return run_classify(classify_path, pretty);
    if (*contract) return run_contract(contract_path, ray_spec, pretty);
    if (*verify) {
      if (suite != "paper") {
        std::cerr << "error: unknown suite \"" << suite << "\"\n";
        return 2;
      }
      return run_verify(options, pretty);
    }
  } catch (const toric::ClassificationViolation& e) {
    std::cerr << "hard classification failure [" << e.code() << "]: " << e.what() << "\n";
    return 3;
  } catch (const toric::Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
