#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toric/fan.hpp"

namespace toric {

struct VerifyOptions {
  int max_n = 5;
  int weight_bound = 6;
  int trials = 200;
  // Harness self-test: corrupt one expected value to prove that failures
  // are detected and reported with a reproducer.
  bool inject_corruption = false;
};

struct CheckResult {
  int id = 0;
  std::string name;
  std::string statement;  // the mathematical fact the check certifies
  bool pass = false;
  std::string details;
  nlohmann::ordered_json reproducer;  // offending fan, when a check fails
};

/// Runs the whole verification suite. Every expected value is pinned here;
/// nothing is calibrated at run time.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

/// All smooth complete surface fans with at most max_rays rays obtainable by
/// blowing up P^2 or a Hirzebruch surface F_a with a <= max_hirzebruch,
/// deduplicated up to lattice isomorphism.
std::vector<Fan> enumerate_smooth_surfaces(int max_rays, int max_hirzebruch);

}  // namespace toric
