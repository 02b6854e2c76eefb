#pragma once

// Verification reports. Checks are kept sorted by id; everything except the
// timing block is a pure function of the input and configuration.

#include <functional>
#include <string>
#include <vector>

#include "gradcat/io.hpp"
#include "json.hpp"

namespace gradcat {

enum class Verdict { Pass, Fail, Guard };

std::string to_string(Verdict v);

struct CheckResult {
  std::string id;
  Verdict verdict = Verdict::Pass;
  std::string summary;
  std::string witness;              // replayable description of a failure
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0.0;
};

struct Report {
  std::string command;
  std::vector<CheckResult> checks;

  void add(CheckResult c);
  // Fail beats a guard trip; no checks at all counts as a pass.
  ExitStatus status() const;
  std::size_t count(Verdict v) const;

  nlohmann::json to_json(bool with_timing = true) const;
  std::string to_text(bool with_timing = true) const;
};

std::string tool_version();

// Runs fn, timing it; ResourceError becomes a Guard verdict and any other
// library error a Fail carrying the message as its witness.
CheckResult run_check(const std::string& id, const std::function<CheckResult()>& fn);

// Runs the checks on up to `jobs` threads (0: hardware concurrency) and
// returns them in input order.
std::vector<CheckResult> run_checks(std::vector<std::pair<std::string, std::function<CheckResult()>>> tasks,
                                    std::size_t jobs);

}  // namespace gradcat
