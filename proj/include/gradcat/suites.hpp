#pragma once

// Verification suites and the single-spec commands behind the CLI.

#include <string>
#include <vector>

#include "gradcat/io.hpp"
#include "gradcat/report.hpp"

namespace gradcat {

// grades, limits, functor-classify, adjoint, absolute, counterexamples, all.
const std::vector<std::string>& suite_names();

// Size defaults when the config leaves them unset.
struct SuiteBounds {
  std::size_t size;
  std::size_t depth;
};
SuiteBounds default_bounds(const std::string& suite);

// Unknown names raise SpecError with a schema status.
Report run_suite(const SuiteConfig& cfg, const std::string& command);

Report grade_command(const CatObject& a, const std::string& command);
Report classify_command(const FunctorSpec& f, std::size_t n, std::uint64_t guard, const std::string& command);
Report chain_command(const ChainSpec& c, const std::string& command);
Report square_command(const SquareSpec& s, std::uint64_t guard, const std::string& command);

// Instances exercised by the grades suite, with short stable ids.
struct NamedInstance {
  std::string id;
  CatId cat;
};
std::vector<NamedInstance> standard_instances();

// Per-instance object bound for a suite size: dimension size-1 for Vec
// (at least 1), the size itself otherwise.
std::size_t instance_bound(const CatId& cat, std::size_t size);

}  // namespace gradcat
