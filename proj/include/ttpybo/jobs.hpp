#pragma once

// JSON job specifications and reports for the command-line driver.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ttpybo/cyclo.hpp"

namespace ttpybo::jobs {

using Json = nlohmann::json;

enum ExitCode : int { ok = 0, other = 1, validation = 2, verification = 3, budget = 4 };

struct RunOptions {
  std::optional<std::uint64_t> budget;  // overrides the spec's budget
  std::optional<int> digits;            // overrides the spec's digits
};

struct DotFile {
  std::string name;  // file stem
  std::string text;
};

struct JobResult {
  Json report;
  int exit_code = ExitCode::ok;
  std::vector<DotFile> dots;
};

// Never throws for bad specs: failures become an "error" object in the report
// and a nonzero exit code.
JobResult run(const Json& spec, const RunOptions& opts = {});

// FNV-1a 64 over the compact serialization (object keys are sorted).
std::uint64_t spec_hash(const Json& spec);
std::string hex64(std::uint64_t v);

// {modulus, exponent[, scale]} for scaled roots of unity, {modulus, coeffs} otherwise.
Json coefficient_to_json(const CycNum& c);
// Also accepts "q^k" (zeta_{default_modulus}^k), rationals as integers or
// "a/b" strings, and the two object forms.
CycNum coefficient_from_json(const Json& j, int default_modulus);

extern const char* const kVersion;

}  // namespace ttpybo::jobs
