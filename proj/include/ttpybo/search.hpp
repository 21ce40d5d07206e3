#pragma once

// Exhaustive sweeps for Yang-Baxter operators over finite coefficient sets,
// orbit deduplication under solution symmetries, and the factorized
// constructions on Z_p x Z_p.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttpybo/ybo.hpp"

namespace ttpybo {

struct Ansatz {
  std::vector<CycNum> values;   // allowed per free coefficient
  std::map<int, CycNum> pinned;  // group element -> fixed value

  // mu_m (optionally with 0) on every element, identity pinned to 1.
  static Ansatz roots_of_unity(int m, bool with_zero = false);
};

struct Solution {
  YBOCandidate cand;
  VerificationReport report;
};

struct Orbit {
  std::size_t representative = 0;  // index into solutions
  std::vector<std::size_t> members;
};

struct SolutionSet {
  std::vector<Solution> solutions;  // sorted by coefficient vector
  std::vector<Orbit> orbits;        // singletons until deduplicated
  std::vector<std::string> actions_used;
  std::uint64_t candidates = 0;
};

struct SearchOptions {
  std::uint64_t budget = 10'000'000;
  int threads = 0;            // 0 keeps the OpenMP default
  bool exact_recheck = false;  // re-run braid_check on every kernel survivor
  long order_cap = 0;          // order_of_r search bound for reports
  std::optional<std::uint64_t> shuffle_seed;  // visit candidates in a random order
};

// Number of candidates the ansatz describes; throws BudgetExceeded above budget.
std::uint64_t sweep_size(const BaseAlgebra& base, const Ansatz& ansatz, std::uint64_t budget);
YBOCandidate candidate_at(const BaseAlgebra& base, const Ansatz& ansatz, std::uint64_t index);

// Parallel sweep with the integer braid kernel.
SolutionSet enumerate(const BaseAlgebra& base, const Bihomomorphism& alpha, const Ansatz& ansatz,
                      const SearchOptions& opts = {});
// Reference sweep: braid_check and invertible on every candidate, one thread.
SolutionSet enumerate_serial(const BaseAlgebra& base, const Bihomomorphism& alpha, const Ansatz& ansatz,
                             const SearchOptions& opts = {});

// Lexicographic comparison of coefficient vectors.
bool coefficient_less(const std::vector<CycNum>& a, const std::vector<CycNum>& b);
// Divides by the first nonzero coefficient.
YBOCandidate projective_normal(const YBOCandidate& cand);
// Concrete generators for the chosen action kinds. The scale kind contributes
// no generator; it switches orbits to projective classes instead. Galois
// exponents are restricted to those fixing alpha and nu.
std::vector<SymmetryAction> symmetry_generators(const YBOCandidate& sample, const Bihomomorphism& alpha,
                                                const std::vector<SymmetryAction::Kind>& kinds);
SolutionSet dedup_by_symmetry(const SolutionSet& sols, const Bihomomorphism& alpha,
                              const std::vector<SymmetryAction::Kind>& kinds);
// Closure of one candidate under the generators, projective when scale is chosen.
std::vector<YBOCandidate> orbit_of(const YBOCandidate& cand, const Bihomomorphism& alpha,
                                   const std::vector<SymmetryAction::Kind>& kinds);

enum class FormKind { elliptic, skew, hyperbolic };  // A1, A2, A3
ModMatrix factorized_form(FormKind kind, int p, int x = 1);
// f(j, k) = q^{j^2 + eps x k^2} on Z_p x Z_p, index j p + k.
YBOCandidate factorized_candidate(FormKind kind, int p, int eps = 1, int x = 1);
const char* form_kind_name(FormKind k);

// Support generates the whole group.
bool nondegenerate(const YBOCandidate& cand);

struct SurveyRow {
  ModMatrix form;
  std::string type;   // zero, symmetric, skew, mixed
  int rank = 0;
  std::string label;  // A1, A2, A3 or empty
  std::size_t solutions = 0;
  std::size_t nondegenerate = 0;
  std::size_t nondegenerate_unitary = 0;
  // among the nondegenerate unitary ones, tested in the coordinates of the
  // labelled form when there is one
  std::size_t factorizable = 0;
};

struct SurveyReport {
  std::vector<SurveyRow> rows;
  std::vector<std::string> discrepancies;
};

// All ten form orbits on Z_3 x Z_3, mu_3 coefficients with f(0,0) = 1.
SurveyReport z3z3_survey(const SearchOptions& opts = {});
// After some psi in Aut(G) with alpha o (psi x psi) = s alpha (s a unit, undone
// by the Galois action), f(j, k) = f(j, 0) f(0, k) with both factors of
// Gaussian type.
bool factors_as_gaussian_product(const YBOCandidate& cand, const Bihomomorphism& alpha);

}  // namespace ttpybo
