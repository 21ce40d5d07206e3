#include "ttpybo/spectra.hpp"

#include <algorithm>
#include <map>

#include "doctest.h"

#include "ttpybo/errors.hpp"
#include "ttpybo/search.hpp"

using namespace ttpybo;

namespace {

CycNum z(int p, long k) { return CycNum::root_of_unity(p, k); }

long inv_mod(long a, long p) {
  a = mod_floor(a, p);
  for (long b = 1; b < p; ++b)
    if (a * b % p == 1) return b;
  return 0;
}

// Completing the square: lambda(s,t) / (G(1,0) G(ex,0)) = q^{-s^2/4 - t^2/(4ex)}.
std::map<long, long> counted_profile(int p, int eps, long x) {
  const long i4 = inv_mod(4, p), iex = inv_mod(4 * eps * x, p);
  std::map<long, long> out;
  for (long s = 0; s < p; ++s)
    for (long t = 0; t < p; ++t) ++out[mod_floor(-(s * s * i4 + t * t * iex), p)];
  return out;
}

Element r_in_a2(const YBOCandidate& cand, FormKind kind, int p, int x) {
  auto alpha = bihom_from_matrix(cand.base.group(), factorized_form(kind, p, x));
  auto alg = candidate_algebra(cand, alpha, 2);
  return slot_copy(alg, cand, 1);
}

std::vector<CycNum> scaled_roots(int p, const CycNum& c) {
  std::vector<CycNum> out;
  for (long k = 0; k < p; ++k) out.push_back(z(p, k) * c);
  return out;
}

}  // namespace

TEST_CASE("gauss sums") {
  CHECK(gauss_sum(3, 1, 0) == CycNum(3, 1L) + z(3, 1) + z(3, 1));
  CHECK(gauss_sum(3, 0, 0) == CycNum(3, 3L));
  CHECK(gauss_sum(5, 0, 2).is_zero());
  for (int p : {3, 5, 7})
    for (long a = 1; a < p; ++a) {
      CycNum g = gauss_sum(p, a, 0);
      CHECK(g * conj(g) == CycNum(p, static_cast<long>(p)));
      // shifting j absorbs s into a translate: |G(a, s)| = |G(a, 0)|
      for (long s = 0; s < p; ++s) {
        CycNum gs = gauss_sum(p, a, s);
        CHECK(gs * conj(gs) == CycNum(p, static_cast<long>(p)));
      }
    }
  CHECK_THROWS_AS(gauss_sum(9, 1, 0), ValidationError);
}

TEST_CASE("profile examples") {
  auto a = eigenvalue_profile(3, 1, 1);
  CHECK(profile_case(3, 1, 1) == 1);
  CHECK(a.total == 9);
  CHECK(a.multiplicity_of(z(3, 0)) == 1);
  CHECK(a.multiplicity_of(z(3, 1)) == 4);
  CHECK(a.multiplicity_of(z(3, 2)) == 4);

  auto b = eigenvalue_profile(3, 1, 2);
  CHECK(profile_case(3, 1, 2) == 2);
  CHECK(b.multiplicity_of(z(3, 0)) == 5);
  CHECK(b.multiplicity_of(z(3, 1)) == 2);
  CHECK(b.multiplicity_of(z(3, 2)) == 2);

  CHECK_THROWS_AS(eigenvalue_profile(3, 2, 1), ValidationError);
  CHECK_THROWS_AS(eigenvalue_profile(5, 1, 10), ValidationError);
  CHECK_THROWS_AS(eigenvalue_profile(15, 1, 1), ValidationError);
}

TEST_CASE("sign table agrees with a direct count") {
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
    for (int eps : {1, -1})
      for (long x = 1; x < p; ++x) {
        auto prof = eigenvalue_profile(p, eps, x);
        auto count = counted_profile(p, eps, x);
        CHECK(prof.total == static_cast<long>(p) * p);
        for (long k = 0; k < p; ++k) CHECK(prof.multiplicity_of(z(p, k)) == count[k]);
        CHECK((profile_case(p, eps, x) == 1) == (legendre(-eps * x, p) == -1));
      }
}

TEST_CASE("normalized lambdas are p-th roots") {
  for (int p : {3, 5, 7})
    for (int eps : {1, -1})
      for (long x = 1; x < p; ++x) {
        CycNum n = profile_normalizer(p, eps, x);
        auto lam = lambda_values(p, eps, x);
        REQUIRE(lam.size() == static_cast<std::size_t>(p * p));
        EigenProfile raw;
        for (const auto& l : lam) {
          auto it = std::find_if(raw.entries.begin(), raw.entries.end(),
                                 [&](const EigenEntry& e) { return e.value == l; });
          if (it == raw.entries.end())
            raw.entries.push_back({l, 1});
          else
            ++it->multiplicity;
          ++raw.total;
        }
        CHECK(same_profile(rescale_profile(raw, n), eigenvalue_profile(p, eps, x)));
      }
}

TEST_CASE("exact spectra of the factorized solutions") {
  struct Case {
    FormKind kind;
    int p, eps, x;
  };
  std::vector<Case> cases;
  for (int p : {3, 5}) {
    cases.push_back({FormKind::elliptic, p, 1, 1});
    cases.push_back({FormKind::elliptic, p, -1, 1});
    cases.push_back({FormKind::skew, p, 1, 1});
    cases.push_back({FormKind::hyperbolic, p, 1, 2});
    cases.push_back({FormKind::hyperbolic, p, -1, 2});
  }
  // both non-square classes at p = 7
  cases.push_back({FormKind::hyperbolic, 7, 1, 3});
  cases.push_back({FormKind::hyperbolic, 7, 1, 5});
  for (const auto& c : cases) {
    CAPTURE(c.p);
    CAPTURE(c.eps);
    CAPTURE(c.x);
    auto cand = factorized_candidate(c.kind, c.p, c.eps, c.x);
    CycNum n = profile_normalizer(c.p, c.eps, c.x);
    auto exact = spectrum_exact(r_in_a2(cand, c.kind, c.p, c.x), scaled_roots(c.p, n));
    CHECK(exact.total == c.p * c.p);
    CHECK(same_profile(rescale_profile(exact, n), eigenvalue_profile(c.p, c.eps, c.x)));
  }
}

TEST_CASE("spectrum_exact basics") {
  auto base = BaseAlgebra(FiniteGroup::abelian({3}));
  auto alg = candidate_algebra(identity_candidate(base), gaussian_twist(3), 2);
  auto one = Element::one(alg);
  auto prof = spectrum_exact(one, {CycNum(3, 1L)});
  REQUIRE(prof.entries.size() == 1);
  CHECK(prof.multiplicity_of(CycNum(3, 1L)) == 3);
  // duplicates collapse, absent candidates drop out
  prof = spectrum_exact(one, {CycNum(3, 1L), CycNum(3, 1L), CycNum(3, 2L)});
  CHECK(prof.entries.size() == 1);
  CHECK_THROWS_AS(spectrum_exact(one, {CycNum(3, 2L)}), VerificationFailure);

  // a single generator u of Z_3 has eigenvalues 1, q, q^2
  auto u = Element::monomial(alg, 1, CycNum(3, 1L));
  prof = spectrum_exact(u, scaled_roots(3, CycNum(3, 1L)));
  for (long k = 0; k < 3; ++k) CHECK(prof.multiplicity_of(z(3, k)) == 1);
  CHECK_THROWS_AS(spectrum_exact(u, {CycNum(3, 1L), z(3, 1)}), VerificationFailure);
}
