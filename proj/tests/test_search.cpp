#include "ttpybo/search.hpp"

#include "doctest.h"

#include "ttpybo/errors.hpp"

using namespace ttpybo;

namespace {

BaseAlgebra zp(int p) { return BaseAlgebra(FiniteGroup::abelian({p})); }

Bihomomorphism q8_twist() {
  return bihom_from_matrix(BaseAlgebra::quaternion_base().group(), ModMatrix(2, {{0, 1}, {1, 0}}));
}

Ansatz q8_ansatz() {
  Ansatz a;
  a.values = {CycNum(2, mpq_class(1, 2)), CycNum(2, mpq_class(-1, 2))};
  a.pinned[0] = CycNum(2, mpq_class(1, 2));
  return a;
}

std::vector<std::vector<CycNum>> coefficient_lists(const SolutionSet& s) {
  std::vector<std::vector<CycNum>> out;
  for (const auto& x : s.solutions) out.push_back(x.cand.f);
  return out;
}

using K = SymmetryAction::Kind;

}  // namespace

TEST_CASE("Z3 sweep") {
  auto sols = enumerate(zp(3), gaussian_twist(3), Ansatz::roots_of_unity(3));
  CHECK(sols.candidates == 9);
  REQUIRE(sols.solutions.size() == 6);
  for (const auto& s : sols.solutions) {
    long a = *s.cand.f[1].root_exponent(), b = *s.cand.f[2].root_exponent();
    CHECK((2 * a) % 3 != b);
    CHECK(s.report.unitary_scalar);
  }
  auto orbits = dedup_by_symmetry(sols, gaussian_twist(3), {K::character, K::conjugation});
  REQUIRE(orbits.orbits.size() == 1);
  CHECK(orbits.orbits[0].members.size() == 6);
  auto g = gaussian_candidate(3);
  bool has_gaussian = false;
  for (auto i : orbits.orbits[0].members) has_gaussian = has_gaussian || sols.solutions[i].cand == g;
  CHECK(has_gaussian);
}

TEST_CASE("Z5 sweep") {
  auto sols = enumerate(zp(5), gaussian_twist(5), Ansatz::roots_of_unity(5));
  REQUIRE(sols.solutions.size() == 10);
  for (const auto& s : sols.solutions) CHECK(s.report.unitary_scalar);
  auto orbits = dedup_by_symmetry(sols, gaussian_twist(5), {K::character, K::conjugation});
  REQUIRE(orbits.orbits.size() == 1);
  CHECK(orbits.orbits[0].members.size() == 10);
  // the Gaussian orbit under these actions has exactly 2p members
  for (int p : {3, 5, 7})
    CHECK(orbit_of(gaussian_candidate(p), gaussian_twist(p), {K::character, K::conjugation}).size() ==
          static_cast<std::size_t>(2 * p));
}

TEST_CASE("Q8 sweep") {
  auto sols = enumerate(BaseAlgebra::quaternion_base(), q8_twist(), q8_ansatz());
  CHECK(sols.solutions.size() == 8);
  for (const auto& s : sols.solutions) CHECK(s.report.unitary_scalar->is_one());
  Ansatz pinned_one = q8_ansatz();
  pinned_one.pinned[0] = CycNum(2, 1L);
  CHECK(enumerate(BaseAlgebra::quaternion_base(), q8_twist(), pinned_one).solutions.empty());
}

TEST_CASE("parallel kernel matches the serial reference") {
  struct Case {
    BaseAlgebra base;
    Bihomomorphism alpha;
    Ansatz ansatz;
  };
  Ansatz signs;
  signs.values = {CycNum(4), CycNum(4, 1L), CycNum(4, -1L), CycNum::root_of_unity(4, 1)};
  signs.pinned[0] = CycNum(4, 1L);
  auto g = FiniteGroup::abelian({3, 3});
  Ansatz two;
  two.values = {CycNum::root_of_unity(3, 0), CycNum::root_of_unity(3, 1)};
  two.pinned[0] = CycNum(3, 1L);
  std::vector<Case> cases = {
      {zp(3), gaussian_twist(3), Ansatz::roots_of_unity(3, true)},
      {zp(5), gaussian_twist(5), Ansatz::roots_of_unity(5)},
      {BaseAlgebra::quaternion_base(), q8_twist(), q8_ansatz()},
      {BaseAlgebra(FiniteGroup::symmetric3()), s3_sign_form(), signs},
      {BaseAlgebra(g), bihom_from_matrix(g, ModMatrix(3, {{0, 2}, {1, 0}})), two},
  };
  for (const auto& c : cases) {
    SearchOptions opts;
    opts.exact_recheck = true;
    auto fast = enumerate(c.base, c.alpha, c.ansatz, opts);
    auto slow = enumerate_serial(c.base, c.alpha, c.ansatz);
    CHECK(coefficient_lists(fast) == coefficient_lists(slow));
    opts.shuffle_seed = 99;
    CHECK(coefficient_lists(enumerate(c.base, c.alpha, c.ansatz, opts)) == coefficient_lists(fast));
    opts.threads = 1;
    CHECK(coefficient_lists(enumerate(c.base, c.alpha, c.ansatz, opts)) == coefficient_lists(fast));
  }
}

TEST_CASE("budget") {
  SearchOptions opts;
  opts.budget = 100;
  try {
    enumerate(zp(5), gaussian_twist(5), Ansatz::roots_of_unity(5), opts);
    FAIL("expected budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(e.required() == 625);
    CHECK(e.budget() == 100);
  }
  CHECK(sweep_size(zp(5), Ansatz::roots_of_unity(5), 625) == 625);
}

TEST_CASE("orbit structure") {
  auto sols = enumerate(zp(5), gaussian_twist(5), Ansatz::roots_of_unity(5));
  auto none = dedup_by_symmetry(sols, gaussian_twist(5), {});
  CHECK(none.orbits.size() == sols.solutions.size());
  for (const auto& o : none.orbits) CHECK(o.members.size() == 1);

  auto chars = dedup_by_symmetry(sols, gaussian_twist(5), {K::character});
  CHECK(chars.orbits.size() == 2);
  for (const auto& o : chars.orbits) {
    // re-applying the actions to the representative regenerates the orbit
    auto regen = orbit_of(sols.solutions[o.representative].cand, gaussian_twist(5), {K::character});
    std::vector<std::vector<CycNum>> a, b;
    for (auto i : o.members) a.push_back(sols.solutions[i].cand.f);
    for (const auto& c : regen) b.push_back(c.f);
    CHECK(a == b);
    for (auto i : o.members)
      CHECK(!coefficient_less(sols.solutions[i].cand.f, sols.solutions[o.representative].cand.f));
  }

  auto projective = dedup_by_symmetry(sols, gaussian_twist(5), {K::scale, K::character, K::conjugation,
                                                                  K::inversion, K::automorphism, K::galois});
  CHECK(projective.orbits.size() == 1);

  auto q8 = enumerate(BaseAlgebra::quaternion_base(), q8_twist(), q8_ansatz());
  CHECK_THROWS_AS(dedup_by_symmetry(q8, q8_twist(), {K::conjugation}), ValidationError);
  auto q8_orbits = dedup_by_symmetry(q8, q8_twist(), {K::character, K::automorphism, K::inversion});
  CHECK(q8_orbits.orbits.size() >= 1);
  MESSAGE("Q8 orbits under characters, automorphisms and inversion: " << q8_orbits.orbits.size());
}

TEST_CASE("factorized candidates") {
  for (int p : {3, 5}) {
    auto g = FiniteGroup::abelian({p, p});
    for (int eps : {1, -1}) {
      auto c = factorized_candidate(FormKind::elliptic, p, eps);
      CHECK(braid_check(c, bihom_from_matrix(g, factorized_form(FormKind::elliptic, p))));
      auto h = factorized_candidate(FormKind::hyperbolic, p, eps, 2);
      CHECK(braid_check(h, bihom_from_matrix(g, factorized_form(FormKind::hyperbolic, p, 2))));
    }
    auto skew = bihom_from_matrix(g, factorized_form(FormKind::skew, p));
    CHECK(braid_check(factorized_candidate(FormKind::skew, p), skew));
    // h = conjugate Gaussian is not allowed for the skew form
    auto mixed = factorized_candidate(FormKind::elliptic, p, -1);
    CHECK(!braid_check(mixed, skew));
    CHECK(factors_as_gaussian_product(factorized_candidate(FormKind::skew, p), skew));
  }
  CHECK(factorized_candidate(FormKind::skew, 3).f[1 * 3 + 2] == CycNum::root_of_unity(3, 1 + 4));
  CHECK_THROWS_AS(factorized_candidate(FormKind::hyperbolic, 5, 1, 4), ValidationError);
  CHECK_THROWS_AS(factorized_candidate(FormKind::elliptic, 5, 1, 2), ValidationError);
  CHECK_THROWS_AS(factorized_form(FormKind::skew, 9), ValidationError);
}

TEST_CASE("non-degeneracy") {
  auto g = FiniteGroup::abelian({3, 3});
  std::vector<CycNum> f(9, CycNum(3));
  f[0] = CycNum(3, 1L);
  f[1] = CycNum(3, 1L);
  auto line = YBOCandidate::make(BaseAlgebra(g), f);
  CHECK(!nondegenerate(line));
  f[3] = CycNum(3, 1L);
  CHECK(nondegenerate(YBOCandidate::make(BaseAlgebra(g), f)));
  CHECK(nondegenerate(factorized_candidate(FormKind::elliptic, 3)));
}

TEST_CASE("Z3 x Z3 survey") {
  auto report = z3z3_survey();
  REQUIRE(report.rows.size() == 10);
  int labelled = 0;
  for (const auto& row : report.rows) {
    MESSAGE(row.form.to_string() << " " << row.type << " rank " << row.rank << " " << row.label << ": "
                                 << row.solutions << " solutions, " << row.nondegenerate << " non-degenerate, "
                                 << row.nondegenerate_unitary << " unitary, " << row.factorizable << " factor");
    if (!row.label.empty()) {
      ++labelled;
      CHECK(row.nondegenerate_unitary > 0);
      CHECK(row.factorizable == row.nondegenerate_unitary);
    } else {
      CHECK(row.nondegenerate_unitary == 0);
    }
    if (row.type == "zero") CHECK(row.rank == 0);
  }
  CHECK(labelled == 3);
  for (const auto& d : report.discrepancies) MESSAGE("discrepancy: " << d);
  CHECK(report.discrepancies.empty());
}
