#include "ttpybo/cyclo.hpp"
#include "ttpybo/groups.hpp"

#include "doctest.h"

#include <functional>
#include <random>
#include <map>
#include <set>

using namespace ttpybo;

namespace {

std::vector<int> product_table(const FiniteGroup& g, std::function<int(int, int)> f) {
  std::vector<int> t(g.order() * g.order());
  for (int a = 0; a < g.order(); ++a)
    for (int b = 0; b < g.order(); ++b) t[a * g.order() + b] = f(a, b);
  return t;
}

// Psi with Psi^T X Psi = X, counted over all 2x2 matrices directly.
int brute_stabilizer(const ModMatrix& x) {
  const int p = x.modulus();
  int count = 0;
  for (int code = 0; code < p * p * p * p; ++code) {
    ModMatrix psi = ModMatrix::decode(code, 2, p);
    if (psi.determinant() == 0) continue;
    if (psi.transpose() * x * psi == x) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("abelian groups") {
  auto g = FiniteGroup::abelian({3, 3});
  CHECK(g.order() == 9);
  CHECK(g.exponent() == 3);
  CHECK(g.index_of({1, 2}) == 5);
  CHECK(g.exponents(5) == std::vector<int>{1, 2});
  CHECK(g.mul(g.index_of({1, 2}), g.index_of({2, 2})) == g.index_of({0, 1}));
  CHECK(g.inv(g.index_of({1, 2})) == g.index_of({2, 1}));
  CHECK(g.generators().size() == 2);
}

TEST_CASE("S3 presentation") {
  auto s3 = FiniteGroup::symmetric3();
  CHECK(s3.order() == 6);
  CHECK(!s3.is_abelian());
  CHECK(s3.exponent() == 6);
  const int u = 3, v = 1;
  CHECK(s3.mul(u, u) == 0);
  CHECK(s3.pow(v, 3) == 0);
  // u v = v^2 u
  CHECK(s3.mul(u, v) == s3.mul(s3.pow(v, 2), u));
  CHECK(s3.commutator_subgroup() == std::vector<int>{0, 1, 2});
  CHECK_THROWS_AS(FiniteGroup::presented({{0, 1}, {0, 1}}), ValidationError);
}

TEST_CASE("bihomomorphism validation") {
  auto z3 = FiniteGroup::abelian({3});
  auto a = validate_bihom(z3, product_table(z3, [](int x, int y) { return 2 * x * y; }), 3);
  CHECK(a(1, 1) == 2);
  CHECK(a(2, 2) == 2);
  std::vector<int> bad(9, 0);
  bad[1 * 3 + 1] = 1;
  bad[2 * 3 + 1] = 1;
  CHECK_THROWS_AS(validate_bihom(z3, bad, 3), ValidationError);
  CHECK_THROWS_AS(validate_bihom(z3, std::vector<int>(9, 0), 2), ValidationError);

  auto sign = s3_sign_form();
  CHECK(sign(3, 3) == 1);
  CHECK(sign(1, 3) == 0);
  auto s3 = FiniteGroup::symmetric3();
  // a form seeing the rotation subgroup is not additive
  auto rot = product_table(s3, [](int x, int y) { return (x % 3 == 1) * (y % 3 == 1); });
  CHECK_THROWS_AS(validate_bihom(s3, rot, 2), ValidationError);

  // unitality
  auto g = FiniteGroup::abelian({5, 5});
  auto m = bihom_from_matrix(g, ModMatrix(5, {{1, 2}, {3, 4}}));
  for (int x = 0; x < g.order(); ++x) {
    CHECK(m(0, x) == 0);
    CHECK(m(x, 0) == 0);
  }
}

TEST_CASE("quaternion base cocycle") {
  auto q8 = BaseAlgebra::quaternion_base();
  CHECK(q8.twisted());
  CHECK(!q8.commutative());
  const int u = 2, v = 1, uv = 3;  // (1,0), (0,1), (1,1)
  CHECK(q8.nu(u, u) == 1);
  CHECK(q8.nu(v, v) == 1);
  CHECK(q8.nu(uv, uv) == 1);
  CHECK(q8.nu(u, v) != q8.nu(v, u));
  std::vector<int> broken(16, 0);
  broken[1 * 4 + 2] = 1;
  CHECK_THROWS_AS(BaseAlgebra(FiniteGroup::abelian({2, 2}), broken, 2), ValidationError);
}

TEST_CASE("form orbits") {
  for (int p : {3, 5}) {
    auto orbits = form_orbits(2, p);
    CHECK(orbits.size() == static_cast<std::size_t>(p + 7));
    std::uint64_t total = 0;
    for (auto& o : orbits) total += o.size;
    CHECK(total == static_cast<std::uint64_t>(p * p * p * p));
  }
  // k = 1: scalars modulo squares of units, counted directly
  std::set<std::set<int>> classes;
  for (int a = 0; a < 3; ++a) {
    std::set<int> cls;
    for (int u = 1; u < 3; ++u) cls.insert(a * u * u % 3);
    classes.insert(cls);
  }
  CHECK(form_orbits(1, 3).size() == classes.size());
  CHECK(classes.size() == 3);
  CHECK_THROWS_AS(form_orbits(2, 4), ValidationError);
}

TEST_CASE("serial and parallel orbit sweeps agree") {
  for (auto [k, p] : {std::pair{2, 3}, {2, 5}, {1, 7}, {2, 7}}) {
    auto a = form_orbits(k, p), b = form_orbits_serial(k, p);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].representative == b[i].representative);
      CHECK(a[i].size == b[i].size);
    }
  }
  // canonical minima over all of GL_k give the same partition
  for (int p : {3, 5}) {
    const auto gl = general_linear(2, p);
    std::map<std::uint64_t, std::uint64_t> sizes;
    for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(p * p * p * p); ++c)
      ++sizes[form_canonical(ModMatrix::decode(c, 2, p), gl).encode()];
    auto orbits = form_orbits(2, p);
    REQUIRE(orbits.size() == sizes.size());
    for (const auto& o : orbits) CHECK(sizes[o.representative.encode()] == o.size);
  }
}

TEST_CASE("automorphisms preserving a form") {
  for (int p : {3, 5, 7}) {
    auto g = FiniteGroup::abelian({p});
    auto alpha = bihom_from_matrix(g, ModMatrix(p, {{2}}));
    auto auts = aut_preserving(g, alpha);
    CHECK(auts.size() == 2);
  }
  for (int p : {3, 5}) {
    auto g = FiniteGroup::abelian({p, p});
    ModMatrix skew(p, {{0, 2}, {-2, 0}});
    CHECK(aut_preserving(g, bihom_from_matrix(g, skew)).size() ==
          static_cast<std::size_t>((p * p - p) * (p + 1)));
    ModMatrix a1(p, {{2, 0}, {0, 2}});
    auto auts = aut_preserving(g, bihom_from_matrix(g, a1));
    CHECK(auts.size() == static_cast<std::size_t>(brute_stabilizer(a1)));
    // elliptic for p = 3 mod 4, split for p = 1 mod 4
    CHECK(auts.size() == static_cast<std::size_t>(p % 4 == 3 ? 2 * (p + 1) : 2 * (p - 1)));

    // closure under composition and inverse
    std::set<GroupMap> set(auts.begin(), auts.end());
    for (auto& x : auts)
      for (auto& y : auts) {
        GroupMap c(g.order()), inv(g.order());
        for (int e = 0; e < g.order(); ++e) {
          c[e] = x[y[e]];
          inv[x[e]] = e;
        }
        CHECK(set.count(c));
        CHECK(set.count(inv));
      }
  }
  CHECK(automorphisms(FiniteGroup::symmetric3()).size() == 6);
  CHECK(automorphisms(FiniteGroup::abelian({2, 2})).size() == 6);
  auto q8 = BaseAlgebra::quaternion_base();
  auto twist = bihom_from_matrix(q8.group(), ModMatrix(2, {{0, 1}, {1, 0}}));
  auto keep = aut_preserving(q8.group(), twist, &q8);
  CHECK(!keep.empty());
  CHECK(keep.size() <= 6);
}

TEST_CASE("modular linear algebra") {
  std::mt19937 rng(5);
  for (int m : {9, 15, 7}) {
    std::uniform_int_distribution<int> d(0, m - 1);
    int found = 0;
    while (found < 10) {
      ModMatrix s(3, 3, m);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s.at(i, j) = d(rng);
      if (gcd_long(s.determinant(), m) != 1) continue;
      ++found;
      CHECK(s * s.inverse() == ModMatrix::identity(3, m));
      auto sf = smith_mod(s);
      CHECK(sf.u * s * sf.v == sf.d);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          if (i != j) CHECK(sf.d.at(i, j) == 0);
      CHECK(gcd_long(sf.u.determinant(), m) == 1);
      CHECK(gcd_long(sf.v.determinant(), m) == 1);
    }
  }
  ModMatrix skew(5, {{0, 1, 2, 3}, {-1, 0, 4, 1}, {-2, -4, 0, 2}, {-3, -1, -2, 0}});
  REQUIRE(gcd_long(skew.determinant(), 5) == 1);
  ModMatrix p = symplectic_basis(skew);
  CHECK(p.transpose() * skew * p == standard_symplectic(4, 5));
  CHECK(legendre(2, 3) == -1);
  CHECK(legendre(4, 7) == 1);
  CHECK(legendre(3, 7) == -1);
  CHECK(ModMatrix(3, {{1, 2}, {0, 0}}).rank() == 1);
}
