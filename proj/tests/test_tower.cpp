#include "ttpybo/tower.hpp"

#include <map>

#include "doctest.h"

#include "ttpybo/errors.hpp"

using namespace ttpybo;

namespace {

std::map<std::string, std::uint64_t> level_map(const BratteliDiagram& d, int n) {
  std::map<std::string, std::uint64_t> out;
  for (const auto& v : d.levels[n - 1]) out[v.label] = v.dim;
  return out;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_CASE("A tower") {
  auto d = bratteli_A(3, 5);
  CHECK(d.recursion_holds());
  REQUIRE(d.levels[2].size() == 1);
  CHECK(d.levels[2][0].dim == 9);
  CHECK(d.sum_of_squares(3) == 81);
  CHECK(d.levels[1].size() == 9);
  for (const auto& v : d.levels[1]) CHECK(v.dim == 1);
  for (int n = 1; n <= 5; ++n) CHECK(d.sum_of_squares(n) == ipow(9, n - 1));

  // node count is the center dimension, counted independently
  for (long N : {3L, 5L, 9L})
    for (int n = 1; n <= 4; ++n) {
      auto a = bratteli_A_order(N, n);
      auto alg = reference_algebra(N, n);
      CHECK(a.levels.back().size() == center_basis(alg).size());
      CHECK(a.sum_of_squares(n) == alg->dimension());
    }
  CHECK_THROWS_AS(bratteli_A(4, 3), ValidationError);
  CHECK_THROWS_AS(bratteli_A(3, 0), ValidationError);
}

TEST_CASE("C tower") {
  auto d = bratteli_C(3, 6);
  CHECK(d.recursion_holds());
  CHECK(level_map(d, 1) == std::map<std::string, std::uint64_t>{{"P", 1}});
  CHECK(level_map(d, 3) == std::map<std::string, std::uint64_t>{{"P", 5}, {"N", 4}});
  CHECK(d.sum_of_squares(3) == 41);
  auto l4 = level_map(d, 4);
  CHECK(l4.size() == 6);
  CHECK(l4["P"] == 5);
  CHECK(l4["N"] == 4);
  for (int j = 1; j <= 4; ++j) CHECK(l4["L" + std::to_string(j)] == 9);
  CHECK(d.sum_of_squares(4) == 365);
  // (m^2 + 3)/2 summands at even levels past the second
  CHECK(d.levels[5].size() == (9 + 3) / 2);

  for (long N : {3L, 5L, 7L, 9L, 25L}) {
    const int depth = N > 9 ? 4 : 5;
    auto c = bratteli_C_order(N, depth);
    CHECK(c.recursion_holds());
    for (int n = 1; n <= depth; ++n) CHECK(c.sum_of_squares(n) == inversion_fixed_dim(reference_algebra(N, n)));
  }
  CHECK_THROWS_AS(bratteli_C(2, 3), ValidationError);
  CHECK_THROWS_AS(bratteli_C_order(9, 50), ValidationError);  // dims overflow
}

TEST_CASE("fusion ring of D") {
  for (int m : {3, 5, 7, 9, 15, 25}) {
    CAPTURE(m);
    auto R = fusion_ring_D(m);
    CHECK(R.size() == 4 + (m - 1) / 2);
    CHECK(R.commutative());
    CHECK(R.associative());
    CHECK(R.has_unit(R.index("X+")));
    CHECK(R.dimension_homomorphism());
    long total = 0;
    for (int a = 0; a < R.size(); ++a) total += R.dim_squared(a);
    CHECK(total == 4L * m);  // global dimension 2 * 2m
    CHECK(R.dim_squared(R.index("Z0")) == m);
  }
  auto R = fusion_ring_D(9);
  CHECK(default_fusion_group(9).factors() == std::vector<int>{3, 3});
  const int z0 = R.index("Z0"), xp = R.index("X+"), xm = R.index("X-");
  auto zz = R.fuse(z0, z0);
  CHECK(zz[xp] == 1);
  CHECK(zz[xm] == 0);
  for (int a = 2; a < z0; ++a) CHECK(zz[a] == 1);
  CHECK(R.fuse(z0, R.index("Z1"))[xm] == 1);
  const int y = R.index("Y(0,1)");
  auto yy = R.fuse(y, y);
  CHECK(yy[xp] == 1);
  CHECK(yy[xm] == 1);
  CHECK(yy[R.index("Y(0,1)")] == 1);  // 2a = -a
  auto y2 = R.fuse(y, R.index("Y(1,0)"));
  CHECK(y2[R.index("Y(1,1)")] == 1);
  CHECK(y2[R.index("Y(1,2)")] == 1);
  CHECK_THROWS_AS(R.index("Y(2,0)"), ValidationError);  // not a transversal label
  CHECK_THROWS_AS(fusion_ring_D(4), ValidationError);
}

TEST_CASE("End(Z0^n) tower") {
  auto R = fusion_ring_D(3);
  const int z0 = R.index("Z0");
  auto d = fusion_bratteli(R, z0, 6);
  CHECK(d.recursion_holds());
  CHECK(level_map(d, 1) == std::map<std::string, std::uint64_t>{{"Z0", 1}});
  CHECK(level_map(d, 2) == std::map<std::string, std::uint64_t>{{"X+", 1}, {"Y(1)", 1}});
  CHECK(d.sum_of_squares(2) == 2);
  CHECK(level_map(d, 3) == std::map<std::string, std::uint64_t>{{"Z0", 2}, {"Z1", 1}});
  CHECK(d.sum_of_squares(3) == 5);

  // sum of multiplicity * dim is dim(Z0)^n
  for (int m : {3, 5, 9}) {
    auto Rm = fusion_ring_D(m);
    auto dm = fusion_bratteli(Rm, Rm.index("Z0"), 7);
    for (int n = 1; n <= 7; ++n) {
      long rat = 0, root = 0;
      for (const auto& v : dm.levels[n - 1]) {
        const auto& q = Rm.dims[Rm.index(v.label)];
        rat += static_cast<long>(v.dim) * q.rational;
        root += static_cast<long>(v.dim) * q.root;
      }
      if (n % 2 == 0) {
        CHECK(rat == static_cast<long>(ipow(m, n / 2)));
        CHECK(root == 0);
      } else {
        CHECK(rat == 0);
        CHECK(root == static_cast<long>(ipow(m, (n - 1) / 2)));
      }
    }
  }
}

TEST_CASE("tower comparison") {
  for (long N : {3L, 5L, 7L, 9L}) {
    CAPTURE(N);
    auto cmp = compare_towers(N, 5);
    CHECK(cmp.isomorphic);
    CHECK(cmp.first_mismatch == 0);
    CHECK(cmp.end_dims == cmp.counted_dims);
  }
  auto nine = compare_towers(9, 4);
  CHECK(nine.end_dims == std::vector<std::uint64_t>{1, 5, 41, 365});
  auto three = compare_towers(3, 4);
  CHECK(three.end_dims == std::vector<std::uint64_t>{1, 2, 5, 14});
  CHECK(compare_towers(3, 1).isomorphic);

  int mismatch = -1;
  CHECK_FALSE(diagrams_isomorphic(bratteli_A_order(9, 4), bratteli_C_order(9, 4), &mismatch));
  CHECK(mismatch == 2);

  // same node dims, one edge moved: the L node now meets N twice and P never
  auto c = bratteli_C_order(3, 5);
  auto f = fusion_bratteli(fusion_ring_D(3), fusion_ring_D(3).index("Z0"), 5);
  REQUIRE(diagrams_isomorphic(f, c, &mismatch));
  auto bad = c;
  auto& e = bad.edges[3];  // level 4 -> 5
  std::size_t l = 0;
  while (bad.levels[3][l].label != "L1") ++l;
  e[l][0] = 0;
  e[l][1] = 2;
  CHECK_FALSE(diagrams_isomorphic(f, bad, &mismatch));
  CHECK(mismatch == 5);
  CHECK_THROWS_AS(compare_towers(15, 3), ValidationError);  // no reference algebra
}

TEST_CASE("dot output") {
  auto dot = to_dot(bratteli_C(3, 3), "c");
  CHECK(dot.find("digraph c {") == 0);
  CHECK(dot.find("label=\"P:5\"") != std::string::npos);
  CHECK(dot.find("label=\"N:4\"") != std::string::npos);
  CHECK(dot.find("-> n3_0 [label=\"1\"]") != std::string::npos);
}
