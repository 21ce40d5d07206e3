// Runs the eleven acceptance criteria and prints one PASS/FAIL line each.
// Exits nonzero if any criterion fails or runs past its time limit.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ttpybo/errors.hpp"
#include "ttpybo/groups.hpp"
#include "ttpybo/search.hpp"
#include "ttpybo/spectra.hpp"
#include "ttpybo/tower.hpp"
#include "ttpybo/ttp.hpp"
#include "ttpybo/ybo.hpp"

using namespace ttpybo;

namespace {

// Regression constant, computed once by projective_image_order and pinned.
constexpr long kZ3GaussianImageOrder = 24;
constexpr long kImageOrderCap = 1'000'000;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

using K = SymmetryAction::Kind;

BaseAlgebra zp(int p) { return BaseAlgebra(FiniteGroup::abelian({p})); }

Bihomomorphism z3z3_form(const ModMatrix& x) { return bihom_from_matrix(FiniteGroup::abelian({3, 3}), x); }

std::vector<ModMatrix> z3z3_labels() {
  return {ModMatrix(3, {{2, 0}, {0, 2}}), ModMatrix(3, {{0, 2}, {1, 0}}), ModMatrix(3, {{2, 0}, {0, 1}})};
}

bool contains_candidate(const SolutionSet& s, const Orbit& o, const YBOCandidate& c) {
  for (auto i : o.members)
    if (s.solutions[i].cand.f == c.f) return true;
  return false;
}

void c1(Outcome& out) {
  auto sols = enumerate(zp(3), gaussian_twist(3), Ansatz::roots_of_unity(3));
  out.require(sols.solutions.size() == 6, "6 solutions");
  for (const auto& s : sols.solutions) {
    const auto a = s.cand.f[1], b = s.cand.f[2];
    out.require(a.pow(3).is_one() && b.pow(3).is_one() && !(a * a == b), "a^3 = b^3 = 1, a^2 != b");
  }
  auto orbits = dedup_by_symmetry(sols, gaussian_twist(3), {K::character, K::conjugation});
  out.require(orbits.orbits.size() == 1, "one orbit");
  if (orbits.orbits.size() == 1)
    out.require(contains_candidate(orbits, orbits.orbits[0], gaussian_candidate(3)), "orbit holds the Gaussian");
  out.detail << sols.solutions.size() << " solutions, " << orbits.orbits.size() << " orbit";
}

void c2(Outcome& out) {
  auto sols = enumerate(zp(5), gaussian_twist(5), Ansatz::roots_of_unity(5));
  out.require(sols.solutions.size() == 10, "10 solutions");
  auto orbit = orbit_of(gaussian_candidate(5), gaussian_twist(5), {K::character, K::conjugation});
  std::size_t in_orbit = 0, unitary = 0;
  for (const auto& s : sols.solutions) {
    for (const auto& o : orbit) in_orbit += o.f == s.cand.f;
    unitary += projective_unitary(s.cand).has_value();
  }
  out.require(in_orbit == sols.solutions.size(), "all in the Gaussian orbit");
  out.require(unitary == sols.solutions.size(), "all projectively unitary");
  out.detail << sols.solutions.size() << " solutions, " << in_orbit << " in the Gaussian orbit, " << unitary
             << " unitary";
}

void c3(Outcome& out) {
  const auto base = BaseAlgebra::quaternion_base();
  const auto alpha = bihom_from_matrix(base.group(), ModMatrix(2, {{0, 1}, {1, 0}}));
  Ansatz a;
  a.values = {CycNum(2, mpq_class(1, 2)), CycNum(2, mpq_class(-1, 2))};
  a.pinned[0] = CycNum(2, mpq_class(1, 2));
  auto sols = enumerate(base, alpha, a);
  out.require(sols.solutions.size() == 8, "8 solutions");
  const CycNum half(2, mpq_class(1, 2));
  auto cand = YBOCandidate::make(base, {half, half, half, half});
  out.require(braid_check(cand, alpha), "(1+u+v+uv)/2 braids");
  auto c = projective_unitary(cand);
  out.require(c && c->is_one(), "r* r = 1");
  out.detail << sols.solutions.size() << " solutions; (1+u+v+uv)/2 braids, r*r = " << (c ? c->to_string() : "none");
}

void c4(Outcome& out) {
  auto cand = s3_candidate(mpq_class(-2, 3), mpq_class(-2, 3), mpq_class(1, 3));
  const auto alpha = s3_sign_form();
  out.require(braid_check(cand, alpha), "braid_check");
  auto c = projective_unitary(cand);
  out.require(c && c->is_one(), "r* r = 1");
  out.require(order_of_r(cand, 8) == 4, "r^4 = 1");
  auto alg = candidate_algebra(cand, alpha, 2);
  const CycNum one(4, 1L), minus_i = -CycNum::root_of_unity(4, 1);
  try {
    auto prof = spectrum_exact(slot_copy(alg, cand, 1, true), {one, minus_i});
    out.detail << "spectrum {1:" << prof.multiplicity_of(one) << ", -i:" << prof.multiplicity_of(minus_i) << "}";
  } catch (const VerificationFailure&) {
    out.require(false, "spectrum inside {1, -i}");
  }
  auto pts = s3_variety_points(10);
  out.require(pts.size() == 10, "10 variety points");
  const CycNum i = CycNum::root_of_unity(4, 1);
  std::size_t vanish = 0;
  for (const auto& [x, y, z] : pts) {
    bool all = x * y + x * z + y * z == 0 && x * x + y * y + z * z == 1;
    for (const auto& v : s3_ideal_relations(i * CycNum(4, x), CycNum(4), CycNum(4), i * CycNum(4, y), i * CycNum(4, z)))
      all = all && v.is_zero();
    vanish += all;
  }
  out.require(vanish == 10, "relations vanish");
  out.detail << ", relations vanish at " << vanish << " points";
}

void c5(Outcome& out) {
  for (int p : {3, 5, 7}) out.require(gaussian_conjugation_check(p), "conjugation relations at p = " + std::to_string(p));
  for (int p : {3, 5}) {
    auto l = localize_zp(gaussian_candidate(p), gaussian_twist(p));
    out.require(l.r.rows() == static_cast<std::size_t>(p * p), "local size");
    out.require(l.ybe_ok && l.relations_ok, "matrix YBE at p = " + std::to_string(p));
  }
  out.detail << "conjugation at p = 3, 5, 7; matrix YBE at 9x9 and 25x25";
}

void c6(Outcome& out) {
  const char* names[] = {"A1", "A2", "A3"};
  const auto labels = z3z3_labels();
  const auto C = bratteli_C(3, 4);
  for (std::size_t t = 0; t < labels.size(); ++t) {
    std::vector<std::size_t> dims;
    for (int n = 2; n <= 5; ++n) {
      auto alg = TTPAlgebra::create(n, BaseAlgebra(FiniteGroup::abelian({3, 3})), z3z3_form(labels[t]));
      dims.push_back(center_basis(alg).size());
      if (n <= 4) {
        std::uint64_t expect = 1;
        for (int k = 1; k < n; ++k) expect *= 9;
        expect = (expect + 1) / 2;
        const auto fixed = inversion_fixed_dim(alg);
        out.require(fixed == expect && fixed == C.sum_of_squares(n),
                    std::string(names[t]) + " fixed dim at n = " + std::to_string(n));
      }
    }
    out.require(dims == std::vector<std::size_t>{9, 1, 9, 1}, std::string(names[t]) + " center dims");
  }
  out.detail << "centers {9,1,9,1} for A1, A2, A3; fixed dims 5, 41, 365 match C sums of squares";
}

void c7(Outcome& out) {
  int checked = 0;
  for (int p : {3, 5}) {
    long nonsq = 2;
    while (legendre(nonsq, p) != -1) ++nonsq;
    struct Case {
      FormKind kind;
      int eps;
      long x;
    };
    for (const Case& c : {Case{FormKind::elliptic, 1, 1}, Case{FormKind::elliptic, -1, 1},
                          Case{FormKind::hyperbolic, 1, nonsq}, Case{FormKind::hyperbolic, -1, nonsq}}) {
      auto cand = factorized_candidate(c.kind, p, c.eps, static_cast<int>(c.x));
      auto alpha = bihom_from_matrix(cand.base.group(), factorized_form(c.kind, p, static_cast<int>(c.x)));
      auto alg = candidate_algebra(cand, alpha, 2);
      const CycNum n = profile_normalizer(p, c.eps, c.x);
      std::vector<CycNum> cands;
      for (long k = 0; k < p; ++k) cands.push_back(CycNum::root_of_unity(p, k) * n);
      auto exact = rescale_profile(spectrum_exact(slot_copy(alg, cand, 1), cands), n);
      out.require(same_profile(exact, eigenvalue_profile(p, c.eps, c.x)),
                  "p = " + std::to_string(p) + " eps = " + std::to_string(c.eps) + " x = " + std::to_string(c.x));
      ++checked;
    }
  }
  out.detail << checked << " sign/Legendre classes match the closed-form profiles";
}

void c8(Outcome& out) {
  for (int p : {3, 5, 7}) {
    const auto n = form_orbits(2, p).size();
    out.require(n == static_cast<std::size_t>(p + 7), "p + 7 orbits at p = " + std::to_string(p));
    out.detail << "p=" << p << ": " << n << " ";
  }
}

void c9(Outcome& out) {
  for (long m : {3L, 9L}) {
    auto c = compare_towers(m, 5);
    out.require(c.isomorphic, "towers agree for |A| = " + std::to_string(m) + ": " + c.message);
    out.require(fusion_ring_D(static_cast<int>(m)).dimension_homomorphism(), "dimension homomorphism");
  }
  out.detail << "|A| = 3, 9 isomorphic to depth 5; dimension homomorphism exact";
}

Element random_element(std::mt19937& rng, const AlgebraPtr& alg, int terms) {
  std::uniform_int_distribution<std::uint64_t> mono(0, alg->dimension() - 1);
  std::uniform_int_distribution<int> coef(-3, 3), root(0, alg->modulus() - 1);
  Element x(alg);
  for (int t = 0; t < terms; ++t)
    x.add_term(mono(rng), CycNum::root_of_unity(alg->modulus(), root(rng)) * CycNum(alg->modulus(), long(coef(rng))));
  return x;
}

void c10(Outcome& out) {
  std::mt19937 rng(2024);
  // abelian solutions, so every action kind applies
  struct Sol {
    YBOCandidate cand;
    Bihomomorphism alpha;
  };
  std::vector<Sol> pool;
  for (int p : {3, 5, 7})
    for (int s : {1, -1}) pool.push_back({gaussian_candidate(p, s), gaussian_twist(p)});
  for (const auto& s : enumerate(zp(3), gaussian_twist(3), Ansatz::roots_of_unity(3)).solutions)
    pool.push_back({s.cand, gaussian_twist(3)});
  int braided = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& s = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    const auto& G = s.cand.base.group();
    const int p = G.order();
    SymmetryAction act;
    switch (trial % 6) {
      case 0:
        act = SymmetryAction::scale(CycNum::root_of_unity(12, std::uniform_int_distribution<long>(0, 11)(rng)));
        break;
      case 1: {
        auto chars = all_characters(G, p);
        act = SymmetryAction::character(chars[std::uniform_int_distribution<std::size_t>(0, chars.size() - 1)(rng)], p);
        break;
      }
      case 2: {
        auto auts = aut_preserving(G, s.alpha, &s.cand.base);
        act = SymmetryAction::automorphism(auts[std::uniform_int_distribution<std::size_t>(0, auts.size() - 1)(rng)]);
        break;
      }
      case 3:
        act = SymmetryAction::galois(std::uniform_int_distribution<long>(1, p - 1)(rng));
        break;
      case 4:
        act = SymmetryAction::inversion();
        break;
      default:
        act = SymmetryAction::conjugation();
    }
    auto r = symmetry_apply(s.cand, s.alpha, act);
    braided += braid_check(r.cand, r.alpha);
  }
  out.require(braided == 100, "braid relation preserved");

  std::vector<AlgebraPtr> algs = {
      TTPAlgebra::create(4, zp(3), gaussian_twist(3)),
      TTPAlgebra::create(4, BaseAlgebra(FiniteGroup::abelian({3, 3})), z3z3_form(z3z3_labels()[1])),
      TTPAlgebra::create(4, BaseAlgebra::quaternion_base(),
                         bihom_from_matrix(BaseAlgebra::quaternion_base().group(), ModMatrix(2, {{0, 1}, {1, 0}}))),
      TTPAlgebra::create(4, BaseAlgebra(FiniteGroup::symmetric3()), s3_sign_form(), 4)};
  int assoc = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto& alg = algs[trial % algs.size()];
    auto x = random_element(rng, alg, 3), y = random_element(rng, alg, 3), z = random_element(rng, alg, 3);
    assoc += (x * y) * z == x * (y * z);
  }
  out.require(assoc == 1000, "associativity");

  auto alg = TTPAlgebra::create(4, BaseAlgebra(FiniteGroup::abelian({3, 3})), z3z3_form(z3z3_labels()[0]));
  const auto& G = alg->group();
  std::uniform_int_distribution<int> el(0, G.order() - 1), zz(0, 2);
  auto rand_ext = [&] {
    ExtElement x;
    x.z = zz(rng);
    for (int i = 0; i < 3; ++i) x.g.push_back(el(rng));
    return x;
  };
  int mult = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto x = rand_ext(), y = rand_ext();
    mult += extension_image(alg, central_extension_mul(G, alg->alpha(), x, y)) ==
            extension_image(alg, x) * extension_image(alg, y);
  }
  out.require(mult == 100, "phi multiplicative");
  out.detail << braided << "/100 symmetry pairs, " << assoc << "/1000 associative triples, " << mult
             << "/100 phi pairs";
}

void c11(Outcome& out) {
  auto r = projective_image_order(gaussian_candidate(3), gaussian_twist(3), 3, kImageOrderCap);
  out.require(!r.exceeded, "terminates below the cap");
  out.require(r.order == kZ3GaussianImageOrder, "pinned order " + std::to_string(kZ3GaussianImageOrder));
  out.detail << "order " << r.order << " (pinned " << kZ3GaussianImageOrder << ", cap " << kImageOrderCap << ")";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Z3 enumeration", 1, c1},
      {2, "Z5 enumeration", 10, c2},
      {3, "Q8 solutions", 1, c3},
      {4, "S3 point and family", 5, c4},
      {5, "Gaussian structure", 30, c5},
      {6, "structure of A_n and C_n", 30, c6},
      {7, "eigenvalue profiles", 120, c7},
      {8, "form orbits", 60, c8},
      {9, "tower comparison", 10, c9},
      {10, "property suites", 60, c10},
      {11, "image order regression", 300, c11},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.require(secs <= c.limit_seconds, "time limit");
    failed += !out.pass;
    std::printf("%s %2d %-26s %7.2fs / %gs  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_seconds,
                out.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
