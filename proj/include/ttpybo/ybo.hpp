#pragma once

// Yang-Baxter operators r = sum_g f(g) g in the base algebra: verification,
// symmetry actions, the Z_p localization and projective image closure.

#include <array>
#include <optional>
#include <vector>

#include "ttpybo/cyclo.hpp"
#include "ttpybo/groups.hpp"
#include "ttpybo/matrix.hpp"
#include "ttpybo/ttp.hpp"

namespace ttpybo {

struct YBOCandidate {
  BaseAlgebra base;
  std::vector<CycNum> f;             // indexed by group element, all at one modulus
  std::optional<CycNum> normalizer;  // gamma; braid_check ignores it

  // Lifts every coefficient (and the normalizer) to their common modulus.
  static YBOCandidate make(BaseAlgebra base, std::vector<CycNum> f,
                           std::optional<CycNum> normalizer = std::nullopt);

  int modulus() const { return f.front().modulus(); }
  // gamma * f, or f without a normalizer.
  std::vector<CycNum> effective() const;
  bool operator==(const YBOCandidate& o) const;
};

struct VerificationReport {
  bool braid_ok = false;
  bool invertible = false;
  std::optional<CycNum> unitary_scalar;
  std::optional<long> order_of_r;
};

YBOCandidate identity_candidate(const BaseAlgebra& base);
// f(j) = q^{sign * j^2} on Z_p with q = zeta_p.
YBOCandidate gaussian_candidate(int p, int sign = 1);
// The twist 2xy on Z_p.
Bihomomorphism gaussian_twist(int p);

// r_slot = sum_g f(g) g_slot in alg; uses the effective coefficients when asked.
Element slot_copy(const AlgebraPtr& alg, const YBOCandidate& cand, int slot, bool normalized = false);
AlgebraPtr candidate_algebra(const YBOCandidate& cand, const Bihomomorphism& alpha, int strands);

bool braid_check(const YBOCandidate& cand, const Bihomomorphism& alpha);
bool invertible(const YBOCandidate& cand);
// c with r* r = c * 1 and c real positive; computed on gamma * f.
std::optional<CycNum> projective_unitary(const YBOCandidate& cand);
// Least k <= cap with r^k = 1 exactly (gamma * f); cap 0 skips the search.
std::optional<long> order_of_r(const YBOCandidate& cand, long cap);
VerificationReport verify(const YBOCandidate& cand, const Bihomomorphism& alpha, long order_cap = 0);

struct SymmetryAction {
  enum class Kind { scale, character, automorphism, galois, inversion, conjugation };
  Kind kind = Kind::scale;
  CycNum z;                  // scale
  std::vector<long> chi;     // character values as exponents of zeta_{chi_modulus}
  int chi_modulus = 1;
  GroupMap psi;              // automorphism, f -> f o psi^{-1}
  long s = 1;                // Galois exponent

  static SymmetryAction scale(CycNum z);
  static SymmetryAction character(std::vector<long> chi, int modulus);
  static SymmetryAction automorphism(GroupMap psi);
  static SymmetryAction galois(long s);
  static SymmetryAction inversion();
  static SymmetryAction conjugation();
};

const char* kind_name(SymmetryAction::Kind k);

struct SymmetryResult {
  YBOCandidate cand;
  Bihomomorphism alpha;
};

// Throws ValidationError for actions the base does not support.
SymmetryResult symmetry_apply(const YBOCandidate& cand, const Bihomomorphism& alpha,
                              const SymmetryAction& action);

// r_1 u_2 = q u_1^{-1} u_2 r_1 and r_2 u_1 = q^{-1} u_1 u_2 r_2 for the
// unnormalized Gaussian in A_3(Z_p), plus invertibility of r.
bool gaussian_conjugation_check(int p);

struct LocalizedYBO {
  CycMatrix r;             // p^2 x p^2
  bool ybe_ok = false;     // on the p^3-dimensional space
  bool relations_ok = false;
};
// U(e_i (x) e_j) = q^{j-i} e_{i+1} (x) e_{j+1}, R = sum_j f(j) U^j.
LocalizedYBO localize_zp(const YBOCandidate& cand, const Bihomomorphism& alpha);
CycMatrix local_generator(int p, int modulus);

struct ImageOrder {
  bool exceeded = false;
  long order = 0;  // elements found (equals cap + 1 when exceeded)
};
// Projective closure of {r_1, ..., r_{n-1}} in A_n, each element scaled so its
// first nonzero coefficient in monomial order is 1. Elements stand in for their
// regular representation matrices (the representation is faithful).
ImageOrder projective_image_order(const YBOCandidate& cand, const Bihomomorphism& alpha, int strands,
                                  long cap);

// S3 family: r = gamma (1 + a u + d uv + e uv^2), gamma = 1/(1+i), (a, d, e) = i (x, y, z).
YBOCandidate s3_candidate(const mpq_class& x, const mpq_class& y, const mpq_class& z);
// Rational points with xy + xz + yz = 0 and x^2 + y^2 + z^2 = 1.
std::vector<std::array<mpq_class, 3>> s3_variety_points(int count);
// The six generators of the solution ideal evaluated at (a, b, c, d, e).
std::vector<CycNum> s3_ideal_relations(const CycNum& a, const CycNum& b, const CycNum& c, const CycNum& d,
                                       const CycNum& e);

}  // namespace ttpybo
