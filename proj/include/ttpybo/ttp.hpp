#pragma once

// The iterated twisted tensor product A_n(G, tau) with tau = q^alpha.
//
// A_n has n-1 slots; slot i holds a copy of the base algebra and adjacent
// slots satisfy g_i h_{i+1} = q^{alpha(g,h)} h_{i+1} g_i. Basis monomials are
// written slot-ascending, g^(1)_1 g^(2)_2 ... g^(n-1)_{n-1}, and encoded as a
// base-|G| number with slot 1 most significant, so code order is the
// lexicographic order on factor sequences.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ttpybo/cyclo.hpp"
#include "ttpybo/groups.hpp"
#include "ttpybo/matrix.hpp"

namespace ttpybo {

using MonoCode = std::uint64_t;

struct MonoProduct {
  MonoCode code;
  long exponent;  // scalar is zeta_M^exponent
};

class TTPAlgebra {
 public:
  // coeff_modulus is folded into the working modulus M = lcm(m, nu modulus,
  // coeff_modulus) so that coefficients such as i coexist with q.
  static std::shared_ptr<const TTPAlgebra> create(int strands, BaseAlgebra base,
                                                  Bihomomorphism alpha, int coeff_modulus = 1);

  int strands() const { return strands_; }
  int slots() const { return strands_ - 1; }
  const BaseAlgebra& base() const { return base_; }
  const FiniteGroup& group() const { return base_.group(); }
  const Bihomomorphism& alpha() const { return alpha_; }
  int twist_modulus() const { return alpha_.modulus(); }
  int modulus() const { return modulus_; }
  std::uint64_t dimension() const { return dimension_; }

  // alpha and nu rescaled to exponents of zeta_M.
  long twist_exponent(int g, int h) const { return alpha_(g, h) * twist_scale_; }
  long cocycle_exponent(int g, int h) const { return base_.nu(g, h) * nu_scale_; }

  int slot_element(MonoCode code, int slot) const;  // slot is 1-based
  std::vector<int> factors(MonoCode code) const;
  MonoCode encode(const std::vector<int>& factors) const;
  MonoCode single(int g, int slot) const;

  MonoProduct mono_mul(MonoCode a, MonoCode b) const;

  CycNum q() const;

  // Same data with a different strand count or with q -> q^s.
  std::shared_ptr<const TTPAlgebra> with_strands(int strands) const;
  std::shared_ptr<const TTPAlgebra> galois_twin(long s) const;

  std::string monomial_label(MonoCode code) const;

 private:
  TTPAlgebra(int strands, BaseAlgebra base, Bihomomorphism alpha, int coeff_modulus);

  int strands_;
  BaseAlgebra base_;
  Bihomomorphism alpha_;
  int coeff_modulus_;
  int modulus_;
  long twist_scale_;
  long nu_scale_;
  std::uint64_t dimension_;
  std::vector<std::uint64_t> place_;  // |G|^(slots - i) for 1-based slot i
};

using AlgebraPtr = std::shared_ptr<const TTPAlgebra>;

// A sparse linear combination of monomials; zero coefficients are never stored.
class Element {
 public:
  explicit Element(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static Element one(const AlgebraPtr& alg);
  static Element scalar(const AlgebraPtr& alg, const CycNum& c);
  static Element monomial(const AlgebraPtr& alg, MonoCode code, const CycNum& c);

  const AlgebraPtr& algebra() const { return alg_; }
  const std::map<MonoCode, CycNum>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // c when the element is c * 1.
  std::optional<CycNum> as_scalar() const;
  CycNum coefficient(MonoCode code) const;

  void add_term(MonoCode code, const CycNum& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Element& a, const Element& b);
  Element scaled(const CycNum& c) const;
  Element pow(long e) const;

  friend bool operator==(const Element& a, const Element& b);

  std::string to_string() const;

 private:
  AlgebraPtr alg_;
  std::map<MonoCode, CycNum> terms_;
};

// g placed in slot i (1-based); the identity gives the unit.
Element generator(const AlgebraPtr& alg, int g, int slot);

// Conjugate-linear anti-automorphism with g_i^* = g_i^{-1}.
Element star(const Element& x);

// Matrix of left multiplication in the monomial basis (code order).
CycMatrix regular_rep(const Element& x);

// Monomials spanning the center; abelian base only.
std::vector<MonoCode> center_basis(const AlgebraPtr& alg);

// Dimension of the subalgebra fixed by g_i -> g_i^{-1}, counted as the number
// of inversion orbits on monomials. Abelian base of odd order only.
std::uint64_t inversion_fixed_dim(const AlgebraPtr& alg);

Element apply_inversion(const Element& x);
// psi must preserve alpha and nu.
Element apply_group_automorphism(const Element& x, const GroupMap& psi);
// g_i -> zeta_M^{chi[g]} g_i for a homomorphism chi: G -> Z_M.
Element apply_character(const Element& x, const std::vector<long>& chi);
// Coefficient-wise zeta -> zeta^s, landing in the algebra with alpha scaled by s.
Element apply_galois(const Element& x, long s);

bool is_character(const FiniteGroup& g, const std::vector<long>& chi, int modulus);
// All homomorphisms G -> Z_modulus (abelian G), in lexicographic order.
std::vector<std::vector<long>> all_characters(const FiniteGroup& g, int modulus);

// The central extension of G^k by Z_m with cocycle
// c(g, h) = -sum_i alpha(h_i, g_{i+1}).
struct ExtElement {
  long z = 0;
  std::vector<int> g;
  bool operator==(const ExtElement& o) const { return z == o.z && g == o.g; }
};
long extension_cocycle(const FiniteGroup& g, const Bihomomorphism& alpha,
                       const std::vector<int>& a, const std::vector<int>& b);
ExtElement central_extension_mul(const FiniteGroup& g, const Bihomomorphism& alpha,
                                 const ExtElement& x, const ExtElement& y);
// phi(z, g) = q^z g^(1)_1 ... g^(k)_k in A_{k+1}; needs an untwisted base.
Element extension_image(const AlgebraPtr& alg, const ExtElement& x);

// Slot-wise automorphisms M_i of Z_m^k with (M_i x)^T (M_{i+1} y) = x^T S y,
// so that g_i -> (M_i g)_i carries A_n(G, q^S) onto A_n(G, q^{x^T y}).
struct FormNormalization {
  std::string method;  // "symmetric", "skew-square" or "skew-symplectic"
  std::vector<ModMatrix> slot_maps;
  bool verified = false;
};
FormNormalization normalize_form(const ModMatrix& s, int slots);
// Exhaustive check over all generator pairs of adjacent slots.
bool verify_normalization(const ModMatrix& s, const FormNormalization& nf);

}  // namespace ttpybo
