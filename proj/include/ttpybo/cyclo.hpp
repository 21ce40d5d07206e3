#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_M).
//
// An element is stored as an integer numerator vector in the power basis
// 1, z, ..., z^{phi(M)-1} modulo the M-th cyclotomic polynomial, over one
// shared positive denominator. The representation is canonical (gcd of all
// numerators and the denominator is 1), so structural equality is field
// equality for a fixed modulus.

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttpybo/errors.hpp"

namespace ttpybo {

namespace detail {
struct FieldData;
const FieldData& field_data(int modulus);
}  // namespace detail

int euler_phi(int n);
long gcd_long(long a, long b);
long lcm_long(long a, long b);
long mod_floor(long a, long m);

// Integer coefficients of the M-th cyclotomic polynomial, constant term first.
const std::vector<long>& cyclotomic_polynomial(int modulus);

class CycNum {
 public:
  // Zero of Q = Q(zeta_1).
  CycNum();
  // Zero of Q(zeta_M).
  explicit CycNum(int modulus);
  CycNum(int modulus, const mpq_class& value);
  CycNum(int modulus, long value);

  static CycNum root_of_unity(int modulus, long exponent);
  // Reduces an arbitrary-length coefficient vector (in powers of zeta_M)
  // into canonical form.
  static CycNum from_power_coeffs(int modulus, std::span<const mpq_class> coeffs);

  int modulus() const;
  int degree() const;  // phi(M)

  mpq_class coeff(int i) const;
  std::vector<mpq_class> coeffs() const;
  const std::vector<mpz_class>& numerators() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  bool is_zero() const;
  bool is_one() const;
  std::optional<mpq_class> as_rational() const;
  // Some k with this == zeta_M^k, if any.
  std::optional<long> root_exponent() const;
  // (c, k) with this == c * zeta_M^k for rational c, if any.
  std::optional<std::pair<mpq_class, long>> as_scaled_root() const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& rhs);
  CycNum& operator-=(const CycNum& rhs);
  CycNum& operator*=(const CycNum& rhs);
  CycNum& operator/=(const CycNum& rhs);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }

  // Multiplication by zeta_M^k; cheaper than a general product.
  CycNum mul_root(long k) const;
  CycNum inverse() const;
  CycNum pow(long e) const;

  // Field equality; lifts to a common modulus when the moduli differ.
  friend bool operator==(const CycNum& a, const CycNum& b);

  // A fixed total order (modulus first, then coefficients) used only for
  // canonical sorting and orbit representatives.
  std::strong_ordering canonical_compare(const CycNum& other) const;
  std::size_t hash() const;

  std::string to_string() const;

 private:
  friend CycNum lift_modulus(const CycNum& a, int target);
  friend CycNum galois(const CycNum& a, long s);

  void normalize();
  const detail::FieldData* field_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

enum class CycOp { add, sub, mul, div };

// The four field operations with explicit modulus reconciliation: an operand
// whose modulus divides the other's is lifted; otherwise ArithmeticError.
CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op);

// zeta -> zeta^s; requires gcd(s, M) = 1. galois(a, -1) is complex conjugation.
CycNum galois(const CycNum& a, long s);
inline CycNum conj(const CycNum& a) { return galois(a, -1); }

// Re-expresses a in Q(zeta_target) through zeta_M = zeta_target^{target/M}.
CycNum lift_modulus(const CycNum& a, int target);

// The smaller of two moduli when one divides the other; otherwise throws.
int compatible_modulus(int a, int b);

// Fixed 100-digit working precision keeps embeddings free of global state.
using Real = boost::multiprecision::mpfr_float_100;

// Rigorous enclosure of a complex number: the true value lies in the closed
// disc of the given radius around (re, im).
struct ComplexEnclosure {
  Real re;
  Real im;
  Real radius;

  bool contains(const ComplexEnclosure& inner) const;
  double re_approx() const { return re.convert_to<double>(); }
  double im_approx() const { return im.convert_to<double>(); }
};

// Image of a under zeta_M -> exp(2 pi i / M). Evaluation runs at the fixed
// working precision; `digits` (1..90) is the precision the caller needs and
// is checked against the enclosure radius.
ComplexEnclosure embed(const CycNum& a, int digits);
// Enclosure of the product of two enclosures.
ComplexEnclosure enclosure_product(const ComplexEnclosure& a, const ComplexEnclosure& b);

struct CycNumHash {
  std::size_t operator()(const CycNum& c) const { return c.hash(); }
};

}  // namespace ttpybo
