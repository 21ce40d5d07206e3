#pragma once

// Finite groups, cocycle-twisted base algebras, bihomomorphisms, and the
// matrix and automorphism machinery for bilinear forms over Z_m.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ttpybo/errors.hpp"

namespace ttpybo {

// Elements are indexed 0..order-1 and the identity is always 0. For abelian
// groups Z_{m_1} x ... x Z_{m_k} the index is the mixed-radix number of the
// exponent vector with the first factor most significant.
class FiniteGroup {
 public:
  enum class Kind { abelian, presented };

  static FiniteGroup abelian(std::vector<int> factors);
  // Validates the group axioms. labels may be empty.
  static FiniteGroup presented(std::vector<std::vector<int>> table,
                               std::vector<std::string> labels = {});
  // S_3 as u^a v^b with u^2 = v^3 = 1 and u v = v^2 u; index a*3 + b.
  static FiniteGroup symmetric3();

  Kind kind() const { return kind_; }
  bool is_abelian() const { return commutative_; }
  int order() const { return order_; }
  int exponent() const { return exponent_; }
  const std::vector<int>& factors() const { return factors_; }

  int mul(int a, int b) const { return table_[a * order_ + b]; }
  int inv(int a) const { return inverse_[a]; }
  int element_order(int a) const { return elem_order_[a]; }
  int pow(int a, long e) const;

  // Abelian groups only.
  std::vector<int> exponents(int idx) const;
  int index_of(const std::vector<int>& exps) const;

  std::string label(int idx) const;
  // A small generating set chosen greedily in index order.
  const std::vector<int>& generators() const { return generators_; }
  // Elements of the commutator subgroup.
  std::vector<int> commutator_subgroup() const;

  bool operator==(const FiniteGroup& o) const { return table_ == o.table_; }

 private:
  FiniteGroup() = default;
  void finish();

  Kind kind_ = Kind::abelian;
  bool commutative_ = true;
  int order_ = 1;
  int exponent_ = 1;
  std::vector<int> factors_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> elem_order_;
  std::vector<int> generators_;
  std::vector<std::string> labels_;
};

// The twisted group algebra C^nu[G]: g h = zeta_{nu_modulus}^{nu(g,h)} (gh).
class BaseAlgebra {
 public:
  explicit BaseAlgebra(FiniteGroup group);
  // Validates the normalized 2-cocycle identity.
  BaseAlgebra(FiniteGroup group, std::vector<int> nu, int nu_modulus);

  // Z_2 x Z_2 with the cocycle giving u^2 = v^2 = (uv)^2 = -1 and uv = -vu.
  static BaseAlgebra quaternion_base();

  const FiniteGroup& group() const { return group_; }
  int nu_modulus() const { return nu_modulus_; }
  int nu(int g, int h) const { return nu_[g * group_.order() + h]; }
  bool twisted() const { return twisted_; }
  // Commutative as an algebra: abelian group and symmetric cocycle.
  bool commutative() const;
  // nu(g^-1, h^-1) = nu(g, h), so g -> g^-1 extends to an automorphism.
  bool inversion_compatible() const;
  // The same group with the cocycle multiplied by s.
  BaseAlgebra scaled_cocycle(long s) const;

 private:
  FiniteGroup group_;
  std::vector<int> nu_;
  int nu_modulus_ = 1;
  bool twisted_ = false;
};

// A bilinear form over Z_m as a dense integer matrix.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(int rows, int cols, int modulus);
  ModMatrix(int modulus, std::vector<std::vector<long>> rows);

  static ModMatrix identity(int n, int modulus);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int modulus() const { return modulus_; }
  long& at(int r, int c) { return data_[r * cols_ + c]; }
  long at(int r, int c) const { return data_[r * cols_ + c]; }
  const std::vector<long>& data() const { return data_; }

  ModMatrix operator*(const ModMatrix& rhs) const;
  ModMatrix operator+(const ModMatrix& rhs) const;
  ModMatrix scaled(long c) const;
  ModMatrix transpose() const;
  long determinant() const;
  // Throws ArithmeticError when the determinant is not a unit.
  ModMatrix inverse() const;
  bool is_symmetric() const;
  bool is_skew() const;
  int rank() const;  // over Z_p; modulus must be prime

  std::vector<long> apply(const std::vector<long>& v) const;
  // Row-major base-m encoding; the lexicographic order of matrices.
  std::uint64_t encode() const;
  static ModMatrix decode(std::uint64_t code, int n, int modulus);

  bool operator==(const ModMatrix& o) const {
    return modulus_ == o.modulus_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator<(const ModMatrix& o) const { return data_ < o.data_; }
  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int modulus_ = 1;
  std::vector<long> data_;
};

// alpha: G x G -> Z_m, additive in each argument.
class Bihomomorphism {
 public:
  Bihomomorphism() = default;
  int modulus() const { return modulus_; }
  int operator()(int g, int h) const { return table_[g * order_ + h]; }
  const std::vector<int>& table() const { return table_; }
  const std::optional<ModMatrix>& matrix() const { return matrix_; }
  int group_order() const { return order_; }
  // The same form multiplied by s.
  Bihomomorphism scaled(long s) const;
  bool operator==(const Bihomomorphism& o) const {
    return modulus_ == o.modulus_ && table_ == o.table_;
  }

 private:
  friend Bihomomorphism validate_bihom(const FiniteGroup&, std::vector<int>, int);
  friend Bihomomorphism bihom_from_matrix(const FiniteGroup&, const ModMatrix&);
  int modulus_ = 1;
  int order_ = 1;
  std::vector<int> table_;
  std::optional<ModMatrix> matrix_;
};

// Checks additivity in both arguments (which forces factoring through the
// abelianization) and that m divides exp(G).
Bihomomorphism validate_bihom(const FiniteGroup& g, std::vector<int> table, int modulus);
// alpha(g, h) = g^T X h for an abelian group, modulus taken from X.
Bihomomorphism bihom_from_matrix(const FiniteGroup& g, const ModMatrix& x);
// The zero form.
Bihomomorphism trivial_bihom(const FiniteGroup& g, int modulus);

// alpha(g,h) = parity(g) parity(h) mod 2 on S_3.
Bihomomorphism s3_sign_form();

using GroupMap = std::vector<int>;

// Automorphisms psi of G with alpha(psi g, psi h) = alpha(g, h) and, when a
// base cocycle is given, nu(psi g, psi h) = nu(g, h). Sorted by image vector.
std::vector<GroupMap> aut_preserving(const FiniteGroup& g, const Bihomomorphism& alpha,
                                     const BaseAlgebra* base = nullptr);
std::vector<GroupMap> automorphisms(const FiniteGroup& g);

struct FormOrbit {
  ModMatrix representative;  // lexicographically minimal member
  std::uint64_t size = 0;
};

bool is_prime(long n);
long legendre(long a, long p);

// All invertible k x k matrices over Z_p, in encoding order.
std::vector<ModMatrix> general_linear(int k, int p);

// Orbits of k x k matrices over Z_p under X -> Psi^T X Psi, sorted by
// representative. Both walk a generating set of GL_k: the parallel version
// computes generator images concurrently and merges them with union-find, the
// serial one runs a breadth-first search.
std::vector<FormOrbit> form_orbits(int k, int p);
std::vector<FormOrbit> form_orbits_serial(int k, int p);
// The canonical minimum of X's orbit.
ModMatrix form_canonical(const ModMatrix& x, const std::vector<ModMatrix>& gl);

// Smith form over Z_m: U S V = D with U, V invertible and D diagonal.
struct SmithForm {
  ModMatrix u, d, v;
};
SmithForm smith_mod(const ModMatrix& s);

// For skew S invertible mod odd m: P with P^T S P = J, the standard
// symplectic form with blocks [[0,1],[-1,0]].
ModMatrix symplectic_basis(const ModMatrix& s);
ModMatrix standard_symplectic(int n, int modulus);

}  // namespace ttpybo
