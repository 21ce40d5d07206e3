#include "ttpybo/groups.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "ttpybo/cyclo.hpp"

namespace ttpybo {

// ---------------------------------------------------------------- groups

FiniteGroup FiniteGroup::abelian(std::vector<int> factors) {
  for (int f : factors)
    if (f < 1) throw ValidationError("abelian invariant factors must be positive");
  FiniteGroup g;
  g.kind_ = Kind::abelian;
  g.factors_ = std::move(factors);
  g.order_ = 1;
  for (int f : g.factors_) g.order_ *= f;
  if (g.order_ > 4096) throw ValidationError("group too large");
  const int n = g.order_;
  g.table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    auto ea = g.exponents(a);
    for (int b = 0; b < n; ++b) {
      auto eb = g.exponents(b);
      for (std::size_t i = 0; i < ea.size(); ++i) eb[i] = (ea[i] + eb[i]) % g.factors_[i];
      g.table_[a * n + b] = g.index_of(eb);
    }
  }
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::presented(std::vector<std::vector<int>> table,
                                   std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw ValidationError("empty multiplication table");
  FiniteGroup g;
  g.kind_ = Kind::presented;
  g.order_ = n;
  g.table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      throw ValidationError("multiplication table is not square");
    std::vector<char> seen(n, 0);
    for (int b = 0; b < n; ++b) {
      int c = table[a][b];
      if (c < 0 || c >= n) throw ValidationError("multiplication table entry out of range");
      if (seen[c]++) throw ValidationError("multiplication table row is not a permutation");
      g.table_[a * n + b] = c;
    }
  }
  for (int a = 0; a < n; ++a)
    if (g.mul(0, a) != a || g.mul(a, 0) != a)
      throw ValidationError("element 0 must be the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw ValidationError("multiplication table is not associative");
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw ValidationError("label count does not match group order");
  g.labels_ = std::move(labels);
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::symmetric3() {
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  std::vector<std::string> labels;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 3; ++b) {
      std::string s;
      if (a) s += "u";
      if (b) s += b == 1 ? "v" : "v^2";
      labels.push_back(s.empty() ? "e" : s);
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 3; ++d) {
          int vb = (c ? (3 - b) % 3 : b);
          t[a * 3 + b][c * 3 + d] = ((a + c) % 2) * 3 + (vb + d) % 3;
        }
    }
  return presented(std::move(t), std::move(labels));
}

void FiniteGroup::finish() {
  const int n = order_;
  inverse_.assign(n, -1);
  elem_order_.assign(n, 0);
  commutative_ = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (mul(a, b) == 0) inverse_[a] = b;
      if (mul(a, b) != mul(b, a)) commutative_ = false;
    }
  exponent_ = 1;
  for (int a = 0; a < n; ++a) {
    int k = 1, x = a;
    while (x != 0) {
      x = mul(x, a);
      ++k;
    }
    elem_order_[a] = k;
    exponent_ = static_cast<int>(lcm_long(exponent_, k));
  }
  // greedy generating set
  std::vector<char> in(n, 0);
  in[0] = 1;
  generators_.clear();
  for (int a = 1; a < n; ++a) {
    if (in[a]) continue;
    generators_.push_back(a);
    std::deque<int> q;
    std::fill(in.begin(), in.end(), 0);
    in[0] = 1;
    q.push_back(0);
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int s : generators_) {
        int y = mul(x, s);
        if (!in[y]) {
          in[y] = 1;
          q.push_back(y);
        }
      }
    }
  }
}

int FiniteGroup::pow(int a, long e) const {
  e = mod_floor(e, elem_order_[a]);
  int r = 0;
  for (long i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

std::vector<int> FiniteGroup::exponents(int idx) const {
  if (kind_ != Kind::abelian) throw ValidationError("exponent vectors need an abelian group");
  std::vector<int> e(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    e[i] = idx % factors_[i];
    idx /= factors_[i];
  }
  return e;
}

int FiniteGroup::index_of(const std::vector<int>& exps) const {
  if (kind_ != Kind::abelian) throw ValidationError("exponent vectors need an abelian group");
  if (exps.size() != factors_.size()) throw ValidationError("exponent vector has wrong length");
  int idx = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    idx = idx * factors_[i] + static_cast<int>(mod_floor(exps[i], factors_[i]));
  return idx;
}

std::string FiniteGroup::label(int idx) const {
  if (!labels_.empty()) return labels_[idx];
  if (kind_ == Kind::abelian) {
    auto e = exponents(idx);
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
  }
  return std::to_string(idx);
}

std::vector<int> FiniteGroup::commutator_subgroup() const {
  const int n = order_;
  std::vector<char> in(n, 0);
  in[0] = 1;
  std::vector<int> elems{0};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int c = mul(mul(a, b), mul(inv(a), inv(b)));
      if (!in[c]) {
        in[c] = 1;
        elems.push_back(c);
      }
    }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (int c : {mul(elems[i], elems[j]), mul(elems[j], elems[i])})
        if (!in[c]) {
          in[c] = 1;
          elems.push_back(c);
        }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// ---------------------------------------------------------------- base algebra

BaseAlgebra::BaseAlgebra(FiniteGroup group)
    : group_(std::move(group)),
      nu_(static_cast<std::size_t>(group_.order()) * group_.order(), 0) {}

BaseAlgebra::BaseAlgebra(FiniteGroup group, std::vector<int> cocycle, int nu_modulus)
    : group_(std::move(group)), nu_(std::move(cocycle)), nu_modulus_(nu_modulus) {
  const int n = group_.order();
  if (nu_modulus_ < 1) throw ValidationError("cocycle modulus must be positive");
  if (static_cast<int>(nu_.size()) != n * n) throw ValidationError("cocycle table has wrong size");
  for (auto& v : nu_) v = static_cast<int>(mod_floor(v, nu_modulus_));
  for (int g = 0; g < n; ++g)
    if (nu(0, g) != 0 || nu(g, 0) != 0) throw ValidationError("cocycle is not normalized");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        long lhs = nu(a, b) + nu(group_.mul(a, b), c);
        long rhs = nu(b, c) + nu(a, group_.mul(b, c));
        if (mod_floor(lhs - rhs, nu_modulus_) != 0)
          throw ValidationError("cocycle identity fails");
      }
  twisted_ = std::any_of(nu_.begin(), nu_.end(), [](int v) { return v != 0; });
}

BaseAlgebra BaseAlgebra::quaternion_base() {
  FiniteGroup g = FiniteGroup::abelian({2, 2});
  std::vector<int> nu(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto x = g.exponents(a), y = g.exponents(b);
      nu[a * 4 + b] = (x[0] * y[0] + x[1] * y[1] + x[1] * y[0]) % 2;
    }
  return BaseAlgebra(std::move(g), std::move(nu), 2);
}

bool BaseAlgebra::commutative() const {
  if (!group_.is_abelian()) return false;
  const int n = group_.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (nu(a, b) != nu(b, a)) return false;
  return true;
}

bool BaseAlgebra::inversion_compatible() const {
  if (!group_.is_abelian()) return false;
  const int n = group_.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (nu(group_.inv(a), group_.inv(b)) != nu(a, b)) return false;
  return true;
}

BaseAlgebra BaseAlgebra::scaled_cocycle(long s) const {
  if (!twisted_) return *this;
  std::vector<int> nu = nu_;
  for (auto& v : nu) v = static_cast<int>(mod_floor(v * s, nu_modulus_));
  return BaseAlgebra(group_, std::move(nu), nu_modulus_);
}

// ---------------------------------------------------------------- ModMatrix

ModMatrix::ModMatrix(int rows, int cols, int modulus)
    : rows_(rows), cols_(cols), modulus_(modulus), data_(static_cast<std::size_t>(rows) * cols, 0) {
  if (modulus < 1) throw ValidationError("matrix modulus must be positive");
}

ModMatrix::ModMatrix(int modulus, std::vector<std::vector<long>> rows)
    : ModMatrix(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()),
                modulus) {
  for (int r = 0; r < rows_; ++r) {
    if (static_cast<int>(rows[r].size()) != cols_) throw ValidationError("ragged matrix");
    for (int c = 0; c < cols_; ++c) at(r, c) = mod_floor(rows[r][c], modulus_);
  }
}

ModMatrix ModMatrix::identity(int n, int modulus) {
  ModMatrix m(n, n, modulus);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1 % modulus;
  return m;
}

ModMatrix ModMatrix::operator*(const ModMatrix& rhs) const {
  if (cols_ != rhs.rows_ || modulus_ != rhs.modulus_) throw ValidationError("matrix mismatch");
  ModMatrix out(rows_, rhs.cols_, modulus_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rhs.cols_; ++j) {
      long s = 0;
      for (int k = 0; k < cols_; ++k) s += at(i, k) * rhs.at(k, j);
      out.at(i, j) = s % modulus_;
    }
  return out;
}

ModMatrix ModMatrix::operator+(const ModMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || modulus_ != rhs.modulus_)
    throw ValidationError("matrix mismatch");
  ModMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + rhs.data_[i]) % modulus_;
  return out;
}

ModMatrix ModMatrix::scaled(long c) const {
  ModMatrix out = *this;
  for (auto& v : out.data_) v = mod_floor(v * c, modulus_);
  return out;
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix out(cols_, rows_, modulus_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

namespace {

long inv_mod(long a, long m) {
  mpz_class r, aa = mod_floor(a, m), mm = m;
  if (m == 1) return 0;
  if (!mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t()))
    throw ArithmeticError(std::to_string(a) + " is not a unit mod " + std::to_string(m));
  return r.get_si();
}

// g = x a + y b
long ext_gcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long x1, y1;
  long g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

}  // namespace

long ModMatrix::determinant() const {
  if (rows_ != cols_) throw ValidationError("determinant of a non-square matrix");
  // Euclidean row reduction, valid for any modulus.
  ModMatrix a = *this;
  long det = 1 % modulus_;
  const int n = rows_;
  for (int c = 0; c < n; ++c) {
    for (int r = c + 1; r < n; ++r) {
      while (a.at(r, c) != 0) {
        long q = a.at(c, c) / a.at(r, c);
        for (int j = c; j < n; ++j) {
          a.at(c, j) = mod_floor(a.at(c, j) - q * a.at(r, j), modulus_);
          std::swap(a.at(c, j), a.at(r, j));
        }
        det = mod_floor(-det, modulus_);
      }
    }
    det = det * a.at(c, c) % modulus_;
  }
  return det;
}

ModMatrix ModMatrix::inverse() const {
  if (rows_ != cols_) throw ValidationError("inverse of a non-square matrix");
  const int n = rows_;
  long det = determinant();
  if (std::gcd(det, static_cast<long>(modulus_)) != 1)
    throw ArithmeticError("matrix is not invertible mod " + std::to_string(modulus_));
  ModMatrix a = *this, inv = identity(n, modulus_);
  for (int c = 0; c < n; ++c) {
    // bring a unit to the pivot with gcd row operations
    for (int r = c + 1; r < n; ++r) {
      while (a.at(r, c) != 0) {
        long q = a.at(c, c) / a.at(r, c);
        for (int j = 0; j < n; ++j) {
          a.at(c, j) = mod_floor(a.at(c, j) - q * a.at(r, j), modulus_);
          inv.at(c, j) = mod_floor(inv.at(c, j) - q * inv.at(r, j), modulus_);
          std::swap(a.at(c, j), a.at(r, j));
          std::swap(inv.at(c, j), inv.at(r, j));
        }
      }
    }
    long pinv = inv_mod(a.at(c, c), modulus_);
    for (int j = 0; j < n; ++j) {
      a.at(c, j) = a.at(c, j) * pinv % modulus_;
      inv.at(c, j) = inv.at(c, j) * pinv % modulus_;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a.at(r, c) == 0) continue;
      long f = a.at(r, c);
      for (int j = 0; j < n; ++j) {
        a.at(r, j) = mod_floor(a.at(r, j) - f * a.at(c, j), modulus_);
        inv.at(r, j) = mod_floor(inv.at(r, j) - f * inv.at(c, j), modulus_);
      }
    }
  }
  return inv;
}

bool ModMatrix::is_symmetric() const { return rows_ == cols_ && *this == transpose(); }

bool ModMatrix::is_skew() const { return rows_ == cols_ && transpose() == scaled(-1); }

int ModMatrix::rank() const {
  if (!is_prime(modulus_)) throw ValidationError("rank needs a prime modulus");
  ModMatrix a = *this;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    int piv = rank;
    while (piv < rows_ && a.at(piv, c) == 0) ++piv;
    if (piv == rows_) continue;
    for (int j = 0; j < cols_; ++j) std::swap(a.at(piv, j), a.at(rank, j));
    long pinv = inv_mod(a.at(rank, c), modulus_);
    for (int r = rank + 1; r < rows_; ++r) {
      long f = a.at(r, c) * pinv % modulus_;
      for (int j = 0; j < cols_; ++j) a.at(r, j) = mod_floor(a.at(r, j) - f * a.at(rank, j), modulus_);
    }
    ++rank;
  }
  return rank;
}

std::vector<long> ModMatrix::apply(const std::vector<long>& v) const {
  std::vector<long> out(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    long s = 0;
    for (int j = 0; j < cols_; ++j) s += at(i, j) * v[j];
    out[i] = mod_floor(s, modulus_);
  }
  return out;
}

std::uint64_t ModMatrix::encode() const {
  std::uint64_t code = 0;
  for (long v : data_) code = code * modulus_ + static_cast<std::uint64_t>(v);
  return code;
}

ModMatrix ModMatrix::decode(std::uint64_t code, int n, int modulus) {
  ModMatrix m(n, n, modulus);
  for (int i = n * n; i-- > 0;) {
    m.data_[i] = static_cast<long>(code % modulus);
    code /= modulus;
  }
  return m;
}

std::string ModMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- bihomomorphisms

Bihomomorphism validate_bihom(const FiniteGroup& g, std::vector<int> table, int modulus) {
  const int n = g.order();
  if (modulus < 1) throw ValidationError("form modulus must be positive");
  if (static_cast<int>(table.size()) != n * n) throw ValidationError("form table has wrong size");
  if (g.exponent() % modulus != 0)
    throw ValidationError("form modulus " + std::to_string(modulus) +
                          " does not divide the group exponent " + std::to_string(g.exponent()));
  for (auto& v : table) v = static_cast<int>(mod_floor(v, modulus));
  auto at = [&](int a, int b) { return table[a * n + b]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if ((at(g.mul(a, b), c) - at(a, c) - at(b, c)) % modulus != 0)
          throw ValidationError("form is not additive in its first argument at (" + g.label(a) +
                                ", " + g.label(b) + "; " + g.label(c) + ")");
        if ((at(c, g.mul(a, b)) - at(c, a) - at(c, b)) % modulus != 0)
          throw ValidationError("form is not additive in its second argument at (" + g.label(c) +
                                "; " + g.label(a) + ", " + g.label(b) + ")");
      }
  if (!g.is_abelian()) {
    for (int k : g.commutator_subgroup())
      for (int h = 0; h < n; ++h)
        if (at(k, h) != 0 || at(h, k) != 0)
          throw ValidationError("form does not factor through the abelianization");
  }
  Bihomomorphism b;
  b.modulus_ = modulus;
  b.order_ = n;
  b.table_ = std::move(table);
  return b;
}

Bihomomorphism bihom_from_matrix(const FiniteGroup& g, const ModMatrix& x) {
  if (g.kind() != FiniteGroup::Kind::abelian) throw ValidationError("matrix forms need an abelian group");
  const int k = static_cast<int>(g.factors().size());
  if (x.rows() != k || x.cols() != k) throw ValidationError("form matrix size does not match group rank");
  const int n = g.order();
  std::vector<int> table(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    auto ea = g.exponents(a);
    for (int b = 0; b < n; ++b) {
      auto eb = g.exponents(b);
      long s = 0;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) s += ea[i] * x.at(i, j) * eb[j];
      table[a * n + b] = static_cast<int>(mod_floor(s, x.modulus()));
    }
  }
  Bihomomorphism b = validate_bihom(g, std::move(table), x.modulus());
  b.matrix_ = x;
  return b;
}

Bihomomorphism trivial_bihom(const FiniteGroup& g, int modulus) {
  return validate_bihom(g, std::vector<int>(static_cast<std::size_t>(g.order()) * g.order(), 0),
                        modulus);
}

Bihomomorphism s3_sign_form() {
  FiniteGroup g = FiniteGroup::symmetric3();
  std::vector<int> t(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t[a * 6 + b] = (a / 3) * (b / 3);
  return validate_bihom(g, std::move(t), 2);
}

Bihomomorphism Bihomomorphism::scaled(long s) const {
  Bihomomorphism b = *this;
  for (auto& v : b.table_) v = static_cast<int>(mod_floor(static_cast<long>(v) * s, modulus_));
  if (b.matrix_) b.matrix_ = b.matrix_->scaled(s);
  return b;
}

// ---------------------------------------------------------------- automorphisms

std::vector<GroupMap> automorphisms(const FiniteGroup& g) {
  const int n = g.order();
  const auto& gens = g.generators();
  std::vector<std::vector<int>> choices(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (int x = 1; x < n; ++x)
      if (g.element_order(x) == g.element_order(gens[i])) choices[i].push_back(x);

  std::vector<GroupMap> out;
  std::vector<int> pick(gens.size(), 0);
  std::vector<int> phi(n);
  std::vector<char> used(n);
  if (gens.empty()) return {GroupMap{0}};
  for (;;) {
    std::fill(phi.begin(), phi.end(), -1);
    phi[0] = 0;
    std::deque<int> q{0};
    bool ok = true;
    while (ok && !q.empty()) {
      int x = q.front();
      q.pop_front();
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        int y = g.mul(x, gens[i]);
        int img = g.mul(phi[x], choices[i][pick[i]]);
        if (phi[y] < 0) {
          phi[y] = img;
          q.push_back(y);
        } else if (phi[y] != img) {
          ok = false;
        }
      }
    }
    if (ok) {
      std::fill(used.begin(), used.end(), 0);
      for (int x = 0; x < n && ok; ++x) ok = phi[x] >= 0 && !used[phi[x]]++;
    }
    if (ok) out.push_back(phi);
    std::size_t i = 0;
    while (i < gens.size() && ++pick[i] == static_cast<int>(choices[i].size())) pick[i++] = 0;
    if (i == gens.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GroupMap> aut_preserving(const FiniteGroup& g, const Bihomomorphism& alpha,
                                     const BaseAlgebra* base) {
  const int n = g.order();
  std::vector<GroupMap> out;
  for (auto& phi : automorphisms(g)) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b) {
        ok = alpha(phi[a], phi[b]) == alpha(a, b);
        if (ok && base) ok = base->nu(phi[a], phi[b]) == base->nu(a, b);
      }
    if (ok) out.push_back(std::move(phi));
  }
  return out;
}

// ---------------------------------------------------------------- form orbits

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long legendre(long a, long p) {
  a = mod_floor(a, p);
  if (a == 0) return 0;
  long r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

std::vector<ModMatrix> general_linear(int k, int p) {
  if (!is_prime(p)) throw ValidationError(std::to_string(p) + " is not prime");
  std::uint64_t total = 1;
  for (int i = 0; i < k * k; ++i) total *= p;
  std::vector<ModMatrix> out;
  for (std::uint64_t c = 0; c < total; ++c) {
    ModMatrix m = ModMatrix::decode(c, k, p);
    if (m.determinant() != 0) out.push_back(std::move(m));
  }
  return out;
}

namespace {

// Psi^T X Psi for k x k matrices stored as flat arrays.
void congruence(const long* x, const long* psi, long* out, int k, int p) {
  long tmp[16];
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      long s = 0;
      for (int l = 0; l < k; ++l) s += x[i * k + l] * psi[l * k + j];
      tmp[i * k + j] = s % p;
    }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      long s = 0;
      for (int l = 0; l < k; ++l) s += psi[l * k + i] * tmp[l * k + j];
      out[i * k + j] = s % p;
    }
}

std::uint64_t encode_flat(const long* x, int n, int p) {
  std::uint64_t c = 0;
  for (int i = 0; i < n; ++i) c = c * p + static_cast<std::uint64_t>(x[i]);
  return c;
}

void check_orbit_args(int k, int p) {
  if (!is_prime(p) || p == 2) throw ValidationError("form orbits need an odd prime, got " + std::to_string(p));
  if (k < 1 || k > 3) throw ValidationError("form orbits support 1 <= k <= 3");
}

std::uint64_t power(int p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

}  // namespace

ModMatrix form_canonical(const ModMatrix& x, const std::vector<ModMatrix>& gl) {
  const int k = x.rows(), p = x.modulus();
  long out[16];
  std::uint64_t best = x.encode();
  for (const auto& psi : gl) {
    congruence(x.data().data(), psi.data().data(), out, k, p);
    best = std::min(best, encode_flat(out, k * k, p));
  }
  return ModMatrix::decode(best, k, p);
}

namespace {

// GL_k(Z_p) is generated by elementary transvections and one diagonal
// matrix carrying a primitive root.
std::vector<ModMatrix> gl_generators(int k, int p) {
  std::vector<ModMatrix> gens;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i != j) {
        ModMatrix e = ModMatrix::identity(k, p);
        e.at(i, j) = 1;
        gens.push_back(e);
      }
  long g = 2;
  while (true) {
    bool primitive = true;
    long x = 1;
    for (int e = 1; e < p - 1 && primitive; ++e) {
      x = x * g % p;
      primitive = x != 1;
    }
    if (primitive) break;
    ++g;
  }
  ModMatrix d = ModMatrix::identity(k, p);
  d.at(0, 0) = g;
  gens.push_back(d);
  return gens;
}

}  // namespace

std::vector<FormOrbit> form_orbits(int k, int p) {
  check_orbit_args(k, p);
  const auto gens = gl_generators(k, p);
  const std::uint64_t total = power(p, k * k);
  const std::size_t ng = gens.size();
  std::vector<std::uint64_t> image(total * ng);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(total); ++c) {
    ModMatrix x = ModMatrix::decode(static_cast<std::uint64_t>(c), k, p);
    long out[16];
    for (std::size_t g = 0; g < ng; ++g) {
      congruence(x.data().data(), gens[g].data().data(), out, k, p);
      image[static_cast<std::uint64_t>(c) * ng + g] = encode_flat(out, k * k, p);
    }
  }
  // union-find whose roots are always the smallest code of their class
  std::vector<std::uint64_t> parent(total);
  for (std::uint64_t c = 0; c < total; ++c) parent[c] = c;
  auto find = [&](std::uint64_t c) {
    while (parent[c] != c) c = parent[c] = parent[parent[c]];
    return c;
  };
  for (std::uint64_t c = 0; c < total; ++c)
    for (std::size_t g = 0; g < ng; ++g) {
      auto a = find(c), b = find(image[c * ng + g]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::uint64_t, std::uint64_t> sizes;
  for (std::uint64_t c = 0; c < total; ++c) ++sizes[find(c)];
  std::vector<FormOrbit> orbits;
  for (auto [rep, size] : sizes) orbits.push_back({ModMatrix::decode(rep, k, p), size});
  return orbits;
}

std::vector<FormOrbit> form_orbits_serial(int k, int p) {
  check_orbit_args(k, p);
  const auto gens = gl_generators(k, p);
  const std::uint64_t total = power(p, k * k);
  std::vector<char> seen(total, 0);
  std::vector<FormOrbit> orbits;
  long out[16];
  for (std::uint64_t c = 0; c < total; ++c) {
    if (seen[c]) continue;
    // every smaller code is already in an earlier orbit, so c is the minimum
    FormOrbit orb{ModMatrix::decode(c, k, p), 0};
    std::deque<std::uint64_t> q{c};
    seen[c] = 1;
    while (!q.empty()) {
      ModMatrix x = ModMatrix::decode(q.front(), k, p);
      q.pop_front();
      ++orb.size;
      for (const auto& psi : gens) {
        congruence(x.data().data(), psi.data().data(), out, k, p);
        std::uint64_t y = encode_flat(out, k * k, p);
        if (!seen[y]) {
          seen[y] = 1;
          q.push_back(y);
        }
      }
    }
    orbits.push_back(std::move(orb));
  }
  return orbits;
}

// ---------------------------------------------------------------- normal forms

SmithForm smith_mod(const ModMatrix& s) {
  const int n = s.rows(), m = s.modulus();
  if (s.cols() != n) throw ValidationError("Smith form needs a square matrix");
  ModMatrix a = s, u = ModMatrix::identity(n, m), v = ModMatrix::identity(n, m);
  auto row_op = [&](ModMatrix& x, int r1, int r2, long p, long q, long r, long t) {
    for (int j = 0; j < x.cols(); ++j) {
      long a1 = x.at(r1, j), a2 = x.at(r2, j);
      x.at(r1, j) = mod_floor(p * a1 + q * a2, m);
      x.at(r2, j) = mod_floor(r * a1 + t * a2, m);
    }
  };
  auto col_op = [&](ModMatrix& x, int c1, int c2, long p, long q, long r, long t) {
    for (int i = 0; i < x.rows(); ++i) {
      long a1 = x.at(i, c1), a2 = x.at(i, c2);
      x.at(i, c1) = mod_floor(p * a1 + q * a2, m);
      x.at(i, c2) = mod_floor(r * a1 + t * a2, m);
    }
  };
  for (int t = 0; t < n; ++t) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int r = t + 1; r < n; ++r) {
        long b = a.at(r, t);
        if (b == 0) continue;
        long pv = a.at(t, t);
        if (pv != 0 && b % pv == 0) {
          row_op(a, t, r, 1, 0, -b / pv, 1);
          row_op(u, t, r, 1, 0, -b / pv, 1);
          continue;
        }
        long x, y;
        long g = ext_gcd(pv, b, x, y);
        // [[x, y], [-b/g, pv/g]] has determinant 1
        row_op(a, t, r, x, y, -b / g, pv / g);
        row_op(u, t, r, x, y, -b / g, pv / g);
        changed = true;
      }
      for (int c = t + 1; c < n; ++c) {
        long b = a.at(t, c);
        if (b == 0) continue;
        long pv = a.at(t, t);
        if (pv != 0 && b % pv == 0) {
          col_op(a, t, c, 1, 0, -b / pv, 1);
          col_op(v, t, c, 1, 0, -b / pv, 1);
          continue;
        }
        long x, y;
        long g = ext_gcd(pv, b, x, y);
        col_op(a, t, c, x, y, -b / g, pv / g);
        col_op(v, t, c, x, y, -b / g, pv / g);
        changed = true;
      }
    }
  }
  return {u, a, v};
}

ModMatrix standard_symplectic(int n, int modulus) {
  if (n % 2) throw ValidationError("symplectic forms need even dimension");
  ModMatrix j(n, n, modulus);
  for (int i = 0; i < n; i += 2) {
    j.at(i, i + 1) = 1;
    j.at(i + 1, i) = mod_floor(-1, modulus);
  }
  return j;
}

ModMatrix symplectic_basis(const ModMatrix& s) {
  const int n = s.rows(), m = s.modulus();
  if (!s.is_skew()) throw ValidationError("symplectic basis needs a skew matrix");
  if (n % 2) throw ValidationError("skew form of odd dimension is degenerate");
  auto form = [&](const std::vector<long>& x, const std::vector<long>& y) {
    long r = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r += x[i] * s.at(i, j) % m * y[j];
    return mod_floor(r, m);
  };
  std::vector<std::vector<long>> w;
  for (int i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    w.push_back(e);
  }
  ModMatrix p(n, n, m);
  int col = 0;
  while (!w.empty()) {
    int bi = -1, bj = -1;
    for (int i = 0; i < static_cast<int>(w.size()) && bi < 0; ++i)
      for (int j = 0; j < static_cast<int>(w.size()); ++j)
        if (std::gcd(form(w[i], w[j]), static_cast<long>(m)) == 1) {
          bi = i;
          bj = j;
          break;
        }
    if (bi < 0) throw ArithmeticError("skew form has no unit pairing; it is degenerate mod " + std::to_string(m));
    std::vector<long> e = w[bi], f = w[bj];
    long c = inv_mod(form(e, f), m);
    for (auto& x : f) x = x * c % m;
    std::vector<std::vector<long>> rest;
    for (int i = 0; i < static_cast<int>(w.size()); ++i) {
      if (i == bi || i == bj) continue;
      auto x = w[i];
      long bf = form(x, f), be = form(x, e);
      for (int t = 0; t < n; ++t) x[t] = mod_floor(x[t] - bf * e[t] + be * f[t], m);
      rest.push_back(x);
    }
    w = std::move(rest);
    for (int t = 0; t < n; ++t) {
      p.at(t, col) = e[t];
      p.at(t, col + 1) = f[t];
    }
    col += 2;
  }
  return p;
}

}  // namespace ttpybo
