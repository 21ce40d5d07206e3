#include "ttpybo/cyclo.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace ttpybo {

namespace detail {

struct FieldData {
  int modulus = 1;
  int phi = 1;
  std::vector<long> poly;               // Phi_M, constant term first, monic
  std::vector<std::vector<long>> red;   // red[k] = x^k mod Phi_M, k < M
  std::vector<int> units;               // units of Z/M in increasing order
};

namespace {

using Poly = std::vector<long>;

// Exact division of a by a monic b.
Poly divide_monic(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    long c = a[i];
    q[i - db] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return q;
}

std::unique_ptr<FieldData> build_field(int M) {
  std::map<int, Poly> cyc;
  for (int d = 1; d <= M; ++d) {
    if (M % d != 0) continue;
    Poly p(d + 1, 0);
    p[0] = -1;
    p[d] = 1;
    for (auto& [e, pe] : cyc)
      if (d % e == 0) p = divide_monic(p, pe);
    cyc.emplace(d, std::move(p));
  }
  auto fd = std::make_unique<FieldData>();
  fd->modulus = M;
  fd->poly = cyc.at(M);
  fd->phi = static_cast<int>(fd->poly.size()) - 1;
  const int phi = fd->phi;
  fd->red.assign(M, std::vector<long>(phi, 0));
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  for (int k = 0; k < M; ++k) {
    fd->red[k] = cur;
    // multiply by x and reduce the overflow with the monic relation
    long top = cur[phi - 1];
    for (int i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (int i = 0; i < phi; ++i) cur[i] -= top * fd->poly[i];
  }
  for (int s = 1; s <= M; ++s)
    if (std::gcd(s, M) == 1) fd->units.push_back(s % M);
  std::sort(fd->units.begin(), fd->units.end());
  return fd;
}

}  // namespace

const FieldData& field_data(int modulus) {
  if (modulus < 1) throw ArithmeticError("cyclotomic modulus must be positive");
  thread_local int last_m = 0;
  thread_local const FieldData* last = nullptr;
  if (modulus == last_m) return *last;
  static std::mutex mu;
  static std::map<int, std::unique_ptr<FieldData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(modulus);
  if (it == cache.end()) it = cache.emplace(modulus, build_field(modulus)).first;
  last_m = modulus;
  last = it->second.get();
  return *last;
}

}  // namespace detail

using detail::FieldData;

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

long gcd_long(long a, long b) { return std::gcd(a, b); }
long lcm_long(long a, long b) { return std::lcm(a, b); }

long mod_floor(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

const std::vector<long>& cyclotomic_polynomial(int modulus) {
  return detail::field_data(modulus).poly;
}

int compatible_modulus(int a, int b) {
  if (a == b) return a;
  if (b % a == 0) return b;
  if (a % b == 0) return a;
  throw ArithmeticError("incompatible cyclotomic moduli " + std::to_string(a) + " and " +
                        std::to_string(b));
}

namespace {

// acc += sum_j src[j] * red[(j * step + shift) mod M]
void accumulate_reduced(std::vector<mpz_class>& acc, const FieldData& fd,
                        const std::vector<mpz_class>& src, long step, long shift) {
  const long M = fd.modulus;
  for (std::size_t j = 0; j < src.size(); ++j) {
    if (sgn(src[j]) == 0) continue;
    long k = mod_floor(static_cast<long>(j) * step + shift, M);
    const auto& row = fd.red[k];
    for (int i = 0; i < fd.phi; ++i) {
      if (row[i] == 0) continue;
      if (row[i] == 1)
        acc[i] += src[j];
      else if (row[i] == -1)
        acc[i] -= src[j];
      else
        acc[i] += src[j] * row[i];
    }
  }
}

}  // namespace

CycNum::CycNum() : CycNum(1) {}

CycNum::CycNum(int modulus)
    : field_(&detail::field_data(modulus)), num_(field_->phi), den_(1) {}

CycNum::CycNum(int modulus, const mpq_class& value) : CycNum(modulus) {
  num_[0] = value.get_num();
  den_ = value.get_den();
}

CycNum::CycNum(int modulus, long value) : CycNum(modulus) { num_[0] = value; }

CycNum CycNum::root_of_unity(int modulus, long exponent) {
  CycNum r(modulus);
  const auto& row = r.field_->red[mod_floor(exponent, modulus)];
  for (int i = 0; i < r.field_->phi; ++i) r.num_[i] = row[i];
  return r;
}

CycNum CycNum::from_power_coeffs(int modulus, std::span<const mpq_class> coeffs) {
  CycNum r(modulus);
  mpz_class den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> src(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    src[j] = coeffs[j].get_num() * (den / coeffs[j].get_den());
  accumulate_reduced(r.num_, *r.field_, src, 1, 0);
  r.den_ = den;
  r.normalize();
  return r;
}

void CycNum::normalize() {
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    if (sgn(c) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (sgn(den_) < 0) g = -g;
  if (g != 1) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
  bool zero = std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return sgn(c) == 0; });
  if (zero) den_ = 1;
}

int CycNum::modulus() const { return field_->modulus; }
int CycNum::degree() const { return field_->phi; }

mpq_class CycNum::coeff(int i) const {
  mpq_class r(num_.at(i), den_);
  r.canonicalize();
  return r;
}

std::vector<mpq_class> CycNum::coeffs() const {
  std::vector<mpq_class> out;
  out.reserve(num_.size());
  for (int i = 0; i < degree(); ++i) out.push_back(coeff(i));
  return out;
}

bool CycNum::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const mpz_class& c) { return sgn(c) == 0; });
}

bool CycNum::is_one() const {
  if (den_ != 1 || num_[0] != 1) return false;
  return std::all_of(num_.begin() + 1, num_.end(), [](const mpz_class& c) { return sgn(c) == 0; });
}

std::optional<mpq_class> CycNum::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (sgn(num_[i]) != 0) return std::nullopt;
  return coeff(0);
}

std::optional<long> CycNum::root_exponent() const {
  if (is_zero()) return std::nullopt;
  for (long k = 0; k < modulus(); ++k)
    if (mul_root(-k).is_one()) return k;
  return std::nullopt;
}

std::optional<std::pair<mpq_class, long>> CycNum::as_scaled_root() const {
  if (is_zero()) return std::nullopt;
  // A scaled root c*z^k has exactly one nonzero coordinate only when z^k is in
  // the power basis; otherwise rotate back and test rationality.
  for (long k = 0; k < modulus(); ++k) {
    CycNum r = mul_root(-k);
    if (auto q = r.as_rational()) return std::make_pair(*q, k);
  }
  return std::nullopt;
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

namespace {

// Brings both operands to a common modulus in place of copies when needed.
struct Aligned {
  const CycNum* a;
  const CycNum* b;
  CycNum la, lb;
};

Aligned align(const CycNum& a, const CycNum& b) {
  Aligned al{&a, &b, {}, {}};
  if (a.modulus() == b.modulus()) return al;
  int m = compatible_modulus(a.modulus(), b.modulus());
  if (a.modulus() != m) {
    al.la = lift_modulus(a, m);
    al.a = &al.la;
  }
  if (b.modulus() != m) {
    al.lb = lift_modulus(b, m);
    al.b = &al.lb;
  }
  return al;
}

}  // namespace

CycNum& CycNum::operator+=(const CycNum& rhs) {
  if (modulus() != rhs.modulus()) {
    auto al = align(*this, rhs);
    CycNum a = *al.a;
    a += *al.b;
    return *this = a;
  }
  if (rhs.is_zero()) return *this;
  if (den_ == rhs.den_) {
    for (int i = 0; i < degree(); ++i) num_[i] += rhs.num_[i];
  } else {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), den_.get_mpz_t(), rhs.den_.get_mpz_t());
    mpz_class fa = l / den_, fb = l / rhs.den_;
    for (int i = 0; i < degree(); ++i) num_[i] = num_[i] * fa + rhs.num_[i] * fb;
    den_ = l;
  }
  normalize();
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& rhs) { return *this += -rhs; }

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.modulus() != b.modulus()) {
    auto al = align(a, b);
    return *al.a * *al.b;
  }
  CycNum r(a.modulus());
  if (a.is_zero() || b.is_zero()) return r;
  const int phi = a.degree();
  std::vector<mpz_class> prod(2 * phi - 1);
  for (int i = 0; i < phi; ++i) {
    if (sgn(a.num_[i]) == 0) continue;
    for (int j = 0; j < phi; ++j) {
      if (sgn(b.num_[j]) == 0) continue;
      mpz_addmul(prod[i + j].get_mpz_t(), a.num_[i].get_mpz_t(), b.num_[j].get_mpz_t());
    }
  }
  accumulate_reduced(r.num_, *r.field_, prod, 1, 0);
  r.den_ = a.den_ * b.den_;
  r.normalize();
  return r;
}

CycNum& CycNum::operator*=(const CycNum& rhs) { return *this = *this * rhs; }

CycNum& CycNum::operator/=(const CycNum& rhs) { return *this = *this * rhs.inverse(); }

CycNum CycNum::mul_root(long k) const {
  CycNum r(modulus());
  accumulate_reduced(r.num_, *field_, num_, 1, mod_floor(k, modulus()));
  r.den_ = den_;
  r.normalize();
  return r;
}

CycNum CycNum::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero in cyclotomic field");
  if (auto q = as_rational()) return CycNum(modulus(), mpq_class(1) / *q);
  // a^{-1} = (prod of nontrivial conjugates) / norm
  CycNum others(modulus(), 1L);
  for (int s : field_->units)
    if (s != 1) others *= galois(*this, s);
  auto norm = (*this * others).as_rational();
  if (!norm) throw ArithmeticError("internal: field norm is not rational");
  CycNum r = others;
  r.den_ *= norm->get_num();
  for (auto& c : r.num_) c *= norm->get_den();
  r.normalize();
  return r;
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  CycNum result(modulus(), 1L), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.modulus() != b.modulus()) {
    int m = static_cast<int>(lcm_long(a.modulus(), b.modulus()));
    return lift_modulus(a, m) == lift_modulus(b, m);
  }
  return a.den_ == b.den_ && a.num_ == b.num_;
}

std::strong_ordering CycNum::canonical_compare(const CycNum& other) const {
  if (auto c = modulus() <=> other.modulus(); c != 0) return c;
  for (int i = 0; i < degree(); ++i) {
    int c = cmp(num_[i] * other.den_, other.num_[i] * den_);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::size_t CycNum::hash() const {
  auto mix = [](std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  };
  auto zh = [](const mpz_class& z) {
    std::size_t v = mpz_getlimbn(z.get_mpz_t(), 0);
    return v ^ static_cast<std::size_t>(mpz_size(z.get_mpz_t()) * 31 + (sgn(z) < 0));
  };
  std::size_t h = static_cast<std::size_t>(modulus());
  h = mix(h, zh(den_));
  for (const auto& c : num_) h = mix(h, zh(c));
  return h;
}

std::string CycNum::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  const std::string z = "z" + std::to_string(modulus());
  bool first = true;
  for (int i = 0; i < degree(); ++i) {
    mpq_class c = coeff(i);
    if (sgn(c) == 0) continue;
    if (!first) os << (sgn(c) < 0 ? " - " : " + ");
    else if (sgn(c) < 0) os << "-";
    mpq_class ac = abs(c);
    if (i == 0) {
      os << ac.get_str();
    } else {
      if (ac != 1) os << ac.get_str() << "*";
      os << z;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op) {
  switch (op) {
    case CycOp::add: return a + b;
    case CycOp::sub: return a - b;
    case CycOp::mul: return a * b;
    case CycOp::div: return a / b;
  }
  throw ArithmeticError("unknown cyclotomic operation");
}

CycNum galois(const CycNum& a, long s) {
  const long M = a.modulus();
  if (std::gcd(mod_floor(s, M), M) != 1 && M > 1)
    throw ArithmeticError("Galois exponent " + std::to_string(s) + " not coprime to " +
                          std::to_string(M));
  CycNum r(a.modulus());
  accumulate_reduced(r.num_, *r.field_, a.num_, mod_floor(s, M), 0);
  r.den_ = a.den_;
  r.normalize();
  return r;
}

CycNum lift_modulus(const CycNum& a, int target) {
  if (target < 1 || target % a.modulus() != 0)
    throw ArithmeticError("cannot lift modulus " + std::to_string(a.modulus()) + " to " +
                          std::to_string(target));
  if (target == a.modulus()) return a;
  CycNum r(target);
  accumulate_reduced(r.num_, *r.field_, a.num_, target / a.modulus(), 0);
  r.den_ = a.den_;
  r.normalize();
  return r;
}

bool ComplexEnclosure::contains(const ComplexEnclosure& inner) const {
  Real dr = re - inner.re, di = im - inner.im;
  return sqrt(dr * dr + di * di) + inner.radius <= radius;
}

namespace {

const Real& unit_roundoff() {
  static const Real eps = Real("1e-95");
  return eps;
}

}  // namespace

ComplexEnclosure embed(const CycNum& a, int digits) {
  if (digits < 1 || digits > 90)
    throw ValidationError("embedding precision must be between 1 and 90 digits");
  ComplexEnclosure out{Real(0), Real(0), Real(0)};
  if (a.is_zero()) return out;
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  const Real den(a.denominator().get_str());
  Real mass = 0;
  for (int j = 0; j < a.degree(); ++j) {
    const mpz_class& c = a.numerators()[j];
    if (sgn(c) == 0) continue;
    Real cr(c.get_str());
    Real angle = two_pi * j / a.modulus();
    out.re += cr * cos(angle);
    out.im += cr * sin(angle);
    mass += abs(cr);
  }
  out.re /= den;
  out.im /= den;
  out.radius = (mass / den + 1) * unit_roundoff();
  return out;
}

ComplexEnclosure enclosure_product(const ComplexEnclosure& a, const ComplexEnclosure& b) {
  ComplexEnclosure out;
  out.re = a.re * b.re - a.im * b.im;
  out.im = a.re * b.im + a.im * b.re;
  Real na = sqrt(a.re * a.re + a.im * a.im);
  Real nb = sqrt(b.re * b.re + b.im * b.im);
  out.radius = na * b.radius + nb * a.radius + a.radius * b.radius +
               (na * nb + 1) * unit_roundoff();
  return out;
}

}  // namespace ttpybo
