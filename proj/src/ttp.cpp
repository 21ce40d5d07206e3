#include "ttpybo/ttp.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>

namespace ttpybo {

TTPAlgebra::TTPAlgebra(int strands, BaseAlgebra base, Bihomomorphism alpha, int coeff_modulus)
    : strands_(strands), base_(std::move(base)), alpha_(std::move(alpha)), coeff_modulus_(coeff_modulus) {
  if (strands_ < 1) throw ValidationError("strand count must be at least 1");
  if (coeff_modulus_ < 1) throw ValidationError("coefficient modulus must be positive");
  if (alpha_.group_order() != group().order())
    throw ValidationError("form does not match the base group");
  modulus_ = static_cast<int>(
      lcm_long(lcm_long(alpha_.modulus(), base_.nu_modulus()), coeff_modulus_));
  twist_scale_ = modulus_ / alpha_.modulus();
  nu_scale_ = modulus_ / base_.nu_modulus();
  const int n = group().order();
  dimension_ = 1;
  place_.assign(slots() + 1, 1);
  for (int i = slots(); i >= 1; --i) {
    place_[i] = dimension_;
    if (dimension_ > (std::uint64_t{1} << 56) / n) throw ValidationError("algebra too large to index");
    dimension_ *= n;
  }
}

std::shared_ptr<const TTPAlgebra> TTPAlgebra::create(int strands, BaseAlgebra base,
                                                     Bihomomorphism alpha, int coeff_modulus) {
  return std::shared_ptr<const TTPAlgebra>(
      new TTPAlgebra(strands, std::move(base), std::move(alpha), coeff_modulus));
}

int TTPAlgebra::slot_element(MonoCode code, int slot) const {
  return static_cast<int>((code / place_[slot]) % group().order());
}

std::vector<int> TTPAlgebra::factors(MonoCode code) const {
  std::vector<int> f(slots());
  for (int i = 1; i <= slots(); ++i) f[i - 1] = slot_element(code, i);
  return f;
}

MonoCode TTPAlgebra::encode(const std::vector<int>& f) const {
  if (static_cast<int>(f.size()) != slots()) throw ValidationError("monomial has wrong slot count");
  MonoCode c = 0;
  for (int i = 1; i <= slots(); ++i) {
    if (f[i - 1] < 0 || f[i - 1] >= group().order()) throw ValidationError("group element out of range");
    c += place_[i] * static_cast<MonoCode>(f[i - 1]);
  }
  return c;
}

MonoCode TTPAlgebra::single(int g, int slot) const {
  if (slot < 1 || slot > slots())
    throw ValidationError("slot " + std::to_string(slot) + " out of range 1.." + std::to_string(slots()));
  if (g < 0 || g >= group().order()) throw ValidationError("group element out of range");
  return place_[slot] * static_cast<MonoCode>(g);
}

MonoProduct TTPAlgebra::mono_mul(MonoCode a, MonoCode b) const {
  const int s = slots();
  const auto& G = group();
  MonoCode code = 0;
  long e = 0;
  int next_a = s >= 1 ? slot_element(a, 1) : 0;
  for (int j = 1; j <= s; ++j) {
    int aj = next_a;
    int bj = slot_element(b, j);
    code += place_[j] * static_cast<MonoCode>(G.mul(aj, bj));
    e += cocycle_exponent(aj, bj);
    if (j < s) {
      next_a = slot_element(a, j + 1);
      // b_j travels left past a_{j+1}
      e -= twist_exponent(bj, next_a);
    }
  }
  return {code, mod_floor(e, modulus_)};
}

CycNum TTPAlgebra::q() const { return CycNum::root_of_unity(modulus_, twist_scale_); }

std::shared_ptr<const TTPAlgebra> TTPAlgebra::with_strands(int strands) const {
  return create(strands, base_, alpha_, coeff_modulus_);
}

std::shared_ptr<const TTPAlgebra> TTPAlgebra::galois_twin(long s) const {
  if (gcd_long(mod_floor(s, modulus_), modulus_) != 1 && modulus_ > 1)
    throw ArithmeticError("Galois exponent not coprime to the working modulus");
  return create(strands_, base_.scaled_cocycle(s), alpha_.scaled(s), coeff_modulus_);
}

std::string TTPAlgebra::monomial_label(MonoCode code) const {
  std::string out;
  for (int i = 1; i <= slots(); ++i) {
    int g = slot_element(code, i);
    if (g == 0) continue;
    if (!out.empty()) out += "*";
    out += group().label(g) + "_" + std::to_string(i);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------- Element

namespace {

bool same_algebra(const TTPAlgebra& a, const TTPAlgebra& b) {
  return &a == &b || (a.strands() == b.strands() && a.modulus() == b.modulus() &&
                      a.alpha() == b.alpha() && a.group() == b.group() &&
                      a.base().nu_modulus() == b.base().nu_modulus());
}

void require_same(const Element& a, const Element& b) {
  if (!same_algebra(*a.algebra(), *b.algebra()))
    throw ValidationError("elements belong to different algebras");
}

}  // namespace

Element Element::one(const AlgebraPtr& alg) { return scalar(alg, CycNum(alg->modulus(), 1L)); }

Element Element::scalar(const AlgebraPtr& alg, const CycNum& c) { return monomial(alg, 0, c); }

Element Element::monomial(const AlgebraPtr& alg, MonoCode code, const CycNum& c) {
  Element e(alg);
  e.add_term(code, c);
  return e;
}

std::optional<CycNum> Element::as_scalar() const {
  if (terms_.empty()) return CycNum(alg_->modulus());
  if (terms_.size() == 1 && terms_.begin()->first == 0) return terms_.begin()->second;
  return std::nullopt;
}

CycNum Element::coefficient(MonoCode code) const {
  auto it = terms_.find(code);
  return it == terms_.end() ? CycNum(alg_->modulus()) : it->second;
}

void Element::add_term(MonoCode code, const CycNum& c) {
  if (c.is_zero()) return;
  if (code >= alg_->dimension()) throw ValidationError("monomial code out of range");
  CycNum v = c.modulus() == alg_->modulus() ? c : lift_modulus(c, alg_->modulus());
  auto [it, inserted] = terms_.emplace(code, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o) {
  require_same(*this, o);
  for (const auto& [code, c] : o.terms_) add_term(code, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  require_same(*this, o);
  for (const auto& [code, c] : o.terms_) add_term(code, -c);
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  require_same(a, b);
  const TTPAlgebra& alg = *a.alg_;
  Element out(a.alg_);
  for (const auto& [ca, xa] : a.terms_)
    for (const auto& [cb, xb] : b.terms_) {
      MonoProduct p = alg.mono_mul(ca, cb);
      CycNum c = xa * xb;
      out.add_term(p.code, p.exponent ? c.mul_root(p.exponent) : c);
    }
  return out;
}

Element Element::scaled(const CycNum& c) const {
  Element out(alg_);
  if (c.is_zero()) return out;
  for (const auto& [code, x] : terms_) out.add_term(code, x * c);
  return out;
}

Element Element::pow(long e) const {
  if (e < 0) throw ValidationError("negative powers of algebra elements are not supported");
  Element result = one(alg_), base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool operator==(const Element& a, const Element& b) {
  if (!same_algebra(*a.alg_, *b.alg_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [code, c] : a.terms_) {
    if (it->first != code || !(it->second == c)) return false;
    ++it;
  }
  return true;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [code, c] : terms_) {
    if (!first) os << " + ";
    os << "(" << c.to_string() << ")";
    if (code != 0) os << "*" << alg_->monomial_label(code);
    first = false;
  }
  return os.str();
}

Element generator(const AlgebraPtr& alg, int g, int slot) {
  return Element::monomial(alg, alg->single(g, slot), CycNum(alg->modulus(), 1L));
}

Element star(const Element& x) {
  const TTPAlgebra& alg = *x.algebra();
  const auto& G = alg.group();
  Element out(x.algebra());
  for (const auto& [code, c] : x.terms()) {
    MonoCode cur = 0;
    long e = 0;
    for (int i = alg.slots(); i >= 1; --i) {
      int g = alg.slot_element(code, i);
      if (g == 0) continue;
      int gi = G.inv(g);
      // the algebra inverse of g is zeta^{-nu(g, g^-1)} g^-1
      MonoProduct p = alg.mono_mul(cur, alg.single(gi, i));
      cur = p.code;
      e += p.exponent - alg.cocycle_exponent(g, gi);
    }
    CycNum v = conj(c);
    out.add_term(cur, v.mul_root(mod_floor(e, alg.modulus())));
  }
  return out;
}

CycMatrix regular_rep(const Element& x) {
  const TTPAlgebra& alg = *x.algebra();
  if (alg.dimension() > 4096) throw ValidationError("regular representation too large");
  const std::size_t d = alg.dimension();
  CycMatrix m(d, d, alg.modulus());
  for (std::size_t j = 0; j < d; ++j)
    for (const auto& [code, c] : x.terms()) {
      MonoProduct p = alg.mono_mul(code, j);
      m.at(p.code, j) += p.exponent ? c.mul_root(p.exponent) : c;
    }
  return m;
}

// ---------------------------------------------------------------- center and inversion

std::vector<MonoCode> center_basis(const AlgebraPtr& alg) {
  const auto& G = alg->group();
  if (!G.is_abelian()) throw ValidationError("center computation needs an abelian base group");
  const int n = G.order(), s = alg->slots();
  const long M = alg->modulus();
  std::vector<MonoCode> out;
  if (s == 0) return {0};
  std::vector<int> m(s + 2, 0);  // m[0] and m[s+1] are identity padding
  // h_i m and m h_i differ by zeta^{d}; this is d for slot i.
  auto defect_ok = [&](int i) {
    for (int h = 1; h < n; ++h) {
      long left = -alg->twist_exponent(m[i - 1], h) + alg->cocycle_exponent(h, m[i]);
      long right = -alg->twist_exponent(h, m[i + 1]) + alg->cocycle_exponent(m[i], h);
      if (mod_floor(left - right, M) != 0) return false;
    }
    return true;
  };
  std::function<void(int)> dfs = [&](int slot) {
    if (slot > s) {
      if (defect_ok(s)) {
        std::vector<int> f(m.begin() + 1, m.begin() + 1 + s);
        out.push_back(alg->encode(f));
      }
      return;
    }
    for (int g = 0; g < n; ++g) {
      m[slot] = g;
      if (slot >= 2 && !defect_ok(slot - 1)) continue;
      dfs(slot + 1);
    }
    m[slot] = 0;
  };
  dfs(1);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

MonoCode inverted(const TTPAlgebra& alg, MonoCode code) {
  std::vector<int> f = alg.factors(code);
  for (auto& g : f) g = alg.group().inv(g);
  return alg.encode(f);
}

void require_inversion(const TTPAlgebra& alg) {
  if (!alg.base().inversion_compatible())
    throw ValidationError("inversion needs an abelian base with an inversion-invariant cocycle");
}

}  // namespace

std::uint64_t inversion_fixed_dim(const AlgebraPtr& alg) {
  const auto& G = alg->group();
  if (!G.is_abelian()) throw ValidationError("fixed-point dimension needs an abelian base group");
  if (G.order() % 2 == 0)
    throw ValidationError("fixed-point dimension is only supported for groups of odd order");
  require_inversion(*alg);
  std::uint64_t count = 0;
  for (MonoCode c = 0; c < alg->dimension(); ++c) {
    MonoCode ic = inverted(*alg, c);
    if (ic == c)
      ++count;  // inversion maps a monomial to its inverse word with scalar 1
    else if (c < ic)
      ++count;  // one binomial per 2-orbit
  }
  return count;
}

Element apply_inversion(const Element& x) {
  const TTPAlgebra& alg = *x.algebra();
  require_inversion(alg);
  Element out(x.algebra());
  for (const auto& [code, c] : x.terms()) out.add_term(inverted(alg, code), c);
  return out;
}

Element apply_group_automorphism(const Element& x, const GroupMap& psi) {
  const TTPAlgebra& alg = *x.algebra();
  const auto& G = alg.group();
  const int n = G.order();
  if (static_cast<int>(psi.size()) != n) throw ValidationError("automorphism has wrong size");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (psi[G.mul(a, b)] != G.mul(psi[a], psi[b]) || alg.alpha()(psi[a], psi[b]) != alg.alpha()(a, b) ||
          alg.base().nu(psi[a], psi[b]) != alg.base().nu(a, b))
        throw ValidationError("map is not an automorphism preserving the form and cocycle");
  Element out(x.algebra());
  for (const auto& [code, c] : x.terms()) {
    std::vector<int> f = alg.factors(code);
    for (auto& g : f) g = psi[g];
    out.add_term(alg.encode(f), c);
  }
  return out;
}

bool is_character(const FiniteGroup& g, const std::vector<long>& chi, int modulus) {
  const int n = g.order();
  if (static_cast<int>(chi.size()) != n) return false;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (mod_floor(chi[g.mul(a, b)] - chi[a] - chi[b], modulus) != 0) return false;
  return true;
}

std::vector<std::vector<long>> all_characters(const FiniteGroup& g, int modulus) {
  const auto& gens = g.generators();
  const int n = g.order();
  std::vector<std::vector<long>> out;
  std::vector<long> pick(gens.size(), 0);
  for (;;) {
    std::vector<long> chi(n, -1);
    chi[0] = 0;
    std::deque<int> q{0};
    bool ok = true;
    while (ok && !q.empty()) {
      int x = q.front();
      q.pop_front();
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        int y = g.mul(x, gens[i]);
        long v = mod_floor(chi[x] + pick[i], modulus);
        if (chi[y] < 0) {
          chi[y] = v;
          q.push_back(y);
        } else {
          ok = chi[y] == v;
        }
      }
    }
    if (ok && is_character(g, chi, modulus)) out.push_back(chi);
    std::size_t i = 0;
    while (i < gens.size() && ++pick[i] == modulus) pick[i++] = 0;
    if (i == gens.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Element apply_character(const Element& x, const std::vector<long>& chi) {
  const TTPAlgebra& alg = *x.algebra();
  if (!is_character(alg.group(), chi, alg.modulus()))
    throw ValidationError("map is not a character G -> Z_M");
  Element out(x.algebra());
  for (const auto& [code, c] : x.terms()) {
    long e = 0;
    for (int i = 1; i <= alg.slots(); ++i) e += chi[alg.slot_element(code, i)];
    out.add_term(code, c.mul_root(e));
  }
  return out;
}

Element apply_galois(const Element& x, long s) {
  auto twin = x.algebra()->galois_twin(s);
  Element out(twin);
  for (const auto& [code, c] : x.terms()) out.add_term(code, galois(c, s));
  return out;
}

// ---------------------------------------------------------------- central extension

long extension_cocycle(const FiniteGroup&, const Bihomomorphism& alpha, const std::vector<int>& a,
                       const std::vector<int>& b) {
  long c = 0;
  for (std::size_t i = 0; i + 1 < a.size(); ++i) c -= alpha(b[i], a[i + 1]);
  return mod_floor(c, alpha.modulus());
}

ExtElement central_extension_mul(const FiniteGroup& g, const Bihomomorphism& alpha,
                                 const ExtElement& x, const ExtElement& y) {
  if (x.g.size() != y.g.size()) throw ValidationError("extension elements have different lengths");
  ExtElement out;
  out.g.resize(x.g.size());
  for (std::size_t i = 0; i < x.g.size(); ++i) out.g[i] = g.mul(x.g[i], y.g[i]);
  out.z = mod_floor(x.z + y.z + extension_cocycle(g, alpha, x.g, y.g), alpha.modulus());
  return out;
}

Element extension_image(const AlgebraPtr& alg, const ExtElement& x) {
  if (alg->base().twisted()) throw ValidationError("extension map needs an untwisted base");
  CycNum c = alg->q().pow(x.z);
  return Element::monomial(alg, alg->encode(x.g), c);
}

// ---------------------------------------------------------------- form normalization

namespace {

ModMatrix power(const ModMatrix& a, int e) {
  ModMatrix r = ModMatrix::identity(a.rows(), a.modulus());
  for (int i = 0; i < e; ++i) r = r * a;
  return r;
}

}  // namespace

FormNormalization normalize_form(const ModMatrix& s, int slots) {
  const int m = s.modulus(), k = s.rows();
  if (m % 2 == 0) throw ValidationError("form normalization needs an odd modulus");
  if (s.cols() != k) throw ValidationError("form matrix must be square");
  if (slots < 1) throw ValidationError("need at least one slot");
  if (gcd_long(s.determinant(), m) != 1) throw ValidationError("form is degenerate mod " + std::to_string(m));
  FormNormalization nf;
  if (s.is_symmetric()) {
    nf.method = "symmetric";
    SmithForm sf = smith_mod(s);
    ModMatrix dinv(k, k, m);
    for (int i = 0; i < k; ++i) dinv.at(i, i) = sf.d.at(i, i);
    dinv = dinv.inverse();
    ModMatrix a = dinv * sf.u;  // a S v = I
    ModMatrix odd = a.transpose().inverse(), even = sf.v.inverse();
    for (int i = 1; i <= slots; ++i) nf.slot_maps.push_back(i % 2 ? odd : even);
  } else if (s.is_skew()) {
    if (s * s == ModMatrix::identity(k, m).scaled(-1)) {
      nf.method = "skew-square";
      for (int i = 1; i <= slots; ++i) nf.slot_maps.push_back(power(s, i - 1));
    } else {
      nf.method = "skew-symplectic";
      ModMatrix p = symplectic_basis(s);
      ModMatrix j = standard_symplectic(k, m), pinv = p.inverse();
      for (int i = 1; i <= slots; ++i) nf.slot_maps.push_back(power(j, i - 1) * pinv);
    }
  } else {
    throw ValidationError("form is neither symmetric nor skew-symmetric");
  }
  nf.verified = verify_normalization(s, nf);
  if (!nf.verified) throw VerificationFailure("form normalization failed its relation check");
  return nf;
}

bool verify_normalization(const ModMatrix& s, const FormNormalization& nf) {
  const int m = s.modulus(), k = s.rows();
  long total = 1;
  for (int i = 0; i < k; ++i) total *= m;
  auto vec = [&](long code) {
    std::vector<long> v(k);
    for (int i = k - 1; i >= 0; --i) {
      v[i] = code % m;
      code /= m;
    }
    return v;
  };
  auto dot = [&](const std::vector<long>& x, const std::vector<long>& y) {
    long r = 0;
    for (int i = 0; i < k; ++i) r += x[i] * y[i];
    return mod_floor(r, m);
  };
  for (const auto& mi : nf.slot_maps)
    if (gcd_long(mi.determinant(), m) != 1) return false;
  for (std::size_t i = 0; i + 1 < nf.slot_maps.size(); ++i)
    for (long cx = 0; cx < total; ++cx) {
      auto x = vec(cx);
      auto sx = s.transpose().apply(x);  // x^T S as a column
      auto mx = nf.slot_maps[i].apply(x);
      for (long cy = 0; cy < total; ++cy) {
        auto y = vec(cy);
        if (dot(mx, nf.slot_maps[i + 1].apply(y)) != dot(sx, y)) return false;
      }
    }
  return true;
}

}  // namespace ttpybo
