#include "ttpybo/ybo.hpp"

#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "ttpybo/errors.hpp"

namespace ttpybo {

// ---------------------------------------------------------------- candidates

YBOCandidate YBOCandidate::make(BaseAlgebra base, std::vector<CycNum> f, std::optional<CycNum> normalizer) {
  if (static_cast<int>(f.size()) != base.group().order())
    throw ValidationError("coefficient function must cover every group element");
  long m = 1;
  for (const auto& c : f) m = lcm_long(m, c.modulus());
  if (normalizer) {
    if (normalizer->is_zero()) throw ValidationError("normalizer must be nonzero");
    m = lcm_long(m, normalizer->modulus());
  }
  for (auto& c : f) c = lift_modulus(c, static_cast<int>(m));
  if (normalizer) normalizer = lift_modulus(*normalizer, static_cast<int>(m));
  return YBOCandidate{std::move(base), std::move(f), std::move(normalizer)};
}

std::vector<CycNum> YBOCandidate::effective() const {
  if (!normalizer) return f;
  std::vector<CycNum> out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(c * *normalizer);
  return out;
}

bool YBOCandidate::operator==(const YBOCandidate& o) const {
  return base.group() == o.base.group() && f == o.f && normalizer == o.normalizer;
}

YBOCandidate identity_candidate(const BaseAlgebra& base) {
  std::vector<CycNum> f(base.group().order(), CycNum(1));
  f[0] = CycNum(1, 1L);
  return YBOCandidate::make(base, std::move(f));
}

YBOCandidate gaussian_candidate(int p, int sign) {
  std::vector<CycNum> f;
  for (long j = 0; j < p; ++j) f.push_back(CycNum::root_of_unity(p, sign * j * j));
  return YBOCandidate::make(BaseAlgebra(FiniteGroup::abelian({p})), std::move(f));
}

Bihomomorphism gaussian_twist(int p) {
  return bihom_from_matrix(FiniteGroup::abelian({p}), ModMatrix(p, {{2}}));
}

AlgebraPtr candidate_algebra(const YBOCandidate& cand, const Bihomomorphism& alpha, int strands) {
  return TTPAlgebra::create(strands, cand.base, alpha, cand.modulus());
}

Element slot_copy(const AlgebraPtr& alg, const YBOCandidate& cand, int slot, bool normalized) {
  auto coeffs = normalized ? cand.effective() : cand.f;
  Element r(alg);
  for (int g = 0; g < static_cast<int>(coeffs.size()); ++g)
    if (!coeffs[g].is_zero()) r.add_term(alg->single(g, slot), coeffs[g]);
  return r;
}

// ---------------------------------------------------------------- verification

bool braid_check(const YBOCandidate& cand, const Bihomomorphism& alpha) {
  auto alg = candidate_algebra(cand, alpha, 3);
  Element r1 = slot_copy(alg, cand, 1), r2 = slot_copy(alg, cand, 2);
  return r1 * r2 * r1 == r2 * r1 * r2;
}

namespace {

AlgebraPtr base_algebra(const YBOCandidate& cand) {
  return TTPAlgebra::create(2, cand.base, trivial_bihom(cand.base.group(), 1), cand.modulus());
}

}  // namespace

bool invertible(const YBOCandidate& cand) {
  auto alg = base_algebra(cand);
  return regular_rep(slot_copy(alg, cand, 1)).rank() == alg->dimension();
}

std::optional<CycNum> projective_unitary(const YBOCandidate& cand) {
  auto alg = base_algebra(cand);
  Element r = slot_copy(alg, cand, 1, true);
  auto c = (star(r) * r).as_scalar();
  if (!c || c->is_zero() || !(*c == conj(*c))) return std::nullopt;
  auto e = embed(*c, 30);
  if (e.re <= e.radius) return std::nullopt;
  return c;
}

std::optional<long> order_of_r(const YBOCandidate& cand, long cap) {
  if (cap <= 0) return std::nullopt;
  auto alg = base_algebra(cand);
  Element r = slot_copy(alg, cand, 1, true);
  Element power = r;
  for (long k = 1; k <= cap; ++k) {
    if (power == Element::one(alg)) return k;
    power = power * r;
  }
  return std::nullopt;
}

VerificationReport verify(const YBOCandidate& cand, const Bihomomorphism& alpha, long order_cap) {
  VerificationReport rep;
  rep.braid_ok = braid_check(cand, alpha);
  rep.invertible = invertible(cand);
  rep.unitary_scalar = projective_unitary(cand);
  rep.order_of_r = order_of_r(cand, order_cap);
  return rep;
}

// ---------------------------------------------------------------- symmetries

SymmetryAction SymmetryAction::scale(CycNum z) {
  SymmetryAction a;
  a.kind = Kind::scale;
  a.z = std::move(z);
  return a;
}

SymmetryAction SymmetryAction::character(std::vector<long> chi, int modulus) {
  SymmetryAction a;
  a.kind = Kind::character;
  a.chi = std::move(chi);
  a.chi_modulus = modulus;
  return a;
}

SymmetryAction SymmetryAction::automorphism(GroupMap psi) {
  SymmetryAction a;
  a.kind = Kind::automorphism;
  a.psi = std::move(psi);
  return a;
}

SymmetryAction SymmetryAction::galois(long s) {
  SymmetryAction a;
  a.kind = Kind::galois;
  a.s = s;
  return a;
}

SymmetryAction SymmetryAction::inversion() {
  SymmetryAction a;
  a.kind = Kind::inversion;
  return a;
}

SymmetryAction SymmetryAction::conjugation() {
  SymmetryAction a;
  a.kind = Kind::conjugation;
  return a;
}

const char* kind_name(SymmetryAction::Kind k) {
  switch (k) {
    case SymmetryAction::Kind::scale: return "scale";
    case SymmetryAction::Kind::character: return "character";
    case SymmetryAction::Kind::automorphism: return "automorphism";
    case SymmetryAction::Kind::galois: return "galois";
    case SymmetryAction::Kind::inversion: return "inversion";
    case SymmetryAction::Kind::conjugation: return "conjugation";
  }
  return "?";
}

namespace {

bool nu_antisymmetric(const BaseAlgebra& base) {
  const int n = base.group().order();
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (mod_floor(base.nu(g, h) + base.nu(h, g), base.nu_modulus()) != 0) return false;
  return true;
}

void check_preserving(const YBOCandidate& cand, const Bihomomorphism& alpha, const GroupMap& psi) {
  const auto& G = cand.base.group();
  const int n = G.order();
  if (static_cast<int>(psi.size()) != n) throw ValidationError("automorphism has wrong size");
  std::vector<bool> hit(n, false);
  for (int a = 0; a < n; ++a) {
    if (psi[a] < 0 || psi[a] >= n || hit[psi[a]]) throw ValidationError("map is not a bijection");
    hit[psi[a]] = true;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (psi[G.mul(a, b)] != G.mul(psi[a], psi[b]) || alpha(psi[a], psi[b]) != alpha(a, b) ||
          cand.base.nu(psi[a], psi[b]) != cand.base.nu(a, b))
        throw ValidationError("map is not an automorphism preserving the form and cocycle");
}

}  // namespace

SymmetryResult symmetry_apply(const YBOCandidate& cand, const Bihomomorphism& alpha, const SymmetryAction& action) {
  using K = SymmetryAction::Kind;
  const auto& G = cand.base.group();
  const int n = G.order();
  std::vector<CycNum> f = cand.f;
  switch (action.kind) {
    case K::scale: {
      if (action.z.is_zero()) throw ValidationError("scale must be nonzero");
      int m = static_cast<int>(lcm_long(cand.modulus(), action.z.modulus()));
      CycNum z = lift_modulus(action.z, m);
      for (auto& c : f) c = lift_modulus(c, m) * z;
      return {YBOCandidate::make(cand.base, std::move(f), cand.normalizer), alpha};
    }
    case K::character: {
      if (!is_character(G, action.chi, action.chi_modulus)) throw ValidationError("not a linear character");
      int m = static_cast<int>(lcm_long(cand.modulus(), action.chi_modulus));
      for (int g = 0; g < n; ++g)
        f[g] = lift_modulus(f[g], m) * CycNum::root_of_unity(m, action.chi[g] * (m / action.chi_modulus));
      return {YBOCandidate::make(cand.base, std::move(f), cand.normalizer), alpha};
    }
    case K::automorphism: {
      check_preserving(cand, alpha, action.psi);
      for (int g = 0; g < n; ++g) f[action.psi[g]] = cand.f[g];
      return {YBOCandidate::make(cand.base, std::move(f), cand.normalizer), alpha};
    }
    case K::galois: {
      int m = static_cast<int>(lcm_long(lcm_long(cand.modulus(), alpha.modulus()), cand.base.nu_modulus()));
      if (gcd_long(mod_floor(action.s, m), m) != 1)
        throw ValidationError("Galois exponent not coprime to the working modulus");
      for (auto& c : f) c = galois(lift_modulus(c, m), action.s);
      std::optional<CycNum> nz;
      if (cand.normalizer) nz = galois(lift_modulus(*cand.normalizer, m), action.s);
      return {YBOCandidate::make(cand.base.scaled_cocycle(action.s), std::move(f), nz), alpha.scaled(action.s)};
    }
    case K::inversion: {
      if (!G.is_abelian() || !cand.base.inversion_compatible())
        throw ValidationError("support inversion needs an abelian base with compatible cocycle");
      for (int g = 0; g < n; ++g) f[g] = cand.f[G.inv(g)];
      return {YBOCandidate::make(cand.base, std::move(f), cand.normalizer), alpha};
    }
    case K::conjugation: {
      if (!G.is_abelian() || !nu_antisymmetric(cand.base))
        throw ValidationError("coefficient conjugation needs an abelian base with antisymmetric cocycle");
      for (auto& c : f) c = conj(c);
      std::optional<CycNum> nz;
      if (cand.normalizer) nz = conj(*cand.normalizer);
      return {YBOCandidate::make(cand.base, std::move(f), nz), alpha};
    }
  }
  throw ValidationError("unknown symmetry action");
}

// ---------------------------------------------------------------- Gaussian structure

bool gaussian_conjugation_check(int p) {
  if (p < 3 || !is_prime(p)) throw ValidationError("p must be an odd prime");
  auto cand = gaussian_candidate(p);
  if (!invertible(cand)) return false;
  auto alg = candidate_algebra(cand, gaussian_twist(p), 3);
  Element r1 = slot_copy(alg, cand, 1), r2 = slot_copy(alg, cand, 2);
  Element u1 = generator(alg, 1, 1), u1inv = generator(alg, p - 1, 1), u2 = generator(alg, 1, 2);
  CycNum q = alg->q();
  bool first = r1 * u2 == (u1inv * u2 * r1).scaled(q);
  bool second = r2 * u1 == (u1 * u2 * r2).scaled(q.inverse());
  return first && second;
}

CycMatrix local_generator(int p, int modulus) {
  CycMatrix u(p * p, p * p, modulus);
  const int step = modulus / p;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      u.at(((i + 1) % p) * p + (j + 1) % p, i * p + j) = CycNum::root_of_unity(modulus, (j - i) * step);
  return u;
}

LocalizedYBO localize_zp(const YBOCandidate& cand, const Bihomomorphism& alpha) {
  const auto& G = cand.base.group();
  const int p = G.order();
  if (!G.is_abelian() || G.factors().size() != 1 || !is_prime(p) || p < 3 || cand.base.twisted())
    throw ValidationError("localization needs the base Z_p with p an odd prime");
  if (alpha.modulus() != p || mod_floor(alpha(1, 1) - 2, p) != 0)
    throw ValidationError("localization needs the twist 2xy");
  const int m = static_cast<int>(lcm_long(cand.modulus(), p));
  CycMatrix u = local_generator(p, m);
  CycMatrix id = CycMatrix::identity(p, m), id2 = CycMatrix::identity(p * p, m);

  LocalizedYBO out;
  out.r = CycMatrix(p * p, p * p, m);
  CycMatrix power = id2;
  for (int j = 0; j < p; ++j) {
    if (!cand.f[j].is_zero()) out.r = out.r + power.scaled(lift_modulus(cand.f[j], m));
    power = power * u;
  }
  bool cyclic = power == id2;

  CycMatrix r12 = kron(out.r, id), r23 = kron(id, out.r);
  out.ybe_ok = r12 * r23 * r12 == r23 * r12 * r23;

  CycMatrix u1 = kron(u, id), u2 = kron(id, u);
  CycNum q2 = CycNum::root_of_unity(m, 2 * (m / p));
  out.relations_ok = cyclic && u1 * u2 == (u2 * u1).scaled(q2);
  return out;
}

// ---------------------------------------------------------------- image closure

namespace {

std::string element_key(const Element& x) {
  std::ostringstream os;
  for (const auto& [code, c] : x.terms()) {
    os << code << ':';
    for (const auto& n : c.numerators()) os << n.get_str() << ',';
    os << '/' << c.denominator().get_str() << ';';
  }
  return os.str();
}

Element projective_canonical(const Element& x) {
  if (x.is_zero()) return x;
  return x.scaled(x.terms().begin()->second.inverse());
}

}  // namespace

ImageOrder projective_image_order(const YBOCandidate& cand, const Bihomomorphism& alpha, int strands, long cap) {
  if (strands < 2) throw ValidationError("need at least two strands");
  auto alg = candidate_algebra(cand, alpha, strands);
  std::vector<Element> gens;
  for (int i = 1; i <= alg->slots(); ++i) {
    Element r = slot_copy(alg, cand, i);
    if (r.is_zero()) throw ValidationError("candidate is zero");
    gens.push_back(projective_canonical(r));
  }
  std::unordered_set<std::string> seen;
  std::deque<Element> queue;
  Element one = Element::one(alg);
  seen.insert(element_key(one));
  queue.push_back(one);
  while (!queue.empty()) {
    Element cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Element next = projective_canonical(cur * g);
      if (seen.insert(element_key(next)).second) {
        if (static_cast<long>(seen.size()) > cap) return {true, static_cast<long>(seen.size())};
        queue.push_back(std::move(next));
      }
    }
  }
  return {false, static_cast<long>(seen.size())};
}

// ---------------------------------------------------------------- S3 family

YBOCandidate s3_candidate(const mpq_class& x, const mpq_class& y, const mpq_class& z) {
  const CycNum i = CycNum::root_of_unity(4, 1);
  std::vector<CycNum> f(6, CycNum(4));
  f[0] = CycNum(4, 1L);
  f[3] = i * CycNum(4, x);  // u
  f[4] = i * CycNum(4, y);  // uv
  f[5] = i * CycNum(4, z);  // uv^2
  CycNum gamma = (CycNum(4, 1L) + i).inverse();
  return YBOCandidate::make(BaseAlgebra(FiniteGroup::symmetric3()), std::move(f), gamma);
}

std::vector<std::array<mpq_class, 3>> s3_variety_points(int count) {
  std::vector<std::array<mpq_class, 3>> out;
  std::set<std::array<mpq_class, 3>> seen;
  auto push = [&](std::array<mpq_class, 3> p) {
    if (static_cast<int>(out.size()) < count && seen.insert(p).second) out.push_back(p);
  };
  for (int radius = 1; static_cast<int>(out.size()) < count; ++radius)
    for (int a = -radius; a <= radius; ++a)
      for (int b = -radius; b <= radius; ++b) {
        if (std::max(std::abs(a), std::abs(b)) != radius || a + b == 0) continue;
        mpq_class s = a + b;
        mpq_class t = 2 * s / (s * s + a * a + b * b);
        std::array<mpq_class, 3> p{1 - t * s, t * a, t * b};
        push(p);
        push({-p[0], -p[1], -p[2]});
      }
  return out;
}

std::vector<CycNum> s3_ideal_relations(const CycNum& a, const CycNum& b, const CycNum& c, const CycNum& d,
                                       const CycNum& e) {
  const int m = a.modulus();
  CycNum one(m, 1L), two(m, 2L);
  return {c,
          b,
          e * (a * a + d * d + e * e + one),
          a * d + a * e + d * e,
          a * a * a + a * a * e + two * a * e * e + d * e * e + e * e * e + a + e,
          CycNum(m) - a * a * e + a * e * e + d * d * d + two * d * e * e + d};
}

}  // namespace ttpybo
