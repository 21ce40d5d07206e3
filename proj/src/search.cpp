#include "ttpybo/search.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "ttpybo/errors.hpp"

namespace ttpybo {

Ansatz Ansatz::roots_of_unity(int m, bool with_zero) {
  Ansatz a;
  for (long k = 0; k < m; ++k) a.values.push_back(CycNum::root_of_unity(m, k));
  if (with_zero) a.values.push_back(CycNum(m));
  a.pinned[0] = CycNum(m, 1L);
  return a;
}

namespace {

std::vector<int> free_elements(const BaseAlgebra& base, const Ansatz& ansatz) {
  std::vector<int> out;
  for (int g = 0; g < base.group().order(); ++g)
    if (!ansatz.pinned.count(g)) out.push_back(g);
  return out;
}

std::string coefficient_key(const std::vector<CycNum>& f, int modulus) {
  std::ostringstream os;
  for (const auto& c0 : f) {
    CycNum c = lift_modulus(c0, modulus);
    for (const auto& n : c.numerators()) os << n.get_str() << ',';
    os << '/' << c.denominator().get_str() << ';';
  }
  return os.str();
}

}  // namespace

std::uint64_t sweep_size(const BaseAlgebra& base, const Ansatz& ansatz, std::uint64_t budget) {
  for (const auto& [g, v] : ansatz.pinned)
    if (g < 0 || g >= base.group().order()) throw ValidationError("pinned element outside the group");
  const std::size_t free = free_elements(base, ansatz).size();
  if (free > 0 && ansatz.values.empty()) throw ValidationError("ansatz has no values");
  const std::uint64_t v = ansatz.values.size();
  std::uint64_t total = 1;
  bool overflow = false;
  for (std::size_t i = 0; i < free; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / std::max<std::uint64_t>(v, 1)) {
      overflow = true;
      break;
    }
    total *= v;
  }
  if (overflow) throw BudgetExceeded(std::numeric_limits<std::uint64_t>::max(), budget);
  if (total > budget) throw BudgetExceeded(total, budget);
  return total;
}

YBOCandidate candidate_at(const BaseAlgebra& base, const Ansatz& ansatz, std::uint64_t index) {
  const int n = base.group().order();
  std::vector<CycNum> f(n);
  for (const auto& [g, v] : ansatz.pinned) f[g] = v;
  auto free = free_elements(base, ansatz);
  const std::uint64_t v = ansatz.values.size();
  for (std::size_t i = free.size(); i-- > 0;) {
    f[free[i]] = ansatz.values[index % v];
    index /= v;
  }
  return YBOCandidate::make(base, std::move(f));
}

bool coefficient_less(const std::vector<CycNum>& a, const std::vector<CycNum>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = a[i].canonical_compare(b[i]);
    if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
  }
  return a.size() < b.size();
}

// ---------------------------------------------------------------- braid kernel

namespace {

// The braid relation r1 r2 r1 = r2 r1 r2 with every coefficient written as
// s * zeta_M^k, s an integer after clearing one common denominator. Each triple
// (a, b, c) contributes s_a s_b s_c zeta^{k_a + k_b + k_c + e} to a fixed
// monomial of A_3 on each side; a side difference vanishes iff every
// monomial's polynomial in zeta reduces to zero mod Phi_M.
class BraidKernel {
 public:
  BraidKernel(const BaseAlgebra& base, const Bihomomorphism& alpha, const Ansatz& ansatz) {
    long coeff_mod = 1;
    for (const auto& v : ansatz.values) coeff_mod = lcm_long(coeff_mod, v.modulus());
    for (const auto& [g, v] : ansatz.pinned) coeff_mod = lcm_long(coeff_mod, v.modulus());
    alg_ = TTPAlgebra::create(3, base, alpha, static_cast<int>(coeff_mod));
    m_ = alg_->modulus();
    n_ = base.group().order();

    // value table: ansatz values first, then pinned values
    std::vector<CycNum> table = ansatz.values;
    for (const auto& [g, v] : ansatz.pinned) table.push_back(v);
    std::vector<std::pair<mpq_class, long>> roots;
    mpz_class den = 1;
    for (const auto& v0 : table) {
      CycNum v = lift_modulus(v0, m_);
      if (v.is_zero()) {
        roots.emplace_back(0, 0);
        continue;
      }
      auto sr = v.as_scaled_root();
      if (!sr) return;  // not expressible; the caller falls back to exact checks
      roots.push_back(*sr);
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), sr->first.get_den_mpz_t());
    }
    for (const auto& [r, k] : roots) {
      mpq_class t = r * den;
      mpz_class s = t.get_num();
      if (!s.fits_slong_p() || abs(s) > 1'000'000) return;
      scale_.push_back(s.get_si());
      root_.push_back(k);
    }
    ok_ = true;

    const int phi = euler_phi(m_);
    reduce_.assign(static_cast<std::size_t>(m_) * phi, 0);
    for (int k = 0; k < m_; ++k) {
      auto cs = CycNum::root_of_unity(m_, k).coeffs();
      for (int j = 0; j < phi; ++j) reduce_[k * phi + j] = cs[j].get_num().get_si();
    }
    phi_ = phi;

    triples_.reserve(static_cast<std::size_t>(n_) * n_ * n_);
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) {
          auto l1 = alg_->mono_mul(alg_->single(a, 1), alg_->single(b, 2));
          auto l2 = alg_->mono_mul(l1.code, alg_->single(c, 1));
          auto r1 = alg_->mono_mul(alg_->single(a, 2), alg_->single(b, 1));
          auto r2 = alg_->mono_mul(r1.code, alg_->single(c, 2));
          triples_.push_back({static_cast<int>(l2.code), static_cast<int>(mod_floor(l1.exponent + l2.exponent, m_)),
                              static_cast<int>(r2.code), static_cast<int>(mod_floor(r1.exponent + r2.exponent, m_))});
        }
  }

  bool ok() const { return ok_; }

  // slots[g] indexes the value table.
  bool braid(const std::vector<int>& slots, std::vector<long>& acc, std::vector<char>& touched,
             std::vector<int>& touched_list, std::vector<long>& red) const {
    const std::size_t targets = static_cast<std::size_t>(n_) * n_;
    if (acc.size() != targets * m_) {
      acc.assign(targets * m_, 0);
      touched.assign(targets, 0);
      red.assign(phi_, 0);
    }
    touched_list.clear();
    std::size_t t = 0;
    for (int a = 0; a < n_; ++a) {
      const long sa = scale_[slots[a]];
      if (sa == 0) {
        t += static_cast<std::size_t>(n_) * n_;
        continue;
      }
      for (int b = 0; b < n_; ++b) {
        const long sb = scale_[slots[b]];
        if (sb == 0) {
          t += n_;
          continue;
        }
        const long sab = sa * sb;
        const int kab = root_[slots[a]] + root_[slots[b]];
        for (int c = 0; c < n_; ++c, ++t) {
          const long sc = scale_[slots[c]];
          if (sc == 0) continue;
          const long coef = sab * sc;
          const int k = kab + root_[slots[c]];
          const auto& tr = triples_[t];
          add(acc, touched, touched_list, tr[0], (k + tr[1]) % m_, coef);
          add(acc, touched, touched_list, tr[2], (k + tr[3]) % m_, -coef);
        }
      }
    }
    bool zero = true;
    for (int target : touched_list) {
      long* row = &acc[static_cast<std::size_t>(target) * m_];
      if (zero) {
        std::fill(red.begin(), red.end(), 0);
        for (int k = 0; k < m_; ++k)
          if (row[k])
            for (int j = 0; j < phi_; ++j) red[j] += row[k] * reduce_[k * phi_ + j];
        for (int j = 0; j < phi_ && zero; ++j) zero = red[j] == 0;
      }
      std::fill(row, row + m_, 0);
      touched[target] = 0;
    }
    return zero;
  }

 private:
  void add(std::vector<long>& acc, std::vector<char>& touched, std::vector<int>& list, int target, int k,
           long v) const {
    if (!touched[target]) {
      touched[target] = 1;
      list.push_back(target);
    }
    acc[static_cast<std::size_t>(target) * m_ + k] += v;
  }

  AlgebraPtr alg_;
  int m_ = 1, n_ = 0, phi_ = 1;
  bool ok_ = false;
  std::vector<long> scale_;
  std::vector<int> root_;
  std::vector<long> reduce_;
  std::vector<std::array<int, 4>> triples_;
};

std::vector<std::uint64_t> visit_order(std::uint64_t total, const SearchOptions& opts) {
  std::vector<std::uint64_t> order;
  if (!opts.shuffle_seed) return order;
  order.resize(total);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(*opts.shuffle_seed);
  std::shuffle(order.begin(), order.end(), rng);
  return order;
}

SolutionSet finish(const BaseAlgebra& base, const Ansatz& ansatz, std::vector<std::uint64_t> hits,
                   std::uint64_t total, const SearchOptions& opts) {
  std::sort(hits.begin(), hits.end());
  SolutionSet out;
  out.candidates = total;
  for (auto idx : hits) {
    Solution s{candidate_at(base, ansatz, idx), {}};
    out.solutions.push_back(std::move(s));
  }
  for (auto& s : out.solutions) {
    s.report.braid_ok = true;
    s.report.invertible = true;
    s.report.unitary_scalar = projective_unitary(s.cand);
    s.report.order_of_r = order_of_r(s.cand, opts.order_cap);
  }
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const Solution& a, const Solution& b) { return coefficient_less(a.cand.f, b.cand.f); });
  for (std::size_t i = 0; i < out.solutions.size(); ++i) out.orbits.push_back({i, {i}});
  return out;
}

}  // namespace

SolutionSet enumerate(const BaseAlgebra& base, const Bihomomorphism& alpha, const Ansatz& ansatz,
                      const SearchOptions& opts) {
  const std::uint64_t total = sweep_size(base, ansatz, opts.budget);
  BraidKernel kernel(base, alpha, ansatz);
  const auto order = visit_order(total, opts);
  const auto free = free_elements(base, ansatz);
  const int n = base.group().order();
  const std::uint64_t nv = ansatz.values.size();
  std::vector<int> pinned_slot(n, -1);
  {
    int i = static_cast<int>(ansatz.values.size());
    for (const auto& [g, v] : ansatz.pinned) pinned_slot[g] = i++;
  }

  std::vector<std::uint64_t> hits;
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    std::vector<std::uint64_t> local;
    std::vector<long> acc, red;
    std::vector<char> touched;
    std::vector<int> touched_list;
    std::vector<int> slots(n);
#pragma omp for schedule(dynamic, 256)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(total); ++i) {
      std::uint64_t idx = order.empty() ? static_cast<std::uint64_t>(i) : order[i];
      bool braided;
      if (kernel.ok()) {
        for (int g = 0; g < n; ++g) slots[g] = pinned_slot[g];
        std::uint64_t rest = idx;
        for (std::size_t j = free.size(); j-- > 0;) {
          slots[free[j]] = static_cast<int>(rest % nv);
          rest /= nv;
        }
        braided = kernel.braid(slots, acc, touched, touched_list, red);
      } else {
        braided = braid_check(candidate_at(base, ansatz, idx), alpha);
      }
      if (!braided) continue;
      auto cand = candidate_at(base, ansatz, idx);
      if (opts.exact_recheck && kernel.ok() && !braid_check(cand, alpha))
        throw VerificationFailure("braid kernel and exact check disagree");
      if (invertible(cand)) local.push_back(idx);
    }
#pragma omp critical
    hits.insert(hits.end(), local.begin(), local.end());
  }
  return finish(base, ansatz, std::move(hits), total, opts);
}

SolutionSet enumerate_serial(const BaseAlgebra& base, const Bihomomorphism& alpha, const Ansatz& ansatz,
                             const SearchOptions& opts) {
  const std::uint64_t total = sweep_size(base, ansatz, opts.budget);
  const auto order = visit_order(total, opts);
  std::vector<std::uint64_t> hits;
  for (std::uint64_t i = 0; i < total; ++i) {
    std::uint64_t idx = order.empty() ? i : order[i];
    auto cand = candidate_at(base, ansatz, idx);
    if (braid_check(cand, alpha) && invertible(cand)) hits.push_back(idx);
  }
  return finish(base, ansatz, std::move(hits), total, opts);
}

// ---------------------------------------------------------------- symmetry orbits

YBOCandidate projective_normal(const YBOCandidate& cand) {
  for (const auto& c : cand.f)
    if (!c.is_zero()) {
      CycNum inv = c.inverse();
      std::vector<CycNum> f;
      for (const auto& x : cand.f) f.push_back(x * inv);
      return YBOCandidate::make(cand.base, std::move(f), cand.normalizer);
    }
  return cand;
}

namespace {

int working_modulus(const YBOCandidate& c, const Bihomomorphism& alpha) {
  return static_cast<int>(lcm_long(lcm_long(c.modulus(), alpha.modulus()), c.base.nu_modulus()));
}

}  // namespace

std::vector<SymmetryAction> symmetry_generators(const YBOCandidate& sample, const Bihomomorphism& alpha,
                                                const std::vector<SymmetryAction::Kind>& kinds) {
  using K = SymmetryAction::Kind;
  const auto& G = sample.base.group();
  const int m = working_modulus(sample, alpha);
  std::vector<SymmetryAction> gens;
  for (K kind : kinds) {
    switch (kind) {
      case K::scale:
        break;
      case K::character:
        if (!G.is_abelian()) {
          // brute force over maps to Z_m, small groups only
          const int n = G.order();
          if (n > 8) throw ValidationError("character enumeration needs an abelian or small base");
          std::vector<long> cur(n, 0);
          std::uint64_t combos = 1;
          for (int i = 1; i < n; ++i) combos *= m;
          for (std::uint64_t code = 0; code < combos; ++code) {
            std::uint64_t rest = code;
            for (int i = 1; i < n; ++i) {
              cur[i] = static_cast<long>(rest % m);
              rest /= m;
            }
            if (is_character(G, cur, m)) gens.push_back(SymmetryAction::character(cur, m));
          }
        } else {
          for (auto& chi : all_characters(G, m)) gens.push_back(SymmetryAction::character(chi, m));
        }
        break;
      case K::automorphism:
        for (auto& psi : aut_preserving(G, alpha, &sample.base)) gens.push_back(SymmetryAction::automorphism(psi));
        break;
      case K::galois: {
        const long fix = lcm_long(alpha.modulus(), sample.base.nu_modulus());
        for (long s = 1; s < std::max(m, 2); ++s)
          if (gcd_long(s, m) == 1 && mod_floor(s - 1, fix) == 0) gens.push_back(SymmetryAction::galois(s));
        break;
      }
      case K::inversion:
        if (!G.is_abelian() || !sample.base.inversion_compatible())
          throw ValidationError("support inversion is not available for this base");
        gens.push_back(SymmetryAction::inversion());
        break;
      case K::conjugation: {
        // probe the gate with the sample itself
        symmetry_apply(sample, alpha, SymmetryAction::conjugation());
        gens.push_back(SymmetryAction::conjugation());
        break;
      }
    }
  }
  return gens;
}

namespace {

bool has_scale(const std::vector<SymmetryAction::Kind>& kinds) {
  return std::find(kinds.begin(), kinds.end(), SymmetryAction::Kind::scale) != kinds.end();
}

}  // namespace

std::vector<YBOCandidate> orbit_of(const YBOCandidate& cand, const Bihomomorphism& alpha,
                                   const std::vector<SymmetryAction::Kind>& kinds) {
  const bool projective = has_scale(kinds);
  auto gens = symmetry_generators(cand, alpha, kinds);
  const int key_mod = working_modulus(cand, alpha);
  auto norm = [&](const YBOCandidate& c) { return projective ? projective_normal(c) : c; };
  std::vector<YBOCandidate> out;
  std::unordered_map<std::string, std::size_t> seen;
  std::deque<YBOCandidate> queue;
  auto start = norm(cand);
  seen.emplace(coefficient_key(start.f, key_mod), 0);
  out.push_back(start);
  queue.push_back(start);
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      auto img = norm(symmetry_apply(cur, alpha, g).cand);
      if (seen.emplace(coefficient_key(img.f, key_mod), out.size()).second) {
        out.push_back(img);
        queue.push_back(img);
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const YBOCandidate& a, const YBOCandidate& b) { return coefficient_less(a.f, b.f); });
  return out;
}

SolutionSet dedup_by_symmetry(const SolutionSet& sols, const Bihomomorphism& alpha,
                              const std::vector<SymmetryAction::Kind>& kinds) {
  SolutionSet out = sols;
  out.orbits.clear();
  out.actions_used.clear();
  for (auto k : kinds) out.actions_used.push_back(kind_name(k));
  if (sols.solutions.empty()) return out;

  const bool projective = has_scale(kinds);
  const auto& sample = sols.solutions.front().cand;
  auto gens = symmetry_generators(sample, alpha, kinds);
  const int key_mod = working_modulus(sample, alpha);
  auto norm = [&](const YBOCandidate& c) { return projective ? projective_normal(c) : c; };

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < sols.solutions.size(); ++i)
    index.emplace(coefficient_key(norm(sols.solutions[i].cand).f, key_mod), i);

  std::vector<bool> done(sols.solutions.size(), false);
  for (std::size_t i = 0; i < sols.solutions.size(); ++i) {
    if (done[i]) continue;
    Orbit orbit;
    std::deque<std::size_t> queue{i};
    done[i] = true;
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      orbit.members.push_back(cur);
      for (const auto& g : gens) {
        auto img = norm(symmetry_apply(sols.solutions[cur].cand, alpha, g).cand);
        auto it = index.find(coefficient_key(img.f, key_mod));
        if (it == index.end() || done[it->second]) continue;
        done[it->second] = true;
        queue.push_back(it->second);
      }
    }
    std::sort(orbit.members.begin(), orbit.members.end());
    orbit.representative = orbit.members.front();
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

// ---------------------------------------------------------------- factorized solutions

const char* form_kind_name(FormKind k) {
  switch (k) {
    case FormKind::elliptic: return "A1";
    case FormKind::skew: return "A2";
    case FormKind::hyperbolic: return "A3";
  }
  return "?";
}

ModMatrix factorized_form(FormKind kind, int p, int x) {
  if (p < 3 || !is_prime(p)) throw ValidationError("p must be an odd prime");
  switch (kind) {
    case FormKind::elliptic:
      return ModMatrix(p, {{2, 0}, {0, 2}});
    case FormKind::skew:
      return ModMatrix(p, {{0, 2}, {-2, 0}});
    case FormKind::hyperbolic:
      if (legendre(x, p) != -1) throw ValidationError("x must be a non-square mod p");
      return ModMatrix(p, {{2, 0}, {0, 2L * x}});
  }
  throw ValidationError("unknown form kind");
}

YBOCandidate factorized_candidate(FormKind kind, int p, int eps, int x) {
  if (p < 3 || !is_prime(p)) throw ValidationError("p must be an odd prime");
  if (eps != 1 && eps != -1) throw ValidationError("sign must be +1 or -1");
  if (kind == FormKind::hyperbolic) {
    if (legendre(x, p) != -1) throw ValidationError("x must be a non-square mod p");
  } else if (x != 1) {
    throw ValidationError("x must be 1 for A1 and A2");
  }
  if (kind == FormKind::skew && eps != 1) throw ValidationError("A2 factorized solutions use sign +1");
  std::vector<CycNum> f;
  for (long j = 0; j < p; ++j)
    for (long k = 0; k < p; ++k) f.push_back(CycNum::root_of_unity(p, j * j + eps * x * k * k));
  return YBOCandidate::make(BaseAlgebra(FiniteGroup::abelian({p, p})), std::move(f));
}

bool nondegenerate(const YBOCandidate& cand) {
  const auto& G = cand.base.group();
  std::vector<bool> in(G.order(), false);
  in[0] = true;
  std::vector<int> members{0};
  std::vector<int> support;
  for (int g = 0; g < G.order(); ++g)
    if (!cand.f[g].is_zero()) support.push_back(g);
  for (std::size_t i = 0; i < members.size(); ++i)
    for (int s : support) {
      int h = G.mul(members[i], s);
      if (!in[h]) {
        in[h] = true;
        members.push_back(h);
      }
    }
  return static_cast<int>(members.size()) == G.order();
}

namespace {

// f(j+1) f(j-1) / f(j)^2 is a constant nontrivial p-th root of unity.
bool gaussian_type(const std::vector<CycNum>& f) {
  const int p = static_cast<int>(f.size());
  for (const auto& c : f)
    if (c.is_zero()) return false;
  std::optional<CycNum> ratio;
  for (int j = 0; j < p; ++j) {
    CycNum r = f[(j + 1) % p] * f[(j + p - 1) % p] / (f[j] * f[j]);
    if (ratio && !(*ratio == r)) return false;
    ratio = r;
  }
  return !ratio->is_one() && ratio->pow(p).is_one();
}

}  // namespace

bool factors_as_gaussian_product(const YBOCandidate& cand, const Bihomomorphism& alpha) {
  const auto& G = cand.base.group();
  if (!G.is_abelian() || G.factors().size() != 2 || G.factors()[0] != G.factors()[1] || cand.base.twisted())
    return false;
  const int p = G.factors()[0];
  const int m = alpha.modulus();
  for (const auto& psi : automorphisms(G)) {
    // psi scales alpha by a unit s; the Galois action by s^{-1} undoes the
    // scaling and keeps product structure and Gaussian type intact
    bool conformal = false;
    for (long s = 1; s < m && !conformal; ++s) {
      if (gcd_long(s, m) != 1) continue;
      conformal = true;
      for (int a = 0; a < G.order() && conformal; ++a)
        for (int b = 0; b < G.order() && conformal; ++b)
          conformal = mod_floor(alpha(psi[a], psi[b]) - s * alpha(a, b), m) == 0;
    }
    if (!conformal) continue;
    std::vector<CycNum> f(G.order());
    for (int g = 0; g < G.order(); ++g) f[psi[g]] = cand.f[g];
    auto at = [&](int j, int k) { return f[G.index_of({j, k})]; };
    if (at(0, 0).is_zero()) continue;
    bool product = true;
    for (int j = 0; j < p && product; ++j)
      for (int k = 0; k < p && product; ++k) product = at(j, k) * at(0, 0) == at(j, 0) * at(0, k);
    if (!product) continue;
    std::vector<CycNum> fu, fv;
    for (int j = 0; j < p; ++j) {
      fu.push_back(at(j, 0));
      fv.push_back(at(0, j));
    }
    if (gaussian_type(fu) && gaussian_type(fv)) return true;
  }
  return false;
}

namespace {

// Rewrites a candidate for alpha = x^T r y into coordinates where the form is
// target: with P^T r P = target, f'(g) = f(P g).
std::optional<YBOCandidate> transport(const YBOCandidate& cand, const ModMatrix& r, const ModMatrix& target,
                                      const std::vector<ModMatrix>& gl) {
  const auto& G = cand.base.group();
  for (const auto& pm : gl) {
    if (!(pm.transpose() * r * pm == target)) continue;
    std::vector<CycNum> f(G.order());
    for (int g = 0; g < G.order(); ++g) {
      auto e = G.exponents(g);
      auto img = pm.apply(std::vector<long>(e.begin(), e.end()));
      f[g] = cand.f[G.index_of(std::vector<int>(img.begin(), img.end()))];
    }
    return YBOCandidate::make(cand.base, std::move(f), cand.normalizer);
  }
  return std::nullopt;
}

}  // namespace

SurveyReport z3z3_survey(const SearchOptions& opts) {
  const int p = 3;
  auto G = FiniteGroup::abelian({p, p});
  BaseAlgebra base(G);
  auto gl = general_linear(2, p);
  struct Label {
    const char* name;
    ModMatrix form;
    ModMatrix canon;
  };
  std::vector<Label> labels;
  for (auto [kind, x] : {std::pair{FormKind::elliptic, 1}, {FormKind::skew, 1}, {FormKind::hyperbolic, 2}}) {
    auto form = factorized_form(kind, p, x);
    labels.push_back({form_kind_name(kind), form, form_canonical(form, gl)});
  }
  SurveyReport report;
  for (const auto& orbit : form_orbits(2, p)) {
    SurveyRow row;
    row.form = orbit.representative;
    const auto& x = row.form;
    bool zero = std::all_of(x.data().begin(), x.data().end(), [](long v) { return v == 0; });
    row.type = zero ? "zero" : x.is_symmetric() ? "symmetric" : x.is_skew() ? "skew" : "mixed";
    row.rank = x.rank();
    const Label* label = nullptr;
    for (const auto& l : labels)
      if (l.canon == form_canonical(x, gl)) label = &l;
    if (label) row.label = label->name;

    auto alpha = bihom_from_matrix(G, x);
    auto sols = enumerate(base, alpha, Ansatz::roots_of_unity(p), opts);
    row.solutions = sols.solutions.size();
    for (const auto& s : sols.solutions) {
      if (!nondegenerate(s.cand)) continue;
      ++row.nondegenerate;
      if (!s.report.unitary_scalar) continue;
      ++row.nondegenerate_unitary;
      bool factors;
      if (label) {
        auto moved = transport(s.cand, x, label->form, gl);
        factors = moved && factors_as_gaussian_product(*moved, bihom_from_matrix(G, label->form));
      } else {
        factors = factors_as_gaussian_product(s.cand, alpha);
      }
      if (factors) ++row.factorizable;
    }
    const std::string name = "form " + x.to_string();
    if (!row.label.empty() && row.nondegenerate_unitary == 0)
      report.discrepancies.push_back(name + " (" + row.label + "): no non-degenerate unitary solutions in mu_3");
    if (row.label.empty() && row.nondegenerate_unitary > 0)
      report.discrepancies.push_back(name + ": " + std::to_string(row.nondegenerate_unitary) +
                                     " non-degenerate unitary solutions outside A1-A3");
    if (row.factorizable < row.nondegenerate_unitary)
      report.discrepancies.push_back(name + ": " + std::to_string(row.nondegenerate_unitary - row.factorizable) +
                                     " non-degenerate unitary solutions do not factor as Gaussian products");
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace ttpybo
