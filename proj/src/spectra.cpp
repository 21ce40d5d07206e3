#include "ttpybo/spectra.hpp"

#include <algorithm>

#include "ttpybo/errors.hpp"
#include "ttpybo/groups.hpp"

namespace ttpybo {

long EigenProfile::multiplicity_of(const CycNum& v) const {
  for (const auto& e : entries)
    if (e.value == v) return e.multiplicity;
  return 0;
}

namespace {

void require_odd_prime(int p) {
  if (p < 3 || !is_prime(p)) throw ValidationError("p must be an odd prime");
}

void sort_entries(std::vector<EigenEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const EigenEntry& a, const EigenEntry& b) {
    auto ea = a.value.root_exponent(), eb = b.value.root_exponent();
    if (ea && eb) return *ea < *eb;
    if (ea != eb) return ea.has_value();
    return a.value.canonical_compare(b.value) == std::strong_ordering::less;
  });
}

}  // namespace

CycNum gauss_sum(int p, long a, long s) {
  require_odd_prime(p);
  CycNum out(p);
  for (long j = 0; j < p; ++j) out += CycNum::root_of_unity(p, a * j * j + s * j);
  return out;
}

int profile_case(int p, int eps, long x) {
  require_odd_prime(p);
  if (eps != 1 && eps != -1) throw ValidationError("sign must be +1 or -1");
  if (mod_floor(x, p) == 0) throw ValidationError("x must be nonzero mod p");
  const int m1 = static_cast<int>(legendre(-1, p)), lx = static_cast<int>(legendre(x, p));
  struct Triple {
    int e, m, l;
  };
  static const Triple first[] = {{1, -1, 1}, {-1, -1, -1}, {1, 1, -1}, {-1, 1, -1}};
  static const Triple second[] = {{1, -1, -1}, {-1, -1, 1}, {1, 1, 1}, {-1, 1, 1}};
  for (const auto& t : first)
    if (t.e == eps && t.m == m1 && t.l == lx) return 1;
  for (const auto& t : second)
    if (t.e == eps && t.m == m1 && t.l == lx) return 2;
  throw ValidationError("unreachable sign class");
}

EigenProfile eigenvalue_profile(int p, int eps, long x) {
  const int c = profile_case(p, eps, x);
  EigenProfile prof;
  prof.entries.push_back({CycNum::root_of_unity(p, 0), c == 1 ? 1L : 2L * p - 1});
  for (long j = 1; j < p; ++j) prof.entries.push_back({CycNum::root_of_unity(p, j), c == 1 ? p + 1L : p - 1L});
  for (const auto& e : prof.entries) prof.total += e.multiplicity;
  return prof;
}

std::vector<CycNum> lambda_values(int p, int eps, long x) {
  require_odd_prime(p);
  std::vector<CycNum> out;
  for (long s = 0; s < p; ++s)
    for (long t = 0; t < p; ++t) out.push_back(gauss_sum(p, 1, s) * gauss_sum(p, eps * x, t));
  return out;
}

CycNum profile_normalizer(int p, int eps, long x) { return gauss_sum(p, 1, 0) * gauss_sum(p, eps * x, 0); }

EigenProfile spectrum_exact(const Element& x, const std::vector<CycNum>& candidates) {
  CycMatrix rep = regular_rep(x);
  const int m = rep.modulus();
  std::vector<CycNum> distinct;
  for (const auto& c0 : candidates) {
    CycNum c = lift_modulus(c0, static_cast<int>(lcm_long(c0.modulus(), m)));
    if (std::none_of(distinct.begin(), distinct.end(), [&](const CycNum& d) { return d == c; }))
      distinct.push_back(c);
  }
  std::vector<long> mult(distinct.size(), 0);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    const int mm = static_cast<int>(lcm_long(m, distinct[i].modulus()));
    CycMatrix shifted(rep.rows(), rep.cols(), mm);
    for (std::size_t r = 0; r < rep.rows(); ++r)
      for (std::size_t c = 0; c < rep.cols(); ++c) shifted.at(r, c) = lift_modulus(rep.at(r, c), mm);
    CycNum lam = lift_modulus(distinct[i], mm);
    for (std::size_t r = 0; r < rep.rows(); ++r) shifted.at(r, r) -= lam;
    mult[i] = static_cast<long>(shifted.nullity());
  }
  EigenProfile prof;
  for (std::size_t i = 0; i < distinct.size(); ++i)
    if (mult[i] > 0) {
      prof.entries.push_back({distinct[i], mult[i]});
      prof.total += mult[i];
    }
  if (prof.total != static_cast<long>(rep.rows()))
    throw VerificationFailure("eigenvalue candidates account for " + std::to_string(prof.total) + " of " +
                              std::to_string(rep.rows()) + " dimensions");
  sort_entries(prof.entries);
  return prof;
}

EigenProfile rescale_profile(const EigenProfile& prof, const CycNum& c) {
  if (c.is_zero()) throw ValidationError("cannot rescale by zero");
  CycNum inv = c.inverse();
  EigenProfile out;
  out.total = prof.total;
  for (const auto& e : prof.entries) {
    CycNum v = e.value * inv;
    auto it = std::find_if(out.entries.begin(), out.entries.end(), [&](const EigenEntry& o) { return o.value == v; });
    if (it == out.entries.end())
      out.entries.push_back({v, e.multiplicity});
    else
      it->multiplicity += e.multiplicity;
  }
  sort_entries(out.entries);
  return out;
}

bool same_profile(const EigenProfile& a, const EigenProfile& b) {
  if (a.total != b.total) return false;
  for (const auto& e : a.entries)
    if (b.multiplicity_of(e.value) != e.multiplicity) return false;
  for (const auto& e : b.entries)
    if (a.multiplicity_of(e.value) != e.multiplicity) return false;
  return true;
}

}  // namespace ttpybo
