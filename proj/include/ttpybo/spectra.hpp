#pragma once

// Gauss sums, the closed-form eigenvalue profiles of the factorized solutions
// on Z_p x Z_p, and an exact nullity-based spectral oracle.

#include <vector>

#include "ttpybo/cyclo.hpp"
#include "ttpybo/ttp.hpp"

namespace ttpybo {

struct EigenEntry {
  CycNum value;
  long multiplicity = 0;
};

struct EigenProfile {
  std::vector<EigenEntry> entries;  // ordered by root exponent when values are roots of unity
  long total = 0;

  long multiplicity_of(const CycNum& v) const;
};

// sum_{j=0}^{p-1} q^{a j^2 + s j}, q = zeta_p.
CycNum gauss_sum(int p, long a, long s);

// 1 or 2, from the sign and the Legendre symbols of -1 and x.
int profile_case(int p, int eps, long x);
// Normalized profile: p-th roots of unity with the multiplicities of the case.
EigenProfile eigenvalue_profile(int p, int eps, long x);

// lambda(s, t) = G(1, s) G(eps x, t) for all s, t (with repetition, s major).
std::vector<CycNum> lambda_values(int p, int eps, long x);
// G(1, 0) G(eps x, 0), the scalar dividing every lambda to a p-th root of unity.
CycNum profile_normalizer(int p, int eps, long x);

// Multiplicity of each candidate as an eigenvalue of x's left regular
// representation, by exact nullity. Throws VerificationFailure if the
// multiplicities do not add up to the dimension.
EigenProfile spectrum_exact(const Element& x, const std::vector<CycNum>& candidates);

// Every eigenvalue divided by c, merged and re-sorted.
EigenProfile rescale_profile(const EigenProfile& prof, const CycNum& c);
bool same_profile(const EigenProfile& a, const EigenProfile& b);

}  // namespace ttpybo
