#pragma once

// Bratteli diagrams of the towers A_n and C_n, the fusion ring of the gauged
// categories D, the tower End(Z_0^n) it generates, and their comparison.

#include <cstdint>
#include <string>
#include <vector>

#include "ttpybo/groups.hpp"
#include "ttpybo/ttp.hpp"

namespace ttpybo {

struct BratteliNode {
  std::string label;
  std::uint64_t dim = 0;
};

struct BratteliDiagram {
  // levels[k] holds level k + 1
  std::vector<std::vector<BratteliNode>> levels;
  // edges[k][i][j]: multiplicity from node i of levels[k] to node j of levels[k + 1]
  std::vector<std::vector<std::vector<std::uint64_t>>> edges;

  int depth() const { return static_cast<int>(levels.size()); }
  // dim(v) = sum over edges into v of multiplicity * dim(source), at every level.
  bool recursion_holds() const;
  std::uint64_t sum_of_squares(int level) const;  // level is 1-based
};

// By the order N of the base group (N = m^2 for Z_m x Z_m). N odd, N >= 3.
BratteliDiagram bratteli_A_order(long order, int depth);
BratteliDiagram bratteli_C_order(long order, int depth);
// G = Z_m x Z_m with a nondegenerate form.
BratteliDiagram bratteli_A(int m, int depth);
BratteliDiagram bratteli_C(int m, int depth);

std::string to_dot(const BratteliDiagram& d, const std::string& name = "bratteli");

// a + b sqrt(m)
struct QuadDim {
  long rational = 0;
  long root = 0;
  bool operator==(const QuadDim&) const = default;
};

struct FusionRing {
  std::vector<std::string> labels;
  std::vector<QuadDim> dims;
  long root_of = 1;  // the m in sqrt(m)
  std::vector<long> coeff;  // N^c_{ab} at (a * n + b) * n + c

  int size() const { return static_cast<int>(labels.size()); }
  int index(const std::string& label) const;  // throws ValidationError when absent
  long n(int a, int b, int c) const { return coeff[(static_cast<std::size_t>(a) * size() + b) * size() + c]; }
  std::vector<long> fuse(int a, int b) const;
  long dim_squared(int a) const;

  bool commutative() const;
  bool associative() const;
  bool has_unit(int unit) const;
  bool dimension_homomorphism() const;
};

// D over the abelian group A (odd order): X+, X-, Y_a for a in a transversal of
// (A \ 0)/+-, Z0, Z1.
FusionRing fusion_ring_D(const FiniteGroup& A);
// A = Z_p x Z_p when m = p^2 for a prime p, Z_m otherwise.
FusionRing fusion_ring_D(int m);
FiniteGroup default_fusion_group(int m);

// Level n lists the simple summands of object^n, node dim = multiplicity.
BratteliDiagram fusion_bratteli(const FusionRing& ring, int object, int depth);

// The algebra whose C_n tower is compared: Z_p with 2xy, or Z_p x Z_p with 2I.
AlgebraPtr reference_algebra(long order, int strands);

struct TowerComparison {
  bool isomorphic = false;
  int first_mismatch = 0;  // 1-based level, 0 when none
  std::string message;
  std::vector<std::uint64_t> end_dims;      // sum of multiplicity^2 on the fusion side
  std::vector<std::uint64_t> c_dims;        // sum of dim^2 on the C side
  std::vector<std::uint64_t> counted_dims;  // inversion_fixed_dim of the reference algebra
};

// Graded isomorphism of fusion_bratteli(D(A), Z0) and bratteli_C_order(|A|),
// plus the level dimensions against the counted fixed-subalgebra dimension.
TowerComparison compare_towers(long order, int depth);
// Graded isomorphism preserving node dims and edge multiplicities.
bool diagrams_isomorphic(const BratteliDiagram& a, const BratteliDiagram& b, int* first_mismatch = nullptr);

}  // namespace ttpybo
