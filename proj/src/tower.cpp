#include "ttpybo/tower.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "ttpybo/errors.hpp"

namespace ttpybo {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ValidationError("diagram dimensions overflow 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ValidationError("diagram dimensions overflow 64 bits");
  return r;
}

std::uint64_t upow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

void require_odd_order(long order, int depth) {
  if (order < 3 || order % 2 == 0) throw ValidationError("group order must be odd and at least 3");
  if (depth < 1) throw ValidationError("depth must be at least 1");
}

using EdgeMatrix = std::vector<std::vector<std::uint64_t>>;

EdgeMatrix full_edges(std::size_t a, std::size_t b) { return EdgeMatrix(a, std::vector<std::uint64_t>(b, 1)); }

}  // namespace

bool BratteliDiagram::recursion_holds() const {
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    const auto& e = edges[k];
    for (std::size_t j = 0; j < levels[k + 1].size(); ++j) {
      std::uint64_t s = 0;
      for (std::size_t i = 0; i < levels[k].size(); ++i) s = checked_add(s, checked_mul(e[i][j], levels[k][i].dim));
      if (s != levels[k + 1][j].dim) return false;
    }
  }
  return true;
}

std::uint64_t BratteliDiagram::sum_of_squares(int level) const {
  if (level < 1 || level > depth()) throw ValidationError("level out of range");
  std::uint64_t s = 0;
  for (const auto& v : levels[level - 1]) s = checked_add(s, checked_mul(v.dim, v.dim));
  return s;
}

BratteliDiagram bratteli_A_order(long order, int depth) {
  require_odd_order(order, depth);
  const auto N = static_cast<std::uint64_t>(order);
  BratteliDiagram d;
  for (int n = 1; n <= depth; ++n) {
    std::vector<BratteliNode> lvl;
    if (n % 2 == 1) {
      lvl.push_back({"M", upow(N, (n - 1) / 2)});
    } else {
      for (std::uint64_t g = 0; g < N; ++g) lvl.push_back({"M" + std::to_string(g), upow(N, (n - 2) / 2)});
    }
    if (!d.levels.empty()) d.edges.push_back(full_edges(d.levels.back().size(), lvl.size()));
    d.levels.push_back(std::move(lvl));
  }
  return d;
}

BratteliDiagram bratteli_C_order(long order, int depth) {
  require_odd_order(order, depth);
  const auto N = static_cast<std::uint64_t>(order);
  const std::uint64_t half = (N - 1) / 2;
  BratteliDiagram d;
  for (int n = 1; n <= depth; ++n) {
    std::vector<BratteliNode> lvl;
    if (n % 2 == 1) {
      const std::uint64_t t = upow(N, (n - 1) / 2);
      lvl.push_back({"P", (t + 1) / 2});
      if (t > 1) lvl.push_back({"N", (t - 1) / 2});
    } else {
      const std::uint64_t t = upow(N, (n - 2) / 2);
      lvl.push_back({"P", (t + 1) / 2});
      if (t > 1) lvl.push_back({"N", (t - 1) / 2});
      for (std::uint64_t j = 1; j <= half; ++j) lvl.push_back({"L" + std::to_string(j), t});
    }
    if (!d.levels.empty()) {
      const auto& prev = d.levels.back();
      EdgeMatrix e(prev.size(), std::vector<std::uint64_t>(lvl.size(), 0));
      for (std::size_t i = 0; i < prev.size(); ++i)
        for (std::size_t j = 0; j < lvl.size(); ++j) {
          const bool li = prev[i].label[0] == 'L', lj = lvl[j].label[0] == 'L';
          // P and N continue themselves; every L meets every P and N
          if (li != lj || (!li && prev[i].label == lvl[j].label)) e[i][j] = 1;
        }
      d.edges.push_back(std::move(e));
    }
    d.levels.push_back(std::move(lvl));
  }
  return d;
}

BratteliDiagram bratteli_A(int m, int depth) {
  if (m < 3 || m % 2 == 0) throw ValidationError("m must be odd and at least 3");
  return bratteli_A_order(static_cast<long>(m) * m, depth);
}

BratteliDiagram bratteli_C(int m, int depth) {
  if (m < 3 || m % 2 == 0) throw ValidationError("m must be odd and at least 3");
  return bratteli_C_order(static_cast<long>(m) * m, depth);
}

std::string to_dot(const BratteliDiagram& d, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  rankdir=TB;\n";
  for (std::size_t k = 0; k < d.levels.size(); ++k) {
    os << "  { rank=same;";
    for (std::size_t i = 0; i < d.levels[k].size(); ++i)
      os << " n" << k + 1 << '_' << i << " [label=\"" << d.levels[k][i].label << ':' << d.levels[k][i].dim
         << "\"];";
    os << " }\n";
  }
  for (std::size_t k = 0; k < d.edges.size(); ++k)
    for (std::size_t i = 0; i < d.edges[k].size(); ++i)
      for (std::size_t j = 0; j < d.edges[k][i].size(); ++j)
        if (d.edges[k][i][j] > 0)
          os << "  n" << k + 1 << '_' << i << " -> n" << k + 2 << '_' << j << " [label=\"" << d.edges[k][i][j]
             << "\"];\n";
  os << "}\n";
  return os.str();
}

int FusionRing::index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw ValidationError("unknown simple object " + label);
  return static_cast<int>(it - labels.begin());
}

std::vector<long> FusionRing::fuse(int a, int b) const {
  std::vector<long> out(size());
  for (int c = 0; c < size(); ++c) out[c] = n(a, b, c);
  return out;
}

long FusionRing::dim_squared(int a) const {
  const auto& d = dims[a];
  if (d.rational != 0 && d.root != 0) throw ValidationError("mixed dimension has no integral square");
  return d.rational * d.rational + d.root * d.root * root_of;
}

bool FusionRing::commutative() const {
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      for (int c = 0; c < size(); ++c)
        if (n(a, b, c) != n(b, a, c)) return false;
  return true;
}

bool FusionRing::associative() const {
  const int s = size();
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      for (int c = 0; c < s; ++c)
        for (int d = 0; d < s; ++d) {
          long left = 0, right = 0;
          for (int e = 0; e < s; ++e) {
            left += n(a, b, e) * n(e, c, d);
            right += n(b, c, e) * n(a, e, d);
          }
          if (left != right) return false;
        }
  return true;
}

bool FusionRing::has_unit(int unit) const {
  for (int a = 0; a < size(); ++a)
    for (int c = 0; c < size(); ++c)
      if (n(unit, a, c) != (a == c ? 1 : 0) || n(a, unit, c) != (a == c ? 1 : 0)) return false;
  return true;
}

bool FusionRing::dimension_homomorphism() const {
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b) {
      const auto &x = dims[a], &y = dims[b];
      QuadDim prod{x.rational * y.rational + x.root * y.root * root_of, x.rational * y.root + x.root * y.rational};
      QuadDim sum;
      for (int c = 0; c < size(); ++c) {
        sum.rational += n(a, b, c) * dims[c].rational;
        sum.root += n(a, b, c) * dims[c].root;
      }
      if (!(prod == sum)) return false;
    }
  return true;
}

FiniteGroup default_fusion_group(int m) {
  if (m < 3 || m % 2 == 0) throw ValidationError("m must be odd and at least 3");
  for (int p = 3; p * p <= m; p += 2)
    if (p * p == m && is_prime(p)) return FiniteGroup::abelian({p, p});
  return FiniteGroup::abelian({m});
}

FusionRing fusion_ring_D(int m) { return fusion_ring_D(default_fusion_group(m)); }

FusionRing fusion_ring_D(const FiniteGroup& A) {
  if (!A.is_abelian()) throw ValidationError("D needs an abelian group");
  const int m = A.order();
  if (m < 3 || m % 2 == 0) throw ValidationError("D needs a group of odd order at least 3");

  // transversal of (A \ 0)/+-: the smaller index of {a, -a}; exponent vectors
  // compare lexicographically in index order
  std::vector<int> rep_of(m, -1), reps;
  for (int a = 1; a < m; ++a) {
    rep_of[a] = std::min(a, A.inv(a));
    if (rep_of[a] == a) reps.push_back(a);
  }
  FusionRing R;
  R.root_of = m;
  R.labels = {"X+", "X-"};
  R.dims = {{1, 0}, {1, 0}};
  std::map<int, int> y_index;
  for (int a : reps) {
    std::string lbl = "Y(";
    auto ex = A.exponents(a);
    for (std::size_t i = 0; i < ex.size(); ++i) lbl += (i ? "," : "") + std::to_string(ex[i]);
    y_index[a] = R.size();
    R.labels.push_back(lbl + ")");
    R.dims.push_back({2, 0});
  }
  const int z0 = R.size();
  R.labels.push_back("Z0");
  R.labels.push_back("Z1");
  R.dims.push_back({0, 1});
  R.dims.push_back({0, 1});
  const int s = R.size();
  R.coeff.assign(static_cast<std::size_t>(s) * s * s, 0);
  auto add = [&](int a, int b, int c) { ++R.coeff[(static_cast<std::size_t>(a) * s + b) * s + c]; };
  auto y = [&](int g) { return y_index.at(rep_of[g]); };
  const int xp = 0, xm = 1;
  auto is_y = [&](int a) { return a >= 2 && a < z0; };
  auto y_elem = [&](int a) { return reps[a - 2]; };

  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) {
      if (a == xp) {
        add(a, b, b);
      } else if (b == xp) {
        add(a, b, a);
      } else if (a == xm || b == xm) {
        const int o = a == xm ? b : a;
        if (o == xm)
          add(a, b, xp);
        else if (is_y(o))
          add(a, b, o);
        else
          add(a, b, o == z0 ? z0 + 1 : z0);
      } else if (is_y(a) && is_y(b)) {
        const int g = y_elem(a), h = y_elem(b);
        if (a == b) {
          add(a, b, xp);
          add(a, b, xm);
          add(a, b, y(A.mul(g, g)));
        } else {
          add(a, b, y(A.mul(g, h)));
          add(a, b, y(A.mul(g, A.inv(h))));
        }
      } else if (is_y(a) || is_y(b)) {
        add(a, b, z0);
        add(a, b, z0 + 1);
      } else {
        add(a, b, a == b ? xp : xm);
        for (int yy = 2; yy < z0; ++yy) add(a, b, yy);
      }
    }
  return R;
}

BratteliDiagram fusion_bratteli(const FusionRing& ring, int object, int depth) {
  if (object < 0 || object >= ring.size()) throw ValidationError("object out of range");
  if (depth < 1) throw ValidationError("depth must be at least 1");
  BratteliDiagram d;
  std::vector<std::uint64_t> mult(ring.size(), 0);
  mult[object] = 1;
  std::vector<int> ids{object};
  d.levels.push_back({{ring.labels[object], 1}});
  for (int n = 2; n <= depth; ++n) {
    std::vector<std::uint64_t> next(ring.size(), 0);
    for (int a : ids)
      for (int c = 0; c < ring.size(); ++c)
        next[c] = checked_add(next[c], checked_mul(mult[a], static_cast<std::uint64_t>(ring.n(a, object, c))));
    std::vector<int> nids;
    std::vector<BratteliNode> lvl;
    for (int c = 0; c < ring.size(); ++c)
      if (next[c] > 0) {
        nids.push_back(c);
        lvl.push_back({ring.labels[c], next[c]});
      }
    EdgeMatrix e(ids.size(), std::vector<std::uint64_t>(nids.size(), 0));
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = 0; j < nids.size(); ++j) e[i][j] = static_cast<std::uint64_t>(ring.n(ids[i], object, nids[j]));
    d.edges.push_back(std::move(e));
    d.levels.push_back(std::move(lvl));
    mult = std::move(next);
    ids = std::move(nids);
  }
  return d;
}

AlgebraPtr reference_algebra(long order, int strands) {
  if (order >= 3 && is_prime(order)) {
    const int p = static_cast<int>(order);
    auto G = FiniteGroup::abelian({p});
    return TTPAlgebra::create(strands, BaseAlgebra(G), bihom_from_matrix(G, ModMatrix(p, {{2}})));
  }
  for (long p = 3; p * p <= order; p += 2)
    if (p * p == order && is_prime(p)) {
      const int q = static_cast<int>(p);
      auto G = FiniteGroup::abelian({q, q});
      return TTPAlgebra::create(strands, BaseAlgebra(G), bihom_from_matrix(G, ModMatrix(q, {{2, 0}, {0, 2}})));
    }
  throw ValidationError("reference algebra needs order p or p^2 for an odd prime p");
}

bool diagrams_isomorphic(const BratteliDiagram& a, const BratteliDiagram& b, int* first_mismatch) {
  const int depth = std::min(a.depth(), b.depth());
  // multiset of dims bounds how far an isomorphism can reach
  int limit = depth;
  for (int k = 0; k < depth; ++k) {
    std::vector<std::uint64_t> da, db;
    for (const auto& v : a.levels[k]) da.push_back(v.dim);
    for (const auto& v : b.levels[k]) db.push_back(v.dim);
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (da != db) {
      limit = k;
      break;
    }
  }
  std::vector<std::vector<int>> phi(depth);
  int best = 0;
  std::function<bool(int)> level = [&](int k) -> bool {
    best = std::max(best, k);
    if (k == limit) return true;
    const auto &la = a.levels[k], &lb = b.levels[k];
    std::vector<int>& map = phi[k];
    map.assign(la.size(), -1);
    std::vector<bool> used(lb.size(), false);
    std::function<bool(std::size_t)> assign = [&](std::size_t j) -> bool {
      if (j == la.size()) return level(k + 1);
      for (std::size_t t = 0; t < lb.size(); ++t) {
        if (used[t] || la[j].dim != lb[t].dim) continue;
        bool ok = true;
        if (k > 0)
          for (std::size_t i = 0; i < a.levels[k - 1].size() && ok; ++i)
            ok = a.edges[k - 1][i][j] == b.edges[k - 1][phi[k - 1][i]][t];
        if (!ok) continue;
        used[t] = true;
        map[j] = static_cast<int>(t);
        if (assign(j + 1)) return true;
        used[t] = false;
      }
      return false;
    };
    return assign(0);
  };
  const bool full = level(0) && limit == depth && a.depth() == b.depth();
  if (first_mismatch) *first_mismatch = full ? 0 : best + 1;
  return full;
}

TowerComparison compare_towers(long order, int depth) {
  require_odd_order(order, depth);
  const auto ring = fusion_ring_D(static_cast<int>(order));
  const auto fusion = fusion_bratteli(ring, ring.index("Z0"), depth);
  const auto c = bratteli_C_order(order, depth);
  TowerComparison out;
  for (int n = 1; n <= depth; ++n) {
    out.end_dims.push_back(fusion.sum_of_squares(n));
    out.c_dims.push_back(c.sum_of_squares(n));
    out.counted_dims.push_back(inversion_fixed_dim(reference_algebra(order, n)));
  }
  int mismatch = 0;
  out.isomorphic = diagrams_isomorphic(fusion, c, &mismatch);
  if (!fusion.recursion_holds() || !c.recursion_holds()) {
    out.isomorphic = false;
    out.message = "dimension recursion fails";
  }
  for (int n = 1; n <= depth; ++n)
    if (out.c_dims[n - 1] != out.counted_dims[n - 1] || out.end_dims[n - 1] != out.counted_dims[n - 1]) {
      out.isomorphic = false;
      mismatch = mismatch == 0 ? n : std::min(mismatch, n);
      out.message = "level " + std::to_string(n) + " dimension differs from the counted fixed-point dimension";
      break;
    }
  out.first_mismatch = out.isomorphic ? 0 : mismatch;
  if (!out.isomorphic && out.message.empty())
    out.message = "diagrams differ first at level " + std::to_string(mismatch);
  return out;
}

}  // namespace ttpybo
