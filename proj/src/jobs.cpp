#include "ttpybo/jobs.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <regex>
#include <set>

#include "ttpybo/errors.hpp"
#include "ttpybo/groups.hpp"
#include "ttpybo/search.hpp"
#include "ttpybo/spectra.hpp"
#include "ttpybo/tower.hpp"
#include "ttpybo/ttp.hpp"
#include "ttpybo/ybo.hpp"

namespace ttpybo::jobs {

const char* const kVersion = TTPYBO_VERSION;

namespace {

using Kind = SymmetryAction::Kind;

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ValidationError("unknown field '" + k + "' in " + where);
}

const Json& require(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError("missing field '" + key + "' in " + where);
  return j.at(key);
}

long get_int(const Json& j, const std::string& key, const std::string& where, long lo, long hi) {
  const Json& v = require(j, key, where);
  if (!v.is_number_integer()) throw ValidationError("'" + key + "' must be an integer");
  const long x = v.get<long>();
  if (x < lo || x > hi)
    throw ValidationError("'" + key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

long get_int_or(const Json& j, const std::string& key, const std::string& where, long lo, long hi, long dflt) {
  return j.contains(key) ? get_int(j, key, where, lo, hi) : dflt;
}

mpq_class parse_rational(const std::string& s) {
  static const std::regex re(R"(-?[0-9]+(/[0-9]+)?)");
  if (!std::regex_match(s, re)) throw ValidationError("not a rational: '" + s + "'");
  mpq_class q(s);
  if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

std::string rational_string(const mpq_class& q) { return q.get_str(); }

// --- structure specs ------------------------------------------------------

BaseAlgebra parse_group(const Json& g) {
  const std::string where = "group";
  if (!g.is_object()) throw ValidationError("group must be an object");
  const std::string kind = require(g, "kind", where).get<std::string>();
  if (kind == "abelian") {
    check_keys(g, {"kind", "factors"}, where);
    const Json& f = require(g, "factors", where);
    if (!f.is_array() || f.empty()) throw ValidationError("factors must be a nonempty array");
    std::vector<int> factors;
    for (const auto& x : f) {
      if (!x.is_number_integer() || x.get<long>() < 1 || x.get<long>() > 1000)
        throw ValidationError("factors must be integers in [1, 1000]");
      factors.push_back(x.get<int>());
    }
    long order = 1;
    for (int x : factors) order *= x;
    if (order > 100000) throw ValidationError("group order too large");
    return BaseAlgebra(FiniteGroup::abelian(factors));
  }
  check_keys(g, {"kind"}, where);
  if (kind == "s3") return BaseAlgebra(FiniteGroup::symmetric3());
  if (kind == "quaternion") return BaseAlgebra::quaternion_base();
  throw ValidationError("unknown group kind '" + kind + "'");
}

Bihomomorphism parse_alpha(const Json& a, const BaseAlgebra& base) {
  const std::string where = "alpha";
  if (!a.is_object()) throw ValidationError("alpha must be an object");
  const auto& G = base.group();
  if (a.contains("kind")) {
    const std::string kind = a.at("kind").get<std::string>();
    if (kind == "s3_sign") {
      check_keys(a, {"kind"}, where);
      if (!(G == FiniteGroup::symmetric3())) throw ValidationError("s3_sign needs the s3 group");
      return s3_sign_form();
    }
    if (kind == "trivial") {
      check_keys(a, {"kind", "modulus"}, where);
      return trivial_bihom(G, static_cast<int>(get_int(a, "modulus", where, 1, 100000)));
    }
    throw ValidationError("unknown alpha kind '" + kind + "'");
  }
  if (a.contains("matrix")) {
    check_keys(a, {"matrix", "modulus"}, where);
    const int m = static_cast<int>(get_int(a, "modulus", where, 1, 100000));
    std::vector<std::vector<long>> rows;
    for (const auto& r : a.at("matrix")) {
      std::vector<long> row;
      for (const auto& x : r) {
        if (!x.is_number_integer()) throw ValidationError("matrix entries must be integers");
        row.push_back(x.get<long>());
      }
      rows.push_back(std::move(row));
    }
    if (!G.is_abelian()) throw ValidationError("matrix forms need an abelian group");
    if (rows.size() != G.factors().size()) throw ValidationError("matrix size must match the number of factors");
    for (const auto& r : rows)
      if (r.size() != rows.size()) throw ValidationError("matrix must be square");
    return bihom_from_matrix(G, ModMatrix(m, rows));
  }
  if (a.contains("table")) {
    check_keys(a, {"table", "modulus"}, where);
    const int m = static_cast<int>(get_int(a, "modulus", where, 1, 100000));
    std::vector<int> table;
    for (const auto& x : a.at("table")) {
      if (!x.is_number_integer()) throw ValidationError("table entries must be integers");
      table.push_back(x.get<int>());
    }
    return validate_bihom(G, std::move(table), m);
  }
  throw ValidationError("alpha needs one of kind, matrix, table");
}

std::vector<CycNum> parse_coefficients(const Json& arr, int dflt, std::size_t expected) {
  if (!arr.is_array()) throw ValidationError("coefficients must be an array");
  if (arr.size() != expected)
    throw ValidationError("expected " + std::to_string(expected) + " coefficients, got " + std::to_string(arr.size()));
  std::vector<CycNum> out;
  for (const auto& c : arr) out.push_back(coefficient_from_json(c, dflt));
  return out;
}

YBOCandidate parse_candidate(const Json& c, const BaseAlgebra& base, const Bihomomorphism& alpha) {
  check_keys(c, {"coefficients", "normalizer"}, "candidate");
  auto f = parse_coefficients(require(c, "coefficients", "candidate"), alpha.modulus(), base.group().order());
  std::optional<CycNum> gamma;
  if (c.contains("normalizer")) gamma = coefficient_from_json(c.at("normalizer"), alpha.modulus());
  return YBOCandidate::make(base, std::move(f), gamma);
}

Ansatz parse_ansatz(const Json& a, const Bihomomorphism& alpha) {
  check_keys(a, {"roots_of_unity", "with_zero", "values", "pinned"}, "ansatz");
  Ansatz out;
  if (a.contains("roots_of_unity")) {
    if (a.contains("values")) throw ValidationError("ansatz takes roots_of_unity or values, not both");
    const bool with_zero = a.value("with_zero", false);
    out = Ansatz::roots_of_unity(static_cast<int>(get_int(a, "roots_of_unity", "ansatz", 1, 1000)), with_zero);
  } else {
    if (a.contains("with_zero")) throw ValidationError("with_zero needs roots_of_unity");
    const Json& v = require(a, "values", "ansatz");
    if (!v.is_array() || v.empty()) throw ValidationError("ansatz values must be a nonempty array");
    for (const auto& x : v) out.values.push_back(coefficient_from_json(x, alpha.modulus()));
  }
  if (a.contains("pinned")) {
    const Json& p = a.at("pinned");
    if (!p.is_object()) throw ValidationError("pinned must map group elements to coefficients");
    for (const auto& [k, v] : p.items()) {
      static const std::regex digits("[0-9]+");
      if (!std::regex_match(k, digits)) throw ValidationError("pinned keys must be element indices");
      out.pinned[std::stoi(k)] = coefficient_from_json(v, alpha.modulus());
    }
  }
  return out;
}

std::vector<Kind> parse_symmetries(const Json& s) {
  if (!s.is_array()) throw ValidationError("symmetries must be an array");
  std::vector<Kind> out;
  for (const auto& x : s) {
    const std::string n = x.get<std::string>();
    bool found = false;
    for (Kind k : {Kind::scale, Kind::character, Kind::automorphism, Kind::galois, Kind::inversion,
                   Kind::conjugation})
      if (n == kind_name(k)) {
        out.push_back(k);
        found = true;
      }
    if (!found) throw ValidationError("unknown symmetry '" + n + "'");
  }
  return out;
}

FormKind parse_form(const std::string& s) {
  if (s == "A1" || s == "elliptic") return FormKind::elliptic;
  if (s == "A2" || s == "skew") return FormKind::skew;
  if (s == "A3" || s == "hyperbolic") return FormKind::hyperbolic;
  throw ValidationError("unknown form '" + s + "'");
}

// --- report helpers -------------------------------------------------------

std::string real_string(const Real& r, int digits) {
  std::string s = r.str(digits, std::ios_base::fixed);
  if (!s.empty() && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

Json approx(const CycNum& c, int digits) {
  auto e = embed(c, digits);
  return Json{{"re", real_string(e.re, digits)}, {"im", real_string(e.im, digits)}};
}

Json coefficient_list(const std::vector<CycNum>& f) {
  Json out = Json::array();
  for (const auto& c : f) out.push_back(coefficient_to_json(c));
  return out;
}

Json candidate_json(const YBOCandidate& c) {
  Json j{{"coefficients", coefficient_list(c.f)}};
  if (c.normalizer) j["normalizer"] = coefficient_to_json(*c.normalizer);
  return j;
}

Json report_json(const VerificationReport& r, int digits) {
  Json j{{"braid_ok", r.braid_ok}, {"invertible", r.invertible}};
  if (r.unitary_scalar) {
    j["unitary_scalar"] = coefficient_to_json(*r.unitary_scalar);
    j["unitary_scalar_approx"] = approx(*r.unitary_scalar, digits);
  } else {
    j["unitary_scalar"] = nullptr;
  }
  j["order_of_r"] = r.order_of_r ? Json(*r.order_of_r) : Json(nullptr);
  return j;
}

Json profile_json(const EigenProfile& p) {
  Json entries = Json::array();
  for (const auto& e : p.entries) {
    Json v{{"value", coefficient_to_json(e.value)}, {"multiplicity", e.multiplicity}};
    entries.push_back(v);
  }
  return Json{{"entries", entries}, {"total", p.total}};
}

Json diagram_json(const BratteliDiagram& d) {
  Json levels = Json::array();
  for (const auto& lvl : d.levels) {
    Json l = Json::array();
    for (const auto& v : lvl) l.push_back(Json{{"label", v.label}, {"dim", v.dim}});
    levels.push_back(l);
  }
  Json sums = Json::array();
  for (int n = 1; n <= d.depth(); ++n) sums.push_back(d.sum_of_squares(n));
  return Json{{"levels", levels}, {"edges", d.edges}, {"sum_of_squares", sums}, {"recursion_holds", d.recursion_holds()}};
}

// --- commands -------------------------------------------------------------

struct Context {
  const Json& spec;
  std::uint64_t budget;
  int digits;
  JobResult& out;
};

const std::set<std::string> kCommon{"command", "budget", "digits"};

std::set<std::string> with_common(std::set<std::string> s) {
  s.insert(kCommon.begin(), kCommon.end());
  return s;
}

struct Structure {
  BaseAlgebra base;
  Bihomomorphism alpha;
};

Structure parse_structure(const Json& spec) {
  BaseAlgebra base = parse_group(require(spec, "group", "spec"));
  Bihomomorphism alpha = parse_alpha(require(spec, "alpha", "spec"), base);
  return {std::move(base), std::move(alpha)};
}

Json cmd_verify(Context& ctx) {
  check_keys(ctx.spec, with_common({"group", "alpha", "candidate", "order_cap"}), "verify spec");
  auto [base, alpha] = parse_structure(ctx.spec);
  auto cand = parse_candidate(require(ctx.spec, "candidate", "spec"), base, alpha);
  const long cap = get_int_or(ctx.spec, "order_cap", "spec", 0, 1000000, 0);
  auto rep = verify(cand, alpha, cap);
  if (!rep.braid_ok || !rep.invertible) ctx.out.exit_code = ExitCode::verification;
  return report_json(rep, ctx.digits);
}

SearchOptions search_options(const Context& ctx) {
  SearchOptions o;
  o.budget = ctx.budget;
  o.exact_recheck = ctx.spec.value("exact_recheck", false);
  o.order_cap = get_int_or(ctx.spec, "order_cap", "spec", 0, 1000000, 0);
  return o;
}

Json solutions_json(const SolutionSet& s, int digits) {
  Json arr = Json::array();
  for (const auto& sol : s.solutions) {
    Json j = candidate_json(sol.cand);
    j["report"] = report_json(sol.report, digits);
    arr.push_back(j);
  }
  return arr;
}

Json cmd_enumerate(Context& ctx) {
  check_keys(ctx.spec, with_common({"group", "alpha", "ansatz", "order_cap", "exact_recheck"}), "enumerate spec");
  auto [base, alpha] = parse_structure(ctx.spec);
  auto ansatz = parse_ansatz(require(ctx.spec, "ansatz", "spec"), alpha);
  auto sols = enumerate(base, alpha, ansatz, search_options(ctx));
  return Json{{"candidates", sols.candidates}, {"count", sols.solutions.size()},
              {"solutions", solutions_json(sols, ctx.digits)}};
}

Json cmd_orbits(Context& ctx) {
  check_keys(ctx.spec, with_common({"group", "alpha", "ansatz", "symmetries", "order_cap", "exact_recheck"}),
             "orbits spec");
  auto [base, alpha] = parse_structure(ctx.spec);
  auto ansatz = parse_ansatz(require(ctx.spec, "ansatz", "spec"), alpha);
  auto kinds = parse_symmetries(require(ctx.spec, "symmetries", "spec"));
  auto sols = dedup_by_symmetry(enumerate(base, alpha, ansatz, search_options(ctx)), alpha, kinds);
  Json orbits = Json::array();
  for (const auto& o : sols.orbits)
    orbits.push_back(Json{{"representative", candidate_json(sols.solutions[o.representative].cand)},
                          {"members", o.members},
                          {"size", o.members.size()}});
  return Json{{"candidates", sols.candidates},
              {"count", sols.solutions.size()},
              {"actions", sols.actions_used},
              {"orbit_count", sols.orbits.size()},
              {"orbits", orbits}};
}

Json cmd_spectrum(Context& ctx) {
  check_keys(ctx.spec, with_common({"form", "p", "eps", "x"}), "spectrum spec");
  const FormKind kind = parse_form(require(ctx.spec, "form", "spec").get<std::string>());
  const int p = static_cast<int>(get_int(ctx.spec, "p", "spec", 3, 31));
  const int eps = static_cast<int>(get_int_or(ctx.spec, "eps", "spec", -1, 1, 1));
  const int x = static_cast<int>(get_int_or(ctx.spec, "x", "spec", 1, p - 1, 1));
  auto cand = factorized_candidate(kind, p, eps, x);
  auto alpha = bihom_from_matrix(cand.base.group(), factorized_form(kind, p, x));
  auto alg = candidate_algebra(cand, alpha, 2);
  const CycNum n = profile_normalizer(p, eps, x);
  std::vector<CycNum> candidates;
  for (long k = 0; k < p; ++k) candidates.push_back(CycNum::root_of_unity(p, k) * n);
  const auto closed = eigenvalue_profile(p, eps, x);
  const auto exact = rescale_profile(spectrum_exact(slot_copy(alg, cand, 1), candidates), n);
  const bool agree = same_profile(closed, exact);
  if (!agree) ctx.out.exit_code = ExitCode::verification;
  return Json{{"case", profile_case(p, eps, x)},
              {"normalizer", coefficient_to_json(n)},
              {"closed_form", profile_json(closed)},
              {"exact", profile_json(exact)},
              {"agree", agree}};
}

AlgebraPtr parse_algebra(Context& ctx, const std::string& where) {
  check_keys(ctx.spec, with_common({"group", "alpha", "strands"}), where);
  auto [base, alpha] = parse_structure(ctx.spec);
  const int strands = static_cast<int>(get_int(ctx.spec, "strands", "spec", 1, 12));
  auto alg = TTPAlgebra::create(strands, base, alpha);
  if (alg->dimension() > 50'000'000) throw ValidationError("algebra dimension too large");
  return alg;
}

Json cmd_center(Context& ctx) {
  auto alg = parse_algebra(ctx, "center spec");
  auto basis = center_basis(alg);
  Json j{{"algebra_dimension", alg->dimension()}, {"dimension", basis.size()}};
  if (basis.size() <= 100) {
    Json mons = Json::array();
    for (auto c : basis) mons.push_back(alg->monomial_label(c));
    j["monomials"] = mons;
  }
  return j;
}

Json cmd_fixed_dim(Context& ctx) {
  auto alg = parse_algebra(ctx, "fixed-dim spec");
  return Json{{"algebra_dimension", alg->dimension()}, {"dimension", inversion_fixed_dim(alg)}};
}

long tower_order(const Json& spec) {
  if (spec.contains("order") == spec.contains("m")) throw ValidationError("give exactly one of order and m");
  if (spec.contains("m")) {
    const long m = get_int(spec, "m", "spec", 3, 1001);
    return m * m;
  }
  return get_int(spec, "order", "spec", 3, 1000001);
}

Json cmd_bratteli(Context& ctx) {
  check_keys(ctx.spec, with_common({"tower", "order", "m", "depth"}), "bratteli spec");
  const std::string tower = require(ctx.spec, "tower", "spec").get<std::string>();
  const long order = tower_order(ctx.spec);
  const int depth = static_cast<int>(get_int(ctx.spec, "depth", "spec", 1, 64));
  BratteliDiagram d;
  if (tower == "A")
    d = bratteli_A_order(order, depth);
  else if (tower == "C")
    d = bratteli_C_order(order, depth);
  else
    throw ValidationError("tower must be A or C");
  ctx.out.dots.push_back({"bratteli_" + tower + "_" + std::to_string(order), to_dot(d, "bratteli_" + tower)});
  Json j = diagram_json(d);
  j["order"] = order;
  return j;
}

Json cmd_fusion(Context& ctx) {
  check_keys(ctx.spec, with_common({"m", "depth"}), "fusion spec");
  const int m = static_cast<int>(get_int(ctx.spec, "m", "spec", 3, 1001));
  const auto R = fusion_ring_D(m);
  Json objects = Json::array();
  for (int a = 0; a < R.size(); ++a)
    objects.push_back(Json{{"label", R.labels[a]},
                           {"dim_rational", R.dims[a].rational},
                           {"dim_root", R.dims[a].root},
                           {"dim_squared", R.dim_squared(a)}});
  Json rules = Json::array();
  for (int a = 0; a < R.size(); ++a)
    for (int b = a; b < R.size(); ++b) {
      Json terms = Json::object();
      for (int c = 0; c < R.size(); ++c)
        if (R.n(a, b, c)) terms[R.labels[c]] = R.n(a, b, c);
      rules.push_back(Json{{"a", R.labels[a]}, {"b", R.labels[b]}, {"product", terms}});
    }
  Json checks{{"commutative", R.commutative()},
              {"associative", R.associative()},
              {"unit", R.has_unit(R.index("X+"))},
              {"dimension_homomorphism", R.dimension_homomorphism()}};
  Json j{{"m", m}, {"root_of", R.root_of}, {"objects", objects}, {"rules", rules}, {"checks", checks}};
  for (const auto& [k, v] : checks.items())
    if (!v.get<bool>()) ctx.out.exit_code = ExitCode::verification;
  if (ctx.spec.contains("depth")) {
    const int depth = static_cast<int>(get_int(ctx.spec, "depth", "spec", 1, 64));
    auto d = fusion_bratteli(R, R.index("Z0"), depth);
    j["tower"] = diagram_json(d);
    ctx.out.dots.push_back({"fusion_" + std::to_string(m), to_dot(d, "fusion")});
  }
  return j;
}

Json cmd_compare(Context& ctx) {
  check_keys(ctx.spec, with_common({"order", "depth"}), "compare spec");
  const long order = get_int(ctx.spec, "order", "spec", 3, 1000001);
  const int depth = static_cast<int>(get_int(ctx.spec, "depth", "spec", 1, 12));
  auto c = compare_towers(order, depth);
  if (!c.isomorphic) ctx.out.exit_code = ExitCode::verification;
  const auto ring = fusion_ring_D(static_cast<int>(order));
  ctx.out.dots.push_back({"compare_fusion_" + std::to_string(order),
                          to_dot(fusion_bratteli(ring, ring.index("Z0"), depth), "fusion")});
  ctx.out.dots.push_back({"compare_C_" + std::to_string(order), to_dot(bratteli_C_order(order, depth), "C")});
  return Json{{"order", order},
              {"depth", depth},
              {"isomorphic", c.isomorphic},
              {"first_mismatch", c.first_mismatch},
              {"message", c.message},
              {"end_dims", c.end_dims},
              {"c_dims", c.c_dims},
              {"counted_dims", c.counted_dims}};
}

Json cmd_image_order(Context& ctx) {
  check_keys(ctx.spec, with_common({"group", "alpha", "candidate", "strands", "cap"}), "image-order spec");
  auto [base, alpha] = parse_structure(ctx.spec);
  auto cand = parse_candidate(require(ctx.spec, "candidate", "spec"), base, alpha);
  const int strands = static_cast<int>(get_int(ctx.spec, "strands", "spec", 2, 8));
  const long cap = get_int_or(ctx.spec, "cap", "spec", 1, 100'000'000, 1'000'000);
  auto r = projective_image_order(cand, alpha, strands, cap);
  return Json{{"exceeded", r.exceeded}, {"order", r.order}, {"cap", cap}};
}

Json cmd_survey(Context& ctx) {
  check_keys(ctx.spec, with_common({}), "survey-z3z3 spec");
  SearchOptions o;
  o.budget = ctx.budget;
  auto rep = z3z3_survey(o);
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    std::vector<std::vector<long>> m(r.form.rows(), std::vector<long>(r.form.cols()));
    for (int i = 0; i < r.form.rows(); ++i)
      for (int k = 0; k < r.form.cols(); ++k) m[i][k] = r.form.at(i, k);
    rows.push_back(Json{{"form", m},
                        {"type", r.type},
                        {"rank", r.rank},
                        {"label", r.label},
                        {"solutions", r.solutions},
                        {"nondegenerate", r.nondegenerate},
                        {"nondegenerate_unitary", r.nondegenerate_unitary},
                        {"factorizable", r.factorizable}});
  }
  if (!rep.discrepancies.empty()) ctx.out.exit_code = ExitCode::verification;
  return Json{{"rows", rows}, {"discrepancies", rep.discrepancies}};
}

using Handler = Json (*)(Context&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"verify", cmd_verify},     {"enumerate", cmd_enumerate}, {"orbits", cmd_orbits},
      {"spectrum", cmd_spectrum}, {"center", cmd_center},       {"fixed-dim", cmd_fixed_dim},
      {"bratteli", cmd_bratteli}, {"fusion", cmd_fusion},       {"compare", cmd_compare},
      {"image-order", cmd_image_order}, {"survey-z3z3", cmd_survey}};
  return h;
}

}  // namespace

std::uint64_t spec_hash(const Json& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : spec.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Json coefficient_to_json(const CycNum& c) {
  if (auto sr = c.as_scaled_root()) {
    Json j{{"modulus", c.modulus()}, {"exponent", sr->second}};
    if (sr->first != 1) j["scale"] = rational_string(sr->first);
    return j;
  }
  Json coeffs = Json::array();
  for (const auto& q : c.coeffs()) coeffs.push_back(rational_string(q));
  return Json{{"modulus", c.modulus()}, {"coeffs", coeffs}};
}

CycNum coefficient_from_json(const Json& j, int default_modulus) {
  if (j.is_number_integer()) return CycNum(default_modulus, j.get<long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    static const std::regex qk(R"((-?)q\^(-?[0-9]+))");
    std::smatch m;
    if (std::regex_match(s, m, qk)) {
      CycNum z = CycNum::root_of_unity(default_modulus, std::stol(m[2].str()));
      return m[1].length() ? -z : z;
    }
    return CycNum(default_modulus, parse_rational(s));
  }
  if (j.is_object()) {
    const int mod = static_cast<int>(get_int(j, "modulus", "coefficient", 1, 100000));
    if (j.contains("exponent")) {
      check_keys(j, {"modulus", "exponent", "scale"}, "coefficient");
      const Json& e = j.at("exponent");
      if (!e.is_number_integer()) throw ValidationError("exponent must be an integer");
      CycNum z = CycNum::root_of_unity(mod, e.get<long>());
      if (j.contains("scale")) {
        const Json& s = j.at("scale");
        mpq_class q = s.is_number_integer() ? mpq_class(s.get<long>()) : parse_rational(s.get<std::string>());
        z = z * CycNum(mod, q);
      }
      return z;
    }
    check_keys(j, {"modulus", "coeffs"}, "coefficient");
    const Json& cs = require(j, "coeffs", "coefficient");
    if (!cs.is_array()) throw ValidationError("coeffs must be an array");
    std::vector<mpq_class> v;
    for (const auto& x : cs)
      v.push_back(x.is_number_integer() ? mpq_class(x.get<long>()) : parse_rational(x.get<std::string>()));
    return CycNum::from_power_coeffs(mod, v);
  }
  throw ValidationError("unsupported coefficient format: " + j.dump());
}

JobResult run(const Json& spec, const RunOptions& opts) {
  JobResult out;
  out.report = Json{{"version", kVersion}, {"spec_hash", hex64(spec_hash(spec))}};
  try {
    if (!spec.is_object()) throw ValidationError("spec must be a JSON object");
    const std::string command = require(spec, "command", "spec").get<std::string>();
    out.report["command"] = command;
    auto it = handlers().find(command);
    if (it == handlers().end()) throw ValidationError("unknown command '" + command + "'");
    Context ctx{spec,
                opts.budget ? *opts.budget
                            : static_cast<std::uint64_t>(get_int_or(spec, "budget", "spec", 1, 1L << 40, 10'000'000)),
                opts.digits ? *opts.digits : static_cast<int>(get_int_or(spec, "digits", "spec", 1, 90, 15)), out};
    if (ctx.digits < 1 || ctx.digits > 90) throw ValidationError("digits must lie in [1, 90]");
    out.report["result"] = it->second(ctx);
  } catch (const BudgetExceeded& e) {
    out.exit_code = ExitCode::budget;
    out.report["error"] = Json{{"kind", "budget"}, {"message", e.what()}, {"required", e.required()},
                               {"budget", e.budget()}};
  } catch (const VerificationFailure& e) {
    out.exit_code = ExitCode::verification;
    out.report["error"] = Json{{"kind", "verification"}, {"message", e.what()}};
  } catch (const ValidationError& e) {
    out.exit_code = ExitCode::validation;
    out.report["error"] = Json{{"kind", "validation"}, {"message", e.what()}};
  } catch (const ArithmeticError& e) {
    out.exit_code = ExitCode::validation;
    out.report["error"] = Json{{"kind", "validation"}, {"message", e.what()}};
  } catch (const nlohmann::json::exception& e) {
    out.exit_code = ExitCode::validation;
    out.report["error"] = Json{{"kind", "validation"}, {"message", e.what()}};
  } catch (const std::exception& e) {
    out.exit_code = ExitCode::other;
    out.report["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
  }
  out.report["exit_code"] = out.exit_code;
  return out;
}

}  // namespace ttpybo::jobs
