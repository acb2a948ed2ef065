#include "schunck/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "schunck/error.hpp"
#include "schunck/groups.hpp"
#include "schunck/parallel.hpp"
#include "text_util.hpp"

namespace schunck {

namespace {

using nlohmann::json;

// ------------------------------------------------------ exhaustive search
//
// Structure constants of an n-dim algebra are coded as base-p integers,
// most significant digit first: pairs (i < j) in lexicographic order, then
// coordinate k. A class is found at its smallest code, which puts brackets
// on the late basis vectors ([e1,e2] = e2 rather than e1); its full GL(n, p)
// orbit is then marked so no other member is revisited.

struct Tensor {
  int p;
  int n;
  std::vector<int> c;  // c[pair * n + k]

  int pair(int i, int j) const { return i * n - i * (i + 1) / 2 + (j - i - 1); }
  int at(int i, int j, int k) const {
    if (i == j) return 0;
    return i < j ? c[pair(i, j) * n + k] : (p - c[pair(j, i) * n + k]) % p;
  }
};

int pair_count(int n) { return n * (n - 1) / 2; }

std::uint64_t encode(const Tensor& t) {
  std::uint64_t code = 0;
  for (int x : t.c) code = code * static_cast<std::uint64_t>(t.p) + static_cast<std::uint64_t>(x);
  return code;
}

void decode(std::uint64_t code, Tensor& t) {
  for (std::size_t i = t.c.size(); i-- > 0;) {
    t.c[i] = static_cast<int>(code % static_cast<std::uint64_t>(t.p));
    code /= static_cast<std::uint64_t>(t.p);
  }
}

bool jacobi(const Tensor& t) {
  const int n = t.n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int out = 0; out < n; ++out) {
          // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
          long long s = 0;
          for (int m = 0; m < n; ++m)
            s += static_cast<long long>(t.at(j, k, m)) * t.at(i, m, out) +
                 static_cast<long long>(t.at(k, i, m)) * t.at(j, m, out) +
                 static_cast<long long>(t.at(i, j, m)) * t.at(k, m, out);
          if (s % t.p != 0) return false;
        }
  return true;
}

/// GL(n, p) as flat (g, g^-1) pairs, row-major.
std::vector<std::pair<std::vector<int>, std::vector<int>>> general_linear(int p, int n) {
  const Field f(p);
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  for_each_vector(f, static_cast<std::size_t>(n * n), [&](const Vector& v) {
    Matrix g(f, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) g.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), v[static_cast<std::size_t>(r * n + c)]);
    if (const auto inv = inverse(g)) out.emplace_back(std::vector<int>(v.begin(), v.end()), inv->data());
    return true;
  });
  return out;
}

/// Structure constants in the basis f_i = sum_k g[k][i] e_k.
void transform(const Tensor& t, const std::vector<int>& g, const std::vector<int>& ginv, Tensor& out) {
  const int n = t.n;
  const int p = t.p;
  std::vector<long long> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::fill(v.begin(), v.end(), 0);
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const long long coef = static_cast<long long>(g[k * n + i]) * g[l * n + j] -
                                 static_cast<long long>(g[l * n + i]) * g[k * n + j];
          if (coef % p == 0) continue;
          const int base = t.pair(k, l) * n;
          for (int m = 0; m < n; ++m) v[static_cast<std::size_t>(m)] += coef * t.c[static_cast<std::size_t>(base + m)];
        }
      const int base = out.pair(i, j) * n;
      for (int r = 0; r < n; ++r) {
        long long s = 0;
        for (int m = 0; m < n; ++m) s += ginv[r * n + m] * (v[static_cast<std::size_t>(m)] % p);
        out.c[static_cast<std::size_t>(base + r)] = static_cast<int>(((s % p) + p) % p);
      }
    }
}

std::vector<std::string> basis_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i + 1));
  return names;
}

std::optional<LieAlgebra> to_algebra(const Tensor& t) {
  const Field f(t.p);
  LieAlgebra::BracketTable table;
  for (int i = 0; i < t.n; ++i)
    for (int j = i + 1; j < t.n; ++j) {
      Vector v(static_cast<std::size_t>(t.n));
      for (int k = 0; k < t.n; ++k) v[static_cast<std::size_t>(k)] = t.at(i, j, k);
      if (std::any_of(v.begin(), v.end(), [](int x) { return x != 0; }))
        table[{static_cast<std::size_t>(i), static_cast<std::size_t>(j)}] = v;
    }
  try {
    return LieAlgebra(f, basis_names(static_cast<std::size_t>(t.n)), table);
  } catch (const ValidationError&) {
    return std::nullopt;  // not solvable
  }
}

std::vector<LieAlgebra> exhaustive_classes(int p, int n) {
  if (n == 0) return {};
  const int coords = pair_count(n) * n;
  const std::uint64_t total = *checked_power(static_cast<std::uint64_t>(p), static_cast<std::size_t>(coords), 1ULL << 40);
  std::vector<bool> seen(total, false);
  const auto gl = general_linear(p, n);
  std::vector<LieAlgebra> out;
  Tensor t{p, n, std::vector<int>(static_cast<std::size_t>(coords))};
  Tensor image = t;
  for (std::uint64_t code = 0; code < total; ++code) {
    if (seen[code]) continue;
    decode(code, t);
    if (!jacobi(t)) continue;
    for (const auto& [g, ginv] : gl) {
      transform(t, g, ginv, image);
      seen[encode(image)] = true;
    }
    if (auto l = to_algebra(t)) out.push_back(std::move(*l));
  }
  return out;
}

// ---------------------------------------------------------- curated dim 4

using Brackets = std::vector<std::tuple<std::size_t, std::size_t, Vector>>;

LieAlgebra build(Field f, std::size_t n, const Brackets& brackets) {
  LieAlgebra::BracketTable table;
  for (const auto& [i, j, v] : brackets) {
    Vector r(n, 0);
    for (std::size_t k = 0; k < n; ++k) r[k] = f.reduce(v[k]);
    table[{i, j}] = r;
  }
  return LieAlgebra(f, basis_names(n), table);
}

/// e4 acting on span(e1, e2, e3) by a (columns are images).
LieAlgebra almost_abelian(Field f, const std::vector<std::vector<int>>& a) {
  Brackets b;
  for (std::size_t j = 0; j < 3; ++j) {
    Vector img{a[0][j], a[1][j], a[2][j], 0};
    // [e_j, e4] = -a e_j
    for (int& x : img) x = -x;
    b.emplace_back(j, 3, img);
  }
  return build(f, 4, b);
}

std::vector<int> irreducible_low(Field f, int degree) {
  for (const Poly& poly : monic_irreducibles(f, degree))
    if (poly.coefficient(0) != 0) {
      std::vector<int> low = poly.coefficients();
      low.pop_back();
      return low;
    }
  throw InternalError("no irreducible polynomial");
}

std::vector<LieAlgebra> curated_dim4(Field f) {
  const int m1 = f.p() - 1;  // -1
  const auto q = irreducible_low(f, 2);
  const auto c = irreducible_low(f, 3);
  std::vector<LieAlgebra> out;
  out.push_back(LieAlgebra::abelian(f, 4));
  out.push_back(build(f, 4, {{0, 1, {0, 0, 1, 0}}}));                             // h3 + line
  out.push_back(build(f, 4, {{0, 1, {0, 1, 0, 0}}}));                             // L_aff + plane
  out.push_back(build(f, 4, {{0, 1, {0, 1, 0, 0}}, {2, 3, {0, 0, 0, 1}}}));       // L_aff + L_aff
  out.push_back(build(f, 4, {{0, 1, {0, 1, 0, 0}}, {0, 2, {0, 0, 1, 0}}}));       // F^2 : F by the identity, + line
  out.push_back(build(f, 4, {{0, 1, {0, 0, 1, 0}}, {0, 2, {0, m1 * q[0], m1 * q[1], 0}}}));  // irreducible plane action + line
  // F^3 : F for each action type: identity, diag(1,1,0), diag(1,-1,0),
  // nilpotent J3, J3(1), J2(1) + 0, irreducible cubic, irreducible quadratic + 0 and + 1.
  out.push_back(almost_abelian(f, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  out.push_back(almost_abelian(f, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));
  out.push_back(almost_abelian(f, {{1, 0, 0}, {0, m1, 0}, {0, 0, 0}}));
  out.push_back(almost_abelian(f, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  out.push_back(almost_abelian(f, {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}));
  out.push_back(almost_abelian(f, {{1, 0, 0}, {1, 1, 0}, {0, 0, 0}}));
  out.push_back(almost_abelian(f, {{0, 0, -c[0]}, {1, 0, -c[1]}, {0, 1, -c[2]}}));
  out.push_back(almost_abelian(f, {{0, -q[0], 0}, {1, -q[1], 0}, {0, 0, 0}}));
  out.push_back(almost_abelian(f, {{0, -q[0], 0}, {1, -q[1], 0}, {0, 0, 1}}));
  // F_{p^2} acting on itself: e1, e2 act on span(e3, e4) by 1 and by a generator.
  out.push_back(build(f, 4, {{0, 2, {0, 0, 1, 0}}, {0, 3, {0, 0, 0, 1}},
                             {1, 2, {0, 0, 0, 1}}, {1, 3, {0, 0, m1 * q[0], m1 * q[1]}}}));
  // h3 extended by derivations diag(1, 0, 1) and diag(1, 1, 2) on (e1, e2, e3 = [e1, e2]).
  out.push_back(build(f, 4, {{0, 1, {0, 0, 1, 0}}, {0, 3, {m1, 0, 0, 0}}, {2, 3, {0, 0, m1, 0}}}));
  out.push_back(build(f, 4, {{0, 1, {0, 0, 1, 0}}, {0, 3, {m1, 0, 0, 0}}, {1, 3, {0, m1, 0, 0}},
                             {2, 3, {0, 0, -2, 0}}}));
  return out;
}

// ------------------------------------------------------------ index files

std::string entry_file(const CatalogEntry& e) { return e.id + (e.is_lie() ? ".lie" : ".grp"); }

std::string size_text(const CatalogEntry& e) { return std::to_string(e.structure.size()); }

int smallest_prime(std::size_t n) {
  for (std::size_t d = 2; d <= n; ++d)
    if (n % d == 0) return static_cast<int>(d);
  return 2;
}

std::vector<int> prime_divisors(std::size_t n) {
  std::vector<int> out;
  for (std::size_t d = 2; d <= n; ++d)
    if (n % d == 0) {
      out.push_back(static_cast<int>(d));
      while (n % d == 0) n /= d;
    }
  return out;
}

bool isomorphic(const CatalogEntry& a, const CatalogEntry& b) {
  if (a.is_lie() != b.is_lie() || a.fingerprint != b.fingerprint) return false;
  if (a.is_lie()) return a.structure.field() == b.structure.field() && are_isomorphic(*a.structure.lie(), *b.structure.lie());
  return are_isomorphic(*a.structure.group(), *b.structure.group());
}

// ----------------------------------------------------------- verification

template <class Ideal>
json factor_json(const Ideal& upper, const Ideal& lower) {
  return json{{"upper", upper.to_string()}, {"lower", lower.to_string()}};
}

/// First chief factor of series `variant` that is not X-central.
template <class Ptr>
std::optional<json> first_noncentral(const ClassSpec& spec, const Ptr& a, unsigned variant, bool complemented_only) {
  const auto cs = chief_series(*a, variant);
  for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k) {
    const auto& upper = cs.terms[k + 1];
    const auto& lower = cs.terms[k];
    if (complemented_only) {
      const auto q = quotient(*a, lower);
      if constexpr (std::is_same_v<Ptr, LiePtr>) {
        std::vector<Vector> img;
        for (const Vector& v : upper.rows()) img.push_back(q.projection.apply(v));
        if (complements(q.algebra, Subspace::span(a->field(), q.algebra.dim(), img)).empty()) continue;
      } else {
        Subgroup img;
        for (int x : upper.elements) img.elements.push_back(q.projection[static_cast<std::size_t>(x)]);
        std::sort(img.elements.begin(), img.elements.end());
        img.elements.erase(std::unique(img.elements.begin(), img.elements.end()), img.elements.end());
        if (complements(q.group, img).empty()) continue;
      }
    }
    if (!is_x_central(spec, a, upper, lower)) {
      json w = factor_json(upper, lower);
      w["factor"] = k;
      return w;
    }
  }
  return std::nullopt;
}

std::optional<json> first_noncentral(const ClassSpec& spec, const Structure& s, unsigned variant, bool complemented_only) {
  return s.is_lie() ? first_noncentral(spec, s.lie(), variant, complemented_only)
                    : first_noncentral(spec, s.group(), variant, complemented_only);
}

/// First primitive quotient outside the class.
std::optional<json> first_bad_quotient(const ClassSpec& spec, const Structure& s) {
  if (s.is_lie()) {
    const LieAlgebra& l = *s.lie();
    for (const Subspace& n : all_ideals(l)) {
      if (n.is_whole()) continue;
      const LieQuotient q = quotient(l, n);
      if (is_primitive(q.algebra).primitive && !member(spec, q.algebra)) return json{{"quotient_by", n.to_string()}};
    }
    return std::nullopt;
  }
  const FiniteGroup& g = *s.group();
  for (const Subgroup& n : all_ideals(g)) {
    if (n.size() == g.order()) continue;
    const GroupQuotient q = quotient(g, n);
    if (is_primitive(q.group).primitive && !member(spec, q.group)) return json{{"quotient_by", n.to_string()}};
  }
  return std::nullopt;
}

CheckRecord equivalence_record(const ClassSpec& spec, const CatalogEntry& e) {
  CheckRecord rec{"equivalence", e.id, 0, Verdict::Pass, json::object()};
  const auto bad_quotient = first_bad_quotient(spec, e.structure);
  const auto noncentral = first_noncentral(spec, e.structure, 0, false);
  const bool pdef = !bad_quotient;
  const bool formation = !noncentral;
  rec.witness["pdef"] = pdef;
  rec.witness["formation"] = formation;
  rec.witness["provenance"] = to_string(e.provenance);
  if (!formation_series_agree(spec, e.structure)) rec.witness["series_disagree"] = true;
  if (pdef != formation) {
    rec.verdict = Verdict::Fail;
    if (bad_quotient) rec.witness["primitive_quotient"] = *bad_quotient;
    if (noncentral) rec.witness["chief_factor"] = *noncentral;
  }
  return rec;
}

template <class Ideal, class Alg>
std::vector<CheckRecord> saturation_for(const ClassSpec& spec, const CatalogEntry& e, const Alg& a) {
  std::vector<CheckRecord> out;
  std::optional<bool> whole_in_f;
  for (const Ideal& m : minimal_ideals(a)) {
    if (!complements(a, m).empty()) continue;
    const auto q = quotient(a, m);
    Structure qs = [&] {
      if constexpr (std::is_same_v<Alg, LieAlgebra>) return Structure(share(q.algebra), e.id + "/" + m.to_string());
      else return Structure(share(q.group), e.structure.field(), e.id + "/" + m.to_string());
    }();
    if (!formation_member(spec, qs)) continue;
    if (!whole_in_f) whole_in_f = formation_member(spec, e.structure);
    CheckRecord rec{"saturation", e.id, 0, *whole_in_f ? Verdict::Pass : Verdict::Fail, json::object()};
    rec.witness["minimal_ideal"] = m.to_string();
    rec.witness["quotient_in_f"] = true;
    rec.witness["member"] = *whole_in_f;
    rec.witness["in_frattini"] = frattini(a).contains(m);
    rec.witness["provenance"] = to_string(e.provenance);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<CheckRecord> saturation_records(const ClassSpec& spec, const CatalogEntry& e) {
  if (e.is_lie()) return saturation_for<Subspace>(spec, e, *e.structure.lie());
  return saturation_for<Subgroup>(spec, e, *e.structure.group());
}

}  // namespace

// ------------------------------------------------------------------ catalog

std::string to_string(CatalogProvenance p) { return p == CatalogProvenance::Exhaustive ? "exhaustive" : "curated"; }

std::vector<Structure> CatalogEntry::at_primes() const {
  if (is_lie()) return {structure};
  std::vector<Structure> out;
  for (int p : prime_divisors(structure.size())) out.push_back(structure.at_prime(Field(p)));
  return out;
}

const CatalogEntry* Catalog::find(const std::string& id) const {
  for (const CatalogEntry& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

std::size_t Catalog::count(CatalogProvenance p) const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [&](const CatalogEntry& e) { return e.provenance == p; }));
}

void Catalog::merge(const Catalog& other) {
  for (const CatalogEntry& e : other.entries) {
    if (std::any_of(entries.begin(), entries.end(), [&](const CatalogEntry& x) { return isomorphic(x, e); })) continue;
    if (find(e.id)) throw InputError("catalog merge: duplicate id " + e.id);
    entries.push_back(e);
  }
}

CatalogEntry make_entry(std::string id, Structure s, CatalogProvenance provenance) {
  CatalogEntry e{std::move(id), s, {}, provenance, false, {}};
  if (s.is_lie()) {
    e.fingerprint = fingerprint(*s.lie());
    e.primitive = is_primitive(*s.lie()).primitive;
    const auto cs = chief_series(*s.lie());
    for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k) e.chief_factor_dims.push_back(cs.terms[k + 1].dim() - cs.terms[k].dim());
  } else {
    const FiniteGroup& g = *s.group();
    if (!is_solvable(g)) throw InputError("catalog entry " + e.id + " is not soluble");
    e.fingerprint = fingerprint(g);
    e.primitive = is_primitive(g).primitive;
    const auto cs = chief_series(g);
    for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k)
      e.chief_factor_dims.push_back(SectionCoordinates(g, cs.terms[k + 1], cs.terms[k]).dim());
  }
  return e;
}

Catalog generate_lie_catalog(int p, int maxdim) {
  if (p != 2 && p != 3 && p != 5) throw InputError("catalog field must be 2, 3 or 5");
  if (maxdim < 1 || maxdim > kMaxCatalogDim) throw InputError("catalog maxdim must be in 1.." + std::to_string(kMaxCatalogDim));
  const Field f(p);
  Catalog cat;
  for (int n = 1; n <= std::min(maxdim, 3); ++n) {
    std::vector<LieAlgebra> classes = n == 1 ? std::vector<LieAlgebra>{LieAlgebra::abelian(f, 1)} : exhaustive_classes(p, n);
    std::size_t k = 0;
    for (LieAlgebra& l : classes) {
      std::ostringstream id;
      id << "F" << p << "-d" << n << "-" << (k < 9 ? "0" : "") << ++k;
      cat.entries.push_back(make_entry(id.str(), Structure(share(std::move(l)), id.str()), CatalogProvenance::Exhaustive));
    }
  }
  if (maxdim == 4) {
    Catalog curated;
    std::size_t k = 0;
    for (LieAlgebra& l : curated_dim4(f)) {
      std::ostringstream id;
      id << "F" << p << "-d4-c" << (k < 9 ? "0" : "") << ++k;
      CatalogEntry e = make_entry(id.str(), Structure(share(std::move(l)), id.str()), CatalogProvenance::Curated);
      if (std::none_of(curated.entries.begin(), curated.entries.end(), [&](const CatalogEntry& x) { return isomorphic(x, e); }))
        curated.entries.push_back(std::move(e));
      else
        --k;
    }
    cat.entries.insert(cat.entries.end(), curated.entries.begin(), curated.entries.end());
  }
  return cat;
}

Catalog builtin_group_catalog(std::size_t max_order) {
  Catalog cat;
  for (const std::string& name : builtin_group_names()) {
    FiniteGroup g = builtin_group(name);
    if (g.order() > max_order) continue;
    const int p = smallest_prime(g.order());
    cat.entries.push_back(make_entry(name, Structure(share(std::move(g)), Field(p), name), CatalogProvenance::Curated));
  }
  return cat;
}

void save_catalog(const Catalog& cat, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream index(dir / "index.txt");
  if (!index) throw InputError("cannot write " + (dir / "index.txt").string());
  index << "# id kind field size fingerprint provenance\n";
  for (const CatalogEntry& e : cat.entries) {
    std::ofstream out(dir / entry_file(e));
    if (!out) throw InputError("cannot write " + (dir / entry_file(e)).string());
    out << (e.is_lie() ? e.structure.lie()->to_text() : e.structure.group()->to_text());
    index << e.id << ' ' << (e.is_lie() ? "lie" : "group") << ' '
          << (e.is_lie() ? std::to_string(e.structure.field().p()) : "-") << ' ' << size_text(e) << ' '
          << e.fingerprint << ' ' << to_string(e.provenance) << '\n';
  }
}

Catalog load_catalog(const std::filesystem::path& dir) {
  std::ifstream index(dir / "index.txt");
  if (!index) throw InputError("catalog index not found in " + dir.string());
  Catalog cat;
  std::string line;
  std::size_t number = 0;
  while (std::getline(index, line)) {
    ++number;
    const auto words = detail::split_words(detail::strip_comment(line));
    if (words.empty()) continue;
    const std::string where = "index.txt line " + std::to_string(number);
    if (words.size() != 6) throw InputError(where + ": expected 6 fields");
    const std::string& id = words[0];
    const bool lie = words[1] == "lie";
    if (!lie && words[1] != "group") throw InputError(where + ": unknown kind " + words[1]);
    const std::filesystem::path file = dir / (id + (lie ? ".lie" : ".grp"));
    std::ifstream in(file);
    if (!in) throw InputError("missing catalog file " + file.string());
    std::ostringstream text;
    text << in.rdbuf();
    CatalogProvenance prov;
    if (words[5] == "exhaustive") prov = CatalogProvenance::Exhaustive;
    else if (words[5] == "curated") prov = CatalogProvenance::Curated;
    else throw InputError(where + ": unknown provenance " + words[5]);
    CatalogEntry e = [&] {
      if (lie) return make_entry(id, Structure(share(parse_lie_algebra(text.str())), id), prov);
      FiniteGroup g = parse_group(text.str());
      const int p = smallest_prime(g.order());
      return make_entry(id, Structure(share(std::move(g)), Field(p), id), prov);
    }();
    if (e.fingerprint != words[4] || size_text(e) != words[3] ||
        (lie && std::to_string(e.structure.field().p()) != words[2]))
      throw InputError(where + ": index disagrees with " + file.string());
    cat.entries.push_back(std::move(e));
  }
  return cat;
}

// --------------------------------------------------------------- membership

bool pdef_member(const ClassSpec& spec, const Structure& s) { return !first_bad_quotient(spec, s); }

bool formation_member(const ClassSpec& spec, const Structure& s) { return !first_noncentral(spec, s, 0, false); }

bool formation_series_agree(const ClassSpec& spec, const Structure& s) {
  return first_noncentral(spec, s, 0, false).has_value() == first_noncentral(spec, s, 1, false).has_value();
}

bool complemented_factors_central(const ClassSpec& spec, const Structure& s) {
  return !first_noncentral(spec, s, 0, true);
}

// ------------------------------------------------------------- verification

VerifyMode parse_verify_mode(std::string_view name) {
  if (name == "equivalence") return VerifyMode::Equivalence;
  if (name == "saturation") return VerifyMode::Saturation;
  if (name == "corollary") return VerifyMode::Corollary;
  if (name == "full") return VerifyMode::Full;
  throw InputError("unknown mode '" + std::string(name) + "'");
}

std::string to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::Equivalence: return "equivalence";
    case VerifyMode::Saturation: return "saturation";
    case VerifyMode::Corollary: return "corollary";
    case VerifyMode::Full: return "full";
  }
  return "?";
}

Verdict VerificationReport::overall() const {
  return combine(combine(closure_verdict, equivalence_verdict), saturation_verdict);
}

std::string VerificationReport::summary_text() const {
  std::vector<std::string> parts{"closures " + std::string(to_string(closure_verdict))};
  if (equivalence_verdict != Verdict::Skip || mode != VerifyMode::Saturation)
    parts.push_back("equivalence " + std::string(to_string(equivalence_verdict)));
  if (saturation_verdict != Verdict::Skip || mode != VerifyMode::Equivalence)
    parts.push_back("saturation " + std::string(to_string(saturation_verdict)));
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? ", " : "") + parts[k];
  return out;
}

CheckRecord VerificationReport::summary() const {
  CheckRecord rec{"summary", spec_id, 0, overall(), json::object()};
  rec.witness["mode"] = to_string(mode);
  rec.witness["summary"] = summary_text();
  rec.witness["closures"] = to_string(closure_verdict);
  rec.witness["equivalence"] = to_string(equivalence_verdict);
  rec.witness["saturation"] = to_string(saturation_verdict);
  rec.witness["theorem_hypotheses"] = theorem_hypotheses;
  rec.witness["corollary_hypotheses"] = corollary_hypotheses;
  const bool gated = mode == VerifyMode::Corollary ? corollary_hypotheses : theorem_hypotheses;
  rec.witness["certified"] = gated;
  rec.witness["entries_checked"] = entries_checked;
  rec.witness["saturation_instances"] = saturation_instances;
  rec.witness["exhaustive_entries"] = exhaustive_entries;
  rec.witness["curated_entries"] = curated_entries;
  return rec;
}

std::vector<CheckRecord> VerificationReport::all_records() const {
  std::vector<CheckRecord> out;
  for (const ClosureReport& c : closures) out.push_back(c.to_record(spec_id));
  out.insert(out.end(), records.begin(), records.end());
  out.push_back(summary());
  return out;
}

VerificationReport verify_formation(const ClassSpec& spec, const Catalog& cat, VerifyMode mode) {
  VerificationReport rep;
  rep.spec_id = spec.name().empty() ? spec.describe() : spec.name();
  rep.mode = mode;
  rep.exhaustive_entries = cat.count(CatalogProvenance::Exhaustive);
  rep.curated_entries = cat.count(CatalogProvenance::Curated);

  std::vector<Structure> witnesses;
  for (const CatalogEntry& e : cat.entries)
    if (e.primitive) witnesses.push_back(e.structure);
  rep.closure_verdict = Verdict::Pass;
  for (ClosureKind k : {ClosureKind::Pq, ClosureKind::Cf, ClosureKind::Dual, ClosureKind::Subtensor, ClosureKind::Paired}) {
    rep.closures.push_back(check_closure(spec, k, witnesses));
    rep.closure_verdict = combine(rep.closure_verdict, rep.closures.back().verdict);
  }
  rep.theorem_hypotheses = rep.closure_verdict == Verdict::Pass;
  rep.corollary_hypotheses = std::all_of(rep.closures.begin(), rep.closures.end(), [](const ClosureReport& c) {
    return c.kind == ClosureKind::Cf || c.verdict == Verdict::Pass;
  });
  const bool certified = mode == VerifyMode::Corollary ? rep.corollary_hypotheses : rep.theorem_hypotheses;

  const bool equivalence = mode != VerifyMode::Saturation;
  const bool saturation = mode != VerifyMode::Equivalence;
  std::vector<std::vector<CheckRecord>> per_entry(cat.entries.size());
  parallel_for(cat.entries.size(), [&](std::size_t i) {
    const CatalogEntry& e = cat.entries[i];
    auto& out = per_entry[i];
    try {
      if (equivalence) out.push_back(equivalence_record(spec, e));
      if (saturation)
        for (CheckRecord& r : saturation_records(spec, e)) out.push_back(std::move(r));
    } catch (const ResourceError& err) {
      out.push_back(CheckRecord{"entry", e.id, 0, Verdict::Bounded, json{{"reason", err.what()}}});
    }
    if (!certified)
      for (CheckRecord& r : out) r.witness["certified"] = false;
  });
  rep.entries_checked = cat.entries.size();
  if (equivalence) rep.equivalence_verdict = Verdict::Pass;
  if (saturation) rep.saturation_verdict = Verdict::Pass;
  for (auto& recs : per_entry)
    for (CheckRecord& r : recs) {
      if (r.check == "saturation") {
        ++rep.saturation_instances;
        rep.saturation_verdict = combine(rep.saturation_verdict, r.verdict);
      } else if (r.check == "equivalence") {
        rep.equivalence_verdict = combine(rep.equivalence_verdict, r.verdict);
      } else {
        if (equivalence) rep.equivalence_verdict = combine(rep.equivalence_verdict, r.verdict);
        if (saturation) rep.saturation_verdict = combine(rep.saturation_verdict, r.verdict);
      }
      rep.records.push_back(std::move(r));
    }
  return rep;
}

}  // namespace schunck
