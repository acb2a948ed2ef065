#include "schunck/classes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "schunck/error.hpp"
#include "schunck/parallel.hpp"
#include "text_util.hpp"

namespace schunck {

namespace {

using nlohmann::json;

// ------------------------------------------------------------- eigenvalues

Poly reduced_poly(Field f, const std::vector<int>& coeffs) {
  std::vector<int> c;
  for (int x : coeffs) c.push_back(f.reduce(x));
  Poly poly(f, c);
  if (!poly.is_monic() || !is_irreducible(poly))
    throw InputError("lambda polynomial " + poly.to_string() + " is not monic irreducible over F_" +
                     std::to_string(f.p()));
  return poly;
}

class EigenTest {
 public:
  EigenTest(const LambdaSpec& lambda, Field f, bool group) : lambda_(lambda), group_(group) {
    if (lambda.is_subfield_form()) return;
    if (!group) {
      for (const auto& c : lambda.polynomials) allowed_.push_back(reduced_poly(f, c));
      return;
    }
    // mu_n generated by the nonzero roots. Residues are reduced mod the prime
    // of each chief factor, where a listed polynomial may split.
    for (const auto& c : lambda.polynomials) {
      std::vector<int> reduced;
      for (int x : c) reduced.push_back(f.reduce(x));
      const Poly poly(f, reduced);
      if (poly.degree() < 1) throw InputError("lambda polynomial must have positive degree");
      for (const PolyFactor& pf : factor(poly))
        if (!(pf.poly.degree() == 1 && pf.poly.coefficient(0) == 0)) {
          n_ = std::lcm(n_, root_order(pf.poly));
          has_roots_ = true;
        }
    }
  }

  bool allows(const Poly& irreducible) const {
    const bool zero_root = irreducible.degree() == 1 && irreducible.coefficient(0) == 0;
    if (group_ && zero_root) return false;
    if (lambda_.is_subfield_form()) {
      for (int d : lambda_.subfield_degrees)
        if (d % irreducible.degree() == 0) return true;
      return false;
    }
    if (group_) return has_roots_ && n_ % root_order(irreducible) == 0;
    return std::find(allowed_.begin(), allowed_.end(), irreducible) != allowed_.end();
  }

  bool allows_matrix(const Matrix& a) const {
    if (a.rows() == 0) return true;
    for (const PolyFactor& pf : factor_charpoly(a))
      if (!allows(pf.poly)) return false;
    return true;
  }

 private:
  const LambdaSpec& lambda_;
  bool group_;
  std::vector<Poly> allowed_;
  std::uint64_t n_ = 1;
  bool has_roots_ = false;
};

std::vector<Vector> eigen_test_elements(const LieAlgebra& l, bool all_allowed) {
  const Field f = l.field();
  const std::size_t n = l.dim();
  std::vector<Vector> out;
  if (all_allowed && checked_power(static_cast<std::uint64_t>(f.p()), n, kEigenElementCap)) {
    for_each_vector(f, n, [&](const Vector& v) {
      out.push_back(v);
      return true;
    });
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) out.push_back(l.unit(i));
  if (!all_allowed) return out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vector v = l.unit(i);
      v[j] = 1;
      out.push_back(v);
    }
  return out;
}

bool eigen_member(const ClassSpec& spec, const LieAlgebra& p) {
  const LiePtr ptr = share(p);
  const EigenTest test(spec.lambda(), p.field(), false);
  const auto elements = eigen_test_elements(p, spec.kind() == ClassSpec::Kind::Eigenvalue);
  const auto cs = chief_series(p);
  for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k) {
    const Module m = chief_factor_module(ptr, cs.terms[k + 1], cs.terms[k]);
    for (const Vector& x : elements)
      if (!test.allows_matrix(m.act(x))) return false;
  }
  return true;
}

bool eigen_member(const ClassSpec& spec, const FiniteGroup& p) {
  const GroupPtr ptr = share(p);
  const auto cs = chief_series(p);
  for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k) {
    const Module m = chief_factor_module(ptr, cs.terms[k + 1], cs.terms[k]);
    const EigenTest test(spec.lambda(), m.field(), true);
    for (const Matrix& a : m.actions())
      if (!test.allows_matrix(a)) return false;
  }
  return true;
}

std::size_t socle_dim(const Primitivity<Subspace>& prim, const LieAlgebra&) { return prim.socle->dim(); }
std::size_t socle_dim(const Primitivity<Subgroup>& prim, const FiniteGroup& g) {
  return SectionCoordinates(g, *prim.socle, trivial_subgroup(g)).dim();
}

template <class Alg>
bool member_impl(const ClassSpec& spec, const Alg& p, std::size_t soc) {
  switch (spec.kind()) {
    case ClassSpec::Kind::Supersoluble: return soc == 1;
    case ClassSpec::Kind::SocDimLe: return soc <= spec.soc_bound();
    case ClassSpec::Kind::Eigenvalue:
    case ClassSpec::Kind::EigenvalueSet: return eigen_member(spec, p);
    case ClassSpec::Kind::AllPrimitives: return true;
    case ClassSpec::Kind::AllOf:
      for (const auto& part : spec.parts())
        if (!member_impl(part, p, soc)) return false;
      return true;
    case ClassSpec::Kind::AnyOf:
      for (const auto& part : spec.parts())
        if (member_impl(part, p, soc)) return true;
      return false;
    case ClassSpec::Kind::Not: return !member_impl(spec.parts().front(), p, soc);
  }
  return false;
}

template <class Alg>
bool member_checked(const ClassSpec& spec, const Alg& p) {
  const auto prim = is_primitive(p);
  if (!prim.primitive) throw PreconditionError("member: the algebra is not primitive");
  return member_impl(spec, p, socle_dim(prim, p));
}

// ---------------------------------------------------------------- helpers

Subspace lie_kernel(const Module& m) {
  const LieAlgebra& l = *m.lie_owner();
  const std::size_t d = m.dim();
  Matrix sys(m.field(), std::max<std::size_t>(d * d, 1), l.dim());
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) sys.set(r * d + c, i, m.action(i).at(r, c));
  return Subspace::of_columns(kernel_basis(sys));
}

Subgroup group_kernel(const Module& m) {
  Subgroup k;
  for (std::size_t x = 0; x < m.group_owner()->order(); ++x)
    if (m.action(x).is_identity()) k.elements.push_back(static_cast<int>(x));
  return k;
}

json lie_json(const LieAlgebra& l) { return json{{"kind", "lie"}, {"dim", l.dim()}, {"text", l.to_text()}}; }
json group_json(const FiniteGroup& g) { return json{{"kind", "group"}, {"order", g.order()}, {"fingerprint", fingerprint(g)}}; }

/// Runs a body that may hit a resource cap; caps turn the report Bounded.
template <class Body>
void guarded(ClosureReport& rep, const std::string& where, Body&& body) {
  try {
    body();
  } catch (const ResourceError& e) {
    rep.verdict = combine(rep.verdict, Verdict::Bounded);
    rep.notes.push_back(where + ": " + e.what());
  }
}

void fail(ClosureReport& rep, json cx) {
  if (rep.verdict == Verdict::Fail) return;  // keep the first counterexample
  rep.verdict = Verdict::Fail;
  rep.counterexample = std::move(cx);
}

// Closure checks, one overload set per category.

void check_pq(const ClassSpec& spec, const Structure& w, const LieAlgebra& p, ClosureReport& rep) {
  for (const Subspace& n : all_ideals(p)) {
    if (n.is_zero() || n.is_whole()) continue;
    const LieQuotient q = quotient(p, n);
    if (!is_primitive(q.algebra).primitive) continue;
    ++rep.instances_checked;
    if (!member(spec, q.algebra))
      fail(rep, json{{"witness", w.id()}, {"quotient_by", n.to_string()}, {"quotient", lie_json(q.algebra)}});
  }
}
void check_pq(const ClassSpec& spec, const Structure& w, const FiniteGroup& p, ClosureReport& rep) {
  for (const Subgroup& n : all_ideals(p)) {
    if (n.size() == 1 || n.size() == p.order()) continue;
    const GroupQuotient q = quotient(p, n);
    if (!is_primitive(q.group).primitive) continue;
    ++rep.instances_checked;
    if (!member(spec, q.group))
      fail(rep, json{{"witness", w.id()}, {"quotient_by", n.to_string()}, {"quotient", group_json(q.group)}});
  }
}

template <class Ptr>
void check_cf(const ClassSpec& spec, const Structure& w, const Ptr& p, ClosureReport& rep) {
  const auto cs = chief_series(*p);
  for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k) {
    ++rep.instances_checked;
    const auto r = chief_factor_extension(p, cs.terms[k + 1], cs.terms[k]);
    if (!member(spec, r)) {
      json rj;
      if constexpr (std::is_same_v<Ptr, LiePtr>) rj = lie_json(r); else rj = group_json(r);
      fail(rep, json{{"witness", w.id()}, {"factor", k}, {"upper", cs.terms[k + 1].to_string()},
                     {"lower", cs.terms[k].to_string()}, {"extension", rj}});
    }
  }
}

void check_dual(const ClassSpec& spec, const Structure& w, const LiePtr& p, ClosureReport& rep) {
  const auto soc = *is_primitive(*p).socle;
  const Module m = chief_factor_module(p, soc, zero_ideal(*p));
  ++rep.instances_checked;
  const LieAlgebra r = faithful_split_extension(dual(m));
  if (!member(spec, r)) {
    json cx{{"witness", w.id()}, {"socle", soc.to_string()}, {"dual_extension", lie_json(r)}};
    // Eigenvalues of the socle action before and after dualising.
    json ev = json::array();
    for (std::size_t i = 0; i < p->dim(); ++i)
      ev.push_back(json{{"element", p->basis_names()[i]},
                        {"socle", charpoly(m.action(i)).to_string()},
                        {"dual", charpoly(dual(m).action(i)).to_string()}});
    cx["charpolys"] = std::move(ev);
    fail(rep, std::move(cx));
  }
}
void check_dual(const ClassSpec& spec, const Structure& w, const GroupPtr& p, ClosureReport& rep) {
  const auto soc = *is_primitive(*p).socle;
  const Module m = chief_factor_module(p, soc, trivial_subgroup(*p));
  ++rep.instances_checked;
  const FiniteGroup r = faithful_group_split_extension(dual(m));
  if (!member(spec, r)) fail(rep, json{{"witness", w.id()}, {"socle", soc.to_string()}, {"dual_extension", group_json(r)}});
}

void check_subtensor_pair(const ClassSpec& spec, const Structure& wp, const Structure& wq, const LiePtr& p,
                          const LiePtr& q, ClosureReport& rep) {
  auto socle_module = [](const LiePtr& a) {
    const Subspace soc = *is_primitive(*a).socle;
    LieQuotient lq = quotient(*a, soc);
    LiePtr qp = share(lq.algebra);
    Module m = descend(chief_factor_module(a, soc, zero_ideal(*a)), lq, qp);
    return std::make_pair(qp, m);
  };
  const auto [qp, mp] = socle_module(p);
  const auto [qq, mq] = socle_module(q);
  const LieSubdirect sd = subdirect_sums(*qp, *qq);
  for (const Subspace& l : sd.sums) {
    const LieSubalgebra la = as_algebra(sd.ambient, l);
    const LiePtr lp = share(la.algebra);
    std::vector<Matrix> ap, aq;
    for (std::size_t k = 0; k < la.algebra.dim(); ++k) {
      const Vector col = la.inclusion.column(k);
      ap.push_back(mp.act(Vector(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(qp->dim()))));
      aq.push_back(mq.act(Vector(col.begin() + static_cast<std::ptrdiff_t>(qp->dim()), col.end())));
    }
    const Module t = tensor(Module::lie(lp, ap, mp.dim()), Module::lie(lp, aq, mq.dim()));
    for (const auto& cf : composition_factors(t)) {
      ++rep.instances_checked;
      const LieAlgebra r = faithful_split_extension(cf.module);
      if (!member(spec, r))
        fail(rep, json{{"witness_p", wp.id()}, {"witness_q", wq.id()}, {"subdirect_sum", l.to_string()},
                       {"factor_dim", cf.module.dim()}, {"subtensor_product", lie_json(r)}});
    }
  }
}

void check_subtensor_pair(const ClassSpec& spec, const Structure& wp, const Structure& wq, const GroupPtr& p,
                          const GroupPtr& q, ClosureReport& rep) {
  auto socle_module = [](const GroupPtr& a) {
    const Subgroup soc = *is_primitive(*a).socle;
    GroupQuotient gq = quotient(*a, soc);
    GroupPtr qp = share(gq.group);
    Module m = descend(chief_factor_module(a, soc, trivial_subgroup(*a)), gq, qp);
    return std::make_pair(qp, m);
  };
  const auto [qp, mp] = socle_module(p);
  const auto [qq, mq] = socle_module(q);
  if (mp.field() != mq.field()) {
    rep.notes.push_back("pair (" + wp.id() + ", " + wq.id() + ") skipped: socles over different primes");
    return;
  }
  const GroupSubdirect sd = subdirect_sums(*qp, *qq);
  for (const Subgroup& l : sd.sums) {
    const GroupSubgroup lg = as_group(sd.ambient, l);
    const GroupPtr lp = share(lg.group);
    std::vector<Matrix> ap, aq;
    for (std::size_t k = 0; k < lg.group.order(); ++k) {
      const int idx = lg.inclusion[k];
      ap.push_back(mp.action(static_cast<std::size_t>(idx) / qq->order()));
      aq.push_back(mq.action(static_cast<std::size_t>(idx) % qq->order()));
    }
    const Module t = tensor(Module::group(mp.field(), lp, ap), Module::group(mq.field(), lp, aq));
    for (const auto& cf : composition_factors(t)) {
      ++rep.instances_checked;
      const FiniteGroup r = faithful_group_split_extension(cf.module);
      if (!member(spec, r))
        fail(rep, json{{"witness_p", wp.id()}, {"witness_q", wq.id()}, {"subdirect_sum", l.to_string()},
                       {"factor_dim", cf.module.dim()}, {"subtensor_product", group_json(r)}});
    }
  }
}

// ------------------------------------------------------------------ parser

struct SpecLine {
  std::size_t indent;
  std::vector<std::string> words;
  std::size_t number;
};

[[noreturn]] void parse_fail(const SpecLine& l, const std::string& what) {
  throw InputError("class spec line " + std::to_string(l.number) + ": " + what);
}

ClassSpec parse_node(const std::vector<SpecLine>& lines, std::size_t& i);

ClassSpec parse_builtin(const std::vector<SpecLine>& lines, std::size_t& i) {
  const SpecLine& head = lines[i];
  if (head.words.size() != 2) parse_fail(head, "expected 'class <name>'");
  std::string name = head.words[1];
  std::replace(name.begin(), name.end(), '-', '_');
  std::optional<LambdaSpec> lambda;
  std::optional<std::size_t> soc;
  ++i;
  while (i < lines.size() && lines[i].indent >= head.indent &&
         (lines[i].words[0] == "lambda" || lines[i].words[0] == "soc-dim")) {
    const SpecLine& l = lines[i];
    if (l.words[0] == "soc-dim") {
      if (l.words.size() != 2) parse_fail(l, "expected 'soc-dim <k>'");
      soc = static_cast<std::size_t>(detail::parse_int(l.words[1], "soc-dim"));
    } else {
      if (l.words.size() < 3) parse_fail(l, "expected 'lambda subfield|set|poly <values>'");
      if (!lambda) lambda = LambdaSpec{};
      std::vector<int> values;
      for (std::size_t k = 2; k < l.words.size(); ++k) values.push_back(detail::parse_int(l.words[k], "lambda"));
      if (l.words[1] == "subfield") {
        for (int d : values) {
          if (d < 1) parse_fail(l, "subfield degrees must be positive");
          lambda->subfield_degrees.insert(d);
        }
      } else if (l.words[1] == "set") {
        for (int r : values) lambda->polynomials.push_back({-r, 1});
      } else if (l.words[1] == "poly") {
        lambda->polynomials.push_back(values);
      } else {
        parse_fail(l, "unknown lambda form '" + l.words[1] + "'");
      }
    }
    ++i;
  }
  if (lambda && !lambda->subfield_degrees.empty() && !lambda->polynomials.empty())
    parse_fail(head, "lambda mixes subfield and explicit forms");
  ClassSpec out;
  if (name == "supersoluble") {
    out = ClassSpec::supersoluble();
  } else if (name == "soc_dim_le") {
    out = ClassSpec::soc_dim_le(soc.value_or(1));
  } else if (name == "eigenvalue" || name == "edef") {
    out = ClassSpec::eigenvalue(lambda.value_or(LambdaSpec::subfields({1})));
  } else if (name == "eigenvalue_set") {
    if (!lambda || lambda->is_subfield_form()) parse_fail(head, "eigenvalue_set needs 'lambda set' or 'lambda poly'");
    out = ClassSpec::eigenvalue_set(*lambda);
  } else if (name == "all_primitives") {
    out = ClassSpec::all_primitives();
  } else {
    parse_fail(head, "unknown class '" + head.words[1] + "'");
  }
  if (soc && out.kind() != ClassSpec::Kind::SocDimLe) parse_fail(head, "soc-dim given for a class without it");
  if (lambda && out.kind() != ClassSpec::Kind::Eigenvalue && out.kind() != ClassSpec::Kind::EigenvalueSet)
    parse_fail(head, "lambda given for a class without it");
  return out;
}

ClassSpec parse_node(const std::vector<SpecLine>& lines, std::size_t& i) {
  const SpecLine& head = lines[i];
  const std::string& w = head.words[0];
  if (w == "class") return parse_builtin(lines, i);
  if (w != "all-of:" && w != "any-of:" && w != "not:") parse_fail(head, "unexpected '" + w + "'");
  ++i;
  std::vector<ClassSpec> parts;
  while (i < lines.size() && lines[i].indent > head.indent) parts.push_back(parse_node(lines, i));
  if (parts.empty()) parse_fail(head, "combinator without members");
  if (w == "all-of:") return ClassSpec::all_of(std::move(parts));
  if (w == "any-of:") return ClassSpec::any_of(std::move(parts));
  if (parts.size() != 1) parse_fail(head, "'not:' takes exactly one member");
  return ClassSpec::negate(std::move(parts.front()));
}

std::string describe_lambda(const LambdaSpec& l) {
  std::ostringstream out;
  if (l.is_subfield_form()) {
    out << "subfield";
    for (int d : l.subfield_degrees) out << ' ' << d;
  } else {
    out << "poly";
    for (const auto& c : l.polynomials) {
      out << " [";
      for (std::size_t k = 0; k < c.size(); ++k) out << (k ? " " : "") << c[k];
      out << ']';
    }
  }
  return out.str();
}

}  // namespace

// ---------------------------------------------------------------- ClassSpec

LambdaSpec LambdaSpec::subfields(std::set<int> degrees) {
  LambdaSpec l;
  l.subfield_degrees = std::move(degrees);
  return l;
}

LambdaSpec LambdaSpec::residues(const std::vector<int>& rs) {
  LambdaSpec l;
  for (int r : rs) l.polynomials.push_back({-r, 1});
  return l;
}

ClassSpec ClassSpec::supersoluble() {
  ClassSpec s;
  s.kind_ = Kind::Supersoluble;
  return s;
}
ClassSpec ClassSpec::soc_dim_le(std::size_t k) {
  ClassSpec s;
  s.kind_ = Kind::SocDimLe;
  s.soc_bound_ = k;
  return s;
}
ClassSpec ClassSpec::eigenvalue(LambdaSpec lambda) {
  ClassSpec s;
  s.kind_ = Kind::Eigenvalue;
  s.lambda_ = std::move(lambda);
  return s;
}
ClassSpec ClassSpec::eigenvalue_set(LambdaSpec lambda) {
  ClassSpec s;
  s.kind_ = Kind::EigenvalueSet;
  s.lambda_ = std::move(lambda);
  return s;
}
ClassSpec ClassSpec::all_primitives() { return ClassSpec{}; }
ClassSpec ClassSpec::all_of(std::vector<ClassSpec> parts) {
  ClassSpec s;
  s.kind_ = Kind::AllOf;
  s.parts_ = std::move(parts);
  return s;
}
ClassSpec ClassSpec::any_of(std::vector<ClassSpec> parts) {
  ClassSpec s;
  s.kind_ = Kind::AnyOf;
  s.parts_ = std::move(parts);
  return s;
}
ClassSpec ClassSpec::negate(ClassSpec part) {
  ClassSpec s;
  s.kind_ = Kind::Not;
  s.parts_.push_back(std::move(part));
  return s;
}

std::string ClassSpec::describe() const {
  auto join = [&](const char* op) {
    std::string out = std::string(op) + "(";
    for (std::size_t k = 0; k < parts_.size(); ++k) out += (k ? ", " : "") + parts_[k].describe();
    return out + ")";
  };
  switch (kind_) {
    case Kind::Supersoluble: return "supersoluble";
    case Kind::SocDimLe: return "soc_dim_le(" + std::to_string(soc_bound_) + ")";
    case Kind::Eigenvalue: return "eigenvalue(" + describe_lambda(lambda_) + ")";
    case Kind::EigenvalueSet: return "eigenvalue_set(" + describe_lambda(lambda_) + ")";
    case Kind::AllPrimitives: return "all_primitives";
    case Kind::AllOf: return join("all_of");
    case Kind::AnyOf: return join("any_of");
    case Kind::Not: return join("not");
  }
  return "?";
}

ClassSpec parse_class_spec(std::string_view text) {
  std::vector<SpecLine> lines;
  std::string name;
  std::size_t number = 0;
  for (const std::string& raw : detail::split_lines(text)) {
    ++number;
    const std::string line = detail::strip_comment(raw);
    auto words = detail::split_words(line);
    if (words.empty()) continue;
    const std::size_t indent = raw.find_first_not_of(" \t");
    if (words[0] == "name") {
      if (words.size() != 2 || indent != 0) throw InputError("class spec line " + std::to_string(number) + ": bad name line");
      name = words[1];
      continue;
    }
    lines.push_back({indent, std::move(words), number});
  }
  if (lines.empty()) throw InputError("class spec: empty");
  std::size_t i = 0;
  ClassSpec spec = parse_node(lines, i);
  if (i != lines.size()) parse_fail(lines[i], "trailing content after the class");
  if (name.empty()) name = spec.describe();
  spec.named(name);
  return spec;
}

// -------------------------------------------------------------- membership

bool member(const ClassSpec& spec, const LieAlgebra& p) { return member_checked(spec, p); }
bool member(const ClassSpec& spec, const FiniteGroup& p) { return member_checked(spec, p); }
bool member(const ClassSpec& spec, const Structure& p) {
  return p.is_lie() ? member(spec, *p.lie()) : member(spec, *p.group());
}

LieAlgebra faithful_split_extension(const Module& m) {
  if (!m.is_lie()) throw InputError("faithful_split_extension: Lie module required");
  const LiePtr& l = m.lie_owner();
  const Subspace k = lie_kernel(m);
  const LieQuotient q = quotient(*l, k);
  const LiePtr qp = share(q.algebra);
  LieSplitExtension ext = split_extension(qp, descend(m, q, qp));
  check_internal(is_primitive(ext.algebra).primitive, "split extension by a faithful irreducible is not primitive");
  return std::move(ext.algebra);
}

FiniteGroup faithful_group_split_extension(const Module& m) {
  if (m.is_lie()) throw InputError("faithful_group_split_extension: group module required");
  const GroupPtr& g = m.group_owner();
  const GroupQuotient q = quotient(*g, group_kernel(m));
  const GroupPtr qp = share(q.group);
  GroupSplitExtension ext = split_extension(qp, descend(m, q, qp));
  check_internal(is_primitive(ext.group).primitive, "split extension by a faithful irreducible is not primitive");
  return std::move(ext.group);
}

LieAlgebra chief_factor_extension(const LiePtr& l, const Subspace& upper, const Subspace& lower) {
  const Module m = chief_factor_module(l, upper, lower);
  check_internal(lie_kernel(m) == centralizer(*l, upper, lower), "chief factor kernel differs from its centralizer");
  return faithful_split_extension(m);
}

FiniteGroup chief_factor_extension(const GroupPtr& g, const Subgroup& upper, const Subgroup& lower) {
  const Module m = chief_factor_module(g, upper, lower);
  check_internal(group_kernel(m) == centralizer(*g, upper, lower), "chief factor kernel differs from its centralizer");
  return faithful_group_split_extension(m);
}

bool is_x_central(const ClassSpec& spec, const LiePtr& l, const Subspace& upper, const Subspace& lower) {
  return member(spec, chief_factor_extension(l, upper, lower));
}

bool is_x_central(const ClassSpec& spec, const GroupPtr& g, const Subgroup& upper, const Subgroup& lower) {
  return member(spec, chief_factor_extension(g, upper, lower));
}

// ---------------------------------------------------------- subdirect sums

LieSubdirect subdirect_sums(const LieAlgebra& q1, const LieAlgebra& q2, std::size_t cap) {
  if (q1.field() != q2.field()) throw InputError("subdirect_sums: different fields");
  if (q1.dim() + q2.dim() > cap) throw ResourceError("subdirect_sums: dimension above cap");
  LieSubdirect out{direct_sum(q1, q2), {}};
  const Field f = q1.field();
  const std::size_t n1 = q1.dim();
  const std::size_t n = n1 + q2.dim();
  auto embed = [&](const Vector& a, const Vector& b) {
    Vector v(n, 0);
    std::copy(a.begin(), a.end(), v.begin());
    std::copy(b.begin(), b.end(), v.begin() + static_cast<std::ptrdiff_t>(n1));
    return v;
  };
  std::set<Subspace> found;
  for (const Subspace& k1 : all_ideals(q1))
    for (const Subspace& k2 : all_ideals(q2)) {
      if (n1 - k1.dim() != q2.dim() - k2.dim()) continue;
      std::vector<Vector> base;
      for (const Vector& v : k1.rows()) base.push_back(embed(v, Vector(q2.dim(), 0)));
      for (const Vector& v : k2.rows()) base.push_back(embed(Vector(n1, 0), v));
      if (k1.is_whole()) {
        found.insert(Subspace::span(f, n, base));
        continue;
      }
      const LieQuotient a = quotient(q1, k1);
      const LieQuotient b = quotient(q2, k2);
      for (const Matrix& theta : all_isomorphisms(a.algebra, b.algebra)) {
        std::vector<Vector> gens = base;
        for (std::size_t k = 0; k < a.algebra.dim(); ++k)
          gens.push_back(embed(a.section.column(k), b.section.apply(theta.column(k))));
        const Subspace s = Subspace::span(f, n, gens);
        check_internal(is_subalgebra(out.ambient, s), "Goursat graph is not a subalgebra");
        found.insert(s);
      }
    }
  out.sums.assign(found.begin(), found.end());
  return out;
}

GroupSubdirect subdirect_sums(const FiniteGroup& q1, const FiniteGroup& q2, std::size_t cap) {
  if (q1.order() * q2.order() > cap) throw ResourceError("subdirect_sums: order above cap");
  GroupSubdirect out{direct_product(q1, q2), {}};
  const int m = static_cast<int>(q2.order());
  std::set<Subgroup> found;
  for (const Subgroup& k1 : all_ideals(q1))
    for (const Subgroup& k2 : all_ideals(q2)) {
      if (q1.order() / k1.size() != q2.order() / k2.size()) continue;
      const GroupQuotient a = quotient(q1, k1);
      const GroupQuotient b = quotient(q2, k2);
      std::vector<std::vector<int>> isos;
      if (a.group.order() == 1) {
        isos.push_back({b.group.identity()});
      } else {
        isos = all_isomorphisms(a.group, b.group);
      }
      for (const auto& theta : isos) {
        Subgroup s;
        for (std::size_t x = 0; x < q1.order(); ++x)
          for (std::size_t y = 0; y < q2.order(); ++y)
            if (theta[static_cast<std::size_t>(a.projection[x])] == b.projection[y])
              s.elements.push_back(static_cast<int>(x) * m + static_cast<int>(y));
        std::sort(s.elements.begin(), s.elements.end());
        check_internal(is_subgroup(out.ambient, s), "Goursat graph is not a subgroup");
        found.insert(s);
      }
    }
  out.sums.assign(found.begin(), found.end());
  return out;
}

// ------------------------------------------------------------------ closure

ClosureKind parse_closure_kind(std::string_view name) {
  if (name == "pq") return ClosureKind::Pq;
  if (name == "cf") return ClosureKind::Cf;
  if (name == "dual") return ClosureKind::Dual;
  if (name == "subtensor") return ClosureKind::Subtensor;
  if (name == "paired") return ClosureKind::Paired;
  throw InputError("unknown closure kind '" + std::string(name) + "'");
}

std::string to_string(ClosureKind kind) {
  switch (kind) {
    case ClosureKind::Pq: return "pq";
    case ClosureKind::Cf: return "cf";
    case ClosureKind::Dual: return "dual";
    case ClosureKind::Subtensor: return "subtensor";
    case ClosureKind::Paired: return "paired";
  }
  return "?";
}

CheckRecord ClosureReport::to_record(const std::string& spec_id) const {
  CheckRecord rec{"closure-" + to_string(kind), spec_id, 0, verdict, json::object()};
  rec.witness["witnesses_used"] = witnesses_used;
  rec.witness["instances_checked"] = instances_checked;
  rec.witness["notes"] = notes;
  if (counterexample) rec.witness["counterexample"] = *counterexample;
  return rec;
}

ClosureReport check_closure(const ClassSpec& spec, ClosureKind kind, const std::vector<Structure>& witnesses) {
  ClosureReport rep;
  rep.kind = kind;
  if (kind == ClosureKind::Paired) {
    rep.notes.push_back("paired: regarded as always satisfied outside the Leibniz setting");
    return rep;
  }
  std::vector<const Structure*> used;
  for (const Structure& w : witnesses) {
    const bool primitive = w.is_lie() ? is_primitive(*w.lie()).primitive : is_primitive(*w.group()).primitive;
    if (!primitive) {
      rep.notes.push_back(w.id() + " skipped: not primitive");
      continue;
    }
    if (!member(spec, w)) {
      rep.notes.push_back(w.id() + " skipped: not in the class");
      continue;
    }
    used.push_back(&w);
  }
  rep.witnesses_used = used.size();

  // Independent tasks run concurrently; results merge in task order so the
  // report does not depend on scheduling.
  struct Task {
    std::string label;
    std::function<void(ClosureReport&)> run;
  };
  std::vector<Task> tasks;
  if (kind == ClosureKind::Subtensor) {
    for (const Structure* a : used)
      for (const Structure* b : used) {
        if (a->is_lie() != b->is_lie()) continue;
        if (a->is_lie() && a->field() != b->field()) continue;
        tasks.push_back({a->id() + " x " + b->id(), [&spec, a, b](ClosureReport& r) {
                           if (a->is_lie()) check_subtensor_pair(spec, *a, *b, a->lie(), b->lie(), r);
                           else check_subtensor_pair(spec, *a, *b, a->group(), b->group(), r);
                         }});
      }
  } else {
    for (const Structure* w : used)
      tasks.push_back({w->id(), [&spec, kind, w](ClosureReport& r) {
                         switch (kind) {
                           case ClosureKind::Pq:
                             if (w->is_lie()) check_pq(spec, *w, *w->lie(), r); else check_pq(spec, *w, *w->group(), r);
                             break;
                           case ClosureKind::Cf:
                             if (w->is_lie()) check_cf(spec, *w, w->lie(), r); else check_cf(spec, *w, w->group(), r);
                             break;
                           case ClosureKind::Dual:
                             if (w->is_lie()) check_dual(spec, *w, w->lie(), r); else check_dual(spec, *w, w->group(), r);
                             break;
                           default: break;
                         }
                       }});
  }
  std::vector<ClosureReport> parts(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t i) { guarded(parts[i], tasks[i].label, [&] { tasks[i].run(parts[i]); }); });
  for (ClosureReport& part : parts) {
    rep.instances_checked += part.instances_checked;
    rep.notes.insert(rep.notes.end(), part.notes.begin(), part.notes.end());
    if (part.verdict == Verdict::Fail) fail(rep, std::move(*part.counterexample));
    else rep.verdict = combine(rep.verdict, part.verdict);
  }
  return rep;
}

}  // namespace schunck
