#include "schunck/blocks.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "schunck/cohomology.hpp"
#include "schunck/parallel.hpp"

namespace schunck {

namespace {

using nlohmann::json;

template <class F>
auto on_owner(const Structure& s, F&& f) {
  return s.is_lie() ? f(s.lie()) : f(s.group());
}

bool is_power_of(std::size_t n, int p) {
  if (n < 2) return false;
  while (n % static_cast<std::size_t>(p) == 0) n /= static_cast<std::size_t>(p);
  return n == 1;
}

std::string section_label(std::size_t step, std::size_t dim) {
  return "cf" + std::to_string(step) + "[dim " + std::to_string(dim) + "]";
}

json member_json(const Universe& u, std::size_t i) {
  return json{{"member", i}, {"dim", u.irreducibles[i].dim()}, {"word", u.word_string(i)}};
}

Structure quotient_structure(const Structure& s, const LieQuotient& q) {
  return Structure(share(q.algebra), s.id() + "/N");
}
Structure quotient_structure(const Structure& s, const GroupQuotient& q) {
  return Structure(share(q.group), s.field(), s.id() + "/N");
}

/// Checks every linkage edge of owner/N lifts, for all proper nonzero N.
template <class Ptr>
json qgpblock_for(const Structure& s, const Ptr& owner, int depth, Verdict& verdict) {
  json lifted = json::array();
  for (const auto& n : all_ideals(*owner)) {
    if (n == whole(*owner)) continue;
    if constexpr (std::is_same_v<Ptr, LiePtr>) {
      if (n.is_zero()) continue;
    } else {
      if (n.size() == 1) continue;
    }
    const auto q = quotient(*owner, n);
    const Structure qs = quotient_structure(s, q);
    const Universe qu = generate_universe(qs, depth);
    const LinkageGraph qg = linkage_graph(qu);
    std::size_t ok = 0;
    for (const auto& [i, j] : qg.edges) {
      const Module vi = pullback(qu.irreducibles[i], q, owner);
      const Module vj = pullback(qu.irreducibles[j], q, owner);
      const bool forward = qg.ext[i][j] == 0 || ext1(vi, vj).dim >= qg.ext[i][j];
      const bool backward = qg.ext[j][i] == 0 || ext1(vj, vi).dim >= qg.ext[j][i];
      if (forward && backward) {
        ++ok;
      } else {
        verdict = Verdict::Fail;
        lifted.push_back(json{{"quotient_by", n.to_string()}, {"edge", {i, j}}, {"lifts", false}});
      }
    }
    lifted.push_back(json{{"quotient_by", n.to_string()}, {"edges", qg.edges.size()}, {"lifted", ok}});
  }
  return lifted;
}

}  // namespace

// ------------------------------------------------------------------ universe

std::optional<std::size_t> Universe::find(const Module& m) const {
  for (std::size_t i = 0; i < irreducibles.size(); ++i)
    if (irreducibles[i].dim() == m.dim() && is_isomorphic(irreducibles[i], m)) return i;
  return std::nullopt;
}

std::string Universe::word_string(std::size_t member) const {
  const auto& w = provenance.at(member).word;
  if (w.empty()) return "trivial";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += " (x) ";
    out += letters[w[k]].label;
  }
  return out;
}

std::vector<Letter> p_chief_factor_modules(const Structure& s, unsigned variant) {
  std::vector<Letter> out;
  if (s.is_lie()) {
    const auto cs = chief_series(*s.lie(), variant);
    for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k) {
      Module m = chief_factor_module(s.lie(), cs.terms[k + 1], cs.terms[k]);
      const std::size_t d = m.dim();
      out.push_back({std::move(m), section_label(k, d)});
    }
    return out;
  }
  const auto cs = chief_series(*s.group(), variant);
  for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k) {
    if (!is_power_of(cs.terms[k + 1].size() / cs.terms[k].size(), s.field().p())) continue;
    Module m = chief_factor_module(s.group(), cs.terms[k + 1], cs.terms[k]);
    const std::size_t d = m.dim();
    out.push_back({std::move(m), section_label(k, d)});
  }
  return out;
}

Universe generate_universe(const Structure& s, int depth, std::size_t cap) {
  if (depth < 1) throw InputError("generate_universe: depth must be at least 1");
  Universe u;
  u.depth = depth;
  for (Letter& l : p_chief_factor_modules(s)) {
    Letter d{dual(l.module), "dual " + l.label};
    u.letters.push_back(std::move(l));
    u.letters.push_back(std::move(d));
  }
  auto add = [&](Module m, Provenance prov) -> bool {
    if (u.find(m)) return false;
    if (u.irreducibles.size() >= cap)
      throw UniverseCapError("universe exceeds " + std::to_string(cap) + " members", u);
    u.irreducibles.push_back(std::move(m));
    u.provenance.push_back(std::move(prov));
    return true;
  };
  add(s.trivial_module(), {});
  std::vector<std::size_t> frontier;
  for (std::size_t c = 0; c < u.letters.size(); ++c) {
    const std::size_t before = u.irreducibles.size();
    if (add(u.letters[c].module, {{c}, 0})) frontier.push_back(before);
  }
  for (int level = 2; level <= depth; ++level) {
    std::vector<std::size_t> next;
    for (std::size_t x : frontier)
      for (std::size_t c = 0; c < u.letters.size(); ++c) {
        if (u.irreducibles[x].dim() * u.letters[c].module.dim() > kMaxTensorDim) {
          u.truncated = true;
          continue;
        }
        const Module t = tensor(u.irreducibles[x], u.letters[c].module);
        for (auto& cf : composition_factors(t)) {
          Provenance prov{u.provenance[x].word, x};
          prov.word.push_back(c);
          const std::size_t before = u.irreducibles.size();
          if (add(std::move(cf.module), std::move(prov))) next.push_back(before);
        }
      }
    frontier = std::move(next);
  }
  return u;
}

// ------------------------------------------------------------------- linkage

bool LinkageGraph::in_principal(std::size_t member) const {
  return std::binary_search(principal_component.begin(), principal_component.end(), member);
}

std::vector<std::size_t> LinkageGraph::chain_to(std::size_t member) const {
  if (!in_principal(member)) return {};
  std::vector<std::size_t> chain{member};
  while (bfs_parent[chain.back()] >= 0) chain.push_back(static_cast<std::size_t>(bfs_parent[chain.back()]));
  std::reverse(chain.begin(), chain.end());
  return chain;
}

LinkageGraph linkage_graph(const Universe& u) {
  const std::size_t n = u.irreducibles.size();
  LinkageGraph g;
  g.ext.assign(n, std::vector<std::size_t>(n, 0));
  parallel_for(n * n, [&](std::size_t k) {
    g.ext[k / n][k % n] = ext1(u.irreducibles[k / n], u.irreducibles[k % n]).dim;
  });
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.ext[i][j] || g.ext[j][i]) {
        g.edges.emplace_back(i, j);
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  g.bfs_parent.assign(n, -1);
  if (n == 0) return g;
  std::vector<bool> seen(n, false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    g.principal_component.push_back(x);
    for (std::size_t y : adj[x])
      if (!seen[y]) {
        seen[y] = true;
        g.bfs_parent[y] = static_cast<long>(x);
        queue.push_back(y);
      }
  }
  std::sort(g.principal_component.begin(), g.principal_component.end());
  return g;
}

// -------------------------------------------------------------------- checks

CheckRecord check_chiefsB0(const Structure& s, int depth, unsigned variants) {
  CheckRecord rec{"chiefsB0", s.id(), depth, Verdict::Pass, json::object()};
  try {
    const Universe u = generate_universe(s, depth);
    const LinkageGraph g = linkage_graph(u);
    json factors = json::array();
    for (unsigned v = 0; v < variants; ++v)
      for (const Letter& l : p_chief_factor_modules(s, v)) {
        const auto idx = u.find(l.module);
        const bool ok = idx && g.in_principal(*idx);
        json f{{"variant", v}, {"factor", l.label}, {"in_b0", ok}};
        if (idx) f["member"] = *idx;
        if (ok) f["chain"] = g.chain_to(*idx);
        if (!ok) rec.verdict = combine(rec.verdict, u.truncated ? Verdict::Bounded : Verdict::Fail);
        factors.push_back(std::move(f));
      }
    rec.witness = json{{"universe_size", u.irreducibles.size()},
                       {"principal_size", g.principal_component.size()},
                       {"truncated", u.truncated},
                       {"factors", std::move(factors)}};
  } catch (const UniverseCapError& e) {
    rec.verdict = Verdict::Bounded;
    rec.witness = json{{"reason", e.what()}};
  }
  return rec;
}

TensorWitness tens_witness(const Universe& u, const LinkageGraph& g, const Module& v, const Module& w) {
  if (ext1(v, w).dim == 0) throw PreconditionError("tens_witness: every extension splits (ext1 = 0)");
  const Module hom = hom_module(v, w);
  for (std::size_t i : g.principal_component) {
    const Module& cand = u.irreducibles[i];
    if (cand.dim() > hom.dim()) continue;
    const auto maps = intertwiners(cand, hom);
    if (maps.empty()) continue;
    const Subspace a = Subspace::of_columns(maps.front());
    const Module am = submodule(hom, a);
    Matrix eps = evaluation_map(v, w, a);
    check_internal(is_module_hom(tensor(v, am), w, eps), "tens_witness: evaluation is not a module map");
    check_internal(rank(eps) == w.dim(), "tens_witness: evaluation is not onto an irreducible target");
    return TensorWitness{am, i, std::move(eps), w};
  }
  throw BoundedSearchError("tens_witness: no principal member of depth " + std::to_string(u.depth) +
                           " embeds in Hom(v, w)");
}

ChiefsWitness chiefs_witness(const Universe& u, const LinkageGraph& g, const Module& v) {
  const auto idx = u.find(v);
  if (!idx) throw BoundedSearchError("chiefs_witness: module not found within depth " + std::to_string(u.depth));
  if (!g.in_principal(*idx)) throw PreconditionError("chiefs_witness: module is not in the principal component");
  ChiefsWitness out;
  out.member = *idx;
  out.word = u.provenance[*idx].word;
  for (std::size_t c : out.word) out.letters.push_back(u.letters[c].label);
  for (std::optional<std::size_t> x = *idx; x && *x != 0; x = u.provenance[*x].parent) out.chop_chain.push_back(*x);
  std::reverse(out.chop_chain.begin(), out.chop_chain.end());
  return out;
}

CheckRecord check_dual_closure(const Structure& s, int depth) {
  CheckRecord rec{"dual", s.id(), depth, Verdict::Pass, json::object()};
  try {
    const Universe u = generate_universe(s, depth);
    const LinkageGraph g = linkage_graph(u);
    json failures = json::array();
    for (std::size_t i : g.principal_component) {
      const auto j = u.find(dual(u.irreducibles[i]));
      if (j && g.in_principal(*j)) continue;
      rec.verdict = combine(rec.verdict, j || !u.truncated ? Verdict::Fail : Verdict::Bounded);
      failures.push_back(member_json(u, i));
    }
    rec.witness = json{{"principal_size", g.principal_component.size()}, {"failures", std::move(failures)}};
  } catch (const UniverseCapError& e) {
    rec.verdict = Verdict::Bounded;
    rec.witness = json{{"reason", e.what()}};
  }
  return rec;
}

CheckRecord check_b0ker(const Structure& s, int depth) {
  CheckRecord rec{"b0ker", s.id(), depth, Verdict::Pass, json::object()};
  try {
    const Universe u = generate_universe(s, depth);
    const LinkageGraph g = linkage_graph(u);
    json failures = json::array();
    std::size_t checked = 0;
    on_owner(s, [&](const auto& owner) {
      for (const auto& a : minimal_ideals(*owner))
        for (std::size_t i : g.principal_component) {
          ++checked;
          if (restrict(u.irreducibles[i], a).is_trivial()) continue;
          rec.verdict = Verdict::Fail;
          json f = member_json(u, i);
          f["minimal_ideal"] = a.to_string();
          failures.push_back(std::move(f));
        }
      return 0;
    });
    rec.witness = json{{"pairs_checked", checked}, {"failures", std::move(failures)}};
  } catch (const UniverseCapError& e) {
    rec.verdict = Verdict::Bounded;
    rec.witness = json{{"reason", e.what()}};
  }
  return rec;
}

CheckRecord check_qgpblock(const Structure& s, int depth) {
  CheckRecord rec{"qgpblock", s.id(), depth, Verdict::Pass, json::object()};
  try {
    json quotients = on_owner(s, [&](const auto& owner) { return qgpblock_for(s, owner, depth, rec.verdict); });
    const bool none = quotients.empty();
    rec.witness = json{{"quotients", std::move(quotients)}};
    if (none) {
      rec.verdict = Verdict::Skip;
      rec.witness["reason"] = "no proper nontrivial quotient";
    }
  } catch (const UniverseCapError& e) {
    rec.verdict = Verdict::Bounded;
    rec.witness = json{{"reason", e.what()}};
  }
  return rec;
}

CheckRecord check_diffk(const Structure& s) {
  CheckRecord rec{"diffK", s.id(), 0, Verdict::Skip, json::object()};
  if (s.is_lie()) {
    rec.witness = json{{"reason", "stated for groups"}};
    return rec;
  }
  const GroupPtr& g = s.group();
  std::vector<Module> irr;
  for (auto& cf : composition_factors(regular_module(s.field(), g))) irr.push_back(std::move(cf.module));
  std::size_t pairs = 0;
  json failures = json::array();
  for (const Subgroup& a : minimal_ideals(*g)) {
    std::vector<std::size_t> fixed, moved;
    for (std::size_t i = 0; i < irr.size(); ++i) (restrict(irr[i], a).is_trivial() ? fixed : moved).push_back(i);
    for (std::size_t v : fixed)
      for (std::size_t w : moved) {
        ++pairs;
        const std::size_t vw = ext1(irr[v], irr[w]).dim;
        const std::size_t wv = ext1(irr[w], irr[v]).dim;
        if (vw == 0 && wv == 0) continue;
        failures.push_back(json{{"minimal_normal", a.to_string()},
                                {"v_dim", irr[v].dim()},
                                {"w_dim", irr[w].dim()},
                                {"ext_vw", vw},
                                {"ext_wv", wv}});
      }
  }
  if (pairs > 0) rec.verdict = failures.empty() ? Verdict::Pass : Verdict::Fail;
  rec.witness = json{{"irreducibles", irr.size()}, {"pairs_checked", pairs}, {"failures", std::move(failures)}};
  if (pairs == 0) rec.witness["reason"] = "no irreducible is moved by a minimal normal subgroup";
  return rec;
}

CheckRecord check_gp_sole(const GroupPtr& g) {
  CheckRecord rec{"gp-sole", "", 0, Verdict::Skip, json::object()};
  const auto mins = minimal_ideals(*g);
  if (mins.size() != 1) {
    rec.witness = json{{"reason", "minimal normal subgroup is not unique"}};
    return rec;
  }
  const Subgroup& a = mins.front();
  const SectionCoordinates ca(*g, a, trivial_subgroup(*g));
  const int p = ca.field().p();
  if (!complements(*g, a).empty()) {
    rec.witness = json{{"reason", "G splits over its minimal normal subgroup"}};
    return rec;
  }
  const GroupPtr gp = g;
  const Module am = chief_factor_module(gp, a, trivial_subgroup(*g));
  const GroupQuotient q = quotient(*g, a);
  rec.verdict = Verdict::Pass;
  json cases = json::array();
  for (const Subgroup& bq : minimal_ideals(q.group)) {
    Subgroup b;
    for (std::size_t x = 0; x < g->order(); ++x)
      if (bq.contains(q.projection[x])) b.elements.push_back(static_cast<int>(x));
    json c{{"B", b.to_string()}};
    if (!is_power_of(b.size() / a.size(), p)) {
      rec.verdict = Verdict::Fail;
      c["claim"] = "B/A is a p-group";
      c["holds"] = false;
      cases.push_back(std::move(c));
      continue;
    }
    const SectionCoordinates cb(*g, b, a);
    const Module bm = chief_factor_module(gp, b, a);
    const Field f = ca.field();
    bool abelian = true;
    for (int x : b.elements)
      for (int y : b.elements)
        if (g->mul(x, y) != g->mul(y, x)) abelian = false;
    bool exponent_p = true;
    for (int x : b.elements)
      if (g->pow(x, static_cast<long long>(p)) != g->identity()) exponent_p = false;
    if (!abelian) {
      // [b1] (x) [b2] -> [b1 b2 b1^-1 b2^-1], basis index i * k + j.
      const std::size_t k = cb.dim();
      Matrix map(f, ca.dim(), k * k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          const int b1 = cb.basis()[i];
          const int b2 = cb.basis()[j];
          const int comm = g->mul(g->mul(b1, b2), g->mul(g->inv(b1), g->inv(b2)));
          const Vector& v = ca(comm);
          for (std::size_t r = 0; r < ca.dim(); ++r) map.set(r, i * k + j, v[r]);
        }
      const bool ok = is_module_hom(tensor(bm, bm), am, map) && rank(map) == am.dim();
      c["case"] = 1;
      c["claim"] = "[A] is a quotient of [B/A] (x) [B/A]";
      c["holds"] = ok;
      if (!ok) rec.verdict = Verdict::Fail;
    } else if (!exponent_p) {
      // [b] -> [b^p] on the basis of B/A.
      const std::size_t k = cb.dim();
      Matrix map(f, ca.dim(), k);
      for (std::size_t j = 0; j < k; ++j) {
        const Vector& v = ca(g->pow(cb.basis()[j], static_cast<long long>(p)));
        for (std::size_t r = 0; r < ca.dim(); ++r) map.set(r, j, v[r]);
      }
      const bool ok = map.is_square() && is_module_hom(bm, am, map) && rank(map) == am.dim();
      c["case"] = 2;
      c["claim"] = "[A] isomorphic to [B/A] via b -> b^p";
      c["holds"] = ok;
      if (!ok) rec.verdict = Verdict::Fail;
    } else {
      c["case"] = 0;
      c["claim"] = "B elementary abelian: only the p-group part applies";
      c["holds"] = true;
    }
    cases.push_back(std::move(c));
  }
  rec.witness = json{{"A", a.to_string()}, {"p", p}, {"cases", std::move(cases)}};
  return rec;
}

GroupLemma parse_group_lemma(const std::string& name) {
  static const std::map<std::string, GroupLemma> names{{"gp-sole", GroupLemma::GpSole},
                                                      {"qgpblock", GroupLemma::QgpBlock},
                                                      {"dual", GroupLemma::Dual},
                                                      {"diffK", GroupLemma::DiffK},
                                                      {"diffk", GroupLemma::DiffK},
                                                      {"b0ker", GroupLemma::B0Ker},
                                                      {"B0ker", GroupLemma::B0Ker}};
  const auto it = names.find(name);
  if (it == names.end()) throw InputError("unknown lemma '" + name + "'");
  return it->second;
}

std::string to_string(GroupLemma which) {
  switch (which) {
    case GroupLemma::GpSole: return "gp-sole";
    case GroupLemma::QgpBlock: return "qgpblock";
    case GroupLemma::Dual: return "dual";
    case GroupLemma::DiffK: return "diffK";
    case GroupLemma::B0Ker: return "b0ker";
  }
  return "?";
}

CheckRecord check_group_lemma(const Structure& s, GroupLemma which, int depth) {
  CheckRecord rec;
  switch (which) {
    case GroupLemma::GpSole:
      if (s.is_lie()) {
        rec = CheckRecord{"gp-sole", s.id(), 0, Verdict::Skip, json{{"reason", "stated for groups"}}};
      } else {
        rec = check_gp_sole(s.group());
        rec.algebra_id = s.id();
      }
      break;
    case GroupLemma::QgpBlock: rec = check_qgpblock(s, depth); break;
    case GroupLemma::Dual: rec = check_dual_closure(s, depth); break;
    case GroupLemma::DiffK: rec = check_diffk(s); break;
    case GroupLemma::B0Ker: rec = check_b0ker(s, depth); break;
  }
  return rec;
}

}  // namespace schunck
