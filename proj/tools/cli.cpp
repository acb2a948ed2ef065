#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "schunck/blocks.hpp"
#include "schunck/catalog.hpp"
#include "schunck/classes.hpp"
#include "schunck/error.hpp"
#include "schunck/groups.hpp"

namespace schunck::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Caps {
  std::size_t max_dim = kMaxCatalogDim;
  std::size_t max_order = kMaxCatalogGroupOrder;
  int depth = kDefaultDepth;
};

/// Raised when an input exceeds a --max-* flag; reported as BOUNDED.
class CapExceeded : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

/// Streams records and remembers the worst verdict.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void emit(const CheckRecord& rec) {
    out_ << rec.to_json().dump() << '\n';
    worst_ = combine(worst_, rec.verdict);
  }
  int exit_code() const {
    if (worst_ == Verdict::Fail) return kFail;
    if (worst_ == Verdict::Bounded) return kResourceCap;
    return kPass;
  }

 private:
  std::ostream& out_;
  Verdict worst_ = Verdict::Skip;
};

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int smallest_prime(std::size_t n) {
  for (std::size_t d = 2; d <= n; ++d)
    if (n % d == 0) return static_cast<int>(d);
  return 2;
}

/// `.lie` / `.grp` file, or `builtin:<name>` for a curated group.
Structure load_structure(const std::string& arg, int prime, const Caps& caps) {
  std::optional<FiniteGroup> group;
  std::string id;
  if (arg.rfind("builtin:", 0) == 0) {
    id = arg.substr(8);
    group = builtin_group(id);
  } else {
    const fs::path path(arg);
    if (!fs::is_regular_file(path)) throw InputError("no such file: " + arg);
    id = path.stem().string();
    const std::string text = read_text(path);
    std::istringstream first(text);
    std::string word;
    while (first >> word && word.front() == '#') first.ignore(1 << 20, '\n');
    const bool lie = path.extension() == ".lie" || (path.extension() != ".grp" && word.rfind("field", 0) == 0);
    if (lie) {
      if (prime != 0) throw InputError("--prime applies to groups only");
      LieAlgebra l = parse_lie_algebra(text);
      if (l.dim() > caps.max_dim)
        throw CapExceeded("dimension " + std::to_string(l.dim()) + " exceeds --max-dim " + std::to_string(caps.max_dim));
      return Structure(share(std::move(l)), id);
    }
    group = parse_group(text);
  }
  if (group->order() > caps.max_order)
    throw CapExceeded("order " + std::to_string(group->order()) + " exceeds --max-order " + std::to_string(caps.max_order));
  const int p = prime != 0 ? prime : smallest_prime(group->order());
  return Structure(share(std::move(*group)), Field(p), id);
}

ClassSpec load_spec(const std::string& path) {
  if (!fs::is_regular_file(path)) throw InputError("no such file: " + path);
  return parse_class_spec(read_text(path));
}

std::string spec_id(const ClassSpec& spec) { return spec.name().empty() ? spec.describe() : spec.name(); }

/// Entries above the caps are dropped with a BOUNDED record each.
Catalog load_capped_catalog(const std::string& dir, const Caps& caps, Writer& w) {
  Catalog all = load_catalog(dir);
  Catalog kept;
  for (CatalogEntry& e : all.entries) {
    const std::size_t limit = e.is_lie() ? caps.max_dim : caps.max_order;
    if (e.structure.size() > limit) {
      w.emit(CheckRecord{"catalog-entry", e.id, 0, Verdict::Bounded,
                         json{{"reason", std::string(e.is_lie() ? "dimension" : "order") + " above cap"},
                              {"size", e.structure.size()}}});
      continue;
    }
    kept.entries.push_back(std::move(e));
  }
  return kept;
}

// ---------------------------------------------------------------- commands

template <class Ideal, class Alg>
void chief_series_records(const Structure& s, const Alg& a, unsigned variant, Writer& w) {
  const auto cs = chief_series(a, variant);
  json dims = json::array();
  for (std::size_t k = 0; k + 1 < cs.terms.size(); ++k) {
    const Ideal& lower = cs.terms[k];
    const Ideal& upper = cs.terms[k + 1];
    json f{{"variant", variant}, {"index", k}, {"lower", lower.to_string()}, {"upper", upper.to_string()},
           {"centralizer", centralizer(a, upper, lower).to_string()}};
    if constexpr (std::is_same_v<Ideal, Subspace>) {
      f["dim"] = upper.dim() - lower.dim();
    } else {
      const std::size_t order = upper.size() / lower.size();
      const int q = smallest_prime(order);
      std::size_t d = 0;
      for (std::size_t n = order; n > 1; n /= static_cast<std::size_t>(q)) ++d;
      f["order"] = order;
      f["prime"] = q;
      f["dim"] = d;
    }
    dims.push_back(f["dim"]);
    w.emit(CheckRecord{"chief-factor", s.id(), 0, Verdict::Pass, f});
  }
  w.emit(CheckRecord{"chief-series", s.id(), 0, Verdict::Pass,
                     json{{"variant", variant}, {"length", cs.length()}, {"factor_dims", dims}}});
}

void cmd_chief_series(const Structure& s, unsigned variant, Writer& w) {
  if (s.is_lie()) chief_series_records<Subspace>(s, *s.lie(), variant, w);
  else chief_series_records<Subgroup>(s, *s.group(), variant, w);
}

void cmd_primitives(const Structure& s, Writer& w) {
  std::size_t count = 0;
  auto emit = [&](const std::string& by, std::size_t size, const std::string& socle, const std::string& text) {
    ++count;
    w.emit(CheckRecord{"primitive-quotient", s.id(), 0, Verdict::Pass,
                       json{{"quotient_by", by}, {"size", size}, {"socle", socle}, {"text", text}}});
  };
  if (s.is_lie()) {
    for (const Subspace& n : all_ideals(*s.lie())) {
      if (n.is_whole()) continue;
      const LieQuotient q = quotient(*s.lie(), n);
      const auto prim = is_primitive(q.algebra);
      if (prim.primitive) emit(n.to_string(), q.algebra.dim(), prim.socle->to_string(), q.algebra.to_text());
    }
  } else {
    for (const Subgroup& n : all_ideals(*s.group())) {
      if (n.size() == s.group()->order()) continue;
      const GroupQuotient q = quotient(*s.group(), n);
      const auto prim = is_primitive(q.group);
      if (prim.primitive) emit(n.to_string(), q.group.order(), prim.socle->to_string(), q.group.to_text());
    }
  }
  w.emit(CheckRecord{"primitives", s.id(), 0, Verdict::Pass, json{{"count", count}}});
}

Universe universe_or_partial(const Structure& s, int depth, Writer& w, bool& bounded) {
  try {
    return generate_universe(s, depth);
  } catch (const UniverseCapError& e) {
    bounded = true;
    w.emit(CheckRecord{"universe", s.id(), depth, Verdict::Bounded, json{{"reason", e.what()}}});
    return e.partial();
  }
}

void cmd_blocks(const Structure& s, int depth, Writer& w) {
  bool bounded = false;
  const Universe u = universe_or_partial(s, depth, w, bounded);
  const LinkageGraph g = linkage_graph(u);
  for (std::size_t i = 0; i < u.irreducibles.size(); ++i)
    w.emit(CheckRecord{"universe-member", s.id(), depth, Verdict::Pass,
                       json{{"member", i}, {"dim", u.irreducibles[i].dim()}, {"word", u.word_string(i)},
                            {"principal", g.in_principal(i)}}});
  json edges = json::array();
  for (const auto& [i, j] : g.edges) edges.push_back(json{{"from", i}, {"to", j}, {"ext_ij", g.ext[i][j]}, {"ext_ji", g.ext[j][i]}});
  json letters = json::array();
  for (const Letter& l : u.letters) letters.push_back(l.label);
  json witness{{"letters", letters}, {"members", u.irreducibles.size()}, {"edges", edges},
               {"principal_component", g.principal_component}};
  Verdict v = Verdict::Pass;
  if (u.truncated || bounded) {
    v = Verdict::Bounded;
    witness["reason"] = "tensor products above the size cap were not decomposed";
  }
  w.emit(CheckRecord{"blocks", s.id(), depth, v, witness});
}

void cmd_check_lemmas(const Structure& s, const std::string& which, int depth, Writer& w) {
  std::vector<std::string> names;
  if (which == "all") names = {"chiefsB0", "dual", "b0ker", "diffK", "qgpblock", "gp-sole"};
  else names = {which};
  for (const std::string& name : names) {
    CheckRecord rec = name == "chiefsB0" ? check_chiefsB0(s, depth) : check_group_lemma(s, parse_group_lemma(name), depth);
    rec.algebra_id = s.id();
    w.emit(rec);
  }
}

std::vector<Structure> catalog_primitives(const Catalog& cat) {
  std::vector<Structure> out;
  for (const CatalogEntry& e : cat.entries)
    if (e.primitive) out.push_back(e.structure);
  return out;
}

void cmd_check_class(const std::string& spec_path, const std::string& dir, const std::string& kind, const Caps& caps,
                     Writer& w) {
  const ClassSpec spec = load_spec(spec_path);
  const Catalog cat = load_capped_catalog(dir, caps, w);
  const auto witnesses = catalog_primitives(cat);
  std::vector<ClosureKind> kinds;
  if (kind == "all") kinds = {ClosureKind::Pq, ClosureKind::Cf, ClosureKind::Dual, ClosureKind::Subtensor, ClosureKind::Paired};
  else kinds = {parse_closure_kind(kind)};
  for (ClosureKind k : kinds) w.emit(check_closure(spec, k, witnesses).to_record(spec_id(spec)));
}

void cmd_verify(const std::string& spec_path, const std::string& dir, const std::string& mode, const Caps& caps,
                Writer& w) {
  const ClassSpec spec = load_spec(spec_path);
  const VerifyMode m = parse_verify_mode(mode);
  const Catalog cat = load_capped_catalog(dir, caps, w);
  for (const CheckRecord& rec : verify_formation(spec, cat, m).all_records()) w.emit(rec);
}

json module_json(const Universe& u, std::size_t i) {
  return json{{"member", i}, {"dim", u.irreducibles[i].dim()}, {"word", u.word_string(i)}};
}

void cmd_witness(const Structure& s, const std::string& module, int depth, Writer& w) {
  bool bounded = false;
  const Universe u = universe_or_partial(s, depth, w, bounded);
  const LinkageGraph g = linkage_graph(u);
  std::vector<std::size_t> members;
  if (module == "all") {
    for (std::size_t i = 0; i < u.irreducibles.size(); ++i) members.push_back(i);
  } else {
    std::size_t pos = 0;
    unsigned long i = 0;
    try {
      i = std::stoul(module, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != module.size() || i >= u.irreducibles.size())
      throw InputError("--module must be 'all' or a member index below " + std::to_string(u.irreducibles.size()));
    members.push_back(i);
  }
  for (std::size_t v : members) {
    if (g.in_principal(v)) {
      try {
        const ChiefsWitness cw = chiefs_witness(u, g, u.irreducibles[v]);
        w.emit(CheckRecord{"chiefs-witness", s.id(), depth, Verdict::Pass,
                           json{{"module", module_json(u, v)}, {"letters", cw.letters}, {"chop_chain", cw.chop_chain}}});
      } catch (const BoundedSearchError& e) {
        w.emit(CheckRecord{"chiefs-witness", s.id(), depth, Verdict::Bounded,
                           json{{"module", module_json(u, v)}, {"reason", e.what()}}});
      }
    }
    for (std::size_t t = 0; t < u.irreducibles.size(); ++t) {
      if (g.ext[v][t] == 0) continue;
      json base{{"v", module_json(u, v)}, {"w", module_json(u, t)}, {"ext1", g.ext[v][t]}};
      try {
        const TensorWitness tw = tens_witness(u, g, u.irreducibles[v], u.irreducibles[t]);
        base["a"] = module_json(u, tw.a_member);
        base["a_principal"] = g.in_principal(tw.a_member);
        base["surjection_rank"] = tw.surjection.rows();
        w.emit(CheckRecord{"tens-witness", s.id(), depth, Verdict::Pass, base});
      } catch (const BoundedSearchError& e) {
        base["reason"] = e.what();
        w.emit(CheckRecord{"tens-witness", s.id(), depth, Verdict::Bounded, base});
      }
    }
  }
}

void cmd_catalog_generate(int p, int maxdim, bool groups, const std::string& dir, const Caps& caps, Writer& w) {
  if (maxdim < 1 || static_cast<std::size_t>(maxdim) > caps.max_dim)
    throw CapExceeded("--maxdim " + std::to_string(maxdim) + " outside 1..--max-dim " + std::to_string(caps.max_dim));
  Catalog cat = generate_lie_catalog(p, maxdim);
  if (groups) cat.merge(builtin_group_catalog(caps.max_order));
  save_catalog(cat, dir);
  for (const CatalogEntry& e : cat.entries)
    w.emit(CheckRecord{"catalog-entry", e.id, 0, Verdict::Pass,
                       json{{"kind", e.is_lie() ? "lie" : "group"},
                            {"field", e.structure.field().p()},
                            {"size", e.structure.size()},
                            {"fingerprint", e.fingerprint},
                            {"provenance", to_string(e.provenance)},
                            {"primitive", e.primitive},
                            {"chief_factor_dims", e.chief_factor_dims}}});
  w.emit(CheckRecord{"catalog", dir, 0, Verdict::Pass,
                     json{{"entries", cat.entries.size()},
                          {"exhaustive", cat.count(CatalogProvenance::Exhaustive)},
                          {"curated", cat.count(CatalogProvenance::Curated)}}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schunck classes, principal blocks and formations over small soluble algebras", "schunck"};
  app.require_subcommand(1);
  app.fallthrough();

  Caps caps;
  std::string out_path;
  int threads = 0;
  app.add_option("--out", out_path, "write JSON-lines records to this file instead of stdout");
  app.add_option("--max-dim", caps.max_dim, "largest Lie algebra dimension processed")->capture_default_str();
  app.add_option("--max-order", caps.max_order, "largest group order processed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (overrides SCHUNCK_THREADS)")->check(CLI::PositiveNumber);

  std::string file;
  std::string spec;
  std::string dir;
  int prime = 0;
  unsigned variant = 0;
  std::string which = "all";
  std::string kind = "all";
  std::string mode = "full";
  std::string module = "all";
  int field = 0;
  int maxdim = 0;
  bool groups = false;

  auto add_file = [&](CLI::App* sub) {
    sub->add_option("file", file, "algebra file (.lie or .grp) or builtin:<group>")->required();
    sub->add_option("--prime", prime, "prime for group inputs (default: smallest divisor of the order)");
  };
  auto add_depth = [&](CLI::App* sub) {
    sub->add_option("--depth", caps.depth, "tensor word length")->capture_default_str()->check(CLI::Range(1, 6));
  };

  CLI::App* chief = app.add_subcommand("chief-series", "chief series with factor dimensions and centralizers");
  add_file(chief);
  chief->add_option("--variant", variant, "chief series variant")->capture_default_str();
  CLI::App* prims = app.add_subcommand("primitives", "primitive quotients");
  add_file(prims);
  CLI::App* blocks = app.add_subcommand("blocks", "universe, linkage edges and principal component");
  add_file(blocks);
  add_depth(blocks);
  CLI::App* lemmas = app.add_subcommand("check-lemmas", "block lemma checks");
  add_file(lemmas);
  add_depth(lemmas);
  lemmas->add_option("--which", which, "chiefsB0, dual, b0ker, diffK, qgpblock, gp-sole or all")->capture_default_str();
  CLI::App* cls = app.add_subcommand("check-class", "closure check of a class over catalog primitives");
  cls->add_option("spec", spec, ".cls file")->required();
  cls->add_option("--catalog", dir, "catalog directory")->required();
  cls->add_option("--kind", kind, "pq, cf, dual, subtensor, paired or all")->capture_default_str();
  CLI::App* verify = app.add_subcommand("verify-formation", "closures, equivalence and saturation over a catalog");
  verify->add_option("spec", spec, ".cls file")->required();
  verify->add_option("--catalog", dir, "catalog directory")->required();
  verify->add_option("--mode", mode, "equivalence, saturation, corollary or full")->capture_default_str();
  CLI::App* witness = app.add_subcommand("witness", "constructive tensor and chief-factor witnesses");
  add_file(witness);
  add_depth(witness);
  witness->add_option("--module", module, "universe member index, or all")->capture_default_str();
  CLI::App* catalog = app.add_subcommand("catalog", "catalog management");
  catalog->require_subcommand(1);
  CLI::App* generate = catalog->add_subcommand("generate", "write a Lie catalog (and optionally the groups)");
  generate->add_option("--field", field, "2, 3 or 5")->required();
  generate->add_option("--maxdim", maxdim, "largest dimension (at most 4)")->required();
  generate->add_option("--out", dir, "output directory")->required();
  generate->add_flag("--groups", groups, "include the curated group catalog");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (threads > 0) setenv("SCHUNCK_THREADS", std::to_string(threads).c_str(), 1);

  std::ofstream file_out;
  if (!out_path.empty() && !generate->parsed()) {
    file_out.open(out_path);
    if (!file_out) {
      err << "error: cannot write " << out_path << '\n';
      return kInputError;
    }
  }
  std::ostream& sink = file_out.is_open() ? static_cast<std::ostream&>(file_out) : out;
  Writer w(sink);
  try {
    if (chief->parsed()) cmd_chief_series(load_structure(file, prime, caps), variant, w);
    else if (prims->parsed()) cmd_primitives(load_structure(file, prime, caps), w);
    else if (blocks->parsed()) cmd_blocks(load_structure(file, prime, caps), caps.depth, w);
    else if (lemmas->parsed()) cmd_check_lemmas(load_structure(file, prime, caps), which, caps.depth, w);
    else if (cls->parsed()) cmd_check_class(spec, dir, kind, caps, w);
    else if (verify->parsed()) cmd_verify(spec, dir, mode, caps, w);
    else if (witness->parsed()) cmd_witness(load_structure(file, prime, caps), module, caps.depth, w);
    else if (generate->parsed()) cmd_catalog_generate(field, maxdim, groups, dir, caps, w);
  } catch (const ResourceError& e) {
    w.emit(CheckRecord{"resource-cap", file.empty() ? spec : file, 0, Verdict::Bounded, json{{"reason", e.what()}}});
    err << "bounded: " << e.what() << '\n';
    return kResourceCap;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  sink.flush();
  return w.exit_code();
}

}  // namespace schunck::cli
