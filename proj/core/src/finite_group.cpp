#include "schunck/finite_group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

#include "schunck/error.hpp"
#include "text_util.hpp"

namespace schunck {

namespace {

// Internal constructions (split extensions, products) may exceed the input
// cap; exhaustive subgroup enumeration stops here.
constexpr std::size_t kMaxEnumerationOrder = 1024;

void require_enumerable(const FiniteGroup& g, const char* what) {
  if (g.order() > kMaxEnumerationOrder)
    throw ResourceError(std::string(what) + ": group order above enumeration cap");
}

Subgroup from_mask(const std::vector<char>& mask) {
  Subgroup s;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) s.elements.push_back(static_cast<int>(i));
  return s;
}

}  // namespace

// ------------------------------------------------------------ FiniteGroup

FiniteGroup::FiniteGroup(Table table, int identity) : table_(std::move(table)), identity_(identity) {
  const auto n = static_cast<int>(table_.size());
  if (n == 0) throw InputError("group must have at least one element");
  if (identity_ < 0 || identity_ >= n) throw InputError("identity index out of range");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw InputError("multiplication table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw InputError("table entry out of range");
  }
  validate();
  inverse_.assign(table_.size(), -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (table_[a][b] == identity_) inverse_[a] = b;
  std::vector<char> mask(table_.size(), 0);
  mask[identity_] = 1;
  for (int g = 0; g < n; ++g) {
    if (mask[g]) continue;
    generators_.push_back(g);
    const Subgroup s = subgroup_closure(*this, generators_);
    for (int x : s.elements) mask[x] = 1;
  }
  if (!is_solvable(*this)) throw ValidationError("group is not solvable");
}

void FiniteGroup::validate() const {
  const auto n = static_cast<int>(table_.size());
  for (int a = 0; a < n; ++a)
    if (table_[identity_][a] != a || table_[a][identity_] != a)
      throw ValidationError("identity law fails for element " + std::to_string(a));
  for (int a = 0; a < n; ++a) {
    bool has_inverse = false;
    for (int b = 0; b < n && !has_inverse; ++b)
      has_inverse = table_[a][b] == identity_ && table_[b][a] == identity_;
    if (!has_inverse) throw ValidationError("element " + std::to_string(a) + " has no inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw ValidationError("associativity fails on (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                std::to_string(c) + ")");
}

int FiniteGroup::pow(int a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  int r = identity_;
  for (long long i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

int FiniteGroup::order_of(int a) const {
  int k = 1;
  for (int x = a; x != identity_; x = mul(x, a)) ++k;
  return k;
}

std::string FiniteGroup::to_text() const {
  std::ostringstream out;
  out << "order " << order() << '\n' << "identity " << identity_ << '\n';
  for (const auto& row : table_) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
  return out.str();
}

FiniteGroup parse_group(std::string_view text) {
  std::optional<std::size_t> order;
  std::optional<int> identity;
  FiniteGroup::Table table;
  int line_no = 0;
  for (const std::string& raw : detail::split_lines(text)) {
    ++line_no;
    const std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto words = detail::split_words(line);
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (words[0] == "order") {
      if (words.size() != 2) throw InputError("expected 'order <n>'" + where);
      const long long n = detail::parse_int(words[1], "order");
      if (n <= 0) throw InputError("order must be positive" + where);
      if (static_cast<std::size_t>(n) > kMaxGroupOrder)
        throw ResourceError("group order " + std::to_string(n) + " exceeds the hard cap " +
                            std::to_string(kMaxGroupOrder));
      order = static_cast<std::size_t>(n);
    } else if (words[0] == "identity") {
      if (words.size() != 2) throw InputError("expected 'identity <index>'" + where);
      identity = static_cast<int>(detail::parse_int(words[1], "identity"));
    } else {
      if (!order || !identity) throw InputError("table row before order/identity" + where);
      if (words.size() != *order) throw InputError("table row has wrong length" + where);
      std::vector<int> row;
      for (const auto& w : words) row.push_back(static_cast<int>(detail::parse_int(w, "table entry")));
      table.push_back(std::move(row));
    }
  }
  if (!order) throw InputError("missing 'order' line");
  if (!identity) throw InputError("missing 'identity' line");
  if (table.size() != *order) throw InputError("table has wrong number of rows");
  return FiniteGroup(std::move(table), *identity);
}

// --------------------------------------------------------------- Subgroup

bool Subgroup::contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }

bool Subgroup::contains(const Subgroup& other) const {
  return std::includes(elements.begin(), elements.end(), other.elements.begin(), other.elements.end());
}

std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return a.elements <=> b.elements;
}

std::string Subgroup::to_string() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < elements.size(); ++i) out << (i ? "," : "") << elements[i];
  out << '}';
  return out.str();
}

// -------------------------------------------------------------- structure

Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup{{g.identity()}}; }

Subgroup whole(const FiniteGroup& g) {
  Subgroup s;
  for (std::size_t i = 0; i < g.order(); ++i) s.elements.push_back(static_cast<int>(i));
  return s;
}

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<char> mask(g.order(), 0);
  std::deque<int> queue{g.identity()};
  mask[g.identity()] = 1;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int s : gens) {
      const int y = g.mul(x, s);
      if (!mask[y]) {
        mask[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return from_mask(mask);
}

Subgroup normal_closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<int> conj;
  for (int s : gens)
    for (std::size_t h = 0; h < g.order(); ++h) conj.push_back(g.conjugate(s, static_cast<int>(h)));
  std::sort(conj.begin(), conj.end());
  conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
  return subgroup_closure(g, conj);
}

bool is_subgroup(const FiniteGroup& g, const Subgroup& s) {
  if (!std::is_sorted(s.elements.begin(), s.elements.end()) || !s.contains(g.identity())) return false;
  for (int a : s.elements)
    for (int b : s.elements)
      if (!s.contains(g.mul(a, b))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const Subgroup& s) {
  if (!is_subgroup(g, s)) return false;
  for (int a : s.elements)
    for (std::size_t h = 0; h < g.order(); ++h)
      if (!s.contains(g.conjugate(a, static_cast<int>(h)))) return false;
  return true;
}

Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<int> gens = a.elements;
  gens.insert(gens.end(), b.elements.begin(), b.elements.end());
  return subgroup_closure(g, gens);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  Subgroup out;
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                        std::back_inserter(out.elements));
  return out;
}

Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<int> gens;
  for (int x : a.elements)
    for (int y : b.elements) gens.push_back(g.commutator(x, y));
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return subgroup_closure(g, gens);
}

std::vector<Subgroup> derived_series(const FiniteGroup& g) {
  std::vector<Subgroup> out{whole(g)};
  while (true) {
    Subgroup next = commutator_subgroup(g, out.back(), out.back());
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

bool is_solvable(const FiniteGroup& g) { return derived_series(g).back().size() == 1; }

bool is_nilpotent(const FiniteGroup& g, const Subgroup& s) {
  Subgroup cur = s;
  while (cur.size() > 1) {
    Subgroup next = commutator_subgroup(g, s, cur);
    if (next == cur) return false;
    cur = std::move(next);
  }
  return true;
}

bool is_nilpotent(const FiniteGroup& g) { return is_nilpotent(g, whole(g)); }

Subgroup center(const FiniteGroup& g) { return centralizer(g, whole(g), trivial_subgroup(g)); }

std::vector<Subgroup> minimal_ideals(const FiniteGroup& g) {
  std::set<Subgroup> closures;
  for (std::size_t x = 0; x < g.order(); ++x)
    if (static_cast<int>(x) != g.identity()) closures.insert(normal_closure(g, {static_cast<int>(x)}));
  std::vector<Subgroup> out;
  for (const Subgroup& n : closures) {
    const bool minimal = std::none_of(closures.begin(), closures.end(), [&](const Subgroup& m) {
      return m.size() < n.size() && n.contains(m);
    });
    if (minimal) out.push_back(n);
  }
  return out;
}

std::vector<Subgroup> all_ideals(const FiniteGroup& g) {
  require_enumerable(g, "all_ideals");
  std::vector<Subgroup> element_closures;
  for (std::size_t x = 0; x < g.order(); ++x) element_closures.push_back(normal_closure(g, {static_cast<int>(x)}));
  std::set<Subgroup> found{trivial_subgroup(g)};
  std::deque<Subgroup> queue{trivial_subgroup(g)};
  while (!queue.empty()) {
    const Subgroup cur = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < g.order(); ++x) {
      if (cur.contains(static_cast<int>(x))) continue;
      Subgroup next = join(g, cur, element_closures[x]);
      if (found.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {found.begin(), found.end()};
}

Subgroup centralizer(const FiniteGroup& g, const Subgroup& upper, const Subgroup& lower) {
  if (!is_normal(g, upper) || !is_normal(g, lower)) throw InputError("centralizer: section terms must be normal");
  if (!upper.contains(lower)) throw InputError("centralizer: lower term is not contained in upper term");
  Subgroup out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const bool centralizes = std::all_of(upper.elements.begin(), upper.elements.end(), [&](int a) {
      return lower.contains(g.commutator(static_cast<int>(x), a));
    });
    if (centralizes) out.elements.push_back(static_cast<int>(x));
  }
  return out;
}

ChiefSeries<Subgroup> chief_series(const FiniteGroup& g, unsigned variant) {
  ChiefSeries<Subgroup> series;
  Subgroup cur = trivial_subgroup(g);
  series.terms.push_back(cur);
  for (unsigned step = 0; cur.size() < g.order(); ++step) {
    const GroupQuotient q = quotient(g, cur);
    const std::vector<Subgroup> mins = minimal_ideals(q.group);
    check_internal(!mins.empty(), "chief_series: nontrivial quotient without minimal normal subgroup");
    const std::size_t idx = variant == 0 ? 0 : (variant * (step + 1) + step) % mins.size();
    Subgroup next;
    for (std::size_t x = 0; x < g.order(); ++x)
      if (mins[idx].contains(q.projection[x])) next.elements.push_back(static_cast<int>(x));
    cur = std::move(next);
    series.terms.push_back(cur);
  }
  return series;
}

Primitivity<Subgroup> is_primitive(const FiniteGroup& g) {
  Primitivity<Subgroup> out;
  for (const Subgroup& n : minimal_ideals(g)) {
    if (centralizer(g, n, trivial_subgroup(g)) == n) {
      check_internal(!out.primitive, "two self-centralizing minimal normal subgroups");
      out.primitive = true;
      out.socle = n;
    }
  }
  return out;
}

GroupQuotient quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw InputError("quotient: subgroup is not normal");
  std::vector<int> projection(g.order(), -1);
  std::vector<int> section;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (projection[x] >= 0) continue;
    const int label = static_cast<int>(section.size());
    section.push_back(static_cast<int>(x));
    for (int k : n.elements) projection[g.mul(static_cast<int>(x), k)] = label;
  }
  const std::size_t m = section.size();
  FiniteGroup::Table table(m, std::vector<int>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a][b] = projection[g.mul(section[a], section[b])];
  GroupQuotient q{FiniteGroup(std::move(table), projection[g.identity()]), projection, section, n};
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      check_internal(projection[g.mul(static_cast<int>(a), static_cast<int>(b))] ==
                         q.group.mul(projection[a], projection[b]),
                     "quotient projection is not a homomorphism");
  return q;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g) {
  require_enumerable(g, "all_subgroups");
  std::set<Subgroup> cyclic;
  for (std::size_t x = 0; x < g.order(); ++x) cyclic.insert(subgroup_closure(g, {static_cast<int>(x)}));
  std::set<Subgroup> found{trivial_subgroup(g)};
  std::deque<Subgroup> queue{trivial_subgroup(g)};
  while (!queue.empty()) {
    const Subgroup cur = queue.front();
    queue.pop_front();
    for (const Subgroup& c : cyclic) {
      if (cur.contains(c)) continue;
      Subgroup next = join(g, cur, c);
      if (found.insert(next).second) queue.push_back(std::move(next));
    }
  }
  return {found.begin(), found.end()};
}

std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> proper;
  for (Subgroup& s : all_subgroups(g))
    if (s.size() < g.order()) proper.push_back(std::move(s));
  std::vector<Subgroup> out;
  for (const Subgroup& s : proper) {
    const bool maximal = std::none_of(proper.begin(), proper.end(), [&](const Subgroup& t) {
      return t.size() > s.size() && t.contains(s);
    });
    if (maximal) out.push_back(s);
  }
  return out;
}

std::vector<Subgroup> complements(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw InputError("complements: subgroup is not normal");
  std::vector<Subgroup> out;
  for (const Subgroup& h : all_subgroups(g))
    if (h.size() * n.size() == g.order() && intersect(h, n).size() == 1) out.push_back(h);
  return out;
}

Subgroup frattini(const FiniteGroup& g) {
  Subgroup acc = whole(g);
  for (const Subgroup& m : maximal_subgroups(g)) acc = intersect(acc, m);
  return acc;
}

Subgroup nilradical(const FiniteGroup& g) {
  Subgroup acc = trivial_subgroup(g);
  for (const Subgroup& n : all_ideals(g))
    if (is_nilpotent(g, n)) acc = join(g, acc, n);
  check_internal(is_nilpotent(g, acc), "product of nilpotent normal subgroups is not nilpotent");
  return acc;
}

int nilpotent_length(const FiniteGroup& g) {
  int length = 0;
  FiniteGroup cur = g;
  while (cur.order() > 1) {
    const Subgroup f = nilradical(cur);
    check_internal(f.size() > 1, "solvable group with trivial Fitting subgroup");
    cur = quotient(cur, f).group;
    ++length;
  }
  return length;
}

GroupSubgroup as_group(const FiniteGroup& g, const Subgroup& s) {
  if (!is_subgroup(g, s)) throw InputError("as_group: not a subgroup");
  const std::size_t m = s.size();
  auto index_of = [&](int x) {
    return static_cast<int>(std::lower_bound(s.elements.begin(), s.elements.end(), x) - s.elements.begin());
  };
  FiniteGroup::Table table(m, std::vector<int>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a][b] = index_of(g.mul(s.elements[a], s.elements[b]));
  return {FiniteGroup(std::move(table), index_of(g.identity())), s.elements};
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const auto na = static_cast<int>(a.order());
  const auto nb = static_cast<int>(b.order());
  FiniteGroup::Table table(static_cast<std::size_t>(na * nb), std::vector<int>(static_cast<std::size_t>(na * nb)));
  for (int x = 0; x < na * nb; ++x)
    for (int y = 0; y < na * nb; ++y)
      table[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup(std::move(table), a.identity() * nb + b.identity());
}

FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& gens) {
  if (gens.empty()) return FiniteGroup({{0}}, 0);
  const std::size_t n = gens.front().size();
  for (const auto& g : gens) {
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n; ++i)
      if (g.size() != n || sorted[i] != static_cast<int>(i)) throw InputError("generator is not a permutation");
  }
  auto compose = [&](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = a[static_cast<std::size_t>(b[i])];
    return c;
  };
  std::vector<int> id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
  std::map<std::vector<int>, int> index{{id, 0}};
  std::vector<std::vector<int>> elems{id};
  for (std::size_t k = 0; k < elems.size(); ++k) {
    for (const auto& s : gens) {
      auto y = compose(elems[k], s);
      if (index.emplace(y, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(y));
        if (elems.size() > kMaxEnumerationOrder) throw ResourceError("permutation group too large");
      }
    }
  }
  FiniteGroup::Table table(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
  return FiniteGroup(std::move(table), 0);
}

// ----------------------------------------------------------- isomorphism

namespace {

class GroupIsoSearch {
 public:
  GroupIsoSearch(const FiniteGroup& a, const FiniteGroup& b, bool first_only, std::size_t limit)
      : a_(a), b_(b), first_only_(first_only), limit_(limit) {}

  std::vector<std::vector<int>> run() {
    if (a_.order() != b_.order()) return {};
    const auto& gens = a_.generators();
    candidates_.assign(gens.size(), {});
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t y = 0; y < b_.order(); ++y)
        if (b_.order_of(static_cast<int>(y)) == a_.order_of(gens[i])) candidates_[i].push_back(static_cast<int>(y));
    images_.clear();
    search(0);
    return std::move(found_);
  }

 private:
  void search(std::size_t k) {
    if (first_only_ && !found_.empty()) return;
    const auto& gens = a_.generators();
    if (k == gens.size()) {
      if (auto phi = extend()) {
        found_.push_back(std::move(*phi));
        if (found_.size() > limit_) throw ResourceError("group isomorphism enumeration exceeded limit");
      }
      return;
    }
    for (int y : candidates_[k]) {
      images_.push_back(y);
      search(k + 1);
      images_.pop_back();
      if (first_only_ && !found_.empty()) return;
    }
  }

  std::optional<std::vector<int>> extend() const {
    const auto& gens = a_.generators();
    std::vector<int> phi(a_.order(), -1);
    std::vector<char> used(b_.order(), 0);
    phi[a_.identity()] = b_.identity();
    used[b_.identity()] = 1;
    std::deque<int> queue{a_.identity()};
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const int y = a_.mul(x, gens[i]);
        const int img = b_.mul(phi[x], images_[i]);
        if (phi[y] < 0) {
          if (used[img]) return std::nullopt;
          phi[y] = img;
          used[img] = 1;
          queue.push_back(y);
        } else if (phi[y] != img) {
          return std::nullopt;
        }
      }
    }
    return phi;
  }

  const FiniteGroup& a_;
  const FiniteGroup& b_;
  bool first_only_;
  std::size_t limit_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> images_;
  std::vector<std::vector<int>> found_;
};

bool is_isomorphism(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& phi) {
  for (std::size_t x = 0; x < a.order(); ++x)
    for (std::size_t y = 0; y < a.order(); ++y)
      if (phi[a.mul(static_cast<int>(x), static_cast<int>(y))] != b.mul(phi[x], phi[y])) return false;
  return true;
}

}  // namespace

std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  auto found = GroupIsoSearch(a, b, true, 1).run();
  if (found.empty()) return std::nullopt;
  check_internal(is_isomorphism(a, b, found.front()), "group isomorphism search returned a non-homomorphism");
  return found.front();
}

std::vector<std::vector<int>> all_isomorphisms(const FiniteGroup& a, const FiniteGroup& b, std::size_t limit) {
  auto found = GroupIsoSearch(a, b, false, limit).run();
  for (const auto& phi : found)
    check_internal(is_isomorphism(a, b, phi), "group isomorphism search returned a non-homomorphism");
  return found;
}

bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  if (a.order() != b.order() || fingerprint(a) != fingerprint(b)) return false;
  return find_isomorphism(a, b).has_value();
}

std::string fingerprint(const FiniteGroup& g) {
  std::ostringstream inv;
  inv << "group order=" << g.order() << " derived=";
  for (const Subgroup& s : derived_series(g)) inv << s.size() << ',';
  inv << " center=" << center(g).size() << " classes=";
  std::vector<char> seen(g.order(), 0);
  std::multiset<std::pair<int, int>> classes;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (seen[x]) continue;
    int size = 0;
    for (std::size_t h = 0; h < g.order(); ++h) {
      const int c = g.conjugate(static_cast<int>(x), static_cast<int>(h));
      if (!seen[c]) {
        seen[c] = 1;
        ++size;
      }
    }
    classes.insert({g.order_of(static_cast<int>(x)), size});
  }
  for (const auto& [ord, size] : classes) inv << ord << ':' << size << ';';
  return detail::fnv1a_hex(inv.str());
}

}  // namespace schunck
