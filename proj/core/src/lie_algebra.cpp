#include "schunck/lie_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "schunck/error.hpp"
#include "text_util.hpp"

namespace schunck {

namespace {

std::uint64_t vector_code(const Vector& v, int p) {
  std::uint64_t code = 0;
  for (int x : v) code = code * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(x);
  return code;
}

Vector scaled_add(Field f, Vector acc, const Vector& v, int c) {
  if (c == 0) return acc;
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = f.add(acc[i], f.mul(c, v[i]));
  return acc;
}

std::string format_combination(const Vector& v, const std::vector<std::string>& names) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (v[i] != 1) out << v[i] << '*';
    out << names[i];
  }
  if (first) out << '0';
  return out.str();
}

}  // namespace

// ------------------------------------------------------------ LieAlgebra

LieAlgebra::LieAlgebra(Field f, std::vector<std::string> names, const BracketTable& brackets)
    : field_(f), dim_(names.size()), names_(std::move(names)), table_(dim_ * dim_, Vector(dim_, 0)) {
  std::set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size()) throw InputError("duplicate basis names");
  for (const auto& [ij, v] : brackets) {
    const auto [i, j] = ij;
    if (i >= j || j >= dim_) throw InputError("bracket index pair must satisfy i < j < dim");
    if (v.size() != dim_) throw InputError("bracket vector has wrong length");
    Vector r(dim_);
    for (std::size_t k = 0; k < dim_; ++k) r[k] = field_.reduce(v[k]);
    Vector neg(dim_);
    for (std::size_t k = 0; k < dim_; ++k) neg[k] = field_.neg(r[k]);
    table_[i * dim_ + j] = std::move(r);
    table_[j * dim_ + i] = std::move(neg);
  }
  validate();
}

LieAlgebra LieAlgebra::abelian(Field f, std::size_t dim) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) names.push_back("e" + std::to_string(i + 1));
  return LieAlgebra(f, names, {});
}

Vector LieAlgebra::unit(std::size_t i) const {
  Vector v(dim_, 0);
  v[i] = 1;
  return v;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  Vector out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j] == 0 || i == j) continue;
      out = scaled_add(field_, std::move(out), table_[i * dim_ + j], field_.mul(x[i], y[j]));
    }
  }
  return out;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    const Vector col = bracket(x, unit(j));
    for (std::size_t r = 0; r < dim_; ++r) m.set(r, j, col[r]);
  }
  return m;
}

LieAlgebra::BracketTable LieAlgebra::bracket_table() const {
  BracketTable t;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const Vector& v = table_[i * dim_ + j];
      if (std::any_of(v.begin(), v.end(), [](int x) { return x != 0; })) t[{i, j}] = v;
    }
  return t;
}

void LieAlgebra::validate() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t k = j + 1; k < dim_; ++k) {
        Vector sum = bracket(unit(i), table_[j * dim_ + k]);
        const Vector b = bracket(unit(j), table_[k * dim_ + i]);
        const Vector c = bracket(unit(k), table_[i * dim_ + j]);
        for (std::size_t r = 0; r < dim_; ++r) sum[r] = field_.add(sum[r], field_.add(b[r], c[r]));
        if (std::any_of(sum.begin(), sum.end(), [](int x) { return x != 0; })) {
          throw ValidationError("Jacobi identity fails on (" + names_[i] + "," + names_[j] + "," +
                                names_[k] + "): sum is " + format_combination(sum, names_));
        }
      }
  if (!is_solvable(*this)) throw ValidationError("Lie algebra is not solvable");
}

std::string LieAlgebra::to_text() const {
  std::ostringstream out;
  out << "field p=" << field_.p() << '\n' << "dim " << dim_ << '\n' << "basis";
  for (const auto& n : names_) out << ' ' << n;
  out << '\n';
  for (const auto& [ij, v] : bracket_table())
    out << "bracket " << names_[ij.first] << ' ' << names_[ij.second] << " = "
        << format_combination(v, names_) << '\n';
  return out.str();
}

namespace {

Vector parse_combination(std::string text, const std::vector<std::string>& names, Field f) {
  text.erase(std::remove_if(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); }),
             text.end());
  Vector v(names.size(), 0);
  if (text.empty()) throw InputError("empty linear combination");
  if (text == "0") return v;
  std::size_t pos = 0;
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
    std::string term = text.substr(pos, end - pos);
    pos = end;
    if (term.empty()) throw InputError("malformed linear combination '" + text + "'");
    long long coeff = 1;
    std::string name = term;
    if (auto star = term.find('*'); star != std::string::npos) {
      coeff = detail::parse_int(term.substr(0, star), "coefficient");
      name = term.substr(star + 1);
    } else {
      std::size_t digits = 0;
      while (digits < term.size() && std::isdigit(static_cast<unsigned char>(term[digits]))) ++digits;
      if (digits == term.size()) throw InputError("bare constant in linear combination '" + text + "'");
      if (digits > 0) {
        coeff = detail::parse_int(term.substr(0, digits), "coefficient");
        name = term.substr(digits);
      }
    }
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw InputError("unknown basis element '" + name + "'");
    const auto idx = static_cast<std::size_t>(it - names.begin());
    v[idx] = f.add(v[idx], f.reduce(sign * coeff));
  }
  return v;
}

}  // namespace

LieAlgebra parse_lie_algebra(std::string_view text) {
  std::optional<Field> field;
  std::optional<std::size_t> dim;
  std::vector<std::string> names;
  LieAlgebra::BracketTable brackets;
  int line_no = 0;
  for (const std::string& raw : detail::split_lines(text)) {
    ++line_no;
    const std::string line = detail::strip_comment(raw);
    if (line.empty()) continue;
    const auto words = detail::split_words(line);
    const std::string where = " (line " + std::to_string(line_no) + ")";
    if (words[0] == "field") {
      if (words.size() != 2 || words[1].rfind("p=", 0) != 0) throw InputError("expected 'field p=<prime>'" + where);
      field = Field(static_cast<int>(detail::parse_int(words[1].substr(2), "field")));
    } else if (words[0] == "dim") {
      if (words.size() != 2) throw InputError("expected 'dim <n>'" + where);
      const long long d = detail::parse_int(words[1], "dim");
      if (d < 0) throw InputError("negative dimension" + where);
      dim = static_cast<std::size_t>(d);
    } else if (words[0] == "basis") {
      names.assign(words.begin() + 1, words.end());
    } else if (words[0] == "bracket") {
      if (!field || !dim) throw InputError("bracket before field/dim" + where);
      if (names.size() != *dim) throw InputError("basis names do not match dim" + where);
      if (words.size() < 5 || words[3] != "=") throw InputError("expected 'bracket <a> <b> = <combination>'" + where);
      auto ia = std::find(names.begin(), names.end(), words[1]);
      auto ib = std::find(names.begin(), names.end(), words[2]);
      if (ia == names.end() || ib == names.end()) throw InputError("unknown basis element in bracket" + where);
      const auto i = static_cast<std::size_t>(ia - names.begin());
      const auto j = static_cast<std::size_t>(ib - names.begin());
      if (i >= j) throw InputError("bracket requires i < j" + where);
      std::string rhs;
      for (std::size_t w = 4; w < words.size(); ++w) rhs += words[w];
      if (brackets.count({i, j})) throw InputError("duplicate bracket" + where);
      brackets[{i, j}] = parse_combination(rhs, names, *field);
    } else {
      throw InputError("unknown directive '" + words[0] + "'" + where);
    }
  }
  if (!field) throw InputError("missing 'field' line");
  if (!dim) throw InputError("missing 'dim' line");
  if (names.empty() && *dim > 0) {
    for (std::size_t i = 0; i < *dim; ++i) names.push_back("e" + std::to_string(i + 1));
  }
  if (names.size() != *dim) throw InputError("basis names do not match dim");
  return LieAlgebra(*field, names, brackets);
}

// ------------------------------------------------------------- structure

Subspace zero_ideal(const LieAlgebra& l) { return Subspace(l.field(), l.dim()); }
Subspace whole(const LieAlgebra& l) { return Subspace::whole(l.field(), l.dim()); }

bool is_subalgebra(const LieAlgebra& l, const Subspace& s) {
  const auto& rows = s.rows();
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t b = a + 1; b < rows.size(); ++b)
      if (!s.contains(l.bracket(rows[a], rows[b]))) return false;
  return true;
}

bool is_ideal(const LieAlgebra& l, const Subspace& s) {
  if (s.ambient_dim() != l.dim()) return false;
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (const Vector& v : s.rows())
      if (!s.contains(l.bracket(l.unit(i), v))) return false;
  return true;
}

Subspace bracket_span(const LieAlgebra& l, const Subspace& a, const Subspace& b) {
  std::vector<Vector> out;
  for (const Vector& x : a.rows())
    for (const Vector& y : b.rows()) out.push_back(l.bracket(x, y));
  return Subspace::span(l.field(), l.dim(), out);
}

Subspace ideal_closure(const LieAlgebra& l, const Subspace& s) {
  Subspace cur = s;
  std::deque<Vector> queue(s.rows().begin(), s.rows().end());
  while (!queue.empty()) {
    const Vector v = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < l.dim(); ++i) {
      Vector w = l.bracket(l.unit(i), v);
      if (cur.contains(w)) continue;
      cur = cur + Subspace::span(l.field(), l.dim(), {w});
      queue.push_back(std::move(w));
    }
  }
  return cur;
}

Subspace subalgebra_closure(const LieAlgebra& l, const Subspace& s) {
  Subspace cur = s;
  while (true) {
    Subspace next = cur + bracket_span(l, cur, cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

std::vector<Subspace> derived_series(const LieAlgebra& l) {
  std::vector<Subspace> out{whole(l)};
  while (true) {
    Subspace next = bracket_span(l, out.back(), out.back());
    if (next == out.back()) break;
    out.push_back(std::move(next));
  }
  return out;
}

bool is_solvable(const LieAlgebra& l) { return derived_series(l).back().is_zero(); }

bool is_nilpotent(const LieAlgebra& l, const Subspace& s) {
  Subspace cur = s;
  while (!cur.is_zero()) {
    Subspace next = bracket_span(l, s, cur);
    if (next == cur) return false;
    cur = std::move(next);
  }
  return true;
}

bool is_nilpotent(const LieAlgebra& l) { return is_nilpotent(l, whole(l)); }

Subspace center(const LieAlgebra& l) { return centralizer(l, whole(l), zero_ideal(l)); }

std::vector<Subspace> minimal_ideals(const LieAlgebra& l) {
  if (!checked_power(static_cast<std::uint64_t>(l.field().p()), l.dim(), 1U << 20))
    throw ResourceError("minimal_ideals: dimension too large to enumerate");
  std::set<Subspace> closures;
  for_each_projective_point(l.field(), l.dim(), [&](const Vector& v) {
    closures.insert(ideal_closure(l, Subspace::span(l.field(), l.dim(), {v})));
    return true;
  });
  std::vector<Subspace> out;
  for (const Subspace& j : closures) {
    const bool minimal = std::none_of(closures.begin(), closures.end(), [&](const Subspace& other) {
      return other.dim() < j.dim() && j.contains(other);
    });
    if (minimal) out.push_back(j);
  }
  return out;  // std::set order is the canonical order
}

std::vector<Subspace> all_ideals(const LieAlgebra& l) {
  if (!checked_power(static_cast<std::uint64_t>(l.field().p()), l.dim(), 1U << 16))
    throw ResourceError("all_ideals: dimension too large to enumerate");
  std::set<Subspace> found{zero_ideal(l)};
  std::deque<Subspace> queue{zero_ideal(l)};
  while (!queue.empty()) {
    const Subspace cur = queue.front();
    queue.pop_front();
    for_each_projective_point(l.field(), l.dim(), [&](const Vector& v) {
      if (cur.contains(v)) return true;
      Subspace next = ideal_closure(l, cur + Subspace::span(l.field(), l.dim(), {v}));
      if (found.insert(next).second) queue.push_back(std::move(next));
      if (found.size() > 200000) throw ResourceError("all_ideals: too many ideals");
      return true;
    });
  }
  return {found.begin(), found.end()};
}

Subspace centralizer(const LieAlgebra& l, const Subspace& upper, const Subspace& lower) {
  if (!is_ideal(l, upper) || !is_ideal(l, lower)) throw InputError("centralizer: section terms must be ideals");
  if (!upper.contains(lower)) throw InputError("centralizer: lower term is not contained in upper term");
  const std::size_t n = l.dim();
  const auto& a = upper.rows();
  Matrix m(l.field(), a.size() * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < a.size(); ++j) {
      const Vector r = lower.reduce(l.bracket(l.unit(i), a[j]));
      for (std::size_t k = 0; k < n; ++k) m.set(j * n + k, i, r[k]);
    }
  return Subspace::of_columns(kernel_basis(m));
}

ChiefSeries<Subspace> chief_series(const LieAlgebra& l, unsigned variant) {
  ChiefSeries<Subspace> series;
  Subspace cur = zero_ideal(l);
  series.terms.push_back(cur);
  for (unsigned step = 0; !cur.is_whole(); ++step) {
    const LieQuotient q = quotient(l, cur);
    const std::vector<Subspace> mins = minimal_ideals(q.algebra);
    check_internal(!mins.empty(), "chief_series: nonzero quotient without minimal ideal");
    const std::size_t idx = variant == 0 ? 0 : (variant * (step + 1) + step) % mins.size();
    std::vector<Vector> gens = cur.rows();
    for (const Vector& v : mins[idx].rows()) gens.push_back(q.section.apply(v));
    cur = Subspace::span(l.field(), l.dim(), gens);
    series.terms.push_back(cur);
  }
  return series;
}

Primitivity<Subspace> is_primitive(const LieAlgebra& l) {
  Primitivity<Subspace> out;
  for (const Subspace& k : minimal_ideals(l)) {
    if (centralizer(l, k, zero_ideal(l)) == k) {
      check_internal(!out.primitive, "two self-centralizing minimal ideals");
      out.primitive = true;
      out.socle = k;
    }
  }
  return out;
}

LieQuotient quotient(const LieAlgebra& l, const Subspace& ideal) {
  if (!is_ideal(l, ideal)) throw InputError("quotient: subspace is not an ideal");
  const Field f = l.field();
  const std::vector<std::size_t> positions = ideal.complement_positions();
  const std::size_t m = positions.size();

  Matrix section(f, l.dim(), m);
  for (std::size_t k = 0; k < m; ++k) section.set(positions[k], k, 1);
  auto project = [&](const Vector& v) {
    const Vector r = ideal.reduce(v);
    Vector out(m);
    for (std::size_t k = 0; k < m; ++k) out[k] = r[positions[k]];
    return out;
  };
  Matrix projection(f, m, l.dim());
  for (std::size_t i = 0; i < l.dim(); ++i) {
    const Vector c = project(l.unit(i));
    for (std::size_t k = 0; k < m; ++k) projection.set(k, i, c[k]);
  }
  LieAlgebra::BracketTable table;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < m; ++a) {
    names.push_back(l.basis_names()[positions[a]]);
    for (std::size_t b = a + 1; b < m; ++b) {
      Vector v = project(l.bracket(l.unit(positions[a]), l.unit(positions[b])));
      if (std::any_of(v.begin(), v.end(), [](int x) { return x != 0; })) table[{a, b}] = std::move(v);
    }
  }
  LieQuotient q{LieAlgebra(f, names, table), projection, section, ideal};
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j)
      check_internal(projection.apply(l.bracket(l.unit(i), l.unit(j))) ==
                         q.algebra.bracket(projection.column(i), projection.column(j)),
                     "quotient projection is not a homomorphism");
  return q;
}

std::vector<Subspace> complements(const LieAlgebra& l, const Subspace& k) {
  if (!is_ideal(l, k)) throw InputError("complements: subspace is not an ideal");
  if (l.dim() > kMaxLieDim) throw ResourceError("complements: dimension above cap");
  const Field f = l.field();
  const std::vector<std::size_t> positions = k.complement_positions();
  const std::size_t m = positions.size();
  const std::size_t kd = k.dim();
  if (!checked_power(static_cast<std::uint64_t>(f.p()), m * kd, 1U << 20))
    throw ResourceError("complements: too many candidate complements");
  std::vector<Subspace> out;
  for_each_vector(f, m * kd, [&](const Vector& phi) {
    std::vector<Vector> rows;
    for (std::size_t w = 0; w < m; ++w) {
      Vector v = l.unit(positions[w]);
      for (std::size_t j = 0; j < kd; ++j) v = scaled_add(f, std::move(v), k.rows()[j], phi[w * kd + j]);
      rows.push_back(std::move(v));
    }
    Subspace u = Subspace::span(f, l.dim(), rows);
    if (is_subalgebra(l, u)) out.push_back(std::move(u));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> all_subalgebras(const LieAlgebra& l) {
  if (l.dim() > kMaxLieDim) throw ResourceError("all_subalgebras: dimension above cap");
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= l.dim(); ++k)
    for_each_subspace(l.field(), l.dim(), k, [&](const Subspace& s) {
      if (is_subalgebra(l, s)) out.push_back(s);
      return true;
    });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> maximal_subalgebras(const LieAlgebra& l) {
  std::vector<Subspace> proper;
  for (Subspace& s : all_subalgebras(l))
    if (!s.is_whole()) proper.push_back(std::move(s));
  std::vector<Subspace> out;
  for (const Subspace& s : proper) {
    const bool maximal = std::none_of(proper.begin(), proper.end(), [&](const Subspace& t) {
      return t.dim() > s.dim() && t.contains(s);
    });
    if (maximal) out.push_back(s);
  }
  return out;
}

Subspace frattini(const LieAlgebra& l) {
  Subspace acc = whole(l);
  if (l.dim() == 0) return acc;
  for (const Subspace& m : maximal_subalgebras(l)) acc = acc.intersect(m);
  return acc;
}

Subspace nilradical(const LieAlgebra& l) {
  Subspace acc = zero_ideal(l);
  for (const Subspace& i : all_ideals(l))
    if (is_nilpotent(l, i)) acc = acc + i;
  check_internal(is_nilpotent(l, acc), "sum of nilpotent ideals is not nilpotent");
  return acc;
}

int nilpotent_length(const LieAlgebra& l) {
  int length = 0;
  LieAlgebra cur = l;
  while (cur.dim() > 0) {
    const Subspace n = nilradical(cur);
    check_internal(!n.is_zero(), "solvable algebra with zero nilradical");
    cur = quotient(cur, n).algebra;
    ++length;
  }
  return length;
}

LieAlgebra change_basis(const LieAlgebra& l, const Matrix& g) {
  const auto ginv = inverse(g);
  if (!ginv || g.rows() != l.dim()) throw InputError("change_basis: matrix is not invertible");
  LieAlgebra::BracketTable table;
  for (std::size_t i = 0; i < l.dim(); ++i)
    for (std::size_t j = i + 1; j < l.dim(); ++j) {
      Vector v = ginv->apply(l.bracket(g.column(i), g.column(j)));
      if (std::any_of(v.begin(), v.end(), [](int x) { return x != 0; })) table[{i, j}] = std::move(v);
    }
  return LieAlgebra(l.field(), l.basis_names(), table);
}

LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.field() != b.field()) throw InputError("direct_sum: field mismatch");
  const std::size_t n = a.dim() + b.dim();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.dim(); ++i) names.push_back("a" + std::to_string(i + 1));
  for (std::size_t i = 0; i < b.dim(); ++i) names.push_back("b" + std::to_string(i + 1));
  LieAlgebra::BracketTable table;
  for (const auto& [ij, v] : a.bracket_table()) {
    Vector w(n, 0);
    std::copy(v.begin(), v.end(), w.begin());
    table[ij] = std::move(w);
  }
  for (const auto& [ij, v] : b.bracket_table()) {
    Vector w(n, 0);
    std::copy(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(a.dim()));
    table[{ij.first + a.dim(), ij.second + a.dim()}] = std::move(w);
  }
  return LieAlgebra(a.field(), names, table);
}

LieSubalgebra as_algebra(const LieAlgebra& l, const Subspace& s) {
  if (!is_subalgebra(l, s)) throw InputError("as_algebra: subspace is not a subalgebra");
  const auto& rows = s.rows();
  LieAlgebra::BracketTable table;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    names.push_back("s" + std::to_string(a + 1));
    for (std::size_t b = a + 1; b < rows.size(); ++b) {
      Vector c = *s.coordinates(l.bracket(rows[a], rows[b]));
      if (std::any_of(c.begin(), c.end(), [](int x) { return x != 0; })) table[{a, b}] = std::move(c);
    }
  }
  return {LieAlgebra(l.field(), names, table), s.basis()};
}

// ----------------------------------------------------------- isomorphism

namespace {

/// Similarity invariants of ad(x): characteristic polynomial plus ranks of
/// ad(x) and ad(x)^2.
Vector ad_signature(const LieAlgebra& l, const Vector& x) {
  const Matrix a = l.ad(x);
  Vector sig = charpoly(a).coefficients();
  sig.push_back(-1);
  sig.push_back(static_cast<int>(rank(a)));
  sig.push_back(static_cast<int>(rank(a * a)));
  return sig;
}

class SignatureTable {
 public:
  SignatureTable(const LieAlgebra& a, const LieAlgebra& b) : p_(a.field().p()) {
    if (!checked_power(static_cast<std::uint64_t>(p_), std::max(a.dim(), b.dim()), 1U << 16))
      throw ResourceError("isomorphism search: algebra too large");
    fill(a, sig_a_);
    fill(b, sig_b_);
  }
  int of_a(const Vector& v) const { return sig_a_[vector_code(v, p_)]; }
  int of_b(const Vector& v) const { return sig_b_[vector_code(v, p_)]; }

 private:
  void fill(const LieAlgebra& l, std::vector<int>& out) {
    for_each_vector(l.field(), l.dim(), [&](const Vector& v) {
      auto [it, inserted] = ids_.emplace(ad_signature(l, v), static_cast<int>(ids_.size()));
      out.push_back(it->second);
      return true;
    });
  }
  int p_;
  std::map<Vector, int> ids_;
  std::vector<int> sig_a_;
  std::vector<int> sig_b_;
};

/// Final check that a fully assigned map is a bracket homomorphism.
bool is_homomorphism(const LieAlgebra& a, const LieAlgebra& b, const Matrix& phi) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (phi.apply(a.bracket(i, j)) != b.bracket(phi.column(i), phi.column(j))) return false;
  return true;
}

class IsomorphismSearch {
 public:
  IsomorphismSearch(const LieAlgebra& a, const LieAlgebra& b, bool first_only, std::size_t limit)
      : a_(a), b_(b), sigs_(a, b), first_only_(first_only), limit_(limit) {}

  std::vector<Matrix> run() {
    const std::size_t n = a_.dim();
    if (n != b_.dim() || a_.field() != b_.field()) return {};
    candidates_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
      const int want = sigs_.of_a(a_.unit(i));
      for_each_vector(b_.field(), n, [&](const Vector& y) {
        if (sigs_.of_b(y) == want && std::any_of(y.begin(), y.end(), [](int x) { return x != 0; }))
          candidates_[i].push_back(y);
        return true;
      });
    }
    images_.clear();
    search(0, Subspace(b_.field(), n));
    return std::move(found_);
  }

 private:
  bool done() const { return first_only_ && !found_.empty(); }

  Vector image_of(const Vector& x) const {
    Vector out(b_.dim(), 0);
    const Field f = b_.field();
    for (std::size_t l = 0; l < x.size(); ++l)
      if (x[l] != 0) out = scaled_add(f, std::move(out), images_[l], x[l]);
    return out;
  }

  static std::size_t ready_step(const Vector& v, std::size_t j) {
    std::size_t step = j;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) step = std::max(step, i);
    return step;
  }

  void search(std::size_t k, const Subspace& chosen) {
    if (done()) return;
    const std::size_t n = a_.dim();
    if (k == n) {
      Matrix phi = Matrix::from_columns(b_.field(), images_, n);
      if (!is_homomorphism(a_, b_, phi)) return;
      found_.push_back(std::move(phi));
      if (found_.size() > limit_) throw ResourceError("isomorphism enumeration exceeded limit");
      return;
    }
    const Field f = a_.field();
    for (const Vector& y : candidates_[k]) {
      if (chosen.contains(y)) continue;
      images_.push_back(y);
      bool ok = true;
      for (std::size_t i = 0; i < k && ok; ++i) {
        Vector sum_a = a_.unit(i);
        sum_a[k] = f.add(sum_a[k], 1);
        Vector sum_b = images_[i];
        for (std::size_t r = 0; r < n; ++r) sum_b[r] = f.add(sum_b[r], y[r]);
        if (sigs_.of_a(sum_a) != sigs_.of_b(sum_b)) ok = false;
      }
      // A pair (i, j) becomes checkable once e_j and every basis vector in
      // the support of [e_i, e_j] have images.
      for (std::size_t i = 0; i <= k && ok; ++i)
        for (std::size_t j = i + 1; j <= k && ok; ++j) {
          const Vector& c = a_.bracket(i, j);
          if (ready_step(c, j) != k) continue;
          if (b_.bracket(images_[i], images_[j]) != image_of(c)) ok = false;
        }
      if (ok) search(k + 1, chosen + Subspace::span(f, n, {y}));
      images_.pop_back();
      if (done()) return;
    }
  }

  const LieAlgebra& a_;
  const LieAlgebra& b_;
  SignatureTable sigs_;
  bool first_only_;
  std::size_t limit_;
  std::vector<std::vector<Vector>> candidates_;
  std::vector<Vector> images_;
  std::vector<Matrix> found_;
};

}  // namespace

std::optional<Matrix> find_isomorphism(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.dim() != b.dim() || a.field() != b.field()) return std::nullopt;
  auto found = IsomorphismSearch(a, b, true, 1).run();
  if (found.empty()) return std::nullopt;
  check_internal(is_homomorphism(a, b, found.front()), "isomorphism search returned a non-homomorphism");
  return found.front();
}

std::vector<Matrix> all_isomorphisms(const LieAlgebra& a, const LieAlgebra& b, std::size_t limit) {
  if (a.dim() != b.dim() || a.field() != b.field()) return {};
  auto found = IsomorphismSearch(a, b, false, limit).run();
  for (const Matrix& m : found)
    check_internal(is_homomorphism(a, b, m), "isomorphism search returned a non-homomorphism");
  return found;
}

bool are_isomorphic(const LieAlgebra& a, const LieAlgebra& b) {
  if (a.dim() != b.dim() || a.field() != b.field()) return false;
  if (fingerprint(a) != fingerprint(b)) return false;
  return find_isomorphism(a, b).has_value();
}

std::string fingerprint(const LieAlgebra& l) {
  std::ostringstream inv;
  inv << "lie p=" << l.field().p() << " dim=" << l.dim() << " derived=";
  for (const Subspace& s : derived_series(l)) inv << s.dim() << ',';
  inv << " lcs=";
  {
    Subspace cur = whole(l);
    while (true) {
      inv << cur.dim() << ',';
      Subspace next = bracket_span(l, whole(l), cur);
      if (next == cur) break;
      cur = std::move(next);
    }
  }
  inv << " center=" << center(l).dim();
  if (checked_power(static_cast<std::uint64_t>(l.field().p()), l.dim(), 4096)) {
    std::map<Vector, int> counts;
    for_each_vector(l.field(), l.dim(), [&](const Vector& v) {
      ++counts[ad_signature(l, v)];
      return true;
    });
    inv << " ad=";
    for (const auto& [sig, count] : counts) {
      for (int x : sig) inv << x << '.';
      inv << 'x' << count << ';';
    }
  }
  return detail::fnv1a_hex(inv.str());
}

}  // namespace schunck
