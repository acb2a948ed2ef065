#include "schunck/module.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include "schunck/error.hpp"
#include "text_util.hpp"

namespace schunck {

namespace {

// Exhaustive spinning visits every line of a space of at most this size.
constexpr std::uint64_t kSpinCap = 4096;
constexpr int kNortonAttempts = 96;

void append_poly(std::ostringstream& out, const Matrix& a) {
  const Poly c = charpoly(a);
  for (int x : c.coefficients()) out << x << '.';
  out << ';';
}

Matrix transpose_all(const Matrix& a) { return a.transpose(); }

Subspace spin_with(const std::vector<Matrix>& gens, Field f, std::size_t n, const std::vector<Vector>& seeds) {
  Subspace cur = Subspace::span(f, n, seeds);
  std::deque<Vector> queue(cur.rows().begin(), cur.rows().end());
  while (!queue.empty() && !cur.is_whole()) {
    const Vector v = queue.front();
    queue.pop_front();
    for (const Matrix& g : gens) {
      Vector w = g.apply(v);
      if (cur.contains(w)) continue;
      cur = cur + Subspace::span(f, n, {w});
      queue.push_back(std::move(w));
    }
  }
  return cur;
}

/// Orthogonal complement under the standard pairing.
Subspace annihilator(const Subspace& s) {
  if (s.is_zero()) return Subspace::whole(s.field(), s.ambient_dim());
  return Subspace::of_columns(kernel_basis(Matrix::from_rows(s.field(), s.rows(), s.ambient_dim())));
}

std::optional<Subspace> exhaustive_proper_submodule(const Module& m, const std::vector<Matrix>& gens) {
  std::optional<Subspace> found;
  for_each_projective_point(m.field(), m.dim(), [&](const Vector& v) {
    Subspace s = spin_with(gens, m.field(), m.dim(), {v});
    if (!s.is_whole()) {
      found = std::move(s);
      return false;
    }
    return true;
  });
  return found;
}

/// Random element of the associative algebra generated by the action.
Matrix random_algebra_element(const Module& m, const std::vector<Matrix>& gens, std::mt19937_64& rng) {
  const Field f = m.field();
  std::uniform_int_distribution<int> coeff(0, f.p() - 1);
  Matrix theta = Matrix::scalar(f, m.dim(), coeff(rng));
  if (!m.is_lie()) {
    for (const Matrix& a : m.actions()) theta = theta + a.scaled(coeff(rng));
    return theta;
  }
  if (gens.empty()) return theta;
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int t = 0; t < 4; ++t) {
    Matrix word = gens[pick(rng)];
    const int len = t % 3;
    for (int k = 0; k < len; ++k) word = word * gens[pick(rng)];
    theta = theta + word.scaled(coeff(rng));
  }
  return theta;
}

std::optional<Subspace> spin_kernel_points(const std::vector<Matrix>& gens, Field f, std::size_t n, const Matrix& kernel,
                                           bool& complete) {
  complete = false;
  const std::size_t k = kernel.cols();
  if (!checked_power(static_cast<std::uint64_t>(f.p()), k, kSpinCap)) return std::nullopt;
  complete = true;
  std::optional<Subspace> found;
  for_each_projective_point(f, k, [&](const Vector& c) {
    Subspace s = spin_with(gens, f, n, {kernel.apply(c)});
    if (!s.is_whole()) {
      found = std::move(s);
      return false;
    }
    return true;
  });
  return found;
}

enum class NortonResult { reducible, irreducible, inconclusive };

NortonResult norton(const Module& m, const std::vector<Matrix>& gens, std::uint64_t seed, std::optional<Subspace>& out) {
  const Field f = m.field();
  const std::size_t n = m.dim();
  std::vector<Matrix> transposed;
  std::transform(gens.begin(), gens.end(), std::back_inserter(transposed), transpose_all);
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x5851F42D4C957F2DULL);
  for (int attempt = 0; attempt < kNortonAttempts; ++attempt) {
    const Matrix theta = random_algebra_element(m, gens, rng);
    const auto factors = factor_charpoly(theta);
    if (factors.size() == 1 && factors[0].multiplicity == 1) return NortonResult::irreducible;
    for (const PolyFactor& pf : factors) {
      const Matrix singular = evaluate(pf.poly, theta);
      bool complete = false;
      if (auto s = spin_kernel_points(gens, f, n, kernel_basis(singular), complete)) {
        out = std::move(s);
        return NortonResult::reducible;
      }
      if (!complete) continue;
      if (auto s = spin_kernel_points(transposed, f, n, kernel_basis(singular.transpose()), complete)) {
        out = annihilator(*s);
        return NortonResult::reducible;
      }
      check_internal(complete, "transposed kernel larger than kernel");
      return NortonResult::irreducible;
    }
  }
  return NortonResult::inconclusive;
}

std::vector<Module> chop(const Module& m, std::uint64_t seed) {
  if (m.dim() == 0) return {};
  auto s = find_proper_submodule(m, seed);
  if (!s) return {m};
  auto lower = chop(submodule(m, *s), seed + 1);
  auto upper = chop(quotient_module(m, *s), seed + 2);
  lower.insert(lower.end(), std::make_move_iterator(upper.begin()), std::make_move_iterator(upper.end()));
  return lower;
}

bool irreducibles_isomorphic(const Module& a, const Module& b) {
  if (a.dim() != b.dim() || a.fingerprint() != b.fingerprint()) return false;
  const auto ts = intertwiners(a, b);
  if (ts.empty()) return false;
  check_internal(inverse(ts.front()).has_value(), "nonzero intertwiner between irreducibles is singular");
  return true;
}

std::vector<std::string> extension_names(const LieAlgebra& q, std::size_t d) {
  std::vector<std::string> names = q.basis_names();
  for (std::size_t k = 0; k < d; ++k) {
    std::string name = "m" + std::to_string(k + 1);
    while (std::find(names.begin(), names.end(), name) != names.end()) name += "'";
    names.push_back(name);
  }
  return names;
}

}  // namespace

// ----------------------------------------------------------------- Module

Module::Module(Field f, std::size_t dim, LiePtr lie, GroupPtr group, std::vector<Matrix> actions)
    : field_(f), dim_(dim), lie_(std::move(lie)), group_(std::move(group)), actions_(std::move(actions)) {
  std::ostringstream fp;
  fp << (lie_ ? "lie" : "group") << " p=" << field_.p() << " d=" << dim_ << ' ';
  for (const Matrix& a : actions_) append_poly(fp, a);
  if (lie_) {
    for (std::size_t i = 0; i < actions_.size(); ++i)
      for (std::size_t j = i + 1; j < actions_.size(); ++j) append_poly(fp, actions_[i] + actions_[j]);
  }
  fingerprint_ = detail::fnv1a_hex(fp.str());
}

Module Module::lie(LiePtr owner, std::vector<Matrix> basis_actions, std::size_t dim) {
  if (!owner) throw InputError("module owner is null");
  const Field f = owner->field();
  if (basis_actions.size() != owner->dim()) throw InputError("one action matrix per basis element required");
  if (!basis_actions.empty()) dim = basis_actions.front().rows();
  for (const Matrix& a : basis_actions)
    if (a.rows() != dim || a.cols() != dim || a.field() != f) throw InputError("action matrices have wrong shape or field");
  for (std::size_t i = 0; i < owner->dim(); ++i)
    for (std::size_t j = i + 1; j < owner->dim(); ++j) {
      Matrix lhs(f, dim, dim);
      const Vector& c = owner->bracket(i, j);
      for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) lhs = lhs + basis_actions[k].scaled(c[k]);
      if (lhs != commutator(basis_actions[i], basis_actions[j]))
        throw ValidationError("action does not respect the bracket [" + owner->basis_names()[i] + "," +
                              owner->basis_names()[j] + "]");
    }
  return Module(f, dim, std::move(owner), nullptr, std::move(basis_actions));
}

Module Module::group(Field f, GroupPtr owner, std::vector<Matrix> element_actions) {
  if (!owner) throw InputError("module owner is null");
  if (element_actions.size() != owner->order()) throw InputError("one action matrix per group element required");
  const std::size_t dim = element_actions.front().rows();
  for (const Matrix& a : element_actions)
    if (a.rows() != dim || a.cols() != dim || a.field() != f) throw InputError("action matrices have wrong shape or field");
  if (!element_actions[owner->identity()].is_identity()) throw ValidationError("identity does not act as the identity");
  // Checking right multiplication by generators suffices: it propagates to
  // every word by induction.
  for (std::size_t g = 0; g < owner->order(); ++g)
    for (int h : owner->generators())
      if (element_actions[owner->mul(static_cast<int>(g), h)] != element_actions[g] * element_actions[h])
        throw ValidationError("action is not a homomorphism at (" + std::to_string(g) + "," + std::to_string(h) + ")");
  return Module(f, dim, nullptr, std::move(owner), std::move(element_actions));
}

Module Module::trivial(LiePtr owner, std::size_t dim) {
  const Field f = owner->field();
  std::vector<Matrix> actions(owner->dim(), Matrix(f, dim, dim));
  return Module(f, dim, std::move(owner), nullptr, std::move(actions));
}

Module Module::trivial(Field f, GroupPtr owner, std::size_t dim) {
  std::vector<Matrix> actions(owner->order(), Matrix::identity(f, dim));
  return Module(f, dim, nullptr, std::move(owner), std::move(actions));
}

bool Module::same_owner(const Module& other) const {
  if (field_ != other.field_ || is_lie() != other.is_lie()) return false;
  if (is_lie()) return lie_ == other.lie_ || *lie_ == *other.lie_;
  return group_ == other.group_ || *group_ == *other.group_;
}

Matrix Module::act(const Vector& x) const {
  if (!is_lie()) throw PreconditionError("act(x) is defined for Lie modules only");
  Matrix out(field_, dim_, dim_);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) out = out + actions_[i].scaled(x[i]);
  return out;
}

std::vector<Matrix> Module::generator_actions() const {
  if (is_lie()) return actions_;
  std::vector<Matrix> out;
  for (int g : group_->generators()) out.push_back(actions_[g]);
  return out;
}

bool Module::is_trivial() const {
  if (is_lie()) return std::all_of(actions_.begin(), actions_.end(), [](const Matrix& a) { return a.is_zero(); });
  return std::all_of(actions_.begin(), actions_.end(), [](const Matrix& a) { return a.is_identity(); });
}

const std::string& Module::fingerprint() const { return fingerprint_; }

// ----------------------------------------------------------- constructions

Module dual(const Module& m) {
  std::vector<Matrix> actions;
  if (m.is_lie()) {
    for (const Matrix& a : m.actions()) actions.push_back(a.transpose().scaled(m.field().p() - 1));
    return Module::lie(m.lie_owner(), std::move(actions), m.dim());
  }
  const FiniteGroup& g = *m.group_owner();
  for (std::size_t x = 0; x < g.order(); ++x) actions.push_back(m.action(g.inv(static_cast<int>(x))).transpose());
  return Module::group(m.field(), m.group_owner(), std::move(actions));
}

Module tensor(const Module& m, const Module& n) {
  if (!m.same_owner(n)) throw InputError("tensor: modules have different owners");
  std::vector<Matrix> actions;
  if (m.is_lie()) {
    const Matrix im = Matrix::identity(m.field(), m.dim());
    const Matrix in = Matrix::identity(m.field(), n.dim());
    for (std::size_t i = 0; i < m.actions().size(); ++i)
      actions.push_back(kron(m.action(i), in) + kron(im, n.action(i)));
    return Module::lie(m.lie_owner(), std::move(actions), m.dim() * n.dim());
  }
  for (std::size_t g = 0; g < m.actions().size(); ++g) actions.push_back(kron(m.action(g), n.action(g)));
  return Module::group(m.field(), m.group_owner(), std::move(actions));
}

Module hom_module(const Module& m, const Module& n) {
  if (!m.same_owner(n)) throw InputError("hom_module: modules have different owners");
  return tensor(dual(m), n);
}

Vector hom_to_vector(const Matrix& f) {
  Vector v(f.rows() * f.cols());
  for (std::size_t i = 0; i < f.cols(); ++i)
    for (std::size_t j = 0; j < f.rows(); ++j) v[i * f.rows() + j] = f.at(j, i);
  return v;
}

Matrix vector_to_hom(const Vector& v, std::size_t dim_m, std::size_t dim_n, Field field) {
  if (v.size() != dim_m * dim_n) throw InputError("vector_to_hom: wrong length");
  Matrix f(field, dim_n, dim_m);
  for (std::size_t i = 0; i < dim_m; ++i)
    for (std::size_t j = 0; j < dim_n; ++j) f.set(j, i, v[i * dim_n + j]);
  return f;
}

Module permutation_module(Field f, const GroupPtr& g, const Subgroup& h) {
  if (!is_subgroup(*g, h)) throw InputError("permutation_module: not a subgroup");
  std::vector<int> label(g->order(), -1);
  std::vector<int> reps;
  for (std::size_t x = 0; x < g->order(); ++x) {
    if (label[x] >= 0) continue;
    for (int k : h.elements) label[g->mul(static_cast<int>(x), k)] = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(x));
  }
  std::vector<Matrix> actions;
  for (std::size_t y = 0; y < g->order(); ++y) {
    Matrix a(f, reps.size(), reps.size());
    for (std::size_t c = 0; c < reps.size(); ++c) a.set(label[g->mul(static_cast<int>(y), reps[c])], c, 1);
    actions.push_back(std::move(a));
  }
  return Module::group(f, g, std::move(actions));
}

Module regular_module(Field f, const GroupPtr& g) { return permutation_module(f, g, trivial_subgroup(*g)); }

Subspace spin(const Module& m, const std::vector<Vector>& seeds) {
  return spin_with(m.generator_actions(), m.field(), m.dim(), seeds);
}

bool is_submodule(const Module& m, const Subspace& s) {
  if (s.ambient_dim() != m.dim()) return false;
  for (const Matrix& g : m.generator_actions())
    for (const Vector& v : s.rows())
      if (!s.contains(g.apply(v))) return false;
  return true;
}

Module submodule(const Module& m, const Subspace& s) {
  if (!is_submodule(m, s)) throw InputError("submodule: subspace is not invariant");
  const std::size_t k = s.dim();
  std::vector<Matrix> actions;
  for (const Matrix& a : m.actions()) {
    Matrix r(m.field(), k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const Vector c = *s.coordinates(a.apply(s.rows()[j]));
      for (std::size_t i = 0; i < k; ++i) r.set(i, j, c[i]);
    }
    actions.push_back(std::move(r));
  }
  if (m.is_lie()) return Module::lie(m.lie_owner(), std::move(actions), k);
  return Module::group(m.field(), m.group_owner(), std::move(actions));
}

Module quotient_module(const Module& m, const Subspace& s) {
  if (!is_submodule(m, s)) throw InputError("quotient_module: subspace is not invariant");
  const auto positions = s.complement_positions();
  const std::size_t k = positions.size();
  std::vector<Matrix> actions;
  for (const Matrix& a : m.actions()) {
    Matrix r(m.field(), k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const Vector c = s.reduce(a.column(positions[j]));
      for (std::size_t i = 0; i < k; ++i) r.set(i, j, c[positions[i]]);
    }
    actions.push_back(std::move(r));
  }
  if (m.is_lie()) return Module::lie(m.lie_owner(), std::move(actions), k);
  return Module::group(m.field(), m.group_owner(), std::move(actions));
}

std::optional<Subspace> find_proper_submodule(const Module& m, std::uint64_t seed) {
  if (m.dim() <= 1) return std::nullopt;
  const auto gens = m.generator_actions();
  if (checked_power(static_cast<std::uint64_t>(m.field().p()), m.dim(), kSpinCap))
    return exhaustive_proper_submodule(m, gens);
  std::optional<Subspace> found;
  switch (norton(m, gens, seed, found)) {
    case NortonResult::reducible:
      check_internal(is_submodule(m, *found) && !found->is_zero() && !found->is_whole(),
                     "Norton test returned an improper subspace");
      return found;
    case NortonResult::irreducible:
      return std::nullopt;
    case NortonResult::inconclusive:
      break;
  }
  if (checked_power(static_cast<std::uint64_t>(m.field().p()), m.dim(), kSpinCap * 256))
    return exhaustive_proper_submodule(m, gens);
  throw ResourceError("irreducibility test inconclusive for module of dimension " + std::to_string(m.dim()));
}

bool is_irreducible(const Module& m, std::uint64_t seed) {
  return m.dim() > 0 && !find_proper_submodule(m, seed).has_value();
}

std::vector<CompositionFactor> composition_factors(const Module& m, std::uint64_t seed) {
  std::vector<CompositionFactor> out;
  for (Module& factor : chop(m, seed)) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const CompositionFactor& cf) { return irreducibles_isomorphic(cf.module, factor); });
    if (it != out.end()) {
      ++it->multiplicity;
    } else {
      out.push_back({std::move(factor), 1});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CompositionFactor& a, const CompositionFactor& b) {
    if (a.module.dim() != b.module.dim()) return a.module.dim() < b.module.dim();
    return a.module.fingerprint() < b.module.fingerprint();
  });
  return out;
}

std::vector<Matrix> intertwiners(const Module& m, const Module& n) {
  if (!m.same_owner(n)) throw InputError("intertwiners: modules have different owners");
  const std::size_t dm = m.dim();
  const std::size_t dn = n.dim();
  const auto gm = m.generator_actions();
  const auto gn = n.generator_actions();
  const Field f = m.field();
  Matrix system(f, gm.size() * dn * dm, dn * dm);
  // Unknown T[r][c] sits at column r * dm + c; row (g, r, c) encodes (T M_g - N_g T)[r][c].
  for (std::size_t g = 0; g < gm.size(); ++g)
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) {
        const std::size_t row = (g * dn + r) * dm + c;
        for (std::size_t k = 0; k < dm; ++k) {
          const std::size_t col = r * dm + k;
          system.set(row, col, system.at(row, col) + gm[g].at(k, c));
        }
        for (std::size_t k = 0; k < dn; ++k) {
          const std::size_t col = k * dm + c;
          system.set(row, col, system.at(row, col) - gn[g].at(r, k));
        }
      }
  std::vector<Matrix> out;
  const Matrix kernel = kernel_basis(system);
  for (std::size_t j = 0; j < kernel.cols(); ++j) {
    Matrix t(f, dn, dm);
    for (std::size_t r = 0; r < dn; ++r)
      for (std::size_t c = 0; c < dm; ++c) t.set(r, c, kernel.at(r * dm + c, j));
    out.push_back(std::move(t));
  }
  return out;
}

bool is_isomorphic(const Module& m, const Module& n) {
  if (!m.same_owner(n) || m.dim() != n.dim()) return false;
  if (m.fingerprint() != n.fingerprint()) return false;
  if (is_irreducible(m) && is_irreducible(n)) return irreducibles_isomorphic(m, n);
  const auto a = composition_factors(m);
  const auto b = composition_factors(n);
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const auto& fa : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size() && !matched; ++j)
      if (!used[j] && fa.multiplicity == b[j].multiplicity && irreducibles_isomorphic(fa.module, b[j].module)) {
        used[j] = 1;
        matched = true;
      }
    if (!matched) return false;
  }
  return true;
}

Module restrict(const Module& m, const Subspace& subalgebra) {
  if (!m.is_lie()) throw InputError("restrict: subalgebra given for a group module");
  LieSubalgebra sub = as_algebra(*m.lie_owner(), subalgebra);
  std::vector<Matrix> actions;
  for (std::size_t k = 0; k < sub.inclusion.cols(); ++k) actions.push_back(m.act(sub.inclusion.column(k)));
  return Module::lie(share(std::move(sub.algebra)), std::move(actions), m.dim());
}

Module restrict(const Module& m, const Subgroup& subgroup) {
  if (m.is_lie()) throw InputError("restrict: subgroup given for a Lie module");
  GroupSubgroup sub = as_group(*m.group_owner(), subgroup);
  std::vector<Matrix> actions;
  for (int g : sub.inclusion) actions.push_back(m.action(g));
  return Module::group(m.field(), share(std::move(sub.group)), std::move(actions));
}

bool is_module_hom(const Module& m, const Module& n, const Matrix& t) {
  if (!m.same_owner(n) || t.rows() != n.dim() || t.cols() != m.dim()) return false;
  const auto gm = m.generator_actions();
  const auto gn = n.generator_actions();
  for (std::size_t g = 0; g < gm.size(); ++g)
    if (t * gm[g] != gn[g] * t) return false;
  return true;
}

Matrix evaluation_map(const Module& v, const Module& w, const Subspace& a) {
  const Module hom = hom_module(v, w);
  if (!is_submodule(hom, a)) throw InputError("evaluation: subspace of Hom is not invariant");
  const std::size_t k = a.dim();
  Matrix e(v.field(), w.dim(), v.dim() * k);
  for (std::size_t j = 0; j < k; ++j) {
    const Matrix f = vector_to_hom(a.rows()[j], v.dim(), w.dim(), v.field());
    for (std::size_t i = 0; i < v.dim(); ++i) {
      const Vector img = f.column(i);
      for (std::size_t r = 0; r < w.dim(); ++r) e.set(r, i * k + j, img[r]);
    }
  }
  check_internal(is_module_hom(tensor(v, submodule(hom, a)), w, e), "evaluation is not a module homomorphism");
  return e;
}

Subspace evaluation_image(const Module& v, const Module& w, const Subspace& a) {
  const Matrix e = evaluation_map(v, w, a);
  Subspace image = Subspace::of_columns(e);
  check_internal(is_submodule(w, image), "evaluation image is not a submodule");
  return image;
}

// ------------------------------------------------------ chief factors etc.

Module chief_factor_module(const LiePtr& l, const Subspace& upper, const Subspace& lower) {
  if (!is_ideal(*l, upper) || !is_ideal(*l, lower)) throw InputError("chief factor: terms must be ideals");
  if (!upper.contains(lower) || upper.dim() == lower.dim()) throw InputError("chief factor: need lower < upper");
  std::vector<Vector> reps;
  for (const Vector& u : upper.rows()) reps.push_back(lower.reduce(u));
  const Subspace r = Subspace::span(l->field(), l->dim(), reps);
  const std::size_t k = r.dim();
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < l->dim(); ++i) {
    Matrix a(l->field(), k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const Vector c = *r.coordinates(lower.reduce(l->bracket(l->unit(i), r.rows()[j])));
      for (std::size_t s = 0; s < k; ++s) a.set(s, j, c[s]);
    }
    actions.push_back(std::move(a));
  }
  Module m = Module::lie(l, std::move(actions), k);
  if (!is_irreducible(m)) throw InputError("chief factor: section is not a chief factor");
  return m;
}

SectionCoordinates::SectionCoordinates(const FiniteGroup& g, const Subgroup& upper, const Subgroup& lower)
    : field_(2) {
  if (!upper.contains(lower) || upper.size() == lower.size()) throw InputError("section: need lower < upper");
  for (int a : upper.elements)
    for (int b : upper.elements)
      if (!lower.contains(g.commutator(a, b))) throw InputError("section: upper/lower is not abelian");
  for (int x : upper.elements) {
    int best = x;
    for (int k : lower.elements) best = std::min(best, g.mul(x, k));
    label_[x] = best;
  }
  int first = -1;
  for (int x : upper.elements)
    if (!lower.contains(x)) {
      first = x;
      break;
    }
  int prime = 1;
  for (int y = first; !lower.contains(y); y = g.mul(y, first)) ++prime;
  if (!is_prime(prime)) throw InputError("section: upper/lower is not elementary abelian");
  field_ = Field(prime);
  // Adjoin representatives one at a time; coset label -> coordinates.
  coords_ = {{label_.at(g.identity()), {}}};
  for (int x : upper.elements) {
    if (coords_.count(label_.at(x))) continue;
    basis_.push_back(x);
    std::map<int, Vector> next;
    for (const auto& [lab, vec] : coords_) {
      int y = lab;
      for (int c = 0; c < prime; ++c) {
        Vector v = vec;
        v.push_back(c);
        next[label_.at(y)] = v;
        y = g.mul(y, x);
      }
    }
    coords_ = std::move(next);
  }
  for (auto& [lab, vec] : coords_) vec.resize(basis_.size(), 0);
  if (coords_.size() != upper.size() / lower.size()) throw InputError("section: upper/lower is not elementary abelian");
}

const Vector& SectionCoordinates::operator()(int x) const {
  const auto it = label_.find(x);
  if (it == label_.end()) throw InputError("section: element outside the upper term");
  return coords_.at(it->second);
}

Module chief_factor_module(const GroupPtr& g, const Subgroup& upper, const Subgroup& lower) {
  if (!is_normal(*g, upper) || !is_normal(*g, lower)) throw InputError("chief factor: terms must be normal");
  const SectionCoordinates coords(*g, upper, lower);
  const std::size_t k = coords.dim();
  std::vector<Matrix> actions;
  for (std::size_t h = 0; h < g->order(); ++h) {
    Matrix a(coords.field(), k, k);
    for (std::size_t j = 0; j < k; ++j) {
      const Vector& c = coords(g->conjugate(coords.basis()[j], g->inv(static_cast<int>(h))));
      for (std::size_t s = 0; s < k; ++s) a.set(s, j, c[s]);
    }
    actions.push_back(std::move(a));
  }
  Module m = Module::group(coords.field(), g, std::move(actions));
  if (!is_irreducible(m)) throw InputError("chief factor: section is not a chief factor");
  return m;
}

Module descend(const Module& m, const LieQuotient& q, const LiePtr& quotient_owner) {
  for (const Vector& v : q.kernel.rows())
    if (!m.act(v).is_zero()) throw InputError("descend: kernel does not act trivially");
  std::vector<Matrix> actions;
  for (std::size_t k = 0; k < q.section.cols(); ++k) actions.push_back(m.act(q.section.column(k)));
  return Module::lie(quotient_owner, std::move(actions), m.dim());
}

Module descend(const Module& m, const GroupQuotient& q, const GroupPtr& quotient_owner) {
  for (int k : q.kernel.elements)
    if (!m.action(k).is_identity()) throw InputError("descend: kernel does not act trivially");
  std::vector<Matrix> actions;
  for (int rep : q.section) actions.push_back(m.action(rep));
  return Module::group(m.field(), quotient_owner, std::move(actions));
}

Module pullback(const Module& m, const LieQuotient& q, const LiePtr& parent) {
  std::vector<Matrix> actions;
  for (std::size_t i = 0; i < q.projection.cols(); ++i) actions.push_back(m.act(q.projection.column(i)));
  return Module::lie(parent, std::move(actions), m.dim());
}

Module pullback(const Module& m, const GroupQuotient& q, const GroupPtr& parent) {
  std::vector<Matrix> actions;
  for (int image : q.projection) actions.push_back(m.action(image));
  return Module::group(m.field(), parent, std::move(actions));
}

LieSplitExtension split_extension(const LiePtr& q, const Module& m) {
  if (!m.is_lie() || !(*m.lie_owner() == *q)) throw InputError("split_extension: module is not over this algebra");
  const std::size_t n = q->dim();
  const std::size_t d = m.dim();
  LieAlgebra::BracketTable table;
  for (const auto& [ij, v] : q->bracket_table()) {
    Vector w(n + d, 0);
    std::copy(v.begin(), v.end(), w.begin());
    table[ij] = std::move(w);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      Vector w(n + d, 0);
      for (std::size_t r = 0; r < d; ++r) w[n + r] = m.action(i).at(r, k);
      if (std::any_of(w.begin(), w.end(), [](int x) { return x != 0; })) table[{i, n + k}] = std::move(w);
    }
  LieAlgebra ext(q->field(), extension_names(*q, d), table);
  std::vector<Vector> ideal;
  for (std::size_t k = 0; k < d; ++k) ideal.push_back(ext.unit(n + k));
  return {ext, Subspace::span(q->field(), n + d, ideal)};
}

GroupSplitExtension split_extension(const GroupPtr& q, const Module& m) {
  if (m.is_lie() || !(*m.group_owner() == *q)) throw InputError("split_extension: module is not over this group");
  const int p = m.field().p();
  const auto size = checked_power(static_cast<std::uint64_t>(p), m.dim(), 1024);
  if (!size || *size * q->order() > 1024) throw ResourceError("split_extension: semidirect product too large");
  const int vs = static_cast<int>(*size);
  const std::size_t d = m.dim();
  std::vector<Vector> vecs(static_cast<std::size_t>(vs), Vector(d, 0));
  for (int c = 0; c < vs; ++c) {
    int x = c;
    for (std::size_t i = d; i-- > 0;) {
      vecs[c][i] = x % p;
      x /= p;
    }
  }
  auto code = [&](const Vector& v) {
    int c = 0;
    for (int x : v) c = c * p + x;
    return c;
  };
  const auto order = static_cast<int>(q->order());
  FiniteGroup::Table table(static_cast<std::size_t>(order * vs), std::vector<int>(static_cast<std::size_t>(order * vs)));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      const int ab = q->mul(a, b);
      for (int v = 0; v < vs; ++v)
        for (int w = 0; w < vs; ++w) {
          Vector sum = m.action(a).apply(vecs[w]);
          for (std::size_t i = 0; i < d; ++i) sum[i] = m.field().add(sum[i], vecs[v][i]);
          table[a * vs + v][b * vs + w] = ab * vs + code(sum);
        }
    }
  Subgroup module;
  for (int v = 0; v < vs; ++v) module.elements.push_back(q->identity() * vs + v);
  return {FiniteGroup(std::move(table), q->identity() * vs), module};
}

}  // namespace schunck
