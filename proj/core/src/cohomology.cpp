#include "schunck/cohomology.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "schunck/error.hpp"

namespace schunck {

namespace {

constexpr std::uint64_t kComplementSearchCap = std::uint64_t{1} << 20;

std::size_t cochain_points(const Module& m) {
  return m.is_lie() ? m.lie_owner()->dim() : m.group_owner()->order();
}

Vector block_of(const Vector& c, std::size_t i, std::size_t d) {
  return Vector(c.begin() + static_cast<std::ptrdiff_t>(i * d), c.begin() + static_cast<std::ptrdiff_t>((i + 1) * d));
}

/// Kernel of `system`, eliminating unknowns in the requested order, as
/// vectors in the original coordinates.
std::vector<Vector> ordered_kernel(const Matrix& system, UnknownOrder order) {
  const std::size_t n = system.cols();
  std::vector<std::size_t> col(n);
  std::iota(col.begin(), col.end(), 0);
  if (order == UnknownOrder::Reversed) std::reverse(col.begin(), col.end());
  Matrix permuted(system.field(), system.rows(), n);
  for (std::size_t r = 0; r < system.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) permuted.set(r, c, system.at(r, col[c]));
  const Matrix k = kernel_basis(permuted);
  std::vector<Vector> out;
  for (std::size_t j = 0; j < k.cols(); ++j) {
    Vector v(n, 0);
    for (std::size_t c = 0; c < n; ++c) v[col[c]] = k.at(c, j);
    out.push_back(std::move(v));
  }
  return out;
}

// Rows (i, j, r): f([e_i, e_j]) - A_i f(e_j) + A_j f(e_i) = 0.
std::vector<Vector> lie_cocycles(const Module& m, UnknownOrder order) {
  const LieAlgebra& l = *m.lie_owner();
  const std::size_t n = l.dim();
  const std::size_t d = m.dim();
  const Field f = m.field();
  if (n == 0 || d == 0) return {};
  const std::size_t pairs = n * (n - 1) / 2;
  Matrix system(f, std::max<std::size_t>(pairs, 1) * d, n * d);
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, row += d) {
      const Vector& b = l.bracket(i, j);
      for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < n; ++k)
          if (b[k] != 0) system.set(row + r, k * d + r, system.at(row + r, k * d + r) + b[k]);
        for (std::size_t s = 0; s < d; ++s) {
          system.set(row + r, j * d + s, system.at(row + r, j * d + s) - m.action(i).at(r, s));
          system.set(row + r, i * d + s, system.at(row + r, i * d + s) + m.action(j).at(r, s));
        }
      }
    }
  return ordered_kernel(system, order);
}

// A cocycle is fixed by its values on the generators: f(xs) = f(x) + x f(s).
// Each f(x) is written as P_x u with u the stacked generator values along a
// BFS tree. The relations f(xs) = f(x) + x f(s) for every x and generator s
// already force f(gh) = f(g) + g f(h) (induct on the word length of h), so
// they are the system solved; every basis cocycle is then checked against
// all |G|^2 conditions.
std::vector<Vector> group_cocycles(const Module& m, UnknownOrder order) {
  const FiniteGroup& g = *m.group_owner();
  const std::size_t n = g.order();
  const std::size_t d = m.dim();
  const Field f = m.field();
  std::vector<int> gens = g.generators();
  if (order == UnknownOrder::Reversed) std::reverse(gens.begin(), gens.end());
  const std::size_t k = gens.size();
  if (d == 0 || k == 0) return {};
  const std::size_t u = k * d;

  std::vector<std::optional<Matrix>> p(n);
  p[g.identity()] = Matrix(f, d, u);
  std::vector<int> queue{g.identity()};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int x = queue[q];
    for (std::size_t s = 0; s < k; ++s) {
      const int y = g.mul(x, gens[s]);
      if (p[y]) continue;
      Matrix next = *p[x];
      const Matrix& ax = m.action(static_cast<std::size_t>(x));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) next.set(r, s * d + c, next.at(r, s * d + c) + ax.at(r, c));
      p[y] = std::move(next);
      queue.push_back(y);
    }
  }
  check_internal(queue.size() == n, "group generators do not generate");

  Matrix system(f, n * k * d, u);
  std::size_t row = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t s = 0; s < k; ++s, row += d) {
      Matrix lhs = *p[g.mul(static_cast<int>(x), gens[s])] - *p[x];
      const Matrix& ax = m.action(x);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) lhs.set(r, s * d + c, lhs.at(r, s * d + c) - ax.at(r, c));
      system.set_block(row, 0, lhs);
    }
  std::vector<Vector> out;
  for (const Vector& par : ordered_kernel(system, order)) {
    Vector c(n * d, 0);
    for (std::size_t x = 0; x < n; ++x) {
      const Vector fx = p[x]->apply(par);
      std::copy(fx.begin(), fx.end(), c.begin() + static_cast<std::ptrdiff_t>(x * d));
    }
    check_internal(is_cocycle(m, c), "h1: generator relations did not yield a cocycle");
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

Subspace h0(const Module& m) {
  const std::size_t d = m.dim();
  const Field f = m.field();
  const auto gens = m.generator_actions();
  if (gens.empty()) return Subspace::whole(f, d);
  Matrix system(f, gens.size() * d, d);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const Matrix a = m.is_lie() ? gens[i] : gens[i] - Matrix::identity(f, d);
    system.set_block(i * d, 0, a);
  }
  return Subspace::of_columns(kernel_basis(system));
}

Vector coboundary(const Module& m, const Vector& v) {
  const std::size_t n = cochain_points(m);
  const std::size_t d = m.dim();
  Vector c(n * d, 0);
  for (std::size_t x = 0; x < n; ++x) {
    Vector fx = m.action(x).apply(v);
    if (!m.is_lie())
      for (std::size_t r = 0; r < d; ++r) fx[r] = m.field().sub(fx[r], v[r]);
    std::copy(fx.begin(), fx.end(), c.begin() + static_cast<std::ptrdiff_t>(x * d));
  }
  return c;
}

CocycleSpace h1(const Module& m, UnknownOrder order) {
  const std::size_t n = cochain_points(m);
  const std::size_t d = m.dim();
  if (n * d > kMaxCocycleUnknowns)
    throw ResourceError("h1: " + std::to_string(n * d) + " cochain unknowns exceed the cap of " +
                        std::to_string(kMaxCocycleUnknowns));
  const Field f = m.field();
  const Subspace z1 = Subspace::span(f, n * d, m.is_lie() ? lie_cocycles(m, order) : group_cocycles(m, order));
  std::vector<Vector> bounds;
  for (std::size_t r = 0; r < d; ++r) {
    Vector e(d, 0);
    e[r] = 1;
    bounds.push_back(coboundary(m, e));
  }
  const Subspace b1 = Subspace::span(f, n * d, bounds);
  check_internal(z1.contains(b1), "h1: a coboundary failed the cocycle condition");
  return CocycleSpace{z1.rows(), b1.rows(), z1.dim() - b1.dim()};
}

bool is_cocycle(const Module& m, const Vector& c) {
  const std::size_t n = cochain_points(m);
  const std::size_t d = m.dim();
  if (c.size() != n * d) return false;
  const Field f = m.field();
  if (m.is_lie()) {
    const LieAlgebra& l = *m.lie_owner();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const Vector& b = l.bracket(i, j);
        Vector lhs(d, 0);
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t r = 0; r < d; ++r) lhs[r] = f.add(lhs[r], f.mul(b[k], c[k * d + r]));
        const Vector xi = m.action(i).apply(block_of(c, j, d));
        const Vector xj = m.action(j).apply(block_of(c, i, d));
        for (std::size_t r = 0; r < d; ++r)
          if (lhs[r] != f.sub(xi[r], xj[r])) return false;
      }
    return true;
  }
  const FiniteGroup& g = *m.group_owner();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Vector ab = block_of(c, static_cast<std::size_t>(g.mul(static_cast<int>(a), static_cast<int>(b))), d);
      const Vector fa = block_of(c, a, d);
      const Vector afb = m.action(a).apply(block_of(c, b, d));
      for (std::size_t r = 0; r < d; ++r)
        if (ab[r] != f.add(fa[r], afb[r])) return false;
    }
  return true;
}

bool is_coboundary(const Module& m, const Vector& c) {
  const std::size_t n = cochain_points(m);
  const std::size_t d = m.dim();
  if (c.size() != n * d) return false;
  std::vector<Vector> bounds;
  for (std::size_t r = 0; r < d; ++r) {
    Vector e(d, 0);
    e[r] = 1;
    bounds.push_back(coboundary(m, e));
  }
  return Subspace::span(m.field(), n * d, bounds).contains(c);
}

ExtResult ext1(const Module& v, const Module& w) {
  const Module hom = hom_module(v, w);
  const CocycleSpace cs = h1(hom);
  const std::size_t len = cochain_points(hom) * hom.dim();
  Subspace acc = Subspace::span(hom.field(), len, cs.b1_basis);
  ExtResult out;
  out.dim = cs.h1_dim;
  for (const Vector& z : cs.z1_basis) {
    if (acc.contains(z)) continue;
    out.representative_cocycles.push_back(z);
    acc = acc + Subspace::span(hom.field(), len, {z});
  }
  check_internal(out.representative_cocycles.size() == out.dim, "ext1: representative count mismatch");
  return out;
}

Module extension_from_cocycle(const Module& v, const Module& w, const Vector& c) {
  const Module hom = hom_module(v, w);
  if (!is_cocycle(hom, c)) throw InputError("extension_from_cocycle: argument is not a cocycle");
  const std::size_t dv = v.dim();
  const std::size_t dw = w.dim();
  const std::size_t dh = hom.dim();
  const Field f = v.field();
  const std::size_t n = cochain_points(hom);
  std::vector<Matrix> actions;
  actions.reserve(n);
  for (std::size_t x = 0; x < n; ++x) {
    Matrix cx = vector_to_hom(block_of(c, x, dh), dv, dw, f);
    if (!v.is_lie()) cx = cx * v.action(x);
    Matrix a(f, dw + dv, dw + dv);
    a.set_block(0, 0, w.action(x));
    a.set_block(0, dw, cx);
    a.set_block(dw, dw, v.action(x));
    actions.push_back(std::move(a));
  }
  if (v.is_lie()) return Module::lie(v.lie_owner(), std::move(actions), dw + dv);
  return Module::group(f, v.group_owner(), std::move(actions));
}

std::optional<Subspace> find_module_complement(const Module& m, const Subspace& s) {
  const std::size_t n = m.dim();
  const std::size_t k = s.dim();
  const Field f = m.field();
  const auto positions = s.complement_positions();
  const std::size_t q = positions.size();
  if (!checked_power(static_cast<std::uint64_t>(f.p()), k * q, kComplementSearchCap))
    throw ResourceError("find_module_complement: " + std::to_string(f.p()) + "^" + std::to_string(k * q) +
                        " candidate complements exceed the search cap");
  // Every vector-space complement is spanned by e_j + phi(e_j), phi: F^q -> s.
  std::optional<Subspace> found;
  for_each_vector(f, k * q, [&](const Vector& coeffs) {
    std::vector<Vector> rows;
    for (std::size_t j = 0; j < q; ++j) {
      Vector r(n, 0);
      r[positions[j]] = 1;
      for (std::size_t t = 0; t < k; ++t)
        for (std::size_t i = 0; i < n; ++i) r[i] = f.add(r[i], f.mul(coeffs[j * k + t], s.rows()[t][i]));
      rows.push_back(std::move(r));
    }
    Subspace cand = Subspace::span(f, n, rows);
    if (!is_submodule(m, cand)) return true;
    found = std::move(cand);
    return false;
  });
  return found;
}

}  // namespace schunck
