#pragma once

// H^1(m) by counting extensions of the trivial 1-dim module by m. Every
// block-triangular candidate [[A_x, c_x], [0, trivial]] is built from raw
// integers, checked for the representation property by hand, and tested for
// an invariant complement line (w, 1). Valid candidates number |Z^1| and
// split ones |B^1|, so h1 = log_p(valid) - log_p(split).

#include <cstddef>
#include <vector>

#include "oracle.hpp"
#include "schunck/module.hpp"

namespace oracle {

using Mat = std::vector<std::vector<int>>;

inline Mat raw(const schunck::Matrix& a) {
  Mat out(a.rows(), std::vector<int>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out[r][c] = a.at(r, c);
  return out;
}

inline Mat mat_mul(const Mat& a, const Mat& b, int p) {
  const std::size_t n = a.size();
  Mat out(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out[i][j] = md(out[i][j] + static_cast<long long>(a[i][k]) * b[k][j], p);
  return out;
}

/// (d+1) x (d+1) block matrix with a in the corner, column c and bottom entry.
inline Mat bordered(const Mat& a, const Vec& c, int corner) {
  const std::size_t d = a.size();
  Mat out(d + 1, std::vector<int>(d + 1, 0));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t s = 0; s < d; ++s) out[r][s] = a[r][s];
    out[r][d] = c[r];
  }
  out[d][d] = corner;
  return out;
}

struct ExtensionCount {
  std::size_t valid = 0;
  std::size_t split = 0;
  int h1(int p) const { return log_p(valid, p) - log_p(split, p); }
};

inline ExtensionCount count_lie_extensions(const schunck::Module& m) {
  const int p = m.field().p();
  const std::size_t d = m.dim();
  const NaiveLie l(*m.lie_owner());
  const std::size_t n = l.n;
  std::vector<Mat> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(raw(m.action(i)));
  const auto cols = all_vectors(p, d);
  ExtensionCount out;
  for (const Vec& code : all_vectors(p, n * d)) {
    std::vector<Mat> x;
    for (std::size_t i = 0; i < n; ++i)
      x.push_back(bordered(a[i], Vec(code.begin() + i * d, code.begin() + (i + 1) * d), 0));
    auto act = [&](const Vec& coeffs) {
      Mat s(d + 1, std::vector<int>(d + 1, 0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r <= d; ++r)
          for (std::size_t c = 0; c <= d; ++c) s[r][c] = md(s[r][c] + coeffs[i] * x[i][r][c], p);
      return s;
    };
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        const Mat xy = mat_mul(x[i], x[j], p);
        const Mat yx = mat_mul(x[j], x[i], p);
        const Mat rhs = act(l.bracket(l.unit(i), l.unit(j)));
        for (std::size_t r = 0; r <= d; ++r)
          for (std::size_t c = 0; c <= d; ++c)
            if (md(xy[r][c] - yx[r][c], p) != rhs[r][c]) ok = false;
      }
    if (!ok) continue;
    ++out.valid;
    // A complement line (w, 1) is invariant iff A_x w + c_x = 0 for all x.
    for (const Vec& w : cols) {
      bool inv = true;
      for (std::size_t i = 0; i < n && inv; ++i)
        for (std::size_t r = 0; r < d; ++r) {
          long long s = x[i][r][d];
          for (std::size_t c = 0; c < d; ++c) s += static_cast<long long>(x[i][r][c]) * w[c];
          if (md(s, p) != 0) inv = false;
        }
      if (inv) {
        ++out.split;
        break;
      }
    }
  }
  return out;
}

inline ExtensionCount count_group_extensions(const schunck::Module& m) {
  const int p = m.field().p();
  const std::size_t d = m.dim();
  const schunck::FiniteGroup& g = *m.group_owner();
  const std::size_t n = g.order();
  const auto& gens = g.generators();
  const std::size_t k = gens.size();
  std::vector<Mat> a;
  for (std::size_t x = 0; x < n; ++x) a.push_back(raw(m.action(x)));
  const auto cols = all_vectors(p, d);
  ExtensionCount out;
  for (const Vec& code : all_vectors(p, k * d)) {
    // Extend from generators along a BFS tree, then check every product.
    std::vector<Mat> x(n);
    std::vector<bool> seen(n, false);
    Mat id(d + 1, std::vector<int>(d + 1, 0));
    for (std::size_t r = 0; r <= d; ++r) id[r][r] = 1;
    x[g.identity()] = id;
    seen[g.identity()] = true;
    std::vector<int> queue{g.identity()};
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (std::size_t s = 0; s < k; ++s) {
        const int y = g.table()[queue[q]][gens[s]];
        if (seen[y]) continue;
        seen[y] = true;
        x[y] = mat_mul(x[queue[q]], bordered(a[gens[s]], Vec(code.begin() + s * d, code.begin() + (s + 1) * d), 1), p);
        queue.push_back(y);
      }
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u)
      for (std::size_t v = 0; v < n && ok; ++v)
        if (mat_mul(x[u], x[v], p) != x[g.table()[u][v]]) ok = false;
    if (!ok) continue;
    ++out.valid;
    for (const Vec& w : cols) {
      bool inv = true;
      for (int s : gens) {
        for (std::size_t r = 0; r < d && inv; ++r) {
          long long t = x[s][r][d];
          for (std::size_t c = 0; c < d; ++c) t += static_cast<long long>(x[s][r][c]) * w[c];
          if (md(t, p) != w[r]) inv = false;
        }
      }
      if (inv) {
        ++out.split;
        break;
      }
    }
  }
  return out;
}

inline int h1_by_extension_count(const schunck::Module& m) {
  const ExtensionCount c = m.is_lie() ? count_lie_extensions(m) : count_group_extensions(m);
  return c.h1(m.field().p());
}

}  // namespace oracle
