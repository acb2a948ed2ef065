#include "schunck/finfield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "schunck/error.hpp"

namespace schunck {

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(int p) : p_(p) {
  if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
}

int Field::inv(int a) const {
  if (a == 0) throw PreconditionError("inverse of zero in F_" + std::to_string(p_));
  return pow(a, static_cast<std::uint64_t>(p_ - 2));
}

int Field::pow(int a, std::uint64_t e) const noexcept {
  int result = 1 % p_;
  int base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix Matrix::identity(Field f, std::size_t n) { return scalar(f, n, 1); }

Matrix Matrix::scalar(Field f, std::size_t n, int value) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, value);
  return m;
}

Matrix Matrix::from_rows(Field f, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_columns(Field f, const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw InputError("ragged matrix columns");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

std::vector<Vector> Matrix::column_vectors() const {
  std::vector<Vector> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

Matrix Matrix::scaled(int s) const {
  Matrix m = *this;
  int sr = field_.reduce(s);
  for (int& x : m.data_) x = field_.mul(x, sr);
  return m;
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  Vector out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    long long acc = 0;
    const int* row = data_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<long long>(row[c]) * v[c];
    out[r] = field_.reduce(acc);
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](int x) { return x == 0; });
}

bool Matrix::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

int Matrix::trace() const {
  int t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t = field_.add(t, at(i, i));
  return t;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix m(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m.data_[r * nc + c] = at(r0 + r, c0 + c);
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) data_[(r0 + r) * cols_ + c0 + c] = m.at(r, c);
}

static void require_same_field(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw InputError("matrix field mismatch");
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix shape mismatch in +");
  Matrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
  return m;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InputError("matrix shape mismatch in -");
  Matrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  if (a.cols_ != b.rows_) throw InputError("matrix shape mismatch in *");
  Matrix m(a.field_, a.rows_, b.cols_);
  std::vector<long long> acc(b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const long long x = a.data_[r * a.cols_ + k];
      if (x == 0) continue;
      const int* brow = b.data_.data() + k * b.cols_;
      for (std::size_t c = 0; c < b.cols_; ++c) acc[c] += x * brow[c];
    }
    for (std::size_t c = 0; c < b.cols_; ++c) m.data_[r * b.cols_ + c] = a.field_.reduce(acc[c]);
  }
  return m;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::strong_ordering operator<=>(const Matrix& a, const Matrix& b) {
  if (auto c = a.field_.p() <=> b.field_.p(); c != 0) return c;
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  return a.data_ <=> b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    out << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) out << (c ? "," : "") << at(r, c);
    out << ']';
  }
  out << ']';
  return out.str();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  require_same_field(a, b);
  Matrix m(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const int x = a.at(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m.set(i * b.rows() + k, j * b.cols() + l, static_cast<long long>(x) * b.at(k, l));
    }
  return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// ------------------------------------------------------------ elimination

EchelonForm row_echelon(Matrix a) {
  const Field f = a.field();
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<Vector> m(rows);
  for (std::size_t r = 0; r < rows; ++r) m[r] = a.row(r);

  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < rows; ++c) {
    std::size_t sel = next;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[next]);
    const int inv = f.inv(m[next][c]);
    if (inv != 1)
      for (std::size_t k = c; k < cols; ++k) m[next][k] = f.mul(m[next][k], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == next || m[r][c] == 0) continue;
      const int factor = m[r][c];
      for (std::size_t k = c; k < cols; ++k)
        if (m[next][k] != 0) m[r][k] = f.sub(m[r][k], f.mul(factor, m[next][k]));
    }
    pivots.push_back(c);
    ++next;
  }
  return {Matrix::from_rows(f, m, cols), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return row_echelon(a).rank(); }

SolveResult rref_solve(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field()) throw InputError("rref_solve: field mismatch");
  if (a.rows() != b.rows()) throw InputError("rref_solve: row count mismatch");
  const Field f = a.field();
  Matrix aug(f, a.rows(), a.cols() + b.cols());
  aug.set_block(0, 0, a);
  aug.set_block(0, a.cols(), b);
  const EchelonForm ef = row_echelon(aug);

  SolveResult result;
  std::size_t rank_a = 0;
  bool consistent = true;
  for (std::size_t pc : ef.pivots) {
    if (pc < a.cols()) {
      ++rank_a;
    } else {
      consistent = false;
    }
  }
  result.rank = rank_a;
  if (!consistent) return result;

  Matrix x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < ef.pivots.size(); ++i) {
    const std::size_t pc = ef.pivots[i];
    for (std::size_t j = 0; j < b.cols(); ++j) x.set(pc, j, ef.reduced.at(i, a.cols() + j));
  }
  result.solution = std::move(x);
  return result;
}

Matrix kernel_basis(const Matrix& a) {
  const Field f = a.field();
  const EchelonForm ef = row_echelon(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t pc : ef.pivots) is_pivot[pc] = true;

  std::vector<Vector> vectors;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(a.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < ef.pivots.size(); ++i) v[ef.pivots[i]] = f.neg(ef.reduced.at(i, free));
    vectors.push_back(std::move(v));
  }
  return Subspace::span(f, a.cols(), vectors).basis();
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (!a.is_square()) throw InputError("inverse of non-square matrix");
  SolveResult s = rref_solve(a, Matrix::identity(a.field(), a.rows()));
  if (s.rank != a.rows()) return std::nullopt;
  return s.solution;
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient) {}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vector>& vectors) {
  Subspace s(f, ambient);
  if (vectors.empty()) return s;
  const EchelonForm ef = row_echelon(Matrix::from_rows(f, vectors, ambient));
  for (std::size_t i = 0; i < ef.rank(); ++i) s.rows_.push_back(ef.reduced.row(i));
  s.pivots_ = ef.pivots;
  return s;
}

Subspace Subspace::whole(Field f, std::size_t ambient) {
  std::vector<Vector> units;
  for (std::size_t i = 0; i < ambient; ++i) {
    Vector v(ambient, 0);
    v[i] = 1;
    units.push_back(std::move(v));
  }
  return span(f, ambient, units);
}

Subspace Subspace::of_columns(const Matrix& m) {
  return span(m.field(), m.rows(), m.column_vectors());
}

Matrix Subspace::basis() const { return Matrix::from_columns(field_, rows_, ambient_); }

std::vector<std::size_t> Subspace::complement_positions() const {
  std::vector<std::size_t> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < ambient_; ++i) {
    if (k < pivots_.size() && pivots_[k] == i) {
      ++k;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

Vector Subspace::reduce(Vector v) const {
  if (v.size() != ambient_) throw InputError("subspace reduce: dimension mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int c = v[pivots_[i]];
    if (c == 0) continue;
    const Vector& row = rows_[i];
    for (std::size_t k = pivots_[i]; k < ambient_; ++k)
      if (row[k] != 0) v[k] = field_.sub(v[k], field_.mul(c, row[k]));
  }
  return v;
}

bool Subspace::contains(const Vector& v) const {
  const Vector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](int x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (other.ambient_ != ambient_) return false;
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [&](const Vector& v) { return contains(v); });
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (!contains(v)) return std::nullopt;
  Vector c(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Subspace Subspace::operator+(const Subspace& other) const {
  if (other.ambient_ != ambient_ || other.field_ != field_) throw InputError("subspace sum mismatch");
  std::vector<Vector> all = rows_;
  all.insert(all.end(), other.rows_.begin(), other.rows_.end());
  return span(field_, ambient_, all);
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (other.ambient_ != ambient_ || other.field_ != field_)
    throw InputError("subspace intersection mismatch");
  if (is_zero() || other.is_zero()) return Subspace(field_, ambient_);
  // Solve sum a_i A_i - sum b_j B_j = 0.
  const std::size_t da = dim();
  const std::size_t db = other.dim();
  Matrix m(field_, ambient_, da + db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t r = 0; r < ambient_; ++r) m.set(r, i, rows_[i][r]);
  for (std::size_t j = 0; j < db; ++j)
    for (std::size_t r = 0; r < ambient_; ++r) m.set(r, da + j, -other.rows_[j][r]);
  const Matrix ker = kernel_basis(m);
  std::vector<Vector> vectors;
  for (std::size_t k = 0; k < ker.cols(); ++k) {
    Vector v(ambient_, 0);
    for (std::size_t i = 0; i < da; ++i) {
      const int c = ker.at(i, k);
      if (c == 0) continue;
      for (std::size_t r = 0; r < ambient_; ++r) v[r] = field_.add(v[r], field_.mul(c, rows_[i][r]));
    }
    vectors.push_back(std::move(v));
  }
  return span(field_, ambient_, vectors);
}

bool operator==(const Subspace& a, const Subspace& b) {
  return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
}

std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
  if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
  if (auto c = a.rows_.size() <=> b.rows_.size(); c != 0) return c;
  return a.rows_ <=> b.rows_;
}

std::string Subspace::to_string() const {
  std::ostringstream out;
  out << "span{";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    out << (i ? ", " : "") << '(';
    for (std::size_t k = 0; k < ambient_; ++k) out << (k ? "," : "") << rows_[i][k];
    out << ')';
  }
  out << '}';
  return out.str();
}

// ------------------------------------------------------------ enumeration

std::optional<std::uint64_t> checked_power(std::uint64_t p, std::size_t n, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (v > limit / p) return std::nullopt;
    v *= p;
  }
  if (v > limit) return std::nullopt;
  return v;
}

void for_each_vector(Field f, std::size_t n, const std::function<bool(const Vector&)>& visit) {
  Vector v(n, 0);
  while (true) {
    if (!visit(v)) return;
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++v[i] < f.p()) break;
      v[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

void for_each_projective_point(Field f, std::size_t n,
                               const std::function<bool(const Vector&)>& visit) {
  for (std::size_t lead = 0; lead < n; ++lead) {
    const std::size_t tail = n - lead - 1;
    bool keep_going = true;
    for_each_vector(f, tail, [&](const Vector& t) {
      Vector v(n, 0);
      v[lead] = 1;
      std::copy(t.begin(), t.end(), v.begin() + static_cast<std::ptrdiff_t>(lead + 1));
      keep_going = visit(v);
      return keep_going;
    });
    if (!keep_going) return;
  }
}

void for_each_subspace(Field f, std::size_t n, std::size_t k,
                       const std::function<bool(const Subspace&)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> pivots(k);
  std::iota(pivots.begin(), pivots.end(), 0);
  while (true) {
    // Free positions: (row i, column c) with c > pivot_i and c not a pivot.
    std::vector<std::pair<std::size_t, std::size_t>> free;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t c = pivots[i] + 1; c < n; ++c)
        if (!std::binary_search(pivots.begin(), pivots.end(), c)) free.emplace_back(i, c);
    bool keep_going = true;
    for_each_vector(f, free.size(), [&](const Vector& values) {
      std::vector<Vector> rows(k, Vector(n, 0));
      for (std::size_t i = 0; i < k; ++i) rows[i][pivots[i]] = 1;
      for (std::size_t j = 0; j < free.size(); ++j) rows[free[j].first][free[j].second] = values[j];
      keep_going = visit(Subspace::span(f, n, rows));
      return keep_going;
    });
    if (!keep_going) return;
    // next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (pivots[i] < n - k + i) {
        ++pivots[i];
        for (std::size_t j = i + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
        break;
      }
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

// -------------------------------------------------------------------- Poly

Poly::Poly(Field f, std::vector<int> coefficients) : field_(f), coeffs_(std::move(coefficients)) {
  for (int& c : coeffs_) c = field_.reduce(c);
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly Poly::constant(Field f, int c) { return Poly(f, {c}); }
Poly Poly::linear(Field f, int root) { return Poly(f, {f.neg(f.reduce(root)), 1}); }
Poly Poly::monomial(Field f, std::size_t degree, int c) {
  std::vector<int> v(degree + 1, 0);
  v[degree] = c;
  return Poly(f, v);
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  const int inv = field_.inv(leading());
  std::vector<int> c = coeffs_;
  for (int& x : c) x = field_.mul(x, inv);
  return Poly(field_, c);
}

int Poly::evaluate(int x) const {
  int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field_.add(a.coefficient(i), b.coefficient(i));
  return Poly(a.field_, c);
}

Poly operator-(const Poly& a, const Poly& b) {
  std::vector<int> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.field_.sub(a.coefficient(i), b.coefficient(i));
  return Poly(a.field_, c);
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  std::vector<long long> acc(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      acc[i + j] += static_cast<long long>(a.coeffs_[i]) * b.coeffs_[j];
  std::vector<int> c(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) c[i] = a.field_.reduce(acc[i]);
  return Poly(a.field_, c);
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.coeffs_ <=> b.coeffs_;
}

std::string Poly::to_string(char var) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const int c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (i == 0) {
      out << c;
      continue;
    }
    if (c != 1) out << c << '*';
    out << var;
    if (i > 1) out << '^' << i;
  }
  return out.str();
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw PreconditionError("polynomial division by zero");
  const Field f = a.field();
  if (a.degree() < b.degree()) return {Poly(f), a};
  std::vector<int> rem = a.coefficients();
  std::vector<int> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  const int inv = f.inv(b.leading());
  const auto& bc = b.coefficients();
  for (int d = a.degree(); d >= b.degree(); --d) {
    const int c = rem[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    const int q = f.mul(c, inv);
    const std::size_t shift = static_cast<std::size_t>(d - b.degree());
    quo[shift] = q;
    for (std::size_t i = 0; i < bc.size(); ++i) rem[shift + i] = f.sub(rem[shift + i], f.mul(q, bc[i]));
  }
  return {Poly(f, quo), Poly(f, rem)};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
  const Field f = base.field();
  Poly result = divmod(Poly::constant(f, 1), mod).remainder;
  Poly b = divmod(base, mod).remainder;
  while (e > 0) {
    if (e & 1U) result = divmod(result * b, mod).remainder;
    b = divmod(b * b, mod).remainder;
    e >>= 1U;
  }
  return result;
}

Poly charpoly(const Matrix& a) {
  if (!a.is_square()) throw InputError("characteristic polynomial of non-square matrix");
  const Field f = a.field();
  const std::size_t n = a.rows();
  std::vector<Vector> h(n);
  for (std::size_t r = 0; r < n; ++r) h[r] = a.row(r);

  // Similarity reduction to upper Hessenberg form.
  for (std::size_t c = 0; c + 2 < n; ++c) {
    const std::size_t r = c + 1;
    std::size_t sel = r;
    while (sel < n && h[sel][c] == 0) ++sel;
    if (sel == n) continue;
    if (sel != r) {
      std::swap(h[sel], h[r]);
      for (std::size_t k = 0; k < n; ++k) std::swap(h[k][sel], h[k][r]);
    }
    const int inv = f.inv(h[r][c]);
    for (std::size_t j = r + 1; j < n; ++j) {
      const int u = f.mul(h[j][c], inv);
      if (u == 0) continue;
      for (std::size_t k = 0; k < n; ++k) h[j][k] = f.sub(h[j][k], f.mul(u, h[r][k]));
      for (std::size_t k = 0; k < n; ++k) h[k][r] = f.add(h[k][r], f.mul(u, h[k][j]));
    }
  }

  std::vector<Poly> p;
  p.reserve(n + 1);
  p.push_back(Poly::constant(f, 1));
  for (std::size_t m = 1; m <= n; ++m) {
    Poly next = Poly(f, {f.neg(h[m - 1][m - 1]), 1}) * p[m - 1];
    int prod = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      prod = f.mul(prod, h[i][i - 1]);
      if (prod == 0) break;
      const int coeff = f.mul(h[i - 1][m - 1], prod);
      if (coeff != 0) next = next - Poly::constant(f, coeff) * p[i - 1];
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

Matrix evaluate(const Poly& poly, const Matrix& a) {
  const std::size_t n = a.rows();
  Matrix acc(a.field(), n, n);
  const auto& c = poly.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * a + Matrix::scalar(a.field(), n, *it);
  return acc;
}

bool is_irreducible(const Poly& poly) {
  if (poly.degree() < 1) return false;
  if (poly.degree() == 1) return true;
  const Field f = poly.field();
  const Poly g = poly.monic();
  const Poly t = Poly::monomial(f, 1);
  Poly h = t;
  for (int i = 1; 2 * i <= g.degree(); ++i) {
    h = powmod(h, static_cast<std::uint64_t>(f.p()), g);
    if (gcd(g, h - t).degree() > 0) return false;
  }
  return true;
}

const std::vector<Poly>& monic_irreducibles(Field f, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<Poly>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(f.p(), degree);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (degree < 1) throw PreconditionError("irreducible table of degree < 1");
  if (!checked_power(static_cast<std::uint64_t>(f.p()), static_cast<std::size_t>(degree), 1U << 22))
    throw ResourceError("irreducible table too large: p=" + std::to_string(f.p()) +
                        " degree=" + std::to_string(degree));
  std::vector<Poly> out;
  for_each_vector(f, static_cast<std::size_t>(degree), [&](const Vector& low) {
    std::vector<int> c = low;
    c.push_back(1);
    Poly candidate(f, c);
    if (is_irreducible(candidate)) out.push_back(std::move(candidate));
    return true;
  });
  std::sort(out.begin(), out.end());
  return cache.emplace(key, std::move(out)).first->second;
}

std::vector<PolyFactor> factor(const Poly& poly) {
  if (poly.is_zero()) throw PreconditionError("factoring the zero polynomial");
  Poly rem = poly.monic();
  std::vector<PolyFactor> out;
  for (int d = 1; rem.degree() >= 1; ++d) {
    if (2 * d > rem.degree() || is_irreducible(rem)) {
      // Trial division by every degree below rem's half-degree left nothing,
      // so rem is irreducible; fold it into an existing entry if present.
      auto it = std::find_if(out.begin(), out.end(), [&](const PolyFactor& pf) { return pf.poly == rem; });
      if (it != out.end()) {
        ++it->multiplicity;
      } else {
        out.push_back({rem, 1});
      }
      break;
    }
    for (const Poly& g : monic_irreducibles(poly.field(), d)) {
      int mult = 0;
      while (rem.degree() >= g.degree()) {
        PolyDivision qr = divmod(rem, g);
        if (!qr.remainder.is_zero()) break;
        rem = std::move(qr.quotient);
        ++mult;
      }
      if (mult > 0) out.push_back({g, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) { return a.poly < b.poly; });
  return out;
}

std::vector<PolyFactor> factor_charpoly(const Matrix& a) {
  if (!a.is_square()) throw InputError("factor_charpoly: matrix is not square");
  if (a.rows() == 0) return {};
  return factor(charpoly(a));
}

std::uint64_t root_order(const Poly& poly) {
  const Poly g = poly.monic();
  if (!is_irreducible(g)) throw PreconditionError("root_order: polynomial is not irreducible");
  if (g.coefficient(0) == 0) throw PreconditionError("root_order: zero is not a unit");
  const Field f = g.field();
  auto n = checked_power(static_cast<std::uint64_t>(f.p()), static_cast<std::size_t>(g.degree()),
                         std::uint64_t{1} << 62);
  if (!n) throw ResourceError("root_order: field too large");
  const std::uint64_t group_order = *n - 1;
  const Poly t = Poly::monomial(f, 1);
  const Poly one = Poly::constant(f, 1);
  std::uint64_t order = group_order;
  std::uint64_t rest = group_order;
  for (std::uint64_t q = 2; q * q <= rest || rest > 1; ++q) {
    if (q * q > rest) q = rest;
    if (rest % q != 0) continue;
    while (rest % q == 0) rest /= q;
    while (order % q == 0 && powmod(t, order / q, g) == one) order /= q;
  }
  return order;
}

}  // namespace schunck
