#pragma once

// Exact linear algebra and polynomial arithmetic over prime fields F_p.
//
// Everything downstream (ideals, modules, cocycles) reduces to the routines
// here. Entries are stored as residues in [0, p); all results are exact.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace schunck {

using Vector = std::vector<int>;

bool is_prime(long long n);

/// The prime field F_p.
class Field {
 public:
  explicit Field(int p);

  int p() const noexcept { return p_; }

  int reduce(long long a) const noexcept {
    long long r = a % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }
  int add(int a, int b) const noexcept {
    int s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  int sub(int a, int b) const noexcept {
    int s = a - b;
    return s < 0 ? s + p_ : s;
  }
  int neg(int a) const noexcept { return a == 0 ? 0 : p_ - a; }
  int mul(int a, int b) const noexcept {
    return static_cast<int>(static_cast<long long>(a) * b % p_);
  }
  int inv(int a) const;
  int pow(int a, std::uint64_t e) const noexcept;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  int p_;
};

/// Dense row-major matrix over F_p.
class Matrix {
 public:
  Matrix() : field_(2) {}
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(Field f, std::size_t n);
  static Matrix from_rows(Field f, const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(Field f, const std::vector<Vector>& cols, std::size_t rows);
  static Matrix scalar(Field f, std::size_t n, int value);

  Field field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  int at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long long value) {
    data_[r * cols_ + c] = field_.reduce(value);
  }
  const std::vector<int>& data() const noexcept { return data_; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  std::vector<Vector> column_vectors() const;

  Matrix transpose() const;
  Matrix scaled(int s) const;
  Vector apply(const Vector& v) const;
  bool is_zero() const;
  bool is_identity() const;
  int trace() const;

  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& m);

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend std::strong_ordering operator<=>(const Matrix& a, const Matrix& b);

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<int> data_;
};

Matrix kron(const Matrix& a, const Matrix& b);
/// [a, b] = ab - ba
Matrix commutator(const Matrix& a, const Matrix& b);

struct EchelonForm {
  Matrix reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Reduced row echelon form. Canonical: equal row spaces give equal output.
EchelonForm row_echelon(Matrix a);
std::size_t rank(const Matrix& a);

struct SolveResult {
  std::optional<Matrix> solution;
  std::size_t rank = 0;
};

/// Particular solution x of a x = b (b may have several columns), plus rank(a).
SolveResult rref_solve(const Matrix& a, const Matrix& b);

/// Right null space of a. Columns are a basis whose transpose is in reduced
/// row echelon form, so the output is canonical.
Matrix kernel_basis(const Matrix& a);

std::optional<Matrix> inverse(const Matrix& a);

/// A subspace of F_p^n, stored by its reduced row echelon basis.
class Subspace {
 public:
  Subspace() : field_(2) {}
  Subspace(Field f, std::size_t ambient);

  static Subspace span(Field f, std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace whole(Field f, std::size_t ambient);
  static Subspace of_columns(const Matrix& m);

  Field field() const noexcept { return field_; }
  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return rows_.size(); }
  bool is_zero() const noexcept { return rows_.empty(); }
  bool is_whole() const noexcept { return rows_.size() == ambient_; }

  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  /// Basis vectors as columns.
  Matrix basis() const;
  /// Positions that are not pivots; the unit vectors there span a complement.
  std::vector<std::size_t> complement_positions() const;

  /// Canonical representative of v + S (pivot coordinates cleared).
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coefficients of v in the row basis, if v lies in the subspace.
  std::optional<Vector> coordinates(const Vector& v) const;

  Subspace operator+(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;

  friend bool operator==(const Subspace& a, const Subspace& b);
  /// Canonical order: by dimension, then lexicographically by echelon rows.
  friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b);

  std::string to_string() const;

 private:
  Field field_;
  std::size_t ambient_ = 0;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// p^n, or nullopt if it exceeds limit.
std::optional<std::uint64_t> checked_power(std::uint64_t p, std::size_t n, std::uint64_t limit);

/// Visits every vector of F_p^n (in base-p counting order).
void for_each_vector(Field f, std::size_t n, const std::function<bool(const Vector&)>& visit);
/// Visits one representative (first nonzero entry 1) of each line of F_p^n.
void for_each_projective_point(Field f, std::size_t n,
                               const std::function<bool(const Vector&)>& visit);
/// Visits every k-dimensional subspace of F_p^n.
void for_each_subspace(Field f, std::size_t n, std::size_t k,
                       const std::function<bool(const Subspace&)>& visit);

/// Polynomial over F_p, coefficients lowest degree first.
class Poly {
 public:
  explicit Poly(Field f) : field_(f) {}
  Poly(Field f, std::vector<int> coefficients);

  static Poly constant(Field f, int c);
  /// t - root
  static Poly linear(Field f, int root);
  static Poly monomial(Field f, std::size_t degree, int c = 1);

  Field field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
  int leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  int coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  const std::vector<int>& coefficients() const noexcept { return coeffs_; }

  Poly monic() const;
  int evaluate(int x) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) = default;
  /// Canonical order: degree, then coefficients lexicographically from the
  /// leading term down.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

  std::string to_string(char var = 't') const;

 private:
  void trim();
  Field field_;
  std::vector<int> coeffs_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};
PolyDivision divmod(const Poly& a, const Poly& b);
Poly gcd(Poly a, Poly b);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);

/// Characteristic polynomial det(tI - a), via Hessenberg reduction.
Poly charpoly(const Matrix& a);
Matrix evaluate(const Poly& f, const Matrix& a);

bool is_irreducible(const Poly& f);
/// All monic irreducible polynomials of the given degree, canonically sorted.
const std::vector<Poly>& monic_irreducibles(Field f, int degree);

struct PolyFactor {
  Poly poly;
  int multiplicity = 0;
  friend bool operator==(const PolyFactor&, const PolyFactor&) = default;
};

/// Factorization of a nonzero polynomial into monic irreducibles by trial
/// division against the enumerated irreducible tables; canonically sorted.
std::vector<PolyFactor> factor(const Poly& f);
std::vector<PolyFactor> factor_charpoly(const Matrix& a);

/// Multiplicative order of a root of the irreducible polynomial f (f != t).
std::uint64_t root_order(const Poly& f);

}  // namespace schunck
