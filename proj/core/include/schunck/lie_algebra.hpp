#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schunck/finfield.hpp"

namespace schunck {

/// A finite-dimensional solvable Lie algebra over F_p, given by structure
/// constants on a fixed basis. Validated on construction (antisymmetry is
/// implied by storage; Jacobi and solvability are checked).
class LieAlgebra {
 public:
  using BracketTable = std::map<std::pair<std::size_t, std::size_t>, Vector>;

  /// `brackets` maps (i, j) with i < j to the coordinates of [e_i, e_j].
  /// Unlisted pairs bracket to zero.
  LieAlgebra(Field f, std::vector<std::string> names, const BracketTable& brackets);

  static LieAlgebra abelian(Field f, std::size_t dim);

  Field field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& basis_names() const noexcept { return names_; }

  const Vector& bracket(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of ad(x); column j holds [x, e_j].
  Matrix ad(const Vector& x) const;
  Vector unit(std::size_t i) const;
  BracketTable bracket_table() const;

  /// Serialized in the `.lie` text format.
  std::string to_text() const;

  /// Structural equality (same field, dimension and structure constants).
  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.table_ == b.table_;
  }

 private:
  void validate() const;

  Field field_;
  std::size_t dim_;
  std::vector<std::string> names_;
  std::vector<Vector> table_;  // dim*dim entries, full antisymmetric table
};

/// Parses the `.lie` format:
///   field p=<prime>
///   dim <n>
///   basis <names...>
///   bracket <ei> <ej> = <linear combination>
LieAlgebra parse_lie_algebra(std::string_view text);

template <class Ideal>
struct ChiefSeries {
  /// Ascending: terms.front() is zero/trivial, terms.back() is everything.
  std::vector<Ideal> terms;
  std::size_t length() const noexcept { return terms.empty() ? 0 : terms.size() - 1; }
};

template <class Ideal>
struct Primitivity {
  bool primitive = false;
  std::optional<Ideal> socle;
};

struct LieQuotient {
  LieAlgebra algebra;
  /// dim(q) x dim(L); sends a vector of L to its image.
  Matrix projection;
  /// dim(L) x dim(q); column k is the chosen preimage of the k-th quotient basis vector.
  Matrix section;
  Subspace kernel;
};

Subspace zero_ideal(const LieAlgebra& l);
Subspace whole(const LieAlgebra& l);

bool is_subalgebra(const LieAlgebra& l, const Subspace& s);
bool is_ideal(const LieAlgebra& l, const Subspace& s);
/// [A, B]
Subspace bracket_span(const LieAlgebra& l, const Subspace& a, const Subspace& b);
Subspace ideal_closure(const LieAlgebra& l, const Subspace& s);
Subspace subalgebra_closure(const LieAlgebra& l, const Subspace& s);

std::vector<Subspace> derived_series(const LieAlgebra& l);
bool is_solvable(const LieAlgebra& l);
/// Nilpotency of the ideal/subalgebra s as a Lie algebra in its own right.
bool is_nilpotent(const LieAlgebra& l, const Subspace& s);
bool is_nilpotent(const LieAlgebra& l);
Subspace center(const LieAlgebra& l);

/// Minimal nonzero ideals, canonically ordered.
std::vector<Subspace> minimal_ideals(const LieAlgebra& l);
/// Every ideal (including 0 and L), canonically ordered.
std::vector<Subspace> all_ideals(const LieAlgebra& l);
/// {x : [x, upper] in lower}
Subspace centralizer(const LieAlgebra& l, const Subspace& upper, const Subspace& lower);

/// One chief series. variant 0 always refines by the first minimal ideal in
/// canonical order; other variants rotate the choice at each step.
ChiefSeries<Subspace> chief_series(const LieAlgebra& l, unsigned variant = 0);
Primitivity<Subspace> is_primitive(const LieAlgebra& l);

LieQuotient quotient(const LieAlgebra& l, const Subspace& ideal);

/// All subalgebras U with U + K = L and U meet K = 0, by exhaustive search.
std::vector<Subspace> complements(const LieAlgebra& l, const Subspace& k);
std::vector<Subspace> all_subalgebras(const LieAlgebra& l);
std::vector<Subspace> maximal_subalgebras(const LieAlgebra& l);
Subspace frattini(const LieAlgebra& l);
/// Largest nilpotent ideal.
Subspace nilradical(const LieAlgebra& l);
/// Number of factors in the ascending Fitting series.
int nilpotent_length(const LieAlgebra& l);

/// Structure constants relative to the basis given by the columns of g.
LieAlgebra change_basis(const LieAlgebra& l, const Matrix& g);
LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b);

struct LieSubalgebra {
  LieAlgebra algebra;
  /// dim(L) x dim(S); column k is the k-th basis vector of S in L.
  Matrix inclusion;
};
LieSubalgebra as_algebra(const LieAlgebra& l, const Subspace& s);

/// An isomorphism a -> b as a matrix whose column i is the image of e_i.
std::optional<Matrix> find_isomorphism(const LieAlgebra& a, const LieAlgebra& b);
/// All isomorphisms a -> b; throws ResourceError past `limit`.
std::vector<Matrix> all_isomorphisms(const LieAlgebra& a, const LieAlgebra& b,
                                     std::size_t limit = 200000);
bool are_isomorphic(const LieAlgebra& a, const LieAlgebra& b);

/// Basis-independent invariants, hashed to a hex string.
std::string fingerprint(const LieAlgebra& l);

/// Hard ceiling for exhaustive Lie enumerations.
inline constexpr std::size_t kMaxLieDim = 6;

}  // namespace schunck
