#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "schunck/finfield.hpp"
#include "schunck/finite_group.hpp"
#include "schunck/lie_algebra.hpp"

namespace schunck {

using LiePtr = std::shared_ptr<const LieAlgebra>;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline LiePtr share(LieAlgebra l) { return std::make_shared<const LieAlgebra>(std::move(l)); }
inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// A finite-dimensional F_p representation. Lie modules store one matrix per
/// basis element; group modules one matrix per group element.
class Module {
 public:
  /// Validates action([e_i, e_j]) = [action(e_i), action(e_j)]. `dim` is
  /// needed only when the owner is the zero algebra.
  static Module lie(LiePtr owner, std::vector<Matrix> basis_actions, std::size_t dim = 0);
  /// Validates action(gh) = action(g) action(h) and action(1) = I.
  static Module group(Field f, GroupPtr owner, std::vector<Matrix> element_actions);
  static Module trivial(LiePtr owner, std::size_t dim = 1);
  static Module trivial(Field f, GroupPtr owner, std::size_t dim = 1);

  bool is_lie() const noexcept { return lie_ != nullptr; }
  Field field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  const LiePtr& lie_owner() const noexcept { return lie_; }
  const GroupPtr& group_owner() const noexcept { return group_; }
  bool same_owner(const Module& other) const;

  /// Lie: per basis element. Group: per element.
  const std::vector<Matrix>& actions() const noexcept { return actions_; }
  const Matrix& action(std::size_t i) const { return actions_[i]; }
  /// Lie only: action of an arbitrary algebra element.
  Matrix act(const Vector& x) const;
  /// Matrices whose invariant subspaces are exactly the submodules.
  std::vector<Matrix> generator_actions() const;
  bool is_trivial() const;

  /// Iso-invariant summary used to prune isomorphism tests.
  const std::string& fingerprint() const;

 private:
  Module(Field f, std::size_t dim, LiePtr lie, GroupPtr group, std::vector<Matrix> actions);

  Field field_;
  std::size_t dim_ = 0;
  LiePtr lie_;
  GroupPtr group_;
  std::vector<Matrix> actions_;
  std::string fingerprint_;
};

Module dual(const Module& m);
Module tensor(const Module& m, const Module& n);
/// Hom(m, n) realised as dual(m) (x) n. The vector of F (an n x m matrix) has
/// F[j][i] at index i * dim(n) + j.
Module hom_module(const Module& m, const Module& n);
Vector hom_to_vector(const Matrix& f);
Matrix vector_to_hom(const Vector& v, std::size_t dim_m, std::size_t dim_n, Field field);

/// Permutation module on the left cosets of h, ordered by minimal element.
Module permutation_module(Field f, const GroupPtr& g, const Subgroup& h);
Module regular_module(Field f, const GroupPtr& g);

/// Smallest submodule containing the given vectors.
Subspace spin(const Module& m, const std::vector<Vector>& seeds);
bool is_submodule(const Module& m, const Subspace& s);
/// Action on s in the coordinates of s.rows().
Module submodule(const Module& m, const Subspace& s);
/// Action on m / s in the coordinates of s.complement_positions().
Module quotient_module(const Module& m, const Subspace& s);

/// A proper nonzero submodule, or nullopt if m is irreducible. Exhaustive
/// below the spin cap, otherwise a Norton-style test driven by `seed`.
std::optional<Subspace> find_proper_submodule(const Module& m, std::uint64_t seed = 0);
bool is_irreducible(const Module& m, std::uint64_t seed = 0);

struct CompositionFactor {
  Module module;
  int multiplicity = 0;
};
/// Irreducible factors up to isomorphism, sorted by (dim, fingerprint).
std::vector<CompositionFactor> composition_factors(const Module& m, std::uint64_t seed = 0);

/// Basis of {T : T m(x) = n(x) T}.
std::vector<Matrix> intertwiners(const Module& m, const Module& n);
/// Irreducible inputs: nonzero intertwiner. Otherwise composition multisets.
bool is_isomorphic(const Module& m, const Module& n);

Module restrict(const Module& m, const Subspace& subalgebra);
Module restrict(const Module& m, const Subgroup& subgroup);

/// span{f(x) : f in a, x in v} for an invariant subspace a of Hom(v, w).
Subspace evaluation_image(const Module& v, const Module& w, const Subspace& a);
/// Matrix of v (x) a -> w, v (x) f |-> f(v), in the tensor basis of
/// tensor(v, submodule(hom_module(v, w), a)).
Matrix evaluation_map(const Module& v, const Module& w, const Subspace& a);
/// Whether t: m -> n commutes with the actions.
bool is_module_hom(const Module& m, const Module& n, const Matrix& t);

/// Chief factor upper/lower as a module over the whole algebra.
Module chief_factor_module(const LiePtr& l, const Subspace& upper, const Subspace& lower);
/// Linear coordinates on an elementary abelian section upper/lower of a
/// group: the prime is read off the section, the basis is the list of
/// adjoined coset representatives.
class SectionCoordinates {
 public:
  SectionCoordinates(const FiniteGroup& g, const Subgroup& upper, const Subgroup& lower);
  Field field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  /// Representatives in upper of the basis vectors.
  const std::vector<int>& basis() const noexcept { return basis_; }
  /// Coordinates of the coset of x, for x in upper.
  const Vector& operator()(int x) const;

 private:
  Field field_;
  std::vector<int> basis_;
  std::map<int, int> label_;
  std::map<int, Vector> coords_;
};

/// Group chief factor; upper/lower must be an elementary abelian section.
Module chief_factor_module(const GroupPtr& g, const Subgroup& upper, const Subgroup& lower);

/// Module over the quotient by an ideal acting trivially.
Module descend(const Module& m, const LieQuotient& q, const LiePtr& quotient_owner);
Module descend(const Module& m, const GroupQuotient& q, const GroupPtr& quotient_owner);
/// Module over the parent obtained through the projection.
Module pullback(const Module& m, const LieQuotient& q, const LiePtr& parent);
Module pullback(const Module& m, const GroupQuotient& q, const GroupPtr& parent);

struct LieSplitExtension {
  LieAlgebra algebra;
  /// The module as an abelian ideal (last dim(m) basis vectors).
  Subspace module_ideal;
};
struct GroupSplitExtension {
  FiniteGroup group;
  Subgroup module_subgroup;
  /// Element (v, q) has index q * p^dim + code(v), code in base p, first
  /// coordinate most significant.
};
/// Lie: basis of q followed by the module basis.
LieSplitExtension split_extension(const LiePtr& q, const Module& m);
GroupSplitExtension split_extension(const GroupPtr& q, const Module& m);

}  // namespace schunck
