#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "schunck/finfield.hpp"
#include "schunck/module.hpp"

namespace schunck {

// A cochain is a Vector of length n * dim(m), block i holding f(x_i), where
// x_i runs over the basis of the algebra or the elements of the group.

/// Upper bound on n * dim(m) for h1.
inline constexpr std::size_t kMaxCocycleUnknowns = 4096;

struct CocycleSpace {
  std::vector<Vector> z1_basis;
  std::vector<Vector> b1_basis;
  std::size_t h1_dim = 0;
};

struct ExtResult {
  std::size_t dim = 0;
  /// Cocycles of Hom(v, w) whose classes form a basis of H^1.
  std::vector<Vector> representative_cocycles;
};

/// Which order the unknowns are eliminated in. Both give the same spaces;
/// the alternative exists so the rank computation can be cross-checked.
enum class UnknownOrder { Natural, Reversed };

/// Invariants: joint kernel of the Lie actions, joint fixed space for groups.
Subspace h0(const Module& m);

CocycleSpace h1(const Module& m, UnknownOrder order = UnknownOrder::Natural);

bool is_cocycle(const Module& m, const Vector& c);
bool is_coboundary(const Module& m, const Vector& c);
/// x -> x.v (Lie) or g -> g.v - v (group).
Vector coboundary(const Module& m, const Vector& v);

ExtResult ext1(const Module& v, const Module& w);

/// Module of dim(w) + dim(v) with w on the first coordinates as a submodule
/// and v as the quotient; c must be a cocycle with values in Hom(v, w).
Module extension_from_cocycle(const Module& v, const Module& w, const Vector& c);

/// A submodule complementary to s, by exhaustive search over candidate
/// subspaces. Throws ResourceError when the search space is too large.
std::optional<Subspace> find_module_complement(const Module& m, const Subspace& s);

}  // namespace schunck
