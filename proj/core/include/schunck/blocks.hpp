#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "schunck/error.hpp"
#include "schunck/module.hpp"
#include "schunck/report.hpp"
#include "schunck/structure.hpp"

namespace schunck {

inline constexpr int kDefaultDepth = 3;
inline constexpr std::size_t kMaxUniverseSize = 96;
/// Tensor products larger than this are not chopped.
inline constexpr std::size_t kMaxTensorDim = 64;

/// A p-chief factor module of the fixed chief series (variant 0) or its dual.
struct Letter {
  Module module;
  std::string label;
};

struct Provenance {
  /// Letter indices; the member is a composition factor of their tensor
  /// product. Empty for the trivial module.
  std::vector<std::size_t> word;
  /// Member whose product with the last letter was chopped to find this one.
  std::optional<std::size_t> parent;
};

struct Universe {
  std::vector<Letter> letters;
  /// Member 0 is the trivial module.
  std::vector<Module> irreducibles;
  std::vector<Provenance> provenance;
  int depth = 0;
  /// Set when a product was skipped for exceeding kMaxTensorDim.
  bool truncated = false;

  std::optional<std::size_t> find(const Module& m) const;
  std::string word_string(std::size_t member) const;
};

class UniverseCapError : public ResourceError {
 public:
  UniverseCapError(const std::string& what, Universe partial)
      : ResourceError(what), partial_(std::move(partial)) {}
  const Universe& partial() const noexcept { return partial_; }

 private:
  Universe partial_;
};

/// p-chief factor modules of chief_series(variant), bottom first. For groups
/// only factors of p-power order are kept.
std::vector<Letter> p_chief_factor_modules(const Structure& s, unsigned variant = 0);

/// Trivial module, chief-factor modules and duals, then composition factors
/// of tensor words up to length `depth`, deduplicated up to isomorphism.
Universe generate_universe(const Structure& s, int depth = kDefaultDepth, std::size_t cap = kMaxUniverseSize);

struct LinkageGraph {
  /// ext[i][j] = dim Ext^1(V_i, V_j).
  std::vector<std::vector<std::size_t>> ext;
  /// i < j linked by a non-split extension in either direction.
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// Sorted member indices reachable from the trivial module.
  std::vector<std::size_t> principal_component;
  /// BFS tree from the trivial module; -1 for the root and unreached nodes.
  std::vector<long> bfs_parent;

  bool in_principal(std::size_t member) const;
  /// Shortest chain of members from the trivial module to `member`.
  std::vector<std::size_t> chain_to(std::size_t member) const;
};

LinkageGraph linkage_graph(const Universe& u);

/// Every p-chief factor of chief series variants 0..variants-1 lies in the
/// principal component.
CheckRecord check_chiefsB0(const Structure& s, int depth = kDefaultDepth, unsigned variants = 5);

struct TensorWitness {
  Module a_module;
  /// Universe index of the member isomorphic to a_module.
  std::size_t a_member = 0;
  /// v (x) a -> target, verified to be a surjective module map.
  Matrix surjection;
  Module target;
};

/// A in the principal component and a surjection v (x) A -> w, for
/// ext1(v, w) != 0. PreconditionError if ext1 vanishes, BoundedSearchError if
/// no principal member embeds in Hom(v, w).
TensorWitness tens_witness(const Universe& u, const LinkageGraph& g, const Module& v, const Module& w);

struct ChiefsWitness {
  std::size_t member = 0;
  std::vector<std::size_t> word;
  std::vector<std::string> letters;
  /// Members from the first letter's factor to `member` along parents.
  std::vector<std::size_t> chop_chain;
};

/// Provenance of a principal member. PreconditionError if v is not in the
/// principal component, BoundedSearchError if it is not in the universe.
ChiefsWitness chiefs_witness(const Universe& u, const LinkageGraph& g, const Module& v);

/// Duals of principal members are principal.
CheckRecord check_dual_closure(const Structure& s, int depth = kDefaultDepth);
/// Minimal ideals / normal subgroups act trivially on principal members.
CheckRecord check_b0ker(const Structure& s, int depth = kDefaultDepth);
/// Linkage edges of every proper quotient lift to non-split extensions.
CheckRecord check_qgpblock(const Structure& s, int depth = kDefaultDepth);
/// For each minimal normal A: irreducibles fixed by A and moved by A have
/// no non-split extensions in either direction. Irreducibles are the
/// composition factors of the regular module.
CheckRecord check_diffk(const Structure& s);
/// Unique minimal normal p-subgroup A, G non-split over A: for every
/// minimal normal B/A, B/A is a p-group and the module relations hold.
CheckRecord check_gp_sole(const GroupPtr& g);

enum class GroupLemma { GpSole, QgpBlock, Dual, DiffK, B0Ker };
GroupLemma parse_group_lemma(const std::string& name);
std::string to_string(GroupLemma which);
CheckRecord check_group_lemma(const Structure& s, GroupLemma which, int depth = kDefaultDepth);

}  // namespace schunck
