#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "schunck/lie_algebra.hpp"  // ChiefSeries, Primitivity

namespace schunck {

/// A finite solvable group given by its full multiplication table.
class FiniteGroup {
 public:
  using Table = std::vector<std::vector<int>>;

  /// Validates closure, identity, inverses, associativity and solvability.
  FiniteGroup(Table table, int identity);

  std::size_t order() const noexcept { return table_.size(); }
  int identity() const noexcept { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  int pow(int a, long long e) const;
  int order_of(int a) const;
  /// a^-1 b^-1 a b
  int commutator(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  int conjugate(int a, int by) const { return mul(mul(inv(by), a), by); }
  const Table& table() const noexcept { return table_; }
  /// A small generating set, chosen greedily in index order.
  const std::vector<int>& generators() const noexcept { return generators_; }

  std::string to_text() const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.identity_ == b.identity_ && a.table_ == b.table_;
  }

 private:
  void validate() const;

  Table table_;
  int identity_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
};

/// Parses the group format: `order <n>`, `identity <index>`, then n rows of n
/// indices.
FiniteGroup parse_group(std::string_view text);

/// Closed subset of a group, stored as sorted element indices.
struct Subgroup {
  std::vector<int> elements;

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(int g) const;
  bool contains(const Subgroup& other) const;
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  /// Canonical order: by size, then lexicographically.
  friend std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b);
  std::string to_string() const;
};
using SubgroupHandle = Subgroup;

struct GroupQuotient {
  FiniteGroup group;
  /// projection[g] is the image of g.
  std::vector<int> projection;
  /// section[q] is the minimal element of the coset q.
  std::vector<int> section;
  Subgroup kernel;
};

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole(const FiniteGroup& g);

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens);
Subgroup normal_closure(const FiniteGroup& g, const std::vector<int>& gens);
bool is_subgroup(const FiniteGroup& g, const Subgroup& s);
bool is_normal(const FiniteGroup& g, const Subgroup& s);
/// Product set AB of two subgroups with AB = BA.
Subgroup join(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
/// [A, B]
Subgroup commutator_subgroup(const FiniteGroup& g, const Subgroup& a, const Subgroup& b);

std::vector<Subgroup> derived_series(const FiniteGroup& g);
bool is_solvable(const FiniteGroup& g);
bool is_nilpotent(const FiniteGroup& g, const Subgroup& s);
bool is_nilpotent(const FiniteGroup& g);
Subgroup center(const FiniteGroup& g);

std::vector<Subgroup> minimal_ideals(const FiniteGroup& g);
/// All normal subgroups, canonically ordered.
std::vector<Subgroup> all_ideals(const FiniteGroup& g);
/// {x : [x, upper] in lower}
Subgroup centralizer(const FiniteGroup& g, const Subgroup& upper, const Subgroup& lower);
ChiefSeries<Subgroup> chief_series(const FiniteGroup& g, unsigned variant = 0);
Primitivity<Subgroup> is_primitive(const FiniteGroup& g);

GroupQuotient quotient(const FiniteGroup& g, const Subgroup& n);

std::vector<Subgroup> all_subgroups(const FiniteGroup& g);
std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g);
std::vector<Subgroup> complements(const FiniteGroup& g, const Subgroup& n);
Subgroup frattini(const FiniteGroup& g);
/// Fitting subgroup.
Subgroup nilradical(const FiniteGroup& g);
int nilpotent_length(const FiniteGroup& g);

struct GroupSubgroup {
  FiniteGroup group;
  /// inclusion[k] is the element of the parent for element k.
  std::vector<int> inclusion;
};
GroupSubgroup as_group(const FiniteGroup& g, const Subgroup& s);

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Group generated by permutations of {0..n-1}; elements numbered in BFS order
/// from the identity.
FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& gens);

/// Bijection a -> b as image vector.
std::optional<std::vector<int>> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b);
std::vector<std::vector<int>> all_isomorphisms(const FiniteGroup& a, const FiniteGroup& b,
                                               std::size_t limit = 200000);
bool are_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

std::string fingerprint(const FiniteGroup& g);

/// Hard ceiling on group orders accepted by exhaustive routines.
inline constexpr std::size_t kMaxGroupOrder = 48;

}  // namespace schunck
