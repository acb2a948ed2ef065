#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "schunck/module.hpp"
#include "schunck/report.hpp"
#include "schunck/structure.hpp"

namespace schunck {

/// Allowed eigenvalues. Subfield form: roots in F_{q^d} for some listed d
/// (q the prime of the module). Explicit form: polynomials given by their
/// coefficients, lowest degree first, reduced mod q when evaluated. For Lie
/// algebras an eigenvalue must be a root of a listed polynomial; for groups
/// the listed roots generate a subgroup mu_n of the multiplicative group and
/// an eigenvalue must lie in it.
struct LambdaSpec {
  std::set<int> subfield_degrees;
  std::vector<std::vector<int>> polynomials;

  bool is_subfield_form() const noexcept { return polynomials.empty(); }
  static LambdaSpec subfields(std::set<int> degrees);
  /// Linear polynomials t - r for each residue r.
  static LambdaSpec residues(const std::vector<int>& rs);
};

class ClassSpec {
 public:
  enum class Kind { Supersoluble, SocDimLe, Eigenvalue, EigenvalueSet, AllPrimitives, AllOf, AnyOf, Not };

  static ClassSpec supersoluble();
  static ClassSpec soc_dim_le(std::size_t k);
  /// All elements below the enumeration cap, else basis elements and
  /// pairwise sums. Isomorphism invariant.
  static ClassSpec eigenvalue(LambdaSpec lambda);
  /// Basis elements only; not isomorphism invariant (used as a negative
  /// control).
  static ClassSpec eigenvalue_set(LambdaSpec lambda);
  static ClassSpec all_primitives();
  static ClassSpec all_of(std::vector<ClassSpec> parts);
  static ClassSpec any_of(std::vector<ClassSpec> parts);
  static ClassSpec negate(ClassSpec part);

  Kind kind() const noexcept { return kind_; }
  std::size_t soc_bound() const noexcept { return soc_bound_; }
  const LambdaSpec& lambda() const noexcept { return lambda_; }
  const std::vector<ClassSpec>& parts() const noexcept { return parts_; }

  const std::string& name() const noexcept { return name_; }
  ClassSpec& named(std::string n) {
    name_ = std::move(n);
    return *this;
  }
  /// Canonical one-line description.
  std::string describe() const;

 private:
  Kind kind_ = Kind::AllPrimitives;
  std::size_t soc_bound_ = 0;
  LambdaSpec lambda_;
  std::vector<ClassSpec> parts_;
  std::string name_;
};

/// Parses the `.cls` format. InputError on malformed text.
ClassSpec parse_class_spec(std::string_view text);

/// Elements whose eigenvalues are examined: everything when p^dim is at
/// most this, else basis elements plus pairwise sums.
inline constexpr std::uint64_t kEigenElementCap = 1024;

/// PreconditionError if the input is not primitive.
bool member(const ClassSpec& spec, const LieAlgebra& p);
bool member(const ClassSpec& spec, const FiniteGroup& p);
bool member(const ClassSpec& spec, const Structure& p);

/// The split extension of the chief factor upper/lower by L/C_L(upper/lower).
LieAlgebra chief_factor_extension(const LiePtr& l, const Subspace& upper, const Subspace& lower);
FiniteGroup chief_factor_extension(const GroupPtr& g, const Subgroup& upper, const Subgroup& lower);

/// Split extension of m by owner/ker(m); asserted primitive.
LieAlgebra faithful_split_extension(const Module& m);
FiniteGroup faithful_group_split_extension(const Module& m);

bool is_x_central(const ClassSpec& spec, const LiePtr& l, const Subspace& upper, const Subspace& lower);
bool is_x_central(const ClassSpec& spec, const GroupPtr& g, const Subgroup& upper, const Subgroup& lower);

struct LieSubdirect {
  LieAlgebra ambient;  // q1 (+) q2, q1's basis first
  std::vector<Subspace> sums;
};
struct GroupSubdirect {
  FiniteGroup ambient;  // q1 x q2, element x * |q2| + y
  std::vector<Subgroup> sums;
};
/// Subalgebras / subgroups of the direct sum projecting onto both factors,
/// via Goursat: ideals N1, N2 and isomorphisms q1/N1 -> q2/N2.
LieSubdirect subdirect_sums(const LieAlgebra& q1, const LieAlgebra& q2, std::size_t cap = 8);
GroupSubdirect subdirect_sums(const FiniteGroup& q1, const FiniteGroup& q2, std::size_t cap = 256);

enum class ClosureKind { Pq, Cf, Dual, Subtensor, Paired };
ClosureKind parse_closure_kind(std::string_view name);
std::string to_string(ClosureKind kind);

struct ClosureReport {
  ClosureKind kind = ClosureKind::Paired;
  Verdict verdict = Verdict::Pass;
  std::size_t witnesses_used = 0;
  std::size_t instances_checked = 0;
  std::vector<std::string> notes;
  /// Present iff verdict is Fail.
  std::optional<nlohmann::json> counterexample;

  CheckRecord to_record(const std::string& spec_id) const;
};

/// Witnesses must be primitive; non-members are skipped with a note.
ClosureReport check_closure(const ClassSpec& spec, ClosureKind kind, const std::vector<Structure>& witnesses);

}  // namespace schunck
