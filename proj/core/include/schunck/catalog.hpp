#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "schunck/classes.hpp"
#include "schunck/report.hpp"
#include "schunck/structure.hpp"

namespace schunck {

enum class CatalogProvenance { Exhaustive, Curated };
std::string to_string(CatalogProvenance p);

struct CatalogEntry {
  std::string id;
  /// Groups carry the smallest prime dividing the order.
  Structure structure;
  std::string fingerprint;
  CatalogProvenance provenance = CatalogProvenance::Curated;
  bool primitive = false;
  /// Dimensions of the factors of chief series variant 0, bottom first.
  std::vector<std::size_t> chief_factor_dims;

  bool is_lie() const noexcept { return structure.is_lie(); }
  /// Lie: the entry itself. Group: one structure per prime dividing the order.
  std::vector<Structure> at_primes() const;
};

struct Catalog {
  std::vector<CatalogEntry> entries;

  const CatalogEntry* find(const std::string& id) const;
  std::size_t count(CatalogProvenance p) const;
  /// Entries of `other` not isomorphic to an existing entry are appended;
  /// InputError if such an entry reuses an id.
  void merge(const Catalog& other);
};

inline constexpr int kMaxCatalogDim = 4;
inline constexpr std::size_t kMaxCatalogGroupOrder = 24;

CatalogEntry make_entry(std::string id, Structure s, CatalogProvenance provenance);

/// All solvable Lie algebras over F_p of dimension 1..maxdim up to isomorphism:
/// exhaustive through dimension 3, a curated list in dimension 4. Entries are
/// ordered by dimension, then by the smallest structure-constant code in the
/// isomorphism class. p in {2, 3, 5}, 1 <= maxdim <= 4, else InputError.
Catalog generate_lie_catalog(int p, int maxdim);

/// Curated soluble groups of order at most max_order, in builtin order.
Catalog builtin_group_catalog(std::size_t max_order = kMaxCatalogGroupOrder);

/// One `.lie` / `.grp` file per entry plus index.txt.
void save_catalog(const Catalog& cat, const std::filesystem::path& dir);
/// Recomputes fingerprints and flags; InputError if the index disagrees.
Catalog load_catalog(const std::filesystem::path& dir);

/// Every primitive quotient lies in the class.
bool pdef_member(const ClassSpec& spec, const Structure& s);
/// Every chief factor is X-central (series 0, re-checked against series 1;
/// the first series decides if the two disagree, see formation_series_agree).
bool formation_member(const ClassSpec& spec, const Structure& s);
bool formation_series_agree(const ClassSpec& spec, const Structure& s);
/// Every complemented chief factor of series 0 is X-central.
bool complemented_factors_central(const ClassSpec& spec, const Structure& s);

enum class VerifyMode { Equivalence, Saturation, Corollary, Full };
VerifyMode parse_verify_mode(std::string_view name);
std::string to_string(VerifyMode mode);

struct VerificationReport {
  std::string spec_id;
  VerifyMode mode = VerifyMode::Full;
  std::vector<ClosureReport> closures;
  /// All closures PASS (theorem), or all but cf PASS (corollary).
  bool theorem_hypotheses = false;
  bool corollary_hypotheses = false;
  Verdict closure_verdict = Verdict::Skip;
  Verdict equivalence_verdict = Verdict::Skip;
  Verdict saturation_verdict = Verdict::Skip;
  std::size_t entries_checked = 0;
  std::size_t saturation_instances = 0;
  std::size_t exhaustive_entries = 0;
  std::size_t curated_entries = 0;
  /// Equivalence and saturation records in catalog order.
  std::vector<CheckRecord> records;

  Verdict overall() const;
  /// e.g. "closures PASS, equivalence PASS, saturation PASS"
  std::string summary_text() const;
  CheckRecord summary() const;
  /// Closure records, entry records, then the summary.
  std::vector<CheckRecord> all_records() const;
};

VerificationReport verify_formation(const ClassSpec& spec, const Catalog& cat, VerifyMode mode);

}  // namespace schunck
