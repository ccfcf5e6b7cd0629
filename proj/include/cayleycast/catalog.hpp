#pragma once

// Persistent catalog of best-known (delta, t)-broadcast networks. Each line of
// the file is one JSON object with the fields delta, time, order, group,
// generators, scheme, rounds, note and checksum. Records carry only text, so
// they replay without reference to the code that found them.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cayleycast/families.hpp"

namespace cayleycast {

struct CatalogRecord {
  unsigned delta = 0;
  unsigned time = 0;
  std::uint64_t order = 0;
  std::string group;
  std::string generators;
  std::string scheme;
  unsigned rounds = 0;
  std::string note;
  std::string checksum;

  friend bool operator==(const CatalogRecord&, const CatalogRecord&) = default;
};

/// 16 hex digits of FNV-1a over the other fields.
std::string record_checksum(const CatalogRecord& rec);

/// Returns a copy with the checksum filled in.
CatalogRecord seal(CatalogRecord rec);

CatalogRecord to_record(const FamilyWitness& w, unsigned achieved_rounds, std::string note);
/// Parses the record's text fields; throws on malformed text.
FamilyWitness to_witness(const CatalogRecord& rec);

std::string to_json_line(const CatalogRecord& rec);
/// Throws ParseError on malformed JSON or missing fields.
CatalogRecord from_json_line(std::string_view line);

struct RecordReport {
  bool passed = false;
  bool optimal = false;  ///< order equals M(delta, t)
  unsigned achieved_rounds = 0;
  std::vector<std::string> reasons;
};

/// Replays a record end to end: checksum, group and generator parsing,
/// inverse-closure and generation, order, degree <= delta, the scheme from the
/// identity completing within t (and matching the stated rounds), and
/// order <= M(delta, t).
RecordReport verify_record(const CatalogRecord& rec, std::uint64_t limit = kDefaultOrderLimit);

/// In-memory catalog, at most one record per (delta, t).
class Catalog {
 public:
  using Key = std::pair<unsigned, unsigned>;

  static Catalog load(const std::filesystem::path& path);
  /// Atomic: writes a sibling temp file then renames it over `path`.
  void save(const std::filesystem::path& path) const;

  const std::map<Key, CatalogRecord>& records() const noexcept { return records_; }
  const CatalogRecord* find(unsigned delta, unsigned time) const;

  enum class Outcome { inserted, replaced, kept_existing, rejected };
  struct UpdateResult {
    Outcome outcome = Outcome::rejected;
    std::string reason;
  };

  /// Inserts when the record verifies and beats the current order at its
  /// (delta, t); ties keep the existing record.
  UpdateResult offer(const CatalogRecord& rec, std::uint64_t limit = kDefaultOrderLimit);

 private:
  std::map<Key, CatalogRecord> records_;
};

/// Load, offer, and (if changed) rewrite the file under an exclusive lock.
Catalog::UpdateResult catalog_update(const std::filesystem::path& path, const CatalogRecord& rec,
                                     std::uint64_t limit = kDefaultOrderLimit);

struct CatalogReport {
  std::vector<std::pair<CatalogRecord, RecordReport>> entries;
  bool all_passed() const noexcept;
};

/// Replays every record of the file. Throws ParseError when malformed.
CatalogReport catalog_verify(const std::filesystem::path& path,
                             std::uint64_t limit = kDefaultOrderLimit);

struct SeedOptions {
  unsigned hypercube_max = 8;
  unsigned dihedral_min = 2;
  unsigned dihedral_max = 8;
  unsigned cycle_max_time = 10;
  /// Products with K2 are applied until no new cell within these ranges improves.
  unsigned max_delta = 10;
  unsigned max_time = 10;
};

/// Hypercube, dihedral and cycle witnesses, closed under the K2 product.
Catalog seed_catalog(const SeedOptions& options = {});

enum class CatalogFormat { pretty, tsv, json_lines };

/// pretty: delta-by-t grid of orders with below-diagonal cells omitted and
/// optimal cells in **bold**; tsv: one record per row; json_lines: the file format.
std::string render_catalog(const Catalog& catalog, CatalogFormat format);

}  // namespace cayleycast
