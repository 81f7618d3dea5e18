#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "derq/fingerprint.hpp"
#include "derq/maxclass.hpp"
#include "derq/presentation.hpp"
#include "derq/series.hpp"

namespace derq {

struct CatalogFlags {
  bool metabelian = true;
  bool two_small = false;
  bool maximal_class = false;
  int nilpotency_class = 0;
  int second_derived_exp = 0;  // log_p |G''|

  friend bool operator==(const CatalogFlags&, const CatalogFlags&) = default;
};

struct CatalogEntry {
  PcPresentation presentation;
  Fingerprint fingerprint;
  CatalogFlags flags;
  SeriesReport report;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

CatalogEntry make_catalog_entry(const PcPresentation& pres);

nlohmann::json to_json(const CatalogEntry& e);
CatalogEntry catalog_entry_from_json(const nlohmann::json& j);
nlohmann::json catalog_to_json(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> catalog_from_json(const nlohmann::json& j);
/// Number of entries per flag combination, for quick diffing of catalogs.
nlohmann::json catalog_digest(const std::vector<CatalogEntry>& entries);

/// p + 4 + gcd(4, p-1) + gcd(5, p-1) + gcd(6, p-1); DomainError unless p >= 5
/// is prime.
int count_formula(long long p);

struct TheoremReport {
  int p = 0;
  int classes = 0;
  int metabelian = 0;
  int two_small = 0;
  std::optional<int> expected_two_small;  // formula for p >= 5, zero for p = 3
  std::vector<std::string> violations;
  std::vector<CatalogEntry> catalog;
  std::vector<LayerStats> layers;

  bool passed() const;
};

/// Checks a catalog of maximal-class groups of order p^6: the two-small
/// count against the formula (zero for p = 3), and for every two-small entry
/// |G''| = p, class 5, maximal class, [gamma_2, gamma_3] = gamma_5, ch2 at
/// d = 0 and ch1 at d = 1. Every entry must also be consistent, have lower
/// central exponents [6, 4, 3, 2, 1, 0] and be two-small iff non-metabelian.
TheoremReport verify_catalog(int p, std::vector<CatalogEntry> catalog);
/// Enumerates and then verifies.
TheoremReport verify_theorem_main(int p, const MaxclassOptions& options = {});

nlohmann::json to_json(const TheoremReport& r);

}  // namespace derq
