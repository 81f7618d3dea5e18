#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "derq/pc_group.hpp"
#include "derq/weighted_basis.hpp"

namespace derq {

/// Isomorphism invariants of a finite p-group. Equal groups give equal
/// fingerprints; the converse is what the isomorphism search decides.
struct Fingerprint {
  int p = 0;
  int order_exp = 0;
  std::vector<int> abelian_invariants;  // G/G' as cyclic factors of order p^k, descending
  std::vector<int> derived_exps;
  std::vector<int> lcs_exps;
  std::vector<int> pseries_exps;        // lower exponent-p central series
  std::map<int, std::uint64_t> order_histogram;  // k -> number of elements of order p^k
  int center_exp = 0;
  int omega_center_exp = 0;             // elements of order dividing p in Z(G)
  /// Element-order histograms of the cosets of the Frattini subgroup other
  /// than Phi itself, sorted.
  std::vector<std::vector<std::uint64_t>> coset_profile;

  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Groups larger than this skip the element-order histogram and center scan.
inline constexpr std::uint64_t kFingerprintElementLimit = 1'000'000;

/// Element-order histogram (entry k counts elements of order p^k) of every
/// coset of P_2 = Phi(G), indexed by layer-1 coordinates read as a base-p
/// number. Empty when the group exceeds kFingerprintElementLimit.
std::vector<std::vector<std::uint64_t>> coset_order_histograms(const PcGroup& g, const WeightedBasis& basis);

Fingerprint compute_fingerprint(const PcGroup& g);
Fingerprint compute_fingerprint(const PcGroup& g, const WeightedBasis& basis,
                                const std::vector<std::vector<std::uint64_t>>& coset_orders);
nlohmann::json to_json(const Fingerprint& f);
Fingerprint fingerprint_from_json(const nlohmann::json& j);

}  // namespace derq
