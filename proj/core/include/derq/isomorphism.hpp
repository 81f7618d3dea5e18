#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "derq/fingerprint.hpp"
#include "derq/pc_group.hpp"
#include "derq/presentation.hpp"
#include "derq/weighted_basis.hpp"

namespace derq {

struct IsoOptions {
  std::uint64_t node_cap = 200'000'000;
  /// Wall-clock cap in seconds; <= 0 means unlimited.
  double seconds = 0;
};

/// Per-group data shared by every search involving the group: the weighted
/// basis, the fingerprint and, for groups small enough to enumerate, the
/// element-order histogram of each coset of the Frattini subgroup.
class IsoData {
 public:
  explicit IsoData(const PcPresentation& pres);

  const PcGroup& group() const noexcept { return *group_; }
  const WeightedBasis& basis() const noexcept { return *basis_; }
  const std::vector<std::vector<std::uint64_t>>& coset_orders() const noexcept { return coset_orders_; }
  const Fingerprint& fingerprint() const noexcept { return fingerprint_; }

 private:
  std::shared_ptr<const PcGroup> group_;
  std::shared_ptr<const WeightedBasis> basis_;
  std::vector<std::vector<std::uint64_t>> coset_orders_;
  Fingerprint fingerprint_;
};

/// Either a verified isomorphism (images of every source pc generator) or,
/// when none exists, the size of the search that ruled it out.
struct IsoWitness {
  std::vector<ExponentWord> images;
  std::vector<int> defining_generators;  // source pc indices the images are determined by
  std::uint64_t nodes = 0;
  std::uint64_t pruned = 0;
  std::string search_space;
};

struct IsoResult {
  bool isomorphic = false;
  IsoWitness witness;
  std::string reason;
};

/// Backtracking search layer by layer along the lower exponent-p central
/// series. Layer-1 images run over all invertible assignments; deeper
/// components are taken modulo inner automorphisms, and the last layer is
/// fixed to zero since central shifts of exponent p preserve all relations.
/// Relations are checked modulo P_{L+1}(B) after each layer L.
IsoResult is_isomorphic(const PcPresentation& a, const PcPresentation& b, const IsoOptions& options = {});

/// The search alone, without the fingerprint comparison.
IsoResult find_isomorphism(const IsoData& a, const IsoData& b, const IsoOptions& options = {});

/// Calls `visit(images)` for every leaf of the normalized search tree from A
/// to B; each isomorphism A -> B equals one of the visited maps up to an inner
/// automorphism of B and a central shift of the generators. Stops early when
/// `visit` returns false. Returns the number of leaves visited.
std::uint64_t for_each_isomorphism(const IsoData& a, const IsoData& b,
                                   const std::function<bool(const std::vector<ExponentWord>&)>& visit,
                                   const IsoOptions& options = {}, IsoWitness* stats = nullptr);

ExponentWord apply(const PcGroup& b, const std::vector<ExponentWord>& images, const ExponentWord& x);
bool verify_witness(const PcGroup& a, const PcGroup& b, const std::vector<ExponentWord>& images);
/// Images of B's generators under the inverse map.
std::vector<ExponentWord> invert(const PcGroup& a, const PcGroup& b, const std::vector<ExponentWord>& images);
/// A -> B -> C
std::vector<ExponentWord> compose(const PcGroup& c, const std::vector<ExponentWord>& ab,
                                  const std::vector<ExponentWord>& bc);

}  // namespace derq
