#pragma once

#include <vector>

#include "derq/modp.hpp"
#include "derq/pc_group.hpp"

namespace derq {

/// How a basis element is obtained from earlier ones. An isomorphism is
/// determined by the images of the generator recipes; every other basis
/// element maps to the same recipe evaluated on images.
struct BasisRecipe {
  enum class Kind { generator, commutator, power };
  Kind kind = Kind::generator;
  int a = 0;  // generator: pc index; commutator/power: basis index
  int b = 0;  // commutator: basis index of a layer-1 element
};

/// Basis of G adapted to the lower exponent-p central series
/// P_1 = G, P_{k+1} = [P_k, G] P_k^p. Layer k is P_k / P_{k+1}, an F_p-space;
/// its basis elements are generators (k = 1) or commutators [e, g] and
/// p-th powers e^p of layer k-1 elements.
class WeightedBasis {
 public:
  explicit WeightedBasis(const PcGroup& g);

  const PcGroup& group() const noexcept { return *g_; }
  /// Number of nontrivial layers c (P_{c+1} = 1).
  int layers() const noexcept { return static_cast<int>(dims_.size()); }
  int dim(int k) const { return dims_[static_cast<std::size_t>(k - 1)]; }
  /// Index of the first basis element in layer k.
  int offset(int k) const { return offsets_[static_cast<std::size_t>(k - 1)]; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }

  const ExponentWord& element(int idx) const { return elements_[static_cast<std::size_t>(idx)]; }
  const BasisRecipe& recipe(int idx) const { return recipes_[static_cast<std::size_t>(idx)]; }
  int layer_of(int idx) const { return layer_of_[static_cast<std::size_t>(idx)]; }
  /// P_k for 1 <= k <= layers() + 1.
  const PcSubgroup& term(int k) const { return terms_[static_cast<std::size_t>(k - 1)]; }

  /// Coordinates of x in P_k modulo P_{k+1} with respect to the layer-k basis.
  modp::Vector coordinates(int k, const ExponentWord& x) const;

  /// Exponents c with x = prod over basis elements b_i^{c_i}, taken layer by
  /// layer in basis order.
  std::vector<int> decompose(ExponentWord x) const;

  /// Evaluates a decomposition on arbitrary values for the basis elements.
  template <class Group>
  typename Group::Element evaluate(const Group& h, const std::vector<int>& exps,
                                   const std::vector<typename Group::Element>& values) const {
    auto acc = h.identity();
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] != 0) acc = h.multiply(acc, h.power(values[i], exps[i]));
    return acc;
  }

 private:
  struct Layer {
    std::vector<ExponentWord> sieve;  // one monic element per depth of P_k
    std::vector<int> new_depths;      // depths present in P_k but not P_{k+1}
    modp::Matrix to_basis;            // sieve coordinates -> basis coordinates
  };

  modp::Vector sieve_coordinates(const Layer& layer, ExponentWord x) const;

  const PcGroup* g_;
  std::vector<PcSubgroup> terms_;
  std::vector<int> dims_, offsets_;
  std::vector<Layer> layer_data_;
  std::vector<ExponentWord> elements_;
  std::vector<BasisRecipe> recipes_;
  std::vector<int> layer_of_;
};

}  // namespace derq
