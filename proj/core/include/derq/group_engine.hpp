#pragma once

#include <concepts>
#include <cstdint>
#include <span>
#include <vector>

namespace derq {

/// Element arithmetic every backend provides.
template <class G>
concept GroupEngine = requires(const G& g, const typename G::Element& x, long long k) {
  typename G::Element;
  { g.identity() } -> std::same_as<typename G::Element>;
  { g.generators() } -> std::convertible_to<std::vector<typename G::Element>>;
  { g.multiply(x, x) } -> std::same_as<typename G::Element>;
  { g.inverse(x) } -> std::same_as<typename G::Element>;
  { g.power(x, k) } -> std::same_as<typename G::Element>;
  { g.commutator(x, x) } -> std::same_as<typename G::Element>;
  { g.element_order(x) } -> std::convertible_to<std::uint64_t>;
  { g.order() } -> std::convertible_to<std::uint64_t>;
};

/// Subgroup calculus on top of GroupEngine: what the series algorithms need.
/// Orders are reported as exponents of the group prime.
template <class G>
concept SubgroupEngine = GroupEngine<G> &&
    requires(const G& g, const typename G::Subgroup& h, const typename G::Element& x,
             std::span<const typename G::Element> gens) {
      typename G::Subgroup;
      { g.prime() } -> std::convertible_to<int>;
      { g.whole() } -> std::same_as<typename G::Subgroup>;
      { g.trivial() } -> std::same_as<typename G::Subgroup>;
      { g.subgroup(gens) } -> std::same_as<typename G::Subgroup>;
      { g.generators(h) } -> std::convertible_to<std::vector<typename G::Element>>;
      { g.order_exponent(h) } -> std::convertible_to<int>;
      { g.contains(h, x) } -> std::same_as<bool>;
      { g.is_subgroup(h, h) } -> std::same_as<bool>;
      { g.equal(h, h) } -> std::same_as<bool>;
      { g.is_normal(h, h) } -> std::same_as<bool>;
      { g.join(h, h) } -> std::same_as<typename G::Subgroup>;
      { g.normal_closure(h, gens) } -> std::same_as<typename G::Subgroup>;
      { g.commutator(h, h) } -> std::same_as<typename G::Subgroup>;
      { g.is_abelian(h) } -> std::same_as<bool>;
    };

}  // namespace derq
