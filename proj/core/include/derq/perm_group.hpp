#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "derq/permutation.hpp"

namespace derq {

/// Permutation group with a base and strong generating set, built by the
/// deterministic Schreier-Sims algorithm. Immutable once constructed.
class BSGSGroup {
 public:
  /// Trivial group of the given degree.
  explicit BSGSGroup(int degree = 0);

  int degree() const noexcept { return degree_; }
  const std::vector<Permutation>& generators() const noexcept { return gens_; }
  std::vector<int> base() const;
  std::vector<Permutation> strong_generators() const;
  /// Fundamental orbit of the i-th base point.
  const std::vector<int>& orbit(std::size_t level) const { return levels_.at(level).orbit; }
  std::size_t base_length() const noexcept { return levels_.size(); }

  /// Product of the fundamental orbit lengths; DomainError on overflow.
  std::uint64_t order() const;

  /// Residue of g after sifting, and the level where sifting stopped
  /// (base_length() when it went all the way through).
  std::pair<Permutation, std::size_t> sift(Permutation g, std::size_t from = 0) const;
  bool contains(const Permutation& g) const;

  /// Every element; only sensible for small groups.
  std::vector<Permutation> elements() const;

 private:
  friend BSGSGroup schreier_sims(std::vector<Permutation> gens, int degree);

  struct Level {
    int point = 0;
    std::vector<Permutation> gens;   // strong generators fixing earlier base points
    std::vector<int> orbit;
    std::vector<int> transversal;    // point -> index into reps, -1 if outside orbit
    std::vector<Permutation> reps;   // reps[t] maps `point` to orbit[t]
  };
  void rebuild_orbit(Level& level) const;
  const Permutation& rep(const Level& level, int point) const {
    return level.reps[static_cast<std::size_t>(level.transversal[static_cast<std::size_t>(point)])];
  }

  int degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Level> levels_;
};

/// Base and strong generating set for <gens>. All generators must share one
/// degree (InputError otherwise). `degree` is used when gens is empty.
BSGSGroup schreier_sims(std::vector<Permutation> gens, int degree = -1);

/// Sylow 2-subgroup of the symmetric group on m = 2^k points: the iterated
/// wreath product of k copies of C_2, built by block doubling.
/// InputError unless m is a power of two >= 2.
BSGSGroup sylow2_sym(int m);

/// <gens> as a subgroup of `group`; InputError if a generator is not a member.
BSGSGroup subgroup_generated(const BSGSGroup& group, std::span<const Permutation> gens);
/// Normal closure of <gens> in `group`.
BSGSGroup normal_closure(const BSGSGroup& group, std::span<const Permutation> gens);
/// [A, B]: normal closure in <A, B> of the generator commutators.
BSGSGroup commutator_group(const BSGSGroup& a, const BSGSGroup& b);

/// [x, y] = x^-1 y^-1 x y
Permutation commutator(const Permutation& x, const Permutation& y);

/// Group-engine view of a permutation group, exposing the subgroup calculus
/// used by the series algorithms.
class PermGroup {
 public:
  using Element = Permutation;
  using Subgroup = BSGSGroup;

  explicit PermGroup(BSGSGroup group);

  /// Prime p when the order is a power of p; 0 otherwise (and for order 1).
  int prime() const noexcept { return prime_; }

  Element identity() const { return Permutation(group_.degree()); }
  const std::vector<Element>& generators() const { return group_.generators(); }
  Element multiply(const Element& a, const Element& b) const { return a * b; }
  Element inverse(const Element& a) const { return a.inverse(); }
  Element power(const Element& a, long long k) const;
  Element commutator(const Element& a, const Element& b) const { return derq::commutator(a, b); }
  std::uint64_t element_order(const Element& a) const;
  std::uint64_t order() const { return group_.order(); }

  Subgroup whole() const { return group_; }
  Subgroup trivial() const { return BSGSGroup(group_.degree()); }
  Subgroup subgroup(std::span<const Element> gens) const { return subgroup_generated(group_, gens); }
  std::vector<Element> generators(const Subgroup& h) const { return h.generators(); }
  /// log_p |H|; InputError when |H| is not a power of prime().
  int order_exponent(const Subgroup& h) const;
  bool contains(const Subgroup& h, const Element& g) const { return h.contains(g); }
  bool is_subgroup(const Subgroup& small, const Subgroup& big) const;
  bool equal(const Subgroup& a, const Subgroup& b) const;
  bool is_normal(const Subgroup& h, const Subgroup& within) const;
  Subgroup join(const Subgroup& a, const Subgroup& b) const;
  Subgroup normal_closure(const Subgroup& within, std::span<const Element> seeds) const {
    return derq::normal_closure(within, seeds);
  }
  Subgroup commutator(const Subgroup& a, const Subgroup& b) const { return commutator_group(a, b); }
  bool is_abelian(const Subgroup& h) const;

 private:
  BSGSGroup group_;
  int prime_ = 0;
};

}  // namespace derq
