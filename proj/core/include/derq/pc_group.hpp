#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "derq/exponent_word.hpp"
#include "derq/presentation.hpp"

namespace derq {

/// One factor a_gen^exp of an input word (0-based generator, any integer).
struct Letter {
  int gen = 0;
  int exp = 1;
};

/// Subgroup of a pc-group held as an induced generating sequence: elements
/// with pairwise distinct depths, sorted by depth, leading exponent 1. The
/// order is p^(length).
class PcSubgroup {
 public:
  PcSubgroup() = default;

  const std::vector<ExponentWord>& igs() const noexcept { return igs_; }
  int order_exponent() const noexcept { return static_cast<int>(igs_.size()); }
  bool is_trivial() const noexcept { return igs_.empty(); }

  friend bool operator==(const PcSubgroup&, const PcSubgroup&) = default;

 private:
  friend class PcGroup;
  std::vector<ExponentWord> igs_;
};

/// Exact arithmetic in the group defined by a consistent pc-presentation,
/// by collection from the left. Immutable after construction; all methods
/// are safe to call concurrently.
class PcGroup {
 public:
  using Element = ExponentWord;
  using Subgroup = PcSubgroup;

  /// Elementary collection steps allowed per multiplication before the
  /// presentation is declared inconsistent.
  static constexpr std::uint64_t kStepCap = 100'000'000;

  explicit PcGroup(PcPresentation pres);

  const PcPresentation& presentation() const noexcept { return pres_; }
  int prime() const noexcept { return pres_.prime(); }
  int rank() const noexcept { return pres_.rank(); }

  Element identity() const { return Element(rank()); }
  Element generator(int i) const;
  std::vector<Element> generators() const;

  /// acc := acc * a_gen^count for 0 <= count; count may exceed p.
  void collect(Element& acc, int gen, int count) const;

  Element normalize(std::span<const Letter> word) const;
  /// Independent normal-form routine: repeatedly rewrites the leftmost
  /// out-of-order pair or p-fold run of a flat letter string.
  Element normalize_by_rewriting(std::span<const Letter> word) const;

  Element multiply(const Element& u, const Element& v) const;
  Element inverse(const Element& u) const;
  Element power(const Element& u, long long k) const;
  Element commutator(const Element& u, const Element& v) const;
  /// g^-1 x g
  Element conjugate(const Element& x, const Element& g) const;

  std::uint64_t element_order(const Element& u) const;
  std::uint64_t order() const { return pres_.element_count(); }

  // --- subgroups ------------------------------------------------------
  Subgroup whole() const;
  Subgroup trivial() const { return {}; }
  Subgroup subgroup(std::span<const Element> gens) const;
  std::vector<Element> generators(const Subgroup& h) const { return h.igs_; }
  int order_exponent(const Subgroup& h) const { return h.order_exponent(); }

  /// Reduces g by the sequence; identity iff g is a member.
  Element sift(const Subgroup& h, Element g) const;
  bool contains(const Subgroup& h, const Element& g) const { return sift(h, g).is_identity(); }
  /// small <= big
  bool is_subgroup(const Subgroup& small, const Subgroup& big) const;
  bool equal(const Subgroup& a, const Subgroup& b) const;
  bool is_normal(const Subgroup& h, const Subgroup& within) const;

  Subgroup join(const Subgroup& a, const Subgroup& b) const;
  /// Smallest subgroup containing `seeds` and normalized by `within`.
  Subgroup normal_closure(const Subgroup& within, std::span<const Element> seeds) const;
  /// [A, B]: normal closure in <A, B> of the generator commutators.
  Subgroup commutator(const Subgroup& a, const Subgroup& b) const;
  bool is_abelian(const Subgroup& h) const;

  void check_element(const Element& u) const;

 private:
  const std::vector<Letter>& power_letters(int i) const { return power_letters_[static_cast<std::size_t>(i)]; }
  const std::vector<Letter>& comm_letters(int j, int i) const {
    return comm_letters_[static_cast<std::size_t>(j * rank() + i)];
  }
  void close(std::vector<Element>& slots, std::vector<Element> queue) const;
  static Subgroup from_slots(const std::vector<Element>& slots);
  std::vector<Element> slots_of(const Subgroup& h) const;

  PcPresentation pres_;
  std::vector<std::vector<Letter>> power_letters_;
  std::vector<std::vector<Letter>> comm_letters_;
};

}  // namespace derq
