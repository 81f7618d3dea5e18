#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "derq/exponent_word.hpp"

namespace derq {

/// Power-commutator presentation of a finite p-group of order p^n.
///
/// Generators a_1..a_n (0-based indices in the API). Relations are
///   a_i^p       = power(i)          supported on indices > i
///   [a_j, a_i]  = commutator(j, i)  for j > i, supported on indices > j
/// with [x, y] = x^-1 y^-1 x y, so a_j a_i = a_i a_j [a_j, a_i].
/// A fresh presentation has all tails trivial (elementary abelian group).
///
/// Optional weights assign each generator a lower-central weight; when
/// present they must be non-decreasing and every commutator tail must be
/// supported on generators of weight >= w(j) + w(i).
class PcPresentation {
 public:
  PcPresentation() = default;
  PcPresentation(int prime, int rank);

  int prime() const noexcept { return prime_; }
  int rank() const noexcept { return rank_; }

  const ExponentWord& power(int i) const { return powers_.at(static_cast<std::size_t>(i)); }
  const ExponentWord& commutator(int j, int i) const;

  void set_power(int i, const ExponentWord& tail);
  void set_commutator(int j, int i, const ExponentWord& tail);

  bool has_weights() const noexcept { return !weights_.empty(); }
  const std::vector<int>& weights() const noexcept { return weights_; }
  /// Empty vector clears the weights.
  void set_weights(std::vector<int> weights);

  /// |G| = p^n. Throws DomainError if it does not fit in 64 bits.
  std::uint64_t element_count() const;

  /// Presentation of the quotient by <a_{rank+1}, ..., a_n>. Only valid when
  /// that subgroup is normal (true for any tail of a weighted series).
  PcPresentation truncated(int rank) const;

  friend bool operator==(const PcPresentation&, const PcPresentation&) = default;

 private:
  void check_index(int i) const;
  void check_tail(const ExponentWord& tail, int after, const char* what) const;
  void check_weight_rule(int j, int i, const ExponentWord& tail) const;

  int prime_ = 2;
  int rank_ = 0;
  std::vector<ExponentWord> powers_;
  std::vector<ExponentWord> comms_;  // rank * rank, entry [j * rank + i] for j > i
  std::vector<int> weights_;
};

/// Parse the line-oriented presentation text format:
///   p <prime>
///   n <rank>
///   weights <w1> ... <wn>          (optional)
///   pow <i> = <word>
///   comm <j> <i> = <word>
/// Words are whitespace-separated factors `a<k>^<e>` (or `a<k>`) with
/// strictly increasing k, or the literal `1`. Indices are 1-based. '#' starts a
/// comment. Errors carry line numbers (ParseError).
PcPresentation parse_presentation(std::string_view text);
PcPresentation read_presentation_file(const std::string& path);

/// Inverse of parse_presentation; only nontrivial tails are emitted.
std::string format_presentation(const PcPresentation& pres);

}  // namespace derq
