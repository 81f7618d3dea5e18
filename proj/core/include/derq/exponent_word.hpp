#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "derq/errors.hpp"

namespace derq {

/// Largest pc-rank supported by the fixed-width element representation.
inline constexpr int kMaxRank = 32;
/// Exponents are stored in a byte, so the prime must fit one.
inline constexpr int kMaxPrime = 251;

/// A group element in normal form a_1^{e_1} ... a_n^{e_n}, stored as its
/// exponent vector. Indices are 0-based in the C++ API (a_1 is index 0).
/// Entries are always reduced modulo the prime of the owning presentation.
class ExponentWord {
 public:
  ExponentWord() = default;

  explicit ExponentWord(int rank) : rank_(static_cast<std::uint8_t>(checked_rank(rank))) {}

  static ExponentWord generator(int rank, int index, int exponent = 1) {
    ExponentWord w(rank);
    w.set(index, exponent);
    return w;
  }

  int rank() const noexcept { return rank_; }
  int operator[](int i) const noexcept { return e_[static_cast<std::size_t>(i)]; }
  void set(int i, int value) noexcept { e_[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(value); }

  /// Index of the first nonzero exponent, or rank() for the identity.
  int depth() const noexcept {
    for (int i = 0; i < rank_; ++i)
      if (e_[static_cast<std::size_t>(i)] != 0) return i;
    return rank_;
  }

  int leading_exponent() const noexcept {
    const int d = depth();
    return d < rank_ ? e_[static_cast<std::size_t>(d)] : 0;
  }

  bool is_identity() const noexcept { return depth() == rank_; }

  std::span<const std::uint8_t> exponents() const noexcept {
    return {e_.data(), static_cast<std::size_t>(rank_)};
  }

  /// Same exponents on the first `rank` generators (projection onto a
  /// quotient by a tail of the pc-series, or zero-padding for a cover).
  ExponentWord resized(int rank) const {
    ExponentWord w(rank);
    for (int i = 0; i < rank && i < rank_; ++i) w.e_[static_cast<std::size_t>(i)] = e_[static_cast<std::size_t>(i)];
    return w;
  }

  friend bool operator==(const ExponentWord&, const ExponentWord&) = default;
  friend auto operator<=>(const ExponentWord& a, const ExponentWord& b) {
    if (auto c = a.rank_ <=> b.rank_; c != 0) return c;
    return a.e_ <=> b.e_;
  }

  /// 1-based text form used in presentation files: "a3^2 a5^1", or "1".
  std::string to_string() const {
    std::string s;
    for (int i = 0; i < rank_; ++i) {
      if (e_[static_cast<std::size_t>(i)] == 0) continue;
      if (!s.empty()) s += ' ';
      s += 'a' + std::to_string(i + 1) + '^' + std::to_string(e_[static_cast<std::size_t>(i)]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  static int checked_rank(int rank) {
    if (rank < 0 || rank > kMaxRank)
      throw InputError("rank " + std::to_string(rank) + " outside [0, " + std::to_string(kMaxRank) + "]");
    return rank;
  }

  std::array<std::uint8_t, kMaxRank> e_{};
  std::uint8_t rank_ = 0;
};

struct ExponentWordHash {
  std::size_t operator()(const ExponentWord& w) const noexcept {
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(w.rank());
    for (auto x : w.exponents()) h = (h ^ x) * 1099511628211ull;
    return h;
  }
};

}  // namespace derq
