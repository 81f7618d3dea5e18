#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace derq {

/// Bijection of {0, ..., degree-1}; text forms are 1-based.
/// Products act on the right: x * y applies x first, then y.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(int degree);
  /// 0-based image list; throws InputError unless it is a bijection.
  explicit Permutation(std::vector<int> images);

  /// Cycle notation "(1,2)(3,4)" / "()" or image list "[2,1,4,3]".
  /// A degree of 0 means "largest point mentioned".
  static Permutation parse(std::string_view text, int degree = 0);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[static_cast<std::size_t>(point)]; }
  const std::vector<int>& images() const noexcept { return images_; }

  bool is_identity() const noexcept;
  /// First point not fixed, or -1.
  int first_moved_point() const noexcept;

  Permutation inverse() const;
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  /// Cycle notation, 1-based, fixed points omitted.
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : p.images()) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

}  // namespace derq
