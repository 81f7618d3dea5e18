#include "derq/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "derq/errors.hpp"

namespace derq {

Permutation::Permutation(int degree) : images_(static_cast<std::size_t>(degree)) {
  if (degree < 0) throw InputError("negative degree");
  std::iota(images_.begin(), images_.end(), 0);
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= degree() || hit[static_cast<std::size_t>(x)]) throw InputError("image list is not a permutation");
    hit[static_cast<std::size_t>(x)] = true;
  }
}

bool Permutation::is_identity() const noexcept { return first_moved_point() < 0; }

int Permutation::first_moved_point() const noexcept {
  for (int i = 0; i < degree(); ++i)
    if (images_[static_cast<std::size_t>(i)] != i) return i;
  return -1;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  Permutation r;
  r.images_ = std::move(inv);
  return r;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw InputError("permutation degree mismatch");
  Permutation r;
  r.images_.resize(a.images_.size());
  for (std::size_t i = 0; i < a.images_.size(); ++i) r.images_[i] = b.images_[static_cast<std::size_t>(a.images_[i])];
  return r;
}

std::string Permutation::to_string() const {
  std::string s;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < degree(); ++start) {
    if (seen[static_cast<std::size_t>(start)] || images_[static_cast<std::size_t>(start)] == start) continue;
    s += '(';
    int x = start;
    bool first = true;
    while (!seen[static_cast<std::size_t>(x)]) {
      seen[static_cast<std::size_t>(x)] = true;
      if (!first) s += ',';
      s += std::to_string(x + 1);
      first = false;
      x = images_[static_cast<std::size_t>(x)];
    }
    s += ')';
  }
  return s.empty() ? "()" : s;
}

namespace {

std::vector<int> read_ints(std::string_view body) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < body.size()) {
    while (i < body.size() && (body[i] == ',' || std::isspace(static_cast<unsigned char>(body[i])))) ++i;
    if (i >= body.size()) break;
    int v = 0;
    auto [ptr, ec] = std::from_chars(body.data() + i, body.data() + body.size(), v);
    if (ec != std::errc()) throw InputError("bad point in permutation '" + std::string(body) + "'");
    i = static_cast<std::size_t>(ptr - body.data());
    out.push_back(v);
  }
  return out;
}

}  // namespace

Permutation Permutation::parse(std::string_view text, int degree) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty permutation");

  if (text.front() == '[') {
    if (text.back() != ']') throw InputError("unterminated image list");
    auto pts = read_ints(text.substr(1, text.size() - 2));
    int deg = std::max(degree, static_cast<int>(pts.size()));
    std::vector<int> images(static_cast<std::size_t>(deg));
    std::iota(images.begin(), images.end(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (pts[i] < 1 || pts[i] > deg) throw InputError("image out of range");
      images[i] = pts[i] - 1;
    }
    return Permutation(std::move(images));
  }

  std::vector<std::vector<int>> cycles;
  int max_point = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    if (text[i] != '(') throw InputError("expected '(' in cycle notation");
    const auto close = text.find(')', i);
    if (close == std::string_view::npos) throw InputError("unterminated cycle");
    auto pts = read_ints(text.substr(i + 1, close - i - 1));
    for (int x : pts) {
      if (x < 1) throw InputError("points are 1-based");
      max_point = std::max(max_point, x);
    }
    cycles.push_back(std::move(pts));
    i = close + 1;
  }
  const int deg = std::max(degree, max_point);
  if (degree > 0 && max_point > degree) throw InputError("point exceeds degree");
  // compose cycles left to right
  Permutation result(deg);
  for (const auto& c : cycles) {
    std::vector<int> images(static_cast<std::size_t>(deg));
    std::iota(images.begin(), images.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(deg), false);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (used[static_cast<std::size_t>(c[k] - 1)]) throw InputError("repeated point in cycle");
      used[static_cast<std::size_t>(c[k] - 1)] = true;
      images[static_cast<std::size_t>(c[k] - 1)] = c[(k + 1) % c.size()] - 1;
    }
    result = result * Permutation(std::move(images));
  }
  return result;
}

}  // namespace derq
