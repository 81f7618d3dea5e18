#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "derq/pc_group.hpp"
#include "derq/presentation.hpp"

namespace derq::oracle {

inline std::filesystem::path data_dir() { return DERQ_TEST_DATA_DIR; }

/// Every consistent corpus presentation, by file stem.
inline std::vector<std::pair<std::string, PcPresentation>> corpus() {
  std::vector<std::pair<std::string, PcPresentation>> out;
  for (const auto& entry : std::filesystem::directory_iterator(data_dir())) {
    const auto stem = entry.path().stem().string();
    if (entry.path().extension() != ".pc" || stem == "inconsistent" || stem == "unparseable") continue;
    out.emplace_back(stem, read_presentation_file(entry.path().string()));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

inline std::filesystem::path catalog_dir() { return DERQ_CATALOG_DIR; }

/// Presentations from the catalogs shipped in catalogs/, labelled file#index.
inline std::vector<std::pair<std::string, PcPresentation>> shipped_catalog_presentations() {
  std::vector<std::pair<std::string, PcPresentation>> out;
  for (int p : {3, 5, 7}) {
    const auto path = catalog_dir() / ("maxclass_p" + std::to_string(p) + ".json");
    if (!std::filesystem::exists(path)) continue;
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    for (std::size_t k = 0; k < j.size(); ++k)
      out.emplace_back(path.filename().string() + "#" + std::to_string(k),
                       parse_presentation(j[k].at("presentation").get<std::string>()));
  }
  return out;
}

inline std::vector<Letter> random_word(std::mt19937_64& rng, int rank, int length, int max_exp = 7) {
  std::uniform_int_distribution<int> gen(0, rank - 1), exp(-max_exp, max_exp);
  std::vector<Letter> w;
  for (int k = 0; k < length; ++k) w.push_back({gen(rng), exp(rng)});
  return w;
}

inline ExponentWord random_element(std::mt19937_64& rng, int rank, int p) {
  std::uniform_int_distribution<int> e(0, p - 1);
  ExponentWord w(rank);
  for (int i = 0; i < rank; ++i) w.set(i, e(rng));
  return w;
}

/// Upper unitriangular 3x3 matrices over F_p, stored as (x, y, z) for
/// [[1,x,z],[0,1,y],[0,0,1]].
struct Unitriangular {
  int p;
  struct M {
    int x = 0, y = 0, z = 0;
    friend bool operator==(const M&, const M&) = default;
  };
  int r(long long v) const { return static_cast<int>(((v % p) + p) % p); }
  M mul(const M& a, const M& b) const { return {r(a.x + b.x), r(a.y + b.y), r(a.z + b.z + 1LL * a.x * b.y)}; }
  M pow(M a, long long k) const {
    k = ((k % p) + p) % p;
    M acc;
    for (long long i = 0; i < k; ++i) acc = mul(acc, a);
    return acc;
  }
  /// a1 -> E12, a2 -> E23, a3 -> [a2, a1] = I - E13.
  M image(int gen) const {
    if (gen == 0) return {1, 0, 0};
    if (gen == 1) return {0, 1, 0};
    return {0, 0, r(-1)};
  }
  M image(const ExponentWord& w) const {
    M acc;
    for (int i = 0; i < 3; ++i) acc = mul(acc, pow(image(i), w[i]));
    return acc;
  }
  M evaluate(const std::vector<Letter>& word) const {
    M acc;
    for (const auto& l : word) acc = mul(acc, pow(image(l.gen), l.exp));
    return acc;
  }
};

/// A finite group given by its full multiplication table; subgroups are
/// closed by breadth-first search, so nothing depends on pc machinery.
class CayleyTable {
 public:
  /// Elements are numbered by enumeration; the table is filled with the
  /// rewriting normal form.
  explicit CayleyTable(const PcGroup& g) {
    const int n = g.rank(), p = g.prime();
    ExponentWord w(n);
    std::unordered_map<ExponentWord, int, ExponentWordHash> index;
    while (true) {
      index.emplace(w, static_cast<int>(elements_.size()));
      elements_.push_back(w);
      int i = n - 1;
      while (i >= 0 && w[i] == p - 1) w.set(i--, 0);
      if (i < 0) break;
      w.set(i, w[i] + 1);
    }
    const std::size_t size = elements_.size();
    table_.resize(size * size);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b) {
        std::vector<Letter> word;
        for (int i = 0; i < n; ++i)
          if (elements_[a][i]) word.push_back({i, elements_[a][i]});
        for (int i = 0; i < n; ++i)
          if (elements_[b][i]) word.push_back({i, elements_[b][i]});
        table_[a * size + b] = index.at(g.normalize_by_rewriting(word));
      }
    identity_ = index.at(ExponentWord(n));
    inverse_.resize(size);
    for (std::size_t a = 0; a < size; ++a)
      for (std::size_t b = 0; b < size; ++b)
        if (mul(static_cast<int>(a), static_cast<int>(b)) == identity_) inverse_[a] = static_cast<int>(b);
  }

  int size() const { return static_cast<int>(elements_.size()); }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * elements_.size() + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int comm(int a, int b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  /// Subgroup generated by `gens`, as a membership mask.
  std::vector<bool> closure(const std::vector<int>& gens) const {
    std::vector<bool> in(elements_.size(), false);
    std::vector<int> queue{identity_};
    in[static_cast<std::size_t>(identity_)] = true;
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (int g : gens) {
        const int x = mul(queue[q], g);
        if (!in[static_cast<std::size_t>(x)]) {
          in[static_cast<std::size_t>(x)] = true;
          queue.push_back(x);
        }
      }
    return in;
  }

  static int count(const std::vector<bool>& mask) { return static_cast<int>(std::count(mask.begin(), mask.end(), true)); }

  /// Subgroup generated by all [a, b] with a in A, b in B.
  std::vector<bool> commutator(const std::vector<bool>& a, const std::vector<bool>& b) const {
    std::vector<bool> seen(elements_.size(), false);
    std::vector<int> gens;
    for (int x = 0; x < size(); ++x) {
      if (!a[static_cast<std::size_t>(x)]) continue;
      for (int y = 0; y < size(); ++y) {
        if (!b[static_cast<std::size_t>(y)]) continue;
        const int c = comm(x, y);
        if (!seen[static_cast<std::size_t>(c)]) {
          seen[static_cast<std::size_t>(c)] = true;
          gens.push_back(c);
        }
      }
    }
    return closure(gens);
  }

  std::vector<int> derived_orders() const {
    std::vector<bool> cur(elements_.size(), true);
    std::vector<int> out{count(cur)};
    while (count(cur) > 1) {
      auto next = commutator(cur, cur);
      if (count(next) == count(cur)) break;
      cur = std::move(next);
      out.push_back(count(cur));
    }
    return out;
  }

  std::vector<int> lcs_orders() const {
    const std::vector<bool> whole(elements_.size(), true);
    std::vector<bool> cur = whole;
    std::vector<int> out{count(cur)};
    while (count(cur) > 1) {
      auto next = commutator(cur, whole);
      if (count(next) == count(cur)) break;
      cur = std::move(next);
      out.push_back(count(cur));
    }
    return out;
  }

 private:
  std::vector<ExponentWord> elements_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

inline int log_p(long long n, int p) {
  int e = 0;
  while (n > 1) {
    n /= p;
    ++e;
  }
  return e;
}

}  // namespace derq::oracle
