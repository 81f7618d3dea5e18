#include "derq/weighted_basis.hpp"

#include <algorithm>
#include <stdexcept>

namespace derq {

WeightedBasis::WeightedBasis(const PcGroup& g) : g_(&g) {
  const int p = g.prime();
  const int n = g.rank();
  terms_.push_back(g.whole());
  while (!terms_.back().is_trivial()) {
    const auto& cur = terms_.back();
    std::vector<ExponentWord> powers;
    for (const auto& x : cur.igs()) powers.push_back(g.power(x, p));
    terms_.push_back(g.join(g.commutator(cur, g.whole()), g.subgroup(powers)));
  }

  for (std::size_t k = 0; k + 1 < terms_.size(); ++k) {
    Layer layer;
    std::vector<ExponentWord> by_depth(static_cast<std::size_t>(n));
    std::vector<bool> deeper(static_cast<std::size_t>(n), false);
    for (const auto& x : terms_[k].igs()) by_depth[static_cast<std::size_t>(x.depth())] = x;
    for (const auto& x : terms_[k + 1].igs()) {
      by_depth[static_cast<std::size_t>(x.depth())] = x;
      deeper[static_cast<std::size_t>(x.depth())] = true;
    }
    for (const auto& x : terms_[k].igs()) {
      layer.sieve.push_back(by_depth[static_cast<std::size_t>(x.depth())]);
      if (!deeper[static_cast<std::size_t>(x.depth())]) layer.new_depths.push_back(x.depth());
    }
    dims_.push_back(static_cast<int>(layer.new_depths.size()));
    offsets_.push_back(static_cast<int>(elements_.size()));
    layer_data_.push_back(std::move(layer));

    const int layer_no = static_cast<int>(k) + 1;
    auto& data = layer_data_.back();
    modp::Matrix rows;
    auto try_add = [&](const ExponentWord& x, BasisRecipe r) {
      if (static_cast<int>(rows.size()) == dims_.back()) return;
      auto c = sieve_coordinates(data, x);
      auto test = rows;
      test.push_back(c);
      if (modp::rank(test, p) <= static_cast<int>(rows.size())) return;
      rows.push_back(std::move(c));
      elements_.push_back(x);
      recipes_.push_back(r);
      layer_of_.push_back(layer_no);
    };
    if (layer_no == 1) {
      for (int d : data.new_depths) try_add(g.generator(d), {BasisRecipe::Kind::generator, d, 0});
    } else {
      const int prev = offsets_[k - 1], prev_end = offsets_[k];
      for (int e = prev; e < prev_end; ++e)
        for (int t = 0; t < dims_[0]; ++t)
          try_add(g.commutator(elements_[static_cast<std::size_t>(e)], elements_[static_cast<std::size_t>(t)]),
                  {BasisRecipe::Kind::commutator, e, t});
      for (int e = prev; e < prev_end; ++e)
        try_add(g.power(elements_[static_cast<std::size_t>(e)], p), {BasisRecipe::Kind::power, e, 0});
    }
    if (static_cast<int>(rows.size()) != dims_.back())
      throw std::logic_error("weighted basis: layer " + std::to_string(layer_no) + " not spanned by recipes");
    auto inv = modp::inverse(rows, p);
    if (!inv) throw std::logic_error("weighted basis: singular layer matrix");
    data.to_basis = std::move(*inv);
  }
}

modp::Vector WeightedBasis::sieve_coordinates(const Layer& layer, ExponentWord x) const {
  const auto& g = *g_;
  modp::Vector out;
  std::size_t next_new = 0;
  for (const auto& s : layer.sieve) {
    const int d = s.depth();
    const int c = x[d];
    if (x.depth() < d) throw InputError("element outside the series term");
    if (c != 0) x = g.multiply(g.power(s, -c), x);
    if (next_new < layer.new_depths.size() && layer.new_depths[next_new] == d) {
      out.push_back(c);
      ++next_new;
    }
  }
  if (!x.is_identity()) throw InputError("element outside the series term");
  return out;
}

modp::Vector WeightedBasis::coordinates(int k, const ExponentWord& x) const {
  const auto& layer = layer_data_.at(static_cast<std::size_t>(k - 1));
  const auto u = sieve_coordinates(layer, x);
  const int p = g_->prime();
  const int d = dim(k);
  modp::Vector w(static_cast<std::size_t>(d), 0);
  for (int j = 0; j < d; ++j) {
    long long acc = 0;
    for (int i = 0; i < d; ++i)
      acc += static_cast<long long>(u[static_cast<std::size_t>(i)]) *
             layer.to_basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    w[static_cast<std::size_t>(j)] = modp::reduce(acc, p);
  }
  return w;
}

std::vector<int> WeightedBasis::decompose(ExponentWord x) const {
  const auto& g = *g_;
  std::vector<int> exps(elements_.size(), 0);
  for (int k = 1; k <= layers(); ++k) {
    const auto w = coordinates(k, x);
    auto y = g.identity();
    for (int j = 0; j < dim(k); ++j) {
      const int c = w[static_cast<std::size_t>(j)];
      exps[static_cast<std::size_t>(offset(k) + j)] = c;
      if (c != 0) y = g.multiply(y, g.power(elements_[static_cast<std::size_t>(offset(k) + j)], c));
    }
    x = g.multiply(g.inverse(y), x);
  }
  if (!x.is_identity()) throw std::logic_error("weighted basis: decomposition left a remainder");
  return exps;
}

}  // namespace derq
