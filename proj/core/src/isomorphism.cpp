#include "derq/isomorphism.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "derq/fingerprint.hpp"

namespace derq {

namespace {

struct Relation {
  bool is_power;
  int j, i;
  ExponentWord tail;
};

class Search {
 public:
  Search(const IsoData& a, const IsoData& b, const IsoOptions& options)
      : a_(a.group()), b_(b.group()), ba_(a.basis()), bb_(b.basis()), options_(options),
        start_(std::chrono::steady_clock::now()) {
    p_ = a_.prime();
    if (!a.coset_orders().empty() && !b.coset_orders().empty()) {
      inv_a_ = &a.coset_orders();
      inv_b_ = &b.coset_orders();
    }
    for (int k = 0; k < a_.rank(); ++k) decomp_.push_back(ba_.decompose(a_.generator(k)));
    for (int i = 0; i < a_.rank(); ++i) {
      relations_.push_back({true, i, i, a_.presentation().power(i)});
      for (int j = i + 1; j < a_.rank(); ++j) relations_.push_back({false, j, i, a_.presentation().commutator(j, i)});
    }
  }

  bool shapes_match() const {
    if (ba_.layers() != bb_.layers()) return false;
    for (int k = 1; k <= ba_.layers(); ++k)
      if (ba_.dim(k) != bb_.dim(k)) return false;
    return true;
  }

  std::string describe() const {
    std::ostringstream out;
    out << "layer dims [";
    for (int k = 1; k <= ba_.layers(); ++k) out << (k > 1 ? "," : "") << ba_.dim(k);
    out << "]; layer 1 over invertible " << ba_.dim(1) << "x" << ba_.dim(1)
        << " matrices; deeper layers modulo inner automorphisms; last layer fixed";
    return out.str();
  }

  std::uint64_t run(const std::function<bool(const std::vector<ExponentWord>&)>& visit) {
    visit_ = &visit;
    const int d1 = ba_.dim(1);
    comps_.assign(static_cast<std::size_t>(d1), std::vector<int>(static_cast<std::size_t>(bb_.size()), 0));
    if (d1 == 0) {
      // trivial group
      ++leaves_;
      (*visit_)({});
      return leaves_;
    }
    assign_row(0);
    return leaves_;
  }

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t pruned() const { return pruned_; }

 private:
  void tick() {
    ++nodes_;
    if (nodes_ > options_.node_cap)
      throw BudgetExceeded("isomorphism search exceeded node cap", std::to_string(nodes_) + " nodes visited");
    if (options_.seconds > 0 && (nodes_ & 255) == 0) {
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (el > options_.seconds)
        throw BudgetExceeded("isomorphism search exceeded time budget", std::to_string(nodes_) + " nodes visited");
    }
  }

  // Layer 1: rows of an invertible matrix, chosen one at a time.
  void assign_row(int t) {
    const int d1 = ba_.dim(1);
    if (t == d1) {
      descend(2);
      return;
    }
    long long total = 1;
    for (int s = 0; s < d1; ++s) total *= p_;
    for (long long code = 1; code < total && !stop_; ++code) {
      tick();
      long long c = code;
      for (int s = d1 - 1; s >= 0; --s) {
        comps_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] = static_cast<int>(c % p_);
        c /= p_;
      }
      modp::Matrix m;
      for (int r = 0; r <= t; ++r)
        m.emplace_back(comps_[static_cast<std::size_t>(r)].begin(), comps_[static_cast<std::size_t>(r)].begin() + d1);
      if (modp::rank(m, p_) != t + 1) continue;
      if (inv_a_ && !cosets_match(t)) {
        ++pruned_;
        continue;
      }
      assign_row(t + 1);
    }
    for (int s = 0; s < d1; ++s) comps_[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] = 0;
  }

  // Every combination of rows 0..t involving row t maps a coset of
  // Phi(A) to a coset of Phi(B) with the same element-order histogram.
  bool cosets_match(int t) const {
    const int d1 = ba_.dim(1);
    std::vector<int> c(static_cast<std::size_t>(t + 1), 0);
    c[static_cast<std::size_t>(t)] = 1;
    while (true) {
      long long code_a = 0, code_b = 0;
      for (int s = 0; s < d1; ++s) {
        long long vb = 0;
        for (int r = 0; r <= t; ++r)
          vb += static_cast<long long>(c[static_cast<std::size_t>(r)]) * comps_[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
        code_a = code_a * p_ + (s <= t ? c[static_cast<std::size_t>(s)] : 0);
        code_b = code_b * p_ + modp::reduce(vb, p_);
      }
      if ((*inv_a_)[static_cast<std::size_t>(code_a)] != (*inv_b_)[static_cast<std::size_t>(code_b)]) return false;
      int k = 0;
      while (k <= t) {
        auto& x = c[static_cast<std::size_t>(k)];
        if (k == t) {
          if (++x == p_) return true;
          break;
        }
        if (++x < p_) break;
        x = 0;
        ++k;
      }
    }
  }

  std::vector<ExponentWord> generator_images() const {
    std::vector<ExponentWord> out;
    for (const auto& row : comps_) {
      auto acc = b_.identity();
      for (int s = 0; s < bb_.size(); ++s)
        if (row[static_cast<std::size_t>(s)] != 0)
          acc = b_.multiply(acc, b_.power(bb_.element(s), row[static_cast<std::size_t>(s)]));
      out.push_back(acc);
    }
    return out;
  }

  std::vector<ExponentWord> pc_images(const std::vector<ExponentWord>& gens) const {
    std::vector<ExponentWord> basis(static_cast<std::size_t>(ba_.size()));
    for (int idx = 0; idx < ba_.size(); ++idx) {
      const auto& r = ba_.recipe(idx);
      auto& out = basis[static_cast<std::size_t>(idx)];
      switch (r.kind) {
        case BasisRecipe::Kind::generator: out = gens[static_cast<std::size_t>(idx)]; break;
        case BasisRecipe::Kind::commutator:
          out = b_.commutator(basis[static_cast<std::size_t>(r.a)], basis[static_cast<std::size_t>(r.b)]);
          break;
        case BasisRecipe::Kind::power: out = b_.power(basis[static_cast<std::size_t>(r.a)], p_); break;
      }
    }
    std::vector<ExponentWord> images;
    for (const auto& d : decomp_) images.push_back(ba_.evaluate(b_, d, basis));
    return images;
  }

  // The relation that failed last is tried first next time.
  bool relations_hold(const std::vector<ExponentWord>& images, int level) {
    const auto& mod = bb_.term(level + 1);
    for (std::size_t k = 0; k < relations_.size(); ++k) {
      const auto& rel = relations_[k];
      const auto lhs = rel.is_power ? b_.power(images[static_cast<std::size_t>(rel.i)], p_)
                                    : b_.commutator(images[static_cast<std::size_t>(rel.j)],
                                                    images[static_cast<std::size_t>(rel.i)]);
      auto rhs = b_.identity();
      for (int k = 0; k < rel.tail.rank(); ++k)
        if (rel.tail[k] != 0) rhs = b_.multiply(rhs, b_.power(images[static_cast<std::size_t>(k)], rel.tail[k]));
      const auto diff = b_.multiply(b_.inverse(lhs), rhs);
      if (mod.is_trivial() ? !diff.is_identity() : !b_.contains(mod, diff)) {
        std::rotate(relations_.begin(), relations_.begin() + static_cast<std::ptrdiff_t>(k),
                    relations_.begin() + static_cast<std::ptrdiff_t>(k) + 1);
        return false;
      }
    }
    return true;
  }

  // Check layers < level are consistent, then choose layer `level` components.
  void descend(int level) {
    const int c = ba_.layers();
    const int checked = level - 1;
    const auto images = pc_images(generator_images());
    if (!relations_hold(images, checked)) {
      ++pruned_;
      return;
    }
    if (checked == c) {
      ++leaves_;
      if (!(*visit_)(images)) stop_ = true;
      return;
    }
    const int d1 = ba_.dim(1);
    const int dl = bb_.dim(level);
    const int off = bb_.offset(level);
    if (level == c) {
      tick();
      descend(level + 1);
      return;
    }
    // Conjugation by y in P_{level-1}(B) shifts layer-`level` components by ([g_t, y])_t.
    const auto gens = generator_images();
    modp::Matrix w;
    for (int j = 0; j < bb_.dim(level - 1); ++j) {
      const auto& y = bb_.element(bb_.offset(level - 1) + j);
      modp::Vector row;
      for (int t = 0; t < d1; ++t) {
        auto v = bb_.coordinates(level, b_.commutator(gens[static_cast<std::size_t>(t)], y));
        row.insert(row.end(), v.begin(), v.end());
      }
      w.push_back(std::move(row));
    }
    const int m = d1 * dl;
    std::vector<bool> pivot(static_cast<std::size_t>(m), false);
    if (!w.empty()) {
      const int r = modp::row_reduce(w, p_);
      for (int i = 0; i < r; ++i) {
        int col = 0;
        while (w[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] == 0) ++col;
        pivot[static_cast<std::size_t>(col)] = true;
      }
    }
    std::vector<int> free;
    for (int col = 0; col < m; ++col)
      if (!pivot[static_cast<std::size_t>(col)]) free.push_back(col);
    long long total = 1;
    for (std::size_t i = 0; i < free.size(); ++i) total *= p_;
    for (long long code = 0; code < total && !stop_; ++code) {
      tick();
      long long cc = code;
      for (int col = m - 1; col >= 0; --col) {
        int val = 0;
        if (!pivot[static_cast<std::size_t>(col)]) {
          val = static_cast<int>(cc % p_);
          cc /= p_;
        }
        comps_[static_cast<std::size_t>(col / dl)][static_cast<std::size_t>(off + col % dl)] = val;
      }
      descend(level + 1);
    }
    for (int t = 0; t < d1; ++t)
      for (int s = 0; s < dl; ++s) comps_[static_cast<std::size_t>(t)][static_cast<std::size_t>(off + s)] = 0;
  }

  const PcGroup& a_;
  const PcGroup& b_;
  const WeightedBasis& ba_;
  const WeightedBasis& bb_;
  const std::vector<std::vector<std::uint64_t>>* inv_a_ = nullptr;
  const std::vector<std::vector<std::uint64_t>>* inv_b_ = nullptr;
  IsoOptions options_;
  std::chrono::steady_clock::time_point start_;
  int p_ = 2;
  std::vector<std::vector<int>> decomp_;
  std::vector<Relation> relations_;
  std::vector<std::vector<int>> comps_;  // per layer-1 generator: exponents over B's basis
  const std::function<bool(const std::vector<ExponentWord>&)>* visit_ = nullptr;
  std::uint64_t nodes_ = 0, pruned_ = 0, leaves_ = 0;
  bool stop_ = false;
};

}  // namespace

IsoData::IsoData(const PcPresentation& pres)
    : group_(std::make_shared<const PcGroup>(pres)), basis_(std::make_shared<const WeightedBasis>(*group_)) {
  coset_orders_ = coset_order_histograms(*group_, *basis_);
  fingerprint_ = compute_fingerprint(*group_, *basis_, coset_orders_);
}

std::uint64_t for_each_isomorphism(const IsoData& a, const IsoData& b,
                                   const std::function<bool(const std::vector<ExponentWord>&)>& visit,
                                   const IsoOptions& options, IsoWitness* stats) {
  if (a.group().prime() != b.group().prime() || a.group().rank() != b.group().rank()) return 0;
  Search search(a, b, options);
  if (!search.shapes_match()) return 0;
  const auto leaves = search.run(visit);
  if (stats) {
    stats->nodes = search.nodes();
    stats->pruned = search.pruned();
    stats->search_space = search.describe();
  }
  return leaves;
}

IsoResult find_isomorphism(const IsoData& a, const IsoData& b, const IsoOptions& options) {
  IsoResult result;
  if (a.group().prime() != b.group().prime() || a.group().rank() != b.group().rank()) {
    result.reason = "orders differ";
    return result;
  }
  Search search(a, b, options);
  if (!search.shapes_match()) {
    result.reason = "exponent-p central series differ";
    return result;
  }
  bool any = false;
  search.run([&](const std::vector<ExponentWord>& images) {
    result.witness.images = images;
    any = true;
    return false;
  });
  result.isomorphic = any;
  const auto& basis = a.basis();
  for (int idx = 0; idx < (basis.layers() > 0 ? basis.dim(1) : 0); ++idx)
    result.witness.defining_generators.push_back(basis.recipe(idx).a);
  result.witness.nodes = search.nodes();
  result.witness.pruned = search.pruned();
  result.witness.search_space = search.describe();
  result.reason = any ? "witness found" : "search exhausted";
  return result;
}

IsoResult is_isomorphic(const PcPresentation& pa, const PcPresentation& pb, const IsoOptions& options) {
  if (pa.prime() != pb.prime() || pa.rank() != pb.rank()) return {false, {}, "orders differ"};
  const IsoData a(pa), b(pb);
  if (!(a.fingerprint() == b.fingerprint())) return {false, {}, "fingerprints differ"};
  return find_isomorphism(a, b, options);
}

ExponentWord apply(const PcGroup& b, const std::vector<ExponentWord>& images, const ExponentWord& x) {
  if (static_cast<int>(images.size()) != x.rank()) throw InputError("witness does not match element rank");
  auto acc = b.identity();
  for (int k = 0; k < x.rank(); ++k)
    if (x[k] != 0) acc = b.multiply(acc, b.power(images[static_cast<std::size_t>(k)], x[k]));
  return acc;
}

bool verify_witness(const PcGroup& a, const PcGroup& b, const std::vector<ExponentWord>& images) {
  if (a.prime() != b.prime() || a.rank() != b.rank()) return false;
  if (static_cast<int>(images.size()) != a.rank()) return false;
  for (const auto& x : images)
    if (x.rank() != b.rank()) return false;
  const int p = a.prime();
  for (int i = 0; i < a.rank(); ++i) {
    if (b.power(images[static_cast<std::size_t>(i)], p) != apply(b, images, a.presentation().power(i))) return false;
    for (int j = i + 1; j < a.rank(); ++j)
      if (b.commutator(images[static_cast<std::size_t>(j)], images[static_cast<std::size_t>(i)]) !=
          apply(b, images, a.presentation().commutator(j, i)))
        return false;
  }
  return b.subgroup(images).order_exponent() == b.rank();
}

std::vector<ExponentWord> invert(const PcGroup& a, const PcGroup& b, const std::vector<ExponentWord>& images) {
  const WeightedBasis ba(a), bb(b);
  const int p = a.prime();
  // Matrix of the map on each layer, in basis coordinates.
  std::vector<modp::Matrix> inverse_maps;
  std::vector<ExponentWord> image_of_basis;
  for (int idx = 0; idx < ba.size(); ++idx) image_of_basis.push_back(apply(b, images, ba.element(idx)));
  for (int k = 1; k <= ba.layers(); ++k) {
    modp::Matrix m;
    for (int j = 0; j < ba.dim(k); ++j) m.push_back(bb.coordinates(k, image_of_basis[static_cast<std::size_t>(ba.offset(k) + j)]));
    auto inv = modp::inverse(m, p);
    if (!inv) throw InputError("witness is not bijective");
    inverse_maps.push_back(std::move(*inv));
  }
  std::vector<ExponentWord> out;
  for (int g = 0; g < b.rank(); ++g) {
    auto target = b.generator(g);
    auto pre = a.identity();
    for (int k = 1; k <= ba.layers(); ++k) {
      const auto w = bb.coordinates(k, target);
      const auto& minv = inverse_maps[static_cast<std::size_t>(k - 1)];
      auto x = a.identity();
      auto fx = b.identity();
      for (int j = 0; j < ba.dim(k); ++j) {
        long long u = 0;
        for (int i = 0; i < ba.dim(k); ++i)
          u += static_cast<long long>(w[static_cast<std::size_t>(i)]) * minv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        const int c = modp::reduce(u, p);
        if (c == 0) continue;
        x = a.multiply(x, a.power(ba.element(ba.offset(k) + j), c));
        fx = b.multiply(fx, b.power(image_of_basis[static_cast<std::size_t>(ba.offset(k) + j)], c));
      }
      pre = a.multiply(pre, x);
      target = b.multiply(b.inverse(fx), target);
    }
    if (!target.is_identity()) throw InputError("witness is not bijective");
    out.push_back(pre);
  }
  return out;
}

std::vector<ExponentWord> compose(const PcGroup& c, const std::vector<ExponentWord>& ab,
                                  const std::vector<ExponentWord>& bc) {
  std::vector<ExponentWord> out;
  for (const auto& x : ab) out.push_back(apply(c, bc, x));
  return out;
}

}  // namespace derq
