#include "derq/perm_group.hpp"

#include <limits>
#include <numeric>

#include "derq/errors.hpp"

namespace derq {

BSGSGroup::BSGSGroup(int degree) : degree_(degree) {}

std::vector<int> BSGSGroup::base() const {
  std::vector<int> b;
  for (const auto& l : levels_) b.push_back(l.point);
  return b;
}

std::vector<Permutation> BSGSGroup::strong_generators() const {
  return levels_.empty() ? std::vector<Permutation>{} : levels_.front().gens;
}

std::uint64_t BSGSGroup::order() const {
  std::uint64_t n = 1;
  for (const auto& l : levels_) {
    const auto k = static_cast<std::uint64_t>(l.orbit.size());
    if (n > std::numeric_limits<std::uint64_t>::max() / k) throw DomainError("group order does not fit in 64 bits");
    n *= k;
  }
  return n;
}

void BSGSGroup::rebuild_orbit(Level& level) const {
  level.orbit.assign(1, level.point);
  level.transversal.assign(static_cast<std::size_t>(degree_), -1);
  level.reps.assign(1, Permutation(degree_));
  level.transversal[static_cast<std::size_t>(level.point)] = 0;
  for (std::size_t t = 0; t < level.orbit.size(); ++t) {
    const int delta = level.orbit[t];
    for (const auto& s : level.gens) {
      const int gamma = s(delta);
      if (level.transversal[static_cast<std::size_t>(gamma)] >= 0) continue;
      level.transversal[static_cast<std::size_t>(gamma)] = static_cast<int>(level.reps.size());
      level.reps.push_back(level.reps[t] * s);
      level.orbit.push_back(gamma);
    }
  }
}

std::pair<Permutation, std::size_t> BSGSGroup::sift(Permutation g, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const auto& l = levels_[i];
    const int beta = g(l.point);
    if (l.transversal[static_cast<std::size_t>(beta)] < 0) return {std::move(g), i};
    g = g * rep(l, beta).inverse();
  }
  return {std::move(g), levels_.size()};
}

bool BSGSGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) return false;
  auto [residue, level] = sift(g);
  return level == levels_.size() && residue.is_identity();
}

std::vector<Permutation> BSGSGroup::elements() const {
  std::vector<Permutation> out{Permutation(degree_)};
  // g = u_k ... u_1 with u_i from level i transversals
  for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) {
    std::vector<Permutation> next;
    next.reserve(out.size() * it->reps.size());
    for (const auto& x : out)
      for (const auto& u : it->reps) next.push_back(x * u);
    out = std::move(next);
  }
  return out;
}

BSGSGroup schreier_sims(std::vector<Permutation> gens, int degree) {
  if (degree < 0) {
    if (gens.empty()) throw InputError("degree required for an empty generating set");
    degree = gens.front().degree();
  }
  for (const auto& g : gens)
    if (g.degree() != degree) throw InputError("generators have different degrees");

  BSGSGroup grp(degree);
  grp.gens_ = gens;
  std::vector<Permutation> strong;
  for (auto& g : gens)
    if (!g.is_identity()) strong.push_back(g);
  if (strong.empty()) return grp;

  using Level = BSGSGroup::Level;
  auto& levels = grp.levels_;
  auto fixes_base = [&](const Permutation& g, std::size_t upto) {
    for (std::size_t i = 0; i < upto; ++i)
      if (g(levels[i].point) != levels[i].point) return false;
    return true;
  };
  auto add_base_point_for = [&](const Permutation& g) {
    Level l;
    l.point = g.first_moved_point();
    levels.push_back(std::move(l));
  };
  for (const auto& g : strong)
    if (fixes_base(g, levels.size())) add_base_point_for(g);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (const auto& g : strong)
      if (fixes_base(g, i)) levels[i].gens.push_back(g);
    grp.rebuild_orbit(levels[i]);
  }

  std::size_t i = levels.size();
  while (i > 0) {
    const std::size_t lvl = i - 1;
    bool extended = false;
    for (std::size_t t = 0; t < levels[lvl].orbit.size() && !extended; ++t) {
      const int beta = levels[lvl].orbit[t];
      for (std::size_t s = 0; s < levels[lvl].gens.size() && !extended; ++s) {
        const auto& gen = levels[lvl].gens[s];
        const Permutation schreier = levels[lvl].reps[t] * gen * grp.rep(levels[lvl], gen(beta)).inverse();
        auto [h, stop] = grp.sift(schreier, lvl + 1);
        if (stop == levels.size() && h.is_identity()) continue;
        if (stop == levels.size()) add_base_point_for(h);
        for (std::size_t l = lvl + 1; l <= stop && l < levels.size(); ++l) {
          levels[l].gens.push_back(h);
          grp.rebuild_orbit(levels[l]);
        }
        i = std::min(stop, levels.size() - 1) + 1;
        extended = true;
      }
    }
    if (!extended) --i;
  }
  return grp;
}

Permutation commutator(const Permutation& x, const Permutation& y) { return x.inverse() * y.inverse() * x * y; }

BSGSGroup sylow2_sym(int m) {
  if (m < 2 || (m & (m - 1)) != 0) throw InputError("degree " + std::to_string(m) + " is not a power of two >= 2");
  std::vector<Permutation> gens;
  // swap the two halves of the leading block of size 2^(k+1)
  for (int half = 1; half < m; half *= 2) {
    std::vector<int> images(static_cast<std::size_t>(m));
    std::iota(images.begin(), images.end(), 0);
    for (int x = 0; x < half; ++x) {
      images[static_cast<std::size_t>(x)] = x + half;
      images[static_cast<std::size_t>(x + half)] = x;
    }
    gens.emplace_back(std::move(images));
  }
  return schreier_sims(std::move(gens), m);
}

BSGSGroup subgroup_generated(const BSGSGroup& group, std::span<const Permutation> gens) {
  for (const auto& g : gens)
    if (!group.contains(g)) throw InputError("generator " + g.to_string() + " is not in the group");
  return schreier_sims(std::vector<Permutation>(gens.begin(), gens.end()), group.degree());
}

BSGSGroup normal_closure(const BSGSGroup& group, std::span<const Permutation> gens) {
  std::vector<Permutation> current(gens.begin(), gens.end());
  BSGSGroup h = schreier_sims(current, group.degree());
  for (std::size_t t = 0; t < current.size(); ++t) {
    for (const auto& g : group.generators()) {
      auto c = g.inverse() * current[t] * g;
      if (h.contains(c)) continue;
      current.push_back(std::move(c));
      h = schreier_sims(current, group.degree());
    }
  }
  return h;
}

BSGSGroup commutator_group(const BSGSGroup& a, const BSGSGroup& b) {
  if (a.degree() != b.degree()) throw InputError("subgroups of different degrees");
  std::vector<Permutation> seeds;
  for (const auto& x : a.generators())
    for (const auto& y : b.generators()) {
      auto c = commutator(x, y);
      if (!c.is_identity()) seeds.push_back(std::move(c));
    }
  std::vector<Permutation> both = a.generators();
  both.insert(both.end(), b.generators().begin(), b.generators().end());
  return normal_closure(schreier_sims(both, a.degree()), seeds);
}

// ---------------------------------------------------------------------------

PermGroup::PermGroup(BSGSGroup group) : group_(std::move(group)) {
  std::uint64_t n = group_.order();
  if (n > 1) {
    std::uint64_t p = 2;
    while (n % p != 0) ++p;
    while (n % p == 0) n /= p;
    prime_ = n == 1 ? static_cast<int>(p) : 0;
  }
}

PermGroup::Element PermGroup::power(const Element& a, long long k) const {
  Element base = k < 0 ? a.inverse() : a;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
  Element r = identity();
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

std::uint64_t PermGroup::element_order(const Element& a) const {
  std::uint64_t o = 1;
  std::vector<bool> seen(static_cast<std::size_t>(a.degree()), false);
  for (int s = 0; s < a.degree(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    std::uint64_t len = 0;
    for (int x = s; !seen[static_cast<std::size_t>(x)]; x = a(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      ++len;
    }
    o = std::lcm(o, len);
  }
  return o;
}

int PermGroup::order_exponent(const Subgroup& h) const {
  std::uint64_t n = h.order();
  int e = 0;
  if (prime_ == 0) {
    if (n == 1) return 0;
    throw InputError("group order is not a prime power");
  }
  while (n % static_cast<std::uint64_t>(prime_) == 0) {
    n /= static_cast<std::uint64_t>(prime_);
    ++e;
  }
  if (n != 1) throw InputError("subgroup order is not a power of the group prime");
  return e;
}

bool PermGroup::is_subgroup(const Subgroup& small, const Subgroup& big) const {
  for (const auto& g : small.generators())
    if (!big.contains(g)) return false;
  return true;
}

bool PermGroup::equal(const Subgroup& a, const Subgroup& b) const {
  return a.order() == b.order() && is_subgroup(a, b);
}

bool PermGroup::is_normal(const Subgroup& h, const Subgroup& within) const {
  for (const auto& x : h.generators())
    for (const auto& g : within.generators())
      if (!h.contains(g.inverse() * x * g)) return false;
  return true;
}

PermGroup::Subgroup PermGroup::join(const Subgroup& a, const Subgroup& b) const {
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return schreier_sims(std::move(gens), group_.degree());
}

bool PermGroup::is_abelian(const Subgroup& h) const {
  const auto& g = h.generators();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!(g[i] * g[j] == g[j] * g[i])) return false;
  return true;
}

}  // namespace derq
