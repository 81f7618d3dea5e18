#include "derq/pc_group.hpp"

#include <algorithm>
#include <string>

#include "derq/modp.hpp"

namespace derq {

namespace {

std::vector<Letter> letters_of(const ExponentWord& w) {
  std::vector<Letter> out;
  for (int k = 0; k < w.rank(); ++k)
    if (w[k] != 0) out.push_back({k, w[k]});
  return out;
}

}  // namespace

PcGroup::PcGroup(PcPresentation pres) : pres_(std::move(pres)) {
  const int n = rank();
  power_letters_.resize(static_cast<std::size_t>(n));
  comm_letters_.resize(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    power_letters_[static_cast<std::size_t>(i)] = letters_of(pres_.power(i));
    for (int j = i + 1; j < n; ++j)
      comm_letters_[static_cast<std::size_t>(j * n + i)] = letters_of(pres_.commutator(j, i));
  }
}

void PcGroup::check_element(const Element& u) const {
  if (u.rank() != rank())
    throw InputError("element of rank " + std::to_string(u.rank()) + " used in a group of rank " +
                     std::to_string(rank()));
}

PcGroup::Element PcGroup::generator(int i) const {
  if (i < 0 || i >= rank()) throw InputError("generator index out of range");
  return Element::generator(rank(), i);
}

std::vector<PcGroup::Element> PcGroup::generators() const {
  std::vector<Element> gens;
  for (int i = 0; i < rank(); ++i) gens.push_back(generator(i));
  return gens;
}

void PcGroup::collect(Element& e, int gen, int count) const {
  if (count <= 0) return;
  const int n = rank();
  const int p = prime();
  thread_local std::vector<Letter> stack;
  stack.clear();
  stack.push_back({gen, count});
  std::uint64_t steps = 0;
  Letter suffix[kMaxRank];

  auto push_reversed = [](const std::vector<Letter>& word) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) stack.push_back(*it);
  };

  while (!stack.empty()) {
    const int g = stack.back().gen;
    if (--stack.back().exp == 0) stack.pop_back();
    if (++steps > kStepCap) throw InconsistentPresentation("collection exceeded step cap");

    int last = n - 1;
    while (last > g && e[last] == 0) --last;
    if (last <= g) {
      if (e[g] + 1 == p) {
        e.set(g, 0);
        push_reversed(power_letters(g));
      } else {
        e.set(g, e[g] + 1);
      }
      continue;
    }
    // e = prefix * a_g^e_g * suffix; suffix * a_g = a_g * suffix^{a_g}
    int ns = 0;
    for (int j = g + 1; j <= last; ++j) {
      if (e[j] != 0) {
        suffix[ns++] = {j, e[j]};
        e.set(j, 0);
      }
    }
    const bool overflow = e[g] + 1 == p;
    e.set(g, overflow ? 0 : e[g] + 1);
    for (int k = ns - 1; k >= 0; --k) {
      const int j = suffix[k].gen;
      const auto& tail = comm_letters(j, g);
      if (tail.empty()) {
        stack.push_back(suffix[k]);
      } else {
        for (int c = 0; c < suffix[k].exp; ++c) {
          push_reversed(tail);
          stack.push_back({j, 1});
        }
      }
    }
    if (overflow) push_reversed(power_letters(g));
  }
}

PcGroup::Element PcGroup::normalize(std::span<const Letter> word) const {
  Element e = identity();
  for (const auto& l : word) {
    if (l.gen < 0 || l.gen >= rank())
      throw InputError("generator index " + std::to_string(l.gen + 1) + " out of range");
    if (l.exp >= 0 && l.exp < prime()) {
      collect(e, l.gen, l.exp);
    } else {
      const Element f = power(generator(l.gen), l.exp);
      for (int k = 0; k < rank(); ++k) collect(e, k, f[k]);
    }
  }
  return e;
}

PcGroup::Element PcGroup::normalize_by_rewriting(std::span<const Letter> word) const {
  const int p = prime();
  std::vector<int> w;
  for (const auto& l : word) {
    if (l.gen < 0 || l.gen >= rank())
      throw InputError("generator index " + std::to_string(l.gen + 1) + " out of range");
    if (l.exp >= 0) {
      w.insert(w.end(), static_cast<std::size_t>(l.exp), l.gen);
    } else {
      // a^-k written through the normal form of a^-1
      const Element inv = inverse(generator(l.gen));
      for (int c = 0; c < -l.exp; ++c)
        for (int k = 0; k < rank(); ++k) w.insert(w.end(), static_cast<std::size_t>(inv[k]), k);
    }
  }
  auto expand = [](const std::vector<Letter>& tail) {
    std::vector<int> out;
    for (const auto& t : tail) out.insert(out.end(), static_cast<std::size_t>(t.exp), t.gen);
    return out;
  };

  std::uint64_t steps = 0;
  std::size_t k = 0;
  // w[0..k] is sorted and free of p-fold runs
  while (k + 1 < w.size()) {
    if (++steps > kStepCap) throw InconsistentPresentation("rewriting exceeded step cap");
    const int a = w[k], b = w[k + 1];
    if (a > b) {
      // a_j a_i -> a_i a_j [a_j, a_i]
      auto tail = expand(comm_letters(a, b));
      w[k] = b;
      w[k + 1] = a;
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(k + 2), tail.begin(), tail.end());
      k = k > 0 ? k - 1 : 0;
      continue;
    }
    std::size_t start = k + 1;
    while (start > 0 && w[start - 1] == b && k + 2 - start < static_cast<std::size_t>(p)) --start;
    if (a == b && k + 2 - start == static_cast<std::size_t>(p)) {
      auto tail = expand(power_letters(b));
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(start), w.begin() + static_cast<std::ptrdiff_t>(k + 2));
      w.insert(w.begin() + static_cast<std::ptrdiff_t>(start), tail.begin(), tail.end());
      k = start > 0 ? start - 1 : 0;
      continue;
    }
    ++k;
  }
  Element e = identity();
  std::vector<int> counts(static_cast<std::size_t>(rank()), 0);
  for (int g : w) ++counts[static_cast<std::size_t>(g)];
  for (int g = 0; g < rank(); ++g) e.set(g, counts[static_cast<std::size_t>(g)]);
  return e;
}

PcGroup::Element PcGroup::multiply(const Element& u, const Element& v) const {
  check_element(u);
  check_element(v);
  Element e = u;
  for (int k = 0; k < rank(); ++k)
    if (v[k] != 0) collect(e, k, v[k]);
  return e;
}

PcGroup::Element PcGroup::inverse(const Element& u) const {
  check_element(u);
  Element w = u;
  Element x = identity();
  for (int i = 0; i < rank(); ++i) {
    const int c = w[i];
    if (c == 0) continue;
    collect(w, i, prime() - c);
    collect(x, i, prime() - c);
  }
  return x;
}

PcGroup::Element PcGroup::power(const Element& u, long long k) const {
  check_element(u);
  Element base = k < 0 ? inverse(u) : u;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-(k + 1)) + 1 : static_cast<unsigned long long>(k);
  Element result = identity();
  while (e > 0) {
    if (e & 1) result = multiply(result, base);
    e >>= 1;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

PcGroup::Element PcGroup::commutator(const Element& u, const Element& v) const {
  return multiply(inverse(multiply(v, u)), multiply(u, v));
}

PcGroup::Element PcGroup::conjugate(const Element& x, const Element& g) const {
  return multiply(inverse(g), multiply(x, g));
}

std::uint64_t PcGroup::element_order(const Element& u) const {
  check_element(u);
  std::uint64_t o = 1;
  Element x = u;
  while (!x.is_identity()) {
    x = power(x, prime());
    o *= static_cast<std::uint64_t>(prime());
  }
  return o;
}

// ---------------------------------------------------------------------------
// subgroups

PcSubgroup PcGroup::whole() const {
  PcSubgroup s;
  s.igs_ = generators();
  return s;
}

PcGroup::Element PcGroup::sift(const Subgroup& h, Element g) const {
  check_element(g);
  for (const auto& u : h.igs_) {
    const int d = u.depth();
    const int c = g[d];
    if (c == 0) continue;
    if (g.depth() < d) break;
    g = multiply(power(u, -c), g);
  }
  return g;
}

std::vector<PcGroup::Element> PcGroup::slots_of(const Subgroup& h) const {
  std::vector<Element> slots(static_cast<std::size_t>(rank()));
  for (const auto& u : h.igs_) slots[static_cast<std::size_t>(u.depth())] = u;
  return slots;
}

PcSubgroup PcGroup::from_slots(const std::vector<Element>& slots) {
  PcSubgroup s;
  for (const auto& u : slots)
    if (u.rank() != 0 && !u.is_identity()) s.igs_.push_back(u);
  return s;
}

void PcGroup::close(std::vector<Element>& slots, std::vector<Element> queue) const {
  auto occupied = [&](int d) { return slots[static_cast<std::size_t>(d)].rank() != 0; };
  while (!queue.empty()) {
    Element g = std::move(queue.back());
    queue.pop_back();
    while (!g.is_identity()) {
      const int d = g.depth();
      if (!occupied(d)) break;
      g = multiply(power(slots[static_cast<std::size_t>(d)], -g[d]), g);
    }
    if (g.is_identity()) continue;
    const int d = g.depth();
    g = power(g, modp::inverse(g[d], prime()));
    queue.push_back(power(g, prime()));
    for (int k = 0; k < rank(); ++k)
      if (occupied(k)) queue.push_back(commutator(g, slots[static_cast<std::size_t>(k)]));
    slots[static_cast<std::size_t>(d)] = g;
  }
}

PcSubgroup PcGroup::subgroup(std::span<const Element> gens) const {
  std::vector<Element> slots(static_cast<std::size_t>(rank()));
  for (const auto& g : gens) check_element(g);
  close(slots, std::vector<Element>(gens.begin(), gens.end()));
  return from_slots(slots);
}

bool PcGroup::is_subgroup(const Subgroup& small, const Subgroup& big) const {
  if (small.order_exponent() > big.order_exponent()) return false;
  return std::all_of(small.igs_.begin(), small.igs_.end(), [&](const Element& g) { return contains(big, g); });
}

bool PcGroup::equal(const Subgroup& a, const Subgroup& b) const {
  return a.order_exponent() == b.order_exponent() && is_subgroup(a, b);
}

bool PcGroup::is_normal(const Subgroup& h, const Subgroup& within) const {
  for (const auto& x : h.igs_)
    for (const auto& g : within.igs_)
      if (!contains(h, conjugate(x, g))) return false;
  return true;
}

PcSubgroup PcGroup::join(const Subgroup& a, const Subgroup& b) const {
  auto slots = slots_of(a);
  close(slots, b.igs_);
  return from_slots(slots);
}

PcSubgroup PcGroup::normal_closure(const Subgroup& within, std::span<const Element> seeds) const {
  std::vector<Element> slots(static_cast<std::size_t>(rank()));
  close(slots, std::vector<Element>(seeds.begin(), seeds.end()));
  for (bool changed = true; changed;) {
    changed = false;
    const auto current = from_slots(slots);
    for (const auto& x : current.igs_) {
      for (const auto& g : within.igs_) {
        auto c = commutator(x, g);
        if (contains(from_slots(slots), c)) continue;
        close(slots, {c});
        changed = true;
      }
    }
  }
  return from_slots(slots);
}

PcSubgroup PcGroup::commutator(const Subgroup& a, const Subgroup& b) const {
  std::vector<Element> seeds;
  for (const auto& x : a.igs_)
    for (const auto& y : b.igs_) {
      auto c = commutator(x, y);
      if (!c.is_identity()) seeds.push_back(c);
    }
  if (seeds.empty()) return trivial();
  return normal_closure(join(a, b), seeds);
}

bool PcGroup::is_abelian(const Subgroup& h) const {
  for (std::size_t i = 0; i < h.igs_.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!commutator(h.igs_[i], h.igs_[j]).is_identity()) return false;
  return true;
}

}  // namespace derq
