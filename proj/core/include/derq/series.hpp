#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "derq/errors.hpp"
#include "derq/group_engine.hpp"

namespace derq {

/// Shape of the chain G^(d) > [G^(d),G] > [G^(d),G,G] > ... ending at
/// G^(d+1) for a small derived quotient.
///   ch1: head quotient of order p, 2^d + 1 strict steps down to G^(d+1)
///   ch2: head quotient of order p^2, 2^d strict steps down to G^(d+1)
enum class ChainClass { ch1, ch2, neither };

std::string to_string(ChainClass c);
ChainClass chain_class_from_string(std::string_view s);

/// Summary of the derived and lower central series of a finite p-group.
/// Exponent sequences are log_p of the orders: derived_exps[d] = log|G^(d)|
/// (G^(0) = G) and lcs_exps[i-1] = log|gamma_i(G)| (gamma_1 = G); both end
/// with the trivial term.
struct SeriesReport {
  int p = 0;
  int order_exp = 0;
  std::vector<int> derived_exps;
  std::vector<int> lcs_exps;
  std::vector<int> small_ds;
  std::map<int, ChainClass> chain_classes;
  /// log_p |G^(d) / [G^(d), G]| for each small d.
  std::map<int, int> chain_heads;
  int nilpotency_class = 0;
  bool metabelian = true;
  std::map<std::string, bool> checks;

  friend bool operator==(const SeriesReport&, const SeriesReport&) = default;
};

nlohmann::json to_json(const SeriesReport& r);
SeriesReport series_report_from_json(const nlohmann::json& j);
std::string format_text(const SeriesReport& r);

enum class CheckStatus { pass, fail, precondition_failed };

struct CheckResult {
  CheckStatus status = CheckStatus::fail;
  std::string detail;
  std::map<std::string, int> measured;

  bool passed() const { return status == CheckStatus::pass; }
};

std::string to_string(CheckStatus s);

enum class BoundVariant { hall, mann, metabelian };

/// Lower bound for log_p |G| when G has derived length d + 1 (d >= 1):
///   hall: 2^d + d, mann: 2^d + 2d - 2, metabelian: 2^d + 3d - 6.
/// The metabelian bound is stated for p >= 5 and returned as an exponent.
int order_lower_bound(int d, BoundVariant variant);
BoundVariant bound_variant_from_string(std::string_view s);

// ---------------------------------------------------------------------------
// series over any SubgroupEngine

/// G = G^(0) >= G^(1) >= ... ; stops once two consecutive terms agree, so for
/// a p-group the last entry is the trivial subgroup.
template <SubgroupEngine G>
std::vector<typename G::Subgroup> derived_series(const G& g, const typename G::Subgroup& top) {
  std::vector<typename G::Subgroup> s{top};
  while (true) {
    auto next = g.commutator(s.back(), s.back());
    if (g.order_exponent(next) == g.order_exponent(s.back())) break;
    s.push_back(std::move(next));
  }
  return s;
}

template <SubgroupEngine G>
std::vector<typename G::Subgroup> derived_series(const G& g) {
  return derived_series(g, g.whole());
}

/// gamma_1 = top, gamma_{i+1} = [gamma_i, top].
template <SubgroupEngine G>
std::vector<typename G::Subgroup> lower_central_series(const G& g, const typename G::Subgroup& top) {
  std::vector<typename G::Subgroup> s{top};
  while (true) {
    auto next = g.commutator(s.back(), top);
    if (g.order_exponent(next) == g.order_exponent(s.back())) break;
    s.push_back(std::move(next));
  }
  return s;
}

template <SubgroupEngine G>
std::vector<typename G::Subgroup> lower_central_series(const G& g) {
  return lower_central_series(g, g.whole());
}

/// [A, B, ..., B] for 0..n copies of B (left-normed); n + 1 terms.
template <SubgroupEngine G>
std::vector<typename G::Subgroup> rc_chain(const G& g, const typename G::Subgroup& a, const typename G::Subgroup& b,
                                           int n) {
  std::vector<typename G::Subgroup> s{a};
  for (int k = 0; k < n; ++k) s.push_back(g.commutator(s.back(), b));
  return s;
}

/// H, [H,G], [H,G,G], ... (n + 1 terms).
template <SubgroupEngine G>
std::vector<typename G::Subgroup> rc_chain(const G& g, const typename G::Subgroup& h, int n) {
  return rc_chain(g, h, g.whole(), n);
}

/// Term gamma_i (1-based) of a computed lower central series; trivial past the end.
template <SubgroupEngine G>
typename G::Subgroup lcs_term(const G& g, const std::vector<typename G::Subgroup>& lcs, long long i) {
  if (i >= 1 && i <= static_cast<long long>(lcs.size())) return lcs[static_cast<std::size_t>(i - 1)];
  return g.trivial();
}

/// Frattini subgroup [K,K] K^p of a p-group K.
template <SubgroupEngine G>
typename G::Subgroup frattini(const G& g, const typename G::Subgroup& k) {
  std::vector<typename G::Element> powers;
  for (const auto& x : g.generators(k)) powers.push_back(g.power(x, g.prime()));
  return g.join(g.commutator(k, k), g.subgroup(powers));
}

/// upper / lower is elementary abelian (lower normal in upper assumed).
template <SubgroupEngine G>
bool is_elementary_abelian_section(const G& g, const typename G::Subgroup& upper, const typename G::Subgroup& lower) {
  const auto gens = g.generators(upper);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (!g.contains(lower, g.power(gens[i], g.prime()))) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!g.contains(lower, g.commutator(gens[i], gens[j]))) return false;
  }
  return true;
}

/// Detailed chain data behind chain_classify.
struct ChainAnalysis {
  ChainClass chain = ChainClass::neither;
  int head_exp = 0;                // log_p |G^(d) / [G^(d), G]|
  std::vector<int> chain_exps;     // log_p of [G^(d), G, ..., G], 0..2^d+1 copies
  bool head_elementary = false;
};

namespace detail {
inline long long pow2(int d) {
  if (d < 0 || d > 40) throw DomainError("derived index out of range");
  return 1LL << d;
}
}  // namespace detail

/// Classifies the small derived quotient G^(d)/G^(d+1). G^(d+1) is recomputed
/// directly as [G^(d), G^(d)] so the terminal comparison does not reuse the
/// commutator chain. InputError if d is not small.
template <SubgroupEngine G>
ChainAnalysis chain_analysis(const G& g, int d) {
  auto derived = derived_series(g);
  if (d < 0 || d + 1 >= static_cast<int>(derived.size()))
    throw InputError("G^(" + std::to_string(d + 1) + ") is trivial; no small quotient at d = " + std::to_string(d));
  const auto& top = derived[static_cast<std::size_t>(d)];
  const auto next = g.commutator(top, top);
  const long long len = detail::pow2(d);
  if (g.order_exponent(top) - g.order_exponent(next) != len + 1)
    throw InputError("derived quotient at d = " + std::to_string(d) + " is not small");

  ChainAnalysis a;
  const auto chain = rc_chain(g, top, static_cast<int>(len + 1));
  for (const auto& c : chain) a.chain_exps.push_back(g.order_exponent(c));
  a.head_exp = a.chain_exps[0] - a.chain_exps[1];
  a.head_elementary = is_elementary_abelian_section(g, top, chain[1]);

  auto strict_until = [&](long long steps) {
    for (long long k = 0; k < steps; ++k)
      if (a.chain_exps[static_cast<std::size_t>(k)] <= a.chain_exps[static_cast<std::size_t>(k + 1)]) return false;
    return true;
  };
  if (a.head_exp == 1 && strict_until(len + 1) && g.equal(chain[static_cast<std::size_t>(len + 1)], next))
    a.chain = ChainClass::ch1;
  else if (a.head_exp == 2 && strict_until(len) && g.equal(chain[static_cast<std::size_t>(len)], next))
    a.chain = ChainClass::ch2;
  return a;
}

template <SubgroupEngine G>
ChainClass chain_classify(const G& g, int d) {
  return chain_analysis(g, d).chain;
}

/// Hall: a non-abelian normal H <= gamma_i(G) has |H/H'| >= p^(i+1) and
/// |H| >= p^(i+2).
template <SubgroupEngine G>
CheckResult hall_check(const G& g, const typename G::Subgroup& h, int i) {
  CheckResult r;
  if (g.is_abelian(h)) return {CheckStatus::precondition_failed, "H is abelian", {}};
  if (!g.is_normal(h, g.whole())) return {CheckStatus::precondition_failed, "H is not normal in G", {}};
  const auto lcs = lower_central_series(g);
  if (i < 1 || !g.is_subgroup(h, lcs_term(g, lcs, i)))
    return {CheckStatus::precondition_failed, "H is not contained in gamma_" + std::to_string(i) + "(G)", {}};
  const int order = g.order_exponent(h);
  const int quotient = order - g.order_exponent(g.commutator(h, h));
  r.measured = {{"quotient_exp", quotient}, {"order_exp", order}, {"i", i}};
  const bool ok = quotient >= i + 1 && order >= i + 2;
  r.status = ok ? CheckStatus::pass : CheckStatus::fail;
  r.detail = "log|H/H'| = " + std::to_string(quotient) + ", log|H| = " + std::to_string(order);
  return r;
}

/// If K/H is cyclic then K' = [K, H]. Both inclusions are tested.
template <SubgroupEngine G>
CheckResult cyclic_quotient_commutator_check(const G& g, const typename G::Subgroup& k, const typename G::Subgroup& h) {
  if (!g.is_subgroup(h, k) || !g.is_normal(h, k)) return {CheckStatus::precondition_failed, "H is not normal in K", {}};
  const auto phi = g.join(frattini(g, k), h);
  const int top = g.order_exponent(k) - g.order_exponent(phi);
  if (top > 1) return {CheckStatus::precondition_failed, "K/H is not cyclic", {}};
  const auto derived = g.commutator(k, k);
  const auto kh = g.commutator(k, h);
  CheckResult r;
  r.measured = {{"derived_exp", g.order_exponent(derived)}, {"commutator_exp", g.order_exponent(kh)}};
  r.status = g.is_subgroup(derived, kh) && g.is_subgroup(kh, derived) ? CheckStatus::pass : CheckStatus::fail;
  r.detail = "log|K'| = " + std::to_string(r.measured["derived_exp"]) + ", log|[K,H]| = " +
             std::to_string(r.measured["commutator_exp"]);
  return r;
}

/// [A, gamma_i(B)] <= [A, B, ..., B] (i copies of B) for normal A, B.
template <SubgroupEngine G>
CheckResult inclusion1_check(const G& g, const typename G::Subgroup& a, const typename G::Subgroup& b, int i) {
  if (i < 1) return {CheckStatus::precondition_failed, "i must be >= 1", {}};
  if (!g.is_normal(a, g.whole()) || !g.is_normal(b, g.whole()))
    return {CheckStatus::precondition_failed, "A and B must be normal in G", {}};
  const auto lcs_b = lower_central_series(g, b);
  const auto lhs = g.commutator(a, lcs_term(g, lcs_b, i));
  const auto rhs = rc_chain(g, a, b, i).back();
  CheckResult r;
  r.measured = {{"lhs_exp", g.order_exponent(lhs)}, {"rhs_exp", g.order_exponent(rhs)}};
  r.status = g.is_subgroup(lhs, rhs) ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

/// For G of maximal class: [gamma_2, gamma_3] = gamma_5.
template <SubgroupEngine G>
CheckResult degree_of_commutativity_zero(const G& g) {
  const auto whole = g.whole();
  if (g.is_abelian(whole)) return {CheckStatus::precondition_failed, "G is abelian", {}};
  const auto lcs = lower_central_series(g);
  const int cls = static_cast<int>(lcs.size()) - 1;
  if (g.order_exponent(whole) != cls + 1) return {CheckStatus::precondition_failed, "G is not of maximal class", {}};
  const auto lhs = g.commutator(lcs_term(g, lcs, 2), lcs_term(g, lcs, 3));
  const auto rhs = lcs_term(g, lcs, 5);
  CheckResult r;
  r.measured = {{"lhs_exp", g.order_exponent(lhs)}, {"rhs_exp", g.order_exponent(rhs)}};
  r.status = g.equal(lhs, rhs) ? CheckStatus::pass : CheckStatus::fail;
  return r;
}

/// Full scan: both series, every small derived quotient with its chain
/// class, and the named structural checks.
template <SubgroupEngine G>
SeriesReport small_quotient_scan(const G& g) {
  if (g.prime() == 0) throw InputError("group is not a p-group");
  SeriesReport r;
  r.p = g.prime();
  const auto whole = g.whole();
  r.order_exp = g.order_exponent(whole);
  const auto derived = derived_series(g);
  const auto lcs = lower_central_series(g);
  for (const auto& s : derived) r.derived_exps.push_back(g.order_exponent(s));
  for (const auto& s : lcs) r.lcs_exps.push_back(g.order_exponent(s));
  r.nilpotency_class = static_cast<int>(lcs.size()) - 1;
  r.metabelian = derived.size() <= 3;

  bool within = true, hall = true;
  for (std::size_t d = 0; d < derived.size(); ++d) {
    within = within && g.is_subgroup(derived[d], lcs_term(g, lcs, detail::pow2(static_cast<int>(d))));
    if (d + 1 < derived.size()) {
      const long long drop = r.derived_exps[d] - r.derived_exps[d + 1];
      const bool next_nontrivial = r.derived_exps[d + 1] > 0;
      if (next_nontrivial) hall = hall && drop >= detail::pow2(static_cast<int>(d)) + 1;
      if (next_nontrivial && drop == detail::pow2(static_cast<int>(d)) + 1) r.small_ds.push_back(static_cast<int>(d));
    }
  }

  bool classified = true, elementary = true, d_ge_1_ch1 = true;
  for (int d : r.small_ds) {
    const auto a = chain_analysis(g, d);
    r.chain_classes[d] = a.chain;
    r.chain_heads[d] = a.head_exp;
    classified = classified && a.chain != ChainClass::neither;
    if (a.head_exp == 2) elementary = elementary && a.head_elementary;
    if (d >= 1) d_ge_1_ch1 = d_ge_1_ch1 && a.chain == ChainClass::ch1 && a.head_exp == 1;
  }
  bool pattern = true;
  if (r.small_ds.size() == 2) {
    const int d = r.small_ds[0];
    pattern = r.small_ds[1] == d + 1 && r.chain_classes[d] == ChainClass::ch2 &&
              r.chain_classes[d + 1] == ChainClass::ch1;
  }

  r.checks["derived_within_lcs"] = within;
  r.checks["hall_quotient_bound"] = hall;
  r.checks["at_most_two_small"] = r.small_ds.size() <= 2;
  r.checks["small_quotients_classified"] = classified;
  r.checks["ch2_head_elementary"] = elementary;
  r.checks["two_small_pattern"] = pattern;
  r.checks["small_d_ge_1_is_ch1"] = d_ge_1_ch1;
  return r;
}

}  // namespace derq
