#include "derq/fingerprint.hpp"

#include <algorithm>

#include "derq/series.hpp"

namespace derq {

namespace {

std::vector<int> exps_of(const PcGroup& g, const std::vector<PcSubgroup>& s) {
  std::vector<int> out;
  for (const auto& h : s) out.push_back(g.order_exponent(h));
  return out;
}

std::vector<int> abelian_invariants(const PcGroup& g) {
  const auto derived = g.commutator(g.whole(), g.whole());
  const int base = derived.order_exponent();
  // ranks[k] = log |G^{p^k} G' / G'|
  std::vector<int> ranks;
  std::vector<ExponentWord> gens = g.generators();
  while (true) {
    const int r = g.join(derived, g.subgroup(gens)).order_exponent() - base;
    ranks.push_back(r);
    if (r == 0) break;
    for (auto& x : gens) x = g.power(x, g.prime());
  }
  std::vector<int> inv;
  for (std::size_t k = 0; k + 1 < ranks.size(); ++k)
    for (int c = 0; c < ranks[k] - ranks[k + 1]; ++c) inv.push_back(static_cast<int>(k) + 1);
  std::sort(inv.rbegin(), inv.rend());
  return inv;
}

}  // namespace

std::vector<std::vector<std::uint64_t>> coset_order_histograms(const PcGroup& g, const WeightedBasis& basis) {
  std::vector<std::vector<std::uint64_t>> out;
  if (basis.layers() == 0 || g.order() > kFingerprintElementLimit) return out;
  const int p = g.prime();
  std::size_t cosets = 1;
  for (int k = 0; k < basis.dim(1); ++k) cosets *= static_cast<std::size_t>(p);
  out.assign(cosets, std::vector<std::uint64_t>(static_cast<std::size_t>(g.rank()) + 1, 0));
  ExponentWord x(g.rank());
  while (true) {
    std::size_t code = 0;
    for (int c : basis.coordinates(1, x)) code = code * static_cast<std::size_t>(p) + static_cast<std::size_t>(c);
    std::uint64_t ord = g.element_order(x);
    int k = 0;
    while (ord > 1) {
      ord /= static_cast<std::uint64_t>(p);
      ++k;
    }
    ++out[code][static_cast<std::size_t>(k)];
    int i = g.rank() - 1;
    while (i >= 0 && x[i] == p - 1) x.set(i--, 0);
    if (i < 0) break;
    x.set(i, x[i] + 1);
  }
  return out;
}

Fingerprint compute_fingerprint(const PcGroup& g) {
  const WeightedBasis basis(g);
  return compute_fingerprint(g, basis, coset_order_histograms(g, basis));
}

Fingerprint compute_fingerprint(const PcGroup& g, const WeightedBasis& basis,
                                const std::vector<std::vector<std::uint64_t>>& coset_orders) {
  Fingerprint f;
  f.p = g.prime();
  f.order_exp = g.rank();
  f.abelian_invariants = abelian_invariants(g);
  f.derived_exps = exps_of(g, derived_series(g));
  f.lcs_exps = exps_of(g, lower_central_series(g));
  for (int k = 1; k <= basis.layers() + 1; ++k) f.pseries_exps.push_back(basis.term(k).order_exponent());
  if (coset_orders.empty()) return f;

  for (std::size_t code = 0; code < coset_orders.size(); ++code) {
    const auto& h = coset_orders[code];
    for (std::size_t k = 0; k < h.size(); ++k)
      if (h[k] != 0) f.order_histogram[static_cast<int>(k)] += h[k];
    if (code != 0) f.coset_profile.push_back(h);
  }
  std::sort(f.coset_profile.begin(), f.coset_profile.end());

  // The layer-1 basis generates G, so Z(G) is its centralizer.
  const int n = g.rank();
  const int p = g.prime();
  std::vector<ExponentWord> gens;
  for (int idx = 0; idx < basis.dim(1); ++idx) gens.push_back(basis.element(idx));
  std::vector<ExponentWord> center, omega;
  ExponentWord x(n);
  while (true) {
    bool central = true;
    for (const auto& a : gens)
      if (g.multiply(x, a) != g.multiply(a, x)) {
        central = false;
        break;
      }
    if (central) {
      center.push_back(x);
      if (g.power(x, p).is_identity()) omega.push_back(x);
    }
    int i = n - 1;
    while (i >= 0 && x[i] == p - 1) x.set(i--, 0);
    if (i < 0) break;
    x.set(i, x[i] + 1);
  }
  f.center_exp = g.subgroup(center).order_exponent();
  f.omega_center_exp = g.subgroup(omega).order_exponent();
  return f;
}

nlohmann::json to_json(const Fingerprint& f) {
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [k, c] : f.order_histogram) hist[std::to_string(k)] = c;
  return {{"p", f.p},
          {"order_exp", f.order_exp},
          {"abelian_invariants", f.abelian_invariants},
          {"derived_exps", f.derived_exps},
          {"lcs_exps", f.lcs_exps},
          {"pseries_exps", f.pseries_exps},
          {"order_histogram", hist},
          {"center_exp", f.center_exp},
          {"omega_center_exp", f.omega_center_exp},
          {"coset_profile", f.coset_profile}};
}

Fingerprint fingerprint_from_json(const nlohmann::json& j) {
  try {
    Fingerprint f;
    f.p = j.at("p").get<int>();
    f.order_exp = j.at("order_exp").get<int>();
    f.abelian_invariants = j.at("abelian_invariants").get<std::vector<int>>();
    f.derived_exps = j.at("derived_exps").get<std::vector<int>>();
    f.lcs_exps = j.at("lcs_exps").get<std::vector<int>>();
    f.pseries_exps = j.at("pseries_exps").get<std::vector<int>>();
    for (const auto& [k, v] : j.at("order_histogram").items()) f.order_histogram[std::stoi(k)] = v.get<std::uint64_t>();
    f.center_exp = j.at("center_exp").get<int>();
    f.omega_center_exp = j.at("omega_center_exp").get<int>();
    f.coset_profile = j.at("coset_profile").get<std::vector<std::vector<std::uint64_t>>>();
    return f;
  } catch (const std::exception& e) {
    throw InputError(std::string("malformed fingerprint: ") + e.what());
  }
}

}  // namespace derq
