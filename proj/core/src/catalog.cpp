#include "derq/catalog.hpp"

#include <numeric>

#include "derq/consistency.hpp"
#include "derq/modp.hpp"
#include "derq/pc_group.hpp"

namespace derq {

CatalogEntry make_catalog_entry(const PcPresentation& pres) {
  const PcGroup g(pres);
  CatalogEntry e;
  e.presentation = pres;
  e.fingerprint = compute_fingerprint(g);
  e.report = small_quotient_scan(g);
  e.flags.metabelian = e.report.metabelian;
  e.flags.two_small = e.report.small_ds.size() == 2;
  e.flags.nilpotency_class = e.report.nilpotency_class;
  e.flags.maximal_class = e.report.order_exp >= 2 && e.report.nilpotency_class == e.report.order_exp - 1;
  e.flags.second_derived_exp = e.report.derived_exps.size() > 2 ? e.report.derived_exps[2] : 0;
  return e;
}

nlohmann::json to_json(const CatalogEntry& e) {
  return {{"presentation", format_presentation(e.presentation)},
          {"fingerprint", to_json(e.fingerprint)},
          {"flags",
           {{"metabelian", e.flags.metabelian},
            {"two_small", e.flags.two_small},
            {"maximal_class", e.flags.maximal_class},
            {"class", e.flags.nilpotency_class},
            {"second_derived_exp", e.flags.second_derived_exp}}},
          {"report", to_json(e.report)}};
}

CatalogEntry catalog_entry_from_json(const nlohmann::json& j) {
  try {
    CatalogEntry e;
    e.presentation = parse_presentation(j.at("presentation").get<std::string>());
    e.fingerprint = fingerprint_from_json(j.at("fingerprint"));
    const auto& f = j.at("flags");
    e.flags.metabelian = f.at("metabelian").get<bool>();
    e.flags.two_small = f.at("two_small").get<bool>();
    e.flags.maximal_class = f.at("maximal_class").get<bool>();
    e.flags.nilpotency_class = f.at("class").get<int>();
    e.flags.second_derived_exp = f.at("second_derived_exp").get<int>();
    e.report = series_report_from_json(j.at("report"));
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed catalog entry: ") + ex.what());
  }
}

nlohmann::json catalog_to_json(const std::vector<CatalogEntry>& entries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) arr.push_back(to_json(e));
  return arr;
}

std::vector<CatalogEntry> catalog_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("catalog must be a JSON array");
  std::vector<CatalogEntry> out;
  for (const auto& e : j) out.push_back(catalog_entry_from_json(e));
  return out;
}

nlohmann::json catalog_digest(const std::vector<CatalogEntry>& entries) {
  std::map<std::string, int> counts;
  for (const auto& e : entries) {
    const std::string key = std::string("metabelian=") + (e.flags.metabelian ? "true" : "false") +
                            ",two_small=" + (e.flags.two_small ? "true" : "false") +
                            ",class=" + std::to_string(e.flags.nilpotency_class);
    ++counts[key];
  }
  nlohmann::json j;
  j["total"] = entries.size();
  j["p"] = entries.empty() ? 0 : entries.front().presentation.prime();
  j["counts"] = counts;
  return j;
}

int count_formula(long long p) {
  if (p < 5 || !modp::is_prime(p)) throw DomainError("the count formula is stated for primes p >= 5");
  if (p > 1'000'000'000LL) throw DomainError("p too large");
  const long long q = p - 1;
  return static_cast<int>(p + 4 + std::gcd(4LL, q) + std::gcd(5LL, q) + std::gcd(6LL, q));
}

bool TheoremReport::passed() const {
  return violations.empty() && expected_two_small.has_value() && *expected_two_small == two_small;
}

TheoremReport verify_catalog(int p, std::vector<CatalogEntry> catalog) {
  TheoremReport r;
  r.p = p;
  r.classes = static_cast<int>(catalog.size());
  if (p == 3)
    r.expected_two_small = 0;
  else if (p >= 5 && modp::is_prime(p))
    r.expected_two_small = count_formula(p);

  const std::vector<int> lcs_profile{6, 4, 3, 2, 1, 0};
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    const auto& e = catalog[k];
    const std::string tag = "entry " + std::to_string(k) + ": ";
    auto fail = [&](const std::string& what) { r.violations.push_back(tag + what); };
    if (e.flags.metabelian) ++r.metabelian;
    if (e.flags.two_small) ++r.two_small;
    if (e.presentation.prime() != p || e.presentation.rank() != 6) fail("not of order p^6");
    if (!is_consistent(e.presentation)) fail("presentation is inconsistent");
    if (e.report.lcs_exps != lcs_profile) fail("lower central exponents differ from [6,4,3,2,1,0]");
    if (e.flags.two_small == e.flags.metabelian) fail("two small quotients iff non-metabelian fails");
    if (!e.flags.two_small) continue;

    if (e.report.order_exp != 6) fail("order is not p^6");
    if (e.flags.second_derived_exp != 1) fail("|G''| != p");
    if (e.flags.nilpotency_class != 5) fail("class is not 5");
    if (!e.flags.maximal_class) fail("not of maximal class");
    if (e.report.small_ds != std::vector<int>{0, 1}) fail("small quotients are not at d = 0, 1");
    try {
      const PcGroup g(e.presentation);
      if (chain_classify(g, 0) != ChainClass::ch2) fail("d = 0 is not ch2");
      if (chain_classify(g, 1) != ChainClass::ch1) fail("d = 1 is not ch1");
      if (!degree_of_commutativity_zero(g).passed()) fail("[gamma_2, gamma_3] != gamma_5");
    } catch (const std::exception& ex) {
      fail(ex.what());
    }
  }
  r.catalog = std::move(catalog);
  return r;
}

TheoremReport verify_theorem_main(int p, const MaxclassOptions& options) {
  auto result = enumerate_maxclass(p, 6, options);
  std::vector<CatalogEntry> catalog;
  for (const auto& pres : result.classes) catalog.push_back(make_catalog_entry(pres));
  auto report = verify_catalog(p, std::move(catalog));
  report.layers = result.layers;
  return report;
}

nlohmann::json to_json(const TheoremReport& r) {
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : r.layers)
    layers.push_back({{"rank", l.rank},
                      {"parents", l.tasks},
                      {"solutions", l.solutions},
                      {"orbit_reps", l.orbit_reps},
                      {"classes", l.classes}});
  return {{"p", r.p},
          {"classes", r.classes},
          {"metabelian", r.metabelian},
          {"two_small", r.two_small},
          {"expected_two_small", r.expected_two_small ? nlohmann::json(*r.expected_two_small) : nlohmann::json()},
          {"violations", r.violations},
          {"layers", layers},
          {"pass", r.passed()}};
}

}  // namespace derq
