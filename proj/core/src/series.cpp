#include "derq/series.hpp"

#include <sstream>

namespace derq {

std::string to_string(ChainClass c) {
  switch (c) {
    case ChainClass::ch1: return "ch1";
    case ChainClass::ch2: return "ch2";
    case ChainClass::neither: return "neither";
  }
  return "neither";
}

ChainClass chain_class_from_string(std::string_view s) {
  if (s == "ch1") return ChainClass::ch1;
  if (s == "ch2") return ChainClass::ch2;
  if (s == "neither") return ChainClass::neither;
  throw InputError("unknown chain class '" + std::string(s) + "'");
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::precondition_failed: return "precondition_failed";
  }
  return "fail";
}

nlohmann::json to_json(const SeriesReport& r) {
  nlohmann::json j;
  j["p"] = r.p;
  j["order_exp"] = r.order_exp;
  j["derived_exps"] = r.derived_exps;
  j["lcs_exps"] = r.lcs_exps;
  j["small_ds"] = r.small_ds;
  nlohmann::json classes = nlohmann::json::object(), heads = nlohmann::json::object();
  for (const auto& [d, c] : r.chain_classes) classes[std::to_string(d)] = to_string(c);
  for (const auto& [d, h] : r.chain_heads) heads[std::to_string(d)] = h;
  j["chain_classes"] = classes;
  j["chain_heads"] = heads;
  j["class"] = r.nilpotency_class;
  j["metabelian"] = r.metabelian;
  j["checks"] = r.checks;
  return j;
}

SeriesReport series_report_from_json(const nlohmann::json& j) {
  try {
    SeriesReport r;
    r.p = j.at("p").get<int>();
    r.order_exp = j.at("order_exp").get<int>();
    r.derived_exps = j.at("derived_exps").get<std::vector<int>>();
    r.lcs_exps = j.at("lcs_exps").get<std::vector<int>>();
    r.small_ds = j.at("small_ds").get<std::vector<int>>();
    for (const auto& [k, v] : j.at("chain_classes").items())
      r.chain_classes[std::stoi(k)] = chain_class_from_string(v.get<std::string>());
    if (j.contains("chain_heads"))
      for (const auto& [k, v] : j.at("chain_heads").items()) r.chain_heads[std::stoi(k)] = v.get<int>();
    r.nilpotency_class = j.at("class").get<int>();
    r.metabelian = j.at("metabelian").get<bool>();
    r.checks = j.at("checks").get<std::map<std::string, bool>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed series report: ") + e.what());
  } catch (const std::logic_error& e) {
    throw InputError(std::string("malformed series report: ") + e.what());
  }
}

namespace {
std::string join(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + "]";
}
}  // namespace

std::string format_text(const SeriesReport& r) {
  std::ostringstream out;
  out << "p: " << r.p << "\n";
  out << "order: p^" << r.order_exp << "\n";
  out << "derived exponents: " << join(r.derived_exps) << "\n";
  out << "lower central exponents: " << join(r.lcs_exps) << "\n";
  out << "class: " << r.nilpotency_class << "\n";
  out << "metabelian: " << (r.metabelian ? "yes" : "no") << "\n";
  out << "small quotients: " << join(r.small_ds) << "\n";
  for (const auto& [d, c] : r.chain_classes) {
    auto head = r.chain_heads.find(d);
    out << "  d=" << d << ": " << to_string(c);
    if (head != r.chain_heads.end()) out << " (head p^" << head->second << ")";
    out << "\n";
  }
  out << "checks:\n";
  for (const auto& [name, ok] : r.checks) out << "  " << name << ": " << (ok ? "pass" : "fail") << "\n";
  return out.str();
}

int order_lower_bound(int d, BoundVariant variant) {
  if (d < 1 || d > 30) throw DomainError("d must satisfy 1 <= d <= 30");
  const int base = 1 << d;
  switch (variant) {
    case BoundVariant::hall: return base + d;
    case BoundVariant::mann: return base + 2 * d - 2;
    case BoundVariant::metabelian: return base + 3 * d - 6;
  }
  return base + d;
}

BoundVariant bound_variant_from_string(std::string_view s) {
  if (s == "hall") return BoundVariant::hall;
  if (s == "mann") return BoundVariant::mann;
  if (s == "metabelian") return BoundVariant::metabelian;
  throw InputError("unknown bound variant '" + std::string(s) + "' (expected hall, mann or metabelian)");
}

}  // namespace derq
