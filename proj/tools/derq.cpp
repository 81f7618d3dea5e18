// derq: command-line front end for the pc-group, permutation-group, series
// and enumeration modules.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "derq/catalog.hpp"
#include "derq/consistency.hpp"
#include "derq/isomorphism.hpp"
#include "derq/maxclass.hpp"
#include "derq/modp.hpp"
#include "derq/pc_group.hpp"
#include "derq/perm_group.hpp"
#include "derq/presentation.hpp"
#include "derq/series.hpp"

namespace {

using namespace derq;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;

constexpr double kDefaultBudgetSeconds = 1800;

struct RunConfig {
  std::vector<std::string> inputs;
  int p = 0;
  int d = 0;
  int sylow2 = 0;
  std::string perm;
  int degree = 0;
  std::string variant = "hall";
  int jobs = 1;
  std::uint64_t seed = 1;
  double budget_seconds = 0;  // 0: take DERQ_BUDGET_SECONDS or the default
  std::string out;
  std::string format;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double budget(const RunConfig& cfg) {
  if (cfg.budget_seconds > 0) return cfg.budget_seconds;
  if (const char* env = std::getenv("DERQ_BUDGET_SECONDS")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || v <= 0) throw UsageError("DERQ_BUDGET_SECONDS must be a positive number");
    return v;
  }
  return kDefaultBudgetSeconds;
}

std::string format_of(const RunConfig& cfg, const char* fallback) { return cfg.format.empty() ? fallback : cfg.format; }

void require_prime(int p) {
  if (!modp::is_prime(p)) throw InputError("--p must be a prime, got " + std::to_string(p));
}

// Writes to --out when given, stdout otherwise.
void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw InputError("cannot write '" + cfg.out + "'");
  f << text;
}

MaxclassOptions enumeration_options(const RunConfig& cfg) {
  MaxclassOptions o;
  o.jobs = cfg.jobs;
  o.seed = cfg.seed;
  o.budget_seconds = budget(cfg);
  o.log = [](const std::string& s) { std::cerr << s << '\n'; };
  return o;
}

int cmd_check(const RunConfig& cfg) {
  const auto pres = read_presentation_file(cfg.inputs.at(0));
  const auto failures = consistency_check(pres);
  if (failures.empty()) {
    std::cout << "consistent: order " << pres.prime() << "^" << pres.rank() << '\n';
    return kExitPass;
  }
  for (const auto& t : failures) {
    std::cout << "FAIL " << t.name() << ": ";
    if (t.diverged)
      std::cout << "collection diverged\n";
    else
      std::cout << t.lhs.to_string() << " != " << t.rhs.to_string() << '\n';
  }
  std::cout << failures.size() << " overlap test(s) failed\n";
  return kExitFail;
}

std::string render(const SeriesReport& r, const std::string& format) {
  return format == "text" ? format_text(r) : to_json(r).dump(2) + "\n";
}

std::vector<Permutation> parse_perm_list(const std::string& text, int degree) {
  std::vector<Permutation> gens;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (item.find_first_not_of(" \t") != std::string::npos) gens.push_back(Permutation::parse(item, degree));
  if (gens.empty()) throw InputError("--perm needs at least one generator");
  int n = degree;
  for (const auto& g : gens) n = std::max(n, g.degree());
  for (auto& g : gens)
    if (g.degree() < n) g = Permutation::parse(g.to_string(), n);
  return gens;
}

int cmd_scan(const RunConfig& cfg) {
  const int sources = static_cast<int>(!cfg.inputs.empty()) + static_cast<int>(cfg.sylow2 != 0) +
                      static_cast<int>(!cfg.perm.empty());
  if (sources != 1) throw UsageError("scan needs exactly one of FILE, --sylow2 M, --perm GENS");
  SeriesReport r;
  if (!cfg.inputs.empty()) {
    const auto pres = read_presentation_file(cfg.inputs[0]);
    if (!is_consistent(pres)) throw InputError("presentation is inconsistent; run 'derq check'");
    r = small_quotient_scan(PcGroup(pres));
  } else {
    const auto bsgs = cfg.sylow2 != 0 ? sylow2_sym(cfg.sylow2) : schreier_sims(parse_perm_list(cfg.perm, cfg.degree));
    const PermGroup g(bsgs);
    r = small_quotient_scan(g);
  }
  emit(cfg, render(r, format_of(cfg, "json")));
  return kExitPass;
}

int cmd_sylow2(const RunConfig& cfg) {
  const auto bsgs = sylow2_sym(cfg.sylow2);
  const PermGroup g(bsgs);
  nlohmann::json j;
  j["degree"] = bsgs.degree();
  j["order_exp"] = g.order_exponent(g.whole());
  std::vector<std::string> gens;
  for (const auto& x : bsgs.generators()) gens.push_back(x.to_string());
  j["generators"] = gens;
  std::vector<int> base;
  for (int b : bsgs.base()) base.push_back(b + 1);
  j["base"] = base;
  if (format_of(cfg, "json") == "text") {
    std::ostringstream out;
    out << "Sylow 2-subgroup of Sym(" << bsgs.degree() << "): order 2^" << j["order_exp"].get<int>() << '\n';
    for (const auto& s : gens) out << "  " << s << '\n';
    emit(cfg, out.str());
  } else {
    emit(cfg, j.dump(2) + "\n");
  }
  return kExitPass;
}

int cmd_verify(const RunConfig& cfg) {
  require_prime(cfg.p);
  const auto report = verify_theorem_main(cfg.p, enumeration_options(cfg));
  if (format_of(cfg, "text") == "json") {
    emit(cfg, to_json(report).dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "p = " << report.p << ": " << report.classes << " maximal-class groups of order p^6\n";
    out << report.two_small << " two-small classes";
    if (report.expected_two_small) out << " (expected " << *report.expected_two_small << ")";
    out << '\n';
    for (const auto& v : report.violations) out << "violation: " << v << '\n';
    out << (report.passed() ? "PASS" : "FAIL") << '\n';
    emit(cfg, out.str());
  }
  return report.passed() ? kExitPass : kExitFail;
}

int cmd_enumerate(const RunConfig& cfg) {
  require_prime(cfg.p);
  if (cfg.out.empty()) throw UsageError("enumerate needs --out PATH");
  const auto result = enumerate_maxclass(cfg.p, 6, enumeration_options(cfg));
  std::vector<CatalogEntry> catalog;
  for (const auto& pres : result.classes) catalog.push_back(make_catalog_entry(pres));
  emit(cfg, catalog_to_json(catalog).dump(2) + "\n");
  const auto digest = catalog_digest(catalog);
  RunConfig digest_cfg = cfg;
  digest_cfg.out = cfg.out + ".digest.json";
  emit(digest_cfg, digest.dump(2) + "\n");
  std::cout << digest.dump(2) << '\n';
  return kExitPass;
}

int cmd_count(const RunConfig& cfg) {
  std::cout << count_formula(cfg.p) << '\n';
  return kExitPass;
}

int cmd_bounds(const RunConfig& cfg) {
  std::cout << order_lower_bound(cfg.d, bound_variant_from_string(cfg.variant)) << '\n';
  return kExitPass;
}

int cmd_iso(const RunConfig& cfg) {
  const auto a = read_presentation_file(cfg.inputs.at(0));
  const auto b = read_presentation_file(cfg.inputs.at(1));
  for (const auto* pres : {&a, &b})
    if (!is_consistent(*pres)) throw InputError("presentation is inconsistent; run 'derq check'");
  IsoOptions options;
  options.seconds = budget(cfg);
  const auto r = is_isomorphic(a, b, options);
  if (format_of(cfg, "text") == "json") {
    nlohmann::json j;
    j["isomorphic"] = r.isomorphic;
    j["reason"] = r.reason;
    std::vector<std::string> images;
    for (const auto& x : r.witness.images) images.push_back(x.to_string());
    j["images"] = images;
    j["nodes"] = r.witness.nodes;
    j["pruned"] = r.witness.pruned;
    j["search_space"] = r.witness.search_space;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << (r.isomorphic ? "true" : "false") << " (" << r.reason << ")\n";
    for (std::size_t k = 0; k < r.witness.images.size(); ++k)
      out << "  a" << k + 1 << " -> " << r.witness.images[k].to_string() << '\n';
    emit(cfg, out.str());
  }
  return r.isomorphic ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"derq: derived series, small derived quotients and p-groups of maximal class"};
  app.require_subcommand(1, 1);

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", cfg.out, "Write output to this file");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Seed for sampled automorphisms");
    sub->add_option("--budget-seconds", cfg.budget_seconds, "Wall-clock budget (default: $DERQ_BUDGET_SECONDS or 1800)")
        ->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "Run the consistency check on a presentation file");
  check->add_option("file", cfg.inputs, "Presentation file")->required()->expected(1);

  auto* scan = app.add_subcommand("scan", "Derived/lower central series and small derived quotients");
  scan->add_option("file", cfg.inputs, "Presentation file")->expected(0, 1);
  scan->add_option("--sylow2", cfg.sylow2, "Sylow 2-subgroup of Sym(M), M a power of two");
  scan->add_option("--perm", cfg.perm, "Permutation generators separated by ';'");
  scan->add_option("--degree", cfg.degree, "Degree for --perm (default: largest point)");
  add_format(scan);

  auto* sylow = app.add_subcommand("sylow2", "Build the Sylow 2-subgroup of Sym(M)");
  sylow->add_option("m", cfg.sylow2, "Degree, a power of two")->required();
  add_format(sylow);

  auto* verify = app.add_subcommand("verify", "Enumerate maximal-class groups of order p^6 and check the census");
  verify->add_option("--p", cfg.p, "Odd prime")->required();
  add_search(verify);
  add_format(verify);

  auto* enumerate = app.add_subcommand("enumerate", "Write the catalog of maximal-class groups of order p^6");
  enumerate->add_option("--p", cfg.p, "Odd prime")->required();
  add_search(enumerate);
  enumerate->add_option("--out", cfg.out, "Catalog path; the digest goes to PATH.digest.json")->required();

  auto* count = app.add_subcommand("count", "Evaluate the two-small class count formula");
  count->add_option("--p", cfg.p, "Prime >= 5")->required();

  auto* bounds = app.add_subcommand("bounds", "Lower bound for log_p|G| at derived length d+1");
  bounds->add_option("--d", cfg.d, "d >= 1")->required();
  bounds->add_option("--variant", cfg.variant, "hall, mann or metabelian")
      ->check(CLI::IsMember({"hall", "mann", "metabelian"}));

  auto* iso = app.add_subcommand("iso", "Decide isomorphism of two presentations");
  iso->add_option("files", cfg.inputs, "Two presentation files")->required()->expected(2);
  iso->add_option("--budget-seconds", cfg.budget_seconds, "Wall-clock budget")->check(CLI::PositiveNumber);
  add_format(iso);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(cfg);
    if (scan->parsed()) return cmd_scan(cfg);
    if (sylow->parsed()) return cmd_sylow2(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (enumerate->parsed()) return cmd_enumerate(cfg);
    if (count->parsed()) return cmd_count(cfg);
    if (bounds->parsed()) return cmd_bounds(cfg);
    if (iso->parsed()) return cmd_iso(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << " (" << e.progress() << ")\n";
    return kExitFail;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitUsage;
}
