#include <random>

#include <gtest/gtest.h>

#include "derq/errors.hpp"
#include "derq/maxclass.hpp"
#include "derq/pc_group.hpp"
#include "derq/perm_group.hpp"
#include "derq/series.hpp"
#include "oracles.hpp"
#include "samplers.hpp"

using namespace derq;

namespace {

PcGroup load(const std::string& stem) {
  return PcGroup(read_presentation_file((oracle::data_dir() / (stem + ".pc")).string()));
}

const std::vector<PcPresentation>& catalog3() {
  static const auto classes = enumerate_maxclass(3, 6).classes;
  return classes;
}

std::vector<int> exps(const std::vector<PcSubgroup>& s) {
  std::vector<int> out;
  for (const auto& h : s) out.push_back(h.order_exponent());
  return out;
}

}  // namespace

TEST(Series, MatchCayleyClosure) {
  for (const auto& [name, pres] : oracle::corpus()) {
    SCOPED_TRACE(name);
    const PcGroup g(pres);
    const oracle::CayleyTable table(g);
    std::vector<int> derived, lcs;
    for (int n : table.derived_orders()) derived.push_back(oracle::log_p(n, g.prime()));
    for (int n : table.lcs_orders()) lcs.push_back(oracle::log_p(n, g.prime()));
    EXPECT_EQ(exps(derived_series(g)), derived);
    EXPECT_EQ(exps(lower_central_series(g)), lcs);
  }
}

TEST(Series, HeisenbergHasOneSmallQuotient) {
  for (int p : {3, 5, 7}) {
    const auto r = small_quotient_scan(PcGroup(parse_presentation("p " + std::to_string(p) + "\nn 3\ncomm 2 1 = a3\n")));
    EXPECT_EQ(r.derived_exps, (std::vector<int>{3, 1, 0}));
    EXPECT_EQ(r.lcs_exps, (std::vector<int>{3, 1, 0}));
    EXPECT_EQ(r.small_ds, (std::vector<int>{0}));
    EXPECT_EQ(r.chain_classes.at(0), ChainClass::ch2);
    EXPECT_EQ(r.chain_heads.at(0), 2);
    EXPECT_EQ(r.nilpotency_class, 2);
    EXPECT_TRUE(r.metabelian);
    for (const auto& [name, ok] : r.checks) EXPECT_TRUE(ok) << name;
  }
}

TEST(Series, AbelianGroupHasNoSmallQuotient) {
  const auto r = small_quotient_scan(load("c9xc9"));
  EXPECT_TRUE(r.small_ds.empty());
  EXPECT_EQ(r.derived_exps, (std::vector<int>{4, 0}));
  EXPECT_EQ(r.nilpotency_class, 1);
}

TEST(Series, EnginesAgreeOnD8) {
  auto pc = small_quotient_scan(load("d8"));
  auto perm = small_quotient_scan(PermGroup(sylow2_sym(4)));
  EXPECT_EQ(pc, perm);
  EXPECT_EQ(pc.small_ds, (std::vector<int>{0}));
}

TEST(Series, Sylow2OfSym8And16) {
  const auto r8 = small_quotient_scan(PermGroup(sylow2_sym(8)));
  EXPECT_EQ(r8.derived_exps, (std::vector<int>{7, 4, 1, 0}));
  EXPECT_EQ(r8.small_ds, (std::vector<int>{1}));
  const auto r16 = small_quotient_scan(PermGroup(sylow2_sym(16)));
  EXPECT_EQ(r16.order_exp, 15);
  EXPECT_EQ(r16.derived_exps, (std::vector<int>{15, 11, 6, 1, 0}));
  EXPECT_EQ(r16.lcs_exps, (std::vector<int>{15, 11, 8, 6, 4, 3, 2, 1, 0}));
  EXPECT_EQ(r16.small_ds, (std::vector<int>{2}));
  EXPECT_EQ(r16.chain_classes.at(2), ChainClass::ch2);
  EXPECT_EQ(r16.chain_heads.at(2), 2);
  // the odd-prime conclusion fails for 2-groups
  EXPECT_FALSE(r16.checks.at("small_d_ge_1_is_ch1"));
  EXPECT_TRUE(r16.checks.at("at_most_two_small"));
  EXPECT_TRUE(r16.checks.at("derived_within_lcs"));
}

TEST(Series, ChainAnalysisRejectsNonSmallIndex) {
  const auto g = load("heis5");
  EXPECT_THROW(chain_analysis(g, 1), InputError);
  EXPECT_THROW(chain_analysis(load("c5cubed"), 0), InputError);
  const auto a = chain_analysis(g, 0);
  EXPECT_EQ(a.chain_exps, (std::vector<int>{3, 1, 0}));
  EXPECT_TRUE(a.head_elementary);
}

TEST(Series, CatalogThreeHasNoTwoSmallGroups) {
  for (const auto& pres : catalog3()) {
    const auto r = small_quotient_scan(PcGroup(pres));
    EXPECT_LE(r.small_ds.size(), 1u);
    for (const auto& [name, ok] : r.checks) EXPECT_TRUE(ok) << name;
  }
}

TEST(Series, HallInequalities) {
  std::mt19937_64 rng(21);
  int samples = 0;
  auto run = [&](const std::string& name, const PcGroup& g) {
    for (const auto& s : oracle::hall_samples(name, g, rng, 6)) {
      ++samples;
      EXPECT_TRUE(s.result.passed()) << s.label << ": " << s.result.detail;
    }
  };
  for (const auto& [name, pres] : oracle::corpus()) run(name, PcGroup(pres));
  for (std::size_t k = 0; k < catalog3().size(); ++k) run("maxclass3#" + std::to_string(k), PcGroup(catalog3()[k]));
  EXPECT_GE(samples, 40);
}

TEST(Series, HallPreconditions) {
  const auto g = load("heis5");
  EXPECT_EQ(hall_check(g, g.commutator(g.whole(), g.whole()), 2).status, CheckStatus::precondition_failed);
  EXPECT_EQ(hall_check(g, g.whole(), 2).status, CheckStatus::precondition_failed);
  const std::vector<ExponentWord> gens{g.generator(0)};
  EXPECT_EQ(hall_check(g, g.subgroup(gens), 1).status, CheckStatus::precondition_failed);
  const auto r = hall_check(g, g.whole(), 1);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.measured.at("quotient_exp"), 2);
}

TEST(Series, CyclicQuotientCommutator) {
  const auto d8 = load("d8");
  const std::vector<ExponentWord> rotation{d8.generator(1)};
  const auto h = d8.subgroup(rotation);
  ASSERT_EQ(h.order_exponent(), 2);
  EXPECT_TRUE(cyclic_quotient_commutator_check(d8, d8.whole(), h).passed());
  // C2 x C2 quotient is not cyclic
  EXPECT_EQ(cyclic_quotient_commutator_check(d8, d8.whole(), d8.trivial()).status, CheckStatus::precondition_failed);

  for (const auto& pres : catalog3()) {
    const PcGroup g(pres);
    const auto derived = derived_series(g);
    const auto k = derived[1];
    const auto h = g.join(g.commutator(k, g.whole()), g.commutator(k, k));
    const auto r = cyclic_quotient_commutator_check(g, k, h);
    EXPECT_TRUE(r.passed()) << r.detail;
  }
}

TEST(Series, InclusionOne) {
  std::mt19937_64 rng(33);
  int checked = 0;
  for (std::size_t k = 0; k < catalog3().size(); ++k)
    for (const auto& s : oracle::inclusion_samples("maxclass3#" + std::to_string(k), PcGroup(catalog3()[k]), rng, 15)) {
      ++checked;
      EXPECT_TRUE(s.result.passed()) << s.label;
    }
  EXPECT_EQ(checked, 15 * static_cast<int>(catalog3().size()));
}

TEST(Series, DegreeOfCommutativityZero) {
  EXPECT_TRUE(degree_of_commutativity_zero(load("c3wrc3")).passed());
  EXPECT_TRUE(degree_of_commutativity_zero(load("heis3")).passed());
  EXPECT_EQ(degree_of_commutativity_zero(load("c25")).status, CheckStatus::precondition_failed);
  EXPECT_EQ(degree_of_commutativity_zero(load("heis5xc5")).status, CheckStatus::precondition_failed);
  // metabelian of order 3^6: gamma_2 is abelian while gamma_5 is not trivial
  for (const auto& pres : catalog3()) {
    const auto r = degree_of_commutativity_zero(PcGroup(pres));
    EXPECT_EQ(r.status, CheckStatus::fail);
    EXPECT_EQ(r.measured.at("lhs_exp"), 0);
    EXPECT_EQ(r.measured.at("rhs_exp"), 1);
  }
}

TEST(Series, DerivedWithinLowerCentral) {
  for (const auto& [name, pres] : oracle::corpus()) {
    const PcGroup g(pres);
    const auto derived = derived_series(g);
    const auto lcs = lower_central_series(g);
    for (std::size_t d = 0; d < derived.size(); ++d)
      EXPECT_TRUE(g.is_subgroup(derived[d], lcs_term(g, lcs, 1LL << d))) << name << " d=" << d;
  }
}

TEST(Series, OrderLowerBounds) {
  EXPECT_EQ(order_lower_bound(1, BoundVariant::hall), 3);
  EXPECT_EQ(order_lower_bound(2, BoundVariant::hall), 6);
  EXPECT_EQ(order_lower_bound(3, BoundVariant::hall), 11);
  EXPECT_EQ(order_lower_bound(3, BoundVariant::mann), 12);
  EXPECT_EQ(order_lower_bound(5, BoundVariant::metabelian), 41);
  EXPECT_THROW(order_lower_bound(0, BoundVariant::hall), DomainError);
  EXPECT_THROW(order_lower_bound(31, BoundVariant::hall), DomainError);
  EXPECT_EQ(bound_variant_from_string("mann"), BoundVariant::mann);
  EXPECT_THROW(bound_variant_from_string("other"), InputError);
}

TEST(Series, MinimalOrdersRespectBounds) {
  // derived length 2 needs order >= p^3 and length 3 needs >= p^6
  for (const auto& [name, pres] : oracle::corpus()) {
    const auto r = small_quotient_scan(PcGroup(pres));
    const int d = static_cast<int>(r.derived_exps.size()) - 2;
    if (d >= 1) EXPECT_GE(r.order_exp, order_lower_bound(d, BoundVariant::hall)) << name;
  }
}

TEST(Series, ReportJsonRoundTrip) {
  for (const auto& [name, pres] : oracle::corpus()) {
    const auto r = small_quotient_scan(PcGroup(pres));
    EXPECT_EQ(series_report_from_json(to_json(r)), r) << name;
    EXPECT_FALSE(format_text(r).empty());
  }
  EXPECT_EQ(chain_class_from_string(to_string(ChainClass::ch1)), ChainClass::ch1);
  EXPECT_THROW(chain_class_from_string("ch3"), InputError);
}
