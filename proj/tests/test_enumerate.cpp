#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <set>

#include <gtest/gtest.h>

#include "derq/catalog.hpp"
#include "derq/consistency.hpp"
#include "derq/errors.hpp"
#include "derq/maxclass.hpp"
#include "derq/pc_group.hpp"
#include "derq/series.hpp"

using namespace derq;

namespace {

std::vector<std::vector<int>> all_vectors(int length, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(length), 0);
  while (true) {
    out.push_back(v);
    int i = length - 1;
    while (i >= 0 && v[static_cast<std::size_t>(i)] == p - 1) v[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return out;
    ++v[static_cast<std::size_t>(i)];
  }
}

std::set<std::vector<int>> brute_force_solutions(const PcPresentation& parent) {
  std::set<std::vector<int>> out;
  const int slots = static_cast<int>(extension_slots(parent.rank()).size());
  for (const auto& v : all_vectors(slots, parent.prime()))
    if (is_consistent(extension(parent, v))) out.insert(v);
  return out;
}

/// Every consistent scheme presentation of rank 3..max_rank (index 0 is rank
/// 2), with no orbit or isomorphism reduction. Layers below `brute_rank` are
/// also searched exhaustively and compared with the affine solver.
std::vector<std::vector<PcPresentation>> all_scheme_presentations(int p, int max_rank, int brute_rank) {
  std::vector<std::vector<PcPresentation>> layers{{scheme_seed(p)}};
  for (int t = 2; t < max_rank; ++t) {
    std::vector<PcPresentation> next;
    for (const auto& parent : layers.back()) {
      const auto solved = extension_solutions(parent);
      std::set<std::vector<int>> solved_set(solved.begin(), solved.end());
      EXPECT_EQ(solved_set.size(), solved.size());
      if (t < brute_rank) EXPECT_EQ(brute_force_solutions(parent), solved_set) << format_presentation(parent);
      for (const auto& v : solved) next.push_back(extension(parent, v));
    }
    layers.push_back(std::move(next));
  }
  return layers;
}

/// Isomorphism classes among `all`, found by visiting every generating pair
/// (x, y) of each unvisited group modulo the last pc generator.
int count_classes_by_rebasing(const std::vector<PcPresentation>& all) {
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < all.size(); ++k) index.emplace(format_presentation(all[k]), k);
  EXPECT_EQ(index.size(), all.size());
  std::vector<bool> seen(all.size(), false);
  int classes = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (seen[k]) continue;
    ++classes;
    const PcGroup g(all[k]);
    const int n = g.rank(), p = g.prime();
    const auto heads = all_vectors(n - 1, p);
    for (const auto& xv : heads) {
      if (xv[0] == 0 && xv[1] == 0) continue;
      ExponentWord x(n);
      for (int i = 0; i < n - 1; ++i) x.set(i, xv[static_cast<std::size_t>(i)]);
      for (const auto& yv : heads) {
        if (1LL * xv[0] * yv[1] % p == 1LL * xv[1] * yv[0] % p) continue;
        ExponentWord y(n);
        for (int i = 0; i < n - 1; ++i) y.set(i, yv[static_cast<std::size_t>(i)]);
        const auto q = rebase(g, x, y);
        if (!q) continue;
        const auto it = index.find(format_presentation(*q));
        if (it == index.end()) {
          ADD_FAILURE() << "rebased presentation missing from the exhaustive set:\n" << format_presentation(*q);
          return -1;
        }
        seen[it->second] = true;
      }
    }
  }
  return classes;
}

}  // namespace

TEST(Maxclass, ExtensionSlotCounts) {
  EXPECT_EQ(extension_slots(2).size(), 2u);
  EXPECT_EQ(extension_slots(3).size(), 4u);
  EXPECT_EQ(extension_slots(4).size(), 6u);
  EXPECT_EQ(extension_slots(5).size(), 9u);
}

TEST(Maxclass, SlotValuesRoundTrip) {
  const auto seed = scheme_seed(5);
  EXPECT_EQ(seed.rank(), 2);
  for (const auto& v : extension_solutions(seed)) {
    const auto q = extension(seed, v);
    EXPECT_EQ(slot_values(q, 2), v);
    EXPECT_TRUE(is_consistent(q));
  }
}

TEST(Maxclass, RebaseOnStandardPairIsIdentity) {
  for (const auto& pres : enumerate_maxclass(3, 5).classes) {
    const PcGroup g(pres);
    const auto q = rebase(g, g.generator(0), g.generator(1));
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, pres);
  }
}

TEST(Maxclass, RebaseRejectsNonGeneratingPair) {
  const auto pres = enumerate_maxclass(3, 4).classes.front();
  const PcGroup g(pres);
  EXPECT_FALSE(rebase(g, g.generator(0), g.generator(2)).has_value());
  EXPECT_FALSE(rebase(g, g.generator(0), g.generator(0)).has_value());
}

TEST(Maxclass, LayerCountsForThree) {
  const auto r = enumerate_maxclass(3, 6);
  std::vector<int> classes;
  for (const auto& l : r.layers) classes.push_back(l.classes);
  EXPECT_EQ(classes, (std::vector<int>{2, 4, 6, 7}));
  EXPECT_EQ(r.classes.size(), 7u);
  for (const auto& pres : r.classes) {
    EXPECT_TRUE(is_consistent(pres));
    const auto report = small_quotient_scan(PcGroup(pres));
    EXPECT_EQ(report.nilpotency_class, 5);
  }
}

TEST(Maxclass, DeterministicAcrossJobs) {
  MaxclassOptions one, four;
  four.jobs = 4;
  const auto a = enumerate_maxclass(3, 6, one), b = enumerate_maxclass(3, 6, four);
  EXPECT_EQ(a.classes, b.classes);
}

TEST(Maxclass, RejectsBadArguments) {
  EXPECT_THROW(enumerate_maxclass(2, 4), InputError);
  EXPECT_THROW(enumerate_maxclass(9, 4), InputError);
  EXPECT_THROW(enumerate_maxclass(11, 4), InputError);
  EXPECT_THROW(enumerate_maxclass(5, 1), InputError);
  MaxclassOptions bad;
  bad.jobs = 0;
  EXPECT_THROW(enumerate_maxclass(3, 4, bad), InputError);
}

TEST(Maxclass, BudgetIsEnforced) {
  MaxclassOptions tight;
  tight.budget_seconds = 1e-6;
  try {
    enumerate_maxclass(5, 6, tight);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_FALSE(e.progress().empty());
  }
}

TEST(MaxclassOracle, ExhaustiveCountForThree) {
  const auto layers = all_scheme_presentations(3, 6, 5);
  const std::vector<int> expected{1, 2, 4, 6, 7};
  for (std::size_t k = 1; k < layers.size(); ++k) {
    SCOPED_TRACE("rank " + std::to_string(k + 2));
    const int classes = count_classes_by_rebasing(layers[k]);
    EXPECT_EQ(classes, expected[k]);
    EXPECT_EQ(classes, static_cast<int>(enumerate_maxclass(3, static_cast<int>(k) + 2).classes.size()));
  }
}

TEST(Catalog, CountFormula) {
  EXPECT_EQ(count_formula(5), 16);
  EXPECT_EQ(count_formula(7), 20);
  EXPECT_EQ(count_formula(11), 24);
  EXPECT_EQ(count_formula(13), 28);
  EXPECT_EQ(count_formula(31), 31 + 4 + 2 + 5 + 6);
  EXPECT_THROW(count_formula(3), DomainError);
  EXPECT_THROW(count_formula(9), DomainError);
  EXPECT_THROW(count_formula(-5), DomainError);
}

TEST(Catalog, VerifyThree) {
  const auto r = verify_theorem_main(3);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.two_small, 0);
  EXPECT_EQ(r.classes, 7);
  EXPECT_EQ(r.metabelian, 7);
  EXPECT_TRUE(r.violations.empty());
}

TEST(Catalog, TamperedCatalogIsFlagged) {
  auto catalog = verify_theorem_main(3).catalog;
  catalog[0].flags.two_small = true;
  const auto r = verify_catalog(3, catalog);
  EXPECT_FALSE(r.passed());
  EXPECT_FALSE(r.violations.empty());

  auto broken = verify_theorem_main(3).catalog;
  broken[1].presentation.set_power(0, ExponentWord::generator(6, 1));
  EXPECT_FALSE(verify_catalog(3, broken).violations.empty());
}

TEST(Catalog, JsonRoundTripAndDigest) {
  const auto catalog = verify_theorem_main(3).catalog;
  const auto j = catalog_to_json(catalog);
  EXPECT_EQ(catalog_from_json(nlohmann::json::parse(j.dump())), catalog);
  const auto digest = catalog_digest(catalog);
  EXPECT_EQ(digest.at("total").get<int>(), 7);
  EXPECT_EQ(digest.at("counts").at("metabelian=true,two_small=false,class=5").get<int>(), 7);
  EXPECT_THROW(catalog_from_json(nlohmann::json::object()), InputError);
}

TEST(Catalog, RankFiveAtFiveHasNoTwoSmallGroups) {
  // two small quotients need order at least p^6
  for (const auto& pres : enumerate_maxclass(5, 5).classes) {
    const auto e = make_catalog_entry(pres);
    EXPECT_FALSE(e.flags.two_small);
    EXPECT_TRUE(e.flags.maximal_class);
  }
}

TEST(Catalog, ShippedCatalogsMatchEnumeration) {
  for (int p : {3, 5}) {
    SCOPED_TRACE(p);
    std::ifstream in(std::filesystem::path(DERQ_CATALOG_DIR) / ("maxclass_p" + std::to_string(p) + ".json"));
    ASSERT_TRUE(in.good());
    const auto shipped = nlohmann::json::parse(in);
    MaxclassOptions opts;
    const auto fresh = verify_theorem_main(p, opts);
    EXPECT_EQ(catalog_to_json(fresh.catalog), shipped);
  }
}

TEST(Catalog, ShippedSevenCatalogVerifies) {
  // checks the stored p = 7 result without re-running the enumeration
  std::ifstream in(std::filesystem::path(DERQ_CATALOG_DIR) / "maxclass_p7.json");
  ASSERT_TRUE(in.good());
  auto catalog = catalog_from_json(nlohmann::json::parse(in));
  for (const auto& e : catalog) EXPECT_EQ(make_catalog_entry(e.presentation), e);
  const auto r = verify_catalog(7, catalog);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.two_small, 20);
  EXPECT_EQ(r.classes, 43);
}
