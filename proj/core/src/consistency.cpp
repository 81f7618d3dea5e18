#include "derq/consistency.hpp"

#include <functional>

#include "derq/pc_group.hpp"

namespace derq {

std::string OverlapTest::name() const {
  auto a = [](int x) { return "a" + std::to_string(x + 1); };
  switch (kind) {
    case Kind::triple:
      return "(" + a(k) + " " + a(j) + ") " + a(i) + " = " + a(k) + " (" + a(j) + " " + a(i) + ")";
    case Kind::power_left:
      return "(" + a(j) + "^p) " + a(i) + " = " + a(j) + "^(p-1) (" + a(j) + " " + a(i) + ")";
    case Kind::power_right:
      return a(j) + " (" + a(i) + "^p) = (" + a(j) + " " + a(i) + ") " + a(i) + "^(p-1)";
    case Kind::power_self:
      return "(" + a(i) + "^p) " + a(i) + " = " + a(i) + " (" + a(i) + "^p)";
  }
  return {};
}

std::vector<OverlapTest> overlap_tests(const PcPresentation& pres) {
  const PcGroup g(pres);
  const int n = pres.rank();
  const int p = pres.prime();
  std::vector<OverlapTest> tests;

  auto gen = [&](int x) { return g.generator(x); };
  // a_j a_i collected, j > i
  auto pair = [&](int j, int i) {
    auto e = gen(j);
    g.collect(e, i, 1);
    return e;
  };
  auto times = [&](ExponentWord u, const ExponentWord& v) {
    for (int x = 0; x < n; ++x) g.collect(u, x, v[x]);
    return u;
  };
  auto run = [&](OverlapTest t, const std::function<ExponentWord()>& left, const std::function<ExponentWord()>& right) {
    try {
      t.lhs = left();
      t.rhs = right();
    } catch (const InconsistentPresentation&) {
      t.diverged = true;
    }
    tests.push_back(std::move(t));
  };

  for (int k = 0; k < n; ++k)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < j; ++i)
        run({OverlapTest::Kind::triple, k, j, i, {}, {}},
            [&] {
              auto e = pair(k, j);
              g.collect(e, i, 1);
              return e;
            },
            [&] { return times(gen(k), pair(j, i)); });

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      run({OverlapTest::Kind::power_left, -1, j, i, {}, {}},
          [&] {
            auto e = pres.power(j);
            g.collect(e, i, 1);
            return e;
          },
          [&] { return times(ExponentWord::generator(n, j, p - 1), pair(j, i)); });
      run({OverlapTest::Kind::power_right, -1, j, i, {}, {}}, [&] { return times(gen(j), pres.power(i)); },
          [&] {
            auto e = pair(j, i);
            g.collect(e, i, p - 1);
            return e;
          });
    }

  for (int i = 0; i < n; ++i)
    run({OverlapTest::Kind::power_self, -1, -1, i, {}, {}},
        [&] {
          auto e = pres.power(i);
          g.collect(e, i, 1);
          return e;
        },
        [&] { return times(gen(i), pres.power(i)); });

  return tests;
}

std::vector<OverlapTest> consistency_check(const PcPresentation& pres) {
  std::vector<OverlapTest> failures;
  for (auto& t : overlap_tests(pres))
    if (!t.passes()) failures.push_back(std::move(t));
  return failures;
}

bool is_consistent(const PcPresentation& pres) { return consistency_check(pres).empty(); }

}  // namespace derq
