#pragma once

#include <string>
#include <vector>

#include "derq/exponent_word.hpp"
#include "derq/presentation.hpp"

namespace derq {

/// One overlap test: two ways of collecting the same word.
struct OverlapTest {
  enum class Kind {
    triple,       // (a_k a_j) a_i = a_k (a_j a_i),      k > j > i
    power_left,   // (a_j^p) a_i = a_j^(p-1) (a_j a_i),  j > i
    power_right,  // a_j (a_i^p) = (a_j a_i) a_i^(p-1),  j > i
    power_self,   // (a_i^p) a_i = a_i (a_i^p)
  };
  Kind kind;
  int k = -1, j = -1, i = -1;  // 0-based; unused entries are -1
  ExponentWord lhs, rhs;
  bool diverged = false;  // collection hit the step cap

  bool passes() const { return !diverged && lhs == rhs; }
  /// e.g. "(a3 a2) a1 = a3 (a2 a1)" with 1-based names.
  std::string name() const;
};

/// Runs every overlap test in a fixed order (triples first, then the power
/// overlaps by increasing indices). The order is part of the contract: the
/// enumerator reads residuals positionally.
std::vector<OverlapTest> overlap_tests(const PcPresentation& pres);

/// Failing tests only; empty iff the presentation defines a group of order p^n.
std::vector<OverlapTest> consistency_check(const PcPresentation& pres);

bool is_consistent(const PcPresentation& pres);

}  // namespace derq
