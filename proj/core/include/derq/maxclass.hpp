#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "derq/pc_group.hpp"
#include "derq/presentation.hpp"

namespace derq {

/// Presentations of p-groups of maximal class in the generating scheme
///   a_1 = s, a_2 = s_1, a_{i+1} = [a_i, s]  (i >= 2),
/// weights 1, 1, 2, 3, ..., n-1. The tails that are not definitions are
/// [a_j, a_i] in gamma_{i+j} (j > i >= 2 in 1-based names) and a_i^p in
/// gamma_{i+1} (gamma_2 for a_1, a_2).

/// A relation whose tail may involve a given generator.
struct SchemeSlot {
  bool is_power = false;
  int j = 0, i = 0;  // 0-based; power slots have j == i
};

/// Relations gaining a component on a_t (0-based t >= 2) when a_t is added.
std::vector<SchemeSlot> extension_slots(int t);

/// Exponents of a_t in the tails listed by extension_slots(t).
std::vector<int> slot_values(const PcPresentation& pres, int t);

/// All non-definition tail exponents in scheme order; lexicographic order on
/// this key ranks presentations of the same rank.
std::vector<int> scheme_key(const PcPresentation& pres);

/// The group of rank n with every non-definition tail trivial and no
/// definitions yet; rank 2 is elementary abelian of order p^2.
PcPresentation scheme_seed(int p);

/// Scheme presentation of g with respect to s = x, s_1 = y. Empty when
/// (x, y) does not generate modulo the Frattini subgroup or some
/// [s_{i-1}, s] falls into gamma_{i+1}.
std::optional<PcPresentation> rebase(const PcGroup& g, const ExponentWord& x, const ExponentWord& y);

/// Solutions of the consistency conditions for extending `parent` (rank t,
/// scheme form) by a_t = [a_{t-1}, a_1]: each solution lists slot values for
/// extension_slots(t). Every returned presentation passes the full check.
std::vector<std::vector<int>> extension_solutions(const PcPresentation& parent);
PcPresentation extension(const PcPresentation& parent, const std::vector<int>& values);

struct MaxclassOptions {
  int max_prime = 7;
  int jobs = 1;
  std::uint64_t seed = 1;
  /// Wall-clock cap for the whole run; <= 0 means unlimited.
  double budget_seconds = 0;
  /// Automorphisms sampled per parent for orbit reduction.
  int automorphism_sample = 24;
  std::function<void(const std::string&)> log;
};

struct LayerStats {
  int rank = 0;
  int tasks = 0;
  std::uint64_t solutions = 0;
  int orbit_reps = 0;
  int classes = 0;
};

struct EnumerationResult {
  std::vector<PcPresentation> classes;  // one per isomorphism class, by scheme_key
  std::vector<LayerStats> layers;
};

/// Isomorphism classes of p-groups of maximal class and order p^rank.
/// Layers are built rank by rank: every extension of every parent class,
/// taken in each admissible choice of s, is solved as an affine system,
/// orbit-reduced under sampled automorphisms of the parent, and the
/// survivors are merged by fingerprint and isomorphism test.
EnumerationResult enumerate_maxclass(int p, int rank, const MaxclassOptions& options = {});

}  // namespace derq
