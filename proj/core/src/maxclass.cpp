#include "derq/maxclass.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>
#include <unordered_map>

#include "derq/consistency.hpp"
#include "derq/fingerprint.hpp"
#include "derq/isomorphism.hpp"
#include "derq/modp.hpp"

namespace derq {

std::vector<SchemeSlot> extension_slots(int t) {
  if (t < 2) throw InputError("extension slots start at generator index 2");
  std::vector<SchemeSlot> slots;
  for (int i = 0; i < t; ++i)
    if (std::max(i + 1, 2) <= t) slots.push_back({true, i, i});
  for (int i = 1; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      if (i + j <= t) slots.push_back({false, j, i});
  return slots;
}

namespace {

const ExponentWord& slot_tail(const PcPresentation& pres, const SchemeSlot& s) {
  return s.is_power ? pres.power(s.i) : pres.commutator(s.j, s.i);
}

std::vector<int> scheme_weights(int rank) {
  std::vector<int> w(static_cast<std::size_t>(rank));
  for (int k = 0; k < rank; ++k) w[static_cast<std::size_t>(k)] = std::max(k, 1);
  return w;
}

}  // namespace

std::vector<int> slot_values(const PcPresentation& pres, int t) {
  std::vector<int> out;
  for (const auto& s : extension_slots(t)) out.push_back(slot_tail(pres, s)[t]);
  return out;
}

std::vector<int> scheme_key(const PcPresentation& pres) {
  std::vector<int> key;
  for (int t = 2; t < pres.rank(); ++t) {
    const auto v = slot_values(pres, t);
    key.insert(key.end(), v.begin(), v.end());
  }
  return key;
}

PcPresentation scheme_seed(int p) {
  PcPresentation pres(p, 2);
  pres.set_weights({1, 1});
  return pres;
}

std::optional<PcPresentation> rebase(const PcGroup& g, const ExponentWord& x, const ExponentWord& y) {
  const int n = g.rank();
  const int p = g.prime();
  if (n < 2) throw InputError("rebase needs rank >= 2");
  const long long det = static_cast<long long>(x[0]) * y[1] - static_cast<long long>(x[1]) * y[0];
  if (modp::reduce(det, p) == 0) return std::nullopt;
  std::vector<ExponentWord> s{x, y};
  for (int i = 2; i < n; ++i) {
    s.push_back(g.commutator(s.back(), x));
    if (s.back().depth() != i) return std::nullopt;
  }
  if (!g.commutator(s.back(), x).is_identity() && n > 2) return std::nullopt;

  const modp::Matrix m{{x[0], x[1]}, {y[0], y[1]}};
  const auto minv = *modp::inverse(m, p);
  std::vector<int> lead_inv(static_cast<std::size_t>(n), 0);
  for (int i = 2; i < n; ++i) lead_inv[static_cast<std::size_t>(i)] = modp::inverse(s[static_cast<std::size_t>(i)][i], p);

  auto coords = [&](ExponentWord w) {
    ExponentWord out(n);
    const int c0 = modp::reduce(static_cast<long long>(w[0]) * minv[0][0] + static_cast<long long>(w[1]) * minv[1][0], p);
    const int c1 = modp::reduce(static_cast<long long>(w[0]) * minv[0][1] + static_cast<long long>(w[1]) * minv[1][1], p);
    out.set(0, c0);
    out.set(1, c1);
    w = g.multiply(g.inverse(g.multiply(g.power(x, c0), g.power(y, c1))), w);
    for (int i = 2; i < n; ++i) {
      const int c = modp::reduce(static_cast<long long>(w[i]) * lead_inv[static_cast<std::size_t>(i)], p);
      out.set(i, c);
      if (c != 0) w = g.multiply(g.power(s[static_cast<std::size_t>(i)], -c), w);
    }
    if (!w.is_identity()) throw std::logic_error("rebase: element not expressed in the new basis");
    return out;
  };

  PcPresentation out(p, n);
  out.set_weights(scheme_weights(n));
  for (int i = 0; i < n; ++i) {
    out.set_power(i, coords(g.power(s[static_cast<std::size_t>(i)], p)));
    for (int j = i + 1; j < n; ++j)
      out.set_commutator(j, i, coords(g.commutator(s[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(i)])));
  }
  return out;
}

namespace {

PcPresentation extension_base(const PcPresentation& parent) {
  const int t = parent.rank();
  const int p = parent.prime();
  PcPresentation g(p, t + 1);
  g.set_weights(scheme_weights(t + 1));
  for (int i = 0; i < t; ++i) {
    g.set_power(i, parent.power(i).resized(t + 1));
    for (int j = i + 1; j < t; ++j) g.set_commutator(j, i, parent.commutator(j, i).resized(t + 1));
  }
  g.set_commutator(t - 1, 0, ExponentWord::generator(t + 1, t));
  return g;
}

void set_slots(PcPresentation& g, int t, const std::vector<SchemeSlot>& slots, const std::vector<int>& values) {
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const auto& s = slots[k];
    auto tail = slot_tail(g, s);
    tail.set(t, values[k]);
    if (s.is_power)
      g.set_power(s.i, tail);
    else
      g.set_commutator(s.j, s.i, tail);
  }
}

modp::Vector residuals(const PcPresentation& g) {
  const int t = g.rank() - 1;
  const int p = g.prime();
  modp::Vector r;
  for (const auto& test : overlap_tests(g)) {
    if (test.diverged) throw std::logic_error("extension: collection diverged");
    for (int k = 0; k < t; ++k)
      if (test.lhs[k] != test.rhs[k]) throw std::logic_error("extension: parent is inconsistent");
    r.push_back(modp::reduce(test.lhs[t] - test.rhs[t], p));
  }
  return r;
}

}  // namespace

PcPresentation extension(const PcPresentation& parent, const std::vector<int>& values) {
  auto g = extension_base(parent);
  const int t = parent.rank();
  const auto slots = extension_slots(t);
  if (values.size() != slots.size()) throw InputError("wrong number of extension values");
  set_slots(g, t, slots, values);
  return g;
}

std::vector<std::vector<int>> extension_solutions(const PcPresentation& parent) {
  const int t = parent.rank();
  const int p = parent.prime();
  const auto slots = extension_slots(t);
  const int m = static_cast<int>(slots.size());
  const auto base = extension_base(parent);
  const auto r0 = residuals(base);
  modp::Matrix a(r0.size(), modp::Vector(static_cast<std::size_t>(m), 0));
  for (int s = 0; s < m; ++s) {
    std::vector<int> e(static_cast<std::size_t>(m), 0);
    e[static_cast<std::size_t>(s)] = 1;
    auto g = base;
    set_slots(g, t, slots, e);
    const auto rs = residuals(g);
    for (std::size_t row = 0; row < rs.size(); ++row) a[row][static_cast<std::size_t>(s)] = modp::reduce(rs[row] - r0[row], p);
  }
  modp::Vector b;
  for (int x : r0) b.push_back(modp::reduce(-x, p));
  const auto space = modp::solve(a, b, m, p);
  std::vector<std::vector<int>> out;
  if (!space) return out;
  const std::size_t dim = space->basis.size();
  std::vector<int> coeff(dim, 0);
  while (true) {
    std::vector<int> v = space->particular;
    for (std::size_t k = 0; k < dim; ++k)
      for (int s = 0; s < m; ++s)
        v[static_cast<std::size_t>(s)] = modp::reduce(v[static_cast<std::size_t>(s)] +
                                                          static_cast<long long>(coeff[k]) * space->basis[k][static_cast<std::size_t>(s)],
                                                      p);
    auto g = base;
    set_slots(g, t, slots, v);
    if (!is_consistent(g)) throw std::logic_error("extension: affine solution failed the consistency check");
    out.push_back(std::move(v));
    std::size_t k = 0;
    while (k < dim && ++coeff[k] == p) coeff[k++] = 0;
    if (k == dim) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Task {
  PcPresentation parent;  // rank t, rebased for one choice of s
};

struct TaskResult {
  std::vector<PcPresentation> reps;
  std::uint64_t solutions = 0;
};

int find(std::vector<int>& uf, int x) {
  while (uf[static_cast<std::size_t>(x)] != x) {
    uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
    x = uf[static_cast<std::size_t>(x)];
  }
  return x;
}

long long encode(const std::vector<int>& v, int p) {
  long long c = 0;
  for (int x : v) c = c * p + x;
  return c;
}

TaskResult run_task(const Task& task, std::uint64_t seed, const MaxclassOptions& options) {
  const auto& parent = task.parent;
  const int t = parent.rank();
  const int p = parent.prime();
  TaskResult result;
  const auto solutions = extension_solutions(parent);
  result.solutions = solutions.size();
  if (solutions.empty()) return result;

  // Automorphisms of the parent, as images of (a_1, a_2).
  const IsoData qd(parent);
  const auto& q = qd.group();
  std::vector<std::pair<ExponentWord, ExponentWord>> auts;
  std::mt19937_64 rng(seed);
  std::uint64_t seen = 0;
  const auto cap = static_cast<std::size_t>(std::max(options.automorphism_sample, 1));
  for_each_isomorphism(qd, qd, [&](const std::vector<ExponentWord>& images) {
    ++seen;
    std::pair<ExponentWord, ExponentWord> a{images[0], images[1]};
    if (auts.size() < cap) {
      auts.push_back(std::move(a));
    } else {
      const auto j = rng() % seen;
      if (j < cap) auts[j] = std::move(a);
    }
    return true;
  });
  if (t >= 3) {
    const auto z = q.generator(t - 1);
    auts.push_back({q.multiply(q.generator(0), z), q.generator(1)});
    auts.push_back({q.generator(0), q.multiply(q.generator(1), z)});
  }

  std::unordered_map<long long, int> index;
  for (std::size_t k = 0; k < solutions.size(); ++k) index[encode(solutions[k], p)] = static_cast<int>(k);
  std::vector<int> uf(solutions.size());
  std::iota(uf.begin(), uf.end(), 0);
  for (std::size_t k = 0; k < solutions.size(); ++k) {
    const PcGroup g(extension(parent, solutions[k]));
    for (const auto& [x, y] : auts) {
      const auto r = rebase(g, x.resized(t + 1), y.resized(t + 1));
      if (!r) continue;
      if (!(r->truncated(t) == parent)) throw std::logic_error("orbit reduction: automorphism changed the parent");
      const auto it = index.find(encode(slot_values(*r, t), p));
      if (it == index.end()) throw std::logic_error("orbit reduction: image outside the solution set");
      const int a = find(uf, static_cast<int>(k)), b = find(uf, it->second);
      if (a != b) uf[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  }
  for (std::size_t k = 0; k < solutions.size(); ++k)
    if (find(uf, static_cast<int>(k)) == static_cast<int>(k)) result.reps.push_back(extension(parent, solutions[k]));
  return result;
}

template <class F>
void parallel_for(int n, int jobs, F&& body) {
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const int i = next++;
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  const int k = std::max(1, std::min(jobs, n));
  std::vector<std::thread> threads;
  for (int i = 1; i < k; ++i) threads.emplace_back(worker);
  worker();
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

EnumerationResult enumerate_maxclass(int p, int rank, const MaxclassOptions& options) {
  if (!modp::is_prime(p) || p == 2) throw InputError("p must be an odd prime");
  if (p > options.max_prime)
    throw InputError("p = " + std::to_string(p) + " exceeds the configured maximum " + std::to_string(options.max_prime));
  if (rank < 2 || rank > 12) throw InputError("rank must lie in [2, 12]");
  if (options.jobs < 1) throw InputError("jobs must be >= 1");
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  auto log = [&](const std::string& s) {
    if (options.log) options.log(s);
  };

  EnumerationResult result;
  std::vector<PcPresentation> reps{scheme_seed(p)};
  for (int t = 2; t < rank; ++t) {
    // Parent presentations for every admissible choice of s.
    std::vector<Task> tasks;
    for (const auto& parent : reps) {
      const PcGroup q(parent);
      std::set<std::vector<int>> seen;
      for (int line = 0; line <= p; ++line) {
        ExponentWord x(t), y(t);
        if (line < p) {
          x.set(0, 1);
          x.set(1, line);
          y.set(1, 1);
        } else {
          x.set(1, 1);
          y.set(0, 1);
        }
        auto r = rebase(q, x, y);
        if (!r) continue;
        if (seen.insert(scheme_key(*r)).second) tasks.push_back({std::move(*r)});
      }
    }

    LayerStats stats;
    stats.rank = t + 1;
    stats.tasks = static_cast<int>(tasks.size());
    std::vector<TaskResult> results(tasks.size());
    std::atomic<int> done{0};
    parallel_for(static_cast<int>(tasks.size()), options.jobs, [&](int i) {
      if (options.budget_seconds > 0 && elapsed() > options.budget_seconds)
        throw BudgetExceeded("enumeration exceeded its time budget",
                             "rank " + std::to_string(t + 1) + ": " + std::to_string(done.load()) + " of " +
                                 std::to_string(tasks.size()) + " parent presentations processed");
      const std::uint64_t seed = options.seed * 1000003ULL + static_cast<std::uint64_t>(t) * 7919ULL + static_cast<std::uint64_t>(i);
      results[static_cast<std::size_t>(i)] = run_task(tasks[static_cast<std::size_t>(i)], seed, options);
      ++done;
    });

    std::vector<PcPresentation> candidates;
    for (auto& r : results) {
      stats.solutions += r.solutions;
      for (auto& c : r.reps) candidates.push_back(std::move(c));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const PcPresentation& a, const PcPresentation& b) { return scheme_key(a) < scheme_key(b); });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    stats.orbit_reps = static_cast<int>(candidates.size());

    // Merge: fingerprint blocks, then isomorphism tests against earlier classes.
    std::vector<Fingerprint> prints(candidates.size());
    std::vector<std::unique_ptr<IsoData>> data(candidates.size());
    parallel_for(static_cast<int>(candidates.size()), options.jobs, [&](int i) {
      data[static_cast<std::size_t>(i)] = std::make_unique<IsoData>(candidates[static_cast<std::size_t>(i)]);
      prints[static_cast<std::size_t>(i)] = data[static_cast<std::size_t>(i)]->fingerprint();
    });
    std::vector<PcPresentation> next;
    std::vector<std::size_t> next_print;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (options.budget_seconds > 0 && elapsed() > options.budget_seconds)
        throw BudgetExceeded("enumeration exceeded its time budget",
                             "rank " + std::to_string(t + 1) + ": merged " + std::to_string(k) + " of " +
                                 std::to_string(candidates.size()) + " candidates into " +
                                 std::to_string(next.size()) + " classes");
      bool known = false;
      for (std::size_t r = 0; r < next.size() && !known; ++r) {
        if (!(prints[next_print[r]] == prints[k])) continue;
        known = find_isomorphism(*data[next_print[r]], *data[k]).isomorphic;
      }
      if (!known) {
        next.push_back(candidates[k]);
        next_print.push_back(k);
      }
    }
    stats.classes = static_cast<int>(next.size());
    result.layers.push_back(stats);
    log("rank " + std::to_string(t + 1) + ": " + std::to_string(stats.tasks) + " parents, " +
        std::to_string(stats.solutions) + " consistent extensions, " + std::to_string(stats.orbit_reps) +
        " orbit representatives, " + std::to_string(stats.classes) + " classes (" + std::to_string(elapsed()) + " s)");
    reps = std::move(next);
  }
  result.classes = std::move(reps);
  return result;
}

}  // namespace derq
