#include "derq/presentation.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "derq/modp.hpp"

namespace derq {

PcPresentation::PcPresentation(int prime, int rank) : prime_(prime), rank_(rank) {
  if (!modp::is_prime(prime) || prime > kMaxPrime)
    throw InputError("prime " + std::to_string(prime) + " is not a supported prime");
  if (rank < 0 || rank > kMaxRank) throw InputError("rank " + std::to_string(rank) + " out of range");
  powers_.assign(static_cast<std::size_t>(rank), ExponentWord(rank));
  comms_.assign(static_cast<std::size_t>(rank * rank), ExponentWord(rank));
}

void PcPresentation::check_index(int i) const {
  if (i < 0 || i >= rank_)
    throw InputError("generator index " + std::to_string(i + 1) + " outside [1, " + std::to_string(rank_) + "]");
}

void PcPresentation::check_tail(const ExponentWord& tail, int after, const char* what) const {
  if (tail.rank() != rank_) throw InputError(std::string(what) + " tail has wrong rank");
  for (int k = 0; k < rank_; ++k) {
    if (tail[k] >= prime_) throw InputError(std::string(what) + " tail exponent not reduced");
    if (k <= after && tail[k] != 0)
      throw InputError(std::string(what) + " tail involves a" + std::to_string(k + 1) +
                       ", must be supported on generators after a" + std::to_string(after + 1));
  }
}

void PcPresentation::check_weight_rule(int j, int i, const ExponentWord& tail) const {
  if (weights_.empty()) return;
  const int need = weights_[static_cast<std::size_t>(j)] + weights_[static_cast<std::size_t>(i)];
  for (int k = 0; k < rank_; ++k)
    if (tail[k] != 0 && weights_[static_cast<std::size_t>(k)] < need)
      throw InputError("commutator [a" + std::to_string(j + 1) + ", a" + std::to_string(i + 1) +
                       "] tail involves a" + std::to_string(k + 1) + " of weight below " + std::to_string(need));
}

const ExponentWord& PcPresentation::commutator(int j, int i) const {
  check_index(j);
  check_index(i);
  if (j <= i) throw InputError("commutator relations are stored for j > i");
  return comms_[static_cast<std::size_t>(j * rank_ + i)];
}

void PcPresentation::set_power(int i, const ExponentWord& tail) {
  check_index(i);
  check_tail(tail, i, "power");
  powers_[static_cast<std::size_t>(i)] = tail;
}

void PcPresentation::set_commutator(int j, int i, const ExponentWord& tail) {
  check_index(j);
  check_index(i);
  if (j <= i) throw InputError("commutator relations are stored for j > i");
  check_tail(tail, j, "commutator");
  check_weight_rule(j, i, tail);
  comms_[static_cast<std::size_t>(j * rank_ + i)] = tail;
}

void PcPresentation::set_weights(std::vector<int> weights) {
  if (weights.empty()) {
    weights_.clear();
    return;
  }
  if (static_cast<int>(weights.size()) != rank_) throw InputError("weights must have one entry per generator");
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < 1) throw InputError("weights must be positive");
    if (k > 0 && weights[k] < weights[k - 1]) throw InputError("weights must be non-decreasing");
  }
  auto old = std::move(weights_);
  weights_ = std::move(weights);
  try {
    for (int j = 0; j < rank_; ++j)
      for (int i = 0; i < j; ++i) check_weight_rule(j, i, comms_[static_cast<std::size_t>(j * rank_ + i)]);
  } catch (...) {
    weights_ = std::move(old);
    throw;
  }
}

std::uint64_t PcPresentation::element_count() const {
  std::uint64_t n = 1;
  for (int k = 0; k < rank_; ++k) {
    if (n > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(prime_))
      throw DomainError("group order does not fit in 64 bits");
    n *= static_cast<std::uint64_t>(prime_);
  }
  return n;
}

PcPresentation PcPresentation::truncated(int rank) const {
  if (rank < 0 || rank > rank_) throw InputError("truncation rank out of range");
  PcPresentation q(prime_, rank);
  for (int i = 0; i < rank; ++i) {
    q.powers_[static_cast<std::size_t>(i)] = powers_[static_cast<std::size_t>(i)].resized(rank);
    for (int j = i + 1; j < rank; ++j)
      q.comms_[static_cast<std::size_t>(j * rank + i)] = comms_[static_cast<std::size_t>(j * rank_ + i)].resized(rank);
  }
  if (!weights_.empty()) q.weights_.assign(weights_.begin(), weights_.begin() + rank);
  return q;
}

// ---------------------------------------------------------------------------
// text format

namespace {

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view s, int line, const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(line, std::string("expected integer for ") + what + ", got '" + std::string(s) + "'");
  return v;
}

ExponentWord parse_word(const std::vector<std::string_view>& toks, std::size_t from, int rank, int p, int line) {
  ExponentWord w(rank);
  if (from >= toks.size()) throw ParseError(line, "missing word after '='");
  if (toks.size() == from + 1 && toks[from] == "1") return w;
  int last = -1;
  for (std::size_t t = from; t < toks.size(); ++t) {
    std::string_view f = toks[t];
    if (f.size() < 2 || f[0] != 'a') throw ParseError(line, "bad factor '" + std::string(f) + "'");
    const auto caret = f.find('^');
    const long long k = to_int(f.substr(1, caret == std::string_view::npos ? f.npos : caret - 1), line, "generator");
    const long long e = caret == std::string_view::npos ? 1 : to_int(f.substr(caret + 1), line, "exponent");
    if (k < 1 || k > rank) throw ParseError(line, "generator a" + std::to_string(k) + " out of range");
    if (k - 1 <= last) throw ParseError(line, "factors must have strictly increasing generator indices");
    last = static_cast<int>(k - 1);
    w.set(last, modp::reduce(e, p));
  }
  return w;
}

}  // namespace

PcPresentation parse_presentation(std::string_view text) {
  int prime = 0, rank = -1;
  PcPresentation pres;
  bool built = false;
  std::vector<bool> seen_pow, seen_comm;
  bool seen_weights = false;

  auto ensure_built = [&](int line) {
    if (built) return;
    if (prime == 0 || rank < 0) throw ParseError(line, "'p' and 'n' must precede relations");
    try {
      pres = PcPresentation(prime, rank);
    } catch (const InputError& e) {
      throw ParseError(line, e.what());
    }
    seen_pow.assign(static_cast<std::size_t>(rank), false);
    seen_comm.assign(static_cast<std::size_t>(rank * rank), false);
    built = true;
  };

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto toks = split_ws(line);
    if (toks.empty()) {
      if (nl == text.size()) break;
      continue;
    }
    const auto& kw = toks[0];
    try {
      if (kw == "p") {
        if (toks.size() != 2) throw ParseError(line_no, "expected 'p <prime>'");
        if (prime != 0) throw ParseError(line_no, "duplicate 'p'");
        const long long v = to_int(toks[1], line_no, "prime");
        if (!modp::is_prime(v) || v > kMaxPrime) throw ParseError(line_no, "p must be a prime <= 251");
        prime = static_cast<int>(v);
      } else if (kw == "n") {
        if (toks.size() != 2) throw ParseError(line_no, "expected 'n <rank>'");
        if (rank >= 0) throw ParseError(line_no, "duplicate 'n'");
        const long long v = to_int(toks[1], line_no, "rank");
        if (v < 0 || v > kMaxRank) throw ParseError(line_no, "rank out of range");
        rank = static_cast<int>(v);
      } else if (kw == "weights") {
        ensure_built(line_no);
        if (seen_weights) throw ParseError(line_no, "duplicate 'weights'");
        if (static_cast<int>(toks.size()) != rank + 1) throw ParseError(line_no, "expected one weight per generator");
        std::vector<int> w;
        for (std::size_t t = 1; t < toks.size(); ++t) w.push_back(static_cast<int>(to_int(toks[t], line_no, "weight")));
        pres.set_weights(std::move(w));
        seen_weights = true;
      } else if (kw == "pow") {
        ensure_built(line_no);
        if (toks.size() < 4 || toks[2] != "=") throw ParseError(line_no, "expected 'pow <i> = <word>'");
        const long long i = to_int(toks[1], line_no, "index");
        if (i < 1 || i > rank) throw ParseError(line_no, "index out of range");
        if (seen_pow[static_cast<std::size_t>(i - 1)]) throw ParseError(line_no, "duplicate power relation");
        seen_pow[static_cast<std::size_t>(i - 1)] = true;
        pres.set_power(static_cast<int>(i - 1), parse_word(toks, 3, rank, prime, line_no));
      } else if (kw == "comm") {
        ensure_built(line_no);
        if (toks.size() < 5 || toks[3] != "=") throw ParseError(line_no, "expected 'comm <j> <i> = <word>'");
        const long long j = to_int(toks[1], line_no, "index");
        const long long i = to_int(toks[2], line_no, "index");
        if (i < 1 || j > rank || j <= i) throw ParseError(line_no, "need 1 <= i < j <= n");
        const auto slot = static_cast<std::size_t>((j - 1) * rank + (i - 1));
        if (seen_comm[slot]) throw ParseError(line_no, "duplicate commutator relation");
        seen_comm[slot] = true;
        pres.set_commutator(static_cast<int>(j - 1), static_cast<int>(i - 1), parse_word(toks, 4, rank, prime, line_no));
      } else {
        throw ParseError(line_no, "unknown statement '" + std::string(kw) + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
    if (nl == text.size()) break;
  }
  if (prime == 0) throw ParseError(line_no, "missing 'p'");
  if (rank < 0) throw ParseError(line_no, "missing 'n'");
  ensure_built(line_no);
  return pres;
}

PcPresentation read_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

std::string format_presentation(const PcPresentation& pres) {
  std::ostringstream out;
  out << "p " << pres.prime() << "\nn " << pres.rank() << '\n';
  if (pres.has_weights()) {
    out << "weights";
    for (int w : pres.weights()) out << ' ' << w;
    out << '\n';
  }
  for (int i = 0; i < pres.rank(); ++i)
    if (!pres.power(i).is_identity()) out << "pow " << i + 1 << " = " << pres.power(i).to_string() << '\n';
  for (int j = 0; j < pres.rank(); ++j)
    for (int i = 0; i < j; ++i)
      if (!pres.commutator(j, i).is_identity())
        out << "comm " << j + 1 << ' ' << i + 1 << " = " << pres.commutator(j, i).to_string() << '\n';
  return out.str();
}

}  // namespace derq
