#include "derq/modp.hpp"

#include <cstdlib>
#include <utility>

namespace derq::modp {

int inverse(int a, int p) {
  // p is prime: a^(p-2)
  long long base = reduce(a, p), result = 1;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<int>(result);
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int row_reduce(Matrix& m, int p) {
  if (m.empty()) return 0;
  const auto cols = m.front().size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    const int inv = inverse(m[row][col], p);
    for (auto& x : m[row]) x = static_cast<int>(static_cast<long long>(x) * inv % p);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const int f = m[r][col];
      for (std::size_t c = 0; c < cols; ++c)
        m[r][c] = reduce(m[r][c] - static_cast<long long>(f) * m[row][c], p);
    }
    ++row;
  }
  return static_cast<int>(row);
}

int rank(Matrix m, int p) { return row_reduce(m, p); }

std::optional<Matrix> inverse(const Matrix& m, int p) {
  const auto n = m.size();
  Matrix aug(n, Vector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = reduce(m[i][j], p);
    aug[i][n + i] = 1;
  }
  if (row_reduce(aug, p) < static_cast<int>(n)) return std::nullopt;
  for (std::size_t i = 0; i < n; ++i)
    if (aug[i][i] != 1) return std::nullopt;
  Matrix inv(n, Vector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

std::optional<AffineSpace> solve(const Matrix& a, const Vector& b, int cols, int p) {
  const auto ucols = static_cast<std::size_t>(cols);
  Matrix aug;
  aug.reserve(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    Vector row(ucols + 1);
    for (std::size_t c = 0; c < ucols; ++c) row[c] = reduce(a[r][c], p);
    row[ucols] = reduce(b[r], p);
    aug.push_back(std::move(row));
  }
  const int rk = row_reduce(aug, p);
  std::vector<int> pivot_col(static_cast<std::size_t>(rk), -1);
  std::vector<bool> is_pivot(ucols, false);
  for (int r = 0; r < rk; ++r) {
    std::size_t c = 0;
    while (c <= ucols && aug[static_cast<std::size_t>(r)][c] == 0) ++c;
    if (c == ucols) return std::nullopt;  // 0 = nonzero
    pivot_col[static_cast<std::size_t>(r)] = static_cast<int>(c);
    is_pivot[c] = true;
  }
  AffineSpace space;
  space.particular.assign(ucols, 0);
  for (int r = 0; r < rk; ++r)
    space.particular[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = aug[static_cast<std::size_t>(r)][ucols];
  for (std::size_t free = 0; free < ucols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(ucols, 0);
    v[free] = 1;
    for (int r = 0; r < rk; ++r)
      v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] = reduce(-aug[static_cast<std::size_t>(r)][free], p);
    space.basis.push_back(std::move(v));
  }
  return space;
}

Vector multiply(const Matrix& m, const Vector& v, int p) {
  Vector out(m.size(), 0);
  for (std::size_t r = 0; r < m.size(); ++r) {
    long long acc = 0;
    for (std::size_t c = 0; c < v.size(); ++c) acc += static_cast<long long>(m[r][c]) * v[c];
    out[r] = reduce(acc, p);
  }
  return out;
}

}  // namespace derq::modp
