#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace derq::modp {

using Vector = std::vector<int>;
/// Row-major dense matrix over F_p.
using Matrix = std::vector<Vector>;

inline int reduce(long long x, int p) {
  const long long r = x % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

int inverse(int a, int p);
bool is_prime(long long n);

/// Row echelon form in place; returns the rank.
int row_reduce(Matrix& m, int p);
int rank(Matrix m, int p);
std::optional<Matrix> inverse(const Matrix& m, int p);

/// Solution set of A x = b as x0 + span(basis). Empty optional when the
/// system has no solution. `cols` is the number of unknowns.
struct AffineSpace {
  Vector particular;
  std::vector<Vector> basis;
};
std::optional<AffineSpace> solve(const Matrix& a, const Vector& b, int cols, int p);

Vector multiply(const Matrix& m, const Vector& v, int p);

}  // namespace derq::modp
