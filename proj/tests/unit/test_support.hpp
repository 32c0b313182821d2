#pragma once

#include <random>

#include "latmass/lattice.hpp"

namespace latmass::testing {

// Random unimodular matrix as a product of elementary column operations.
inline IntMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 12) {
  IntMatrix u(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    const auto i = idx(rng);
    const auto j = idx(rng);
    if (i == j) {
      for (std::size_t r = 0; r < n; ++r) u[r][i] = -u[r][i];
      continue;
    }
    const int c = coef(rng);
    for (std::size_t r = 0; r < n; ++r) u[r][i] += c * u[r][j];
  }
  return u;
}

inline QuadLattice gram(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return QuadLattice::from_rows(rows);
}

inline QuadLattice diag(std::initializer_list<std::int64_t> entries) {
  std::vector<std::int64_t> v(entries);
  return QuadLattice::diagonal(v);
}

}  // namespace latmass::testing
