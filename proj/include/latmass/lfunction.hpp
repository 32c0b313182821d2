#pragma once

// Special values attached to the real quadratic character chi_D.

#include <cstdint>
#include <string>

#include "latmass/arith.hpp"

namespace latmass {

struct LData {
  std::int64_t D = 0;
  Rational B2chi;    // generalized Bernoulli number B_{2,chi}
  Rational q;        // L(2, chi_D) = q sqrt(D) pi^2
  Rational zetaKm1;  // zeta_K(-1)

  friend bool operator==(const LData&, const LData&) = default;
};

bool is_fundamental_discriminant(std::int64_t D);

/// Throws std::invalid_argument unless D > 1 is a fundamental discriminant.
LData compute_ldata(std::int64_t D);

/// (p + 3) / (12 zeta_K(-1)) for K = Q(sqrt p), p = 1 (mod 4) prime.
Rational K_prime(std::int64_t p);

struct NumericL {
  double value;
  double error_bound;  // terms^(1-s) / (s-1)
};

/// Partial sum of sum chi_D(n) n^-s over n <= terms. D = 1 gives zeta(s).
NumericL l_numeric(std::int64_t D, double s, std::int64_t terms);

/// Siegel's finite formula (1/60) sum_{b^2 < D, b = D mod 2} sigma_1((D - b^2)/4).
Rational zeta_siegel_oracle(std::int64_t D);

/// "c√m·π²/b" rendering of q sqrt(D) pi^2 with m square-free.
std::string render_lvalue(const LData& data);

}  // namespace latmass
