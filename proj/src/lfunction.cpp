#include "latmass/lfunction.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace latmass {

namespace {

BigInt from_i128(__int128 x) {
  const bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-x) : static_cast<unsigned __int128>(x);
  BigInt out = static_cast<std::uint64_t>(u >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(u);
  return neg ? BigInt(-out) : out;
}

std::int64_t sigma1(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      s += i;
      if (i != n / i) s += n / i;
    }
  }
  return s;
}

}  // namespace

bool is_fundamental_discriminant(std::int64_t D) {
  if (D < 1) return false;
  if (D == 1) return true;
  const int r = static_cast<int>(D % 4);
  if (r == 1) return squarefree_factor(static_cast<std::uint64_t>(D)).squarefree;
  if (r != 0) return false;
  const std::int64_t m = D / 4;
  if (m % 4 != 2 && m % 4 != 3) return false;
  return squarefree_factor(static_cast<std::uint64_t>(m)).squarefree;
}

LData compute_ldata(std::int64_t D) {
  if (D <= 1 || !is_fundamental_discriminant(D)) {
    throw std::invalid_argument(std::to_string(D) + " is not a fundamental discriminant > 1");
  }
  // D * sum chi(a) B_2(a/D) = (sum chi(a) a^2)/D - sum chi(a) a, the constant
  // term vanishing because chi sums to zero.
  __int128 s2 = 0, s1 = 0;
  for (std::int64_t a = 1; a <= D; ++a) {
    const int c = kronecker(D, a);
    if (c == 0) continue;
    s2 += static_cast<__int128>(c) * a * a;
    s1 += c * a;
  }
  LData out;
  out.D = D;
  out.B2chi = Rational(from_i128(s2), BigInt(D)) - Rational(from_i128(s1));
  out.q = out.B2chi / (Rational(D) * Rational(D));
  out.zetaKm1 = out.B2chi / Rational(24);
  return out;
}

Rational K_prime(std::int64_t p) {
  if (p < 5 || p % 4 != 1 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("K_prime: " + std::to_string(p) + " is not a prime = 1 (mod 4)");
  }
  return Rational(p + 3) / (Rational(12) * compute_ldata(p).zetaKm1);
}

NumericL l_numeric(std::int64_t D, double s, std::int64_t terms) {
  if (!is_fundamental_discriminant(D)) throw std::invalid_argument(std::to_string(D) + " is not a fundamental discriminant");
  if (!(s > 1.0)) throw std::invalid_argument("l_numeric: need s > 1");
  if (terms < 1) throw std::invalid_argument("l_numeric: need at least one term");
  std::vector<int> chi(static_cast<std::size_t>(D));
  for (std::int64_t a = 0; a < D; ++a) chi[static_cast<std::size_t>(a)] = D == 1 ? 1 : kronecker(D, a);
  // Summed from the small tail upwards to limit rounding.
  long double acc = 0.0L;
  for (std::int64_t n = terms; n >= 1; --n) {
    const int c = chi[static_cast<std::size_t>(n % D)];
    if (c != 0) acc += c * std::pow(static_cast<long double>(n), -static_cast<long double>(s));
  }
  const double bound = std::pow(static_cast<double>(terms), 1.0 - s) / (s - 1.0);
  return {static_cast<double>(acc), bound};
}

Rational zeta_siegel_oracle(std::int64_t D) {
  if (D <= 1 || !is_fundamental_discriminant(D)) {
    throw std::invalid_argument(std::to_string(D) + " is not a fundamental discriminant > 1");
  }
  std::int64_t total = 0;
  std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(D)));
  while (r * r >= D) --r;
  while ((r + 1) * (r + 1) < D) ++r;
  for (std::int64_t b = -r; b <= r; ++b) {
    if ((b - D) % 2 != 0) continue;
    total += sigma1((D - b * b) / 4);
  }
  return Rational(total, 60);
}

std::string render_lvalue(const LData& data) {
  // sqrt(D) = f sqrt(m) with m square-free.
  std::int64_t f = 1, m = 1;
  for (const auto& pp : squarefree_factor(static_cast<std::uint64_t>(data.D)).factors) {
    for (int i = 0; i < pp.exponent / 2; ++i) f *= static_cast<std::int64_t>(pp.prime);
    if (pp.exponent % 2) m *= static_cast<std::int64_t>(pp.prime);
  }
  const Rational c = data.q * Rational(f);
  std::ostringstream os;
  if (c.num() != 1) os << c.num();
  if (m != 1) os << "√" << m << "·";
  os << "π²";
  if (c.den() != 1) os << "/" << c.den();
  return os.str();
}

}  // namespace latmass
