#include "latmass/arith.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/integer.hpp>

namespace latmass {

namespace mp = boost::multiprecision;

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = mp::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

BigInt Rational::floor() const {
  BigInt q = num_ / den_;  // truncates toward zero
  if (num_ < 0 && q * den_ != num_) q -= 1;
  return q;
}

double Rational::to_double() const {
  // Scale so that both parts convert without overflow for large values.
  return static_cast<double>(mp::cpp_bin_float_50(num_) / mp::cpp_bin_float_50(den_));
}

std::string Rational::str() const { return num_.str() + "/" + den_.str(); }

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto to_int = [](std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rational::parse: empty component");
    std::size_t start = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("Rational::parse: bad integer");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("Rational::parse: bad integer '" + std::string(s) + "'");
    }
    return BigInt(std::string(s.front() == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(to_int(text));
  return Rational(to_int(trim(text.substr(0, slash))), to_int(trim(text.substr(slash + 1))));
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) { return *this += -rhs; }

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_ == 0) throw std::domain_error("Rational: division by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational pow(const Rational& base, int exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  Rational result(1);
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

// ---------------------------------------------------------------------------
// Kronecker symbol

namespace {

template <typename Int>
int kronecker_impl(Int a, Int n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    Int a8 = a % 8;
    if (a8 < 0) a8 += 8;
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol for odd positive n.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      Int n8 = n % 8;
      if (n8 == 3 || n8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

int kronecker(const BigInt& a, const BigInt& n) { return kronecker_impl<BigInt>(a, n); }
int kronecker(std::int64_t a, std::int64_t n) {
  // Widen so that negating INT64_MIN cannot overflow.
  return kronecker_impl<__int128>(a, n);
}

// ---------------------------------------------------------------------------
// Primality and factorization

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
  u64 x = pow_mod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  // Brent's variant; the increment c walks until a proper factor appears.
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
    u64 x = 2, y = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 kBatch = 64;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 f = pollard_rho(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // These twelve bases are a deterministic witness set below 3.3e24.
  for (u64 a : kSmall) {
    if (miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

std::vector<std::int64_t> Factorization::primes() const {
  std::vector<std::int64_t> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(static_cast<std::int64_t>(f.prime));
  return out;
}

Factorization squarefree_factor(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("squarefree_factor: n must be positive");
  std::vector<u64> raw;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    while (n % p == 0) {
      raw.push_back(p);
      n /= p;
    }
  }
  for (u64 p = 17; p < 1000 && p * p <= n; p += 2) {
    while (n % p == 0) {
      raw.push_back(p);
      n /= p;
    }
  }
  factor_into(n, raw);
  std::sort(raw.begin(), raw.end());
  Factorization out;
  for (u64 p : raw) {
    if (!out.factors.empty() && out.factors.back().prime == p) {
      ++out.factors.back().exponent;
      out.squarefree = false;
    } else {
      out.factors.push_back({p, 1});
    }
  }
  return out;
}

int valuation(const BigInt& n, std::int64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  BigInt m = n;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

std::vector<std::int64_t> prime_divisors(const BigInt& n) {
  if (n == 0) throw std::domain_error("prime_divisors of zero");
  BigInt a = n < 0 ? BigInt(-n) : n;
  if (a > std::numeric_limits<std::uint64_t>::max()) {
    throw std::out_of_range("prime_divisors: value exceeds 64 bits");
  }
  return squarefree_factor(a.convert_to<std::uint64_t>()).primes();
}

// ---------------------------------------------------------------------------
// Places and Hilbert symbols

Place Place::prime(std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("Place::prime: " + std::to_string(p) + " is not prime");
  }
  return Place(p);
}

std::string Place::str() const { return is_infinite() ? std::string("inf") : std::to_string(p_); }

namespace {

// Same square class as the rational: num * den.
BigInt square_class_rep(const Rational& r) { return r.num() * r.den(); }

int mod8(const BigInt& u) {
  int m = static_cast<int>(u % 8);
  return m < 0 ? m + 8 : m;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("hilbert_symbol: zero argument");
  if (v.is_infinite()) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;

  const std::int64_t p = v.p();
  BigInt x = square_class_rep(a);
  BigInt y = square_class_rep(b);
  const int alpha = valuation(x, p);
  const int beta = valuation(y, p);
  BigInt u = x;
  BigInt w = y;
  for (int i = 0; i < alpha; ++i) u /= p;
  for (int i = 0; i < beta; ++i) w /= p;

  if (p == 2) {
    auto eps = [](int m) { return ((m - 1) / 2) & 1; };
    auto omega = [](int m) { return ((m * m - 1) / 8) & 1; };
    const int um = mod8(u);
    const int wm = mod8(w);
    const int e = eps(um) * eps(wm) + alpha * omega(wm) + beta * omega(um);
    return (e & 1) ? -1 : 1;
  }

  int result = 1;
  if ((alpha & 1) && (beta & 1) && (p % 4 == 3)) result = -result;
  if (beta & 1) result *= kronecker(u, BigInt(p));
  if (alpha & 1) result *= kronecker(w, BigInt(p));
  return result;
}

int hasse_invariant_diag(std::span<const Rational> entries, const Place& v) {
  if (entries.empty()) throw std::invalid_argument("hasse_invariant_diag: empty list");
  int result = 1;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      result *= hilbert_symbol(entries[i], entries[j], v);
    }
  }
  return result;
}

Rational bernoulli2_poly(const Rational& x) {
  if (x < Rational(0) || x >= Rational(1)) {
    throw std::domain_error("bernoulli2_poly: argument outside [0, 1)");
  }
  return x * x - x + Rational(1, 6);
}

}  // namespace latmass
