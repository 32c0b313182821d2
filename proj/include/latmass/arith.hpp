#pragma once

// Exact arithmetic substrate: big integers, normalized rationals, residue
// symbols and local Hilbert symbols.

#include <compare>
#include <concepts>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace latmass {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number, always kept in lowest terms with a positive
/// denominator, so equality is structural.
class Rational {
 public:
  Rational() = default;
  template <std::integral T>
  Rational(T n) : num_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt n) : num_(std::move(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(BigInt num, BigInt den);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  BigInt floor() const;
  double to_double() const;

  /// "num/den"; integers keep the "/1" so every value has the same shape.
  std::string str() const;
  /// Accepts "num/den" or a bare integer.
  static Rational parse(std::string_view text);

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  void normalize();

  BigInt num_{0};
  BigInt den_{1};
};

Rational pow(const Rational& base, int exponent);

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Kronecker symbol (a/n). Defined for every n; (a/0) is 1 for a = ±1, else 0.
int kronecker(const BigInt& a, const BigInt& n);
int kronecker(std::int64_t a, std::int64_t n);

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
  std::vector<PrimePower> factors;  // ascending primes
  bool squarefree = true;

  std::vector<std::int64_t> primes() const;
};

Factorization squarefree_factor(std::uint64_t n);

/// Exponent of the prime p in n (n != 0).
int valuation(const BigInt& n, std::int64_t p);

/// A place of Q: either a finite prime or the real place.
class Place {
 public:
  static Place infinity() { return Place(0); }
  /// Throws std::invalid_argument unless p is prime.
  static Place prime(std::int64_t p);

  bool is_infinite() const { return p_ == 0; }
  std::int64_t p() const { return p_; }
  std::string str() const;

  friend bool operator==(const Place&, const Place&) = default;

 private:
  explicit Place(std::int64_t p) : p_(p) {}
  std::int64_t p_;
};

/// Local Hilbert symbol (a,b)_v for nonzero rationals.
int hilbert_symbol(const Rational& a, const Rational& b, const Place& v);

/// Hasse invariant prod_{i<j} (a_i, a_j)_v of a diagonal form.
int hasse_invariant_diag(std::span<const Rational> entries, const Place& v);

/// B_2(x) = x^2 - x + 1/6 on [0, 1).
Rational bernoulli2_poly(const Rational& x);

/// Primes dividing a nonzero integer (via squarefree_factor on |n|).
std::vector<std::int64_t> prime_divisors(const BigInt& n);

}  // namespace latmass
