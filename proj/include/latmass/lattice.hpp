#pragma once

// Integral quadratic lattices: the lattice L attached to Q(sqrt d), invariant
// factors, Hasse invariants, Jordan symbols and 2-adic genus comparison.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latmass/arith.hpp"

namespace latmass {

using IntMatrix = std::vector<std::vector<BigInt>>;

struct Signature {
  int positive = 0;
  int negative = 0;
  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Nondegenerate symmetric integer Gram matrix.
class QuadLattice {
 public:
  explicit QuadLattice(IntMatrix gram);

  static QuadLattice diagonal(std::span<const std::int64_t> entries);
  /// Hyperbolic plane U(scale) = [[0, scale], [scale, 0]].
  static QuadLattice hyperbolic(std::int64_t scale = 1);
  static QuadLattice from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  std::size_t rank() const { return gram_.size(); }
  const IntMatrix& gram() const { return gram_; }
  const BigInt& det() const { return det_; }
  const Signature& signature() const { return signature_; }
  bool is_even() const;

  /// Gram matrix of the sublattice spanned by the columns of basis: B^T G B.
  QuadLattice transformed(const IntMatrix& basis) const;
  QuadLattice operator+(const QuadLattice& other) const;  // orthogonal sum

  friend bool operator==(const QuadLattice& a, const QuadLattice& b) { return a.gram_ == b.gram_; }

 private:
  IntMatrix gram_;
  BigInt det_;
  Signature signature_;
};

/// Square-free d > 1 together with the data derived from it.
struct DiscriminantSpec {
  std::int64_t d = 0;
  std::vector<std::int64_t> primes;  // ascending, all primes of d
  int residue = 0;                   // d mod 4, one of 1, 2, 3
  std::int64_t D = 0;                // field discriminant
  std::optional<std::int64_t> dprime;  // d / 2 when d = 2 mod 4

  /// Odd primes that index root subsets: primes of d, or of d' when d = 2 mod 4.
  std::vector<std::int64_t> subset_primes() const;
  /// k in the volume formulas: the number of subset primes.
  int k() const { return static_cast<int>(subset_primes().size()); }
  /// d, or d' for the even residue.
  std::int64_t core() const { return dprime.value_or(d); }

  friend bool operator==(const DiscriminantSpec&, const DiscriminantSpec&) = default;
};

/// Throws std::invalid_argument for d < 2 or d not square-free.
DiscriminantSpec make_discriminant_spec(std::int64_t d);

/// U + [[2,1],[1,(1-d)/2]] for d = 1 mod 4, U + diag(-2, 2d) otherwise.
QuadLattice build_L(const DiscriminantSpec& spec);

/// Smith normal form divisor chain of the Gram matrix.
std::vector<BigInt> invariant_factors(const QuadLattice& lat);

/// A diagonal form rationally equivalent to the lattice.
std::vector<Rational> rational_diagonalization(const QuadLattice& lat);

int hasse_invariant(const QuadLattice& lat, const Place& v);

/// One Jordan constituent p^valuation * f with f unimodular.
struct JordanConstituent {
  int valuation = 0;
  int dim = 0;
  int sign = 1;       // Legendre symbol of the unit determinant; at 2: + iff det = +-1 mod 8
  bool odd = false;   // type I at p = 2 (always false for odd p)
  int oddity = 0;     // trace of the diagonalized odd part mod 8 (p = 2 only)

  friend bool operator==(const JordanConstituent&, const JordanConstituent&) = default;
};

struct JordanSymbol {
  std::int64_t prime = 2;
  std::vector<JordanConstituent> constituents;  // strictly increasing valuation

  int rank() const;
  int det_valuation() const;
  /// Conway-Sloane style text, e.g. "1^{+2}_{II} 2^{-1}_{3}".
  std::string str() const;

  friend bool operator==(const JordanSymbol&, const JordanSymbol&) = default;
};

JordanSymbol jordan_symbol(const QuadLattice& lat, std::int64_t p);
JordanSymbol two_adic_symbol(const QuadLattice& lat);

/// Canonical 2-adic symbol: signs walked to the first form of each train,
/// oddities fused per compartment.
struct CanonicalTwoAdic {
  struct Form {
    int valuation;
    int dim;
    int sign;
    bool odd;
    friend bool operator==(const Form&, const Form&) = default;
  };
  struct Compartment {
    int first_valuation;
    int oddity;
    friend bool operator==(const Compartment&, const Compartment&) = default;
  };
  std::vector<Form> forms;
  std::vector<Compartment> compartments;

  friend bool operator==(const CanonicalTwoAdic&, const CanonicalTwoAdic&) = default;
};

CanonicalTwoAdic canonical_two_adic(const JordanSymbol& symbol);

/// Equivalence under oddity fusion and sign walking. Throws on rank mismatch.
bool two_adic_equivalent(const JordanSymbol& s1, const JordanSymbol& s2);

/// Same rank, signature, determinant; equal local invariants at every p | 2 det.
bool genus_equal(const QuadLattice& l1, const QuadLattice& l2);

/// Kneser's sufficient condition for class = genus (indefinite, rank >= 3): no
/// prime at which the lattice diagonalizes with pairwise distinct powers of p.
bool kneser_class_equals_genus(const QuadLattice& lat);

/// Sublattice of vectors orthogonal to v, returned with an integral basis.
QuadLattice orthogonal_complement(const QuadLattice& lat, std::span<const BigInt> v);

/// Norm (v, v) of an integer coordinate vector.
BigInt norm(const QuadLattice& lat, std::span<const BigInt> v);

}  // namespace latmass
