#pragma once

// Both sides of the volume identity Vol(O(L)) * K = 1/2 sum Vol(O(e^perp)),
// and the per-d decision built on it.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latmass/lfunction.hpp"
#include "latmass/volume.hpp"

namespace latmass {

enum class Mode { Bound, Exact };

std::string to_string(Mode m);
Mode mode_from_string(const std::string& s);

/// coeff * sqrt(radicand), radicand > 0.
struct Surd {
  Rational coeff;
  std::int64_t radicand = 1;

  std::string str() const;  // "33√33/720"
  double to_double() const;

  friend bool operator==(const Surd&, const Surd&) = default;
};

/// Exact comparison of a surd with a rational.
std::strong_ordering compare(const Surd& s, const Rational& r);

enum class OutcomeKind { NotFree, FeasibleK, FeasibleKAtMost };

std::string to_string(OutcomeKind k);
OutcomeKind outcome_from_string(const std::string& s);

struct ClassTerm {
  RootClass cls;
  std::optional<ExactVolume> volume;  // present iff the class is not ruled out
  Rational max_volume;
};

struct Verdict {
  DiscriminantSpec spec;
  Mode mode = Mode::Exact;
  LData ldata;
  Rational lhs_unit;         // Vol(O(L)), the left side per unit of K
  Surd lhs_bound;            // lower bound for the left side at K = 8
  ExactVolume rhs;           // 1/2 sum of multiplicity * complement volume
  Rational class_volume_sum; // the un-halved sum
  Rational K;                // rhs / lhs_unit
  bool k_integer = false;
  bool k_even = false;
  OutcomeKind outcome = OutcomeKind::NotFree;
  std::optional<BigInt> k_at_most;  // FeasibleKAtMost only
  std::string witness;
  std::vector<ClassTerm> terms;

  bool feasible() const { return outcome != OutcomeKind::NotFree; }
};

/// Closed-form upper bound minus ruled-out classes and the 2-adic refinement.
ExactVolume rhs_bound(const DiscriminantSpec& spec);

/// True where every complement volume is known exactly: d = 1 (mod 4) and d in {2, 3, 7, 15}.
bool has_exact_rhs(const DiscriminantSpec& spec);

/// Exact right-hand side where available, rhs_bound otherwise.
ExactVolume rhs_exact(const DiscriminantSpec& spec);

/// Lower bound for 8 * Vol(O(L)) from L(2, chi) >= zeta(4)/zeta(2).
Surd lhs_lower_bound(const DiscriminantSpec& spec);

Verdict verdict(const DiscriminantSpec& spec, Mode mode = Mode::Exact);

/// Verdicts for every square-free d in [d_min, d_max], ordered by d.
std::vector<Verdict> scan(std::int64_t d_min, std::int64_t d_max, Mode mode = Mode::Exact, unsigned jobs = 1);

}  // namespace latmass
