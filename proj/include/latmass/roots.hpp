#pragma once

// Conjugacy classes of primitive reflective roots of L and the local tests
// that decide whether a candidate class can exist.

#include <cstdint>
#include <string>
#include <vector>

#include "latmass/lattice.hpp"

namespace latmass {

enum class RuleOutKind {
  NonResidue,        // a Legendre symbol / congruence t^2 = c (mod p) fails
  CongruenceFilter,  // e' = 3 (mod 4) excludes the (-2e', -2d_e) shape
};

struct RuleOutReason {
  RuleOutKind kind;
  std::int64_t prime = 0;  // 4 for the congruence filter
  std::string detail;      // e.g. "3t^2 = -1 (mod 5) has no solution"

  friend bool operator==(const RuleOutReason&, const RuleOutReason&) = default;
};

struct Existence {
  bool holds = true;  // necessary conditions hold (never a proof of existence)
  std::vector<RuleOutReason> reasons;

  friend bool operator==(const Existence&, const Existence&) = default;
};

/// Candidate class with norm -norm_factor*e' and complement determinant
/// -det_factor*d_e.
struct RootClass {
  std::vector<std::int64_t> subset;  // primes dividing e'
  std::int64_t e_prime = 1;
  std::int64_t d_e = 1;
  int norm_factor = 2;
  int det_factor = 2;
  std::int64_t norm = 0;
  std::int64_t comp_det = 0;
  int multiplicity = 1;    // classes counted in the volume sum
  int max_conjugates = 1;  // classes that may actually occur
  Existence existence;

  bool exists() const { return existence.holds; }
  std::string label() const;  // "(-2*3, -8*5)"

  friend bool operator==(const RootClass&, const RootClass&) = default;
};

struct RootInventory {
  DiscriminantSpec spec;
  std::vector<RootClass> classes;

  std::vector<RootClass> existing() const;
};

/// (scale*d_e) t^2 = -k (mod p) has a solution.
bool solvability_test(std::int64_t d_e, int k, std::int64_t p, int scale);

RootInventory enumerate_root_classes(const DiscriminantSpec& spec);

/// Hasse invariant of the complement at an odd prime: eps_p(L) * (comp_det, norm)_p.
/// Only meaningful for d = 1 (mod 4).
int complement_hasse(const DiscriminantSpec& spec, const RootClass& rc, std::int64_t p);

/// +1 iff the complement is p-adically U + <-comp_det>, i.e. its unimodular
/// part is hyperbolic at p.
int complement_hyperbolic_sign(const DiscriminantSpec& spec, const RootClass& rc, std::int64_t p);

}  // namespace latmass
