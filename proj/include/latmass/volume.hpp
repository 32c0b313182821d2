#pragma once

// Co-volumes from the Siegel mass formula, with pi^2 already cancelled so
// every value is an exact rational.

#include <cstdint>
#include <map>
#include <string>

#include "latmass/roots.hpp"

namespace latmass {

enum class Exactness { Exact, UpperBound };

std::string to_string(Exactness e);
Exactness exactness_from_string(const std::string& s);

struct ExactVolume {
  Rational value;
  Exactness exactness = Exactness::Exact;

  friend bool operator==(const ExactVolume&, const ExactVolume&) = default;
};

/// Volume of a rank-3 lattice of signature (2,1) with determinant det.
/// densities must contain 2 and every odd prime dividing det; other primes
/// take the unimodular density 1 - p^-2. Throws std::invalid_argument when a
/// ramified prime is missing.
Rational siegel_volume_rank3(const BigInt& det, const std::map<std::int64_t, Rational>& densities);

/// 1 - p^-2 if unramified, else 2p(1 - p^-2)/(1 + sign/p).
Rational local_density_odd(std::int64_t p, bool ramified, int hyperbolic_sign);

enum class TwoAdicShape { Disc2, Disc4, Disc8Hyp, Disc8NonHyp, Disc16 };

std::string to_string(TwoAdicShape s);
Rational local_density_two(TwoAdicShape shape);

/// 2-adic shape of the complement of a root class.
TwoAdicShape two_adic_shape(const DiscriminantSpec& spec, const RootClass& rc);

/// Complement volume of an existing class. Exact for d = 1 (mod 4) and for the
/// fully worked cases d in {2, 3, 7, 15}; an upper bound elsewhere. Throws
/// std::invalid_argument on a ruled-out class.
ExactVolume complement_volume(const DiscriminantSpec& spec, const RootClass& rc);

/// Largest volume the class shape allows: every ramified sign taken as +1 and
/// no 2-adic refinement. Defined for ruled-out classes too.
Rational complement_volume_max(const DiscriminantSpec& spec, const RootClass& rc);

/// Vol(O(L)) given L(2, chi_D) = q sqrt(D) pi^2.
Rational vol_OL(const DiscriminantSpec& spec, const Rational& q);

}  // namespace latmass
