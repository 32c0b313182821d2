#include "latmass/volume.hpp"

#include <stdexcept>

namespace latmass {

namespace {

Rational unimodular_density(std::int64_t p) { return Rational(1) - Rational(1, BigInt(p) * p); }

bool tabulated_exact(const DiscriminantSpec& spec) {
  return spec.residue == 1 || spec.d == 2 || spec.d == 3 || spec.d == 7 || spec.d == 15;
}

// Volume with a fixed 2-adic shape and the listed odd primes ramified.
Rational shaped_volume(TwoAdicShape shape, const std::map<std::int64_t, int>& odd_signs) {
  static const std::map<TwoAdicShape, int> two_part = {
      {TwoAdicShape::Disc2, 2},       {TwoAdicShape::Disc4, 4},   {TwoAdicShape::Disc8Hyp, 8},
      {TwoAdicShape::Disc8NonHyp, 8}, {TwoAdicShape::Disc16, 16},
  };
  BigInt det = two_part.at(shape);
  std::map<std::int64_t, Rational> densities{{2, local_density_two(shape)}};
  for (const auto& [p, sign] : odd_signs) {
    det *= p;
    densities.emplace(p, local_density_odd(p, true, sign));
  }
  return siegel_volume_rank3(det, densities);
}

}  // namespace

std::string to_string(Exactness e) { return e == Exactness::Exact ? "exact" : "upper_bound"; }

Exactness exactness_from_string(const std::string& s) {
  if (s == "exact") return Exactness::Exact;
  if (s == "upper_bound") return Exactness::UpperBound;
  throw std::invalid_argument("unknown exactness: " + s);
}

std::string to_string(TwoAdicShape s) {
  switch (s) {
    case TwoAdicShape::Disc2: return "disc2";
    case TwoAdicShape::Disc4: return "disc4";
    case TwoAdicShape::Disc8Hyp: return "disc8_hyp";
    case TwoAdicShape::Disc8NonHyp: return "disc8_nonhyp";
    case TwoAdicShape::Disc16: return "disc16";
  }
  return "?";
}

Rational siegel_volume_rank3(const BigInt& det, const std::map<std::int64_t, Rational>& densities) {
  if (det == 0) throw std::invalid_argument("siegel_volume_rank3: zero determinant");
  if (!densities.contains(2)) throw std::invalid_argument("siegel_volume_rank3: missing density at 2");
  for (std::int64_t p : prime_divisors(det)) {
    if (!densities.contains(p)) {
      throw std::invalid_argument("siegel_volume_rank3: missing density at ramified prime " + std::to_string(p));
    }
  }
  // 2 |det|^2 * (pi^-2 / 2) * prod_p a_p^-1, with the unramified product
  // folded into zeta(2) = pi^2 / 6.
  const BigInt abs_det = det < 0 ? BigInt(-det) : det;
  Rational v = Rational(abs_det * abs_det, 6);
  for (const auto& [p, a] : densities) {
    if (a.sign() <= 0) throw std::invalid_argument("siegel_volume_rank3: density must be positive");
    v *= unimodular_density(p) / a;
  }
  return v;
}

Rational local_density_odd(std::int64_t p, bool ramified, int hyperbolic_sign) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("local_density_odd: p must be an odd prime");
  }
  const Rational base = unimodular_density(p);
  if (!ramified) return base;
  if (hyperbolic_sign != 1 && hyperbolic_sign != -1) throw std::invalid_argument("local_density_odd: sign must be +-1");
  return Rational(2 * p) * base / (Rational(1) + Rational(hyperbolic_sign, p));
}

Rational local_density_two(TwoAdicShape shape) {
  const Rational base(3, 4);  // 1 - 2^-2
  switch (shape) {
    case TwoAdicShape::Disc2: return Rational(16) * base;
    case TwoAdicShape::Disc4: return Rational(64) * base / Rational(3, 2);
    case TwoAdicShape::Disc8Hyp: return Rational(256) * base / Rational(3, 2);
    case TwoAdicShape::Disc8NonHyp: return Rational(256) * base / Rational(1, 2);
    case TwoAdicShape::Disc16: return Rational(512);
  }
  throw std::logic_error("local_density_two: bad shape");
}

TwoAdicShape two_adic_shape(const DiscriminantSpec& spec, const RootClass& rc) {
  switch (rc.det_factor) {
    case 2: return TwoAdicShape::Disc2;
    case 4: return TwoAdicShape::Disc4;
    case 8:
      if (spec.residue == 3 && rc.norm_factor == 2 && rc.e_prime % 4 == 3) return TwoAdicShape::Disc8NonHyp;
      return TwoAdicShape::Disc8Hyp;
    case 16: return TwoAdicShape::Disc16;
    default: throw std::invalid_argument("two_adic_shape: unexpected determinant factor");
  }
}

ExactVolume complement_volume(const DiscriminantSpec& spec, const RootClass& rc) {
  if (!rc.exists()) throw std::invalid_argument("complement_volume: class " + rc.label() + " is ruled out");
  std::map<std::int64_t, int> signs;
  if (spec.residue == 1) {
    for (auto p : squarefree_factor(static_cast<std::uint64_t>(rc.d_e)).primes()) {
      signs[p] = complement_hyperbolic_sign(spec, rc, p);
    }
  } else {
    for (auto p : rc.subset) signs[p] = 1;
  }
  const Exactness ex = tabulated_exact(spec) ? Exactness::Exact : Exactness::UpperBound;
  return {shaped_volume(two_adic_shape(spec, rc), signs), ex};
}

Rational complement_volume_max(const DiscriminantSpec& spec, const RootClass& rc) {
  std::map<std::int64_t, int> signs;
  const auto& ramified =
      spec.residue == 1 ? squarefree_factor(static_cast<std::uint64_t>(rc.d_e)).primes() : rc.subset;
  for (auto p : ramified) signs[p] = 1;
  TwoAdicShape shape = two_adic_shape(spec, rc);
  if (shape == TwoAdicShape::Disc8NonHyp) shape = TwoAdicShape::Disc8Hyp;
  return shaped_volume(shape, signs);
}

Rational vol_OL(const DiscriminantSpec& spec, const Rational& q) {
  const int k = spec.k();
  const Rational two_k = pow(Rational(2), k);
  switch (spec.residue) {
    case 1: return q * Rational(spec.d) * Rational(spec.d) / (two_k * 32 * 3);
    case 3: return Rational(2) * q * Rational(spec.d) * Rational(spec.d) / (two_k * 8 * 3);
    case 2: {
      const Rational twice(2 * spec.core());
      return q * twice * twice / (two_k * 4 * 3);
    }
    default: throw std::logic_error("vol_OL: bad residue");
  }
}

}  // namespace latmass
