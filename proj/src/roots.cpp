#include "latmass/roots.hpp"

#include <sstream>
#include <stdexcept>

namespace latmass {

namespace {

struct Shape {
  int norm_factor;
  int det_factor;
  int multiplicity;
  int max_conjugates;
};

// Per-residue candidate shapes for one subset of primes.
std::vector<Shape> shapes_for(int residue) {
  switch (residue) {
    case 1:
      return {{2, 2, 1, 1}};
    case 3:
      return {{4, 4, 1, 1}, {2, 2, 1, 1}, {2, 8, 1, 1}};
    case 2:
      return {{4, 2, 1, 1}, {4, 8, 1, 3}, {2, 4, 1, 1}, {2, 16, 2, 2}};
    default:
      throw std::logic_error("shapes_for: bad residue");
  }
}

std::string congruence_text(std::int64_t coeff, int k, std::int64_t p) {
  std::ostringstream os;
  if (coeff != 1) os << coeff;
  os << "t^2 = -" << k << " (mod " << p << ") has no solution";
  return os.str();
}

std::vector<std::vector<std::int64_t>> all_subsets(const std::vector<std::int64_t>& primes) {
  // Ordered by size, then lexicographically.
  std::vector<std::vector<std::int64_t>> out;
  const std::size_t n = primes.size();
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      std::vector<std::int64_t> s;
      for (auto i : idx) s.push_back(primes[i]);
      out.push_back(std::move(s));
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

Existence check_existence(const DiscriminantSpec& spec, const Shape& shape, const std::vector<std::int64_t>& subset,
                          std::int64_t e_prime, std::int64_t d_e) {
  Existence ex;
  if (spec.residue == 1) {
    for (auto p : subset) {
      if (kronecker(d_e, p) != 1) {
        ex.reasons.push_back({RuleOutKind::NonResidue, p, "(" + std::to_string(d_e) + "/" + std::to_string(p) + ") = -1"});
      }
    }
  } else {
    const int k = shape.norm_factor == 4 ? 2 : 1;
    const int scale = spec.residue == 2 ? 2 : 1;
    for (auto p : subset) {
      if (!solvability_test(d_e, k, p, scale)) {
        ex.reasons.push_back({RuleOutKind::NonResidue, p, congruence_text(scale * d_e, k, p)});
      }
    }
    if (spec.residue == 3 && shape.norm_factor == 2 && shape.det_factor == 2 && e_prime % 4 == 3) {
      ex.reasons.push_back({RuleOutKind::CongruenceFilter, 4, "e' = " + std::to_string(e_prime) + " = 3 (mod 4)"});
    }
  }
  ex.holds = ex.reasons.empty();
  return ex;
}

}  // namespace

std::string RootClass::label() const {
  std::ostringstream os;
  os << "(-" << norm_factor << "*" << e_prime << ", -" << det_factor << "*" << d_e << ")";
  return os.str();
}

std::vector<RootClass> RootInventory::existing() const {
  std::vector<RootClass> out;
  for (const auto& c : classes) {
    if (c.exists()) out.push_back(c);
  }
  return out;
}

bool solvability_test(std::int64_t d_e, int k, std::int64_t p, int scale) {
  if (p < 3 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("solvability_test: p must be an odd prime");
  }
  return kronecker(-static_cast<std::int64_t>(k) * scale * d_e, p) != -1;
}

RootInventory enumerate_root_classes(const DiscriminantSpec& spec) {
  RootInventory inv{spec, {}};
  const std::int64_t core = spec.core();
  for (const auto& subset : all_subsets(spec.subset_primes())) {
    std::int64_t e_prime = 1;
    for (auto p : subset) e_prime *= p;
    const std::int64_t d_e = core / e_prime;
    for (const Shape& shape : shapes_for(spec.residue)) {
      RootClass rc;
      rc.subset = subset;
      rc.e_prime = e_prime;
      rc.d_e = d_e;
      rc.norm_factor = shape.norm_factor;
      rc.det_factor = shape.det_factor;
      rc.norm = -shape.norm_factor * e_prime;
      rc.comp_det = -shape.det_factor * d_e;
      rc.multiplicity = shape.multiplicity;
      rc.max_conjugates = shape.max_conjugates;
      rc.existence = check_existence(spec, shape, subset, e_prime, d_e);
      inv.classes.push_back(std::move(rc));
    }
  }
  return inv;
}

int complement_hasse(const DiscriminantSpec& spec, const RootClass& rc, std::int64_t p) {
  const Place place = Place::prime(p);
  const int eps_l = hasse_invariant(build_L(spec), place);
  return eps_l * hilbert_symbol(Rational(rc.comp_det), Rational(rc.norm), place);
}

int complement_hyperbolic_sign(const DiscriminantSpec& spec, const RootClass& rc, std::int64_t p) {
  // U + <c> has Hasse invariant (-1, c)_p.
  const int target = hilbert_symbol(Rational(-1), Rational(-rc.comp_det), Place::prime(p));
  return complement_hasse(spec, rc, p) == target ? 1 : -1;
}

}  // namespace latmass
