#include "latmass/bruinier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace latmass {

namespace {

Rational closed_form_bound(const DiscriminantSpec& spec) {
  Rational prod(1);
  for (auto p : spec.subset_primes()) prod *= Rational(p + 3, 2);
  switch (spec.residue) {
    case 1: return Rational(1, 48) * prod;
    case 3: return Rational(1, 12) * prod;
    case 2: return Rational(7, 48) * prod;
    default: throw std::logic_error("closed_form_bound: bad residue");
  }
}

}  // namespace

std::string to_string(Mode m) { return m == Mode::Exact ? "exact" : "bound"; }

Mode mode_from_string(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "bound") return Mode::Bound;
  throw std::invalid_argument("unknown mode: " + s);
}

std::string Surd::str() const {
  std::ostringstream os;
  if (coeff.num() != 1) os << coeff.num();
  os << "√" << radicand;
  if (coeff.den() != 1) os << "/" << coeff.den();
  return os.str();
}

double Surd::to_double() const { return coeff.to_double() * std::sqrt(static_cast<double>(radicand)); }

std::strong_ordering compare(const Surd& s, const Rational& r) {
  if (s.radicand <= 0) throw std::invalid_argument("compare: radicand must be positive");
  const int ss = s.coeff.sign();
  const int rs = r.sign();
  if (ss != rs) return ss <=> rs;
  if (ss == 0) return std::strong_ordering::equal;
  const Rational lhs = s.coeff * s.coeff * Rational(s.radicand);
  const Rational rhs = r * r;
  return ss > 0 ? lhs <=> rhs : rhs <=> lhs;
}

std::string to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::NotFree: return "NotFree";
    case OutcomeKind::FeasibleK: return "FeasibleK";
    case OutcomeKind::FeasibleKAtMost: return "FeasibleKAtMost";
  }
  return "?";
}

OutcomeKind outcome_from_string(const std::string& s) {
  if (s == "NotFree") return OutcomeKind::NotFree;
  if (s == "FeasibleK") return OutcomeKind::FeasibleK;
  if (s == "FeasibleKAtMost") return OutcomeKind::FeasibleKAtMost;
  throw std::invalid_argument("unknown outcome: " + s);
}

ExactVolume rhs_bound(const DiscriminantSpec& spec) {
  Rational value = closed_form_bound(spec);
  const Rational half(1, 2);
  for (const auto& rc : enumerate_root_classes(spec).classes) {
    const Rational max = complement_volume_max(spec, rc) * Rational(rc.multiplicity);
    if (!rc.exists()) {
      value -= half * max;
    } else if (two_adic_shape(spec, rc) == TwoAdicShape::Disc8NonHyp) {
      value -= half * (max - complement_volume(spec, rc).value * Rational(rc.multiplicity));
    }
  }
  return {value, Exactness::UpperBound};
}

bool has_exact_rhs(const DiscriminantSpec& spec) {
  return spec.residue == 1 || spec.d == 2 || spec.d == 3 || spec.d == 7 || spec.d == 15;
}

ExactVolume rhs_exact(const DiscriminantSpec& spec) {
  if (!has_exact_rhs(spec)) return rhs_bound(spec);
  Rational sum(0);
  for (const auto& rc : enumerate_root_classes(spec).classes) {
    if (rc.exists()) sum += complement_volume(spec, rc).value * Rational(rc.multiplicity);
  }
  return {sum / Rational(2), Exactness::Exact};
}

Surd lhs_lower_bound(const DiscriminantSpec& spec) {
  const Rational denom = pow(Rational(2), spec.k()) * Rational(45);
  switch (spec.residue) {
    case 1: return {Rational(spec.d) / (denom * 4), spec.d};
    case 3: return {Rational(spec.d) / denom, spec.d};
    case 2: return {Rational(2 * spec.core()) / denom, 2 * spec.core()};
    default: throw std::logic_error("lhs_lower_bound: bad residue");
  }
}

Verdict verdict(const DiscriminantSpec& spec, Mode mode) {
  Verdict v;
  v.spec = spec;
  v.mode = mode;
  v.ldata = compute_ldata(spec.D);
  v.lhs_unit = vol_OL(spec, v.ldata.q);
  v.lhs_bound = lhs_lower_bound(spec);
  for (const auto& rc : enumerate_root_classes(spec).classes) {
    ClassTerm t{rc, std::nullopt, complement_volume_max(spec, rc)};
    if (rc.exists()) t.volume = complement_volume(spec, rc);
    v.terms.push_back(std::move(t));
  }
  v.rhs = mode == Mode::Exact ? rhs_exact(spec) : rhs_bound(spec);
  v.class_volume_sum = v.rhs.value * Rational(2);
  v.K = v.rhs.value / v.lhs_unit;
  v.k_integer = v.K.is_integer();
  v.k_even = v.k_integer && v.K.num() % 2 == 0;

  std::ostringstream w;
  if (compare(v.lhs_bound, v.rhs.value) == std::strong_ordering::greater) {
    v.outcome = OutcomeKind::NotFree;
    w << "8*Vol(O(L)) >= " << v.lhs_bound.str() << " > " << v.rhs.value.str() << " >= rhs";
  } else if (v.rhs.exactness == Exactness::Exact) {
    if (v.k_integer && v.K >= Rational(8)) {
      v.outcome = OutcomeKind::FeasibleK;
      w << "K = " << v.K.str();
    } else {
      v.outcome = OutcomeKind::NotFree;
      w << "K = " << v.K.str() << " is not an integer >= 8";
    }
  } else if (v.K < Rational(8)) {
    v.outcome = OutcomeKind::NotFree;
    w << "K <= " << v.K.str() << " < 8";
  } else {
    v.outcome = OutcomeKind::FeasibleKAtMost;
    v.k_at_most = v.K.floor();
    w << "K <= " << v.K.str();
  }
  v.witness = w.str();
  return v;
}

std::vector<Verdict> scan(std::int64_t d_min, std::int64_t d_max, Mode mode, unsigned jobs) {
  if (d_min < 2 || d_max < d_min) {
    throw std::invalid_argument("scan: need 2 <= d_min <= d_max");
  }
  std::vector<std::int64_t> ds;
  for (std::int64_t d = d_min; d <= d_max; ++d) {
    if (squarefree_factor(static_cast<std::uint64_t>(d)).squarefree) ds.push_back(d);
  }
  std::vector<Verdict> out(ds.size());
  if (jobs <= 1 || ds.size() <= 1) {
    for (std::size_t i = 0; i < ds.size(); ++i) out[i] = verdict(make_discriminant_spec(ds[i]), mode);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t i = next++; i < ds.size() && !failed; i = next++) {
      try {
        out[i] = verdict(make_discriminant_spec(ds[i]), mode);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<std::size_t>(jobs, ds.size());
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace latmass
