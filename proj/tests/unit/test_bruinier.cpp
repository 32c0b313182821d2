#include <doctest.h>

#include <set>

#include "latmass/bruinier.hpp"

using namespace latmass;

namespace {

std::set<std::int64_t> survivors(const std::vector<Verdict>& vs, int residue) {
  std::set<std::int64_t> out;
  for (const auto& v : vs) {
    if (v.feasible() && v.spec.residue == residue) out.insert(v.spec.d);
  }
  return out;
}

}  // namespace

TEST_SUITE("bruinier-checker") {
  TEST_CASE("surd comparison") {
    CHECK(compare(Surd{Rational(1), 2}, Rational(7, 5)) == std::strong_ordering::greater);
    CHECK(compare(Surd{Rational(1), 2}, Rational(3, 2)) == std::strong_ordering::less);
    CHECK(compare(Surd{Rational(3), 4}, Rational(6)) == std::strong_ordering::equal);
    CHECK(compare(Surd{Rational(-1), 2}, Rational(1)) == std::strong_ordering::less);
    CHECK(compare(Surd{Rational(-1), 2}, Rational(-3, 2)) == std::strong_ordering::greater);
    CHECK(compare(Surd{Rational(0), 2}, Rational(0)) == std::strong_ordering::equal);
    CHECK(Surd{Rational(33, 720), 33}.str() == "11√33/240");
  }

  TEST_CASE("rhs_bound") {
    // d = 21: (1/48)(3+3)/2 (7+3)/2 minus half the maximal volume 1/12 of the
    // missing class (e' = 7, d_e = 3); equals half the existing maxima (8+4+1)/24.
    CHECK(rhs_bound(make_discriminant_spec(21)).value == Rational(15, 48) - Rational(1, 24));
    CHECK(rhs_bound(make_discriminant_spec(21)).value >= rhs_exact(make_discriminant_spec(21)).value);
    CHECK(rhs_bound(make_discriminant_spec(21)).exactness == Exactness::UpperBound);
    CHECK(rhs_bound(make_discriminant_spec(15)).value == Rational(19, 96));
    // Every class survives for d = 5 * 29: (29/5) = (5/29) = 1.
    const auto s = make_discriminant_spec(145);
    CHECK(rhs_bound(s).value == Rational(1, 48) * Rational(4) * Rational(16));
  }

  TEST_CASE("rhs_exact") {
    CHECK(rhs_exact(make_discriminant_spec(33)).value == Rational(1, 6));
    CHECK(rhs_exact(make_discriminant_spec(21)).value == Rational(1, 6));
    CHECK(rhs_exact(make_discriminant_spec(3)).value * Rational(2) == Rational(7, 24));
    CHECK(rhs_exact(make_discriminant_spec(7)).value * Rational(2) == Rational(1, 6));
    CHECK(rhs_exact(make_discriminant_spec(15)).value * Rational(2) == Rational(19, 48));
    CHECK(rhs_exact(make_discriminant_spec(2)).value * Rational(2) == Rational(7, 24));
    CHECK(rhs_exact(make_discriminant_spec(3)).exactness == Exactness::Exact);
    CHECK(rhs_exact(make_discriminant_spec(35)).exactness == Exactness::UpperBound);
    CHECK(rhs_exact(make_discriminant_spec(30)).exactness == Exactness::UpperBound);
  }

  TEST_CASE("rhs_exact <= rhs_bound") {
    for (std::int64_t d = 2; d <= 500; ++d) {
      if (!squarefree_factor(static_cast<std::uint64_t>(d)).squarefree) continue;
      const auto spec = make_discriminant_spec(d);
      CHECK(rhs_exact(spec).value <= rhs_bound(spec).value);
      if (spec.residue != 1 && has_exact_rhs(spec)) CHECK(rhs_exact(spec).value == rhs_bound(spec).value);
    }
  }

  TEST_CASE("lhs lower bound") {
    const auto b33 = lhs_lower_bound(make_discriminant_spec(33));
    CHECK(b33.coeff == Rational(33, 720));
    CHECK(b33.radicand == 33);
    CHECK(compare(b33, Rational(1, 6)) == std::strong_ordering::greater);
    const auto s1365 = make_discriminant_spec(3 * 5 * 7 * 13);
    CHECK(compare(lhs_lower_bound(s1365), rhs_bound(s1365).value) == std::strong_ordering::greater);
  }

  TEST_CASE("lhs lower bound never exceeds 8 Vol(O(L))") {
    for (std::int64_t d = 2; d <= 2000; ++d) {
      if (!squarefree_factor(static_cast<std::uint64_t>(d)).squarefree) continue;
      const auto spec = make_discriminant_spec(d);
      const auto lhs = vol_OL(spec, compute_ldata(spec.D).q) * Rational(8);
      CHECK(compare(lhs_lower_bound(spec), lhs) != std::strong_ordering::greater);
    }
  }

  TEST_CASE("verdict examples") {
    auto v = verdict(make_discriminant_spec(21));
    CHECK(v.outcome == OutcomeKind::FeasibleK);
    CHECK(v.K == Rational(8));
    CHECK(v.k_even);
    v = verdict(make_discriminant_spec(3));
    CHECK(v.outcome == OutcomeKind::FeasibleK);
    CHECK(v.K == Rational(14));
    v = verdict(make_discriminant_spec(6));
    CHECK(v.outcome == OutcomeKind::FeasibleKAtMost);
    REQUIRE(v.k_at_most.has_value());
    CHECK(*v.k_at_most == 10);
    v = verdict(make_discriminant_spec(33));
    CHECK(v.outcome == OutcomeKind::NotFree);
    CHECK(v.witness.find("11√33/240") != std::string::npos);
    v = verdict(make_discriminant_spec(15));
    CHECK(v.outcome == OutcomeKind::NotFree);
    CHECK(v.class_volume_sum == Rational(19, 48));
    v = verdict(make_discriminant_spec(13));
    CHECK(v.K == Rational(8));
    CHECK(v.k_even);
    v = verdict(make_discriminant_spec(5));
    CHECK(v.K == Rational(20));
  }

  TEST_CASE("verdict K equals K_prime for primes p = 1 (mod 4)") {
    for (std::int64_t p = 5; p < 300; p += 4) {
      if (!is_prime(static_cast<std::uint64_t>(p))) continue;
      const auto v = verdict(make_discriminant_spec(p));
      CHECK(v.K == K_prime(p));
      const bool admissible = v.K.is_integer() && v.K >= Rational(8);
      CHECK(admissible == (p == 5 || p == 13));
    }
  }

  TEST_CASE("scan to 1000 per residue") {
    const auto vs = scan(2, 1000);
    CHECK(survivors(vs, 1) == std::set<std::int64_t>{5, 13, 21});
    CHECK(survivors(vs, 3) == std::set<std::int64_t>{3});
    CHECK(survivors(vs, 2) == std::set<std::int64_t>{2, 6});
    for (const auto& v : vs) {
      if (v.outcome == OutcomeKind::NotFree) CHECK_FALSE(v.witness.empty());
    }
  }

  TEST_CASE("bound mode never rules out more than exact mode") {
    const auto exact = scan(2, 400, Mode::Exact);
    const auto bound = scan(2, 400, Mode::Bound, 3);
    REQUIRE(exact.size() == bound.size());
    for (std::size_t i = 0; i < exact.size(); ++i) {
      CHECK(exact[i].spec.d == bound[i].spec.d);
      if (exact[i].feasible()) CHECK(bound[i].feasible());
      CHECK(exact[i].rhs.value <= bound[i].rhs.value);
    }
  }

  TEST_CASE("parallel scan matches serial scan") {
    const auto a = scan(2, 600, Mode::Exact, 1);
    const auto b = scan(2, 600, Mode::Exact, 6);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].spec.d == b[i].spec.d);
      CHECK(a[i].K == b[i].K);
      CHECK(a[i].outcome == b[i].outcome);
    }
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(scan(1, 10), std::invalid_argument);
    CHECK_THROWS_AS(scan(10, 5), std::invalid_argument);
    CHECK(scan(4, 4).empty());
    CHECK(mode_from_string("bound") == Mode::Bound);
    CHECK_THROWS(mode_from_string("fast"));
  }
}
