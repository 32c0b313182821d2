#include <doctest.h>

#include <optional>
#include <random>

#include "latmass/lattice.hpp"
#include "test_support.hpp"

using namespace latmass;
using latmass::testing::diag;
using latmass::testing::gram;
using latmass::testing::random_unimodular;

namespace {

std::vector<std::int64_t> odd_squarefree(std::int64_t max) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= max; n += 2) {
    if (squarefree_factor(static_cast<std::uint64_t>(n)).squarefree) out.push_back(n);
  }
  return out;
}

int sign_mod8(std::int64_t u) {
  const auto m = ((u % 8) + 8) % 8;
  return (m == 1 || m == 7) ? 1 : -1;
}

int mod8(std::int64_t u) { return static_cast<int>(((u % 8) + 8) % 8); }

std::vector<QuadLattice> test_lattices() {
  std::vector<QuadLattice> out;
  for (std::int64_t d : {2, 3, 5, 6, 7, 10, 13, 15, 21, 30, 33, 105}) out.push_back(build_L(make_discriminant_spec(d)));
  out.push_back(QuadLattice::hyperbolic() + diag({10}));
  out.push_back(gram({{2, 1}, {1, 2}}) + diag({-12}));
  out.push_back(diag({1, -3, 9}));
  out.push_back(gram({{2, 1, 0}, {1, -4, 3}, {0, 3, 6}}));
  out.push_back(QuadLattice::hyperbolic(2) + diag({12}));
  return out;
}

}  // namespace

TEST_SUITE("lattice-invariants") {
  TEST_CASE("build_L shapes") {
    const auto l5 = build_L(make_discriminant_spec(5));
    CHECK(l5 == gram({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, -2}}));
    const auto l3 = build_L(make_discriminant_spec(3));
    CHECK(l3 == gram({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -2, 0}, {0, 0, 0, 6}}));
    const auto l6 = build_L(make_discriminant_spec(6));
    CHECK(l6 == gram({{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -2, 0}, {0, 0, 0, 12}}));
    for (std::int64_t d : {2, 3, 5, 6, 7, 13, 21, 33, 1155}) {
      const auto spec = make_discriminant_spec(d);
      const auto l = build_L(spec);
      CHECK(l.is_even());
      CHECK(l.signature() == Signature{2, 2});
      // U contributes -1, the second block -d or -4d.
      CHECK(l.det() == (spec.residue == 1 ? d : 4 * d));
    }
  }

  TEST_CASE("discriminant data") {
    const auto s = make_discriminant_spec(30);
    CHECK(s.primes == std::vector<std::int64_t>{2, 3, 5});
    CHECK(s.residue == 2);
    CHECK(s.D == 120);
    CHECK(s.dprime == 15);
    CHECK(s.subset_primes() == std::vector<std::int64_t>{3, 5});
    CHECK(s.k() == 2);
    CHECK(make_discriminant_spec(21).D == 21);
    CHECK(make_discriminant_spec(7).D == 28);
    CHECK_THROWS_AS(make_discriminant_spec(12), std::invalid_argument);
    CHECK_THROWS_AS(make_discriminant_spec(1), std::invalid_argument);
    CHECK_THROWS_AS(make_discriminant_spec(-5), std::invalid_argument);
  }

  TEST_CASE("QuadLattice validation") {
    CHECK_THROWS_AS(QuadLattice(IntMatrix{{1, 2}, {3, 4}}), std::invalid_argument);
    CHECK_THROWS_AS(QuadLattice(IntMatrix{{1, 1}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(QuadLattice(IntMatrix{}), std::invalid_argument);
    const auto l = gram({{0, 3}, {3, 0}});
    CHECK(l.det() == -9);
    CHECK(l.signature() == Signature{1, 1});
  }

  TEST_CASE("invariant factors") {
    using V = std::vector<BigInt>;
    CHECK(invariant_factors(build_L(make_discriminant_spec(5))) == V{1, 1, 1, 5});
    CHECK(invariant_factors(build_L(make_discriminant_spec(3))) == V{1, 1, 2, 6});
    CHECK(invariant_factors(build_L(make_discriminant_spec(6))) == V{1, 1, 2, 12});
    for (std::int64_t d : {13, 21, 33, 105}) CHECK(invariant_factors(build_L(make_discriminant_spec(d))) == V{1, 1, 1, d});
    for (std::int64_t d : {7, 11, 15, 231}) CHECK(invariant_factors(build_L(make_discriminant_spec(d))) == V{1, 1, 2, 2 * d});
    for (std::int64_t d : {10, 30, 42}) CHECK(invariant_factors(build_L(make_discriminant_spec(d))) == V{1, 1, 2, 2 * d});
  }

  TEST_CASE("invariant factors form a divisor chain with product |det|") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> entry(-9, 9);
    int tested = 0;
    while (tested < 300) {
      IntMatrix g(4, std::vector<BigInt>(4, 0));
      for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) g[i][j] = g[j][i] = entry(rng);
      }
      std::optional<QuadLattice> lat;
      try {
        lat.emplace(g);
      } catch (const std::invalid_argument&) {
        continue;  // singular draw
      }
      const auto f = invariant_factors(*lat);
      BigInt prod = 1;
      for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(f[i] > 0);
        if (i > 0) CHECK(f[i] % f[i - 1] == 0);
        prod *= f[i];
      }
      CHECK(prod == (lat->det() < 0 ? BigInt(-lat->det()) : lat->det()));
      ++tested;
    }
  }

  TEST_CASE("hasse invariant at 2 for d = 3 (mod 4)") {
    for (std::int64_t d = 3; d < 400; d += 4) {
      if (!squarefree_factor(static_cast<std::uint64_t>(d)).squarefree) continue;
      const int h = hasse_invariant(build_L(make_discriminant_spec(d)), Place::prime(2));
      CHECK_MESSAGE(h == (d % 8 == 3 ? 1 : -1), "d=", d);
      CHECK(h == -hilbert_symbol(Rational(2), Rational(2 * d), Place::prime(2)));
    }
    CHECK(hasse_invariant(build_L(make_discriminant_spec(33)), Place::prime(5)) == 1);
  }

  TEST_CASE("hasse invariant is independent of the basis") {
    std::mt19937_64 rng(29);
    const auto lattices = test_lattices();
    int transforms = 0;
    for (int round = 0; transforms < 1000; ++round) {
      const auto& lat = lattices[static_cast<std::size_t>(round) % lattices.size()];
      const auto moved = lat.transformed(random_unimodular(lat.rank(), rng));
      CHECK(moved.det() == lat.det());
      for (auto p : prime_divisors(BigInt(2) * lat.det())) {
        CHECK(hasse_invariant(moved, Place::prime(p)) == hasse_invariant(lat, Place::prime(p)));
      }
      CHECK(hasse_invariant(moved, Place::infinity()) == hasse_invariant(lat, Place::infinity()));
      ++transforms;
    }
  }

  TEST_CASE("hasse invariant product formula") {
    for (const auto& lat : test_lattices()) {
      int product = hasse_invariant(lat, Place::infinity());
      for (auto p : prime_divisors(BigInt(2) * lat.det())) product *= hasse_invariant(lat, Place::prime(p));
      CHECK(product == 1);
    }
  }

  TEST_CASE("diagonalization handles a zero diagonal") {
    const auto diag_form = rational_diagonalization(gram({{0, 1, 0}, {1, 0, 0}, {0, 0, 4}}));
    REQUIRE(diag_form.size() == 3);
    Rational prod(1);
    for (const auto& a : diag_form) prod *= a;
    CHECK(prod == Rational(-4));
  }

  TEST_CASE("2-adic symbol of U + <2d'>") {
    for (auto dp : odd_squarefree(61)) {
      const auto sym = two_adic_symbol(QuadLattice::hyperbolic() + diag({2 * dp}));
      REQUIRE(sym.constituents.size() == 2);
      CHECK(sym.constituents[0] == JordanConstituent{0, 2, 1, false, 0});
      CHECK(sym.constituents[1] == JordanConstituent{1, 1, sign_mod8(dp), true, mod8(dp)});
    }
    CHECK(two_adic_symbol(QuadLattice::hyperbolic() + diag({6})).str() == "1^{+2}_{II} 2^{-1}_{3}");
  }

  TEST_CASE("2-adic symbol of [[2,1],[1,2]] + <-6d'>") {
    for (auto dp : odd_squarefree(61)) {
      const auto sym = two_adic_symbol(gram({{2, 1}, {1, 2}}) + diag({-6 * dp}));
      REQUIRE(sym.constituents.size() == 2);
      CHECK(sym.constituents[0] == JordanConstituent{0, 2, -1, false, 0});
      CHECK(sym.constituents[1] == JordanConstituent{1, 1, -sign_mod8(dp), true, mod8(-3 * dp)});
    }
  }

  TEST_CASE("2-adic symbol of U(2) + <4d'>") {
    for (auto dp : odd_squarefree(61)) {
      const auto sym = two_adic_symbol(QuadLattice::hyperbolic(2) + diag({4 * dp}));
      REQUIRE(sym.constituents.size() == 2);
      CHECK(sym.constituents[0] == JordanConstituent{1, 2, 1, false, 0});
      CHECK(sym.constituents[1] == JordanConstituent{2, 1, sign_mod8(dp), true, mod8(dp)});
    }
  }

  TEST_CASE("sign walking makes the two 2-adic shapes equivalent") {
    for (auto dp : odd_squarefree(199)) {
      const auto a = two_adic_symbol(QuadLattice::hyperbolic() + diag({2 * dp}));
      const auto b = two_adic_symbol(gram({{2, 1}, {1, 2}}) + diag({-6 * dp}));
      CHECK_MESSAGE(two_adic_equivalent(a, b), "d'=", dp);
      const auto c = two_adic_symbol(QuadLattice::hyperbolic(2) + diag({4 * dp}));
      const auto e = two_adic_symbol(gram({{4, 2}, {2, 4}}) + diag({-12 * dp}));
      CHECK_MESSAGE(two_adic_equivalent(c, e), "d'=", dp);
      CHECK(two_adic_equivalent(a, a));
      // Different 2-adic determinant classes never match.
      CHECK_FALSE(two_adic_equivalent(a, two_adic_symbol(QuadLattice::hyperbolic() + diag({6 * dp}))));
    }
  }

  TEST_CASE("sign walking does not cross a gap between even forms") {
    const auto a = two_adic_symbol(QuadLattice::hyperbolic() + diag({12}));
    const auto b = two_adic_symbol(gram({{2, 1}, {1, 2}}) + diag({-4}));
    CHECK(a.str() == "1^{+2}_{II} 4^{-1}_{3}");
    CHECK(b.str() == "1^{-2}_{II} 4^{+1}_{7}");
    CHECK_FALSE(two_adic_equivalent(a, b));
    CHECK_THROWS_AS(two_adic_equivalent(a, two_adic_symbol(diag({1, 1}))), std::invalid_argument);
  }

  TEST_CASE("canonical 2-adic symbol is a basis invariant") {
    std::mt19937_64 rng(31);
    for (const auto& lat : test_lattices()) {
      const auto ref = canonical_two_adic(two_adic_symbol(lat));
      for (int i = 0; i < 40; ++i) {
        const auto moved = lat.transformed(random_unimodular(lat.rank(), rng));
        CHECK(canonical_two_adic(two_adic_symbol(moved)) == ref);
        for (auto p : prime_divisors(lat.det())) {
          if (p != 2) CHECK(jordan_symbol(moved, p) == jordan_symbol(lat, p));
        }
      }
    }
  }

  TEST_CASE("odd Jordan symbols") {
    const auto sym = jordan_symbol(diag({1, -3, 9}), 3);
    REQUIRE(sym.constituents.size() == 3);
    CHECK(sym.constituents[1].valuation == 1);
    CHECK(sym.constituents[1].sign == kronecker(-1, 3));
    // Minimal valuation only off the diagonal.
    const auto u3 = jordan_symbol(QuadLattice::hyperbolic(3) + diag({1}), 3);
    REQUIRE(u3.constituents.size() == 2);
    CHECK(u3.constituents[1] == JordanConstituent{1, 2, kronecker(-1, 3), false, 0});
    CHECK_THROWS_AS(jordan_symbol(diag({1}), 4), std::invalid_argument);
  }

  TEST_CASE("genus_equal") {
    for (std::int64_t p : {5, 13, 17, 29}) {
      const auto lp = build_L(make_discriminant_spec(p));
      const std::vector<BigInt> minus2 = {1, -1, 0, 0};    // norm -2
      const std::vector<BigInt> minus2p = {0, 0, -1, 2};   // norm -2p
      REQUIRE(norm(lp, minus2) == -2);
      REQUIRE(norm(lp, minus2p) == -2 * p);
      CHECK(genus_equal(orthogonal_complement(lp, minus2), QuadLattice::hyperbolic() + diag({2 * p})));
      CHECK(genus_equal(orthogonal_complement(lp, minus2p), QuadLattice::hyperbolic() + diag({2})));
      CHECK(genus_equal(lp, lp));
    }
    for (std::int64_t dp : {3, 15, 21, 33, 39}) {
      const auto a = QuadLattice::hyperbolic() + diag({4 * dp});
      const auto b = gram({{2, 1}, {1, 2}}) + diag({-4 * dp / 3});
      REQUIRE(a.det() == b.det());
      CHECK_FALSE(genus_equal(a, b));
      CHECK(hasse_invariant(a, Place::prime(2)) != hasse_invariant(b, Place::prime(2)));
    }
    CHECK_FALSE(genus_equal(diag({1, 1}), diag({1, -1})));
  }

  TEST_CASE("Kneser criterion") {
    for (std::int64_t d : {2, 3, 5, 6, 7, 13, 21, 33, 105}) CHECK(kneser_class_equals_genus(build_L(make_discriminant_spec(d))));
    CHECK(kneser_class_equals_genus(QuadLattice::hyperbolic() + diag({10})));
    CHECK_FALSE(kneser_class_equals_genus(diag({1, -3, 9})));
    CHECK_FALSE(kneser_class_equals_genus(diag({1, 1, 1})));  // definite
    CHECK_FALSE(kneser_class_equals_genus(QuadLattice::hyperbolic()));
  }

  TEST_CASE("orthogonal complement") {
    const auto l = build_L(make_discriminant_spec(21));
    const std::vector<BigInt> v = {1, -1, 0, 0};
    const auto c = orthogonal_complement(l, v);
    CHECK(c.rank() == 3);
    CHECK(c.det() == -42);
    CHECK_THROWS_AS(orthogonal_complement(l, std::vector<BigInt>{0, 0, 0, 0}), std::invalid_argument);
  }
}
