#include "latmass/lattice.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace latmass {

namespace {

using RatMatrix = std::vector<std::vector<Rational>>;

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Fraction-free (Bareiss) determinant.
BigInt bareiss_det(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

RatMatrix to_rational(const IntMatrix& g) {
  RatMatrix out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out[i].reserve(g[i].size());
    for (const auto& x : g[i]) out[i].emplace_back(x);
  }
  return out;
}

// Symmetric elimination over Q. A zero diagonal is repaired by adding a row
// (and the matching column) that has a nonzero off-diagonal entry.
std::vector<Rational> diagonalize(RatMatrix g) {
  std::vector<Rational> out;
  while (!g.empty()) {
    const std::size_t n = g.size();
    std::size_t pivot = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!g[i][i].is_zero()) {
        pivot = i;
        break;
      }
    }
    if (pivot == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!g[i][j].is_zero()) {
            pi = i;
            pj = j;
            break;
          }
        }
      }
      if (pi == n) throw std::domain_error("diagonalize: degenerate form");
      for (std::size_t k = 0; k < n; ++k) g[pi][k] += g[pj][k];
      for (std::size_t k = 0; k < n; ++k) g[k][pi] += g[k][pj];
      pivot = pi;
    }
    const Rational a = g[pivot][pivot];
    out.push_back(a);
    RatMatrix next;
    next.reserve(n - 1);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == pivot) continue;
      std::vector<Rational> row;
      row.reserve(n - 1);
      const Rational factor = g[r][pivot] / a;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == pivot) continue;
        row.push_back(factor.is_zero() ? g[r][c] : g[r][c] - factor * g[pivot][c]);
      }
      next.push_back(std::move(row));
    }
    g = std::move(next);
  }
  return out;
}

int rational_valuation(const Rational& x, std::int64_t p) {
  return valuation(x.num(), p) - valuation(x.den(), p);
}

// num * den with all factors of p removed; same square class as the unit part.
BigInt unit_rep(const Rational& x, std::int64_t p) {
  BigInt n = x.num() * x.den();
  while (n % p == 0) n /= p;
  return n;
}

int mod8(const BigInt& x) {
  int m = static_cast<int>(x % 8);
  return m < 0 ? m + 8 : m;
}

struct RawBlock {
  int valuation;
  int dim;
  Rational det;
  bool odd;
  int oddity;
};

// Splits the form over Z_p into 1x1 blocks and (p = 2 only) 2x2 even blocks.
std::vector<RawBlock> jordan_blocks(RatMatrix g, std::int64_t p) {
  std::vector<RawBlock> blocks;
  while (!g.empty()) {
    const std::size_t n = g.size();
    int min_v = std::numeric_limits<int>::max();
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        if (g[i][j].is_zero()) continue;
        const int v = rational_valuation(g[i][j], p);
        // Ties prefer diagonal entries so odd blocks split off first.
        if (v < min_v || (v == min_v && i == j && bi != bj)) {
          min_v = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == n) throw std::domain_error("jordan_blocks: degenerate form");

    if (bi != bj && p != 2) {
      // Odd p: e_i + e_j has norm of valuation min_v; make it the new e_i.
      for (std::size_t k = 0; k < n; ++k) g[bi][k] += g[bj][k];
      for (std::size_t k = 0; k < n; ++k) g[k][bi] += g[k][bj];
      bj = bi;
    }

    std::vector<std::size_t> idx;
    if (bi == bj) {
      idx = {bi};
      const Rational& a = g[bi][bi];
      const int oddity = p == 2 ? mod8(unit_rep(a, 2)) : 0;
      blocks.push_back({min_v, 1, a, p == 2, oddity});
    } else {
      idx = {bi, bj};
      const Rational det = g[bi][bi] * g[bj][bj] - g[bi][bj] * g[bi][bj];
      blocks.push_back({min_v, 2, det, false, 0});
    }

    // Schur complement of the pivot block.
    const std::size_t m = idx.size();
    RatMatrix inv(m, std::vector<Rational>(m));
    if (m == 1) {
      inv[0][0] = Rational(1) / g[idx[0]][idx[0]];
    } else {
      const Rational& a = g[idx[0]][idx[0]];
      const Rational& b = g[idx[0]][idx[1]];
      const Rational& c = g[idx[1]][idx[1]];
      const Rational det = a * c - b * b;
      inv[0][0] = c / det;
      inv[0][1] = -b / det;
      inv[1][0] = -b / det;
      inv[1][1] = a / det;
    }
    std::vector<std::size_t> rest;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::find(idx.begin(), idx.end(), r) == idx.end()) rest.push_back(r);
    }
    RatMatrix next(rest.size(), std::vector<Rational>(rest.size()));
    for (std::size_t r = 0; r < rest.size(); ++r) {
      for (std::size_t c = 0; c < rest.size(); ++c) {
        Rational acc = g[rest[r]][rest[c]];
        for (std::size_t s = 0; s < m; ++s) {
          if (g[rest[r]][idx[s]].is_zero()) continue;
          for (std::size_t t = 0; t < m; ++t) {
            if (g[idx[t]][rest[c]].is_zero() || inv[s][t].is_zero()) continue;
            acc -= g[rest[r]][idx[s]] * inv[s][t] * g[idx[t]][rest[c]];
          }
        }
        next[r][c] = std::move(acc);
      }
    }
    g = std::move(next);
  }
  return blocks;
}

std::string superscript_sign(int sign) { return sign > 0 ? "+" : "-"; }

}  // namespace

// ---------------------------------------------------------------------------
// QuadLattice

QuadLattice::QuadLattice(IntMatrix gram) : gram_(std::move(gram)) {
  const std::size_t n = gram_.size();
  if (n == 0) throw std::invalid_argument("QuadLattice: empty Gram matrix");
  for (const auto& row : gram_) {
    if (row.size() != n) throw std::invalid_argument("QuadLattice: Gram matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (gram_[i][j] != gram_[j][i]) throw std::invalid_argument("QuadLattice: Gram matrix is not symmetric");
    }
  }
  det_ = bareiss_det(gram_);
  if (det_ == 0) throw std::invalid_argument("QuadLattice: degenerate Gram matrix");
  for (const auto& a : diagonalize(to_rational(gram_))) {
    if (a.sign() > 0) {
      ++signature_.positive;
    } else {
      ++signature_.negative;
    }
  }
}

QuadLattice QuadLattice::diagonal(std::span<const std::int64_t> entries) {
  IntMatrix g(entries.size(), std::vector<BigInt>(entries.size(), 0));
  for (std::size_t i = 0; i < entries.size(); ++i) g[i][i] = entries[i];
  return QuadLattice(std::move(g));
}

QuadLattice QuadLattice::hyperbolic(std::int64_t scale) {
  return QuadLattice(IntMatrix{{0, scale}, {scale, 0}});
}

QuadLattice QuadLattice::from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  IntMatrix g;
  for (const auto& r : rows) {
    std::vector<BigInt> row;
    for (auto x : r) row.emplace_back(x);
    g.push_back(std::move(row));
  }
  return QuadLattice(std::move(g));
}

bool QuadLattice::is_even() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    if (gram_[i][i] % 2 != 0) return false;
  }
  return true;
}

QuadLattice QuadLattice::transformed(const IntMatrix& basis) const {
  const std::size_t n = rank();
  if (basis.size() != n) throw std::invalid_argument("transformed: basis has wrong row count");
  const std::size_t m = basis.empty() ? 0 : basis[0].size();
  IntMatrix gb(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < n; ++k) gb[i][j] += gram_[i][k] * basis[k][j];
    }
  }
  IntMatrix out(m, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t k = 0; k < n; ++k) out[i][j] += basis[k][i] * gb[k][j];
    }
  }
  return QuadLattice(std::move(out));
}

QuadLattice QuadLattice::operator+(const QuadLattice& other) const {
  const std::size_t a = rank();
  const std::size_t n = a + other.rank();
  IntMatrix g(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < a; ++j) g[i][j] = gram_[i][j];
  }
  for (std::size_t i = 0; i < other.rank(); ++i) {
    for (std::size_t j = 0; j < other.rank(); ++j) g[a + i][a + j] = other.gram_[i][j];
  }
  return QuadLattice(std::move(g));
}

BigInt norm(const QuadLattice& lat, std::span<const BigInt> v) {
  if (v.size() != lat.rank()) throw std::invalid_argument("norm: dimension mismatch");
  BigInt acc = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) acc += v[i] * lat.gram()[i][j] * v[j];
  }
  return acc;
}

// ---------------------------------------------------------------------------
// DiscriminantSpec and L

std::vector<std::int64_t> DiscriminantSpec::subset_primes() const {
  if (residue != 2) return primes;
  std::vector<std::int64_t> odd;
  for (auto p : primes) {
    if (p != 2) odd.push_back(p);
  }
  return odd;
}

DiscriminantSpec make_discriminant_spec(std::int64_t d) {
  if (d < 2) throw std::invalid_argument("d must be a square-free integer >= 2, got " + std::to_string(d));
  const Factorization f = squarefree_factor(static_cast<std::uint64_t>(d));
  if (!f.squarefree) throw std::invalid_argument(std::to_string(d) + " is not square-free");
  DiscriminantSpec spec;
  spec.d = d;
  spec.primes = f.primes();
  spec.residue = static_cast<int>(d % 4);
  spec.D = spec.residue == 1 ? d : 4 * d;
  if (spec.residue == 2) spec.dprime = d / 2;
  return spec;
}

QuadLattice build_L(const DiscriminantSpec& spec) {
  const QuadLattice u = QuadLattice::hyperbolic();
  if (spec.residue == 1) {
    return u + QuadLattice::from_rows({{2, 1}, {1, (1 - spec.d) / 2}});
  }
  const std::int64_t diag[] = {-2, 2 * spec.d};
  return u + QuadLattice::diagonal(diag);
}

// ---------------------------------------------------------------------------
// Invariant factors

std::vector<BigInt> invariant_factors(const QuadLattice& lat) {
  IntMatrix m = lat.gram();
  const std::size_t n = m.size();
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::size_t pr = n, pc = n;
      for (std::size_t i = t; i < n; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (m[i][j] != 0 && (pr == n || abs_big(m[i][j]) < abs_big(m[pr][pc]))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == n) break;
      std::swap(m[t], m[pr]);
      for (auto& row : m) std::swap(row[t], row[pc]);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        const BigInt q = m[i][t] / m[t][t];
        if (q != 0) {
          for (std::size_t j = t; j < n; ++j) m[i][j] -= q * m[t][j];
        }
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        const BigInt q = m[t][j] / m[t][t];
        if (q != 0) {
          for (std::size_t i = t; i < n; ++i) m[i][j] -= q * m[i][t];
        }
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // The pivot must divide the rest of the block.
      std::size_t bad_row = n;
      for (std::size_t i = t + 1; i < n && bad_row == n; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (m[i][j] % m[t][t] != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row == n) break;
      for (std::size_t j = t; j < n; ++j) m[t][j] += m[bad_row][j];
    }
  }
  std::vector<BigInt> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(abs_big(m[i][i]));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Hasse invariants

std::vector<Rational> rational_diagonalization(const QuadLattice& lat) {
  return diagonalize(to_rational(lat.gram()));
}

int hasse_invariant(const QuadLattice& lat, const Place& v) {
  const auto diag = rational_diagonalization(lat);
  return hasse_invariant_diag(diag, v);
}

// ---------------------------------------------------------------------------
// Jordan symbols

int JordanSymbol::rank() const {
  int r = 0;
  for (const auto& c : constituents) r += c.dim;
  return r;
}

int JordanSymbol::det_valuation() const {
  int v = 0;
  for (const auto& c : constituents) v += c.valuation * c.dim;
  return v;
}

std::string JordanSymbol::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& c : constituents) {
    if (!first) os << ' ';
    first = false;
    BigInt scale = 1;
    for (int i = 0; i < c.valuation; ++i) scale *= prime;
    os << scale << "^{" << superscript_sign(c.sign) << c.dim << "}";
    if (prime == 2) {
      if (c.odd) {
        os << "_{" << c.oddity << "}";
      } else {
        os << "_{II}";
      }
    }
  }
  return os.str();
}

JordanSymbol jordan_symbol(const QuadLattice& lat, std::int64_t p) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("jordan_symbol: " + std::to_string(p) + " is not prime");
  }
  auto blocks = jordan_blocks(to_rational(lat.gram()), p);
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const RawBlock& a, const RawBlock& b) { return a.valuation < b.valuation; });

  JordanSymbol sym;
  sym.prime = p;
  std::size_t i = 0;
  while (i < blocks.size()) {
    JordanConstituent c;
    c.valuation = blocks[i].valuation;
    Rational unit_det(1);
    while (i < blocks.size() && blocks[i].valuation == c.valuation) {
      const auto& b = blocks[i];
      c.dim += b.dim;
      unit_det *= b.det;
      c.odd = c.odd || b.odd;
      c.oddity = (c.oddity + b.oddity) % 8;
      ++i;
    }
    const BigInt u = unit_rep(unit_det, p);
    if (p == 2) {
      const int m = mod8(u);
      c.sign = (m == 1 || m == 7) ? 1 : -1;
    } else {
      c.sign = kronecker(u, BigInt(p));
    }
    sym.constituents.push_back(c);
  }
  return sym;
}

JordanSymbol two_adic_symbol(const QuadLattice& lat) { return jordan_symbol(lat, 2); }

CanonicalTwoAdic canonical_two_adic(const JordanSymbol& symbol) {
  if (symbol.prime != 2) throw std::invalid_argument("canonical_two_adic: symbol is not 2-adic");
  CanonicalTwoAdic out;
  if (symbol.constituents.empty()) return out;

  // Dense array over every scale between the extremes; missing scales are
  // zero-dimensional even forms with sign +.
  const int lo = symbol.constituents.front().valuation;
  const int hi = symbol.constituents.back().valuation;
  const std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  std::vector<JordanConstituent> f(width);
  for (std::size_t k = 0; k < width; ++k) f[k].valuation = lo + static_cast<int>(k);
  for (const auto& c : symbol.constituents) f[static_cast<std::size_t>(c.valuation - lo)] = c;

  // Trains: neighbours share a train iff at least one of them is odd.
  std::size_t start = 0;
  while (start < width) {
    std::size_t end = start;
    while (end + 1 < width && (f[end].odd || f[end + 1].odd)) ++end;
    std::size_t first = start;
    while (first <= end && f[first].dim == 0) ++first;
    std::size_t last = end;
    while (last > first && f[last].dim == 0) --last;
    // Walk every minus sign leftwards to the first nonzero form of the train.
    for (std::size_t k = last; k > first; --k) {
      if (f[k].sign < 0) {
        f[k].sign = 1;
        f[k - 1].sign = -f[k - 1].sign;
        auto& odd_member = f[k].odd ? f[k] : f[k - 1];
        odd_member.oddity = (odd_member.oddity + 4) % 8;
      }
    }
    start = end + 1;
  }

  for (const auto& c : f) {
    if (c.dim > 0) out.forms.push_back({c.valuation, c.dim, c.sign, c.odd});
  }
  // Compartments: maximal runs of consecutive odd forms; only their total
  // oddity is an invariant.
  std::size_t k = 0;
  while (k < width) {
    if (!f[k].odd) {
      ++k;
      continue;
    }
    CanonicalTwoAdic::Compartment comp{f[k].valuation, 0};
    while (k < width && f[k].odd) {
      comp.oddity = (comp.oddity + f[k].oddity) % 8;
      ++k;
    }
    out.compartments.push_back(comp);
  }
  return out;
}

bool two_adic_equivalent(const JordanSymbol& s1, const JordanSymbol& s2) {
  if (s1.rank() != s2.rank()) throw std::invalid_argument("two_adic_equivalent: rank mismatch");
  if (s1.det_valuation() != s2.det_valuation()) return false;
  return canonical_two_adic(s1) == canonical_two_adic(s2);
}

bool genus_equal(const QuadLattice& l1, const QuadLattice& l2) {
  if (l1.rank() != l2.rank() || !(l1.signature() == l2.signature()) || l1.det() != l2.det()) return false;
  std::vector<std::int64_t> primes = prime_divisors(2 * l1.det());
  for (std::int64_t p : primes) {
    if (p == 2) {
      if (!two_adic_equivalent(two_adic_symbol(l1), two_adic_symbol(l2))) return false;
      continue;
    }
    const Place place = Place::prime(p);
    if (hasse_invariant(l1, place) != hasse_invariant(l2, place)) return false;
    if (!(jordan_symbol(l1, p) == jordan_symbol(l2, p))) return false;
  }
  return true;
}

bool kneser_class_equals_genus(const QuadLattice& lat) {
  const auto& sig = lat.signature();
  if (lat.rank() < 3 || sig.positive == 0 || sig.negative == 0) return false;
  for (std::int64_t p : prime_divisors(2 * lat.det())) {
    const JordanSymbol sym = jordan_symbol(lat, p);
    const bool distinct_powers = std::all_of(sym.constituents.begin(), sym.constituents.end(), [&](const auto& c) {
      return c.dim == 1 && (p != 2 || c.odd);
    });
    if (distinct_powers) return false;
  }
  return true;
}

QuadLattice orthogonal_complement(const QuadLattice& lat, std::span<const BigInt> v) {
  const std::size_t n = lat.rank();
  if (v.size() != n) throw std::invalid_argument("orthogonal_complement: dimension mismatch");
  std::vector<BigInt> a(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i] += lat.gram()[i][j] * v[j];
  }
  // Unimodular column operations reduce the linear form (a . x) to a single
  // nonzero coefficient; the remaining columns span its kernel.
  IntMatrix u(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
  for (;;) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != 0 && (piv == n || abs_big(a[i]) < abs_big(a[piv]))) piv = i;
    }
    if (piv == n) throw std::invalid_argument("orthogonal_complement: vector is orthogonal to the whole lattice");
    bool done = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == piv || a[j] == 0) continue;
      const BigInt q = a[j] / a[piv];
      a[j] -= q * a[piv];
      for (std::size_t r = 0; r < n; ++r) u[r][j] -= q * u[r][piv];
      if (a[j] != 0) done = false;
    }
    if (done) {
      IntMatrix basis(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == piv) continue;
        for (std::size_t r = 0; r < n; ++r) basis[r].push_back(u[r][j]);
      }
      return lat.transformed(basis);
    }
  }
}

}  // namespace latmass
