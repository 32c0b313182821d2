from fractions import Fraction

import pytest

import latmass


def test_kronecker_and_hilbert():
    assert latmass.kronecker(3, 7) == -1
    assert latmass.hilbert_symbol(-1, -1, 2) == -1
    assert latmass.hilbert_symbol(-1, -1, 0) == -1


def test_lattice_invariants():
    assert latmass.invariant_factors(6) == ["1", "1", "2", "12"]
    assert latmass.two_adic_symbol(5) == "1^{-4}_{II}"


def test_ldata():
    l8 = latmass.ldata(8)
    assert l8["q"] == Fraction(1, 32)
    assert l8["lvalue"] == "√2·π²/16"
    assert latmass.K_prime(13) == 8
    assert latmass.zeta_siegel_oracle(5) == Fraction(1, 30)


def test_verify():
    r = latmass.verify(21)
    assert r["outcome"] == "FeasibleK"
    assert r["K"] == "8/1"
    assert r["annotations"][0]["status"] == "not free"
    assert latmass.verify(6, "bound")["k_at_most"] == 10


def test_survivors():
    assert latmass.survivors(2, 200, jobs=2) == [2, 3, 5, 6, 13, 21]


def test_errors():
    with pytest.raises(ValueError):
        latmass.verify(12)
    with pytest.raises(ValueError):
        latmass.ldata(20)
