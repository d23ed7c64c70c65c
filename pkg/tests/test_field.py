from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F2, F3, F5, F7, F25, FIELDS, FIELD_IDS, Q, QW, raw_elements
from rpsalg.errors import AlreadyHasOmega, DivisionByZero, FieldMismatch, NoOmega, NotPrime, ParseError
from rpsalg.field import OmegaExtension, PrimeField, Rationals, omega_of, parse_field


def brute_force_omega(p):
    """Smallest x in F_p with x != 1 and x^3 = 1, by exhaustive search."""
    for x in range(2, p):
        if x * x * x % p == 1:
            return x
    return None


@pytest.mark.parametrize("p", [7, 13, 19, 31, 37, 43, 61, 97, 103, 1009])
def test_omega_matches_brute_force(p):
    assert omega_of(PrimeField(p)).value == brute_force_omega(p)


def test_omega_examples():
    assert omega_of(F7).value == 2
    assert omega_of(F3).value == 1
    w = omega_of(QW)
    assert w * w + w + 1 == 0
    assert (1 + w) * (1 + w * w) == 1


@pytest.mark.parametrize("F", [Q, F2, F5, PrimeField(11)], ids=str)
def test_no_omega(F):
    with pytest.raises(NoOmega):
        omega_of(F)
    assert not F.has_omega


def test_extension_errors():
    with pytest.raises(AlreadyHasOmega):
        OmegaExtension(F7)
    with pytest.raises(AlreadyHasOmega):
        OmegaExtension(F3)
    with pytest.raises(NotPrime):
        PrimeField(15)
    with pytest.raises(NotPrime):
        PrimeField(1)


def test_parse_field_round_trip():
    for text in ["Q", "Fp:7", "Q(w)", "Fp2:5", "Fp:1000003"]:
        assert str(parse_field(text)) == text
    with pytest.raises((ParseError, ValueError)):
        parse_field("R")


def test_division_by_zero(field):
    with pytest.raises(DivisionByZero):
        field(1) / field(0)
    with pytest.raises(ZeroDivisionError):
        field(0).inv()


def test_mixing_fields_is_an_error():
    with pytest.raises(FieldMismatch):
        F5(1) + F7(1)


def test_scalar_syntax():
    assert Q("1/3") == Fraction(1, 3)
    w = omega_of(QW)
    assert QW("1+2*w") == 1 + 2 * w
    assert QW("w2") == w * w
    assert F7("1/2") == F7(4)
    with pytest.raises(ParseError):
        Q("w")


def test_large_prime_uses_sympy_path():
    p = 2**31 - 1
    F = PrimeField(p)
    assert F(3) * F(3).inv() == 1


def test_conjugation():
    w = omega_of(QW)
    assert w.conj() == w * w
    z = QW("2/3 - 5*w")
    assert z.conj().conj() == z
    assert QW.has_conjugation and not Q.has_conjugation


@pytest.mark.parametrize("F", FIELDS, ids=FIELD_IDS)
def test_field_axioms(F):
    # 1000 samples per field: ring axioms plus inverses
    el = raw_elements(F)

    @settings(max_examples=1000)
    @given(el, el, el)
    def check(a, b, c):
        add, mul = F.add, F.mul
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert add(a, F.neg(a)) == F.zero
        assert mul(a, F.one) == a
        if not F.is_zero(a):
            assert mul(a, F.inv(a)) == F.one

    check()


@settings(max_examples=200)
@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_fraction_embedding_mod_p(n, d):
    # from_fraction agrees with modular arithmetic whenever d is a unit
    F = PrimeField(1000003)
    assert F.from_fraction(Fraction(n, d)) == n * pow(d, -1, F.p) % F.p


def test_characteristics():
    assert [F.characteristic for F in (Q, QW, F2, F7, F25)] == [0, 0, 2, 7, 5]
