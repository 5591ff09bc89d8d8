import pickle

import pytest
from hypothesis import given, settings, strategies as st

from ofz.errors import CompositeModulus, EvenModulus, FieldMismatch, ZeroArgument, ZeroInverse
from ofz.field import (
    FieldElement,
    PrimeField,
    Residue,
    cyclotomic_number,
    is_prime,
    is_qr,
    make_field,
    prime_factors,
    primes_upto,
    primitive_root,
    qr_generator,
)

SMALL_PRIMES = [q for q in primes_upto(199) if q >= 5]


def test_construction():
    f = make_field(19)
    assert len(f.quadratic_residues()) == 9
    assert list(f.non_residues()) == [2, 3, 8, 10, 12, 13, 14, 15, 18]
    with pytest.raises(EvenModulus):
        make_field(4)
    with pytest.raises(CompositeModulus):
        make_field(15)
    with pytest.raises(ValueError):
        PrimeField(3)


def test_make_field_is_cached_and_picklable():
    f = make_field(23)
    assert make_field(23) is f
    g = pickle.loads(pickle.dumps(f))
    assert g == f and hash(g) == hash(f)
    assert pickle.loads(pickle.dumps(f.element(5))) == 5


def test_arithmetic_examples():
    f19, f11 = make_field(19), make_field(11)
    b = f19.element(8)
    assert b * b - b + 1 == 0
    assert f11.inv(2) == 6
    assert f11.element(2).inv() == 6
    assert f19.inv(1) == 1
    assert f19.element(3) ** -1 * 3 == 1
    assert 1 / f11.element(2) == 6
    assert 10 - f11.element(4) == 6
    with pytest.raises(ZeroInverse):
        f11.element(0).inv()
    with pytest.raises(ZeroDivisionError):
        f11.inv(0)


def test_mixing_fields_fails():
    with pytest.raises(FieldMismatch):
        make_field(7).element(1) + make_field(11).element(1)


def test_residue_classes():
    f19 = make_field(19)
    assert is_qr(f19.element(8)) is Residue.NQR
    assert is_qr(f19.element(18)) is Residue.NQR
    for q in (5, 7, 13, 59):
        assert make_field(q).residue_class(1) is Residue.QR
    with pytest.raises(ZeroArgument):
        f19.residue_class(0)
    assert str(Residue.QR) == "QR"


def test_primitive_roots():
    assert primitive_root(make_field(19)) == 2
    assert primitive_root(make_field(59)) == 2
    assert primitive_root(make_field(7)) == 3
    assert qr_generator(make_field(19)) == 4
    assert qr_generator(make_field(59)) == 4
    f11 = make_field(11)
    assert f11.multiplicative_order(qr_generator(f11)) == 5


def test_cyclotomic_examples():
    assert cyclotomic_number(make_field(11), 0, 0) == 2
    assert cyclotomic_number(make_field(13), 0, 1) == 3
    f11 = make_field(11)
    assert sum(cyclotomic_number(f11, i, j) for i in (0, 1) for j in (0, 1)) == 9
    with pytest.raises(ValueError):
        cyclotomic_number(f11, 2, 0)


def test_number_theory_helpers():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert [n for n in range(60) if is_prime(n)] == primes_upto(59)
    assert prime_factors(58) == [2, 29]
    assert prime_factors(1) == []


@pytest.mark.parametrize("q", SMALL_PRIMES)
def test_field_invariants(q):
    f = make_field(q)
    squares = {x * x % q for x in range(1, q)}
    assert set(f.quadratic_residues()) == squares
    assert set(f.non_residues()) == set(range(1, q)) - squares
    assert all(x * f.inv(x) % q == 1 for x in range(1, q))
    r = f.primitive_root.value
    assert f.multiplicative_order(r) == q - 1
    assert all(f.multiplicative_order(c) < q - 1 for c in range(2, r))
    assert f.multiplicative_order(qr_generator(f)) == (q - 1) // 2
    assert f.is_nqr(q - 1) == (q % 4 == 3)


@st.composite
def field_and_elements(draw, n=3):
    q = draw(st.sampled_from(SMALL_PRIMES))
    f = make_field(q)
    return f, [f.element(draw(st.integers(-10 * q, 10 * q))) for _ in range(n)]


@settings(max_examples=200, deadline=None)
@given(field_and_elements())
def test_field_axioms(case):
    f, (a, b, c) = case
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == f.zero
    assert a * f.one == a
    if a:
        assert a * a.inv() == 1
        assert (a / a) == 1
    assert isinstance(a + 1, FieldElement)


@settings(max_examples=200, deadline=None)
@given(field_and_elements(2))
def test_residue_character_is_multiplicative(case):
    f, (a, b) = case
    if not a or not b:
        return
    same = a.residue_class == b.residue_class
    assert (a * b).is_qr() == same
