import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ofz.errors import BadCongruence, BadResidue, FieldMismatch, NotAStarter
from ofz.field import make_field
from ofz.starters import (
    Starter,
    are_orthogonal_starters,
    horton_betas,
    horton_starter,
    is_starter,
    is_strong_starter,
    make_starter,
    mullin_nemeth_starter,
    negate_starter,
    oriented_pairs,
    starter_defect,
    starter_for,
    starter_to_json,
)

F7, F11, F19 = make_field(7), make_field(11), make_field(19)


def test_horton_examples():
    s = horton_starter(F19, 8)
    assert (1, 8) in s.pairs
    assert len(s) == 9
    assert s.label == "horton(8)"
    assert is_strong_starter(s)
    with pytest.raises(BadResidue):
        horton_starter(F19, 4)
    with pytest.raises(BadResidue):
        horton_starter(F19, 18)
    with pytest.raises(BadCongruence):
        horton_starter(make_field(13), 2)


def test_mullin_nemeth():
    assert mullin_nemeth_starter(F7).pairs == ((1, 3), (2, 6), (4, 5))
    assert is_strong_starter(mullin_nemeth_starter(F11))
    with pytest.raises(BadCongruence):
        mullin_nemeth_starter(make_field(13))


def test_negation():
    s = horton_starter(F19, 8)
    assert negate_starter(negate_starter(s)).same_pairs(s)
    assert negate_starter(negate_starter(s)).label == s.label
    expected = Starter(F19, tuple((y, y * 8 % 19) for y in F19.non_residues()))
    assert negate_starter(s).same_pairs(expected)
    for b in horton_betas(F11):
        assert is_starter(negate_starter(horton_starter(F11, b)))


def test_predicates():
    assert not is_starter([(1, 2), (3, 4), (5, 6)], F7)
    assert starter_defect(F7, [(1, 2), (3, 4), (5, 6)]) == "differences"
    assert not is_starter([], make_field(5))
    assert starter_defect(make_field(5), []) == "cardinality"
    assert starter_defect(F7, [(1, 1), (2, 3), (4, 6)]) == "partition"
    assert starter_defect(F7, [(1, 2, 3)]) == "malformed"
    patterned = make_starter(F7, [(1, 5), (2, 3), (4, 6)])
    assert is_starter(patterned) and is_strong_starter(patterned)
    with pytest.raises(TypeError):
        is_starter([(1, 2)])
    with pytest.raises(NotAStarter):
        make_starter(F7, [(1, 2), (3, 4), (5, 6)])


def test_weak_starter_is_not_strong():
    # the patterned starter {{x, -x}} has every sum equal to zero
    s = make_starter(F7, [(1, 6), (2, 5), (3, 4)])
    assert is_starter(s) and not is_strong_starter(s)


def test_orthogonality():
    s8, s10 = horton_starter(F19, 8), horton_starter(F19, 10)
    assert are_orthogonal_starters(s8, s10)
    assert not are_orthogonal_starters(s8, s8)
    assert are_orthogonal_starters(s8, negate_starter(s8))
    with pytest.raises(FieldMismatch):
        are_orthogonal_starters(s8, horton_starter(F11, 2))


def test_orientation_and_json():
    s = horton_starter(F19, 8)
    pairs = oriented_pairs(s)
    assert sorted(pairs) == list(F19.quadratic_residues())
    assert all((x - y) % 19 == d for d, (x, y) in pairs.items())
    assert starter_to_json(s) == [list(p) for p in pairs.values()]
    patterned = make_starter(make_field(13), [(x, 13 - x) for x in range(1, 7)])
    assert starter_to_json(patterned) == [[x, 13 - x] for x in range(1, 7)]


def test_starter_for_dispatch():
    assert starter_for(F19, "horton", 8).same_pairs(horton_starter(F19, 8))
    assert starter_for(F11, "mullin-nemeth").label == "mullin_nemeth"
    with pytest.raises(ValueError):
        starter_for(F19, "horton")
    with pytest.raises(ValueError):
        starter_for(F19, "skolem")


@st.composite
def pairings(draw):
    q = draw(st.sampled_from([5, 7, 11, 13]))
    elems = draw(st.permutations(list(range(1, q))))
    return q, [(elems[i], elems[i + 1]) for i in range(0, q - 1, 2)]


@settings(max_examples=300, deadline=None)
@given(pairings())
def test_is_starter_agrees_with_naive_check(case):
    q, pairs = case
    assert is_starter(pairs, make_field(q)) == oracles.naive_is_starter(q, pairs)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([7, 11, 19, 23, 31, 43]), st.data())
def test_scaling_a_horton_starter(q, data):
    # multiplying by a residue permutes the pairs of S_beta
    f = make_field(q)
    b = data.draw(st.sampled_from(horton_betas(f)))
    c = data.draw(st.sampled_from(f.quadratic_residues()))
    s = horton_starter(f, b)
    scaled = Starter(f, tuple((x * c % q, y * c % q) for x, y in s.pairs))
    assert scaled.same_pairs(s)
