import pickle

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ofz.errors import FieldMismatch, NotAStarter
from ofz.factorization import (
    INF,
    Edge,
    OneFactor,
    OneFactorization,
    complete_graph_edges,
    factor_pair_dot,
    factorization_from_starter,
    factorization_to_json,
    orthogonal_factorizations,
    translation_covariant,
    validate_factorization,
    vertex_from_json,
    vertex_to_json,
)
from ofz.field import make_field
from ofz.starters import Starter, horton_betas, horton_starter, mullin_nemeth_starter, negate_starter

F19 = make_field(19)


@pytest.fixture(scope="module")
def fz8():
    return factorization_from_starter(horton_starter(F19, 8))


def test_infinity_vertex():
    assert INF > 10**9 and not INF < 0
    assert sorted([INF, 3, 0]) == [0, 3, INF]
    assert pickle.loads(pickle.dumps(INF)) is INF
    assert vertex_to_json(INF) == "inf" and vertex_from_json("inf") is INF
    assert vertex_from_json(7) == 7
    with pytest.raises(TypeError):
        INF + 1


def test_edges_are_canonical():
    assert Edge.of(INF, 3) == Edge(3, INF)
    assert Edge.of(5, 2) == (2, 5)
    with pytest.raises(ValueError):
        Edge.of(4, 4)
    assert Edge(17, 18).shifted(3, 19) == Edge(1, 2)


def test_shape(fz8):
    assert len(fz8) == 19
    assert all(len(f.edges) == 10 for f in fz8)
    assert fz8[0].mate[INF] == 0
    assert fz8.label == "horton(8)"
    assert validate_factorization(fz8) == (True, "ok")
    assert set().union(*(f.edges for f in fz8)) == complete_graph_edges(19)
    assert translation_covariant(fz8)


def test_factor_edges_follow_the_starter(fz8):
    assert Edge(3, 3 + 8) not in fz8[0].edges
    assert Edge(1, 8) in fz8[0].edges
    assert Edge(4, 11) in fz8[3].edges
    assert Edge(3, INF) in fz8[3].edges


def test_swapped_edge_breaks_disjointness(fz8):
    f0, f1 = fz8[0], fz8[1]
    e0 = Edge(1, 8)
    e1 = next(e for e in f1.edges if e[1] is not INF)
    broken = list(fz8.factors)
    broken[0] = OneFactor(19, (f0.edges - {e0}) | {e1})
    ok, reason = validate_factorization(OneFactorization(19, tuple(broken)))
    assert not ok and reason


def test_missing_edge_breaks_matching(fz8):
    broken = list(fz8.factors)
    broken[5] = OneFactor(19, set(list(fz8[5].sorted_edges())[1:]))
    assert not broken[5].is_perfect_matching()
    ok, reason = validate_factorization(OneFactorization(19, tuple(broken)))
    assert not ok and "matching" in reason
    assert validate_factorization(OneFactorization(19, fz8.factors[:-1]))[0] is False


def test_non_starter_rejected():
    with pytest.raises(NotAStarter):
        factorization_from_starter(Starter(make_field(7), ((1, 2), (3, 4), (5, 6))))


def test_orthogonal_factorizations(fz8):
    neg = factorization_from_starter(negate_starter(horton_starter(F19, 8)))
    f10 = factorization_from_starter(horton_starter(F19, 10))
    assert orthogonal_factorizations(fz8, neg) == (True, 1)
    assert orthogonal_factorizations(fz8, f10)[0]
    assert orthogonal_factorizations(fz8, fz8) == (False, 10)
    with pytest.raises(FieldMismatch):
        orthogonal_factorizations(fz8, factorization_from_starter(mullin_nemeth_starter(make_field(11))))


def test_json_and_dot(fz8):
    doc = factorization_to_json(fz8)
    assert doc["q"] == 19 and len(doc["factors"]) == 19
    assert doc["factors"]["0"][0] == [0, "inf"]
    assert [1, 8] in doc["factors"]["0"]
    dot = factor_pair_dot(fz8[0], fz8[4], "u")
    assert dot.startswith("graph u {")
    assert dot.count("color=red") == 10 and dot.count("color=blue") == 10
    neg = factorization_from_starter(negate_starter(horton_starter(F19, 8)))
    assert factor_pair_dot(fz8[0], neg[0]).count("color=purple") == 1


def test_shifted_factor(fz8):
    assert fz8[0].shifted(7).edges == fz8[7].edges


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([7, 11, 19, 23, 31]), st.data())
def test_against_naive_check(q, data):
    b = data.draw(st.sampled_from(horton_betas(make_field(q))))
    fz = factorization_from_starter(horton_starter(make_field(q), b))
    relabel = lambda v: q if v is INF else v  # noqa: E731
    factors = [[(relabel(u), relabel(v)) for u, v in f.edges] for f in fz]
    assert oracles.naive_is_one_factorization(q + 1, factors)
