"""Circled operations: the cofibrant-resolution level with its
promote-minus-contract differential and length-assignment counts."""

import itertools

import pytest

from operadic import oinf
from operadic import polytope as pt
from operadic import trees as tr
from operadic import winf
from operadic.errors import DomainError, UsageError

from conftest import C, chain_tree, hemi_tree


def pentagon_op():
    nested = C("e1", [C("e2", [C("e3")])])
    return winf.CircledOp(oinf.BasisOp(chain_tree(3), nested, check=True))


def all_ops(tree):
    return [op for ops in oinf.enumerate_basis(tree).values() for op in ops
            if op.construct is not None]


def test_circled_op_validation():
    base = oinf.BasisOp(chain_tree(2), C("e1", [C("e2")]), check=True)
    w = winf.CircledOp(base, frozenset([frozenset(["e2"])]))
    assert w.degree() == 0
    assert w.circled() == frozenset()
    with pytest.raises(DomainError):
        winf.CircledOp(base, [frozenset(["e1"])])  # e1 is not an edge
    unit = oinf.enumerate_basis(tr.linear_tree(1))[0][0]
    with pytest.raises(DomainError):
        winf.CircledOp(unit)


def test_circles_partition_decorations():
    w = pentagon_op()
    assert w.circles() == [frozenset([frozenset(["e1"]), frozenset(["e2"]),
                                      frozenset(["e3"])])]
    top = winf.CircledOp(w.base, frozenset([frozenset(["e2"]),
                                            frozenset(["e3"])]))
    assert sorted(len(g) for g in top.circles()) == [1, 1, 1]


def test_enumerate_circled_counts():
    for k in range(2, 6):
        for t in tr.enumerate_plane_shapes(k):
            for op in all_ops(t):
                circled = winf.enumerate_circled(op)
                assert len(circled) == 2 ** len(op.construct.edges())
                assert len(set(circled)) == len(circled)
                for w in circled:
                    assert w.degree() == len(w.circled())


def test_pentagon_differential_golden():
    d = winf.w_differential(pentagon_op())
    got = {(pt.pretty(op.base.construct),
            tuple(sorted(tuple(sorted(e)) for e in op.connecting))): c
           for op, c in d.terms.items()}
    assert got == {
        ("e1{e2{e3}}", (("e2",),)): 1,
        ("e1{e2{e3}}", (("e3",),)): -1,
        ("e1{{e2,e3}}", ()): 1,
        ("{e1,e2}{e3}", ()): 1,
    }


def test_differential_terms_promote_or_contract():
    w = pentagon_op()
    for term, coeff in winf.w_differential(w).terms.items():
        assert coeff in (1, -1)
        assert term.degree() == w.degree() - 1
        if term.base == w.base:
            added = term.connecting - w.connecting
            assert len(added) == 1  # promote: one circled edge opens
        else:
            # contract: one construct edge collapsed
            assert len(term.base.construct.decorations()) == \
                len(w.base.construct.decorations()) - 1


def test_w_d_squared_small():
    shapes = [t for k in range(2, 5) for t in tr.enumerate_plane_shapes(k)]
    for t in shapes:
        for op in all_ops(t):
            for w in winf.enumerate_circled(op):
                dd = winf.w_differential_element(winf.w_differential(w))
                assert dd.is_zero()


def interval_census(tree):
    """Intervals of the face order counted by rank difference, walked
    through leq: an independent route to the circled census."""
    h = tr.edge_graph(tree)
    faces = [c for cs in pt.enumerate_constructs(h).values() for c in cs]
    census = {}
    for lo in faces:
        for hi in faces:
            if pt.leq(lo, hi):
                d = len(lo.decorations()) - len(hi.decorations())
                census[d] = census.get(d, 0) + 1
    return census


def circled_census(tree):
    census = {}
    for op in all_ops(tree):
        for w in winf.enumerate_circled(op):
            census[w.degree()] = census.get(w.degree(), 0) + 1
    return census


def test_circled_census_matches_interval_oracle():
    shapes = [t for k in range(2, 5) for t in tr.enumerate_plane_shapes(k)]
    for t in shapes:
        assert circled_census(t) == interval_census(t)


def test_pentagon_census_golden(chain3):
    assert circled_census(chain3) == {0: 11, 1: 15, 2: 5}


def test_compose_w():
    a = winf.CircledOp(oinf.BasisOp(chain_tree(1), C("e1"), check=True))
    out = winf.compose_w(a, 2, a)
    (term, coeff), = out.terms.items()
    assert coeff == 1
    assert pt.pretty(term.base.construct) == "e1{e2}"
    assert term.connecting == frozenset([frozenset(["e2"])])
    assert term.degree() == a.degree() + a.degree()
    out1 = winf.compose_w(a, 1, a)
    (term1, _), = out1.terms.items()
    assert pt.pretty(term1.base.construct) == "e2{e1}"
    assert term1.connecting == frozenset([frozenset(["e1"])])


def test_compose_w_keeps_circled_edges():
    w = pentagon_op()  # both edges circled
    a = winf.CircledOp(oinf.BasisOp(chain_tree(1), C("e1"), check=True))
    (term, coeff), = winf.compose_w(w, 1, a).terms.items()
    assert abs(coeff) == 1
    assert term.degree() == w.degree()
    assert len(term.connecting) == 1


def test_circled_json_round_trip():
    w = winf.CircledOp(pentagon_op().base, frozenset([frozenset(["e2"])]))
    data = winf.circled_to_json(w)
    assert data["connecting"] == [["e2"]]
    assert winf.circled_from_json(data) == w
    with pytest.raises(UsageError) as exc:
        winf.circled_from_json({**data, "connecting": [["e1"]]})
    assert exc.value.path == "$.connecting"
    with pytest.raises(UsageError):
        winf.circled_from_json({**data, "connecting": "e2"})


def test_element_json_is_stable():
    e = winf.w_differential(pentagon_op())
    data = winf.element_to_json(e)
    assert data == winf.element_to_json(e)
    assert [sorted(d) for d in data] == \
        [["coeff", "connecting", "construct", "tree"]] * 4
