"""The coloured-operad level: basis operations, signed composition,
the differential, and the symmetric-group action on indexings."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operadic import oinf
from operadic import polytope as pt
from operadic import trees as tr
from operadic.errors import DomainError, UsageError

from conftest import C, chain_tree, hemi_factors, hemi_tree


def hemi_canon():
    return hemi_tree().relabel_canonical()[0]


def square_op():
    return oinf.BasisOp(hemi_canon(), C("e1,e2", [C("e3,e4")]), check=True)


def all_ops(tree):
    return [op for ops in oinf.enumerate_basis(tree).values() for op in ops
            if op.construct is not None]


def test_basis_op_canonicalizes_names():
    op = oinf.BasisOp(hemi_tree(), C("x,y", [C("u,v")]), check=True)
    assert op == square_op()
    assert op.tree.sigma == ("e1", "e3", "e4", "r", "e2")
    assert pt.pretty(op.construct) == "{e1,e2}{{e3,e4}}"
    assert op.degree() == 2


def test_basis_op_rejects_invalid_construct():
    with pytest.raises(DomainError):
        oinf.BasisOp(hemi_tree(), C("x,y"), check=True)
    with pytest.raises(DomainError):
        oinf.BasisOp(hemi_tree(), C("x,y", [C("u,v"), C("q")]), check=True)


def test_degree_counts_match_face_vector():
    counts = {d: len(ops) for d, ops in
              oinf.enumerate_basis(hemi_canon()).items()}
    assert counts == {0: 18, 1: 27, 2: 11, 3: 1}
    f = pt.f_vector(tr.edge_graph(hemi_canon()))
    assert counts == {d: f[d] for d in range(4)}


def test_unit_ops_have_no_construct():
    basis = oinf.enumerate_basis(tr.linear_tree(1))
    assert set(basis) == {0}
    (unit,) = basis[0]
    assert unit.construct is None
    assert unit.degree() == 0


def test_composition_sign_exponents_golden():
    t1, t2 = hemi_factors()
    op_xy = oinf.BasisOp(t1, C("x", [C("y")]), check=True)
    op_vu = oinf.BasisOp(t2, C("v", [C("u")]), check=True)
    op_uv = oinf.BasisOp(t2, C("u,v"), check=True)
    # the two worked sign examples: 3*4 = 12 (even) and 3*3 = 9 (odd)
    assert oinf.count_E(op_xy, leaf=2) == 3
    assert oinf.total_count(op_vu) - 1 == 4
    assert oinf.total_count(op_uv) - 1 == 3
    assert oinf.compose_sign_exponent(op_xy, 2, op_vu) == 12
    assert oinf.compose_sign_exponent(op_xy, 2, op_uv) == 9

    plus = oinf.compose(op_xy, 2, op_vu)
    (term_p, coeff_p), = plus.terms.items()
    assert coeff_p == 1
    assert pt.pretty(term_p.construct) == "e1{e2,e4{e3}}"
    minus = oinf.compose(op_xy, 2, op_uv)
    (term_m, coeff_m), = minus.terms.items()
    assert coeff_m == -1
    assert pt.pretty(term_m.construct) == "e1{e2,{e3,e4}}"


def test_nine_compositions_fill_the_square():
    t1, t2 = hemi_factors()
    tops = [C("x", [C("y")]), C("y", [C("x")]), C("x,y")]
    bots = [C("u", [C("v")]), C("v", [C("u")]), C("u,v")]
    square = square_op()
    results = []
    for c1 in tops:
        a = oinf.BasisOp(t1, c1, check=True)
        for c2 in bots:
            b = oinf.BasisOp(t2, c2, check=True)
            (term, coeff), = oinf.compose(a, 2, b).terms.items()
            assert abs(coeff) == 1
            assert term.tree == square.tree
            assert term.degree() == a.degree() + b.degree()
            results.append(term)
    assert len(set(results)) == 9
    # exactly the closed interval below the square facet
    faces = [op for op in all_ops(square.tree)
             if pt.leq(op.construct, square.construct)]
    assert set(results) == set(faces)
    assert sorted(op.degree() for op in results) == [0, 0, 0, 0, 1, 1, 1, 1, 2]


def test_compose_with_unit_is_identity():
    unit = oinf.enumerate_basis(tr.linear_tree(1))[0][0]
    op = oinf.BasisOp(chain_tree(2), C("e1", [C("e2")]), check=True)
    for i in (1, 2, 3):
        out = oinf.compose(op, i, unit)
        (term, coeff), = out.terms.items()
        assert coeff == 1
        assert term == op


def test_compose_arity_mismatch_raises():
    t1, _ = hemi_factors()
    op = oinf.BasisOp(t1, C("x", [C("y")]), check=True)
    unit3 = oinf.enumerate_basis(tr.linear_tree(1))[0][0]
    with pytest.raises(DomainError):
        oinf.compose(op, 1, unit3)  # vertex 1 has arity 3, unit expects 1


def test_differential_of_the_square():
    """The four vertex splittings of the labelled square, with the
    implementation's signs: the A2 splits of {e3,e4} get opposite signs."""
    d = oinf.differential(square_op())
    got = {pt.pretty(op.construct): c for op, c in d.terms.items()}
    assert got == {
        "e1{e2,{e3,e4}}": 1,
        "e2{e1{{e3,e4}}}": 1,
        "{e1,e2}{e4{e3}}": -1,
        "{e1,e2}{e3{e4}}": 1,
    }
    assert all(op.degree() == 1 for op in d.terms)


def test_differential_terms_contract_back():
    """Every term of d(op) arises by splitting one decoration: some edge
    of the term contracts back to the original construct."""
    for op in all_ops(hemi_canon()):
        if op.degree() == 0:
            assert oinf.differential(op).is_zero()
            continue
        for term in oinf.differential(op).terms:
            assert any(pt.contract_edge(term.construct, e) == op.construct
                       for e in term.construct.edges())


def test_d_squared_is_zero_small():
    shapes = [t for k in range(2, 5) for t in tr.enumerate_plane_shapes(k)]
    shapes.append(hemi_canon())
    for t in shapes:
        for op in all_ops(t):
            dd = oinf.differential_element(oinf.differential(op))
            assert dd.is_zero()


def test_leibniz_small():
    t1, t2 = hemi_factors()
    ops1 = [oinf.BasisOp(t1, c, check=True)
            for c in (C("x", [C("y")]), C("y", [C("x")]), C("x,y"))]
    ops2 = [oinf.BasisOp(t2, c, check=True)
            for c in (C("u", [C("v")]), C("v", [C("u")]), C("u,v"))]
    for a in ops1:
        for b in ops2:
            lhs = oinf.differential_element(oinf.compose(a, 2, b))
            rhs = oinf.compose_elements(oinf.differential(a), 2,
                                        oinf.Element({b: 1}))
            sign = -1 if a.degree() % 2 else 1
            rhs = rhs + oinf.compose_elements(
                oinf.Element({a: 1}), 2, oinf.differential(b)).scale(sign)
            assert (lhs - rhs).is_zero()


def test_classify_edge():
    vertical = oinf.BasisOp(chain_tree(2), C("e1,e2"), check=True)
    assert oinf.classify_edge(vertical) == "A1"
    shapes3 = tr.enumerate_plane_shapes(3)
    horizontal = None
    for t in shapes3:
        if t.root.arity() == 2:
            horizontal = oinf.BasisOp(
                t, C([t.root.inputs[0].name, t.root.inputs[1].name]),
                check=True)
    assert oinf.classify_edge(horizontal) == "A2"
    with pytest.raises(DomainError):
        oinf.classify_edge(square_op())  # degree 2


def test_symmetric_action_is_a_right_action():
    op = square_op()
    k = op.tree.size()
    identity = list(range(1, k + 1))
    assert oinf.symmetric_action(op, identity) == op
    kappa = [2, 1, 3, 5, 4]
    mu = [3, 1, 2, 4, 5]
    once = oinf.symmetric_action(oinf.symmetric_action(op, kappa), mu)
    composed = [kappa[mu[i - 1] - 1] for i in range(1, k + 1)]
    assert once == oinf.symmetric_action(op, composed)
    with pytest.raises(DomainError):
        oinf.symmetric_action(op, [1, 1, 2, 3, 4])


@settings(max_examples=30, deadline=None)
@given(st.permutations([1, 2, 3, 4, 5]))
def test_differential_commutes_with_the_action(kappa):
    op = square_op()
    lhs = oinf.differential(oinf.symmetric_action(op, list(kappa)))
    rhs = oinf.Element({oinf.symmetric_action(t, list(kappa)): c
                        for t, c in oinf.differential(op).terms.items()})
    assert (lhs - rhs).is_zero()


def test_element_arithmetic():
    a, b = all_ops(chain_tree(2))[:2]
    e = oinf.Element({a: 2}) + oinf.Element({b: -1})
    assert e.terms == {a: 2, b: -1}
    assert (e - e).is_zero()
    assert e.scale(0).is_zero()
    assert e.scale(3).terms == {a: 6, b: -3}
    assert not oinf.Element({a: 1}).is_zero()


def test_op_json_round_trip():
    op = square_op()
    data = oinf.op_to_json(op)
    assert set(data) == {"tree", "construct"}
    assert oinf.op_from_json(data) == op
    unit = oinf.enumerate_basis(tr.linear_tree(1))[0][0]
    assert oinf.op_from_json(oinf.op_to_json(unit)) == unit
    with pytest.raises(UsageError):
        oinf.op_from_json({"tree": tr.to_json(hemi_tree())})


def test_element_json_is_sorted_and_stable():
    e = oinf.differential(square_op())
    data = oinf.element_to_json(e)
    assert [d["coeff"] for d in data] == [1, 1, -1, 1]
    assert data == oinf.element_to_json(e)
