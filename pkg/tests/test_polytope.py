"""Construct enumeration against an independent counting oracle, face
order and lattice structure, and the running face-vector goldens."""

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operadic import hypergraph as hg
from operadic import polytope as pt
from operadic.errors import DomainError, UsageError

from conftest import C, path_hypergraph


@st.composite
def connected_hypergraphs(draw):
    n = draw(st.integers(1, 5))
    verts = [chr(ord("a") + i) for i in range(n)]
    k = draw(st.integers(0, 6))
    edges = [frozenset(draw(st.sets(st.sampled_from(verts), min_size=1)))
             for _ in range(k)]
    h = hg.Hypergraph(verts, edges)
    if len(oracle_components(h, h.vertices)) != 1:
        edges.append(frozenset(verts))
        h = hg.Hypergraph(verts, edges)
    return h


def oracle_components(h, verts):
    """Own union-find over the hyperedges inside verts."""
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in h.hyperedges:
        if e <= verts:
            vs = sorted(e)
            for v in vs[1:]:
                parent[find(v)] = find(vs[0])
    classes = {}
    for v in verts:
        classes.setdefault(find(v), set()).add(v)
    return [frozenset(s) for s in classes.values()]


def oracle_counts_by_decorations(h):
    """Counts of constructs with a given number of decorations, computed
    by the recursive component rule as a pure convolution: no construct
    objects are built and no polytope code is called."""
    memo = {}

    def counts(verts):
        if verts in memo:
            return memo[verts]
        out = {}
        for r in range(1, len(verts) + 1):
            for xs in itertools.combinations(sorted(verts), r):
                acc = {0: 1}
                for part in oracle_components(h, verts - frozenset(xs)):
                    sub = counts(part)
                    nxt = {}
                    for a, ca in acc.items():
                        for b, cb in sub.items():
                            nxt[a + b] = nxt.get(a + b, 0) + ca * cb
                    acc = nxt
                for j, c in acc.items():
                    out[j + 1] = out.get(j + 1, 0) + c
        memo[verts] = out
        return out

    return counts(h.vertices)


def oracle_f_vector(h):
    n = len(h.vertices)
    cnt = oracle_counts_by_decorations(h)
    return [cnt.get(n - i, 0) for i in range(n)]


def test_construct_basics():
    c = C("x", [C("y")])
    assert c.support() == frozenset("xy")
    assert c.decorations() == [frozenset("x"), frozenset("y")]
    assert c.edges() == [frozenset("y")]
    assert pt.pretty(c) == "x{y}"
    assert pt.pretty(C("x,y", [C("u,v")])) == "{x,y}{{u,v}}"


def test_is_construct(path3):
    assert pt.is_construct(path3, C("1,2,3"))
    assert pt.is_construct(path3, C("2", [C("1"), C("3")]))
    # decoration sets must partition the vertices
    assert not pt.is_construct(path3, C("1,2"))
    assert not pt.is_construct(path3, C("1,2", [C("2,3")]))
    # children must match the deletion components
    assert not pt.is_construct(path3, C("1", [C("2"), C("3")]))
    disconnected = hg.Hypergraph("ab")
    with pytest.raises(DomainError):
        pt.is_construct(disconnected, C("ab"))


def test_f_vector_goldens(simplex3, path3, complete3, hemi_hypergraph):
    assert pt.f_vector(simplex3) == [3, 3, 1]
    assert pt.f_vector(path3) == [5, 5, 1]
    assert pt.f_vector(complete3) == [6, 6, 1]
    assert pt.f_vector(hemi_hypergraph) == [18, 27, 11, 1]
    for h in (simplex3, path3, complete3, hemi_hypergraph):
        assert pt.euler_check(h)


def test_f_vector_matches_oracle_on_goldens(simplex3, path3, complete3,
                                            hemi_hypergraph):
    for h in (simplex3, path3, complete3, hemi_hypergraph,
              path_hypergraph(5)):
        assert pt.f_vector(h) == oracle_f_vector(h)


@settings(max_examples=40, deadline=None)
@given(connected_hypergraphs())
def test_f_vector_matches_oracle(h):
    assert pt.f_vector(h) == oracle_f_vector(h)


@settings(max_examples=40, deadline=None)
@given(connected_hypergraphs())
def test_euler_relation(h):
    f = oracle_f_vector(h)
    assert sum((-1) ** i * fi for i, fi in enumerate(f)) == 1
    assert pt.euler_check(h)


def test_constructions_are_rank_zero(path3):
    cs = pt.constructions(path3)
    assert len(cs) == 5
    for c in cs:
        assert all(len(d) == 1 for d in c.decorations())
        assert pt.rank(path3, c) == 0


def test_enumerated_constructs_are_valid(hemi_hypergraph):
    grouped = pt.enumerate_constructs(hemi_hypergraph)
    for r, cs in grouped.items():
        assert len(set(cs)) == len(cs)
        for c in cs:
            assert pt.rank(hemi_hypergraph, c) == r
            assert pt.is_construct(hemi_hypergraph, c)


def test_hemi_facet_census(hemi_hypergraph):
    """Facets classified by their vertex count: 3 hexagons, 4 pentagons,
    4 squares."""
    grouped = pt.enumerate_constructs(hemi_hypergraph)
    census = {}
    for facet in grouped[2]:
        below = sum(1 for v in grouped[0] if pt.leq(v, facet))
        census[below] = census.get(below, 0) + 1
    assert census == {6: 3, 5: 4, 4: 4}


def test_contract_edge(path3):
    c = C("2", [C("1"), C("3")])
    assert pt.contract_edge(c, frozenset("1")) == C("1,2", [C("3")])
    assert pt.contract_edge(c, frozenset("3")) == C("2,3", [C("1")])
    with pytest.raises(DomainError):
        pt.contract_edge(c, frozenset("2"))


def test_contract_edges_with_map():
    c = C("x", [C("y"), C("u", [C("v")])])
    merged, idmap = pt.contract_edges_with_map(c, [frozenset("u")])
    assert merged == C("x,u", [C("y"), C("v")])
    assert idmap == {frozenset("y"): frozenset("y"),
                     frozenset("v"): frozenset("v")}
    # contracting below: the surviving upper edge absorbs what it ate
    merged2, idmap2 = pt.contract_edges_with_map(c, [frozenset("v")])
    assert merged2 == C("x", [C("y"), C("u,v")])
    assert idmap2[frozenset("u")] == frozenset("uv")


def test_contraction_preserves_validity(hemi_hypergraph):
    grouped = pt.enumerate_constructs(hemi_hypergraph)
    for cs in grouped.values():
        for c in cs:
            for e in c.edges():
                up = pt.contract_edge(c, e)
                assert pt.is_construct(hemi_hypergraph, up)
                assert pt.leq(c, up)


def test_leq_is_a_partial_order_on_the_pentagon(path3):
    faces = [c for cs in pt.enumerate_constructs(path3).values() for c in cs]
    for a in faces:
        assert pt.leq(a, a)
        for b in faces:
            if pt.leq(a, b) and pt.leq(b, a):
                assert a == b
            for c in faces:
                if pt.leq(a, b) and pt.leq(b, c):
                    assert pt.leq(a, c)


def test_face_lattice(path3):
    lat = pt.FaceLattice(path3)
    assert len(lat.elements) == 1 + 5 + 5 + 1
    covers = lat.covers()
    assert len(covers) == 5 + 10 + 5
    for lo, hi in covers:
        assert lat.rank(hi) == lat.rank(lo) + 1
        if lo is not None:
            assert pt.leq(lo, hi)
    dot = lat.to_dot()
    assert dot.startswith("digraph")
    assert '"empty"' in dot and "->" in dot


def test_json_round_trip():
    c = C("x,y", [C("u", [C("v")])])
    data = pt.to_json(c)
    assert data == {"vertex": ["x", "y"],
                    "children": [{"vertex": ["u"],
                                  "children": [{"vertex": ["v"],
                                                "children": []}]}]}
    assert pt.from_json(data) == c


def test_from_json_error_paths():
    with pytest.raises(UsageError) as exc:
        pt.from_json({"vertex": []})
    assert exc.value.path == "$.vertex"
    with pytest.raises(UsageError) as exc:
        pt.from_json({"vertex": ["x"], "children": [{"vertex": 3}]})
    assert exc.value.path == "$.children[0].vertex"
