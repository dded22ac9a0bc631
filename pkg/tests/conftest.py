"""Shared fixtures: the running examples used across the test modules."""

import pytest

from operadic import hypergraph as hg
from operadic import polytope as pt
from operadic import trees as tr


def C(dec, children=()):
    """Construct node; dec is a comma-separated string of vertex names
    ("x,y" for the decoration {x, y}) or an iterable of names."""
    if isinstance(dec, str):
        dec = frozenset(dec.split(","))
    else:
        dec = frozenset(dec)
    return pt.Construct(dec, list(children))


@pytest.fixture
def mk():
    return C


def path_hypergraph(n):
    """Path on n vertices 1..n: edges {i, i+1}. Its polytope is the
    (n-1)-dimensional associahedron."""
    verts = [str(i) for i in range(1, n + 1)]
    edges = [frozenset([str(i), str(i + 1)]) for i in range(1, n)]
    return hg.Hypergraph(verts, edges)


@pytest.fixture
def path3():
    return path_hypergraph(3)


@pytest.fixture
def simplex3():
    """One 3-element hyperedge: the 2-simplex."""
    return hg.Hypergraph("xyz", [frozenset("xyz")])


@pytest.fixture
def complete3():
    """Complete graph on 3 vertices plus the top edge: the permutohedron
    input (already saturated)."""
    return hg.Hypergraph("xyz", [frozenset("xy"), frozenset("yz"),
                                 frozenset("xz"), frozenset("xyz")])


@pytest.fixture
def hemi_hypergraph():
    """Four vertices, the smallest hypergraph whose polytope is neither a
    simplex product, a graph associahedron, nor a nestohedron."""
    return hg.Hypergraph(
        "xyuv",
        [frozenset("xy"), frozenset("xu"), frozenset("xv"),
         frozenset("uv"), frozenset("xuv")])


def hemi_tree():
    """Five-vertex operadic tree whose edge graph is hemi_hypergraph.

    Root r has children x, u, v interleaved with leaf slots; x carries y.
    Canonical edge names map x->e1, y->e2, u->e3, v->e4.
    """
    a1 = tr.PNode("y", [None, None])
    f1 = tr.PNode("x", [None, a1, None])
    f2 = tr.PNode("u", [None, None])
    a2 = tr.PNode("v", [None, None])
    root = tr.PNode("r", [None, f1, f2, None, a2])
    return tr.OperadicTree(root, ["x", "u", "v", "r", "y"])


def hemi_factors():
    """(T1, T2) with substitute(T1, 2, T2) == hemi_tree up to canonical
    relabeling.  T1 holds the x{y} branch, T2 the u, v branch pair."""
    t1 = tr.OperadicTree(
        tr.PNode("rv", [None,
                        tr.PNode("x", [None, tr.PNode("y", [None, None]),
                                       None]),
                        None, None, None, None, None]),
        ["x", "rv", "y"])
    t2 = tr.OperadicTree(
        tr.PNode("r2", [None, None, tr.PNode("u", [None, None]), None,
                        tr.PNode("v", [None, None])]),
        ["u", "v", "r2"])
    return t1, t2


def chain_tree(k):
    """Linear chain of k edges: root r over e1 over ... over ek, one leaf
    at the bottom.  Edge graph is the path on k vertices."""
    node = tr.PNode("e%d" % k, [None])
    for j in range(k - 1, 0, -1):
        node = tr.PNode("e%d" % j, [node])
    root = tr.PNode("r", [node])
    return tr.OperadicTree(root, ["r"] + ["e%d" % j for j in range(1, k + 1)])


@pytest.fixture
def hemi():
    return hemi_tree()


@pytest.fixture
def chain3():
    return chain_tree(3)
