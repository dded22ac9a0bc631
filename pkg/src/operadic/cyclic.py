"""Cyclic operadic trees and their minimal-model operations.

A cyclic operadic tree is an operadic tree with a marking of one of its
ends (the root end or one of the leaves); the marking determines a
labelling of all ends 0..n in the clockwise cyclic order (root end
first, then leaves in planar order).  Two marked trees are equivalent
when some planar unrooted isomorphism matches both the vertex indexing
and the marking; every class contains exactly one representative whose
marked end is the root, and canonical_rep computes it by re-rooting at
the marked leaf.

Re-rooting walks from the new root end toward the old root: at each
vertex the new inputs are the remaining directions in clockwise order
starting just after the new output direction, the old parent direction
carrying the recursively flipped upper part, and the old root stem
ending up as an ordinary leaf.  Vertex names are reassigned so that
every tree edge keeps its name (the new child endpoint inherits the
edge name, the new root takes the old root's name), so constructs of
the edge graph transport verbatim.

Basis operations are cyclic trees with a construct of the edge graph;
composition and the differential reuse the non-cyclic machinery on the
canonical representatives, the marking staying at the root throughout.
"""

from .errors import DomainError, UsageError
from . import polytope as pt
from . import trees as tr
from . import oinf
from .oinf import BasisOp, Element


def reroot_at_leaf(op, p):
    """Re-root an operadic tree at its p-th leaf (planar order,
    1-based).  Returns an equivalent-up-to-names OperadicTree whose root
    end is the old marked leaf; tree edges keep their names."""
    slots = tr.leaf_slots(op.root)
    if not 1 <= p <= len(slots):
        raise DomainError("leaf position %d out of range" % p)
    w, pos = slots[p - 1]
    parents = tr.parent_map(op.root)
    old_parent = {name: (pv.name, ppos) for name, (pv, ppos) in
                  parents.items()}

    def rebuild(v, out_dir):
        # out_dir is "parent" or an input position; the new inputs are
        # the remaining directions clockwise from just after it
        dirs = ["parent"] + list(range(v.arity()))
        k = dirs.index(out_dir)
        order = dirs[k + 1:] + dirs[:k]
        inputs = []
        for d in order:
            if d == "parent":
                if v.name in parents:
                    pv, ppos = parents[v.name]
                    inputs.append(rebuild(pv, ppos))
                else:
                    inputs.append(None)  # the old root stem
            else:
                child = v.inputs[d]
                inputs.append(None if child is None else
                              tr.copy_tree(child))
        return PNodeNamed(v.name, inputs)

    PNodeNamed = tr.PNode
    new_root = rebuild(w, pos)

    # reassign names so each unrooted edge keeps its name
    rename = {new_root.name: op.root.name}
    for v in tr.preorder_vertices(new_root):
        for child in v.node_children():
            a, b = v.name, child.name
            if old_parent.get(b, (None,))[0] == a:
                rename[child.name] = b
            else:
                rename[child.name] = a
    renamed = tr.copy_tree(new_root, rename)
    sigma = [rename[name] for name in op.sigma]
    return tr.OperadicTree(renamed, sigma)


class CyclicOp:
    """A cyclic operadic tree, stored as its canonical representative
    (marked end at the root, canonical vertex names)."""

    __slots__ = ("tree",)

    def __init__(self, tree, zero="root"):
        if zero != "root":
            tree = reroot_at_leaf(tree, int(zero))
        object.__setattr__(self, "tree", tree.relabel_canonical()[0])

    def __setattr__(self, name, value):
        raise AttributeError("CyclicOp is immutable")

    def key(self):
        return self.tree.key()

    def __eq__(self, other):
        return isinstance(other, CyclicOp) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "CyclicOp(%r)" % (self.tree.key(),)


def canonical_rep(tree, zero="root"):
    return CyclicOp(tree, zero)


def compose_cyclic(a, i, b):
    """Composition of cyclic trees: substitute the canonical
    representative of b at vertex i of a; the marking stays at the root
    of the first factor."""
    tree, _ = tr.substitute(a.tree, i, b.tree)
    return CyclicOp(tree)


class CinfOp:
    """A cyclic tree with a construct of its edge graph.  Stored on the
    canonical representative; the construct transports verbatim because
    re-rooting preserves edge names."""

    __slots__ = ("base",)

    def __init__(self, tree, construct, zero="root"):
        if zero != "root":
            tree = reroot_at_leaf(tree, int(zero))
        object.__setattr__(self, "base", BasisOp(tree, construct))

    @staticmethod
    def from_base(base):
        return CinfOp(base.tree, base.construct)

    def __setattr__(self, name, value):
        raise AttributeError("CinfOp is immutable")

    def tree(self):
        return self.base.tree

    def construct(self):
        return self.base.construct

    def degree(self):
        return self.base.degree()

    def key(self):
        return self.base.key()

    def __eq__(self, other):
        return isinstance(other, CinfOp) and self.base == other.base

    def __hash__(self):
        return hash(("cinf", self.base))

    def __repr__(self):
        return "CinfOp(%r)" % (self.base,)


def _wrap(element):
    return Element({CinfOp.from_base(op): c
                    for op, c in element.terms.items()})


def compose_cinf(a, i, b):
    """Signed composition: the sign machinery of the non-cyclic operad
    applied to the canonical representatives."""
    return _wrap(oinf.compose(a.base, i, b.base))


def differential_cinf(a):
    """Vertex-splitting differential on the canonical representative;
    one-vertex operations (empty construct) map to zero."""
    return _wrap(oinf.differential(a.base))


def symmetric_action_cinf(a, kappa):
    return CinfOp.from_base(oinf.symmetric_action(a.base, kappa))


# ---------------------------------------------------------------------------
# JSON forms.  tau is the full map j -> end, ends being "root" or the
# planar position of a leaf as a string.

def _ends(tree):
    n = tr.num_leaves(tree.root)
    return ["root"] + [str(j) for j in range(1, n + 1)]


def tau_to_json(tree, zero="root"):
    ends = _ends(tree)
    k = ends.index(str(zero) if zero != "root" else "root")
    return {str(j): ends[(k + j) % len(ends)] for j in range(len(ends))}


def tau_from_json(data, tree, path="$.tau"):
    if not isinstance(data, dict):
        raise UsageError("tau must be an object", path)
    ends = _ends(tree)
    if sorted(data) != sorted(str(j) for j in range(len(ends))):
        raise UsageError("tau must have keys 0..%d" % (len(ends) - 1), path)
    zero = data["0"]
    if zero not in ends:
        raise UsageError("unknown end %r" % zero, path + ".0")
    k = ends.index(zero)
    for j in range(len(ends)):
        if data[str(j)] != ends[(k + j) % len(ends)]:
            raise UsageError("tau is not the clockwise cyclic order "
                             "starting at %r" % zero, path + ".%d" % j)
    return zero


def op_to_json(a):
    data = oinf.op_to_json(a.base)
    data["tau"] = tau_to_json(a.base.tree)
    return data


def op_from_json(data, path="$"):
    if not isinstance(data, dict):
        raise UsageError("operation must be an object", path)
    extra = set(data) - {"tree", "construct", "tau"}
    if extra:
        raise UsageError("unknown key %r" % sorted(extra)[0], path)
    inner = oinf.op_from_json({k: v for k, v in data.items()
                               if k != "tau"}, path)
    zero = "root"
    if "tau" in data:
        zero = tau_from_json(data["tau"], inner.tree, path + ".tau")
    return CinfOp(inner.tree, inner.construct, zero)


def element_to_json(e):
    items = sorted(e.terms.items(), key=lambda kv: kv[0].key())
    return [{"coeff": c, **op_to_json(op)} for op, c in items]
