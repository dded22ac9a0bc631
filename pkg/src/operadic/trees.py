"""Planar rooted trees, operadic trees, and tree-monomial combs.

A planar rooted tree is built from PNode objects whose inputs are either
None (a leaf slot) or another PNode.  Vertex names double as edge names:
the edge below a non-root vertex inherits that vertex's name, so the set
of edges is the set of non-root vertex names.

An operadic tree is a planar tree together with a bijective indexing of
its vertices (sigma).  Equality is equality of shape plus indexing;
vertex names are bookkeeping only.  The left-recursive indexing
enumerates vertices depth first: root first, then each child subtree in
planar order.

Tree monomials (combs) are binary trees over partial-composition
generators; omega evaluates them to operadic trees, omega_inverse
produces the preorder comb of an operadic tree, and normal_form runs the
leftmost-innermost rewriting that moves any comb onto its normal shape.
"""

import itertools

from .errors import DomainError, UsageError
from .hypergraph import Hypergraph


class PNode:
    """Planar tree vertex: a name and an ordered tuple of inputs, each
    either None (leaf slot) or a child PNode."""

    __slots__ = ("name", "inputs")

    def __init__(self, name, inputs=()):
        self.name = name
        self.inputs = tuple(inputs)

    def arity(self):
        return len(self.inputs)

    def node_children(self):
        return [x for x in self.inputs if x is not None]

    def __repr__(self):
        return "PNode(%r, %d inputs)" % (self.name, len(self.inputs))


def preorder_vertices(root):
    """Vertices in left-recursive order: root first, then each child
    subtree recursively, left to right."""
    order = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(reversed(v.node_children()))
    return order


def leaf_slots(root):
    """Leaf slots (vertex, input position) in planar order."""
    out = []

    def walk(v):
        for pos, inp in enumerate(v.inputs):
            if inp is None:
                out.append((v, pos))
            else:
                walk(inp)

    walk(root)
    return out


def num_leaves(root):
    return len(leaf_slots(root))


def parent_map(root):
    """name -> (parent PNode, input position); root absent."""
    out = {}
    for v in preorder_vertices(root):
        for pos, inp in enumerate(v.inputs):
            if inp is not None:
                out[inp.name] = (v, pos)
    return out


def copy_tree(root, rename=None):
    rename = rename or {}

    def go(v):
        return PNode(rename.get(v.name, v.name),
                     [None if x is None else go(x) for x in v.inputs])

    return go(root)


class OperadicTree:
    """Planar tree with a bijective vertex indexing sigma.

    sigma is stored as a tuple of vertex names; sigma[i-1] names the
    vertex with index i.
    """

    def __init__(self, root, sigma=None):
        self.root = root
        verts = preorder_vertices(root)
        names = [v.name for v in verts]
        if len(set(names)) != len(names):
            raise DomainError("duplicate vertex name")
        if sigma is None:
            sigma = tuple(names)
        else:
            sigma = tuple(sigma)
            if sorted(sigma) != sorted(names):
                raise DomainError("sigma is not a bijection onto the vertices")
        self.sigma = sigma
        self._by_name = {v.name: v for v in verts}
        self._index = {name: i + 1 for i, name in enumerate(sigma)}

    def size(self):
        return len(self.sigma)

    def vertex(self, i):
        """Vertex with index i (1-based)."""
        if not 1 <= i <= len(self.sigma):
            raise DomainError("vertex index %d out of range" % i)
        return self._by_name[self.sigma[i - 1]]

    def index(self, name):
        return self._index[name]

    def by_name(self, name):
        if name not in self._by_name:
            raise DomainError("no vertex named %r" % name)
        return self._by_name[name]

    def edge_names(self):
        """Non-root vertex names, in left-recursive order."""
        return [v.name for v in preorder_vertices(self.root)[1:]]

    def arities(self):
        """Input arities in index order."""
        return [self.vertex(i).arity() for i in range(1, self.size() + 1)]

    def signature(self):
        return (tuple(self.arities()), num_leaves(self.root))

    def key(self):
        def ser(v):
            return (self._index[v.name],
                    tuple("L" if x is None else ser(x) for x in v.inputs))

        return ser(self.root)

    def __eq__(self, other):
        return isinstance(other, OperadicTree) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "OperadicTree(key=%r)" % (self.key(),)

    def relabel_canonical(self):
        """Rename the root 'r' and the remaining vertices e1, e2, ... in
        left-recursive order.  Returns (tree, old name -> new name)."""
        verts = preorder_vertices(self.root)
        rename = {verts[0].name: "r"}
        for i, v in enumerate(verts[1:], start=1):
            rename[v.name] = "e%d" % i
        root = copy_tree(self.root, rename)
        return (OperadicTree(root, [rename[n] for n in self.sigma]), rename)


def left_recursive_index(t):
    """The left-recursive indexing of a planar tree (or of the underlying
    tree of an operadic tree): vertex names in depth-first planar order."""
    root = t.root if isinstance(t, OperadicTree) else t
    return tuple(v.name for v in preorder_vertices(root))


def with_left_recursive_sigma(root):
    return OperadicTree(root, left_recursive_index(root))


def graft(t1, i, t2):
    """Graft planar tree t2 into the i-th planar leaf slot of t1
    (1-based).  Purely planar: no indexing involved."""
    slots = leaf_slots(t1)
    if not 1 <= i <= len(slots):
        raise DomainError("leaf position %d out of range" % i)
    target_v, target_pos = slots[i - 1]

    def go(v):
        inputs = []
        for pos, inp in enumerate(v.inputs):
            if inp is None:
                inputs.append(t2 if (v is target_v and pos == target_pos)
                              else None)
            else:
                inputs.append(go(inp))
        return PNode(v.name, inputs)

    return go(t1)


def _avoid_collisions(root2, taken):
    rename = {}
    for v in preorder_vertices(root2):
        name = v.name
        while name in taken:
            name += "'"
        rename[v.name] = name
        taken.add(name)
    return rename


def substitute(op1, i, op2):
    """Substitute op2 for the vertex of index i in op1.

    The replaced vertex's inputs are spliced into op2's leaf slots in
    planar order, so the vertex arity must equal op2's leaf count.  The
    composite indexing reads op1's indices up to i-1, then op2's shifted
    block, then the rest of op1.  Returns (tree, rename) where rename
    maps op2 vertex names to their names in the composite (op2's root
    takes over the replaced vertex's name, preserving edge names).
    """
    v = op1.vertex(i)
    if num_leaves(op2.root) != v.arity():
        raise DomainError("arity mismatch: vertex has %d inputs, tree has "
                          "%d leaves" % (v.arity(), num_leaves(op2.root)))
    # The replaced vertex's own name is kept in the collision set: op2's
    # root inherits it, so no other op2 vertex may claim it.
    taken = {w.name for w in preorder_vertices(op1.root)}
    rename = _avoid_collisions(op2.root, taken)
    rename[op2.root.name] = v.name
    body = copy_tree(op2.root, rename)

    # Fill op2's leaf slots with the replaced vertex's inputs in order.
    inputs = list(v.inputs)
    it = iter(range(len(inputs)))

    def fill(w):
        new_inputs = []
        for inp in w.inputs:
            if inp is None:
                new_inputs.append(inputs[next(it)])
            else:
                new_inputs.append(fill(inp))
        return PNode(w.name, new_inputs)

    body = fill(body)

    if v is op1.root:
        root = body
    else:
        def go(w):
            new_inputs = []
            for inp in w.inputs:
                if inp is None:
                    new_inputs.append(None)
                elif inp is v:
                    new_inputs.append(body)
                else:
                    new_inputs.append(go(inp))
            return PNode(w.name, new_inputs)

        root = go(op1.root)

    l = op2.size()
    sigma = []
    for j in range(1, op1.size() + l):
        if j < i:
            sigma.append(op1.sigma[j - 1])
        elif j <= i + l - 1:
            sigma.append(rename[op2.sigma[j - i]])
        else:
            sigma.append(op1.sigma[j - l])
    return OperadicTree(root, sigma), rename


def collapse_edges(op, names):
    """Collapse the edges with the given names: each named vertex merges
    into its parent, its inputs spliced in place.  Collapses commute, so
    the set order is immaterial.  The result carries the left-recursive
    indexing."""
    names = set(names)
    root = op.root if isinstance(op, OperadicTree) else op
    if root.name in names:
        raise DomainError("the root has no edge below it")
    all_names = {v.name for v in preorder_vertices(root)}
    if not names <= all_names:
        raise DomainError("unknown edge name")

    def go(v):
        inputs = []
        for inp in v.inputs:
            if inp is None:
                inputs.append(None)
            elif inp.name in names:
                inputs.extend(go(inp).inputs)
            else:
                inputs.append(go(inp))
        return PNode(v.name, inputs)

    return with_left_recursive_sigma(go(root))


def collapse_edge(op, name):
    return collapse_edges(op, [name])


def subtree(op, names):
    """The subtree spanned by a set of edge names: its vertices are the
    endpoints of those edges, each keeping its full arity, with the cut
    edges turned into leaf slots.  The edge set must span a connected
    subgraph of the tree.  Returns the new root as a PNode; vertex names
    are preserved."""
    names = set(names)
    root = op.root if isinstance(op, OperadicTree) else op
    parents = parent_map(root)
    keep = set()
    for n in names:
        if n not in parents:
            raise DomainError("unknown edge name %r" % n)
        keep.add(n)
        keep.add(parents[n][0].name)
    if len(keep) != len(names) + 1:
        raise DomainError("edge set does not span a subtree")
    tops = [n for n in keep if n not in parents or parents[n][0].name not in keep]
    # A connected edge set has exactly one vertex closest to the root.
    if len(tops) != 1:
        raise DomainError("edge set does not span a subtree")
    by_name = {v.name: v for v in preorder_vertices(root)}

    def prune(v):
        return PNode(v.name,
                     [prune(x) if x is not None and x.name in names else None
                      for x in v.inputs])

    return prune(by_name[tops[0]])


def edge_graph(t):
    """The graph of internal edges: one vertex per edge of the tree, one
    2-element hyperedge for each pair of tree edges sharing a tree
    vertex.  A one-vertex tree yields the empty hypergraph."""
    root = t.root if isinstance(t, OperadicTree) else t
    names = [v.name for v in preorder_vertices(root)[1:]]
    pairs = []
    for v in preorder_vertices(root):
        incident = [x.name for x in v.node_children()]
        if v is not root:
            incident.append(v.name)
        pairs.extend(frozenset(p) for p in itertools.combinations(incident, 2))
    return Hypergraph(names, pairs)


def edge_relations(t):
    """Classify pairs of tree edges: 'vertical' pairs are those where one
    edge lies on the path from the other to the root, 'horizontal' pairs
    are the rest."""
    root = t.root if isinstance(t, OperadicTree) else t
    parents = parent_map(root)

    def ancestors(name):
        out = set()
        while name in parents:
            name = parents[name][0].name
            if name in parents or True:
                out.add(name)
        return out

    names = sorted(n for n in parents)
    vertical, horizontal = [], []
    for a, b in itertools.combinations(names, 2):
        if a in ancestors(b) or b in ancestors(a):
            vertical.append((a, b))
        else:
            horizontal.append((a, b))
    return {"vertical": vertical, "horizontal": horizontal}


def is_vertical(t, e1, e2):
    rel = edge_relations(t)
    return tuple(sorted((e1, e2))) in set(rel["vertical"])


def enumerate_operadic_trees(arities, leaves=None):
    """All operadic trees where the vertex of index i has arity
    arities[i-1].  The leaf count is determined by the signature; when
    given it is validated.  Vertices are named v1..vk by index."""
    k = len(arities)
    expected = sum(arities) - k + 1
    if leaves is not None and leaves != expected:
        raise DomainError("signature leaf count %d does not match %d"
                          % (leaves, expected))
    if expected < 0:
        return []
    out = []
    idx = list(range(1, k + 1))
    for root_i in idx:
        rest = [i for i in idx if i != root_i]
        # parent[i] and slot[i] for the non-root indices.
        for parents in itertools.product(idx, repeat=len(rest)):
            assign = dict(zip(rest, parents))
            # acyclicity: everything must reach the root
            ok = True
            for i in rest:
                seen = set()
                j = i
                while j != root_i:
                    if j in seen or j not in assign:
                        ok = False
                        break
                    seen.add(j)
                    j = assign[j]
                if not ok:
                    break
            if not ok:
                continue
            children = {i: [j for j in rest if assign[j] == i] for i in idx}
            if any(len(children[i]) > arities[i - 1] for i in idx):
                continue
            slot_pools = [itertools.combinations(range(arities[i - 1]),
                                                 len(children[i]))
                          for i in idx]
            for slot_choice in itertools.product(*slot_pools):
                slot_of = {}
                for i, slots in zip(idx, slot_choice):
                    for child, s in zip(children[i], slots):
                        slot_of[child] = s

                def build(i):
                    inputs = [None] * arities[i - 1]
                    for child in children[i]:
                        inputs[slot_of[child]] = build(child)
                    return PNode("v%d" % i, inputs)

                root = build(root_i)
                out.append(OperadicTree(root, ["v%d" % i for i in idx]))
    return out


def enumerate_plane_shapes(k):
    """Plane trees with k vertices, minimal arities (one input slot per
    child), as OperadicTree with the left-recursive indexing.  There are
    Catalan(k-1) of them."""
    def shapes(m):
        if m == 1:
            return [()]
        out = []
        for first in range(1, m):
            for head in shapes(first):
                for tail in shapes(m - first):
                    out.append(((first, head),) + tail)
        return out
        # a shape is a tuple of (size, shape) pairs for the child subtrees

    counter = itertools.count(1)

    def build(shape):
        name = "n%d" % next(counter)
        return PNode(name, [build(sub) for _, sub in shape])

    out = []
    for shape in shapes(k):
        counter = itertools.count(1)
        out.append(with_left_recursive_sigma(build(shape)))
    return out


def linear_tree(k, name_prefix="b"):
    """The linear operadic tree with k univalent vertices: a chain in
    which every vertex has exactly one input, indexed bottom to top (the
    left-recursive indexing)."""
    node = PNode("%s%d" % (name_prefix, k), [None])
    for j in range(k - 1, 0, -1):
        node = PNode("%s%d" % (name_prefix, j), [node])
    return with_left_recursive_sigma(node)


def is_linear(op):
    """Linear operadic trees: every vertex univalent (arity 1) and each
    index adjacent in the tree to its predecessor."""
    if any(a != 1 for a in op.arities()):
        return False
    parents = parent_map(op.root)
    for i in range(2, op.size() + 1):
        a, b = op.vertex(i).name, op.vertex(i - 1).name
        pa = parents.get(a, (None,))[0]
        pb = parents.get(b, (None,))[0]
        if not ((pa is not None and pa.name == b)
                or (pb is not None and pb.name == a)):
            return False
    return True


# ---------------------------------------------------------------------------
# Tree monomials (combs) over the partial-composition generators.

class Comb:
    """Binary tree over generators: a Leaf carries (label, colour), a
    Node carries the generator index op and two subtrees."""

    __slots__ = ("op", "left", "right", "label", "colour")

    def __init__(self, op=None, left=None, right=None,
                 label=None, colour=None):
        self.op = op
        self.left = left
        self.right = right
        self.label = label
        self.colour = colour
        if op is not None:
            if not 1 <= op <= left.colour:
                raise DomainError("generator index %d out of range 1..%d"
                                  % (op, left.colour))
            self.colour = left.colour + right.colour - 1

    @staticmethod
    def leaf(label, colour):
        return Comb(label=label, colour=colour)

    @staticmethod
    def node(op, left, right):
        return Comb(op=op, left=left, right=right)

    def is_leaf(self):
        return self.op is None

    def leaves(self):
        if self.is_leaf():
            return [self]
        return self.left.leaves() + self.right.leaves()

    def key(self):
        if self.is_leaf():
            return ("leaf", self.label, self.colour)
        return ("node", self.op, self.left.key(), self.right.key())

    def __eq__(self, other):
        return isinstance(other, Comb) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        if self.is_leaf():
            return "%s:%d" % (self.label, self.colour)
        return "(%r o_%d %r)" % (self.left, self.op, self.right)


def left_spine_ops(ct):
    """Generator indices read along the left spine, innermost first."""
    out = []

    def go(c):
        if c.is_leaf():
            return
        go(c.left)
        out.append(c.op)

    go(ct)
    return out


def compose_comb(ct1, i, ct2):
    """Free composition of combs: substitute ct2 for the leaf of ct1
    labelled i, renumbering labels so the result is labelled 1..k."""
    labels1 = [l.label for l in ct1.leaves()]
    if i not in labels1:
        raise DomainError("no leaf labelled %r" % i)
    l = len(ct2.leaves())

    def relabel1(c):
        if c.is_leaf():
            if c.label == i:
                return relabel2(ct2)
            lab = c.label if c.label < i else c.label + l - 1
            return Comb.leaf(lab, c.colour)
        return Comb.node(c.op, relabel1(c.left), relabel1(c.right))

    def relabel2(c):
        if c.is_leaf():
            return Comb.leaf(c.label + i - 1, c.colour)
        return Comb.node(c.op, relabel2(c.left), relabel2(c.right))

    target = None
    for leaf in ct1.leaves():
        if leaf.label == i:
            target = leaf
    if target.colour != ct2.colour:
        raise DomainError("colour mismatch at leaf %r" % i)
    return relabel1(ct1)


def omega(ct):
    """Evaluate a comb to an operadic tree.  Each leaf (label j, colour
    n) contributes an n-ary vertex; a node grafts the right value into
    the op-th planar leaf slot of the left value; the final indexing
    sends j to the vertex contributed by the leaf labelled j."""
    counter = itertools.count(1)

    def ev(c):
        if c.is_leaf():
            v = PNode("w%d" % next(counter), [None] * c.colour)
            return v, [(c.label, v.name)]
        tl, seql = ev(c.left)
        tr, seqr = ev(c.right)
        return graft(tl, c.op, tr), seql + seqr

    root, seq = ev(ct)
    labels = sorted(lab for lab, _ in seq)
    if labels != list(range(1, len(seq) + 1)):
        raise DomainError("leaf labels are not 1..k")
    sigma = [None] * len(seq)
    for lab, name in seq:
        sigma[lab - 1] = name
    op = OperadicTree(root, sigma)
    return op.relabel_canonical()[0]


def omega_inverse(op):
    """The preorder comb of an operadic tree: start from the root
    corolla and attach each next vertex in depth-first planar preorder
    at the planar position of its slot in the partial tree.  Evaluating
    the result recovers the operadic tree."""
    def preorder(v):
        out = [v]
        for c in v.node_children():
            out.extend(preorder(c))
        return out

    order = preorder(op.root)
    parents = parent_map(op.root)
    placed = {order[0].name}
    comb = Comb.leaf(op.index(order[0].name), order[0].arity())
    for v in order[1:]:
        # rebuild the partial tree on the placed vertices
        def partial(w):
            return PNode(w.name,
                         [partial(x) if x is not None and x.name in placed
                          else None for x in w.inputs])

        part = partial(op.root)
        slots = leaf_slots(part)
        pv, ppos = parents[v.name]
        pos = None
        for n, (w, p) in enumerate(slots, start=1):
            if w.name == pv.name and p == ppos:
                pos = n
        comb = Comb.node(pos, comb,
                         Comb.leaf(op.index(v.name), v.arity()))
        placed.add(v.name)
    return comb


def _rewrite_at(c):
    """Try the two rewrite rules at this node; None when neither fires."""
    if c.is_leaf():
        return None
    # associativity-shaped rule: right child is a node
    if not c.right.is_leaf():
        i, j = c.op, c.right.op
        u, v = c.right.left, c.right.right
        return Comb.node(i + j - 1, Comb.node(i, c.left, u), v)
    # commuting rule: left child is a node with larger index
    if not c.left.is_leaf() and c.op < c.left.op:
        i, j = c.op, c.left.op
        x, y, z = c.left.left, c.left.right, c.right
        k = z.colour
        return Comb.node(j + k - 1, Comb.node(i, x, z), y)
    return None


def _rewrite_once(c):
    """Leftmost-innermost: rewrite the first reducible node in postorder."""
    if c.is_leaf():
        return None
    new = _rewrite_once(c.left)
    if new is not None:
        return Comb.node(c.op, new, c.right)
    new = _rewrite_once(c.right)
    if new is not None:
        return Comb.node(c.op, c.left, new)
    return _rewrite_at(c)


def normal_form_trace(ct):
    """The full rewrite sequence, initial comb included."""
    trace = [ct]
    while True:
        nxt = _rewrite_once(trace[-1])
        if nxt is None:
            return trace
        trace.append(nxt)


def normal_form(ct):
    return normal_form_trace(ct)[-1]


# ---------------------------------------------------------------------------
# JSON forms.

def to_json(op):
    def node(v):
        return {"name": v.name,
                "inputs": ["leaf" if x is None else node(x)
                           for x in v.inputs]}

    data = node(op.root)
    data["sigma"] = {str(i + 1): name for i, name in enumerate(op.sigma)}
    return data


def _parse_node(data, path):
    if not isinstance(data, dict):
        raise UsageError("tree node must be an object", path)
    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise UsageError("'name' must be a nonempty string", path + ".name")
    inputs = data.get("inputs", [])
    if not isinstance(inputs, list):
        raise UsageError("'inputs' must be a list", path + ".inputs")
    parsed = []
    for i, x in enumerate(inputs):
        ipath = "%s.inputs[%d]" % (path, i)
        if x == "leaf":
            parsed.append(None)
        elif isinstance(x, dict):
            extra = set(x) - {"name", "inputs"}
            if extra:
                raise UsageError("unknown key %r" % sorted(extra)[0], ipath)
            parsed.append(_parse_node(x, ipath))
        else:
            raise UsageError("input must be \"leaf\" or a node", ipath)
    return PNode(name, parsed)


def from_json(data, path="$"):
    if not isinstance(data, dict):
        raise UsageError("tree must be an object", path)
    extra = set(data) - {"name", "inputs", "sigma"}
    if extra:
        raise UsageError("unknown key %r" % sorted(extra)[0], path)
    root = _parse_node({k: v for k, v in data.items() if k != "sigma"}, path)
    names = [v.name for v in preorder_vertices(root)]
    if len(set(names)) != len(names):
        raise UsageError("duplicate vertex name", path)
    sigma_data = data.get("sigma")
    if sigma_data is None:
        return with_left_recursive_sigma(root)
    if not isinstance(sigma_data, dict):
        raise UsageError("'sigma' must be an object", path + ".sigma")
    k = len(names)
    sigma = []
    for i in range(1, k + 1):
        v = sigma_data.get(str(i))
        if v is None:
            raise UsageError("missing index %d" % i, path + ".sigma")
        if v not in set(names):
            raise UsageError("unknown vertex %r" % v,
                             path + ".sigma.%d" % i)
        sigma.append(v)
    if len(sigma_data) != k:
        raise UsageError("sigma has wrong size", path + ".sigma")
    try:
        return OperadicTree(root, sigma)
    except DomainError as exc:
        raise UsageError(str(exc), path + ".sigma")
