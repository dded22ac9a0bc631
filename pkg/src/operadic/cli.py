"""Command-line front end.

Every subcommand reads JSON (from --input FILE, --json TEXT, or stdin),
writes JSON to stdout, and exits 0 on success, 1 on a domain error, 2 on
a usage error (including malformed input, with a pointer to the
offending path).  --pretty switches to the human brace notation where
one exists.  The env var OPERADIC_MAX_EDGES (default 7) caps the size
of every enumeration-style request.
"""

import argparse
import itertools
import json
import os
import random
import sys

from .errors import DomainError, UsageError
from . import hypergraph as hg
from . import polytope as pt
from . import trees as tr
from . import oinf
from . import homology as ho
from . import winf
from . import cyclic as cy


def _max_edges_cap():
    raw = os.environ.get("OPERADIC_MAX_EDGES", "7")
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError("OPERADIC_MAX_EDGES must be an integer, got %r"
                         % raw)
    if cap < 0:
        raise UsageError("OPERADIC_MAX_EDGES must be nonnegative")
    return cap


def _check_cap(n, what):
    cap = _max_edges_cap()
    if n > cap:
        raise UsageError("%s %d exceeds the OPERADIC_MAX_EDGES cap %d"
                         % (what, n, cap))


def _read_payload(args):
    if args.json is not None and args.input is not None:
        raise UsageError("--json and --input are mutually exclusive")
    if args.json is not None:
        text = args.json
    elif args.input is not None:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError("cannot read %s: %s" % (args.input, exc))
    else:
        text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError("malformed JSON: %s" % exc, "$")


def _emit(data):
    print(json.dumps(data, indent=2))


def _parse_signature(text):
    """'n1,n2,...,nk;n' -> (arities, leaves); the ';n' part is optional."""
    parts = text.split(";")
    if len(parts) > 2 or not parts[0]:
        raise UsageError("signature must look like 'n1,n2,...,nk;n'")
    try:
        arities = [int(x) for x in parts[0].split(",")]
        leaves = int(parts[1]) if len(parts) == 2 else None
    except ValueError:
        raise UsageError("signature must look like 'n1,n2,...,nk;n'")
    if any(a < 0 for a in arities):
        raise UsageError("arities must be nonnegative")
    return arities, leaves


def _field(data, key, path="$"):
    if not isinstance(data, dict):
        raise UsageError("expected an object", path)
    if key not in data:
        raise UsageError("missing key %r" % key, path)
    return data[key]


def _index_field(data, path="$"):
    i = _field(data, "i", path)
    if not isinstance(i, int) or isinstance(i, bool):
        raise UsageError("'i' must be an integer", path + ".i")
    return i


def _pretty_op(op):
    return "1" if op.construct is None else pt.pretty(op.construct)


def _pretty_element(e, render):
    if e.is_zero():
        return "0"
    items = sorted(e.terms.items(), key=lambda kv: kv[0].key())
    return "\n".join("%+d %s" % (c, render(op)) for op, c in items)


def _pretty_circled(a):
    conn = sorted(sorted(e) for e in a.connecting)
    return "%s conn%s" % (_pretty_op(a.base),
                          [",".join(e) for e in conn])


def _pretty_hypergraph(h):
    data = hg.to_json(h)
    return "\n".join("{%s}" % ",".join(e) for e in data["hyperedges"])


# ---------------------------------------------------------------------------
# Subcommand bodies.  Each takes parsed args, returns an exit code.

def _cmd_saturate(args):
    h = hg.from_json(_read_payload(args))
    sat = hg.saturate(h)
    if args.pretty:
        print(_pretty_hypergraph(sat))
    else:
        _emit(hg.to_json(sat))
    return 0


def _cmd_faces(args):
    h = hg.from_json(_read_payload(args))
    _check_cap(len(h.vertices), "vertex count")
    by_rank = pt.enumerate_constructs(h)
    if args.pretty:
        for r in sorted(by_rank):
            for c in by_rank[r]:
                print("rank %d: %s" % (r, pt.pretty(c)))
    else:
        _emit({str(r): [pt.to_json(c) for c in by_rank[r]]
               for r in sorted(by_rank)})
    return 0


def _cmd_fvector(args):
    h = hg.from_json(_read_payload(args))
    _check_cap(len(h.vertices), "vertex count")
    _emit(pt.f_vector(h))
    return 0


def _cmd_lattice_dot(args):
    h = hg.from_json(_read_payload(args))
    _check_cap(len(h.vertices), "vertex count")
    print(pt.FaceLattice(h).to_dot())
    return 0


def _cmd_edge_graph(args):
    t = tr.from_json(_read_payload(args))
    if args.pretty:
        print(_pretty_hypergraph(tr.edge_graph(t)))
    else:
        _emit(hg.to_json(tr.edge_graph(t)))
    return 0


def _cmd_compose(args):
    data = _read_payload(args)
    op1 = oinf.op_from_json(_field(data, "op1"), "$.op1")
    op2 = oinf.op_from_json(_field(data, "op2"), "$.op2")
    i = _index_field(data)
    out = oinf.compose(op1, i, op2)
    if args.pretty:
        print(_pretty_element(out, _pretty_op))
    else:
        _emit(oinf.element_to_json(out))
    return 0


def _cmd_diff(args):
    op = oinf.op_from_json(_read_payload(args))
    out = oinf.differential(op)
    if args.pretty:
        print(_pretty_element(out, _pretty_op))
    else:
        _emit(oinf.element_to_json(out))
    return 0


def _cmd_classify_edge(args):
    op = oinf.op_from_json(_read_payload(args))
    kind = oinf.classify_edge(op)
    if args.pretty:
        print(kind)
    else:
        _emit({"class": kind})
    return 0


def _cmd_homology(args):
    if args.signature is not None:
        arities, leaves = _parse_signature(args.signature)
        _check_cap(len(arities) - 1, "edge count")
        trees = tr.enumerate_operadic_trees(arities, leaves)
        results = []
        total = []
        for t in trees:
            b = ho.betti(ho.complex_for_tree(t))
            results.append({"tree": tr.to_json(t), "betti": b})
            for d, x in enumerate(b):
                while len(total) <= d:
                    total.append(0)
                total[d] += x
        if args.pretty:
            for item in results:
                print("betti %s" % item["betti"])
            print("total %s" % total)
        else:
            _emit({"count": len(trees), "results": results,
                   "betti_total": total})
        return 0
    t = tr.from_json(_read_payload(args))
    _check_cap(t.size() - 1, "edge count")
    cx = ho.complex_for_tree(t)
    b = ho.betti(cx)
    if args.pretty:
        print("dims %s" % cx.dims())
        print("betti %s" % b)
    else:
        _emit({"dims": cx.dims(), "betti": b})
    return 0


def _cmd_w_faces(args):
    op = oinf.op_from_json(_read_payload(args))
    out = winf.enumerate_circled(op)
    if args.pretty:
        for a in out:
            print(_pretty_circled(a))
    else:
        _emit([winf.circled_to_json(a) for a in out])
    return 0


def _cmd_w_diff(args):
    a = winf.circled_from_json(_read_payload(args))
    out = winf.w_differential(a)
    if args.pretty:
        print(_pretty_element(out, _pretty_circled))
    else:
        _emit(winf.element_to_json(out))
    return 0


def _cmd_cyclic_compose(args):
    data = _read_payload(args)
    a = cy.op_from_json(_field(data, "op1"), "$.op1")
    b = cy.op_from_json(_field(data, "op2"), "$.op2")
    i = _index_field(data)
    out = cy.compose_cinf(a, i, b)
    if args.pretty:
        print(_pretty_element(out, lambda x: _pretty_op(x.base)))
    else:
        _emit(cy.element_to_json(out))
    return 0


def _cmd_cyclic_diff(args):
    a = cy.op_from_json(_read_payload(args))
    out = cy.differential_cinf(a)
    if args.pretty:
        print(_pretty_element(out, lambda x: _pretty_op(x.base)))
    else:
        _emit(cy.element_to_json(out))
    return 0


def _cmd_enumerate_trees(args):
    arities, leaves = _parse_signature(args.signature)
    _check_cap(len(arities) - 1, "edge count")
    trees = tr.enumerate_operadic_trees(arities, leaves)
    if args.pretty:
        for t in trees:
            print(repr(t.key()))
    else:
        _emit({"count": len(trees), "trees": [tr.to_json(t) for t in trees]})
    return 0


# ---------------------------------------------------------------------------
# The verification suites.

def _shapes_up_to(max_edges):
    out = []
    for k in range(1, max_edges + 2):
        out.extend(tr.enumerate_plane_shapes(k))
    return out


def _suite_euler(max_edges):
    cases = 0
    goldens = [
        (hg.Hypergraph("xyz", [frozenset("xyz")]), [3, 3, 1]),
        (hg.Hypergraph("xyz", [frozenset("xy"), frozenset("yz")]),
         [5, 5, 1]),
        (hg.Hypergraph("xyz", [frozenset("xy"), frozenset("yz"),
                               frozenset("xz"), frozenset("xyz")]),
         [6, 6, 1]),
    ]
    for h, expect in goldens:
        if pt.f_vector(h) != expect or not pt.euler_check(h):
            return cases, False
        cases += 1
    for shape in _shapes_up_to(min(max_edges, 4)):
        if shape.size() < 2:
            continue
        if not pt.euler_check(tr.edge_graph(shape)):
            return cases, False
        cases += 1
    return cases, True


def _suite_d2(max_edges):
    cases = 0
    for shape in _shapes_up_to(max_edges):
        for ops in oinf.enumerate_basis(shape).values():
            for op in ops:
                d = oinf.differential(op)
                if not oinf.differential_element(d).is_zero():
                    return cases, False
                cases += 1
    return cases, True


def _augment_leaves(shape, extra):
    """Insert up to `extra` leaf slots into a plane shape, every
    distinct placement, left-recursive indexing throughout.
    Differentials are insensitive to leaf slots, but composition
    signs count them, so the Leibniz suite needs these variants."""
    def placements(children, budget):
        """Interleavings of up to `budget` new slots with the rebuilt
        children, as (inputs, used) pairs."""
        if not children:
            for j in range(budget + 1):
                yield [None] * j, j
            return
        head, rest = children[0], children[1:]
        for built, used_h in rebuild(head, budget):
            for tail, used_t in placements(rest, budget - used_h):
                for j in range(budget - used_h - used_t + 1):
                    yield [None] * j + [built] + tail, used_h + used_t + j

    def rebuild(node, budget):
        kids = [ch for ch in node.inputs if ch is not None]
        for inputs, used in placements(kids, budget):
            yield tr.PNode(node.name, inputs), used

    out = []
    seen = set()
    kids = [ch for ch in shape.root.inputs if ch is not None]
    for inputs, _ in placements(kids, extra):
        t = tr.with_left_recursive_sigma(tr.PNode(shape.root.name, inputs))
        if t.key() not in seen:
            seen.add(t.key())
            out.append(t)
    return out


def _tree_pool(max_edges, extra_leaves=2):
    """Plane shapes up to the edge bound, plus leaf-slot augmentations
    of the small ones; one canonical indexing per tree."""
    seen = {}
    for shape in _shapes_up_to(max_edges):
        seen.setdefault(shape.key(), shape)
        if shape.size() - 1 <= 2:
            for t in _augment_leaves(shape, extra_leaves):
                seen.setdefault(t.key(), t)
    return list(seen.values())


def _suite_leibniz(max_edges):
    """d(a o_i b) = da o_i b + (-1)^|a| a o_i db over all composable
    pairs whose total edge count stays within the bound."""
    cases = 0
    pool = _tree_pool(max_edges)
    for s1 in pool:
        for s2 in pool:
            if (s1.size() - 1) + (s2.size() - 1) > max_edges:
                continue
            if tr.num_leaves(s2.root) > max(
                    v.arity() for v in tr.preorder_vertices(s1.root)):
                continue
            ops1 = [op for ops in oinf.enumerate_basis(s1).values()
                    for op in ops]
            ops2 = [op for ops in oinf.enumerate_basis(s2).values()
                    for op in ops]
            for a in ops1:
                for i in range(1, s1.size() + 1):
                    if a.tree.vertex(i).arity() != tr.num_leaves(s2.root):
                        continue
                    for b in ops2:
                        ab = oinf.compose(a, i, b)
                        lhs = oinf.differential_element(ab)
                        rhs = oinf.compose_elements(
                            oinf.differential(a), i,
                            oinf.Element({b: 1}))
                        rhs = rhs + oinf.compose_elements(
                            oinf.Element({a: 1}), i,
                            oinf.differential(b)).scale(
                                (-1) ** a.degree())
                        if not (lhs - rhs).is_zero():
                            return cases, False
                        cases += 1
    return cases, True


def _suite_w_d2(max_edges):
    cases = 0
    for shape in _shapes_up_to(max_edges):
        if shape.size() < 2:
            continue
        for ops in oinf.enumerate_basis(shape).values():
            for op in ops:
                if op.construct is None:
                    continue
                for a in winf.enumerate_circled(op):
                    d = winf.w_differential(a)
                    if not winf.w_differential_element(d).is_zero():
                        return cases, False
                    cases += 1
    return cases, True


def _suite_cyclic_d2(max_edges):
    cases = 0
    for shape in _shapes_up_to(max_edges):
        if shape.size() < 2:
            continue
        for ops in oinf.enumerate_basis(shape).values():
            for op in ops:
                a = cy.CinfOp(op.tree, op.construct)
                d = cy.differential_cinf(a)
                dd = oinf.Element()
                for term, c in d.terms.items():
                    dd = dd + cy.differential_cinf(term).scale(c)
                if not dd.is_zero():
                    return cases, False
                cases += 1
    return cases, True


def _suite_equivariance(max_edges, seed, samples=60):
    """d commutes with the symmetric-group action on random samples."""
    rng = random.Random(seed)
    pool = []
    for shape in _shapes_up_to(max_edges):
        if shape.size() < 2:
            continue
        for ops in oinf.enumerate_basis(shape).values():
            pool.extend(ops)
    if not pool:
        return 0, True
    cases = 0
    for _ in range(samples):
        op = rng.choice(pool)
        k = op.tree.size()
        kappa = list(range(1, k + 1))
        rng.shuffle(kappa)
        lhs = oinf.differential(oinf.symmetric_action(op, kappa))
        rhs = oinf.Element()
        for term, c in oinf.differential(op).terms.items():
            rhs = rhs + oinf.Element(
                {oinf.symmetric_action(term, kappa): c})
        if not (lhs - rhs).is_zero():
            return cases, False
        cases += 1
    return cases, True


def _cmd_verify(args):
    _check_cap(args.max_edges, "--max-edges")
    suites = [
        ("euler", lambda: _suite_euler(args.max_edges)),
        ("d_squared", lambda: _suite_d2(args.max_edges)),
        ("leibniz", lambda: _suite_leibniz(args.max_edges)),
        ("w_d_squared", lambda: _suite_w_d2(args.max_edges)),
        ("cyclic_d_squared", lambda: _suite_cyclic_d2(args.max_edges)),
        ("equivariance",
         lambda: _suite_equivariance(args.max_edges, args.seed)),
    ]
    report = []
    all_ok = True
    for name, run in suites:
        cases, ok = run()
        report.append({"suite": name, "cases": cases, "ok": ok})
        all_ok = all_ok and ok
    if args.pretty:
        for row in report:
            print("%-18s %6d cases  %s"
                  % (row["suite"], row["cases"],
                     "ok" if row["ok"] else "FAIL"))
    else:
        _emit({"max_edges": args.max_edges, "seed": args.seed,
               "suites": report, "ok": all_ok})
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# Argument wiring.

def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", metavar="FILE",
                        help="read the JSON payload from FILE")
    common.add_argument("--json", metavar="TEXT",
                        help="inline JSON payload")
    common.add_argument("--pretty", action="store_true",
                        help="human-readable output")

    p = argparse.ArgumentParser(
        prog="operadic",
        description="hypergraph polytopes and their minimal-model operads")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, payload=True):
        sp = sub.add_parser(name, parents=[common] if payload else [],
                            help=help_text)
        sp.set_defaults(fn=fn)
        return sp

    add("saturate", _cmd_saturate,
        "saturation of a hypergraph (all connected subsets)")
    add("faces", _cmd_faces, "all constructs of a hypergraph, by rank")
    add("fvector", _cmd_fvector, "face counts of a hypergraph polytope")
    add("lattice-dot", _cmd_lattice_dot, "face lattice as DOT")
    add("edge-graph", _cmd_edge_graph,
        "edge hypergraph of an operadic tree")
    add("compose", _cmd_compose,
        "signed composition {op1, i, op2} of basis operations")
    add("diff", _cmd_diff, "differential of a basis operation")
    add("classify-edge", _cmd_classify_edge,
        "vertical/parallel class of a degree-1 operation")
    sp = add("homology", _cmd_homology,
             "Betti numbers of one tree, or of a whole signature")
    sp.add_argument("--signature", metavar="SIG",
                    help="arity signature 'n1,n2,...,nk;n'; sums over "
                         "all operadic trees with it")
    add("w-faces", _cmd_w_faces,
        "all circled variants of a basis operation")
    add("w-diff", _cmd_w_diff, "differential of a circled operation")
    add("cyclic-compose", _cmd_cyclic_compose,
        "signed composition of cyclic operations")
    add("cyclic-diff", _cmd_cyclic_diff,
        "differential of a cyclic operation")
    sp = add("enumerate-trees", _cmd_enumerate_trees,
             "all operadic trees with a given arity signature",
             payload=False)
    sp.add_argument("--signature", metavar="SIG", required=True,
                    help="arity signature 'n1,n2,...,nk;n'")
    sp.add_argument("--pretty", action="store_true",
                    help="human-readable output")
    sp = add("verify", _cmd_verify,
             "run the identity suites (squared differentials, Leibniz, "
             "Euler, equivariance)", payload=False)
    sp.add_argument("--max-edges", type=int, default=4, metavar="N",
                    help="edge bound for the enumerations (default 4)")
    sp.add_argument("--seed", type=int, default=0, metavar="S",
                    help="seed for the randomized suites (default 0)")
    sp.add_argument("--pretty", action="store_true",
                    help="human-readable output")
    return p


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except DomainError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
