"""Chain complexes of basis operations over a fixed operadic tree.

The differential preserves the tree and drops degree by one, so each
operadic tree spans a finite complex.  Boundary matrices have integer
entries; ranks are computed by exact Gaussian elimination over the
rationals, and Betti numbers follow from rank-nullity.
"""

from fractions import Fraction

from .errors import DomainError
from . import oinf


def rank(matrix):
    """Rank over the rationals by Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not m or not m[0]:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


class Complex:
    """Basis operations of one operadic tree, graded by degree, with
    boundary matrices d[m] : degree m -> degree m-1."""

    def __init__(self, tree):
        self.tree = tree
        self.basis = oinf.enumerate_basis(tree)
        self.top = max(self.basis) if self.basis else 0
        self.matrices = {}
        for m in range(1, self.top + 1):
            src = self.basis.get(m, [])
            dst = self.basis.get(m - 1, [])
            pos = {op: i for i, op in enumerate(dst)}
            mat = [[0] * len(src) for _ in dst]
            for j, op in enumerate(src):
                for term, coeff in oinf.differential(op).terms.items():
                    if term not in pos:
                        raise DomainError("differential left the complex")
                    mat[pos[term]][j] = coeff
            self.matrices[m] = mat

    def dims(self):
        return [len(self.basis.get(m, [])) for m in range(self.top + 1)]

    def d_squared_is_zero(self):
        for m in range(2, self.top + 1):
            a, b = self.matrices[m - 1], self.matrices[m]
            if not b or not b[0]:
                continue
            for j in range(len(b[0])):
                col = [sum(a[i][k] * b[k][j] for k in range(len(b)))
                       for i in range(len(a))]
                if any(col):
                    return False
        return True


def complex_for_tree(tree):
    return Complex(tree)


def betti(cx):
    """Betti numbers b_0 .. b_top by rank-nullity."""
    ranks = {m: rank(cx.matrices[m]) for m in range(1, cx.top + 1)}
    ranks[0] = 0
    ranks[cx.top + 1] = 0
    out = []
    for m in range(cx.top + 1):
        n = len(cx.basis.get(m, []))
        out.append(n - ranks[m] - ranks[m + 1])
    return out


def image_d1_description_check(tree):
    """The differential of a degree-1 operation has exactly two unit
    terms, one for each orientation of its 2-element decoration, and
    their coefficients are opposite.  The image of d_1 is therefore
    spanned by differences of adjacent constructions, for vertical and
    horizontal pairs alike, which is what identifies the degree-zero
    homology classes without sign twists.  Which orientation carries
    the minus is not an invariant of the pair: it flips with the
    embedding of the pair into the surrounding construct."""
    cx = Complex(tree)
    for op in cx.basis.get(1, []):
        d = oinf.differential(op)
        if len(d.terms) != 2:
            return False
        pair = next(dec for dec in op.construct.decorations()
                    if len(dec) == 2)
        a, b = sorted(pair)
        by_root = {}
        for term, coeff in d.terms.items():
            if coeff not in (1, -1):
                return False
            # which of the two singletons sits closer to the construct
            # root distinguishes the two orientations
            by_root[_upper_of(term.construct, a, b)] = coeff
        if set(by_root) != {a, b}:
            return False
        if by_root[a] != -by_root[b]:
            return False
    return True


def _upper_of(construct, a, b):
    """Which of the singletons {a}, {b} is closer to the construct root."""
    order = []

    def walk(c, depth):
        if c.vertex == frozenset((a,)) or c.vertex == frozenset((b,)):
            order.append((depth, next(iter(c.vertex))))
        for ch in c.children:
            walk(ch, depth + 1)

    walk(construct, 0)
    order.sort()
    return order[0][1]
