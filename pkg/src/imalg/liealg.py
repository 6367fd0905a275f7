"""The matrix Lie algebra so_{2r+1} over the coordinate algebra.

Elements are sparse (2r+1) x (2r+1) matrices with entries in the
coordinate algebra, subject to the membership condition
(M^eta)^t G + G M = 0 where G is the anti-diagonal of ones and eta is
applied entrywise.  The module provides the shorthand two-term
constructors, the commutator bracket, the degree decomposition by matrix
position, and the verification sweep for the fifteen bracket formulas.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .coordalg import CoordinateAlgebra, Letter, NCElement
from .rootsys import GradingDegree, root_of_position
from .scalars import QSqrt2


class MembershipError(ValueError):
    """A matrix violates the eta-transpose membership condition."""


class DimensionError(ValueError):
    """Mismatched matrix dimensions or indices out of range."""


def _mirror(i: int, r: int) -> int:
    return 2 * r + 2 - i


class SoElement:
    """A sparse member of so_{2r+1} over a coordinate algebra context."""

    __slots__ = ("r", "ctx", "entries")

    def __init__(self, r: int, ctx: CoordinateAlgebra, entries: dict,
                 check: bool = True):
        self.r = r
        self.ctx = ctx
        clean = {}
        n = 2 * r + 1
        for (i, j), val in entries.items():
            if not 1 <= i <= n or not 1 <= j <= n:
                raise DimensionError(f"position ({i},{j}) out of range 1..{n}")
            if not val.is_zero:
                clean[(i, j)] = val
        self.entries = clean
        if check and not membership_check(self):
            raise MembershipError("matrix violates the membership condition")

    @property
    def n(self) -> int:
        return 2 * self.r + 1

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def entry(self, i: int, j: int) -> NCElement:
        return self.entries.get((i, j), self.ctx.zero())

    def _compat(self, other: "SoElement") -> None:
        if self.r != other.r:
            raise DimensionError("rank mismatch between matrices")
        if self.ctx is not other.ctx:
            raise DimensionError("matrices belong to different contexts")

    def __add__(self, other: "SoElement") -> "SoElement":
        self._compat(other)
        entries = dict(self.entries)
        for pos, val in other.entries.items():
            acc = entries.get(pos)
            entries[pos] = val if acc is None else acc + val
        return SoElement(self.r, self.ctx, entries, check=False)

    def __neg__(self) -> "SoElement":
        return SoElement(
            self.r, self.ctx, {p: -v for p, v in self.entries.items()},
            check=False,
        )

    def __sub__(self, other: "SoElement") -> "SoElement":
        return self + (-other)

    def scale(self, s) -> "SoElement":
        s = QSqrt2.of(s)
        return SoElement(
            self.r, self.ctx, {p: v.scale(s) for p, v in self.entries.items()},
            check=False,
        )

    def matmul(self, other: "SoElement") -> "SoElement":
        self._compat(other)
        entries: dict = {}
        by_row: dict = {}
        for (k, j), val in other.entries.items():
            by_row.setdefault(k, []).append((j, val))
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                prod = a * b
                acc = entries.get((i, j))
                entries[(i, j)] = prod if acc is None else acc + prod
        return SoElement(self.r, self.ctx, entries, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SoElement):
            return NotImplemented
        self._compat(other)
        return self.entries == other.entries

    def __hash__(self):
        return hash(frozenset(self.entries))

    def render(self) -> str:
        triples = sorted(self.entries)
        if not triples:
            return "0"
        return "; ".join(f"({i},{j}): {self.entries[(i, j)]}" for i, j in triples)

    def __repr__(self) -> str:
        return f"<SoElement r={self.r} {self.render()}>"


def membership_check(m: SoElement) -> bool:
    """Exact test of (M^eta)^t G + G M = 0, entry by entry."""
    n = m.n
    positions = set(m.entries)
    # the constraint mentioning entry (p, q) is indexed by (q, n+1-p)
    # and by (n+1-p, q); visit both so no stray entry escapes the test
    positions |= {(j, n + 1 - i) for i, j in m.entries}
    positions |= {(n + 1 - i, j) for i, j in m.entries}
    for i, j in positions:
        lhs = m.entry(n + 1 - j, i).involution() + m.entry(n + 1 - i, j)
        if not lhs.is_zero:
            return False
    return True


def so_zero(r: int, ctx: CoordinateAlgebra) -> SoElement:
    return SoElement(r, ctx, {}, check=False)


def _accumulate(entries: dict, pos: tuple, val: NCElement) -> None:
    acc = entries.get(pos)
    entries[pos] = val if acc is None else acc + val


def _build(r, ctx, pairs) -> SoElement:
    entries: dict = {}
    for pos, val in pairs:
        _accumulate(entries, pos, val)
    return SoElement(r, ctx, entries)


def _check_row_index(k: int, r: int) -> None:
    if not 1 <= k <= r:
        raise DimensionError(f"index {k} out of range 1..{r}")


def e_vert(k: int, a: NCElement, r: int) -> SoElement:
    """E_{k,r+1}(a) + E_{r+1,2r+2-k}(-eta(a))."""
    _check_row_index(k, r)
    return _build(r, a.ctx, [
        ((k, r + 1), a),
        ((r + 1, _mirror(k, r)), -a.involution()),
    ])


def e_hort(k: int, a: NCElement, r: int) -> SoElement:
    """E_{r+1,k}(a) + E_{2r+2-k,r+1}(-eta(a))."""
    _check_row_index(k, r)
    return _build(r, a.ctx, [
        ((r + 1, k), a),
        ((_mirror(k, r), r + 1), -a.involution()),
    ])


def e_ul(p: int, q: int, a: NCElement, r: int) -> SoElement:
    """E_{p,q}(a) + E_{2r+2-q,2r+2-p}(-eta(a)) in the upper-left block."""
    _check_row_index(p, r)
    _check_row_index(q, r)
    return _build(r, a.ctx, [
        ((p, q), a),
        ((_mirror(q, r), _mirror(p, r)), -a.involution()),
    ])


def e_ur(p: int, q: int, a: NCElement, r: int) -> SoElement:
    """E_{p,2r+2-q}(a) + E_{q,2r+2-p}(-eta(a)) in the upper-right block."""
    _check_row_index(p, r)
    _check_row_index(q, r)
    return _build(r, a.ctx, [
        ((p, _mirror(q, r)), a),
        ((q, _mirror(p, r)), -a.involution()),
    ])


def e_bl(p: int, q: int, a: NCElement, r: int) -> SoElement:
    """E_{2r+2-p,q}(a) + E_{2r+2-q,p}(-eta(a)) in the lower-left block."""
    _check_row_index(p, r)
    _check_row_index(q, r)
    return _build(r, a.ctx, [
        ((_mirror(p, r), q), a),
        ((_mirror(q, r), p), -a.involution()),
    ])


def h_diag(p: int, s, ctx: CoordinateAlgebra, r: int) -> SoElement:
    """e_ul(p, p, s*1): the diagonal elements used for the h images."""
    return e_ul(p, p, ctx.scalar(s), r)


def e_mid(b: NCElement, r: int) -> SoElement:
    """Single entry at the middle position (r+1, r+1); b must be eta-skew."""
    return _build(r, b.ctx, [((r + 1, r + 1), b)])


def mat_bracket(a: SoElement, b: SoElement) -> SoElement:
    result = a.matmul(b) - b.matmul(a)
    if not membership_check(result):
        raise MembershipError("bracket left the algebra: closure violated")
    return result


@dataclass
class HomogeneousDecomposition:
    parts: dict  # GradingDegree -> SoElement

    @property
    def is_homogeneous(self) -> bool:
        return len(self.parts) <= 1

    @property
    def degree(self):
        """The degree of a homogeneous nonzero element, else None."""
        if len(self.parts) == 1:
            return next(iter(self.parts))
        return None


def decompose(m: SoElement) -> HomogeneousDecomposition:
    parts: dict = {}
    for (i, j), val in m.entries.items():
        deg = root_of_position(i, j, m.r)
        part = parts.setdefault(deg, {})
        part[(i, j)] = val
    return HomogeneousDecomposition({
        deg: SoElement(m.r, m.ctx, part, check=False)
        for deg, part in parts.items()
    })


def random_coordinate(ctx: CoordinateAlgebra, rng: random.Random,
                      max_len: int = 3) -> NCElement:
    """A random monomial of length <= max_len with a small nonzero scalar."""
    a = rng.randint(-3, 3)
    b = rng.randint(-2, 2)
    if a == 0 and b == 0:
        a = 1
    coeff = QSqrt2(Fraction(a), Fraction(b))
    letters = []
    if ctx.generators:
        for _ in range(rng.randint(0, max_len)):
            gen = rng.choice(ctx.generators)
            letters.append(Letter(gen, rng.choice((1, -1))))
    return ctx.element({tuple(letters): coeff})


def _lemma_table(r: int):
    """The fifteen bracket formulas as (name, index tuples, rhs builder).

    Each builder receives (indices, a, b, ctx) and returns the expected
    right-hand side of the bracket of the two constructor elements.
    """
    idx1 = [(k,) for k in range(1, r + 1)]
    idx2 = [(k, p) for k in range(1, r + 1) for p in range(1, r + 1)]
    idx3 = [(k, p, q) for k in range(1, r + 1)
            for p in range(1, r + 1) for q in range(1, r + 1)]
    idx4 = [(p, q, k, l) for p in range(1, r + 1) for q in range(1, r + 1)
            for k in range(1, r + 1) for l in range(1, r + 1)]

    def inv(a):
        return a.involution()

    def delta(i, j):
        return 1 if i == j else 0

    def lhs_pair(ctor1, ctor2):
        def build(ix, a, b, r):
            n1 = ctor1[1]
            args1 = ix[:n1]
            args2 = ix[n1:]
            return (ctor1[0](*args1, a, r), ctor2[0](*args2, b, r))
        return build

    V = (e_vert, 1)
    H = (e_hort, 1)
    UL = (e_ul, 2)
    UR = (e_ur, 2)
    BL = (e_bl, 2)

    def zero_rhs(ix, a, b, r):
        return so_zero(r, a.ctx)

    def rhs_vert_vert(ix, a, b, r):
        k, p = ix
        return e_ur(k, p, -(a * inv(b)), r)

    def rhs_vert_hort(ix, a, b, r):
        k, p = ix
        out = e_ul(k, p, a * b, r)
        if k == p:
            out = out + e_mid(-(b * a) + inv(a) * inv(b), r)
        return out

    def rhs_vert_ul(ix, a, b, r):
        k, p, q = ix
        if k == q:
            return e_vert(p, -(b * a), r)
        return so_zero(r, a.ctx)

    def rhs_vert_bl(ix, a, b, r):
        k, p, q = ix
        out = so_zero(r, a.ctx)
        if k == p:
            out = out + e_hort(q, -(inv(a) * b), r)
        if k == q:
            out = out + e_hort(p, inv(a) * inv(b), r)
        return out

    def rhs_hort_hort(ix, a, b, r):
        k, p = ix
        return e_bl(k, p, -(inv(a) * b), r)

    def rhs_hort_ul(ix, a, b, r):
        k, p, q = ix
        if k == p:
            return e_hort(q, a * b, r)
        return so_zero(r, a.ctx)

    def rhs_hort_ur(ix, a, b, r):
        k, p, q = ix
        out = so_zero(r, a.ctx)
        if k == p:
            out = out + e_vert(q, -(inv(b) * inv(a)), r)
        if k == q:
            out = out + e_vert(p, b * inv(a), r)
        return out

    def rhs_ul_ul(ix, a, b, r):
        p, q, k, l = ix
        out = so_zero(r, a.ctx)
        if q == k:
            out = out + e_ul(p, l, a * b, r)
        if l == p:
            out = out + e_ul(k, q, -(b * a), r)
        return out

    def rhs_ul_ur(ix, a, b, r):
        p, q, k, l = ix
        out = so_zero(r, a.ctx)
        if q == k:
            out = out + e_ur(p, l, a * b, r)
        if q == l:
            out = out + e_ur(p, k, -(a * inv(b)), r)
        return out

    def rhs_ul_bl(ix, a, b, r):
        p, q, k, l = ix
        out = so_zero(r, a.ctx)
        if p == k:
            out = out + e_bl(q, l, -(inv(a) * b), r)
        if p == l:
            out = out + e_bl(q, k, inv(a) * inv(b), r)
        return out

    def rhs_ur_bl(ix, a, b, r):
        p, q, k, l = ix
        out = so_zero(r, a.ctx)
        if p == k:
            out = out + e_ul(q, l, -(inv(a) * b), r)
        if p == l:
            out = out + e_ul(q, k, inv(a) * inv(b), r)
        if q == k:
            out = out + e_ul(p, l, a * b, r)
        if q == l:
            out = out + e_ul(p, k, -(a * inv(b)), r)
        return out

    return [
        ("vert,vert", idx2, lhs_pair(V, V), rhs_vert_vert),
        ("vert,hort", idx2, lhs_pair(V, H), rhs_vert_hort),
        ("vert,ul", idx3, lhs_pair(V, UL), rhs_vert_ul),
        ("vert,ur", idx3, lhs_pair(V, UR), zero_rhs),
        ("vert,bl", idx3, lhs_pair(V, BL), rhs_vert_bl),
        ("hort,hort", idx2, lhs_pair(H, H), rhs_hort_hort),
        ("hort,ul", idx3, lhs_pair(H, UL), rhs_hort_ul),
        ("hort,ur", idx3, lhs_pair(H, UR), rhs_hort_ur),
        ("hort,bl", idx3, lhs_pair(H, BL), zero_rhs),
        ("ul,ul", idx4, lhs_pair(UL, UL), rhs_ul_ul),
        ("ul,ur", idx4, lhs_pair(UL, UR), rhs_ul_ur),
        ("ul,bl", idx4, lhs_pair(UL, BL), rhs_ul_bl),
        ("ur,ur", idx4, lhs_pair(UR, UR), zero_rhs),
        ("ur,bl", idx4, lhs_pair(UR, BL), rhs_ur_bl),
        ("bl,bl", idx4, lhs_pair(BL, BL), zero_rhs),
    ]


def verify_bracket_lemmas(r: int, ctx: CoordinateAlgebra,
                          trials: int = 100, seed: int = 0) -> dict:
    """Check the fifteen bracket formulas on every valid index tuple.

    At least `trials` random coordinate pairs are spent per lemma,
    distributed over its index tuples (at least one pair per tuple).
    """
    rng = random.Random(seed)
    records = []
    passed = failed = 0
    for name, tuples, build_lhs, build_rhs in _lemma_table(r):
        per_tuple = max(1, -(-trials // len(tuples)))
        for ix in tuples:
            ok = True
            witness = None
            for _ in range(per_tuple):
                a = random_coordinate(ctx, rng)
                b = random_coordinate(ctx, rng)
                left, right = build_lhs(ix, a, b, r)
                got = mat_bracket(left, right)
                want = build_rhs(ix, a, b, r)
                if got != want:
                    ok = False
                    witness = {
                        "a": str(a), "b": str(b),
                        "got": got.render(), "want": want.render(),
                    }
                    break
            records.append({
                "lemma": name, "indices": list(ix), "pairs": per_tuple,
                "pass": ok,
                **({"witness": witness} if witness else {}),
            })
            if ok:
                passed += 1
            else:
                failed += 1
    return {
        "suite": "brackets", "rank": r, "trials": trials, "seed": seed,
        "passed": passed, "failed": failed, "records": records,
    }
