"""Root-system data of types B_r / BC_r and affinized intersection matrices.

Roots are stored as integer coefficient vectors in the epsilon basis, so
the Cartan pairing is an exact integer computation.  All indices in the
public interface are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence


class RootError(ValueError):
    """Raised for vectors that are not valid B_r/BC_r roots."""


class RankError(ValueError):
    """Raised for ranks below the supported minimum (r >= 3)."""


class RootKind(Enum):
    LONG = "long"          # ±e_i ± e_j, i != j
    SHORT = "short"        # ±e_i
    EXTRALONG = "extralong"  # ±2e_i


@dataclass(frozen=True)
class Root:
    """A root of BC_r in epsilon coordinates."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        self.kind  # validate eagerly

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    @property
    def kind(self) -> RootKind:
        nonzero = [(i, c) for i, c in enumerate(self.coeffs) if c]
        if len(nonzero) == 2 and all(abs(c) == 1 for _, c in nonzero):
            return RootKind.LONG
        if len(nonzero) == 1:
            c = nonzero[0][1]
            if abs(c) == 1:
                return RootKind.SHORT
            if abs(c) == 2:
                return RootKind.EXTRALONG
        raise RootError(f"not a BC_r root: {list(self.coeffs)}")

    def __neg__(self) -> "Root":
        return Root(tuple(-c for c in self.coeffs))

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"

    def support(self) -> tuple[int, ...]:
        """1-based indices with nonzero coefficient."""
        return tuple(i + 1 for i, c in enumerate(self.coeffs) if c)


def root(coeffs: Sequence[int]) -> Root:
    return Root(tuple(coeffs))


def eps(i: int, r: int, coeff: int = 1) -> Root:
    """coeff * e_i as a rank-r root."""
    v = [0] * r
    v[i - 1] = coeff
    return Root(tuple(v))


def eps_pair(i: int, j: int, r: int, si: int = 1, sj: int = 1) -> Root:
    """si*e_i + sj*e_j as a rank-r root."""
    v = [0] * r
    v[i - 1] = si
    v[j - 1] = sj
    return Root(tuple(v))


def dot(a: Root, b: Root) -> int:
    if a.rank != b.rank:
        raise RootError("rank mismatch between roots")
    return sum(x * y for x, y in zip(a.coeffs, b.coeffs))


def cartan_pairing(a: Root, b: Root) -> int:
    """2*(a,b)/(a,a) with the epsilon-basis dot product."""
    num = 2 * dot(a, b)
    den = dot(a, a)
    if num % den:
        raise RootError(f"non-integral Cartan pairing for {a}, {b}")
    return num // den


def base_roots(r: int) -> list[Root]:
    """The standard base (e_1-e_2, ..., e_{r-1}-e_r, e_r) of B_r."""
    if r < 3:
        raise RankError(f"rank must be >= 3, got {r}")
    base = [eps_pair(i, i + 1, r, 1, -1) for i in range(1, r)]
    base.append(eps(r, r))
    return base


def is_omega_root(rt: Root) -> bool:
    """True for long roots of the form ±(e_i + e_{i+1})."""
    if rt.kind is not RootKind.LONG:
        return False
    i, j = rt.support()
    ci, cj = rt.coeffs[i - 1], rt.coeffs[j - 1]
    return j == i + 1 and ci == cj


@dataclass(frozen=True)
class AffinizationSpec:
    """Rank r plus the ordered multiset of adjoined long roots."""

    rank: int
    adjoined: tuple[tuple[Root, int], ...] = ()

    def __post_init__(self):
        if self.rank < 3:
            raise RankError(f"rank must be >= 3, got {self.rank}")
        object.__setattr__(self, "adjoined", tuple(self.adjoined))
        for rt, copies in self.adjoined:
            if rt.rank != self.rank:
                raise RootError(f"adjoined root {rt} has wrong rank")
            if rt.kind is not RootKind.LONG:
                raise RootError(
                    f"adjoined root {rt} is {rt.kind.value}; only long roots "
                    "are supported"
                )
            if copies < 1:
                raise ValueError("copies must be a positive integer")

    @property
    def d(self) -> int:
        return sum(copies for _, copies in self.adjoined)

    def omega(self) -> set[Root]:
        return {rt for rt, _ in self.adjoined if is_omega_root(rt)}

    def theta(self) -> set[Root]:
        return {rt for rt, _ in self.adjoined if not is_omega_root(rt)}

    def copies_of(self, rt: Root) -> int:
        return sum(c for root_, c in self.adjoined if root_ == rt)

    def expanded(self) -> list[tuple[Root, int]]:
        """Adjoined roots expanded copy by copy, in spec order.

        Returns (root, copy_index) with copy_index 1-based, counting copies
        of the same root across the whole list.
        """
        seen: dict[Root, int] = {}
        out = []
        for rt, copies in self.adjoined:
            for _ in range(copies):
                seen[rt] = seen.get(rt, 0) + 1
                out.append((rt, seen[rt]))
        return out

    def adjoined_distinct(self) -> list[tuple[Root, int]]:
        """Distinct adjoined roots in first-occurrence order with total copies."""
        order: list[Root] = []
        totals: dict[Root, int] = {}
        for rt, copies in self.adjoined:
            if rt not in totals:
                order.append(rt)
                totals[rt] = 0
            totals[rt] += copies
        return [(rt, totals[rt]) for rt in order]

    def root_position(self, rt: Root) -> int:
        """Position of the first occurrence of rt among the adjoined roots."""
        for pos, (root_, _) in enumerate(self.adjoined):
            if root_ == rt:
                return pos
        raise RootError(f"{rt} is not adjoined in this spec")


def classify_omega_theta(spec: AffinizationSpec) -> tuple[set[Root], set[Root]]:
    return spec.omega(), spec.theta()


@dataclass(frozen=True)
class GimMatrix:
    """A square integer matrix with the generalized-intersection sign axioms."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i - 1][j - 1]

    def rows(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def is_gim(m: Sequence[Sequence[int]]) -> bool:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
    for i in range(n):
        if m[i][i] != 2:
            return False
        for j in range(n):
            if i == j:
                continue
            if (m[i][j] < 0) != (m[j][i] < 0):
                return False
            if (m[i][j] > 0) != (m[j][i] > 0):
                return False
    return True


def build_affinized_matrix(spec: AffinizationSpec) -> GimMatrix:
    """The (r+d) x (r+d) pairing matrix over base + adjoined roots."""
    roots = base_roots(spec.rank) + [rt for rt, _ in spec.expanded()]
    entries = tuple(
        tuple(cartan_pairing(a, b) for b in roots) for a in roots
    )
    return GimMatrix(entries)


@dataclass(frozen=True)
class GradingDegree:
    """An element of the root lattice, used as a grading degree."""

    coeffs: tuple[int, ...]

    @staticmethod
    def zero(r: int) -> "GradingDegree":
        return GradingDegree((0,) * r)

    @staticmethod
    def of(rt: Root) -> "GradingDegree":
        return GradingDegree(rt.coeffs)

    def __add__(self, other: "GradingDegree") -> "GradingDegree":
        return GradingDegree(tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "GradingDegree":
        return GradingDegree(tuple(-c for c in self.coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_delta_or_zero(self) -> bool:
        """True iff the degree is 0 or lies in the BC_r root system."""
        if self.is_zero:
            return True
        try:
            Root(self.coeffs)
            return True
        except RootError:
            return False

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return "[" + ",".join(str(c) for c in self.coeffs) + "]"


def position_weight(i: int, r: int) -> GradingDegree:
    """The weight of position i in the 2r+1 coordinatized representation.

    The weight list is (e_1, ..., e_r, 0, -e_r, ..., -e_1).
    """
    n = 2 * r + 1
    if not 1 <= i <= n:
        raise IndexError(f"position {i} out of range 1..{n}")
    if i <= r:
        return GradingDegree.of(eps(i, r))
    if i == r + 1:
        return GradingDegree.zero(r)
    return GradingDegree.of(eps(2 * r + 2 - i, r, -1))


def root_of_position(i: int, j: int, r: int) -> GradingDegree:
    """Degree of matrix position (i, j): weight(i) - weight(j)."""
    return position_weight(i, r) + (-position_weight(j, r))
