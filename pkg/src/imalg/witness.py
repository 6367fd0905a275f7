"""Constructive generation witnesses for so_{2r+1} over the coordinate algebra.

Given a target element with a single monomial coordinate in one of the
five homogeneous shapes, this module produces a bracket expression over
the generator images whose exact evaluation equals the target.  The
construction works letter by letter through the monomial: unit elements
come from the rank-r images scaled by 1/sqrt(2) and index shifts, single
letters are extracted from the image carrying them, and concatenation
routes through off-diagonal upper-left elements so that no bracket picks
up a middle-entry correction term.  Every intermediate element is checked
by evaluation; a mismatch raises instead of returning a wrong witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .coordalg import GenId, Letter, Word, render_word
from .homsuite import GeneratorSymbol, ImageTable
from .liealg import (SoElement, e_bl, e_hort, e_ul, e_ur, e_vert, mat_bracket)
from .rootsys import Root, is_omega_root
from .scalars import ONE, QSqrt2, SQRT2


class WitnessError(ValueError):
    """The target references generators absent from the table's spec."""


class ConstructionError(RuntimeError):
    """An intermediate element did not evaluate to its intended value."""


@dataclass(frozen=True)
class Leaf:
    symbol: GeneratorSymbol

    def render(self) -> str:
        return str(self.symbol)


@dataclass(frozen=True)
class Scale:
    factor: QSqrt2
    child: "BracketExpr"

    def render(self) -> str:
        return f"{self.factor}·{self.child.render()}"


@dataclass(frozen=True)
class Bracket:
    left: "BracketExpr"
    right: "BracketExpr"

    def render(self) -> str:
        return f"[{self.left.render()}, {self.right.render()}]"


@dataclass(frozen=True)
class Sum:
    parts: tuple

    def render(self) -> str:
        return "(" + " + ".join(p.render() for p in self.parts) + ")"


BracketExpr = Union[Leaf, Scale, Bracket, Sum]


def evaluate(expr: BracketExpr, table: ImageTable) -> SoElement:
    if isinstance(expr, Leaf):
        try:
            return table.images[expr.symbol]
        except KeyError:
            raise WitnessError(f"unknown generator symbol {expr.symbol}")
    if isinstance(expr, Scale):
        return evaluate(expr.child, table).scale(expr.factor)
    if isinstance(expr, Bracket):
        return mat_bracket(evaluate(expr.left, table),
                           evaluate(expr.right, table))
    if isinstance(expr, Sum):
        out = None
        for part in expr.parts:
            val = evaluate(part, table)
            out = val if out is None else out + val
        if out is None:
            raise ValueError("empty sum")
        return out
    raise TypeError(f"not a bracket expression: {expr!r}")


def expr_size(expr: BracketExpr) -> int:
    if isinstance(expr, Leaf):
        return 1
    if isinstance(expr, Scale):
        return 1 + expr_size(expr.child)
    if isinstance(expr, Bracket):
        return 1 + expr_size(expr.left) + expr_size(expr.right)
    return 1 + sum(expr_size(p) for p in expr.parts)


def expr_depth(expr: BracketExpr) -> int:
    if isinstance(expr, Leaf):
        return 1
    if isinstance(expr, Scale):
        return 1 + expr_depth(expr.child)
    if isinstance(expr, Bracket):
        return 1 + max(expr_depth(expr.left), expr_depth(expr.right))
    return 1 + max(expr_depth(p) for p in expr.parts)


@dataclass(frozen=True)
class TargetSpec:
    shape: str                 # VERT, HORT, UL, UR or BL
    indices: tuple             # (i,) or (i, j)
    monomial: Word = ()
    scale: QSqrt2 = ONE

    def __post_init__(self):
        if self.shape not in ("VERT", "HORT", "UL", "UR", "BL"):
            raise ValueError(f"unknown target shape {self.shape!r}")
        want = 1 if self.shape in ("VERT", "HORT") else 2
        if len(self.indices) != want:
            raise ValueError(
                f"shape {self.shape} takes {want} indices, got {self.indices}"
            )
        if self.shape == "UL" and self.indices[0] == self.indices[1]:
            raise ValueError("UL targets must be off-diagonal")


def construct_target(target: TargetSpec, table: ImageTable) -> SoElement:
    ctx = table.ctx
    r = table.r
    coord = ctx.element({target.monomial: target.scale})
    if target.shape == "VERT":
        return e_vert(target.indices[0], coord, r)
    if target.shape == "HORT":
        return e_hort(target.indices[0], coord, r)
    if target.shape == "UL":
        return e_ul(*target.indices, coord, r)
    if target.shape == "UR":
        return e_ur(*target.indices, coord, r)
    return e_bl(*target.indices, coord, r)


class _Pair:
    """An expression together with its exact evaluation."""

    __slots__ = ("expr", "value")

    def __init__(self, expr: BracketExpr, value: SoElement):
        self.expr = expr
        self.value = value


class _Builder:
    def __init__(self, table: ImageTable):
        self.table = table
        self.ctx = table.ctx
        self.r = table.r
        self._vert_units: dict = {}
        self._hort_units: dict = {}

    # -- primitive combinators ---------------------------------------

    def leaf(self, sym: GeneratorSymbol) -> _Pair:
        return _Pair(Leaf(sym), self.table.images[sym])

    def br(self, a: _Pair, b: _Pair) -> _Pair:
        return _Pair(Bracket(a.expr, b.expr), mat_bracket(a.value, b.value))

    def sc(self, s, a: _Pair) -> _Pair:
        s = QSqrt2.of(s)
        return _Pair(Scale(s, a.expr), a.value.scale(s))

    def expect(self, pair: _Pair, want: SoElement) -> _Pair:
        if pair.value != want:
            raise ConstructionError(
                f"intermediate evaluated to {pair.value.render()}, "
                f"expected {want.render()}"
            )
        return pair

    def signed(self, pair: _Pair, want: SoElement) -> _Pair:
        """Return pair or its negation, whichever evaluates to want."""
        if pair.value == want:
            return pair
        flipped = self.sc(-1, pair)
        return self.expect(flipped, want)

    # -- unit elements ------------------------------------------------

    def vert_unit(self, i: int) -> _Pair:
        if i not in self._vert_units:
            r = self.r
            if i == r:
                pair = self.sc(SQRT2.inverse(),
                               self.leaf(GeneratorSymbol("E", index=r)))
            else:
                # [Evert_{i+1}(1), Eul_{i,i+1}(1)] = -Evert_i(1)
                pair = self.sc(-1, self.br(
                    self.vert_unit(i + 1),
                    self.leaf(GeneratorSymbol("E", index=i)),
                ))
            self._vert_units[i] = self.expect(
                pair, e_vert(i, self.ctx.one(), self.r))
        return self._vert_units[i]

    def hort_unit(self, i: int) -> _Pair:
        if i not in self._hort_units:
            r = self.r
            if i == r:
                pair = self.sc(SQRT2.inverse(),
                               self.leaf(GeneratorSymbol("F", index=r)))
            else:
                # [Ehort_{i+1}(1), Eul_{i+1,i}(1)] = Ehort_i(1)
                pair = self.br(
                    self.hort_unit(i + 1),
                    self.leaf(GeneratorSymbol("F", index=i)),
                )
            self._hort_units[i] = self.expect(
                pair, e_hort(i, self.ctx.one(), self.r))
        return self._hort_units[i]

    def ul_unit(self, i: int, j: int) -> _Pair:
        # off-diagonal only: no middle correction term arises
        pair = self.br(self.vert_unit(i), self.hort_unit(j))
        return self.expect(pair, e_ul(i, j, self.ctx.one(), self.r))

    def bl_unit(self, i: int, j: int) -> _Pair:
        pair = self.br(self.hort_unit(i), self.sc(-1, self.hort_unit(j)))
        return self.expect(pair, e_bl(i, j, self.ctx.one(), self.r))

    # -- conversions (no involution twist) ----------------------------

    def hort_to_vert(self, pair: _Pair, j: int, coord) -> tuple:
        """Ehort_j(a) to Evert_k(a) through an off-diagonal Eul waypoint."""
        k = 1 if j != 1 else 2
        ul = self.expect(self.br(self.vert_unit(k), pair),
                         e_ul(k, j, coord, self.r))
        out = self.sc(-1, self.br(self.vert_unit(j), ul))
        return self.expect(out, e_vert(k, coord, self.r)), k

    def vert_to_hort(self, pair: _Pair, i: int, coord) -> tuple:
        """Evert_i(a) to Ehort_q(a) through an off-diagonal Eul waypoint."""
        q = 1 if i != 1 else 2
        ul = self.expect(self.br(pair, self.hort_unit(q)),
                         e_ul(i, q, coord, self.r))
        out = self.br(self.hort_unit(i), ul)
        return self.expect(out, e_hort(q, coord, self.r)), q

    def vert_shift(self, pair: _Pair, i: int, j: int, coord) -> _Pair:
        """Move a vertical carrier from index i to index j one step at a time."""
        while i != j:
            if j < i:
                # [Evert_i(a), Eul_{i-1,i}(1)] = -Evert_{i-1}(a)
                pair = self.sc(-1, self.br(
                    pair, self.leaf(GeneratorSymbol("E", index=i - 1))))
                i -= 1
            else:
                # [Evert_i(a), Eul_{i+1,i}(1)] = -Evert_{i+1}(a)
                pair = self.sc(-1, self.br(
                    pair, self.leaf(GeneratorSymbol("F", index=i))))
                i += 1
        return self.expect(pair, e_vert(j, coord, self.r))

    # -- single letters -----------------------------------------------

    def _image_shape(self, letter: Letter) -> tuple:
        """(symbol, shape, i, j) of the image carrying this x/y letter."""
        gen = letter.gen
        rt = gen.root
        i, j = rt.support()
        ci, cj = rt.coeffs[i - 1], rt.coeffs[j - 1]
        role = "E" if letter.exp > 0 else "F"
        sym = GeneratorSymbol(role, root=rt, copy=gen.copy)
        if ci > 0 and cj < 0:
            p, q = i, j
        elif ci < 0 and cj > 0:
            p, q = j, i
        else:
            p, q = i, j
        if (ci > 0) != (cj > 0):
            shape = "UL"
        elif ci > 0:
            shape = "UR" if role == "E" else "BL"
        else:
            shape = "BL" if role == "E" else "UR"
        if role == "F":
            p, q = q, p
        return sym, shape, p, q

    def vert_letter(self, letter: Letter) -> tuple:
        """A checked (pair, index) with pair = Evert_index(letter)."""
        gen = letter.gen
        coord = self.ctx.element({(letter,): ONE})
        if gen.kind == "z":
            y_letter = Letter(GenId("y", gen.root, gen.copy), letter.exp)
            y_pair, k = self.vert_letter(y_letter)
            q = 1 if k != 1 else 2
            # [Evert_k(y), Ebl_{k,q}(1)] = Ehort_q(-eta(y)) = Ehort_q(-z)
            hort = self.sc(-1, self.br(y_pair, self.bl_unit(k, q)))
            self.expect(hort, e_hort(q, coord, self.r))
            return self.hort_to_vert(hort, q, coord)
        sym, shape, p, q = self._image_shape(letter)
        if sym not in self.table.images:
            raise WitnessError(f"letter {letter} has no generator image")
        img = self.leaf(sym)
        if shape == "UL":
            # [Evert_q(1), Eul_{p,q}(t)] = -Evert_p(t)
            pair = self.sc(-1, self.br(self.vert_unit(q), img))
            return self.expect(pair, e_vert(p, coord, self.r)), p
        if shape == "UR":
            # [Ehort_q(1), Eur_{p,q}(t)] = Evert_p(t)
            pair = self.br(self.hort_unit(q), img)
            return self.expect(pair, e_vert(p, coord, self.r)), p
        # BL: [Evert_p(1), Ebl_{p,q}(t)] = Ehort_q(-t), then convert
        hort = self.sc(-1, self.br(self.vert_unit(p), img))
        self.expect(hort, e_hort(q, coord, self.r))
        return self.hort_to_vert(hort, q, coord)

    # -- monomials ----------------------------------------------------

    def vert_monomial(self, word: Word) -> tuple:
        """A checked (pair, index) with pair = Evert_index(word)."""
        if not word:
            return self.vert_unit(1), 1
        pair, p = self.vert_letter(word[0])
        prefix = [word[0]]
        for letter in word[1:]:
            t_pair, k = self.vert_letter(letter)
            i = 1 if p != 1 else 2
            if k != i:
                t_coord = self.ctx.element({(letter,): ONE})
                t_pair = self.vert_shift(t_pair, k, i, t_coord)
            prefix_coord = self.ctx.element({tuple(prefix): ONE})
            # clean off-diagonal concatenation: no middle correction
            ul = self.expect(self.br(pair, self.hort_unit(i)),
                             e_ul(p, i, prefix_coord, self.r))
            prefix.append(letter)
            coord = self.ctx.element({tuple(prefix): ONE})
            pair = self.sc(-1, self.br(t_pair, ul))
            pair = self.expect(pair, e_vert(p, coord, self.r))
        return pair, p


def _hort_shift(b: _Builder, pair: _Pair, q: int, j: int, coord) -> _Pair:
    """Move a horizontal carrier from index q to j one step at a time."""
    while q != j:
        if j < q:
            # [Ehort_q(a), Eul_{q,q-1}(1)] = Ehort_{q-1}(a)
            pair = b.br(pair, b.leaf(GeneratorSymbol("F", index=q - 1)))
            q -= 1
        else:
            # [Ehort_q(a), Eul_{q,q+1}(1)] = Ehort_{q+1}(a)
            pair = b.br(pair, b.leaf(GeneratorSymbol("E", index=q)))
            q += 1
    return b.expect(pair, e_hort(j, coord, b.r))


def witness(target: TargetSpec, table: ImageTable) -> BracketExpr:
    for letter in target.monomial:
        if Letter(letter.gen, 1) not in table.ctx._letter_rank:
            raise WitnessError(f"letter {letter} is not in the spec's algebra")
    b = _Builder(table)
    r = table.r
    coord = table.ctx.element({target.monomial: ONE})
    pair, p = b.vert_monomial(target.monomial)
    shape = target.shape
    ix = target.indices
    if shape == "VERT":
        pair = b.vert_shift(pair, p, ix[0], coord)
    elif shape == "HORT":
        pair, q = b.vert_to_hort(pair, p, coord)
        pair = _hort_shift(b, pair, q, ix[0], coord)
    elif shape == "UL":
        i, j = ix
        pair = b.vert_shift(pair, p, i, coord)
        pair = b.expect(b.br(pair, b.hort_unit(j)), e_ul(i, j, coord, r))
    elif shape == "UR":
        i, j = ix
        if p != i:
            pair = b.vert_shift(pair, p, i, coord)
        # [Evert_i(-M), Evert_j(1)] = Eur_{i,j}(M)
        pair = b.expect(b.br(b.sc(-1, pair), b.vert_unit(j)),
                        e_ur(i, j, coord, r))
    else:  # BL
        i, j = ix
        pair, q = b.vert_to_hort(pair, p, coord)
        pair = _hort_shift(b, pair, q, j, coord)
        # [Ehort_i(1), Ehort_j(-M)] = Ebl_{i,j}(M)
        pair = b.expect(b.br(b.hort_unit(i), b.sc(-1, pair)),
                        e_bl(i, j, coord, r))
    if target.scale != ONE:
        pair = b.sc(target.scale, pair)
    want = construct_target(target, table)
    if pair.value != want:
        raise ConstructionError(
            f"witness evaluated to {pair.value.render()}, "
            f"expected {want.render()}"
        )
    return pair.expr


def verify_witness(target: TargetSpec, table: ImageTable) -> dict:
    want = construct_target(target, table)
    try:
        expr = witness(target, table)
    except (WitnessError, ConstructionError) as exc:
        return {
            "target": _render_target(target), "pass": False,
            "error": str(exc), "want": want.render(),
        }
    got = evaluate(expr, table)
    ok = got == want
    report = {
        "target": _render_target(target), "pass": ok,
        "expr": expr.render(), "size": expr_size(expr),
        "depth": expr_depth(expr),
    }
    if not ok:
        report["got"] = got.render()
        report["want"] = want.render()
    return report


def _render_target(target: TargetSpec) -> str:
    ix = ",".join(str(i) for i in target.indices)
    return (f"{target.shape}({ix}; ({target.scale})"
            f"·{render_word(target.monomial)})")
