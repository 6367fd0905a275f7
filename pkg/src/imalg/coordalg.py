"""The presented noncommutative coordinate algebra and its rewriting engine.

The algebra is the free unital associative algebra over Q(sqrt 2) on one
invertible generator x per adjoined root of the form ±(e_i + e_{i+1})
(with its copy index), and an invertible pair y, z per other adjoined
long root, modulo the two-sided inverse relations and the four mixing
relations between co-adjoined roots.  Equality is decided by rewriting
words to normal form with a bounded Knuth-Bendix completion of the
presentation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .rootsys import AffinizationSpec, Root, is_omega_root
from .scalars import ONE, QSqrt2, ZERO


class CompletionError(RuntimeError):
    """Bounded completion failed to resolve a critical pair."""


class ContextMismatchError(ValueError):
    """Elements from different algebra contexts were combined."""


@dataclass(frozen=True)
class GenId:
    kind: str  # "x", "y" or "z"
    root: Root
    copy: int

    def __post_init__(self):
        if self.kind not in ("x", "y", "z"):
            raise ValueError(f"unknown generator kind {self.kind!r}")


@dataclass(frozen=True)
class Letter:
    gen: GenId
    exp: int  # +1 or -1

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.exp)

    def __str__(self) -> str:
        mu = ",".join(str(c) for c in self.gen.root.coeffs)
        suffix = "^-1" if self.exp < 0 else ""
        return f"{self.gen.kind}[{mu};{self.gen.copy}]{suffix}"


Word = tuple  # tuple of Letter; the empty tuple is the unit


def render_word(w: Word) -> str:
    if not w:
        return "1"
    return "·".join(str(letter) for letter in w)


# Kind rank for the termination order: X < Z < Y.
_KIND_RANK = {"x": 0, "z": 1, "y": 2}


class CoordinateAlgebra:
    """Generator table plus completed rewrite system for one spec."""

    def __init__(self, spec: AffinizationSpec, pair_budget: int = 10_000):
        self.spec = spec
        self.generators: list[GenId] = []
        for rt, copies in spec.adjoined_distinct():
            kinds = ("x",) if is_omega_root(rt) else ("y", "z")
            for kind in kinds:
                for copy in range(1, copies + 1):
                    self.generators.append(GenId(kind, rt, copy))
        self._letter_rank = {}
        for gen in self.generators:
            pos = spec.root_position(gen.root)
            for exp, erank in ((1, 0), (-1, 1)):
                self._letter_rank[Letter(gen, exp)] = (
                    _KIND_RANK[gen.kind], pos, gen.copy, erank,
                )
        self.rules: dict[tuple[Letter, Letter], Word] = {}
        self._complete(pair_budget)

    # -- orders -------------------------------------------------------

    def letter_key(self, letter: Letter):
        return self._letter_rank[letter]

    def word_key(self, w: Word):
        return (len(w), tuple(self.letter_key(l) for l in w))

    # -- rewriting ----------------------------------------------------

    def normal_form(self, w: Iterable[Letter]) -> Word:
        out: list[Letter] = []
        pending = list(w)
        pending.reverse()
        while pending:
            letter = pending.pop()
            if out:
                rhs = self.rules.get((out[-1], letter))
                if rhs is not None:
                    out.pop()
                    pending.extend(reversed(rhs))
                    continue
            out.append(letter)
        return tuple(out)

    # -- completion ---------------------------------------------------

    def _seed_rules(self) -> list[tuple[Word, Word]]:
        eqs: list[tuple[Word, Word]] = []
        for gen in self.generators:
            t, ti = Letter(gen, 1), Letter(gen, -1)
            eqs.append(((t, ti), ()))
            eqs.append(((ti, t), ()))
        spec = self.spec
        adjoined = {rt for rt, _ in spec.adjoined_distinct()}
        for theta in sorted(spec.theta(), key=lambda rt: spec.root_position(rt)):
            support = {i - 1: theta.coeffs[i - 1] for i in theta.support()}
            if set(support.values()) != {1, -1}:
                continue  # mixing relations attach to difference-form roots
            plus = Root(tuple(abs(c) for c in theta.coeffs))
            minus = -plus
            n_theta = spec.copies_of(theta)
            for i in range(1, n_theta + 1):
                y_i = Letter(GenId("y", theta, i), 1)
                z_i = Letter(GenId("z", theta, i), 1)
                if plus in adjoined:
                    for j in range(1, spec.copies_of(plus) + 1):
                        if is_omega_root(plus):
                            x_j = Letter(GenId("x", plus, j), 1)
                            eqs.append(((y_i, x_j), (x_j, z_i)))
                        else:
                            yp = Letter(GenId("y", plus, j), 1)
                            zp = Letter(GenId("z", plus, j), 1)
                            eqs.append(((y_i, zp), (yp, z_i)))
                if minus in adjoined:
                    for k in range(1, spec.copies_of(minus) + 1):
                        if is_omega_root(minus):
                            x_k = Letter(GenId("x", minus, k), 1)
                            eqs.append(((z_i, x_k), (x_k, y_i)))
                        else:
                            ym = Letter(GenId("y", minus, k), 1)
                            zm = Letter(GenId("z", minus, k), 1)
                            eqs.append(((z_i, ym), (zm, y_i)))
        return eqs

    def _orient(self, u: Word, v: Word) -> tuple[Word, Word]:
        if self.word_key(u) > self.word_key(v):
            return u, v
        return v, u

    def _add_rule(self, lhs: Word, rhs: Word, queue: list) -> bool:
        """Record lhs -> rhs; returns True if the rule set gained information."""
        if len(lhs) != 2:
            raise CompletionError(
                f"cannot orient into a 2-letter rule: {render_word(lhs)} = "
                f"{render_word(rhs)}"
            )
        if self.word_key(rhs) >= self.word_key(lhs):
            raise CompletionError(
                f"rule does not decrease the word order: "
                f"{render_word(lhs)} -> {render_word(rhs)}"
            )
        key = (lhs[0], lhs[1])
        existing = self.rules.get(key)
        if existing is not None:
            if existing == rhs:
                return False
            # Two right-hand sides for one left-hand side: keep the smaller
            # and process the two congruent words as a fresh pair.
            rev = self._rev
            smaller = min(existing, rhs, key=self.word_key)
            if smaller != existing:
                self.rules[key] = smaller
                self._rev += 1
            self._resolve(existing, rhs, queue)
            return self._rev != rev
        self.rules[key] = rhs
        self._rev += 1
        for other in list(self.rules):
            queue.extend(self._overlaps(key, other))
            if other != key:
                queue.extend(self._overlaps(other, key))
        return True

    def _overlaps(self, l1: tuple[Letter, Letter], l2: tuple[Letter, Letter]):
        """Critical pairs from the suffix of l1 overlapping the prefix of l2."""
        pairs = []
        if l1[1] == l2[0]:
            # word l1[0] l1[1] l2[1] reduces two ways
            r1 = self.rules[l1]
            r2 = self.rules[l2]
            pairs.append((r1 + (l2[1],), (l1[0],) + r2))
        return pairs

    def _resolve(self, u: Word, v: Word, queue: list) -> None:
        """Drain all 2-letter rule consequences of the equation u = v.

        The pair is accepted once it is joinable or yields no further
        rules: with left-hand sides restricted to length 2, some pairs
        (three-letter equations between distinct normal forms) have no
        decreasing resolution, and equality beyond the completed rules is
        not claimed.
        """
        while True:
            self._work += 1
            if self._work > self._pair_budget:
                raise CompletionError(
                    f"completion exceeded the pair budget ({self._pair_budget})"
                )
            nu, nv = self.normal_form(u), self.normal_form(v)
            if nu == nv:
                return
            if not self._derive(nu, nv, queue, depth=8):
                return

    def _derive(self, u: Word, v: Word, queue: list, depth: int) -> bool:
        """Derive at least one new rule from the equation u = v; True on success."""
        while u and v and u[0] == v[0]:
            u, v = u[1:], v[1:]
        while u and v and u[-1] == v[-1]:
            u, v = u[:-1], v[:-1]
        if u == v:
            return False
        big, small = self._orient(u, v)
        if len(big) < 2:
            raise CompletionError(
                f"generator collapses to a shorter word: {render_word(big)} = "
                f"{render_word(small)}"
            )
        if len(big) == 2:
            return self._add_rule(big, small, queue)
        if depth <= 0:
            return False
        # Every generator is invertible, so the equation may be shifted by
        # peeling a letter off one side onto the other.  A direction that
        # yields only a trivial equation carries no information; try both.
        for peeled, shifted in (
            (big[1:], (big[0].inverse(),) + small),
            (big[:-1], small + (big[-1].inverse(),)),
        ):
            try:
                if self._derive(
                    self.normal_form(peeled),
                    self.normal_form(shifted),
                    queue,
                    depth - 1,
                ):
                    return True
            except CompletionError:
                continue
        return False

    def _complete(self, pair_budget: int) -> None:
        self._pair_budget = pair_budget
        self._work = 0
        self._rev = 0
        queue: list[tuple[Word, Word]] = []
        for lhs, rhs in self._seed_rules():
            big, small = self._orient(lhs, rhs)
            self._add_rule(big, small, queue)
        while queue:
            self._work += 1
            if self._work > pair_budget:
                raise CompletionError(
                    f"completion exceeded the pair budget ({pair_budget})"
                )
            u, v = queue.pop()
            self._resolve(u, v, queue)

    # -- element constructors ----------------------------------------

    def zero(self) -> "NCElement":
        return NCElement(self, {})

    def one(self) -> "NCElement":
        return NCElement(self, {(): ONE})

    def scalar(self, s) -> "NCElement":
        s = QSqrt2.of(s)
        return NCElement(self, {(): s} if s else {})

    def generator(self, kind: str, rt: Root, copy: int = 1, exp: int = 1) -> "NCElement":
        gen = GenId(kind, rt, copy)
        letter = Letter(gen, exp)
        if letter not in self._letter_rank:
            raise ValueError(f"unknown generator {letter}")
        return self.element({(letter,): ONE})

    def element(self, terms: dict) -> "NCElement":
        normalized: dict[Word, QSqrt2] = {}
        for word, coeff in terms.items():
            coeff = QSqrt2.of(coeff)
            if not coeff:
                continue
            nf = self.normal_form(word)
            acc = normalized.get(nf, ZERO) + coeff
            if acc:
                normalized[nf] = acc
            else:
                normalized.pop(nf, None)
        return NCElement(self, normalized)

    def involution_letter(self, letter: Letter) -> Letter:
        kind = {"x": "x", "y": "z", "z": "y"}[letter.gen.kind]
        return Letter(GenId(kind, letter.gen.root, letter.gen.copy), letter.exp)


class NCElement:
    """A finite Q(sqrt 2)-linear combination of normal-form words."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: CoordinateAlgebra, terms: dict):
        self.ctx = ctx
        self.terms = terms

    def _check(self, other: "NCElement") -> None:
        if self.ctx is not other.ctx:
            raise ContextMismatchError("elements belong to different contexts")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "NCElement") -> "NCElement":
        self._check(other)
        terms = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = terms.get(word, ZERO) + coeff
            if acc:
                terms[word] = acc
            else:
                terms.pop(word, None)
        return NCElement(self.ctx, terms)

    def __neg__(self) -> "NCElement":
        return NCElement(self.ctx, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCElement") -> "NCElement":
        return self + (-other)

    def __mul__(self, other: "NCElement") -> "NCElement":
        self._check(other)
        terms: dict[Word, QSqrt2] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                nf = self.ctx.normal_form(w1 + w2)
                acc = terms.get(nf, ZERO) + c1 * c2
                if acc:
                    terms[nf] = acc
                else:
                    terms.pop(nf, None)
        return NCElement(self.ctx, terms)

    def scale(self, s) -> "NCElement":
        s = QSqrt2.of(s)
        if not s:
            return self.ctx.zero()
        return NCElement(self.ctx, {w: c * s for w, c in self.terms.items()})

    def involution(self) -> "NCElement":
        ctx = self.ctx
        terms: dict[Word, QSqrt2] = {}
        for word, coeff in self.terms.items():
            image = tuple(ctx.involution_letter(l) for l in reversed(word))
            nf = ctx.normal_form(image)
            acc = terms.get(nf, ZERO) + coeff
            if acc:
                terms[nf] = acc
            else:
                terms.pop(nf, None)
        return NCElement(ctx, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCElement):
            return NotImplemented
        self._check(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        words = sorted(self.terms, key=self.ctx.word_key)
        return " + ".join(f"({self.terms[w]})·{render_word(w)}" for w in words)

    def __repr__(self) -> str:
        return f"<NCElement {self}>"


def make_coordinate_algebra(
    spec: AffinizationSpec, pair_budget: int = 10_000
) -> CoordinateAlgebra:
    return CoordinateAlgebra(spec, pair_budget=pair_budget)


def is_equal(a: NCElement, b: NCElement) -> bool:
    return a == b


def involution(a: NCElement) -> NCElement:
    return a.involution()
