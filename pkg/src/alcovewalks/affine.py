"""Affine roots, the affine Weyl group, words, and alcove geometry.

The group is the semidirect product of coroot-lattice translations with
the finite Weyl group; elements are stored as (translation, finite part)
pairs and multiply by t_lam u . t_mu v = t_{lam + u mu} (uv).

Only real affine roots (finite root plus an integer multiple of delta)
exist here; the two positivity sets are

    iwahori set:  positive finite part with k >= 0, or negative with k > 0
    uminus set:   negative finite part, any k
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cartan import (
    CartanDatum,
    Coweight,
    FiniteRoot,
    FiniteWeylElement,
    simple_root,
    zero_coweight,
)

Word = tuple[int, ...]


class WordError(ValueError):
    """A word uses letters outside 0..n or violates a reducedness guard."""


@dataclass(frozen=True)
class AffineRoot:
    """A real affine root: finite root plus k copies of delta."""

    finite: FiniteRoot
    k: int

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(-self.finite, -self.k)


def is_iwahori_positive(beta: AffineRoot) -> bool:
    """Membership in the set indexing root subgroups of the Iwahori subgroup."""
    if beta.finite.is_positive():
        return beta.k >= 0
    return beta.k > 0


def is_uminus_positive(beta: AffineRoot) -> bool:
    """Membership in the set indexing root subgroups of U minus."""
    return beta.finite.is_negative()


@dataclass(frozen=True)
class AffineWeylElement:
    """Pair (translation coweight, finite Weyl part)."""

    translation: Coweight
    finite: FiniteWeylElement

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        return AffineWeylElement(
            self.translation + self.finite.act_coweight(other.translation),
            self.finite * other.finite,
        )

    def inverse(self) -> "AffineWeylElement":
        winv = self.finite.inverse()
        return AffineWeylElement(-winv.act_coweight(self.translation), winv)

    def is_identity(self) -> bool:
        return self.translation.is_zero() and self.finite.is_identity()

    def act(self, beta: AffineRoot) -> AffineRoot:
        """t_lam w sends mu + k delta to w mu + (k - <lam, w mu>) delta."""
        mu = self.finite.act_root(beta.finite)
        datum = self.finite.datum
        return AffineRoot(mu, beta.k - datum.pairing(self.translation, mu))

    def act_point(self, x: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        """Level-one action on coweight-space points: linear part then translation."""
        n = len(x)
        m = self.finite.coweight_action
        wx = tuple(sum(m[r][c] * x[c] for c in range(n)) for r in range(n))
        return tuple(a + t for a, t in zip(wx, self.translation.coords))


class AffineWeylGroup:
    """Context object for one irreducible finite-type datum.

    Provides the simple affine reflections s_0..s_n, word/length
    machinery driven by the iwahori-positivity descent test, and exact
    alcove geometry for rank <= 2.
    """

    def __init__(self, datum: CartanDatum):
        if not datum.is_irreducible():
            raise ValueError("affine Weyl group needs an irreducible datum")
        self.datum = datum
        self.rank = datum.size
        self.highest_root = datum.highest_root()
        self.highest_coroot = datum.coroot(self.highest_root)
        self._simple_roots = (AffineRoot(-self.highest_root, 1),) + tuple(
            AffineRoot(simple_root(self.rank, i), 0) for i in range(1, self.rank + 1)
        )
        s_phi = self._reflection_for(self.highest_root)
        self._simple_reflections = (
            AffineWeylElement(self.highest_coroot, s_phi),
        ) + tuple(
            AffineWeylElement(zero_coweight(self.rank), datum.simple_reflection(i))
            for i in range(1, self.rank + 1)
        )

    def _reflection_for(self, alpha: FiniteRoot) -> FiniteWeylElement:
        """The finite reflection s_alpha, built from a word for alpha = w alpha_i."""
        datum = self.datum
        # search the Weyl orbit of the simple roots for alpha
        frontier = {simple_root(self.rank, i): (datum.identity_weyl(), i) for i in range(1, self.rank + 1)}
        seen = {}
        while frontier:
            nxt = {}
            for root, (w, i) in frontier.items():
                if root in seen:
                    continue
                seen[root] = (w, i)
                if root == alpha:
                    return w * datum.simple_reflection(i) * w.inverse()
                for j in range(1, self.rank + 1):
                    nxt[datum.reflect_root(j, root)] = (datum.simple_reflection(j) * w, i)
            frontier = nxt
        raise ValueError(f"{alpha} is not a root")

    # -- generators ------------------------------------------------------

    def identity(self) -> AffineWeylElement:
        return AffineWeylElement(zero_coweight(self.rank), self.datum.identity_weyl())

    def simple_affine_root(self, i: int) -> AffineRoot:
        self._check_letter(i)
        return self._simple_roots[i]

    def simple_reflection(self, i: int) -> AffineWeylElement:
        self._check_letter(i)
        return self._simple_reflections[i]

    def _check_letter(self, i: int) -> None:
        if not 0 <= i <= self.rank:
            raise WordError(f"letter {i} out of range 0..{self.rank}")

    # -- words and length --------------------------------------------------

    def from_word(self, word: Sequence[int]) -> AffineWeylElement:
        g = self.identity()
        for i in word:
            g = g * self.simple_reflection(i)
        return g

    def length(self, g: AffineWeylElement) -> int:
        return len(self.reduced_word(g))

    def reduced_word(self, g: AffineWeylElement) -> Word:
        """Lexicographically smallest reduced word, by greedy left descent.

        The descent test is: i is a left descent iff g^{-1} alpha_i fails
        iwahori positivity.
        """
        word: list[int] = []
        ginv = g.inverse()
        while not g.is_identity():
            for i in range(self.rank + 1):
                if not is_iwahori_positive(ginv.act(self.simple_affine_root(i))):
                    break
            else:  # pragma: no cover - impossible for genuine group elements
                raise RuntimeError("no descent found for a non-identity element")
            word.append(i)
            s = self.simple_reflection(i)
            g = s * g
            ginv = ginv * s
        return tuple(word)

    def is_reduced(self, word: Sequence[int]) -> bool:
        return len(word) == self.length(self.from_word(word))

    def right_descents(self, g: AffineWeylElement) -> tuple[int, ...]:
        return tuple(
            i
            for i in range(self.rank + 1)
            if not is_iwahori_positive(g.act(self.simple_affine_root(i)))
        )

    def all_reduced_words(self, g: AffineWeylElement, cap: int = 12) -> tuple[Word, ...]:
        """Every reduced word for g, guarded by a length cap."""
        if self.length(g) > cap:
            raise WordError(f"length exceeds cap {cap}")
        memo: dict[AffineWeylElement, tuple[Word, ...]] = {}

        def words(h: AffineWeylElement) -> tuple[Word, ...]:
            if h.is_identity():
                return ((),)
            if h in memo:
                return memo[h]
            out = []
            for i in self.right_descents(h):
                for w in words(h * self.simple_reflection(i)):
                    out.append(w + (i,))
            memo[h] = tuple(sorted(out))
            return memo[h]

        return words(g)

    def inversion_sequence(self, word: Sequence[int]) -> tuple[AffineRoot, ...]:
        """beta_k = s_{i_1} ... s_{i_{k-1}} alpha_{i_k}."""
        out = []
        prefix = self.identity()
        for i in word:
            out.append(prefix.act(self.simple_affine_root(i)))
            prefix = prefix * self.simple_reflection(i)
        return tuple(out)

    def ball(self, max_length: int) -> dict[AffineWeylElement, int]:
        """All elements of length <= max_length, mapped to their lengths."""
        lengths = {self.identity(): 0}
        frontier = [self.identity()]
        for ell in range(1, max_length + 1):
            nxt = []
            for g in frontier:
                for i in range(self.rank + 1):
                    h = g * self.simple_reflection(i)
                    if h not in lengths:
                        lengths[h] = ell
                        nxt.append(h)
            frontier = nxt
        return lengths

    def canonical_key(self, g: AffineWeylElement) -> tuple[int, Word]:
        word = self.reduced_word(g)
        return (len(word), word)

    # -- alcove geometry (rank <= 2) ----------------------------------------

    def fundamental_alcove_vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """Vertices of the closed fundamental alcove, in coroot coordinates."""
        n = self.rank
        if n > 2:
            raise ValueError("alcove geometry is implemented for rank <= 2 only")
        if n == 1:
            # 0 < <x, alpha_1> < 1
            a11 = self.datum.a(1, 1)
            return ((Fraction(0),), (Fraction(1, a11),))
        rows = [
            tuple(self.datum.a(i, j) for j in (1, 2)) for i in (1, 2)
        ]
        phi = self.highest_root
        phi_row = tuple(
            sum(phi.coords[i] * self.datum.a(i + 1, j) for i in range(2)) for j in (1, 2)
        )
        origin = (Fraction(0), Fraction(0))
        v1 = _solve2(rows[0], Fraction(0), phi_row, Fraction(1))
        v2 = _solve2(rows[1], Fraction(0), phi_row, Fraction(1))
        return (origin, v1, v2)

    def alcove_position(
        self, g: AffineWeylElement
    ) -> tuple[tuple[Fraction, ...], tuple[tuple[Fraction, ...], ...]]:
        """Barycenter and vertices of the alcove g A_0, in coroot coordinates."""
        verts = tuple(g.act_point(v) for v in self.fundamental_alcove_vertices())
        m = len(verts)
        bary = tuple(sum(v[c] for v in verts) / m for c in range(self.rank))
        return bary, verts

    def root_functional(self, alpha: FiniteRoot) -> tuple[int, ...]:
        """Coefficients of x -> alpha(x) on coroot coordinates."""
        return tuple(
            sum(alpha.coords[i] * self.datum.a(i + 1, j + 1) for i in range(self.rank))
            for j in range(self.rank)
        )


def _solve2(
    row_a: tuple[int, int], rhs_a: Fraction, row_b: tuple[int, int], rhs_b: Fraction
) -> tuple[Fraction, Fraction]:
    det = Fraction(row_a[0] * row_b[1] - row_a[1] * row_b[0])
    if det == 0:
        raise ValueError("degenerate wall intersection")
    x = (rhs_a * row_b[1] - row_a[1] * rhs_b) / det
    y = (row_a[0] * rhs_b - rhs_a * row_b[0]) / det
    return (x, y)


# ---------------------------------------------------------------------------
# JSON-facing serialization helpers


def element_to_json(group: AffineWeylGroup, g: AffineWeylElement) -> dict:
    return {
        "translation": list(g.translation.coords),
        "finite_word": list(g.finite.canonical_word()),
    }


def element_from_json(group: AffineWeylGroup, data: dict) -> AffineWeylElement:
    translation = Coweight(tuple(int(c) for c in data["translation"]))
    if len(translation.coords) != group.rank:
        raise WordError("translation has wrong rank")
    word = tuple(int(i) for i in data["finite_word"])
    if any(not 1 <= i <= group.rank for i in word):
        raise WordError(f"finite word letters must lie in 1..{group.rank}")
    return AffineWeylElement(translation, group.datum.weyl_from_word(word))


def affine_root_to_json(beta: AffineRoot) -> list:
    return [list(beta.finite.coords), beta.k]


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise WordError(f"cannot parse word {text!r}: letters must be integers") from exc
