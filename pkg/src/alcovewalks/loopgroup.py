"""Exact matrix realization of SL_n over rational functions in t.

Only type A data get a matrix layer: the finite root e_a - e_b maps to
the matrix position (a, b), the affine generator attached to
alpha + j delta is x_alpha(c t^j), and translations are cocharacters
evaluated at t^{-1}.

The folding executor consumes a word letter by letter, keeping the exact
identity

    (product of consumed generators) = u . v_rep . b

with u lower unipotent, v_rep monomial, and b in the Iwahori subgroup.
Structure-constant signs are never tabulated; every sign emerges from an
actual matrix product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .affine import (
    AffineRoot,
    AffineWeylElement,
    AffineWeylGroup,
    is_uminus_positive,
)
from .cartan import CartanDatum, Coweight, FiniteRoot
from .folding import StepKind
from .ratfunc import Field, FpElement, Polynomial, PrimeField, RationalFunction

# When True, determinant and membership invariants are re-checked after
# every executor step.  Tests switch it on; the brute-force oracle leaves
# it off for speed.
DEBUG_CHECKS = False


class NormalizationError(RuntimeError):
    """The Iwahori coset normalization found no (or no unique) solution."""


@dataclass(frozen=True)
class GroupMatrix:
    """Square matrix of rational functions."""

    entries: tuple[tuple[RationalFunction, ...], ...]

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def field(self) -> Field:
        return self.entries[0][0].field

    def __matmul__(self, other: "GroupMatrix") -> "GroupMatrix":
        n = self.n
        rows = []
        for r in range(n):
            row = []
            for c in range(n):
                acc = self.entries[r][0] * other.entries[0][c]
                for k in range(1, n):
                    acc = acc + self.entries[r][k] * other.entries[k][c]
                row.append(acc)
            rows.append(tuple(row))
        return GroupMatrix(tuple(rows))

    def determinant(self) -> RationalFunction:
        n = self.n
        m = [list(row) for row in self.entries]
        det = RationalFunction.of(self.field, 1)
        for col in range(n):
            piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
            if piv is None:
                return RationalFunction.of(self.field, 0)
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = -det
            det = det * m[col][col]
            inv = m[col][col].inverse()
            for r in range(col + 1, n):
                if m[r][col].is_zero():
                    continue
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] = m[r][c] - f * m[col][c]
        return det

    def inverse(self) -> "GroupMatrix":
        n = self.n
        one = RationalFunction.of(self.field, 1)
        zero = RationalFunction.of(self.field, 0)
        m = [
            list(row) + [one if r == c else zero for c in range(n)]
            for r, row in enumerate(self.entries)
        ]
        for col in range(n):
            piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            m[col], m[piv] = m[piv], m[col]
            inv = m[col][col].inverse()
            m[col] = [x * inv for x in m[col]]
            for r in range(n):
                if r != col and not m[r][col].is_zero():
                    f = m[r][col]
                    m[r] = [x - f * y for x, y in zip(m[r], m[col])]
        return GroupMatrix(tuple(tuple(row[n:]) for row in m))

    def __str__(self) -> str:
        cells = [[str(e) for e in row] for row in self.entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)


def in_iwahori(m: GroupMatrix) -> bool:
    """All entries t-integral, and the t=0 evaluation is upper triangular
    with nonzero diagonal."""
    n = m.n
    for r in range(n):
        for c in range(n):
            e = m.entries[r][c]
            if not e.is_integral():
                return False
            if r > c and e.ev0():
                return False
            if r == c and not e.ev0():
                return False
    return True


def in_uminus(m: GroupMatrix) -> bool:
    """Lower triangular with unit diagonal; entries below may be any
    rational function."""
    n = m.n
    one = RationalFunction.of(m.field, 1)
    for r in range(n):
        for c in range(n):
            e = m.entries[r][c]
            if r == c and e != one:
                return False
            if r < c and not e.is_zero():
                return False
    return True


def is_monomial(m: GroupMatrix) -> bool:
    """One nonzero entry per row and column, each a unit scalar times t^k."""
    n = m.n
    row_hits = [0] * n
    col_hits = [0] * n
    for r in range(n):
        for c in range(n):
            e = m.entries[r][c]
            if e.is_zero():
                continue
            if not e.is_unit_monomial():
                return False
            row_hits[r] += 1
            col_hits[c] += 1
    return all(h == 1 for h in row_hits) and all(h == 1 for h in col_hits)


def is_upper_triangular(m: GroupMatrix) -> bool:
    return all(
        m.entries[r][c].is_zero() for r in range(m.n) for c in range(m.n) if r > c
    )


@dataclass(frozen=True)
class ExecutorState:
    """Running factorization u . v_rep . b of a partially consumed word."""

    u: GroupMatrix
    u_factors: tuple[tuple[AffineRoot, object], ...]
    v: AffineWeylElement
    v_rep: GroupMatrix
    b: GroupMatrix
    kinds: tuple[StepKind, ...]


class LoopSL:
    """SL_n over rational functions in t, attached to a type A datum."""

    def __init__(self, datum: CartanDatum, field: Field):
        if not (datum.is_irreducible() and datum.type_label.startswith("A")):
            raise ValueError("the matrix layer supports irreducible type A data only")
        self.datum = datum
        self.field = field
        self.n = datum.size + 1
        self.group = AffineWeylGroup(datum)
        self._zero = RationalFunction.of(field, 0)
        self._one = RationalFunction.of(field, 1)
        self._t = RationalFunction.t_power(field, 1)
        self._n_cache: dict[int, GroupMatrix] = {}
        self._n_inv_cache: dict[int, GroupMatrix] = {}

    # -- elementary constructors ----------------------------------------

    def identity(self) -> GroupMatrix:
        return GroupMatrix(
            tuple(
                tuple(self._one if r == c else self._zero for c in range(self.n))
                for r in range(self.n)
            )
        )

    def _as_rf(self, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            return value
        return RationalFunction.of(self.field, self.field.of(value))

    def root_position(self, alpha: FiniteRoot) -> tuple[int, int]:
        """Matrix position (row, col) of the root +-(e_a - e_b), 1-based."""
        support = alpha.support()
        values = {alpha.coords[i - 1] for i in support}
        if (
            not support
            or values not in ({1}, {-1})
            or support != tuple(range(support[0], support[-1] + 1))
        ):
            raise ValueError(f"{alpha} is not a type A root")
        a, b = support[0], support[-1] + 1
        return (a, b) if values == {1} else (b, a)

    def x_root(self, beta: AffineRoot, value) -> GroupMatrix:
        """Identity plus (value * t^k) in the matrix position of the finite part."""
        r, c = self.root_position(beta.finite)
        f = self._as_rf(value) * RationalFunction.t_power(self.field, beta.k)
        rows = [list(row) for row in self.identity().entries]
        rows[r - 1][c - 1] = f
        return GroupMatrix(tuple(tuple(row) for row in rows))

    def x_simple(self, j: int, value) -> GroupMatrix:
        return self.x_root(self.group.simple_affine_root(j), value)

    def n_root(self, beta: AffineRoot, value) -> GroupMatrix:
        """x_beta(g) x_{-beta}(-1/g) x_beta(g) for invertible g."""
        g = self._as_rf(value)
        if g.is_zero():
            raise ZeroDivisionError("n element needs an invertible parameter")
        return self.x_root(beta, g) @ self.x_root(-beta, -g.inverse()) @ self.x_root(beta, g)

    def n_simple(self, j: int) -> GroupMatrix:
        if j not in self._n_cache:
            self._n_cache[j] = self.n_root(self.group.simple_affine_root(j), 1)
        return self._n_cache[j]

    def n_simple_inv(self, j: int) -> GroupMatrix:
        if j not in self._n_inv_cache:
            self._n_inv_cache[j] = self.n_simple(j).inverse()
        return self._n_inv_cache[j]

    def h_root(self, beta: AffineRoot, value) -> GroupMatrix:
        """n_beta(g) n_beta(1)^{-1}, the cocharacter of beta evaluated at g."""
        return self.n_root(beta, value) @ self.n_simple_inverse_for(beta)

    def n_simple_inverse_for(self, beta: AffineRoot) -> GroupMatrix:
        return self.n_root(beta, 1).inverse()

    def h_cochar(self, lam: Coweight, value) -> GroupMatrix:
        """Diagonal matrix with entries g^{<lam, eps_a>} for the coordinate
        weights eps_a of the vector representation."""
        g = self._as_rf(value)
        if g.is_zero():
            raise ZeroDivisionError("cocharacter needs an invertible parameter")
        rows = [list(row) for row in self.identity().entries]
        for a in range(self.n):
            before = lam.coords[a - 1] if a >= 1 else 0
            after = lam.coords[a] if a < self.n - 1 else 0
            rows[a][a] = g ** (after - before)
        return GroupMatrix(tuple(tuple(row) for row in rows))

    def t_translation(self, lam: Coweight) -> GroupMatrix:
        return self.h_cochar(lam, RationalFunction.t_power(self.field, -1))

    # -- reading a monomial matrix back into the affine Weyl group -------

    def monomial_to_weyl(self, m: GroupMatrix) -> AffineWeylElement:
        if not is_monomial(m):
            raise ValueError("matrix is not monomial")
        n = self.n
        sigma = [0] * (n + 1)  # column -> row, 1-based
        exps = [0] * (n + 1)  # row -> t exponent
        for c in range(n):
            r = next(r for r in range(n) if not m.entries[r][c].is_zero())
            e = m.entries[r][c]
            sigma[c + 1] = r + 1
            exps[r + 1] = e.valuation()
        # translation: diag(t^{e_a}) = cocharacter at t^{-1} of the coweight
        # with partial sums -(e_1 + ... + e_a)
        lam = []
        acc = 0
        for a in range(1, n):
            acc += exps[a]
            lam.append(-acc)
        translation = Coweight(tuple(lam))
        # finite part: sort the permutation with adjacent swaps
        word: list[int] = []
        perm = sigma[1:]
        while True:
            i = next((i for i in range(n - 1) if perm[i] > perm[i + 1]), None)
            if i is None:
                break
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            word.append(i + 1)
        finite = self.datum.weyl_from_word(tuple(reversed(word)))
        return AffineWeylElement(translation, finite)

    # -- Iwahori coset normalization -------------------------------------

    def iwahori_normalize(self, b: GroupMatrix, j: int, c) -> tuple[object, GroupMatrix]:
        """Unique scalar ct and b2 in the Iwahori subgroup with
        b x_j(c) n_j^{-1} = x_j(ct) n_j^{-1} b2.

        Solves for ct by collecting the low-order t-coefficients of the
        violated integrality/triangularity constraints of
        n_j x_j(-u) (b x_j(c) n_j^{-1}); every such entry is affine-linear
        in u, and uniqueness is verified rather than assumed.
        """
        if not in_iwahori(b):
            raise NormalizationError("normalization input is not in the Iwahori subgroup")
        nj = self.n_simple(j)
        m = b @ self.x_simple(j, c) @ self.n_simple_inv(j)
        # n_j x_j(-u) m  =  n0 - u * n1, with e_j the single-entry part of x_j
        r0, c0 = self.root_position(self.group.simple_affine_root(j).finite)
        ej = self.x_simple(j, 1)
        ej_only = GroupMatrix(
            tuple(
                tuple(
                    ej.entries[r][s] if (r, s) == (r0 - 1, c0 - 1) else self._zero
                    for s in range(self.n)
                )
                for r in range(self.n)
            )
        )
        n0 = nj @ m
        n1 = nj @ (ej_only @ m)
        candidate = None
        for r in range(self.n):
            for s in range(self.n):
                need = 1 if r > s else 0
                p, q = n0.entries[r][s], n1.entries[r][s]
                lows = [v for v in (p.valuation(), q.valuation()) if v is not None]
                if not lows:
                    continue
                for i in range(min(lows), need):
                    pi, qi = p.coeff(i), q.coeff(i)
                    if not qi:
                        if pi:
                            raise NormalizationError(
                                "constraint cannot be satisfied for any label"
                            )
                        continue
                    u = pi / qi
                    if candidate is None:
                        candidate = u
                    elif candidate != u:
                        raise NormalizationError("inconsistent linear constraints")
        if candidate is None:
            candidate = self.field.zero()
        b2 = nj @ (self.x_simple(j, -candidate) @ m)
        if not in_iwahori(b2):
            raise NormalizationError("solved label does not yield an Iwahori element")
        return candidate, b2

    # -- the matrix folding executor --------------------------------------

    def execute_folding(
        self, word: Sequence[int], labels: Sequence, validate: bool | None = None
    ) -> ExecutorState:
        """Consume x_{i_1}(c_1) n_{i_1}^{-1} ... left to right, maintaining
        the exact factorization u . v_rep . b."""
        word = tuple(word)
        if len(labels) != len(word):
            raise ValueError("need exactly one label per letter")
        if validate is None:
            validate = DEBUG_CHECKS
        labels = [self.field.of(c) if not isinstance(c, RationalFunction) else c for c in labels]
        u = self.identity()
        u_factors: list[tuple[AffineRoot, object]] = []
        v = self.group.identity()
        v_rep = self.identity()
        b = self.identity()
        kinds: list[StepKind] = []
        consumed = self.identity() if validate else None
        for j, label in zip(word, labels):
            ct, b2 = self.iwahori_normalize(b, j, label)
            beta = v.act(self.group.simple_affine_root(j))
            nj_inv = self.n_simple_inv(j)
            if validate:
                consumed = consumed @ (self.x_simple(j, label) @ nj_inv)
            if is_uminus_positive(beta):
                x = v_rep @ self.x_simple(j, ct) @ v_rep.inverse()
                u_factors.append((beta, self._extract_root_coeff(x, beta)))
                u = u @ x
                v = v * self.group.simple_reflection(j)
                v_rep = v_rep @ nj_inv
                b = b2
                kinds.append(StepKind.POSITIVE_CROSSING)
            elif ct:
                gamma = -beta
                ct_rf = self._as_rf(ct)
                x = v_rep @ self.x_root(-self.group.simple_affine_root(j), ct_rf.inverse()) @ v_rep.inverse()
                u_factors.append((gamma, self._extract_root_coeff(x, gamma)))
                u = u @ x
                b = self.x_simple(j, -ct) @ self.h_root(self.group.simple_affine_root(j), ct) @ b2
                kinds.append(StepKind.FOLD)
            else:
                gamma = -beta
                u_factors.append((gamma, self.field.zero()))
                v = v * self.group.simple_reflection(j)
                v_rep = v_rep @ nj_inv
                b = b2
                kinds.append(StepKind.ZERO_CROSSING)
            if validate:
                self._check_state(consumed, u, v, v_rep, b, tuple(u_factors))
        return ExecutorState(u, tuple(u_factors), v, v_rep, b, tuple(kinds))

    def _extract_root_coeff(self, x: GroupMatrix, gamma: AffineRoot):
        """Read c from x == x_gamma(c); the sign of c comes out of the matrix."""
        r, c = self.root_position(gamma.finite)
        value = x.entries[r - 1][c - 1] * RationalFunction.t_power(self.field, -gamma.k)
        coeff = value.constant_value()
        if x != self.x_root(gamma, coeff):
            raise NormalizationError("conjugated generator is not a root element")
        return coeff

    def _check_state(self, consumed, u, v, v_rep, b, u_factors) -> None:
        if not in_uminus(u):
            raise AssertionError("u left the lower unipotent subgroup")
        if not in_iwahori(b):
            raise AssertionError("b left the Iwahori subgroup")
        if not is_monomial(v_rep):
            raise AssertionError("v_rep is not monomial")
        if self.monomial_to_weyl(v_rep) != v:
            raise AssertionError("v_rep does not lie over the tracked Weyl element")
        if consumed != u @ v_rep @ b:
            raise AssertionError("running factorization identity failed")
        prod = self.identity()
        for gamma, coeff in u_factors:
            if not is_uminus_positive(gamma):
                raise AssertionError("recorded wall is not uminus positive")
            prod = prod @ self.x_root(gamma, coeff)
        if prod != u:
            raise AssertionError("u does not match its recorded factorization")
        det = (u @ v_rep @ b).determinant()
        if det != self._one:
            raise AssertionError("determinant drifted from 1")

    # -- finite Bruhat layer ----------------------------------------------

    def bruhat_point_finite(self, word: Sequence[int], labels: Sequence) -> GroupMatrix:
        """x_{i_1}(c_1) n_{i_1}^{-1} ... over constant scalars, finite letters only."""
        if len(labels) != len(word):
            raise ValueError("need exactly one label per letter")
        m = self.identity()
        for j, c in zip(word, labels):
            if not 1 <= j <= self.datum.size:
                raise ValueError("finite Bruhat points use letters 1..n only")
            m = m @ self.x_simple(j, c) @ self.n_simple_inv(j)
        return m

    def coset_equal_borel(self, m1: GroupMatrix, m2: GroupMatrix) -> bool:
        return is_upper_triangular(m2.inverse() @ m1)


def brute_force_cells(
    datum: CartanDatum, word: Sequence[int], p: int, guard: int = 10**6, jobs: int = 1
) -> dict[AffineWeylElement, int]:
    """Endpoint tallies of the executor over every label tuple in F_p.

    Runs are independent, so jobs > 1 splits the tuples by their first
    label across a thread pool; tallies merge to the same result in any
    case.
    """
    word = tuple(word)
    if p ** len(word) > guard:
        raise ValueError(f"{p}^{len(word)} label tuples exceed the guard {guard}")
    field = PrimeField(p)
    sl = LoopSL(datum, field)
    for j in range(datum.size + 1):
        sl.n_simple_inv(j)  # warm the generator caches before any threads share sl

    def tally_range(head) -> dict[AffineWeylElement, int]:
        out: dict[AffineWeylElement, int] = {}
        for tail in itertools.product(field.elements(), repeat=len(word) - len(head)):
            state = sl.execute_folding(word, head + tail)
            out[state.v] = out.get(state.v, 0) + 1
        return out

    heads = [(c,) for c in field.elements()] if word else [()]
    if jobs <= 1:
        chunks = [tally_range(head) for head in heads]
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(tally_range, heads))
    tallies: dict[AffineWeylElement, int] = {}
    for chunk in chunks:
        for end, count in chunk.items():
            tallies[end] = tallies.get(end, 0) + count
    return {
        end: tallies[end] for end in sorted(tallies, key=sl.group.canonical_key)
    }


def matrix_to_json(m: GroupMatrix) -> list:
    """Rows of {"num": [...], "den": [...]} coefficient-string entries."""

    def scalar(c) -> str:
        return str(c.value) if isinstance(c, FpElement) else str(c)

    return [
        [
            {
                "num": [scalar(c) for c in e.num.coeffs],
                "den": [scalar(c) for c in e.den.coeffs],
            }
            for e in row
        ]
        for row in m.entries
    ]


def matrix_from_json(field: Field, doc: list) -> GroupMatrix:
    def entry(d) -> RationalFunction:
        num = Polynomial.make(field, [field.of(s) for s in d["num"]])
        den = Polynomial.make(field, [field.of(s) for s in d["den"]])
        return RationalFunction.make(num, den)

    return GroupMatrix(tuple(tuple(entry(e) for e in row) for row in doc))
