"""Finite-type Cartan data, root systems, and the finite Weyl group.

All arithmetic is exact (integers and fractions.Fraction); every value is
immutable and hashable, so elements can be shared freely and used as dict
keys.

Index conventions: simple roots/coroots are numbered 1..n.  The matrix
entry a[i][j] is the value of the i-th simple root on the j-th simple
coroot, so a row of the matrix is a simple root written as a functional
on the coroot basis.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class CartanError(ValueError):
    """Input is not a finite-type Cartan matrix (with a reason attached)."""


@dataclass(frozen=True)
class FiniteRoot:
    """Integer coefficient vector on the simple roots."""

    coords: tuple[int, ...]

    def __neg__(self) -> "FiniteRoot":
        return FiniteRoot(tuple(-c for c in self.coords))

    @property
    def height(self) -> int:
        return sum(self.coords)

    def is_positive(self) -> bool:
        return any(self.coords) and all(c >= 0 for c in self.coords)

    def is_negative(self) -> bool:
        return any(self.coords) and all(c <= 0 for c in self.coords)

    def support(self) -> tuple[int, ...]:
        """1-based indices of the nonzero coefficients."""
        return tuple(i + 1 for i, c in enumerate(self.coords) if c != 0)


@dataclass(frozen=True)
class Coweight:
    """Integer coefficient vector on the simple coroots."""

    coords: tuple[int, ...]

    def __neg__(self) -> "Coweight":
        return Coweight(tuple(-c for c in self.coords))

    def __add__(self, other: "Coweight") -> "Coweight":
        if len(self.coords) != len(other.coords):
            raise ValueError("coweight dimension mismatch")
        return Coweight(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Coweight") -> "Coweight":
        return self + (-other)

    def scaled(self, m: int) -> "Coweight":
        return Coweight(tuple(m * c for c in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def simple_root(n: int, i: int) -> FiniteRoot:
    return FiniteRoot(tuple(1 if j == i - 1 else 0 for j in range(n)))


def simple_coroot(n: int, i: int) -> Coweight:
    return Coweight(tuple(1 if j == i - 1 else 0 for j in range(n)))


def zero_coweight(n: int) -> Coweight:
    return Coweight((0,) * n)


# ---------------------------------------------------------------------------
# Cartan matrix validation and classification


@dataclass(frozen=True)
class CartanDatum:
    """A validated finite-type Cartan matrix with its classification tag.

    Construct through :func:`validate_cartan` or :func:`from_label`; the
    raw constructor performs no checking.
    """

    size: int
    entries: tuple[tuple[int, ...], ...]
    type_label: str

    # -- basic queries ------------------------------------------------

    def a(self, i: int, j: int) -> int:
        """Matrix entry for 1-based simple indices."""
        return self.entries[i - 1][j - 1]

    def pairing(self, lam: Coweight, mu: FiniteRoot) -> int:
        """Evaluate the root mu on the coroot lam: mu(h_lam)."""
        if len(lam.coords) != self.size or len(mu.coords) != self.size:
            raise ValueError("dimension mismatch")
        return sum(
            mu.coords[i] * self.entries[i][j] * lam.coords[j]
            for i in range(self.size)
            for j in range(self.size)
        )

    # -- simple reflections --------------------------------------------

    def reflect_root(self, i: int, alpha: FiniteRoot) -> FiniteRoot:
        """Apply s_i to a root: alpha - alpha(h_i) * alpha_i."""
        self._check_index(i)
        c = list(alpha.coords)
        c[i - 1] -= sum(alpha.coords[j] * self.entries[j][i - 1] for j in range(self.size))
        return FiniteRoot(tuple(c))

    def reflect_coweight(self, i: int, lam: Coweight) -> Coweight:
        """Apply s_i to a coweight: lam - alpha_i(lam) * h_i."""
        self._check_index(i)
        c = list(lam.coords)
        c[i - 1] -= sum(self.entries[i - 1][j] * lam.coords[j] for j in range(self.size))
        return Coweight(tuple(c))

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.size:
            raise IndexError(f"simple index {i} out of range 1..{self.size}")

    # -- Weyl group ------------------------------------------------------

    def identity_weyl(self) -> "FiniteWeylElement":
        eye = tuple(tuple(1 if r == c else 0 for c in range(self.size)) for r in range(self.size))
        return FiniteWeylElement(self, eye, eye)

    def simple_reflection(self, i: int) -> "FiniteWeylElement":
        self._check_index(i)
        n = self.size
        root_action = []
        coweight_action = []
        for r in range(n):
            rrow = [1 if r == c else 0 for c in range(n)]
            crow = list(rrow)
            if r == i - 1:
                for c in range(n):
                    rrow[c] -= self.entries[c][i - 1]
                    crow[c] -= self.entries[i - 1][c]
            root_action.append(tuple(rrow))
            coweight_action.append(tuple(crow))
        return FiniteWeylElement(self, tuple(root_action), tuple(coweight_action))

    def weyl_from_word(self, word: Sequence[int]) -> "FiniteWeylElement":
        w = self.identity_weyl()
        for i in word:
            w = w * self.simple_reflection(i)
        return w

    # -- root system -----------------------------------------------------

    def roots(self) -> tuple[FiniteRoot, ...]:
        return tuple(sorted(_root_coroot_table(self), key=lambda r: (r.height, r.coords)))

    def positive_roots(self) -> tuple[FiniteRoot, ...]:
        return tuple(r for r in self.roots() if r.is_positive())

    def coroot(self, alpha: FiniteRoot) -> Coweight:
        """The coroot h_alpha attached to a root alpha (w h_i for alpha = w alpha_i)."""
        table = _root_coroot_table(self)
        if alpha not in table:
            raise ValueError(f"{alpha} is not a root of this datum")
        return table[alpha]

    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the Dynkin diagram, as sorted 1-based index tuples."""
        return _components(self.entries)

    def highest_roots(self) -> tuple[FiniteRoot, ...]:
        """The highest root of each irreducible component, in component order."""
        out = []
        for comp in self.components():
            members = [r for r in self.roots() if set(r.support()) <= set(comp) and r.is_positive()]
            out.append(max(members, key=lambda r: (r.height, r.coords)))
        return tuple(out)

    def highest_root(self) -> FiniteRoot:
        comps = self.components()
        if len(comps) != 1:
            raise CartanError(
                "highest_root is defined per irreducible component; "
                "use highest_roots() on reducible data"
            )
        return self.highest_roots()[0]

    def is_irreducible(self) -> bool:
        return len(self.components()) == 1

    def symmetrizer(self) -> tuple[Fraction, ...]:
        """Positive rationals eps with eps_i a_ij = eps_j a_ji."""
        eps = _solve_symmetrizer(self.entries)
        assert eps is not None
        return eps


@functools.lru_cache(maxsize=None)
def _root_coroot_table(datum: CartanDatum) -> dict[FiniteRoot, Coweight]:
    """Closure of the simple roots under simple reflections, with coroots.

    BFS over the Weyl orbit; tracks h_alpha alongside alpha so that
    coroot lookup is a table hit.
    """
    n = datum.size
    table: dict[FiniteRoot, Coweight] = {}
    frontier = [(simple_root(n, i), simple_coroot(n, i)) for i in range(1, n + 1)]
    while frontier:
        nxt = []
        for alpha, h in frontier:
            if alpha in table:
                continue
            table[alpha] = h
            for i in range(1, n + 1):
                nxt.append((datum.reflect_root(i, alpha), datum.reflect_coweight(i, h)))
        frontier = nxt
    return table


def _components(entries: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(entries)
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], []
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            comp.append(v)
            for u in range(n):
                if u != v and entries[v][u] != 0:
                    stack.append(u)
        comps.append(tuple(sorted(i + 1 for i in comp)))
    return tuple(comps)


def _solve_symmetrizer(entries: tuple[tuple[int, ...], ...]) -> tuple[Fraction, ...] | None:
    """Find eps_i > 0 with eps_i a_ij = eps_j a_ji, or None if impossible."""
    n = len(entries)
    eps: list[Fraction | None] = [None] * n
    for comp in _components(entries):
        root = comp[0] - 1
        eps[root] = Fraction(1)
        stack = [root]
        while stack:
            v = stack.pop()
            for u in range(n):
                if u == v or entries[v][u] == 0:
                    continue
                # eps_v * a_vu = eps_u * a_uv
                want = eps[v] * Fraction(entries[v][u], entries[u][v])
                if eps[u] is None:
                    eps[u] = want
                    stack.append(u)
                elif eps[u] != want:
                    return None
    if any(e is None or e <= 0 for e in eps):
        return None
    return tuple(eps)  # type: ignore[arg-type]


def _is_positive_definite(g: list[list[Fraction]]) -> bool:
    """Sylvester criterion on a symmetric rational matrix."""
    n = len(g)
    m = [row[:] for row in g]
    for k in range(1, n + 1):
        if _det(m, k) <= 0:
            return False
    return True


def _det(m: list[list[Fraction]], k: int) -> Fraction:
    """Determinant of the leading k x k block, by fraction Gaussian elimination."""
    a = [row[:k] for row in m[:k]]
    det = Fraction(1)
    for col in range(k):
        piv = next((r for r in range(col, k) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, k):
            f = a[r][col] / a[col][col]
            for c in range(col, k):
                a[r][c] -= f * a[col][c]
    return det


def validate_cartan(matrix: Sequence[Sequence[int]]) -> CartanDatum:
    """Check the Cartan axioms and finite type; classify on success."""
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise CartanError("not-Cartan: matrix must be square and nonempty")
    entries = tuple(tuple(int(x) for x in row) for row in matrix)
    for i in range(n):
        if entries[i][i] != 2:
            raise CartanError(f"not-Cartan: diagonal entry a[{i+1}][{i+1}] != 2")
        for j in range(n):
            if i != j and entries[i][j] > 0:
                raise CartanError(f"not-Cartan: off-diagonal entry a[{i+1}][{j+1}] > 0")
            if (entries[i][j] == 0) != (entries[j][i] == 0):
                raise CartanError(f"not-Cartan: zero pattern asymmetric at ({i+1},{j+1})")
    eps = _solve_symmetrizer(entries)
    if eps is None:
        raise CartanError("not-finite-type: matrix is not symmetrizable")
    gram = [[eps[i] * entries[i][j] for j in range(n)] for i in range(n)]
    if not _is_positive_definite(gram):
        raise CartanError("not-finite-type: symmetrized matrix is not positive definite")
    label = "x".join(_classify_component(entries, comp) for comp in _components(entries))
    return CartanDatum(n, entries, label)


def _classify_component(entries: tuple[tuple[int, ...], ...], comp: tuple[int, ...]) -> str:
    idx = [i - 1 for i in comp]
    n = len(idx)
    if n == 1:
        return "A1"
    edges = [
        (u, v, entries[u][v] * entries[v][u])
        for a, u in enumerate(idx)
        for v in idx[a + 1 :]
        if entries[u][v] != 0
    ]
    deg = {u: sum(1 for e in edges if u in (e[0], e[1])) for u in idx}
    multiple = [e for e in edges if e[2] > 1]
    if any(e[2] == 3 for e in edges):
        return "G2"
    if multiple:
        (u, v, _) = multiple[0]
        chain = _path_order(idx, edges)
        if chain is None:
            raise CartanError("not-finite-type: unrecognized multiply-laced diagram")
        if {chain[0], chain[1]} != {u, v} and {chain[-2], chain[-1]} != {u, v}:
            return "F4"
        # orient so the double edge sits at the far end
        if {chain[-2], chain[-1]} != {u, v}:
            chain = chain[::-1]
        # a[inner][end] == -2 exactly when the end root is the short one
        return ("B" if entries[chain[-2]][chain[-1]] == -2 else "C") + str(n)
    # simply laced
    branch = [u for u in idx if deg[u] >= 3]
    if not branch:
        return f"A{n}"
    arms = sorted(_arm_lengths(idx, edges, branch[0]))
    if arms[:2] == [1, 1]:
        return f"D{n}"
    if arms == [1, 2, 2]:
        return "E6"
    if arms == [1, 2, 3]:
        return "E7"
    if arms == [1, 2, 4]:
        return "E8"
    raise CartanError("not-finite-type: unrecognized simply-laced diagram")


def _path_order(idx: list[int], edges: list[tuple[int, int, int]]) -> list[int] | None:
    """Order the vertices of a path graph end to end, or None if not a path."""
    nbr: dict[int, list[int]] = {u: [] for u in idx}
    for u, v, _ in edges:
        nbr[u].append(v)
        nbr[v].append(u)
    ends = [u for u in idx if len(nbr[u]) == 1]
    if len(ends) != 2 or any(len(nbr[u]) > 2 for u in idx):
        return None
    order = [min(ends)]
    while len(order) < len(idx):
        nxt = [v for v in nbr[order[-1]] if v not in order]
        if not nxt:
            return None
        order.append(nxt[0])
    return order


def _arm_lengths(idx: list[int], edges: list[tuple[int, int, int]], center: int) -> list[int]:
    nbr: dict[int, list[int]] = {u: [] for u in idx}
    for u, v, _ in edges:
        nbr[u].append(v)
        nbr[v].append(u)
    arms = []
    for start in nbr[center]:
        length, prev, cur = 1, center, start
        while True:
            ahead = [v for v in nbr[cur] if v != prev]
            if not ahead:
                break
            if len(ahead) > 1:
                raise CartanError("not-finite-type: diagram has nested branching")
            prev, cur = cur, ahead[0]
            length += 1
        arms.append(length)
    return arms


_LABEL_BUILDERS = {
    "A": lambda n: _chain(n, {}),
    "B": lambda n: _chain(n, {(n - 2, n - 1): -2}),
    "C": lambda n: _chain(n, {(n - 1, n - 2): -2}),
    "D": lambda n: _fork(n),
    "G": lambda n: ((2, -1), (-3, 2)),
    "F": lambda n: ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2)),
    "E": lambda n: _e_type(n),
}


def _chain(n: int, overrides: dict[tuple[int, int], int]) -> tuple[tuple[int, ...], ...]:
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = m[i + 1][i] = -1
    for (i, j), v in overrides.items():
        m[i][j] = v
    return tuple(tuple(row) for row in m)


def _fork(n: int) -> tuple[tuple[int, ...], ...]:
    if n < 4:
        raise CartanError(f"D{n} is not a valid type label")
    m = [list(row) for row in _chain(n, {})]
    m[n - 1][n - 2] = m[n - 2][n - 1] = 0
    m[n - 1][n - 3] = m[n - 3][n - 1] = -1
    return tuple(tuple(row) for row in m)


def _e_type(n: int) -> tuple[tuple[int, ...], ...]:
    if n not in (6, 7, 8):
        raise CartanError(f"E{n} is not a valid type label")
    m = [list(row) for row in _chain(n, {})]
    # node n attaches to the third node of an (n-1)-chain
    m[n - 1][n - 2] = m[n - 2][n - 1] = 0
    m[n - 1][2] = m[2][n - 1] = -1
    return tuple(tuple(row) for row in m)


def from_label(label: str) -> CartanDatum:
    """Build a datum from a type label such as "A2", "G2", or "A1xA1"."""
    blocks = []
    for part in label.split("x"):
        part = part.strip()
        if len(part) < 2 or part[0] not in _LABEL_BUILDERS or not part[1:].isdigit():
            raise CartanError(f"unrecognized type label {part!r}")
        family, rank = part[0], int(part[1:])
        if rank < 1 or (family == "G" and rank != 2) or (family == "F" and rank != 4):
            raise CartanError(f"unrecognized type label {part!r}")
        if family in "BC" and rank < 2:
            raise CartanError(f"unrecognized type label {part!r}")
        blocks.append(_LABEL_BUILDERS[family](rank))
    n = sum(len(b) for b in blocks)
    m = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                m[off + i][off + j] = v
        off += len(b)
    return validate_cartan(m)


# ---------------------------------------------------------------------------
# Finite Weyl elements


@dataclass(frozen=True)
class FiniteWeylElement:
    """Weyl group element stored as its two action matrices.

    root_action acts on root coordinates, coweight_action on coroot
    coordinates; they are kept in tandem so the pairing invariance
    <w lam, w mu> = <lam, mu> is directly checkable.
    """

    datum: CartanDatum
    root_action: tuple[tuple[int, ...], ...]
    coweight_action: tuple[tuple[int, ...], ...]

    def __mul__(self, other: "FiniteWeylElement") -> "FiniteWeylElement":
        if self.datum != other.datum:
            raise ValueError("datum mismatch")
        return FiniteWeylElement(
            self.datum,
            _mat_mul(self.root_action, other.root_action),
            _mat_mul(self.coweight_action, other.coweight_action),
        )

    def inverse(self) -> "FiniteWeylElement":
        return FiniteWeylElement(
            self.datum,
            _mat_inv(self.root_action),
            _mat_inv(self.coweight_action),
        )

    def act_root(self, alpha: FiniteRoot) -> FiniteRoot:
        return FiniteRoot(_mat_vec(self.root_action, alpha.coords))

    def act_coweight(self, lam: Coweight) -> Coweight:
        return Coweight(_mat_vec(self.coweight_action, lam.coords))

    def is_identity(self) -> bool:
        n = self.datum.size
        return all(
            self.root_action[r][c] == (1 if r == c else 0)
            for r in range(n)
            for c in range(n)
        )

    def length(self) -> int:
        """Number of positive roots sent to negative roots."""
        return sum(1 for a in self.datum.positive_roots() if self.act_root(a).is_negative())

    def canonical_word(self) -> tuple[int, ...]:
        return _canonical_word(self)


@functools.lru_cache(maxsize=None)
def _canonical_word(w: FiniteWeylElement) -> tuple[int, ...]:
    """Lexicographically smallest reduced word, by greedy left descent."""
    datum = w.datum
    word: list[int] = []
    winv = w.inverse()
    while not w.is_identity():
        for i in range(1, datum.size + 1):
            if winv.act_root(simple_root(datum.size, i)).is_negative():
                break
        else:  # pragma: no cover - impossible for genuine group elements
            raise RuntimeError("no descent found for a non-identity element")
        word.append(i)
        s = datum.simple_reflection(i)
        w = s * w
        winv = winv * s
    return tuple(word)


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n)) for r in range(n)
    )


def _mat_vec(a, v):
    n = len(a)
    return tuple(sum(a[r][k] * v[k] for k in range(n)) for r in range(n))


def _mat_inv(a):
    """Inverse of an integer matrix that is invertible over the integers."""
    n = len(a)
    m = [[Fraction(a[r][c]) for c in range(n)] + [Fraction(1 if r == c else 0) for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        d = m[col][col]
        m[col] = [x / d for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = []
    for r in range(n):
        row = []
        for c in range(n, 2 * n):
            x = m[r][c]
            if x.denominator != 1:
                raise ValueError("matrix is not invertible over the integers")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)
