"""Folded path enumeration and q-point counting for Iwasawa cells.

A step of a walk of type (i_1, ..., i_l) at the alcove v looks at
beta = v alpha_{i_k}:

  * beta in the uminus set: the crossing is forced and carries a free
    label (positive crossing),
  * otherwise the step branches: a nonzero label folds the path (the
    alcove stays), a zero label crosses anyway (zero crossing).

Each path contributes q^{#positive} (q-1)^{#fold} points; summing over
paths grouped by endpoint yields the cell counts.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .affine import (
    AffineRoot,
    AffineWeylElement,
    AffineWeylGroup,
    Word,
    WordError,
    affine_root_to_json,
    element_to_json,
    is_uminus_positive,
)


class StepKind(enum.Enum):
    POSITIVE_CROSSING = "P"
    FOLD = "F"
    ZERO_CROSSING = "Z"


class StepOptions(enum.Enum):
    """What the orientation allows at one step."""

    FORCED_POSITIVE = "forced-positive"
    BRANCH = "branch"


def step_options(group: AffineWeylGroup, v: AffineWeylElement, j: int) -> StepOptions:
    beta = v.act(group.simple_affine_root(j))
    return StepOptions.FORCED_POSITIVE if is_uminus_positive(beta) else StepOptions.BRANCH


@dataclass(frozen=True)
class FoldedPath:
    """One labeled folded path of a fixed type.

    alcoves has length len(type_word) + 1 and starts at the identity;
    walls[k] is the uminus-positive wall recorded at step k.
    """

    type_word: Word
    kinds: tuple[StepKind, ...]
    alcoves: tuple[AffineWeylElement, ...]
    walls: tuple[AffineRoot, ...]

    @property
    def endpoint(self) -> AffineWeylElement:
        return self.alcoves[-1]

    def count(self, kind: StepKind) -> int:
        return sum(1 for k in self.kinds if k is kind)

    @property
    def dimension(self) -> int:
        return self.count(StepKind.POSITIVE_CROSSING) + self.count(StepKind.FOLD)


@dataclass(frozen=True)
class CountPolynomial:
    """Integer polynomial in q, coefficients ascending, trailing zeros trimmed."""

    coeffs: tuple[int, ...]

    @staticmethod
    def make(coeffs: Iterable[int]) -> "CountPolynomial":
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return CountPolynomial(tuple(cs))

    @staticmethod
    def zero() -> "CountPolynomial":
        return CountPolynomial(())

    @staticmethod
    def one() -> "CountPolynomial":
        return CountPolynomial((1,))

    @staticmethod
    def q_power(n: int) -> "CountPolynomial":
        return CountPolynomial((0,) * n + (1,))

    def __add__(self, other: "CountPolynomial") -> "CountPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return CountPolynomial.make(x + y for x, y in zip(a, b))

    def __mul__(self, other: "CountPolynomial") -> "CountPolynomial":
        if not self.coeffs or not other.coeffs:
            return CountPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return CountPolynomial.make(out)

    def evaluate(self, q: int) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif e == 1:
                body = "q" if mag == 1 else f"{mag}q"
            else:
                body = f"q^{e}" if mag == 1 else f"{mag}q^{e}"
            terms.append(("-" if c < 0 else "+", body))
        head_sign, head = terms[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in terms[1:]:
            text += sign + body
        return text


_Q_MINUS_ONE = CountPolynomial((-1, 1))


def count_polynomial(path: FoldedPath) -> CountPolynomial:
    """q to the number of positive crossings times (q-1) to the number of folds."""
    out = CountPolynomial.q_power(path.count(StepKind.POSITIVE_CROSSING))
    for _ in range(path.count(StepKind.FOLD)):
        out = out * _Q_MINUS_ONE
    return out


def enumerate_folded_paths(
    group: AffineWeylGroup,
    word: Sequence[int],
    allow_nonreduced: bool = False,
    jobs: int = 1,
) -> tuple[FoldedPath, ...]:
    """Depth-first enumeration of all folded paths of type `word`.

    Branch steps explore the fold child before the zero crossing, so the
    output order is deterministic.  Non-reduced words are rejected unless
    explicitly allowed.
    """
    word = tuple(word)
    for i in word:
        group._check_letter(i)
    if not allow_nonreduced and not group.is_reduced(word):
        raise WordError(f"word {word} is not reduced (pass allow_nonreduced to override)")
    start = (group.identity(), (), ())
    if jobs <= 1 or len(word) == 0:
        return tuple(_walk(group, word, 0, *start))
    prefixes = _split_prefixes(group, word, jobs)
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        chunks = pool.map(
            lambda s: _walk(group, word, s[0], s[1], s[2], s[3]), prefixes
        )
        return tuple(itertools.chain.from_iterable(chunks))


def _walk(group, word, step, v, kinds, walls):
    """Iterative DFS from a partial state; children in fold-first order."""
    out = []
    stack = [(step, v, kinds, walls, _rebuild_alcoves(group, word, step, kinds))]
    while stack:
        step, v, kinds, walls, alcoves = stack.pop()
        if step == len(word):
            out.append(FoldedPath(word, kinds, alcoves, walls))
            continue
        j = word[step]
        beta = v.act(group.simple_affine_root(j))
        if is_uminus_positive(beta):
            nv = v * group.simple_reflection(j)
            stack.append(
                (step + 1, nv, kinds + (StepKind.POSITIVE_CROSSING,), walls + (beta,), alcoves + (nv,))
            )
        else:
            nv = v * group.simple_reflection(j)
            # pushed in reverse so the fold child is explored first
            stack.append(
                (step + 1, nv, kinds + (StepKind.ZERO_CROSSING,), walls + (-beta,), alcoves + (nv,))
            )
            stack.append(
                (step + 1, v, kinds + (StepKind.FOLD,), walls + (-beta,), alcoves + (v,))
            )
    return out


def _rebuild_alcoves(group, word, step, kinds):
    alcoves = [group.identity()]
    for k in range(step):
        v = alcoves[-1]
        if kinds[k] is StepKind.FOLD:
            alcoves.append(v)
        else:
            alcoves.append(v * group.simple_reflection(word[k]))
    return tuple(alcoves)


def _split_prefixes(group, word, jobs):
    """Partial states at the first few branch steps, in DFS order."""
    depth = max(1, (jobs - 1).bit_length())
    states = [(0, group.identity(), (), ())]
    for _ in range(depth):
        nxt = []
        for step, v, kinds, walls in states:
            if step == len(word):
                nxt.append((step, v, kinds, walls))
                continue
            j = word[step]
            beta = v.act(group.simple_affine_root(j))
            if is_uminus_positive(beta):
                nxt.append(
                    (step + 1, v * group.simple_reflection(j), kinds + (StepKind.POSITIVE_CROSSING,), walls + (beta,))
                )
            else:
                nxt.append((step + 1, v, kinds + (StepKind.FOLD,), walls + (-beta,)))
                nxt.append(
                    (step + 1, v * group.simple_reflection(j), kinds + (StepKind.ZERO_CROSSING,), walls + (-beta,))
                )
        states = nxt
    return states


@dataclass(frozen=True)
class Cell:
    """All folded paths of one type sharing an endpoint."""

    paths: tuple[FoldedPath, ...]
    count: CountPolynomial
    dimensions: tuple[int, ...]


def cells_by_endpoint(
    group: AffineWeylGroup,
    word: Sequence[int],
    allow_nonreduced: bool = False,
    jobs: int = 1,
) -> dict[AffineWeylElement, Cell]:
    """Group folded paths by endpoint, in canonical endpoint order."""
    grouped: dict[AffineWeylElement, list[FoldedPath]] = {}
    for path in enumerate_folded_paths(group, word, allow_nonreduced, jobs):
        grouped.setdefault(path.endpoint, []).append(path)
    out: dict[AffineWeylElement, Cell] = {}
    for end in sorted(grouped, key=group.canonical_key):
        paths = tuple(grouped[end])
        total = CountPolynomial.zero()
        for p in paths:
            total = total + count_polynomial(p)
        out[end] = Cell(paths, total, tuple(p.dimension for p in paths))
    return out


def paths_to_json(
    group: AffineWeylGroup, word: Word, cells: dict[AffineWeylElement, Cell], nonreduced: bool = False
) -> dict:
    doc = {
        "type_word": list(word),
        "paths": [
            {
                "kinds": [k.value for k in p.kinds],
                "end": element_to_json(group, p.endpoint),
                "walls": [affine_root_to_json(w) for w in p.walls],
                "count": list(count_polynomial(p).coeffs),
                "dim": p.dimension,
            }
            for cell in cells.values()
            for p in cell.paths
        ],
        "by_endpoint": [
            {
                "end": element_to_json(group, end),
                "count": list(cell.count.coeffs),
                "dims": list(cell.dimensions),
            }
            for end, cell in cells.items()
        ],
    }
    if nonreduced:
        doc["warning"] = "type word is not reduced; path/cell bijection is not guaranteed"
    return doc
