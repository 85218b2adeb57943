"""Deterministic SVG rendering of rank <= 2 affine wall arrangements.

Output is static SVG 1.1 with a fixed element order and fixed number
formatting, so a scene renders to byte-identical documents across runs.
Walls carry class "wall", orientation marks "sign", the shaded
fundamental alcove "alcove", and walk overlays "crossing"/"fold".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .affine import AffineWeylElement, AffineWeylGroup
from .cartan import CartanDatum
from .folding import FoldedPath, StepKind

Walk = tuple[AffineWeylElement, ...]
Overlay = Union[FoldedPath, Walk]


@dataclass(frozen=True)
class SceneSpec:
    datum: CartanDatum
    radius: int = 2
    overlays: tuple[Overlay, ...] = ()
    scale: float = 60.0
    margin: float = 40.0
    label_families: bool = True

    def __post_init__(self):
        if self.datum.size > 2:
            raise ValueError("rendering supports rank <= 2 only")
        if self.radius < 1:
            raise ValueError("radius must be at least 1")


def _fmt(x: float) -> str:
    if abs(x) < 5e-4:
        x = 0.0
    return f"{x:.3f}"


class _Embedding:
    """Map rational coroot coordinates to Euclidean drawing coordinates."""

    def __init__(self, datum: CartanDatum):
        eps = datum.symmetrizer()
        n = datum.size
        g = [[float(eps[i] * datum.entries[i][j]) for j in range(n)] for i in range(n)]
        if n == 1:
            self.m = [[math.sqrt(g[0][0])]]
        else:
            m11 = math.sqrt(g[0][0])
            m12 = g[0][1] / m11
            m22 = math.sqrt(g[1][1] - m12 * m12)
            self.m = [[m11, m12], [0.0, m22]]
        self.n = n

    def point(self, x: Sequence[Fraction]) -> tuple[float, float]:
        xs = [float(c) for c in x]
        if self.n == 1:
            return (self.m[0][0] * xs[0], 0.0)
        return (
            self.m[0][0] * xs[0] + self.m[0][1] * xs[1],
            self.m[1][0] * xs[0] + self.m[1][1] * xs[1],
        )

    def functional(self, f: Sequence[int]) -> tuple[float, float]:
        """Euclidean vector g with g . point(x) = f . x for all x."""
        if self.n == 1:
            return (f[0] / self.m[0][0], 0.0)
        # solve m^T g = f for the upper-triangular m
        g1 = f[0] / self.m[0][0]
        g2 = (f[1] - self.m[0][1] * g1) / self.m[1][1]
        return (g1, g2)


def _clip_line(g: tuple[float, float], k: float, half: float):
    """Segment of {u : g.u = k} inside the square [-half, half]^2, or None."""
    gx, gy = g
    points = []
    for side in ("x-", "x+", "y-", "y+"):
        if side in ("x-", "x+"):
            x = -half if side == "x-" else half
            if abs(gy) < 1e-12:
                continue
            y = (k - gx * x) / gy
            if -half - 1e-9 <= y <= half + 1e-9:
                points.append((x, y))
        else:
            y = -half if side == "y-" else half
            if abs(gx) < 1e-12:
                continue
            x = (k - gy * y) / gx
            if -half - 1e-9 <= x <= half + 1e-9:
                points.append((x, y))
    uniq = []
    for p in points:
        if all(abs(p[0] - q[0]) > 1e-9 or abs(p[1] - q[1]) > 1e-9 for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    uniq.sort()
    return uniq[0], uniq[-1]


def render_arrangement(spec: SceneSpec) -> str:
    group = AffineWeylGroup(spec.datum)
    emb = _Embedding(spec.datum)
    rank = spec.datum.size
    pos_roots = sorted(spec.datum.positive_roots(), key=lambda r: (r.height, r.coords))
    functionals = {alpha: emb.functional(group.root_functional(alpha)) for alpha in pos_roots}
    norms = [math.hypot(*functionals[a]) for a in pos_roots]
    half = (spec.radius + 0.7) / min(norms)
    if rank == 1:
        half_y = 0.6
    else:
        half_y = half
    s = spec.scale
    width = 2 * half * s + 2 * spec.margin
    height = 2 * half_y * s + 2 * spec.margin

    def px(u: tuple[float, float]) -> tuple[float, float]:
        # y grows upward mathematically; flip for SVG
        return (spec.margin + (u[0] + half) * s, spec.margin + (half_y - u[1]) * s)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        "<defs>"
        '<marker id="arrow" markerWidth="8" markerHeight="8" refX="6" refY="3" '
        'orient="auto" markerUnits="strokeWidth">'
        '<path d="M0,0 L6,3 L0,6 z" fill="#1f3d7a"/>'
        "</marker>"
        "</defs>",
    ]

    # shaded fundamental alcove
    verts = group.fundamental_alcove_vertices()
    if rank == 1:
        (a,), (b,) = verts
        pa, pb = emb.point((a,))[0], emb.point((b,))[0]
        qa, qb = px((pa, 0))[0], px((pb, 0))[0]
        top, bot = px((0, 0.25))[1], px((0, -0.25))[1]
        parts.append(
            f'<polygon class="alcove" points="{_fmt(qa)},{_fmt(top)} {_fmt(qb)},{_fmt(top)} '
            f'{_fmt(qb)},{_fmt(bot)} {_fmt(qa)},{_fmt(bot)}" '
            'fill="#f2c879" stroke="none"/>'
        )
    else:
        pts = " ".join(
            f"{_fmt(px(emb.point(v))[0])},{_fmt(px(emb.point(v))[1])}" for v in verts
        )
        parts.append(f'<polygon class="alcove" points="{pts}" fill="#f2c879" stroke="none"/>')

    # the walls H with <x, alpha> = k for positive alpha and |k| <= radius
    for root_index, alpha in enumerate(pos_roots):
        g = functionals[alpha]
        gnorm = math.hypot(*g)
        ghat = (g[0] / gnorm, g[1] / gnorm)
        for k in range(-spec.radius, spec.radius + 1):
            if rank == 1:
                x = k / g[0]
                p0, p1 = (x, -0.45), (x, 0.45)
            else:
                seg = _clip_line(g, float(k), half)
                if seg is None:
                    continue
                p0, p1 = seg
            a, b = px(p0), px(p1)
            parts.append(
                f'<line class="wall" x1="{_fmt(a[0])}" y1="{_fmt(a[1])}" '
                f'x2="{_fmt(b[0])}" y2="{_fmt(b[1])}" stroke="#555555" stroke-width="1"/>'
            )
            # orientation marks: plus on the side where <x, alpha> > k
            frac = 0.12
            mid = (p0[0] + frac * (p1[0] - p0[0]), p0[1] + frac * (p1[1] - p0[1]))
            off = 10.0 / s
            plus = px((mid[0] + off * ghat[0], mid[1] + off * ghat[1]))
            minus = px((mid[0] - off * ghat[0], mid[1] - off * ghat[1]))
            parts.append(
                f'<text class="sign" x="{_fmt(plus[0])}" y="{_fmt(plus[1])}" '
                'font-size="9" text-anchor="middle" fill="#777777">+</text>'
            )
            parts.append(
                f'<text class="sign" x="{_fmt(minus[0])}" y="{_fmt(minus[1])}" '
                'font-size="9" text-anchor="middle" fill="#777777">-</text>'
            )
        if spec.label_families:
            if rank == 2:
                label_pos = px((half * 0.78, half_y * (0.93 - 0.1 * root_index)))
            else:
                label_pos = px((half * 0.9, 0.5))
            family = "+".join(
                f"a{i}" for i, cc in enumerate(alpha.coords, start=1) for _ in range(cc)
            )
            parts.append(
                f'<text class="family" x="{_fmt(label_pos[0])}" y="{_fmt(label_pos[1])}" '
                f'font-size="10" fill="#333333">H[{family}]</text>'
            )

    for overlay in spec.overlays:
        parts.extend(_overlay_elements(group, emb, px, overlay))

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _barycenter(group: AffineWeylGroup, emb: _Embedding, v: AffineWeylElement):
    bary, _ = group.alcove_position(v)
    if group.rank == 1:
        return (emb.point(bary)[0], 0.0)
    return emb.point(bary)


def _overlay_elements(group, emb, px, overlay):
    if isinstance(overlay, FoldedPath):
        return _folded_path_elements(group, emb, px, overlay)
    return _walk_elements(group, emb, px, overlay)


def _walk_elements(group, emb, px, walk: Walk):
    parts = []
    if not walk:
        return parts
    start = px(_barycenter(group, emb, walk[0]))
    parts.append(
        f'<circle class="start" cx="{_fmt(start[0])}" cy="{_fmt(start[1])}" r="3" fill="#1f3d7a"/>'
    )
    for a, b in zip(walk, walk[1:]):
        pa, pb = px(_barycenter(group, emb, a)), px(_barycenter(group, emb, b))
        parts.append(
            f'<line class="crossing" x1="{_fmt(pa[0])}" y1="{_fmt(pa[1])}" '
            f'x2="{_fmt(pb[0])}" y2="{_fmt(pb[1])}" stroke="#1f3d7a" stroke-width="1.5" '
            'marker-end="url(#arrow)"/>'
        )
    return parts


def _folded_path_elements(group, emb, px, path: FoldedPath):
    parts = []
    start = px(_barycenter(group, emb, path.alcoves[0]))
    parts.append(
        f'<circle class="start" cx="{_fmt(start[0])}" cy="{_fmt(start[1])}" r="3" fill="#1f3d7a"/>'
    )
    for step, kind in enumerate(path.kinds):
        v = path.alcoves[step]
        j = path.type_word[step]
        here = _barycenter(group, emb, v)
        if kind is StepKind.FOLD:
            # hook toward the wall shared with v s_j and back
            other = _barycenter(group, emb, v * group.simple_reflection(j))
            wall = ((here[0] + other[0]) / 2, (here[1] + other[1]) / 2)
            dx, dy = wall[0] - here[0], wall[1] - here[1]
            side = (-dy * 0.25, dx * 0.25)
            p0 = px(here)
            p1 = px((here[0] + 0.85 * dx, here[1] + 0.85 * dy))
            p2 = px((here[0] + 0.55 * dx + side[0], here[1] + 0.55 * dy + side[1]))
            parts.append(
                f'<polyline class="fold" points="{_fmt(p0[0])},{_fmt(p0[1])} '
                f'{_fmt(p1[0])},{_fmt(p1[1])} {_fmt(p2[0])},{_fmt(p2[1])}" '
                'fill="none" stroke="#a03030" stroke-width="1.5" marker-end="url(#arrow)"/>'
            )
        else:
            nxt = _barycenter(group, emb, path.alcoves[step + 1])
            pa, pb = px(here), px(nxt)
            parts.append(
                f'<line class="crossing" x1="{_fmt(pa[0])}" y1="{_fmt(pa[1])}" '
                f'x2="{_fmt(pb[0])}" y2="{_fmt(pb[1])}" stroke="#1f3d7a" stroke-width="1.5" '
                'marker-end="url(#arrow)"/>'
            )
    return parts


def render_path(path: FoldedPath, spec: SceneSpec) -> str:
    """Render one folded path on top of the arrangement of spec."""
    bundled = SceneSpec(
        datum=spec.datum,
        radius=spec.radius,
        overlays=spec.overlays + (path,),
        scale=spec.scale,
        margin=spec.margin,
        label_families=spec.label_families,
    )
    return render_arrangement(bundled)
