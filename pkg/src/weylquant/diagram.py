"""Static SVG weight diagrams for rank-2 pairs.

Geometry: doubled coordinates are embedded in the plane by a Cholesky factor
of the invariant form, so root angles and lengths are true.  The picture is
rotated so the first simple root of K (of G when K = T) points up, mirrored
so rho_G points right, then
uniformly scaled so every drawn weight fits a 1000 x 1000 viewport with a
60 unit margin.  Regions are clipped to the viewport with shapely.  All
numbers are printed with two decimals, so output is byte-stable.
"""

from __future__ import annotations

import math
import re
from typing import Mapping, Sequence
from xml.sax.saxutils import escape

from shapely.geometry import LineString, MultiPoint, Point, Polygon, box

from .errors import UnsupportedRankError
from .fixedpoint import FixedPointSet
from .rootsys import SubgroupPair, Weight, add, sub

SIZE = 1000
MARGIN = 60
# Far points for cones: this many weight-lattice steps beyond the view.
FAR = 400

_RED = "#c0392b"
_BLUE = "#2e59a8"


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


class Embedding:
    """Doubled coordinates -> viewport coordinates."""

    def __init__(self, pair: SubgroupPair, extent: Sequence[Weight]):
        rs = pair.g
        if rs.rank != 2:
            raise UnsupportedRankError(f"diagrams need a rank-2 group, got rank {rs.rank}")
        g = [[rs.form(ei, ej) for ej in ((1, 0), (0, 1))] for ei in ((1, 0), (0, 1))]
        # G = L L^T with L lower triangular; a weight x maps to L^T x.
        l00 = math.sqrt(g[0][0])
        l10 = g[1][0] / l00
        l11 = math.sqrt(g[1][1] - l10 * l10)
        self._lt = ((l00, l10), (0.0, l11))
        ref = (pair.k_simple_roots or rs.simple_roots)[0]
        rx, ry = self._raw(ref)
        ang = math.atan2(ry, rx)
        # rotate ref onto +y
        self._rot = math.pi / 2 - ang
        # mirror if needed so rho_G lies to the right
        self._flip = 1.0
        if self._rotated(pair.rho_g)[0] < -1e-9:
            self._flip = -1.0
        pts = [self._rotated(w) for w in extent] or [(0.0, 0.0)]
        span = max(max(abs(x), abs(y)) for x, y in pts) or 1.0
        self.scale = (SIZE / 2 - MARGIN) / span

    def _raw(self, w: Sequence[int]) -> tuple[float, float]:
        (a, b), (_, d) = self._lt
        return a * w[0] + b * w[1], d * w[1]

    def _rotated(self, w: Sequence[int]) -> tuple[float, float]:
        x, y = self._raw(w)
        c, s = math.cos(self._rot), math.sin(self._rot)
        return getattr(self, "_flip", 1.0) * (c * x - s * y), s * x + c * y

    def __call__(self, w: Sequence[int]) -> tuple[float, float]:
        x, y = self._rotated(w)
        return SIZE / 2 + self.scale * x, SIZE / 2 - self.scale * y


def _pt(p) -> str:
    return f"{_fmt(p[0])},{_fmt(p[1])}"


def _polygon_path(geom) -> str:
    polys = [geom] if isinstance(geom, Polygon) else list(getattr(geom, "geoms", []))
    parts = []
    for poly in polys:
        if not isinstance(poly, Polygon) or poly.is_empty:
            continue
        coords = list(poly.exterior.coords)[:-1]
        parts.append("M" + " L".join(_pt(c) for c in coords) + " Z")
    return " ".join(parts)


def _cone_geometry(emb: Embedding, base: Weight, generators: Sequence[Weight]):
    """base - cone(generators), clipped to the viewport."""
    view = box(0, 0, SIZE, SIZE)
    if not generators:
        return Point(emb(base)).intersection(view)
    far = [emb(sub(base, tuple(FAR * c for c in g))) for g in generators]
    hull = MultiPoint([emb(base), *far]).convex_hull
    return hull.intersection(view)


def _axes(emb: Embedding, a: Weight):
    """Unit normal along a and unit tangent along its wall, in viewport coordinates."""
    ox, oy = emb((0, 0))
    ax, ay = emb(a)
    n = math.hypot(ax - ox, ay - oy)
    nx, ny = (ax - ox) / n, (ay - oy) / n
    return (ox, oy), (nx, ny), (-ny, nx)


def _half_plane(emb: Embedding, a: Weight) -> Polygon:
    """{x : <x, a> >= 0} as a polygon covering the viewport."""
    (ox, oy), (nx, ny), (tx, ty) = _axes(emb, a)
    big = 3 * SIZE
    return Polygon(
        [
            (ox + big * tx, oy + big * ty),
            (ox - big * tx, oy - big * ty),
            (ox - big * tx + big * nx, oy - big * ty + big * ny),
            (ox + big * tx + big * nx, oy + big * ty + big * ny),
        ]
    )


def _wall(emb: Embedding, a: Weight) -> LineString:
    (ox, oy), _, (tx, ty) = _axes(emb, a)
    big = 3 * SIZE
    return LineString([(ox + big * tx, oy + big * ty), (ox - big * tx, oy - big * ty)])


def _lattice(emb: Embedding) -> list[Weight]:
    """Integral weights whose image lies inside the viewport."""
    step = min(math.dist(emb((0, 0)), emb(c)) for c in ((2, 0), (0, 2)))
    bound = 2 * (int(2 * SIZE / step) + 2)
    found = []
    for a in range(-bound, bound + 1, 2):
        for b in range(-bound, bound + 1, 2):
            x, y = emb((a, b))
            if 0 <= x <= SIZE and 0 <= y <= SIZE:
                found.append((a, b))
    return found


def render_svg(
    fps: FixedPointSet,
    multiplicities: Mapping[Weight, int],
    title: str | None = None,
) -> str:
    """Weight diagram: chambers, roots, moment hull, signed partition cones, multiplicities."""
    pair = fps.pair
    if pair.rank != 2:
        raise UnsupportedRankError(f"diagrams need a rank-2 group, got rank {pair.rank}")
    rs = pair.g
    mus = [p.mu for p in fps.points]
    bases = []
    for z in fps.z_set:
        d = fps.data[z.point.id]
        shift = sub(z.w(pair.rho_k), pair.rho_k)
        base = add(add(d.point.mu, shift), d.beta_bar)
        sign = (-1) ** d.s * z.w.sign
        bases.append((z, base, sign, d.B_plus))
    extent = mus + [b for _, b, _, _ in bases] + list(multiplicities) + list(rs.roots)
    emb = Embedding(pair, extent)
    view = box(0, 0, SIZE, SIZE)
    out: list[str] = []
    w = out.append
    w(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">'
    )
    w("<defs>")
    for name, colour, angle in (("plus", _RED, 45), ("minus", _BLUE, -45)):
        w(
            f'<pattern id="hatch-{name}" patternUnits="userSpaceOnUse" width="12" height="12" '
            f'patternTransform="rotate({angle})">'
            f'<line x1="0" y1="0" x2="0" y2="12" stroke="{colour}" stroke-width="2"/></pattern>'
        )
    w("</defs>")
    w(f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>')
    if title:
        w(f'<title>{escape(title)}</title>')

    # closed K-dominant chamber; the embedding preserves the form up to scale
    region = view
    for a in pair.k_simple_roots:
        region = region.intersection(_half_plane(emb, a))
    w(f'<path class="k-chamber" d="{_polygon_path(region)}" fill="#dddddd" fill-opacity="0.5"/>')

    # signed partition cones
    for z, base, sign, gens in bases:
        geom = _cone_geometry(emb, base, gens)
        name = "plus" if sign > 0 else "minus"
        colour = _RED if sign > 0 else _BLUE
        label = f"{z.point.id}:{'e' if z.w.is_identity else 'w'}"
        if geom.geom_type in ("Polygon", "MultiPolygon", "GeometryCollection") and geom.area > 0:
            w(
                f'<path class="cone" data-z="{escape(label)}" data-sign="{sign}" '
                f'd="{_polygon_path(geom)}" fill="url(#hatch-{name})" fill-opacity="0.6" '
                f'stroke="{colour}" stroke-width="1"/>'
            )
        elif geom.geom_type == "LineString" and not geom.is_empty:
            (x1, y1), (x2, y2) = list(geom.coords)[0], list(geom.coords)[-1]
            w(
                f'<line class="cone" data-z="{escape(label)}" data-sign="{sign}" '
                f'x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
                f'stroke="{colour}" stroke-width="4" stroke-dasharray="8 4"/>'
            )

    # walls of the G chambers; K walls drawn darker
    for a in rs.positive_roots:
        seg = _wall(emb, a).intersection(view)
        if seg.is_empty:
            continue
        (x1, y1), (x2, y2) = list(seg.coords)[0], list(seg.coords)[-1]
        colour = "#444444" if a in pair.k_roots else "#aaaaaa"
        w(
            f'<line class="wall" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{colour}" stroke-width="1"/>'
        )

    # lattice
    for lam in _lattice(emb):
        x, y = emb(lam)
        w(f'<circle class="lattice" cx="{_fmt(x)}" cy="{_fmt(y)}" r="2" fill="#999999"/>')

    # moment hull and images
    if len(mus) >= 3:
        hull = MultiPoint([emb(m) for m in mus]).convex_hull
        if isinstance(hull, Polygon):
            w(f'<path class="moment-hull" d="{_polygon_path(hull)}" fill="none" stroke="black" stroke-width="2"/>')
    for p in fps.points:
        x, y = emb(p.mu)
        w(f'<circle class="moment" data-id="{escape(p.id)}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="6" fill="black"/>')

    # roots
    o = emb((0, 0))
    for a in rs.roots:
        x, y = emb(a)
        w(
            f'<line class="root" x1="{_fmt(o[0])}" y1="{_fmt(o[1])}" x2="{_fmt(x)}" y2="{_fmt(y)}" '
            'stroke="black" stroke-width="1.5"/>'
        )

    # nonzero net multiplicities
    for lam, m in sorted(multiplicities.items()):
        if not m:
            continue
        x, y = emb(lam)
        w(
            f'<circle class="multiplicity" data-lambda="{lam[0]} {lam[1]}" data-value="{m}" '
            f'cx="{_fmt(x)}" cy="{_fmt(y)}" r="12" fill="none" stroke="black" stroke-width="2"/>'
        )
        if m != 1:
            w(
                f'<text class="multiplicity-label" x="{_fmt(x + 14)}" y="{_fmt(y - 14)}" '
                f'font-size="20" font-family="sans-serif">{m}</text>'
            )
    w("</svg>")
    return "\n".join(out) + "\n"


def circled_weights(svg: str) -> list[tuple[tuple[int, int], int]]:
    """Read the circled weights back out of a rendered diagram."""
    found = re.findall(r'class="multiplicity" data-lambda="(-?\d+) (-?\d+)" data-value="(-?\d+)"', svg)
    return [((int(a), int(b)), int(v)) for a, b, v in found]
