"""Deterministic SVG pictures of rank-2 chambers, polyhedra and normal fans.

The first fundamental weight points right; the second sits at the angle
given by the invariant metric, so the chamber looks as it does in the
usual hand-drawn pictures.  All coordinates are printed with three
decimals, making the output byte-for-byte reproducible.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Sequence

from .polyhedra import CHAMBER, FULL, LabeledPolyhedron, make_facet, stacky_normal_fan
from .rootsys import RootDatum

FILLS = ("#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc", "#fc9272")


class PlotError(ValueError):
    pass


def _embedding(rd: RootDatum) -> tuple[tuple[float, float], tuple[float, float]]:
    g = [[float(v) for v in row] for row in rd.pairing]
    l1, l2 = math.sqrt(g[0][0]), math.sqrt(g[1][1])
    cos = g[0][1] / (l1 * l2)
    sin = math.sqrt(max(0.0, 1 - cos * cos))
    return (1.0, 0.0), (l2 / l1 * cos, l2 / l1 * sin)


def _plane(e, x) -> tuple[float, float]:
    return (float(x[0]) * e[0][0] + float(x[1]) * e[1][0], float(x[0]) * e[0][1] + float(x[1]) * e[1][1])


def _normal_direction(e, beta) -> tuple[float, float]:
    """Plane vector n with n . plane(x) = <beta, x>, normalised."""
    a, b = e[0], e[1]
    det = a[0] * b[1] - a[1] * b[0]
    # solve [a; b] n = beta
    n = ((float(beta[0]) * b[1] - float(beta[1]) * a[1]) / det, (float(beta[1]) * a[0] - float(beta[0]) * b[0]) / det)
    s = math.hypot(*n)
    return n[0] / s, n[1] / s


def _clip(P, bound: Fraction, n_edges: int):
    """Vertices of P inside the box |x_j| <= bound (weight coordinates) in cyclic order,
    plus the clipped edges of the first ``n_edges`` facets."""
    box = tuple(make_facet(v, bound) for v in ((1, 0), (0, 1), (-1, 0), (0, -1)))
    Q = LabeledPolyhedron(P.root_datum, P.facets + box, P.ambient, validate=False)
    faces = Q.faces()
    verts = [f for f in faces if f.dim == 0]
    pts = [f.affine_hull.point for f in verts]
    if not pts:
        return [], []
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    order = sorted(range(len(pts)), key=lambda i: math.atan2(float(pts[i][1] - cy), float(pts[i][0] - cx)))
    polygon = [pts[i] for i in order]
    edges = []
    for k in range(n_edges):
        ends = [f.affine_hull.point for f in verts if k in f.active]
        if len(ends) == 2:
            edges.append((k, ends[0], ends[1]))
    return polygon, edges


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def plot_rank2(rd: RootDatum, polyhedra: Sequence = (), fan: bool = False, width: int = 400, margin: int = 20,
               show_normals: bool = True) -> str:
    if rd.rank != 2:
        raise PlotError(f"plots need a rank-2 root datum, got rank {rd.rank}")
    e = _embedding(rd)
    polys = [P for P in polyhedra if not P.is_empty]
    full = any(P.ambient == FULL for P in polys)
    coords = []
    for P in polys:
        Q = P.as_full_space() if P.ambient == CHAMBER else P
        pts = Q.vertices() or [Q.find_point()]
        coords += [abs(c) for v in pts for c in v]
    bound = max(coords) if coords else Fraction(1)
    bound = Fraction(math.ceil(bound * Fraction(5, 4))) if bound > 0 else Fraction(1)

    clipped = []
    for P in polys:
        if P.ambient == CHAMBER:
            clipped.append((P, *_clip(P.as_full_space(), bound, P.n_facets)))
        else:
            clipped.append((P, *_clip(P, bound, P.n_facets)))

    corners = [(0.0, 0.0), _plane(e, (bound, 0)), _plane(e, (0, bound)), _plane(e, (bound, bound))]
    if full:
        corners += [_plane(e, (s * bound, t * bound)) for s in (-1, 1) for t in (-1, 1)]
    for _, poly, _ in clipped:
        corners += [_plane(e, v) for v in poly]
    xmin, xmax = min(p[0] for p in corners), max(p[0] for p in corners)
    ymin, ymax = min(p[1] for p in corners), max(p[1] for p in corners)
    span = max(xmax - xmin, ymax - ymin, 1e-9)
    scale = (width - 2 * margin) / span
    height = int(math.ceil((ymax - ymin) * scale + 2 * margin))
    unit = 0.06 * span

    def to_svg(p):
        return _fmt(margin + (p[0] - xmin) * scale), _fmt(height - margin - (p[1] - ymin) * scale)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<defs><marker id="head" markerWidth="8" markerHeight="8" refX="6" refY="3" orient="auto">'
        '<path d="M0,0 L6,3 L0,6 z" fill="#222"/></marker></defs>',
    ]
    chamber = [(0.0, 0.0), _plane(e, (bound, 0)), _plane(e, (bound, bound)), _plane(e, (0, bound))]
    pts = " ".join(",".join(to_svg(p)) for p in chamber)
    out.append(f'<polygon class="chamber" points="{pts}" fill="#eeeeee" stroke="none"/>')
    for corner in (chamber[1], chamber[3]):
        x1, y1 = to_svg(chamber[0])
        x2, y2 = to_svg(corner)
        out.append(f'<line class="wall" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#222" stroke-width="3"/>')

    for idx, (P, poly, edges) in enumerate(clipped):
        if len(poly) >= 2:
            pts = " ".join(",".join(to_svg(_plane(e, v))) for v in poly)
            colour = FILLS[idx % len(FILLS)]
            out.append(f'<polygon class="polytope" points="{pts}" fill="{colour}" fill-opacity="0.7" '
                       f'stroke="#08306b" stroke-width="1.5"/>')
        if show_normals:
            for k, a, b in edges:
                f = P.facets[k]
                mid = _plane(e, ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2))
                n = _normal_direction(e, f.beta)
                length = unit * f.label
                tip = (mid[0] + n[0] * length, mid[1] + n[1] * length)
                x1, y1 = to_svg(mid)
                x2, y2 = to_svg(tip)
                out.append(f'<line class="normal" data-label="{f.label}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                           f'stroke="#222" stroke-width="1.2" marker-end="url(#head)"/>')
                out.append(f'<text x="{x2}" y="{y2}" font-size="11" font-family="sans-serif">{f.label}</text>')
        if fan:
            sf = stacky_normal_fan(P)
            for gen, m in sf.rays:
                n = _normal_direction(e, gen)
                tip = (n[0] * unit * m, n[1] * unit * m)
                x1, y1 = to_svg((0.0, 0.0))
                x2, y2 = to_svg(tip)
                out.append(f'<line class="fan-ray" data-multiplicity="{m}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                           f'stroke="#b30000" stroke-width="1.2" marker-end="url(#head)"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def arrow_lengths(svg: str, cls: str = "normal") -> list[float]:
    """Lengths of the arrows of one class in a document produced by plot_rank2."""
    out = []
    for m in re.finditer(rf'class="{cls}"[^>]*x1="([-\d.]+)" y1="([-\d.]+)" x2="([-\d.]+)" y2="([-\d.]+)"', svg):
        x1, y1, x2, y2 = map(float, m.groups())
        out.append(math.hypot(x2 - x1, y2 - y1))
    return out

