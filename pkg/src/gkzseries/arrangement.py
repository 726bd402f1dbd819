"""Deterministic SVG rendering of the coordinate hyperplane arrangement.

For an exponent v and the kernel basis, the plane (or line) of Gale
coordinates is cut by one hyperplane per integer position of v; the open
faces are labeled with the negative support they realize. Everything is
computed over exact rationals and formatted with a fixed decimal rule, so
equal inputs always give byte-identical output.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputValidationError
from .exponents import integer_positions
from .linalg import LatticeBasis, Vec, as_vec, dot
from .polyhedra import Constraint, interior_point, is_empty

_ZERO = Fraction(0)
_UNIT = 36
_MARGIN = 48


def _fmt(q) -> str:
    """Fixed-point format with three decimals, exact ties rounded half-even."""
    f = Fraction(q)
    scaled = round(f * 1000)
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 1000)
    if frac == 0:
        return f"{sign}{whole}"
    text = f"{frac:03d}".rstrip("0")
    return f"{sign}{whole}.{text}"


def _support_label(support: frozenset[int]) -> str:
    if not support:
        return "∅"
    return "{" + ",".join(str(i + 1) for i in sorted(support)) + "}"


def render_arrangement(v: Sequence, basis: LatticeBasis, window: int) -> str:
    """SVG 1.1 document for the arrangement; one or two free directions."""
    if basis.k == 2:
        return _render_plane(as_vec(v), basis, window)
    if basis.k == 1:
        return _render_line(as_vec(v), basis, window)
    raise InputValidationError(
        "arrangement rendering needs one or two free directions, "
        f"found {basis.k}")


def _px(x: Fraction, window: int) -> Fraction:
    return _MARGIN + (x + window) * _UNIT


def _py(y: Fraction, window: int) -> Fraction:
    return _MARGIN + (window - y) * _UNIT


def _clip_line_to_window(g: Vec, c: Fraction, window: int
                         ) -> Optional[tuple[Vec, Vec]]:
    """Endpoints of {x : g.x + c = 0} within the window square, or None."""
    w = Fraction(window)
    candidates: list[Vec] = []
    gx, gy = g
    for edge_value in (-w, w):
        if gy != 0:
            # intersect with vertical line x1 = edge_value
            y = (-c - gx * edge_value) / gy
            if -w <= y <= w:
                candidates.append((edge_value, y))
        if gx != 0:
            x = (-c - gy * edge_value) / gx
            if -w <= x <= w:
                candidates.append((x, edge_value))
    unique = sorted(set(candidates))
    if len(unique) < 2:
        return None
    return unique[0], unique[-1]


def _render_plane(v: Vec, basis: LatticeBasis, window: int) -> str:
    w = window
    size = 2 * _MARGIN + 2 * w * _UNIT
    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">')
    parts.append('<defs><marker id="arrow" markerWidth="8" markerHeight="8" '
                 'refX="6" refY="3" orient="auto">'
                 '<path d="M0,0 L6,3 L0,6 z" fill="#444444"/></marker></defs>')
    parts.append(f'<rect width="{size}" height="{size}" fill="#ffffff"/>')

    # lattice grid
    for x1 in range(-w, w + 1):
        for x2 in range(-w, w + 1):
            cx, cy = _px(Fraction(x1), w), _py(Fraction(x2), w)
            fill = "#bbbbbb" if (x1, x2) != (0, 0) else "#222222"
            parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="2" '
                         f'fill="{fill}"/>')

    # axes
    parts.append(f'<line x1="{_fmt(_px(Fraction(-w), w))}" '
                 f'y1="{_fmt(_py(_ZERO, w))}" '
                 f'x2="{_fmt(_px(Fraction(w), w))}" '
                 f'y2="{_fmt(_py(_ZERO, w))}" '
                 'stroke="#dddddd" stroke-width="1"/>')
    parts.append(f'<line x1="{_fmt(_px(_ZERO, w))}" '
                 f'y1="{_fmt(_py(Fraction(-w), w))}" '
                 f'x2="{_fmt(_px(_ZERO, w))}" '
                 f'y2="{_fmt(_py(Fraction(w), w))}" '
                 'stroke="#dddddd" stroke-width="1"/>')

    positions = sorted(integer_positions(v))
    # hyperplanes with inward normals toward the negative side flipped out
    for i in positions:
        g = as_vec(basis.rows[i])
        if all(c == 0 for c in g):
            continue
        seg = _clip_line_to_window(g, v[i], w)
        if seg is None:
            continue
        (x1, y1), (x2, y2) = seg
        parts.append(
            f'<line x1="{_fmt(_px(x1, w))}" y1="{_fmt(_py(y1, w))}" '
            f'x2="{_fmt(_px(x2, w))}" y2="{_fmt(_py(y2, w))}" '
            'stroke="#2255aa" stroke-width="1.5"/>')
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        scale = max(abs(g[0]), abs(g[1]))
        dx, dy = g[0] / scale * Fraction(2, 5), g[1] / scale * Fraction(2, 5)
        parts.append(
            f'<line x1="{_fmt(_px(mx, w))}" y1="{_fmt(_py(my, w))}" '
            f'x2="{_fmt(_px(mx + dx, w))}" y2="{_fmt(_py(my + dy, w))}" '
            'stroke="#444444" stroke-width="1" marker-end="url(#arrow)"/>')
        lx, ly = _px(x2, w), _py(y2, w)
        parts.append(f'<text x="{_fmt(lx + 4)}" y="{_fmt(ly - 4)}" '
                     f'font-family="monospace" font-size="12" '
                     f'fill="#2255aa">H{i + 1}</text>')

    # face labels at interior points of the open sign regions
    margin_inset = Fraction(1, 2)
    found_faces: list[tuple[frozenset[int], Vec]] = []
    for mask in range(1 << len(positions)):
        support = frozenset(positions[t] for t in range(len(positions))
                            if mask >> t & 1)
        cons: list[Constraint] = []
        for i in positions:
            g = as_vec(basis.rows[i])
            if i in support:
                cons.append(Constraint(g, -v[i], strict=True))
            else:
                cons.append(Constraint(tuple(-c for c in g), v[i], strict=True))
        bound = Fraction(w) - margin_inset
        for axis in range(2):
            e = [_ZERO, _ZERO]
            e[axis] = Fraction(1)
            cons.append(Constraint(tuple(e), bound))
            e2 = [_ZERO, _ZERO]
            e2[axis] = Fraction(-1)
            cons.append(Constraint(tuple(e2), bound))
        if is_empty(cons, 2):
            continue
        point = interior_point(cons, 2)
        if point is None:
            continue
        found_faces.append((support, point))
    for support, point in found_faces:
        parts.append(
            f'<text x="{_fmt(_px(point[0], w))}" y="{_fmt(_py(point[1], w))}" '
            'font-family="monospace" font-size="13" text-anchor="middle" '
            f'fill="#aa3322">{_support_label(support)}</text>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _render_line(v: Vec, basis: LatticeBasis, window: int) -> str:
    w = window
    width = 2 * _MARGIN + 2 * w * _UNIT
    height = 2 * _MARGIN + 2 * _UNIT
    mid = Fraction(height, 2)
    parts: list[str] = []
    parts.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">')
    parts.append(f'<rect width="{width}" height="{height}" fill="#ffffff"/>')
    parts.append(f'<line x1="{_fmt(_px(Fraction(-w), w))}" y1="{_fmt(mid)}" '
                 f'x2="{_fmt(_px(Fraction(w), w))}" y2="{_fmt(mid)}" '
                 'stroke="#444444" stroke-width="1.5"/>')
    for x in range(-w, w + 1):
        cx = _px(Fraction(x), w)
        parts.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(mid)}" r="2" '
                     f'fill="{"#222222" if x == 0 else "#bbbbbb"}"/>')
    positions = sorted(integer_positions(v))
    breakpoints: list[tuple[Fraction, int]] = []
    for i in positions:
        g = basis.rows[i][0]
        if g == 0:
            continue
        root = Fraction(-v[i], g)
        breakpoints.append((root, i))
        if -w <= root <= w:
            cx = _px(root, w)
            parts.append(f'<line x1="{_fmt(cx)}" y1="{_fmt(mid - 14)}" '
                         f'x2="{_fmt(cx)}" y2="{_fmt(mid + 14)}" '
                         'stroke="#2255aa" stroke-width="1.5"/>')
            parts.append(f'<text x="{_fmt(cx + 3)}" y="{_fmt(mid - 18)}" '
                         'font-family="monospace" font-size="12" '
                         f'fill="#2255aa">H{i + 1}</text>')
    cuts = sorted(set([Fraction(-w)] +
                      [r for r, _ in breakpoints if -w < r < w] +
                      [Fraction(w)]))
    for a, b in zip(cuts, cuts[1:]):
        if a == b:
            continue
        sample = (a + b) / 2
        support = frozenset(
            i for i in positions
            if basis.rows[i][0] * sample + v[i] < 0)
        cx = _px(sample, w)
        parts.append(f'<text x="{_fmt(cx)}" y="{_fmt(mid + 30)}" '
                     'font-family="monospace" font-size="13" '
                     'text-anchor="middle" '
                     f'fill="#aa3322">{_support_label(support)}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
