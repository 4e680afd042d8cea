"""Deterministic SVG figures: subtree orders, capacity number lines, base
triangles.

Geometry scales affinely from exact rational data; coordinates are emitted
with fixed-point integer rounding so identical inputs give identical bytes.
No timestamps, no dict-iteration nondeterminism.
"""

from __future__ import annotations

import decimal
from fractions import Fraction

from .capacity import QuadraticValue, width
from .lattice import RationalPoint, central_point, vianna_triangle, _primitive
from .markov import MarkovTriple, SubtreeSpec, wedge
from .ordering import find_irregularities, spectrum_rows

#: Versioned layout constants; bump "version" when changing any of them.
STYLE = {
    "version": "1",
    "font": "ui-monospace, monospace",
    "font_size": 12,
    "node_fill": "#f5f5f5",
    "node_stroke": "#333333",
    "edge_stroke": "#555555",
    "order_stroke": "#b22222",
    "tick_colors": ("#1f6fb2", "#b22222", "#2e8540"),
    "cut_stroke": "#888888",
    "cross_stroke": "#b22222",
}


def _fmt(x: Fraction, places: int = 3) -> str:
    """Fixed-point decimal of a rational, via integer rounding."""
    x = Fraction(x)
    scale = 10 ** places
    scaled = x * scale
    n = scaled.numerator // scaled.denominator
    if 2 * (scaled.numerator - n * scaled.denominator) >= scaled.denominator:
        n += 1
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // scale}.{n % scale:0{places}d}"


def _text(x, y, content, anchor="middle", size=None, fill="#000000") -> str:
    size = size or STYLE["font_size"]
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" text-anchor="{anchor}" '
        f'font-family="{STYLE["font"]}" font-size="{size}" '
        f'fill="{fill}">{content}</text>'
    )


def _line(x1, y1, x2, y2, stroke, dash=None, width_=1) -> str:
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return (
        f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
        f'stroke="{stroke}" stroke-width="{width_}"{dash_attr}/>'
    )


def _document(width_px: int, height_px: int, body: list[str]) -> bytes:
    head = (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width_px}" height="{height_px}" '
        f'viewBox="0 0 {width_px} {height_px}" data-style-version="{STYLE["version"]}">'
    )
    return ("\n".join([head, *body, "</svg>"]) + "\n").encode("utf-8")


def figure_subtree(apex: MarkovTriple, depth: int = 3) -> bytes:
    """The subtree preserving the apex maximum, nodes labelled with their
    capacity, dashed arrows tracing the decreasing order."""
    nodes = wedge(SubtreeSpec(apex, apex.a), depth)
    chain = len(nodes) == depth + 1
    width_px, level_h, top = 920, 90, 60
    mid_x = Fraction(width_px, 2)
    positions = [(mid_x, Fraction(top))]
    for i, node in enumerate(nodes[1:]):
        level = i // 2 + 1 if not chain else i + 1
        if chain:
            x = mid_x
        else:
            x = mid_x - 190 if i % 2 == 0 else mid_x + 190
        positions.append((x, Fraction(top + level_h * level)))
    body = []
    for i in range(1, len(nodes)):
        if chain:
            parent = i - 1
        else:
            parent = 0 if i <= 2 else i - 2
        body.append(_line(*positions[parent], *positions[i], STYLE["edge_stroke"]))
    for i in range(len(nodes) - 1):
        (x1, y1), (x2, y2) = positions[i], positions[i + 1]
        body.append(
            _line(x1, y1 + 8, x2, y2 - 8, STYLE["order_stroke"], dash="5,4")
        )
    for (x, y), node in zip(positions, nodes):
        w = width(node.triple)
        body.append(_text(x, y - 6, str(node.triple)))
        body.append(
            _text(x, y + 12, f"w = {w} = {_fmt(w, 4)}", size=11, fill="#444444")
        )
    height_px = top + level_h * depth + 60
    return _document(width_px, height_px, body)


def _approx(value) -> Fraction:
    """Rational stand-in for layout only (40 correct digits)."""
    if isinstance(value, QuadraticValue):
        if value.is_rational:
            return value.as_fraction()
        return Fraction(decimal.Decimal(value.decimal(40)))
    return Fraction(value)


def figure_numberline(n: int, k: int = 3) -> bytes:
    """Clustered capacity sequences around an irregularity at index n.

    Shows sequences n-1 .. n+span as ticks on one axis; the leading capacity
    of the higher sequence (the swapped one) is highlighted.
    """
    records = {rec.n: rec for rec in find_irregularities(n + 2)}
    if n not in records:
        raise ValueError(f"no irregularity at n={n}")
    rec = records[n]
    indices = list(range(n - 1, n + rec.span + 1))
    rows = {row.n: row for row in spectrum_rows(n + rec.span, k)}
    seqs = [rows[i] for i in indices]
    values: list[Fraction] = []
    for row in seqs:
        values.extend(_approx(w) for w in row.first_capacities)
        values.append(_approx(row.limit))
    lo, hi = min(values), max(values)
    pad = (hi - lo) / 12
    lo, hi = lo - pad, hi + pad
    width_px, height_px, margin = 960, 240, 50
    axis_y = 120

    def xpos(v: Fraction) -> Fraction:
        return margin + (v - lo) / (hi - lo) * (width_px - 2 * margin)

    body = [
        _line(margin - 20, axis_y, width_px - margin + 20, axis_y, "#000000"),
        _text(width_px - margin + 20, axis_y + 18, "R", anchor="end"),
        _text(
            Fraction(width_px, 2),
            30,
            f"sequences {indices[0]}..{indices[-1]}: leading capacity of "
            f"sequence {rec.n_prime} moves ahead of sequence {rec.n}",
            size=13,
        ),
    ]
    for color_idx, row in enumerate(seqs):
        color = STYLE["tick_colors"][color_idx % len(STYLE["tick_colors"])]
        label_y = axis_y + 40 + 18 * color_idx
        body.append(_text(margin, label_y, f"w(ess {row.n}), m = {row.m}",
                          anchor="start", size=11, fill=color))
        for j, w in enumerate(row.first_capacities):
            x = xpos(_approx(w))
            swapped = row.n == rec.n_prime and j == 0
            tick = 26 if swapped else 16
            body.append(_line(x, axis_y - tick, x, axis_y, color,
                              width_=2 if swapped else 1))
            if swapped:
                body.append(_text(x, axis_y - tick - 6, f"w1({row.n}) swapped",
                                  size=11, fill=STYLE["order_stroke"]))
        x = xpos(_approx(row.limit))
        body.append(_line(x, axis_y, x, axis_y + 10, color, dash="2,2"))
    return _document(width_px, height_px, body)


def figure_triangle(triple: MarkovTriple, delta: Fraction = Fraction(1, 4)) -> bytes:
    """Base triangle with cut segments from each vertex toward the central
    point and a cross at affine distance delta along each segment."""
    delta = Fraction(delta)
    if not 0 < delta < Fraction(1, 3):
        raise ValueError("delta must lie strictly between 0 and 1/3")
    tri = vianna_triangle(triple)
    center = central_point(tri)
    pts = list(tri.vertices)
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    width_px, height_px, margin = 720, 420, 60
    span_x = hi_x - lo_x
    span_y = hi_y - lo_y if hi_y > lo_y else Fraction(1)
    scale = min(
        Fraction(width_px - 2 * margin) / span_x,
        Fraction(height_px - 2 * margin) / span_y,
    )

    def place(p: RationalPoint) -> tuple[Fraction, Fraction]:
        return (
            margin + (p.x - lo_x) * scale,
            height_px - margin - (p.y - lo_y) * scale,
        )

    body = []
    ring = pts + [pts[0]]
    for p, q in zip(ring, ring[1:]):
        body.append(_line(*place(p), *place(q), "#000000", width_=2))
    for vertex in pts:
        body.append(_line(*place(vertex), *place(center), STYLE["cut_stroke"],
                          dash="6,5"))
        dx, dy, _ = _primitive(center.x - vertex.x, center.y - vertex.y)
        cross = RationalPoint(vertex.x + delta * dx, vertex.y + delta * dy)
        cx, cy = place(cross)
        arm = 5
        body.append(_line(cx - arm, cy - arm, cx + arm, cy + arm,
                          STYLE["cross_stroke"], width_=2))
        body.append(_line(cx - arm, cy + arm, cx + arm, cy - arm,
                          STYLE["cross_stroke"], width_=2))
    cx, cy = place(center)
    body.append(f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3" fill="#000000"/>')
    body.append(_text(cx + 10, cy - 8, f"({center.x}, {center.y})",
                      anchor="start", size=11))
    body.append(_text(Fraction(width_px, 2), height_px - 18,
                      f"base triangle of {triple}, cut length delta = {delta}",
                      size=13))
    return _document(width_px, height_px, body)
