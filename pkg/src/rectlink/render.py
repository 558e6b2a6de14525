"""Deterministic SVG rendering of instances and solution paths.

The output is plain SVG 1.1 text, byte-identical for identical inputs:
obstacles are filled light gray, their bounding boxes dashed, terminals
and the witness path stroked on top.  Screen y grows downward, so every
y coordinate is flipped about the viewport.
"""
from __future__ import annotations

from .geometry import Rect
from .model import Instance, POINT, SEGMENT

_MARGIN = 20
_SCALE = 4

_STYLE = (
    'fill="#d9d9d9" stroke="#8c8c8c" stroke-width="0.6"',          # obstacle
    'fill="none" stroke="#b0b0b0" stroke-width="0.4" stroke-dasharray="3,2"',
    'fill="none" stroke="#d62728" stroke-width="1.4"',             # path
    'stroke="#1f77b4" stroke-width="1.6"',                         # terminal
)


def _bounds(instance: Instance, pts) -> Rect:
    xs, ys = instance.all_coords()
    if pts:
        xs = set(xs) | {p[0] for p in pts}
        ys = set(ys) | {p[1] for p in pts}
    if not xs:
        return Rect(0, 0, 10, 10)
    return Rect(min(xs), min(ys), max(max(xs), min(xs) + 1), max(max(ys), min(ys) + 1))


class _Canvas:
    def __init__(self, world: Rect):
        self.world = world
        self.w = (world.xhi - world.xlo) * _SCALE + 2 * _MARGIN
        self.h = (world.yhi - world.ylo) * _SCALE + 2 * _MARGIN
        self.lines: list[str] = []

    def pt(self, p) -> tuple[float, float]:
        x = _MARGIN + (p[0] - self.world.xlo) * _SCALE
        y = self.h - (_MARGIN + (p[1] - self.world.ylo) * _SCALE)
        return x, y

    def poly(self, pts, style: str, closed: bool) -> None:
        coords = " ".join("%g,%g" % self.pt(p) for p in pts)
        tag = "polygon" if closed else "polyline"
        self.lines.append(f'<{tag} points="{coords}" {style} />')

    def rect(self, r: Rect, style: str) -> None:
        x, y = self.pt((r.xlo, r.yhi))
        w = (r.xhi - r.xlo) * _SCALE
        h = (r.yhi - r.ylo) * _SCALE
        self.lines.append(f'<rect x="{x:g}" y="{y:g}" width="{w:g}" height="{h:g}" {style} />')

    def dot(self, p, style: str) -> None:
        x, y = self.pt(p)
        self.lines.append(f'<circle cx="{x:g}" cy="{y:g}" r="2.2" {style} />')

    def text(self, p, s: str) -> None:
        x, y = self.pt(p)
        self.lines.append(
            f'<text x="{x:g}" y="{y - 6:g}" font-family="monospace" font-size="10">{s}</text>'
        )

    def document(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{self.w:g}" height="{self.h:g}" '
            f'viewBox="0 0 {self.w:g} {self.h:g}">'
        )
        frame = (
            f'<rect x="0.5" y="0.5" width="{self.w - 1:g}" height="{self.h - 1:g}" '
            'fill="white" stroke="#404040" stroke-width="1" />'
        )
        return "\n".join([head, frame, *self.lines, "</svg>"]) + "\n"


def _draw_terminal(cv: _Canvas, term, style: str) -> None:
    if term.kind == POINT:
        cv.dot(term.point, style + ' fill="#1f77b4"')
    elif term.kind == SEGMENT:
        cv.poly((term.segment.p, term.segment.q), style + ' fill="none"', closed=False)
    else:
        cv.poly(term.polygon.vertices, style + ' fill="none"', closed=True)


def render(instance: Instance, result=None) -> str:
    """SVG document for an instance, optionally with a solved path.

    ``result`` may be anything carrying ``path`` (a PathResult or None)
    and ``links``, e.g. a SolveReport or OracleAnswer.
    """
    path = getattr(result, "path", None)
    pts = list(getattr(path, "points", path)) if path is not None else []
    cv = _Canvas(_bounds(instance, pts))
    ob_style, box_style, path_style, term_style = _STYLE
    for poly in instance.obstacles:
        cv.rect(poly.bbox, box_style)
    for poly in instance.obstacles:
        cv.poly(poly.vertices, ob_style, closed=True)
    _draw_terminal(cv, instance.source, term_style)
    _draw_terminal(cv, instance.target, term_style)
    if len(pts) > 1:
        cv.poly(pts, path_style, closed=False)
    if pts:
        cv.dot(pts[0], 'fill="#d62728"')
        cv.dot(pts[-1], 'fill="#d62728"')
        cv.text(pts[-1], f"links={result.links}")
    return cv.document()
