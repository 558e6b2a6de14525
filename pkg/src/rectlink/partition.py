"""Monotone path tracing, case classification and staircase regions.

Everything here works on a ``World`` of orthogonally convex obstacles (the
hulls of the input obstacles).  The canonical tracer follows the extreme
x-monotone, weakly-rising path from a start point: ride east, and whenever an
obstacle blocks the way, climb its west flank to the left end of its top side
and resume.  Hits below the obstacle's west side cannot be passed monotonely
along the boundary, so the path turns up at the bounding-box west wall
instead.  All eight extreme paths and both staircase-region chains are this
one tracer conjugated by signed axis permutations.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .geometry import (
    FLIP_X,
    FLIP_XY,
    IDENTITY,
    SWAP,
    GeometryError,
    Point,
    Rect,
    RectPolygon,
    Xform,
    rectilinear_convex_hull,
)

INF = float("inf")

# frames mapping each (primary, sidestep) direction pair onto (+x, +y)
FRAME_RU = IDENTITY                    # east, clear north
FRAME_RD = Xform(1, 0, 0, -1)          # east, clear south
FRAME_LU = Xform(-1, 0, 0, 1)          # west, clear north
FRAME_LD = FLIP_XY                     # west, clear south
FRAME_UR = SWAP                        # north, clear east
FRAME_UL = Xform(0, 1, -1, 0)          # north, clear west
FRAME_DR = Xform(0, -1, 1, 0)          # south, clear east
FRAME_DL = Xform(0, -1, -1, 0)         # south, clear west

TRACE_FRAMES = {
    "ru": FRAME_RU, "rd": FRAME_RD, "lu": FRAME_LU, "ld": FRAME_LD,
    "ur": FRAME_UR, "ul": FRAME_UL, "dr": FRAME_DR, "dl": FRAME_DL,
}


@dataclass
class _FramePoly:
    """One obstacle as seen in a trace frame, with its climb chain ready."""

    poly: RectPolygon
    box: Rect
    west_lo: int          # y-range of the vertical edge on the box west wall
    west_hi: int
    hug: list[Point]      # west-side bottom up to the left end of the top side
    east_horiz: frozenset[Point] = frozenset()  # west ends of horizontal edges
    hug_xs: frozenset[int] = frozenset()        # x of vertical steps in hug

    @property
    def top_left(self) -> Point:
        return self.hug[-1]


def _west_side(poly: RectPolygon) -> tuple[int, int]:
    box = poly.bbox
    for e in poly.vertical_edges():
        if e.p[0] == box.xlo:
            lo, hi = sorted((e.p[1], e.q[1]))
            return lo, hi
    raise GeometryError("polygon does not touch the west wall of its box")


def _build_hug(poly: RectPolygon) -> list[Point]:
    """Boundary corners from the west-side bottom to the top side's left end.

    Valid for orthogonally convex polygons, whose upper-left boundary is a
    staircase rising to the east.
    """
    box = poly.bbox
    wlo, whi = _west_side(poly)
    verts = list(poly.vertices)
    n = len(verts)
    start = verts.index((box.xlo, wlo))
    # walk towards (box.xlo, whi) first; ring orientation decides the step
    step = 1 if verts[(start + 1) % n] == (box.xlo, whi) else -1
    chain = [(box.xlo, wlo)]
    i = start
    while chain[-1][1] < box.yhi:
        i = (i + step) % n
        chain.append(verts[i])
    # chain now ends at the first vertex on the top wall: the top side's
    # left end, since the staircase rises monotonely
    return chain


class World:
    """Obstacle hulls plus cached per-frame trace structures."""

    def __init__(self, hulls: Sequence[RectPolygon]):
        self.hulls = tuple(hulls)
        self._frames: dict[Xform, list[_FramePoly]] = {}

    @classmethod
    def from_obstacles(cls, obstacles: Sequence[RectPolygon]) -> "World":
        return cls([rectilinear_convex_hull(ob) for ob in obstacles])

    def frame(self, t: Xform) -> list[_FramePoly]:
        got = self._frames.get(t)
        if got is None:
            got = []
            for h in self.hulls:
                p = h.transform(t)
                wlo, whi = _west_side(p)
                hug = _build_hug(p)
                east_horiz = frozenset(
                    min((e.p, e.q)) for e in p.horizontal_edges())
                hug_xs = frozenset(a[0] for a, b in zip(hug, hug[1:])
                                   if a[0] == b[0])
                got.append(_FramePoly(p, p.bbox, wlo, whi, hug,
                                      east_horiz, hug_xs))
            self._frames[t] = got
        return got


@dataclass
class Trace:
    """An extreme monotone curve in frame coordinates."""

    points: list[Point]
    touched: list[int]     # indices of obstacles the curve climbed


def _west_facing(e) -> bool:
    # vertices are normalised counterclockwise, so edges with the interior
    # on their east (west-facing boundary) run downwards
    return e.q[1] < e.p[1]


def _first_block(polys: list[_FramePoly], cur: Point, x_stop: int) -> Optional[tuple[int, int]]:
    """Nearest obstacle whose west flank blocks the eastward ray from cur.

    Returns (obstacle index, x of the blocking crossing) or None.  A ray
    grazing an edge endpoint still passes when a boundary edge continues
    east from that corner (the ray rides it; obstacles are open), and
    blocks otherwise.
    """
    cx, cy = cur
    best: Optional[tuple[int, int]] = None
    for i, fp in enumerate(polys):
        if fp.box.xhi <= cx or fp.box.ylo >= cy or fp.box.yhi <= cy:
            continue
        for e in fp.poly.vertical_edges():
            if not _west_facing(e):
                continue
            lo, hi = e.q[1], e.p[1]
            x = e.p[0]
            if lo <= cy <= hi and cx < x < x_stop \
                    and (x, cy) not in fp.east_horiz:
                if best is None or x < best[1]:
                    best = (i, x)
    return best


def _standing_block(polys: list[_FramePoly], cur: Point) -> Optional[int]:
    """Obstacle whose west flank passes through cur with interior just east."""
    cx, cy = cur
    for i, fp in enumerate(polys):
        if not (fp.box.xlo <= cx < fp.box.xhi and fp.box.ylo < cy < fp.box.yhi):
            continue
        for e in fp.poly.vertical_edges():
            if not _west_facing(e):
                continue
            lo, hi = e.q[1], e.p[1]
            if e.p[0] == cx and lo <= cy <= hi \
                    and (cx, cy) not in fp.east_horiz:
                return i
    return None


def trace_ru(polys: list[_FramePoly], start: Point, x_stop: int) -> Trace:
    """Extreme weakly-rising x-monotone curve from start to the x_stop wall."""
    pts: list[Point] = [start]
    touched: list[int] = []
    cur = start
    guard = 4 * len(polys) + 8
    while cur[0] < x_stop and guard:
        guard -= 1
        idx = _standing_block(polys, cur)
        via: Optional[Point] = None
        if idx is None:
            blk = _first_block(polys, cur, x_stop)
            if blk is None:
                break
            idx, bx = blk
            fp = polys[idx]
            if bx not in fp.hug_xs:
                # hit the descending lower-left staircase: no monotone
                # passage hugs the boundary there, so rise along the box
                # west wall instead
                via = (fp.box.xlo, cur[1])
            else:
                via = (bx, cur[1])
        fp = polys[idx]
        if via is None and cur[0] not in fp.hug_xs:
            # standing against the lower-left staircase: nothing weakly
            # rising and x-monotone leaves such a point
            raise GeometryError("trace stands against an impassable flank")
        if via is not None and via != cur:
            pts.append(via)
            cur = via
        touched.append(idx)
        for p in fp.hug:
            if p[1] > cur[1] or (p[1] == cur[1] and p[0] > cur[0]):
                pts.append(p)
        cur = pts[-1]
    if not guard:
        raise GeometryError("trace failed to make progress")
    if cur[0] < x_stop:
        pts.append((x_stop, cur[1]))
    return Trace(pts, touched)


def trace_path(world: World, mode: str, start: Point, stop: Point) -> Trace:
    """One of the eight extreme monotone paths, in world coordinates.

    The trace runs until the primary coordinate reaches the matching
    coordinate of ``stop``.
    """
    f = TRACE_FRAMES[mode]
    fstart = f.apply(start)
    fstop = f.apply(stop)[0]
    t = trace_ru(world.frame(f), fstart, fstop)
    inv = f.inverse()
    return Trace([inv.apply(p) for p in t.points], t.touched)


# ---------------------------------------------------------------------------
# step-function views of traces

class StepCurve:
    """Monotone staircase as a queryable step function of x."""

    def __init__(self, points: Sequence[Point]):
        self.points = sorted(points)
        self.xs = [p[0] for p in self.points]

    def max_y_at(self, x: int) -> float:
        """Largest y among points with x' <= x (-inf if none)."""
        i = bisect.bisect_right(self.xs, x)
        return max((p[1] for p in self.points[:i]), default=-INF)

    def min_y_from(self, x: int) -> float:
        """Smallest y among points with x' >= x (+inf if none)."""
        i = bisect.bisect_left(self.xs, x)
        return min((p[1] for p in self.points[i:]), default=INF)


def _jump_xs(curve_points: Sequence[Point]) -> list[int]:
    """x positions of the vertical runs of a polyline."""
    out = []
    for a, b in zip(curve_points, curve_points[1:]):
        if a[0] == b[0] and a[1] != b[1]:
            out.append(a[0])
    return sorted(set(out))


# ---------------------------------------------------------------------------
# classification

def classify(world: World, s: Point, t: Point) -> tuple[str, Xform]:
    """Which monotonicity case the pair falls into.

    Returns ("same", I), ("xy", f) or ("x", f): applying f maps the pair so
    that t is weakly north-east of s (xy) or so that every shortest path is
    x-monotone eastward (x).
    """
    dx, dy = t[0] - s[0], t[1] - s[1]
    if dx == 0 and dy == 0:
        return ("same", IDENTITY)
    if dx >= 0:
        q = IDENTITY if dy >= 0 else Xform(1, 0, 0, -1)
    else:
        q = FLIP_X if dy >= 0 else FLIP_XY
    sq, tq = q.apply(s), q.apply(t)

    ru = trace_ru(world.frame(q), sq, tq[0])
    if tq[1] < StepCurve(ru.points).max_y_at(tq[0]):
        return ("x", q)

    g = q.then(SWAP)
    ur = trace_ru(world.frame(g), g.apply(s), g.apply(t)[0])
    if g.apply(t)[1] < StepCurve(ur.points).max_y_at(g.apply(t)[0]):
        # y-monotone: swap axes to express it as an eastward x-case
        return ("x", g)
    return ("xy", q)


# ---------------------------------------------------------------------------
# staircase regions and sweep events

@dataclass(frozen=True)
class Event:
    """One sweep event.  Ranges are inclusive baseline index pairs."""

    x: int
    kind: str
    src: Optional[tuple[int, int]] = None          # climb sources
    assign: Optional[tuple[int, int]] = None       # activate with v + 2
    assign_inf: Optional[tuple[int, int]] = None   # activate unreachable
    chmin: Optional[tuple[int, int]] = None        # fold v + 2 into actives
    deactivate: Optional[tuple[int, int]] = None
    eid: int = -1


@dataclass
class StaircaseRegion:
    """Everything the baseline sweep needs, in canonical frame coordinates."""

    frame: Xform
    s: Point                      # frame coordinates
    t: Point
    baselines: list[int]          # ascending ys; first is y(s), last y(t)
    events: list[Event]           # sorted by x; first is the originate
    originate_top: int            # top baseline index of the initial climb
    nw_chain: list[Point]
    se_chain: list[Point]
    holes: list[int]              # world obstacle indices strictly inside

    @property
    def m(self) -> int:
        return len(self.baselines)


def _staircase_of(fn_changes: list[tuple[int, int]], x0: int, x1: int, y0: int) -> list[Point]:
    """Polyline of a non-decreasing step function given its jumps."""
    pts: list[Point] = [(x0, y0)]
    y = y0
    for x, ny in fn_changes:
        if ny == y:
            continue
        pts.append((x, y))
        pts.append((x, ny))
        y = ny
    pts.append((x1, y))
    # drop zero-length lead-in/outs
    out = [pts[0]]
    for p in pts[1:]:
        if p != out[-1]:
            out.append(p)
    return out


def _hole_sections(world: World, frame: Xform, holes: list[int], x: int,
                   skip: Optional[int] = None) -> list[tuple[int, int]]:
    """Open y-intervals of hole interiors crossing the vertical line x."""
    out = []
    for hi in holes:
        if hi == skip:
            continue
        p = world.hulls[hi].transform(frame)
        box = p.bbox
        if not (box.xlo < x < box.xhi):
            continue
        ys = [e.p[1] for e in p.horizontal_edges()
              if min(e.p[0], e.q[0]) <= x <= max(e.p[0], e.q[0])]
        out.append((min(ys), max(ys)))
    return out


def build_staircase_region(world: World, frame: Xform, s: Point, t: Point) -> StaircaseRegion:
    """Staircase region of an xy-monotone pair, with its sweep events.

    ``s`` and ``t`` are world points; the pair must classify as ("xy", frame).
    """
    sq, tq = frame.apply(s), frame.apply(t)
    sx, sy = sq
    tx, ty = tq

    def sub(mode: str, start: Point, stop: Point) -> Trace:
        g = TRACE_FRAMES[mode]
        total = frame.then(g)
        tr = trace_ru(world.frame(total), total.apply(start), total.apply(stop)[0])
        inv = g.inverse()
        return Trace([inv.apply(p) for p in tr.points], tr.touched)

    ur = sub("ur", s, t)
    ld = sub("ld", t, s)
    ru = sub("ru", s, t)
    dl = sub("dl", t, s)

    upper_s = StepCurve(ur.points)
    upper_t = StepCurve(ld.points)
    lower_s = StepCurve(ru.points)
    lower_t = StepCurve(dl.points)

    # the curves traced out of t run westward, so the value of one of their
    # vertical runs belongs to its west side; evaluate just east of x to get
    # the bound that holds on the column (x, x + 1)
    def top(x: int) -> int:
        return int(min(upper_s.max_y_at(x), upper_t.min_y_from(x + 1), ty))

    def top_w(x: int) -> int:
        return int(min(upper_s.max_y_at(x - 1), upper_t.min_y_from(x), ty))

    def bottom(x: int) -> int:
        return int(max(lower_s.max_y_at(x), lower_t.min_y_from(x + 1), sy))

    def bottom_w(x: int) -> int:
        return int(max(lower_s.max_y_at(x - 1), lower_t.min_y_from(x), sy))

    touched = set(ur.touched) | set(ld.touched) | set(ru.touched) | set(dl.touched)
    # frame-local indices map onto world hull indices 1:1 (same ordering)
    holes: list[int] = []
    for i, hull in enumerate(world.hulls):
        if i in touched:
            continue
        hp = hull.transform(frame)
        bx = hp.bbox
        if not (sx < bx.xlo and bx.xhi < tx and sy < bx.ylo and bx.yhi < ty):
            continue
        vx, vy = hp.vertices[0]
        if bottom(vx) < vy < top(vx):
            holes.append(i)

    ys = {sy, ty}
    # traces can overshoot the strip (the final hug keeps going past x_stop),
    # and outside [sx, tx) the opposite curve has no points, so the envelope
    # reads come back infinite; clamp the jump lists before using them
    top_jumps = sorted(x for x in set(_jump_xs(ur.points) + _jump_xs(ld.points))
                       if sx <= x < tx)
    bot_jumps = sorted(x for x in set(_jump_xs(ru.points) + _jump_xs(dl.points))
                       if sx <= x < tx)
    for x in top_jumps:
        ys.add(top(x))
        if x > sx:
            ys.add(top_w(x))
    for x in bot_jumps:
        ys.add(bottom(x))
        if x > sx:
            ys.add(bottom_w(x))
    for hi in holes:
        for e in world.hulls[hi].transform(frame).horizontal_edges():
            ys.add(e.p[1])
    baselines = sorted(y for y in ys if sy <= y <= ty)
    idx = {y: i for i, y in enumerate(baselines)}
    m = len(baselines)

    def low_src(x: int, y_ref: int, skip: Optional[int]) -> int:
        blocked = _hole_sections(world, frame, holes, x, skip)
        t_star = max((hi2 for (lo2, hi2) in blocked if hi2 <= y_ref), default=None)
        if t_star is None:
            return 0
        return bisect.bisect_left(baselines, t_star)

    def high_dst(x: int, y_ref: int, skip: Optional[int]) -> int:
        blocked = _hole_sections(world, frame, holes, x, skip)
        b_star = min((lo2 for (lo2, hi2) in blocked if lo2 >= y_ref), default=None)
        if b_star is None:
            return m - 1
        return bisect.bisect_right(baselines, b_star) - 1

    events: list[Event] = []
    originate_top = idx[top(sx)]
    events.append(Event(x=sx, kind="originate", assign=(0, originate_top)))
    # a hull wall can sit exactly on the source column; the bottom envelope
    # then rises at sx itself and everything below it is dead past the
    # originate climb
    first_bottom = bottom(sx)
    if first_bottom > sy:
        events.append(Event(x=sx, kind="detach",
                            deactivate=(0, idx[first_bottom] - 1)))

    for x in top_jumps:
        if x == sx:
            continue
        y1, y2 = top_w(x), top(x)
        if y1 == y2:
            continue
        events.append(Event(
            x=x, kind="attach",
            src=(low_src(x, y1, None), idx[y1]),
            assign=(idx[y1] + 1, idx[y2]),
        ))
    for x in bot_jumps:
        if x <= sx:
            continue  # the climb into t is the terminate readout, not an event
        y1, y2 = bottom_w(x), bottom(x)
        if y1 == y2:
            continue
        events.append(Event(
            x=x, kind="detach",
            src=(max(idx[y1], low_src(x, y2, None)), idx[y2] - 1),
            chmin=(idx[y2], high_dst(x, y2, None)),
            deactivate=(idx[y1], idx[y2] - 1),
        ))

    for hi in holes:
        hp = world.hulls[hi].transform(frame)
        box = hp.bbox
        wlo, whi = _west_side(hp)
        east = [e for e in hp.vertical_edges() if e.p[0] == box.xhi][0]
        elo, ehi = sorted((east.p[1], east.q[1]))
        for e in hp.vertical_edges():
            x = e.p[0]
            lo, hi2 = sorted((e.p[1], e.q[1]))
            if _west_facing(e):
                if x == box.xlo:
                    events.append(Event(
                        x=x, kind="split",
                        src=(low_src(x, wlo, hi), idx[whi] - 1),
                        chmin=(idx[whi], high_dst(x, whi, hi)),
                        deactivate=(idx[wlo] + 1, idx[whi] - 1),
                    ))
                elif lo >= whi:      # upper-left staircase: the top rises
                    events.append(Event(
                        x=x, kind="nw_step",
                        src=(idx[lo], idx[hi2] - 1),
                        chmin=(idx[hi2], high_dst(x, hi2, hi)),
                        deactivate=(idx[lo], idx[hi2] - 1),
                    ))
                else:                # lower-left staircase: the bottom drops
                    events.append(Event(
                        x=x, kind="sw_step",
                        deactivate=(idx[lo] + 1, idx[hi2]),
                    ))
            else:
                if x == box.xhi:
                    events.append(Event(
                        x=x, kind="merge",
                        src=(low_src(x, elo, hi), idx[elo]),
                        assign=(idx[elo] + 1, idx[ehi] - 1),
                        chmin=(idx[ehi], high_dst(x, ehi, hi)),
                    ))
                elif lo >= ehi:      # upper-right staircase: the top drops
                    events.append(Event(
                        x=x, kind="ne_step",
                        assign_inf=(idx[lo], idx[hi2] - 1),
                    ))
                else:                # lower-right staircase: the bottom rises
                    events.append(Event(
                        x=x, kind="se_step",
                        src=(low_src(x, lo, hi), idx[lo]),
                        assign=(idx[lo] + 1, idx[hi2]),
                    ))

    events.sort(key=lambda e: (e.x, e.kind != "originate"))
    events = [
        Event(x=e.x, kind=e.kind, src=e.src, assign=e.assign,
              assign_inf=e.assign_inf, chmin=e.chmin,
              deactivate=e.deactivate, eid=i)
        for i, e in enumerate(events)
    ]

    top_changes = [(x, top(x)) for x in top_jumps]
    bot_changes = [(x, bottom(x)) for x in bot_jumps if x > sx]
    nw_chain = _staircase_of(top_changes, sx, tx, top(sx))
    nw_chain = [(sx, sy)] + nw_chain if nw_chain[0] != (sx, sy) else nw_chain
    se_chain = _staircase_of(bot_changes, sx, tx, sy)
    if se_chain[-1] != (tx, ty):
        se_chain = se_chain + [(tx, ty)]

    return StaircaseRegion(
        frame=frame, s=sq, t=tq, baselines=baselines, events=events,
        originate_top=originate_top, nw_chain=nw_chain, se_chain=se_chain,
        holes=holes,
    )
