import random

from rectlink.geometry import OrthoSegment, Rect, RectPolygon
from rectlink.model import (
    Instance,
    RayShooter,
    Terminal,
    obstacle_ray_shooter,
    scale_by_two,
    validate,
)

BOX = Rect(10, 10, 20, 20).to_polygon()


def _inst(source, target, obstacles=(BOX,)):
    return Instance(obstacles=tuple(obstacles), source=source, target=target)


def test_validate_accepts_simple_instance():
    inst = _inst(Terminal.of_point((0, 0)), Terminal.of_point((30, 5)))
    assert validate(inst) == []


def test_validate_rejects_point_inside_obstacle():
    inst = _inst(Terminal.of_point((15, 15)), Terminal.of_point((30, 5)))
    assert validate(inst)


def test_point_on_obstacle_boundary_breaks_general_position():
    # boundary contact is geometrically legal but shares a coordinate line,
    # which the strict general-position check refuses
    inst = _inst(Terminal.of_point((10, 15)), Terminal.of_point((30, 5)))
    assert any("shares" in e for e in validate(inst))


def test_validate_rejects_overlapping_boxes():
    other = Rect(15, 15, 25, 25).to_polygon()
    inst = _inst(Terminal.of_point((0, 0)), Terminal.of_point((40, 5)), (BOX, other))
    assert any("overlap" in e for e in validate(inst))


def test_validate_rejects_shared_obstacle_coordinate():
    inst = _inst(
        Terminal.of_point((0, 0)),
        Terminal.of_point((50, 5)),
        (BOX, Rect(20, 30, 40, 41).to_polygon()),
    )
    assert any("share corner" in e for e in validate(inst))


def test_validate_rejects_segment_through_obstacle():
    seg = Terminal.of_segment((5, 15), (25, 15))
    inst = _inst(seg, Terminal.of_point((30, 5)))
    assert validate(inst)


def test_segment_clear_of_obstacles_is_legal():
    seg = Terminal.of_segment((11, 5), (19, 5))
    inst = _inst(seg, Terminal.of_point((30, 25)))
    assert validate(inst) == []


def test_validate_rejects_segment_piercing_three_boxes():
    boxes = [Rect(10 * k, 0, 10 * k + 5, 9).to_polygon() for k in range(1, 4)]
    seg = Terminal.of_segment((1, 4), (50, 4))
    inst = _inst(seg, Terminal.of_point((60, 50)), boxes)
    assert any("pierces" in e for e in validate(inst))


def test_polygon_terminal_box_must_avoid_obstacle_boxes():
    poly = Terminal.of_polygon(Rect(15, 25, 25, 35).to_polygon())
    inst = _inst(poly, Terminal.of_point((40, 5)))
    assert not any("overlap" in e for e in validate(inst))
    bad = Terminal.of_polygon(Rect(15, 15, 25, 25).to_polygon())
    inst = _inst(bad, Terminal.of_point((40, 5)))
    assert validate(inst)


def test_scale_by_two_roundtrip():
    inst = _inst(Terminal.of_point((1, 2)), Terminal.of_point((7, 9)))
    scaled = scale_by_two(inst)
    assert scaled.scaled.source.point == (2, 4)
    assert scaled.unscale_length(10) == 5
    assert scaled.unscale_point((14, 18)) == (7, 9)


def _brute_shoot(items, origin, direction):
    # items: (segment, tag); find nearest hit strictly ahead of origin
    ox, oy = origin
    best = None
    for seg, tag in items:
        if direction in ("+x", "-x"):
            if not seg.vertical:
                continue
            lo, hi = sorted((seg.p[1], seg.q[1]))
            if not (lo <= oy <= hi):
                continue
            x = seg.p[0]
            d = (x - ox) if direction == "+x" else (ox - x)
        else:
            if not seg.horizontal:
                continue
            lo, hi = sorted((seg.p[0], seg.q[0]))
            if not (lo <= ox <= hi):
                continue
            y = seg.p[1]
            d = (y - oy) if direction == "+y" else (oy - y)
        if d <= 0:
            continue
        if best is None or d < best[0] or (d == best[0] and tag < best[1]):
            best = (d, tag)
    return best


def test_ray_shooter_matches_brute_force():
    rng = random.Random(7)
    segs = []
    for tag in range(40):
        x, y = rng.randrange(0, 60), rng.randrange(0, 60)
        if rng.random() < 0.5:
            segs.append((OrthoSegment((x, y), (x, y + rng.randrange(1, 10))), tag))
        else:
            segs.append((OrthoSegment((x, y), (x + rng.randrange(1, 10), y)), tag))
    shooter = RayShooter(segs)
    for _ in range(400):
        origin = (rng.randrange(-5, 65), rng.randrange(-5, 65))
        direction = rng.choice(["+x", "-x", "+y", "-y"])
        got = shooter.shoot(origin, direction)
        want = _brute_shoot(segs, origin, direction)
        if want is None:
            assert got is None
        else:
            assert got is not None
            assert got.distance == want[0]


def test_obstacle_ray_shooter_hits_nearest_edge():
    shooter = obstacle_ray_shooter([BOX])
    hit = shooter.shoot((0, 15), "+x")
    assert hit is not None
    assert hit.distance == 10
    assert hit.point == (10, 15)
    assert shooter.shoot((0, 15), "-x") is None
    assert shooter.shoot((25, 15), "+x") is None
