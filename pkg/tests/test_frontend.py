import pytest

from rectlink.frontend import solve
from rectlink.generator import generate_instance
from rectlink.geometry import GeometryError, PathResult, RectPolygon
from rectlink.model import Instance, Terminal
from rectlink.oracle import oracle_solve

KIND_MIXES = [
    ("point", "point"),
    ("point", "segment"),
    ("segment", "segment"),
    ("polygon", "point"),
    ("polygon", "segment"),
    ("polygon", "polygon"),
]


def _check_against_oracle(inst, seed=""):
    report = solve(inst)
    ora = oracle_solve(inst, want_path=False)
    assert (report.distance, report.links) == (ora.distance, ora.links), seed
    got = PathResult.from_points(report.path)
    assert (got.length, got.links) == (report.distance, report.links), seed
    return report


@pytest.mark.parametrize("mix", KIND_MIXES)
def test_matches_oracle_across_terminal_kinds(mix):
    for seed in range(12):
        inst = generate_instance(1000 + seed, n_obstacles=8, coord_limit=150,
                                 source_kind=mix[0], target_kind=mix[1])
        _check_against_oracle(inst, f"{mix} seed {seed}")


def test_identical_points_give_zero():
    inst = Instance(obstacles=(), source=Terminal.of_point((4, 4)),
                    target=Terminal.of_point((4, 4)))
    report = solve(inst)
    assert (report.distance, report.links) == (0, 0)
    assert report.path == [(4, 4)]


def test_touching_terminals_give_zero():
    inst = Instance(obstacles=(),
                    source=Terminal.of_segment((0, 3), (8, 3)),
                    target=Terminal.of_segment((5, 0), (5, 7)))
    report = solve(inst)
    assert (report.distance, report.links) == (0, 0)


def test_terminal_deep_in_a_pocket():
    # U-shaped obstacle; the source sits in its notch and must thread out
    # through the top opening
    ob = RectPolygon([(10, 10), (22, 10), (22, 18), (18, 18),
                      (18, 13), (14, 13), (14, 18), (10, 18)])
    inst = Instance(obstacles=(ob,),
                    source=Terminal.of_point((16, 15)),
                    target=Terminal.of_point((30, 15)))
    _check_against_oracle(inst)


def test_invalid_instance_raises():
    # overlapping bounding boxes
    a = RectPolygon([(0, 0), (4, 0), (4, 4), (0, 4)])
    b = RectPolygon([(2, 2), (6, 2), (6, 6), (2, 6)])
    inst = Instance(obstacles=(a, b),
                    source=Terminal.of_point((8, 8)),
                    target=Terminal.of_point((9, 9)))
    with pytest.raises(GeometryError):
        solve(inst)


def test_report_carries_stats():
    inst = generate_instance(77, n_obstacles=6, coord_limit=120)
    report = solve(inst)
    for key in ("middle_solves", "events", "regions", "attachments"):
        assert key in report.stats


def test_path_is_on_the_instance_grid():
    for seed in range(20):
        inst = generate_instance(3000 + seed, n_obstacles=10, coord_limit=150,
                                 source_kind="segment", target_kind="point")
        report = solve(inst)
        xs, ys = inst.all_coords()
        for p in PathResult.from_points(report.path).points:
            assert p[0] in xs and p[1] in ys, f"seed {seed}: {p}"
