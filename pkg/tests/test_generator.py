import pytest

from rectlink.generator import generate_instance
from rectlink.model import validate


def test_deterministic():
    a = generate_instance(42, n_obstacles=5)
    b = generate_instance(42, n_obstacles=5)
    assert a == b


def test_different_seeds_differ():
    assert generate_instance(1) != generate_instance(2)


@pytest.mark.parametrize("seed", range(10))
def test_generated_instances_validate(seed):
    inst = generate_instance(seed, n_obstacles=10, coord_limit=200)
    assert validate(inst) == []
    assert len(inst.obstacles) == 10


def test_obstacles_touch_their_boxes():
    inst = generate_instance(7, n_obstacles=6, carve_prob=1.0)
    for ob in inst.obstacles:
        box = ob.bbox
        xs = {v[0] for v in ob.vertices}
        ys = {v[1] for v in ob.vertices}
        assert box.xlo in xs and box.xhi in xs
        assert box.ylo in ys and box.yhi in ys


@pytest.mark.parametrize("kind", ["point", "segment", "polygon"])
def test_terminal_kinds(kind):
    inst = generate_instance(3, n_obstacles=4, source_kind=kind, target_kind=kind)
    assert inst.source.kind == kind
    assert inst.target.kind == kind
    assert validate(inst) == []
