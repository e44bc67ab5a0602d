import re

import pytest

from riumapf.errors import InvalidPlan
from riumapf.instance import Instance, sample_random_instance
from riumapf.lacam import iu_lacam_solve
from riumapf.trace import render_frame, write_trace

from conftest import cycle, grid


def test_one_frame_for_a_zero_step_plan(tmp_path):
    inst = Instance(cycle(6), (0, 3), (0, 3), 1)
    paths = write_trace(inst, [(0, 3)], tmp_path)
    assert [p.name for p in paths] == ["frame_0000.svg"]


@pytest.mark.parametrize("r", [1, 2])
def test_frame_count_and_halo_annotation(tmp_path, r):
    inst = sample_random_instance(grid(6, 6), 3, r, 2)
    plan = iu_lacam_solve(inst)
    paths = write_trace(inst, plan, tmp_path)
    assert len(paths) == len(plan)   # makespan + 1
    svg = paths[-1].read_text()
    halos = re.findall(r'class="halo" data-r="(\d+)"', svg)
    assert len(halos) == inst.n and set(halos) == {str(r)}
    assert f"r={r}" in svg and svg.rstrip().endswith("</svg>")


def test_circular_layout_for_plain_graphs():
    svg = render_frame(cycle(5), (0, 2), 1, 4)
    assert svg.count("<line") == 5 and 't=4 r=1' in svg


def test_invalid_plan_is_rejected(tmp_path):
    inst = Instance(cycle(6), (0, 3), (1, 4), 1)
    with pytest.raises(InvalidPlan):
        write_trace(inst, [(0, 3), (0, 1)], tmp_path)
    assert not list(tmp_path.glob("*.svg"))
