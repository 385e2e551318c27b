import pytest
from hypothesis import given
from hypothesis import strategies as st

from distcolor.errors import InvalidInstance
from distcolor.model import (
    DPEDInstance,
    LCDInstance,
    PathTopology,
    demand_deviation,
    distance_conflict,
    explain_dped,
    is_non_alternating,
    verify_d_distance,
    verify_dped_solution,
    verify_lcd_solution,
)


class TestTopology:
    def test_offsets(self):
        top = PathTopology((3, 2))
        assert top.n == 5
        assert top.num_paths == 2
        assert top.starts == (1, 4)
        assert top.paths() == [range(1, 4), range(4, 6)]
        assert top.path_index == (0, 0, 0, 1, 1)

    def test_distance_across_paths_is_infinite(self):
        top = PathTopology((2, 2))
        assert top.dist(1, 2) == 1
        assert top.dist(2, 3) is None

    def test_rejects_empty_path(self):
        with pytest.raises(InvalidInstance):
            PathTopology((2, 0))

    def test_empty_topology(self):
        assert PathTopology(()).n == 0


@pytest.mark.parametrize(
    "shape, coloring, d, expected",
    [
        ((3,), (1, 2, 1), 1, True),
        ((3,), (1, 2, 1), 2, False),
        ((2, 2), (1, 2, 1, 2), 3, True),
        ((3,), (1, 1, 1), 0, True),
    ],
)
def test_verify_d_distance(shape, coloring, d, expected):
    assert verify_d_distance(PathTopology(shape), coloring, d) is expected


def test_distance_conflict_reports_first_pair():
    assert distance_conflict(PathTopology((5,)), (1, 2, 3, 2, 1), 2) == (2, 4)


class TestDpedVerifier:
    def test_adjacent_monochromatic(self):
        inst = DPEDInstance.build([2], 1, 1, None, [2])
        assert not verify_dped_solution(inst, (1, 1))

    def test_forced_alternation(self):
        inst = DPEDInstance.build([3], 2, 1, {2: 1}, (0, 2))
        assert verify_dped_solution(inst, (2, 1, 2))
        assert not verify_dped_solution(inst, (2, 2, 2))

    def test_precolor_mismatch_is_explained(self):
        inst = DPEDInstance.build([3], 2, 1, {2: 1}, (0, 2))
        assert "precolored" in explain_dped(inst, (1, 2, 1))

    def test_demands_count_free_vertices_only(self):
        inst = DPEDInstance.build([3], 2, 1, {2: 1}, (0, 2))
        assert inst.lifted_demands() == (1, 2)
        assert inst.is_demand_consistent()

    def test_demand_free_ignores_counts(self):
        inst = DPEDInstance.build([3], 3, 1, {2: 1}, None)
        assert verify_dped_solution(inst, (3, 1, 3))

    def test_wrong_length(self):
        inst = DPEDInstance.build([3], 2, 1, None, (2, 1))
        assert not verify_dped_solution(inst, (1, 2))


class TestLcdVerifier:
    def test_examples(self):
        inst = LCDInstance.build([3], 2, [{1}, {1, 2}, {1}], (2, 1), 1)
        assert verify_lcd_solution(inst, (1, 2, 1))
        assert not verify_lcd_solution(inst, (1, 1, 1))
        far = LCDInstance.build([3], 2, [{1}, {2}, {1}], (2, 1), 2)
        assert not verify_lcd_solution(far, (1, 2, 1))

    def test_color_outside_list(self):
        inst = LCDInstance.build([2], 2, [{1}, {1}], None, 0)
        assert not verify_lcd_solution(inst, (1, 2))


@pytest.mark.parametrize(
    "lists, expected",
    [
        ([{1, 2}, {2}, {1, 2}], False),
        ([{1, 2}, {1, 2}, {1, 2}], True),
        ([{1}, {2}, {3}], True),
    ],
)
def test_non_alternating(lists, expected):
    assert is_non_alternating(LCDInstance.build([3], 3, lists)) is expected


def test_non_alternating_is_per_path():
    # color 1 on vertices 2 and 3 sits on different paths
    assert is_non_alternating(LCDInstance.build([2, 2], 2, [{2}, {1}, {1}, {2}]))


def test_invalid_instances():
    with pytest.raises(InvalidInstance):
        DPEDInstance.build([2], 2, -1)
    with pytest.raises(InvalidInstance):
        DPEDInstance.build([2], 2, 1, {3: 1})
    with pytest.raises(InvalidInstance):
        DPEDInstance.build([2], 2, 1, None, (1,))
    with pytest.raises(InvalidInstance):
        LCDInstance.build([2], 2, [{1}, set()])


def test_demand_deviation_sign():
    inst = DPEDInstance.build([3], 2, 1, None, (2, 1))
    assert demand_deviation(inst, (2, 1, 2)) == {1: 1, 2: -1}


@given(st.lists(st.integers(1, 4), max_size=12), st.integers(0, 4))
def test_verifier_matches_pairwise_definition(coloring, d):
    top = PathTopology((len(coloring),) if coloring else ())
    expected = all(
        coloring[i] != coloring[j] for i in range(len(coloring)) for j in range(i + 1, min(len(coloring), i + d + 1))
    )
    assert verify_d_distance(top, coloring, d) is expected
