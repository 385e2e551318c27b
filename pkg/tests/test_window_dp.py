import pytest
from hypothesis import given
from hypothesis import strategies as st

from distcolor.errors import BudgetExceeded, DemandsUnsupported, NotSinglePath
from distcolor.model import DPEDInstance, LCDInstance, verify_dped_solution, verify_lcd_solution
from distcolor.oracle import oracle_dped, oracle_lcd
from distcolor.window_dp import (
    DLC_START,
    dlc_frontiers,
    dlc_step,
    dped_signatures,
    prune_lists,
    solve_dlc_dp,
    solve_dped_dp,
)


class TestDpedDp:
    def test_interior_precolor(self):
        assert solve_dped_dp(DPEDInstance.build([3], 2, 1, {2: 1}, (0, 2))) == (2, 1, 2)

    def test_infeasible(self):
        assert solve_dped_dp(DPEDInstance.build([3], 2, 2, {2: 1}, (0, 2))) is None

    def test_single_path_only(self):
        with pytest.raises(NotSinglePath):
            solve_dped_dp(DPEDInstance.build([1, 1], 1, 1, None, (2,)))

    def test_state_cap(self):
        with pytest.raises(BudgetExceeded):
            solve_dped_dp(DPEDInstance.build([9], 3, 1, None, (3, 3, 3)), state_cap=3)

    def test_signatures_count_colorings_prefixes(self):
        inst = DPEDInstance.build([3], 2, 1, None, (2, 1))
        layers = list(dped_signatures(inst))
        assert [len(x) for x in layers] == [2, 2, 2]


class TestDlc:
    def test_single_vertex_wide_list(self):
        inst = LCDInstance.build([1], 50, [set(range(5, 51))], None, 3)
        assert solve_dlc_dp(inst) == (5,)

    def test_rejects_demands(self):
        with pytest.raises(DemandsUnsupported):
            solve_dlc_dp(LCDInstance.build([1], 1, [{1}], (1,), 0))

    def test_paths_are_independent(self):
        inst = LCDInstance.build([1, 1], 1, [{1}, {1}], None, 5)
        assert solve_dlc_dp(inst) == (1, 1)

    def test_infeasible(self):
        assert solve_dlc_dp(LCDInstance.build([3], 2, [{1, 2}] * 3, None, 2)) is None

    def test_prune_keeps_smallest(self):
        assert prune_lists([frozenset({4, 1, 3, 2})], 1) == (frozenset({1, 2, 3}),)

    def test_step_keeps_first_parent(self):
        layer = dlc_step(DLC_START, {2, 1}, 1)
        assert layer == {(1,): ((), 1), (2,): ((), 2)}
        assert dlc_step(layer, {1}, 1) == {(1,): ((2,), 1)}

    def test_frontier_budget(self):
        with pytest.raises(BudgetExceeded):
            dlc_frontiers([frozenset({1, 2, 3})] * 3, 2, state_cap=4)


@st.composite
def dlc_instances(draw):
    shape = draw(st.lists(st.integers(1, 4), min_size=1, max_size=3))
    c = draw(st.integers(1, 5))
    lists = [draw(st.sets(st.integers(1, c), min_size=1)) for _ in range(sum(shape))]
    return LCDInstance.build(shape, c, lists, None, draw(st.integers(0, 3)))


@given(dlc_instances())
def test_dlc_matches_oracle(inst):
    got = solve_dlc_dp(inst)
    assert got == oracle_lcd(inst)
    if got is not None:
        assert verify_lcd_solution(inst, got)


@given(dlc_instances())
def test_pruning_never_flips(inst):
    assert (solve_dlc_dp(inst) is None) == (solve_dlc_dp(inst, prune=False) is None)


@st.composite
def dped_single(draw):
    n = draw(st.integers(1, 8))
    c = draw(st.integers(1, 3))
    pre = draw(st.lists(st.sampled_from([0, 0, 0, *range(1, c + 1)]), min_size=n, max_size=n))
    free = pre.count(0)
    cuts = sorted(draw(st.lists(st.integers(0, free), min_size=c - 1, max_size=c - 1)))
    eta = tuple(b - a for a, b in zip([0, *cuts], [*cuts, free]))
    return DPEDInstance.build([n], c, draw(st.integers(0, 3)), {v + 1: x for v, x in enumerate(pre) if x}, eta)


@given(dped_single())
def test_dped_dp_matches_oracle(inst):
    got = solve_dped_dp(inst)
    assert (got is None) == (oracle_dped(inst) is None)
    if got is not None:
        assert verify_dped_solution(inst, got)
