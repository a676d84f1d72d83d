import pytest

from cycdec import (
    GraphSpec,
    InvalidTwinError,
    SurgeryPreconditionError,
    SwitchLog,
    base_even,
    canonicalize_cycle,
    chain_split,
    classify_leave,
    close_component,
    concentrate_degree,
    decompose_multiset,
    extract_two_cycles,
    find_path_split,
    gather_to_chain,
    join_two_cycles,
    shift_degree,
    split_component,
    verify_packing,
)
from cycdec.model import left as L, right as R
from conftest import packing_with_leave


def C(*vs):
    return canonicalize_cycle(vs)


SIX_CYCLE = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (2, 1): 1, (2, 2): 1, (0, 2): 1}


class TestSplitComponent:
    def test_six_cycle_leave(self):
        p = packing_with_leave(GraphSpec(2, 3, 3), SIX_CYCLE)
        path = [L(0), R(0), L(1), R(1), L(2)]
        out = split_component(p, path)
        assert verify_packing(out.packing)
        if out.split:
            assert decompose_multiset(3, 3, out.packing.leave, [4, 2]) is not None
        else:
            assert out.record.terminus == R(1)

    def test_odd_path_rejected(self):
        p = packing_with_leave(GraphSpec(2, 3, 3), SIX_CYCLE)
        with pytest.raises(SurgeryPreconditionError):
            split_component(p, [L(0), R(0), L(1), R(1)])

    def test_complement_must_be_path(self):
        # (2,4)-chain: removing a path from the doubled pair side leaves a
        # non-path remainder
        lv = {(0, 0): 2, (1, 0): 1, (1, 1): 1, (2, 1): 1, (2, 0): 1}
        p = packing_with_leave(GraphSpec(2, 3, 3), lv)
        with pytest.raises(SurgeryPreconditionError):
            split_component(p, [R(0), L(0), R(0), L(1)])
        with pytest.raises(SurgeryPreconditionError):
            split_component(p, [L(1), R(0), L(0), R(0), L(1)])


class TestChainSplit:
    def test_direct_match_no_switch(self):
        lv = {(0, 0): 2, (1, 0): 1, (1, 1): 1, (2, 1): 1, (2, 0): 1}
        p = packing_with_leave(GraphSpec(2, 3, 3), lv)
        log = SwitchLog()
        p2 = chain_split(p, 2, 4, log=log)
        assert verify_packing(p2) and p2.leave.size == 0
        assert log.lines == []
        assert sorted(p2.cycle_lengths()) == sorted(p.cycle_lengths() + (2, 4))

    def test_two_six_chain_into_four_four(self):
        # doubled pair at (L0,R0) plus 6-cycle through R0
        lv = {(0, 0): 2, (1, 0): 1, (1, 1): 1, (2, 1): 1,
              (2, 2): 1, (3, 2): 1, (3, 0): 1}
        p = packing_with_leave(GraphSpec(2, 4, 4), lv)
        comp = classify_leave(p.leave).components[0]
        assert comp.kind == "chain" and sorted(comp.cycle_lengths()) == [2, 6]
        p2 = chain_split(p, 4, 4)
        assert verify_packing(p2) and p2.leave.size == 0
        assert sorted(p2.cycle_lengths()) == sorted(p.cycle_lengths() + (4, 4))

    def test_both_large(self):
        # (4,6)-chain linked at L0 inside 2K55, targets (4,6) swapped order
        lv = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1,
              (0, 2): 1, (2, 2): 1, (2, 3): 1, (3, 3): 1, (3, 4): 1, (0, 4): 1}
        p = packing_with_leave(GraphSpec(2, 5, 5), lv)
        p2 = chain_split(p, 6, 4)
        assert verify_packing(p2) and p2.leave.size == 0

    def test_two_two_chain(self):
        lv = {(0, 0): 2, (0, 1): 2}
        p = packing_with_leave(GraphSpec(2, 3, 3), lv)
        p2 = chain_split(p, 2, 2)
        assert verify_packing(p2) and p2.leave.size == 0

    def test_arithmetic_mismatch(self):
        lv = {(0, 0): 2, (0, 1): 2}
        p = packing_with_leave(GraphSpec(2, 3, 3), lv)
        with pytest.raises(SurgeryPreconditionError):
            chain_split(p, 2, 4)


class TestCloseComponent:
    def test_figure_eight(self):
        lv = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1,
              (0, 2): 1, (2, 2): 1, (2, 3): 1, (0, 3): 1}
        p = packing_with_leave(GraphSpec(2, 5, 5), lv)
        p2 = close_component(p, 4, 4)
        assert verify_packing(p2) and p2.leave.size == 0

    def test_two_ring(self):
        lv = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1,
              (0, 2): 1, (1, 2): 1, (1, 3): 1, (0, 3): 1}
        p = packing_with_leave(GraphSpec(2, 5, 5), lv)
        comp = classify_leave(p.leave).components[0]
        assert comp.kind == "ring"
        p2 = close_component(p, 4, 4)
        assert verify_packing(p2) and p2.leave.size == 0

    def test_single_cycle_arc_split(self):
        lv = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (2, 1): 1,
              (2, 2): 1, (3, 2): 1, (3, 3): 1, (0, 3): 1}
        p = packing_with_leave(GraphSpec(2, 5, 5), lv)
        p2 = close_component(p, 4, 4)
        assert verify_packing(p2) and p2.leave.size == 0

    def test_size_bound_enforced(self):
        # 10 leave edges in a v=u=4 host exceed the 2v bound
        lv = {(0, 0): 2, (1, 0): 1, (1, 1): 1, (0, 1): 1,
              (0, 2): 1, (2, 2): 1, (2, 3): 1, (3, 3): 1, (3, 0): 1}
        p = packing_with_leave(GraphSpec(2, 4, 4), lv)
        assert p.leave.size == 10
        with pytest.raises(SurgeryPreconditionError):
            close_component(p, 4, 6)

    def test_no_split_rejected(self):
        # two disjoint 4-cycles are not a single component
        lv = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1,
              (2, 2): 1, (3, 2): 1, (3, 3): 1, (2, 3): 1}
        p = packing_with_leave(GraphSpec(2, 5, 5), lv)
        with pytest.raises(SurgeryPreconditionError):
            close_component(p, 4, 4)


class TestGatherAndExtract:
    def _fixture(self):
        # chain of two doubled pairs at R0, plus a detached 4-cycle
        spec = GraphSpec(2, 4, 4)
        lv = {(0, 0): 2, (1, 0): 2,
              (2, 2): 1, (3, 2): 1, (3, 3): 1, (2, 3): 1}
        return packing_with_leave(spec, lv)

    def test_gather_produces_splittable_chain(self):
        p = self._fixture()
        p2, split = gather_to_chain(p, 4, 4)
        assert verify_packing(p2)
        comps = classify_leave(p2.leave).components
        assert len(comps) == 1 and comps[0].kind == "chain"
        assert len(split.first) - 1 == 4
        assert sorted(p2.cycle_lengths()) == sorted(p.cycle_lengths())

    def test_extract_two_cycles(self):
        p = self._fixture()
        p2 = extract_two_cycles(p, 4, 4)
        assert verify_packing(p2) and p2.leave.size == 0
        assert sorted(p2.cycle_lengths()) == sorted(p.cycle_lengths() + (4, 4))

    def test_single_chain_identity(self):
        lv = {(0, 0): 2, (1, 0): 1, (1, 1): 1, (2, 1): 1, (2, 0): 1}
        p = packing_with_leave(GraphSpec(2, 3, 3), lv)
        p2, split = gather_to_chain(p, 2, 4)
        assert p2.cycles == p.cycles and p2.leave == p.leave
        assert len(split.first) - 1 == 2

    def test_component_bound(self):
        p = self._fixture()
        with pytest.raises(SurgeryPreconditionError):
            gather_to_chain(p, 2, 6)  # k = 2 demands both targets >= 3


class TestShiftDegree:
    def test_two_doubled_pairs_at_one_vertex(self):
        spec = GraphSpec(2, 4, 4)
        p = packing_with_leave(spec, {(0, 0): 2, (0, 1): 2})
        p2 = shift_degree(p, L(0), L(1))
        degs = p2.leave.degrees()
        assert degs.get(L(0), 0) == 2 and degs.get(L(1), 0) == 2
        assert verify_packing(p2)
        assert sorted(p2.cycle_lengths()) == sorted(p.cycle_lengths())

    def test_equal_degrees_rejected(self):
        spec = GraphSpec(2, 4, 4)
        p = packing_with_leave(spec, {(0, 0): 2, (1, 1): 2})
        with pytest.raises(SurgeryPreconditionError):
            shift_degree(p, L(0), L(1))

    def test_different_parts_rejected(self):
        spec = GraphSpec(2, 4, 4)
        p = packing_with_leave(spec, {(0, 0): 2, (0, 1): 2})
        with pytest.raises(InvalidTwinError):
            shift_degree(p, L(0), R(1))

    def test_isolated_target_component_count(self):
        # moving degree onto an isolated vertex adds at most one component
        spec = GraphSpec(2, 5, 5)
        lv = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1,
              (0, 2): 1, (2, 2): 1, (2, 3): 1, (0, 3): 1}
        p = packing_with_leave(spec, lv)
        k0 = len(classify_leave(p.leave).components)
        p2 = shift_degree(p, L(0), L(4))
        k1 = len(classify_leave(p2.leave).components)
        assert k1 in (k0, k0 + 1)


class TestConcentrate:
    def test_degree_six_vertex(self):
        spec = GraphSpec(2, 6, 6)
        lv = {(0, 0): 1, (1, 0): 1, (1, 1): 1, (0, 1): 1,
              (0, 2): 1, (2, 2): 1, (2, 3): 1, (0, 3): 1,
              (0, 4): 1, (3, 4): 1, (3, 5): 1, (0, 5): 1}
        p = packing_with_leave(spec, lv)
        p2 = concentrate_degree(p)
        degs = p2.leave.degrees()
        high = [x for x, d in degs.items() if d >= 4]
        assert len(high) == 1 and degs[high[0]] == 4
        assert len(classify_leave(p2.leave).components) <= 2

    def test_two_degree_four_vertices(self):
        spec = GraphSpec(2, 6, 6)
        lv = {(0, 0): 2, (0, 1): 2, (1, 2): 2, (1, 3): 2}
        p = packing_with_leave(spec, lv)
        p2 = concentrate_degree(p)
        degs = p2.leave.degrees()
        high = [x for x, d in degs.items() if d >= 4]
        assert len(high) == 1 and degs[high[0]] == 4

    def test_all_degree_two_rejected(self):
        spec = GraphSpec(2, 5, 5)
        p = packing_with_leave(spec, SIX_CYCLE)
        with pytest.raises(SurgeryPreconditionError):
            concentrate_degree(p)


class TestJoinTwoCycles:
    def test_2k77_join_four_and_two(self):
        spec = GraphSpec(2, 7, 7)
        d = base_even(spec, 8)
        lens = [len(c) for c in d.cycles]
        d2 = join_two_cycles(d, lens.index(8), lens.index(4), lens.index(2))
        assert verify_packing(d2) and d2.leave.size == 0
        want = sorted(d.cycle_lengths())
        want.remove(4)
        want.remove(2)
        want.append(6)
        assert sorted(d2.cycle_lengths()) == sorted(want)

    def test_sum_bound_rejected(self):
        spec = GraphSpec(2, 7, 7)
        d = base_even(spec, 4)
        lens = [len(c) for c in d.cycles]
        i4 = lens.index(4)
        j4 = lens.index(4, i4 + 1)
        i2 = lens.index(2)
        with pytest.raises(SurgeryPreconditionError):
            join_two_cycles(d, i4, j4, i2)  # 4+2 = 6 > 4 = h

    def test_size_bound_rejected(self):
        spec = GraphSpec(2, 5, 5)
        d = base_even(spec, 6)
        lens = [len(c) for c in d.cycles]
        with pytest.raises(SurgeryPreconditionError):
            join_two_cycles(
                d, lens.index(6), lens.index(4), lens.index(2)
            )  # 6+4+2 = 12 > 10 = 2v

    def test_total_length_conserved(self):
        spec = GraphSpec(2, 6, 6)
        d = base_even(spec, 6)
        lens = [len(c) for c in d.cycles]
        d2 = join_two_cycles(d, lens.index(6), lens.index(4), lens.index(2))
        assert sum(d2.cycle_lengths()) == sum(d.cycle_lengths())


def test_find_path_split_shapes():
    p = packing_with_leave(GraphSpec(2, 5, 5), SIX_CYCLE)
    comp = classify_leave(p.leave).components[0]
    sp = find_path_split(comp, 2)
    assert sp is not None and len(sp.first) == 3 and len(sp.second) == 5
    assert find_path_split(comp, 6) is None
