"""Tests for the architecture models: scheduling, decomposition, lowering."""

import pytest

from qarith.adders import gen_vbe
from qarith.arch import (
    Arch,
    CostTriple,
    ScheduledCircuit,
    count_gates,
    decompose_ccnot_ntc,
    dump_schedule,
    lower,
    ntc_vbe_template,
    schedule,
    validate_schedule,
)
from qarith.circuits import (
    BasisState,
    Circuit,
    assert_equiv,
    gate,
    run_statevector,
    run_vtrack,
)


class TestCostTriple:
    def test_counts_scaled_plus(self):
        t = CostTriple(3, 2, 1, concurrency=2, space=5)
        assert t.counts() == (3, 2, 1)
        assert t.scaled(2).counts() == (6, 4, 2)
        u = t.plus(CostTriple(1, 0, 0, concurrency=4, space=3))
        assert u.counts() == (4, 2, 1)
        assert (u.concurrency, u.space) == (4, 5)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            CostTriple(-1, 0, 0)


class TestDecomposeCCNOT:
    def test_five_two_qubit_gates(self):
        seq = decompose_ccnot_ntc()
        assert len(seq) == 5
        assert all(len(g.qubits) == 2 for g in seq)

    def test_statevector_equals_ccnot(self):
        dec = Circuit(3, decompose_ccnot_ntc())
        ccnot = Circuit(3, (gate("CCNOT", 0, 1, 2),))
        assert assert_equiv(dec, ccnot)

    def test_basis_inputs(self):
        dec = Circuit(3, decompose_ccnot_ntc())
        for v in range(8):
            amps = run_statevector(dec, {v: 1.0})
            want = v ^ 4 if (v & 3) == 3 else v  # qubit 2 flips iff 0 and 1 set
            (state, amp), = [(s, a) for s, a in amps.items() if abs(a) > 1e-9]
            assert state == want and abs(amp - 1.0) < 1e-9

    def test_applied_twice_is_identity(self):
        twice = Circuit(3, decompose_ccnot_ntc() * 2)
        assert assert_equiv(twice, Circuit(3, ()))


class TestSchedule:
    def test_parallel_disjoint_gates_share_slot(self):
        c = Circuit(4, (gate("CNOT", 0, 1), gate("CNOT", 2, 3)))
        s = schedule(c)
        assert s.depth.counts() == (0, 1, 0)
        assert s.depth.concurrency == 2

    def test_dependent_gates_serialize(self):
        c = Circuit(3, (gate("CNOT", 0, 1), gate("CNOT", 1, 2)))
        assert schedule(c).depth.counts() == (0, 2, 0)

    def test_slot_class_is_longest_member(self):
        c = Circuit(5, (gate("CCNOT", 0, 1, 2), gate("NOT", 3), gate("NOT", 4)))
        s = schedule(c)
        assert s.depth.counts() == (1, 0, 0)

    def test_max_concurrency_spills(self):
        c = Circuit(6, tuple(gate("NOT", q) for q in range(6)))
        s = schedule(c, max_concurrency=2)
        assert s.depth.counts() == (0, 0, 3)
        assert s.depth.concurrency <= 2

    def test_depth_bounded_by_sequential_total(self):
        ad = gen_vbe(6)
        seq = count_gates(ad.circuit)
        d = schedule(ad.circuit).depth
        assert d.ccnot <= seq.ccnot and d.cnot <= seq.cnot

    @pytest.mark.parametrize("n", range(4, 17))
    def test_vbe_ac_closed_form(self, n):
        s = schedule(gen_vbe(n).circuit, max_concurrency=3)
        assert s.depth.counts() == (3 * n - 3, 2 * n - 3, 0)
        assert s.depth.concurrency == 3

    def test_vbe_n3_floor(self):
        # One CNOT slot over the closed form (6; 3; 0): with a single
        # interior block there is nothing to pipeline the spare CNOTs
        # under, so the best reachable schedule is (6; 4; 0).
        assert schedule(gen_vbe(3).circuit).depth.counts() == (6, 4, 0)

    def test_validate_accepts_scheduler_output(self):
        s = schedule(gen_vbe(4).circuit)
        validate_schedule(s, Arch.AC)

    def test_validate_rejects_operand_collision(self):
        c = Circuit(3, (gate("CNOT", 0, 1), gate("CNOT", 1, 2)))
        bad = ScheduledCircuit(c, ((0, 1),), CostTriple(0, 1, 0, 2, 3))
        with pytest.raises(ValueError, match="twice"):
            validate_schedule(bad, Arch.AC)

    def test_validate_rejects_order_violation(self):
        c = Circuit(2, (gate("CNOT", 0, 1), gate("NOT", 1)))
        bad = ScheduledCircuit(c, ((1,), (0,)), CostTriple(0, 1, 1, 1, 2))
        with pytest.raises(ValueError):
            validate_schedule(bad, Arch.AC)

    def test_validate_rejects_wrong_depth(self):
        c = Circuit(2, (gate("CNOT", 0, 1),))
        bad = ScheduledCircuit(c, ((0,),), CostTriple(1, 0, 0, 1, 2))
        with pytest.raises(ValueError, match="depth"):
            validate_schedule(bad, Arch.AC)

    def test_dump_is_line_per_slot(self):
        s = schedule(Circuit(2, (gate("CNOT", 0, 1),)))
        assert len(dump_schedule(s).strip().splitlines()) == 1


class TestNTCTemplate:
    @pytest.mark.parametrize("n", range(2, 9))
    def test_depth_closed_form(self, n):
        s = ntc_vbe_template(n)
        assert s.depth.counts() == (0, 20 * n - 15, 0)
        assert s.depth.concurrency == 2
        assert s.circuit.width == 3 * n + 1
        validate_schedule(s, Arch.NTC)

    def test_45_gate_times_at_n3(self):
        assert ntc_vbe_template(3).depth.cnot == 45

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_adds_exhaustively(self, n):
        s = ntc_vbe_template(n)
        c = s.circuit
        for a in range(1 << n):
            for b in range(1 << n):
                st = BasisState.from_registers(c.width, c.roles, A=a, B=b)
                out = run_vtrack(c, st)
                assert c.role_value(out, "A") == a
                assert c.role_value(out, "B") == (a + b) % (1 << n)
                assert c.role_value(out, "Cout") == (a + b) >> n
                assert c.role_value(out, "carry") == 0


class TestLower:
    def test_ac_is_identity(self):
        c = gen_vbe(3).circuit
        assert lower(c, Arch.AC) is c

    def test_ntc_output_is_legal_and_equivalent(self):
        ad = gen_vbe(2)
        low = lower(ad.circuit, Arch.NTC)
        for g in low.gates:
            assert len(g.qubits) <= 2
            if len(g.qubits) == 2:
                assert abs(g.qubits[0] - g.qubits[1]) == 1
        for a in range(4):
            for b in range(4):
                st = BasisState.from_registers(low.width, low.roles, A=a, B=b)
                out = run_vtrack(low, st)
                assert low.role_value(out, "B") == (a + b) % 4

    def test_fredkin_lowers(self):
        c = Circuit(3, (gate("FREDKIN", 0, 1, 2),))
        low = lower(c, Arch.NTC)
        st = run_vtrack(low, BasisState.from_bits((1, 1, 0)))
        assert st.bits() == (1, 0, 1)

    def test_swap_cost_of_distance(self):
        c = Circuit(4, (gate("CNOT", 0, 3),))
        low = lower(c, Arch.NTC)
        swaps = [g for g in low.gates if g.kind.name == "SWAP"]
        assert len(swaps) == 4  # 2(d-1) with d=3

    def test_layout_must_be_permutation(self):
        with pytest.raises(ValueError, match="permutation"):
            lower(Circuit(2, (gate("CNOT", 0, 1),)), Arch.NTC, layout=[0, 0])

    def test_permutation_layout_equivalent(self):
        c = Circuit(3, (gate("CCNOT", 0, 1, 2),))
        low = lower(c, Arch.NTC, layout=[2, 0, 1])
        st = run_vtrack(low, BasisState.from_bits((1, 0, 1)))  # positions
        # qubits 0,1 set -> qubit 2 (position 1) flips
        assert st.bits() == (1, 1, 1)
