"""Architecture models: gate-time accounting, scheduling, and lowering.

Two machine models are supported:

- ``AC``  — abstract concurrent: native CCNOT, operands at any distance,
  arbitrary concurrency.
- ``NTC`` — neighbor-only two-qubit-gate concurrent: qubits on a line,
  two-qubit gates only between adjacent positions (one-qubit gates free),
  no native CCNOT.

Costs use the triple (ccnot-times; cnot-times; not-times) with attached
concurrency and space.  A scheduled time slot's class is the class of the
longest gate it contains: CCNOT-class gates take strictly longer than
CNOT-class gates, which take longer than NOT-class gates.  Controlled
sqrt(X) gates take one CNOT time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .circuits import (
    BasisState,
    Circuit,
    Gate,
    GateKind,
    assert_equiv,
    gate,
    run_statevector,
)

__all__ = [
    "Arch",
    "CostTriple",
    "ScheduledCircuit",
    "gate_class",
    "count_gates",
    "schedule",
    "validate_schedule",
    "decompose_ccnot_ntc",
    "ntc_vbe_template",
    "lower",
    "dump_schedule",
]


class Arch(Enum):
    AC = "AC"
    NTC = "NTC"


# Gate classes by execution time: 3 = CCNOT-class, 2 = CNOT-class, 1 = NOT.
_CLASS = {
    GateKind.CCNOT: 3,
    GateKind.FREDKIN: 3,
    GateKind.CNOT: 2,
    GateKind.SQRTX: 2,
    GateKind.SQRTX_DAG: 2,
    GateKind.SWAP: 2,
    GateKind.NOT: 1,
}


def gate_class(g: Gate) -> int:
    """3 for CCNOT-class gates, 2 for CNOT-class, 1 for NOT."""
    return _CLASS[g.kind]


@dataclass(frozen=True)
class CostTriple:
    """(ccnot-times; cnot-times; not-times) # (concurrency; space)."""

    ccnot: float = 0
    cnot: float = 0
    nots: float = 0
    concurrency: float = 1
    space: float = 0

    def __post_init__(self) -> None:
        for name in ("ccnot", "cnot", "nots"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    def counts(self) -> tuple[float, float, float]:
        return (self.ccnot, self.cnot, self.nots)

    def scaled(self, k: float) -> "CostTriple":
        return CostTriple(
            self.ccnot * k, self.cnot * k, self.nots * k, self.concurrency, self.space
        )

    def plus(self, other: "CostTriple") -> "CostTriple":
        """Sequential composition of latencies (counts add; concurrency is
        the max of the parts; space is the max of the parts)."""
        return CostTriple(
            self.ccnot + other.ccnot,
            self.cnot + other.cnot,
            self.nots + other.nots,
            max(self.concurrency, other.concurrency),
            max(self.space, other.space),
        )


def count_gates(circuit: Circuit) -> CostTriple:
    """Sequential gate-time totals (concurrency 1).

    SWAP counts one CNOT-time and FREDKIN one CCNOT-time; the circuit
    generators expand both into {NOT, CNOT, CCNOT} before counting matters.
    """
    ccnot = cnot = nots = 0
    for g in circuit.gates:
        cls = gate_class(g)
        if cls == 3:
            ccnot += 1
        elif cls == 2:
            cnot += 1
        else:
            nots += 1
    return CostTriple(ccnot, cnot, nots, concurrency=1, space=circuit.width)


@dataclass(frozen=True)
class ScheduledCircuit:
    circuit: Circuit
    slots: tuple[tuple[int, ...], ...]  # gate indices per time slot
    depth: CostTriple

    def slot_of(self, gate_index: int) -> int:
        for s, members in enumerate(self.slots):
            if gate_index in members:
                return s
        raise KeyError(gate_index)


def _check_arch_legal(circuit: Circuit, arch: Arch) -> None:
    if arch is Arch.NTC:
        for g in circuit.gates:
            if len(g.qubits) > 2:
                raise ValueError(f"NTC forbids 3-qubit gates: {g}")
            if len(g.qubits) == 2 and abs(g.qubits[0] - g.qubits[1]) != 1:
                raise ValueError(f"NTC requires adjacent operands: {g}")


def _depth_triple(
    circuit: Circuit, slots: Sequence[Sequence[int]], peak: int
) -> CostTriple:
    ccnot = cnot = nots = 0
    for members in slots:
        cls = max(gate_class(circuit.gates[i]) for i in members)
        if cls == 3:
            ccnot += 1
        elif cls == 2:
            cnot += 1
        else:
            nots += 1
    return CostTriple(ccnot, cnot, nots, concurrency=peak, space=circuit.width)


def schedule(
    circuit: Circuit,
    arch: Arch = Arch.AC,
    *,
    max_concurrency: int | None = None,
    compact: bool = True,
) -> ScheduledCircuit:
    """As-soon-as-possible list scheduling honoring operand-disjointness.

    Two passes, both deterministic given the emission order:

    1. ASAP: each gate is placed one slot after the last use of any of its
       operand qubits (respecting ``max_concurrency`` by spilling to the
       next free slot; ties broken by lowest gate index, which is the
       natural emission order).
    2. An optional compaction sweep (``compact=True``) walks the gates in
       reverse and sinks each one as late as its successors allow, but only
       into slots whose class is at least its own and only when the move
       does not change any slot's class.  This spreads short gates under
       long slots and lowers peak concurrency without altering the depth
       triple.
    """
    _check_arch_legal(circuit, arch)
    n_gates = len(circuit.gates)
    slot_of = [0] * n_gates
    frontier = [0] * circuit.width  # last slot using each qubit
    occupancy: dict[int, int] = {}
    for i, g in enumerate(circuit.gates):
        s = 1 + max((frontier[q] for q in g.qubits), default=0)
        if max_concurrency is not None:
            while occupancy.get(s, 0) >= max_concurrency:
                s += 1
        slot_of[i] = s
        occupancy[s] = occupancy.get(s, 0) + 1
        for q in g.qubits:
            frontier[q] = s

    if compact and n_gates:
        members: dict[int, list[int]] = {}
        for i, s in enumerate(slot_of):
            members.setdefault(s, []).append(i)

        def slot_class(s: int) -> int:
            return max(gate_class(circuit.gates[i]) for i in members[s])

        next_use = [max(slot_of) + 1] * circuit.width
        for i in range(n_gates - 1, -1, -1):
            g = circuit.gates[i]
            cls = gate_class(g)
            cur = slot_of[i]
            latest = min(next_use[q] for q in g.qubits) - 1
            # Moving must not change the origin slot's class.
            remaining = [j for j in members[cur] if j != i]
            movable = remaining and max(
                gate_class(circuit.gates[j]) for j in remaining
            ) >= slot_class(cur)
            best = cur
            if movable:
                # Among legal later slots, prefer the emptiest (ties ->
                # latest): this hides short gates under long slots while
                # keeping the peak concurrency low.
                best_key = (len(members[cur]), -cur)
                for s in range(latest, cur, -1):
                    if s not in members:
                        continue
                    if slot_class(s) < cls:
                        continue
                    if max_concurrency is not None and len(
                        members[s]
                    ) >= max_concurrency:
                        continue
                    occupied = {
                        q for j in members[s] for q in circuit.gates[j].qubits
                    }
                    if occupied & set(g.qubits):
                        continue
                    key = (len(members[s]) + 1, -s)
                    if key < best_key:
                        best_key = key
                        best = s
            if best != cur:
                members[cur].remove(i)
                members[best].append(i)
                slot_of[i] = best
            for q in g.qubits:
                next_use[q] = slot_of[i]

    used = sorted(set(slot_of)) if n_gates else []
    renumber = {s: k for k, s in enumerate(used)}
    buckets: list[list[int]] = [[] for _ in used]
    for i, s in enumerate(slot_of):
        buckets[renumber[s]].append(i)
    slots = tuple(tuple(sorted(b)) for b in buckets)
    peak = max((len(b) for b in slots), default=0)
    # Operand-disjointness sanity check.
    for members_t in slots:
        seen: set[int] = set()
        for i in members_t:
            for q in circuit.gates[i].qubits:
                if q in seen:
                    raise AssertionError("scheduler produced operand collision")
                seen.add(q)
    depth = _depth_triple(circuit, slots, peak) if slots else CostTriple(
        0, 0, 0, concurrency=0, space=circuit.width
    )
    return ScheduledCircuit(circuit, slots, depth)


def validate_schedule(sched: ScheduledCircuit, arch: Arch = Arch.AC) -> None:
    """Check that a (possibly hand-built) schedule is legal.

    Verifies architecture legality, that every gate appears in exactly one
    slot, that no slot uses a qubit twice, that gates sharing a qubit keep
    their program order across slots, and that the recorded depth triple
    and peak concurrency match the slots.  Raises on any violation.
    """
    circuit = sched.circuit
    _check_arch_legal(circuit, arch)
    slot_of: dict[int, int] = {}
    for s, members in enumerate(sched.slots):
        seen: set[int] = set()
        for gi in members:
            slot_of[gi] = s
            for q in circuit.gates[gi].qubits:
                if q in seen:
                    raise ValueError(f"slot {s} uses qubit {q} twice")
                seen.add(q)
    if sorted(slot_of) != list(range(len(circuit.gates))):
        raise ValueError("slots do not cover each gate exactly once")
    last: dict[int, int] = {}
    for gi, g in enumerate(circuit.gates):
        for q in g.qubits:
            if q in last and slot_of[last[q]] >= slot_of[gi]:
                raise ValueError(
                    f"gates {last[q]} and {gi} share qubit {q} out of order"
                )
            last[q] = gi
    peak = max((len(m) for m in sched.slots), default=0)
    expect = _depth_triple(circuit, sched.slots, peak)
    if expect != sched.depth:
        raise ValueError(f"depth mismatch: recorded {sched.depth}, got {expect}")


def dump_schedule(sched: ScheduledCircuit) -> str:
    """One line per slot listing gate indices."""
    return "\n".join(" ".join(str(i) for i in s) for s in sched.slots) + (
        "\n" if sched.slots else ""
    )


def decompose_ccnot_ntc(
    c1: int = 0, c2: int = 1, target: int = 2
) -> tuple[Gate, ...]:
    """The five two-qubit gates equal to CCNOT(c1, c2, target).

    Net effect on the target is sqrt(X) raised to c2 - (c1 xor c2) + c1 =
    2*c1*c2, i.e. X exactly when both controls are set.
    """
    return (
        gate("SQRTX", c2, target),
        gate("CNOT", c1, c2),
        gate("SQRTX_DAG", c2, target),
        gate("CNOT", c1, c2),
        gate("SQRTX", c1, target),
    )


def ntc_vbe_template(n: int) -> ScheduledCircuit:
    """Hand-scheduled carry-ripple adder for the neighbor-only machine.

    Line layout: carry c_i at position 3i, sum bit b_i at 3i+1, addend a_i
    at 3i+2, carry-out at 3n (width 3n+1).  Computes B <- A + B with the
    carry-out on the top wire; A and the carry wires are restored.

    The circuit is built from hand-placed tiles:

    - Forward tile per bit (period 7 slots): CCNOT(a,b,c') and
      CCNOT(c,b,c') realized as the five-gate controlled-sqrt(X) sequence
      with a repositioning SWAP embedded before the final gate, plus the
      CNOT(a,b) between them.  Each tile's first CCNOT block overlaps the
      previous tile's carry chain, keeping every slot at two gates.
    - Top tile: computes the carry-out and top sum bit while returning the
      highest ripple carry to its home position mid-tile, so the reverse
      ripple starts as early as possible.
    - Reverse tile per bit (period 13 slots): the merged uncompute block
      CC(c,b,c'); CC(a,b,c'); CN(a,c'); CN(c,b).  The trailing CN(a,c')
      is fused into the preceding controlled-sqrt(X) on the same operands
      (sqrtX followed by X is sqrtX-dagger), and CN(c,b) runs in parallel
      with it.
    - Bit 0 is special-cased: its carry-in wire is |0>, so both gates
      controlled by it vanish in the forward and reverse tiles.

    The resulting schedule is exactly (0; 20n-15; 0) gate-times at peak
    concurrency 2 for every n >= 2, and is returned as-is rather than
    re-derived by the generic scheduler, which neither preserves hand slot
    assignments nor discovers this packing on its own.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    placed: list[tuple[int, int, Gate]] = []
    seq = [0]

    def put(slot: int, kind: str, *pos: int) -> None:
        seq[0] += 1
        placed.append((slot, seq[0], gate(kind, *pos)))

    def cc_block(P: int, slots: Sequence[int], merge_cnot: bool = False) -> None:
        # CCNOT with controls at P+1/P+2 and target P+3, with a SWAP of
        # P+1/P+2 embedded before the final controlled-sqrt(X).  With
        # merge_cnot the block also applies CNOT(P+2, P+3) by flipping the
        # final gate to sqrtX-dagger.
        C = P + 3
        put(slots[0], "SQRTX", P + 2, C)
        put(slots[1], "CNOT", P + 1, P + 2)
        put(slots[2], "SQRTX_DAG", P + 2, C)
        put(slots[3], "CNOT", P + 1, P + 2)
        put(slots[4], "SWAP", P + 1, P + 2)
        put(slots[5], "SQRTX_DAG" if merge_cnot else "SQRTX", P + 2, C)

    T = {i: 7 * i for i in range(1, n)}
    t0 = T[n - 1]
    # Forward tiles i = 0..n-2: enter [c,b,a], leave [a,b,c].
    for i in range(n - 1):
        P = 3 * i
        base = 0 if i <= 1 else T[i - 1]
        cc_block(P, [base + k for k in range(1, 7)])  # CC(a,b,c') -> [c,a,b]
        if i == 0:
            put(7, "CNOT", 1, 2)  # CN(a,b)
            # Layout fix [c0,a,b] -> [a,b,c0], parked under the top tile.
            put(t0 + 2, "SWAP", 0, 1)
            put(t0 + 3, "SWAP", 1, 2)
            continue
        t = T[i]
        put(t, "CNOT", P + 1, P + 2)  # CN(a,b)
        put(t + 1, "SWAP", P, P + 1)  # -> [a,c,b]
        cc_block(P, [t + k for k in range(2, 8)])  # CC(c,b,c') -> [a,b,c]
    # Top tile (bit n-1): enter [c,b,a], leave [c,b,a].
    Q = 3 * (n - 1)
    put(t0, "SWAP", Q + 1, Q + 2)  # -> [c,a,b]
    put(t0 + 1, "SWAP", Q, Q + 1)  # -> [a,c,b]
    put(t0 + 1, "SQRTX", Q + 2, Q + 3)
    put(t0 + 2, "CNOT", Q + 1, Q + 2)  # CC(c,b,cout) ...
    put(t0 + 3, "SQRTX_DAG", Q + 2, Q + 3)
    put(t0 + 4, "CNOT", Q + 1, Q + 2)
    put(t0 + 5, "SWAP", Q + 1, Q + 2)  # -> [a,b,c]
    put(t0 + 6, "SQRTX", Q + 2, Q + 3)
    put(t0 + 7, "CNOT", Q + 2, Q + 1)  # CN(c,b): b -> b^c
    put(t0 + 8, "SWAP", Q + 1, Q + 2)  # -> [a,c,b]
    put(t0 + 9, "SWAP", Q, Q + 1)  # -> [c,a,b]; ripple carry back home
    cc_block(Q, [t0 + k for k in range(10, 16)])  # CC(a,b,cout) -> [c,b,a]
    put(t0 + 16, "CNOT", Q + 2, Q + 1)  # CN(a,b): b -> a^b^c
    # Reverse tiles i = n-2..1: enter [a,b,c], leave [c,b,a].
    s = t0 + 9
    for i in range(n - 2, 0, -1):
        P = 3 * i
        cc_block(P, [s + k for k in range(1, 7)])  # CC(c,b,c') -> [a,c,b]
        put(s + 7, "SWAP", P, P + 1)  # -> [c,a,b]
        cc_block(P, [s + k for k in range(8, 14)], merge_cnot=True)
        put(s + 13, "CNOT", P, P + 1)  # CN(c,b), parallel with the merge
        s += 13
    # Reverse tile 0: carry-in is |0>, both c-controlled blocks vanish.
    put(s + 1, "SWAP", 1, 2)  # [a,b,c0] -> [a,c0,b]
    put(s + 2, "SWAP", 0, 1)  # -> [c0,a,b]
    put(s + 3, "SQRTX", 2, 3)  # CC(a,b,c1) ...
    put(s + 4, "CNOT", 1, 2)
    put(s + 5, "SQRTX_DAG", 2, 3)
    put(s + 6, "CNOT", 1, 2)
    put(s + 7, "SWAP", 1, 2)  # -> [c0,b,a]
    put(s + 8, "SQRTX", 2, 3)
    put(s + 9, "CNOT", 2, 3)  # CN(a,c1) clears the carry

    placed.sort(key=lambda item: (item[0], item[1]))
    gates = tuple(g for _, _, g in placed)
    used = sorted({sl for sl, _, _ in placed})
    renumber = {sl: k for k, sl in enumerate(used)}
    buckets: list[list[int]] = [[] for _ in used]
    for gi, (sl, _, _) in enumerate(placed):
        buckets[renumber[sl]].append(gi)
    slots = tuple(tuple(b) for b in buckets)
    roles = {
        "A": tuple(3 * i + 2 for i in range(n)),
        "B": tuple(3 * i + 1 for i in range(n)),
        "Cout": (3 * n,),
        "carry": tuple(3 * i for i in range(n)),
    }
    circuit = Circuit(3 * n + 1, gates, roles)
    peak = max(len(m) for m in slots)
    sched = ScheduledCircuit(circuit, slots, _depth_triple(circuit, slots, peak))
    validate_schedule(sched, Arch.NTC)
    return sched


def _route(pos_a: int, pos_b: int) -> tuple[list[Gate], int]:
    """SWAP chain bringing position ``pos_a`` adjacent to ``pos_b``.

    Returns the swaps and the final position of the moved qubit.
    """
    swaps: list[Gate] = []
    cur = pos_a
    step = 1 if pos_b > pos_a else -1
    while abs(cur - pos_b) > 1:
        swaps.append(gate("SWAP", cur, cur + step))
        cur += step
    return swaps, cur


def lower(
    circuit: Circuit,
    arch: Arch,
    layout: Sequence[int] | None = None,
) -> Circuit:
    """Rewrite a circuit to obey the architecture's constraints.

    AC lowering is the identity.  NTC lowering maps qubit ``q`` to line
    position ``layout[q]`` (identity if omitted), decomposes every CCNOT
    into the five-gate two-qubit sequence, and brackets any non-adjacent
    two-qubit gate with a naive move-and-return SWAP chain (2(d-1)
    swap-times for operands at distance d).  The result is equivalent to
    the input: all SWAPs are undone, so positions map back to qubits.
    """
    if arch is Arch.AC:
        return circuit
    if layout is None:
        layout = list(range(circuit.width))
    if sorted(layout) != list(range(circuit.width)):
        raise ValueError("layout must be a permutation of qubit indices")

    pos = list(layout)  # qubit -> position

    def on_line(g: Gate) -> Iterable[Gate]:
        if len(g.qubits) == 1:
            yield Gate(g.kind, (pos[g.qubits[0]],))
            return
        a, b = (pos[q] for q in g.qubits)
        swaps, a2 = _route(a, b)
        yield from swaps
        yield Gate(g.kind, (a2, b))
        yield from reversed(swaps)

    out: list[Gate] = []
    for g in circuit.gates:
        if g.kind is GateKind.CCNOT:
            for sub in decompose_ccnot_ntc(*g.qubits):
                out.extend(on_line(sub))
        elif g.kind is GateKind.FREDKIN:
            c, x, y = g.qubits
            for sub in (
                gate("CNOT", y, x),
                gate("CCNOT", c, x, y),
                gate("CNOT", y, x),
            ):
                if sub.kind is GateKind.CCNOT:
                    for s2 in decompose_ccnot_ntc(*sub.qubits):
                        out.extend(on_line(s2))
                else:
                    out.extend(on_line(sub))
        else:
            out.extend(on_line(g))

    # Positions are identical to qubits at circuit end (all swaps undone),
    # but the gate operands refer to positions; translate roles likewise.
    role_map = {
        name: tuple(layout[q] for q in idxs) for name, idxs in circuit.roles.items()
    }
    lowered = Circuit(circuit.width, tuple(out), role_map)
    _check_arch_legal(lowered, Arch.NTC)
    return lowered
