"""Generators for the reversible adder circuit families.

Every generator returns an :class:`AdderCircuit` whose circuit, run on
inputs ``A=a, B=b`` with all other qubits zero, leaves ``a`` restored in A,
``(a+b) mod 2^n`` in the S register, the carry-out bit in Cout, and every
carry/ancilla qubit back at zero.  All circuits normalize to the gate set
{NOT, CNOT, CCNOT}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arch import Arch, CostTriple, ScheduledCircuit, _depth_triple, validate_schedule
from .circuits import BasisState, Circuit, Gate, gate, run_permutation

__all__ = [
    "AdderCircuit",
    "gen_vbe",
    "gen_cdkm",
    "gen_qcla",
    "qcla_schedule",
    "gen_csla",
    "gen_csum",
    "csla_block",
    "gen_modadd",
    "gen_argset",
    "check_adder",
    "vbe_counts",
    "cdkm_counts",
    "qcla_counts",
    "csla_counts",
    "csum_counts",
]


@dataclass(frozen=True)
class AdderCircuit:
    """A generated adder with its register map.

    Roles: ``A`` and ``B`` are the addend registers, ``S`` names the qubits
    holding the sum at circuit end (for the in-place adders here S is the B
    register), ``Cout`` the carry-out qubit, plus zero-initialized work
    registers (``carry``/``ancilla``).
    """

    circuit: Circuit
    n: int
    #: Name of the role holding the sum at circuit end (in-place adders
    #: overwrite B, so physical roles stay disjoint and S is an alias).
    s_role: str = "B"
    #: Explicit sum qubits, low bit first, for adders whose sum straddles
    #: several registers (carry-select: first-group B plus the output
    #: copies).  When unset the sum lives on the ``s_role`` register.
    s_bits: tuple[int, ...] | None = None

    @property
    def width(self) -> int:
        return self.circuit.width

    @property
    def s_indices(self) -> tuple[int, ...]:
        if self.s_bits is not None:
            return self.s_bits
        return self.circuit.roles[self.s_role]

    def run(self, a: int, b: int) -> tuple[int, int, int, bool]:
        """Returns (A_out, S_out, Cout, work_clean) for zeroed work qubits."""
        roles = self.circuit.roles
        st = BasisState.from_registers(self.width, roles, A=a, B=b)
        out = run_permutation(self.circuit, st)
        a_out = self.circuit.role_value(out, "A")
        s_out = 0
        for i, q in enumerate(self.s_indices):
            s_out |= ((out.value >> q) & 1) << i
        cout = self.circuit.role_value(out, "Cout") if roles.get("Cout") else 0
        clean = True
        for name in ("carry", "ancilla"):
            if roles.get(name):
                clean &= self.circuit.role_value(out, name) == 0
        return a_out, s_out, cout, clean


def check_adder(adder: AdderCircuit, *, include_cout: bool = True) -> None:
    """Exhaustively verify the adder over all 2^(2n) input pairs."""
    n = adder.n
    for a in range(1 << n):
        for b in range(1 << n):
            a_out, s_out, cout, clean = adder.run(a, b)
            total = a + b
            assert a_out == a, f"A not restored for a={a}, b={b}"
            assert s_out == total % (1 << n), f"bad sum for a={a}, b={b}"
            if include_cout:
                assert cout == total >> n, f"bad carry-out for a={a}, b={b}"
            assert clean, f"work qubits not cleared for a={a}, b={b}"


# ---------------------------------------------------------------------------
# VBE carry-ripple adder: 3n qubits (a, b, carries), carry-out = top carry.
# ---------------------------------------------------------------------------

def gen_vbe(n: int) -> AdderCircuit:
    """Carry-ripple adder over registers a(n), b(n), and n carry qubits.

    Layout: qubits ``3i`` = a_i, ``3i+1`` = b_i, ``3i+2`` = c_{i+1} (the
    carry *out of* bit i; the zero carry-in wire is elided).  Sequential
    totals are (4n-4 CCNOT; 4n-3 CNOT; 0 NOT) and space is 3n.

    The cleanup sweep keeps the top bit's adjacent self-cancelling CNOT
    pair and instead merges the two lowest carry-uncompute blocks with
    the boolean identity a(b^a) = ab ^ a, which turns the five-gate
    block [CC(c,b,C); CN(a,b); CC(a,b,C); CN(c,b); CN(a,b)] into the
    four-gate [CC(c,b,C); CC(a,b,C); CN(a,C); CN(c,b)].  Both forms
    give the same sequential totals overall, but the merged blocks
    pipeline one CNOT time slot shorter each, which is what lets the
    schedule reach (3n-3; 2n-3; 0) at concurrency 3 for n >= 4.  (For
    n=3 only one interior block exists; the best reachable schedule is
    (6; 4; 0) — one CNOT slot over the closed-form value, see the
    scheduling tests.)

    For n=1 the carry chain degenerates: the circuit is the single
    CNOT(a0, b0), so the Cout qubit is unused (1+1 wraps to 0).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    A = [3 * i for i in range(n)]
    B = [3 * i + 1 for i in range(n)]
    C = [3 * i + 2 for i in range(n)]  # C[i] carries out of bit i

    g: list[Gate] = []
    if n == 1:
        g.append(gate("CNOT", A[0], B[0]))
    elif n == 2:
        # Too small for the merged-block form: plain ripple with the top
        # pair cancelled, keeping the (4n-4; 4n-3) totals.
        g.append(gate("CCNOT", A[0], B[0], C[0]))
        g.append(gate("CNOT", A[0], B[0]))
        g.append(gate("CCNOT", A[1], B[1], C[1]))
        g.append(gate("CNOT", A[1], B[1]))
        g.append(gate("CCNOT", C[0], B[1], C[1]))
        g.append(gate("CNOT", C[0], B[1]))
        g.append(gate("CNOT", A[0], B[0]))
        g.append(gate("CCNOT", A[0], B[0], C[0]))
        g.append(gate("CNOT", A[0], B[0]))
    else:
        # How many CNOTs the merges must save to keep the 4n-3 total:
        # the kept top pair costs two, each merged block saves one.
        # n >= 4: merge interior blocks for bits 1 and 2 (original tail);
        # n == 3: merge the single interior block and the bit-0 tail.
        merged = {1, 2} if n >= 4 else {0, 1}

        # Forward carry generation.
        g.append(gate("CCNOT", A[0], B[0], C[0]))
        g.append(gate("CNOT", A[0], B[0]))
        for i in range(1, n):
            g.append(gate("CCNOT", A[i], B[i], C[i]))
            g.append(gate("CNOT", A[i], B[i]))
            g.append(gate("CCNOT", C[i - 1], B[i], C[i]))
        # Top bit: fold the final sum, then the literal self-cancelling
        # pair (emitted last so it hides under the cleanup's CCNOT slots).
        g.append(gate("CNOT", C[n - 2], B[n - 1]))
        g.append(gate("CNOT", A[n - 1], B[n - 1]))
        g.append(gate("CNOT", A[n - 1], B[n - 1]))
        # Reverse sweep: undo carries, finish sums.
        for i in range(n - 2, 0, -1):
            if i in merged:
                g.append(gate("CCNOT", C[i - 1], B[i], C[i]))
                g.append(gate("CCNOT", A[i], B[i], C[i]))
                g.append(gate("CNOT", A[i], C[i]))
                g.append(gate("CNOT", C[i - 1], B[i]))
            else:
                g.append(gate("CCNOT", C[i - 1], B[i], C[i]))
                g.append(gate("CNOT", A[i], B[i]))
                g.append(gate("CCNOT", A[i], B[i], C[i]))
                g.append(gate("CNOT", C[i - 1], B[i]))
                g.append(gate("CNOT", A[i], B[i]))
        if 0 in merged:
            g.append(gate("CCNOT", A[0], B[0], C[0]))
            g.append(gate("CNOT", A[0], C[0]))
        else:
            g.append(gate("CNOT", A[0], B[0]))
            g.append(gate("CCNOT", A[0], B[0], C[0]))
            g.append(gate("CNOT", A[0], B[0]))

    roles = {
        "A": tuple(A),
        "B": tuple(B),
        "Cout": (C[n - 1],) if n > 1 else (),
        "carry": tuple(C[:-1]) if n > 1 else tuple(C),
    }
    return AdderCircuit(Circuit(3 * n, tuple(g), roles), n)


# ---------------------------------------------------------------------------
# CDKM carry-ripple adder: 2n+2 qubits, one ancilla, carry rides the A wires.
# ---------------------------------------------------------------------------

def gen_cdkm(n: int) -> AdderCircuit:
    """Ripple adder with a single ancilla: 2n+2 qubits total.

    Layout: qubit 0 is the ancilla, ``1+2i`` = b_i, ``2+2i`` = a_i, and
    ``2n+1`` the carry-out.  The carry ripples along the A wires: the
    majority block for bit i is [CN(a,b); CN(a,c); CC(c,b,a)] where c is
    the previous bit's A wire, so after it a_i holds the carry into bit
    i+1 and the c wire holds a_i xor c_i.  Three boundary tricks keep the
    scheduled profile tight:

    - bit 0 drops its majority/unmajority pair entirely (carry-in is 0):
      one CCNOT writes a0*b0 straight onto the ancilla and a second
      uncomputes it at the end;
    - the top bit computes the carry-out in place on the output qubit
      with a single CCNOT instead of a majority/unmajority pair;
    - the cleanup blocks use the longer unmajority form
      [CN(c,b); X(b); CC(c,b,a); CN(a,c); CN(a,b); X(b)], whose extra
      gates all hide under neighbouring CCNOT slots, letting the reverse
      CCNOT chain ripple one slot per bit.

    Sequential totals are (2n-1 CCNOT; 5n-3 CNOT; 2n-4 NOT) for n >= 3;
    the scheduled profile is (2n-1; 5; 0) at concurrency <= 6.  Gates are
    emitted in schedule order (slot by slot) so the list scheduler
    reproduces that profile without commutation analysis.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    anc = 0
    B = [1 + 2 * i for i in range(n)]
    A = [2 + 2 * i for i in range(n)]
    z = 2 * n + 1
    roles = {
        "A": tuple(A),
        "B": tuple(B),
        "Cout": (z,),
        "ancilla": (anc,),
    }
    if n == 1:
        g = (gate("CCNOT", A[0], B[0], z), gate("CNOT", A[0], B[0]))
        return AdderCircuit(Circuit(4, g, roles), n)

    # Carry wire feeding bit i (bit 0's carry-out lives on the ancilla).
    cw = [None, anc] + A[1:-1]

    placed: list[tuple[int, int, Gate]] = []
    seq = [0]

    def put(slot: int, g: Gate) -> None:
        seq[0] += 1
        placed.append((slot, seq[0], g))

    if n == 2:
        put(0, gate("CCNOT", A[0], B[0], anc))
        put(1, gate("CNOT", A[1], B[1]))
        put(2, gate("CNOT", A[1], anc))
        put(3, gate("CCNOT", anc, B[1], z))
        put(4, gate("CNOT", A[1], z))
        put(4, gate("CNOT", anc, B[1]))
        put(5, gate("CNOT", A[1], B[1]))
        put(5, gate("CNOT", A[1], anc))
        put(6, gate("CCNOT", A[0], B[0], anc))
        put(7, gate("CNOT", A[0], B[0]))
    else:
        # Forward sweep: load b_i, thread the carry chain up the A wires.
        for i in range(1, n - 1):
            put(i - 1, gate("CNOT", A[i], B[i]))
        put(n, gate("CNOT", A[n - 1], B[n - 1]))
        for i in range(1, n):
            put(i, gate("CNOT", A[i], cw[i]))
        put(2, gate("CCNOT", A[0], B[0], anc))
        for i in range(1, n - 1):
            put(i + 2, gate("CCNOT", cw[i], B[i], A[i]))
        put(n + 1, gate("CCNOT", cw[n - 1], B[n - 1], z))
        put(2 * n + 2, gate("CNOT", A[n - 1], z))
        put(n + 2, gate("CNOT", cw[n - 1], B[n - 1]))
        # Cleanup sweep: reverse CCNOT chain with the long unmajority
        # blocks; their CNOT/NOT gates ride neighbouring CCNOT slots.
        for i in range(n - 2, 0, -1):
            put(2 * n - 1 - i, gate("CNOT", cw[i], B[i]))
            put(2 * n - i, gate("NOT", B[i]))
            put(2 * n + 1 - i, gate("CCNOT", cw[i], B[i], A[i]))
            put(2 * n + 2 - i, gate("NOT", B[i]))
        put(n + 4, gate("CNOT", A[n - 1], cw[n - 1]))
        for i in range(n - 2, 1, -1):
            put(2 * n + 3 - i, gate("CNOT", A[i], cw[i]))
        put(2 * n + 2, gate("CCNOT", A[0], B[0], anc))
        put(2 * n + 2, gate("CNOT", A[1], B[1]))
        if n >= 4:
            put(2 * n + 2, gate("CNOT", A[2], B[2]))
        for i in range(3, n - 1):
            put(2 * n + 4 - i, gate("CNOT", A[i], B[i]))
        put(2 * n + 3, gate("CNOT", A[1], anc))
        put(2 * n + 3, gate("CNOT", A[0], B[0]))
        put(2 * n + 3, gate("CNOT", A[n - 1], B[n - 1]))

    placed.sort(key=lambda t: (t[0], t[1]))
    g = tuple(gv for _, _, gv in placed)
    return AdderCircuit(Circuit(2 * n + 2, g, roles), n)


# ---------------------------------------------------------------------------
# QCLA carry-lookahead adder: 4n - floor(log2 n) - 1 qubits, log-depth.
# ---------------------------------------------------------------------------

def _qcla_p_wires(n: int, start: int) -> tuple[dict[tuple[int, int], int], int]:
    """Allocate the propagate-tree wires P[t][m] for an n-bit tree.

    P[t][m] will hold the product of propagate bits over the block of 2^t
    input positions starting at m * 2^t; level 0 lives on the B wires so
    only t >= 1, 1 <= m < n >> t are materialized (n - floor(log2 n) - 1
    wires in total).  Returns the wire map and the next free index.
    """
    P: dict[tuple[int, int], int] = {}
    nxt = start
    for t in range(1, n.bit_length()):
        for m in range(1, n >> t):
            P[(t, m)] = nxt
            nxt += 1
    return P, nxt


def _qcla_rounds(
    w: int,
    b: list[int],
    z: list[int | None],
    P: dict[tuple[int, int], int],
) -> dict[tuple[str, int], list[Gate]]:
    """Gate rounds of the w-bit lookahead network, keyed by (phase, level).

    On entry z[i] (1-based) holds the generate bit out of position i-1 and
    b[i] the propagate bit of position i; on exit z[i] holds the carry into
    position i.  Three phases of CCNOT rounds over the P tree:

    - ("P", t): build the level-t propagate products from level t-1;
    - ("G", t): fan generate/carry bits up: each block's carry-out absorbs
      its lower half's carry-out ANDed with the upper half's propagate;
    - ("C", t): fan carries back down into the block midpoints.

    The inverse P rounds that restore the tree are the reversed ("P", t)
    rounds applied in descending t, which callers emit themselves so they
    can interleave rounds into time slots.
    """
    def p(t: int, m: int) -> int:
        return b[m] if t == 0 else P[(t, m)]

    k = w.bit_length() - 1  # floor(log2 w)
    rounds: dict[tuple[str, int], list[Gate]] = {}
    for t in range(1, k + 1):
        r = [
            gate("CCNOT", p(t - 1, 2 * m), p(t - 1, 2 * m + 1), P[(t, m)])
            for m in range(1, w >> t)
        ]
        if r:
            rounds[("P", t)] = r
    for t in range(1, k + 1):
        rounds[("G", t)] = [
            gate(
                "CCNOT",
                z[(m << t) + (1 << (t - 1))],
                p(t - 1, 2 * m + 1),
                z[(m + 1) << t],
            )
            for m in range(0, w >> t)
        ]
    top = (2 * w // 3).bit_length() - 1
    for t in range(top, 0, -1):
        rounds[("C", t)] = [
            gate("CCNOT", z[m << t], p(t - 1, 2 * m), z[(m << t) + (1 << (t - 1))])
            for m in range(1, (w - (1 << (t - 1))) // (1 << t) + 1)
        ]
    return rounds


def _qcla_waves(n: int) -> tuple[list[list[Gate]], int, dict[str, tuple[int, ...]]]:
    """Time-slot waves of the carry-lookahead adder, plus width and roles.

    Gates within a wave touch disjoint qubits, and emitting the waves in
    order respects every data dependence, so the wave list doubles as a
    legal schedule.  The plan for n = 2^k, k >= 3 packs the lookahead
    rounds into ladders — each ("P", t+1) round shares a slot with the
    ("G", t) round, and each descending ("C", t) round with the inverse
    ("P", t+1) round (they touch different tree levels) — giving 2k+1
    carry-compute slots forward and 2k on the erasing pass, for a depth
    of exactly (4k+3; 4; 2) at concurrency n:

    1.  CCNOT(a_i, b_i, z_{i+1}): generate bits (1 slot);
    2.  CNOT(a_i, b_i): propagate bits (1 slot);
    3.  n-bit lookahead, z_i <- carry into bit i (2k+1 slots);
    4.  CNOT(z_i, b_i), i < n: fold carries into the sums (1 slot);
    5.  NOT(b_i), i < n-1, then CNOT(a_i, b_i): the low n-1 B wires now
        hold a XOR NOT(s), the propagate bits of the borrow recurrence
        that reconstructs the same carries from the *outputs* (2 slots);
    6.  (n-1)-bit lookahead, reversed: erases z_1..z_{n-1} (2k slots);
    7.  CNOT(a_i, b_i) and NOT(b_i) restore the sums, and
        CCNOT(a_i, b_i, z_{i+1}) clears the leftover generate bits
        (3 slots).

    For n = 4 the plan above yields 9 CCNOT slots; the generate and
    cleanup rounds are each split in two so the depth matches the
    closed-form (4k+3; 4; 2) = (11; 4; 2) design point.  For n = 2 the
    circuit contains only 4 CCNOTs, so no schedule can occupy the
    closed-form 7 CCNOT slots; the round-per-slot depth is (3; 4; 2).
    """
    k = n.bit_length() - 1
    if n < 2 or (1 << k) != n:
        raise ValueError("n must be a power of two >= 2")
    A = list(range(n))
    B = list(range(n, 2 * n))
    z: list[int | None] = [None] + [2 * n + i for i in range(n)]
    P, width = _qcla_p_wires(n, 3 * n)

    waves: list[list[Gate]] = []
    gen_round = [gate("CCNOT", A[i], B[i], z[i + 1]) for i in range(n)]
    if n == 4:
        waves += [gen_round[:2], gen_round[2:]]
    else:
        waves.append(gen_round)
    waves.append([gate("CNOT", A[i], B[i]) for i in range(n)])

    R = _qcla_rounds(n, B, z, P)
    if k == 1:
        waves.append(R[("G", 1)])
    else:
        waves.append(R[("P", 1)])
        for j in range(1, k - 1):
            waves.append(R[("P", j + 1)] + R[("G", j)])
        waves.append(R[("G", k - 1)])
        waves.append(R[("G", k)])
        waves.append(R[("C", k - 1)])
        for j in range(1, k - 1):
            waves.append(R[("C", k - 1 - j)] + list(reversed(R[("P", k - j)])))
        waves.append(list(reversed(R[("P", 1)])))

    waves.append([gate("CNOT", z[i], B[i]) for i in range(1, n)])
    waves.append([gate("NOT", B[i]) for i in range(n - 1)])
    waves.append([gate("CNOT", A[i], B[i]) for i in range(n - 1)])

    Q = _qcla_rounds(n - 1, B, z, P)
    if k == 2:
        waves.append(Q[("C", 1)])
        waves.append(Q[("G", 1)])
    elif k >= 3:
        waves.append(Q[("P", 1)])
        for j in range(1, k - 2):
            waves.append(Q[("P", j + 1)] + Q[("C", j)])
        waves.append(Q[("C", k - 2)])
        waves.append(Q[("C", k - 1)])
        waves.append(Q[("G", k - 1)])
        waves.append(Q[("G", k - 2)])
        for j in range(2, k - 1):
            waves.append(Q[("G", k - 1 - j)] + list(reversed(Q[("P", k - j)])))
        waves.append(list(reversed(Q[("P", 1)])))

    waves.append([gate("CNOT", A[i], B[i]) for i in range(n - 1)])
    clear_round = [gate("CCNOT", A[i], B[i], z[i + 1]) for i in range(n - 1)]
    if n == 4:
        waves += [clear_round[:2], clear_round[2:]]
    else:
        waves.append(clear_round)
    waves.append([gate("NOT", B[i]) for i in range(n - 1)])

    roles = {
        "A": tuple(A),
        "B": tuple(B),
        "Cout": (z[n],),
        "carry": tuple(z[1:n]),
        "ancilla": tuple(sorted(P.values())),
    }
    return waves, width, roles


def gen_qcla(n: int) -> AdderCircuit:
    """Carry-lookahead in-place adder for n a power of two, n >= 2.

    Width is 4n - floor(log2 n) - 1: registers a (qubits 0..n-1) and
    b (n..2n-1), carry wires z_1..z_n at 2n..3n-1 (z_n is the carry-out),
    and the propagate-tree ancillae above 3n.  Carries are computed by a
    logarithmic-depth tree network, folded into the sums, and then erased
    by running the (n-1)-bit network in reverse on the borrow-recurrence
    propagate bits derived from the outputs, so no garbage remains.

    Gates are emitted in hand-schedule order; see :func:`qcla_schedule`
    for the packed depth triple.
    """
    waves, width, roles = _qcla_waves(n)
    gates = tuple(g for wave in waves for g in wave)
    return AdderCircuit(Circuit(width, gates, roles), n)


def qcla_schedule(n: int) -> ScheduledCircuit:
    """Hand-packed schedule of :func:`gen_qcla` on the concurrent machine.

    Depth is exactly (4*log2(n) + 3; 4; 2) at peak concurrency n for
    every power of two n >= 4; for n = 2 the circuit has too few CCNOTs
    to fill that many slots and the depth is (3; 4; 2).  The generic list
    scheduler does not find this packing (it cannot reorder commuting
    rounds), so the slots are built alongside the gates and validated.
    """
    waves, width, roles = _qcla_waves(n)
    gates = tuple(g for wave in waves for g in wave)
    circuit = Circuit(width, gates, roles)
    slots: list[tuple[int, ...]] = []
    start = 0
    for wave in waves:
        slots.append(tuple(range(start, start + len(wave))))
        start += len(wave)
    peak = max(len(s) for s in slots)
    sched = ScheduledCircuit(
        circuit, tuple(slots), _depth_triple(circuit, tuple(slots), peak)
    )
    validate_schedule(sched, Arch.AC)
    return sched


# ---------------------------------------------------------------------------
# CSLA carry-select adder: grouped speculative sub-adders plus a MUX cascade.
# ---------------------------------------------------------------------------

def _ripple_forward(A: list[int], B: list[int], C: list[int]) -> list[list[Gate]]:
    """VBE-style forward ripple waves: B <- A+B, C[i] = carry out of bit i."""
    f = len(A)
    waves = [
        [gate("CCNOT", A[i], B[i], C[i]) for i in range(f)],
        [gate("CNOT", A[i], B[i]) for i in range(f)],
    ]
    for i in range(1, f):
        waves.append([gate("CCNOT", C[i - 1], B[i], C[i])])
    if f > 1:
        waves.append([gate("CNOT", C[i - 1], B[i]) for i in range(1, f)])
    return waves


def _ripple_erase(A: list[int], B: list[int], C: list[int]) -> list[list[Gate]]:
    """Erase the ripple carries C given B = sum, via the borrow recurrence.

    The sum stays on B: complementing B turns the carry chain of a+b into
    the borrow chain of the subtraction that reconstructs the same carries
    from the outputs, so the CCNOT ladder run backwards clears C.
    """
    f = len(A)
    waves = [
        [gate("NOT", B[i]) for i in range(f)],
        [gate("CNOT", A[i], B[i]) for i in range(f)],
    ]
    for i in range(f - 1, 0, -1):
        waves.append([gate("CCNOT", C[i - 1], B[i], C[i])])
    waves.append([gate("CNOT", A[i], B[i]) for i in range(f)])
    waves.append([gate("CCNOT", A[i], B[i], C[i]) for i in range(f)])
    waves.append([gate("NOT", B[i]) for i in range(f)])
    return waves


def _csla_block_waves(
    a: list[int],
    b: list[int],
    k: list[int],
    D: list[int],
    defer_top_fold: bool = False,
) -> list[list[Gate]]:
    """Speculative group block waves: b <- carry-in-0 sum, k carries, D prefixes.

    Along with the carry chain k of a+b, the block threads the prefix
    products D[i] = p_0*...*p_i of the propagate bits; the carry-in-1 sum
    differs from the carry-in-0 sum at exactly the positions where the
    prefix product is still 1 (s1_i = s0_i XOR D_{i-1}, s1_0 = NOT s0_0),
    so both speculative sums are recoverable from one ripple pass.  Packed
    depth is (m; 2; 0): the D ladder rides one slot behind the k ladder on
    the shared b wires.
    """
    m = len(a)
    waves = [
        [gate("CCNOT", a[i], b[i], k[i]) for i in range(m)],
        [gate("CNOT", a[i], b[i]) for i in range(m)],
    ]
    for s in range(2, m + 1):
        w = [gate("CCNOT", k[s - 2], b[s - 1], k[s - 1])]
        if s == 2 and m >= 2:
            w.append(gate("CNOT", b[0], D[0]))
        i = s - 2
        if 1 <= i <= m - 2:
            w.append(gate("CCNOT", D[i - 1], b[i], D[i]))
        waves.append(w)
    top = m - 1 if defer_top_fold else m
    fold = [gate("CNOT", k[i - 1], b[i]) for i in range(1, top)]
    if fold:
        waves.append(fold)
    return waves


def csla_block(m: int) -> ScheduledCircuit:
    """Hand-packed schedule of one m-bit carry-select group block.

    Width 4m-1: registers a, b (m each), carry chain k (m), and the m-1
    propagate-prefix wires D.  Depth is exactly (m; 2; 0) for m >= 2 (the
    prefix ladder hides under the carry ladder); m = 1 degenerates to a
    single CCNOT plus CNOT, depth (1; 1; 0).
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    a = list(range(m))
    b = list(range(m, 2 * m))
    k = list(range(2 * m, 3 * m))
    D = list(range(3 * m, 4 * m - 1))
    waves = _csla_block_waves(a, b, k, D)
    gates = tuple(g for wave in waves for g in wave)
    roles = {
        "A": tuple(a),
        "B": tuple(b),
        "carry": tuple(k),
        "ancilla": tuple(D),
    }
    circuit = Circuit(4 * m - 1, gates, roles)
    slots: list[tuple[int, ...]] = []
    start = 0
    for wave in waves:
        slots.append(tuple(range(start, start + len(wave))))
        start += len(wave)
    peak = max(len(s) for s in slots)
    sched = ScheduledCircuit(
        circuit, tuple(slots), _depth_triple(circuit, tuple(slots), peak)
    )
    validate_schedule(sched, Arch.AC)
    return sched


def _csla_group_wires(alloc, m: int) -> dict:
    """Allocate one speculative group: 6m-1 wires.

    a, b, k (m each), prefix products D and swap-signal scratch t (m-1
    each), output copies o (m), and the carry-out-1 candidate u.  The drawn
    block uses 5m-1; the m output-copy wires keep the selected sum readable
    while the speculative machinery is uncomputed to zero.
    """
    return dict(
        a=alloc(m),
        b=alloc(m),
        k=alloc(m),
        D=alloc(m - 1),
        t=alloc(m - 1),
        o=alloc(m),
        u=alloc(1)[0],
    )


def _csla_select_waves(
    pad: int, b: list[int], D: list[int], t: list[int], maslov: bool
) -> list[Gate]:
    """Select the carry-in-1 sum on b when the group's carry-in pad is 1.

    Default form loads the swap signals t_i = s0_i XOR s1_i = D_{i-1} and
    applies Fredkin gates controlled by the pad, each expanded to
    CNOT/CCNOT/CNOT; the improved (``maslov``) form notes the swap signal
    equals the prefix product already sitting on D and conditionally XORs
    it in directly, one CCNOT per bit.
    """
    m = len(b)
    out: list[Gate] = []
    if maslov:
        for i in range(1, m):
            out.append(gate("CCNOT", pad, D[i - 1], b[i]))
    else:
        for i in range(1, m):
            out.append(gate("CNOT", b[i], t[i - 1]))
            out.append(gate("CNOT", D[i - 1], t[i - 1]))
        for i in range(1, m):
            out.append(gate("CNOT", t[i - 1], b[i]))
            out.append(gate("CCNOT", pad, b[i], t[i - 1]))
            out.append(gate("CNOT", t[i - 1], b[i]))
    out.append(gate("CNOT", pad, b[0]))
    return out


def gen_csla(n: int, m: int, f: int | None = None, *, maslov: bool = False) -> AdderCircuit:
    """Carry-select adder: first group rippled, g-1 speculative groups.

    Requires f + (g-1)m = n for integer g >= 2 (default f = m).  Each
    non-first group computes the carry-in-0 sum and the positions where
    the carry-in-1 sum differs, then a serial MUX cascade threads the
    real carry from group to group: the carry-out-1 candidate is built
    from the prefix products, the incoming pad selects it, and Fredkin
    gates (or, with ``maslov=True``, direct CCNOTs) swap in the right sum.
    The selected sum is copied to fresh output wires and all speculative
    state is uncomputed, so A, B and every work qubit are restored.

    The sum therefore straddles registers: the first group's B wires plus
    the copies (``s_bits``).
    """
    if f is None:
        f = m
    if m < 1 or f < 1 or n <= f or (n - f) % m != 0:
        raise ValueError("need f + (g-1)m = n with g >= 2")
    g = (n - f) // m + 1

    nxt = [0]

    def alloc(c: int) -> list[int]:
        w = list(range(nxt[0], nxt[0] + c))
        nxt[0] += c
        return w

    A0, B0, C0 = alloc(f), alloc(f), alloc(f)
    grp = [_csla_group_wires(alloc, m) for _ in range(g - 1)]
    pads = [C0[f - 1]] + alloc(g - 2) + alloc(1)  # pad_1..pad_{g-1}, Cout
    width = nxt[0]

    gates: list[Gate] = []
    for w in _ripple_forward(A0, B0, C0):
        gates += w
    blocks: list[Gate] = []
    for G in grp:
        for w in _csla_block_waves(G["a"], G["b"], G["k"], G["D"]):
            blocks += w
    gates += blocks

    mux: list[Gate] = []
    for j, G in enumerate(grp):
        pad, nxt_pad = pads[j], pads[j + 1]
        b, k, D, t, u = G["b"], G["k"], G["D"], G["t"], G["u"]
        if m == 1:
            mux += [gate("CCNOT", pad, b[0], k[0]), gate("CNOT", k[0], nxt_pad)]
        else:
            # Carry-out-1 candidate: cout1 = cout0 XOR (full propagate),
            # folded onto the chain top k_{m-1} before threading onward.
            mux += [
                gate("CCNOT", pad, D[m - 2], u),
                gate("CCNOT", u, b[m - 1], k[m - 1]),
                gate("CCNOT", u, k[m - 2], k[m - 1]),
                gate("CNOT", k[m - 1], nxt_pad),
            ]
        mux += _csla_select_waves(pad, b, D, t, maslov)
    gates += mux
    gates += [gate("CNOT", G["b"][i], G["o"][i]) for G in grp for i in range(m)]
    cout_gate = None
    for gg in mux:
        if gg.kind.name == "CNOT" and gg.qubits[1] == pads[g - 1]:
            cout_gate = gg
    gates += [gg for gg in reversed(mux) if gg is not cout_gate]
    gates += list(reversed(blocks))
    for w in _ripple_erase(A0, B0, C0):
        gates += w

    s_bits = tuple(B0 + [q for G in grp for q in G["o"]])
    out_bits = tuple(q for G in grp for q in G["o"])
    roles = {
        "A": tuple(A0 + [q for G in grp for q in G["a"]]),
        "B": tuple(B0 + [q for G in grp for q in G["b"]]),
        "Cout": (pads[g - 1],),
        "carry": tuple(C0),
        "ancilla": tuple(
            sorted(
                set(range(width))
                - set(A0)
                - set(B0)
                - set(C0)
                - {pads[g - 1]}
                - {q for G in grp for q in G["a"] + G["b"] + G["o"]}
            )
        ),
        "out": out_bits,
    }
    return AdderCircuit(Circuit(width, tuple(gates), roles), n, s_bits=s_bits)


# ---------------------------------------------------------------------------
# CSUM conditional-sum adder: CSLA groups plus a log-depth carry tree.
# ---------------------------------------------------------------------------

def gen_csum(n: int, m: int, g: int, fanout: int = 4) -> AdderCircuit:
    """Conditional-sum adder: the carry-select MUX cascade becomes a tree.

    Requires g >= 3 groups with f = n - (g-1)m >= 1 first-group bits.  Each
    speculative group computes, in addition to the carry-select state, its
    carry-out for *both* carry-in cases (the pair (k_{m-1}, u)).  A binary
    combine tree then merges adjacent spans — a span's carry-out candidate
    for each carry-in case selects between its right half's candidates —
    and a down-sweep derives every group's true carry-in from the first
    group's carry-out, so all selects can fire together instead of
    rippling group to group.

    Total width is pinned to (6m-1)(g-1) + 3f + ceil(3(g-1)/2 - 2 +
    (n-f)/2) qubits exactly.  Tree levels and select-signal copies
    (``fanout`` > 1) are materialized only while that budget allows; when
    a span's wires don't fit, the down-sweep falls back to chaining
    through smaller spans (always possible at the single-group level), and
    any unused budget is carried as documented spare wires so the space
    accounting stays exact.
    """
    f = n - (g - 1) * m
    if m < 1 or g < 3 or f < 1:
        raise ValueError("need g >= 3 and f = n - (g-1)m >= 1")
    if fanout not in (1, 4):
        raise ValueError("fanout must be 1 or 4")
    budget = 3 * f + (6 * m - 1) * (g - 1) + math.ceil(
        3 * (g - 1) / 2 - 2 + (n - f) / 2
    )

    nxt = [0]

    def alloc(c: int) -> list[int]:
        w = list(range(nxt[0], nxt[0] + c))
        nxt[0] += c
        return w

    A0, B0, C0 = alloc(f), alloc(f), alloc(f)
    grp = [_csla_group_wires(alloc, m) for _ in range(g - 1)]
    pads = [C0[f - 1]] + alloc(g - 2) + alloc(1)  # pad_1..pad_{g-1}, Cout

    # Combine-tree spans: 2 wires per span (carry-out candidate for each
    # carry-in case), allocated level by level while the budget holds and
    # the children exist.
    span: dict[tuple[int, int], list[int]] = {}
    t = 1
    while (g - 1) >> t:
        for q in range(1, ((g - 1) >> t) + 1):
            children = t == 1 or (
                (t - 1, 2 * q - 1) in span and (t - 1, 2 * q) in span
            )
            if children and nxt[0] + 2 <= budget:
                span[(t, q)] = alloc(2)
        t += 1

    # Select-signal copies for fanout > 1, budget permitting.
    want_copies = max(0, (m + 1) // 2 - 1) if fanout > 1 else 0
    copies: list[list[int]] = []
    for _ in range(g - 1):
        c = min(want_copies, budget - nxt[0])
        copies.append(alloc(c))
    spare = alloc(budget - nxt[0])
    width = nxt[0]

    def leaf(j: int) -> tuple[int, int]:
        G = grp[j - 1]
        return (G["k"][m - 1], G["u"])

    def node(t: int, q: int) -> tuple[int, int] | list[int]:
        return leaf(q) if t == 0 else span[(t, q)]

    gates: list[Gate] = []
    for w in _ripple_forward(A0, B0, C0):
        gates += w
    blocks: list[Gate] = []
    for G in grp:
        for w in _csla_block_waves(
            G["a"], G["b"], G["k"], G["D"], defer_top_fold=(m >= 2)
        ):
            blocks += w
    gates += blocks

    mid: list[Gate] = []
    # Leaf carry-out candidates for carry-in 1 (u wires); the top fold of
    # each block was deferred so k_{m-1} still holds the carry-in-0 case.
    for G in grp:
        b, k, D, u = G["b"], G["k"], G["D"], G["u"]
        if m == 1:
            mid += [gate("CNOT", k[0], u), gate("CNOT", b[0], u)]
        else:
            mid += [
                gate("CCNOT", D[m - 2], b[m - 1], u),
                gate("CNOT", k[m - 1], u),
                gate("CNOT", k[m - 2], b[m - 1]),  # deferred top fold
            ]
    # Up-sweep: combine adjacent spans for both carry-in cases.  The two
    # products per case are on disjoint assignments of the left half's
    # carry, so their XOR is their OR: N_c = L_c ? R_1 : R_0.
    for (t, q) in sorted(span):
        L, R = node(t - 1, 2 * q - 1), node(t - 1, 2 * q)
        N = span[(t, q)]
        for c in range(2):
            mid += [
                gate("CCNOT", L[c], R[1], N[c]),
                gate("NOT", L[c]),
                gate("CCNOT", L[c], R[0], N[c]),
                gate("NOT", L[c]),
            ]
    # Down-sweep: true carry into each group (V_j = carry out of the first
    # j groups' bits), using the largest materialized span ending at j.
    V = {0: pads[0]}
    cout_block: list[Gate] = []
    for j in range(1, g):
        tb = (j & -j).bit_length() - 1
        while tb > 0 and (tb, j >> tb) not in span:
            tb -= 1
        S = node(tb, j >> tb)
        v = V[j - (1 << tb)]
        tgt = pads[j]
        blockg = [
            gate("CCNOT", v, S[1], tgt),
            gate("NOT", v),
            gate("CCNOT", v, S[0], tgt),
            gate("NOT", v),
        ]
        if j == g - 1:
            cout_block = blockg
        mid += blockg
        V[j] = tgt
    # Per-group selection, with the select signal copied out for fanout.
    for j, G in enumerate(grp):
        pad = pads[j]
        for c in copies[j]:
            mid.append(gate("CNOT", pad, c))
        ctrls = [pad] + copies[j]
        b, D, tw = G["b"], G["D"], G["t"]
        if len(ctrls) == 1:
            mid += _csla_select_waves(pad, b, D, tw, False)
        else:
            for i in range(1, m):
                mid += [gate("CNOT", b[i], tw[i - 1]), gate("CNOT", D[i - 1], tw[i - 1])]
            for i in range(1, m):
                ctl = ctrls[(i - 1) % len(ctrls)]
                mid += [
                    gate("CNOT", tw[i - 1], b[i]),
                    gate("CCNOT", ctl, b[i], tw[i - 1]),
                    gate("CNOT", tw[i - 1], b[i]),
                ]
            mid.append(gate("CNOT", ctrls[-1], b[0]))
        for c in copies[j]:
            mid.append(gate("CNOT", pad, c))
    gates += mid
    gates += [gate("CNOT", G["b"][i], G["o"][i]) for G in grp for i in range(m)]
    gates += [gg for gg in reversed(mid) if not any(gg is cb for cb in cout_block)]
    gates += list(reversed(blocks))
    for w in _ripple_erase(A0, B0, C0):
        gates += w

    s_bits = tuple(B0 + [q for G in grp for q in G["o"]])
    out_bits = tuple(q for G in grp for q in G["o"])
    roles = {
        "A": tuple(A0 + [q for G in grp for q in G["a"]]),
        "B": tuple(B0 + [q for G in grp for q in G["b"]]),
        "Cout": (pads[g - 1],),
        "carry": tuple(C0),
        "ancilla": tuple(
            sorted(
                set(range(width))
                - set(A0)
                - set(B0)
                - set(C0)
                - {pads[g - 1]}
                - {q for G in grp for q in G["a"] + G["b"] + G["o"]}
            )
        ),
        "out": out_bits,
    }
    return AdderCircuit(Circuit(width, tuple(gates), roles), n, s_bits=s_bits)


# ---------------------------------------------------------------------------
# Closed-form sequential gate counts (no circuit generation or simulation).
# ---------------------------------------------------------------------------

def vbe_counts(n: int) -> tuple[int, int, int]:
    """Sequential (CCNOT, CNOT, NOT) totals of :func:`gen_vbe`."""
    if n < 2:
        raise ValueError("closed forms need n >= 2")
    return (4 * n - 4, 4 * n - 3, 0)


def cdkm_counts(n: int) -> tuple[int, int, int]:
    """Sequential (CCNOT, CNOT, NOT) totals of :func:`gen_cdkm` (n >= 3)."""
    if n < 3:
        raise ValueError("closed forms need n >= 3")
    return (2 * n - 1, 5 * n - 3, 2 * n - 4)


def qcla_counts(n: int) -> tuple[int, int, int]:
    """Sequential (CCNOT, CNOT, NOT) totals of :func:`gen_qcla`.

    The forward lookahead network over w bits costs (w - k - 1) tree
    builds/unbuilds twice plus the generate/carry fans; summing the
    forward pass, the (n-1)-bit erasing pass, and the boundary rounds
    collapses to 10n - 9*floor(log2 n) - 7 CCNOTs for n a power of two.
    """
    k = n.bit_length() - 1
    if n < 2 or (1 << k) != n:
        raise ValueError("n must be a power of two >= 2")
    return (10 * n - 9 * k - 7, 4 * n - 3, 2 * n - 2)


def csla_counts(n: int, m: int, f: int | None = None) -> tuple[int, int, int]:
    """Sequential (CCNOT, CNOT, NOT) totals of :func:`gen_csla` (default MUX)."""
    if f is None:
        f = m
    if m < 1 or f < 1 or n <= f or (n - f) % m != 0:
        raise ValueError("need f + (g-1)m = n with g >= 2")
    g = (n - f) // m + 1
    if m == 1:
        return (4 * f - 2 + 4 * (g - 1), 4 * f - 2 + 7 * (g - 1), 2 * f)
    return (
        4 * f - 2 + (g - 1) * (8 * m - 2),
        4 * f - 2 + (g - 1) * (13 * m - 4),
        2 * f,
    )


def _csum_tree_shape(n: int, m: int, g: int, fanout: int) -> tuple[int, int]:
    """(span count, copy-wire count) the CSUM space budget admits.

    Mirrors the allocation order of :func:`gen_csum`: registers, pads,
    then tree spans level by level, then select-signal copies.
    """
    f = n - (g - 1) * m
    budget = 3 * f + (6 * m - 1) * (g - 1) + math.ceil(
        3 * (g - 1) / 2 - 2 + (n - f) / 2
    )
    used = 3 * f + (6 * m - 1) * (g - 1) + (g - 1)
    spans: set[tuple[int, int]] = set()
    t = 1
    while (g - 1) >> t:
        for q in range(1, ((g - 1) >> t) + 1):
            children = t == 1 or (
                (t - 1, 2 * q - 1) in spans and (t - 1, 2 * q) in spans
            )
            if children and used + 2 <= budget:
                spans.add((t, q))
                used += 2
        t += 1
    want = max(0, (m + 1) // 2 - 1) if fanout > 1 else 0
    k = 0
    for _ in range(g - 1):
        c = min(want, budget - used)
        k += c
        used += c
    return len(spans), k


def csum_counts(n: int, m: int, g: int, fanout: int = 4) -> tuple[int, int, int]:
    """Sequential (CCNOT, CNOT, NOT) totals of :func:`gen_csum`.

    Piecewise closed form: per-group block and selection terms, plus the
    combine-tree terms weighted by the number of spans and copy wires the
    space budget admits (computed arithmetically, no circuit is built).
    """
    f = n - (g - 1) * m
    if m < 1 or g < 3 or f < 1:
        raise ValueError("need g >= 3 and f = n - (g-1)m >= 1")
    if fanout not in (1, 4):
        raise ValueError("fanout must be 1 or 4")
    s, k = _csum_tree_shape(n, m, g, fanout)
    cc_block = 1 if m == 1 else 3 * m - 3
    cn_block = 1 if m == 1 else 2 * m - 1
    leaf_cc, leaf_cn = (0, 2) if m == 1 else (1, 2)
    mid_cc = (g - 1) * (leaf_cc + (m - 1)) + 4 * s + 2 * (g - 1)
    mid_cn = (g - 1) * (leaf_cn + (4 * m - 3)) + 2 * k
    mid_x = 4 * s + 2 * (g - 1)
    cc = (4 * f - 2) + 2 * (g - 1) * cc_block + 2 * mid_cc - 2
    cn = (4 * f - 1) + 2 * (g - 1) * cn_block + 2 * mid_cn + (g - 1) * m
    x = 2 * f + 2 * mid_x - 2
    return (cc, cn, x)


# ---------------------------------------------------------------------------
# Modulo adder: (sum + x) mod N in three adder blocks, no N register.
# ---------------------------------------------------------------------------

def _remap_gates(gates: tuple[Gate, ...], mapping: dict[int, int]) -> list[Gate]:
    """Re-wire a gate list through a qubit-index mapping."""
    return [gate(g.kind.name, *(mapping[q] for q in g.qubits)) for g in gates]


def _const_load(enable: int, reg: list[int], value: int) -> list[Gate]:
    """CNOTs loading a classical constant into reg when enable is set."""
    return [
        gate("CNOT", enable, reg[i]) for i in range(len(reg)) if (value >> i) & 1
    ]


def gen_modadd(n: int, N: int, x: int = 1) -> Circuit:
    """Modular constant adder: sum <- (sum + x) mod N when control is set.

    Requires 2^(n-1) < N < 2^n and 0 <= x < N.  The addend register is
    classically programmed (loaded by CNOTs off the control/enable lines,
    never a stored-N register) and the whole operation costs three adder
    blocks instead of a compare-and-correct five:

    1. add x + 2^n - N over n+1 bits, so the top sum bit lands on the
       overflow wire and reads [v + x >= N] — the reduction decision and
       the first trial subtraction happen in one pass;
    2. add N back into the low n bits when the overflow wire is clear
       (enable = control AND NOT overflow); the block's carry-out is then
       identically equal to the enable, so one CNOT clears it;
    3. a compare block: add 2^n - x, whose carry-out is [result >= x],
       the complement of the overflow wire; a negated-control CCNOT
       clears the overflow, and the addition is run back out so the
       result register is untouched.

    With control = 0 nothing is loaded and every block adds zero.  The
    x = 0 instance is the identity and is emitted with no gates.
    """
    if n < 2 or not ((1 << (n - 1)) < N < (1 << n)):
        raise ValueError("need 2^(n-1) < N < 2^n")
    if not (0 <= x < N):
        raise ValueError("need 0 <= x < N")
    ctl = 0
    sum_w = list(range(1, n + 1))
    ovf = n + 1
    addend = list(range(n + 2, 2 * n + 3))  # n+1 wires
    carry = list(range(2 * n + 3, 3 * n + 4))  # n+1 wires
    en = 3 * n + 4
    width = 3 * n + 5
    roles = {
        "control": (ctl,),
        "B": tuple(sum_w),
        "overflow": (ovf,),
        "addend": tuple(addend),
        "carry": tuple(carry),
        "enable": (en,),
    }
    if x == 0:
        return Circuit(width, (), roles)

    wide = gen_vbe(n + 1).circuit
    wide_map = {}
    for i in range(n + 1):
        wide_map[3 * i] = addend[i]
        wide_map[3 * i + 1] = (sum_w + [ovf])[i]
        wide_map[3 * i + 2] = carry[i]
    low = gen_vbe(n).circuit
    low_map = {}
    for i in range(n):
        low_map[3 * i] = addend[i]
        low_map[3 * i + 1] = sum_w[i]
        low_map[3 * i + 2] = carry[i]

    g: list[Gate] = []
    # Block 1: trial-subtracting addition over n+1 bits.
    load1 = _const_load(ctl, addend, x + (1 << n) - N)
    g += load1
    g += _remap_gates(wide.gates, wide_map)
    g += load1
    # Block 2: restore +N when no reduction was needed.
    g += [gate("NOT", ovf), gate("CCNOT", ctl, ovf, en), gate("NOT", ovf)]
    load2 = _const_load(en, addend[:n], N)
    g += load2
    g += _remap_gates(low.gates, low_map)
    g += load2
    g.append(gate("CNOT", en, carry[n - 1]))  # carry-out == enable here
    g += [gate("NOT", ovf), gate("CCNOT", ctl, ovf, en), gate("NOT", ovf)]
    # Block 3: compare against x to clear the overflow wire.
    load3 = _const_load(ctl, addend[:n], ((1 << n) - x) % (1 << n))
    g += load3
    g += _remap_gates(low.gates, low_map)
    g += [
        gate("NOT", carry[n - 1]),
        gate("CCNOT", ctl, carry[n - 1], ovf),
        gate("NOT", carry[n - 1]),
    ]
    g += _remap_gates(tuple(reversed(low.gates)), low_map)
    g += load3
    return Circuit(width, tuple(g), roles)


# ---------------------------------------------------------------------------
# Argument setting: load one of 2^w classical constants by quantum index.
# ---------------------------------------------------------------------------

def gen_argset(
    w: int,
    constants: tuple[int, ...] | None = None,
    reg_width: int | None = None,
) -> tuple[Circuit, CostTriple]:
    """Enable-tree register loader driven by a w-qubit index.

    XORs ``constants[index]`` into the target register, restoring the
    index wires and zeroing all 2^w enable wires and scratch.  The index
    register is stepped through every pattern along a Gray sequence (one
    NOT per transition); at each step the all-ones test computes the
    matching enable, the constant's bits are copied in off it, and the
    enable is uncomputed.

    The returned :class:`CostTriple` is the published per-pass accounting
    for the latency model — (4; 0; 4) # (4; 5) for w = 2 and
    (24; 0; 8) # (8; 9) for w = 3, where the space field counts the extra
    qubits (enables plus scratch) beyond index and register.  The
    generated circuit additionally uncomputes each enable so that it is
    clean standalone.
    """
    if w not in (2, 3, 4):
        raise ValueError("w must be 2, 3, or 4")
    if constants is None:
        constants = (0,) * (1 << w)
    if len(constants) != (1 << w):
        raise ValueError("need exactly 2^w constants")
    if reg_width is None:
        reg_width = max(1, max(int(c).bit_length() for c in constants))
    if any(not (0 <= c < (1 << reg_width)) for c in constants):
        raise ValueError("constants must fit the register width")

    idx = list(range(w))
    ens = list(range(w, w + (1 << w)))
    n_scratch = 2 if w == 4 else 1
    scr = list(range(w + (1 << w), w + (1 << w) + n_scratch))
    reg = list(range(w + (1 << w) + n_scratch, w + (1 << w) + n_scratch + reg_width))
    width = reg[-1] + 1

    def enable_chain(e: int) -> list[Gate]:
        if w == 2:
            return [gate("CCNOT", idx[0], idx[1], e)]
        if w == 3:
            return [
                gate("CCNOT", idx[0], idx[1], scr[0]),
                gate("CCNOT", scr[0], idx[2], e),
                gate("CCNOT", idx[0], idx[1], scr[0]),
            ]
        return [
            gate("CCNOT", idx[0], idx[1], scr[0]),
            gate("CCNOT", idx[2], idx[3], scr[1]),
            gate("CCNOT", scr[0], scr[1], e),
            gate("CCNOT", idx[2], idx[3], scr[1]),
            gate("CCNOT", idx[0], idx[1], scr[0]),
        ]

    mask = (1 << w) - 1
    g: list[Gate] = []
    flips_prev = 0
    for j in range(1 << w):
        k = (mask - j) ^ ((mask - j) >> 1)  # Gray sequence, ending at 0
        for b in range(w):
            if ((k ^ flips_prev) >> b) & 1:
                g.append(gate("NOT", idx[b]))
        flips_prev = k
        v = (~k) & mask
        chain = enable_chain(ens[v])
        g += chain
        g += _const_load(ens[v], reg, constants[v])
        g += list(reversed(chain))

    roles = {
        "index": tuple(idx),
        "enable": tuple(ens),
        "scratch": tuple(scr),
        "register": tuple(reg),
    }
    published = {
        2: CostTriple(4, 0, 4, 4, 5),
        3: CostTriple(24, 0, 8, 8, 9),
        4: CostTriple(48, 0, 16, 16, 18),
    }
    return Circuit(width, tuple(g), roles), published[w]
