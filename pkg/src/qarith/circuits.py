"""Gate and circuit representation plus two small verification simulators.

Circuits are ordered lists of gates over a fixed-width qubit register.
Qubit 0 is always the low-order bit of a register.  Two oracles are
provided: an exhaustive classical permutation simulator for circuits built
from {NOT, CNOT, CCNOT, FREDKIN, SWAP}, and a dense statevector simulator
that additionally handles controlled-sqrt(X) gates.  Both are pure
functions over immutable circuits and are safe to call concurrently.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence

__all__ = [
    "GateKind",
    "Gate",
    "Circuit",
    "BasisState",
    "PERMUTATION_WIDTH_BOUND",
    "STATEVECTOR_WIDTH_BOUND",
    "run_permutation",
    "truth_table",
    "run_statevector",
    "assert_equiv",
    "dump_circuit",
    "load_circuit",
]

#: Exhaustive truth-table bound: 2^20 entries is about one million states.
PERMUTATION_WIDTH_BOUND = 20
#: Dense statevector bound.
STATEVECTOR_WIDTH_BOUND = 14


class GateKind(Enum):
    """The reversible gate set used by every generated circuit."""

    NOT = "NOT"
    CNOT = "CNOT"
    CCNOT = "CCNOT"
    FREDKIN = "FREDKIN"
    SWAP = "SWAP"
    SQRTX = "SQRTX"
    SQRTX_DAG = "SQRTX_DAG"


#: Number of operands each gate kind takes.  For SQRTX/SQRTX_DAG the two
#: operands are (control, target): only the controlled form is modeled.
_ARITY = {
    GateKind.NOT: 1,
    GateKind.CNOT: 2,
    GateKind.SWAP: 2,
    GateKind.SQRTX: 2,
    GateKind.SQRTX_DAG: 2,
    GateKind.CCNOT: 3,
    GateKind.FREDKIN: 3,
}

_CLASSICAL = frozenset(
    {GateKind.NOT, GateKind.CNOT, GateKind.CCNOT, GateKind.FREDKIN, GateKind.SWAP}
)

# sqrt(X) = (1/2) [[1+i, 1-i], [1-i, 1+i]]; squares to X exactly.
_V00 = 0.5 * (1 + 1j)
_V01 = 0.5 * (1 - 1j)
_VDAG00 = _V00.conjugate()
_VDAG01 = _V01.conjugate()


@dataclass(frozen=True)
class Gate:
    """A single gate: a kind plus distinct qubit operands.

    Operand conventions: controls come first, target last, except SWAP and
    FREDKIN where the swapped pair are the last two operands.
    """

    kind: GateKind
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.qubits) != _ARITY[self.kind]:
            raise ValueError(
                f"{self.kind.value} takes {_ARITY[self.kind]} operands, "
                f"got {len(self.qubits)}"
            )
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"operands must be distinct: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"operands must be non-negative: {self.qubits}")

    @property
    def is_classical(self) -> bool:
        return self.kind in _CLASSICAL


def gate(kind: GateKind | str, *qubits: int) -> Gate:
    """Convenience constructor: ``gate("CNOT", control, target)``."""
    if isinstance(kind, str):
        kind = GateKind[kind]
    return Gate(kind, tuple(qubits))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over ``width`` qubits with named register roles.

    ``roles`` maps a register name (e.g. "A", "B", "carry") to an ordered
    tuple of qubit indices, low-order first.  Roles must not overlap.
    """

    width: int
    gates: tuple[Gate, ...]
    roles: Mapping[str, tuple[int, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for g in self.gates:
            if max(g.qubits) >= self.width:
                raise ValueError(f"gate {g} exceeds width {self.width}")
        seen: set[int] = set()
        for name, idxs in self.roles.items():
            for q in idxs:
                if q < 0 or q >= self.width:
                    raise ValueError(f"role {name!r} index {q} out of range")
                if q in seen:
                    raise ValueError(f"role {name!r} overlaps at qubit {q}")
                seen.add(q)
        object.__setattr__(self, "roles", dict(self.roles))
        object.__setattr__(self, "gates", tuple(self.gates))

    @property
    def is_classical(self) -> bool:
        return all(g.is_classical for g in self.gates)

    def role_value(self, state: "BasisState", name: str) -> int:
        """Read the integer held by a named register in ``state``."""
        idxs = self.roles[name]
        return sum(state.bit(q) << i for i, q in enumerate(idxs))

    def with_roles(self, roles: Mapping[str, tuple[int, ...]]) -> "Circuit":
        return Circuit(self.width, self.gates, roles)

    def reversed(self) -> "Circuit":
        """Gate-wise inverse circuit (every gate here is self-inverse except
        SQRTX, which inverts to SQRTX_DAG and vice versa)."""
        inv = {GateKind.SQRTX: GateKind.SQRTX_DAG, GateKind.SQRTX_DAG: GateKind.SQRTX}
        out = tuple(
            Gate(inv.get(g.kind, g.kind), g.qubits) for g in reversed(self.gates)
        )
        return Circuit(self.width, out, self.roles)


@dataclass(frozen=True)
class BasisState:
    """A computational basis state as an integer; qubit 0 is the low bit."""

    value: int
    width: int

    def __post_init__(self) -> None:
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} out of range for width {self.width}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BasisState":
        value = sum((b & 1) << i for i, b in enumerate(bits))
        return cls(value, len(bits))

    @classmethod
    def from_registers(
        cls, width: int, roles: Mapping[str, tuple[int, ...]], **values: int
    ) -> "BasisState":
        """Build a state by assigning integer values to named registers;
        all unmentioned qubits are 0."""
        v = 0
        for name, val in values.items():
            idxs = roles[name]
            if not 0 <= val < (1 << len(idxs)):
                raise ValueError(f"value {val} too wide for register {name!r}")
            for i, q in enumerate(idxs):
                if (val >> i) & 1:
                    v |= 1 << q
        return cls(v, width)

    def bit(self, q: int) -> int:
        return (self.value >> q) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.width))


def _apply_classical(g: Gate, v: int) -> int:
    k = g.kind
    if k is GateKind.NOT:
        return v ^ (1 << g.qubits[0])
    if k is GateKind.CNOT:
        c, t = g.qubits
        return v ^ (((v >> c) & 1) << t)
    if k is GateKind.CCNOT:
        c1, c2, t = g.qubits
        return v ^ ((((v >> c1) & (v >> c2)) & 1) << t)
    if k is GateKind.SWAP:
        a, b = g.qubits
        if ((v >> a) ^ (v >> b)) & 1:
            return v ^ (1 << a) ^ (1 << b)
        return v
    if k is GateKind.FREDKIN:
        c, a, b = g.qubits
        if (v >> c) & 1 and ((v >> a) ^ (v >> b)) & 1:
            return v ^ (1 << a) ^ (1 << b)
        return v
    raise ValueError(f"non-classical gate {g.kind.value} in permutation simulator")


def run_permutation(circuit: Circuit, state: BasisState) -> BasisState:
    """Apply each gate's classical truth table in order.

    Rejects circuits containing SQRTX/SQRTX_DAG gates.
    """
    if state.width != circuit.width:
        raise ValueError("state width does not match circuit width")
    v = state.value
    for g in circuit.gates:
        v = _apply_classical(g, v)
    return BasisState(v, circuit.width)


def truth_table(
    circuit: Circuit, width_bound: int = PERMUTATION_WIDTH_BOUND
) -> list[int]:
    """Full input-to-output map of a classical circuit; asserts bijectivity."""
    if circuit.width > width_bound:
        raise ValueError(
            f"width {circuit.width} exceeds exhaustion bound {width_bound}"
        )
    if not circuit.is_classical:
        raise ValueError("truth_table requires a classical circuit")
    size = 1 << circuit.width
    out = [0] * size
    for v in range(size):
        out[v] = run_permutation(circuit, BasisState(v, circuit.width)).value
    if len(set(out)) != size:
        raise AssertionError("circuit truth table is not a bijection")
    return out


def run_statevector(
    circuit: Circuit,
    state: BasisState | Mapping[int, complex],
    width_bound: int = STATEVECTOR_WIDTH_BOUND,
) -> dict[int, complex]:
    """Dense statevector simulation; returns basis-index -> amplitude.

    ``state`` may be a basis state or a pre-built amplitude map (used e.g.
    to start from an explicit superposition).  Norm is checked to 1e-9.
    """
    if circuit.width > width_bound:
        raise ValueError(
            f"width {circuit.width} exceeds statevector bound {width_bound}"
        )
    size = 1 << circuit.width
    amps = [0j] * size
    if isinstance(state, BasisState):
        if state.width != circuit.width:
            raise ValueError("state width does not match circuit width")
        amps[state.value] = 1.0 + 0j
    else:
        for idx, a in state.items():
            amps[idx] = complex(a)
    norm = sum(abs(a) ** 2 for a in amps)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"input state norm {norm} is not 1")

    for g in circuit.gates:
        if g.is_classical:
            perm_src = [0] * size
            for v in range(size):
                perm_src[_apply_classical(g, v)] = v
            amps = [amps[perm_src[v]] for v in range(size)]
        else:
            c, t = g.qubits
            a00, a01 = (_V00, _V01) if g.kind is GateKind.SQRTX else (_VDAG00, _VDAG01)
            cbit, tbit = 1 << c, 1 << t
            new = list(amps)
            for v in range(size):
                if v & cbit and not v & tbit:
                    lo, hi = amps[v], amps[v | tbit]
                    new[v] = a00 * lo + a01 * hi
                    new[v | tbit] = a01 * lo + a00 * hi
            amps = new
        norm = sum(abs(a) ** 2 for a in amps)
        if abs(norm - 1.0) > 1e-9:
            raise AssertionError("statevector norm drifted past 1e-9")
    return {v: a for v, a in enumerate(amps) if abs(a) > 1e-12}


def _unitary_columns(circuit: Circuit) -> list[dict[int, complex]]:
    return [
        run_statevector(circuit, BasisState(v, circuit.width))
        for v in range(1 << circuit.width)
    ]


def assert_equiv(
    c1: Circuit, c2: Circuit, *, up_to_phase: bool = True
) -> bool:
    """True iff the two circuits implement the same operation.

    Classical circuits are compared by truth table; otherwise the action on
    every basis input is compared via the statevector simulator.  With
    ``up_to_phase`` a single global phase factor is divided out.
    """
    if c1.width != c2.width:
        raise ValueError("circuit widths differ")
    if c1.is_classical and c2.is_classical:
        return truth_table(c1) == truth_table(c2)
    cols1 = _unitary_columns(c1)
    cols2 = _unitary_columns(c2)
    phase: complex | None = None
    for col1, col2 in zip(cols1, cols2):
        if set(col1) != set(col2):
            return False
        for idx, a1 in col1.items():
            a2 = col2[idx]
            if up_to_phase:
                if phase is None:
                    phase = a1 / a2
                if abs(a1 - phase * a2) > 1e-9:
                    return False
            elif abs(a1 - a2) > 1e-9:
                return False
    return True


# ---------------------------------------------------------------------------
# Line-oriented textual dump: one gate per line, "KIND q_i q_j q_k".
# ---------------------------------------------------------------------------

def dump_circuit(circuit: Circuit) -> str:
    lines = [f"{g.kind.value} {' '.join(str(q) for q in g.qubits)}" for g in circuit.gates]
    return "\n".join(lines) + ("\n" if lines else "")


def load_circuit(
    text: str, width: int, roles: Mapping[str, tuple[int, ...]] | None = None
) -> Circuit:
    gates = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        parts = line.split()
        gates.append(Gate(GateKind[parts[0]], tuple(int(p) for p in parts[1:])))
    return Circuit(width, tuple(gates), roles or {})


# ---------------------------------------------------------------------------
# Internal: hybrid tracker for wide circuits whose sqrt(X) usage is
# "semiclassical": every qubit is a classical bit decorated with a mod-4
# count of net sqrt(X) applications.  A controlled-sqrt(X) with a classical
# control increments the target's count; two increments make an X.  Any
# qubit read as a control must be classical (count even) at that moment.
# This verifies nearest-neighbor templates at widths far beyond the dense
# statevector bound.
# ---------------------------------------------------------------------------

def run_vtrack(circuit: Circuit, state: BasisState) -> BasisState:
    if state.width != circuit.width:
        raise ValueError("state width does not match circuit width")
    bits = list(state.bits())
    vcnt = [0] * circuit.width  # net sqrt(X) quarter-turns, mod 4

    def read(q: int) -> int:
        if vcnt[q] % 2:
            raise AssertionError(
                f"qubit {q} read as control while in a non-classical state"
            )
        # Two quarter-turns equal an X (up to phase on the flipped branch);
        # fold them into the classical bit lazily.
        if vcnt[q] % 4 == 2:
            bits[q] ^= 1
            vcnt[q] = 0
        return bits[q]

    for g in circuit.gates:
        k = g.kind
        if k is GateKind.NOT:
            (t,) = g.qubits
            # X commutes with sqrt(X): flip the bit underneath any V count.
            bits[t] ^= 1
        elif k is GateKind.CNOT:
            c, t = g.qubits
            if read(c):
                bits[t] ^= 1
        elif k is GateKind.CCNOT:
            c1, c2, t = g.qubits
            if read(c1) and read(c2):
                bits[t] ^= 1
        elif k is GateKind.SWAP:
            a, b = g.qubits
            bits[a], bits[b] = bits[b], bits[a]
            vcnt[a], vcnt[b] = vcnt[b], vcnt[a]
        elif k is GateKind.FREDKIN:
            c, a, b = g.qubits
            if read(c):
                bits[a], bits[b] = bits[b], bits[a]
                vcnt[a], vcnt[b] = vcnt[b], vcnt[a]
        elif k in (GateKind.SQRTX, GateKind.SQRTX_DAG):
            c, t = g.qubits
            if read(c):
                vcnt[t] = (vcnt[t] + (1 if k is GateKind.SQRTX else 3)) % 4
        else:  # pragma: no cover - exhaustive over GateKind
            raise ValueError(f"unhandled gate kind {k}")
    for q in range(circuit.width):
        if vcnt[q] % 4 == 2:
            bits[q] ^= 1
            vcnt[q] = 0
        if vcnt[q] % 4:
            raise AssertionError(f"qubit {q} left in a non-classical state")
    return BasisState.from_bits(bits)
