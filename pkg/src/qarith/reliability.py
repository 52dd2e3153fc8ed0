"""Analytic reliability model for teleported, QEC-encoded logical qubits.

Covers block and whole-algorithm failure probabilities for one- and
two-level concatenated CSS codes, the teleportation error rate required
to finish an algorithm of t logical teleportations, the memory penalty
of serial links, and the EPR-pair costs of creating distributed logical
zeroes and running distributed QEC cycles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuits import Circuit, gate

__all__ = [
    "Code",
    "CodeStack",
    "STEANE_713",
    "GOLAY_2317",
    "REQUIRED_PT_STACKS",
    "p_block",
    "p_alg",
    "required_pt",
    "required_pt_numeric",
    "serial_memory_penalty",
    "ZeroCost",
    "logical_zero_epr_cost",
    "DQECCost",
    "dqec_cycle_epr",
    "steane_zero_encoder",
    "steane_codewords",
    "required_pt_table",
]


@dataclass(frozen=True)
class Code:
    """An [[n, k, d]] quantum error-correcting code."""

    n: int
    k: int
    d: int

    def __post_init__(self):
        if self.k < 1 or self.n < self.k:
            raise ValueError("need n >= k >= 1")
        if self.d % 2 == 0:
            raise ValueError("d must be odd")

    @property
    def correctable(self) -> int:
        return (self.d - 1) // 2

    @property
    def lowest_failure_mode(self) -> int:
        """Smallest number of errors the code cannot correct, (d+1)/2."""
        return (self.d + 1) // 2

    def __str__(self):
        return f"[[{self.n},{self.k},{self.d}]]"


STEANE_713 = Code(7, 1, 3)
GOLAY_2317 = Code(23, 1, 7)


@dataclass(frozen=True)
class CodeStack:
    """One or two levels of concatenated coding; inner=None means unencoded."""

    inner: Code | None = None
    outer: Code | None = None

    def __post_init__(self):
        if self.inner is None and self.outer is not None:
            raise ValueError("outer code requires an inner code")

    @property
    def scale_up(self) -> int:
        if self.inner is None:
            return 1
        return self.inner.n * (self.outer.n if self.outer else 1)

    def __str__(self):
        if self.inner is None:
            return "(none)"
        if self.outer is None:
            return str(self.inner)
        return f"{self.inner}i+{self.outer}o"


def p_block(code: Code, p_t: float, exact: bool = True) -> float:
    """Probability that one code block fails during qubit-wise teleport.

    Counts only the lowest failure mode m = (d+1)/2: exactly
    C(n,m) (1-p_t)^(n-m) p_t^m, or the small-p_t form C(n,m) p_t^m.
    """
    if not 0 <= p_t <= 1:
        raise ValueError("p_t must be a probability")
    n, m = code.n, code.lowest_failure_mode
    c = math.comb(n, m)
    if exact:
        return c * (1 - p_t) ** (n - m) * p_t**m
    return c * p_t**m


def p_alg(t: float, stack: CodeStack, p_t: float,
          exact: bool = True) -> float:
    """Failure probability of a whole algorithm of t logical teleports."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if stack.inner is None:
        return 1 - (1 - p_t) ** t if exact else t * p_t
    pe = p_block(stack.inner, p_t, exact=exact)
    if stack.outer is not None:
        no, mo = stack.outer.n, stack.outer.lowest_failure_mode
        # The lowest-failure-mode estimate is not a true probability and
        # can exceed 1 for large p_t; saturate it.
        pe = min(math.comb(no, mo) * pe**mo, 1.0)
    return 1 - (1 - pe) ** t if exact else t * pe


# The published table's code-stack rows, in order of increasing strength.
REQUIRED_PT_STACKS = (
    CodeStack(),
    CodeStack(STEANE_713),
    CodeStack(GOLAY_2317),
    CodeStack(STEANE_713, STEANE_713),
    CodeStack(GOLAY_2317, STEANE_713),
    CodeStack(STEANE_713, GOLAY_2317),
    CodeStack(GOLAY_2317, GOLAY_2317),
)


def _coefficient_and_order(stack: CodeStack) -> tuple[float, int]:
    """K and M such that p_alg ~ t * K * p_t^M in the small-p_t limit."""
    if stack.inner is None:
        return 1.0, 1
    ni, mi = stack.inner.n, stack.inner.lowest_failure_mode
    k, order = float(math.comb(ni, mi)), mi
    if stack.outer is not None:
        no, mo = stack.outer.n, stack.outer.lowest_failure_mode
        k = math.comb(no, mo) * k**mo
        order = mi * mo
    return k, order


def required_pt(stack: CodeStack, t: float, target_pa: float = 0.1) -> float:
    """Teleportation error rate so the whole algorithm fails with
    probability below target_pa, in the published closed forms.

    Symbolic inversion of the small-p_t approximation:
    p_t = (target / (t K))^(1/M), which gives the table's coefficients
    (0.1/t, ~1/(17 t^(1/4)), ~1/(19 t^(1/8)), ~1/(20 t^(1/16))).  The
    single-level [[7,1,3]] row is the one exception: the table prints
    the cruder bound 1/sqrt(21 t) (the inversion at unit failure
    probability), and is reproduced as printed.
    """
    if not 0 < target_pa < 1:
        raise ValueError("target_pa must be in (0, 1)")
    if t < 1:
        raise ValueError("t must be >= 1")
    if stack == CodeStack(STEANE_713):
        return 1 / math.sqrt(21 * t)
    # The mixed stacks have "almost identical" failure probabilities and
    # share a printed row; both use the same coefficient.
    if {stack.inner, stack.outer} == {STEANE_713, GOLAY_2317}:
        stack = CodeStack(STEANE_713, GOLAY_2317)
    k, order = _coefficient_and_order(stack)
    return (target_pa / (t * k)) ** (1 / order)


def required_pt_numeric(stack: CodeStack, t: float,
                        target_pa: float = 0.1) -> float:
    """Invert the exact p_alg by bisection (backs the closed forms)."""
    lo, hi = 0.0, 0.5
    for _ in range(200):
        mid = (lo + hi) / 2
        if p_alg(t, stack, mid, exact=True) > target_pa:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def serial_memory_penalty(code: Code, p_t: float, p_m: float) -> float:
    """Failure-probability ratio of a serial link vs a parallel one.

    On a serial link each of the n qubits waits n-1 teleport times, so
    a qubit picks up memory failure p'_m = 1 - (1-p_m)^(n-1).  Memory
    and teleport errors are convolved up to the lowest failure mode m;
    the ratio against the perfect-memory teleport-only failure is
    returned (1.0 when p_m = 0).
    """
    if not 0 <= p_m <= 1:
        raise ValueError("p_m must be a probability")
    n, m = code.n, code.lowest_failure_mode
    pm_eff = 1 - (1 - p_m) ** (n - 1)
    return _convolved_failure(code, p_t, pm_eff, m) / p_block(code, p_t)


def _convolved_failure(code: Code, p_t: float, pm_eff: float,
                       m: int) -> float:
    n = code.n
    total = 0.0
    for i in range(m + 1):
        p_mem = math.comb(n, i) * pm_eff**i * (1 - pm_eff) ** (n - i)
        j = m - i
        p_tel = math.comb(n, j) * (1 - p_t) ** (n - j) * p_t**j
        total += p_mem * p_tel
    return total


@dataclass(frozen=True)
class ZeroCost:
    telegate: int
    teledata: int
    direction: str  # which node's qubits move, e.g. "B->A"


# EPR-pair costs to create a two-node logical zero of the [[7,1,3]]
# code, by circuit breakpoint.  Teledata never costs more, and tops out
# at floor(7/2) = 3 moved qubits.
_BREAKPOINTS = {
    "a": ZeroCost(2, 1, "B->A"),
    "b": ZeroCost(3, 2, "B->A"),
    "c": ZeroCost(4, 3, "B->A"),
    "d": ZeroCost(3, 3, "A->B"),
    "e": ZeroCost(3, 2, "A->B"),
    "f": ZeroCost(2, 1, "A->B"),
}


def logical_zero_epr_cost(breakpoint: str,
                          method: str | None = None) -> ZeroCost | int:
    """EPR pairs to create a distributed logical zero at a breakpoint.

    With ``method`` given ("telegate"/"teledata") returns just that
    count; otherwise the full cost record including teleport direction.
    """
    cost = _BREAKPOINTS.get(breakpoint)
    if cost is None:
        raise ValueError(f"unknown breakpoint {breakpoint!r}; "
                         f"use one of {sorted(_BREAKPOINTS)}")
    if method is None:
        return cost
    if method == "telegate":
        return cost.telegate
    if method == "teledata":
        return cost.teledata
    raise ValueError("method must be 'telegate' or 'teledata'")


SYNDROMES_PER_CYCLE = 12  # six syndromes, each measured at least twice


@dataclass(frozen=True)
class DQECCost:
    epr_pairs: int
    block_transfer_teleports: int = 7
    # Intermediate distributed QEC costs more teleports (36 worst case)
    # than just moving the whole block and correcting locally, so it
    # cannot reduce the error probability; it is dominated.
    dominated: bool = True


def dqec_cycle_epr(method: str) -> DQECCost:
    """EPR pairs for one full distributed-QEC cycle ([[7,1,3]], split at d).

    Twelve syndrome measurements, each consuming one distributed logical
    zero: sum of the breakpoint column times 12.
    """
    if method == "telegate":
        per = sum(c.telegate for c in _BREAKPOINTS.values())  # 17
    elif method == "teledata":
        per = sum(c.teledata for c in _BREAKPOINTS.values())  # 12
    else:
        raise ValueError("method must be 'telegate' or 'teledata'")
    return DQECCost(epr_pairs=SYNDROMES_PER_CYCLE * per)


def steane_zero_encoder() -> Circuit:
    """CNOT network of the [[7,1,3]] logical-zero encoder.

    The circuit expects qubits 0..2 prepared in the uniform 8-way
    superposition (the role of the three Hadamards); the nine CNOTs then
    build the high four bits as parities of the low three.
    """
    gates = []
    for target, controls in ((3, (0, 1, 2)), (4, (1, 2)), (5, (0, 2)),
                             (6, (0, 1))):
        gates.extend(gate("CNOT", c, target) for c in controls)
    return Circuit(7, tuple(gates),
                   roles={"seed": (0, 1, 2), "parity": (3, 4, 5, 6)})


def steane_codewords() -> frozenset[int]:
    """The eight computational-basis terms of the [[7,1,3]] logical zero."""
    words = []
    for j in range(8):
        b0, b1, b2 = j & 1, (j >> 1) & 1, (j >> 2) & 1
        word = (j | (b0 ^ b1 ^ b2) << 3 | (b1 ^ b2) << 4
                | (b0 ^ b2) << 5 | (b0 ^ b1) << 6)
        words.append(word)
    return frozenset(words)


def required_pt_table(ts=(10**5, 10**8, 10**11)) -> list[dict]:
    """Rows of the necessary-teleportation-error-rate table."""
    rows = []
    for stack in REQUIRED_PT_STACKS:
        for t in ts:
            rows.append({
                "code": str(stack),
                "scale_up": stack.scale_up,
                "teleportations": t,
                "required_pt": required_pt(stack, t),
            })
    return rows
