"""Closed-form cost model for complete quantum modular exponentiation.

Composes the adder latency closed forms with multiplier-call counts,
modulo-reduction strategies, and indirect (table-lookup) argument
setting to produce latency, space, and KQ estimates for six algorithm
variants:

* ``cVBE``  -- concurrent VBE carry-ripple, the baseline.
* ``BCDP``  -- Beckman-Chari-Devabhaktuni-Preskill, closed totals only.
* ``D``     -- conditional-sum adders, overflow-block modulo, indirection.
* ``E``     -- carry-lookahead adders, same framework as D.
* ``F``     -- CDKM carry-ripple adders, same framework as D.
* ``G``     -- minimal-space CDKM with three-adder modulo reduction.

All results are analytic; no circuits are simulated here.  The adder
closed forms are cross-checked against generated circuits in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .arch import Arch, CostTriple

__all__ = [
    "Algorithm",
    "ModExpConfig",
    "CostReport",
    "ModAddCost",
    "adder_latency",
    "adder_sequential_counts",
    "argset_latency",
    "csla_optimal_m",
    "kq_adder",
    "kq_modexp",
    "modadd_calls",
    "modexp_latency",
    "mult_calls",
    "published_configs",
    "latency_table",
    "table_csv",
    "tradeoff_cost",
    "tradeoff_optimal_w",
]


class Algorithm(str, Enum):
    CVBE = "cVBE"
    BCDP = "BCDP"
    D = "D"
    E = "E"
    F = "F"
    G = "G"


# Published argument-setting costs per enable line: (ccnot, cnot, not,
# concurrency, extra qubits).  See adders.gen_argset for the circuits.
_ARGSET = {
    1: (0, 0, 0, 1, 0),
    2: (4, 0, 4, 4, 5),
    3: (24, 0, 8, 8, 9),
    4: (48, 0, 16, 16, 18),
}


def _log2ceil(x: int) -> int:
    return max(0, (x - 1).bit_length())


def csla_optimal_m(n: int) -> int:
    """Group size minimizing carry-select latency, m ~ sqrt(8n/5)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return max(1, round(math.sqrt(8 * n / 5)))


def adder_sequential_counts(kind: str, n: int, *, m: int | None = None,
                            g: int | None = None, f: int | None = None):
    """Sequential gate totals (ccnot, cnot, not) for a generated adder.

    These match count_gates() over the circuits exactly; see the count
    functions in qarith.adders.
    """
    from . import adders

    kind = kind.upper()
    if kind == "VBE":
        return adders.vbe_counts(n)
    if kind == "CDKM":
        return adders.cdkm_counts(n)
    if kind == "QCLA":
        return adders.qcla_counts(n)
    if kind == "CSLA":
        m = m if m is not None else csla_optimal_m(n)
        f = f if f is not None else m
        return adders.csla_counts(n, m, f)
    if kind == "CSUM":
        if m is None or g is None:
            raise ValueError("CSUM sequential counts need m and g")
        return adders.csum_counts(n, m, g)
    raise ValueError(f"no sequential closed form for adder kind {kind!r}")


def adder_latency(kind: str, n: int, arch: Arch = Arch.AC, *,
                  m: int | None = None, g: int | None = None,
                  f: int | None = None, concurrent: bool = True) -> CostTriple:
    """Closed-form latency triple for one n-bit addition on an architecture.

    With ``concurrent=False`` returns the sequential gate totals instead
    (useful for cross-checking against generated circuits).  Raises
    ValueError for (kind, arch) pairs that have no model, e.g. the
    wide-fanout adders on the neighbor-only architecture.
    """
    kind = kind.upper()
    if n < 1:
        raise ValueError("n must be >= 1")
    if not concurrent:
        cc, cn, x = adder_sequential_counts(kind, n, m=m, g=g, f=f)
        return CostTriple(cc, cn, x)

    if arch == Arch.NTC:
        if kind == "VBE":
            return CostTriple(0, 20 * n - 15, 0, concurrency=2, space=3 * n + 1)
        if kind == "CDKM":
            return CostTriple(0, 10 * n + 5, 0, concurrency=2, space=2 * n + 2)
        raise ValueError(
            f"unsupported adder {kind!r} on NTC: no neighbor-only model exists"
        )

    if kind == "VBE":
        return CostTriple(3 * n - 3, 2 * n - 3, 0, concurrency=3, space=3 * n)
    if kind == "BCDP":
        # Sequential modulo adder; no concurrent variant is modeled.
        return CostTriple(6 * n - 2, 2 * n, 2, concurrency=1, space=3 * n)
    if kind == "CDKM":
        return CostTriple(2 * n - 1, 5, 0, concurrency=6, space=2 * n + 2)
    if kind == "QCLA":
        k = _log2ceil(n)
        return CostTriple(4 * k + 3, 4, 2, concurrency=n,
                          space=4 * n - k - 1)
    if kind == "CSLA":
        m = m if m is not None else csla_optimal_m(n)
        f = f if f is not None else m
        g = g if g is not None else (n - f) // m + 1
        if f + (g - 1) * m != n:
            raise ValueError("CSLA parameters must satisfy n = f + (g-1)m")
        return CostTriple(4 * g + 5 * m / 2 - 6, 6, 2 * g - 2,
                          concurrency=g,
                          space=(6 * m - 1) * (g - 1) + 3 * f + 4 * g)
    if kind == "CSUM":
        if m is None or g is None:
            raise ValueError("CSUM latency needs m and g")
        f = f if f is not None else n - (g - 1) * m
        if f < 1 or f + (g - 1) * m != n:
            raise ValueError("CSUM parameters must satisfy n = f + (g-1)m")
        lg = _log2ceil(g - 1)
        space = (6 * m - 1) * (g - 1) + 3 * f + math.ceil(
            3 * (g - 1) / 2 - 2 + (n - f) / 2)
        return CostTriple(2 * m + 4 * lg + 2, 4, 4 * lg + 2,
                          concurrency=g, space=space)
    raise ValueError(f"unknown adder kind {kind!r}")


def argset_latency(w: int, arch: Arch = Arch.AC) -> CostTriple:
    """Cost of classically-driven argument setting for a 2^w-entry table.

    On the neighbor-only architecture each CCNOT expands to five
    two-qubit gates; the NOT rail is unchanged.
    """
    if w not in _ARGSET:
        raise ValueError("argument setting modeled for w in 1..4")
    cc, cn, x, conc, extra = _ARGSET[w]
    if arch == Arch.NTC:
        return CostTriple(0, 5 * cc + cn, x, concurrency=conc, space=extra)
    return CostTriple(cc, cn, x, concurrency=conc, space=extra)


def mult_calls(n: int, s: int, w: int = 1) -> int:
    """Total latency of modular exponentiation, in multiplier calls.

    ``s`` multiplier blocks run concurrently over the l = ceil((2n+1)/w)
    table-lookup multiplications; the tail that does not fill all blocks
    is combined in a log-depth tree.  ``w=1`` is the direct
    (non-indirect) case.
    """
    if not 1 <= s <= n:
        raise ValueError("need 1 <= s <= n")
    if w < 1:
        raise ValueError("w must be >= 1")
    L = math.ceil((2 * n + 1) / w)
    r = L // s - (1 if L % s == 0 else 0)
    tail = math.ceil((s - L + r * s) / 4) + (L - r * s)
    return 2 * r + 1 + (math.ceil(math.log2(tail)) if tail > 1 else 0)


@dataclass(frozen=True)
class ModAddCost:
    """Adder calls to implement the modulo reductions of one multiplication.

    ``per_mult`` is the in-loop cost; ``cleanup`` is the one-time
    end-of-computation cost of squeezing accumulated overflow back below
    the modulus (zero except for the overflow-accumulation strategy).
    """

    per_mult: float
    cleanup: int = 0


def modadd_calls(n: int, strategy: str, *, p: int | None = None,
                 b: int | None = None) -> ModAddCost:
    """Adder calls per modular multiplication for a reduction strategy.

    * ``VBE5``: five adders per modular addition (5n total).
    * ``EMA3``: three adders per modular addition (3n total).
    * ``OVERFLOW``: let overflow accumulate in ``p`` extra qubits and
      reduce once every ``b`` additions; (2b+1)/b adders per addition,
      plus 3p cleanup adders at the end.
    """
    strategy = strategy.upper()
    if strategy == "VBE5":
        return ModAddCost(5 * n)
    if strategy == "EMA3":
        return ModAddCost(3 * n)
    if strategy == "OVERFLOW":
        if p is None or b is None:
            raise ValueError("OVERFLOW strategy needs p and b")
        if b > 2 ** (p - 1):
            raise ValueError("b must not exceed 2^(p-1)")
        return ModAddCost(n * (2 * b + 1) / b, cleanup=3 * p)
    raise ValueError(f"unknown modulo strategy {strategy!r}")


@dataclass(frozen=True)
class ModExpConfig:
    algorithm: Algorithm
    n: int
    arch: Arch = Arch.AC
    w: int = 1
    s: int = 1
    p: int | None = None          # overflow qubits (OVERFLOW strategy)
    b: int | None = None          # additions per modulo reduction
    m: int | None = None          # adder group size
    g: int | None = None          # adder group count
    f: int | None = None          # first-group (ripple) size
    qacm: bool = False            # model lookup as cost-free quantum memory

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 1 <= self.s <= self.n:
            raise ValueError("need 1 <= s <= n")
        if not 1 <= self.w <= 4:
            raise ValueError("w must be in 1..4")
        if self.p is not None and self.b is not None:
            if self.b > 2 ** (self.p - 1):
                raise ValueError("b must not exceed 2^(p-1)")


@dataclass(frozen=True)
class CostReport:
    latency: CostTriple
    space: int
    adder_calls: float
    mult_calls: int
    kq: float

    def __post_init__(self):
        if self.space < 0 or self.adder_calls < 0 or self.kq < 0:
            raise ValueError("cost fields must be nonnegative")


def kq_adder(kind: str, n: int) -> float:
    """Approximate qubit-Toffoli-time product to add two n-qubit numbers."""
    kind = kind.upper()
    forms = {
        "VBE": 9 * n * n,
        "CDKM": 4 * n * n,
        "CSUM": 24 * n * math.log2(n),
        "QCLA": 16 * n * math.log2(n),
    }
    if kind not in forms:
        raise ValueError(f"no KQ closed form for adder kind {kind!r}")
    return forms[kind]


def kq_modexp(algorithm: Algorithm | str, n: int, w: int = 1) -> float:
    """Approximate KQ for complete modular exponentiation.

    The factors are, in order: modulo multiplier calls 2*ceil(n/w),
    modulo adder calls per multiplier, adder calls per modulo adder,
    adder depth, and leading-order qubit count.  Disentangled multiplier
    regions are excluded, so the total is 2*ceil(n/w) times one
    multiplier's KQ regardless of how many run concurrently.
    """
    alg = Algorithm(algorithm)
    l2 = 2 * math.ceil(n / w)
    lg = math.log2(n)
    per_mult = {
        Algorithm.CVBE: n * 5 * (3 * n) * (7 * n),
        Algorithm.D: n * 2 * (4 * lg) * (5 * n),
        Algorithm.E: n * 2 * (4 * lg) * (3 * n),
        Algorithm.F: n * 2 * (2 * n) * (3 * n),
        Algorithm.G: n * 3 * (2 * n) * (6 * n),
    }
    if alg not in per_mult:
        raise ValueError(f"no published KQ closed form for {alg.value}")
    if alg is Algorithm.CVBE and w != 1:
        raise ValueError("cVBE does not use indirection (w must be 1)")
    return l2 * per_mult[alg]


# Adder kind and modulo strategy used by each algorithm variant.
_ALGO_ADDER = {
    Algorithm.D: ("CSUM", "OVERFLOW"),
    Algorithm.E: ("QCLA", "OVERFLOW"),
    Algorithm.F: ("CDKM", "OVERFLOW"),
    Algorithm.G: ("CDKM", "EMA3"),
}


def _space(cfg: ModExpConfig, adder_space: int) -> int:
    """Total qubits: s multiplier blocks plus the shared exponent register.

    Each block holds the adder's workspace, the 2^w lookup constants'
    staging register plus select line, any overflow qubits, and -- for
    in-place adders only -- a separate n-qubit output register (the
    conditional-sum adder already carries its output copies, and the
    minimal-space variant G reuses its input register).  The exponent
    register contributes the final 2n+1.
    """
    n = cfg.n
    per_block = adder_space + 2 ** cfg.w + 1
    if cfg.algorithm in (Algorithm.D, Algorithm.E, Algorithm.F):
        per_block += cfg.p
    if cfg.algorithm in (Algorithm.E, Algorithm.F):
        per_block += 2 * n
    else:
        per_block += n
    return cfg.s * per_block + 2 * n + 1


def modexp_latency(cfg: ModExpConfig) -> CostReport:
    """Latency, space, call counts, and KQ for one algorithm variant."""
    n, arch = cfg.n, cfg.arch

    if cfg.algorithm is Algorithm.CVBE:
        calls = 20 * n * n - 5 * n
        add = adder_latency("VBE", n, arch)
        return CostReport(
            latency=add.scaled(calls),
            space=7 * n + 1,
            adder_calls=calls,
            mult_calls=mult_calls(n, 1, 1),
            kq=kq_modexp(Algorithm.CVBE, n),
        )

    if cfg.algorithm is Algorithm.BCDP:
        # Closed totals only; no circuit or concurrency model.  KQ is
        # the honest qubit-count x Toffoli-depth product (no published
        # closed form exists for this variant).
        t = CostTriple(
            54 * n**3 - 127 * n**2 + 108 * n - 29,
            10 * n**3 + 15 * n**2 - 38 * n + 14,
            20 * n**3 - 38 * n**2 + 22 * n - 4,
            concurrency=1,
            space=5 * n + 3,
        )
        return CostReport(
            latency=t,
            space=5 * n + 3,
            adder_calls=9 * n * n,
            mult_calls=mult_calls(n, 1, 1),
            kq=(5 * n + 3) * t.ccnot,
        )

    kind, strategy = _ALGO_ADDER[cfg.algorithm]
    add = adder_latency(kind, n, arch, m=cfg.m, g=cfg.g, f=cfg.f)
    arg = (CostTriple(0, 0, 0) if cfg.qacm
           else argset_latency(cfg.w, arch))
    r_i = mult_calls(n, cfg.s, cfg.w)
    mod = modadd_calls(n, strategy, p=cfg.p, b=cfg.b)

    per_gate = add.plus(arg)
    latency = per_gate.scaled(r_i * mod.per_mult).plus(
        add.scaled(mod.cleanup))
    return CostReport(
        latency=latency,
        space=_space(cfg, add.space),
        adder_calls=r_i * mod.per_mult + mod.cleanup,
        mult_calls=r_i,
        kq=kq_modexp(cfg.algorithm, n, cfg.w),
    )


def published_configs() -> dict[Algorithm, ModExpConfig]:
    """Parameter choices for the 128-bit comparison table."""
    n = 128
    return {
        Algorithm.CVBE: ModExpConfig(Algorithm.CVBE, n),
        Algorithm.D: ModExpConfig(Algorithm.D, n, w=2, s=12, p=11, b=1024,
                                  m=4, g=32, f=4),
        Algorithm.E: ModExpConfig(Algorithm.E, n, w=2, s=16, p=10, b=512),
        Algorithm.F: ModExpConfig(Algorithm.F, n, w=4, s=20, p=10, b=512),
        Algorithm.G: ModExpConfig(Algorithm.G, n, w=4, s=1),
    }


def latency_table(arch: Arch = Arch.AC, n: int = 128) -> list[dict]:
    """Rows for the n-bit comparison table on one architecture.

    Performance is relative to cVBE, measured on CCNOT counts for the
    abstract-concurrent architecture and on CNOT counts for the
    neighbor-only one (the only gates each model charges for).
    """
    if n != 128:
        raise ValueError("published parameter choices exist only for n=128")
    configs = published_configs()
    if arch == Arch.NTC:
        # Wide-fanout adders (D, E) have no neighbor-only model.
        algos = [Algorithm.CVBE, Algorithm.F, Algorithm.G]
    else:
        algos = list(configs)
    reports = {}
    for a in algos:
        cfg = configs[a]
        reports[a] = modexp_latency(ModExpConfig(
            a, cfg.n, arch=arch, w=cfg.w, s=cfg.s, p=cfg.p, b=cfg.b,
            m=cfg.m, g=cfg.g, f=cfg.f))
    base = reports[Algorithm.CVBE].latency
    rows = []
    for a in algos:
        r = reports[a]
        perf = (base.ccnot / r.latency.ccnot if arch == Arch.AC
                else base.cnot / r.latency.cnot)
        rows.append({
            "algorithm": a.value,
            "n": n,
            "arch": arch.name,
            "ccnot": r.latency.ccnot,
            "cnot": r.latency.cnot,
            "not": r.latency.nots,
            "space": r.space,
            "perf": perf,
            "kq": r.kq,
        })
    return rows


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, float) and x == int(x) and abs(x) < 1e5:
        x = int(x)
    if isinstance(x, int):
        return f"{x:.2e}" if abs(x) >= 1e5 else str(x)
    return f"{x:.2e}" if abs(x) >= 1e5 else f"{x:.3g}"


def table_csv(rows: list[dict]) -> str:
    """Render table rows as CSV, large magnitudes in scientific notation."""
    cols = ["algorithm", "n", "arch", "ccnot", "cnot", "not",
            "space", "perf", "kq"]
    lines = [",".join(cols)]
    for row in rows:
        lines.append(",".join(_fmt(row[c]) for c in cols))
    return "\n".join(lines) + "\n"


def tradeoff_cost(n: int, w: int, quantum_classical_ratio: float) -> float:
    """Combined cost of word length w.

    Each of the ceil(2n/w) multiplication steps costs one quantum
    multiplication (weighted by how much dearer quantum operations are)
    plus the classical precomputation of its 2^w-entry lookup table.
    """
    if w < 1:
        raise ValueError("w must be >= 1")
    if quantum_classical_ratio <= 0:
        raise ValueError("ratio must be positive")
    return math.ceil(2 * n / w) * (quantum_classical_ratio + 2 ** w)


def tradeoff_optimal_w(n: int, quantum_classical_ratio: float,
                       w_max: int = 64) -> int:
    """Integer word length minimizing tradeoff_cost."""
    return min(range(1, w_max + 1),
               key=lambda w: tradeoff_cost(n, w, quantum_classical_ratio))
