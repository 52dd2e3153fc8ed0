"""Registry of reproducible summary tables with per-row provenance.

Every number in every table is produced by calling a model operation
from :mod:`qarith.modexp`, :mod:`qarith.network`, or
:mod:`qarith.reliability`, or comes from the published-constant
registers those modules keep; nothing is computed here.  Rows carry a
``provenance`` column distinguishing ``computed`` values from
``published-constant`` ones.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable

from .arch import Arch
from .modexp import (
    Algorithm,
    kq_adder,
    kq_modexp,
    latency_table,
)
from .network import (
    Method,
    Topology,
    cell_info,
    full_modexp_time,
    modexp_adder_calls,
    topo_metrics,
)
from .reliability import REQUIRED_PT_STACKS, required_pt

__all__ = ["Table", "TABLES", "get_table", "render_csv", "render_text",
           "rows_to_csv", "rows_to_text"]

COMPUTED = "computed"
PUBLISHED = "published-constant"


@dataclass(frozen=True)
class Table:
    name: str
    description: str
    columns: tuple[str, ...]
    build: Callable[[], list[dict]]

    def rows(self) -> list[dict]:
        return self.build()


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, float) and x == int(x) and abs(x) < 1e5:
        x = int(x)
    if isinstance(x, int):
        return f"{x:.2e}" if abs(x) >= 1e5 else str(x)
    return f"{x:.2e}" if abs(x) >= 1e5 else f"{x:.3g}"


def rows_to_csv(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(_fmt(row.get(c)) for c in columns)
    return buf.getvalue()


def rows_to_text(columns, rows, title: str = "") -> str:
    cells = [list(columns)]
    cells += [[_fmt(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(cells[0]))]
    out = [title, ""] if title else []
    for j, row in enumerate(cells):
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if j == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def render_csv(table: Table) -> str:
    return rows_to_csv(table.columns, table.rows())


def render_text(table: Table) -> str:
    return rows_to_text(table.columns, table.rows(), table.description)


def _latency128_rows() -> list[dict]:
    ac = {r["algorithm"]: r for r in latency_table(Arch.AC)}
    ntc = {r["algorithm"]: r for r in latency_table(Arch.NTC)}
    rows = []
    for algo in (Algorithm.CVBE, Algorithm.D, Algorithm.E, Algorithm.F,
                 Algorithm.G):
        a, n = ac[algo.value], ntc.get(algo.value)
        rows.append({
            "algorithm": algo.value,
            "ac_ccnot": a["ccnot"], "ac_cnot": a["cnot"],
            "ac_not": a["not"], "ac_space": a["space"],
            "ac_perf": a["perf"],
            "ntc_cnot": n["cnot"] if n else None,
            "ntc_not": n["not"] if n else None,
            "ntc_space": n["space"] if n else None,
            "ntc_perf": n["perf"] if n else None,
            "provenance": COMPUTED,
        })
    return rows


_ADDER_KQ_SYMBOLIC = {
    # adder: (K, Q, KQ) in units of qubit-Toffoli times.
    "VBE": ("3n", "3n", "9n^2"),
    "CDKM": ("2n", "2n", "4n^2"),
    "CSUM": ("6n", "4log2(n)", "24n*log2(n)"),
    "QCLA": ("4n", "4log2(n)", "16n*log2(n)"),
}


def _adder_kq_rows() -> list[dict]:
    rows = []
    for adder, (k, q, kq) in _ADDER_KQ_SYMBOLIC.items():
        rows.append({
            "adder": adder, "k": k, "q": q, "kq": kq,
            "kq_n1024": kq_adder(adder, 1024),
            "provenance": COMPUTED,
        })
    return rows


_MODEXP_KQ_SYMBOLIC = {
    # Factors: multiplier calls x modulo-adds per multiply x adder calls
    # per modulo-add x adder depth x leading qubit count.
    Algorithm.CVBE: ("2n * n * 5 * 3n * 7n", "210n^4", 1),
    Algorithm.D: ("2l * n * 2 * 4log2(n) * 5n", "40n^3*log2(n)", 2),
    Algorithm.E: ("2l * n * 2 * 4log2(n) * 3n", "24n^3*log2(n)", 2),
    Algorithm.F: ("2l * n * 2 * 2n * 3n", "6n^4", 4),
    Algorithm.G: ("2l * n * 3 * 2n * 6n", "18n^4", 4),
}


def _modexp_kq_rows() -> list[dict]:
    rows = []
    for algo, (factors, approx, w) in _MODEXP_KQ_SYMBOLIC.items():
        rows.append({
            "algorithm": algo.value, "kq_factors": factors,
            "kq_approx": approx, "w": w,
            "kq_n1024": kq_modexp(algo, 1024, w),
            "provenance": COMPUTED,
        })
    return rows


_DIST_SIZES = (16, 128, 1024)


def _dist_rows(tier: str) -> list[dict]:
    rows = []
    for adder in ("VBE", "CDKM", "QCLA"):
        for method in Method:
            for topo in Topology:
                try:
                    cells = [cell_info(tier, adder, topo, n, method)
                             for n in _DIST_SIZES]
                except ValueError:
                    continue  # combination has no latency model
                prov = (PUBLISHED if any(c.source == "published"
                                         for c in cells) else COMPUTED)
                rows.append({
                    "adder": adder, "method": method.value,
                    "topology": topo.value,
                    "n16": cells[0].value, "n128": cells[1].value,
                    "n1024": cells[2].value, "provenance": prov,
                })
    return rows


def _qec_strength_rows() -> list[dict]:
    # The two mixed concatenations share one printed row (their failure
    # probabilities nearly coincide), so six code groups x three
    # algorithm lengths = 18 data rows.
    stacks = [s for s in REQUIRED_PT_STACKS
              if str(s) != "[[23,1,7]]i+[[7,1,3]]o"]
    labels = {"[[7,1,3]]i+[[23,1,7]]o":
              "[[23,1,7]]i+[[7,1,3]]o and [[7,1,3]]i+[[23,1,7]]o"}
    rows = []
    for stack in stacks:
        for t in (10**5, 10**8, 10**11):
            rows.append({
                "code": labels.get(str(stack), str(stack)),
                "scale_up": stack.scale_up,
                "teleportations": t,
                "required_pt": required_pt(stack, t),
                "provenance": COMPUTED,
            })
    return rows


def _adder_calls_rows() -> list[dict]:
    rows = []
    for n in _DIST_SIZES:
        calls = modexp_adder_calls(n)
        report = full_modexp_time(n, "VBE", "line")
        rows.append({
            "n": n,
            "adder_calls": calls.value,
            "teleports_low": report.teleports_low,
            "teleports_high": report.teleports_high,
            "provenance": (PUBLISHED if calls.source == "published"
                           else COMPUTED),
        })
    return rows


def _topology_rows(n_nodes: int = 16) -> list[dict]:
    rows = []
    for topo in Topology:
        m = topo_metrics(topo, n_nodes)
        rows.append({"topology": topo.value, "nodes": n_nodes,
                     **m, "provenance": COMPUTED})
    return rows


TABLES: dict[str, Table] = {
    t.name: t for t in [
        Table(
            "latency128",
            "Latency and space to run 128-bit modular exponentiation, "
            "by algorithm and architecture",
            ("algorithm", "ac_ccnot", "ac_cnot", "ac_not", "ac_space",
             "ac_perf", "ntc_cnot", "ntc_not", "ntc_space", "ntc_perf",
             "provenance"),
            _latency128_rows),
        Table(
            "adder-kq",
            "Approximate KQ (qubit-Toffoli times) to add two n-qubit "
            "numbers",
            ("adder", "k", "q", "kq", "kq_n1024", "provenance"),
            _adder_kq_rows),
        Table(
            "modexp-kq",
            "Approximate KQ for complete modular exponentiation",
            ("algorithm", "kq_factors", "kq_approx", "w", "kq_n1024",
             "provenance"),
            _modexp_kq_rows),
        Table(
            "dist-baseline",
            "Distributed adder latency with monolithic teleportation "
            "blocks, in EPR-pair units",
            ("adder", "method", "topology", "n16", "n128", "n1024",
             "provenance"),
            lambda: _dist_rows("baseline")),
        Table(
            "dist-decomposed",
            "Distributed adder latency with decomposed teleportation "
            "blocks, in EPR-creation units",
            ("adder", "method", "topology", "n16", "n128", "n1024",
             "provenance"),
            lambda: _dist_rows("decomposed")),
        Table(
            "qec-strength",
            "Teleportation error rate needed to finish t logical "
            "teleportations with 90% success, by code stack",
            ("code", "scale_up", "teleportations", "required_pt",
             "provenance"),
            _qec_strength_rows),
        Table(
            "adder-calls",
            "Adder calls and teleportation range for one full modular "
            "exponentiation",
            ("n", "adder_calls", "teleports_low", "teleports_high",
             "provenance"),
            _adder_calls_rows),
        Table(
            "topologies",
            "Characteristics of the five network topologies at 16 nodes",
            ("topology", "nodes", "degree", "diameter", "avg_distance",
             "bisection", "total_links", "provenance"),
            _topology_rows),
    ]
}


def get_table(name: str) -> Table:
    table = TABLES.get(name)
    if table is None:
        raise KeyError(
            f"unknown table {name!r}; valid names: {', '.join(sorted(TABLES))}")
    return table
