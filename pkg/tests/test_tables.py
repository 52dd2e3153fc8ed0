"""Tests for the summary-table registry and renderers."""

import pytest

from qarith.modexp import kq_adder, kq_modexp
from qarith.network import cell_info, latency_baseline
from qarith.reliability import GOLAY_2317, CodeStack, required_pt
from qarith.tables import TABLES, get_table, render_csv, render_text

EXPECTED_NAMES = {
    "latency128", "adder-kq", "modexp-kq", "dist-baseline",
    "dist-decomposed", "qec-strength", "adder-calls", "topologies",
}


class TestRegistry:
    def test_names(self):
        assert set(TABLES) == EXPECTED_NAMES

    def test_unknown_name_lists_valid_ones(self):
        with pytest.raises(KeyError, match="latency128"):
            get_table("nope")

    def test_every_row_has_provenance(self):
        for table in TABLES.values():
            for row in table.rows():
                assert row["provenance"] in ("computed",
                                             "published-constant")


class TestLatency128:
    def test_five_rows_with_both_arch_columns(self):
        rows = get_table("latency128").rows()
        assert [r["algorithm"] for r in rows] == ["cVBE", "D", "E", "F",
                                                  "G"]
        by_algo = {r["algorithm"]: r for r in rows}
        assert by_algo["cVBE"]["ac_perf"] == 1
        # Wide-fanout algorithms have no neighbor-only model.
        assert by_algo["D"]["ntc_cnot"] is None
        assert by_algo["E"]["ntc_cnot"] is None
        assert by_algo["F"]["ntc_cnot"] is not None

    def test_csv_blanks_for_missing_ntc_cells(self):
        csv_text = render_csv(get_table("latency128"))
        d_row = [ln for ln in csv_text.splitlines()
                 if ln.startswith("D,")][0]
        assert ",,,," in d_row


class TestKQTables:
    def test_adder_kq_symbolic_and_numeric(self):
        rows = {r["adder"]: r for r in get_table("adder-kq").rows()}
        assert rows["VBE"]["kq"] == "9n^2"
        assert rows["CDKM"]["kq"] == "4n^2"
        assert rows["CSUM"]["kq"] == "24n*log2(n)"
        assert rows["QCLA"]["kq"] == "16n*log2(n)"
        for adder, row in rows.items():
            assert row["kq_n1024"] == kq_adder(adder, 1024)

    def test_modexp_kq_symbolic_and_numeric(self):
        rows = {r["algorithm"]: r for r in get_table("modexp-kq").rows()}
        assert rows["cVBE"]["kq_approx"] == "210n^4"
        assert rows["F"]["kq_approx"] == "6n^4"
        for algo, row in rows.items():
            assert row["kq_n1024"] == kq_modexp(algo, 1024, row["w"])


class TestDistTables:
    def test_values_trace_to_network_module(self):
        for row in get_table("dist-baseline").rows():
            assert row["n128"] == latency_baseline(
                row["adder"], row["topology"], 128, row["method"])

    def test_published_rows_flagged(self):
        rows = get_table("dist-decomposed").rows()
        flagged = {(r["adder"], r["method"], r["topology"])
                   for r in rows if r["provenance"] == "published-constant"}
        assert ("CDKM", "telegate", "bus") in flagged
        assert ("CDKM", "telegate", "2bus") in flagged

    def test_ruled_out_combinations_absent(self):
        rows = get_table("dist-baseline").rows()
        assert not any(r["adder"] == "QCLA" and r["topology"] == "line"
                       for r in rows)

    def test_provenance_matches_cell_info(self):
        for tier in ("baseline", "decomposed"):
            for row in get_table(f"dist-{tier}").rows():
                sources = {cell_info(tier, row["adder"], row["topology"],
                                     n, row["method"]).source
                           for n in (16, 128, 1024)}
                want = ("published-constant" if "published" in sources
                        else "computed")
                assert row["provenance"] == want


class TestQecStrength:
    def test_eighteen_rows_with_grouped_scale_ups(self):
        rows = get_table("qec-strength").rows()
        assert len(rows) == 18
        seen = []
        for r in rows:
            if r["scale_up"] not in seen:
                seen.append(r["scale_up"])
        assert seen == [1, 7, 23, 49, 161, 529]

    def test_mixed_row_label_names_both_orderings(self):
        labels = {r["code"] for r in get_table("qec-strength").rows()
                  if r["scale_up"] == 161}
        assert labels == {
            "[[23,1,7]]i+[[7,1,3]]o and [[7,1,3]]i+[[23,1,7]]o"}

    def test_values_trace_to_reliability_module(self):
        for r in get_table("qec-strength").rows():
            if r["scale_up"] == 23:
                assert r["required_pt"] == required_pt(
                    CodeStack(GOLAY_2317), r["teleportations"])


class TestAdderCalls:
    def test_published_vs_computed(self):
        rows = {r["n"]: r for r in get_table("adder-calls").rows()}
        assert rows[16]["adder_calls"] == 481
        assert rows[16]["provenance"] == "published-constant"
        assert rows[1024]["adder_calls"] == 2 * 1024**2
        assert rows[1024]["provenance"] == "computed"


class TestRendering:
    def test_csv_deterministic(self):
        for table in TABLES.values():
            assert render_csv(table) == render_csv(table)

    def test_csv_scientific_notation_threshold(self):
        csv_text = render_csv(get_table("latency128"))
        assert "1.25e+08" in csv_text  # >= 1e5 -> scientific
        assert ",897," in csv_text     # < 1e5 -> plain

    def test_csv_quotes_cells_containing_commas(self):
        csv_text = render_csv(get_table("qec-strength"))
        assert '"[[7,1,3]]"' in csv_text

    def test_text_render_has_header_rule(self):
        text = render_text(get_table("adder-kq"))
        lines = text.splitlines()
        assert lines[2].startswith("adder")
        assert set(lines[3]) <= {"-", " "}
