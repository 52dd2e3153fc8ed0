"""Command-line front end.

Thin client over the HTTP service: every command issues requests to the
FastAPI app in-process (no socket), so the CLI and a deployed server
expose identical behavior.  Exit codes: 0 success, 1 verification
failure, 2 usage error.
"""

from __future__ import annotations

import asyncio
import sys
from pathlib import Path

import click
import httpx

from .service import app
from .tables import rows_to_csv, rows_to_text

EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


def request(method: str, path: str, **kwargs) -> httpx.Response:
    """Issue one request against the service app in-process."""

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://qarith") as client:
            return await client.request(method, path, **kwargs)

    return asyncio.run(go())


def load_config(path: str | None, allowed: set[str]) -> dict[str, str]:
    """Parse a flat key=value config file; unknown keys are rejected."""
    if path is None:
        return {}
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise click.UsageError(
                f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in allowed:
            raise click.UsageError(
                f"{path}:{lineno}: unknown key {key!r}; "
                f"valid keys: {', '.join(sorted(allowed))}")
        values[key] = value.strip()
    return values


def effective(ctx: click.Context, config: dict[str, str]) -> dict:
    """Merge config-file values under explicit command-line flags."""
    merged = {}
    for name, value in ctx.params.items():
        if name in ("config", "out", "format"):
            continue
        source = ctx.get_parameter_source(name)
        if (name in config
                and source == click.core.ParameterSource.DEFAULT):
            merged[name] = config[name]
        else:
            merged[name] = value
    return merged


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def check(resp: httpx.Response) -> dict:
    if resp.status_code >= 400:
        detail = resp.json().get("detail", resp.text)
        raise click.UsageError(str(detail))
    return resp.json()


format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "text"]), default="csv",
    show_default=True, help="Output format.")
out_option = click.option(
    "--out", type=click.Path(dir_okay=False, writable=True), default=None,
    help="Write output to a file instead of stdout.")
config_option = click.option(
    "--config", type=click.Path(exists=True, dir_okay=False), default=None,
    help="Flat key=value config file; flags override it.")


@click.group()
def main() -> None:
    """Generate, verify, and cost-model reversible arithmetic circuits."""


@main.command()
@click.option("--n-max", "n_max", type=int, default=4, show_default=True,
              help="Verify every adder kind exhaustively for 1..n_max.")
@format_option
@out_option
@config_option
@click.pass_context
def verify(ctx, n_max, fmt, out, config):
    """Exhaustively verify all adder circuits against the simulators."""
    params = effective(ctx, load_config(config, {"n_max"}))
    data = check(request("POST", "/verify",
                         json={"n_max": int(params["n_max"])}))
    columns = ("adder", "n", "ccnot", "cnot", "nots", "counts_match",
               "correct", "detail")
    rows = [{c: r.get(c) for c in columns} for r in data["results"]]
    for row in rows:
        row["counts_match"] = "yes" if row["counts_match"] else "NO"
        row["correct"] = "yes" if row["correct"] else "NO"
    render = rows_to_csv if fmt == "csv" else rows_to_text
    emit(render(columns, rows), out)
    if not data["passed"]:
        first = next(r for r in data["results"]
                     if not (r["correct"] and r["counts_match"]))
        click.echo(f"FAILED: {first['adder']} n={first['n']}: "
                   f"{first['detail']}", err=True)
        sys.exit(EXIT_VERIFY_FAILED)


@main.command()
@click.argument("name")
@format_option
@out_option
@config_option
@click.pass_context
def table(ctx, name, fmt, out, config):
    """Emit a registered summary table (see `table list`)."""
    load_config(config, set())
    if name == "list":
        data = check(request("GET", "/tables"))
        emit("".join(f"{t['name']}: {t['description']}\n" for t in data),
             out)
        return
    data = check(request("GET", f"/tables/{name}"))
    if fmt == "csv":
        emit(data["csv"], out)
    else:
        emit(rows_to_text(data["columns"], data["rows"],
                          data["description"]), out)


def _parse_list(value, cast):
    items = [v for v in str(value).replace(",", " ").split() if v]
    return [cast(v) for v in items]


@main.command()
@click.option("--n", "n_values", default="16,32,64,128,256,512,1024",
              show_default=True, help="Problem sizes (comma-separated).")
@click.option("--epr", "epr_values", default="10,160,1280",
              show_default=True,
              help="EPR-pair creation times in ns (comma-separated).")
@click.option("--method", default="teledata", show_default=True,
              type=click.Choice(["teledata", "telegate"]))
@format_option
@out_option
@config_option
@click.pass_context
def sweep(ctx, n_values, epr_values, method, fmt, out, config):
    """Timed-latency grid over problem size and EPR creation time."""
    params = effective(ctx, load_config(config,
                                        {"n_values", "epr_values",
                                         "method"}))
    body = {"n_values": _parse_list(params["n_values"], int),
            "epr_values": _parse_list(params["epr_values"], float),
            "method": params["method"]}
    if not body["n_values"] or not body["epr_values"]:
        raise click.UsageError("sweep axes must be non-empty")
    cells = check(request("POST", "/sweep", json=body))
    columns = ("n", "epr_ns", "vbe_line_ns", "cdkm_line_ns",
               "qcla_2fully_ns", "fastest")
    render = rows_to_csv if fmt == "csv" else rows_to_text
    emit(render(columns, cells), out)


@main.command()
@click.option("--adder", required=True,
              type=click.Choice(["VBE", "CDKM", "QCLA"]))
@click.option("--topology", required=True,
              type=click.Choice(["bus", "2bus", "line", "fully", "2fully"]))
@click.option("--n", type=int, required=True)
@click.option("--method", default="teledata", show_default=True,
              type=click.Choice(["teledata", "telegate"]))
@click.option("--epr-ns", type=float, default=10.0, show_default=True)
@click.option("--classical-ns", type=float, default=10.0, show_default=True)
@click.option("--modexp", is_flag=True,
              help="Also report the full modular-exponentiation run time.")
@format_option
@out_option
@config_option
@click.pass_context
def simulate(ctx, adder, topology, n, method, epr_ns, classical_ns,
             modexp, fmt, out, config):
    """Timed simulation of one distributed adder configuration."""
    params = effective(ctx, load_config(
        config, {"adder", "topology", "n", "method", "epr_ns",
                 "classical_ns", "modexp"}))
    body = {"adder": params["adder"], "topology": params["topology"],
            "n": int(params["n"]), "method": params["method"],
            "timing": {"epr_ns": float(params["epr_ns"]),
                       "classical_ns": float(params["classical_ns"])},
            "modexp": str(params["modexp"]).lower() in ("true", "1")}
    data = check(request("POST", "/simulate", json=body))
    columns = tuple(k for k, v in data.items() if v is not None)
    render = rows_to_csv if fmt == "csv" else rows_to_text
    emit(render(columns, [data]), out)


@main.command()
@click.option("--inner", default=None,
              type=click.Choice(["[[7,1,3]]", "[[23,1,7]]"]),
              help="Inner code (omit for unencoded qubits).")
@click.option("--outer", default=None,
              type=click.Choice(["[[7,1,3]]", "[[23,1,7]]"]),
              help="Outer concatenation level.")
@click.option("--teleportations", "-t", type=float, default=1e8,
              show_default=True)
@click.option("--target-pa", type=float, default=0.1, show_default=True,
              help="Acceptable whole-algorithm failure probability.")
@format_option
@out_option
@config_option
@click.pass_context
def reliability(ctx, inner, outer, teleportations, target_pa, fmt, out,
                config):
    """Required teleportation error rate for a code stack."""
    params = effective(ctx, load_config(
        config, {"inner", "outer", "teleportations", "target_pa"}))
    body = {"inner": params["inner"] or None,
            "outer": params["outer"] or None,
            "teleportations": float(params["teleportations"]),
            "target_pa": float(params["target_pa"])}
    data = check(request("POST", "/reliability", json=body))
    columns = ("code", "scale_up", "teleportations", "required_pt",
               "required_pt_numeric", "achieved_pa")
    render = rows_to_csv if fmt == "csv" else rows_to_text
    emit(render(columns, [data]), out)


if __name__ == "__main__":
    main()
