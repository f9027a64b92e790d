"""``coexbudget`` command line.

Every subcommand renders a flat record (or, for ``sweep``, a table) as
human-readable text, CSV or JSON.  dB-like values carry 4 decimals and powers
in watts carry 6 significant digits; JSON holds the same rounded numbers.
"""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path
from typing import Any, Callable

import click

from coexbudget import budget as budget_mod
from coexbudget import cabin, capacity, margin, noise
from coexbudget.rfmath import PowerLevel
from coexbudget.standards import MOBILITY_LABELS, ParameterError, Registry, StationKind, default_registry, load_overrides

FORMATS = ("human", "csv", "json")

# (name, value, kind) with kind in {"db", "w", "text", "int"}
Field = tuple[str, Any, str]


def _render_value(value: Any, kind: str) -> str:
    if kind == "text":
        return str(value)
    if kind == "int":
        return str(int(value))
    if isinstance(value, float) and math.isinf(value):
        return "-inf" if value < 0 else "inf"
    if kind == "w":
        return f"{value:.5e}"
    return f"{value:.4f}"


def _json_value(value: Any, kind: str) -> Any:
    text = _render_value(value, kind)
    if kind == "text":
        return text
    if kind == "int":
        return int(text)
    if text in ("-inf", "inf"):
        return None
    return float(text)


def render_record(fields: list[Field], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({n: _json_value(v, k) for n, v, k in fields}, indent=2) + "\n"
    if fmt == "csv":
        header = ",".join(n for n, _, _ in fields)
        row = ",".join(_render_value(v, k) for _, v, k in fields)
        return f"{header}\n{row}\n"
    width = max(len(n) for n, _, _ in fields)
    return "".join(f"{n:<{width}}  {_render_value(v, k)}\n" for n, v, k in fields)


def render_table(rows: list[dict[str, str]], fields: tuple[str, ...]) -> str:
    widths = {f: max(len(f), *(len(r[f]) for r in rows)) for f in fields}
    lines = ["  ".join(f"{f:>{widths[f]}}" for f in fields)]
    lines += ["  ".join(f"{r[f]:>{widths[f]}}" for f in fields) for r in rows]
    return "\n".join(lines) + "\n"


def _power_fields(prefix: str, p: PowerLevel) -> list[Field]:
    return [(f"{prefix}_w", p.watts, "w"), (f"{prefix}_dbmw", p.dbmw, "db")]


class Context:
    def __init__(self) -> None:
        self.fmt = "human"
        self.params: str | None = None
        self.output: str | None = None

    def registry(self) -> Registry:
        if self.params is None:
            return default_registry()
        try:
            return load_overrides(self.params)
        except OSError as exc:
            raise click.ClickException(f"cannot read params file: {exc}") from None

    def emit(self, text: str) -> None:
        if self.output:
            Path(self.output).write_text(text)
        else:
            click.echo(text, nl=False)


def common_options(fn: Callable) -> Callable:
    """Shared flags, accepted either before or after the subcommand name."""

    def set_opt(name: str):
        def callback(ctx: click.Context, _param: click.Parameter, value: Any) -> None:
            if value is not None:
                setattr(ctx.ensure_object(Context), name, value)

        return callback

    fn = click.option("--format", "fmt", type=click.Choice(FORMATS), default=None, expose_value=False,
                      callback=set_opt("fmt"), help="Output format (default human).")(fn)
    fn = click.option("--params", type=click.Path(dir_okay=False), default=None, expose_value=False,
                      callback=set_opt("params"), help="JSON parameter override file.")(fn)
    fn = click.option("--output", type=click.Path(dir_okay=False), default=None, expose_value=False,
                      callback=set_opt("output"), help="Write to this file instead of stdout.")(fn)
    return fn


def _domain_errors(fn: Callable) -> Callable:
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except (ValueError, ParameterError) as exc:
            raise click.ClickException(str(exc)) from None

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


station_option = click.option(
    "--station", type=click.Choice(["ms", "bs"], case_sensitive=False), default="ms", show_default=True,
    help="Victim receiver: mobile station or base station.",
)


@click.group()
@common_options
@click.pass_context
def cli(ctx: click.Context) -> None:
    """Interference budgets for an IEEE 802.20 victim receiver."""
    ctx.ensure_object(Context)


@cli.command("noise")
@station_option
@click.option("--bw-mhz", type=float, required=True, help="Channel bandwidth [MHz].")
@common_options
@click.pass_obj
@_domain_errors
def cmd_noise(obj: Context, station: str, bw_mhz: float) -> None:
    """Receiver noise floor (antenna plus amplifier temperature)."""
    profile = obj.registry().profile(StationKind.parse(station))
    nb = noise.noise_power(profile, bw_mhz * 1e6)
    fields: list[Field] = [
        ("station", station.lower(), "text"),
        ("bw_mhz", bw_mhz, "db"),
        ("nf_db", profile.nf_db, "db"),
        ("t_rx_k", nb.t_rx_k, "db"),
        ("t_amp_k", nb.t_amp_k, "db"),
        ("t_total_k", nb.t_total_k, "db"),
        *_power_fields("noise", nb.noise),
    ]
    obj.emit(render_record(fields, obj.fmt))


def _budget_bandwidth_hz(bw_mhz: float | None, mode: str | None) -> float:
    if mode is not None and bw_mhz is not None:
        raise ValueError("give either --bw-mhz or --mode, not both")
    if mode == "625k":
        return budget_mod.CARRIER_625K_HZ
    if bw_mhz is None:
        raise ValueError("one of --bw-mhz or --mode 625k is required")
    return bw_mhz * 1e6


@cli.command("budget")
@station_option
@click.option("--bw-mhz", type=float, default=None, help="Channel bandwidth [MHz].")
@click.option("--mode", type=click.Choice(["625k"]), default=None, help="625 kHz multicarrier, per carrier.")
@common_options
@click.pass_obj
@_domain_errors
def cmd_budget(obj: Context, station: str, bw_mhz: float | None, mode: str | None) -> None:
    """Maximum tolerable aggregate interference at the allowed degradation."""
    profile = obj.registry().profile(StationKind.parse(station))
    b_hz = _budget_bandwidth_hz(bw_mhz, mode)
    result = budget_mod.max_aggregate_interference(profile, b_hz)
    fields: list[Field] = [
        ("station", station.lower(), "text"),
        ("mode", mode or "bandwidth", "text"),
        ("bw_mhz", b_hz / 1e6, "db"),
        ("d_max_db", result.d_db, "db"),
        ("t_rx_k", profile.t_rx_k, "db"),
        ("nf_db", profile.nf_db, "db"),
        *_power_fields("noise", result.noise.noise),
        *_power_fields("i_agg_max", result.i_agg_max),
        ("i_agg_fraction_of_noise", result.fraction_of_noise, "db"),
    ]
    obj.emit(render_record(fields, obj.fmt))


@cli.command("sweep")
@click.option("--mobility", required=True, help="pedestrian (3 km/hr) or highspeed (120 km/hr).")
@station_option
@common_options
@click.pass_obj
@_domain_errors
def cmd_sweep(obj: Context, mobility: str, station: str) -> None:
    """Threshold for every peak-rate cell at one mobility."""
    key = mobility.strip().lower()
    if key not in MOBILITY_LABELS:
        raise ValueError(f"unknown mobility {mobility!r}; valid labels: {', '.join(MOBILITY_LABELS)}")
    registry = obj.registry()
    points = capacity.generate_sweep(MOBILITY_LABELS[key], registry.profile(StationKind.parse(station)), registry)
    if obj.fmt == "csv":
        text = capacity.sweep_to_csv(points)
    elif obj.fmt == "json":
        text = capacity.sweep_to_json(points)
    else:
        text = render_table([p.row() for p in points], capacity.SWEEP_FIELDS)
    obj.emit(text)


@cli.command("geometry")
@click.option("--length", "length_m", type=float, default=None, help="Cabin length [m].")
@click.option("--width", "width_m", type=float, default=None, help="Cabin width [m].")
@click.option("--height", "height_m", type=float, default=None, help="Cabin height [m].")
@click.option("--master-x", type=float, default=None, help="Master x on the ceiling [m].")
@click.option("--master-y", type=float, default=None, help="Master y on the ceiling [m].")
@click.option("--geometry-file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="JSON {length_m, width_m, height_m, master_x_m?, master_y_m?}.")
@common_options
@click.pass_obj
@_domain_errors
def cmd_geometry(obj: Context, length_m, width_m, height_m, master_x, master_y, geometry_file) -> None:
    """Worst-case master-to-slave distance in the railway car."""
    doc: dict[str, Any] = {}
    if geometry_file:
        try:
            doc = json.loads(Path(geometry_file).read_text())
        except json.JSONDecodeError as exc:
            raise ValueError(f"{geometry_file}: invalid JSON ({exc})") from None
        if not isinstance(doc, dict):
            raise ValueError("geometry file must hold a JSON object")
    flags = {"length_m": length_m, "width_m": width_m, "height_m": height_m,
             "master_x_m": master_x, "master_y_m": master_y}
    doc.update({k: v for k, v in flags.items() if v is not None})
    g = cabin.CabinGeometry.from_mapping(doc)
    corner, dist = cabin.farthest_corner(g)
    opt_x, opt_y = cabin.optimal_master_xy(g)
    best = cabin.worst_case_distance(cabin.CabinGeometry(*g.dims, (opt_x, opt_y, g.height_m)))
    fields: list[Field] = [
        ("length_m", g.length_m, "db"),
        ("width_m", g.width_m, "db"),
        ("height_m", g.height_m, "db"),
        ("master_x_m", g.master[0], "db"),
        ("master_y_m", g.master[1], "db"),
        ("master_z_m", g.master[2], "db"),
        ("worst_case_distance_m", dist, "db"),
        ("corner_x_m", corner[0], "db"),
        ("corner_y_m", corner[1], "db"),
        ("corner_z_m", corner[2], "db"),
        ("optimal_master_x_m", opt_x, "db"),
        ("optimal_master_y_m", opt_y, "db"),
        ("optimal_worst_case_distance_m", best, "db"),
    ]
    obj.emit(render_record(fields, obj.fmt))


@cli.command("margin")
@click.option("--offenders", "offenders_file", type=click.Path(exists=True, dir_okay=False), required=True,
              help="JSON array of {eirp_dbm_per_mhz?, distance_m, frequency_ghz}.")
@click.option("--threshold-dbmw", type=float, default=None, help="Explicit threshold; otherwise derived.")
@station_option
@click.option("--victim-bw-mhz", type=float, default=None, help="Victim bandwidth [MHz].")
@click.option("--mode", type=click.Choice(["625k"]), default=None, help="Victim is one 625 kHz carrier.")
@common_options
@click.pass_obj
@_domain_errors
def cmd_margin(obj: Context, offenders_file, threshold_dbmw, station, victim_bw_mhz, mode) -> None:
    """Aggregate UWB offenders against the victim threshold (free-space extension)."""
    try:
        doc = json.loads(Path(offenders_file).read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{offenders_file}: invalid JSON ({exc})") from None
    sources = margin.parse_offenders(doc)
    b_hz = _budget_bandwidth_hz(victim_bw_mhz, mode)
    if threshold_dbmw is not None:
        threshold = PowerLevel.from_dbmw(threshold_dbmw)
        source = "explicit"
    else:
        profile = obj.registry().profile(StationKind.parse(station))
        threshold = budget_mod.max_aggregate_interference(profile, b_hz).i_agg_max
        source = station.lower()
    report = margin.aggregate_and_margin(sources, threshold, b_hz)
    fields: list[Field] = [
        ("offenders", len(sources), "int"),
        ("victim_bw_mhz", b_hz / 1e6, "db"),
        ("threshold_source", source, "text"),
        *_power_fields("threshold", report.threshold),
        *_power_fields("aggregate", report.aggregate),
        ("margin_db", report.margin_db, "db"),
        ("verdict", report.verdict.value, "text"),
    ]
    obj.emit(render_record(fields, obj.fmt))


@cli.command("params")
@common_options
@click.pass_obj
@_domain_errors
def cmd_params(obj: Context) -> None:
    """Dump the effective parameter registry as JSON."""
    obj.emit(json.dumps(obj.registry().dump(), indent=2) + "\n")


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, prog_name="coexbudget", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
