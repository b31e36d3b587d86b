"""Command-line experiment runner.

    aoi-ra report    --protocol sa --n 10 --q 0.1 --tpk 1
    aoi-ra simulate  --protocol rta --n 10 --k 5 --pi 0.5 --rounds 200000
    aoi-ra sweep     --protocol fsa --n 10 --k 5 --grid 0.05:1:20
    aoi-ra frontier  --protocol sa fsa rta --budgets 0.01:0.2:20
    aoi-ra validate  --protocol rta --n 5 --k 4 --pi 0.5 --rounds 1000000
    aoi-ra figures   fig7 --seed 7

Exit status: 0 success, 1 usage error, 2 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from aoi_ra.analytic import INTERVAL_INDEPENDENT, MF_CONDITIONAL, InfiniteAoIError, report
from aoi_ra.model import (
    InvalidConfigError,
    PhyConfig,
    Protocol,
    ProtocolParams,
    TimingModel,
    timing_for_payload,
)
from aoi_ra.optimizer import (
    InfeasibleBudgetError,
    frontier,
    min_aoi_given_power,
    min_aoi_unconstrained,
    sweep,
)
from aoi_ra.sim import NoUpdateError, SimConfig, simulate

SCHEMA = "aoi-ra/1"
OUTPUT_DIR_ENV = "AOI_RA_OUTPUT_DIR"
COMMANDS = ("report", "simulate", "sweep", "frontier", "validate", "figures")
FIGURES = ("fig4a", "fig4b", "fig7", "fig8", "fig9", "fig10")
EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2
CI_FACTOR = 4.0


class UsageError(Exception):
    pass


@dataclass
class ExperimentSpec:
    command: str
    protocols: tuple[str, ...] = ("sa", "fsa", "rta")
    n: tuple[int, ...] = (10,)
    k: int = 5
    payload_bytes: int = 128
    t_pk: float | None = None
    t_r: float | None = None
    phy: dict[str, Any] = field(default_factory=dict)
    probs: tuple[float, ...] | None = None
    budgets: tuple[float, ...] | None = None
    power: float = 1.0
    seed: int = 1
    rounds: int = 100_000
    warmup: int | None = None
    tracked: int = 0
    figures: tuple[str, ...] = ()
    output: str | None = None
    output_format: str = "csv"
    mf_form: str = MF_CONDITIONAL
    interval_form: str = INTERVAL_INDEPENDENT

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}; choose from {', '.join(COMMANDS)}")
        self.protocols = tuple(Protocol.parse(p).value for p in _as_tuple(self.protocols))
        self.n = tuple(int(v) for v in _as_tuple(self.n))
        if self.probs is not None:
            self.probs = _grid(self.probs)
        if self.budgets is not None:
            self.budgets = _grid(self.budgets)
        self.figures = tuple(_as_tuple(self.figures))
        if self.output_format not in ("csv", "json"):
            raise UsageError(f"output format must be csv or json, got {self.output_format!r}")
        for name in self.figures:
            if name not in FIGURES and name != "all":
                raise UsageError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)} or all")

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "ExperimentSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown experiment fields: {sorted(unknown)}")
        return cls(**dict(data))

    def timing(self) -> TimingModel:
        if self.t_pk is not None:
            return TimingModel(self.t_pk, self.t_r or 0.0)
        return timing_for_payload(self.payload_bytes, PhyConfig.from_mapping(self.phy))

    @property
    def time_unit(self) -> str:
        return "slot" if self.t_pk is not None else "us"

    def forms(self) -> dict[str, str]:
        return {"mf_form": self.mf_form, "interval_form": self.interval_form}


def _as_tuple(value) -> tuple:
    if value is None:
        return ()
    if isinstance(value, (list, tuple)):
        out: list = []
        for v in value:
            out.extend(_as_tuple(v))
        return tuple(out)
    if isinstance(value, str) and "," in value:
        return tuple(v.strip() for v in value.split(",") if v.strip())
    return (value,)


def _grid(value) -> tuple[float, ...]:
    """Numbers, comma lists, or ``start:stop:num`` ranges (inclusive)."""
    out: list[float] = []
    for item in _as_tuple(value):
        if isinstance(item, str) and ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise UsageError(f"range must be start:stop:num, got {item!r}")
            start, stop, num = float(parts[0]), float(parts[1]), int(parts[2])
            # rounding keeps 0.1:0.5:5 at 0.3 rather than 0.30000000000000004
            out.extend(round(float(v), 12) for v in np.linspace(start, stop, num))
        else:
            try:
                out.append(float(item))
            except ValueError:
                raise UsageError(f"not a number: {item!r}") from None
    return tuple(out)


# --------------------------------------------------------------------------
# output


@dataclass
class Table:
    name: str
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)
    meta: dict[str, Any] = field(default_factory=dict)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def render(table: Table, fmt: str) -> str:
    if fmt == "json":
        doc = {"schema": SCHEMA, "table": table.name, **table.meta,
               "rows": [dict(zip(table.columns, row)) for row in table.rows]}
        return json.dumps(doc, indent=2, sort_keys=False, allow_nan=False) + "\n"
    buf = io.StringIO()
    meta = " ".join(f"{k}={_fmt(v)}" for k, v in table.meta.items())
    buf.write(f"# {SCHEMA} table={table.name} {meta}".rstrip() + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _write(text: str, path: str | Path | None) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


# --------------------------------------------------------------------------
# commands


def _meta(spec: ExperimentSpec, timing: TimingModel, **extra) -> dict[str, Any]:
    meta = {"time_unit": spec.time_unit, "power_unit": "P", "t_pk": timing.t_pk, "t_r": timing.t_r}
    meta.update(extra)
    return meta


def _require_probs(spec: ExperimentSpec) -> tuple[float, ...]:
    if not spec.probs:
        raise UsageError(f"{spec.command} needs access probabilities (--prob/--q/--omega/--pi)")
    return spec.probs


def cmd_report(spec: ExperimentSpec) -> list[Table]:
    timing = spec.timing()
    table = Table("report", ("protocol", "n", "k", "access_prob", "avg_aoi", "avg_power", "load",
                             "mean_interval", "p_success"), meta=_meta(spec, timing))
    for proto in spec.protocols:
        for n in spec.n:
            k = 1 if proto == "sa" else spec.k
            for p in _require_probs(spec):
                r = report(proto, p, n, k, timing, spec.power, **spec.forms())
                table.rows.append((proto, n, k, p, r.avg_aoi, r.avg_power, r.load, r.mean_interval, r.p_success))
    return [table]


def _sim_config(spec: ExperimentSpec, proto: str, n: int, p: float, timing: TimingModel) -> SimConfig:
    warmup = spec.warmup if spec.warmup is not None else min(1000, spec.rounds // 10)
    return SimConfig(ProtocolParams(proto, n, p, spec.k, spec.power), timing, spec.rounds, warmup,
                     spec.seed, spec.tracked)


def cmd_simulate(spec: ExperimentSpec) -> list[Table]:
    timing = spec.timing()
    table = Table("simulate", ("protocol", "n", "k", "access_prob", "status", "mean_aoi", "aoi_ci_halfwidth",
                               "mean_power", "power_ci_halfwidth", "mean_interval", "interval_ci_halfwidth",
                               "n_updates", "mean_round_duration", "elapsed_sim_time"),
                  meta=_meta(spec, timing, seed=spec.seed, rounds=spec.rounds))
    for proto in spec.protocols:
        for n in spec.n:
            k = 1 if proto == "sa" else spec.k
            for p in _require_probs(spec):
                try:
                    s = simulate(_sim_config(spec, proto, n, p, timing))
                except NoUpdateError:
                    table.rows.append((proto, n, k, p, "no_update") + (None,) * 9)
                    continue
                table.rows.append((proto, n, k, p, "ok", s.mean_aoi, s.aoi_ci_halfwidth, s.mean_power,
                                   s.power_ci_halfwidth, s.mean_interval, s.interval_ci_halfwidth,
                                   s.n_updates, s.mean_round_duration, s.elapsed_sim_time))
    return [table]


def _default_probs(proto: str) -> tuple[float, ...]:
    grid = tuple(float(v) for v in np.round(np.arange(1, 100) / 100, 10))
    return grid if proto == "sa" else grid + (1.0,)


def cmd_sweep(spec: ExperimentSpec) -> list[Table]:
    timing = spec.timing()
    table = Table("sweep", ("protocol", "n", "k", "access_prob", "load", "avg_aoi", "avg_power"),
                  meta=_meta(spec, timing, load_unit=f"per_{spec.time_unit}"))
    for proto in spec.protocols:
        for n in spec.n:
            k = 1 if proto == "sa" else spec.k
            for row in sweep(proto, n, k, timing, spec.power, spec.probs or _default_probs(proto), **spec.forms()):
                table.rows.append((proto, n, k, row.access_prob, row.load, row.avg_aoi, row.avg_power))
    return [table]


def _default_budgets() -> tuple[float, ...]:
    return tuple(float(v) for v in np.round(np.arange(1, 41) * 0.005, 10))


def cmd_frontier(spec: ExperimentSpec) -> list[Table]:
    timing = spec.timing()
    table = Table("frontier", ("protocol", "n", "k", "power_budget", "best_prob", "min_aoi", "avg_power", "binding"),
                  meta=_meta(spec, timing))
    budgets = spec.budgets or _default_budgets()
    for proto in spec.protocols:
        for n in spec.n:
            k = 1 if proto == "sa" else spec.k
            for pt in frontier(proto, n, k, timing, spec.power, budgets, **spec.forms()):
                table.rows.append((proto, n, k, pt.power_budget, pt.best_prob, pt.min_aoi, pt.avg_power, pt.binding))
    return [table]


def validate_rows(spec: ExperimentSpec, proto: str, n: int, p: float, timing: TimingModel) -> list[tuple]:
    k = 1 if proto == "sa" else spec.k
    r = report(proto, p, n, k, timing, spec.power, **spec.forms())
    try:
        s = simulate(_sim_config(spec, proto, n, p, timing))
    except NoUpdateError:
        return [(proto, n, k, p, m, a, None, None, "no_update", False)
                for m, a in (("aoi", r.avg_aoi), ("power", r.avg_power), ("interval", r.mean_interval))]
    rows = []
    for metric, analytic, simulated, ci in (("aoi", r.avg_aoi, s.mean_aoi, s.aoi_ci_halfwidth),
                                            ("power", r.avg_power, s.mean_power, s.power_ci_halfwidth),
                                            ("interval", r.mean_interval, s.mean_interval, s.interval_ci_halfwidth)):
        ok = abs(simulated - analytic) <= CI_FACTOR * ci
        rows.append((proto, n, k, p, metric, analytic, simulated, ci, "ok", ok))
    return rows


def cmd_validate(spec: ExperimentSpec) -> list[Table]:
    timing = spec.timing()
    table = Table("validate", ("protocol", "n", "k", "access_prob", "metric", "analytic", "simulated",
                               "ci_halfwidth", "status", "pass"),
                  meta=_meta(spec, timing, seed=spec.seed, rounds=spec.rounds, ci_factor=CI_FACTOR))
    for proto in spec.protocols:
        for n in spec.n:
            k = 1 if proto == "sa" else spec.k
            probs = spec.probs or (min_aoi_unconstrained(proto, n, k, timing, spec.power, **spec.forms())[0],)
            for p in probs:
                table.rows.extend(validate_rows(spec, proto, n, p, timing))
    failed = sum(1 for row in table.rows if not row[-1])
    print(f"validate: {len(table.rows) - failed}/{len(table.rows)} rows pass", file=sys.stderr)
    return [table]


# --------------------------------------------------------------------------
# figure presets


def _fig4a(spec: ExperimentSpec) -> list[Table]:
    timing = TimingModel.normalized()
    n, k = 10, 5
    loads = tuple(float(v) for v in np.round(np.arange(1, 41) * 0.05, 10))
    table = Table("fig4a", ("protocol", "n", "k", "access_prob", "load", "avg_aoi", "avg_power"),
                  meta={"time_unit": "slot", "power_unit": "P", "load_unit": "per_slot"})
    for proto, kk in (("sa", 1), ("fsa", k)):
        probs = [L * kk / n for L in loads if L * kk / n <= 1.0]
        if proto == "sa":
            probs = [p for p in probs if p < 1.0]
        for row in sweep(proto, n, kk, timing, 1.0, probs):
            table.rows.append((proto, n, kk, row.access_prob, row.load, row.avg_aoi, row.avg_power))
    return [table]


def _frontier_table(name: str, configs, budgets, meta, forms) -> Table:
    table = Table(name, ("protocol", "n", "k", "payload_bytes", "power_budget", "best_prob", "min_aoi",
                         "avg_power", "binding"), meta=meta)
    for proto, n, k, payload, timing in configs:
        for pt in frontier(proto, n, k, timing, 1.0, budgets, **forms):
            table.rows.append((proto, n, k, payload, pt.power_budget, pt.best_prob, pt.min_aoi,
                               pt.avg_power, pt.binding))
    return table


def _fig4b(spec: ExperimentSpec) -> list[Table]:
    timing = TimingModel.normalized()
    budgets = tuple(float(v) for v in np.round(np.arange(1, 41) * 0.005, 10))
    configs = [("sa", 10, 1, None, timing), ("fsa", 10, 5, None, timing)]
    return [_frontier_table("fig4b", configs, budgets, {"time_unit": "slot", "power_unit": "P"}, spec.forms())]


def _fig7(spec: ExperimentSpec) -> list[Table]:
    n, k, payload = 10, 5, 128
    timing = timing_for_payload(payload, PhyConfig.from_mapping(spec.phy))
    meta = {"time_unit": "us", "power_unit": "P", "load_unit": "per_ms", "t_pk": timing.t_pk,
            "t_r": timing.t_r, "seed": spec.seed, "rounds": spec.rounds}
    cols = ("protocol", "source", "access_prob", "load_per_ms")
    aoi = Table("fig7a_aoi", cols + ("avg_aoi", "ci_halfwidth"), meta=dict(meta))
    pw = Table("fig7b_power", cols + ("avg_power", "ci_halfwidth"), meta=dict(meta))
    dense = {"sa": [i / 200 for i in range(1, 61)], "fsa": [i / 100 for i in range(1, 101)],
             "rta": [i / 100 for i in range(1, 101)]}
    coarse = {"sa": [0.01, 0.02, 0.04, 0.06, 0.1, 0.15, 0.2, 0.3],
              "fsa": [0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 0.85, 1.0],
              "rta": [0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 0.85, 1.0]}
    for proto in ("sa", "fsa", "rta"):
        kk = 1 if proto == "sa" else k
        for row in sweep(proto, n, kk, timing, 1.0, dense[proto], **spec.forms()):
            aoi.rows.append((proto, "analytic", row.access_prob, row.load * 1000, row.avg_aoi, None))
            pw.rows.append((proto, "analytic", row.access_prob, row.load * 1000, row.avg_power, None))
        for p in coarse[proto]:
            load = report(proto, p, n, kk, timing, **spec.forms()).load * 1000
            cfg = SimConfig(ProtocolParams(proto, n, p, kk), timing, spec.rounds,
                            min(1000, spec.rounds // 10), spec.seed)
            try:
                s = simulate(cfg)
            except NoUpdateError:
                continue
            aoi.rows.append((proto, "simulation", p, load, s.mean_aoi, s.aoi_ci_halfwidth))
            pw.rows.append((proto, "simulation", p, load, s.mean_power, s.power_ci_halfwidth))
    return [aoi, pw]


def _fig8(spec: ExperimentSpec) -> list[Table]:
    timing = timing_for_payload(128, PhyConfig.from_mapping(spec.phy))
    budgets = tuple(float(v) for v in np.round(np.arange(2, 41) * 0.005, 10))
    configs = [("sa", 10, 1, 128, timing)]
    for k in (3, 5, 7, 10):
        configs += [("fsa", 10, k, 128, timing), ("rta", 10, k, 128, timing)]
    meta = {"time_unit": "us", "power_unit": "P", "t_pk": timing.t_pk, "t_r": timing.t_r}
    return [_frontier_table("fig8", configs, budgets, meta, spec.forms())]


def _fig9(spec: ExperimentSpec) -> list[Table]:
    timing = timing_for_payload(128, PhyConfig.from_mapping(spec.phy))
    table = Table("fig9", ("protocol", "n", "k", "power_budget", "best_prob", "min_aoi", "avg_power", "binding"),
                  meta={"time_unit": "us", "power_unit": "P", "t_pk": timing.t_pk, "t_r": timing.t_r})
    for budget in (0.1, 0.03):
        for proto in ("sa", "fsa", "rta"):
            k = 1 if proto == "sa" else 5
            for n in (5, 10, 15, 20, 25, 30):
                pt = min_aoi_given_power(proto, n, k, timing, 1.0, budget, **spec.forms())
                table.rows.append((proto, n, k, budget, pt.best_prob, pt.min_aoi, pt.avg_power, pt.binding))
    return [table]


def _fig10(spec: ExperimentSpec) -> list[Table]:
    phy = PhyConfig.from_mapping(spec.phy)
    budgets = tuple(float(v) for v in np.round(np.arange(1, 41) * 0.005, 10))
    configs = []
    for payload in (16, 64, 128):
        timing = timing_for_payload(payload, phy)
        configs += [("fsa", 10, 5, payload, timing), ("rta", 10, 5, payload, timing)]
    return [_frontier_table("fig10", configs, budgets, {"time_unit": "us", "power_unit": "P"}, spec.forms())]


_FIGURE_BUILDERS = {"fig4a": _fig4a, "fig4b": _fig4b, "fig7": _fig7, "fig8": _fig8, "fig9": _fig9,
                    "fig10": _fig10}


def cmd_figures(spec: ExperimentSpec) -> list[Table]:
    names = spec.figures or ("all",)
    if "all" in names:
        names = FIGURES
    tables: list[Table] = []
    for name in names:
        tables.extend(_FIGURE_BUILDERS[name](spec))
    return tables


_COMMANDS = {"report": cmd_report, "simulate": cmd_simulate, "sweep": cmd_sweep, "frontier": cmd_frontier,
             "validate": cmd_validate, "figures": cmd_figures}


def run(spec: ExperimentSpec) -> list[Path]:
    """Execute ``spec`` and write its tables; returns the files written.

    ``figures`` writes one file per table into the output directory
    (``--output``, else ``$AOI_RA_OUTPUT_DIR``, else ``./results``).  Other
    commands write a single table to ``--output`` or stdout.
    """
    tables = _COMMANDS[spec.command](spec)
    ext = spec.output_format
    written: list[Path] = []
    if spec.command == "figures":
        outdir = Path(spec.output or os.environ.get(OUTPUT_DIR_ENV) or "results")
        for table in tables:
            path = outdir / f"{table.name}.{ext}"
            _write(render(table, ext), path)
            written.append(path)
        return written
    for table in tables:
        _write(render(table, ext), spec.output)
        if spec.output and spec.output != "-":
            written.append(Path(spec.output))
    return written


# --------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_config(path: str) -> dict[str, Any]:
    p = Path(path)
    text = p.read_text()
    if p.suffix.lower() == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:  # python < 3.11
            import tomli as tomllib
        return tomllib.loads(text)
    return json.loads(text)


def build_parser() -> argparse.ArgumentParser:
    S = argparse.SUPPRESS
    common = _Parser(add_help=False, argument_default=S)
    common.add_argument("--config", help="JSON or TOML file with ExperimentSpec fields")
    common.add_argument("--protocol", "--protocols", dest="protocols", nargs="+", help="sa, fsa and/or rta")
    common.add_argument("--n", dest="n", nargs="+", type=int, help="number of sensors")
    common.add_argument("--k", type=int, help="slots per frame / request slots per round")
    common.add_argument("--payload", dest="payload_bytes", type=int, help="update payload in bytes (default 128)")
    common.add_argument("--tpk", dest="t_pk", type=float, help="packet duration; switches to normalised time")
    common.add_argument("--tr", dest="t_r", type=float, help="request duration with --tpk")
    common.add_argument("--phy-config", help="JSON/TOML PhyConfig file")
    common.add_argument("--bitrate", type=float, help="bits per microsecond")
    common.add_argument("--align-symbols", action="store_true", help="round airtime up to 4 us OFDM symbols")
    common.add_argument("--power", type=float, help="nominal transmit power P (outputs stay in units of P)")
    common.add_argument("--prob", "--q", "--omega", "--pi", dest="probs", nargs="+",
                        help="access probabilities; values, comma lists or start:stop:num")
    common.add_argument("--grid", dest="probs", nargs="+", help="alias of --prob for sweeps")
    common.add_argument("--budgets", nargs="+", help="power budgets in units of P")
    common.add_argument("--seed", type=int)
    common.add_argument("--rounds", type=int, help="simulation horizon in rounds")
    common.add_argument("--warmup", type=int, help="rounds discarded before accounting")
    common.add_argument("--tracked", type=int, help="index of the tagged sensor")
    common.add_argument("--output", "-o", help="output file (figures: directory)")
    common.add_argument("--format", dest="output_format", choices=("csv", "json"))
    common.add_argument("--mf-form", choices=("conditional", "mixture"))
    common.add_argument("--interval-form", choices=("independent", "exact"))

    parser = _Parser(prog="aoi-ra", description="Average AoI and power of SA, FSA and RTA random access.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=f"{name} experiments")
        if name == "figures":
            sp.add_argument("figures", nargs="*", default=S, help=f"{', '.join(FIGURES)} or all")
    return parser


def spec_from_args(argv: Sequence[str] | None = None) -> ExperimentSpec:
    args = vars(build_parser().parse_args(argv))
    data: dict[str, Any] = {}
    if "config" in args:
        data.update(_load_config(args.pop("config")))
        data.pop("command", None)
    phy = dict(data.pop("phy", {}) or {})
    if "phy_config" in args:
        phy.update(PhyConfig.from_file(args.pop("phy_config")).to_dict())
    if "bitrate" in args:
        phy["bitrate"] = args.pop("bitrate")
    if args.pop("align_symbols", False):
        phy["symbol_alignment"] = True
    data.update(args)
    data["phy"] = phy
    return ExperimentSpec.from_mapping(data)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        spec = spec_from_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, InvalidConfigError, TypeError, json.JSONDecodeError) as exc:
        print(f"aoi-ra: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"aoi-ra: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    try:
        run(spec)
    except UsageError as exc:
        print(f"aoi-ra: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidConfigError, InfiniteAoIError, InfeasibleBudgetError, ValueError, OSError) as exc:
        print(f"aoi-ra: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
