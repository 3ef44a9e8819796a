"""Command-line front end.

    tiadc run   [--config PATH] [--scenario S|all] [--seed U64] [--samples N] [--out DIR]
    tiadc sweep [--config PATH] --sweep PARAM=V1,V2,... [--scenario S] [--out DIR]

Exit codes: 0 success, 1 I/O failure, 2 invalid config, 3 infeasible
conditioning.
"""

import argparse
import csv
import io
import json
import logging
import os
import sys

from .config import RunConfig, load_config
from .errors import ConfigError, InfeasibleConditioningError
from .scenarios import SCENARIOS, run_scenario

log = logging.getLogger("tiadc")

EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_INFEASIBLE = 0, 1, 2, 3

SWEEP_PARAMS = {
    # parameter -> scenario measured by default
    "g_squared": "scramble",
    "delta": "scramble",
    "skew_scale": "uncorrected",
}
SWEEP_COLUMNS = [
    "parameter", "value", "scenario", "status", "sfdr_db_measured", "sfdr_db_predicted",
    "noise_floor_db", "max_image_db", "message",
]


def _write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def spectrum_csv(report):
    lines = ["freq_norm,psd_db"]
    lines += [f"{f:.9g},{db:.6f}" for f, db in zip(report.freqs, report.psd_db)]
    return "\n".join(lines) + "\n"


def metrics_json(rows):
    return json.dumps(rows, indent=2, allow_nan=False) + "\n"


def _load(args):
    cfg = load_config(args.config) if args.config else RunConfig().validate()
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.samples is not None:
        changes["samples"] = args.samples
    return cfg.with_overrides(**changes) if changes else cfg


def cmd_run(args):
    cfg = _load(args)
    scenarios = SCENARIOS if args.scenario == "all" else (args.scenario,)
    os.makedirs(args.out, exist_ok=True)
    rows = []
    for name in scenarios:
        _, report, metrics = run_scenario(cfg, name)
        _write_text(os.path.join(args.out, f"{name}_spectrum.csv"), spectrum_csv(report))
        log.info("%s: SFDR %.2f dB (predicted %s)", name, metrics["sfdr_db_measured"], metrics["sfdr_db_predicted"])
        rows.append(metrics)
    _write_text(os.path.join(args.out, "metrics.json"), metrics_json(rows))
    return EXIT_OK


def parse_sweep(text):
    try:
        param, values = text.split("=", 1)
        vals = [float(v) for v in values.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"--sweep expects PARAM=V1,V2,..., got {text!r}") from None
    if param not in SWEEP_PARAMS:
        raise ConfigError(f"unknown sweep parameter {param!r}; expected one of {sorted(SWEEP_PARAMS)}")
    if not vals:
        raise ConfigError("--sweep needs at least one value")
    return param, vals


def sweep(cfg, param, values, scenario=None):
    """One metrics row per value; infeasible values are flagged, not fatal."""
    scenario = scenario or SWEEP_PARAMS[param]
    rows, reports = [], []
    for value in values:
        row = {"parameter": param, "value": value, "scenario": scenario}
        try:
            if param == "g_squared":
                point = cfg.with_overrides(g_squared=value)
            elif param == "delta":
                point = cfg.with_overrides(delta_ts=value)
            else:
                point = cfg.with_overrides(skews_ts=[s * value for s in cfg.skews_ts])
            _, _, metrics = run_scenario(point, scenario)
        except (InfeasibleConditioningError, ConfigError) as exc:
            row.update(status="infeasible", message=str(exc))
            reports.append(dict(row))
        else:
            row.update(status="ok", message="")
            row.update({k: metrics[k] for k in SWEEP_COLUMNS if k in metrics})
            reports.append({**row, **metrics})
        rows.append(row)
    return rows, reports


def sweep_csv(rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k, "")) for k in SWEEP_COLUMNS})
    return buf.getvalue()


def cmd_sweep(args):
    cfg = _load(args)
    param, values = parse_sweep(args.sweep)
    scenario = None if args.scenario in (None, "all") else args.scenario
    rows, reports = sweep(cfg, param, values, scenario)
    os.makedirs(args.out, exist_ok=True)
    _write_text(os.path.join(args.out, f"sweep_{param}.csv"), sweep_csv(rows))
    _write_text(os.path.join(args.out, f"sweep_{param}.json"), metrics_json(reports))
    return EXIT_OK


def _u64(text):
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def build_parser():
    parser = argparse.ArgumentParser(prog="tiadc", description="Time-interleaved ADC timing-skew conditioning simulator")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("run", "simulate scenarios and write spectra + metrics"),
                           ("sweep", "sweep one parameter and tabulate metrics")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", metavar="PATH", help="JSON run configuration (defaults if omitted)")
        p.add_argument("--scenario", choices=SCENARIOS + ("all",), default="all" if name == "run" else None)
        p.add_argument("--seed", type=_u64, metavar="U64")
        p.add_argument("--samples", type=int, metavar="N")
        p.add_argument("--out", metavar="DIR", default="out")
        if name == "sweep":
            p.add_argument("--sweep", metavar="PARAM=V1,V2,...", required=True)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return cmd_run(args) if args.command == "run" else cmd_sweep(args)
    except InfeasibleConditioningError as exc:
        print(f"error: infeasible conditioning: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ConfigError as exc:
        print(f"error: invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
