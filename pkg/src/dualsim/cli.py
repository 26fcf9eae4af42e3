"""Batch front end.

Scenario files are JSON objects with the keys ``scenario``, ``params``,
``seed`` and ``samples``; any other key is rejected. Exit codes: 0 success,
1 invalid input, 2 runtime failure.

When ``--out`` is omitted and ``DUALSIM_OUTPUT_DIR`` is set, results go to
``$DUALSIM_OUTPUT_DIR/<scenario file stem>.<format>``; otherwise to stdout.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .errors import InvalidConfig, InvalidParam, ParseError
from .scenarios import SCENARIOS, ScenarioConfig, ScenarioResult, run_scenario

OUTPUT_DIR_ENV = "DUALSIM_OUTPUT_DIR"
FILE_KEYS = ("scenario", "params", "seed", "samples")


def parse_scenario_file(path) -> ScenarioConfig:
    path = Path(path)
    text = path.read_text(encoding="utf-8")  # FileNotFoundError propagates
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    for key in doc:
        if key not in FILE_KEYS:
            raise InvalidParam(f"{path}: unknown key {key!r}")
    if "scenario" not in doc:
        raise InvalidConfig(f"{path}: missing 'scenario'")
    params = doc.get("params", {})
    if not isinstance(params, dict):
        raise InvalidParam(f"{path}: 'params' must be an object")
    return ScenarioConfig(doc["scenario"], params, doc.get("seed", 0), doc.get("samples", 0))


def _fmt(x) -> str:
    return repr(float(x))


def result_to_csv(result: ScenarioResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["quantity", "value"])
    for k, v in result.analytic.items():
        w.writerow([k, _fmt(v)])
    for k, v in result.empirical.items():
        w.writerow([f"empirical.{k}", _fmt(v)])
    if result.intensity is not None:
        w.writerow([])
        sampled = result.empirical_intensity is not None
        w.writerow(["theta", "intensity"] + (["empirical"] if sampled else []))
        for j, (t, i) in enumerate(zip(result.theta, result.intensity)):
            row = [_fmt(t), _fmt(i)]
            if sampled:
                row.append(_fmt(result.empirical_intensity[j]))
            w.writerow(row)
    return buf.getvalue()


def result_to_dict(result: ScenarioResult) -> dict:
    out = {
        "kind": result.kind,
        "analytic": {k: float(v) for k, v in result.analytic.items()},
        "empirical": {k: float(v) for k, v in result.empirical.items()},
        "metadata": result.metadata,
    }
    if result.intensity is not None:
        profile = {"theta": result.theta.tolist(), "intensity": result.intensity.tolist()}
        if result.empirical_intensity is not None:
            profile["empirical"] = result.empirical_intensity.tolist()
        out["profile"] = profile
    return out


def result_to_json(result: ScenarioResult) -> str:
    return json.dumps(result_to_dict(result), indent=2) + "\n"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dualsim", description="Run density-matrix thought experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario file")
    run.add_argument("file")
    run.add_argument("--out", help="output path (default: stdout or $%s)" % OUTPUT_DIR_ENV)
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.add_argument("--seed", type=int, help="override the file's seed")
    run.add_argument("--samples", type=int, help="override the file's sample count")

    sub.add_parser("list-scenarios", help="print the available scenario names")

    val = sub.add_parser("validate", help="check a scenario file without running it")
    val.add_argument("file")
    return parser


def _output_path(args) -> Path | None:
    if args.out:
        return Path(args.out)
    env_dir = os.environ.get(OUTPUT_DIR_ENV)
    if env_dir:
        return Path(env_dir) / f"{Path(args.file).stem}.{args.format}"
    return None


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"dualsim: {exc}", file=stderr)
        return 1

    if args.command == "list-scenarios":
        for name in SCENARIOS:
            print(name, file=stdout)
        return 0

    try:
        config = parse_scenario_file(args.file)
        if args.command == "validate":
            print("OK", file=stdout)
            return 0
        config = config.with_overrides(seed=args.seed, samples=args.samples)
        result = run_scenario(config)
    except (InvalidConfig, FileNotFoundError, IsADirectoryError) as exc:
        print(f"dualsim: {exc}", file=stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - every other failure is a runtime error
        print(f"dualsim: runtime error: {exc}", file=stderr)
        return 2

    text = result_to_json(result) if args.format == "json" else result_to_csv(result)
    out = _output_path(args)
    try:
        if out is None:
            stdout.write(text)
        else:
            out.parent.mkdir(parents=True, exist_ok=True)
            with open(out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"dualsim: cannot write output: {exc}", file=stderr)
        return 2
    return 0


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
