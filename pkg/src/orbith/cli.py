"""Command-line entry point: ``orbith {orbits,structures,constants,verify,sweep,gk}``.

Exit codes: 0 success, 1 a refutation or mismatch was found, 2 usage error.
Reports are JSON lines written in canonical order; the summary comes last.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

from .chevalley import constants_to_json, structure_constants
from .gk import check_gk, sample_gk_instances
from .orbit import (
    HermitianStructure,
    all_orbits,
    canonical_kahler_metric,
    count_positive_systems_containing,
    enumerate_complex_structures,
    kahler_pairs,
    make_orbit,
)
from .rootsys import RootSystemError, build_root_system
from .verify import REFUTED, induction_replay, oracle_mismatches, verify_theorem

log = logging.getLogger("orbith")

DEFAULT_SWEEP = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"]
EXIT_OK, EXIT_REFUTED, EXIT_USAGE = 0, 1, 2

DEFAULTS = {
    "types": None,
    "maxRank": None,
    "format": "json",
    "seed": 0,
    "samples": 10,
    "replay": False,
    "parallelism": 1,
    "out": None,
    "timing": False,
}


class UsageError(Exception):
    pass


# --- work items ---------------------------------------------------------------


def _verify_item(item: tuple) -> dict:
    """One (type, S, sigma index) item; top-level so worker processes can pickle it."""
    type_name, S, k, replay, timing, oracle = item
    R = build_root_system(type_name)
    orbit = make_orbit(R, S)
    J = enumerate_complex_structures(orbit)[k]
    C = structure_constants(R)
    report = verify_theorem(J, C, timing=timing)
    out = report.to_json()
    out["sigmaIndex"] = k
    ok = report.verdict != REFUTED
    if replay:
        rl = induction_replay(J, C=C)
        rows_match = rl.derived == set(kahler_pairs(J))
        out["replay"] = rl.to_json()
        out["replayOk"] = rl.ok and rows_match
        ok = ok and out["replayOk"]
    if oracle:
        bad = oracle_mismatches(HermitianStructure(J, canonical_kahler_metric(J)), C)
        out["oracleOk"] = not bad
        if bad:
            out["oracleMismatches"] = [[list(r) for r in key] for key in bad]
        ok = ok and not bad
    out["ok"] = ok
    return out


def _run_items(items: list[tuple], parallelism: int) -> list[dict]:
    if parallelism > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            return list(pool.map(_verify_item, items, chunksize=4))
    return [_verify_item(it) for it in items]


def _items_for(type_name: str, orbits, replay: bool, timing: bool, oracle: bool) -> list[tuple]:
    items = []
    for orbit in orbits:
        for k in range(len(enumerate_complex_structures(orbit))):
            items.append((type_name, tuple(sorted(orbit.S)), k, replay, timing, oracle))
    return items


# --- output -------------------------------------------------------------------


def _root_str(r) -> str:
    return "(" + ",".join(str(x) for x in r) + ")"


def _csv_text(header: list[str], rows: Iterable[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _markdown(header: list[str], rows: Iterable[list]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    for row in rows:
        lines.append("| " + " | ".join(str(x) for x in row) + " |")
    return "\n".join(lines) + "\n"


def _jsonl(records: Iterable[dict]) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


REPORT_HEADER = ["type", "S", "sigmaIndex", "sigma", "dim", "numVars", "rankDdj", "rankJoint", "verdict", "ok"]


def _report_row(r: dict) -> list:
    return [
        r["type"],
        " ".join(str(i) for i in r["orbit"]["S"]),
        r["sigmaIndex"],
        " ".join(_root_str(x) for x in r["sigma"]),
        r["dim"],
        r["numVars"],
        r["rankDdj"],
        r["rankJoint"],
        r["verdict"],
        r["ok"],
    ]


def _render_reports(reports: list[dict], summary: dict, fmt: str) -> str:
    if fmt == "csv":
        return _csv_text(REPORT_HEADER, (_report_row(r) for r in reports))
    if fmt == "markdown":
        counts = ", ".join(f"{k}: {v}" for k, v in sorted(summary["verdicts"].items()))
        return _markdown(REPORT_HEADER, (_report_row(r) for r in reports)) + f"\n{counts}\n"
    return _jsonl(reports + [{"summary": summary}])


def _summarize(reports: list[dict]) -> dict:
    verdicts: dict[str, int] = {}
    for r in reports:
        verdicts[r["verdict"]] = verdicts.get(r["verdict"], 0) + 1
    return {
        "items": len(reports),
        "verdicts": verdicts,
        "failures": sum(1 for r in reports if not r["ok"]),
    }


# --- commands -----------------------------------------------------------------


def _resolve_types(cfg: dict, positional: str | None, default: list[str] | None) -> list[str]:
    if positional:
        types = [positional]
    elif cfg["types"] is not None:
        types = cfg["types"]
    elif default is not None:
        types = list(default)
    else:
        raise UsageError("no root system type given")
    types = [t for t in types if t]
    if not types:
        raise UsageError("empty type list")
    out = []
    for t in types:
        try:
            R = build_root_system(t)
        except (RootSystemError, ValueError) as exc:
            raise UsageError(str(exc)) from exc
        if cfg["maxRank"] is not None and R.rank > cfg["maxRank"]:
            log.info("skipping %s: rank %d exceeds --max-rank", R.name, R.rank)
            continue
        out.append(R.name)
    if not out:
        raise UsageError("no type left after --max-rank filter")
    return out


def cmd_orbits(args, cfg) -> tuple[str, int]:
    records = []
    for t in _resolve_types(cfg, args.type, None):
        R = build_root_system(t)
        for orbit in all_orbits(R):
            records.append(
                {
                    "type": R.name,
                    "S": orbit.label,
                    "dim": orbit.dim,
                    "R0": len(orbit.R0),
                    "structures": len(enumerate_complex_structures(orbit)),
                    "positiveSystemsContainingR0plus": count_positive_systems_containing(orbit),
                }
            )
    header = ["type", "S", "dim", "R0", "structures", "positiveSystemsContainingR0plus"]
    rows = [[r["type"], " ".join(map(str, r["S"])), r["dim"], r["R0"], r["structures"], r[header[-1]]] for r in records]
    return _render_simple(records, header, rows, cfg["format"]), EXIT_OK


def cmd_structures(args, cfg) -> tuple[str, int]:
    records = []
    for t in _resolve_types(cfg, args.type, None):
        R = build_root_system(t)
        for orbit in _select_orbits(R, args):
            for k, J in enumerate(enumerate_complex_structures(orbit)):
                records.append({"type": R.name, "S": orbit.label, "sigmaIndex": k, "sigma": [list(r) for r in J.roots]})
    header = ["type", "S", "sigmaIndex", "sigma"]
    rows = [
        [r["type"], " ".join(map(str, r["S"])), r["sigmaIndex"], " ".join(_root_str(x) for x in r["sigma"])]
        for r in records
    ]
    return _render_simple(records, header, rows, cfg["format"]), EXIT_OK


def cmd_constants(args, cfg) -> tuple[str, int]:
    types = _resolve_types(cfg, args.type, None)
    if cfg["format"] != "json":
        raise UsageError("constants supports --format json only")
    out = [constants_to_json(structure_constants(build_root_system(t))) for t in types]
    return json.dumps(out[0] if len(out) == 1 else out, sort_keys=True, indent=1) + "\n", EXIT_OK


def _select_orbits(R, args):
    if getattr(args, "full_flag", False):
        return [make_orbit(R, ())]
    if getattr(args, "S", None) is not None:
        try:
            idx = [int(x) - 1 for x in args.S.split(",") if x.strip()]
            return [make_orbit(R, idx)]
        except ValueError as exc:
            raise UsageError(f"bad --S: {exc}") from exc
    return all_orbits(R)


def cmd_verify(args, cfg) -> tuple[str, int]:
    types = _resolve_types(cfg, args.type, None)
    items = []
    for t in types:
        R = build_root_system(t)
        orbits = _select_orbits(R, args)
        for it in _items_for(R.name, orbits, cfg["replay"], cfg["timing"], oracle=False):
            if args.sigma is None or it[2] == args.sigma:
                items.append(it)
    if args.sigma is not None and not items:
        raise UsageError(f"no complex structure with index {args.sigma}")
    reports = _run_items(items, cfg["parallelism"])
    summary = _summarize(reports)
    return _render_reports(reports, summary, cfg["format"]), EXIT_REFUTED if summary["failures"] else EXIT_OK


def cmd_sweep(args, cfg) -> tuple[str, int]:
    types = _resolve_types(cfg, None, DEFAULT_SWEEP)
    items = []
    for t in types:
        items += _items_for(t, all_orbits(build_root_system(t)), True, cfg["timing"], oracle=True)
    log.info("sweep: %d work items over %s", len(items), ",".join(types))
    reports = _run_items(items, cfg["parallelism"])
    for r in reports:
        # keep sweep output compact; replay logs are available through verify --replay
        r["replay"] = {"ok": r["replay"]["ok"], "steps": len(r["replay"]["steps"])}
    summary = _summarize(reports)
    summary["types"] = types
    return _render_reports(reports, summary, cfg["format"]), EXIT_REFUTED if summary["failures"] else EXIT_OK


def cmd_gk(args, cfg) -> tuple[str, int]:
    types = _resolve_types(cfg, args.type, None)
    records = []
    violations = 0
    for t in types:
        R = build_root_system(t)
        C = structure_constants(R)
        for inst in sample_gk_instances(R, cfg["samples"], cfg["seed"]):
            rep = check_gk(inst, C)
            records.append(rep.to_json())
            if not rep.implication_ok:
                violations += 1
    summary = {"samples": len(records), "violations": violations, "seed": cfg["seed"]}
    if cfg["format"] == "json":
        text = _jsonl(records + [{"summary": summary}])
    else:
        header = ["type", "S", "conditionHolds", "dbZero", "kaehlerPlus", "kaehlerMinus", "implicationOk"]
        rows = [
            [r["instance"]["type"], " ".join(map(str, r["instance"]["orbit"]["S"]))]
            + [r[k] for k in header[2:]]
            for r in records
        ]
        text = _render_simple(records, header, rows, cfg["format"])
    return text, EXIT_REFUTED if violations else EXIT_OK


def _render_simple(records, header, rows, fmt) -> str:
    if fmt == "csv":
        return _csv_text(header, rows)
    if fmt == "markdown":
        return _markdown(header, rows)
    return _jsonl(records)


# --- argument parsing ---------------------------------------------------------


def _types_arg(text: str) -> list[str]:
    return [t.strip() for t in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--types", type=_types_arg, help="comma-separated types, e.g. A2,B2,G2")
    common.add_argument("--max-rank", dest="maxRank", type=int)
    common.add_argument("--format", choices=["json", "csv", "markdown"])
    common.add_argument("--seed", type=int)
    common.add_argument("--samples", type=int)
    common.add_argument("--replay", action="store_const", const=True)
    common.add_argument("--parallelism", type=int)
    common.add_argument("--timing", action="store_const", const=True, help="record timingMs (breaks byte determinism)")
    common.add_argument("--out", metavar="FILE")
    common.add_argument("--config", metavar="JSON", help="JSON file whose keys mirror the flags")

    parser = argparse.ArgumentParser(prog="orbith", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def typed(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("type", nargs="?", help="root system type, e.g. A2 or A1xG2")
        return p

    typed("orbits", "list orbits (subsets S of simple roots) of a type")
    p = typed("structures", "list invariant complex structures per orbit")
    _orbit_flags(p)
    typed("constants", "dump Chevalley and Weyl structure constants")
    p = typed("verify", "check that dd^J omega = 0 forces the Kahler condition")
    _orbit_flags(p)
    p.add_argument("--sigma", type=int, help="index of one complex structure in the listing")
    sub.add_parser("sweep", parents=[common], help="verify every orbit and structure of several types")
    typed("gk", "sample invariant generalized Kahler instances and check them")
    return parser


def _orbit_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--full-flag", dest="full_flag", action="store_true", help="only the orbit with S empty")
    g.add_argument("--S", help="comma-separated 1-based simple-root indices")


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config must be a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    if isinstance(data.get("types"), str):
        data["types"] = _types_arg(data["types"])
    return data


def resolve_config(args) -> dict:
    file_cfg = _load_config(args.config)
    cfg = {}
    for key, default in DEFAULTS.items():
        value = getattr(args, key, None)
        cfg[key] = value if value is not None else file_cfg.get(key, default)
    if cfg["format"] not in ("json", "csv", "markdown"):
        raise UsageError(f"bad format {cfg['format']!r}")
    if cfg["parallelism"] < 1 or cfg["samples"] < 0:
        raise UsageError("--parallelism must be >= 1 and --samples >= 0")
    return cfg


COMMANDS = {
    "orbits": cmd_orbits,
    "structures": cmd_structures,
    "constants": cmd_constants,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "gk": cmd_gk,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(
        level=os.environ.get("ORBITH_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        text, code = COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"orbith: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg["out"]:
        with open(cfg["out"], "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
