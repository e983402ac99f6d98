"""Command-line entry point: ``appellf4 {eval,matrices,monodromy-verify,tpr-check,full-report}``.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
an error (bad input or an exception during evaluation).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import report
from .errors import F4Error
from .params import HypergeometricParams
from .series import Point2

COMMANDS = ("eval", "matrices", "monodromy-verify", "tpr-check", "full-report")


def parse_complex(text: str) -> complex:
    """Accept ``re``, ``re+imj`` or ``imj`` (spaces ignored)."""
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return v


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: HypergeometricParams
    point: Optional[Point2]
    tolerances: report.Tolerances
    seed: int = 0
    output: Optional[str] = None
    as_json: bool = True


def build_parser() -> argparse.ArgumentParser:
    d = report.DEFAULT_PARAMS
    ap = argparse.ArgumentParser(prog="appellf4", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--a", type=parse_complex, default=d.a)
    ap.add_argument("--b", type=parse_complex, default=d.b)
    ap.add_argument("--c1", type=parse_complex, default=d.c1)
    ap.add_argument("--c2", type=parse_complex, default=d.c2)
    ap.add_argument("--x1", type=parse_complex, default=report.DEFAULT_POINT.x1)
    ap.add_argument("--x2", type=parse_complex, default=report.DEFAULT_POINT.x2)
    ap.add_argument("--tol", type=positive_float, default=None,
                    help="report tolerance applied to every check (default: per-check)")
    ap.add_argument("--series-tol", type=positive_float, default=1e-12)
    ap.add_argument("--rk-tol", type=positive_float, default=1e-10,
                    help="relative tolerance of the path integrator")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="write the report here instead of stdout")
    ap.add_argument("--json", action="store_true",
                    help="emit JSON only (default also prints a per-check summary to stderr)")
    return ap


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        params=HypergeometricParams(args.a, args.b, args.c1, args.c2),
        point=Point2(args.x1, args.x2),
        tolerances=report.Tolerances(series=args.series_tol, report=args.tol, rk=args.rk_tol),
        seed=args.seed,
        output=args.out,
        as_json=args.json,
    )


def build_document(cfg: RunConfig) -> dict:
    p, x, tol = cfg.params, cfg.point, cfg.tolerances
    if cfg.command == "full-report":
        return report.full_report(p, x, tol, cfg.seed)
    if cfg.command == "eval":
        sections = {"eval": report.eval_section(p, x, tol)}
    elif cfg.command == "matrices":
        sections = {"matrices": report.matrices_section(p, x, tol),
                    "monodromy": report.monodromy_section(p, tol, cfg.seed, continued=False)}
    elif cfg.command == "monodromy-verify":
        s = report.Section()
        report.monodromy_continued(s, p, tol, cfg.seed)
        sections = {"monodromy": s}
    else:
        sections = {"tpr": report.tpr_section(p, x, tol, cfg.seed)}
    return report.assemble(p, x, sections, cfg.seed)


def _summary(doc: dict) -> str:
    lines = []
    for name, sec in doc.items():
        if isinstance(sec, dict) and "checks" in sec:
            for c in sec["checks"]:
                flag = "PASS" if c["pass"] else "FAIL"
                res = "n/a" if c["residual"] is None else f"{c['residual']:.3e}"
                lines.append(f"{flag} {name}.{c['id']} residual={res}")
    lines.append("ALL PASS" if doc.get("pass") else "SOME CHECKS FAILED")
    return "\n".join(lines)


def run(cfg: RunConfig) -> int:
    try:
        doc = build_document(cfg)
        status = 0 if doc["pass"] else 1
    except (F4Error, ValueError, ArithmeticError) as exc:
        doc = {"command": cfg.command, "pass": False,
               "error": {"type": type(exc).__name__, "message": str(exc)}}
        status = 2
    text = json.dumps(doc, indent=2)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if not cfg.as_json:
        print(_summary(doc), file=sys.stderr)
    return status


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
