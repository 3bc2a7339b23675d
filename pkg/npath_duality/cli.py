"""
Command-line front-end

Subcommands:
    figure        theta sweep of a figure family, written as CSV
    check         measures and duality verdicts for a scenario file
    random-sweep  D^2, C^2, D_Q and D^2 + C^2 for seeded random states, as CSV
    durr          Duerr criteria harness

Exit codes: 0 success/pass, 1 check failed, 2 parse error, 3 invariant
violation, 64 usage error. Output files contain no timestamps and use fixed
17-significant-digit formatting, so identical inputs give identical bytes.

Scenario file (JSON, version 1):
    {
      "version": 1,
      "n": 2,
      "amplitudes": [[re, im], ...],
      "detectors": [[[re, im], ...], ...],
      "ensemble": [{"weight": w, "amplitudes": [...], "detectors": [...]}, ...]
    }
"ensemble" is optional; "amplitudes"/"detectors" may be omitted when it is present.
"""

import argparse
import csv
import json
import logging
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .config import DEFAULT_SETTINGS
from .duality_suite import (
    check_additive_duality,
    check_dq_identity,
    check_mixed_duality,
    check_pure_duality,
    durr_criteria,
    identifiable_paths,
    uqsd_feasible,
)
from .errors import DualityError, InvariantViolation, PreconditionError, ScenarioParseError
from .joint_state import DetectorSet, Ensemble, PathAmplitudes, PureJointState
from .measures import distinguishability_DQ, full_report
from .scenarios import CSV_COLUMNS, SweepRow, random_states, sweep

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_PARSE = 2
EXIT_INVARIANT = 3
EXIT_USAGE = 64


class UsageError(Exception):
    """Bad command-line arguments"""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def format_number(value: float) -> str:
    """Fixed 17-significant-digit representation, '.' decimal separator"""
    return format(float(value), f".{DEFAULT_SETTINGS.csv_digits}g")


def _write_csv(path: Path, header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    with path.open("w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([value if isinstance(value, str) else format_number(value) for value in row])


# Scenario documents

def _complex(value: Any, field: str) -> complex:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)):
        raise ScenarioParseError("expected a [re, im] pair of numbers", field=field)
    re, im = float(value[0]), float(value[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ScenarioParseError("non-finite number", field=field)
    return complex(re, im)


def _complex_list(value: Any, field: str) -> List[complex]:
    if not isinstance(value, list) or not value:
        raise ScenarioParseError("expected a non-empty list of [re, im] pairs", field=field)
    return [_complex(v, f"{field}[{i}]") for i, v in enumerate(value)]


def _pure_from_fields(doc: Dict[str, Any], prefix: str, n: Optional[int]) -> PureJointState:
    for key in ("amplitudes", "detectors"):
        if key not in doc:
            raise ScenarioParseError("missing field", field=f"{prefix}{key}")
    amps = _complex_list(doc["amplitudes"], f"{prefix}amplitudes")
    raw_dets = doc["detectors"]
    if not isinstance(raw_dets, list) or not raw_dets:
        raise ScenarioParseError("expected a non-empty list of detector vectors", field=f"{prefix}detectors")
    dets = [_complex_list(d, f"{prefix}detectors[{i}]") for i, d in enumerate(raw_dets)]
    if n is not None and len(amps) != n:
        raise ScenarioParseError(f"expected {n} amplitudes, got {len(amps)}", field=f"{prefix}amplitudes")
    if len(dets) != len(amps):
        raise ScenarioParseError(f"expected {len(amps)} detector vectors, got {len(dets)}",
                                 field=f"{prefix}detectors")
    m = len(dets[0])
    for i, d in enumerate(dets):
        if len(d) != m:
            raise ScenarioParseError(f"expected dimension {m}, got {len(d)}", field=f"{prefix}detectors[{i}]")
    try:
        return PureJointState(PathAmplitudes(amps), DetectorSet(dets))
    except InvariantViolation as exc:
        where = f"{prefix}detectors" if "detector" in exc.invariant else f"{prefix}amplitudes"
        raise InvariantViolation(exc.invariant, exc.index, detail=f"{where} {exc.detail}".strip()) from exc


def parse_scenario(text: str) -> Tuple[Optional[PureJointState], Optional[Ensemble]]:
    """
    Parse a version-1 scenario document

    Args:
        text: JSON text

    Returns:
        (pure state or None, ensemble or None); at least one is present

    Raises:
        ScenarioParseError: malformed JSON or fields
        InvariantViolation: well-formed but unnormalized input
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioParseError(exc.msg, line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise ScenarioParseError("top level must be a JSON object")
    if doc.get("version") != DEFAULT_SETTINGS.scenario_version:
        raise ScenarioParseError(f"unsupported version {doc.get('version')!r}, expected "
                                 f"{DEFAULT_SETTINGS.scenario_version}", field="version")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ScenarioParseError("expected an integer >= 2", field="n")

    pure = None
    if "ensemble" not in doc or "amplitudes" in doc or "detectors" in doc:
        pure = _pure_from_fields(doc, "", n)

    ensemble = None
    if "ensemble" in doc:
        items = doc["ensemble"]
        if not isinstance(items, list) or not items:
            raise ScenarioParseError("expected a non-empty list of components", field="ensemble")
        components = []
        for k, item in enumerate(items):
            prefix = f"ensemble[{k}]."
            if not isinstance(item, dict):
                raise ScenarioParseError("expected an object", field=f"ensemble[{k}]")
            weight = item.get("weight")
            if not isinstance(weight, (int, float)) or isinstance(weight, bool):
                raise ScenarioParseError("expected a number", field=f"{prefix}weight")
            components.append((float(weight), _pure_from_fields(item, prefix, n)))
        try:
            ensemble = Ensemble(tuple(components))
        except InvariantViolation as exc:
            raise InvariantViolation(exc.invariant, exc.index, detail=f"ensemble {exc.detail}".strip()) from exc
    return pure, ensemble


def _pairs(values) -> List[List[float]]:
    return [[float(complex(v).real), float(complex(v).imag)] for v in values]


def _state_document(s: PureJointState) -> Dict[str, Any]:
    return {"amplitudes": _pairs(s.amps.c), "detectors": [_pairs(row) for row in s.dets.d]}


def scenario_to_document(target: Union[PureJointState, Ensemble]) -> Dict[str, Any]:
    """Version-1 scenario document for a pure state or an ensemble"""
    doc: Dict[str, Any] = {"version": DEFAULT_SETTINGS.scenario_version, "n": target.n}
    if isinstance(target, Ensemble):
        doc["ensemble"] = [dict(weight=w, **_state_document(s)) for w, s in target.components]
    else:
        doc.update(_state_document(target))
    return doc


# Tool functions, one per subcommand; each returns a result envelope

def run_figure(figure_id: int, theta_start: float, theta_end: float, steps: int,
               out_path: Path) -> Dict[str, Any]:
    """
    Sweep a figure family and write the CSV

    Returns:
        Dictionary with success status, row count and max |D^2 + C^2 - 1|
    """
    rows: List[SweepRow] = sweep(figure_id, theta_start, theta_end, steps)
    deviation = max(abs(r.sum_DC - 1.0) for r in rows)
    try:
        _write_csv(out_path, CSV_COLUMNS, [[getattr(r, c) for c in CSV_COLUMNS] for r in rows])
    except OSError as exc:
        return {'success': False, 'error': f"cannot write {out_path}: {exc}", 'exit_code': EXIT_FAILED}
    return {'success': True, 'rows': len(rows), 'max_duality_deviation': deviation, 'path': str(out_path)}


def run_check(scenario_path: Path, tol: float) -> Dict[str, Any]:
    """
    Evaluate a scenario file

    Returns:
        Dictionary with success status (duality verdicts pass) and the report payload
    """
    try:
        text = scenario_path.read_text(encoding="utf-8")
    except OSError as exc:
        return {'success': False, 'error': f"cannot read {scenario_path}: {exc}", 'exit_code': EXIT_PARSE}
    try:
        pure, ensemble = parse_scenario(text)
    except ScenarioParseError as exc:
        return {'success': False, 'error': f"parse error: {exc}", 'exit_code': EXIT_PARSE}
    except InvariantViolation as exc:
        return {'success': False, 'error': str(exc), 'exit_code': EXIT_INVARIANT,
                'invariant': exc.invariant, 'index': exc.index}

    payload: Dict[str, Any] = {}
    passed = True
    if pure is not None:
        verdict = check_pure_duality(pure, tol)
        payload['report'] = full_report(pure).to_dict()
        payload['verdict'] = verdict.to_dict()
        payload['dq_identity'] = check_dq_identity(pure, tol)
        payload['additive_duality'] = check_additive_duality(pure, tol)
        payload['uqsd_feasible'] = uqsd_feasible(pure.dets)
        payload['identifiable_paths'] = identifiable_paths(pure.dets)
        passed = verdict.saturated
    if ensemble is not None:
        mixed = check_mixed_duality(ensemble, tol)
        payload['mixed_verdict'] = mixed.to_dict()
        payload['mixed_additive_duality'] = check_additive_duality(ensemble, tol)
        passed = passed and mixed.bounded
    return {'success': passed, 'exit_code': EXIT_OK if passed else EXIT_FAILED, **payload}


def run_random_sweep(n: int, m: int, count: int, seed: int, out_path: Path) -> Dict[str, Any]:
    """
    Evaluate seeded random pure states and write the per-sample CSV

    Returns:
        Dictionary with success status (every sample saturates and satisfies the D_Q identity)
    """
    tol = DEFAULT_SETTINGS.duality_tol
    rows = []
    failures = 0
    for index, state in enumerate(random_states(n, m, count, seed)):
        report = full_report(state)
        d2, c2 = report.dist_D ** 2, report.coherence_C ** 2
        dq = distinguishability_DQ(state)
        ok = abs(report.duality_sum - 1.0) <= tol and check_dq_identity(state, tol)
        failures += 0 if ok else 1
        rows.append([str(index), d2, c2, dq, report.duality_sum])
    try:
        _write_csv(out_path, ("index", "D2", "C2", "DQ", "sum_DC"), rows)
    except OSError as exc:
        return {'success': False, 'error': f"cannot write {out_path}: {exc}", 'exit_code': EXIT_FAILED}
    return {'success': failures == 0, 'samples': count, 'failures': failures, 'path': str(out_path),
            'exit_code': EXIT_OK if failures == 0 else EXIT_FAILED}


def run_durr(n: int, probes: int, seed: int) -> Dict[str, Any]:
    report = durr_criteria(n, probes, seed)
    return {'success': report.all_ok, 'report': report.to_dict(),
            'exit_code': EXIT_OK if report.all_ok else EXIT_FAILED}


# Commands

def _theta(value: float, degrees: bool) -> float:
    return math.radians(value) if degrees else value


def cmd_figure(args: argparse.Namespace) -> int:
    if args.steps < 2:
        raise UsageError("figure: --steps must be at least 2")
    out_path = Path(args.out) if args.out else Path(f"figure{args.id}.csv")
    result = run_figure(args.id, _theta(args.theta_start, args.degrees),
                        _theta(args.theta_end, args.degrees), args.steps, out_path)
    if not result['success']:
        print(result['error'], file=sys.stderr)
        return result['exit_code']
    print(f"max |D2 + C2 - 1| = {format_number(result['max_duality_deviation'])}")
    return EXIT_OK


def _text_lines(data: Dict[str, Any], prefix: str = "") -> List[str]:
    lines = []
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict):
            lines.extend(_text_lines(value, f"{prefix}{key}."))
        else:
            lines.append(f"{prefix}{key}: {value}")
    return lines


def cmd_check(args: argparse.Namespace) -> int:
    result = run_check(Path(args.scenario), args.tol)
    if 'error' in result:
        print(result['error'], file=sys.stderr)
        return result['exit_code']
    body = {k: v for k, v in result.items() if k not in ('exit_code',)}
    if args.format == "json":
        print(json.dumps(body, indent=2, sort_keys=True))
    else:
        print("\n".join(_text_lines(body)))
    return result['exit_code']


def cmd_random_sweep(args: argparse.Namespace) -> int:
    if args.n < 2 or args.m < 1 or args.count < 1:
        raise UsageError("random-sweep: need --n >= 2, --m >= 1 and --count >= 1")
    out_path = Path(args.out) if args.out else Path("random_sweep.csv")
    result = run_random_sweep(args.n, args.m, args.count, args.seed, out_path)
    if 'error' in result:
        print(result['error'], file=sys.stderr)
        return result['exit_code']
    print(f"samples: {result['samples']}  failures: {result['failures']}")
    return result['exit_code']


def cmd_durr(args: argparse.Namespace) -> int:
    if args.n < 2:
        raise UsageError("durr: --n must be at least 2")
    if args.probes < 100:
        raise UsageError("durr: --probes must be at least 100")
    result = run_durr(args.n, args.probes, args.seed)
    print("\n".join(_text_lines(result['report'])))
    return result['exit_code']


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="npath-duality",
                             description="Wave-particle duality quantifiers for N-path interference")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    sub.required = True

    fig = sub.add_parser("figure", help="theta sweep of a figure family as CSV")
    fig.add_argument("--id", type=int, choices=(1, 2), required=True)
    fig.add_argument("--theta-start", type=float, default=DEFAULT_SETTINGS.theta_start)
    fig.add_argument("--theta-end", type=float, default=None)
    fig.add_argument("--steps", type=int, default=DEFAULT_SETTINGS.theta_steps)
    fig.add_argument("--degrees", action="store_true", help="theta bounds are given in degrees")
    fig.add_argument("--out", default=None, help="CSV path (default figure<id>.csv)")
    fig.set_defaults(handler=cmd_figure)

    chk = sub.add_parser("check", help="measures and duality verdicts for a scenario file")
    chk.add_argument("scenario")
    chk.add_argument("--format", choices=("json", "text"), default="json")
    chk.add_argument("--tol", type=float, default=DEFAULT_SETTINGS.duality_tol)
    chk.set_defaults(handler=cmd_check)

    rnd = sub.add_parser("random-sweep", help="seeded random pure-state corpus as CSV")
    rnd.add_argument("--n", type=int, default=3)
    rnd.add_argument("--m", type=int, default=3)
    rnd.add_argument("--count", type=int, default=1000)
    rnd.add_argument("--seed", type=int, default=0)
    rnd.add_argument("--out", default=None, help="CSV path (default random_sweep.csv)")
    rnd.set_defaults(handler=cmd_random_sweep)

    durr = sub.add_parser("durr", help="Duerr criteria harness")
    durr.add_argument("--n", type=int, default=3)
    durr.add_argument("--probes", type=int, default=DEFAULT_SETTINGS.durr_probes)
    durr.add_argument("--seed", type=int, default=0)
    durr.set_defaults(handler=cmd_durr)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and dispatch a subcommand

    Args:
        argv: Arguments without the program name (default sys.argv[1:])

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
        if getattr(args, "theta_end", None) is None and args.command == "figure":
            args.theta_end = 180.0 if args.degrees else DEFAULT_SETTINGS.theta_end
        return args.handler(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(exc, file=sys.stderr)
        return EXIT_INVARIANT
    except DualityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
