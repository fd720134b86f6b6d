"""Command-line interface.

Subcommands:

* ``table1``   -- sign table of the seven two-qubit transpose/flip/reflection
  maps together with the per-map sign-change counts.
* ``analyze``  -- run selected criteria against a state file.
* ``upb-demo`` -- reflect the separable product-basis mixture into the bound
  entangled state and verify the whole chain.
* ``prop``     -- seeded randomised invariant suite.

Reports are JSON on stdout (``--plain`` switches to aligned text).  Exit
codes: 0 success, 1 failed property suite, 2 unreadable input, 3 dimension
mismatch.  Entanglement verdicts never affect the exit code.  The
``QREFLECT_TOL`` environment variable overrides the default positivity
tolerance.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .criteria import (
    ccn,
    ccn_report,
    concurrence_report,
    ppt_test,
    reduction_criterion,
    reflection_report,
    total_reflection_feasible,
)
from .io import StateFormatError, load_density
from .linalg import min_eig
from .properties import run_suite
from .reflections import (
    apply_mask,
    classify,
    mask_partial_transpose,
    mask_spin_flip,
    mask_total_reflection,
)
from .states import upb_kets, upb_separable
from .stokes import PSD_TOL, DensityState, multi_indices, purity, to_stokes

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_BAD_INPUT = 2
EXIT_DIMENSION = 3

TABLE1_COLUMNS = (
    "transpose_A",
    "transpose_B",
    "transpose_AB",
    "spinflip_A",
    "spinflip_B",
    "spinflip_AB",
    "reflection_AB",
)


def _tolerance() -> float:
    raw = os.environ.get("QREFLECT_TOL")
    if raw is None:
        return PSD_TOL
    try:
        return float(raw)
    except ValueError:
        print(f"error: QREFLECT_TOL must be a float, got {raw!r}", file=sys.stderr)
        raise SystemExit(EXIT_BAD_INPUT)


def _parse_subset(text: str, n: int) -> tuple[int, ...]:
    """Accept qubit letters ('A', 'AB') or 1-based digits ('1', '1,3')."""
    cleaned = text.replace(",", "").strip()
    if not cleaned:
        raise ValueError("empty qubit subset")
    labels = []
    for ch in cleaned:
        if ch.isalpha():
            labels.append(ord(ch.upper()) - ord("A") + 1)
        elif ch.isdigit():
            labels.append(int(ch))
        else:
            raise ValueError(f"cannot parse qubit label {ch!r}")
    subset = tuple(sorted(set(labels)))
    if any(q < 1 or q > n for q in subset):
        raise SystemExit(_dimension_error(f"subset {text!r} is outside qubits 1..{n}"))
    return subset


def _dimension_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_DIMENSION


def _emit(report: dict, plain_text: str | None, plain: bool) -> None:
    if plain and plain_text is not None:
        print(plain_text)
    else:
        print(json.dumps(report, sort_keys=True))


def _report(command: str, digest: str | None, result: dict, started: float) -> dict:
    return {
        "command": command,
        "input_digest": digest,
        "result": result,
        "wall_time_s": time.perf_counter() - started,
    }


def _table1_result() -> dict:
    masks = [
        mask_partial_transpose(2, (1,)),
        mask_partial_transpose(2, (2,)),
        mask_partial_transpose(2, (1, 2)),
        mask_spin_flip(2, (1,)),
        mask_spin_flip(2, (2,)),
        mask_spin_flip(2, (1, 2)),
        mask_total_reflection(2),
    ]
    rows = ["".join(str(d) for d in idx) for idx in multi_indices(2)]
    signs = [[int(mask.signs[k]) for mask in masks] for k in range(16)]
    counts = [classify(mask).sign_change_count for mask in masks]
    return {
        "rows": rows,
        "columns": list(TABLE1_COLUMNS),
        "signs": signs,
        "sign_change_counts": counts,
    }


def _table1_plain(result: dict) -> str:
    width = max(len(c) for c in result["columns"])
    header = "component  " + "  ".join(c.rjust(width) for c in result["columns"])
    lines = [header]
    for row, sign_row in zip(result["rows"], result["signs"]):
        cells = "  ".join(("+" if s > 0 else "-").rjust(width) for s in sign_row)
        lines.append(f"{row:<9}  {cells}")
    counts = "  ".join(str(c).rjust(width) for c in result["sign_change_counts"])
    lines.append(f"{'changes':<9}  {counts}")
    return "\n".join(lines)


def cmd_table1(args) -> int:
    started = time.perf_counter()
    result = _table1_result()
    _emit(_report("table1", None, result, started), _table1_plain(result), args.plain)
    return EXIT_OK


def cmd_analyze(args) -> int:
    started = time.perf_counter()
    tol = _tolerance()
    try:
        raw = open(args.state, "rb").read()
        rho = load_density(args.state)
    except (OSError, StateFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    digest = hashlib.sha256(raw).hexdigest()
    n = rho.n
    reports = []
    try:
        for text in args.ppt or ():
            reports.append(ppt_test(rho, _parse_subset(text, n), tol))
        if args.ccn:
            if n % 2 != 0:
                return _dimension_error(f"--ccn needs an even qubit count, state has n={n}")
            reports.append(ccn_report(rho, tuple(range(1, n // 2 + 1)), tol))
        if args.concurrence:
            if n != 2:
                return _dimension_error(f"--concurrence needs n=2, state has n={n}")
            reports.append(concurrence_report(rho, tol))
        for text in args.reflect or ():
            reports.append(reflection_report(rho, _parse_subset(text, n), tol))
        if args.feasible:
            reports.append(total_reflection_feasible(rho, tol))
        for text in args.reduction or ():
            reports.append(reduction_criterion(rho, _parse_subset(text, n), tol))
    except ValueError as exc:
        return _dimension_error(str(exc))
    result = {
        "n": n,
        "purity": purity(to_stokes(rho)),
        "min_eig": min_eig(rho.matrix),
        "criteria": [r.to_dict() for r in reports],
    }
    lines = [f"state: n={n} purity={result['purity']:.12g} min_eig={result['min_eig']:.3e}"]
    for r in reports:
        subset = "" if r.subset is None else f" subset={list(r.subset)}"
        lines.append(f"{r.criterion:<17} verdict={r.verdict:<21} witness={r.witness:+.12g}{subset}")
    _emit(_report("analyze", digest, result, started), "\n".join(lines), args.plain)
    return EXIT_OK


def cmd_upb_demo(args) -> int:
    started = time.perf_counter()
    tol = _tolerance()
    separable = upb_separable()
    feasibility = total_reflection_feasible(separable, tol)
    reflected = apply_mask(mask_total_reflection(3), separable)
    reflected_min = min_eig(reflected.matrix)
    ppt_reports = [ppt_test(DensityState(reflected.matrix), (q,), tol) for q in (1, 2, 3)]
    component_minima = []
    for vec in upb_kets():
        projector = np.outer(vec, vec.conj())
        image = apply_mask(mask_total_reflection(3), DensityState(projector))
        component_minima.append(min_eig(image.matrix))
    overlaps = [float((vec.conj() @ reflected.matrix @ vec).real) for vec in upb_kets()]
    cross_norms = {f"cut_{q}": ccn(DensityState(reflected.matrix), (q,)) for q in (1, 2, 3)}
    result = {
        "separable_feasible": feasibility.extra,
        "reflected_min_eig": reflected_min,
        "reflected_is_density": bool(reflected_min >= -tol),
        "ppt_cuts": [r.to_dict() for r in ppt_reports],
        "component_min_eigs": component_minima,
        "components_all_nonpositive": bool(max(component_minima) < -1e-6),
        "support_overlaps": overlaps,
        "cross_norms": cross_norms,
    }
    lines = [
        f"reflected separable mixture: min_eig={reflected_min:+.6e} -> density={result['reflected_is_density']}",
        "ppt cuts: " + ", ".join(f"{r.subset}: {r.verdict}" for r in ppt_reports),
        "reflected components min_eig: " + ", ".join(f"{v:+.3e}" for v in component_minima),
        "cross norms per cut: " + ", ".join(f"{k}={v:.6f}" for k, v in cross_norms.items()),
    ]
    _emit(_report("upb-demo", None, result, started), "\n".join(lines), args.plain)
    return EXIT_OK


def cmd_prop(args) -> int:
    started = time.perf_counter()
    try:
        results = run_suite(seed=args.seed, trials=args.trials, corrupt_mask=args.inject_mask_corruption)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    all_passed = all(r.passed for r in results)
    result = {
        "seed": args.seed,
        "trials": args.trials,
        "invariants": [r.to_dict() for r in results],
        "all_passed": all_passed,
    }
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.name} (worst deviation {r.worst:.3e})" for r in results]
    lines.append(f"{'all passed' if all_passed else 'FAILURES DETECTED'} [seed={args.seed}, trials={args.trials}]")
    _emit(_report("prop", None, result, started), "\n".join(lines), args.plain)
    return EXIT_OK if all_passed else EXIT_PROPERTY_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qreflect", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"qreflect {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="two-qubit sign table for the discrete symmetry maps")
    p.add_argument("--plain", action="store_true", help="aligned text instead of JSON")
    p.set_defaults(fn=cmd_table1)

    p = sub.add_parser("analyze", help="run criteria against a state file")
    p.add_argument("state", help="path to a JSON state file")
    p.add_argument("--ppt", action="append", metavar="SUBSET", help="partial-transpose test across SUBSET")
    p.add_argument("--ccn", action="store_true", help="computable cross norm across the first-half cut")
    p.add_argument("--concurrence", action="store_true", help="two-qubit concurrence")
    p.add_argument("--reflect", action="append", metavar="SUBSET", help="reflection feasibility across SUBSET")
    p.add_argument("--feasible", action="store_true", help="total-reflection feasibility flags")
    p.add_argument("--reduction", action="append", metavar="SUBSET", help="reduction criterion tracing SUBSET")
    p.add_argument("--plain", action="store_true")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("upb-demo", help="reflect the product-basis mixture into the bound entangled state")
    p.add_argument("--plain", action="store_true")
    p.set_defaults(fn=cmd_upb_demo)

    p = sub.add_parser("prop", help="seeded randomised invariant suite")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument(
        "--inject-mask-corruption",
        action="store_true",
        help="negative control: tamper with one mask sign so the suite must fail",
    )
    p.add_argument("--plain", action="store_true")
    p.set_defaults(fn=cmd_prop)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
