"""Command-line front end: ``symstab casimir|subcritical|decompose|verdict|report``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import rootdata, stability
from .rootdata import NotACharacter, UnsupportedType
from .serialize import dumps, encode, parse_rational
from .stability import StabilityProblem, UnsupportedSpace

SCHEMA_VERSION = "1.0"

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNSTABLE = 3
EXIT_UNDETERMINED = 4

VERDICT_EXIT = {
    stability.LINEARLY_STABLE: EXIT_OK,
    stability.UNSTABLE: EXIT_UNSTABLE,
    stability.UNDETERMINED: EXIT_UNDETERMINED,
}

REPORT_MAX_N = 5

# JSON Schema for every --json document; "results" differs per command.
_RATIONAL = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
OUTPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "command", "inputs", "results"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": ["casimir", "subcritical", "decompose", "verdict", "report"]},
        "inputs": {"type": "object"},
        "results": {"type": "object"},
    },
    "$defs": {
        "rational": _RATIONAL,
        "gaussian": {
            "type": "object",
            "required": ["re", "im"],
            "additionalProperties": False,
            "properties": {"re": _RATIONAL, "im": _RATIONAL},
        },
    },
}

log = logging.getLogger("symstab")


class InputError(ValueError):
    pass


def document(command: str, inputs: dict, results) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs, "results": encode(results)}


def _emit(args, doc: dict, text: str):
    if args.json:
        print(dumps(doc))
    else:
        print(text)


def _threshold(text: str | None) -> Fraction | None:
    if text is None:
        return None
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid threshold {text!r}: expected p/q") from exc


def _root_system(name: str):
    try:
        return rootdata.root_system(name)
    except UnsupportedType as exc:
        raise InputError(str(exc)) from exc


def _weight(rs, coeffs: list[str]) -> tuple[int, ...]:
    try:
        w = tuple(int(c) for c in coeffs)
    except ValueError as exc:
        raise InputError(f"weight coefficients must be integers: {coeffs}") from exc
    if len(w) != rs.rank:
        raise InputError(f"{rs.cartan_type} needs {rs.rank} coefficients, got {len(w)}")
    if any(a < 0 for a in w):
        raise InputError(f"weight {list(w)} is not dominant")
    return w


def _threads() -> int:
    raw = os.environ.get("SYMSTAB_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise InputError(f"SYMSTAB_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise InputError("SYMSTAB_THREADS must be at least 1")
    return n


# -- commands ------------------------------------------------------------------


def cmd_casimir(args) -> int:
    rs = _root_system(args.type)
    w = _weight(rs, args.coeffs)
    value = rootdata.casimir(rs, w)
    dim = rootdata.weyl_dimension(rs, w)
    doc = document("casimir", {"type": args.type, "weight": list(w)}, {"casimir": value, "dimension": dim})
    _emit(args, doc, str(value))
    return EXIT_OK


def _space_problem_args(args) -> tuple[str, int | None]:
    space = args.space.lower()
    if space not in ("su", "e6f4"):
        raise InputError(f"unsupported space {args.space!r}; expected 'su N' or 'e6f4'")
    if space == "su":
        if args.n is None:
            raise InputError("space 'su' needs n")
        if args.n < 3:
            raise InputError("SU(n) needs n >= 3")
    elif args.n is not None:
        raise InputError("e6f4 takes no n")
    return space, args.n


def cmd_subcritical(args) -> int:
    space, n = _space_problem_args(args)
    threshold = _threshold(args.threshold)
    threshold = Fraction(1) if threshold is None else threshold
    if threshold <= 0:
        raise InputError("threshold must be positive")
    label = stability.weight_label
    if space == "su":
        rs = rootdata.root_system(rootdata.CartanType.su(n))
        singles = rootdata.subcritical_weights(rs, threshold)
        pairs = rootdata.subcritical_product_weights(rs, threshold)
        results = {
            "group": str(rs.cartan_type),
            "weights": [{"label": label(w), "weight": list(w), "casimir": c} for w, c in singles],
            "pairs": [
                {
                    "label": f"({label(p.left)}, {label(p.right)})",
                    "weight": [list(p.left), list(p.right)],
                    "casimir": c,
                }
                for p, c in pairs
                if any(p.left) and any(p.right)
            ],
        }
    else:
        rs = rootdata.root_system("E6")
        singles = rootdata.subcritical_weights(rs, threshold)
        results = {
            "group": "E6",
            "weights": [{"label": label(w), "weight": list(w), "casimir": c} for w, c in singles],
        }
    lines = [f"{r['label']:<16} {r['casimir']}" for r in results["weights"]]
    if "pairs" in results:
        lines += [f"{r['label']:<16} {r['casimir']}" for r in results["pairs"]]
    doc = document("subcritical", {"space": space, "n": n, "threshold": threshold}, results)
    _emit(args, doc, "\n".join(lines))
    return EXIT_OK


def cmd_decompose(args) -> int:
    rs = _root_system(args.type)
    w = _weight(rs, args.coeffs)
    ch = rootdata.character(rs, w)
    if args.tensor_with is not None:
        other = _weight(rs, args.tensor_with)
        ms = rootdata.tensor_multiset(ch, rootdata.character(rs, other))
        what = f"{list(w)} (x) {list(other)}"
    else:
        ms = rootdata.sym_square_multiset(ch)
        what = f"Sym^2 {list(w)}"
    if args.traceless:
        zero = (0,) * rs.rank
        if ms[zero] < 1:
            raise InputError("module has no trivial summand to remove")
        ms[zero] -= 1
        what += " minus trivial"
    try:
        parts = rootdata.decompose_multiset(rs, ms)
    except NotACharacter as exc:
        raise InputError(str(exc)) from exc
    results = {
        "module": what,
        "dimension": sum(ms.values()),
        "parts": [
            {
                "weight": list(p),
                "label": stability.weight_label(p),
                "multiplicity": m,
                "dimension": rootdata.weyl_dimension(rs, p),
                "casimir": rootdata.casimir(rs, p),
            }
            for p, m in parts
        ],
    }
    lines = [f"{what}  (dim {results['dimension']})"]
    lines += [f"  {r['multiplicity']} x {r['label']:<14} dim {r['dimension']:<6} Cas {r['casimir']}" for r in results["parts"]]
    inputs = {
        "type": args.type,
        "weight": list(w),
        "tensor_with": list(other) if args.tensor_with is not None else None,
        "traceless": args.traceless,
    }
    _emit(args, document("decompose", inputs, results), "\n".join(lines))
    return EXIT_OK


def _problem(space: str, n: int | None, threshold, physical: bool, max_n: int) -> StabilityProblem:
    try:
        return StabilityProblem(
            space, n, threshold, notion="physical" if physical else "einstein-hilbert", max_n=max_n
        )
    except UnsupportedSpace as exc:
        raise InputError(str(exc)) from exc


def _verdict_text(v: stability.Verdict) -> str:
    lines = [f"{v.space}: threshold {v.threshold}"]
    for r in v.subcritical:
        nz = {True: "nonzero", False: "ZERO", None: "-"}[r.divergence_nonzero]
        hom = "?" if r.hom_multiplicity is None else r.hom_multiplicity
        lines.append(f"  {r.label:<16} Cas {str(r.casimir):<8} hom {hom}  divergence {nz}")
        if r.witness:
            lines.append(f"    witness F = {r.witness['F']}, X = {r.witness['X']}: {r.witness['value']}")
    lines.append(f"conclusion: {v.conclusion}")
    return "\n".join(lines)


def cmd_verdict(args) -> int:
    space, n = _space_problem_args(args)
    p = _problem(space, n, _threshold(args.threshold), args.physical, args.max_n)
    v = stability.run_pipeline(p)
    inputs = {"space": space, "n": n, "threshold": p.threshold, "notion": p.notion}
    _emit(args, document("verdict", inputs, v.to_dict()), _verdict_text(v))
    return VERDICT_EXIT[v.conclusion]


def _run_problem(p: StabilityProblem) -> dict:
    v = stability.run_pipeline(p)
    return {"space": v.space, "conclusion": v.conclusion}


def cmd_report(args) -> int:
    problems = [StabilityProblem("su", n, max_n=max(args.max_n, 3)) for n in range(3, args.max_n + 1)]
    problems.append(StabilityProblem("e6f4"))
    workers = min(_threads(), len(problems))
    log.info("report: %d computations on %d worker(s)", len(problems), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(_run_problem, problems))
    else:
        computed = [_run_problem(p) for p in problems]
    rows = [
        {"space": e.space, "status": e.status, "origin": e.origin, "source": e.source}
        for e in stability.classification_table()
    ]
    rows += [{"space": c["space"], "status": c["conclusion"], "origin": "computed", "source": "symstab"} for c in computed]
    width = max(len(r["space"]) for r in rows)
    text = "\n".join(f"{r['space']:<{width}} | {r['status']} | {r['origin']}" for r in rows)
    _emit(args, document("report", {"max_n": args.max_n}, {"rows": rows}), text)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="symstab", description="Exact stability checks for SU(n) and E6/F4.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON document")
    common.add_argument("-q", "--quiet", action="store_true", help="suppress progress messages on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("casimir", parents=[common], help="Casimir eigenvalue of an irreducible representation")
    p.add_argument("type", help="Cartan type, e.g. A2, F4, E6")
    p.add_argument("coeffs", nargs="+", help="highest weight in fundamental-weight coordinates")
    p.set_defaults(func=cmd_casimir)

    p = sub.add_parser("subcritical", parents=[common], help="representations with Casimir below the threshold")
    p.add_argument("space", help="'su' or 'e6f4'")
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("--threshold", metavar="p/q")
    p.set_defaults(func=cmd_subcritical)

    p = sub.add_parser("decompose", parents=[common], help="decompose Sym^2 (or a tensor product) into irreducibles")
    p.add_argument("type")
    p.add_argument("coeffs", nargs="+")
    p.add_argument("--tensor-with", nargs="+", metavar="C", help="decompose V (x) W instead of Sym^2 V")
    p.add_argument("--traceless", action="store_true", help="remove one trivial summand")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verdict", parents=[common], help="run the full stability pipeline")
    p.add_argument("space", help="'su' or 'e6f4'")
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("--threshold", metavar="p/q")
    p.add_argument("--physical", action="store_true", help="use the (9 - dim M)/4 Lambda threshold")
    p.add_argument("--max-n", type=_positive_int, default=stability.DEFAULT_MAX_N, metavar="N")
    p.set_defaults(func=cmd_verdict)

    p = sub.add_parser("report", parents=[common], help="classification table with computed verdicts")
    p.add_argument("--max-n", type=_positive_int, default=REPORT_MAX_N, metavar="N")
    p.set_defaults(func=cmd_report)
    return parser


def _configure_logging(quiet: bool):
    # bound to the current sys.stderr on every call, so repeated main() calls behave
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.WARNING if quiet else logging.INFO)
    log.propagate = False


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.quiet)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"symstab: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except stability.ConsistencyError as exc:
        print(f"symstab: consistency check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
