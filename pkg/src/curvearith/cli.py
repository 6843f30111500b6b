"""``curvearith`` command line: JSON curve specs in, JSON result documents out.

Exit codes: 0 success, 2 input error, 3 resource limit / timeout / stall,
4 internal consistency failure (including a strategy mismatch).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .classgroup import class_group
from .curve import (
    Divisor,
    differential_basis,
    infinity_rr_basis,
    place_at_point,
    place_by_label,
    validate_model,
    zeta_data,
)
from .curve.model import CurveModel
from .errors import (
    CurveArithError,
    InternalError,
    InvalidInputError,
    ResourceLimitError,
    StallError,
    StrategyMismatch,
    TimeoutExceeded,
)
from .expand import ExpansionTable
from .gonality import STRATEGIES, amortized_scan, baseline_scan, gonality, has_function_leq
from .gonality import rational_lower_bound, search_places
from .rrspace import RRQueryEngine, oracle_rr_dim, rr_dim

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE, EXIT_INTERNAL = 0, 2, 3, 4


def parse_curve_file(path) -> CurveModel:
    """Read and validate a curve-spec JSON file; errors carry ``path:line:col`` context."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"{path}: cannot read curve spec ({exc.strerror})") from None
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        err = InvalidInputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}")
        err.line, err.column = exc.lineno, exc.colno
        raise err from None
    try:
        return validate_model(spec)
    except InvalidInputError as exc:
        raise InvalidInputError(f"{path}: {exc}") from None


# -- divisor arguments -----------------------------------------------------------


def _split_mult(text):
    body, _, mult = text.partition("=")
    try:
        return body, int(mult) if mult else 1
    except ValueError:
        raise InvalidInputError(f"bad multiplicity in {text!r}") from None


def _parse_point(model, text):
    if text == "inf":
        if not model.is_hyperelliptic:
            raise InvalidInputError("'inf' is only meaningful for hyperelliptic models; give (x,y,z)")
        return place_at_point(model, None)
    try:
        coords = tuple(int(c) for c in text.split(","))
    except ValueError:
        raise InvalidInputError(f"bad point {text!r}") from None
    want = 2 if model.is_hyperelliptic else 3
    if len(coords) != want:
        raise InvalidInputError(f"point {text!r} needs {want} coordinates")
    return place_at_point(model, coords)


def _divisor_from_args(model, args) -> Divisor:
    terms = {}
    for text in args.place or []:
        label, m = _split_mult(text)
        pl = place_by_label(model, label)
        terms[pl] = terms.get(pl, 0) + m
    for text in args.point or []:
        body, m = _split_mult(text)
        pl = _parse_point(model, body)
        terms[pl] = terms.get(pl, 0) + m
    return Divisor(terms)


def _basis_from_args(model, args):
    if args.basis == "canonical":
        return differential_basis(model)
    n = args.n if args.n is not None else max(1, 2 * model.genus - 1)
    return infinity_rr_basis(model, n)


# -- subcommands -------------------------------------------------------------------


def cmd_zeta(model, args):
    data = zeta_data(model)
    return {"h0": data["h0"], "point_counts": data["point_counts"], "l_polynomial": data["l_polynomial"]}, {}


def _witness_payload(res):
    out = {}
    if res.witness_divisor is not None:
        out["witness_divisor"] = res.witness_divisor.to_json()
    if res.witness_function is not None:
        out["witness_function"] = res.witness_function.to_json()
    return out


def cmd_has_function(model, args):
    if args.degree is None:
        raise InvalidInputError("has-function needs --degree")
    res = has_function_leq(model, args.degree, args.strategy, timeout=args.timeout, threads=args.threads)
    return {"has_function": bool(res.answer), "degree": args.degree, **_witness_payload(res)}, res.stats


def cmd_gonality(model, args):
    res = gonality(model, args.strategy, cap=args.degree, timeout=args.timeout, threads=args.threads)
    return {"gonality": res.answer, **_witness_payload(res)}, res.stats


def cmd_classgroup(model, args):
    res = class_group(
        model,
        m=args.factor_basis_degree,
        base_divisor_degree=args.base_divisor_degree,
        seed=args.seed,
        timeout=args.timeout,
    )
    answer = {"rank": res.free_rank, "torsion": list(res.torsion), "h0": res.h0}
    stats = dict(res.stats)
    stats["audit"] = res.audit
    if args.dump_relations:
        dump = {
            "curve_hash": model.hash,
            "seed": args.seed,
            "factor_basis": [p.label() for p in res.factor_basis.places],
            "relations": [
                {"vector": list(v), "function": f.to_json()}
                for v, f in zip(res.relations.vectors, res.relations.functions)
            ],
            "audit": res.audit,
        }
        Path(args.dump_relations).write_text(json.dumps(dump, indent=1, sort_keys=True) + "\n")
    return answer, stats


def cmd_rrdim(model, args):
    D = _divisor_from_args(model, args)
    if D.is_zero():
        raise InvalidInputError("rrdim needs at least one --place or --point")
    basis = _basis_from_args(model, args)
    t0 = time.perf_counter()
    dim, r = rr_dim(RRQueryEngine(basis), D)
    stats = {"table_seconds": time.perf_counter() - t0}
    if args.strategy in ("baseline", "both"):
        t1 = time.perf_counter()
        odim, orank = oracle_rr_dim(basis, D, fresh=True)
        stats["oracle_seconds"] = time.perf_counter() - t1
        if args.strategy == "both" and (odim, orank) != (dim, r):
            raise StrategyMismatch(f"tables give dim {dim}, oracle gives {odim}", D)
        dim, r = odim, orank
    answer = {
        "basis": basis.basis_id,
        "base_divisor_degree": basis.divisor.degree,
        "divisor": D.to_json(),
        "dimension": dim,
        "rank": r,
    }
    return answer, stats


def cmd_expand(model, args):
    D = _divisor_from_args(model, args)
    if len(D.support) != 1:
        raise InvalidInputError("expand needs exactly one --place or --point")
    (place,) = D.support
    basis = _basis_from_args(model, args)
    table = ExpansionTable(basis, place).extend(args.precision)
    answer = {
        "basis": basis.basis_id,
        "place": place.label(),
        "offset": table.offset,
        "normalizer": table.normalizer,
        "rows": [[list(v) for v in row] for row in table.rows],
    }
    return answer, {}


def cmd_bench(model, args):
    """Amortized scan of the whole stream against per-divisor recomputation on a prefix."""
    d = args.degree if args.degree is not None else model.genus // 2 + 1
    n1 = rational_lower_bound(model)
    places = search_places(model, d, n1)
    t0 = time.perf_counter()
    _hit, dec, am = amortized_scan(model, d, n1, places, exhaustive=True, deadline=_deadline(args, t0))
    sample = min(args.sample, len(dec))
    _bhit, bdec, bl = baseline_scan(
        model, d, n1, places, exhaustive=True, deadline=_deadline(args, t0), limit=sample
    )
    if dec[:sample] != bdec:
        i = next(i for i, (a, b) in enumerate(zip(dec, bdec)) if a != b)
        raise StrategyMismatch(f"strategies disagree on divisor #{i}")
    speedup = am["rr_per_second"] / bl["rr_per_second"] if bl["rr_per_second"] else None
    answer = {
        "degree": d,
        "n1": n1,
        "places": len(places),
        "divisors": len(dec),
        "true_decisions": sum(dec),
        "baseline_sample": sample,
    }
    stats = {
        "amortized": am,
        "baseline": bl,
        "speedup_rr_per_second": speedup,
        "table": [
            {
                "strategy": "amortized",
                "expansions_per_second": am["expansions_per_second"],
                "rr_per_second": am["rr_per_second"],
            },
            {
                "strategy": "baseline",
                "expansions_per_second": bl["expansions_per_second"],
                "rr_per_second": bl["rr_per_second"],
            },
        ],
    }
    return answer, stats


def _deadline(args, t0):
    return None if args.timeout is None else t0 + args.timeout


COMMANDS = {
    "gonality": cmd_gonality,
    "has-function": cmd_has_function,
    "classgroup": cmd_classgroup,
    "rrdim": cmd_rrdim,
    "expand": cmd_expand,
    "zeta": cmd_zeta,
    "bench": cmd_bench,
}


# -- driver ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvearith", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"curvearith {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("curve", help="curve-spec JSON file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--timeout", type=float, default=None, help="wall-clock budget in seconds")
    common.add_argument("--threads", type=int, default=1, help="accepted; computation is single-threaded")
    common.add_argument("--output", help="write the result document here instead of stdout")
    common.add_argument("--strategy", choices=STRATEGIES, default="amortized")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name in ("gonality", "has-function", "bench"):
            p.add_argument("--degree", type=int, help="degree d (gonality: search cap)")
        if name == "bench":
            p.add_argument("--sample", type=int, default=200, help="baseline divisors to time")
        if name == "classgroup":
            p.add_argument("--factor-basis-degree", type=int, dest="factor_basis_degree")
            p.add_argument("--base-divisor-degree", type=int, dest="base_divisor_degree")
            p.add_argument("--dump-relations", metavar="PATH", help="write relations and audit log as JSON")
        if name in ("rrdim", "expand"):
            p.add_argument("--place", action="append", help="place label, optionally LABEL=mult")
            p.add_argument("--point", action="append", help="x,y (hyperelliptic, or 'inf') or x,y,z; optional =mult")
            p.add_argument("--basis", choices=("canonical", "infinity"), default="canonical")
            p.add_argument("--n", type=int, help="degree of the infinity divisor for --basis infinity")
        if name == "expand":
            p.add_argument("--precision", type=int, default=8)
    return parser


def run(argv=None) -> tuple:
    """Parse ``argv`` and execute; returns ``(document, exit code, output path or None)``."""
    args = build_parser().parse_args(argv)
    doc = {
        "command": args.command,
        "argv": list(argv) if argv is not None else sys.argv[1:],
        "curve_hash": None,
        "seed": args.seed,
        "status": "ok",
        "answer": None,
        "statistics": {},
        "version": __version__,
    }
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        model = parse_curve_file(args.curve)
        doc["curve_hash"] = model.hash
        t1 = time.perf_counter()
        answer, stats = COMMANDS[args.command](model, args)
        doc["answer"] = answer
        doc["statistics"] = {**stats, "parse_seconds": t1 - t0, "run_seconds": time.perf_counter() - t1}
    except InvalidInputError as exc:
        doc["status"], code = "input_error", EXIT_INPUT
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        if hasattr(exc, "line"):
            doc["error"].update(line=exc.line, column=exc.column)
    except TimeoutExceeded as exc:
        doc["status"], code = "timeout", EXIT_RESOURCE
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        doc["statistics"] = {"partial": exc.partial or {}}
    except (ResourceLimitError, StallError) as exc:
        doc["status"], code = "resource_limit", EXIT_RESOURCE
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
    except StrategyMismatch as exc:
        doc["status"], code = "mismatch", EXIT_INTERNAL
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        if exc.divisor is not None:
            doc["error"]["divisor"] = exc.divisor.to_json()
    except (InternalError, CurveArithError) as exc:
        doc["status"], code = "internal_error", EXIT_INTERNAL
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
    doc["statistics"]["threads"] = 1
    doc["statistics"]["wall_seconds"] = time.perf_counter() - t0
    return doc, code, args.output


def main(argv=None) -> int:
    doc, code, output = run(argv)
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    if code != EXIT_OK:
        sys.stderr.write(f"curvearith: {doc['status']}: {doc['error']['message']}\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
