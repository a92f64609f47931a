"""Command-line interface.

Exit status: 0 on success, 1 when a verification fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from pathlib import Path

from . import verify
from .core import (
    DeltaMatroid,
    DeltaMatroidError,
    SetSystem,
    canonical,
    contract,
    delete,
    mask_of,
    restrict,
    set_to_str,
    twist,
    validate,
)
from .formats import (
    dm_literal,
    dumps,
    format_dm,
    load_dm,
    load_gf2,
    load_graph,
    poly_json,
)
from .gf2 import is_binary, is_binary_oracle, matrix_delta_matroid
from .graphs import graph_delta_matroid
from .hopf import build_family, project_primitive, q_of_combination
from .moves import (
    InvalidQuadrupleError,
    check_four_term,
    enumerate_binary,
    exchange_ends,
    four_term_defect,
    handle_slide,
    pointwise_failures,
    random_binary,
)
from .polynomial import interlace_poly, interlace_poly_bruteforce, interlace_poly_recursive, render

log = logging.getLogger("deltamatroid")

JSON_DEFAULT = {"validate", "interlace", "binary"}


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(dumps(payload))
    else:
        print(text)


def _dm_payload(S: SetSystem, **extra) -> dict:
    return {"n": S.n, "feasible": list(S.feasible), **extra}


def _parse_elements(tokens: list[str]) -> int:
    elems = []
    for tok in tokens:
        for part in tok.replace(",", " ").split():
            try:
                elems.append(int(part))
            except ValueError:
                raise UsageError(f"not an element label: {part!r}") from None
    return mask_of(elems)


def _load_delta_matroid(path: str) -> DeltaMatroid:
    return DeltaMatroid.of(load_dm(path))


def cmd_validate(args) -> int:
    S = load_dm(args.file)
    cex = validate(S)
    if cex is None:
        _emit(args, _dm_payload(S, status="ok", detail="delta-matroid"), "valid")
        return 0
    X, Y, x = cex
    detail = f"symmetric exchange fails: X={set_to_str(X)} Y={set_to_str(Y)} x={x}"
    _emit(args, _dm_payload(S, status="fail", detail=detail), f"not a delta-matroid: {detail}")
    return 1


def cmd_interlace(args) -> int:
    D = _load_delta_matroid(args.file)
    if args.oracle:
        p = interlace_poly_bruteforce(D)
    elif args.recursive:
        p = interlace_poly_recursive(D)
    else:
        p = interlace_poly(D)
    _emit(args, poly_json(p), render(p))
    return 0


def cmd_op(args) -> int:
    D = _load_delta_matroid(args.file)
    if args.operation in ("delete", "contract"):
        if len(args.elements) != 1:
            raise UsageError(f"{args.operation} takes exactly one element")
        e = int(args.elements[0])
        out = delete(D, e) if args.operation == "delete" else contract(D, e)
    else:
        sub = _parse_elements(args.elements)
        out = twist(D, sub) if args.operation == "twist" else restrict(D, sub)
    _emit(args, _dm_payload(out, status="ok"), format_dm(out).rstrip("\n"))
    return 0


def cmd_move(args) -> int:
    S = load_dm(args.file)
    move = handle_slide if args.move == "slide" else exchange_ends
    out = move(S, args.a, args.b)
    cex = validate(out)
    detail = "delta-matroid" if cex is None else "result is not a delta-matroid"
    if args.format == "json":
        print(dumps(_dm_payload(out, status="ok", detail=detail)))
    else:
        print(format_dm(out).rstrip("\n"))
        print(f"# {detail}", file=sys.stderr)
    return 0


def _write_failures(path: str | None, failures) -> None:
    if not path or not failures:
        return
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    for i, (D, a, b, *_rest) in enumerate(failures):
        (out / f"failure_{i:04d}_a{a}_b{b}.dm").write_text(format_dm(D))


def cmd_four_term(args) -> int:
    if args.exhaustive or args.random:
        if args.n is None:
            raise UsageError("-n is required with --exhaustive/--random")
        if args.exhaustive:
            instances = [D for k in range(2, args.n + 1) for D in enumerate_binary(k)]
        else:
            log.info("random binary instances: n=%d count=%d seed=%d", args.n, args.random, args.seed)
            rng = random.Random(args.seed)
            instances = (random_binary(args.n, rng) for _ in range(args.random))
        report = check_four_term(instances, pointwise=True)
        _write_failures(args.emit_failures, report.failures)
        if args.format == "json":
            print(dumps({"status": "ok" if report.ok else "fail", "detail": report.summary()}))
        else:
            print(report.summary())
        return 0 if report.ok else 1
    if args.file is None or args.a is None or args.b is None:
        raise UsageError("four-term needs FILE A B, or --exhaustive/--random with -n")
    D = load_dm(args.file)
    try:
        defect = four_term_defect(D, args.a, args.b, check=True)
    except InvalidQuadrupleError as exc:
        _emit(args, {"status": "fail", "detail": str(exc)}, f"invalid quadruple: {exc}")
        return 1
    bad = pointwise_failures(D, args.a, args.b)
    ok = defect.is_zero() and not bad
    detail = f"pointwise failures: {len(bad)}"
    if not ok:
        _write_failures(args.emit_failures, [(D, args.a, args.b)])
    _emit(
        args,
        {**poly_json(defect), "status": "ok" if ok else "fail", "detail": detail},
        f"defect: {render(defect)}\n{detail}",
    )
    return 0 if ok else 1


def cmd_binary(args) -> int:
    D = _load_delta_matroid(args.file)
    if args.oracle:
        binary = is_binary_oracle(D)
        detail = "binary (oracle)" if binary else "not binary (oracle)"
    else:
        w = is_binary(D)
        binary = w is not None
        if binary:
            rows = " ".join("".join(map(str, r)) for r in w.matrix.to_lists())
            detail = f"twist of M_A by {set_to_str(w.twist_set)}; A rows {rows or '(empty)'}"
        else:
            detail = "not binary"
    _emit(args, _dm_payload(D, status="ok" if binary else "fail", detail=detail), detail)
    return 0 if binary else 1


def cmd_project(args) -> int:
    D = _load_delta_matroid(args.file)
    comb = project_primitive(D)
    p = q_of_combination(comb)
    if args.format == "json":
        terms = [{"coeff": c, "n": K.n, "feasible": list(K.feasible)} for K, c in comb.items()]
        print(dumps({"terms": terms, **poly_json(p)}))
    else:
        for K, c in comb.items():
            print(f"{c} {dm_literal(K)}")
        print(f"q = {render(p)}")
    return 0


def cmd_families(args) -> int:
    D = build_family(args.kind, args.n, args.k)
    _emit(args, _dm_payload(D, status="ok"), format_dm(D).rstrip("\n"))
    return 0


def cmd_enumerate(args) -> int:
    dms = enumerate_binary(args.n)
    if args.format == "json":
        print(dumps({"n": args.n, "count": len(dms), "feasible": [list(D.feasible) for D in dms]}))
    else:
        print(f"count={len(dms)}")
        for D in dms:
            print(dm_literal(D))
    return 0


def cmd_convert(args) -> int:
    if args.source == "graph":
        D = graph_delta_matroid(load_graph(args.file))
    else:
        D = matrix_delta_matroid(load_gf2(args.file))
    _emit(args, _dm_payload(D, status="ok"), format_dm(D).rstrip("\n"))
    return 0


def cmd_canonical(args) -> int:
    D = canonical(load_dm(args.file))
    _emit(args, _dm_payload(D, status="ok"), format_dm(D).rstrip("\n"))
    return 0


def cmd_reproduce(args) -> int:
    fn = verify.TARGETS[args.target]
    kwargs = {}
    if args.n is not None:
        kwargs["n_max"] = args.n
    if args.target in ("lemma1", "lemma3", "theorem1", "theorem4"):
        kwargs["seed"] = args.seed
        log.info("seed=%d", args.seed)
    rows = fn(**kwargs)
    ok = all(r.ok for r in rows)
    if args.format == "json":
        print(dumps({
            "status": "ok" if ok else "fail",
            "detail": args.target,
            "rows": [r.__dict__ for r in rows],
        }))
    else:
        print(verify.render_table(rows))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # SUPPRESS so that flags given before the subcommand survive the subparser
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--oracle", action="store_true", default=argparse.SUPPRESS,
                        help="force brute-force code paths")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(
        prog="deltamatroid",
        description="Delta-matroids, interlace polynomials and the 4-term relation.",
        parents=[common],
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(func=func)
        return sp

    sp = add("validate", cmd_validate, "check the symmetric exchange axiom")
    sp.add_argument("file")

    sp = add("interlace", cmd_interlace, "interlace polynomial of a delta-matroid")
    sp.add_argument("file")
    sp.add_argument("--recursive", action="store_true", help="use the delete/twist recursion")

    sp = add("op", cmd_op, "twist, delete, contract or restrict")
    sp.add_argument("operation", choices=("twist", "delete", "contract", "restrict"))
    sp.add_argument("file")
    sp.add_argument("elements", nargs="*", help="element labels (a subset for twist/restrict)")

    sp = add("move", cmd_move, "handle slide or handle-end exchange")
    sp.add_argument("move", choices=("slide", "exchange"))
    sp.add_argument("file")
    sp.add_argument("a", type=int)
    sp.add_argument("b", type=int)

    sp = add("four-term", cmd_four_term, "4-term defect of the interlace polynomial")
    sp.add_argument("file", nargs="?")
    sp.add_argument("a", type=int, nargs="?")
    sp.add_argument("b", type=int, nargs="?")
    sp.add_argument("--exhaustive", action="store_true", help="all binary delta-matroids up to -n")
    sp.add_argument("--random", type=int, default=0, metavar="COUNT",
                    help="COUNT random binary delta-matroids of size -n")
    sp.add_argument("-n", type=int)
    sp.add_argument("--emit-failures", metavar="DIR")

    sp = add("binary", cmd_binary, "decide whether a delta-matroid is binary")
    sp.add_argument("file")

    sp = add("project", cmd_project, "projection to primitives and its interlace polynomial")
    sp.add_argument("file")

    sp = add("families", cmd_families, "the witness families of the rank theorem")
    sp.add_argument("kind", choices=("allones", "tower", "complete"))
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int, nargs="?", default=0)

    sp = add("enumerate", cmd_enumerate, "binary delta-matroids up to relabeling")
    sp.add_argument("-n", type=int, required=True)

    sp = add("convert", cmd_convert, "graph or gf2 matrix file to a dm file")
    sp.add_argument("source", choices=("graph", "gf2"))
    sp.add_argument("file")

    sp = add("canonical", cmd_canonical, "canonical relabeling of a set system")
    sp.add_argument("file")

    sp = add("reproduce", cmd_reproduce, "pass/fail table for one of the identities")
    sp.add_argument("target", choices=sorted(verify.TARGETS))
    sp.add_argument("-n", type=int)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", None) is None:
        args.format = "json" if args.command in JSON_DEFAULT else "text"
    args.seed = getattr(args, "seed", 0)
    args.oracle = getattr(args, "oracle", False)
    args.verbose = getattr(args, "verbose", False)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, DeltaMatroidError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
