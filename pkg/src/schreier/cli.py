"""Command-line front end.

Sub-commands: ord {cmp|fs|arith}, fam {member|enum|norm|maximal|transform},
ra {vec|props|witness|growth|hull}, idx {derive|window|embed|find|large|fdelta},
sum {cesaro|trend|spread|reduce|bsprobe}, cu {search|floor|freeset|suppress}.

Exit codes: 0 success, 1 a report found a property violation, 2 bad usage
or input, 3 a resource cap aborted the computation.  Runs are seedless and
deterministic: identical arguments give byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .averages import (DEFAULT_SUPPORT_CAP, RaVector, check_properties,
                       delta_witness, growth_probe, hull_decompose, ra_vector)
from .errors import CapExceeded, OrdinalParseError, SchreierError
from .families import (FamilyWindow, enumerate_window, finset, image_family,
                       is_maximal, member, restrict, schreier_norm)
from .index import (SpreadingFamily, embed_certificate, f_delta_build,
                    find_embedding, is_large, scb_derivative, window_index)
from .lazysets import LazySet, NATURALS
from .models import (SchreierModel, SignedSchreierModel, SupModel,
                     bs_probe, cesaro_means, reduction_check,
                     spreading_model_check, summability_trend)
from .ordinals import (Ordinal, add, format_ordinal, fund_seq, mul_nat,
                       parse_ordinal)
from .unconditional import (CuQuery, cu_floor, cu_search, free_set_check,
                            suppression_check)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _frac(text: str) -> Fraction:
    return Fraction(text)


def _lazyset(text: str) -> LazySet:
    return LazySet.from_json(json.loads(text))


def _finset(text: str) -> tuple:
    return finset(json.loads(text))


def _model(text: str):
    kind, _, arg = text.partition(":")
    if kind == "sup":
        return SupModel()
    if kind == "schreier":
        return SchreierModel(parse_ordinal(arg or "1"))
    if kind == "signed":
        return SignedSchreierModel(parse_ordinal(arg or "1"))
    raise ValueError(f"unknown model {text!r} "
                     "(use sup, schreier:<xi>, signed:<xi>)")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Ordinal):
        return format_ordinal(obj)
    if isinstance(obj, dict):
        return {str(_jsonable(k)): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, frozenset):
        return sorted(_jsonable(x) for x in obj)
    if hasattr(obj, "to_json"):
        return _jsonable(obj.to_json())
    return obj


def _emit(payload, args) -> None:
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_csv(rows, header, args) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def _decimal(value: Fraction) -> str:
    return f"{float(value):.6g}"


# -- command handlers -----------------------------------------------------

def _cmd_ord(args) -> int:
    if args.op == "cmp":
        a, b = parse_ordinal(args.a), parse_ordinal(args.b)
        verdict = "less" if a < b else ("equal" if a == b else "greater")
        print(verdict)
        return EXIT_OK
    if args.op == "fs":
        xi = parse_ordinal(args.xi)
        _emit([format_ordinal(fund_seq(xi, n))
               for n in range(1, args.n + 1)], args)
        return EXIT_OK
    a, b = parse_ordinal(args.a), parse_ordinal(args.b)
    if args.kind == "add":
        print(format_ordinal(add(a, b)))
    else:
        print(format_ordinal(mul_nat(a, b.as_int())))
    return EXIT_OK


def _cmd_fam(args) -> int:
    xi = parse_ordinal(args.xi)
    if args.op == "member":
        print("true" if member(xi, _finset(args.set)) else "false")
        return EXIT_OK
    if args.op == "maximal":
        print("true" if is_maximal(xi, _finset(args.set)) else "false")
        return EXIT_OK
    if args.op == "norm":
        entries = {int(n): Fraction(v)
                   for n, v in json.loads(args.vector).items()}
        print(_jsonable(schreier_norm(xi, entries)))
        return EXIT_OK
    if args.op == "enum":
        fam = enumerate_window(xi, args.window)
        _emit({"window": fam.window, "tag": fam.tag,
               "members": sorted(fam.members, key=lambda s: (len(s), s))},
              args)
        return EXIT_OK
    # transform: restriction and image through a lazy set
    fam = enumerate_window(xi, args.window)
    m = _lazyset(args.m)
    if args.kind == "restrict":
        out = restrict(fam, m)
    else:
        out = image_family(xi, m, args.window)
    _emit({"window": out.window, "tag": out.tag,
           "members": sorted(out.members, key=lambda s: (len(s), s))}, args)
    return EXIT_OK


def _cmd_ra(args) -> int:
    if args.op == "vec":
        v = ra_vector(parse_ordinal(args.xi), _lazyset(args.m), args.n,
                      args.cap)
        _emit(v, args)
        return EXIT_OK
    if args.op == "growth":
        _emit(growth_probe(parse_ordinal(args.xi), args.n, args.cap), args)
        return EXIT_OK
    if args.op == "witness":
        fs, value = delta_witness(parse_ordinal(args.xi), _lazyset(args.m),
                                  _lazyset(args.p), args.n, args.cap)
        _emit({"set": fs, "value": value}, args)
        return EXIT_OK
    if args.op == "hull":
        h = hull_decompose(parse_ordinal(args.zeta), parse_ordinal(args.xi),
                           _lazyset(args.m), _lazyset(args.l), args.n,
                           args.cap)
        _emit({"parts": [{"weight": w, "base": b.to_json(), "index": j}
                         for w, b, j in h.parts],
               "residual_bound": h.residual_bound,
               "combination": {str(k): v
                               for k, v in sorted(h.combination.items())}},
              args)
        return EXIT_OK
    # props
    report = check_properties(parse_ordinal(args.xi), _lazyset(args.m),
                              args.depth, args.cap)
    payload = {"xi": format_ordinal(report.xi), "base": report.base,
               "depth": report.depth, "passed": report.passed,
               "capped": report.capped, "entries": list(report.entries)}
    if args.csv:
        _emit_csv([(format_ordinal(report.xi), report.base, e["property"],
                    e["n"], e["status"], e["detail"])
                   for e in report.entries],
                  ("xi", "base", "property", "n", "status", "detail"), args)
    else:
        _emit(payload, args)
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _cmd_idx(args) -> int:
    if args.op == "fdelta":
        functionals = [{int(n): Fraction(v) for n, v in f.items()}
                       for f in json.loads(args.functionals)]
        fam = f_delta_build(functionals, _frac(args.delta), args.window)
        _emit({"window": fam.window,
               "members": sorted(fam.members, key=lambda s: (len(s), s))},
              args)
        return EXIT_OK
    xi = parse_ordinal(args.xi)
    if args.op == "derive":
        fam = scb_derivative(SpreadingFamily.from_schreier(xi, args.window))
        _emit({"window": fam.window.window,
               "members": sorted(fam.window.members,
                                 key=lambda s: (len(s), s))}, args)
        return EXIT_OK
    if args.op == "window":
        report = window_index(SpreadingFamily.from_schreier(xi, args.window))
        _emit(report.to_json(), args)
        return EXIT_OK
    if args.op == "embed":
        fam = enumerate_window(xi, args.window)
        ok, blocking = embed_certificate(parse_ordinal(args.zeta), fam,
                                         _lazyset(args.m))
        _emit({"ok": ok, "blocking": blocking}, args)
        return EXIT_OK if ok else EXIT_VIOLATION
    if args.op == "find":
        fam = enumerate_window(xi, args.window)
        prefix, blocking = find_embedding(parse_ordinal(args.zeta), fam,
                                          args.window)
        _emit({"prefix": prefix, "blocking": blocking}, args)
        return EXIT_OK if prefix is not None else EXIT_VIOLATION
    # large
    fam = SpreadingFamily.from_schreier(xi, args.window)
    report = is_large(fam, _lazyset(args.m), xi, _frac(args.eps),
                      depth=args.depth, cap=args.cap)
    _emit(report, args)
    return EXIT_OK if report["pass"] else EXIT_VIOLATION


def _cmd_sum(args) -> int:
    model = _model(args.model)
    if args.op == "cesaro":
        data = cesaro_means(parse_ordinal(args.xi), _lazyset(args.l), model,
                            args.horizon, args.cap)
        if args.csv:
            _emit_csv([(model.name, args.xi, _lazyset(args.l).describe(), n,
                        _jsonable(v), _decimal(v)) for n, v in data],
                      ("model", "xi", "L", "n", "norm", "decimal"), args)
        else:
            _emit({"model": model.name, "data": data}, args)
        return EXIT_OK
    if args.op == "trend":
        report = summability_trend(parse_ordinal(args.xi), _lazyset(args.l),
                                   model, args.horizon, _frac(args.tol),
                                   cap=args.cap)
        _emit(report, args)
        return EXIT_OK
    if args.op == "spread":
        report = spreading_model_check(model, _lazyset(args.m),
                                       parse_ordinal(args.xi),
                                       _frac(args.eps), args.window)
        _emit(report, args)
        return EXIT_OK if report["pass"] else EXIT_VIOLATION
    if args.op == "reduce":
        report = reduction_check(model, _frac(args.delta), _frac(args.eps),
                                 _lazyset(args.m), window=args.window,
                                 cap=args.cap)
        _emit(report, args)
        return EXIT_OK if report["pass"] else EXIT_VIOLATION
    # bsprobe
    candidates = [parse_ordinal(x) for x in args.xi.split(",")]
    report = bs_probe(model, candidates, _lazyset(args.m),
                      horizon=args.horizon, window=args.window, cap=args.cap)
    _emit(report, args)
    return EXIT_OK


def _cmd_cu(args) -> int:
    if args.op == "floor":
        print(_jsonable(cu_floor(args.k, _frac(args.D), _frac(args.B))))
        return EXIT_OK
    if args.op == "search":
        report = cu_search(CuQuery(_model(args.model), args.window,
                                   _frac(args.delta)))
        report["floor"] = None
        _emit(report, args)
        return EXIT_OK
    if args.op == "freeset":
        functionals = [{int(n): Fraction(v) for n, v in f.items()}
                       for f in json.loads(args.functionals)]
        report = free_set_check(functionals, json.loads(args.prefix),
                                _frac(args.delta), _frac(args.eps))
        _emit(report, args)
        return EXIT_OK if report["pass"] else EXIT_VIOLATION
    # suppress
    fam = enumerate_window(parse_ordinal(args.xi), args.window)
    report = suppression_check(fam, _lazyset(args.l), args.window)
    _emit(report, args)
    return EXIT_OK if report["pass"] else EXIT_VIOLATION


def _props_matrix(path: str) -> int:
    """The full acceptance sweep: P.1-P.4 at depth 6 for the standard
    ordinal levels crossed with four base sets, plus heredity and
    spreading verification of each family window."""
    levels = ["0", "1", "2", "3", "w", "w+1", "w*2", "w^2"]
    bases = [
        NATURALS,
        LazySet.arithmetic(2, 2),
        LazySet.prefix_arithmetic((2, 5, 6), 9, 3),
        LazySet.every_kth(LazySet.arithmetic(2, 2), 3),
    ]
    entries = []
    ok = True
    for text in levels:
        xi = parse_ordinal(text)
        for base in bases:
            report = check_properties(xi, base, depth=6)
            entries.append({"xi": text, "base": base.describe(),
                            "passed": report.passed,
                            "capped": report.capped,
                            "entries": list(report.entries)})
            ok = ok and report.passed
        try:
            enumerate_window(xi, 8).verify_spreading()
            entries.append({"xi": text, "check": "window-invariants",
                            "passed": True})
        except SchreierError as exc:
            entries.append({"xi": text, "check": "window-invariants",
                            "passed": False, "detail": str(exc)})
            ok = False
    verdict = {"kind": "props-matrix", "pass": ok, "entries": entries}
    with open(path, "w") as fh:
        json.dump(_jsonable(verdict), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"props-matrix: {'pass' if ok else 'FAIL'} -> {path}")
    return EXIT_OK if ok else EXIT_VIOLATION


# -- parser ---------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="schreier",
        description="exact experiments with Schreier families, repeated "
                    "averages and summability methods")
    top.add_argument("--props-matrix", metavar="PATH",
                     help="run the full property suite, write a verdict "
                          "file, and exit")
    sub = top.add_subparsers(dest="command")

    def common(p, *names):
        if "out" in names:
            p.add_argument("--out", help="write output to a file")
        if "cap" in names:
            p.add_argument("--cap", type=int, default=DEFAULT_SUPPORT_CAP)
        if "csv" in names:
            p.add_argument("--csv", action="store_true")

    p_ord = sub.add_parser("ord", help="ordinal notation operations")
    ord_sub = p_ord.add_subparsers(dest="op", required=True)
    p = ord_sub.add_parser("cmp")
    p.add_argument("a"); p.add_argument("b")
    p = ord_sub.add_parser("fs")
    p.add_argument("--xi", required=True)
    p.add_argument("--n", type=int, default=5)
    common(p, "out")
    p = ord_sub.add_parser("arith")
    p.add_argument("kind", choices=["add", "mul"])
    p.add_argument("a"); p.add_argument("b")

    p_fam = sub.add_parser("fam", help="family membership and windows")
    fam_sub = p_fam.add_subparsers(dest="op", required=True)
    for name in ("member", "maximal"):
        p = fam_sub.add_parser(name)
        p.add_argument("--xi", required=True)
        p.add_argument("--set", required=True)
    p = fam_sub.add_parser("norm")
    p.add_argument("--xi", required=True)
    p.add_argument("--vector", required=True,
                   help='JSON object {"2": "1/2", ...}')
    p = fam_sub.add_parser("enum")
    p.add_argument("--xi", required=True)
    p.add_argument("--window", type=int, required=True)
    common(p, "out")
    p = fam_sub.add_parser("transform")
    p.add_argument("kind", choices=["restrict", "image"])
    p.add_argument("--xi", required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--m", required=True)
    common(p, "out")

    p_ra = sub.add_parser("ra", help="repeated-averages hierarchy")
    ra_sub = p_ra.add_subparsers(dest="op", required=True)
    p = ra_sub.add_parser("vec")
    p.add_argument("--xi", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, "out", "cap")
    p = ra_sub.add_parser("growth")
    p.add_argument("--xi", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, "out", "cap")
    p = ra_sub.add_parser("witness")
    p.add_argument("--xi", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, "out", "cap")
    p = ra_sub.add_parser("hull")
    p.add_argument("--zeta", required=True)
    p.add_argument("--xi", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--l", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p, "out", "cap")
    p = ra_sub.add_parser("props")
    p.add_argument("--xi", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--depth", type=int, default=6)
    common(p, "out", "cap", "csv")

    p_idx = sub.add_parser("idx", help="derivatives, indices, embeddings")
    idx_sub = p_idx.add_subparsers(dest="op", required=True)
    for name in ("derive", "window"):
        p = idx_sub.add_parser(name)
        p.add_argument("--xi", required=True)
        p.add_argument("--window", type=int, required=True)
        common(p, "out")
    for name in ("embed", "find"):
        p = idx_sub.add_parser(name)
        p.add_argument("--zeta", required=True)
        p.add_argument("--xi", required=True)
        p.add_argument("--window", type=int, required=True)
        if name == "embed":
            p.add_argument("--m", required=True)
        common(p, "out")
    p = idx_sub.add_parser("large")
    p.add_argument("--xi", required=True)
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--depth", type=int, default=3)
    common(p, "out", "cap")
    p = idx_sub.add_parser("fdelta")
    p.add_argument("--functionals", required=True,
                   help='JSON list of {"n": "p/q"} objects')
    p.add_argument("--delta", required=True)
    p.add_argument("--window", type=int, required=True)
    common(p, "out")

    p_sum = sub.add_parser("sum", help="summability experiments")
    sum_sub = p_sum.add_subparsers(dest="op", required=True)
    p = sum_sub.add_parser("cesaro")
    p.add_argument("--xi", required=True)
    p.add_argument("--l", required=True)
    p.add_argument("--model", default="schreier:1")
    p.add_argument("--horizon", type=int, default=8)
    common(p, "out", "cap", "csv")
    p = sum_sub.add_parser("trend")
    p.add_argument("--xi", required=True)
    p.add_argument("--l", required=True)
    p.add_argument("--model", default="schreier:1")
    p.add_argument("--horizon", type=int, default=8)
    p.add_argument("--tol", default="1/4")
    common(p, "out", "cap")
    p = sum_sub.add_parser("spread")
    p.add_argument("--xi", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--model", default="schreier:1")
    p.add_argument("--eps", required=True)
    p.add_argument("--window", type=int, default=6)
    common(p, "out")
    p = sum_sub.add_parser("reduce")
    p.add_argument("--m", required=True)
    p.add_argument("--model", default="schreier:1")
    p.add_argument("--delta", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--window", type=int, default=8)
    common(p, "out", "cap")
    p = sum_sub.add_parser("bsprobe")
    p.add_argument("--xi", required=True, help="comma-separated candidates")
    p.add_argument("--m", required=True)
    p.add_argument("--model", default="schreier:1")
    p.add_argument("--horizon", type=int, default=8)
    p.add_argument("--window", type=int, default=5)
    common(p, "out", "cap")

    p_cu = sub.add_parser("cu", help="convex unconditionality")
    cu_sub = p_cu.add_subparsers(dest="op", required=True)
    p = cu_sub.add_parser("search")
    p.add_argument("--model", default="schreier:1")
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--delta", required=True)
    common(p, "out")
    p = cu_sub.add_parser("floor")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--D", default="1")
    p.add_argument("--B", default="1")
    p = cu_sub.add_parser("freeset")
    p.add_argument("--functionals", required=True)
    p.add_argument("--prefix", required=True, help="JSON list")
    p.add_argument("--delta", required=True)
    p.add_argument("--eps", required=True)
    common(p, "out")
    p = cu_sub.add_parser("suppress")
    p.add_argument("--xi", required=True)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--l", default='{"kind":"naturals"}')
    common(p, "out")

    return top


_HANDLERS = {"ord": _cmd_ord, "fam": _cmd_fam, "ra": _cmd_ra,
             "idx": _cmd_idx, "sum": _cmd_sum, "cu": _cmd_cu}


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.props_matrix:
        try:
            return _props_matrix(args.props_matrix)
        except CapExceeded as exc:
            print(f"cap exceeded: {exc}", file=sys.stderr)
            return EXIT_CAP
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _HANDLERS[args.command](args)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except OrdinalParseError as exc:
        print(f"ordinal syntax: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchreierError, ValueError, KeyError,
            json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
