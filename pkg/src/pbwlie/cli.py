"""Command-line front end.

Exit codes: 0 success, 1 a verification or Lie test failed, 2 usage or
parse error.  Output is deterministic; wall-clock timings appear only with
``--timing``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import __version__
from .errors import (DeskScaleExceeded, ExpressionSyntaxError, NotLieElement, PbwLieError)
from .exactnum import format_rational
from .freeassoc import to_json_obj, to_text

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(PbwLieError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, text: str):
    if not text.endswith("\n"):
        text += "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _finish_report(args, report) -> dict:
    from .verify import strip_timing
    return report if args.timing else strip_timing(report)


# subcommands

def cmd_mu(args) -> int:
    from .freelie import lie_text
    from .magnus import mu_expansion, mu_recursive

    if args.n < 1:
        raise UsageError("n must be >= 1")
    p = mu_expansion(args.n, args.flavor)
    if args.format == "json":
        obj = to_json_obj(p)
        if args.lie:
            obj["lie"] = lie_text(mu_recursive(args.n, "L" if args.flavor == "closed" else args.flavor).terms)
        _emit(args, _dump(obj))
    else:
        text = to_text(p)
        if args.lie:
            text = lie_text(mu_recursive(args.n, "L" if args.flavor == "closed" else args.flavor).terms)
        _emit(args, text)
    return EXIT_OK


def cmd_bch(args) -> int:
    from .bch import FORMULAS, agreement_report

    if args.degree < 1:
        raise UsageError("degree must be >= 1")
    if args.formula == "all":
        rep = _finish_report(args, agreement_report(args.degree, dynkin_max=args.dynkin_max))
        if args.format == "json":
            _emit(args, _dump(rep))
        else:
            names = [f for f in rep["formulas"] if f != "logexp"]
            lines = ["degree " + " ".join(names) + " lie"]
            for row in rep["agreement"]:
                cells = ["-" if row[n] is None else ("ok" if row[n] else "FAIL") for n in names]
                lines.append(f"{row['degree']:>6} " + " ".join(f"{c:>{len(n)}}" for c, n in zip(cells, names))
                             + (" ok" if row["lie"] else " FAIL"))
            if args.timing:
                lines.append("timing_s " + " ".join(f"{k}={v}" for k, v in rep["timing_s"].items()))
            lines.append("agreement: " + ("all true" if rep["pass"] else "MISMATCH"))
            _emit(args, "\n".join(lines))
        return EXIT_OK if rep["pass"] else EXIT_FAIL
    series = FORMULAS[args.formula](args.degree)
    if args.format == "json":
        _emit(args, _dump({"formula": args.formula,
                           "degrees": [{"degree": n, **to_json_obj(p)} for n, p in series.items()]}))
    else:
        _emit(args, "\n".join(f"BCH_{n} = {to_text(p)}" for n, p in series.items()))
    return EXIT_OK


def _parse_grade(text: str):
    try:
        letters = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad grade {text!r}; expected comma-separated generator indices like 1,1,2")
    from .freeassoc import multidegree
    return multidegree(letters)


def cmd_basis(args) -> int:
    from .wordbasis import BasisRegistry, registry_build, registry_text

    if args.load:
        with open(args.load, encoding="utf-8") as fh:
            reg = BasisRegistry.from_json_obj(json.load(fh), verify=args.verify)
    else:
        reg = registry_build(args.alphabet, args.degree, verify=args.verify)
    grade = _parse_grade(args.grade) if args.grade else None
    if args.format == "json":
        obj = reg.to_json_obj()
        if args.verify:
            obj["checks"] = reg.checks
        _emit(args, json.dumps(obj, indent=2))
    else:
        _emit(args, registry_text(reg, grade))
    return EXIT_OK


def cmd_dims(args) -> int:
    from .wordbasis import BasisRegistry, registry_build

    if args.registry:
        with open(args.registry, encoding="utf-8") as fh:
            reg = BasisRegistry.from_json_obj(json.load(fh))
    else:
        reg = registry_build(args.alphabet, args.degree, verify=False)
    table = reg.dimension_table()
    if args.format == "json":
        _emit(args, _dump({"alphabet_size": reg.alphabet_size, "by_degree": table,
                           "by_grade": [{"grade": [list(p) for p in md], "dimension": gb.dimension}
                                        for md, gb in reg.grades.items()]}))
    else:
        lines = [",".join(str(table.get(d, 0)) for d in range(1, reg.max_degree + 1))]
        for md, gb in reg.grades.items():
            label = " ".join(f"X{g}^{m}" if m > 1 else f"X{g}" for g, m in md)
            lines.append(f"{label}: {gb.dimension}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_eval(args) -> int:
    from .expr import evaluate_text
    from .freelie import canonical_coordinates, from_canonical, lie_text, require_lie

    if args.expr is not None:
        text = args.expr
    elif args.file:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    p = evaluate_text(text)
    if args.as_ == "lie":
        if p.constant_term():
            raise NotLieElement("constant term is not a Lie element", witness=p.homogeneous_part(0))
        require_lie(p)
        canon = canonical_coordinates(p)
        if args.format == "json":
            _emit(args, _dump({"basis": [{"word": list(w), "coeff": format_rational(c)}
                                         for w, c in sorted(canon.items(), key=lambda kv: (len(kv[0]), kv[0]))],
                               "lie": lie_text(from_canonical(canon).terms)}))
        else:
            _emit(args, lie_text(from_canonical(canon).terms))
        return EXIT_OK
    _emit(args, _dump(to_json_obj(p)) if args.format == "json" else to_text(p))
    return EXIT_OK


_SUITE_DEFAULT_DEGREE = {"pbw-sym": 4, "pbw-basic": 4, "magnus": 5, "wittlazard": 4, "nilenv": 3}


def _run_suite(name: str, gens: int, degree: Optional[int], seed: int) -> List[dict]:
    from . import verify
    from .nilenv import associativity_suite
    from .wittlazard import wittlazard_suite

    d = degree if degree is not None else _SUITE_DEFAULT_DEGREE[name]
    if name == "pbw-sym":
        return [verify.pbw_symmetric_suite(gens, d, seed)]
    if name == "pbw-basic":
        return [verify.pbw_basic_suite(gens, d, seed)]
    if name == "magnus":
        return [verify.magnus_representability_suite(gens, d, seed)]
    if name == "wittlazard":
        if d > 4 or gens > 3:
            raise DeskScaleExceeded("wittlazard suite limited to n <= 4 and <= 3 generators")
        return [wittlazard_suite(d, gens, mode, seed) for mode in ("ordered", "symmetric")]
    if name == "nilenv":
        return [associativity_suite(d, gens)]
    raise UsageError(f"unknown suite {name!r}")


def cmd_verify(args) -> int:
    names = list(_SUITE_DEFAULT_DEGREE) if args.suite == "all" else [args.suite]
    reports = []
    for name in names:
        reports.extend(_run_suite(name, args.gens, args.degree, args.seed))
    ok = all(r["pass"] for r in reports)
    out = {"pass": ok, "reports": reports}
    out = _finish_report(args, out)
    if args.format == "json":
        _emit(args, _dump(out))
    else:
        lines = []
        for r in out["reports"]:
            checks = r["checks"]
            failed = [c.get("id") or c.get("check") for c in checks if not c["pass"]]
            lines.append(f"{r['suite']}{' (' + r['mode'] + ')' if 'mode' in r else ''}: "
                         f"{len(checks) - len(failed)}/{len(checks)} checks pass")
            for f in failed:
                lines.append(f"  FAIL {f}")
        lines.append("all pass" if ok else "FAILURES")
        _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pbwlie", description="Exact free Lie algebra and PBW computations.")
    p.add_argument("--version", action="version", version=f"pbwlie {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp):
        sp.add_argument("--format", choices=["json", "text"], default="text")
        sp.add_argument("--out", help="write output to this file instead of stdout")
        sp.add_argument("--timing", action="store_true", help="include wall-clock timings")

    sp = sub.add_parser("mu", help="Magnus commutator mu_n")
    sp.add_argument("n", type=int)
    sp.add_argument("--flavor", choices=["L", "R", "C", "closed"], default="closed")
    sp.add_argument("--lie", action="store_true", help="also show the bracket form")
    common(sp)
    sp.set_defaults(func=cmd_mu)

    sp = sub.add_parser("bch", help="Baker-Campbell-Hausdorff terms")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--formula", choices=["magnus", "logexp", "dynkin", "dynkin-variant", "all"],
                    default="magnus")
    sp.add_argument("--dynkin-max", type=int, default=6,
                    help="highest degree compared for the Dynkin formulas in --formula all")
    common(sp)
    sp.set_defaults(func=cmd_bch)

    sp = sub.add_parser("basis", help="primitive-word basis registry")
    sp.add_argument("--alphabet", type=int, default=2)
    sp.add_argument("--degree", type=int, default=4)
    sp.add_argument("--grade", help="restrict text output to one grade, e.g. 1,1,2")
    sp.add_argument("--load", help="read a registry JSON written by --format json")
    sp.add_argument("--verify", action="store_true", help="certify the basis axioms while building")
    common(sp)
    sp.set_defaults(func=cmd_basis)

    sp = sub.add_parser("dims", help="free Lie dimensions per degree and grade")
    sp.add_argument("--alphabet", type=int, default=2)
    sp.add_argument("--degree", type=int, default=5)
    sp.add_argument("--registry", help="read dimensions from a saved registry JSON")
    common(sp)
    sp.set_defaults(func=cmd_dims)

    sp = sub.add_parser("eval", help="evaluate an expression")
    sp.add_argument("expr", nargs="?", help="expression; read from --file or stdin if omitted")
    sp.add_argument("--file")
    sp.add_argument("--as", dest="as_", choices=["assoc", "lie"], default="assoc")
    common(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("suite", choices=list(_SUITE_DEFAULT_DEGREE) + ["all"])
    sp.add_argument("--gens", type=int, default=2)
    sp.add_argument("--degree", type=int)
    sp.add_argument("--seed", type=int, default=20240917)
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ExpressionSyntaxError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DeskScaleExceeded as e:
        print(f"desk scale exceeded: {e}", file=sys.stderr)
        return EXIT_USAGE
    except NotLieElement as e:
        msg = f"not a Lie element: {e}"
        if e.witness is not None:
            msg += f"\nwitness (DSW defect): {to_text(e.witness)}"
        print(msg, file=sys.stderr)
        return EXIT_FAIL
    except (PbwLieError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
