"""Command-line front end.

Subcommands: enumerate, vinberg, verify, invariants, constants.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction


def _out_stream(path: str | None):
    return open(path, "w") if path else sys.stdout


def _fmt_frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def cmd_enumerate(args) -> int:
    from . import narrow
    from .mainfilter import default_h_oracle  # noqa: F401  (table data sanity)

    tag = args.type
    if tag not in narrow.NARROW_TYPES:
        print(f"unknown type {tag!r}; choose from {', '.join(narrow.NARROW_TYPES)}",
              file=sys.stderr)
        return 2
    out = _out_stream(args.out)
    try:
        if args.main:
            summary, trips = narrow.run_type(tag, workers=args.threads, main_mode=True)
            for d, eta, h in trips:
                if args.json:
                    print(json.dumps({"d": d, "eta": eta, "h": h}), file=out)
                else:
                    print(f"{d}\t{eta}\t{h}", file=out)
            return 0
        if args.emit == "records":
            for rec in narrow.iter_records(tag):
                if args.json:
                    print(json.dumps({"type": rec.type_tag, "k": rec.k,
                                      "b": list(rec.b), "a": rec.a,
                                      "a1": rec.a1, "a2": rec.a2}), file=out)
                else:
                    print(narrow.record_line(rec), file=out)
            return 0
        summary, _ = narrow.run_type(tag, workers=args.threads)
        if args.json:
            print(json.dumps({"type": summary.type_tag, "n": summary.n,
                              "a": summary.max_a, "a1": summary.max_a1,
                              "a2": summary.max_a2}), file=out)
        else:
            print(summary.as_line(), file=out)
        return 0
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_constants(args) -> int:
    from .bounds import BoundConstants

    out = _out_stream(args.out)
    consts = BoundConstants.compute()
    if args.json:
        for line in consts.lines():
            key, val = line.rsplit(" ", 1)
            print(json.dumps({"name": key, "value": float(val)}), file=out)
    else:
        for line in consts.lines():
            print(line, file=out)
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_invariants(args) -> int:
    from .lattice import parse_form

    try:
        form = parse_form(args.form)
        d, eta = form.invariants_d_eta()
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({"form": form.spec_text(), "d": d, "eta": eta,
                          "main": form.is_main(), "even": form.is_even()}))
    else:
        print(f"{form.spec_text()}\td={d}\teta={eta}\tmain={form.is_main()}")
    return 0


def cmd_vinberg(args) -> int:
    from . import vinberg
    from .lattice import parse_form

    try:
        form = parse_form(args.form)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out = _out_stream(args.out)
    try:
        if args.emit == "classify":
            verdict = vinberg.classify_reflectivity(form, max_roots=args.max_roots)
            if args.json:
                print(json.dumps({"form": form.spec_text(), "kind": verdict.kind,
                                  "roots": verdict.accepted, "shift": verdict.shift}),
                      file=out)
            else:
                print(f"{form.spec_text()}\t{verdict.kind}\troots={verdict.accepted}"
                      f"\tshift={verdict.shift}", file=out)
            return 0
        run = vinberg.run_vinberg(form, args.height, max_roots=args.max_roots)
        if args.emit == "chain":
            chain = vinberg.order_chain(form, run.accepted, run.center)
            for v in chain:
                print(",".join(_fmt_frac(x) for x in v), file=out)
            return 0
        for v, h in zip(run.accepted, run.heights):
            coords = ",".join(_fmt_frac(x) for x in v)
            print(f"{coords}\t{_fmt_frac(form.norm(v))}\t{_fmt_frac(h)}", file=out)
        return 0
    finally:
        if out is not sys.stdout:
            out.close()


def cmd_verify(args) -> int:
    from . import narrow
    from .tables import load_tables, verify_cross, verify_table4, verify_table5, verify_table6

    tables = load_tables()
    if args.what == "table4":
        report = verify_table4(tables, entry=args.entry)
    elif args.what == "table5":
        report = verify_table5(tables, entry=args.entry)
    elif args.what == "table6":
        report = verify_table6(tables, entry=args.entry)
    elif args.what == "cross":
        main_sets = {}
        for tag in narrow.NARROW_TYPES:
            _, trips = narrow.run_type(tag, workers=args.threads, main_mode=True)
            main_sets[tag] = trips
        report = verify_cross(tables, main_sets)
    else:
        print(f"unknown verification target {args.what!r}", file=sys.stderr)
        return 2
    out = _out_stream(args.out)
    for line in report.lines():
        print(line, file=out)
    if out is not sys.stdout:
        out.close()
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyplat",
                                description="rank-3 hyperbolic lattice toolkit")
    sub = p.add_subparsers(dest="cmd", required=True)

    pe = sub.add_parser("enumerate", help="narrow-part enumeration")
    pe.add_argument("type")
    pe.add_argument("--main", action="store_true",
                    help="emit the surviving (d, eta, h) triplets instead")
    pe.add_argument("--emit", choices=["records", "summary"], default="summary")
    pe.add_argument("--threads", type=int, default=None)
    pe.add_argument("--out")
    pe.add_argument("--json", action="store_true")
    pe.set_defaults(func=cmd_enumerate)

    pc = sub.add_parser("constants", help="print the bound constants")
    pc.add_argument("--out")
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_constants)

    pi = sub.add_parser("invariants", help="genus invariants (d, eta) of a form")
    pi.add_argument("form")
    pi.add_argument("--json", action="store_true")
    pi.set_defaults(func=cmd_invariants)

    pv = sub.add_parser("vinberg", help="run the root acceptance algorithm")
    pv.add_argument("--form", required=True)
    pv.add_argument("--height", type=int, default=1000)
    pv.add_argument("--max-roots", type=int, default=40)
    pv.add_argument("--emit", choices=["roots", "chain", "classify"], default="roots")
    pv.add_argument("--out")
    pv.add_argument("--json", action="store_true")
    pv.set_defaults(func=cmd_vinberg)

    pf = sub.add_parser("verify", help="batch-verify the bundled tables")
    pf.add_argument("what", choices=["table4", "table5", "table6", "cross"])
    pf.add_argument("--entry", type=int, default=None)
    pf.add_argument("--threads", type=int, default=None)
    pf.add_argument("--out")
    pf.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
