"""Command-line interface.

    nfreg height <label> <element>       Weil height, both routes
    nfreg arakelov <label> <vector>     log of the Arakelov height
    nfreg regulator <label>
    nfreg fk <label> <vector>           f_k and its index decomposition
    nfreg tower <label>                 lambda, aleph, rho and k*
    nfreg verify <label>|--all [--theorem T]
    nfreg report [--format json|text] [--out PATH]

Elements are comma-separated rational power-basis coordinates ("1,1/2");
vectors separate entries with semicolons ("1,0;0,1").

Exit codes: 0 when every check is verified, vacuous or inapplicable; 1 when
any check failed; 2 on usage or data errors.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import mpmath

from .bounds import THEOREM_IDS, verify_field
from .config import default_precision
from .corpus import CorpusError, load_corpus
from .field import FieldDataError
from .heights import FieldVector, arakelov_height, weil_height_mahler, weil_height_places
from .ideals import DependentEntriesError, f_k, lattice_index, verify_prop41
from .reports import FAILED, fmt
from .towers import below_threshold, is_cm, maximal_kstar, rho
from .units import regulator

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_element(fld, text: str):
    try:
        coords = [Fraction(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse element {text!r}") from None
    if not coords or len(coords) > fld.d:
        raise UsageError(f"element {text!r} needs 1 to {fld.d} coordinates")
    return fld.element(coords)


def parse_vector(fld, text: str) -> FieldVector:
    parts = [p for p in text.split(";") if p.strip()]
    if not parts:
        raise UsageError("empty vector")
    return FieldVector(fld, tuple(parse_element(fld, p) for p in parts))


def digits_for(bits: int) -> int:
    return max(10, int(bits * 0.30103))


def _record(records, label):
    for rec in records:
        if rec.label == label:
            return rec
    raise UsageError(f"unknown field {label!r}; try one of: " + ", ".join(r.label for r in records))


def cmd_height(args, records, out):
    rec = _record(records, args.label)
    elem = parse_element(rec.field, args.element)
    if elem.is_zero():
        raise UsageError("the height of 0 is undefined")
    a = weil_height_places(elem)
    b = weil_height_mahler(elem)
    n = digits_for(args.precision)
    print(f"h = {mpmath.nstr(a.value, n)}  (error <= {mpmath.nstr(a.error_bound, 5)})", file=out)
    print(f"h via Mahler measure = {mpmath.nstr(b.value, n)}  (error <= {mpmath.nstr(b.error_bound, 5)})", file=out)
    return EXIT_OK


def cmd_arakelov(args, records, out):
    rec = _record(records, args.label)
    vec = parse_vector(rec.field, args.vector)
    if vec.is_zero():
        raise UsageError("the Arakelov height of the zero vector is undefined")
    h = arakelov_height(vec)
    print(f"log H = {mpmath.nstr(h.value, digits_for(args.precision))}  (error <= {mpmath.nstr(h.error_bound, 5)})", file=out)
    return EXIT_OK


def cmd_regulator(args, records, out):
    rec = _record(records, args.label)
    reg = regulator(rec.units)
    print(f"Reg = {mpmath.nstr(reg.value, digits_for(args.precision))}  (error <= {mpmath.nstr(reg.error_bound, 5)})", file=out)
    return EXIT_OK


def cmd_fk(args, records, out):
    rec = _record(records, args.label)
    vec = parse_vector(rec.field, args.vector)
    if len(vec) != rec.field.d:
        raise UsageError(f"vector needs {rec.field.d} entries")
    try:
        value, idx = f_k(vec), lattice_index(vec)
    except DependentEntriesError as exc:
        raise UsageError(str(exc)) from None
    rep = verify_prop41(vec)
    print(f"f_k = {value} = {idx}^2 * {rec.field.abs_disc}", file=out)
    print(f"log f_k <= 2d log H: margin {fmt(rep.margin)}  {rep.verdict}", file=out)
    return EXIT_FAILED if rep.verdict == FAILED else EXIT_OK


def cmd_tower(args, records, out):
    rec = _record(records, args.label)
    lat = rec.lattice
    print(f"{'node':<28} {'deg':>4} {'D':>10} {'lambda':>6}  aleph", file=out)
    for lbl in sorted(lat.nodes, key=lambda x: (lat.nodes[x].degree, x)):
        node = lat.nodes[lbl]
        mark = "  D < D_k^aleph" if lbl != lat.top and below_threshold(lat, lbl) else ""
        print(f"{lbl:<28} {node.degree:>4} {node.disc:>10} {lat.lam(lbl):>6}  {lat.aleph(lbl)}{mark}", file=out)
    print(f"rho = {rho(lat)}  unit rank = {lat.nodes[lat.top].unit_rank}  CM = {is_cm(lat)}", file=out)
    print(f"k* = {maximal_kstar(lat).label}", file=out)
    return EXIT_OK


def cmd_verify(args, records, out):
    if args.all == (args.label is not None):
        raise UsageError("give a field label or --all")
    chosen = records if args.all else [_record(records, args.label)]
    status = EXIT_OK
    for rec in chosen:
        for rep in verify_field(rec.field, rec.lattice, rec.units):
            if args.theorem and rep.theorem != args.theorem:
                continue
            print(
                f"{rec.label:<26} {rep.theorem:<20} {rep.verdict:<18} bound={fmt(rep.bound)} "
                f"{rep.quantity}={fmt(rep.value)} margin={fmt(rep.margin)}"
                + (f"  ({'; '.join(rep.notes)})" if rep.notes else ""),
                file=out,
            )
            if rep.verdict == FAILED:
                status = EXIT_FAILED
    return status


def cmd_report(args, records, out):
    from .report import any_failed, build_report, render_json, render_text

    doc = build_report(records, args.precision, args.seed, args.box)
    text = render_json(doc) if args.format == "json" else render_text(doc)
    if args.out in (None, "-"):
        out.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        s = doc["summary"]
        print("summary: " + ", ".join(f"{k}={s[k]}" for k in sorted(s)), file=out)
    return EXIT_FAILED if any_failed(doc) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None, help="working precision in bits (default 128 or $NFREG_PRECISION)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--box", type=int, default=5, help="exponent bound for unit searches")
    common.add_argument("--corpus", default=None, help="corpus directory or JSON file (default: bundled)")

    ap = argparse.ArgumentParser(prog="nfreg", description="Regulator, height and discriminant checks on number fields.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("height", parents=[common], help="Weil height of an element")
    p.add_argument("label")
    p.add_argument("element")
    p = sub.add_parser("arakelov", parents=[common], help="Arakelov height of a vector")
    p.add_argument("label")
    p.add_argument("vector")
    p = sub.add_parser("regulator", parents=[common], help="regulator from the bundled units")
    p.add_argument("label")
    p = sub.add_parser("fk", parents=[common], help="discriminant functional f_k of a vector")
    p.add_argument("label")
    p.add_argument("vector")
    p = sub.add_parser("tower", parents=[common], help="subfield lattice invariants")
    p.add_argument("label")
    p = sub.add_parser("verify", parents=[common], help="evaluate regulator lower bounds")
    p.add_argument("label", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--theorem", choices=THEOREM_IDS)
    p = sub.add_parser("report", parents=[common], help="full report over the corpus")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None)
    return ap


COMMANDS = {
    "height": cmd_height,
    "arakelov": cmd_arakelov,
    "regulator": cmd_regulator,
    "fk": cmd_fk,
    "tower": cmd_tower,
    "verify": cmd_verify,
    "report": cmd_report,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.precision = args.precision or default_precision()
        if args.precision < 32:
            raise UsageError("precision must be at least 32 bits")
        if args.box < 1:
            raise UsageError("box must be positive")
        records = load_corpus(args.corpus, args.precision)
        return COMMANDS[args.command](args, records, out)
    except (UsageError, CorpusError, FieldDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
