"""Command-line interface.

Exit status: 0 success, 2 parse error, 3 validation error, 4 budget
exceeded, 5 internal check failed.  Reports go to stdout, diagnostics to
stderr as ``error[<code>]: <message>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import contraction, enumeration, ihx, series
from .dsl import parse_diagram
from .errors import BeadedError, InternalCheckError, ParseError, ValidationError
from .laurent import TRIVIAL_CONTEXT, LaurentPoly, validate_alexander
from .normalform import DiagramSum, reduce


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None


def _context(text):
    return validate_alexander(LaurentPoly.parse(text)) if text else None


def _is_sum_text(text: str) -> bool:
    return any(line.split("#", 1)[0].strip().startswith("term") for line in text.splitlines())


def _raw_terms(text: str, ctx):
    """``(coefficient, diagram)`` pairs from a single diagram or a
    ``term``-separated list, without normalizing."""
    if not _is_sum_text(text):
        return [(Fraction(1), parse_diagram(text, ctx))]
    header, terms = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("term"):
            try:
                terms.append((Fraction(line[4:].strip()), []))
            except ValueError:
                raise ParseError("bad coefficient", lineno) from None
        elif line.startswith("degree:"):
            continue
        elif not terms:
            header.append(line)
        else:
            terms[-1][1].append(line)
    head = "\n".join(header)
    if head:
        ctx = parse_diagram(head, ctx).context
    return [(c, parse_diagram("\n".join(body), ctx)) for c, body in terms]


def _parse_choice(text):
    try:
        return tuple(tuple(int(x) for x in part.split(",")) for part in text.split(";"))
    except ValueError:
        raise ParseError(f"bad choice {text!r}; expected e.g. '1,2,3;1,2,3'") from None


def _window(text):
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError:
        raise ParseError(f"bad window {text!r}; expected 'lo,hi'") from None
    return lo, hi


def cmd_normalize(args):
    ctx = _context(args.delta)
    text = _read(args.input)
    if _is_sum_text(text):
        out = DiagramSum.from_text(text, ctx)
    else:
        out = reduce(parse_diagram(text, ctx))
    return out.to_text()


def cmd_contract(args):
    datum = contraction.SurgeryDatum.from_json(_read(args.table))
    terms = _raw_terms(_read(args.input), datum.context)
    return contraction.contract(terms, datum.table, threads=args.threads).to_text()


def cmd_surgery_rhs(args):
    datum = contraction.SurgeryDatum.from_json(_read(args.input))
    if args.degree is not None and args.degree != datum.n:
        raise ValidationError(f"datum has degree {datum.n}, not {args.degree}")
    return contraction.surgery_rhs(datum, threads=args.threads).to_text()


def cmd_colorings_path(args):
    datum = contraction.SurgeryDatum.from_json(_read(args.input))
    if args.choice:
        dd = _parse_choice(args.choice)
        out = contraction.contract_via_colorings(datum, dd, budget=args.budget, threads=args.threads)
        ref = contraction.contract(
            [(contraction.choice_weight(datum, dd), contraction.choice_tripods(datum, dd))], datum.table)
    else:
        out = contraction.bijection_sum_all(datum, budget=args.budget)
        ref = contraction.surgery_rhs(datum)
    if args.check and out != ref:
        raise InternalCheckError("bijection path disagrees with the pairing path")
    return out.to_text()


def _series_in(path):
    return series.GradedSeries.from_json(_read(path))


def cmd_exp(args):
    z = _series_in(args.input)
    if args.truncate is not None:
        z = series.GradedSeries(z.components, args.truncate, z.context)
    return series.exp(z).to_json()


def cmd_log(args):
    Z = _series_in(args.input)
    if args.truncate is not None:
        Z = Z.truncate(args.truncate)
    return series.log(Z).to_json()


def cmd_correct(args):
    Z = _series_in(args.input)
    try:
        p1 = Fraction(args.p1)
    except ValueError:
        raise ParseError(f"bad rational {args.p1!r}") from None
    alpha = series.AnomalySeries(Z.truncation)
    out = series.framing_correct(Z, p1, alpha)
    return out.to_json({"anomaly_unknown_degrees": list(alpha.unknown),
                        "anomaly_note": "unknown odd anomaly parts are set to zero" if alpha.unknown else ""})


def cmd_enumerate(args):
    lines = []
    for i, g in enumerate(enumeration.enumerate_graphs(args.n, args.family, args.budget)):
        if args.limit is not None and i >= args.limit:
            break
        lines.append(g.dsl())
    return "\n".join(lines) + ("\n" if lines else "")


def cmd_counts(args):
    classes = enumeration.orbit_counts(args.n, args.family, args.budget)
    total = sum(c for _, c, _, _ in classes)
    report = {
        "family": args.family,
        "n": args.n,
        "labeled": total,
        "labeled_by_formula": enumeration.count_graphs(args.n, args.family),
        "classes": [{"edges": [list(p) for p in cls], "labeled": c, "predicted": p, "automorphisms": a}
                    for cls, c, p, a in classes],
        "orbit_identity": all(c == p for _, c, p, _ in classes),
        "matchings": enumeration.matching_count_oracle(6 * args.n),
    }
    if not report["orbit_identity"] or report["labeled"] != report["labeled_by_formula"]:
        raise InternalCheckError("labeled counts disagree with the orbit formula")
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def cmd_ihx_dim(args):
    ctx = _context(args.delta) or TRIVIAL_CONTEXT
    q = ihx.ihx_closure(args.n, _window(args.window), ctx, connected=args.connected, budget=args.budget)
    report = {"n": args.n, "window": list(q.window), "delta": str(ctx.delta), "connected": args.connected,
              "generators": len(q.generators), "relations": q.relations, "rank": q.rank,
              "dimension": q.dimension}
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="beadedjacobi", description=__doc__.splitlines()[0])
    p.add_argument("--threads", type=int, default=1, help="worker threads; output does not depend on it")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", help="reduce a diagram or diagram sum to normal form")
    s.add_argument("--input", required=True)
    s.add_argument("--delta", help="denominator if the input has no 'delta:' line")
    s.set_defaults(fn=cmd_normalize)

    s = sub.add_parser("contract", help="contract legged diagrams with a linking table")
    s.add_argument("--input", required=True, help="legged diagram or term list")
    s.add_argument("--table", required=True, help="surgery datum JSON providing the linking table")
    s.set_defaults(fn=cmd_contract)

    s = sub.add_parser("surgery-rhs", help="contraction of the tripod sums of a surgery datum")
    s.add_argument("--input", required=True)
    s.add_argument("--degree", type=int)
    s.set_defaults(fn=cmd_surgery_rhs)

    s = sub.add_parser("colorings-path", help="evaluate the bijection sum")
    s.add_argument("--input", required=True)
    s.add_argument("--choice", help="one triple per handlebody, e.g. '1,2,3;1,2,3'")
    s.add_argument("--check", action="store_true", help="compare with the pairing path")
    s.add_argument("--budget", type=int, default=10 ** 6)
    s.set_defaults(fn=cmd_colorings_path)

    for name, fn, hlp in (("exp", cmd_exp, "exponential of a series"), ("log", cmd_log, "logarithm of a series")):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("--input", required=True)
        s.add_argument("--truncate", type=int)
        s.set_defaults(fn=fn)

    s = sub.add_parser("correct", help="framing correction by the anomaly")
    s.add_argument("--input", required=True)
    s.add_argument("--p1", required=True, help="exact rational")
    s.set_defaults(fn=cmd_correct)

    s = sub.add_parser("enumerate", help="stream labeled graphs, one per line")
    s.add_argument("--family", choices=enumeration.FAMILIES, default="Sl")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--limit", type=int)
    s.add_argument("--budget", type=int, default=enumeration.DEFAULT_BUDGET)
    s.set_defaults(fn=cmd_enumerate)

    s = sub.add_parser("counts", help="labeled counts and orbit-size identity")
    s.add_argument("--family", choices=enumeration.FAMILIES, default="Sl")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--budget", type=int, default=enumeration.DEFAULT_BUDGET)
    s.set_defaults(fn=cmd_counts)

    s = sub.add_parser("ihx-dim", help="dimension of the windowed IHX quotient")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--window", default="0,0")
    s.add_argument("--delta")
    s.add_argument("--connected", action="store_true")
    s.add_argument("--budget", type=int, default=200_000)
    s.set_defaults(fn=cmd_ihx_dim)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.threads < 1:
        err.write("error[validation]: --threads must be positive\n")
        return ValidationError.exit_status
    try:
        text = args.fn(args)
    except BeadedError as exc:
        err.write(f"error[{exc.code}]: {exc}\n")
        return exc.exit_status
    out.write(text)
    return 0


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
