"""Command-line entry point: analyze, index, decompose, verify, survey.

Exit codes: 0 success, 1 a verification check failed, 2 usage or parse
error, 3 no (strong) decomposition, 4 size guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import analysis as A
from .errors import TorsionCleanError
from .report import cmd_survey, survey_csv, survey_json, survey_text
from .rings import ring_make
from .theorems import CHECKS, FAIL, run_suite
from .torsion import decompose, torsion_clean_index

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_ABSENT, EXIT_GUARD = 0, 1, 2, 3, 4

RING_HELP = ("ring spec: GF(q) | M(n,GF(q)) | T(m,GF(q)) | P(ring,ring,...) | Q(GF(q),e,v), "
             "e.g. 'M(2,GF(2))'")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--csv", action="store_true", help="emit CSV (survey, verify)")
    p.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")
    p.add_argument("--max-size", type=int, default=None,
                   help="carrier size guard (default 2^20; env TCL_MAX_SIZE, flag wins)")
    p.add_argument("--jobs", type=int, default=0, help="worker processes for survey (0 = CPU count)")
    p.add_argument("--no-timing", action="store_true", help="omit timing fields (byte-stable output)")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="torsionclean", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="structural invariants of a ring")
    p.add_argument("ring", help=RING_HELP)

    p = sub.add_parser("index", parents=[common], help="minimal (strong) torsion-clean index")
    p.add_argument("ring", help=RING_HELP)
    p.add_argument("--strong", action="store_true")
    p.add_argument("--no-conjugacy-reduction", action="store_true")

    p = sub.add_parser("decompose", parents=[common], help="n-torsion clean decomposition of one element")
    p.add_argument("ring", help=RING_HELP)
    p.add_argument("element", help="decimal encoding or bracket literal, e.g. '[[1,1],[1,0]]'")
    p.add_argument("n", type=int)
    p.add_argument("--strong", action="store_true")

    p = sub.add_parser("verify", parents=[common], help="run the theorem checks on a ring",
                       epilog="check ids: " + ", ".join(CHECKS))
    p.add_argument("ring", help=RING_HELP)
    p.add_argument("--check", metavar="ID", choices=list(CHECKS), help="run a single check")

    p = sub.add_parser("survey", parents=[common], help="index table over several rings")
    p.add_argument("rings", nargs="+", help=RING_HELP)
    p.add_argument("--no-conjugacy-reduction", action="store_true")
    p.add_argument("--figure", metavar="PATH", help="also render a bar chart of the indices to PATH")
    return parser


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _run(args):
    timing = not args.no_timing

    if args.command == "survey":
        rows = cmd_survey(args.rings, args.max_size, args.jobs, not args.no_conjugacy_reduction)
        if args.csv:
            text = survey_csv(rows, timing)
        elif args.json:
            text = survey_json(rows, timing)
        else:
            text = survey_text(rows, timing)
        _emit(text, args.out)
        if args.figure:
            from .plotting import survey_figure

            survey_figure(rows, args.figure)
        return EXIT_OK

    R = ring_make(args.ring, args.max_size)

    if args.command == "analyze":
        rep = A.structure_report(R)
        if args.json:
            _emit(_dump(rep.to_dict()), args.out)
        else:
            f = rep.flags
            lines = [
                f"ring: {rep.ring}", f"size: {rep.size}", f"char: {rep.char}",
                f"idempotents: {len(rep.idempotents)}", f"units: {len(rep.units)}",
                f"exp(U): {rep.unit_group_exponent}", f"|J|: {len(rep.jacobson)}",
                f"nil index of J: {rep.nil_index_of_jacobson}", f"center size: {rep.center_size}",
                f"primitive central idempotents: {rep.primitive_central_idempotents}",
            ] + [f"{k}: {str(v).lower()}" for k, v in f.items()]
            if rep.abelian_witness:
                lines.append(f"abelian witness (e, r with er != re): {rep.abelian_witness}")
            _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK

    if args.command == "index":
        rep = torsion_clean_index(R, strong=args.strong, conjugacy_reduction=not args.no_conjugacy_reduction)
        if args.json:
            _emit(_dump(rep.to_dict(timing)), args.out)
        else:
            idx = "none" if rep.index is None else rep.index
            line = f"{rep.ring} {rep.mode} index: {idx} (exp(U)={rep.exponent_of_units}, witnesses={rep.witnesses})"
            if rep.index is None:
                line += f" no decomposition for element {rep.no_decomposition}"
            if timing:
                line += f" [{rep.elapsed_s * 1000:.1f} ms, {rep.classes_scanned}/{rep.element_count} classes]"
            _emit(line + "\n", args.out)
        return EXIT_OK if rep.ok else EXIT_ABSENT

    if args.command == "decompose":
        r = R.parse_element(args.element)
        cert = decompose(r, args.n, strong=args.strong)
        if args.json:
            _emit(_dump(None if cert is None else cert.to_dict()), args.out)
        elif cert is None:
            _emit(f"absent: {r!r} has no {'strongly ' if args.strong else ''}{args.n}-torsion clean decomposition\n", args.out)
        else:
            _emit(f"{cert.r.literal()} = {cert.e.literal()} + {cert.u.literal()}  "
                  f"(e={cert.e.enc}, u={cert.u.enc}, o(u)={cert.order}, strong={str(cert.strong).lower()})\n", args.out)
        return EXIT_OK if cert is not None else EXIT_ABSENT

    if args.command == "verify":
        results = run_suite(R, args.check)
        if args.json:
            _emit(_dump([c.to_dict() for c in results]), args.out)
        elif args.csv:
            import csv
            import io

            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["check", "ring", "status", "witness", "detail"])
            for c in results:
                w.writerow([c.check_id, c.ring, c.status, json.dumps(c.witness) if c.witness else "", c.detail])
            _emit(buf.getvalue(), args.out)
        else:
            _emit("".join(f"{c.status:>15}  {c.check_id:<22} {c.detail}\n" for c in results), args.out)
        return EXIT_CHECK_FAILED if any(c.status == FAIL for c in results) else EXIT_OK

    raise AssertionError(args.command)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except TorsionCleanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
