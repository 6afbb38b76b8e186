"""Command-line entry point: ``eaqmds {table,certify,lemmas,scan}``.

Exit codes: 0 all checks pass, 1 a check failed, 2 invalid input,
3 abstention with ``--abstain-error``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from eaqmds.constructions import (
    FAMILIES,
    FamilyInput,
    InvalidInput,
    certify_family,
    lemma_reports,
    odd_prime_powers,
    scan_families,
)
from eaqmds.cosets import CosetContext, CosetError, DefiningSet
from eaqmds.engine import ABSTAINED, DEFAULT_BUDGET, FAIL, Certificate, certify
from eaqmds.field import FieldError, ResourceCapError
from eaqmds.tables import TABLE1, table_rows

CSV_HEADER = ["n", "k", "d", "c", "q", "t", "m", "family", "defect", "status"]

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_ABSTAIN = 0, 1, 2, 3


def _csv(rows: list[list], header=CSV_HEADER) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _markdown(header: list[str], rows: list[list]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(x) for x in r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def _json(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _cert_csv_row(cert: Certificate) -> list:
    p, i = cert.params, cert.inputs
    return [p.n, p.k, p.d, p.c, p.q, i.get("t", ""), i.get("m", ""), i.get("family", ""), cert.defect, cert.verdict]


def _fmt_params(d: dict) -> str:
    return f"[[{d['n']},{d['k']},{d['d']};{d['c']}]]_{d['q']}"


# -- renderers ----------------------------------------------------------------


def render_table(which: int, fmt: str) -> str:
    if which == 1:
        if fmt == "json":
            return _json(TABLE1)
        if fmt == "csv":
            return _csv([[r["parameters"], r["constraints"], r["source"]] for r in TABLE1],
                        header=["parameters", "constraints", "source"])
        return _markdown(["Parameters", "Constraints", "Source"],
                         [[r["parameters"], r["constraints"], r["source"]] for r in TABLE1])

    rows = table_rows(which)
    if fmt == "json":
        return _json({"table": which, "rows": rows})
    if fmt == "csv":
        out = []
        for r in rows:
            d = r["derived"]
            status = r["status"] if r["in_range"] else r["status"] + "+out_of_range"
            out.append([d["n"], d["k"], d["d"], d["c"], d["q"], r["t"], r["m"], r["family"], r["defect_derived"], status])
        return _csv(out)
    md = []
    for r in rows:
        notes = "; ".join(r["mismatch"])
        if not r["in_range"]:
            notes = "; ".join(filter(None, [notes, f"m > floor((q+1)/(4t)) = {r['m_upper']}"]))
        md.append([
            _fmt_params(r["derived"]), r["t"], r["m"], _fmt_params(r["printed"]), r["status"],
            r["defect_derived"], r["defect_printed"], _fmt_params(r["engine"]),
            "yes" if r["engine_agrees"] else "no", notes,
        ])
    header = ["Parameters", "t", "m", "Printed", "Status", "Defect", "Printed defect", "Engine", "Engine agrees", "Notes"]
    return _markdown(header, md)


def render_certificates(certs: list[Certificate], fmt: str, summary: dict | None = None) -> str:
    if fmt == "json":
        docs = [c.as_dict() for c in certs]
        if summary is None:
            return _json(docs[0] if len(docs) == 1 else docs)
        return _json({"summary": summary, "certificates": docs})
    if fmt == "csv":
        return _csv([_cert_csv_row(c) for c in certs])
    rows = []
    for c in certs:
        i = c.inputs
        failed = ", ".join(ch.name for ch in c.checks if ch.status == FAIL)
        rows.append([str(c.params), i.get("family", ""), i.get("t", ""), i.get("m", ""), c.size_t_ss,
                     c.defect, c.distance_exactness, c.verdict, failed])
    text = _markdown(["Parameters", "Family", "t", "m", "T_ss", "Defect", "Distance", "Verdict", "Failed"], rows)
    if summary is not None:
        text += "\n" + _summary_line(summary) + "\n"
    return text


def render_lemmas(reports, fmt: str) -> str:
    if fmt == "json":
        return _json([r.as_dict() for r in reports])
    header = ["lemma", "q", "t", "m", "swept", "status", "counterexamples"]
    rows = [[r.lemma, r.q, "" if r.t is None else r.t, "" if r.m is None else r.m, r.swept, r.status,
             len(r.counterexamples)] for r in reports]
    return _csv(rows, header=header) if fmt == "csv" else _markdown(header, rows)


def _summary_line(s: dict) -> str:
    return (f"{s['certificates']} certificates, {s['eaqmds']} EAQMDS (defect 0), "
            f"{s['formula_match']} matching the closed form, {s['failed']} failed")


# -- commands -----------------------------------------------------------------


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_table(args) -> int:
    _emit(render_table(args.which, args.format), args.out)
    return EXIT_OK


def _certificate_from_args(args) -> Certificate:
    if args.defining_set is not None:
        if args.n is None or args.q is None:
            raise InvalidInput("--defining-set needs --n and --q")
        values = [int(v) for v in args.defining_set.replace(",", " ").split()]
        T = DefiningSet.from_integers(CosetContext(args.n, args.q), values)
        return certify(T, desk_check=args.desk_check, budget=args.budget)
    missing = [f"--{k}" for k in ("q", "t", "m", "family") if getattr(args, k) is None]
    if missing:
        raise InvalidInput("missing " + ", ".join(missing))
    inp = FamilyInput(args.q, args.t, args.m, args.family, force=args.force)
    return certify_family(inp, desk_check=args.desk_check, budget=args.budget)


def cmd_certify(args) -> int:
    cert = _certificate_from_args(args)
    _emit(render_certificates([cert], args.format), args.out)
    for w in cert.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if cert.verdict == FAIL:
        return EXIT_FAIL
    if cert.verdict == ABSTAINED and args.abstain_error:
        return EXIT_ABSTAIN
    return EXIT_OK


def cmd_lemmas(args) -> int:
    if args.q_max < 3:
        raise InvalidInput("--q-max must be >= 3")
    reports = lemma_reports(args.q_max)
    _emit(render_lemmas(reports, args.format), args.out)
    return EXIT_FAIL if any(r.status == "fail" for r in reports) else EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    lo, _, hi = text.partition(":")
    return int(lo), int(hi or lo)


def scan_summary(certs: list[Certificate]) -> dict:
    def ok(c, name):
        ch = c.check(name)
        return ch is not None and ch.status != FAIL

    return {
        "certificates": len(certs),
        "eaqmds": sum(c.defect == 0 for c in certs),
        "formula_match": sum(ok(c, "formula_match") for c in certs),
        "failed": sum(c.verdict == FAIL for c in certs),
    }


def cmd_scan(args) -> int:
    lo, hi = _parse_range(args.q_range) if args.q_range else (args.q, args.q)
    if lo is None or hi is None or lo > hi:
        raise InvalidInput("give a q range as --q-range LO:HI or a single --q")
    families = FAMILIES if args.family is None else (args.family,)
    certs = scan_families(
        odd_prime_powers(lo, hi), families, args.t, args.m,
        workers=args.workers, desk_check=args.desk_check, budget=args.budget,
    )
    summary = scan_summary(certs)
    _emit(render_certificates(certs, args.format, summary), args.out)
    if args.format == "csv":
        print(_summary_line(summary), file=sys.stderr)
    if summary["failed"]:
        return EXIT_FAIL
    if args.abstain_error and any(c.verdict == ABSTAINED for c in certs):
        return EXIT_ABSTAIN
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "markdown"], default="json")
    common.add_argument("--out", help="write output to this path instead of stdout")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--q", type=int)
    family.add_argument("--t", type=int)
    family.add_argument("--m", type=int)
    family.add_argument("--family", choices=list(FAMILIES))
    family.add_argument("--desk-check", action="store_true", help="run exhaustive classical-code checks")
    family.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="codeword-enumeration budget")
    family.add_argument("--abstain-error", action="store_true", help="exit 3 when a check abstains")

    parser = argparse.ArgumentParser(prog="eaqmds", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="reproduce a printed parameter table")
    p.add_argument("which", type=int, choices=[1, 2, 3])
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("certify", parents=[common, family], help="certify one code")
    p.add_argument("--force", action="store_true", help="allow m outside the stated range")
    p.add_argument("--n", type=int, help="length, with --defining-set")
    p.add_argument("--defining-set", help="comma-separated residues (raw mode)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("lemmas", parents=[common], help="exhaustive lemma sweeps")
    p.add_argument("--q-max", type=int, default=50)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("scan", parents=[common, family], help="certify every admissible (q, t, m)")
    p.add_argument("--q-range", help="LO:HI inclusive")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInput, CosetError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_ABSTAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
