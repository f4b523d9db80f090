"""Batch command line: verify the closed-form tables, print orbit censuses,
export incidence matrices.

Exit status: 0 all checks pass / export written; 1 a verification cell or
check failed, or an I/O problem; 2 invalid input (q not a prime power or
over the CUBICA_MAX_Q bound, unknown selector).

Environment: CUBICA_MAX_Q caps q; CUBICA_THREADS caps kernel threads;
CUBICA_BACKEND picks the table-arithmetic backend (numba or numpy).
"""

import argparse
import sys

from . import gf, incidence, tables
from . import io as io_mod


def _build_parser():
    p = argparse.ArgumentParser(
        prog="cubica",
        description="Orbit and incidence structure of the twisted cubic "
                    "in PG(3,q): verification and matrix export.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check tables, relations and structure")
    v.add_argument("q", type=int)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--out", metavar="PATH")
    v.add_argument("--fail-fast", action="store_true",
                   help="stop after the first failing section")

    o = sub.add_parser("orbits", help="print plane and line orbit censuses")
    o.add_argument("q", type=int)

    e = sub.add_parser("export", help="write one incidence submatrix")
    e.add_argument("q", type=int)
    e.add_argument("--pi", required=True, metavar="PLANE",
                   help="plane type: Gamma, 2C, 3C, 1Cbar, 0C")
    e.add_argument("--lambda", required=True, dest="lam", metavar="LINE",
                   help="line class: RC, T, IC, UG[amma], UnG[amma], RA, IA,"
                        " EG[amma], EnG[amma], A[xis], EA")
    e.add_argument("--orbit", type=int, default=None, metavar="J",
                   help="restrict to orbit J of the class (1-based)")
    e.add_argument("--format", choices=("mm", "alist"), required=True)
    e.add_argument("--out", required=True, metavar="PATH")
    return p


def _check_q(q):
    """Returns an error message, or None when q is usable."""
    try:
        gf.field_make(q)
    except gf.NotAPrimePower:
        return f"q={q} is not a prime power"
    except gf.BoundExceeded as exc:
        return str(exc)
    return None


def _write_or_print(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="ascii") as fh:
            fh.write(text)


def cmd_verify(args) -> int:
    report = incidence.verify_all(args.q, fail_fast=args.fail_fast)
    renderer = io_mod.report_json if args.format == "json" else io_mod.report_csv
    _write_or_print(renderer(report), args.out)
    return 0 if report.passed else 1


def cmd_orbits(args) -> int:
    tax = incidence.get_verifier(args.q).taxonomy
    q = args.q
    out = [f"q={q} xi={tax.space.field.xi}",
           f"planes: {tax.space.n_planes}  lines: {tax.space.n_lines}  "
           f"group order: {tax.grp.order}",
           "plane orbits:"]
    for name in tables.PLANE_TYPES:
        members = tax.plane_members[name]
        out.append(f"  {name:<8} size {len(members):>6}  rep {members[0]}")
    out.append("line classes:")
    for name in tables.valid_line_classes(q):
        members = tax.class_members[name]
        js = sorted(j for (n, j) in tax.orbit_members if n == name)
        parts = "; ".join(
            f"orbit {j}: size {len(tax.orbit_members[(name, j)])} "
            f"rep {tax.orbit_members[(name, j)][0]}" for j in js)
        out.append(f"  {name:<8} size {len(members):>6}  {parts}")
    sys.stdout.write("\n".join(out) + "\n")
    return 0


def cmd_export(args) -> int:
    tax = incidence.get_verifier(args.q).taxonomy
    m = incidence.build_submatrix(tax, args.pi, args.lam, args.orbit)
    text = (io_mod.matrix_market_text(m.bits) if args.format == "mm"
            else io_mod.alist_text(m.bits))
    _write_or_print(text, args.out)
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    problem = _check_q(args.q)
    if problem is not None:
        print(f"cubica: {problem}", file=sys.stderr)
        return 2
    handler = {"verify": cmd_verify, "orbits": cmd_orbits,
               "export": cmd_export}[args.command]
    try:
        return handler(args)
    except incidence.InvalidSelector as exc:
        print(f"cubica: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        path = getattr(exc, "filename", None) or getattr(args, "out", None)
        print(f"cubica: cannot write {path}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
