"""Readers and writers: MatrixMarket and alist for 0/1 incidence matrices,
JSON and CSV for verification reports.

Both matrix formats are written deterministically (entries sorted row-major,
fixed whitespace) so identical inputs produce byte-identical files.
"""

import csv
import io as _stringio
import json

import numpy as np

MM_HEADER = "%%MatrixMarket matrix coordinate integer general"


def matrix_market_text(bits: np.ndarray) -> str:
    rr, cc = np.nonzero(np.asarray(bits, dtype=bool))
    lines = [MM_HEADER, f"{bits.shape[0]} {bits.shape[1]} {len(rr)}"]
    lines.extend(f"{i + 1} {j + 1} 1" for i, j in zip(rr, cc))
    return "\n".join(lines) + "\n"


def parse_matrix_market(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if (not lines[0].startswith("%%MatrixMarket")
            or head[2:5] != ["coordinate", "integer", "general"]):
        raise ValueError(f"unsupported MatrixMarket header: {lines[0]!r}")
    body = [ln for ln in lines[1:] if not ln.startswith("%")]
    n_rows, n_cols, nnz = map(int, body[0].split())
    bits = np.zeros((n_rows, n_cols), dtype=bool)
    if len(body) - 1 != nnz:
        raise ValueError(f"expected {nnz} entries, found {len(body) - 1}")
    for ln in body[1:]:
        i, j, v = map(int, ln.split())
        if v != 1:
            raise ValueError(f"0/1 matrix expected, found value {v}")
        if bits[i - 1, j - 1]:
            raise ValueError(f"duplicate entry at ({i}, {j})")
        bits[i - 1, j - 1] = True
    return bits


def alist_text(bits: np.ndarray) -> str:
    """Bipartite adjacency in alist form.

    For an (M, N) matrix: first line `N M` (columns first), then the maximal
    column/row degrees, the N column degrees, the M row degrees, one
    neighbor list per column (1-based row indices) and one per row (1-based
    column indices), each zero-padded to the maximal degree.
    """
    bits = np.asarray(bits, dtype=bool)
    n_rows, n_cols = bits.shape
    col_deg = bits.sum(axis=0)
    row_deg = bits.sum(axis=1)
    dc, dr = int(col_deg.max(initial=0)), int(row_deg.max(initial=0))
    lines = [f"{n_cols} {n_rows}", f"{dc} {dr}",
             " ".join(str(int(d)) for d in col_deg),
             " ".join(str(int(d)) for d in row_deg)]
    for j in range(n_cols):
        nb = [str(i + 1) for i in np.flatnonzero(bits[:, j])]
        lines.append(" ".join(nb + ["0"] * (dc - len(nb))))
    for i in range(n_rows):
        nb = [str(j + 1) for j in np.flatnonzero(bits[i])]
        lines.append(" ".join(nb + ["0"] * (dr - len(nb))))
    return "\n".join(lines) + "\n"


def parse_alist(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    n_cols, n_rows = map(int, lines[0].split())
    dc, dr = map(int, lines[1].split())
    col_deg = list(map(int, lines[2].split()))
    row_deg = list(map(int, lines[3].split()))
    if len(col_deg) != n_cols or len(row_deg) != n_rows:
        raise ValueError("degree list lengths disagree with dimensions")
    bits = np.zeros((n_rows, n_cols), dtype=bool)
    col_lists = lines[4:4 + n_cols]
    row_lists = lines[4 + n_cols:4 + n_cols + n_rows]
    if len(col_lists) != n_cols or len(row_lists) != n_rows:
        raise ValueError("neighbor list count disagrees with dimensions")
    for j, ln in enumerate(col_lists):
        nb = [v for v in map(int, ln.split()) if v]
        if len(nb) != col_deg[j] or any(not 1 <= v <= n_rows for v in nb):
            raise ValueError(f"bad column list {j + 1}")
        bits[[v - 1 for v in nb], j] = True
    for i, ln in enumerate(row_lists):
        nb = [v for v in map(int, ln.split()) if v]
        if sorted(nb) != [int(j) + 1 for j in np.flatnonzero(bits[i])]:
            raise ValueError(f"row list {i + 1} disagrees with column lists")
    return bits


# ------------------------------------------------------------------ reports

def report_dict(report) -> dict:
    cells = [{
        "section": c.section, "pi": c.pi, "lambda": c.lam, "orbit": c.orbit,
        "expectedPi": str(c.expected_pi), "actualPi": str(c.actual_pi),
        "expectedLambda": c.expected_lambda, "actualLambda": c.actual_lambda,
        "pass": c.passed,
    } for c in report.cells]
    checks = [{
        "section": c.section, "name": c.name, "pass": c.passed,
        "detail": c.detail,
    } for c in report.checks]
    return {
        "q": report.q,
        "xi": report.xi,
        "cells": cells,
        "structure": {"checks": checks, "notes": list(report.notes)},
        "summary": {
            "cells": len(cells),
            "checks": len(checks),
            "failed": report.n_failed,
            "pass": report.passed,
        },
    }


def report_json(report) -> str:
    return json.dumps(report_dict(report), indent=2) + "\n"


CSV_FIELDS = ["kind", "section", "name", "pi", "lambda", "orbit",
              "expected_pi", "actual_pi", "expected_lambda", "actual_lambda",
              "pass", "detail"]


def report_csv(report) -> str:
    buf = _stringio.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, restval="",
                       lineterminator="\n")
    w.writeheader()
    for c in report.cells:
        w.writerow({"kind": "cell", "section": c.section, "pi": c.pi,
                    "lambda": c.lam, "orbit": c.orbit,
                    "expected_pi": str(c.expected_pi),
                    "actual_pi": str(c.actual_pi),
                    "expected_lambda": c.expected_lambda,
                    "actual_lambda": c.actual_lambda,
                    "pass": c.passed})
    for c in report.checks:
        w.writerow({"kind": "check", "section": c.section, "name": c.name,
                    "pass": c.passed, "detail": c.detail})
    for note in report.notes:
        w.writerow({"kind": "note", "detail": note})
    return buf.getvalue()
