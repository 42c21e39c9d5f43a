"""Survey rows and their JSON/CSV renderings."""

from __future__ import annotations

import concurrent.futures
import csv
import io
import json
import os
import time

from . import analysis as A
from .errors import TorsionCleanError
from .rings import ring_make
from .torsion import torsion_clean_index

# fixed column order of the survey CSV
SURVEY_COLUMNS = [
    "ring", "size", "units", "exponent_of_units", "plain_index", "strong_index", "char",
    "nil_index_of_jacobson", "abelian", "reduced", "boolean", "commutative",
    "units_equal_one_plus_J", "plain_witnesses", "strong_witnesses", "elapsed_ms", "error",
]


def survey_row(spec, max_size=None, conjugacy_reduction=True):
    t0 = time.perf_counter()
    row = dict.fromkeys(SURVEY_COLUMNS)
    row["ring"] = spec
    try:
        R = ring_make(spec, max_size)
        row["ring"] = R.spec
        plain = torsion_clean_index(R, strong=False, conjugacy_reduction=conjugacy_reduction)
        strong = torsion_clean_index(R, strong=True, conjugacy_reduction=conjugacy_reduction)
        row.update(
            size=R.size,
            units=len(A.unit_encs(R)),
            exponent_of_units=A.unit_group_exponent(R),
            plain_index=plain.index,
            strong_index=strong.index,
            char=R.char,
            nil_index_of_jacobson=A.jacobson_nil_index(R),
            plain_witnesses=[list(w) for w in plain.witnesses],
            strong_witnesses=[list(w) for w in strong.witnesses],
            **A.flags(R),
        )
    except TorsionCleanError as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    row["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    return row


def _row_job(args):
    return survey_row(*args)


def cmd_survey(specs, max_size=None, jobs=1, conjugacy_reduction=True):
    """One row per spec in input order; a failing ring is captured in its row."""
    if jobs == 0:
        jobs = os.cpu_count() or 1
    work = [(s, max_size, conjugacy_reduction) for s in specs]
    if jobs <= 1 or len(specs) <= 1:
        return [_row_job(w) for w in work]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_row_job, work))


def _strip_timing(rows):
    return [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in rows]


def survey_json(rows, timing=True):
    rows = rows if timing else _strip_timing(rows)
    return json.dumps(rows, indent=2, sort_keys=False) + "\n"


def survey_csv(rows, timing=True):
    cols = SURVEY_COLUMNS if timing else [c for c in SURVEY_COLUMNS if c != "elapsed_ms"]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for r in rows:
        out = []
        for c in cols:
            v = r.get(c)
            if c == "strong_index" and v is None and not r.get("error"):
                v = "none"
            elif isinstance(v, list):
                v = json.dumps(v, separators=(",", ":"))
            elif isinstance(v, bool):
                v = str(v).lower()
            out.append("" if v is None else v)
        w.writerow(out)
    return buf.getvalue()


def survey_text(rows, timing=True):
    lines = []
    for r in rows:
        if r["error"]:
            lines.append(f"{r['ring']}: ERROR {r['error']}")
            continue
        strong = "none" if r["strong_index"] is None else r["strong_index"]
        line = (f"{r['ring']}: |R|={r['size']} |U|={r['units']} exp(U)={r['exponent_of_units']} "
                f"plain={r['plain_index']} strong={strong} char={r['char']} nil(J)={r['nil_index_of_jacobson']}")
        if timing:
            line += f" [{r['elapsed_ms']:.1f} ms]"
        lines.append(line)
    return "\n".join(lines) + "\n"
