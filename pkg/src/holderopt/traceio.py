"""Trace and report serialization (CSV, JSONL, plain-text tables).

Floats are written with ``repr``: the shortest decimal that round-trips,
never more than 17 significant digits. Vectors are ``;``-joined. Missing
values are the literal ``NA`` in CSV and ``null`` in JSONL.
"""
import csv
import json
import math

import numpy as np

from .analysis import prefix_regrets

TRACE_COLUMNS = ("t", "score", "code", "x_theta", "x_omega", "f", "v", "best_f", "simple_regret", "avg_regret")


def fmt(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        return "NA"
    return repr(x)


def fmt_vec(v) -> str:
    return ";".join(fmt(x) for x in v)


def _json_num(x):
    x = float(x)
    return x if math.isfinite(x) else None


def _rows(trace):
    best = trace.best_value_prefix
    if trace.known_min is not None:
        simple, avg = prefix_regrets(trace)
    else:
        simple = avg = np.full(trace.T, np.nan)
    for i in range(trace.T):
        yield i, best, simple, avg


def write_trace_csv(trace, fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS)
    for i, best, simple, avg in _rows(trace):
        writer.writerow(
            (
                i + 1,
                fmt(trace.scores[i]),
                trace.codes[i],
                fmt_vec(trace.x_theta[i]),
                fmt_vec(trace.x_omega[i]),
                fmt(trace.values[i]),
                fmt_vec(trace.edges[i]),
                fmt(best[i]),
                fmt(simple[i]),
                fmt(avg[i]),
            )
        )


def write_trace_jsonl(trace, fh) -> None:
    for i, best, simple, avg in _rows(trace):
        row = {
            "t": i + 1,
            "score": _json_num(trace.scores[i]),
            "code": trace.codes[i],
            "x_theta": [_json_num(x) for x in trace.x_theta[i]],
            "x_omega": [_json_num(x) for x in trace.x_omega[i]],
            "f": _json_num(trace.values[i]),
            "v": [_json_num(x) for x in trace.edges[i]],
            "best_f": _json_num(best[i]),
            "simple_regret": _json_num(simple[i]),
            "avg_regret": _json_num(avg[i]),
        }
        fh.write(json.dumps(row) + "\n")


def write_trace(trace, path, fmt_name="csv") -> None:
    with open(path, "w", newline="") as fh:
        if fmt_name == "csv":
            write_trace_csv(trace, fh)
        elif fmt_name == "jsonl":
            write_trace_jsonl(trace, fh)
        else:
            raise ValueError(f"unknown trace format {fmt_name!r}")


def _parse(text):
    return float("nan") if text == "NA" else float(text)


def read_trace_csv(path) -> list:
    """Rows of a trace CSV as dicts with floats / float lists (NA -> nan)."""
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rec = {"t": int(row["t"]), "code": row["code"]}
            for key in ("score", "f", "best_f", "simple_regret", "avg_regret"):
                rec[key] = _parse(row[key])
            for key in ("x_theta", "x_omega", "v"):
                rec[key] = [_parse(p) for p in row[key].split(";")]
            out.append(rec)
    return out


def write_reports_jsonl(reports, fh) -> None:
    for r in reports:
        fh.write(json.dumps(r.as_dict()) + "\n")


def format_report_table(reports) -> str:
    width = max([len(r.name) for r in reports] + [5])
    lines = [f"{'check':<{width}}  {'measured':>14}  {'bound':>14}  {'slack':>14}  ok"]
    for r in reports:
        lines.append(
            f"{r.name:<{width}}  {r.measured:>14.6g}  {r.bound:>14.6g}  {r.slack:>14.6g}  {'PASS' if r.satisfied else 'FAIL'}"
        )
    return "\n".join(lines)
