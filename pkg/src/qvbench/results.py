"""Machine-readable benchmark output: long-format CSV, versioned JSON
(lossless round-trip), and an optional SVG scaling chart."""

import csv
import json

from .bench import BenchmarkRecord
from .heavy_output import QvDecision

CSV_HEADER = (
    "width",
    "trial",
    "elapsed_seconds",
    "su4_count",
    "swap_count",
    "ideal_hop",
    "sampled_hop",
    "seed",
    "threads",
    "fusion",
)

JSON_SCHEMA_VERSION = 1


def _csv_row(rec):
    return (
        rec.width,
        rec.trial_index,
        repr(rec.elapsed_seconds),
        rec.su4_count,
        rec.swap_count,
        repr(rec.ideal_hop),
        "" if rec.sampled_hop is None else repr(rec.sampled_hop),
        rec.seed,
        rec.threads,
        "true" if rec.fusion else "false",
    )


def _record_obj(rec):
    obj = {
        "width": rec.width,
        "trial_index": rec.trial_index,
        "elapsed_seconds": rec.elapsed_seconds,
        "su4_count": rec.su4_count,
        "swap_count": rec.swap_count,
        "ideal_hop": rec.ideal_hop,
        "seed": rec.seed,
        "threads": rec.threads,
        "fusion": rec.fusion,
        "timestamp": rec.timestamp,
    }
    if rec.sampled_hop is not None:
        obj["sampled_hop"] = rec.sampled_hop
    return obj


def _decision_obj(dec):
    return {
        "width": dec.width,
        "mean_hop": dec.mean_hop,
        "stderr": dec.stderr,
        "trials": dec.trials,
        "passed": dec.passed,
        "quantum_volume": dec.quantum_volume,
    }


def results_json_text(records, decisions):
    doc = {
        "schema_version": JSON_SCHEMA_VERSION,
        "records": [_record_obj(r) for r in records],
        "decisions": [_decision_obj(d) for d in decisions],
    }
    return json.dumps(doc, indent=1) + "\n"


def emit_results(records, decisions, output_format, path):
    """Write records (and, for JSON, decisions) to ``path``.

    CSV is one record per row under a fixed header (decisions do not fit
    the long format and are JSON-only). Returns the path.
    """
    if output_format == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            for rec in records:
                writer.writerow(_csv_row(rec))
    elif output_format == "json":
        with open(path, "w") as fh:
            fh.write(results_json_text(records, decisions))
    else:
        raise ValueError(f"unknown output format {output_format!r}")
    return path


def load_results(path):
    """Parse a JSON results file back into records and decisions."""
    with open(path) as fh:
        doc = json.load(fh)
    if doc.get("schema_version") != JSON_SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    records = [
        BenchmarkRecord(
            width=obj["width"],
            trial_index=obj["trial_index"],
            elapsed_seconds=obj["elapsed_seconds"],
            su4_count=obj["su4_count"],
            swap_count=obj["swap_count"],
            ideal_hop=obj["ideal_hop"],
            sampled_hop=obj.get("sampled_hop"),
            seed=obj["seed"],
            threads=obj["threads"],
            fusion=obj["fusion"],
            timestamp=obj["timestamp"],
        )
        for obj in doc["records"]
    ]
    decisions = [
        QvDecision(
            width=obj["width"],
            mean_hop=obj["mean_hop"],
            stderr=obj["stderr"],
            trials=obj["trials"],
            passed=obj["passed"],
            quantum_volume=obj["quantum_volume"],
        )
        for obj in doc["decisions"]
    ]
    return records, decisions


def render_scaling_svg(report, path, title="median execution time per width"):
    """Minimal log-scale line chart of median time vs width."""
    import math

    width_px, height_px = 640, 400
    left, right, top, bottom = 70, 20, 30, 50
    plot_w = width_px - left - right
    plot_h = height_px - top - bottom

    points = [(row.width, row.median_time) for row in report.rows]
    xs = [p[0] for p in points]
    ys = [math.log10(max(p[1], 1e-12)) for p in points]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = math.floor(min(ys)), math.ceil(max(ys))
    if y_hi == y_lo:
        y_hi = y_lo + 1
    x_span = max(x_hi - x_lo, 1)

    def px(x):
        return left + (x - x_lo) / x_span * plot_w

    def py(ylog):
        return top + (y_hi - ylog) / (y_hi - y_lo) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width_px}" height="{height_px}" '
        f'viewBox="0 0 {width_px} {height_px}" font-family="sans-serif" font-size="12">',
        f'<text x="{width_px / 2:.1f}" y="18" text-anchor="middle">{title}</text>',
        f'<rect x="{left}" y="{top}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black"/>',
    ]
    for decade in range(y_lo, y_hi + 1):
        y = py(decade)
        parts.append(
            f'<line x1="{left}" y1="{y:.1f}" x2="{left + plot_w}" y2="{y:.1f}" '
            'stroke="#ccc" stroke-width="0.5"/>'
        )
        parts.append(
            f'<text x="{left - 6}" y="{y + 4:.1f}" text-anchor="end">1e{decade}</text>'
        )
    for x in xs:
        parts.append(
            f'<text x="{px(x):.1f}" y="{top + plot_h + 16}" text-anchor="middle">{x}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height_px - 12}" '
        'text-anchor="middle">circuit width (qubits)</text>'
    )
    coords = " ".join(f"{px(x):.1f},{py(math.log10(max(t, 1e-12))):.1f}" for x, t in points)
    parts.append(
        f'<polyline points="{coords}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>'
    )
    for x, t in points:
        parts.append(
            f'<circle cx="{px(x):.1f}" cy="{py(math.log10(max(t, 1e-12))):.1f}" r="3" '
            'fill="#1f77b4"/>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
    return path
