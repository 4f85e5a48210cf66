"""Command line interface.

Exit codes: 0 success, 1 I/O or parse error, 2 non-generic input,
3 theorem violation (the offending configuration is dumped to stderr).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .classify import LABELS, classify_tetrahedron
from .errors import NonGeneric, TheoremViolation, UnresolvedCluster
from .geometry import DEFAULT_EPS, Configuration
from .morse import ActiveSubset, MorsePoset, critical_spectrum, morse_poset
from .ratio import INFIMA, edelsbrunner_ratio, per_type_min_scan
from .sampling import SamplerConfig, run_statistics
from .transitions import PathSpec, check_event, scan_path

EXIT_OK = 0
EXIT_IO = 1
EXIT_NONGENERIC = 2
EXIT_THEOREM = 3


class PointFileError(ValueError):
    pass


@dataclass
class PointFile:
    dim: int
    points: np.ndarray
    labels: list[str] | None = None

    def configuration(self) -> Configuration:
        return Configuration(self.points)


def parse_point_file(text: str) -> PointFile:
    """Parse the text or JSON point format.

    Text format: ``#`` starts a comment, the first record is ``dim <n>``, and
    each further line holds n coordinates optionally followed by a label.
    JSON format: ``{"dim": n, "points": [[...], ...], "labels": [...]}``.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
            dim = int(doc["dim"])
            rows = [[float(x) for x in row] for row in doc["points"]]
            labels = doc.get("labels")
        except (ValueError, KeyError, TypeError) as exc:
            raise PointFileError(f"bad JSON point file: {exc}") from exc
    else:
        dim = None
        rows, labels = [], []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tokens = line.replace(",", " ").split()
            if dim is None:
                if len(tokens) != 2 or tokens[0].lower() != "dim":
                    raise PointFileError(f"line {lineno}: expected 'dim <n>'")
                try:
                    dim = int(tokens[1])
                except ValueError as exc:
                    raise PointFileError(f"line {lineno}: bad dimension {tokens[1]!r}") from exc
                continue
            try:
                rows.append([float(t) for t in tokens[:dim]])
            except ValueError as exc:
                raise PointFileError(f"line {lineno}: {exc}") from exc
            if len(tokens) > dim + 1 or len(rows[-1]) != dim:
                raise PointFileError(f"line {lineno}: expected {dim} coordinates and an optional label")
            labels.append(tokens[dim] if len(tokens) == dim + 1 else None)
        if dim is None:
            raise PointFileError("missing 'dim <n>' header")
        labels = labels if any(lbl is not None for lbl in labels) else None
    if dim < 1:
        raise PointFileError("dimension must be positive")
    if any(len(r) != dim for r in rows):
        raise PointFileError(f"every point needs {dim} coordinates")
    if len(rows) < 2:
        raise PointFileError("need at least two points")
    if labels is not None and len(labels) != len(rows):
        raise PointFileError("labels and points differ in length")
    return PointFile(dim, np.array(rows, dtype=np.float64), labels)


def read_point_file(path) -> PointFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise PointFileError(str(exc)) from exc
    return parse_point_file(text)


def format_point_file(points, labels=None) -> str:
    points = np.asarray(points, dtype=np.float64)
    lines = [f"dim {points.shape[1]}"]
    for i, row in enumerate(points):
        coords = " ".join(repr(float(x)) for x in row)
        lines.append(f"{coords} {labels[i]}" if labels else coords)
    return "\n".join(lines) + "\n"


def poset_to_dict(poset: MorsePoset, labels=None) -> dict:
    doc = {
        "n_points": poset.n_points,
        "dim": poset.dim,
        "spectrum": list(critical_spectrum(poset)),
        "elements": [
            {
                "subset": list(e.subset),
                "index": e.index,
                "critical_value": e.critical_value,
                "center": [float(x) for x in e.center],
            }
            for e in poset.elements
        ],
    }
    if labels:
        doc["labels"] = list(labels)
    return doc


def poset_from_dict(doc: dict) -> MorsePoset:
    elements = tuple(
        ActiveSubset(tuple(e["subset"]), np.array(e["center"], dtype=np.float64), float(e["critical_value"]))
        for e in doc["elements"]
    )
    return MorsePoset(int(doc["n_points"]), int(doc["dim"]), elements)


def _report_nongeneric(exc: NonGeneric):
    print(f"error: non-generic configuration: {exc}", file=sys.stderr)
    for v in getattr(exc, "violations", []):
        print(f"  subset {list(v.subset)}: {v.kind} (margin {v.margin:.3g})", file=sys.stderr)
    return EXIT_NONGENERIC


def _report_violation(exc: TheoremViolation):
    print(f"error: theorem violation: {exc}", file=sys.stderr)
    if exc.points is not None:
        print("offending configuration:", file=sys.stderr)
        sys.stderr.write(format_point_file(exc.points))
    return EXIT_THEOREM


def _dump(doc):
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def cmd_poset(args) -> int:
    pf = read_point_file(args.file)
    poset = morse_poset(pf.configuration(), args.tol)
    _dump(poset_to_dict(poset, pf.labels))
    return EXIT_OK


def cmd_classify(args) -> int:
    pf = read_point_file(args.file)
    if pf.points.shape != (4, 3):
        raise PointFileError("classify needs exactly four points in dimension 3")
    config = pf.configuration()
    ttype = classify_tetrahedron(config, args.tol)
    rep = edelsbrunner_ratio(config, args.tol)
    _dump(
        {
            "label": ttype.label,
            "spectrum": list(ttype.spectrum),
            "shape_letter": ttype.shape_letter,
            "rho": rep.rho,
            "circumradius": rep.circumradius,
            "min_edge": rep.min_edge,
            "min_edge_subset": list(rep.min_edge_subset),
            "min_edge_active": rep.min_edge_active,
        }
    )
    return EXIT_OK


def stats_csv(hist) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "count", "frequency"])
    freqs = hist.frequencies()
    for label in LABELS:
        w.writerow([label, hist.counts[label], repr(freqs[label])])
    w.writerow(["nongeneric", hist.nongeneric, ""])
    w.writerow(["violation", hist.violations, ""])
    return buf.getvalue()


def stats_report(hist, cfg: SamplerConfig, wall_time: float) -> dict:
    freqs = hist.frequencies()
    return {
        "samples": cfg.samples,
        "seed": cfg.seed,
        "workers": cfg.workers,
        "backend": kernels.BACKEND,
        "wall_time_s": wall_time,
        "total": hist.total,
        "nongeneric": hist.nongeneric,
        "violations": hist.violations,
        "types": [{"label": k, "count": hist.counts[k], "frequency": freqs[k]} for k in LABELS],
    }


def cmd_stats(args) -> int:
    cfg = SamplerConfig(args.samples, args.seed, args.workers)
    t0 = time.perf_counter()
    hist = run_statistics(cfg, args.tol)
    wall = time.perf_counter() - t0
    if args.format == "csv":
        sys.stdout.write(stats_csv(hist))
    else:
        _dump(stats_report(hist, cfg, wall))
    if hist.violations:
        return _report_violation(
            TheoremViolation(f"{hist.violations} samples outside the nine types", hist.violation_examples[0])
        )
    return EXIT_OK


def cmd_path(args) -> int:
    a = read_point_file(args.file_a).configuration()
    b = read_point_file(args.file_b).configuration()
    try:
        events = scan_path(PathSpec(a, b), steps=args.steps, eps=args.tol)
    except UnresolvedCluster as exc:
        print(f"error: {exc}; jitter the endpoints and retry", file=sys.stderr)
        return EXIT_NONGENERIC
    _dump(
        [
            {
                "t_low": e.t_low,
                "t_high": e.t_high,
                "added": sorted(list(s) for s in e.added),
                "removed": sorted(list(s) for s in e.removed),
                "valid": check_event(e),
            }
            for e in events
        ]
    )
    return EXIT_OK


def cmd_minratio(args) -> int:
    cfg = SamplerConfig(args.samples, args.seed, args.workers)
    found = per_type_min_scan(cfg, args.tol)
    rows = []
    for label in LABELS:
        bound = float(INFIMA[label][0])
        rho, pts = found.get(label, (math.nan, None))
        rows.append(
            {
                "label": label,
                "min_rho": rho,
                "infimum": bound,
                "above_bound": bool(rho >= bound - 1e-9) if pts is not None else None,
                "argmin": pts.tolist() if pts is not None else None,
            }
        )
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["label", "min_rho", "infimum", "above_bound"])
        for r in rows:
            w.writerow([r["label"], repr(r["min_rho"]), repr(r["infimum"]), r["above_bound"]])
    else:
        _dump({"samples": cfg.samples, "seed": cfg.seed, "types": rows})
    return EXIT_OK


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_EPS,
                        help=f"relative genericity tolerance (default {DEFAULT_EPS})")
    sampler = argparse.ArgumentParser(add_help=False)
    sampler.add_argument("--samples", type=_positive_int, default=10**6)
    sampler.add_argument("--seed", type=_nonnegative_int, default=0)
    sampler.add_argument("--workers", type=_positive_int, default=min(8, os.cpu_count() or 1))
    sampler.add_argument("--format", choices=("csv", "json"), default="json")

    parser = argparse.ArgumentParser(prog="morseposet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poset", parents=[common], help="Morse poset of a point file")
    p.add_argument("file")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("classify", parents=[common], help="type and ratio of a tetrahedron")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("stats", parents=[common, sampler], help="type frequencies of random tetrahedra")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("path", parents=[common], help="poset changes along a straight path")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--steps", type=_positive_int, default=256)
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("minratio", parents=[common, sampler], help="smallest ratio per type")
    p.set_defaults(func=cmd_minratio)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PointFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except TheoremViolation as exc:
        return _report_violation(exc)
    except NonGeneric as exc:
        return _report_nongeneric(exc)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
