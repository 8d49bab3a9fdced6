"""CSV point sets and JSON sweep reports."""

import json
import logging
import math

import numpy as np

from .errors import ConfigurationError
from .geometry import Configuration

log = logging.getLogger(__name__)

OFF_SPHERE_TOL = 1e-9
_FMT = ".17g"


class CSVFormatError(ConfigurationError):
    """Malformed line in a point-set file."""


def write_config_csv(c, path):
    """One point per line, d+1 comma-separated fields, 17 significant digits."""
    with open(path, "w") as fh:
        for row in c.points:
            fh.write(",".join(format(float(v), _FMT) for v in row) + "\n")


def read_config_csv(path, d=None):
    """Read a point set, checking arity and that every row is on the sphere.

    Rows whose norm is within 1e-9 of one are renormalized (with a warning);
    anything further off raises ``ConfigurationError``.
    """
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if d is not None and len(fields) != d + 1:
                raise CSVFormatError(
                    f"{path}:{lineno}: expected {d + 1} fields, found {len(fields)}")
            if rows and len(fields) != len(rows[0]):
                raise CSVFormatError(f"{path}:{lineno}: inconsistent field count")
            try:
                vals = [float(f) for f in fields]
            except ValueError as exc:
                raise CSVFormatError(f"{path}:{lineno}: {exc}") from None
            if not all(math.isfinite(v) for v in vals):
                raise CSVFormatError(f"{path}:{lineno}: non-finite coordinate")
            rows.append(vals)
    if len(rows) < 2:
        raise CSVFormatError(f"{path}: need at least two points")
    pts = np.array(rows)
    off = np.abs(np.linalg.norm(pts, axis=1) - 1.0)
    worst = int(off.argmax())
    if off[worst] > OFF_SPHERE_TOL:
        raise ConfigurationError(
            f"{path}:{worst + 1}: point is off the unit sphere by {off[worst]:.3e}")
    if off[worst] > 1e-12:
        log.warning("%s: renormalizing points up to %.1e off the sphere", path, off[worst])
        pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    return Configuration(pts)


# --- JSON -------------------------------------------------------------------

def _encode(obj):
    """JSON text with every float written at 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return format(x, _FMT) if math.isfinite(x) else "null"
    return json.dumps(obj)


def report_to_dict(report):
    c = report.constants
    return {
        "d": report.d,
        "s": float(report.s),
        "gamma": c.gamma,
        "records": [
            {
                "n": r.n,
                "energy": r.best_energy,
                "min_distance": r.min_distance,
                "scaled_separation": r.scaled_separation,
                "lemma2_C": r.lemma2_C,
                "lemma4_C": r.lemma4_C,
                "lemma6_pass": r.lemma6_pass,
            }
            for r in report.records
        ],
        "constants": {
            "gamma": c.gamma,
            "beta": c.beta,
            "beta_limit": c.beta_limit,
            "fitted_C_lemma1": c.fitted_C_lemma1,
            "fitted_C_lemma2": c.fitted_C_lemma2,
            "fitted_C_lemma4": c.fitted_C_lemma4,
            "fitted_C_exterior": c.fitted_C_exterior,
            "empirical_A": c.empirical_A,
        },
        "empirical_A": report.empirical_A,
    }


def report_to_json(report):
    return _encode(report_to_dict(report)) + "\n"


def write_report_json(report, path):
    with open(path, "w") as fh:
        fh.write(report_to_json(report))
