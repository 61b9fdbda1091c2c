# maninsigma/utils.py
"""
Small helpers shared by the CLI and the numeric modules.

 - XorShift64Star: seeded generator so scans are reproducible across platforms
 - parse_point / sample_point: group points from the command line or the generator
 - read_json_file / write_json_file: JSON I/O with parse errors that name the line
 - stable_digest: sha256 of canonical JSON, used as the report's input digest
 - log: tagged diagnostics on stderr ("[Scan] ...")
"""

import hashlib
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import config
from .errors import ParseError, ShapeError

_MASK64 = (1 << 64) - 1


# ---------------------------
# Logging
# ---------------------------
def log(tag, message, always=False):
    if always or config.VERBOSE:
        print(f"[{tag}] {message}", file=sys.stderr)


def warn(tag, message):
    log(tag, f"WARNING: {message}", always=True)


# ---------------------------
# Pseudo-random numbers
# ---------------------------
class XorShift64Star:
    """64-bit xorshift* (shifts 12, 25, 27; multiplier 0x2545F4914F6CDD1D)."""

    MULTIPLIER = 0x2545F4914F6CDD1D
    ZERO_SEED = 0x9E3779B97F4A7C15

    def __init__(self, seed):
        state = int(seed) & _MASK64
        self.state = state if state else self.ZERO_SEED

    def next_u64(self):
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self.state = x
        return (x * self.MULTIPLIER) & _MASK64

    def random(self):
        """Uniform in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low, high):
        return low + (high - low) * self.random()


def sample_point(rng: XorShift64Star, n, radius):
    """Uniform in the cube |X|_inf <= radius."""
    return np.array([rng.uniform(-radius, radius) for _ in range(n)])


def sample_points(seed, count, n, radius):
    rng = XorShift64Star(seed)
    return [sample_point(rng, n, radius) for _ in range(count)]


# ---------------------------
# Parsing
# ---------------------------
def parse_point(text, dim=None):
    try:
        values = [float(tok) for tok in str(text).replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise ParseError(f"cannot parse point {text!r}; expected comma-separated reals such as 0,1,1")
    if not values or not all(np.isfinite(values)):
        raise ParseError(f"point {text!r} must hold finite reals")
    if dim is not None and len(values) != dim:
        raise ShapeError(f"point {text!r} has {len(values)} coordinates, expected {dim}")
    return np.array(values)


def parse_int(value, what="value", source=None):
    """Integer from an int, an integral float or a numeric string; anything else is a ParseError."""
    if isinstance(value, bool):
        raise ParseError(f"{what} must be an integer, got {value!r}", source)
    try:
        number = float(value)
    except (TypeError, ValueError):
        raise ParseError(f"{what} must be an integer, got {value!r}", source)
    if not math.isfinite(number) or number != int(number):
        raise ParseError(f"{what} must be an integer, got {value!r}", source)
    return int(number)


def read_json_file(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror or e}", source=str(path))
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e.msg} (column {e.colno})", source=str(path), line=e.lineno)


def write_json_file(path, doc):
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def stable_digest(obj):
    """sha256 over canonical JSON; numpy arrays are listed, floats keep repr precision."""

    def _default(o):
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, np.generic):
            return o.item()
        raise TypeError(f"cannot digest {type(o).__name__}")

    blob = json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()
