# maninsigma/runner.py
"""
Runner for seeded property scans of a triple's Poisson bivector.

- Draws sample points from XorShift64Star in the cube |X|_inf <= radius
- Each step() evaluates one sample and returns a dict:
  {'index','point','antisymmetry','jacobi','multiplicativity',
   'triangularity','pairing','inverse_product','block_agreement','attempts','status'}
- A ChartBreakdown redraws the point up to max_resample times before the
  sample is recorded as failed
"""

import traceback

import numpy as np

from . import config
from .adjoint import (
    Ad_of_inverse_point,
    Ad_of_point,
    blocks_from_forward,
    extract_blocks,
    lower_left_defect,
    pairing_defect,
)
from .errors import ChartBreakdown, InputError
from .lie_core import ManinTriple
from .poisson import bivector_at, jacobi_residual, multiplicativity_residual
from .utils import XorShift64Star, log, sample_point, warn

METRICS = (
    "antisymmetry",
    "jacobi",
    "multiplicativity",
    "triangularity",
    "pairing",
    "inverse_product",
    "block_agreement",
)


class ScanRunner:
    def __init__(self, triple: ManinTriple, samples=config.DEFAULT_SAMPLES, radius=config.DEFAULT_RADIUS,
                 seed=config.DEFAULT_SEED, max_resample=config.MAX_RESAMPLE):
        self.triple = triple
        self.samples = int(samples)
        self.radius = float(radius)
        self.seed = int(seed)
        self.max_resample = int(max_resample)
        if self.samples < 1:
            raise InputError(f"scan needs at least one sample, got {self.samples}")
        if not self.radius > 0.0:
            raise InputError(f"scan radius must be positive, got {self.radius}")
        if self.max_resample < 0:
            raise InputError(f"max_resample must be >= 0, got {self.max_resample}")
        self.rng = XorShift64Star(self.seed)
        self.index = 0
        self.results = []

    # ---------------------
    # Per-point evaluation
    # ---------------------
    def _evaluate(self, x):
        double = self.triple.double
        n = self.triple.dim
        p = bivector_at(self.triple, x).matrix
        forward = Ad_of_point(double, x)
        inverse = Ad_of_inverse_point(double, x)
        blocks = extract_blocks(inverse)
        again = blocks_from_forward(forward)
        block_gap = max(
            float(np.abs(blocks.a - again.a).max()),
            float(np.abs(blocks.b - again.b).max()),
            float(np.abs(blocks.d - again.d).max()),
        )
        return {
            "antisymmetry": float(np.abs(p + p.T).max()),
            "jacobi": jacobi_residual(self.triple, x),
            "multiplicativity": max(
                (multiplicativity_residual(self.triple, x, s) for s in range(1, n)), default=0.0
            ),
            "triangularity": max(lower_left_defect(forward), lower_left_defect(inverse)),
            "pairing": max(pairing_defect(double, forward), pairing_defect(double, inverse)),
            "inverse_product": float(np.abs(forward @ inverse - np.eye(double.dim)).max()),
            "block_agreement": block_gap,
        }

    # ---------------------
    # Public API
    # ---------------------
    def step(self):
        """Evaluate the next sample. Return its status dict, or None when the scan is done."""
        if self.index >= self.samples:
            return None
        info = {"index": self.index + 1, "point": None, "attempts": 0, "status": "ok"}
        last_error = None
        for attempt in range(1, self.max_resample + 2):
            x = sample_point(self.rng, self.triple.dim, self.radius)
            info["point"] = [float(v) for v in x]
            info["attempts"] = attempt
            try:
                info.update(self._evaluate(x))
                break
            except ChartBreakdown as e:
                last_error = e
                warn("Scan", f"sample {self.index + 1} attempt {attempt}: {e}; redrawing")
        else:
            info["status"] = f"failed: {last_error}"
            for key in METRICS:
                info[key] = float("nan")

        self.index += 1
        self.results.append(info)
        if info["status"] == "ok":
            log("Scan", f"sample {info['index']}/{self.samples} jacobi={info['jacobi']:.3e}")
        return info

    def run(self):
        try:
            while self.step() is not None:
                pass
        except Exception:
            traceback.print_exc()
            raise
        return self.results

    def summary(self):
        ok = [r for r in self.results if r["status"] == "ok"]
        out = {"samples": len(self.results), "failed": len(self.results) - len(ok)}
        for key in METRICS:
            out[f"max_{key}"] = max((r[key] for r in ok), default=0.0)
        return out
