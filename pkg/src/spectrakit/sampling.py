"""Deterministic rational sampling of basic closed sets."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from .poly import MPoly


def in_set(gens: Sequence[MPoly], x: Sequence) -> bool:
    return all(g.eval(x) >= 0 for g in gens)


def random_rational(rng: np.random.Generator, lo: float, hi: float, den: int) -> Fraction:
    a = Fraction(lo).limit_denominator(den)
    b = Fraction(hi).limit_denominator(den)
    steps = int((b - a) * den)
    return a + Fraction(int(rng.integers(0, steps + 1)), den)


def sample_set(
    gens: Sequence[MPoly],
    bbox: Sequence[tuple[float, float]],
    count: int,
    seed: int = 0,
    den: int = 256,
    max_tries: int = 200_000,
) -> list[tuple[Fraction, ...]]:
    """Rational points of {g >= 0 for all g} by rejection from a box grid of step 1/den."""
    rng = np.random.default_rng(seed)
    out: list[tuple[Fraction, ...]] = []
    for _ in range(max_tries):
        if len(out) == count:
            break
        x = tuple(random_rational(rng, lo, hi, den) for lo, hi in bbox)
        if in_set(gens, x):
            out.append(x)
    if len(out) < count:
        raise RuntimeError(f"only {len(out)} of {count} samples found in {max_tries} tries")
    return out


def rational_grid(bbox: Sequence[tuple[float, float]], per_axis: int) -> list[tuple[Fraction, ...]]:
    """per_axis^n evenly spaced rational points, endpoints included."""
    axes = []
    for lo, hi in bbox:
        a, b = Fraction(lo), Fraction(hi)
        axes.append([a + (b - a) * Fraction(i, per_axis - 1) for i in range(per_axis)])
    grid = [()]
    for ax in axes:
        grid = [g + (v,) for g in grid for v in ax]
    return grid
