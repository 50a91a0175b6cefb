"""Flat line bundles over the circle and the Fourier-transform bundle.

Points of the circle are written ``w = e^{-2 pi i t}``.  Chart 1 covers
``0 < t < 3/4`` and chart 2 covers ``1/2 < t < 5/4``.  Their intersection
has two components:

====  ==================  =================  ==========
name  parameter range     branch difference  transition
====  ==================  =================  ==========
A     1/2 < t < 3/4       0                  identity
B     0 < t < 1/4         1                  S
====  ==================  =================  ==========

A section ``f`` of ``L_w`` is trivialized on chart ``j`` by multiplying with
``e^{2 pi i s tau}`` where ``s = -branch(j, w)``, so the transition from
chart 1 to chart 2 multiplies by ``e^{-2 pi i k tau}`` with
``k = branch(2, w) - branch(1, w)``.  On Fourier modes that is ``S^k``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bandop import EPBandOp, shift_op
from .bundle import BaseComplex, EndCocycle, TorusTransition
from .errors import GridTooCoarse, NotInChart, NotInOverlap

CHARTS = {1: (0.0, 0.75), 2: (0.5, 1.25)}
COMPONENTS = {"A": (0.5, 0.75), "B": (0.0, 0.25)}
# alternate names for the two overlap components
PRINTED_LABELS = {"A": "V2", "B": "V1"}


def point(t: float) -> complex:
    return cmath.exp(-2j * math.pi * t)


def _base_param(w: complex) -> float:
    return (-cmath.phase(w) / (2 * math.pi)) % 1.0


def branch(chart: int, w: complex) -> float:
    """The parameter ``t`` of ``w`` inside the interval of ``chart``."""
    lo, hi = CHARTS[chart]
    t0 = _base_param(w)
    for t in (t0, t0 + 1.0):
        if lo < t < hi:
            return t
    raise NotInChart(f"w = {w} is not in chart {chart}")


def overlap_component(w: complex) -> str:
    try:
        t1 = branch(1, w)
        branch(2, w)
    except NotInChart:
        raise NotInOverlap(f"w = {w} is not in the chart overlap") from None
    for name, (lo, hi) in COMPONENTS.items():
        if lo < t1 < hi:
            return name
    raise NotInOverlap(f"w = {w} is not in the chart overlap")


def branch_difference(w: complex) -> int:
    overlap_component(w)
    return round(branch(2, w) - branch(1, w))


def transition_exact(w: complex) -> EPBandOp:
    return shift_op(branch_difference(w))


def transition_numeric(w: complex, n_modes: int = 64, n_points: int = 1024) -> np.ndarray:
    """Quadrature matrix ``<e_m, e^{2 pi i (s2 - s1) tau} e_n>`` for ``|m|, |n| <= n_modes``.

    Row and column ``j`` correspond to the mode ``j - n_modes``.
    """
    overlap_component(w)
    if n_points < 8 * (n_modes + 2):
        raise GridTooCoarse(f"{n_points} points cannot resolve {n_modes} modes")
    s1, s2 = -branch(1, w), -branch(2, w)
    tau = np.arange(n_points) / n_points
    modes = np.arange(-n_modes, n_modes + 1)
    basis = np.exp(2j * np.pi * np.outer(modes, tau))
    weight = np.exp(2j * np.pi * (s2 - s1) * tau)
    return (basis.conj() * weight) @ basis.T / n_points


def overlap_samples(count: int, seed: int = 0) -> list[complex]:
    """``count`` random points spread over both overlap components."""
    rng = np.random.default_rng(seed)
    names = list(COMPONENTS)
    out = []
    for j in range(count):
        lo, hi = COMPONENTS[names[j % 2]]
        out.append(point(rng.uniform(lo, hi)))
    return out


@dataclass(frozen=True)
class FourierSection:
    """The section ``tau -> e^{2 pi i (n + s) tau}`` of ``L_w`` with ``w = e^{2 pi i s}``."""

    n: int
    s: float

    def __call__(self, tau):
        return np.exp(2j * np.pi * (self.n + self.s) * np.asarray(tau))

    @property
    def holonomy(self) -> complex:
        return complex(self(1.0) / self(0.0))

    def eigenvalue(self, samples: int = 64, h: float = 1e-4) -> float:
        """``D f / f`` for ``D = (1 / 2 pi i) d/dtau``, by central differences."""
        tau = np.linspace(0.1, 0.9, samples)
        df = (self(tau + h) - self(tau - h)) / (2 * h)
        ratio = df / (2j * np.pi * self(tau))
        return float(np.mean(ratio.real))


def l1_bundle() -> EndCocycle:
    t_a = transition_exact(point(sum(COMPONENTS["A"]) / 2))
    t_b = transition_exact(point(sum(COMPONENTS["B"]) / 2))
    return EndCocycle(BaseComplex.CIRCLE, (t_a, t_b),
                      {"printed_labels": dict(PRINTED_LABELS)})


def l2_torus_bundle() -> EndCocycle:
    """Product cover of the torus; the exponent of a factor is 1 on component B."""
    pairs = [(0, 0), (0, 1), (1, 0), (1, 1)]
    return EndCocycle(BaseComplex.TORUS, tuple(TorusTransition(*p) for p in pairs))
