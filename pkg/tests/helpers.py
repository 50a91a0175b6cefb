"""Random generators and independent oracles shared by the test modules."""
from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.special import eval_hermite

from endbundles.bandop import EPBandOp, block_op, compose, diag_op, shift_op
from endbundles.seqcalc import EPSeq


def random_ep(rng, lo=-2, hi=2, max_cycle=3, max_core=3, offset_range=3) -> EPSeq:
    def word(n):
        return tuple(int(v) for v in rng.integers(lo, hi + 1, size=n))
    return EPSeq(word(rng.integers(1, max_cycle + 1)), word(rng.integers(0, max_core + 1)),
                 int(rng.integers(-offset_range, offset_range + 1)),
                 word(rng.integers(1, max_cycle + 1)))


def unrolled(seq: EPSeq, lo: int, hi: int) -> list:
    """Values on ``[lo, hi)`` by walking outwards from the core, no modular arithmetic."""
    vals = {}
    for j, v in enumerate(seq.core):
        vals[seq.core_offset + j] = v
    i, k = seq.end, 0
    while i < hi:
        vals[i] = seq.right[k]
        i, k = i + 1, (k + 1) % len(seq.right)
    i, k = seq.core_offset - 1, len(seq.left) - 1
    while i >= lo:
        vals[i] = seq.left[k]
        i, k = i - 1, (k - 1) % len(seq.left)
    return [vals[i] for i in range(lo, hi)]


def small_corpus():
    """Every sequence with cycles of length <= 3, entries in [-2, 2], core <= 2 at offset 0."""
    vals = range(-2, 3)
    cycles = [c for n in (1, 2, 3) for c in itertools.product(vals, repeat=n)]
    cores = [c for n in (0, 1, 2) for c in itertools.product(vals, repeat=n)]
    for left in cycles:
        for right in cycles:
            for core in cores:
                yield EPSeq(left, core, 0, right)


def random_unitary(rng, n=2) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_phase_seq(rng, max_cycle=3, max_core=3) -> EPSeq:
    def ph(n):
        return tuple(complex(np.exp(2j * np.pi * rng.random())) for _ in range(n))
    return EPSeq(ph(rng.integers(1, max_cycle + 1)), ph(rng.integers(0, max_core + 1)),
                 int(rng.integers(-3, 4)), ph(rng.integers(1, max_cycle + 1)))


def random_factor(rng) -> tuple[EPBandOp, int]:
    """A random band unitary and its known index."""
    kind = rng.integers(0, 3)
    if kind == 0:
        k = int(rng.integers(-3, 4))
        return shift_op(k), k
    if kind == 1:
        return diag_op(random_phase_seq(rng)), 0
    return block_op(random_unitary(rng), random_unitary(rng), int(rng.integers(-3, 4))), 0


def random_unitary_op(rng, max_factors=3) -> tuple[EPBandOp, int]:
    op, idx = random_factor(rng)
    for _ in range(int(rng.integers(0, max_factors))):
        f, k = random_factor(rng)
        op, idx = compose(op, f), idx + k
    return op, idx


def op_corpus(n=200, seed=7) -> list[tuple[EPBandOp, int]]:
    rng = np.random.default_rng(seed)
    return [random_unitary_op(rng) for _ in range(n)]


def hermite_function(k: int, a: float, x: np.ndarray) -> np.ndarray:
    """Normalized Hermite function from the closed form with physicists' polynomials."""
    c = (a / math.pi) ** 0.25 / math.sqrt(2.0 ** k * math.factorial(k))
    return c * eval_hermite(k, math.sqrt(a) * x) * np.exp(-a * x * x / 2)


def phi_plus_display(U: np.ndarray) -> np.ndarray:
    """Entries written with ``r = U[0,0]`` and ``z = sqrt(1 - r^2) e^{i theta}``."""
    r, th = U[0, 0].real, np.angle(U[0, 1])
    return np.array([[math.sqrt(1 + r), math.sqrt(1 - r) * np.exp(1j * th)],
                     [math.sqrt(1 - r) * np.exp(-1j * th), -math.sqrt(1 + r)]]) / math.sqrt(2)


def phi_minus_display(U: np.ndarray) -> np.ndarray:
    """Same shape for the lower hemisphere, ``r = U[0,0] <= 0`` taken with its sign."""
    r, th = U[0, 0].real, np.angle(U[0, 1])
    return np.array([[-math.sqrt(1 - r), math.sqrt(1 + r) * np.exp(1j * th)],
                     [math.sqrt(1 + r) * np.exp(-1j * th), math.sqrt(1 - r)]]) / math.sqrt(2)
