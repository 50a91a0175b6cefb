"""Finite-propagation operators on l^2(Z) with eventually periodic diagonals.

Convention: ``U_{i, i+d} = diagonals[d](i)``.  The shift ``S`` has
``S_{i, i+1} = 1`` so that ``(S a)_i = a_{i+1}`` and ``S e_k = e_{k-1}``;
its Fredholm index is +1.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping

import numpy as np

from .errors import NotInteger, NotUnitary, WindowTooNarrow
from .seqcalc import CoinvClass, EPSeq, coinv_class

UNITARITY_TOL = 1e-9
INTEGER_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class EPBandOp:
    band: int
    diagonals: Mapping[int, EPSeq] = field(default_factory=dict)

    def __post_init__(self):
        diags = {int(d): s for d, s in self.diagonals.items() if not s.is_zero()}
        if any(abs(d) > self.band for d in diags):
            raise ValueError("diagonal outside the declared band")
        object.__setattr__(self, "diagonals", diags)

    def entry(self, i: int, j: int) -> complex:
        seq = self.diagonals.get(j - i)
        return complex(seq(i)) if seq is not None else 0j

    def diagonal(self, d: int) -> EPSeq:
        return self.diagonals.get(d, EPSeq.constant(0j))

    @property
    def core_span(self) -> tuple[int, int]:
        if not self.diagonals:
            return 0, 0
        lo = min(s.core_offset for s in self.diagonals.values())
        hi = max(s.end for s in self.diagonals.values())
        return min(lo, 0), max(hi, 0)

    @property
    def cycle_lcm(self) -> int:
        return reduce(math.lcm, (s.period for s in self.diagonals.values()), 1)

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Matrix block with rows and columns ``lo .. hi-1``."""
        n = hi - lo
        out = np.zeros((n, n), dtype=complex)
        for d, seq in self.diagonals.items():
            rows = np.arange(max(0, -d), min(n, n - d))
            if rows.size:
                vals = seq.window(lo + rows[0], lo + rows[-1] + 1)
                out[rows, rows + d] = np.asarray(vals, dtype=complex)
        return out

    def __matmul__(self, other):
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, EPBandOp):
            return NotImplemented
        return self.diagonals == other.diagonals

    def __hash__(self):
        return hash(frozenset(self.diagonals.items()))

    def __repr__(self):
        return f"EPBandOp(band={self.band}, diagonals={self.diagonals!r})"

    def to_json(self) -> dict:
        return {"band": self.band,
                "diagonals": {str(d): _complex_seq(s).to_json()
                              for d, s in sorted(self.diagonals.items())}}

    @classmethod
    def from_json(cls, data: dict) -> EPBandOp:
        diags = {int(d): _complex_seq(EPSeq.from_json(s))
                 for d, s in data.get("diagonals", {}).items()}
        return cls(int(data["band"]), diags)


def _complex_seq(seq: EPSeq) -> EPSeq:
    return seq.map(complex)


def identity_op() -> EPBandOp:
    return EPBandOp(0, {0: EPSeq.constant(1 + 0j)})


def shift_op(k: int = 1) -> EPBandOp:
    """``S^k``: ones on diagonal ``k``."""
    return EPBandOp(abs(k), {k: EPSeq.constant(1 + 0j)})


def diag_op(seq: EPSeq) -> EPBandOp:
    return EPBandOp(0, {0: _complex_seq(seq)})


def block_op(left_block, right_block, boundary: int = 0) -> EPBandOp:
    """Pairwise 2x2 blocks on ``(boundary + 2k, boundary + 2k + 1)``.

    Pairs left of ``boundary`` use ``left_block``, the others ``right_block``.
    """
    lb = np.asarray(left_block, dtype=complex)
    rb = np.asarray(right_block, dtype=complex)

    def seq(lv, rv):
        return EPSeq(tuple(complex(v) for v in lv), (), boundary,
                     tuple(complex(v) for v in rv))

    diags = {
        0: seq((lb[0, 0], lb[1, 1]), (rb[0, 0], rb[1, 1])),
        1: seq((lb[0, 1], 0), (rb[0, 1], 0)),
        -1: seq((0, lb[1, 0]), (0, rb[1, 0])),
    }
    return EPBandOp(1, diags)


def matrix_entry(op: EPBandOp, i: int, j: int) -> complex:
    return op.entry(i, j)


def propagation(op: EPBandOp, tol: float = 0.0) -> int:
    """Largest ``|d|`` whose diagonal has an entry above ``tol`` in modulus."""
    ds = [abs(d) for d, s in op.diagonals.items() if s.max_abs() > tol]
    return max(ds, default=0)


def compose(u: EPBandOp, v: EPBandOp) -> EPBandOp:
    """``(UV)_{i,i+d} = sum_e U_{i,i+e} V_{i+e,i+d}``."""
    out: dict[int, EPSeq] = {}
    for e, ue in u.diagonals.items():
        for f, vf in v.diagonals.items():
            term = ue * vf.shift(e)
            d = e + f
            out[d] = out[d] + term if d in out else term
    out = {d: s for d, s in out.items() if not s.is_zero()}
    band = max((abs(d) for d in out), default=0)
    return EPBandOp(band, out)


def adjoint(op: EPBandOp) -> EPBandOp:
    """``(U^*)_{i,i-d} = conj(U_{i-d,i})``."""
    return EPBandOp(op.band, {-d: s.shift(-d).map(lambda x: complex(x).conjugate())
                              for d, s in op.diagonals.items()})


def power(op: EPBandOp, n: int) -> EPBandOp:
    if n < 0:
        return power(adjoint(op), -n)
    out = identity_op()
    for _ in range(n):
        out = compose(out, op)
    return out


def apply_window(op: EPBandOp, start: int, x) -> tuple[int, np.ndarray]:
    """Apply ``op`` to coefficients ``x`` sitting at indices ``start, start+1, ...``.

    Returns ``(start + band, y)`` where ``y`` holds ``(U x)_i`` for the
    interior indices, the ones whose whole band lies inside the window.
    """
    x = np.asarray(x, dtype=complex)
    n, L = x.size, op.band
    if n <= 2 * L:
        raise WindowTooNarrow(f"window of {n} cannot absorb band {L}")
    block = op.dense(start, start + n)
    return start + L, (block @ x)[L:n - L]


def unitarity_defect(op: EPBandOp, window: int, margin: int = 0) -> float:
    """Max entry of ``|U*U - 1|`` and ``|UU* - 1|`` on the checked interior.

    The dense block covers the cores plus ``ext`` on each side; ``ext`` is at
    least ``window`` and long enough to contain two full tail periods.
    """
    L = op.band
    lo, hi = op.core_span
    ext = max(window, 2 * (op.cycle_lcm + L + margin))
    a, b = lo - ext, hi + ext
    m = op.dense(a, b)
    cut = L + margin
    inner = slice(cut, (b - a) - cut)
    eye = np.eye(b - a)[inner, inner]
    d1 = np.abs((m.conj().T @ m)[inner, inner] - eye).max()
    d2 = np.abs((m @ m.conj().T)[inner, inner] - eye).max()
    return float(max(d1, d2))


def index_window(op: EPBandOp) -> int:
    return 8 * op.band + 32


def corner_sum(op: EPBandOp) -> float:
    """``sum_{i<0<=j} |U_ij|^2 - sum_{j<0<=i} |U_ij|^2`` (finitely many terms)."""
    L = op.band
    pos = neg = 0.0
    for i in range(-L, 0):
        for j in range(0, i + L + 1):
            pos += abs(op.entry(i, j)) ** 2
    for j in range(-L, 0):
        for i in range(0, j + L + 1):
            neg += abs(op.entry(i, j)) ** 2
    return pos - neg


def fredholm_index(op: EPBandOp) -> int:
    """Index of the compression of ``op`` to ``l^2(Z_{>=0})``; ``ind(S) = +1``."""
    defect = unitarity_defect(op, index_window(op), op.band)
    if defect >= UNITARITY_TOL:
        raise NotUnitary(f"unitarity defect {defect:.3g}")
    value = corner_sum(op)
    k = round(value)
    if abs(value - k) > INTEGER_TOL:
        raise NotInteger(f"corner sum {value!r} is not an integer")
    return int(k)


def _localized_null_count(m: np.ndarray, tol: float) -> int:
    n = m.shape[1]
    _, s, vh = np.linalg.svd(m)
    z = vh[s < tol].conj().T
    if z.shape[1] == 0:
        return 0
    first = z[: n // 2]
    w = np.linalg.eigvalsh(first.conj().T @ first)
    return int(np.sum(w > 0.5))


def index_oracle(op: EPBandOp, size: int | None = None, tol: float = 1e-8) -> int:
    """``dim ker - dim coker`` of the truncated compression ``P U P``.

    The window ``[0, size)`` also creates spurious null vectors at its far
    edge; only null vectors concentrated in the first half are counted.
    """
    n = size or index_window(op)
    t = op.dense(0, n)
    return _localized_null_count(t, tol) - _localized_null_count(t.conj().T, tol)


def is_periodic(op: EPBandOp, n: int) -> bool:
    """``S^n U S^{-n} == U``."""
    if n < 1:
        raise ValueError("n must be positive")
    return all(s.shift(n) == s for s in op.diagonals.values())


def minimal_period(op: EPBandOp, limit: int = 16) -> int | None:
    return next((n for n in range(1, limit + 1) if is_periodic(op, n)), None)


@dataclass(frozen=True)
class MonomialLoop:
    """The loop ``z -> phase * S^shift_power * diag(z^{exponents_i})``."""

    shift_power: int
    exponents: EPSeq
    phase: complex = 1 + 0j

    def __post_init__(self):
        object.__setattr__(self, "phase", complex(self.phase))
        if abs(abs(self.phase) - 1) > 1e-12:
            raise ValueError("phase must have modulus one")

    def __call__(self, z: complex) -> EPBandOp:
        return loop_eval(self, z)

    def to_json(self) -> dict:
        return {"shift": self.shift_power, "exponents": self.exponents.to_json(),
                "phase": [self.phase.real, self.phase.imag]}

    @classmethod
    def from_json(cls, data: dict) -> MonomialLoop:
        ph = data.get("phase", [1.0, 0.0])
        return cls(int(data.get("shift", 0)), EPSeq.from_json(data["exponents"]),
                   complex(ph[0], ph[1]))


def loop_eval(loop: MonomialLoop, z: complex) -> EPBandOp:
    """``U_{i, i+s} = phase * z^{a_{i+s}}``."""
    z = complex(z)
    s = loop.shift_power
    values = loop.exponents.shift(s).map(lambda a: loop.phase * z ** a)
    return EPBandOp(abs(s), {s: values})


def loop_product(l1: MonomialLoop, l2: MonomialLoop) -> MonomialLoop:
    """Pointwise product, using ``diag(z^a) S^t = S^t diag(z^{S^{-t} a})``."""
    exps = l1.exponents.shift(-l2.shift_power) + l2.exponents
    return MonomialLoop(l1.shift_power + l2.shift_power, exps, l1.phase * l2.phase)


def loop_inverse(loop: MonomialLoop) -> MonomialLoop:
    return MonomialLoop(-loop.shift_power, (-loop.exponents).shift(loop.shift_power),
                        loop.phase.conjugate())


def loop_class(loop: MonomialLoop) -> tuple[int, CoinvClass]:
    return loop.shift_power, coinv_class(loop.exponents)


@dataclass(frozen=True)
class EPExponents:
    """Eventually periodic winding exponents of a family of line bundles."""

    seq: EPSeq


@dataclass(frozen=True)
class LinearExponents:
    """Exponents ``i -> slope * i + intercept`` (the Hopf tensor powers for slope 1)."""

    slope: int
    intercept: int = 0

    def __call__(self, i: int) -> int:
        return self.slope * i + self.intercept


ExponentSpec = EPExponents | LinearExponents


def parse_exponents(text: str) -> ExponentSpec:
    """``linear:slope[,intercept]`` or any sequence spec accepted by ``parse_seq``."""
    from .seqcalc import parse_seq

    if text.startswith("linear:"):
        parts = [int(v) for v in text[len("linear:"):].split(",")]
        return LinearExponents(*parts)
    if text.startswith("ep:"):
        text = text[3:]
    return EPExponents(parse_seq(text))


def equicontinuous_family_check(spec: ExponentSpec) -> bool:
    """Whether ``{z -> z^{a_i}}`` is equicontinuous, i.e. the exponents are bounded."""
    if isinstance(spec, EPExponents):
        return True
    return spec.slope == 0


def continuity_modulus(spec: ExponentSpec, delta: float, radius: int) -> float:
    """``max_{|i| <= radius} |e^{i a_i delta} - 1|``, the sampled modulus of continuity."""
    a = spec.seq if isinstance(spec, EPExponents) else spec
    return max(abs(cmath.exp(1j * a(i) * delta) - 1) for i in range(-radius, radius + 1))


def parse_op(text: str) -> EPBandOp:
    """``identity``, ``shift:k``, ``diag:<seq spec>`` or operator JSON."""
    import json
    from .seqcalc import parse_seq

    text = text.strip()
    if text.startswith("{"):
        return EPBandOp.from_json(json.loads(text))
    if text == "identity":
        return identity_op()
    if text.startswith("shift:"):
        return shift_op(int(text[len("shift:"):]))
    if text.startswith("diag:"):
        return diag_op(parse_seq(text[len("diag:"):]))
    raise ValueError(f"unknown operator spec {text!r}")
