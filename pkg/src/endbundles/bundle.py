"""Hilbert bundles with ends presented by transition data over fixed bases.

Three base complexes are supported:

* ``circle``: two arcs whose overlap has components ``A`` and ``B``; the
  cocycle stores one constant band unitary per component.  The jump
  transition is ``t_B t_A^{-1}`` and ``beta1`` is its index.
* ``sphere``: two discs glued along the equator, which is traversed as the
  boundary of the upper disc; the cocycle stores one monomial loop.
* ``torus``: products of the two-arc cover; the four overlap types store a
  pair of winding exponents each.  No invariants are extracted here.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

import numpy as np

from .bandop import (EPBandOp, EPExponents, ExponentSpec, LinearExponents,
                     MonomialLoop, adjoint, compose, equicontinuous_family_check,
                     fredholm_index, identity_op, index_window, is_periodic,
                     loop_class, loop_eval, loop_inverse, power, shift_op,
                     unitarity_defect)
from .errors import (NotPeriodicEnd, UnboundedExponents, UnsupportedInvariant,
                     WrongBase)
from .seqcalc import PERIODIC_DUAL, EPSeq, Functional, pair

CHECK_TOL = 1e-9
MAX_END_PERIOD = 16


class BaseComplex(Enum):
    CIRCLE = "circle"
    SPHERE = "sphere"
    TORUS = "torus"

    @property
    def overlaps(self) -> tuple[str, ...]:
        return {
            BaseComplex.CIRCLE: ("A", "B"),
            BaseComplex.SPHERE: ("equator",),
            BaseComplex.TORUS: ("AA", "AB", "BA", "BB"),
        }[self]


@dataclass(frozen=True)
class TorusTransition:
    """``t -> diag(e^{-2 pi i e1 t}, e^{-2 pi i e2 t})`` on one overlap type.

    On the Fourier side each factor with exponent 1 is a unit shift in the
    corresponding coordinate of ``Z^2``.
    """

    e1: int
    e2: int

    def matrix(self, t: float) -> np.ndarray:
        return np.diag([cmath.exp(-2j * math.pi * self.e1 * t),
                        cmath.exp(-2j * math.pi * self.e2 * t)])

    def inverse(self) -> TorusTransition:
        return TorusTransition(-self.e1, -self.e2)

    @property
    def lattice_shift(self) -> tuple[int, int]:
        return self.e1, self.e2


@dataclass(frozen=True)
class EndCocycle:
    base: BaseComplex
    transitions: tuple
    notes: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(self.transitions))
        want = len(self.base.overlaps)
        if len(self.transitions) != want:
            raise ValueError(f"{self.base.value} cocycle needs {want} transitions")

    @property
    def jump(self) -> EPBandOp:
        _require(self, BaseComplex.CIRCLE)
        t_a, t_b = self.transitions
        return compose(t_b, adjoint(t_a))

    @property
    def equator(self) -> MonomialLoop:
        _require(self, BaseComplex.SPHERE)
        return self.transitions[0]

    def to_json(self) -> dict:
        return {"base": self.base.value,
                "transitions": [_transition_json(t) for t in self.transitions]}

    @classmethod
    def from_json(cls, data: dict) -> EndCocycle:
        base = BaseComplex(data["base"])
        raw = data["transitions"]
        if base is BaseComplex.CIRCLE:
            ts = [EPBandOp.from_json(t) for t in raw]
        elif base is BaseComplex.SPHERE:
            ts = [MonomialLoop.from_json(t) for t in raw]
        else:
            ts = [TorusTransition(*t["exponents"]) for t in raw]
        return cls(base, tuple(ts))


def _transition_json(t) -> dict:
    if isinstance(t, TorusTransition):
        return {"exponents": [t.e1, t.e2]}
    return t.to_json()


def _require(c: EndCocycle, base: BaseComplex) -> None:
    if c.base is BaseComplex.TORUS and base is not BaseComplex.TORUS:
        raise UnsupportedInvariant(
            "no invariants are extracted from torus cocycles")
    if c.base is not base:
        raise WrongBase(f"expected a {base.value} cocycle, got {c.base.value}")


def _near_identity(op: EPBandOp, tol: float) -> bool:
    lo, hi = op.core_span
    ext = 2 * (op.cycle_lcm + op.band) + 4
    m = op.dense(lo - ext, hi + ext)
    return bool(np.abs(m - np.eye(m.shape[0])).max() < tol)


def cocycle_check(c: EndCocycle, samples: int = 64) -> bool:
    """Unitarity of every transition and ``g_ji g_ij = 1`` at sampled points.

    Two-patch covers have no triple overlaps, so nothing else is required.
    """
    if c.base is BaseComplex.CIRCLE:
        for t in c.transitions:
            if unitarity_defect(t, index_window(t), t.band) >= CHECK_TOL:
                return False
            if not _near_identity(compose(adjoint(t), t), CHECK_TOL):
                return False
        return True
    points = [k / samples for k in range(samples)]
    if c.base is BaseComplex.SPHERE:
        loop = c.equator
        inv = loop_inverse(loop)
        for t in points:
            z = cmath.exp(2j * math.pi * t)
            u = loop_eval(loop, z)
            if unitarity_defect(u, index_window(u), u.band) >= CHECK_TOL:
                return False
            if not _near_identity(compose(loop_eval(inv, z), u), CHECK_TOL):
                return False
        return True
    eye = np.eye(2)
    for tr in c.transitions:
        for t in points:
            m = tr.matrix(t)
            if np.abs(m.conj().T @ m - eye).max() >= CHECK_TOL:
                return False
            if np.abs(tr.inverse().matrix(t) @ m - eye).max() >= CHECK_TOL:
                return False
    return True


def trivial_cocycle(base: BaseComplex = BaseComplex.CIRCLE) -> EndCocycle:
    if base is BaseComplex.CIRCLE:
        return EndCocycle(base, (identity_op(), identity_op()))
    if base is BaseComplex.SPHERE:
        return EndCocycle(base, (MonomialLoop(0, EPSeq.constant(0)),))
    return EndCocycle(base, tuple(TorusTransition(0, 0) for _ in range(4)))


def completed_sum_sphere(spec: ExponentSpec) -> EndCocycle:
    """Completed sum of the line bundles ``H^{a_i}`` over the sphere.

    The equator loop is ``diag(z^{a_i})``.  Exponent families with unbounded
    range are rejected since ``{z^n}`` is then not equicontinuous.
    """
    if isinstance(spec, LinearExponents):
        if not equicontinuous_family_check(spec):
            raise UnboundedExponents(
                f"exponents {spec.slope}*i + {spec.intercept} are unbounded")
        seq = EPSeq.constant(spec.intercept)
    elif isinstance(spec, EPExponents):
        seq = spec.seq
    else:
        seq = spec
    return EndCocycle(BaseComplex.SPHERE, (MonomialLoop(0, seq),))


def alpha1(c: EndCocycle, f: Functional) -> Fraction:
    _require(c, BaseComplex.SPHERE)
    _, cls = loop_class(c.equator)
    return pair(f, cls)


def shift_power_flag(c: EndCocycle) -> bool:
    """True when the equator loop leaves the identity component."""
    return c.base is BaseComplex.SPHERE and c.equator.shift_power != 0


def beta1(c: EndCocycle) -> int:
    _require(c, BaseComplex.CIRCLE)
    return fredholm_index(c.jump)


def end_period(c: EndCocycle, limit: int = MAX_END_PERIOD) -> int | None:
    """Smallest ``n <= limit`` with every transition invariant under ``S^n`` conjugation."""
    if c.base is BaseComplex.TORUS:
        raise UnsupportedInvariant("periodicity of torus ends is not modeled")
    for n in range(1, limit + 1):
        if c.base is BaseComplex.CIRCLE:
            ok = all(is_periodic(t, n) for t in c.transitions)
        else:
            exps = c.equator.exponents
            ok = exps.shift(n) == exps
        if ok:
            return n
    return None


def periodic_end_check(c: EndCocycle) -> bool:
    return end_period(c) is not None


def hat_alpha1(c: EndCocycle) -> Fraction:
    if not periodic_end_check(c):
        raise NotPeriodicEnd("the end is not periodic")
    return alpha1(c, PERIODIC_DUAL)


def hat_beta1(c: EndCocycle) -> int:
    if not periodic_end_check(c):
        raise NotPeriodicEnd("the end is not periodic")
    return beta1(c)


@dataclass(frozen=True)
class Translation:
    k: int

    def __call__(self, i: int) -> int:
        return i + self.k

    def displacement_bound(self) -> int | None:
        return abs(self.k)


@dataclass(frozen=True)
class Negation:
    def __call__(self, i: int) -> int:
        return -i

    def displacement_bound(self) -> int | None:
        # |(-i) - i| = 2|i| is unbounded
        return None


DeckMap = Translation | Negation


def deck_operator(m: DeckMap) -> EPBandOp:
    """Permutation unitary ``e_i -> e_{m(i)}`` of a translation deck map."""
    if not deck_finite_propagation_check(m):
        raise ValueError("deck map has unbounded displacement")
    return shift_op(-m.k)


def deck_finite_propagation_check(m: DeckMap) -> bool:
    return m.displacement_bound() is not None


def pushforward_universal_cover() -> EndCocycle:
    """Pushforward of the trivial line bundle along ``R -> S^1``: ``(1, S)``."""
    return EndCocycle(BaseComplex.CIRCLE, (identity_op(), shift_op(1)))


def transfer_structure() -> EndCocycle:
    """Completed sum of copies of the trivial bundle, permuted by the deck group.

    Going once around the circle moves sheet ``i`` to sheet ``i - 1``.
    """
    return EndCocycle(BaseComplex.CIRCLE,
                      (deck_operator(Translation(0)), deck_operator(Translation(-1))))


def is_permutation_only(op: EPBandOp) -> bool:
    vals = [v for s in op.diagonals.values() for v in s.left + s.core + s.right]
    return all(v in (0, 1) for v in vals)


def pullback_circle(c: EndCocycle, d: int) -> EndCocycle:
    """Invariant-level model of pulling back along a degree ``d`` self-map."""
    _require(c, BaseComplex.CIRCLE)
    return EndCocycle(BaseComplex.CIRCLE, (identity_op(), power(c.jump, d)))


def circle_cocycle(t_a: EPBandOp, t_b: EPBandOp) -> EndCocycle:
    return EndCocycle(BaseComplex.CIRCLE, (t_a, t_b))


def sphere_cocycle(loop: MonomialLoop, **notes) -> EndCocycle:
    return EndCocycle(BaseComplex.SPHERE, (loop,), dict(notes))


def invariants(c: EndCocycle, functional: Functional | None = None) -> dict:
    """Every invariant defined on ``c``, exact values as strings."""
    out: dict = {"base": c.base.value}
    if c.base is BaseComplex.TORUS:
        out["invariants"] = "unsupported"
        return out
    period = end_period(c)
    out["periodic_end"] = period is not None
    if period is not None:
        out["end_period"] = period
    if c.base is BaseComplex.CIRCLE:
        out["beta1"] = beta1(c)
        if period is not None:
            out["hat_beta1"] = out["beta1"]
    else:
        shift, cls = loop_class(c.equator)
        out["component"] = shift
        out["class"] = cls.to_json()
        out["shift_power_flag"] = shift != 0
        if functional is not None:
            out["alpha1"] = _frac(alpha1(c, functional))
        if period is not None:
            out["hat_alpha1"] = _frac(hat_alpha1(c))
    return out


def _frac(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
