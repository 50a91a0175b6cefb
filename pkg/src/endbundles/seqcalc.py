"""Two-sided eventually periodic sequences and their coinvariant classes.

An :class:`EPSeq` is described by a left cycle repeated towards -infinity,
a finite core starting at ``core_offset`` and a right cycle repeated towards
+infinity.  Classes in the quotient of bounded integer sequences by the
image of ``1 - S`` are recorded by the pair of tail means.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import accumulate
from typing import Any, Callable, Sequence

from .errors import NotPeriodic, NotTrivial


def _minimal_cycle(cycle: tuple) -> tuple:
    n = len(cycle)
    for p in range(1, n + 1):
        if n % p == 0 and cycle == cycle[:p] * (n // p):
            return cycle[:p]
    return cycle


def _rotate(cycle: tuple, k: int) -> tuple:
    k %= len(cycle)
    return cycle[k:] + cycle[:k]


@dataclass(frozen=True, eq=False)
class EPSeq:
    """Eventually periodic sequence ``i -> a_i`` on the integers.

    For ``i < core_offset`` the value is ``left[(i - core_offset) % len(left)]``,
    so ``a[core_offset - 1] == left[-1]``.  For ``i >= end`` it is
    ``right[(i - end) % len(right)]`` with ``end = core_offset + len(core)``.

    Equality is observational (same value at every integer).
    """

    left: tuple
    core: tuple
    core_offset: int
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "core", tuple(self.core))
        object.__setattr__(self, "right", tuple(self.right))
        object.__setattr__(self, "core_offset", int(self.core_offset))
        if not self.left or not self.right:
            raise ValueError("left and right cycles must be nonempty")

    # construction helpers
    @classmethod
    def constant(cls, c) -> EPSeq:
        return cls((c,), (), 0, (c,))

    @classmethod
    def periodic(cls, pattern: Sequence, anchor: int = 0) -> EPSeq:
        """Two-sided periodic sequence with ``a[anchor + k] = pattern[k]``."""
        return cls(tuple(pattern), (), anchor, tuple(pattern))

    @classmethod
    def finite(cls, values: Sequence, offset: int = 0, zero=0) -> EPSeq:
        return cls((zero,), tuple(values), offset, (zero,))

    @classmethod
    def delta(cls, m: int = 0, value=1) -> EPSeq:
        return cls.finite([value], m, zero=value * 0)

    @classmethod
    def step(cls, m: int) -> EPSeq:
        """1 for ``i <= m`` and 0 for ``i > m``."""
        return cls((1,), (), m + 1, (0,))

    @classmethod
    def half_half(cls, left=1, right=-1, boundary: int = 0) -> EPSeq:
        """``left`` for ``i < boundary`` and ``right`` from ``boundary`` on."""
        return cls((left,), (), boundary, (right,))

    # evaluation
    @property
    def end(self) -> int:
        return self.core_offset + len(self.core)

    def __call__(self, i: int):
        k = i - self.core_offset
        if k < 0:
            return self.left[k % len(self.left)]
        if k < len(self.core):
            return self.core[k]
        return self.right[(k - len(self.core)) % len(self.right)]

    def window(self, lo: int, hi: int) -> list:
        return [self(i) for i in range(lo, hi)]

    @property
    def period(self) -> int:
        """lcm of the two cycle lengths."""
        return math.lcm(len(self.left), len(self.right))

    # structure
    @cached_property
    def canonical(self) -> EPSeq:
        left = _minimal_cycle(self.left)
        right = _minimal_cycle(self.right)
        core = list(self.core)
        off = self.core_offset
        while True:
            if core:
                if core[0] != left[0]:
                    break
                core.pop(0)
                left = _rotate(left, 1)
                off += 1
            else:
                if left == right:
                    # globally periodic: pin the anchor to 0
                    pattern = _rotate(left, -off)
                    return EPSeq(pattern, (), 0, pattern)
                if right[0] != left[0]:
                    break
                left = _rotate(left, 1)
                right = _rotate(right, 1)
                off += 1
        while core and core[-1] == right[-1]:
            core.pop()
            right = _rotate(right, -1)
        return EPSeq(left, tuple(core), off, right)

    def is_two_sided_periodic(self) -> bool:
        c = self.canonical
        return not c.core and c.left == c.right

    def __eq__(self, other):
        if not isinstance(other, EPSeq):
            return NotImplemented
        a, b = self.canonical, other.canonical
        return (a.left, a.core, a.core_offset, a.right) == (
            b.left, b.core, b.core_offset, b.right)

    def __hash__(self):
        c = self.canonical
        return hash((c.left, c.core, c.core_offset, c.right))

    def __repr__(self):
        return (f"EPSeq(left={list(self.left)}, core={list(self.core)}, "
                f"core_offset={self.core_offset}, right={list(self.right)})")

    # pointwise algebra
    def map(self, f: Callable[[Any], Any]) -> EPSeq:
        return EPSeq(tuple(map(f, self.left)), tuple(map(f, self.core)),
                     self.core_offset, tuple(map(f, self.right)))

    def combine(self, other: EPSeq, f: Callable[[Any, Any], Any]) -> EPSeq:
        lo = min(self.core_offset, other.core_offset)
        hi = max(self.end, other.end)
        n = math.lcm(len(self.left), len(other.left))
        m = math.lcm(len(self.right), len(other.right))

        def vals(a, b):
            return tuple(f(self(i), other(i)) for i in range(a, b))

        return EPSeq(vals(lo - n, lo), vals(lo, hi), lo, vals(hi, hi + m)).canonical

    def __add__(self, other):
        return self.combine(other, lambda x, y: x + y)

    def __sub__(self, other):
        return self.combine(other, lambda x, y: x - y)

    def __mul__(self, other):
        if isinstance(other, EPSeq):
            return self.combine(other, lambda x, y: x * y)
        return self.map(lambda x: x * other)

    __rmul__ = __mul__

    def __neg__(self):
        return self.map(lambda x: -x)

    def shift(self, k: int = 1) -> EPSeq:
        """``(S^k a)_i = a_{i+k}``."""
        return EPSeq(self.left, self.core, self.core_offset - k, self.right)

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.left + self.core + self.right)

    def max_abs(self):
        return max(abs(v) for v in self.left + self.core + self.right)

    # JSON
    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, complex):
                return [v.real, v.imag]
            return v
        return {"left": [enc(v) for v in self.left],
                "core": [enc(v) for v in self.core],
                "core_offset": self.core_offset,
                "right": [enc(v) for v in self.right]}

    @classmethod
    def from_json(cls, data: dict) -> EPSeq:
        def dec(v):
            if isinstance(v, (list, tuple)):
                return complex(v[0], v[1])
            return v
        return cls(tuple(dec(v) for v in data["left"]),
                   tuple(dec(v) for v in data.get("core", ())),
                   int(data.get("core_offset", 0)),
                   tuple(dec(v) for v in data["right"]))


@dataclass(frozen=True)
class CoinvClass:
    """Class of an eventually periodic sequence: (left tail mean, right tail mean)."""

    mu_minus: Fraction
    mu_plus: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mu_minus", Fraction(self.mu_minus))
        object.__setattr__(self, "mu_plus", Fraction(self.mu_plus))

    def __add__(self, other):
        return CoinvClass(self.mu_minus + other.mu_minus, self.mu_plus + other.mu_plus)

    def __neg__(self):
        return CoinvClass(-self.mu_minus, -self.mu_plus)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self) -> bool:
        return self.mu_minus == 0 and self.mu_plus == 0

    def to_json(self) -> dict:
        return {"mu_minus": str(self.mu_minus), "mu_plus": str(self.mu_plus)}


ZERO_CLASS = CoinvClass(0, 0)


@dataclass(frozen=True)
class Functional:
    """Linear functional ``x -> c_minus * mu_minus(x) + c_plus * mu_plus(x)``."""

    c_minus: Fraction
    c_plus: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c_minus", Fraction(self.c_minus))
        object.__setattr__(self, "c_plus", Fraction(self.c_plus))

    def __add__(self, other):
        return Functional(self.c_minus + other.c_minus, self.c_plus + other.c_plus)

    def __call__(self, x: CoinvClass) -> Fraction:
        return pair(self, x)

    @classmethod
    def parse(cls, text: str) -> Functional:
        cm, cp = text.split(",")
        return cls(Fraction(cm.strip()), Fraction(cp.strip()))

    def to_json(self) -> list:
        return [str(self.c_minus), str(self.c_plus)]


# dual of [(..., 1, 1, 1, ...)] and of [(..., 1, 1, -1, -1, ...)]
PERIODIC_DUAL = Functional(Fraction(1, 2), Fraction(1, 2))
HALF_HALF_DUAL = Functional(Fraction(1, 2), Fraction(-1, 2))


def eval_seq(seq: EPSeq, i: int):
    return seq(i)


def shift(seq: EPSeq, k: int = 1) -> EPSeq:
    return seq.shift(k)


def delta(seq: EPSeq) -> EPSeq:
    """``(1 - S) a``, i.e. ``i -> a_i - a_{i+1}``."""
    return seq - seq.shift(1)


def coinv_class(seq: EPSeq) -> CoinvClass:
    return CoinvClass(Fraction(sum(seq.left), len(seq.left)),
                      Fraction(sum(seq.right), len(seq.right)))


def is_trivial(seq: EPSeq) -> bool:
    return coinv_class(seq).is_zero()


def coinv_equal(a: EPSeq, b: EPSeq) -> bool:
    return is_trivial(a - b)


def certificate_trivial(seq: EPSeq) -> EPSeq:
    """Bounded integer ``b`` with ``delta(b) == seq``.

    Built from partial sums anchored at ``core_offset`` and shifted so the
    right cycle of ``b`` has minimum 0.
    """
    if not is_trivial(seq):
        raise NotTrivial(f"class {coinv_class(seq)} is nonzero")
    n, m = len(seq.left), len(seq.right)
    off, end = seq.core_offset, seq.end
    # b_{i+1} = b_i - a_i with b_off = 0
    fwd = [0, *accumulate(-seq(i) for i in range(off, end + m))]
    back = list(accumulate(seq(i) for i in range(off - 1, off - n - 1, -1)))
    left = back[::-1]
    core = fwd[: end - off]
    right = fwd[end - off: end - off + m]
    c = min(right)
    b = EPSeq(tuple(v - c for v in left), tuple(v - c for v in core), off,
              tuple(v - c for v in right))
    return b.canonical


def brute_force_is_trivial(seq: EPSeq, window: int, bound: int) -> bool:
    """Independent triviality check by direct search for a bounded preimage.

    For each start value ``b_0`` in ``[-bound, bound]`` the recurrence
    ``b_{i+1} = b_i - a_i`` is run over ``[-window, window]``; a candidate is
    accepted when it stays within ``bound`` and repeats with the tail periods
    at both ends of the window.  Only point evaluations of ``seq`` are used.
    """
    p_left, p_right = len(seq.left), len(seq.right)
    if window < 4 * max(p_left, p_right):
        raise ValueError("window too small for the tail periods")
    # the recurrence from b_0 = 0; every other start value adds a constant
    rel = [0] * (2 * window + 1)
    mid = window
    for i in range(0, window):
        rel[mid + i + 1] = rel[mid + i] - seq(i)
    for i in range(0, -window, -1):
        rel[mid + i - 1] = rel[mid + i] + seq(i - 1)
    right_ok = all(rel[mid + i] == rel[mid + i + p_right]
                   for i in range(window - 2 * p_right, window - p_right + 1))
    left_ok = all(rel[mid + i] == rel[mid + i + p_left]
                  for i in range(-window, -window + p_left + 1))
    if not (right_ok and left_ok):
        return False
    hi, lo = max(rel), min(rel)
    return any(hi + b0 <= bound and lo + b0 >= -bound
               for b0 in range(-bound, bound + 1))


def iota_rep(q, anchoring: int = 0) -> EPSeq:
    """Two-sided periodic representative of ``q`` in the coinvariants."""
    q = Fraction(q)
    p, n = q.numerator, q.denominator
    pattern = tuple(-((-(k + 1) * p) // n) + ((-k * p) // n) for k in range(n))
    return EPSeq.periodic(pattern, anchoring)


def pair(f: Functional, x: CoinvClass) -> Fraction:
    return f.c_minus * x.mu_minus + f.c_plus * x.mu_plus


def cesaro(seq: EPSeq) -> Fraction:
    """Mean over one period of a two-sided periodic sequence."""
    if not seq.is_two_sided_periodic():
        raise NotPeriodic("sequence is not two-sided periodic")
    c = seq.canonical
    return Fraction(sum(c.left), len(c.left))


def cesaro_partial(seq: EPSeq, n: int) -> Fraction:
    """``(2n+1)^{-1} sum_{i=-n}^{n} a_i``."""
    return Fraction(sum(seq.window(-n, n + 1)), 2 * n + 1)


def parse_seq(text: str) -> EPSeq:
    """Parse a JSON sequence spec or one of the shorthands.

    Shorthands: ``const:c``, ``delta:m``, ``step:m``, ``halfhalf``,
    ``alt`` (..., 1, -1, 1, -1, ...), ``iota:p/q``, ``period:a,b,c``.
    """
    import json

    text = text.strip()
    if text.startswith("{"):
        return EPSeq.from_json(json.loads(text))
    name, _, arg = text.partition(":")
    if name == "const":
        return EPSeq.constant(int(arg))
    if name == "delta":
        return EPSeq.delta(int(arg or 0))
    if name == "step":
        return EPSeq.step(int(arg or 0))
    if name == "halfhalf":
        return EPSeq.half_half()
    if name == "alt":
        return EPSeq.periodic((1, -1))
    if name == "iota":
        return iota_rep(Fraction(arg))
    if name == "period":
        return EPSeq.periodic(tuple(int(v) for v in arg.split(",")))
    raise ValueError(f"unknown sequence spec {text!r}")
