"""Harmonic oscillator ladders on a uniform grid and the bundle over UH(2).

Derivatives use fourth-order central differences with zero extension past
the ends of the grid, so every field entering a computation must have
decayed below ``BOUNDARY_TOL`` at the boundary.

The equator transition is computed from frames:

* a pole frame places 1-D Hermite functions ``h_n`` in one component;
* ``frame(U, "plus")`` applies ``Phi^+(U)`` to the frame at ``P`` and
  ``frame(U, "minus")`` applies ``Phi^-(U)`` to the frame at ``-P``;
* ``T(z)_{kl} = <frame(U_z, minus)_k, frame(U_z, plus)_l>``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .bandop import MonomialLoop
from .bundle import EndCocycle, alpha1, sphere_cocycle
from .errors import (GridTooCoarse, InvalidParameter, NotHermitianUnitary,
                     OutOfDisc, ToleranceExceeded, WindingUnstable,
                     WrongHemisphere)
from .seqcalc import CoinvClass, EPSeq, Functional, coinv_class

BOUNDARY_TOL = 1e-10
UH2_TOL = 1e-12
GRAM_TOL = 1e-6
FRAME_TOL = 1e-3
WINDING_TOL = 0.1
E2 = np.eye(2, dtype=complex)
P = np.diag([1.0 + 0j, -1.0 + 0j])


@dataclass(frozen=True)
class GridSpec:
    x_max: float = 12.0
    n_points: int = 6144

    def __post_init__(self):
        if self.x_max <= 0:
            raise InvalidParameter("x_max must be positive")
        if self.n_points < 1024:
            raise GridTooCoarse(f"n_points = {self.n_points} < 1024")

    @property
    def h(self) -> float:
        return 2 * self.x_max / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(-self.x_max, self.x_max, self.n_points)


DEFAULT_GRID = GridSpec()


@dataclass(frozen=True, eq=False)
class GridField1:
    grid: GridSpec
    samples: np.ndarray

    def norm(self) -> float:
        return norm(self.grid, self.samples)


@dataclass(frozen=True, eq=False)
class GridField2:
    """Pairs of samples; ``samples`` has shape ``(2, n_points)``."""

    grid: GridSpec
    samples: np.ndarray

    def norm(self) -> float:
        return norm(self.grid, self.samples)


def inner(g: GridSpec, f, k) -> complex:
    """``<f, k>``, antilinear in ``f``; rectangle rule, spectrally accurate for decaying fields."""
    return complex(np.vdot(f, k) * g.h)


def norm(g: GridSpec, f) -> float:
    return math.sqrt(max(inner(g, f, f).real, 0.0))


def check_boundary(f: np.ndarray, what: str = "field") -> None:
    edge = max(np.abs(f[..., :2]).max(), np.abs(f[..., -2:]).max())
    if edge >= BOUNDARY_TOL:
        raise GridTooCoarse(f"{what} has boundary samples of size {edge:.2e}")


def _pad(f: np.ndarray) -> np.ndarray:
    widths = [(0, 0)] * (f.ndim - 1) + [(2, 2)]
    return np.pad(f, widths)


def d1(f: np.ndarray, h: float) -> np.ndarray:
    p = _pad(f)
    return (p[..., :-4] - 8 * p[..., 1:-3] + 8 * p[..., 3:-1] - p[..., 4:]) / (12 * h)


def d2(f: np.ndarray, h: float) -> np.ndarray:
    p = _pad(f)
    return (-p[..., :-4] + 16 * p[..., 1:-3] - 30 * p[..., 2:-2]
            + 16 * p[..., 3:-1] - p[..., 4:]) / (12 * h * h)


# 1-D oscillator

def _ladder1(f: np.ndarray, a: float, g: GridSpec, direction: str) -> np.ndarray:
    if direction == "down":
        return d1(f, g.h) + a * g.x * f
    if direction == "up":
        return -d1(f, g.h) + a * g.x * f
    raise InvalidParameter(f"direction must be 'up' or 'down', not {direction!r}")


def _ham1(f: np.ndarray, a: float, g: GridSpec) -> np.ndarray:
    return -d2(f, g.h) + (a * g.x) ** 2 * f


def ladder_1d(f: GridField1, a: float, direction: str) -> GridField1:
    """``A = d/dx + ax`` (``down``) or ``A* = -d/dx + ax`` (``up``)."""
    check_boundary(f.samples)
    return GridField1(f.grid, _ladder1(f.samples, a, f.grid, direction))


def hamiltonian_1d(f: GridField1, a: float) -> GridField1:
    check_boundary(f.samples)
    return GridField1(f.grid, _ham1(f.samples, a, f.grid))


def ground_state(a: float, g: GridSpec = DEFAULT_GRID) -> GridField1:
    if a <= 0:
        raise InvalidParameter("a must be positive")
    if a * g.x_max ** 2 < 50:
        raise GridTooCoarse(f"a * x_max^2 = {a * g.x_max ** 2:.3g} < 50")
    x = g.x
    return GridField1(g, ((a / math.pi) ** 0.25 * np.exp(-a * x * x / 2)).astype(complex))


@lru_cache(maxsize=32)
def _tower(a: float, K: int, g: GridSpec) -> tuple:
    # Applying the difference stencil k times amplifies grid-scale rounding
    # by about 1/h per step, so the tower uses A* = 2ax - A together with
    # A psi_{k-1} = sqrt(2(k-1)a) psi_{k-2}; the stencil form is checked
    # separately in tower_residuals.
    x = g.x
    out = [ground_state(a, g).samples]
    prev = np.zeros_like(out[0])
    for k in range(1, K + 1):
        nxt = (2 * a * x * out[-1] - math.sqrt(2 * (k - 1) * a) * prev) / math.sqrt(2 * k * a)
        prev = out[-1]
        out.append(nxt)
    for f in out:
        f.flags.writeable = False
    return tuple(out)


def tower_residuals(a: float, K: int, g: GridSpec = DEFAULT_GRID) -> dict:
    """Eigen-residuals, Gram error and stencil ladder residuals of the tower."""
    fields = np.array(_tower(a, K, g))
    eig = [norm(g, _ham1(f, a, g) - (2 * k + 1) * a * f) / norm(g, f)
           for k, f in enumerate(fields)]
    ladder = [norm(g, _ladder1(fields[k - 1], a, g, "up") / math.sqrt(2 * k * a) - fields[k])
              for k in range(1, K + 1)]
    gram = fields.conj() @ fields.T * g.h
    return {"eigen": eig, "ladder": ladder,
            "gram": float(np.abs(gram - np.eye(K + 1)).max()),
            "boundary": float(np.abs(fields[:, [0, -1]]).max())}


def hermite_tower(a: float, K: int, g: GridSpec = DEFAULT_GRID) -> list[GridField1]:
    """``psi_0, ..., psi_K`` with ``psi_k = A* psi_{k-1} / sqrt(2ka)``."""
    fields = _tower(a, K, g)
    res = tower_residuals(a, K, g)
    for k, r in enumerate(res["eigen"]):
        if r > 1e-4 * (1 + k):
            raise ToleranceExceeded(f"psi_{k}: eigen-residual {r:.2e}")
    for k, r in enumerate(res["ladder"], start=1):
        if r > 1e-4 * (1 + k):
            raise ToleranceExceeded(f"psi_{k}: ladder residual {r:.2e}")
    if res["gram"] > GRAM_TOL:
        raise ToleranceExceeded(f"tower Gram error {res['gram']:.2e}")
    check_boundary(np.array(fields), "Hermite tower")
    return [GridField1(g, f) for f in fields]


def random_damped_fields(g: GridSpec, trials: int, rng: np.random.Generator,
                         components: int = 1, degree: int = 4) -> list[np.ndarray]:
    """Random complex polynomials of the given degree times ``e^{-x^2/2}``."""
    x = g.x
    out = []
    for _ in range(trials):
        coef = rng.normal(size=(components, degree + 1)) + 1j * rng.normal(
            size=(components, degree + 1))
        center = rng.uniform(-1, 1)
        vals = np.array([np.polyval(c, x - center) for c in coef])
        f = vals * np.exp(-(x - center) ** 2 / 2)
        out.append(f[0] if components == 1 else f)
    return out


def _rel(lhs: np.ndarray, rhs: np.ndarray, g: GridSpec) -> float:
    return norm(g, lhs - rhs) / max(norm(g, rhs), 1e-300)


@dataclass
class IdentityReport:
    """Worst relative residual per identity plus one row per trial."""

    residuals: dict
    rows: list = field(default_factory=list)
    tol: float = 1e-5

    @property
    def ok(self) -> bool:
        return all(v <= self.tol for v in self.residuals.values())

    def raise_if_failed(self) -> IdentityReport:
        bad = {k: v for k, v in self.residuals.items() if v > self.tol}
        if bad:
            name, val = max(bad.items(), key=lambda kv: kv[1])
            raise ToleranceExceeded(f"identity {name}: residual {val:.2e} > {self.tol:g}")
        return self


IDENTITIES_1D = ("AA*=H+a", "A*A=H-a", "[A,A*]=2a", "[H,A]=-2aA", "[H,A*]=2aA*")
IDENTITIES_2D = ("AA*=H+U", "A*A=H-U", "[A,A*]=2U", "[H,A]=-2UA", "[H,A*]=2UA*")


def verify_identities_1d(a: float, trials: int = 20, tol: float = 1e-5,
                         g: GridSpec = DEFAULT_GRID, seed: int = 0,
                         raise_on_fail: bool = True) -> IdentityReport:
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(IDENTITIES_1D, 0.0)
    rows = []
    for t, f in enumerate(random_damped_fields(g, trials, rng)):
        check_boundary(f)
        A = lambda v: _ladder1(v, a, g, "down")  # noqa: E731
        As = lambda v: _ladder1(v, a, g, "up")  # noqa: E731
        H = lambda v: _ham1(v, a, g)  # noqa: E731
        vals = {
            "AA*=H+a": _rel(A(As(f)), H(f) + a * f, g),
            "A*A=H-a": _rel(As(A(f)), H(f) - a * f, g),
            "[A,A*]=2a": _rel(A(As(f)) - As(A(f)), 2 * a * f, g),
            "[H,A]=-2aA": _rel(H(A(f)) - A(H(f)), -2 * a * A(f), g),
            "[H,A*]=2aA*": _rel(H(As(f)) - As(H(f)), 2 * a * As(f), g),
        }
        for k, v in vals.items():
            worst[k] = max(worst[k], v)
            rows.append({"trial": t, "a": a, "identity": k, "residual": v})
    rep = IdentityReport(worst, rows, tol)
    return rep.raise_if_failed() if raise_on_fail else rep


# UH(2)

def _check_uh2(U) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2):
        raise NotHermitianUnitary("expected a 2x2 matrix")
    if np.abs(U - U.conj().T).max() > UH2_TOL or np.abs(U @ U.conj().T - E2).max() > UH2_TOL:
        raise NotHermitianUnitary("matrix is not Hermitian unitary")
    return U


def uh2_classify(U) -> str:
    U = _check_uh2(U)
    if abs(np.linalg.det(U) + 1) < 1e-9:
        return "Sphere"
    return "PlusIdentity" if U[0, 0].real > 0 else "MinusIdentity"


def u_point(z: complex, hemisphere: str) -> np.ndarray:
    """``U_z^+ = (r, z; conj z, -r)`` or ``U_z^- = (-r, z; conj z, r)`` with ``r = sqrt(1 - |z|^2)``."""
    z = complex(z)
    if abs(z) > 1 + UH2_TOL:
        raise OutOfDisc(f"|z| = {abs(z)} > 1")
    r = math.sqrt(max(0.0, 1 - abs(z) ** 2))
    sign = {"plus": 1, "minus": -1}.get(hemisphere)
    if sign is None:
        raise InvalidParameter(f"hemisphere must be 'plus' or 'minus', not {hemisphere!r}")
    return np.array([[sign * r, z], [z.conjugate(), -sign * r]])


def sphere_point(v) -> np.ndarray:
    """The sphere-component matrix of a unit vector ``(x, y, s)``."""
    x, y, s = (float(c) for c in v)
    return np.array([[s, complex(x, y)], [complex(x, -y), -s]])


def random_sphere_points(n: int, rng: np.random.Generator, hemisphere: str | None = None):
    out = []
    while len(out) < n:
        v = rng.normal(size=3)
        v /= np.linalg.norm(v)
        if hemisphere == "plus":
            v[2] = abs(v[2])
        elif hemisphere == "minus":
            v[2] = -abs(v[2])
        out.append(sphere_point(v))
    return out


def _hemisphere_entry(U, hemisphere: str) -> float:
    U = _check_uh2(U)
    if uh2_classify(U) != "Sphere":
        raise WrongHemisphere("U is not on the sphere component")
    s = U[0, 0].real
    if (hemisphere == "plus" and s < -UH2_TOL) or (hemisphere == "minus" and s > UH2_TOL):
        raise WrongHemisphere(f"U[0,0] = {s:.3g} is not on the {hemisphere} hemisphere")
    return s


def phi_plus(U) -> np.ndarray:
    """Hermitian involution with ``Phi^+(U) U = P Phi^+(U)``, equal to ``P`` at ``U = P``."""
    s = _hemisphere_entry(U, "plus")
    return (np.asarray(U, dtype=complex) + P) / math.sqrt(2 * (1 + s))


def phi_minus(U) -> np.ndarray:
    """Hermitian involution with ``Phi^-(U) U = -P Phi^-(U)``."""
    s = _hemisphere_entry(U, "minus")
    return (np.asarray(U, dtype=complex) - P) / math.sqrt(2 * (1 - s))


def phi(U, hemisphere: str) -> np.ndarray:
    return phi_plus(U) if hemisphere == "plus" else phi_minus(U)


# 2-D oscillator (C^2-valued fields of one variable)

def _ladder2(f: np.ndarray, U: np.ndarray, g: GridSpec, direction: str) -> np.ndarray:
    ux = (U @ f) * g.x
    if direction == "down":
        return d1(f, g.h) + ux
    if direction == "up":
        return -d1(f, g.h) + ux
    raise InvalidParameter(f"direction must be 'up' or 'down', not {direction!r}")


def _ham2(f: np.ndarray, g: GridSpec) -> np.ndarray:
    return -d2(f, g.h) + g.x ** 2 * f


def ladder_2d(f: GridField2, U, direction: str) -> GridField2:
    """``A_U = d/dx + Ux`` (``down``) or ``A_U* = -d/dx + Ux`` (``up``)."""
    check_boundary(f.samples)
    return GridField2(f.grid, _ladder2(f.samples, np.asarray(U, dtype=complex), f.grid, direction))


def hamiltonian_2d(f: GridField2) -> GridField2:
    check_boundary(f.samples)
    return GridField2(f.grid, _ham2(f.samples, f.grid))


def verify_identities_2d(U, trials: int = 20, tol: float = 1e-5,
                         g: GridSpec = DEFAULT_GRID, seed: int = 0,
                         raise_on_fail: bool = True) -> IdentityReport:
    U = _check_uh2(U)
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(IDENTITIES_2D, 0.0)
    rows = []
    for t, f in enumerate(random_damped_fields(g, trials, rng, components=2)):
        check_boundary(f)
        A = lambda v: _ladder2(v, U, g, "down")  # noqa: E731
        As = lambda v: _ladder2(v, U, g, "up")  # noqa: E731
        H = lambda v: _ham2(v, g)  # noqa: E731
        vals = {
            "AA*=H+U": _rel(A(As(f)), H(f) + U @ f, g),
            "A*A=H-U": _rel(As(A(f)), H(f) - U @ f, g),
            "[A,A*]=2U": _rel(A(As(f)) - As(A(f)), 2 * U @ f, g),
            "[H,A]=-2UA": _rel(H(A(f)) - A(H(f)), -2 * U @ A(f), g),
            "[H,A*]=2UA*": _rel(H(As(f)) - As(H(f)), 2 * U @ As(f), g),
        }
        for k, v in vals.items():
            worst[k] = max(worst[k], v)
            rows.append({"trial": t, "identity": k, "residual": v})
    rep = IdentityReport(worst, rows, tol)
    return rep.raise_if_failed() if raise_on_fail else rep


# frames

ORDERINGS = ("split", "interleaved")


def frame_indices(K: int, ordering: str) -> list[int]:
    if ordering == "split":
        return list(range(-K, K + 1))
    if ordering == "interleaved":
        return list(range(0, 2 * K + 1))
    raise InvalidParameter(f"unknown ordering {ordering!r}")


def pole_layout(k: int, ordering: str, hemisphere: str) -> tuple[int, int, int]:
    """``(component, tower level, signed level)`` of index ``k`` at the pole.

    The signed level ``l`` is the one with ``H phi = (2 l U + 1) phi``.
    """
    if ordering == "split":
        comp, level, signed = (0, k, k) if k >= 0 else (1, -k - 1, k + 1)
    else:
        n = k // 2
        comp, level, signed = (0, n, n) if k % 2 == 0 else (1, n, -n)
    if hemisphere == "minus":
        comp = 1 - comp
    return comp, level, signed


@lru_cache(maxsize=16)
def _pole_frame(K: int, ordering: str, hemisphere: str, g: GridSpec) -> np.ndarray:
    idx = frame_indices(K, ordering)
    tower = _tower(1.0, max(pole_layout(k, ordering, hemisphere)[1] for k in idx), g)
    out = np.zeros((len(idx), 2, g.n_points), dtype=complex)
    for j, k in enumerate(idx):
        comp, level, _ = pole_layout(k, ordering, hemisphere)
        out[j, comp] = tower[level]
    out.flags.writeable = False
    return out


def _frame_fields(U, hemisphere: str, K: int, ordering: str, g: GridSpec) -> np.ndarray:
    m = phi(U, hemisphere)
    return np.einsum("ab,kbx->kax", m, _pole_frame(K, ordering, hemisphere, g))


@dataclass(frozen=True, eq=False)
class OscFrame:
    U: np.ndarray
    hemisphere: str
    K: int
    ordering: str
    indices: tuple
    fields: np.ndarray
    grid: GridSpec
    gram_error: float
    eigen_residual: float
    relation_residual: float
    ground_state_p_residual: float

    def field(self, k: int) -> GridField2:
        return GridField2(self.grid, self.fields[self.indices.index(k)])

    def report(self) -> dict:
        return {"hemisphere": self.hemisphere, "K": self.K, "ordering": self.ordering,
                "gram_error": self.gram_error, "eigen_residual": self.eigen_residual,
                "relation_residual": self.relation_residual,
                "ground_state_p_residual": self.ground_state_p_residual}


def frame(U, hemisphere: str, K: int = 6, ordering: str = "split",
          g: GridSpec = DEFAULT_GRID) -> OscFrame:
    """Orthonormal eigenframe over one hemisphere, transported from its pole by ``Phi^{+/-}``.

    ``ground_state_p_residual`` is ``||H psi - U psi||`` for the component-1
    ground state, the ``k = 0`` case of the relation ``H psi_k = (2kP + U) psi_k``;
    it vanishes at ``U = P`` and is reported, not gated.
    """
    U = _check_uh2(U)
    idx = frame_indices(K, ordering)
    fields = _frame_fields(U, hemisphere, K, ordering, g)
    check_boundary(fields, "frame")
    gram = np.einsum("kax,lax->kl", fields.conj(), fields) * g.h
    gram_err = float(np.abs(gram - np.eye(len(idx))).max())
    eig = rel = 0.0
    for j, k in enumerate(idx):
        f = fields[j]
        _, level, signed = pole_layout(k, ordering, hemisphere)
        hf = _ham2(f, g)
        eig = max(eig, norm(g, hf - (2 * level + 1) * f))
        rel = max(rel, norm(g, hf - (2 * signed * U + E2) @ f))
    psi0 = np.zeros((2, g.n_points), dtype=complex)
    psi0[0] = _tower(1.0, 0, g)[0]
    gsp = norm(g, _ham2(psi0, g) - U @ psi0)
    if gram_err > GRAM_TOL:
        raise ToleranceExceeded(f"frame Gram error {gram_err:.2e}")
    if max(eig, rel) > FRAME_TOL:
        raise ToleranceExceeded(f"frame eigen-relation residual {max(eig, rel):.2e}")
    return OscFrame(U, hemisphere, K, ordering, tuple(idx), fields, g,
                    gram_err, eig, rel, gsp)


def equator_point(z: complex) -> np.ndarray:
    z = complex(z)
    if abs(abs(z) - 1) > 1e-12:
        raise OutOfDisc(f"|z| = {abs(z)} is not 1")
    return u_point(z / abs(z), "plus")


def _overlap_matrix(z: complex, K: int, ordering: str, g: GridSpec) -> np.ndarray:
    U = equator_point(z)
    fp = _frame_fields(U, "plus", K, ordering, g)
    fm = _frame_fields(U, "minus", K, ordering, g)
    return np.einsum("kax,lax->kl", fm.conj(), fp) * g.h


def equator_overlap(z: complex, K: int = 6, ordering: str = "split",
                    g: GridSpec = DEFAULT_GRID, tol: float = 1e-6) -> np.ndarray:
    """``T(z)_{kl} = <frame(U_z, minus)_k, frame(U_z, plus)_l>``; row/column ``j`` is index ``frame_indices[j]``."""
    T = _overlap_matrix(z, K, ordering, g)
    unit = float(np.abs(T.conj().T @ T - np.eye(len(T))).max())
    off = float(np.abs(T - np.diag(np.diag(T))).max())
    if unit > tol:
        raise ToleranceExceeded(f"equator overlap unitarity defect {unit:.2e}")
    if off > tol:
        raise ToleranceExceeded(f"equator overlap off-pattern mass {off:.2e}")
    return T


def equator_diagnostics(z: complex, K: int = 6, ordering: str = "split",
                        g: GridSpec = DEFAULT_GRID) -> dict:
    T = _overlap_matrix(z, K, ordering, g)
    return {"unitarity_defect": float(np.abs(T.conj().T @ T - np.eye(len(T))).max()),
            "off_pattern": float(np.abs(T - np.diag(np.diag(T))).max()),
            "diagonal": np.diag(T)}


@dataclass(frozen=True)
class WindingReport:
    indices: tuple
    windings: tuple
    residual: float
    signs_at_one: tuple

    def to_json(self) -> dict:
        return {"indices": list(self.indices), "windings": list(self.windings),
                "residual": self.residual, "signs_at_one": list(self.signs_at_one)}


def winding_per_index(K: int = 6, M: int = 64, ordering: str = "split",
                      g: GridSpec = DEFAULT_GRID) -> WindingReport:
    """Winding number of each diagonal entry of ``T(z)`` as ``z`` runs once counterclockwise."""
    if M < 64:
        raise InvalidParameter(f"M = {M} < 64 samples")
    zs = [cmath.exp(2j * math.pi * j / M) for j in range(M + 1)]
    diag = np.array([np.diag(equator_overlap(z, K, ordering, g)) for z in zs])
    phases = np.unwrap(np.angle(diag), axis=0)
    steps = np.abs(np.diff(phases, axis=0)).max()
    raw = (phases[-1] - phases[0]) / (2 * math.pi)
    wind = np.rint(raw).astype(int)
    residual = float(np.abs(raw - wind).max())
    if residual > WINDING_TOL or steps > math.pi / 2:
        raise WindingUnstable(f"phase tracking residual {residual:.3g}, max step {steps:.3g}")
    signs = tuple(int(np.sign(v.real)) for v in diag[0])
    return WindingReport(tuple(frame_indices(K, ordering)), tuple(int(w) for w in wind),
                         residual, signs)


def split_extension(rep: WindingReport) -> EPSeq:
    """Window extended by its end values (left tail ``w(-K)``, right tail ``w(K)``)."""
    w = rep.windings
    return EPSeq((w[0],), tuple(w), rep.indices[0], (w[-1],)).canonical


def interleaved_extension(rep: WindingReport) -> EPSeq:
    """Window extended two-sided with period 2; the window must already alternate consistently."""
    w = rep.windings
    pattern = (w[0], w[1])
    if any(v != pattern[j % 2] for j, v in enumerate(w)):
        raise WindingUnstable(f"windings {w} are not 2-periodic")
    return EPSeq.periodic(pattern, rep.indices[0])


def oscillator_bundle(K: int = 6, M: int = 64, g: GridSpec = DEFAULT_GRID,
                      functional: Functional | None = None) -> tuple[EndCocycle, dict]:
    """Sphere cocycle whose equator loop carries the measured winding exponents."""
    if K < 4:
        raise InvalidParameter("K must be at least 4")
    rep = winding_per_index(K, M, "split", g)
    exps = split_extension(rep)
    c = sphere_cocycle(MonomialLoop(0, exps), source="oscillator", ordering="split")
    report = {"windings": rep.to_json(), "class": coinv_class(exps).to_json()}
    if functional is not None:
        report["alpha1"] = alpha1(c, functional)
    return c, report


def interleaved_exponents(K: int = 6, M: int = 64,
                          g: GridSpec = DEFAULT_GRID) -> tuple[EPSeq, WindingReport]:
    if K < 4:
        raise InvalidParameter("K must be at least 4")
    rep = winding_per_index(K, M, "interleaved", g)
    return interleaved_extension(rep), rep


def interleaved_class(K: int = 6, M: int = 64, g: GridSpec = DEFAULT_GRID) -> CoinvClass:
    """Class of the equator exponents in the interleaved ordering."""
    return coinv_class(interleaved_exponents(K, M, g)[0])
