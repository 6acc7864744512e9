"""State families, measurement bases, closed-form curves, random ensembles.

The random generators ride on numpy's Philox bit generator, a counter-based
64-bit generator with published round constants, keyed directly by
(seed, stream) so any draw can be reproduced from two integers without
replaying a sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entropy import DensityOperator, ProjectiveBasis
from .errors import ContractError, DimensionError, DomainError

_RANGE_TOL = 1e-12
_SQRT_HALF = 1.0 / math.sqrt(2.0)


def pauli_bases() -> tuple[ProjectiveBasis, ProjectiveBasis, ProjectiveBasis]:
    """Eigenbases of the three Pauli operators, labeled x, y, z."""
    x = ProjectiveBasis("x", [[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]])
    y = ProjectiveBasis("y", [[_SQRT_HALF, _SQRT_HALF * 1j], [_SQRT_HALF, -_SQRT_HALF * 1j]])
    z = ProjectiveBasis("z", [[1.0, 0.0], [0.0, 1.0]])
    return x, y, z


def ghz_ket() -> np.ndarray:
    v = np.zeros(8, dtype=np.complex128)
    v[0] = _SQRT_HALF
    v[7] = _SQRT_HALF
    return v


def ghz_state() -> DensityOperator:
    """Three-qubit GHZ projector."""
    v = ghz_ket()
    return DensityOperator(np.outer(v, v.conj()), (2, 2, 2))


def make_werner(p: float) -> DensityOperator:
    """GHZ state mixed with white noise of weight p."""
    p = float(p)
    if not -_RANGE_TOL <= p <= 1.0 + _RANGE_TOL:
        raise DomainError(f"mixing weight p={p!r} outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    v = ghz_ket()
    matrix = (1.0 - p) * np.outer(v, v.conj()) + (p / 8.0) * np.eye(8)
    return DensityOperator(matrix, (2, 2, 2))


def w_ket(theta: float, phi: float) -> np.ndarray:
    """One-excitation superposition with weights set by (theta, phi)."""
    theta = float(theta)
    phi = float(phi)
    if not -_RANGE_TOL <= theta <= math.pi + _RANGE_TOL:
        raise DomainError(f"theta={theta!r} outside [0, pi]")
    if not -_RANGE_TOL <= phi < 2.0 * math.pi + _RANGE_TOL:
        raise DomainError(f"phi={phi!r} outside [0, 2*pi)")
    v = np.zeros(8, dtype=np.complex128)
    v[4] = math.sin(theta) * math.cos(phi)  # |100>
    v[2] = math.sin(theta) * math.sin(phi)  # |010>
    v[1] = math.cos(theta)                  # |001>
    return v


def make_generalized_w(theta: float, phi: float = math.pi / 4) -> DensityOperator:
    """Pure one-excitation three-qubit state over (theta, phi)."""
    v = w_ket(theta, phi)
    return DensityOperator(np.outer(v, v.conj()), (2, 2, 2))


def _coef_log2(w: float, x: float) -> float:
    # w * log2(x) with the 0*log(0) limit; w and x vanish together in every
    # closed-form term below, so a non-positive x only occurs at that limit.
    if x <= 0.0 or w == 0.0:
        return 0.0
    return w * math.log2(x)


def closed_form_werner(p: float) -> float:
    """Shared closed-form value of U and both bounds on the noisy-GHZ line."""
    p = float(p)
    if not -_RANGE_TOL <= p <= 1.0 + _RANGE_TOL:
        raise DomainError(f"mixing weight p={p!r} outside [0, 1]")
    p = min(max(p, 0.0), 1.0)
    return -_coef_log2(p / 2.0, p / 8.0) - _coef_log2((2.0 - p) / 2.0, (2.0 - p) / 8.0)


def wstate_terms(theta: float) -> dict:
    """Closed-form building blocks for the W family at phi = pi/4."""
    theta = float(theta)
    if not -_RANGE_TOL <= theta <= math.pi + _RANGE_TOL:
        raise DomainError(f"theta={theta!r} outside [0, pi]")
    sin2 = math.sin(theta) ** 2
    cos2 = math.cos(theta) ** 2
    root = math.sqrt(max(3.0 + math.cos(4.0 * theta), 0.0))
    wp = (2.0 + root) / 2.0
    wm = (2.0 - root) / 2.0
    return {
        "alpha": _coef_log2(sin2 / 2.0, 2.0 * sin2),
        "beta": _coef_log2((2.0 * cos2 + sin2) / 2.0, (2.0 * cos2 + sin2) / 2.0),
        "gamma_plus": -_coef_log2(wp, wp / 4.0),
        "gamma_minus": -_coef_log2(wm, wm / 4.0),
        "alpha_prime": _coef_log2(sin2, sin2),
        "zeta": _coef_log2(cos2, cos2 / 2.0),
        "alpha_second": _coef_log2(sin2 / 2.0, 2.0 * sin2**3),
        "zeta_prime": _coef_log2(cos2, cos2),
    }


def closed_form_wstate(theta: float, case_id: int) -> tuple[float, float, float]:
    """Closed-form (U, L1, L2) for the W family at phi = pi/4.

    case_id 1 assigns the first two measurements to memory B, case_id 2
    only the first. In both cases U equals L2 on this family.
    """
    t = wstate_terms(theta)
    gammas = t["gamma_plus"] + t["gamma_minus"]
    if case_id == 1:
        l1 = -1.0 + t["alpha"] + t["beta"] + gammas
        u = t["alpha_prime"] + 2.0 * t["beta"] + gammas
    elif case_id == 2:
        l1 = t["alpha_prime"] + t["zeta"] + gammas
        u = t["alpha_second"] + t["zeta_prime"] + t["beta"] + gammas
    else:
        raise DomainError(f"case_id must be 1 or 2, got {case_id!r}")
    return u, l1, u


@dataclass(frozen=True)
class StateFamily:
    """A one-parameter family the sweep command can walk."""

    name: str
    phi: float = math.pi / 4

    def __post_init__(self):
        if self.name not in ("werner", "wstate"):
            raise ContractError(f"unknown state family {self.name!r}")
        object.__setattr__(self, "phi", float(self.phi))

    @property
    def parameter_range(self) -> tuple[float, float]:
        return (0.0, 1.0) if self.name == "werner" else (0.0, math.pi)

    @property
    def parameter_name(self) -> str:
        return "p" if self.name == "werner" else "theta"

    def build(self, value: float) -> DensityOperator:
        if self.name == "werner":
            return make_werner(value)
        return make_generalized_w(value, self.phi)


@dataclass(frozen=True)
class ClosedFormCurve:
    """Named closed-form expressions along a state family."""

    family: str
    case_id: int
    expressions: tuple

    def evaluate(self, value: float) -> dict:
        return {name: fn(value) for name, fn in self.expressions}


def werner_curve(case_id: int = 1) -> ClosedFormCurve:
    if case_id not in (1, 2):
        raise DomainError(f"case_id must be 1 or 2, got {case_id!r}")
    exprs = (
        ("U", closed_form_werner),
        ("L1", closed_form_werner),
        ("L2", closed_form_werner),
    )
    return ClosedFormCurve("werner", case_id, exprs)


def wstate_curve(case_id: int = 1) -> ClosedFormCurve:
    if case_id not in (1, 2):
        raise DomainError(f"case_id must be 1 or 2, got {case_id!r}")

    def pick(index: int) -> Callable[[float], float]:
        return lambda theta: closed_form_wstate(theta, case_id)[index]

    exprs = (("U", pick(0)), ("L1", pick(1)), ("L2", pick(2)))
    return ClosedFormCurve("wstate", case_id, exprs)


def _generator(seed: int, stream: int) -> np.random.Generator:
    seed = int(seed)
    stream = int(stream)
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed {seed!r} outside [0, 2**64)")
    if not 0 <= stream < 2**64:
        raise DomainError(f"stream {stream!r} outside [0, 2**64)")
    return np.random.Generator(np.random.Philox(key=[seed, stream]))


def random_density(dims, seed: int, stream: int = 0) -> DensityOperator:
    """Trace-normalized G G+ for a square complex Gaussian G."""
    dims = tuple(int(d) for d in dims)
    n = math.prod(dims)
    if n < 1 or n > 64:
        raise DimensionError(f"total dimension {n} outside [1, 64]")
    rng = _generator(seed, stream)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = g @ g.conj().T
    return DensityOperator(m / m.trace().real, dims)


def random_pure(dims, seed: int, stream: int = 0) -> DensityOperator:
    """Projector onto a normalized complex Gaussian vector."""
    dims = tuple(int(d) for d in dims)
    n = math.prod(dims)
    if n < 1 or n > 64:
        raise DimensionError(f"total dimension {n} outside [1, 64]")
    rng = _generator(seed, stream)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    v /= np.linalg.norm(v)
    return DensityOperator(np.outer(v, v.conj()), dims)


def _haar_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_basis(dim: int, seed: int, stream: int = 0, label: str = "r") -> ProjectiveBasis:
    """Columns of a Haar-random unitary as a projective basis."""
    dim = int(dim)
    if dim < 1 or dim > 64:
        raise DimensionError(f"dimension {dim} outside [1, 64]")
    u = _haar_unitary(_generator(seed, stream), dim)
    return ProjectiveBasis(label, u.T)


def random_basis_triple(dim: int, seed: int, stream: int = 0) -> tuple:
    """Three bases drawn in sequence from one generator stream."""
    dim = int(dim)
    if dim < 1 or dim > 64:
        raise DimensionError(f"dimension {dim} outside [1, 64]")
    rng = _generator(seed, stream)
    out = []
    for k in range(3):
        u = _haar_unitary(rng, dim)
        out.append(ProjectiveBasis(f"r{k}", u.T))
    return tuple(out)
