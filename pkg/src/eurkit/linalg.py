"""Dense complex linear algebra for small multipartite operators.

Everything here works on plain numpy arrays of complex128. Operators are
square, row major, and small (dimension capped well below the point where a
blocked LAPACK solver would win), so the eigensolver is a cyclic Jacobi
sweep: deterministic, branch-free in ordering, and accurate to machine
precision for Hermitian input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DimensionError, NumericalError

DIM_CAP = 4096
HERMITIAN_TOL = 1e-9
JACOBI_OFFDIAG_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def as_operator(a) -> np.ndarray:
    """Coerce to a finite square complex matrix, copying the data."""
    m = np.array(a, dtype=np.complex128, order="C")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0 or m.shape[0] > DIM_CAP:
        raise DimensionError(f"dimension {m.shape[0]} outside [1, {DIM_CAP}]")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ContractError("matrix contains non-finite entries")
    return m


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def hermiticity_defect(a: np.ndarray) -> float:
    """Largest entrywise deviation from Hermitian symmetry."""
    return float(np.abs(a - dagger(a)).max())


def kron(a, b) -> np.ndarray:
    """Kronecker product of two square operators, capped at DIM_CAP."""
    ma = as_operator(a)
    mb = as_operator(b)
    n = ma.shape[0] * mb.shape[0]
    if n > DIM_CAP:
        raise DimensionError(f"product dimension {n} exceeds {DIM_CAP}")
    return np.kron(ma, mb)


def kron_all(*ops) -> np.ndarray:
    """Left-to-right Kronecker product of several operators."""
    if not ops:
        raise ContractError("kron_all needs at least one operator")
    out = as_operator(ops[0])
    for op in ops[1:]:
        out = kron(out, op)
    return out


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    eigenvalues are ascending; column k of eigenvectors pairs with
    eigenvalues[k].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ dagger(v)


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _jacobi_sweeps(w: np.ndarray, v: np.ndarray | None) -> None:
    # One rotation zeroes w[p, q]; row/column pairs are visited in a fixed
    # cyclic order so the result is bitwise reproducible for equal input.
    n = w.shape[0]
    skip = JACOBI_OFFDIAG_TOL / n
    for _ in range(JACOBI_MAX_SWEEPS):
        if _offdiag_norm(w) <= JACOBI_OFFDIAG_TOL:
            return
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = w[p, q]
                r = abs(g)
                if r <= skip:
                    continue
                phase = g / r
                alpha = w[p, p].real
                beta = w[q, q].real
                # Minimal-angle zeroing rotation: t solves
                # r t^2 - (alpha - beta) t - r = 0, smaller root in magnitude.
                u = (alpha - beta) / (2.0 * r)
                t = -math.copysign(1.0, u) / (abs(u) + math.hypot(u, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                sp = s * phase
                spc = s * phase.conjugate()
                colp = w[:, p].copy()
                colq = w[:, q].copy()
                w[:, p] = c * colp - spc * colq
                w[:, q] = sp * colp + c * colq
                rowp = w[p, :].copy()
                rowq = w[q, :].copy()
                w[p, :] = c * rowp - sp * rowq
                w[q, :] = spc * rowp + c * rowq
                w[p, q] = 0.0
                w[q, p] = 0.0
                w[p, p] = alpha - t * r
                w[q, q] = beta + t * r
                if v is not None:
                    vp = v[:, p].copy()
                    vq = v[:, q].copy()
                    v[:, p] = c * vp - spc * vq
                    v[:, q] = sp * vp + c * vq
    residual = _offdiag_norm(w)
    if residual > JACOBI_OFFDIAG_TOL:
        raise NumericalError(
            f"jacobi sweep limit {JACOBI_MAX_SWEEPS} reached, "
            f"off-diagonal residual {residual:.3e}"
        )


def _require_hermitian(m: np.ndarray) -> None:
    defect = hermiticity_defect(m)
    if defect > HERMITIAN_TOL:
        raise ContractError(f"matrix is not Hermitian, defect {defect:.3e}")


def hermitian_eig(a) -> Spectrum:
    """Full eigendecomposition of a Hermitian matrix via cyclic Jacobi."""
    m = as_operator(a)
    _require_hermitian(m)
    w = m.copy()
    v = np.eye(m.shape[0], dtype=np.complex128)
    _jacobi_sweeps(w, v)
    vals = np.diag(w).real.copy()
    order = np.argsort(vals, kind="stable")
    return Spectrum(eigenvalues=vals[order], eigenvectors=v[:, order])


def hermitian_eigenvalues(a) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix, no eigenvectors."""
    m = as_operator(a)
    _require_hermitian(m)
    w = m.copy()
    _jacobi_sweeps(w, None)
    vals = np.diag(w).real.copy()
    vals.sort()
    return vals


def partial_trace(rho, dims, keep) -> np.ndarray:
    """Trace out every tensor factor not listed in keep.

    dims lists the factor dimensions in tensor order; keep is a set of
    factor indices. The reduced operator keeps the surviving factors in
    their original order.
    """
    m = as_operator(rho)
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionError(f"invalid factor dimensions {dims}")
    total = math.prod(dims)
    if total != m.shape[0]:
        raise DimensionError(
            f"factor dimensions {dims} do not multiply to {m.shape[0]}"
        )
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep:
        raise DimensionError("keep must name at least one factor")
    if keep[0] < 0 or keep[-1] >= len(dims):
        raise DimensionError(f"keep indices {keep} outside 0..{len(dims) - 1}")
    n = len(dims)
    if len(keep) == n:
        return m.copy()
    tensor = m.reshape(dims + dims)
    row = list(range(n))
    col = [n + i if i in keep else i for i in range(n)]
    out = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(tensor, row + col, out)
    dkeep = math.prod(dims[i] for i in keep)
    return np.ascontiguousarray(reduced.reshape(dkeep, dkeep))
