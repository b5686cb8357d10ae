"""SPD solves and the generalized symmetric-definite eigenproblem.

Both rest on :class:`SPDFactor`, which factors a symmetric positive
(semi-)definite matrix either by Cholesky or, when its spectrum reaches down
to ``rel_tol * lambda_max``, by a truncated eigendecomposition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, solve_triangular

from . import _kernels
from .exceptions import ConvergenceError, IndefiniteMatrixError, InputError

REL_TOL = 1e-12
JACOBI_TOL = 1e-14
MAX_SWEEPS = 60


def _as_symmetric(matrix) -> np.ndarray:
    a = np.array(matrix, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InputError(f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InputError("matrix entries must be finite")
    # keep the upper triangle, so rounding asymmetry in the caller is harmless
    return np.triu(a) + np.triu(a, 1).T


def _orient(vectors):
    # first component that is not rounding noise made positive
    for j in range(vectors.shape[1]):
        col = vectors[:, j]
        big = np.abs(col).max()
        if big == 0.0:
            continue
        lead = col[np.argmax(np.abs(col) > 1e-12 * big)]
        if lead < 0:
            vectors[:, j] = -col
    return vectors


def symmetric_eigh(matrix, tol=JACOBI_TOL, max_sweeps=MAX_SWEEPS):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) by Jacobi."""
    a = _as_symmetric(matrix)
    values, vectors, sweeps, off = _kernels.jacobi_eigh(a, tol, max_sweeps)
    if sweeps > max_sweeps:
        raise ConvergenceError(max_sweeps, off)
    order = np.argsort(values, kind="stable")
    return values[order], _orient(vectors[:, order])


class SPDFactor:
    """Factorization of a symmetric positive semi-definite matrix.

    Attributes
    ----------
    eigenvalues : ndarray
        Full spectrum of the matrix, ascending.
    rank : int
        Number of eigenvalues above ``rel_tol * lambda_max``.
    degenerate : bool
        True when the spectral pseudo-inverse had to be used.
    whitener : ndarray, shape (n, rank)
        ``W`` with ``W.T @ A @ W == I`` (one refinement step applied) and
        ``W @ W.T`` equal to the (pseudo-)inverse of ``A``.
    """

    def __init__(self, matrix, rel_tol=REL_TOL, strict=False):
        a = _as_symmetric(matrix)
        self.matrix = a
        n = a.shape[0]
        values, vectors = symmetric_eigh(a)
        self.eigenvalues = values
        scale = float(np.abs(values).max())
        if strict and values[0] < -rel_tol * scale:
            raise IndefiniteMatrixError(float(values[0]), 0, scale)
        keep = values > rel_tol * max(values[-1], 0.0)
        self._chol = None
        if keep.all():
            try:
                self._chol = np.linalg.cholesky(a)
            except np.linalg.LinAlgError:
                pass
        self.degenerate = self._chol is None
        if self.degenerate:
            self._basis = vectors[:, keep]
            self._retained = values[keep]
            w = self._basis / np.sqrt(self._retained)
        else:
            self._basis = vectors
            self._retained = values
            w = solve_triangular(self._chol, np.eye(n), lower=True).T
        self.rank = int(w.shape[1])
        self.whitener = self._refine(a, w)

    @staticmethod
    def _refine(a, w):
        if w.shape[1] == 0:
            return w
        d = w.T @ a @ w
        d = 0.5 * (d + d.T)
        try:
            k = np.linalg.cholesky(d)
        except np.linalg.LinAlgError:
            return w
        return solve_triangular(k, w.T, lower=True).T

    @property
    def condition(self) -> float:
        """Ratio of largest to smallest retained eigenvalue (inf if rank 0)."""
        if self.rank == 0:
            return float("inf")
        return float(self._retained[-1] / self._retained[0])

    def solve(self, b) -> np.ndarray:
        """``A^{-1} b``, or the pseudo-inverse image when degenerate."""
        b = np.asarray(b, dtype=np.float64)
        if self.degenerate:
            v = self._basis
            coef = (v.T @ b) / (self._retained if b.ndim == 1 else self._retained[:, None])
            return v @ coef
        z = cho_solve((self._chol, True), b)
        # one step of iterative refinement
        return z + cho_solve((self._chol, True), b - self.matrix @ z)

    def whiten(self, b) -> np.ndarray:
        """Coordinates ``W.T @ b``; their squared norm is ``b.T A^{-1} b``."""
        return self.whitener.T @ np.asarray(b, dtype=np.float64)

    def span_fraction(self, b) -> float:
        """Share of ``b`` (by norm) lying in the retained eigenspace."""
        b = np.asarray(b, dtype=np.float64)
        norm = float(np.linalg.norm(b))
        if norm == 0.0:
            return 0.0
        if not self.degenerate:
            return 1.0
        return float(np.linalg.norm(self._basis.T @ b)) / norm


def spd_solve(matrix, b):
    """Solve ``A z = b`` for symmetric positive definite ``A``.

    Returns ``(z, degenerate)``.  When ``A`` is not numerically positive
    definite, ``z`` comes from the spectral pseudo-inverse that drops
    eigenvalues below ``1e-12 * lambda_max`` and ``degenerate`` is True.
    """
    factor = SPDFactor(matrix)
    b = np.asarray(b, dtype=np.float64)
    if b.shape[0] != factor.matrix.shape[0]:
        raise InputError(f"right-hand side has length {b.shape[0]}, "
                         f"matrix has order {factor.matrix.shape[0]}")
    return factor.solve(b), factor.degenerate


@dataclass(frozen=True, eq=False)
class EigenPair:
    value: float
    vector: np.ndarray


def reduced_eigh(a, factor: SPDFactor):
    """Solve ``a psi = y B psi`` given a factor of ``B``.

    Returns ascending eigenvalues and ``B``-orthonormal eigenvectors as
    columns; only the ``factor.rank`` retained directions of ``B`` appear.
    """
    a = _as_symmetric(a)
    w = factor.whitener
    if w.shape[1] == 0:
        return np.empty(0), np.empty((a.shape[0], 0))
    c = w.T @ a @ w
    values, phi = symmetric_eigh(c)
    return values, _orient(w @ phi)


def gen_eig_sym(a, b, rel_tol=REL_TOL) -> list[EigenPair]:
    """Generalized eigenpairs of the pencil ``(a, b)``, ascending by value.

    ``b`` must be positive definite up to ``rel_tol``; directions of ``b``
    below that threshold are dropped.  Raises
    :class:`~momentreg.exceptions.IndefiniteMatrixError` otherwise.
    """
    a = _as_symmetric(a)
    factor = SPDFactor(b, rel_tol=rel_tol, strict=True)
    if a.shape != factor.matrix.shape:
        raise InputError(f"pencil orders differ: {a.shape} vs {factor.matrix.shape}")
    values, vectors = reduced_eigh(a, factor)
    return [EigenPair(float(v), vectors[:, i].copy()) for i, v in enumerate(values)]
