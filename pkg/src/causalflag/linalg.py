"""Spectral routines at small fixed sizes: eigenvalues, signatures, singular values.

All decompositions run through numpy/scipy LAPACK wrappers on the complex
embedding, which is deterministic for fixed input bits.  Quaternionic
spectra are read off the embedding with multiplicities halved.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotHermitian, Singular
from .kmat import KMat
from .scalars import QUATERNION

HERMITIAN_TOL = 1e-8


@dataclass(frozen=True)
class Signature:
    """Sylvester signature (pos, neg, zero) of a Hermitian matrix."""

    pos: int
    neg: int
    zero: int

    @property
    def dim(self):
        return self.pos + self.neg + self.zero

    def as_tuple(self):
        return (self.pos, self.neg, self.zero)


def check_hermitian(X: KMat, tol=HERMITIAN_TOL):
    defect = (X - X.H).norm()
    scale = max(1.0, X.norm())
    if defect > tol * scale:
        raise NotHermitian(f"Hermitian defect {defect:.3e} exceeds {tol:.1e} * {scale:.3e}")


def hermitian_eigenvalues(X: KMat, tol=HERMITIAN_TOL):
    """Real eigenvalues of a Hermitian matrix, descending.

    Quaternionic input is routed through the complex adjoint embedding;
    each eigenvalue there appears twice and the duplicates are dropped.
    """
    if X.rows != X.cols:
        raise NotHermitian("matrix is not square")
    check_hermitian(X, tol)
    M = X.embed()
    M = 0.5 * (M + np.conj(M).T)
    vals = np.linalg.eigvalsh(M)[::-1]
    if X.tag == QUATERNION:
        vals = vals[::2]
    return vals.copy()


def default_zero_tol(X: KMat):
    return 1e-9 * max(1.0, X.opnorm())


def signature(X: KMat, zero_tol=None) -> Signature:
    """Counts of eigenvalues above, below, and inside the zero band."""
    vals = hermitian_eigenvalues(X)
    if zero_tol is None:
        zero_tol = 1e-9 * max(1.0, float(np.max(np.abs(vals))) if len(vals) else 1.0)
    pos = int(np.sum(vals > zero_tol))
    neg = int(np.sum(vals < -zero_tol))
    return Signature(pos, neg, len(vals) - pos - neg)


def singular_values(g: KMat, rel_floor=1e-12):
    """Descending singular values; quaternionic duplicates dropped."""
    if g.rows != g.cols:
        raise Singular("singular values of non-square input are not needed here")
    s = np.linalg.svd(g.embed(), compute_uv=False)
    if g.tag == QUATERNION:
        s = s[::2]
    if s[-1] <= rel_floor * s[0]:
        raise Singular(f"minimal singular value {s[-1]:.3e} below floor")
    return s.copy()


def eig_moduli(g: KMat):
    """Moduli of eigenvalues, descending; quaternionic duplicates dropped."""
    vals = np.abs(np.linalg.eigvals(g.embed()))
    vals = np.sort(vals)[::-1]
    if g.tag == QUATERNION:
        vals = vals[::2]
    return vals


def min_eigenvalue(X: KMat):
    return float(hermitian_eigenvalues(X)[-1])


def is_positive_definite(X: KMat, zero_tol=None):
    if zero_tol is None:
        zero_tol = default_zero_tol(X)
    return min_eigenvalue(X) > zero_tol
