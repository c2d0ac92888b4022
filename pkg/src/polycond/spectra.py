"""Spectra of matrix polynomials: eigenvalues, eigenvectors, clusters,
Jordan triples, and the triple-based global condition number.

Eigenvalues come from a dense eigensolve of the companion matrix. Unit
right/left eigenvectors are extracted from the SVD of P(lam) at the computed
eigenvalue (never from companion eigenvectors); companion-level eigenvectors
are then synthesized structurally from (x, y).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .core import MatrixPolynomial, as_complex_matrix, singular_values, spectral_norm
from .errors import (
    EigensolverError,
    HypothesisViolationError,
    InvalidTripleError,
    NotAnEigenvalueError,
)
from .linearization import companion

__all__ = [
    "EigenvalueCluster",
    "Spectrum",
    "CompanionEigenPair",
    "JordanBlock",
    "JordanTriple",
    "eigenvalues",
    "spectrum",
    "cluster",
    "nearest_eigenvalue",
    "eig_vectors",
    "companion_vectors",
    "validate_jordan_triple",
    "eigenproblem_cond",
]

# Default absolute tolerance for snapping a user-supplied eigenvalue guess to
# the computed spectrum, per unit of max(1, |guess|).
SNAP_RTOL = 1e-3


def _canonical_order(values: np.ndarray) -> np.ndarray:
    """Sort by real part, then imaginary part, ties by magnitude."""
    return np.lexsort((np.abs(values), values.imag, values.real))


@dataclass(frozen=True)
class EigenvalueCluster:
    """A group of eigenvalue indices within the clustering tolerance."""

    indices: tuple[int, ...]
    center: complex

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def is_simple(self) -> bool:
        return len(self.indices) == 1


@dataclass(frozen=True)
class Spectrum:
    """All nm eigenvalues with multiplicity clusters and, for eigenvalues in
    simple clusters, unit right/left eigenvectors keyed by index."""

    eigenvalues: np.ndarray
    clusters: tuple[EigenvalueCluster, ...]
    vectors: Mapping[int, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.eigenvalues)

    def cluster_of(self, i: int) -> EigenvalueCluster:
        for c in self.clusters:
            if i in c.indices:
                return c
        raise IndexError(f"eigenvalue index {i} out of range")

    def is_simple(self, i: int) -> bool:
        return self.cluster_of(i).is_simple


@dataclass(frozen=True)
class CompanionEigenPair:
    """Right/left eigenvectors of the companion matrix synthesized from an
    eigenpair (x, y) of P: right = [x; lam x; ...], left from the E-block
    recurrence."""

    eigenvalue: complex
    right: np.ndarray
    left: np.ndarray


def eigenvalues(poly: MatrixPolynomial) -> np.ndarray:
    """The nm eigenvalues of P in canonical order (re, im, |.|)."""
    C = companion(poly).matrix
    try:
        vals = np.linalg.eigvals(C)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"companion eigensolve failed: {exc}") from exc
    out = vals[_canonical_order(vals)]
    out.flags.writeable = False
    return out


def cluster(values, tol: float) -> tuple[EigenvalueCluster, ...]:
    """Partition indices by the transitive closure of |v_i - v_j| <= tol.

    Cluster centers are means; clusters are ordered canonically by center.
    """
    if tol <= 0:
        raise ValueError("clustering tolerance must be positive")
    v = np.asarray(values, dtype=complex)
    k = len(v)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if abs(v[i] - v[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    groups: dict[int, list[int]] = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(i)
    clusters = [
        EigenvalueCluster(indices=tuple(sorted(g)), center=complex(np.mean(v[g])))
        for g in groups.values()
    ]
    centers = np.array([c.center for c in clusters])
    order = _canonical_order(centers) if len(centers) else []
    return tuple(clusters[i] for i in order)


def default_cluster_tol(values) -> float:
    """1e-6 times max(1, spectral radius), the scale-aware default."""
    v = np.asarray(values, dtype=complex)
    radius = float(np.max(np.abs(v))) if len(v) else 0.0
    return 1e-6 * max(1.0, radius)


def spectrum(poly: MatrixPolynomial, cluster_tol: float | None = None,
             vectors: bool = True) -> Spectrum:
    """Eigenvalues, multiplicity clusters, and per-simple-eigenvalue vectors."""
    vals = eigenvalues(poly)
    tol = default_cluster_tol(vals) if cluster_tol is None else cluster_tol
    clusters = cluster(vals, tol)
    vecs: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    if vectors:
        for c in clusters:
            if c.is_simple:
                i = c.indices[0]
                vecs[i] = _svd_vectors(poly, complex(vals[i]))
    return Spectrum(eigenvalues=vals, clusters=clusters, vectors=vecs)


def nearest_eigenvalue(values, lam: complex, tol: float | None = None) -> int:
    """Index of the computed eigenvalue nearest lam; error if farther than tol."""
    v = np.asarray(values, dtype=complex)
    if len(v) == 0:
        raise NotAnEigenvalueError("the spectrum is empty")
    lam = complex(lam)
    if tol is None:
        tol = SNAP_RTOL * max(1.0, abs(lam))
    i = int(np.argmin(np.abs(v - lam)))
    gap = abs(v[i] - lam)
    if gap > tol:
        raise NotAnEigenvalueError(
            f"{lam} is not within {tol:.3e} of the computed spectrum "
            f"(nearest eigenvalue {v[i]} at distance {gap:.3e})")
    return i


def _svd_vectors(poly: MatrixPolynomial, lam: complex) -> tuple[np.ndarray, np.ndarray]:
    U, _, Vh = np.linalg.svd(poly.eval(lam))
    x = Vh[-1].conj()
    y = U[:, -1]
    return x, y


def eig_vectors(poly: MatrixPolynomial, lam: complex, tol: float | None = None,
                values: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Unit right/left eigenvectors of P at the eigenvalue nearest lam.

    lam is snapped to the nearest computed eigenvalue within tol (default
    1e-3 * max(1, |lam|)); x and y are the right/left singular vectors of the
    smallest singular value of P evaluated at the snapped eigenvalue, so
    ||P(lam0) x|| = s_min(P(lam0)).
    """
    vals = eigenvalues(poly) if values is None else np.asarray(values, dtype=complex)
    i = nearest_eigenvalue(vals, lam, tol)
    return _svd_vectors(poly, complex(vals[i]))


def _e_blocks(poly: MatrixPolynomial, z: complex) -> list[np.ndarray]:
    """E_1(z)..E_m(z) from the backward recurrence E_m = A_m, E_r = A_r + z E_{r+1}."""
    m = poly.m
    blocks = [None] * (m + 1)
    blocks[m] = np.array(poly.coeffs[m])
    for r in range(m - 1, 0, -1):
        blocks[r] = poly.coeffs[r] + z * blocks[r + 1]
    return blocks[1:]


def companion_vectors(poly: MatrixPolynomial, lam: complex, x: np.ndarray,
                      y: np.ndarray) -> CompanionEigenPair:
    """Companion right vector [x; lam x; ...; lam^{m-1} x] and left vector
    with blocks E_r(lam)* y; satisfies left* right = y* P'(lam) x."""
    lam = complex(lam)
    x = np.asarray(x, dtype=complex).reshape(-1)
    y = np.asarray(y, dtype=complex).reshape(-1)
    right = np.concatenate([lam ** r * x for r in range(poly.m)])
    blocks = _e_blocks(poly, lam)
    left = np.concatenate([E.conj().T @ y for E in blocks])
    return CompanionEigenPair(eigenvalue=lam, right=right, left=left)


@dataclass(frozen=True)
class JordanBlock:
    """One Jordan block: its eigenvalue and dimension."""

    eigenvalue: complex
    size: int

    def __post_init__(self):
        if self.size < 1:
            raise InvalidTripleError("Jordan block size must be positive")


@dataclass(frozen=True)
class JordanTriple:
    """A triple (X, J, Y) with J given by its block structure.

    X is n x N, Y is N x n with N = n*m for a degree-m polynomial of
    dimension n; the stacked matrix [X; XJ; ...; XJ^{m-1}] must be
    nonsingular for the triple to be valid.
    """

    X: np.ndarray
    blocks: tuple[JordanBlock, ...]
    Y: np.ndarray

    def __init__(self, X, blocks, Y):
        X = as_complex_matrix(X, name="X")
        Y = as_complex_matrix(Y, name="Y")
        blocks = tuple(b if isinstance(b, JordanBlock) else JordanBlock(*b) for b in blocks)
        if not blocks:
            raise InvalidTripleError("a Jordan triple needs at least one block")
        n = X.shape[0]
        N = sum(b.size for b in blocks)
        if X.shape != (n, N):
            raise InvalidTripleError(f"X has shape {X.shape}, blocks total {N} columns")
        if Y.shape != (N, n):
            raise InvalidTripleError(f"Y has shape {Y.shape}, expected {(N, n)}")
        if N % n != 0:
            raise InvalidTripleError(
                f"total block size {N} is not a multiple of the dimension {n}")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "Y", Y)
        Q = self.stacked()
        s = singular_values(Q)
        if s[-1] <= 1e-10 * s[0]:
            raise InvalidTripleError(
                "stacked matrix [X; XJ; ...] is numerically singular "
                f"(s_min/s_max = {s[-1] / s[0]:.3e})")

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def size(self) -> int:
        return self.X.shape[1]

    @property
    def m(self) -> int:
        return self.size // self.n

    @property
    def J(self) -> np.ndarray:
        """The Jordan matrix assembled from the block metadata."""
        N = self.size
        J = np.zeros((N, N), dtype=complex)
        at = 0
        for b in self.blocks:
            for t in range(b.size):
                J[at + t, at + t] = b.eigenvalue
                if t + 1 < b.size:
                    J[at + t, at + t + 1] = 1.0
            at += b.size
        return J

    @property
    def max_block_size(self) -> int:
        return max(b.size for b in self.blocks)

    def max_block_size_at(self, lam: complex, tol: float = 1e-8) -> int:
        """Largest block dimension among blocks with eigenvalue near lam."""
        sizes = [b.size for b in self.blocks if abs(b.eigenvalue - lam) <= tol]
        if not sizes:
            raise NotAnEigenvalueError(f"no Jordan block with eigenvalue near {lam}")
        return max(sizes)

    def stacked(self) -> np.ndarray:
        """[X; XJ; ...; XJ^{m-1}], the invertibility witness."""
        J = self.J
        rows = [self.X]
        for _ in range(self.m - 1):
            rows.append(rows[-1] @ J)
        return np.vstack(rows)


def validate_jordan_triple(poly: MatrixPolynomial, triple: JordanTriple,
                           samples, near_tol: float = 1e-8) -> float:
    """Max over samples of the relative resolvent residual
    ||P(z)^{-1} - X (zI - J)^{-1} Y|| / ||P(z)^{-1}||.

    Samples with s_min(P(z)) <= near_tol * s_max(P(z)) sit too close to the
    spectrum and are skipped; if every sample is skipped the validation fails.
    """
    if triple.size != poly.n * poly.m or triple.n != poly.n:
        raise InvalidTripleError(
            f"triple is {triple.n}x{triple.size}, polynomial needs "
            f"{poly.n}x{poly.n * poly.m}")
    J = triple.J
    N = triple.size
    worst = -1.0
    skipped = []
    for z in samples:
        z = complex(z)
        M = poly.eval(z)
        s = singular_values(M)
        if s[-1] <= near_tol * s[0]:
            skipped.append(z)
            continue
        Pinv = np.linalg.inv(M)
        resolvent = triple.X @ np.linalg.solve(z * np.eye(N) - J, triple.Y)
        worst = max(worst, spectral_norm(Pinv - resolvent) / spectral_norm(Pinv))
    if worst < 0:
        raise HypothesisViolationError(
            f"all {len(skipped)} samples are within tolerance of the spectrum; "
            "choose sample points away from the eigenvalues")
    return worst


def eigenproblem_cond(triple: JordanTriple) -> float:
    """Global eigenproblem condition number ||X|| ||Y|| of the triple."""
    return spectral_norm(triple.X) * spectral_norm(triple.Y)
