"""Matrix polynomials P(lam) = sum_j A_j lam^j and perturbation weights.

The polynomial is stored as the ordered coefficient list A_0..A_m with a
nonsingular leading coefficient; the weight set w_0..w_m induces the scalar
polynomial w(r) used to scale admissible perturbations.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidPolynomialError, InvalidWeightsError

__all__ = [
    "MatrixPolynomial",
    "WeightSet",
    "as_complex_matrix",
    "singular_values",
    "spectral_norm",
]

# Leading coefficient counts as singular below this relative threshold.
LEADING_SINGULAR_RTOL = 1e-12


def as_complex_matrix(a, name: str = "matrix", square: bool = False) -> np.ndarray:
    """Validate and convert input to a read-only complex128 2-D array."""
    M = np.asarray(a, dtype=complex)
    if M.ndim != 2:
        raise InvalidPolynomialError(f"{name}: expected a 2-D matrix, got ndim={M.ndim}")
    if square and M.shape[0] != M.shape[1]:
        raise InvalidPolynomialError(f"{name}: expected a square matrix, got shape {M.shape}")
    if not (np.all(np.isfinite(M.real)) and np.all(np.isfinite(M.imag))):
        raise InvalidPolynomialError(f"{name}: entries must be finite (no NaN/Inf)")
    M = M.copy()
    M.flags.writeable = False
    return M


def singular_values(M) -> np.ndarray:
    """Singular values of M in descending order.

    The first entry is the spectral norm; for square M the last entry is
    s_min, the distance to singularity.
    """
    return np.linalg.svd(np.asarray(M, dtype=complex), compute_uv=False)


def spectral_norm(M) -> float:
    """Largest singular value of M."""
    M = np.asarray(M, dtype=complex)
    if M.size == 0 or not M.any():
        return 0.0
    return float(np.linalg.norm(M, 2))


@dataclass(frozen=True)
class MatrixPolynomial:
    """Square matrix polynomial with nonsingular leading coefficient.

    Parameters
    ----------
    coeffs : sequence of (n, n) array_like
        Coefficients A_0..A_m in increasing degree order. The degree is
        taken from the list as given; a singular (or zero) A_m is a
        construction error, never a silent degree reduction.
    """

    coeffs: tuple[np.ndarray, ...]

    def __init__(self, coeffs):
        mats = [as_complex_matrix(A, name=f"coefficient A_{j}", square=True)
                for j, A in enumerate(coeffs)]
        if not mats:
            raise InvalidPolynomialError("a matrix polynomial needs at least one coefficient")
        n = mats[0].shape[0]
        for j, A in enumerate(mats):
            if A.shape != (n, n):
                raise InvalidPolynomialError(
                    f"coefficient A_{j} has shape {A.shape}, expected {(n, n)}")
        s = singular_values(mats[-1])
        if s[0] == 0.0 or s[-1] <= LEADING_SINGULAR_RTOL * s[0]:
            raise InvalidPolynomialError(
                "leading coefficient is numerically singular "
                f"(s_min={s[-1]:.3e}, s_max={s[0]:.3e})")
        object.__setattr__(self, "coeffs", tuple(mats))

    @property
    def n(self) -> int:
        """Matrix dimension."""
        return self.coeffs[0].shape[0]

    @property
    def m(self) -> int:
        """Polynomial degree."""
        return len(self.coeffs) - 1

    def eval(self, z: complex) -> np.ndarray:
        """P(z) by the Horner recurrence; exact A_0 at z = 0."""
        z = complex(z)
        if z == 0:
            return self.coeffs[0].copy()
        acc = np.array(self.coeffs[-1])
        for A in reversed(self.coeffs[:-1]):
            acc = acc * z + A
        return acc

    def eval_derivative(self, z: complex, order: int = 1) -> np.ndarray:
        """P^(order)(z); the zero matrix for order > m, P(z) for order 0."""
        if order < 0:
            raise ValueError("derivative order must be nonnegative")
        if order == 0:
            return self.eval(z)
        if order > self.m:
            return np.zeros((self.n, self.n), dtype=complex)
        z = complex(z)
        scaled = []
        for j in range(order, self.m + 1):
            f = 1.0
            for t in range(j, j - order, -1):
                f *= t
            scaled.append(f * self.coeffs[j])
        acc = np.array(scaled[-1])
        for A in reversed(scaled[:-1]):
            acc = acc * z + A
        return acc

    def norm_inf(self) -> float:
        """max_j of the spectral norm of A_j."""
        return max(spectral_norm(A) for A in self.coeffs)

    def coefficient_norms(self) -> tuple[float, ...]:
        """Spectral norm of each coefficient, in degree order."""
        return tuple(spectral_norm(A) for A in self.coeffs)


@dataclass(frozen=True)
class WeightSet:
    """Nonnegative perturbation weights w_0..w_m with w_0 > 0."""

    weights: tuple[float, ...]

    def __init__(self, weights):
        w = tuple(float(x) for x in weights)
        if not w:
            raise InvalidWeightsError("a weight set needs at least one weight")
        if any(not np.isfinite(x) for x in w):
            raise InvalidWeightsError("weights must be finite")
        if any(x < 0 for x in w):
            raise InvalidWeightsError("weights must be nonnegative")
        if w[0] <= 0:
            raise InvalidWeightsError("the constant-term weight w_0 must be strictly positive")
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_coefficient_norms(cls, poly: MatrixPolynomial) -> "WeightSet":
        """Default weights w_j = ||A_j||, with w_0 floored at a machine-positive
        value when ||A_0|| = 0 (the floor keeps w(r) > 0)."""
        norms = list(poly.coefficient_norms())
        if norms[0] == 0.0:
            norms[0] = np.finfo(float).tiny
        return cls(norms)

    @property
    def m(self) -> int:
        return len(self.weights) - 1

    def matches(self, poly: MatrixPolynomial) -> bool:
        return len(self.weights) == poly.m + 1

    def require_match(self, poly: MatrixPolynomial) -> None:
        if not self.matches(poly):
            raise InvalidWeightsError(
                f"weight set has {len(self.weights)} entries, "
                f"polynomial of degree {poly.m} needs {poly.m + 1}")

    def eval(self, r: float, order: int = 0) -> float:
        """w(r) (order 0, strictly positive) or w'(r) (order 1) for r >= 0."""
        if r < 0:
            raise ValueError("the weight polynomial takes nonnegative arguments")
        if order == 0:
            acc = self.weights[-1]
            for wj in reversed(self.weights[:-1]):
                acc = acc * r + wj
            return float(acc)
        if order == 1:
            if len(self.weights) == 1:
                return 0.0
            acc = self.m * self.weights[-1]
            for j in range(self.m - 1, 0, -1):
                acc = acc * r + j * self.weights[j]
            return float(acc)
        raise ValueError("only orders 0 and 1 are supported")
