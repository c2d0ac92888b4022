"""Independent oracles and generators shared across the test suite.

Everything here recomputes quantities by a different route than the library
(naive power sums, cofactor expansions, interpolation-based root finding) so
the tests never compare an implementation against itself.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
from scipy.optimize import linear_sum_assignment

from polycond import MatrixPolynomial, WeightSet, companion, load_problem

FIXTURES = Path(__file__).parent / "fixtures"


def load_fixture(name: str):
    return load_problem(str(FIXTURES / f"{name}.json"))


# ---------------------------------------------------------------------------
# evaluation oracles


def naive_eval(coeffs, z: complex) -> np.ndarray:
    """Power-sum evaluation sum_j A_j z^j, no Horner."""
    z = complex(z)
    out = np.zeros_like(np.asarray(coeffs[0], dtype=complex))
    for j, A in enumerate(coeffs):
        out = out + np.asarray(A, dtype=complex) * z**j
    return out


def naive_derivative(coeffs, z: complex, order: int) -> np.ndarray:
    """Term-wise derivative sum_{j>=order} j!/(j-order)! A_j z^{j-order}."""
    z = complex(z)
    out = np.zeros_like(np.asarray(coeffs[0], dtype=complex))
    for j, A in enumerate(coeffs):
        if j < order:
            continue
        c = math.factorial(j) // math.factorial(j - order)
        out = out + c * np.asarray(A, dtype=complex) * z ** (j - order)
    return out


def naive_weight(weights, r: float) -> float:
    return float(sum(w * r**j for j, w in enumerate(weights)))


# ---------------------------------------------------------------------------
# adjugate and SVD oracles


def cofactor_adjugate(M) -> np.ndarray:
    """adj(M) by explicit cofactor expansion; adj of a 1x1 matrix is [[1]]."""
    M = np.asarray(M, dtype=complex)
    n = M.shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=complex)
    adj = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            minor = np.delete(np.delete(M, i, axis=0), j, axis=1)
            adj[j, i] = (-1) ** (i + j) * np.linalg.det(minor)
    return adj


def svd2_closed_form(M) -> tuple[float, float]:
    """Singular values of a 2x2 complex matrix from the eigenvalues of M*M."""
    M = np.asarray(M, dtype=complex)
    G = M.conj().T @ M
    t = float(G[0, 0].real + G[1, 1].real)
    d = float(max((G[0, 0] * G[1, 1] - G[0, 1] * G[1, 0]).real, 0.0))
    disc = math.sqrt(max(t * t - 4.0 * d, 0.0))
    hi = math.sqrt(max((t + disc) / 2.0, 0.0))
    lo = math.sqrt(max((t - disc) / 2.0, 0.0))
    return hi, lo


def singular_with_known_adjugate(rng: np.random.Generator, n: int):
    """Random n x n matrix with exactly one zero singular value.

    Returns (M, product of the n-1 nonzero singular values).
    """
    s = np.sort(rng.uniform(0.5, 3.0, size=n - 1))[::-1] if n > 1 else np.array([])
    U = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))[0]
    V = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))[0]
    M = U @ np.diag(np.concatenate([s, [0.0]])) @ V.conj().T
    return M, float(np.prod(s)) if n > 1 else 1.0


# ---------------------------------------------------------------------------
# root-finding oracle


def det_poly_roots(poly: MatrixPolynomial) -> np.ndarray:
    """Roots of det P(lambda) via interpolation of the scalar determinant.

    Samples det P at nm+1 scaled roots of unity, solves for the monomial
    coefficients, and calls the classical scalar root finder. Entirely
    independent of the companion linearization.
    """
    deg = poly.n * poly.m
    radius = 1.0 + max(
        float(np.linalg.norm(np.asarray(A))) for A in poly.coeffs
    )
    nodes = radius * np.exp(2j * np.pi * np.arange(deg + 1) / (deg + 1))
    dets = np.array([np.linalg.det(poly.eval(z)) for z in nodes])
    V = np.vander(nodes, deg + 1, increasing=True)
    coeffs = np.linalg.solve(V, dets)
    return np.roots(coeffs[::-1])


def pair_max_distance(a, b) -> float:
    """Max matched distance between two equal-size complex multisets under
    the optimal (Hungarian) pairing."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    assert len(a) == len(b)
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max()) if len(a) else 0.0


# ---------------------------------------------------------------------------
# matrix eigenvalue condition oracle


def companion_eig_conds(poly: MatrixPolynomial):
    """Eigenvalues of the companion matrix with the classical per-eigenvalue
    condition numbers ||u|| ||v|| / |u* v| from a full left/right eigensolve."""
    import scipy.linalg

    C = companion(poly).matrix
    vals, vl, vr = scipy.linalg.eig(C, left=True, right=True)
    conds = np.empty(len(vals))
    for i in range(len(vals)):
        u = vl[:, i]
        v = vr[:, i]
        conds[i] = np.linalg.norm(u) * np.linalg.norm(v) / abs(u.conj() @ v)
    return vals, conds


# ---------------------------------------------------------------------------
# random fixture generation


def random_polynomial(rng: np.random.Generator, n: int, m: int) -> MatrixPolynomial:
    coeffs = [
        (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2 * n)
        for _ in range(m + 1)
    ]
    return MatrixPolynomial(coeffs)


def random_well_separated(
    rng: np.random.Generator,
    n: int,
    m: int,
    min_gap: float = 0.1,
    max_tries: int = 500,
) -> MatrixPolynomial:
    """Random polynomial whose eigenvalues are pairwise at least min_gap apart
    and whose leading coefficient is comfortably nonsingular."""
    for _ in range(max_tries):
        poly = random_polynomial(rng, n, m)
        s = np.linalg.svd(np.asarray(poly.coeffs[m]), compute_uv=False)
        if s[-1] < s[0] / 20.0:
            continue
        vals = np.linalg.eigvals(companion(poly).matrix)
        if len(vals) > 1:
            diff = np.abs(vals[:, None] - vals[None, :])
            np.fill_diagonal(diff, np.inf)
            if diff.min() < min_gap:
                continue
        if np.abs(vals).max() > 20.0:
            continue
        return poly
    raise RuntimeError(f"no well-separated polynomial found for n={n}, m={m}")


def unit_weights(poly: MatrixPolynomial) -> WeightSet:
    return WeightSet([1.0] * (poly.m + 1))


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def diagonalizable_triple(poly: MatrixPolynomial):
    """Jordan triple for a polynomial with simple eigenvalues, built from the
    companion eigendecomposition: X = top block of the eigenvector matrix,
    J = diag of eigenvalues, Y = last block column of the inverse times
    A_m^{-1}. Valid whenever the companion matrix is diagonalizable."""
    from polycond import JordanBlock, JordanTriple

    C = companion(poly).matrix
    vals, V = np.linalg.eig(C)
    n = poly.n
    X = V[:n, :]
    W = np.linalg.inv(V)
    Y = W[:, -n:] @ np.linalg.inv(np.asarray(poly.coeffs[poly.m], dtype=complex))
    blocks = [JordanBlock(eigenvalue=complex(v), size=1) for v in vals]
    return JordanTriple(X, blocks, Y)


def snap_vectors(poly: MatrixPolynomial, target: complex):
    """Nearest computed eigenvalue to target, with its right/left vectors."""
    from polycond import eig_vectors, nearest_eigenvalue, spectrum

    sp = spectrum(poly)
    lam = complex(sp.eigenvalues[nearest_eigenvalue(sp.eigenvalues, target)])
    x, y = eig_vectors(poly, lam, values=sp.eigenvalues)
    return lam, x, y
