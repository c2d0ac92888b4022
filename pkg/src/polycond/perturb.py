"""Admissible perturbations of a matrix polynomial.

A perturbation is a full set of coefficient deltas Delta_0 .. Delta_m; it is
admissible at level eps for a weight set w when ||Delta_j|| <= eps * w_j for
every j.  Two constructions are provided:

- defect_perturbation builds the smallest-known admissible perturbation that
  turns a given simple eigenvalue into a multiple one, and certifies the
  result numerically.
- random_perturbation draws deltas uniformly on the admissible boundary
  (||Delta_j|| = eps * w_j exactly) from a counter-based generator, so sweeps
  are reproducible and partitionable across streams.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import _derivative_frame
from .core import (
    LEADING_SINGULAR_RTOL,
    MatrixPolynomial,
    WeightSet,
    as_complex_matrix,
    singular_values,
    spectral_norm,
)
from .errors import (
    DegenerateProblemError,
    HypothesisViolationError,
    InvalidPolynomialError,
    PolycondError,
)
from .spectra import eigenvalues

__all__ = [
    "PerturbedPolynomial",
    "AdmissibilityReport",
    "is_admissible",
    "perturbation_rng",
    "random_perturbation",
    "defect_perturbation",
    "eigenvalue_shift_samples",
]

# eigenvalues of the materialized polynomial within this relative distance of
# the target count as a multiplicity certificate; a doubled defective
# eigenvalue splits like the square root of the backward error, so anything
# much tighter than 1e-5 rejects correct constructions on problems with
# coefficient norms in the tens
PAIRING_RTOL = 1e-5
# second-smallest singular value below this multiple of the largest counts as
# a rank drop of two or more
RANK_DROP_RTOL = 1e-8


@dataclass(frozen=True)
class PerturbedPolynomial:
    """A base polynomial plus one delta per coefficient.

    eps_used is the smallest level at which the deltas are admissible for the
    stored weights; certificates names the checks the construction passed.
    """

    base: MatrixPolynomial
    deltas: tuple
    eps_used: float
    weights: WeightSet
    certificates: tuple = ()

    def __post_init__(self):
        n, m = self.base.n, self.base.m
        if len(self.deltas) != m + 1:
            raise InvalidPolynomialError(
                f"expected {m + 1} deltas for degree {m}, got {len(self.deltas)}")
        frozen = tuple(
            as_complex_matrix(d, name=f"deltas[{j}]", square=True)
            for j, d in enumerate(self.deltas))
        for j, d in enumerate(frozen):
            if d.shape != (n, n):
                raise InvalidPolynomialError(
                    f"deltas[{j}] has shape {d.shape}, expected {(n, n)}")
        object.__setattr__(self, "deltas", frozen)

    @property
    def delta_norms(self) -> tuple:
        return tuple(spectral_norm(d) for d in self.deltas)

    def materialize(self) -> MatrixPolynomial:
        """The perturbed polynomial itself; raises if the perturbed leading
        coefficient is singular."""
        return MatrixPolynomial(tuple(
            self.base.coeffs[j] + self.deltas[j] for j in range(self.base.m + 1)))


@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    eps: float
    tol: float
    delta_norms: tuple
    slack: tuple        # eps * w_j - ||Delta_j|| per coefficient
    tight: tuple        # equality within tol per coefficient


def is_admissible(base: MatrixPolynomial, candidate, eps: float,
                  weights: WeightSet, tol: float = 1e-12) -> AdmissibilityReport:
    """Check ||Delta_j|| <= eps * w_j for every coefficient.

    candidate is either a PerturbedPolynomial over the same base or a plain
    MatrixPolynomial of the same shape (deltas are then the coefficient
    differences).  Comparisons carry a slack of tol * max(1, eps * w_j).
    """
    weights.require_match(base)
    if eps < 0:
        raise HypothesisViolationError(f"eps must be nonnegative, got {eps}")
    if isinstance(candidate, PerturbedPolynomial):
        if candidate.base is not base and not all(
                np.array_equal(a, b)
                for a, b in zip(candidate.base.coeffs, base.coeffs)):
            raise InvalidPolynomialError(
                "the perturbation was built over a different base polynomial")
        deltas = candidate.deltas
    else:
        if candidate.n != base.n or candidate.m != base.m:
            raise InvalidPolynomialError(
                f"cannot compare a polynomial with n={candidate.n}, m={candidate.m} "
                f"against a base with n={base.n}, m={base.m}")
        deltas = tuple(candidate.coeffs[j] - base.coeffs[j]
                       for j in range(base.m + 1))
    norms = tuple(spectral_norm(d) for d in deltas)
    slack = tuple(eps * weights.weights[j] - norms[j] for j in range(base.m + 1))
    margin = tuple(tol * max(1.0, eps * weights.weights[j]) for j in range(base.m + 1))
    admissible = all(s >= -g for s, g in zip(slack, margin))
    tight = tuple(abs(s) <= g for s, g in zip(slack, margin))
    return AdmissibilityReport(admissible=admissible, eps=float(eps), tol=float(tol),
                               delta_norms=norms, slack=slack, tight=tight)


def perturbation_rng(seed: int, stream: int = 0, attempt: int = 0) -> np.random.Generator:
    """Counter-based generator for perturbation draws.

    (seed, stream) addresses an independent sequence, so parallel sweeps can
    partition work by stream without coordination; attempt separates redraws
    after a rejected (non-materializable) draw.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(stream, attempt))
    return np.random.Generator(np.random.Philox(ss))


def random_perturbation(poly: MatrixPolynomial, eps: float, weights: WeightSet,
                        seed: int, stream: int = 0,
                        max_attempts: int = 8) -> PerturbedPolynomial:
    """Draw deltas with ||Delta_j|| = eps * w_j exactly (zero where w_j = 0).

    Each delta is a complex Gaussian matrix rescaled to the admissible
    boundary.  Draws that leave the perturbed leading coefficient singular are
    rejected and redrawn on a fresh attempt counter.
    """
    weights.require_match(poly)
    if eps < 0:
        raise HypothesisViolationError(f"eps must be nonnegative, got {eps}")
    n = poly.n
    for attempt in range(max_attempts):
        rng = perturbation_rng(seed, stream, attempt)
        deltas = []
        for j in range(poly.m + 1):
            target = eps * weights.weights[j]
            if target == 0.0:
                deltas.append(np.zeros((n, n), dtype=complex))
                continue
            g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            ng = spectral_norm(g)
            if ng == 0.0:
                break
            deltas.append((target / ng) * g)
        else:
            lead = poly.coeffs[-1] + deltas[-1]
            s = singular_values(lead)
            if s[0] > 0.0 and s[-1] > LEADING_SINGULAR_RTOL * s[0]:
                return PerturbedPolynomial(
                    base=poly, deltas=tuple(deltas), eps_used=float(eps),
                    weights=weights, certificates=("leading-nonsingular",))
    raise DegenerateProblemError(
        f"no materializable perturbation found in {max_attempts} attempts at "
        f"eps = {eps}; eps * w_m = {eps * weights.weights[-1]:.3e} likely "
        f"reaches the smallest singular value of the leading coefficient")


def _completion_to(x: np.ndarray) -> np.ndarray:
    """Unitary V with V e_1 = x exactly (x unit)."""
    n = x.shape[0]
    A = np.eye(n, dtype=complex)
    A[:, 0] = x
    Q, _ = np.linalg.qr(A)
    # Q[:, 0] spans x; rotate its phase so the first column is x itself
    ph = complex(Q[:, 0].conj() @ x)
    V = Q.copy()
    V[:, 0] = Q[:, 0] * ph
    return V


def defect_perturbation(poly: MatrixPolynomial, weights: WeightSet, lam: complex,
                        x: np.ndarray, y: np.ndarray) -> PerturbedPolynomial:
    """Admissible perturbation making the simple eigenvalue lam multiple.

    x and y are right and left eigenvectors of lam.  The construction works in
    a unitary frame whose first column is x: with Pt(z) = P(z) V and
    M = Pt'(lam)^{-1} Pt(lam), the single matrix

        E = (delta / w* w) [0 0; 0 w a*],   y* Pt'(lam) = [delta, w*],
        a* = first row tail of M,

    yields Dhat = Pt'(lam) E, which is spread over the coefficients as

        Delta_j = (conj(lam)/|lam|)^j (w_j / w(|lam|)) Dhat V*

    (for lam = 0 the whole perturbation is carried by Delta_0).  The returned
    eps_used = ||Dhat|| / w(|lam|) never exceeds dist_mult_bound, and the
    result carries certificates naming the multiplicity checks that passed.
    """
    lam = complex(lam)
    x = np.asarray(x, dtype=complex).reshape(-1)
    x = x / np.linalg.norm(x)
    y = np.asarray(y, dtype=complex).reshape(-1)
    y = y / np.linalg.norm(y)
    n = poly.n
    px = poly.eval(lam)
    rx = float(np.linalg.norm(px @ x))
    ry = float(np.linalg.norm(y.conj() @ px))
    gate = 1e-8 * max(1.0, spectral_norm(px))
    # reject junk vectors before the derivative gates so the error names the
    # actual problem instead of a coupling artifact
    if rx > gate or ry > gate:
        raise HypothesisViolationError(
            f"(x, y) are not eigenvectors of lam = {lam}: residuals "
            f"||P(lam) x|| = {rx:.3e}, ||y* P(lam)|| = {ry:.3e} exceed {gate:.3e}")
    # remaining hypothesis gates: P'(lam) nonsingular, lam numerically simple,
    # y* P'(lam) not parallel to x*
    _derivative_frame(poly, weights, lam, x, y)

    V = _completion_to(x)
    Ppt = poly.eval_derivative(lam) @ V
    M = np.linalg.solve(Ppt, px @ V)
    row = y.conj() @ Ppt
    delta = complex(row[0])
    wvec = row[1:].conj()
    a_row = M[0, 1:]
    if np.linalg.norm(a_row) <= 1e-14 * max(1.0, spectral_norm(M)):
        raise HypothesisViolationError(
            "the defect direction vanishes: the first row of "
            "Pt'(lam)^{-1} Pt(lam) has no off-diagonal part")
    E = np.zeros((n, n), dtype=complex)
    E[1:, 1:] = (delta / float(np.linalg.norm(wvec) ** 2)) * np.outer(wvec, a_row)
    Dhat = Ppt @ E
    w_at = weights.eval(abs(lam))
    eps_used = spectral_norm(Dhat) / w_at
    back = Dhat @ V.conj().T
    deltas = []
    for j in range(poly.m + 1):
        if lam == 0:
            deltas.append(back if j == 0 else np.zeros((n, n), dtype=complex))
        else:
            direction = (lam.conjugate() / abs(lam)) ** j
            deltas.append(direction * (weights.weights[j] / w_at) * back)

    out = PerturbedPolynomial(base=poly, deltas=tuple(deltas),
                              eps_used=float(eps_used), weights=weights)
    mat = out.materialize()
    certs = []
    vals = eigenvalues(mat)
    scale = max(1.0, abs(lam))
    if int(np.sum(np.abs(vals - lam) <= PAIRING_RTOL * scale)) >= 2:
        certs.append("eigenvalue-pairing")
    s = singular_values(mat.eval(lam))
    if n >= 2 and (s[0] == 0.0 or s[-2] <= RANK_DROP_RTOL * s[0]):
        certs.append("rank-drop")
    if not certs:
        nearest = float(np.min(np.abs(vals - lam)))
        raise PolycondError(
            "the constructed perturbation failed to certify a multiple "
            f"eigenvalue at {lam}: nearest perturbed eigenvalue is {nearest:.3e} "
            f"away and the rank drop check found s_{n - 1}/s_1 = "
            f"{s[-2] / s[0] if n >= 2 and s[0] else 0.0:.3e}")
    return PerturbedPolynomial(base=poly, deltas=out.deltas, eps_used=out.eps_used,
                               weights=weights, certificates=tuple(certs))


def eigenvalue_shift_samples(poly: MatrixPolynomial, weights: WeightSet,
                             eps: float, lam: complex, samples: int, seed: int,
                             stream_base: int = 0) -> np.ndarray:
    """Distance from lam to the nearest eigenvalue of each of `samples`
    boundary perturbations, one independent stream per sample.

    The running maximum divided by eps estimates the condition number of lam
    from below as eps -> 0.
    """
    lam = complex(lam)
    out = np.empty(samples, dtype=float)
    for i in range(samples):
        q = random_perturbation(poly, eps, weights, seed, stream=stream_base + i)
        vals = eigenvalues(q.materialize())
        out[i] = float(np.min(np.abs(vals - lam)))
    return out
