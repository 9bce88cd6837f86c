"""Real-coefficient polynomials and a robust complex root solver.

Coefficients are stored low-to-high: ``coeffs[i]`` multiplies ``z**i``.
Root finding combines companion-matrix eigenvalues (deterministic, good
starting points) with Aberth-Ehrlich simultaneous correction, iterated
until every root satisfies the residual contract
``|p(root)| <= ROOT_RESIDUAL_TOL * (1 + max|c_i|)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegreeZeroError, EmptyRootSetError, NoConvergenceError

ROOT_RESIDUAL_TOL = 1e-9
MAX_POLISH_ITERS = 500


@dataclass(frozen=True)
class RealPolynomial:
    """Normalized real polynomial: trailing zeros trimmed, degree = index
    of the last nonzero coefficient. The zero polynomial normalizes to
    degree 0 with coeffs (0.0,)."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = [float(v) for v in self.coeffs]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        if not c:
            c = [0.0]
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0.0

    def __call__(self, z):
        return eval_poly(self, z)


@dataclass(frozen=True)
class ComplexRootSet:
    """Root multiset with per-root residuals |p(root)| as quality metric.

    Roots are sorted by (real, imag) so output order is deterministic."""

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]

    def __len__(self):
        return len(self.roots)


def eval_poly(p: RealPolynomial, z):
    """Evaluate p at z (scalar or array, real or complex) by Horner."""
    z = np.asarray(z)
    acc = np.zeros_like(z, dtype=complex) if np.iscomplexobj(z) else np.zeros_like(z, dtype=float)
    for c in reversed(p.coeffs):
        acc = acc * z + c
    if acc.ndim == 0:
        return complex(acc) if np.iscomplexobj(acc) else float(acc)
    return acc


def _eval_and_derivative(coeffs, z):
    # Horner for p and p' simultaneously; coeffs low-to-high.
    p = np.zeros_like(z)
    dp = np.zeros_like(z)
    for c in reversed(coeffs):
        dp = dp * z + p
        p = p * z + c
    return p, dp


def residual_tolerance(coeffs, z):
    """Attainable residual bound at z: the base contract
    ROOT_RESIDUAL_TOL * (1 + max|c_i|), widened by the evaluation scale
    sum |c_i| |z|^i for roots outside the unit disk, where float64
    evaluation noise alone exceeds the base bound."""
    coeffs = np.abs(np.asarray(coeffs, dtype=float))
    base = 1.0 + coeffs.max()
    az = np.abs(z)
    scale = np.zeros_like(az)
    for c in coeffs[::-1]:
        scale = scale * az + c
    return ROOT_RESIDUAL_TOL * np.maximum(base, scale)


def roots(p: RealPolynomial) -> ComplexRootSet:
    """All complex roots of p, with multiplicity.

    Raises DegreeZeroError for constant polynomials and NoConvergenceError
    if the residual contract cannot be met within the polish budget.
    """
    if p.degree < 1:
        raise DegreeZeroError("constant polynomial has no roots")
    # Normalize to monic to condition the iteration.
    c = np.asarray(p.coeffs, dtype=float)
    monic = c / c[-1]

    # Companion-matrix eigenvalues as deterministic starting points.
    z = np.polynomial.polynomial.polyroots(monic).astype(complex)

    # Aberth-Ehrlich polish of any root violating the residual contract,
    # measured against the original (unnormalized) coefficients.
    cc = c.astype(complex)
    for _ in range(MAX_POLISH_ITERS):
        pv, _ = _eval_and_derivative(cc, z)
        bad = np.abs(pv) > residual_tolerance(c, z)
        if not np.any(bad):
            break
        pv_m, dp_m = _eval_and_derivative(monic.astype(complex), z)
        newton = np.where(dp_m != 0, pv_m / np.where(dp_m != 0, dp_m, 1.0), 0.0)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        # Clustered roots give near-zero pairwise gaps; those corrections
        # are unreliable, so guard the denominator.
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.sum(1.0 / diff, axis=1)
        denom = 1.0 - newton * s
        step = np.where(np.abs(denom) > 1e-12, newton / np.where(denom != 0, denom, 1.0), newton)
        z = np.where(bad, z - step, z)
    else:
        pv, _ = _eval_and_derivative(cc, z)
        if np.any(np.abs(pv) > residual_tolerance(c, z)):
            raise NoConvergenceError(
                f"residual contract unreachable in {MAX_POLISH_ITERS} iterations"
            )

    order = np.lexsort((z.imag, z.real))
    z = z[order]
    res = np.abs(_eval_and_derivative(cc, z)[0])
    return ComplexRootSet(tuple(complex(v) for v in z), tuple(float(r) for r in res))


def max_modulus(r: ComplexRootSet) -> float:
    """Largest root modulus of the set."""
    if len(r) == 0:
        raise EmptyRootSetError("empty root set")
    return max(abs(z) for z in r.roots)
