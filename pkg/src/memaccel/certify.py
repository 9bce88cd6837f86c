"""Numerical apparatus behind the optimality proof.

Maps arbitrary gains to the normalized coefficient vector whose zero
vector characterizes the optimal tuning, builds the scaled test
polynomial, detects the special cases with immediate unstable roots,
scans angles for a certificate root of modulus >= 1, and emits the
complex-plane fields (magnitude partition, phase match) for inspection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import polyroots
from .accel import Gains, tune_theorem3
from .errors import AlphaZeroError, BetaTildeMinusOneError
from .polyroots import RealPolynomial
from .spectral import SpectralInterval

WITNESS_TOL = 1e-8
DEFAULT_THETA_SAMPLES = 4096
ANGLE_TOL = 0.02
TIE_TOL = 1e-12


@dataclass(frozen=True)
class ClaimCoeffs:
    """Normalized coefficients a_0 .. a_{M-1} of the perturbation
    polynomial, together with the reference modulus nu in (0, 1).
    The all-zero vector corresponds to the optimal tuning."""

    M: int
    nu: float
    a: tuple[float, ...]

    def __post_init__(self):
        if self.M < 2:
            raise ValueError("need M >= 2")
        if not (0 < self.nu < 1):
            raise ValueError(f"nu must lie in (0, 1), got {self.nu}")
        if len(self.a) != self.M:
            raise ValueError(f"need {self.M} coefficients, got {len(self.a)}")
        if self.a[-1] == -1.0:
            raise ValueError("leading coefficient a_{M-1} = -1 is inadmissible")
        object.__setattr__(self, "a", tuple(float(v) for v in self.a))

    @property
    def is_zero(self) -> bool:
        return all(v == 0.0 for v in self.a)


@dataclass(frozen=True)
class Prop8Result:
    """Special-case detection: either the perturbation polynomial has a
    root on the unit circle (witness angle constructible directly), or
    its leading coefficient lies below -1 (every angle is a witness)."""

    kind: str  # "unit_circle_root" | "leading_below_minus_one" | "none"
    root: complex | None = None


@dataclass(frozen=True)
class WitnessReport:
    """Certificate angle whose test polynomial has a root of modulus
    >= 1 - WITNESS_TOL, if found."""

    found: bool
    theta: float
    root: complex
    modulus: float
    scanned: int


@dataclass(frozen=True)
class PartitionField:
    """Complex-plane sampling of sign(|P1| - |P2|) and of phase match,
    with root overlays; P1 is the unperturbed factor, P2 the (negated)
    perturbation."""

    re: np.ndarray            # (nx,)
    im: np.ndarray            # (ny,)
    type_mask: np.ndarray     # (ny, nx) ints: +1 type 1, -1 type 2, 0 tie
    phase_match: np.ndarray   # (ny, nx) bools
    roots_p1: tuple[complex, ...]
    roots_p2: tuple[complex, ...]
    theta: float

    def to_json(self) -> str:
        payload = {
            "theta": self.theta,
            "re_range": [float(self.re[0]), float(self.re[-1]), int(self.re.size)],
            "im_range": [float(self.im[0]), float(self.im[-1]), int(self.im.size)],
            "type_mask": self.type_mask.astype(int).ravel().tolist(),
            "phase_match": self.phase_match.astype(int).ravel().tolist(),
            "roots_p1": [[z.real, z.imag] for z in self.roots_p1],
            "roots_p2": [[z.real, z.imag] for z in self.roots_p2],
        }
        return json.dumps(payload)


def gains_to_claim_coeffs(g: Gains, iv: SpectralInterval) -> ClaimCoeffs:
    """Normalized coefficient vector of the gains relative to the optimal
    tuning of the interval; the optimal tuning itself maps to zero."""
    if g.M < 2:
        raise ValueError("need M >= 2")
    if g.alpha == 0:
        raise AlphaZeroError("alpha = 0 inadmissible")
    t = tune_theorem3(iv, M=g.M)
    ratio = t.alpha_star / g.alpha
    M = g.M
    betas = g.betas  # beta_1 .. beta_{M-1}
    bt = np.zeros(M)
    # Cumulative sums of beta_{M-1}, beta_{M-2}, ... from the top index.
    for k in range(M - 2):
        bt[k] = ratio * sum(betas[M - m - 2] for m in range(k + 1))
    bt[M - 2] = ratio * sum(betas) - t.beta1_star
    bt[M - 1] = ratio - 1.0
    if abs(bt[M - 1] + 1.0) < 1e-12:
        raise BetaTildeMinusOneError(
            "normalized leading coefficient hit -1 (inconsistent input)"
        )
    nu = t.nu_star
    a = tuple(bt[m] * nu ** (m - M + 1) for m in range(M))
    return ClaimCoeffs(M=M, nu=nu, a=a)


def _p_tilde_base(c: ClaimCoeffs) -> np.ndarray:
    """Coefficients of (y^2 + 1) y^{M-2} + (y - 1/nu) sum_k a_k y^k,
    i.e. the test polynomial with its cos(theta) term left out."""
    M = c.M
    coeffs = np.zeros(M + 1)
    coeffs[M] += 1.0
    coeffs[M - 2] += 1.0
    inv_nu = 1.0 / c.nu
    for k, ak in enumerate(c.a):
        coeffs[k + 1] += ak
        coeffs[k] -= inv_nu * ak
    return coeffs


def _p_tilde_coeffs(c: ClaimCoeffs, theta: float) -> np.ndarray:
    """Low-to-high coefficients of
    (y^2 - 2 cos(theta) y + 1) y^{M-2} + (y - 1/nu) sum_k a_k y^k."""
    coeffs = _p_tilde_base(c)
    coeffs[c.M - 1] += -2.0 * np.cos(theta)
    return coeffs


def p_tilde(c: ClaimCoeffs, theta: float) -> RealPolynomial:
    """The degree-M test polynomial at angle theta."""
    if not (0.0 <= theta <= np.pi):
        raise ValueError(f"theta must lie in [0, pi], got {theta}")
    return RealPolynomial(tuple(_p_tilde_coeffs(c, theta)))


def _batched_max_roots(c: ClaimCoeffs, thetas: np.ndarray):
    """(max modulus, argmax root) of the test polynomial for each theta,
    via stacked companion matrices; only the y^{M-1} coefficient varies."""
    thetas = np.atleast_1d(thetas)
    M = c.M
    base = _p_tilde_base(c)
    lead = base[M]
    k = thetas.size
    coeffs = np.tile(base[:M] / lead, (k, 1))
    coeffs[:, M - 1] += -2.0 * np.cos(thetas) / lead
    comp = np.zeros((k, M, M))
    idx = np.arange(M - 1)
    comp[:, idx + 1, idx] = 1.0
    comp[:, :, M - 1] = -coeffs
    eigs = np.linalg.eigvals(comp)
    mods = np.abs(eigs)
    best = mods.argmax(axis=1)
    return mods[np.arange(k), best], eigs[np.arange(k), best]


def prop8_check(c: ClaimCoeffs, tol: float = 1e-9) -> Prop8Result:
    """Detect the two short-circuit cases: a root of the perturbation
    polynomial on the unit circle, or leading coefficient below -1.
    The zero vector (optimal tuning) is 'none' by convention."""
    if c.a[-1] < -1.0:
        return Prop8Result(kind="leading_below_minus_one")
    pert = RealPolynomial(c.a)
    if pert.is_zero or pert.degree == 0:
        return Prop8Result(kind="none")
    for r in polyroots.roots(pert).roots:
        if abs(abs(r) - 1.0) <= tol:
            return Prop8Result(kind="unit_circle_root", root=r)
    return Prop8Result(kind="none")


def claim6_witness(
    c: ClaimCoeffs,
    theta_samples: int = DEFAULT_THETA_SAMPLES,
    witness_tol: float = WITNESS_TOL,
) -> WitnessReport:
    """Find theta in [0, pi] whose test polynomial has a root of modulus
    >= 1 - witness_tol.

    Special cases short-circuit the scan: a unit-circle root of the
    perturbation gives the angle directly, and a leading coefficient
    below -1 makes theta = 0 a witness. Otherwise the scan is
    coarse-to-fine over theta with a final bracket polish; a not-found
    result means the search resolution was escaped and is reported
    as found=False, never silently dropped."""
    if theta_samples < 2:
        raise ValueError("need at least 2 theta samples")

    special = prop8_check(c)
    if special.kind == "unit_circle_root":
        theta = abs(np.angle(special.root))
        mod, root = _batched_max_roots(c, np.array([theta]))
        return WitnessReport(found=True, theta=float(theta), root=complex(root[0]),
                             modulus=float(mod[0]), scanned=1)

    scanned = 0
    # Coarse-to-fine: most inadmissible vectors reveal a witness on a
    # small grid, so escalate resolution only when needed.
    levels = [n for n in (64, 512, theta_samples) if n >= 2]
    best_theta, best_mod, best_root = 0.0, -np.inf, 0j
    for n in levels:
        thetas = np.linspace(0.0, np.pi, n)
        mods, roots_ = _batched_max_roots(c, thetas)
        scanned += n
        hit = np.flatnonzero(mods >= 1.0 - witness_tol)
        if hit.size:
            i = int(hit[0])
            return WitnessReport(found=True, theta=float(thetas[i]),
                                 root=complex(roots_[i]), modulus=float(mods[i]),
                                 scanned=scanned)
        i = int(mods.argmax())
        if mods[i] > best_mod:
            best_theta, best_mod, best_root = float(thetas[i]), float(mods[i]), complex(roots_[i])
            step = np.pi / (n - 1)
            lo, hi = max(0.0, best_theta - step), min(np.pi, best_theta + step)
    # Bracket polish around the best sample.
    for _ in range(60):
        if hi - lo < 1e-14:
            break
        thetas = np.linspace(lo, hi, 9)
        mods, roots_ = _batched_max_roots(c, thetas)
        scanned += 9
        i = int(mods.argmax())
        if mods[i] > best_mod:
            best_theta, best_mod, best_root = float(thetas[i]), float(mods[i]), complex(roots_[i])
        step = (hi - lo) / 8
        lo, hi = max(lo, thetas[i] - step), min(hi, thetas[i] + step)
    return WitnessReport(found=bool(best_mod >= 1.0 - witness_tol),
                         theta=best_theta, root=best_root,
                         modulus=best_mod, scanned=scanned)


def p1_eval(c: ClaimCoeffs, y, theta: float):
    """(y - e^{i theta})(y - e^{-i theta}) y^{M-2}."""
    y = np.asarray(y, dtype=complex)
    return (y * y - 2.0 * np.cos(theta) * y + 1.0) * y ** (c.M - 2)


def p2_eval(c: ClaimCoeffs, y):
    """-(y - 1/nu) * perturbation polynomial."""
    y = np.asarray(y, dtype=complex)
    pert = np.zeros_like(y)
    for ak in reversed(c.a):
        pert = pert * y + ak
    return -(y - 1.0 / c.nu) * pert


def p1_roots(c: ClaimCoeffs, theta: float) -> tuple[complex, ...]:
    return (np.exp(1j * theta), np.exp(-1j * theta)) + (0j,) * (c.M - 2)


def p2_roots(c: ClaimCoeffs) -> tuple[complex, ...]:
    out = [complex(1.0 / c.nu)]
    pert = RealPolynomial(c.a)
    if not pert.is_zero and pert.degree >= 1:
        out.extend(polyroots.roots(pert).roots)
    return tuple(out)


def partition_field(
    c: ClaimCoeffs,
    theta: float,
    re_range: tuple[float, float] = (-2.0, 2.0),
    im_range: tuple[float, float] = (-2.0, 2.0),
    resolution: int = 256,
    angle_tol: float = ANGLE_TOL,
) -> PartitionField:
    """Sample sign(|P1| - |P2|) and the phase-match locus on a window of
    the complex plane, with root overlays. Tie cells (difference below
    TIE_TOL) are marked 0."""
    if resolution < 32:
        raise ValueError("resolution must be at least 32")
    re = np.linspace(re_range[0], re_range[1], resolution)
    im = np.linspace(im_range[0], im_range[1], resolution)
    y = re[None, :] + 1j * im[:, None]
    v1 = p1_eval(c, y, theta)
    v2 = p2_eval(c, y)
    diff = np.abs(v1) - np.abs(v2)
    mask = np.where(np.abs(diff) <= TIE_TOL, 0, np.sign(diff)).astype(int)
    dphi = np.angle(v1) - np.angle(v2)
    wrapped = np.abs((dphi + np.pi) % (2.0 * np.pi) - np.pi)
    return PartitionField(
        re=re, im=im, type_mask=mask, phase_match=wrapped <= angle_tol,
        roots_p1=p1_roots(c, theta), roots_p2=p2_roots(c), theta=theta,
    )


def large_radius_phase_check(
    c: ClaimCoeffs,
    theta_grid: int = 512,
    R: float | None = None,
    phase_grid: int = 512,
) -> tuple[bool, tuple[float, float] | None]:
    """Verify that Real(P1/P2) stays negative on the circle |y| = R for
    all sampled angles, so no phase match exists at large radius.
    Requires a positive leading coefficient. Returns (ok, violating
    (theta, phase) sample or None)."""
    if c.a[-1] <= 0:
        raise ValueError("check requires a_{M-1} > 0")
    if R is None:
        bound1 = 3.0  # Cauchy bound of P1: coefficients within [-2, 2]
        p2c = _p2_coeffs(c)
        bound2 = 1.0 + max(abs(v) for v in p2c[:-1]) / abs(p2c[-1])
        R = 10.0 * (1.0 + max(bound1, bound2))
    phis = np.linspace(0.0, 2.0 * np.pi, phase_grid, endpoint=False)
    y = R * np.exp(1j * phis)
    v2 = p2_eval(c, y)
    for theta in np.linspace(0.0, np.pi, theta_grid):
        ratio = p1_eval(c, y, theta) / v2
        bad = np.flatnonzero(ratio.real >= 0)
        if bad.size:
            return False, (float(theta), float(phis[bad[0]]))
    return True, None


def _p2_coeffs(c: ClaimCoeffs) -> np.ndarray:
    coeffs = np.zeros(c.M + 1)
    inv_nu = 1.0 / c.nu
    for k, ak in enumerate(c.a):
        coeffs[k + 1] -= ak
        coeffs[k] += inv_nu * ak
    return coeffs


def witness_to_json(w: WitnessReport) -> str:
    return json.dumps({
        "found": w.found,
        "theta": w.theta,
        "root": [w.root.real, w.root.imag],
        "modulus": w.modulus,
        "scanned": w.scanned,
    })
