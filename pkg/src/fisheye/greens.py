"""Single-source Green's function of the mirrored disk cavity.

Closed form: with complex disk coordinates alpha_j = rho_j e^{i phi_j} and

    zeta(a1, a2) = (a1 - a2) / (a1 conj(a2) + 1),
    xi(a1, a2)   = (|zeta|^2 - 1) / (|zeta|^2 + 1),

the zz Green's function of the cavity is

    G_zz(r1, r2, omega) = -[P_nu(xi(a1, a2)) - P_nu(xi(a1, 1/conj(a2)))]
                          / (4 b sin(pi nu)),

where nu = order_parameter(omega).  xi(a1, a2) is minus the cosine of the
spherical distance between the stereographic images of the two points; the
first term carries the source (xi -> -1, log divergence) and the second the
mirror image (xi -> +1 at the antipode).  An eigenmode sum over the cavity
spectrum provides an independent representation (greens_modesum) used as a
cross-validation oracle: the two agree to ~1e-12 away from the source.

Scale: G_zz carries 1/length through the explicit 1/(4b); all rates in the
qed module divide out the remaining dimensional prefactors via Gamma0.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPointsError, DomainError, ResonanceError
from .lens import DiskPoint, LensConfig, order_parameter
from .specfun import EULER_GAMMA, accelerate, digamma, legendre_nu, legendre_poly_table

#: |sin(pi nu)| below this is treated as sitting on a cavity resonance.
RESONANCE_EPS = 1e-8

#: Mode-sum source exclusion: keep |xi + 1| above this (log divergence).
SOURCE_EXCLUSION = 0.01

#: Default and cap for the adaptive mode-sum truncation.
MODESUM_LMAX_FACTOR = 8
MODESUM_LMAX_CAP = 2**14


@dataclass(frozen=True)
class GreensValue:
    """Green's-function value (units 1/length, carrying the 1/(4b) scale)."""

    value: complex


@dataclass(frozen=True)
class ModeSumResult:
    """Accelerated eigenmode-sum value plus its convergence report."""

    value: complex
    l_max: int
    tail_estimate: float
    converged: bool


def zeta(a1: complex, a2: complex) -> complex:
    """Moebius combination (a1 - a2)/(a1 conj(a2) + 1); infinite at the image."""
    den = a1 * np.conj(a2) + 1.0
    if den == 0:
        return complex(math.inf, 0.0)
    return (a1 - a2) / den

def xi(a1: complex, a2: complex) -> float:
    """Spherical-chord coordinate xi in [-1, 1]; -1 at a1 = a2, +1 at the image.

    The a1 conj(a2) = -1 pole of zeta is handled as the limit xi -> +1.
    """
    z = zeta(a1, a2)
    if not np.isfinite(z):
        return 1.0
    m2 = abs(z) ** 2
    if math.isinf(m2):
        return 1.0
    return (m2 - 1.0) / (m2 + 1.0)


def _xi_pair(p1: DiskPoint, p2: DiskPoint) -> tuple[float, float]:
    """(xi_source, xi_image) for a pair of disk points.

    The image argument 1/conj(a2) diverges for a point at the center; the
    limit is xi_image = (1 - rho1^2)/(1 + rho1^2).
    """
    a1, a2 = p1.alpha, p2.alpha
    xi_src = xi(a1, a2)
    if p2.rho == 0.0:
        xi_img = (1.0 - p1.rho**2) / (1.0 + p1.rho**2)
    else:
        xi_img = xi(a1, 1.0 / np.conj(a2))
    return xi_src, xi_img


def _check_order(nu: complex) -> complex:
    s = cmath.sin(cmath.pi * nu)
    if abs(s) < RESONANCE_EPS:
        raise ResonanceError(
            f"nu = {nu} is within {RESONANCE_EPS} of a cavity resonance"
        )
    return s


def greens_zz(cfg: LensConfig, p1: DiskPoint, p2: DiskPoint, omega: complex) -> GreensValue:
    """Closed-form G_zz(r1, r2, omega) of the mirrored cavity.

    For real omega between resonances the value is purely real.  Raises
    CoincidentPointsError at p1 = p2 (source-point log divergence) and
    ResonanceError when sin(pi nu) vanishes numerically.
    """
    nu = order_parameter(cfg, omega)
    s = _check_order(nu)
    xi_src, xi_img = _xi_pair(p1, p2)
    if xi_src <= -1.0 + 1e-14:
        raise CoincidentPointsError("greens_zz diverges at coincident points")
    val = -(legendre_nu(nu, xi_src) - legendre_nu(nu, xi_img)) / (4.0 * cfg.b * s)
    return GreensValue(val)


def greens_modesum(
    cfg: LensConfig,
    p1: DiskPoint,
    p2: DiskPoint,
    omega: complex,
    l_max: int | None = None,
    tol: float = 1e-8,
) -> ModeSumResult:
    """Eigenmode-sum representation of G_zz, the independent oracle.

    Summing the TE modes at fixed l with the spherical-harmonic addition
    theorem collapses the m sum to two Legendre polynomials:

        G_zz = -(1/(4 pi b)) sum_l (-1)^l (2l+1)
               [P_l(xi_src) - P_l(xi_img)] / (nu(nu+1) - l(l+1)),

    an oscillatory, conditionally convergent series (terms ~ l^{-3/2}) that
    is resummed with Wynn epsilon acceleration on its partial sums.  Starts
    at l_max = 8 ceil(Re nu) and doubles until the acceleration error
    estimate drops below `tol` relative or the cap 2^14 is hit; the achieved
    estimate is reported either way.

    Callers must keep |xi_src + 1| > 0.01: near the source the logarithmic
    divergence makes the term count explode.
    """
    nu = order_parameter(cfg, omega)
    _check_order(nu)
    xi_src, xi_img = _xi_pair(p1, p2)
    if xi_src + 1.0 < SOURCE_EXCLUSION:
        raise CoincidentPointsError(
            "mode sum unreliable near the source point (|xi + 1| < 0.01)"
        )
    if l_max is None:
        l_max = max(64, MODESUM_LMAX_FACTOR * math.ceil(nu.real))
    nn = nu * (nu + 1.0)
    scale = -1.0 / (4.0 * math.pi * cfg.b)
    while True:
        ls = np.arange(l_max + 1, dtype=float)
        p_src = legendre_poly_table(l_max, xi_src)
        p_img = legendre_poly_table(l_max, xi_img)
        terms = (-1.0) ** ls * (2.0 * ls + 1.0) * (p_src - p_img) / (nn - ls * (ls + 1.0))
        value, err = accelerate(np.cumsum(terms)[1:])  # l = 0 term vanishes
        value, err = scale * value, abs(scale) * err
        converged = err <= tol * max(abs(value), 1e-300)
        if converged or l_max >= MODESUM_LMAX_CAP:
            return ModeSumResult(value, l_max, err, converged)
        l_max = min(2 * l_max, MODESUM_LMAX_CAP)


def image_point_value(cfg: LensConfig, nu: complex) -> complex:
    """Image-point approximation -1/(4 b sin(pi nu)).

    Position- and radius-independent height of the Green's-function peak at
    the antipode; maximal in magnitude at half-integer Re nu.  Sign as
    printed in the source derivation; the exact image-term limit of
    greens_zz has the opposite sign, and every observable built on this
    quantity uses magnitudes (see qed).
    """
    s = _check_order(complex(nu))
    return -1.0 / (4.0 * cfg.b * s)


def source_offset(nu: complex) -> complex:
    """Additive constant of the near-source log expansion.

    F(nu) = 2 gamma_E + 2 psi(nu + 1) + pi cot(pi nu), i.e. the n = 0
    coefficient psi(-nu) + psi(nu+1) + 2 gamma_E of the logarithmic
    connection series after the digamma reflection.  (A commonly printed
    variant carries a single gamma_E; the doubled value is what P_nu
    actually approaches, cf. the asymptotic-match tests.)  Its imaginary
    part at lossy (complex) nu sets the regularized on-site decay rate;
    gamma_E is real, so that part is insensitive to the variant.
    """
    nu = complex(nu)
    return 2.0 * EULER_GAMMA + 2.0 * digamma(nu + 1.0) + math.pi / cmath.tan(math.pi * nu)


def source_asymptote(cfg: LensConfig, nu: complex, xi_near: float) -> complex:
    """Leading near-source behavior (sin(pi nu)/pi) [log((1+xi)/2) + F(nu)].

    Valid for xi -> -1; the spec window is xi in (-1, -0.99).  Models the
    log divergence of P_nu and, through Im F(nu), the single-atom decay
    scaling in the lossy cavity.
    """
    if not -1.0 < xi_near < -0.99:
        raise DomainError("source asymptote expects xi in (-1, -0.99)")
    nu = complex(nu)
    return (
        cmath.sin(cmath.pi * nu)
        / math.pi
        * (math.log((1.0 + xi_near) / 2.0) + source_offset(nu))
    )
