"""Complex-sector geometry and the scalar interface symbol calculus.

The resolvent analysis of the two-strip dispersal operator reduces, one
transverse sine mode at a time, to scalar complex arithmetic: square roots
of shifted spectral parameters, the quantities ``1 +- exp(-w)`` with ``w``
in a sector of the right half plane, and the scalar symbol whose value at
each transverse eigenvalue is the per-mode determinant of the interface
matching system.  This module implements that calculus together with the
sector membership predicates and the angle bookkeeping tying the spectral
parameter sector to the symbol's certified lower bound.

All functions are pure and accept scalars or numpy arrays; boundary points
of a sector are rejected except where noted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import PI_SQUARED, SpeciesCoefficients

PI = math.pi


class SectorError(ValueError):
    """An argument lies outside the sector required by the operation."""


class DeterminantUnderflowError(ArithmeticError):
    """A per-mode determinant collapsed below representable magnitude."""


@dataclass(frozen=True)
class SectorConfig:
    """Angle bookkeeping for the spectral parameter and symbol domains.

    ``epsilon0`` in (0, pi/8) fixes the inner angle; the working angle is
    derived as ``epsilon = pi/7 + (6/7) epsilon0``, which makes the
    admissible spectral sector half-angle ``2(pi - epsilon)/3`` coincide
    with ``4(pi - epsilon0)/7`` (strictly wider than a half plane).  ``r0``
    in (0, pi**2) is the admissibility budget entering the root floor.
    """

    epsilon0: float = PI / 16
    r0: float = 1.0

    def __post_init__(self):
        if not 0.0 < self.epsilon0 < PI / 8:
            raise SectorError(f"epsilon0={self.epsilon0!r} must lie in (0, pi/8)")
        if not 0.0 < self.r0 < PI_SQUARED:
            raise SectorError(f"r0={self.r0!r} must lie in (0, pi**2)")

    @property
    def epsilon(self) -> float:
        return PI / 7 + 6.0 * self.epsilon0 / 7.0

    @property
    def lambda_angle(self) -> float:
        """Half-angle of the admissible spectral-parameter sector."""
        return 2.0 * (PI - self.epsilon) / 3.0

    @property
    def shifted_angle(self) -> float:
        """Half-angle of the sector (offset by pi**2) of symbol arguments."""
        return (PI - self.epsilon) / 3.0

    @property
    def symbol_floor(self) -> float:
        """Certified lower bound sin(epsilon0/2) for the symbol modulus."""
        return math.sin(self.epsilon0 / 2.0)

    @property
    def root_floor(self) -> float:
        """Certified lower bound for |sqrt(z - shifted lambda)|."""
        return math.sqrt(
            math.sqrt(3.0) * (PI_SQUARED - self.r0) / 2.0
            * math.sin(self.epsilon / 2.0)
        )

    def contains_lambda(self, lam) -> bool:
        return bool(np.all(in_sector(lam, self.lambda_angle)))

    def contains_shifted(self, z) -> bool:
        """Membership of z in pi**2 + (closed) shifted sector.

        The closure is used on purpose: the lowest transverse eigenvalue
        pi**2 sits exactly at the sector vertex and every bound extends
        continuously there.
        """
        w = np.asarray(z, dtype=complex) - PI_SQUARED
        ok = (w == 0) | in_sector(w, self.shifted_angle)
        return bool(np.all(ok))


def in_sector(z, omega: float):
    """Open-sector membership: z != 0 and |arg z| < omega.

    For omega = 0 the sector degenerates to the positive real axis
    (zero excluded).  Accepts scalars or arrays; returns bool or a boolean
    array.  Boundary points are rejected (arg is taken in (-pi, pi]).
    """
    if not 0.0 <= omega <= PI:
        raise SectorError(f"omega={omega!r} must lie in [0, pi]")
    z = np.asarray(z, dtype=complex)
    nonzero = z != 0
    if omega == 0.0:
        ok = nonzero & (z.imag == 0.0) & (z.real > 0.0)
    else:
        ok = nonzero & (np.abs(np.angle(z)) < omega)
    if ok.ndim == 0:
        return bool(ok)
    return ok


def cosine_lower_bound(z1, z2):
    """Both sides of |z1 + z2| >= (|z1| + |z2|) |cos((arg z1 - arg z2)/2)|.

    Returns ``(lhs, rhs)``; the inequality holds for every pair of nonzero
    complex numbers, with equality e.g. for aligned or antipodal pairs.
    """
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    if np.any(z1 == 0) or np.any(z2 == 0):
        raise SectorError("cosine_lower_bound requires nonzero arguments")
    lhs = np.abs(z1 + z2)
    rhs = (np.abs(z1) + np.abs(z2)) * np.abs(
        np.cos((np.angle(z1) - np.angle(z2)) / 2.0)
    )
    if lhs.ndim == 0:
        return float(lhs), float(rhs)
    return lhs, rhs


_EXPM1_TERMS = 18


def expm1c(w):
    """exp(w) - 1 for complex scalars/arrays, stable near w = 0.

    numpy's expm1 has no complex loop; below |w| < 0.25 a Horner-evaluated
    Taylor series avoids the cancellation in exp(w) - 1.
    """
    w = np.asarray(w, dtype=complex)
    out = np.exp(w) - 1.0
    small = np.abs(w) < 0.25
    if np.any(small):
        ws = w[small] if out.ndim else w
        acc = np.zeros_like(ws)
        for n in range(_EXPM1_TERMS, 1, -1):
            acc = ws / n * (1.0 + acc)
        val = ws * (1.0 + acc)
        if out.ndim:
            out[small] = val
        else:
            out = val
    if out.ndim == 0:
        return complex(out)
    return out


def one_minus_exp(w):
    """1 - exp(-w), computed without cancellation for small |w|."""
    return -expm1c(-np.asarray(w, dtype=complex))


def one_plus_exp(w):
    """1 + exp(-w) (no cancellation possible for Re w >= 0)."""
    return 2.0 + expm1c(-np.asarray(w, dtype=complex))


@dataclass(frozen=True)
class ExpPerturbationBounds:
    """Verified quantities for 1 +- exp(-z) with z in an open sector S_alpha.

    arg_gap    |arg(1 - e^-z) - arg(1 + e^-z)|, guaranteed < alpha
    plus_abs   |1 + e^-z|, guaranteed >= plus_floor = 1 - e^{-pi/(2 tan alpha)}
    minus_abs  |1 - e^-z|, guaranteed inside [minus_lower, minus_upper] =
               [|z| cos(alpha), 2 |z|] / (1 + |z| cos(alpha))
    """

    alpha: float
    arg_gap: object
    plus_abs: object
    plus_floor: float
    minus_abs: object
    minus_lower: object
    minus_upper: object


def exp_perturbation_bounds(z, alpha: float) -> ExpPerturbationBounds:
    """Evaluate both sides of the three sector estimates for 1 +- exp(-z)."""
    if not 0.0 < alpha < PI / 2:
        raise SectorError(f"alpha={alpha!r} must lie in (0, pi/2)")
    z = np.asarray(z, dtype=complex)
    if not np.all(in_sector(z, alpha)):
        raise SectorError("argument outside the open sector S_alpha")
    minus = one_minus_exp(z)
    plus = one_plus_exp(z)
    cos_a = math.cos(alpha)
    denom = 1.0 + np.abs(z) * cos_a
    gap = np.abs(np.angle(minus) - np.angle(plus))
    return ExpPerturbationBounds(
        alpha=alpha,
        arg_gap=gap if gap.ndim else float(gap),
        plus_abs=np.abs(plus) if np.ndim(plus) else abs(plus),
        plus_floor=1.0 - math.exp(-PI / (2.0 * math.tan(alpha))),
        minus_abs=np.abs(minus) if np.ndim(minus) else abs(minus),
        minus_lower=np.abs(z) * cos_a / denom,
        minus_upper=2.0 * np.abs(z) / denom,
    )


@dataclass(frozen=True)
class SpectralShift:
    """Spectral parameter together with its per-side shifted images.

    For a species with reaction coefficients c-+ and diffusivities d-+ the
    shifted parameters are ``lambda_pm = -c_pm/d_pm - lambda/d_pm``; the
    per-mode layer decay rates are then ``-sqrt(z - lambda_pm)`` with z the
    transverse eigenvalue.
    """

    lam: complex
    lambda_minus: complex
    lambda_plus: complex

    def __post_init__(self):
        if self.lam == 0:
            raise SectorError("spectral parameter must be nonzero")

    @classmethod
    def from_coefficients(cls, lam: complex, coeffs: SpeciesCoefficients) -> "SpectralShift":
        lam = complex(lam)
        return cls(
            lam=lam,
            lambda_minus=-coeffs.c_minus / coeffs.d_minus - lam / coeffs.d_minus,
            lambda_plus=-coeffs.c_plus / coeffs.d_plus - lam / coeffs.d_plus,
        )


def shifted_roots(z, shift: SpectralShift, sector: SectorConfig):
    """Principal square roots of z - lambda_pm, with sector validation.

    Requires z in pi**2 + closure(S) with half-angle ``sector.shifted_angle``
    (the vertex z = pi**2 is admitted: it is the lowest transverse
    eigenvalue) and the spectral parameter in the open sector of half-angle
    ``sector.lambda_angle``.  Both roots then lie in the shifted sector and
    have positive real part.
    """
    if not sector.contains_lambda(shift.lam):
        raise SectorError(
            f"spectral parameter {shift.lam!r} outside sector of half-angle "
            f"{sector.lambda_angle:.6f}"
        )
    if not sector.contains_shifted(z):
        raise SectorError("z outside the shifted sector pi**2 + S")
    z = np.asarray(z, dtype=complex)
    root_minus = np.sqrt(z - shift.lambda_minus)
    root_plus = np.sqrt(z - shift.lambda_plus)
    if root_minus.ndim == 0:
        return complex(root_minus), complex(root_plus)
    return root_minus, root_plus


def transmission_symbol(z, shift: SpectralShift, weight_I: float, weight_S: float,
                        ell: float, L: float, sector: SectorConfig):
    """Scalar symbol of the interface matching system.

        1 + (wS/wI) (Z+/Z-) [(1-e^{-2 ell Z-})(1+e^{-2 L Z+})]
                            / [(1+e^{-2 ell Z-})(1-e^{-2 L Z+})]

    with Z-+ = sqrt(z - lambda_-+).  Its modulus admits the uniform floor
    sin(epsilon0/2) over the admissible parameter sector; the denominator
    never vanishes there.
    """
    root_minus, root_plus = shifted_roots(z, shift, sector)
    num = one_minus_exp(2.0 * ell * root_minus) * one_plus_exp(2.0 * L * root_plus)
    den = one_plus_exp(2.0 * ell * root_minus) * one_minus_exp(2.0 * L * root_plus)
    value = 1.0 + (weight_S / weight_I) * (root_plus / root_minus) * num / den
    if np.ndim(value) == 0:
        return complex(value)
    return value


def determinant_from_rates(rate_minus, rate_plus, weight_I: float, weight_S: float,
                           ell: float, L: float):
    """Per-mode determinant from the layer decay rates p-+ (Re p < 0).

        wI (1+e^{2 ell p-})(1-e^{2 L p+}) + wS (p+/p-) (1-e^{2 ell p-})(1+e^{2 L p+})

    All exponentials have non-positive real exponents, so nothing can
    overflow.  Equals ``wI (1+e^{2 ell p-})(1-e^{2 L p+})`` times the
    transmission symbol evaluated at the matching z.
    """
    em = np.asarray(rate_minus, dtype=complex) * (2.0 * ell)
    ep = np.asarray(rate_plus, dtype=complex) * (2.0 * L)
    plus_m = 2.0 + expm1c(em)     # 1 + e^{2 ell p-}
    minus_m = -expm1c(em)         # 1 - e^{2 ell p-}
    plus_p = 2.0 + expm1c(ep)
    minus_p = -expm1c(ep)
    ratio = np.asarray(rate_plus, dtype=complex) / np.asarray(rate_minus, dtype=complex)
    det = weight_I * plus_m * minus_p + weight_S * ratio * minus_m * plus_p
    if np.ndim(det) == 0:
        return complex(det)
    return det


def mode_determinant(k: int, shift: SpectralShift, weight_I: float, weight_S: float,
                     ell: float, L: float, sector: SectorConfig) -> complex:
    """Determinant of the mode-k interface matching system.

    The transverse eigenvalue is z = (k pi)**2 and the layer rates are
    ``p_pm = -sqrt(z - lambda_pm)``.  Raises on sector violations and when
    the determinant magnitude falls below 1e-300, which signals an
    inadmissible parameter combination rather than a numerical accident.
    """
    if k < 1 or int(k) != k:
        raise ValueError(f"mode index k={k!r} must be a positive integer")
    z = (k * PI) ** 2
    root_minus, root_plus = shifted_roots(z, shift, sector)
    det = determinant_from_rates(-root_minus, -root_plus, weight_I, weight_S, ell, L)
    if abs(det) < 1e-300:
        raise DeterminantUnderflowError(
            f"mode {k} determinant magnitude {abs(det):.3e} below 1e-300"
        )
    return det
