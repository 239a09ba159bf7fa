"""Brute-force finite-difference solver for the two-interval interface BVP.

This is the independent ground-truth path: centered second-order
differences on each interval, the interface realized by two extra unknowns
(left and right trace) tied by a continuity equation and a weighted-flux
equation built from one-sided second-order stencils, and a banded direct
solve.  Nothing here shares code or representation with the spectral
resolvent path, which is exactly why the two can cross-check each other.

The same banded assembly doubles as the exact matrix resolvent of the
discrete dispersal operator (one transverse sine mode at a time), used by
the algebraic resolvent-identity checks and the time stepper.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .grids import Grid, GridFunction2D, sine_coefficients, sine_reconstruct
from .model import SpeciesCoefficients, require_host_bound

BANDS = (3, 2)  # sub/super diagonals of the interface-coupled FD matrix


class OracleError(RuntimeError):
    """The discrete system is singular or produced non-finite values."""


@dataclass(frozen=True)
class TwoIntervalBVP:
    """Scalar interface problem  h'' - omega^2 h = g  on (-ell,0) u (0,L).

    Zero Dirichlet values at the outer ends, continuity of h at 0 and the
    weighted flux match ``beta_I h'(0-) = beta_S h'(0+)``.  The right-hand
    sides are nodal samples on uniform grids of ``n_oracle`` subintervals
    per interval (n_oracle + 1 nodes each).
    """

    omega_minus_sq: complex
    omega_plus_sq: complex
    g_I: np.ndarray
    g_S: np.ndarray
    beta_I: float
    beta_S: float
    ell: float
    L: float

    def __post_init__(self):
        if self.g_I.ndim != 1 or self.g_S.ndim != 1 or len(self.g_I) != len(self.g_S):
            raise ValueError("g_I and g_S must be 1-d with equal length")
        if self.ell <= 0 or self.L <= 0:
            raise ValueError("interval widths must be positive")
        if self.beta_I <= 0 or self.beta_S <= 0:
            raise ValueError("flux weights must be positive")

    @property
    def n_oracle(self) -> int:
        return len(self.g_I) - 1

    @property
    def x_I(self) -> np.ndarray:
        return np.linspace(-self.ell, 0.0, self.n_oracle + 1)

    @property
    def x_S(self) -> np.ndarray:
        return np.linspace(0.0, self.L, self.n_oracle + 1)


def interface_banded_matrix(n_I: int, n_S: int, off_I, diag_I, off_S, diag_S,
                            beta_I: float, beta_S: float, h_I: float, h_S: float,
                            dtype=complex) -> np.ndarray:
    """Banded storage of the interface-coupled two-interval matrix.

    Unknown layout: ``[u_1..u_{n_I-1} | u_L, u_R | u_1..u_{n_S-1}]`` where
    u_L/u_R are the interface traces.  Interior rows carry the uniform
    three-point stencil (off, diag, off); the u_L row enforces continuity
    u_L - u_R = 0 and the u_R row the flux match with one-sided
    second-order derivative stencils.  Returned in LAPACK banded form for
    ``scipy.linalg.solve_banded`` with (l, u) = (3, 2).
    """
    if n_I < 2 or n_S < 2:
        raise ValueError("need at least 2 subintervals per interval")
    N = n_I + n_S
    ab = np.zeros((6, N), dtype=dtype)
    rc = n_I - 1      # continuity row / u_L column
    rf = n_I          # flux row / u_R column

    main = ab[2]
    main[:rc] = diag_I
    main[rc] = 1.0
    main[rf] = 3.0 * beta_S / (2.0 * h_S)
    main[rf + 1:] = diag_S

    # A[i, i+1] -> ab[1, i+1]
    sup1 = ab[1]
    sup1[1:rc] = off_I            # interior-I rows 0..rc-2
    sup1[rc] = off_I              # row rc-1 couples to u_L
    sup1[rf] = -1.0               # continuity row -> u_R
    sup1[rf + 1] = -2.0 * beta_S / h_S
    sup1[rf + 2:] = off_S

    # A[i, i+2] -> ab[0, i+2]
    if n_S >= 3:
        ab[0, rf + 2] = beta_S / (2.0 * h_S)

    # A[i, i-1] -> ab[3, i-1]
    sub1 = ab[3]
    sub1[:rc - 1] = off_I         # interior-I rows below the interface block
    sub1[rc] = 3.0 * beta_I / (2.0 * h_I)       # flux row -> u_L
    sub1[rf:N - 1] = off_S        # interior-S rows incl. coupling to u_R

    # A[i, i-2] -> ab[4, i-2]
    ab[4, rf - 2] = -2.0 * beta_I / h_I
    # A[i, i-3] -> ab[5, i-3]
    if n_I >= 3:
        ab[5, rf - 3] = beta_I / (2.0 * h_I)
    return ab


def solve_interface_banded(ab: np.ndarray, rhs_interior_I: np.ndarray,
                           rhs_interior_S: np.ndarray) -> np.ndarray:
    """Solve the banded system; constraint rows get zero right-hand side."""
    n_int_I = rhs_interior_I.shape[0]
    N = ab.shape[1]
    rhs = np.zeros((N,) + rhs_interior_I.shape[1:], dtype=ab.dtype)
    rhs[:n_int_I] = rhs_interior_I
    rhs[n_int_I + 2:] = rhs_interior_S
    try:
        sol = solve_banded(BANDS, ab, rhs)
    except np.linalg.LinAlgError as exc:
        raise OracleError(f"singular discrete system: {exc}") from exc
    if not np.all(np.isfinite(sol.view(float))):
        raise OracleError("discrete solve produced non-finite values")
    return sol


def solve_fd(bvp: TwoIntervalBVP) -> tuple[np.ndarray, np.ndarray]:
    """Sampled solution (h_I, h_S) of the two-interval problem.

    Second-order accurate in the grid spacing, including the interface
    treatment (the one-sided derivative stencils are themselves
    second order).
    """
    n = bvp.n_oracle
    h_I = bvp.ell / n
    h_S = bvp.L / n
    ab = interface_banded_matrix(
        n, n,
        off_I=1.0 / h_I ** 2, diag_I=-2.0 / h_I ** 2 - bvp.omega_minus_sq,
        off_S=1.0 / h_S ** 2, diag_S=-2.0 / h_S ** 2 - bvp.omega_plus_sq,
        beta_I=bvp.beta_I, beta_S=bvp.beta_S, h_I=h_I, h_S=h_S,
    )
    sol = solve_interface_banded(
        ab, bvp.g_I[1:n].astype(complex), bvp.g_S[1:n].astype(complex)
    )
    out_I = np.zeros(n + 1, dtype=complex)
    out_S = np.zeros(n + 1, dtype=complex)
    out_I[1:n] = sol[:n - 1]
    out_I[n] = sol[n - 1]          # u_L
    out_S[0] = sol[n]              # u_R
    out_S[1:n] = sol[n + 1:]
    return out_I, out_S


def solve_fd_extrapolated(bvp: TwoIntervalBVP) -> tuple[np.ndarray, np.ndarray]:
    """One Richardson step of :func:`solve_fd` on the coarsened node set.

    Solves at n and n/2 subintervals (the coarse grid reuses every second
    sample of g) and combines (4 u_n - u_{n/2}) / 3 on the shared nodes,
    cancelling the leading h^2 error term.  Returned arrays live on the
    n/2 + 1 shared nodes per interval.  Still a pure finite-difference
    path; used when the ground truth must beat the h^2 floor.
    """
    n = bvp.n_oracle
    if n % 2 != 0:
        raise ValueError("extrapolation needs an even subinterval count")
    fine_I, fine_S = solve_fd(bvp)
    coarse = TwoIntervalBVP(
        omega_minus_sq=bvp.omega_minus_sq, omega_plus_sq=bvp.omega_plus_sq,
        g_I=bvp.g_I[::2], g_S=bvp.g_S[::2],
        beta_I=bvp.beta_I, beta_S=bvp.beta_S, ell=bvp.ell, L=bvp.L,
    )
    coarse_I, coarse_S = solve_fd(coarse)
    out_I = (4.0 * fine_I[::2] - coarse_I) / 3.0
    out_S = (4.0 * fine_S[::2] - coarse_S) / 3.0
    return out_I, out_S


def fd_transverse_eigenvalues(ny: int, modes: int) -> np.ndarray:
    """Eigenvalues of the 3-point FD Dirichlet Laplacian on (0, 1).

    mu_k = (2 - 2 cos(k pi / ny)) * ny**2 for k = 1..modes; the discrete
    sine vectors sin(k pi y_j) are the matching eigenvectors.
    """
    k = np.arange(1, modes + 1)
    return (2.0 - 2.0 * np.cos(np.pi * k / ny)) * ny ** 2


def fd_resolvent_apply(lam: complex, coeffs: SpeciesCoefficients,
                       rhs: GridFunction2D, modes: int) -> GridFunction2D:
    """Apply the exact matrix resolvent of the discrete dispersal operator.

    Solves ``(d Lap_h - c - lambda) u = rhs`` with the interface-coupled FD
    Laplacian: three-point stencils in both directions, interface traces
    tied by continuity and the one-sided weighted-flux rows.  The y
    direction is diagonalized over the discrete sine eigenvectors of its
    own FD operator (an exact similarity, not an approximation), so the
    result is the true inverse of one fixed matrix.  Consequently the
    resolvent family built from this function satisfies the resolvent
    identity to solver round-off.

    For the host species the growth-bound gate applies: parameter sets
    whose reaction gain reaches pi**2 are refused.
    """
    grid = rhs.grid
    if coeffs.species == "host":
        _require_host_gain_budget(coeffs)
    lam = complex(lam)
    mus = fd_transverse_eigenvalues(grid.ny, modes)
    gI_modes = sine_coefficients(rhs.values_I, grid.ny, modes)
    gS_modes = sine_coefficients(rhs.values_S, grid.ny, modes)
    hI_modes = np.zeros_like(gI_modes, dtype=complex)
    hS_modes = np.zeros_like(gS_modes, dtype=complex)
    n_I, n_S = grid.nx_I, grid.nx_S
    hx_I, hx_S = grid.hx_I, grid.hx_S
    dm, dp = coeffs.d_minus, coeffs.d_plus
    for idx, mu in enumerate(mus):
        ab = interface_banded_matrix(
            n_I, n_S,
            off_I=dm / hx_I ** 2,
            diag_I=-2.0 * dm / hx_I ** 2 - dm * mu - coeffs.c_minus - lam,
            off_S=dp / hx_S ** 2,
            diag_S=-2.0 * dp / hx_S ** 2 - dp * mu - coeffs.c_plus - lam,
            beta_I=coeffs.weight_I, beta_S=coeffs.weight_S,
            h_I=hx_I, h_S=hx_S,
        )
        sol = solve_interface_banded(
            ab,
            gI_modes[1:n_I, idx].astype(complex),
            gS_modes[1:n_S, idx].astype(complex),
        )
        hI_modes[1:n_I, idx] = sol[:n_I - 1]
        hI_modes[n_I, idx] = sol[n_I - 1]
        hS_modes[0, idx] = sol[n_I]
        hS_modes[1:n_S, idx] = sol[n_I + 1:]
    out = GridFunction2D(
        grid=grid,
        values_I=sine_reconstruct(hI_modes, grid.ny),
        values_S=sine_reconstruct(hS_modes, grid.ny),
        species=rhs.species,
    )
    return out


def _require_host_gain_budget(coeffs: SpeciesCoefficients) -> None:
    """Refuse host coefficient sets whose reaction gain reaches pi**2."""
    from .model import PI_SQUARED, HostBoundError

    operand_minus = -coeffs.c_minus / coeffs.d_minus
    operand_plus = -coeffs.c_plus / coeffs.d_plus
    if max(operand_minus, operand_plus) > PI_SQUARED - 1e-6:
        raise HostBoundError(
            f"host reaction gain max({operand_minus:.6g}, {operand_plus:.6g}) "
            "reaches the pi**2 budget"
        )
