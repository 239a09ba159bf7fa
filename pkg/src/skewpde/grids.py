"""Two-strip tensor grids, sampled fields, sine transforms and norms.

The computational domain is the union of two rectangles sharing the
vertical interface x = 0.  Fields are stored per strip on uniform tensor
grids that both carry their own copy of the interface column (left trace /
right trace), so discontinuous fluxes can be represented while densities
remain continuous.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class GridError(ValueError):
    """Inconsistent grid sizes or transform requests."""


@dataclass(frozen=True)
class Grid:
    """Uniform tensor grid on [-ell, 0] u [0, L] x [0, 1].

    ``nx_I`` / ``nx_S`` are the number of x-subintervals per strip and
    ``ny`` the number of y-subintervals; node counts are one larger.  The
    interface column x = 0 appears in both strips.
    """

    ell: float
    L: float
    nx_I: int
    nx_S: int
    ny: int

    def __post_init__(self):
        if self.ell <= 0 or self.L <= 0:
            raise GridError("strip widths must be positive")
        if min(self.nx_I, self.nx_S, self.ny) < 2:
            raise GridError("need at least 2 subintervals per direction")

    @property
    def hx_I(self) -> float:
        return self.ell / self.nx_I

    @property
    def hx_S(self) -> float:
        return self.L / self.nx_S

    @property
    def hy(self) -> float:
        return 1.0 / self.ny

    @property
    def x_I(self) -> np.ndarray:
        return np.linspace(-self.ell, 0.0, self.nx_I + 1)

    @property
    def x_S(self) -> np.ndarray:
        return np.linspace(0.0, self.L, self.nx_S + 1)

    @property
    def y(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.ny + 1)


@dataclass
class GridFunction2D:
    """A sampled field over both strips with duplicated interface column.

    ``values_I`` has shape (nx_I + 1, ny + 1) with x increasing towards the
    interface; ``values_S`` has shape (nx_S + 1, ny + 1) with x increasing
    away from it.  Dirichlet rows/columns (outer x ends, y = 0, y = 1) are
    expected to be exactly zero for admissible states.
    """

    grid: Grid
    values_I: np.ndarray
    values_S: np.ndarray
    species: str = "field"

    def __post_init__(self):
        expect_I = (self.grid.nx_I + 1, self.grid.ny + 1)
        expect_S = (self.grid.nx_S + 1, self.grid.ny + 1)
        if self.values_I.shape != expect_I or self.values_S.shape != expect_S:
            raise GridError(
                f"value shapes {self.values_I.shape}/{self.values_S.shape} "
                f"do not match grid {expect_I}/{expect_S}"
            )

    @classmethod
    def zeros(cls, grid: Grid, species: str = "field", dtype=float) -> "GridFunction2D":
        return cls(
            grid=grid,
            values_I=np.zeros((grid.nx_I + 1, grid.ny + 1), dtype=dtype),
            values_S=np.zeros((grid.nx_S + 1, grid.ny + 1), dtype=dtype),
            species=species,
        )

    @classmethod
    def from_function(cls, grid: Grid, fn, species: str = "field") -> "GridFunction2D":
        """Sample fn(x, y) (numpy-broadcasting) on both strips."""
        xi = grid.x_I[:, None]
        xs = grid.x_S[:, None]
        yy = grid.y[None, :]
        return cls(
            grid=grid,
            values_I=np.asarray(fn(xi, yy)) + np.zeros((grid.nx_I + 1, grid.ny + 1)),
            values_S=np.asarray(fn(xs, yy)) + np.zeros((grid.nx_S + 1, grid.ny + 1)),
            species=species,
        )

    def copy(self) -> "GridFunction2D":
        return GridFunction2D(
            self.grid, self.values_I.copy(), self.values_S.copy(), self.species
        )

    def interface_traces(self) -> tuple[np.ndarray, np.ndarray]:
        """Left and right interface columns (length ny + 1 each)."""
        return self.values_I[-1, :], self.values_S[0, :]

    def interface_derivatives(self) -> tuple[np.ndarray, np.ndarray]:
        """One-sided second-order x-derivatives at the interface, per y.

        Backward 3-point stencil on the infected strip, forward 3-point on
        the susceptible strip; these are the same stencils the discrete
        flux-matching rows use.
        """
        vI, vS = self.values_I, self.values_S
        d_left = (3.0 * vI[-1] - 4.0 * vI[-2] + vI[-3]) / (2.0 * self.grid.hx_I)
        d_right = (-3.0 * vS[0] + 4.0 * vS[1] - vS[2]) / (2.0 * self.grid.hx_S)
        return d_left, d_right

    def boundary_defect(self) -> float:
        """Largest magnitude on the Dirichlet part of the boundary."""
        g = self
        pieces = [
            g.values_I[0, :], g.values_S[-1, :],
            g.values_I[:, 0], g.values_I[:, -1],
            g.values_S[:, 0], g.values_S[:, -1],
        ]
        return max(float(np.max(np.abs(p))) for p in pieces)

    def norm(self, p=2) -> float:
        """Discrete L^p norm over the whole domain (trapezoid weights)."""
        if p == np.inf or p == "inf":
            return max(
                float(np.max(np.abs(self.values_I))),
                float(np.max(np.abs(self.values_S))),
            )
        if p not in (1, 2):
            raise GridError("norms are computed for p in {1, 2, inf}")
        total = 0.0
        for vals, hx in ((self.values_I, self.grid.hx_I), (self.values_S, self.grid.hx_S)):
            wx = np.full(vals.shape[0], hx)
            wx[0] = wx[-1] = hx / 2.0
            wy = np.full(vals.shape[1], self.grid.hy)
            wy[0] = wy[-1] = self.grid.hy / 2.0
            total += float(
                np.sum(np.abs(vals) ** p * wx[:, None] * wy[None, :])
            )
        return total ** (1.0 / p)

    def mass(self) -> float:
        """Trapezoid integral of the field over the whole domain."""
        total = 0.0
        for vals, hx in ((self.values_I, self.grid.hx_I), (self.values_S, self.grid.hx_S)):
            wx = np.full(vals.shape[0], hx)
            wx[0] = wx[-1] = hx / 2.0
            wy = np.full(vals.shape[1], self.grid.hy)
            wy[0] = wy[-1] = self.grid.hy / 2.0
            total += float(np.sum(vals.real * wx[:, None] * wy[None, :]))
        return total


def sine_matrix(ny: int, modes: int) -> np.ndarray:
    """Matrix S[j, k] = sin((k+1) pi y_j) on interior y-nodes j = 1..ny-1."""
    if modes >= ny:
        raise GridError(
            f"mode count {modes} exceeds the Nyquist limit {ny - 1} "
            f"of a grid with {ny} y-subintervals"
        )
    if modes < 1:
        raise GridError("need at least one transverse mode")
    j = np.arange(1, ny)[:, None]
    k = np.arange(1, modes + 1)[None, :]
    return np.sin(np.pi * k * j / ny)


def sine_coefficients(values: np.ndarray, ny: int, modes: int) -> np.ndarray:
    """Forward transverse sine transform of nodal values.

    ``values`` has y along its last axis (ny + 1 nodes, zero at both walls);
    returns coefficients c_k = 2 * h * sum_j values(., y_j) sin(k pi y_j)
    for k = 1..modes, which is the trapezoid form of 2 * int f sin(k pi y).
    The discrete family sin(k pi y_j) is orthogonal on the interior nodes,
    so reconstruction is exact for band-limited data.
    """
    S = sine_matrix(ny, modes)
    return (2.0 / ny) * (values[..., 1:ny] @ S)


def sine_reconstruct(coeffs: np.ndarray, ny: int) -> np.ndarray:
    """Inverse of :func:`sine_coefficients`; returns full nodal values."""
    modes = coeffs.shape[-1]
    S = sine_matrix(ny, modes)
    out_shape = coeffs.shape[:-1] + (ny + 1,)
    out = np.zeros(out_shape, dtype=coeffs.dtype)
    out[..., 1:ny] = coeffs @ S.T
    return out
