"""Finite-difference residual checks and polynomial gauge fitting.

Everything here is second-order central differencing on interior grids:
the grid shrinks its rectangle by one step so no stencil leaves the
domain.  Residual reports carry max and mean; acceptance thresholds read
the max.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .clifford import Multivector
from .forward import FueterConfig, fueter_map, as_field
from .inverse import Rectangle
from .jets import power
from .polynomials import MonogenicPolynomial, builtin_pk
from .clifford import Paravector

DEFAULT_REL_STEP = 1e-4


@dataclass(frozen=True)
class GridSpec:
    """Regular evaluation grid on a rectangle, with an FD step.

    fd_step = None resolves to 1e-4 of the larger rectangle side.  Points
    are placed on the rectangle shrunk by one step per side, so central
    stencils stay inside.
    """

    rect: Rectangle
    nx0: int = 10
    nr: int = 10
    fd_step: float | None = None

    def __post_init__(self):
        if self.nx0 < 1 or self.nr < 1:
            raise ValueError(f"grid needs at least 1x1 points, got {self.nx0}x{self.nr}")

    @property
    def step(self) -> float:
        if self.fd_step is not None:
            if self.fd_step <= 0:
                raise ValueError(f"fd_step must be positive, got {self.fd_step}")
            return float(self.fd_step)
        r = self.rect
        return DEFAULT_REL_STEP * max(r.b - r.a, r.d - r.c)

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        r = self.rect
        h = self.step
        margin = 1.0000001 * h
        if r.a + margin >= r.b - margin or r.c + margin >= r.d - margin:
            raise ValueError("fd_step too large for this rectangle")
        xs = np.linspace(r.a + margin, r.b - margin, self.nx0)
        rs = np.linspace(r.c + margin, r.d - margin, self.nr)
        return xs, rs

    def points(self):
        xs, rs = self.axes()
        for x0 in xs:
            for rr in rs:
                yield float(x0), float(rr)

    def meta(self) -> dict:
        return {"rect": list(self.rect.as_tuple()), "nx0": self.nx0, "nr": self.nr}


@dataclass(frozen=True)
class ResidualReport:
    name: str
    grid: dict
    max: float
    mean: float
    step: float

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "grid": self.grid,
            "max": self.max,
            "mean": self.mean,
            "step": self.step,
        }


def _report(name: str, grid: GridSpec, values: Sequence[float]) -> ResidualReport:
    arr = np.asarray(values, dtype=np.float64)
    return ResidualReport(name, grid.meta(), float(arr.max()), float(arr.mean()), grid.step)


def vekua_residual(
    A: Callable, B: Callable, k: int, m: int, grid: GridSpec
) -> ResidualReport:
    """Max/mean violation of the axial system

    dA/dx0 - dB/dr = ((2k+m-1)/r) B    and    dB/dx0 + dA/dr = 0,

    the first-order system every axial monogenic profile satisfies.
    """
    h = grid.step
    gamma = 2 * k + m - 1
    vals = []
    for x0, r in grid.points():
        da_dx0 = (A(x0 + h, r) - A(x0 - h, r)) / (2 * h)
        da_dr = (A(x0, r + h) - A(x0, r - h)) / (2 * h)
        db_dx0 = (B(x0 + h, r) - B(x0 - h, r)) / (2 * h)
        db_dr = (B(x0, r + h) - B(x0, r - h)) / (2 * h)
        res1 = da_dx0 - db_dr - gamma / r * B(x0, r)
        res2 = db_dx0 + da_dr
        vals.append(max(abs(float(res1)), abs(float(res2))))
    return _report("vekua", grid, vals)


def cr_residual(u: Callable, v: Callable, grid: GridSpec) -> ResidualReport:
    """Cauchy-Riemann residual of (u, v) as functions of (x0, r)."""
    h = grid.step
    vals = []
    for x0, r in grid.points():
        du_dx0 = (u(x0 + h, r) - u(x0 - h, r)) / (2 * h)
        du_dr = (u(x0, r + h) - u(x0, r - h)) / (2 * h)
        dv_dx0 = (v(x0 + h, r) - v(x0 - h, r)) / (2 * h)
        dv_dr = (v(x0, r + h) - v(x0, r - h)) / (2 * h)
        res1 = du_dx0 - dv_dr
        res2 = du_dr + dv_dx0
        vals.append(max(abs(float(res1)), abs(float(res2))))
    return _report("cauchy-riemann", grid, vals)


def _default_direction(m: int) -> np.ndarray:
    # oblique on purpose: axis-aligned directions would zero out some stencil terms
    d = np.ones(m) / np.sqrt(m)
    return d


def monogenicity_residual(
    F: Callable[[np.ndarray], Multivector],
    m: int,
    grid: GridSpec,
    direction: Sequence[float] | None = None,
) -> ResidualReport:
    """FD residual of the generalized Cauchy-Riemann operator d/dx0 + sum_j e_j d/dx_j.

    F maps a point of R^(m+1) to a Multivector; grid points (x0, r) embed
    as x0 + r * direction (unit vector, default oblique).
    """
    h = grid.step
    if direction is None:
        direction = _default_direction(m)
    dirv = np.asarray(direction, dtype=np.float64)
    if dirv.shape != (m,):
        raise ValueError(f"direction must have {m} entries")
    nrm = np.linalg.norm(dirv)
    if nrm == 0:
        raise ValueError("direction must be nonzero")
    dirv = dirv / nrm
    basis = [Multivector.basis_vector(m, j + 1) for j in range(m)]
    vals = []
    for x0, r in grid.points():
        y = np.concatenate(([x0], r * dirv))
        e = np.zeros(m + 1)
        e[0] = h
        acc = (F(y + e) - F(y - e)) / (2 * h)
        for j in range(m):
            e = np.zeros(m + 1)
            e[j + 1] = h
            acc = acc + basis[j] * ((F(y + e) - F(y - e)) / (2 * h))
        vals.append(acc.norm())
    return _report("monogenicity", grid, vals)


def kernel_check(
    n: int,
    k: int,
    m: int,
    grid: GridSpec,
    P: MonogenicPolynomial | None = None,
    direction: Sequence[float] | None = None,
) -> tuple[float, bool]:
    """Largest |Ft[z^n, P_k]| over the grid, and whether zero is expected.

    z^n is annihilated exactly when n <= 2k + m - 2.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    cfg = FueterConfig(m, k)
    if P is None:
        P = builtin_pk(m, k)
    if direction is None:
        direction = np.zeros(m)
        direction[0] = 1.0
    dirv = np.asarray(direction, dtype=np.float64)
    dirv = dirv / np.linalg.norm(dirv)
    h = power(n)
    worst = 0.0
    for x0, r in grid.points():
        val = fueter_map(h, P, cfg, Paravector(x0, r * dirv))
        worst = max(worst, val.norm())
    return worst, n <= cfg.kernel_degree


def polynomial_fit_residual(
    samples: Sequence[tuple[complex, complex]], degree: int
) -> float:
    """Max deviation of complex samples from their best real-coefficient polynomial.

    samples are (z, value) pairs; the fit minimizes the stacked real/imag
    least squares over real c_0..c_degree.  Raises on a rank-deficient
    design (too few or degenerate sample points).
    """
    degree = int(degree)
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    if len(samples) < degree + 1:
        raise ValueError(f"need at least {degree + 1} samples for degree {degree}")
    zs = np.array([complex(z) for z, _ in samples])
    ys = np.array([complex(w) for _, w in samples])
    design = np.stack([zs**j for j in range(degree + 1)], axis=1)
    mat = np.vstack([design.real, design.imag])
    rhs = np.concatenate([ys.real, ys.imag])
    coeffs, _, rank, _ = np.linalg.lstsq(mat, rhs, rcond=None)
    if rank < degree + 1:
        raise ValueError(f"rank-deficient fit: rank {rank} < {degree + 1}")
    fitted = design @ coeffs
    return float(np.max(np.abs(ys - fitted)))
