"""Primitives of axial monogenic fields: the integral inversion.

Given an axial monogenic H = (A(x0, r) + omega B(x0, r)) P_k(x_) on a
rectangle [a, b] x [c, d] with c > 0, a holomorphic h = u + iv whose image
under the forward transform is H reads

    u(x0, r) = K_N I1(x0, r) + sum_{j=0..N-1} alpha_j(x0) r^(2j)
    v(x0, r) = K_N I2(x0, r) + sum_{j=0..N-1} beta_j(x0)  r^(2j+1)

with N = k + (m-1)/2, the exact rational K_N = 1 / (2N ((2N-2)!!)^2), the
weighted integrals

    I1(x0, r) =   integral_c^r t (r^2 - t^2)^(N-1) A(x0, t) dt
    I2(x0, r) = r integral_c^r   (r^2 - t^2)^(N-1) B(x0, t) dt

and polynomial correction coefficients alpha_j, beta_j determined (up to
the gauge freedom of the transform's kernel) by a linear first-order ODE
chain in x0 forced by the field's trace on the r = c edge:

    alpha_j' - (2j+1) beta_j = (-1)^(N-j-1) K_N C(N-1, j) c^(2(N-j)-1) B(x0, c)
    beta_j'  + 2(j+1) alpha_(j+1) = (-1)^(N-j) K_N C(N-1, j) c^(2(N-j-1)) A(x0, c)

for j = 0..N-1, reading alpha_N = 0 in the last line.  Integrals are
adaptive Gauss-Legendre; the ODE chain is classical RK4 on a fixed grid
with cubic interpolation between samples.  Different initial constants
change h only by a real polynomial of degree <= 2k+m-2 = 2N-1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy.interpolate import CubicSpline, RegularGridInterpolator

from .errors import OdeError
from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, integrate
from .radial import double_factorial


@dataclass(frozen=True)
class Rectangle:
    """Closed rectangle [a, b] x [c, d] in the (x0, r) half plane, c > 0."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not self.a < self.b:
            raise ValueError(f"need a < b, got a={self.a}, b={self.b}")
        if not 0 < self.c < self.d:
            raise ValueError(f"need 0 < c < d, got c={self.c}, d={self.d}")

    def contains(self, x0: float, r: float, tol: float = 1e-12) -> bool:
        return (
            self.a - tol <= x0 <= self.b + tol and self.c - tol <= r <= self.d + tol
        )

    def require(self, x0: float, r: float) -> None:
        if not self.contains(x0, r):
            raise ValueError(
                f"point (x0={x0:g}, r={r:g}) outside rectangle "
                f"[{self.a:g}, {self.b:g}] x [{self.c:g}, {self.d:g}]"
            )

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class OdeConfig:
    """Fixed-step solver settings for the coefficient ODE chain."""

    steps: int = 2048
    method: str = "rk4"

    def __post_init__(self):
        if self.steps < 4:
            raise ValueError(f"need at least 4 steps for cubic interpolation, got {self.steps}")
        if self.method != "rk4":
            raise ValueError(f"unknown ODE method {self.method!r} (only 'rk4')")


DEFAULT_ODE = OdeConfig()


def compute_KN(k: int, m: int) -> Fraction:
    """The exact rational normalization 1 / (2N ((2N-2)!!)^2), N = k + (m-1)/2."""
    k, m = int(k), int(m)
    if m < 3 or m % 2 == 0:
        raise ValueError(f"m must be odd and >= 3, got m={m}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got k={k}")
    N = k + (m - 1) // 2
    return Fraction(1, 2 * N * double_factorial(2 * N - 2) ** 2)


class AxialFunction:
    """An axial field on a rectangle: scalar profiles (A, B) plus (m, k).

    A and B must accept (x0, r) with r a scalar or an ndarray (the
    quadrature feeds node arrays at fixed x0).  The ``certified`` flag
    records that a Vekua-system residual check was run; nothing here
    requires it, but verification reports carry it.
    """

    __slots__ = ("A", "B", "m", "k", "rect", "name", "certified", "certified_tol")

    def __init__(
        self,
        A: Callable,
        B: Callable,
        m: int,
        k: int,
        rect: Rectangle,
        name: str = "axial-field",
        certified: bool = False,
        certified_tol: float | None = None,
    ):
        m, k = int(m), int(k)
        if m < 3 or m % 2 == 0:
            raise ValueError(f"m must be odd and >= 3, got m={m}")
        if k < 0:
            raise ValueError(f"k must be nonnegative, got k={k}")
        if not isinstance(rect, Rectangle):
            raise TypeError("rect must be a Rectangle")
        self.A = A
        self.B = B
        self.m = m
        self.k = k
        self.rect = rect
        self.name = str(name)
        self.certified = bool(certified)
        self.certified_tol = certified_tol

    @property
    def N(self) -> int:
        return self.k + (self.m - 1) // 2

    def certify(self, nx0: int = 12, nr: int = 12, tol: float = 1e-6) -> "AxialFunction":
        """Check the Vekua residual on a sample grid and return a flagged copy."""
        from .verify import GridSpec, vekua_residual

        grid = GridSpec(self.rect, nx0, nr)
        report = vekua_residual(self.A, self.B, self.k, self.m, grid)
        if report.max > tol:
            raise ValueError(
                f"field {self.name!r} failed certification: Vekua residual {report.max:g} > {tol:g}"
            )
        return AxialFunction(
            self.A, self.B, self.m, self.k, self.rect,
            name=self.name, certified=True, certified_tol=tol,
        )

    @classmethod
    def from_oracle(cls, name: str, rect: Rectangle | None = None) -> "AxialFunction":
        """Built-in fields by CLI name; see oracles.axial_field."""
        from . import oracles

        return oracles.axial_field(name, rect)

    @classmethod
    def from_grid(cls, data: dict | str) -> "AxialFunction":
        """Tabulated field from grid JSON (bilinear interpolation).

        Expects the grid schema {"meta": {m, k, rect, nx0, nr},
        "points": [{x0, r, value: [A, B]}, ...]} on a full regular grid.
        Interpolation is bilinear between samples, so this ingestion path
        is lower accuracy than closed-form fields; expect the inversion's
        quadrature to see the kinks.
        """
        if isinstance(data, str):
            data = json.loads(data)
        meta = data["meta"]
        rect = Rectangle(*[float(t) for t in meta["rect"]])
        nx0, nr = int(meta["nx0"]), int(meta["nr"])
        pts = data["points"]
        if len(pts) != nx0 * nr:
            raise ValueError(f"expected {nx0 * nr} grid points, got {len(pts)}")
        xs = np.array(sorted({float(p["x0"]) for p in pts}))
        rs = np.array(sorted({float(p["r"]) for p in pts}))
        if xs.size != nx0 or rs.size != nr:
            raise ValueError("points do not form a full nx0 x nr grid")
        vals = np.full((nx0, nr, 2), np.nan)
        for p in pts:
            i = int(np.searchsorted(xs, float(p["x0"])))
            j = int(np.searchsorted(rs, float(p["r"])))
            vals[i, j, :] = [float(p["value"][0]), float(p["value"][1])]
        if np.any(np.isnan(vals)):
            raise ValueError("grid has missing points")
        interp = RegularGridInterpolator((xs, rs), vals, method="linear")
        # rounding-level excursions past the grid edge (an ulp or two from
        # upstream arithmetic) snap back; genuinely exterior points still raise
        snap_x = 1e-12 * (xs[-1] - xs[0])
        snap_r = 1e-12 * (rs[-1] - rs[0])

        def component(which: int):
            def eval_field(x0, r):
                rr = np.asarray(r, dtype=np.float64)
                xx = np.broadcast_to(np.asarray(x0, dtype=np.float64), rr.shape)
                xx = np.where(np.abs(xx - xs[0]) <= snap_x, xs[0], xx)
                xx = np.where(np.abs(xx - xs[-1]) <= snap_x, xs[-1], xx)
                rq = np.where(np.abs(rr - rs[0]) <= snap_r, rs[0], rr)
                rq = np.where(np.abs(rq - rs[-1]) <= snap_r, rs[-1], rq)
                out = interp(np.stack([xx, rq], axis=-1).reshape(-1, 2))[..., which]
                return out.reshape(rr.shape) if rr.ndim else float(out[0])

            return eval_field

        return cls(
            component(0), component(1), int(meta["m"]), int(meta["k"]), rect,
            name="tabulated-grid",
        )

    def __repr__(self) -> str:
        return (
            f"AxialFunction({self.name!r}, m={self.m}, k={self.k}, "
            f"rect={self.rect.as_tuple()}, certified={self.certified})"
        )


def integral_I(
    variant: int,
    f: Callable,
    x0: float,
    r: float,
    rect: Rectangle,
    N: int,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """The weighted radial integral from the rectangle's lower edge.

    variant 1: integral_c^r t (r^2-t^2)^(N-1) f(x0, t) dt   (pairs with A)
    variant 2: r integral_c^r (r^2-t^2)^(N-1) f(x0, t) dt   (pairs with B)
    """
    if variant not in (1, 2):
        raise ValueError(f"variant must be 1 or 2, got {variant}")
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    rect.require(x0, r)
    x0, r = float(x0), float(r)
    if variant == 1:
        return integrate(
            lambda t: t * (r * r - t * t) ** (N - 1) * f(x0, t), rect.c, r, quad
        )
    return r * integrate(
        lambda t: (r * r - t * t) ** (N - 1) * f(x0, t), rect.c, r, quad
    )


def _edge_weights(N: int, c: float, kn: float) -> tuple[np.ndarray, np.ndarray]:
    # forcing weights of the ODE chain on the r = c trace
    s_alpha = np.array(
        [
            (-1.0) ** (N - j - 1) * kn * math.comb(N - 1, j) * c ** (2 * (N - j) - 1)
            for j in range(N)
        ]
    )
    s_beta = np.array(
        [
            (-1.0) ** (N - j) * kn * math.comb(N - 1, j) * c ** (2 * (N - j - 1))
            for j in range(N)
        ]
    )
    return s_alpha, s_beta


def solve_alpha_beta(
    H: AxialFunction,
    init: Sequence[float] | None = None,
    ode: OdeConfig = DEFAULT_ODE,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Integrate the coefficient ODE chain across [a, b].

    Returns (xs, alphas, betas) with xs of length steps+1 and each
    coefficient family of shape (N, steps+1).  init lists the 2N starting
    values (alpha_0..alpha_(N-1), beta_0..beta_(N-1)) at x0 = a; default
    all zero (any choice differs by a kernel polynomial).
    """
    N = H.N
    rect = H.rect
    kn = float(compute_KN(H.k, H.m))
    s_alpha, s_beta = _edge_weights(N, rect.c, kn)
    odd = 2.0 * np.arange(N) + 1.0  # (2j+1) couplings
    even = 2.0 * (np.arange(N - 1) + 1.0)  # 2(j+1) couplings

    if init is None:
        y = np.zeros(2 * N)
    else:
        y = np.asarray(init, dtype=np.float64).copy()
        if y.shape != (2 * N,):
            raise ValueError(f"init must have 2N = {2 * N} entries, got shape {y.shape}")

    def rhs(x0: float, state: np.ndarray) -> np.ndarray:
        alpha, beta = state[:N], state[N:]
        a_c = float(H.A(x0, rect.c))
        b_c = float(H.B(x0, rect.c))
        d_alpha = odd * beta + s_alpha * b_c
        d_beta = s_beta * a_c
        if N > 1:
            d_beta = d_beta.copy()
            d_beta[: N - 1] -= even * alpha[1:]
        return np.concatenate([d_alpha, d_beta])

    steps = ode.steps
    xs = np.linspace(rect.a, rect.b, steps + 1)
    h = (rect.b - rect.a) / steps
    out = np.empty((steps + 1, 2 * N))
    out[0] = y
    for i in range(steps):
        # evaluate stages on the exact grid: x + h can overshoot rect.b by
        # an ulp when h is inexact, which hard-fails interpolated fields
        x, x1 = xs[i], xs[i + 1]
        xm = 0.5 * (x + x1)
        k1 = rhs(x, y)
        k2 = rhs(xm, y + (h / 2) * k1)
        k3 = rhs(xm, y + (h / 2) * k2)
        k4 = rhs(x1, y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise OdeError(f"non-finite ODE state at x0={xs[i + 1]:g}")
        out[i + 1] = y
    alphas = out[:, :N].T.copy()
    betas = out[:, N:].T.copy()
    return xs, alphas, betas


class FueterPrimitive:
    """A computed primitive: correction trajectories plus on-demand integrals.

    eval(x0, r) returns (u, v) with u + iv holomorphic in x0 + i r; the
    alpha_j, beta_j trajectories are stored densely on the ODE grid and
    interpolated with not-a-knot cubic splines (exact on polynomial
    trajectories up to cubics).
    """

    __slots__ = (
        "field", "rect", "m", "k", "N", "K_N", "init", "quad", "ode",
        "xs", "alphas", "betas", "_alpha_sp", "_beta_sp",
    )

    def __init__(
        self,
        field: AxialFunction,
        init: np.ndarray,
        quad: QuadratureConfig,
        ode: OdeConfig,
        xs: np.ndarray,
        alphas: np.ndarray,
        betas: np.ndarray,
    ):
        self.field = field
        self.rect = field.rect
        self.m = field.m
        self.k = field.k
        self.N = field.N
        self.K_N = compute_KN(field.k, field.m)
        self.init = np.asarray(init, dtype=np.float64)
        self.quad = quad
        self.ode = ode
        self.xs = xs
        self.alphas = alphas
        self.betas = betas
        self._alpha_sp = [CubicSpline(xs, alphas[j]) for j in range(self.N)]
        self._beta_sp = [CubicSpline(xs, betas[j]) for j in range(self.N)]

    def alpha(self, j: int, x0) -> float | np.ndarray:
        return self._alpha_sp[j](x0)

    def beta(self, j: int, x0) -> float | np.ndarray:
        return self._beta_sp[j](x0)

    def eval(self, x0: float, r: float) -> tuple[float, float]:
        """(u, v) at a rectangle point."""
        self.rect.require(x0, r)
        kn = float(self.K_N)
        i1 = integral_I(1, self.field.A, x0, r, self.rect, self.N, self.quad)
        i2 = integral_I(2, self.field.B, x0, r, self.rect, self.N, self.quad)
        u = kn * i1
        v = kn * i2
        for j in range(self.N):
            u += float(self._alpha_sp[j](x0)) * r ** (2 * j)
            v += float(self._beta_sp[j](x0)) * r ** (2 * j + 1)
        return u, v

    def __call__(self, z: complex) -> complex:
        """u + iv at z = x0 + i r."""
        u, v = self.eval(z.real, z.imag)
        return complex(u, v)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "k": self.k,
            "N": self.N,
            "K_N": f"{self.K_N.numerator}/{self.K_N.denominator}",
            "rect": list(self.rect.as_tuple()),
            "init": self.init.tolist(),
            "x0": self.xs.tolist(),
            "alpha": self.alphas.tolist(),
            "beta": self.betas.tolist(),
        }

    def __repr__(self) -> str:
        return (
            f"FueterPrimitive(field={self.field.name!r}, N={self.N}, "
            f"rect={self.rect.as_tuple()}, init={self.init.tolist()})"
        )


def primitive_eval(P: FueterPrimitive, H: AxialFunction, x0: float, r: float) -> tuple[float, float]:
    """(u, v) of the primitive P of H at (x0, r); explicit-field variant of P.eval."""
    if H is not P.field and (H.m != P.m or H.k != P.k):
        raise ValueError("field does not match the primitive's (m, k)")
    kn = float(P.K_N)
    P.rect.require(x0, r)
    u = kn * integral_I(1, H.A, x0, r, P.rect, P.N, P.quad)
    v = kn * integral_I(2, H.B, x0, r, P.rect, P.N, P.quad)
    for j in range(P.N):
        u += float(P.alpha(j, x0)) * r ** (2 * j)
        v += float(P.beta(j, x0)) * r ** (2 * j + 1)
    return u, v


def invert(
    H: AxialFunction,
    init: Sequence[float] | None = None,
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
    ode: OdeConfig = DEFAULT_ODE,
) -> FueterPrimitive:
    """Construct a holomorphic primitive of the axial field H on its rectangle."""
    xs, alphas, betas = solve_alpha_beta(H, init, ode)
    y0 = np.zeros(2 * H.N) if init is None else np.asarray(init, dtype=np.float64)
    return FueterPrimitive(H, y0, quad, ode, xs, alphas, betas)
