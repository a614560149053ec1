"""The forward transform: holomorphic functions to axial monogenic fields.

For odd m and an inner spherical monogenic P_k, a holomorphic
h = u + iv on the upper half plane maps to

    Ft[h, P_k](x0 + x_) = (2k+m-1)!! [ (r^-1 d/dr)^N u  +  omega (d/dr r^-1)^N v ] P_k(x_)

with r = |x_|, omega = x_/r and N = k + (m-1)/2.  This is the radial form
of applying the Laplacian N times to (u + omega v) P_k, and the output is
monogenic: (d/dx0 + D)Ft = 0.  The scalar pair in brackets (times the
leading constant) is the axial profile (A, B) of the image.

An iterated finite-difference Laplacian of the undifferentiated field is
kept as an independent oracle (N <= 2) for tests.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .clifford import Multivector, Paravector
from .jets import HolomorphicFn, radial_derivatives
from .polynomials import MonogenicPolynomial
from .radial import double_factorial, radial_op


class FueterConfig:
    """Dimension/degree bundle: odd m >= 3, k >= 0."""

    __slots__ = ("m", "k")

    def __init__(self, m: int, k: int):
        m, k = int(m), int(k)
        if m < 3 or m % 2 == 0:
            raise ValueError(f"m must be odd and >= 3, got m={m}")
        if k < 0:
            raise ValueError(f"k must be nonnegative, got k={k}")
        self.m = m
        self.k = k

    @property
    def N(self) -> int:
        """Operator order k + (m-1)/2."""
        return self.k + (self.m - 1) // 2

    @property
    def leading_constant(self) -> int:
        """(2k + m - 1)!! exactly."""
        return double_factorial(2 * self.k + self.m - 1)

    @property
    def kernel_degree(self) -> int:
        """Largest n with z^n annihilated: 2k + m - 2."""
        return 2 * self.k + self.m - 2

    def __repr__(self) -> str:
        return f"FueterConfig(m={self.m}, k={self.k}, N={self.N})"


def fueter_profile(h: HolomorphicFn, cfg: FueterConfig, x0: float, r: float) -> tuple[float, float]:
    """The axial profile (A, B) of Ft[h, P_k] at (x0, r), r > 0."""
    u, v = radial_derivatives(h, x0, r, cfg.N)
    const = float(cfg.leading_constant)
    a = const * radial_op(u, r, cfg.N, "minus")
    b = const * radial_op(v, r, cfg.N, "plus")
    return a, b


def fueter_fields(
    h: HolomorphicFn, cfg: FueterConfig
) -> tuple[Callable[[float, np.ndarray], np.ndarray], Callable[[float, np.ndarray], np.ndarray]]:
    """(A, B) evaluators of the image field, vectorized over r at fixed x0."""

    def make(which: int):
        def eval_field(x0, r):
            rr = np.asarray(r, dtype=np.float64)
            if rr.ndim == 0:
                return fueter_profile(h, cfg, float(x0), float(rr))[which]
            flat = [fueter_profile(h, cfg, float(x0), float(t))[which] for t in rr.ravel()]
            return np.array(flat).reshape(rr.shape)

        return eval_field

    return make(0), make(1)


def _check_pair(P: MonogenicPolynomial, cfg: FueterConfig) -> None:
    if P.m != cfg.m:
        raise ValueError(f"polynomial built for m={P.m}, config has m={cfg.m}")
    if P.k != cfg.k:
        raise ValueError(f"polynomial degree {P.k} does not match config k={cfg.k}")


def fueter_map(
    h: HolomorphicFn, P: MonogenicPolynomial, cfg: FueterConfig, p: Paravector
) -> Multivector:
    """Evaluate Ft[h, P_k] at the paravector p = x0 + x_ (off the real axis)."""
    _check_pair(P, cfg)
    if p.m != cfg.m:
        raise ValueError(f"point lives in R^{p.m + 1}, config has m={cfg.m}")
    r = p.r
    if r == 0.0:
        raise ValueError("the transform's radial form needs r > 0 (point off the real axis)")
    a, b = fueter_profile(h, cfg, p.x0, r)
    omega = Multivector.from_vector(cfg.m, p.omega)
    axial = Multivector.scalar(cfg.m, a) + b * omega
    return axial * P(p.vec)


def as_field(
    h: HolomorphicFn, P: MonogenicPolynomial, cfg: FueterConfig
) -> Callable[[np.ndarray], Multivector]:
    """The image as a map y in R^(m+1) -> Multivector, for residual checks."""

    def field(y: np.ndarray) -> Multivector:
        y = np.asarray(y, dtype=np.float64)
        return fueter_map(h, P, cfg, Paravector(y[0], y[1:]))

    return field


def laplacian_oracle(
    h: HolomorphicFn,
    P: MonogenicPolynomial,
    cfg: FueterConfig,
    p: Paravector,
    fd_step: float = 1e-3,
) -> Multivector:
    """Independent check value: FD Laplacian iterated N times on (u + omega v) P_k.

    Central second differences in all m+1 Cartesian coordinates, applied
    componentwise and nested N times.  Restricted to N <= 2; every stencil
    point must stay off the real axis and inside h's domain, so keep
    fd_step well below r/(2N).
    """
    _check_pair(P, cfg)
    if cfg.N > 2:
        raise ValueError(f"oracle restricted to N <= 2, got N={cfg.N}")
    fd_step = float(fd_step)
    if fd_step <= 0:
        raise ValueError(f"fd_step must be positive, got {fd_step}")
    if p.r <= 2 * cfg.N * fd_step:
        raise ValueError("stencil would cross the real axis; shrink fd_step")

    m = cfg.m
    dim = 1 << m

    def base_field(y: np.ndarray) -> np.ndarray:
        x0, xv = y[0], y[1:]
        r = float(np.linalg.norm(xv))
        if r == 0.0:
            raise ValueError("stencil touched the real axis")
        jet = h.jet(complex(x0, r), 0)
        u, v = jet.value.real, jet.value.imag
        omega = Multivector.from_vector(m, xv / r)
        axial = Multivector.scalar(m, u) + v * omega
        return (axial * P(xv)).coeffs

    def fd_laplacian(F: Callable[[np.ndarray], np.ndarray], y: np.ndarray) -> np.ndarray:
        acc = -2.0 * (m + 1) * F(y)
        for i in range(m + 1):
            e = np.zeros(m + 1)
            e[i] = fd_step
            acc = acc + F(y + e) + F(y - e)
        return acc / fd_step**2

    y0 = np.concatenate(([p.x0], p.vec))
    if cfg.N == 1:
        out = fd_laplacian(base_field, y0)
    else:
        out = fd_laplacian(lambda q: fd_laplacian(base_field, q), y0)
    return Multivector(m, out)
