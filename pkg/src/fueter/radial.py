"""Radial calculus: iterated x^(-1)d/dx operators and their antiderivatives.

Two first-order operators drive everything here, in two interleavings:

    minus:  (x^-1 d/dx)^n g  =  sum_{j=1..n} (-1)^(n+j) a_{j,n} x^(j-2n) g^(j)(x)
    plus:   (d/dx x^-1)^n g  =  sum_{j=0..n} (-1)^(n+j) a_{j+1,n+1} x^(j-2n) g^(j)(x)

with the exact integer coefficients

    a_{j,n} = (2n-j-1)! / (2^(n-j) (n-j)! (j-1)!),   1 <= j <= n,

the coefficient rows of the Bessel polynomials.  Inverting either operator
one level costs one weighted integral (the two-variable kernel collapses a
nested n-fold integral to a single one):

    phi_n(x) = (2n-2)!!^-1 integral_a^x t (x^2-t^2)^(n-1) f(t) dt
    psi_n(x) = x (2n-2)!!^-1 integral_a^x (x^2-t^2)^(n-1) f(t) dt

and (x^-1 d/dx)^n phi_n = f, (d/dx x^-1)^n psi_n = f, with phi_n, psi_n the
particular solutions vanishing (to order n) at x = a.  The recursion
phi_n = integral_a^x t phi_(n-1) dt, psi_n = x integral_a^x psi_(n-1) dt is
kept alongside as an independent brute-force oracle for tests.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable

import numpy as np

from .quadrature import DEFAULT_QUADRATURE, QuadratureConfig, integrate

_CACHE_ROWS = 12
VARIANTS = ("minus", "plus")
ANTIDERIVATIVE_VARIANTS = ("phi", "psi")


def double_factorial(n: int) -> int:
    """n!! with the empty-product conventions 0!! = (-1)!! = 1."""
    n = int(n)
    if n < -1:
        raise ValueError(f"double factorial needs n >= -1, got {n}")
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=None)
def _coeff(j: int, n: int) -> int:
    num = math.factorial(2 * n - j - 1)
    den = (1 << (n - j)) * math.factorial(n - j) * math.factorial(j - 1)
    q, rem = divmod(num, den)
    if rem:  # cannot happen for valid (j, n); guards the formula itself
        raise ArithmeticError(f"coefficient a_({j},{n}) is not an integer")
    return q


def coeff_a(j: int, n: int) -> int:
    """Exact integer a_{j,n}; requires 1 <= j <= n."""
    j, n = int(j), int(n)
    if not 1 <= j <= n:
        raise ValueError(f"coeff_a needs 1 <= j <= n, got j={j}, n={n}")
    return _coeff(j, n)


def coeff_row(n: int) -> tuple[int, ...]:
    """(a_{1,n}, ..., a_{n,n})."""
    return tuple(coeff_a(j, n) for j in range(1, int(n) + 1))


def bessel_row(n: int) -> tuple[int, ...]:
    """(a_{j+1,n+1})_{j=0..n}: the coefficients (2n-j)!/(2^(n-j)(n-j)!j!)."""
    return tuple(coeff_a(j + 1, int(n) + 1) for j in range(int(n) + 1))


# ensure the documented cache band is warm on import; larger n still works
for _n in range(1, _CACHE_ROWS + 1):
    coeff_row(_n)
del _n


def radial_op(derivs, x: float, n: int, variant: str = "minus") -> float:
    """Apply (x^-1 d/dx)^n ("minus") or (d/dx x^-1)^n ("plus") at x.

    derivs holds g(x), g'(x), ..., up to order at least n; the expansion
    uses exact integer coefficients, so the only rounding is the final
    float combination.  n = 0 returns g(x) for either variant.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")
    n = int(n)
    if n < 0:
        raise ValueError(f"operator order must be nonnegative, got {n}")
    g = np.asarray(derivs, dtype=np.float64)
    if g.ndim != 1 or g.size < n + 1:
        raise ValueError(f"need derivatives up to order {n}, got shape {g.shape}")
    x = float(x)
    if n == 0:
        return float(g[0])
    if x == 0.0:
        raise ValueError("radial operators are singular at x = 0")
    total = 0.0
    if variant == "minus":
        for j in range(1, n + 1):
            total += (-1.0) ** (n + j) * coeff_a(j, n) * x ** (j - 2 * n) * g[j]
    else:
        for j in range(0, n + 1):
            total += (-1.0) ** (n + j) * coeff_a(j + 1, n + 1) * x ** (j - 2 * n) * g[j]
    return float(total)


class RadialField:
    """A scalar profile f on an interval [a, b], vectorized over x."""

    __slots__ = ("_f", "a", "b")

    def __init__(self, f: Callable[[np.ndarray], np.ndarray], a: float, b: float):
        self.a = float(a)
        self.b = float(b)
        if not self.a < self.b:
            raise ValueError(f"need a < b, got [{self.a}, {self.b}]")
        self._f = f

    def __call__(self, x):
        xv = np.asarray(x, dtype=np.float64)
        if np.any(xv < self.a - 1e-12) or np.any(xv > self.b + 1e-12):
            raise ValueError(f"evaluation outside [{self.a:g}, {self.b:g}]")
        return np.asarray(self._f(xv), dtype=np.float64)


def _check_anti_args(field: RadialField, x: float, n: int, variant: str) -> tuple[float, int]:
    if variant not in ANTIDERIVATIVE_VARIANTS:
        raise ValueError(
            f"variant must be one of {ANTIDERIVATIVE_VARIANTS}, got {variant!r}"
        )
    n = int(n)
    if n < 1:
        raise ValueError(f"antiderivative order must be >= 1, got {n}")
    x = float(x)
    if not field.a <= x <= field.b:
        raise ValueError(f"x={x:g} outside the field interval [{field.a:g}, {field.b:g}]")
    return x, n


def antiderivative(
    field: RadialField,
    x: float,
    n: int,
    variant: str = "phi",
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Particular n-th order inverse of the radial operators at x.

    "phi" solves (x^-1 d/dx)^n g = f, "psi" solves (d/dx x^-1)^n g = f;
    both vanish at the interval's left endpoint a together with enough
    derivatives to make the inversion exact.
    """
    x, n = _check_anti_args(field, x, n, variant)
    norm = 1.0 / double_factorial(2 * n - 2)
    if variant == "phi":
        value = integrate(
            lambda t: t * (x * x - t * t) ** (n - 1) * field(t), field.a, x, quad
        )
        return norm * value
    value = integrate(lambda t: (x * x - t * t) ** (n - 1) * field(t), field.a, x, quad)
    return norm * x * value


def nested_antiderivative_oracle(
    field: RadialField,
    x: float,
    n: int,
    variant: str = "phi",
    quad: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Brute-force n-fold nesting of the defining recursion (test oracle).

    phi_n = integral_a^x t phi_(n-1)(t) dt and psi_n = x integral_a^x
    psi_(n-1)(t) dt are evaluated literally, one fixed-order Gauss-Legendre
    rule per nesting level (order 2 * quad.panel_order), vectorized over
    the level's node tensor.  Independent of the single-integral formula.
    """
    x, n = _check_anti_args(field, x, n, variant)
    nodes, weights = np.polynomial.legendre.leggauss(2 * quad.panel_order)

    def level(upper: np.ndarray, depth: int) -> np.ndarray:
        if depth == 0:
            return field(upper)
        half = 0.5 * (upper - field.a)
        t = (field.a + half)[..., None] + half[..., None] * nodes
        inner = level(t, depth - 1)
        if variant == "phi":
            return half * np.sum(weights * t * inner, axis=-1)
        return upper * half * np.sum(weights * inner, axis=-1)

    return float(level(np.asarray(x, dtype=np.float64), n))
