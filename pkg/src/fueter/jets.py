"""Holomorphic functions carried as truncated derivative jets.

A jet at z stores (h(z), h'(z), ..., h^(d)(z)) exactly, so the radial
operators downstream never see finite-difference noise.  Jets combine by
the Leibniz rule; elementary functions get closed-form derivative chains
(arctan through the jet of 1/(1+z^2), so every consumer shares one branch
convention).

The upper half plane Im z = r > 0 is the working domain.  arctan keeps its
standard cuts {iy : |y| >= 1} on the imaginary axis and log the cut
(-inf, 0]; evaluation within 1e-12 of a cut is rejected rather than
silently picking a side.
"""

from __future__ import annotations

import cmath
import math
from typing import Callable, Sequence

import numpy as np

CUT_TOL = 1e-12


class Jet:
    """Derivatives (h(z), h'(z), ..., h^(d)(z)) of a holomorphic h at z."""

    __slots__ = ("_z", "_coeffs")

    def __init__(self, z: complex, coeffs: Sequence[complex]):
        if len(coeffs) == 0:
            raise ValueError("a jet needs at least the order-0 value")
        self._z = complex(z)
        self._coeffs = tuple(complex(c) for c in coeffs)

    @property
    def z(self) -> complex:
        return self._z

    @property
    def coeffs(self) -> tuple[complex, ...]:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def value(self) -> complex:
        return self._coeffs[0]

    def _match(self, other: "Jet") -> int:
        if other._z != self._z:
            raise ValueError(f"jets based at different points: {self._z} vs {other._z}")
        if other.order != self.order:
            raise ValueError(f"jet order mismatch: {self.order} vs {other.order}")
        return self.order

    def __add__(self, other: "Jet") -> "Jet":
        if not isinstance(other, Jet):
            return NotImplemented
        self._match(other)
        return Jet(self._z, [a + b for a, b in zip(self._coeffs, other._coeffs)])

    def __sub__(self, other: "Jet") -> "Jet":
        if not isinstance(other, Jet):
            return NotImplemented
        self._match(other)
        return Jet(self._z, [a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __neg__(self) -> "Jet":
        return Jet(self._z, [-a for a in self._coeffs])

    def scale(self, c: float) -> "Jet":
        """Multiply by a real constant (the transform is R-linear)."""
        c = float(c)
        return Jet(self._z, [c * a for a in self._coeffs])

    def __mul__(self, other: "Jet") -> "Jet":
        if not isinstance(other, Jet):
            return NotImplemented
        d = self._match(other)
        a, b = self._coeffs, other._coeffs
        out = [
            sum(math.comb(n, i) * a[i] * b[n - i] for i in range(n + 1))
            for n in range(d + 1)
        ]
        return Jet(self._z, out)

    def __truediv__(self, other: "Jet") -> "Jet":
        if not isinstance(other, Jet):
            return NotImplemented
        d = self._match(other)
        a, b = self._coeffs, other._coeffs
        if b[0] == 0:
            raise ZeroDivisionError("jet division by a function vanishing at the base point")
        q: list[complex] = []
        for n in range(d + 1):
            acc = a[n]
            for i in range(n):
                acc -= math.comb(n, i) * q[i] * b[n - i]
            q.append(acc / b[0])
        return Jet(self._z, q)

    def truncate(self, order: int) -> "Jet":
        if not 0 <= order <= self.order:
            raise ValueError(f"cannot truncate order-{self.order} jet to order {order}")
        return Jet(self._z, self._coeffs[: order + 1])

    def __repr__(self) -> str:
        return f"Jet(z={self._z}, coeffs={self._coeffs})"


def jet_combine(kind: str, a: Jet, b=None) -> Jet:
    """Dispatch table for jet combination: add, mul, div, scale."""
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind == "scale":
        return a.scale(b)
    raise ValueError(f"unknown jet combination {kind!r}")


# -- elementary jets ---------------------------------------------------------


def _check_order(d: int) -> int:
    d = int(d)
    if d < 0:
        raise ValueError(f"jet order must be nonnegative, got {d}")
    return d


def jet_const(value: complex, z: complex, d: int) -> Jet:
    d = _check_order(d)
    return Jet(z, [complex(value)] + [0j] * d)


def jet_identity(z: complex, d: int) -> Jet:
    d = _check_order(d)
    coeffs = [complex(z)] + [0j] * d
    if d >= 1:
        coeffs[1] = 1.0 + 0j
    return Jet(z, coeffs)


def jet_power(n: int, z: complex, d: int) -> Jet:
    """z^n for integer n >= 0, with exact falling-factorial derivatives."""
    d = _check_order(d)
    n = int(n)
    if n < 0:
        raise ValueError(f"power must be nonnegative (use recip for 1/z), got {n}")
    zc = complex(z)
    coeffs = []
    for j in range(d + 1):
        if j > n:
            coeffs.append(0j)
        else:
            coeffs.append(math.perm(n, j) * zc ** (n - j))
    return Jet(zc, coeffs)


def jet_polynomial(real_coeffs: Sequence[float], z: complex, d: int) -> Jet:
    """sum_n c_n z^n with real coefficients c, ascending order."""
    d = _check_order(d)
    zc = complex(z)
    out = [0j] * (d + 1)
    for n, c in enumerate(real_coeffs):
        if c == 0:
            continue
        for j in range(min(d, n) + 1):
            out[j] += c * math.perm(n, j) * zc ** (n - j)
    return Jet(zc, out)


def jet_recip(z: complex, d: int) -> Jet:
    """1/z; the base point must be off the origin."""
    d = _check_order(d)
    zc = complex(z)
    if zc == 0:
        raise ValueError("1/z is singular at the origin")
    return Jet(zc, [(-1) ** j * math.factorial(j) * zc ** (-j - 1) for j in range(d + 1)])


def _off_arctan_cut(z: complex) -> bool:
    return not (abs(z.real) <= CUT_TOL and abs(z.imag) >= 1.0 - CUT_TOL)


def _off_log_cut(z: complex) -> bool:
    return not (abs(z.imag) <= CUT_TOL and z.real <= CUT_TOL)


def jet_arctan(z: complex, d: int) -> Jet:
    """Principal arctan, cuts on {iy : |y| >= 1}.

    The derivative chain is the jet of 1/(1 + z^2), so higher derivatives
    are exact rational expressions in z.
    """
    d = _check_order(d)
    zc = complex(z)
    if not _off_arctan_cut(zc):
        raise ValueError(f"arctan evaluated within {CUT_TOL:g} of its branch cut: z={zc}")
    val = cmath.atan(zc)
    if d == 0:
        return Jet(zc, [val])
    g = jet_const(1.0, zc, d - 1) / jet_polynomial((1.0, 0.0, 1.0), zc, d - 1)
    return Jet(zc, (val,) + g.coeffs)


def jet_log(z: complex, d: int) -> Jet:
    """Principal log, cut on (-inf, 0]."""
    d = _check_order(d)
    zc = complex(z)
    if not _off_log_cut(zc):
        raise ValueError(f"log evaluated within {CUT_TOL:g} of its branch cut: z={zc}")
    coeffs = [cmath.log(zc)]
    coeffs += [(-1) ** (j - 1) * math.factorial(j - 1) * zc ** (-j) for j in range(1, d + 1)]
    return Jet(zc, coeffs)


def jet_elementary(kind: str, z: complex, d: int, *, value=None, n=None) -> Jet:
    """Build the jet of an elementary function at z to order d.

    Kinds: "const" (needs value), "identity", "recip", "power" (needs n),
    "arctan", "log".
    """
    if kind == "const":
        if value is None:
            raise ValueError("const jet needs a value")
        return jet_const(value, z, d)
    if kind == "identity":
        return jet_identity(z, d)
    if kind == "recip":
        return jet_recip(z, d)
    if kind == "power":
        if n is None:
            raise ValueError("power jet needs an exponent n")
        return jet_power(n, z, d)
    if kind == "arctan":
        return jet_arctan(z, d)
    if kind == "log":
        return jet_log(z, d)
    raise ValueError(f"unknown elementary jet kind {kind!r}")


# -- named holomorphic functions ---------------------------------------------


class HolomorphicFn:
    """A holomorphic function presented through its jets.

    Wraps a jet builder (z, order) -> Jet together with a domain predicate;
    evaluation outside the domain raises instead of returning garbage on a
    branch cut.
    """

    __slots__ = ("name", "_jet_fn", "_domain")

    def __init__(
        self,
        name: str,
        jet_fn: Callable[[complex, int], Jet],
        domain: Callable[[complex], bool] | None = None,
    ):
        self.name = str(name)
        self._jet_fn = jet_fn
        self._domain = domain

    def in_domain(self, z: complex) -> bool:
        return self._domain is None or bool(self._domain(complex(z)))

    def jet(self, z: complex, order: int) -> Jet:
        zc = complex(z)
        if not self.in_domain(zc):
            raise ValueError(f"{self.name} is not defined at z={zc} (domain violation)")
        j = self._jet_fn(zc, _check_order(order))
        if j.order != order:
            raise RuntimeError(f"jet builder for {self.name} returned wrong order")
        return j

    def __call__(self, z: complex) -> complex:
        return self.jet(z, 0).value

    # algebraic combinators keep the tighter of the two domains
    def __add__(self, other: "HolomorphicFn") -> "HolomorphicFn":
        if not isinstance(other, HolomorphicFn):
            return NotImplemented
        return HolomorphicFn(
            f"({self.name} + {other.name})",
            lambda z, d: self._jet_fn(z, d) + other._jet_fn(z, d),
            lambda z: self.in_domain(z) and other.in_domain(z),
        )

    def __mul__(self, other):
        if isinstance(other, HolomorphicFn):
            return HolomorphicFn(
                f"({self.name} * {other.name})",
                lambda z, d: self._jet_fn(z, d) * other._jet_fn(z, d),
                lambda z: self.in_domain(z) and other.in_domain(z),
            )
        if isinstance(other, (int, float, np.floating, np.integer)):
            c = float(other)
            return HolomorphicFn(
                f"({c:g} * {self.name})",
                lambda z, d: self._jet_fn(z, d).scale(c),
                self._domain,
            )
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"HolomorphicFn({self.name})"


def constant(value: float) -> HolomorphicFn:
    return HolomorphicFn(f"const:{value:g}", lambda z, d: jet_const(value, z, d))

def identity() -> HolomorphicFn:
    return HolomorphicFn("z", jet_identity)

def power(n: int) -> HolomorphicFn:
    n = int(n)
    return HolomorphicFn(f"z^{n}", lambda z, d: jet_power(n, z, d))

def recip() -> HolomorphicFn:
    return HolomorphicFn("recip", jet_recip, lambda z: z != 0)

def arctan() -> HolomorphicFn:
    return HolomorphicFn("arctan", jet_arctan, _off_arctan_cut)

def log() -> HolomorphicFn:
    return HolomorphicFn("log", jet_log, _off_log_cut)

def z_arctan() -> HolomorphicFn:
    f = identity() * arctan()
    f.name = "z*arctan"
    return f

def polynomial(real_coeffs: Sequence[float], name: str | None = None) -> HolomorphicFn:
    coeffs = tuple(float(c) for c in real_coeffs)
    if name is None:
        name = "poly:" + ",".join(f"{c:g}" for c in coeffs)
    return HolomorphicFn(name, lambda z, d: jet_polynomial(coeffs, z, d))


def by_name(name: str) -> HolomorphicFn:
    """Resolve a CLI-style function name.

    Accepts "recip", "arctan", "log", "z*arctan", "z^<n>", "const:<v>" and
    "poly:<c0,c1,...>" (real coefficients, ascending).
    """
    name = name.strip()
    if name == "recip":
        return recip()
    if name == "arctan":
        return arctan()
    if name == "log":
        return log()
    if name == "z*arctan":
        return z_arctan()
    if name.startswith("z^"):
        try:
            n = int(name[2:])
        except ValueError:
            raise ValueError(f"bad power in function name {name!r}") from None
        if n < 0:
            raise ValueError(f"negative power {n}; use recip for 1/z")
        return power(n)
    if name.startswith("const:"):
        return constant(float(name[6:]))
    if name.startswith("poly:"):
        coeffs = [float(c) for c in name[5:].split(",")]
        return polynomial(coeffs)
    raise ValueError(f"unknown holomorphic function name {name!r}")


def radial_derivatives(
    h: HolomorphicFn, x0: float, r: float, d: int
) -> tuple[np.ndarray, np.ndarray]:
    """Radial derivative stacks of u = Re h, v = Im h at z = x0 + i r.

    Since d/dr h(x0 + i r) = i h'(z), the j-th radial derivatives are
    Re(i^j h^(j)(z)) and Im(i^j h^(j)(z)).  Requires r > 0.
    """
    if r <= 0:
        raise ValueError(f"radial derivatives need r > 0, got r={r}")
    jet = h.jet(complex(x0, r), d)
    rotated = [1j**j * c for j, c in enumerate(jet.coeffs)]
    u = np.array([c.real for c in rotated])
    v = np.array([c.imag for c in rotated])
    return u, v
