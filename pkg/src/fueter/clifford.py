"""Dense arithmetic in the real Clifford algebra R_{0,m}.

Basis blades are indexed by bit patterns: bit j-1 set in the index means
the generator e_j is a factor, so index 0 is the scalar 1 and index
2**(j-1) is e_j.  A product e_A e_B lands on the blade A XOR B; its sign
is the parity of the transpositions needed to interleave the two index
sequences, times -1 for every repeated generator (e_j e_j = -1).

Elements are stored densely as 2**m coefficients, which is the right
trade-off for the small m used here (m <= 9, enforced; this also keeps
the blade labels single-digit and therefore unambiguous as strings).
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_DIM = 9


def _reorder_sign(a: int, b: int) -> int:
    # Parity of #{(i, j) : i in A, j in B, i > j}, i.e. the transpositions
    # needed to sort the concatenation of two ascending index sequences.
    swaps = 0
    a >>= 1
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def _tables(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Product/conjugation tables for R_{0,m}: (xor_flat, signs, conj_signs, grades)."""
    dim = 1 << m
    blades = np.arange(dim)
    xor = (blades[:, None] ^ blades[None, :]).ravel()
    signs = np.empty((dim, dim), dtype=np.float64)
    for a in range(dim):
        for b in range(dim):
            contractions = (a & b).bit_count()
            s = _reorder_sign(a, b)
            signs[a, b] = -s if contractions & 1 else s
    grades = np.array([i.bit_count() for i in range(dim)])
    conj_signs = np.where(grades * (grades + 1) // 2 % 2, -1.0, 1.0)
    return xor, signs, conj_signs, grades


def _check_m(m: int) -> int:
    m = int(m)
    if not 1 <= m <= MAX_DIM:
        raise ValueError(f"m must be between 1 and {MAX_DIM}, got {m}")
    return m


class Multivector:
    """Element of R_{0,m} with one real coefficient per basis blade."""

    __slots__ = ("_m", "_c")

    def __init__(self, m: int, coeffs: Sequence[float] | np.ndarray):
        self._m = _check_m(m)
        c = np.array(coeffs, dtype=np.float64)
        if c.shape != (1 << self._m,):
            raise ValueError(
                f"expected {1 << self._m} coefficients for m={self._m}, got shape {c.shape}"
            )
        c.setflags(write=False)
        self._c = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, m: int) -> "Multivector":
        return cls(m, np.zeros(1 << _check_m(m)))

    @classmethod
    def scalar(cls, m: int, value: float) -> "Multivector":
        c = np.zeros(1 << _check_m(m))
        c[0] = value
        return cls(m, c)

    @classmethod
    def basis_vector(cls, m: int, j: int) -> "Multivector":
        """The generator e_j, 1-based."""
        m = _check_m(m)
        if not 1 <= j <= m:
            raise ValueError(f"generator index must be in 1..{m}, got {j}")
        c = np.zeros(1 << m)
        c[1 << (j - 1)] = 1.0
        return cls(m, c)

    @classmethod
    def blade(cls, m: int, indices: Iterable[int], value: float = 1.0) -> "Multivector":
        """value * e_A for the ascending index set A (e.g. (1, 3) -> e_1 e_3)."""
        m = _check_m(m)
        bits = 0
        for j in indices:
            if not 1 <= j <= m:
                raise ValueError(f"blade index must be in 1..{m}, got {j}")
            if bits & (1 << (j - 1)):
                raise ValueError(f"repeated blade index {j}")
            bits |= 1 << (j - 1)
        c = np.zeros(1 << m)
        c[bits] = value
        return cls(m, c)

    @classmethod
    def from_vector(cls, m: int, vec: Sequence[float]) -> "Multivector":
        """Embed a vector of R^m on the grade-1 blades."""
        m = _check_m(m)
        v = np.asarray(vec, dtype=np.float64)
        if v.shape != (m,):
            raise ValueError(f"expected a vector of length {m}, got shape {v.shape}")
        c = np.zeros(1 << m)
        c[[1 << j for j in range(m)]] = v
        return cls(m, c)

    # -- structure ---------------------------------------------------------

    @property
    def m(self) -> int:
        return self._m

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array, blade-indexed."""
        return self._c

    @property
    def scalar_part(self) -> float:
        return float(self._c[0])

    def grade_part(self, g: int) -> "Multivector":
        _, _, _, grades = _tables(self._m)
        out = np.where(grades == g, self._c, 0.0)
        return Multivector(self._m, out)

    @property
    def vector_part(self) -> np.ndarray:
        """Grade-1 coefficients as a plain vector of R^m."""
        return self._c[[1 << j for j in range(self._m)]].copy()

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return float(np.sqrt(np.dot(self._c, self._c)))

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.max(np.abs(self._c), initial=0.0) <= tol)

    # -- algebra -----------------------------------------------------------

    def _like(self, other: "Multivector") -> None:
        if other._m != self._m:
            raise ValueError(f"dimension mismatch: m={self._m} vs m={other._m}")

    def __add__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        self._like(other)
        return Multivector(self._m, self._c + other._c)

    def __sub__(self, other: "Multivector") -> "Multivector":
        if not isinstance(other, Multivector):
            return NotImplemented
        self._like(other)
        return Multivector(self._m, self._c - other._c)

    def __neg__(self) -> "Multivector":
        return Multivector(self._m, -self._c)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._like(other)
            xor, signs, _, _ = _tables(self._m)
            contrib = (self._c[:, None] * other._c[None, :]) * signs
            out = np.bincount(xor, weights=contrib.ravel(), minlength=1 << self._m)
            return Multivector(self._m, out)
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self._m, self._c * float(other))
        return NotImplemented

    def __rmul__(self, other):
        # scalars commute with everything; multivector * multivector
        # never reaches here
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self._m, self._c * float(other))
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Multivector(self._m, self._c / float(other))
        return NotImplemented

    def conjugate(self) -> "Multivector":
        """Clifford conjugation: the anti-automorphism with e_j -> -e_j."""
        _, _, conj_signs, _ = _tables(self._m)
        return Multivector(self._m, self._c * conj_signs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._m == other._m and bool(np.array_equal(self._c, other._c))

    def __hash__(self) -> int:
        return hash((self._m, self._c.tobytes()))

    # -- rendering ---------------------------------------------------------

    def to_pairs(self) -> list[tuple[str, float]]:
        """Nonzero coefficients as (blade label, value) pairs.

        Labels are the ascending generator indices as a string: "" for the
        scalar, "1" for e_1, "13" for e_1 e_3.  Exact round-trip through
        from_pairs.
        """
        out = []
        for idx in np.flatnonzero(self._c):
            out.append((_blade_label(int(idx)), float(self._c[idx])))
        return out

    @classmethod
    def from_pairs(cls, m: int, pairs: Iterable[Sequence]) -> "Multivector":
        m = _check_m(m)
        c = np.zeros(1 << m)
        for label, value in pairs:
            bits = 0
            for ch in str(label):
                j = int(ch)
                if not 1 <= j <= m:
                    raise ValueError(f"blade label {label!r} out of range for m={m}")
                if bits & (1 << (j - 1)):
                    raise ValueError(f"repeated index in blade label {label!r}")
                bits |= 1 << (j - 1)
            c[bits] += float(value)
        return cls(m, c)

    def __repr__(self) -> str:
        pairs = self.to_pairs()
        if not pairs:
            body = "0"
        else:
            parts = []
            for label, value in pairs:
                blade = f"e{label}" if label else ""
                if blade:
                    parts.append(f"{value:g}*{blade}")
                else:
                    parts.append(f"{value:g}")
            body = " + ".join(parts)
        return f"Multivector(m={self._m}: {body})"


def _blade_label(idx: int) -> str:
    return "".join(str(j + 1) for j in range(MAX_DIM) if idx >> j & 1)


class Paravector:
    """A point x0 + x_ of R^(m+1) seen inside R_{0,m}."""

    __slots__ = ("_x0", "_vec")

    def __init__(self, x0: float, vec: Sequence[float] | np.ndarray):
        v = np.array(vec, dtype=np.float64)
        if v.ndim != 1 or not 1 <= v.size <= MAX_DIM:
            raise ValueError(f"vector part must have 1..{MAX_DIM} entries, got shape {v.shape}")
        v.setflags(write=False)
        self._x0 = float(x0)
        self._vec = v

    @property
    def x0(self) -> float:
        return self._x0

    @property
    def vec(self) -> np.ndarray:
        return self._vec

    @property
    def m(self) -> int:
        return self._vec.size

    @property
    def r(self) -> float:
        """Length of the vector part."""
        return float(np.linalg.norm(self._vec))

    @property
    def omega(self) -> np.ndarray:
        """Unit vector x_/|x_|; undefined on the real axis."""
        r = self.r
        if r == 0.0:
            raise ValueError("omega is undefined at r = 0 (point on the real axis)")
        return self._vec / r

    def norm(self) -> float:
        return float(math.hypot(self._x0, self.r))

    def embed(self) -> Multivector:
        """x0 + x_ as a multivector (grade 0 plus grade 1)."""
        mv = Multivector.from_vector(self.m, self._vec)
        c = mv.coeffs.copy()
        c[0] = self._x0
        return Multivector(self.m, c)

    def __repr__(self) -> str:
        return f"Paravector(x0={self._x0:g}, vec={self._vec.tolist()})"
