"""Octonions over Q via Cayley-Dickson doubling.

Convention: ``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`` applied
three times starting from the rationals, giving the basis 1, e_1, ..., e_7.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .exactlin import as_fraction


def _cd_mult(x: tuple, y: tuple) -> tuple:
    n = len(x)
    if n == 1:
        return (x[0] * y[0],)
    h = n // 2
    a, b, c, d = x[:h], x[h:], y[:h], y[h:]
    left = _sub(_cd_mult(a, c), _cd_mult(_cd_conj(d), b))
    right = _add(_cd_mult(d, a), _cd_mult(b, _cd_conj(c)))
    return left + right


def _cd_conj(x: tuple) -> tuple:
    return (x[0],) + tuple(-v for v in x[1:])


def _add(x, y):
    return tuple(p + q for p, q in zip(x, y))


def _sub(x, y):
    return tuple(p - q for p, q in zip(x, y))


def _build_table() -> list[list[tuple[int, int]]]:
    """``table[i][j] = (sign, k)`` with ``e_i e_j = sign * e_k``."""
    table = []
    for i in range(8):
        row = []
        for j in range(8):
            ei = tuple(1 if t == i else 0 for t in range(8))
            ej = tuple(1 if t == j else 0 for t in range(8))
            prod = _cd_mult(ei, ej)
            (k,) = [t for t in range(8) if prod[t]]
            row.append((prod[k], k))
        table.append(row)
    return table


MULT_TABLE = _build_table()


class Octonion:
    """Immutable rational octonion with coordinates over 1, e_1, ..., e_7."""

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable = (0,) * 8):
        c = tuple(as_fraction(x) for x in coords)
        if len(c) != 8:
            raise ValueError("an octonion has 8 coordinates")
        object.__setattr__(self, "coords", c)

    def __setattr__(self, name, value):
        raise AttributeError("Octonion is immutable")

    @classmethod
    def unit(cls, i: int) -> "Octonion":
        """Basis element e_i (e_0 = 1)."""
        return cls(1 if t == i else 0 for t in range(8))

    @classmethod
    def real(cls, a) -> "Octonion":
        return cls((a,) + (0,) * 7)

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(_add(self.coords, other.coords))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(_sub(self.coords, other.coords))

    def __neg__(self) -> "Octonion":
        return Octonion(-x for x in self.coords)

    def __mul__(self, other):
        if not isinstance(other, Octonion):
            s = as_fraction(other)
            return Octonion(s * x for x in self.coords)
        out = [Fraction(0)] * 8
        for i, x in enumerate(self.coords):
            if not x:
                continue
            row = MULT_TABLE[i]
            for j, y in enumerate(other.coords):
                if y:
                    sign, k = row[j]
                    out[k] += sign * x * y
        return Octonion(out)

    def __rmul__(self, other):
        return self * other

    def conjugate(self) -> "Octonion":
        return Octonion(_cd_conj(self.coords))

    def real_part(self) -> Fraction:
        return self.coords[0]

    def norm(self) -> Fraction:
        """Squared norm, the real part of x * conj(x)."""
        return sum((x * x for x in self.coords), Fraction(0))

    def inner(self, other: "Octonion") -> Fraction:
        """Real inner product Re(x conj(y))."""
        return sum((x * y for x, y in zip(self.coords, other.coords)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, Octonion):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Octonion({[str(x) for x in self.coords]})"


ZERO = Octonion()
ONE = Octonion.unit(0)


def multiply(x: Octonion, y: Octonion) -> Octonion:
    return x * y


def conjugate(x: Octonion) -> Octonion:
    return x.conjugate()


def real_part(x: Octonion) -> Fraction:
    return x.real_part()


def norm(x: Octonion) -> Fraction:
    return x.norm()
