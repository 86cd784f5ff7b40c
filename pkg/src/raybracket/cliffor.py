"""Multivector arithmetic in the Clifford algebra Cl(3,0).

A :class:`Cliffor` holds eight real components::

    A = s + v1 e1 + v2 e2 + v3 e3 + b1 e2e3 + b2 e3e1 + b3 e1e2 + p e1e2e3

The bivector basis is ordered (e2e3, e3e1, e1e2) = (i e1, i e2, i e3), with
``i = e1 e2 e3`` the unit pseudoscalar.  Because ``i`` is central and squares
to -1, a cliffor can be written as ``z + u`` with complex scalar
``z = s + i p`` and complex vector ``u = v + i b``.  The geometric product is
then ``(z1 + u1)(z2 + u2) = z1 z2 + u1.u2 + z1 u2 + z2 u1 + i (u1 x u2)``
with complex-bilinear dot and cross; :func:`geometric_product` uses that form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real

from .errors import GradeOutOfRange

__all__ = [
    "Cliffor",
    "Vector3",
    "E1",
    "E2",
    "E3",
    "I",
    "ONE",
    "ZERO",
    "geometric_product",
    "dot",
    "wedge",
    "cross",
    "grade",
    "dagger",
    "hodge_dual",
    "inner",
    "outer",
]


@dataclass(frozen=True)
class Vector3:
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __add__(self, other: Vector3) -> Vector3:
        return Vector3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: Vector3) -> Vector3:
        return Vector3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> Vector3:
        return Vector3(-self.x, -self.y, -self.z)

    def __mul__(self, k: float) -> Vector3:
        return Vector3(k * self.x, k * self.y, k * self.z)

    __rmul__ = __mul__

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def as_cliffor(self) -> Cliffor:
        return Cliffor(v=(self.x, self.y, self.z))


@dataclass(frozen=True)
class Cliffor:
    s: float = 0.0
    v: tuple[float, float, float] = (0.0, 0.0, 0.0)
    b: tuple[float, float, float] = (0.0, 0.0, 0.0)
    p: float = 0.0

    @classmethod
    def from_components(cls, comps) -> Cliffor:
        """Build from the flat 8-tuple ``(s, v1, v2, v3, b1, b2, b3, p)``."""
        c = [float(x) for x in comps]
        if len(c) != 8:
            raise ValueError(f"expected 8 components, got {len(c)}")
        return cls(c[0], (c[1], c[2], c[3]), (c[4], c[5], c[6]), c[7])

    @classmethod
    def scalar(cls, value: float) -> Cliffor:
        return cls(s=float(value))

    def components(self) -> tuple[float, ...]:
        return (self.s, *self.v, *self.b, self.p)

    # complex view: z = s + i p, u_k = v_k + i b_k
    def _split(self):
        z = complex(self.s, self.p)
        u = tuple(complex(vk, bk) for vk, bk in zip(self.v, self.b))
        return z, u

    @classmethod
    def _join(cls, z: complex, u) -> Cliffor:
        return cls(z.real, (u[0].real, u[1].real, u[2].real), (u[0].imag, u[1].imag, u[2].imag), z.imag)

    def vector_part(self) -> Vector3:
        return Vector3(*self.v)

    def bivector_part(self) -> Vector3:
        """Coefficients of (i e1, i e2, i e3) as a vector (the Hodge-dual vector)."""
        return Vector3(*self.b)

    def norm(self) -> float:
        return math.sqrt(sum(c * c for c in self.components()))

    def is_close(self, other: Cliffor, tol: float = 1e-12) -> bool:
        """Componentwise comparison with tolerance scaled by operand magnitude."""
        scale = max(1.0, self.norm(), other.norm())
        return all(abs(a - b) <= tol * scale for a, b in zip(self.components(), other.components()))

    def __add__(self, other):
        if isinstance(other, Real):
            other = Cliffor.scalar(other)
        if not isinstance(other, Cliffor):
            return NotImplemented
        return Cliffor.from_components(a + b for a, b in zip(self.components(), other.components()))

    __radd__ = __add__

    def __neg__(self) -> Cliffor:
        return Cliffor.from_components(-a for a in self.components())

    def __sub__(self, other):
        if isinstance(other, Real):
            other = Cliffor.scalar(other)
        if not isinstance(other, Cliffor):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Real):
            return Cliffor.from_components(a * other for a in self.components())
        if not isinstance(other, Cliffor):
            return NotImplemented
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, Real):
            return self * other
        return NotImplemented

    def __truediv__(self, k: float) -> Cliffor:
        return Cliffor.from_components(a / k for a in self.components())

    def __xor__(self, other: Cliffor) -> Cliffor:
        return outer(self, other)

    def __or__(self, other: Cliffor) -> Cliffor:
        return inner(self, other)

    def __str__(self) -> str:
        return format_cliffor(self)


E1 = Cliffor(v=(1.0, 0.0, 0.0))
E2 = Cliffor(v=(0.0, 1.0, 0.0))
E3 = Cliffor(v=(0.0, 0.0, 1.0))
I = Cliffor(p=1.0)
ONE = Cliffor(s=1.0)
ZERO = Cliffor()


def _cdot(u, w) -> complex:
    return u[0] * w[0] + u[1] * w[1] + u[2] * w[2]


def _ccross(u, w):
    return (
        u[1] * w[2] - u[2] * w[1],
        u[2] * w[0] - u[0] * w[2],
        u[0] * w[1] - u[1] * w[0],
    )


def geometric_product(lhs: Cliffor, rhs: Cliffor) -> Cliffor:
    z1, u1 = lhs._split()
    z2, u2 = rhs._split()
    z = z1 * z2 + _cdot(u1, u2)
    uxw = _ccross(u1, u2)
    u = tuple(z1 * b + z2 * a + 1j * c for a, b, c in zip(u1, u2, uxw))
    return Cliffor._join(z, u)


def dot(a: Vector3, b: Vector3) -> float:
    return a.x * b.x + a.y * b.y + a.z * b.z


def cross(a: Vector3, b: Vector3) -> Vector3:
    return Vector3(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )


def wedge(a: Vector3, b: Vector3) -> Cliffor:
    """Outer product of two vectors as a pure bivector.

    Each coefficient is the 2x2 determinant over the matching coordinate
    plane: e2e3 <- (a2 b3 - a3 b2), e3e1 <- (a3 b1 - a1 b3),
    e1e2 <- (a1 b2 - a2 b1).
    """
    return Cliffor(
        b=(
            a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x,
        )
    )


def grade(a: Cliffor, g: int) -> Cliffor:
    if g == 0:
        return Cliffor(s=a.s)
    if g == 1:
        return Cliffor(v=a.v)
    if g == 2:
        return Cliffor(b=a.b)
    if g == 3:
        return Cliffor(p=a.p)
    raise GradeOutOfRange(f"grade must be 0, 1, 2 or 3, got {g!r}", grade=g)


def dagger(a: Cliffor) -> Cliffor:
    """Spatial inversion: negate vector and trivector parts.

    Unlike reversion this does not reverse product order:
    dagger(A B) == dagger(A) dagger(B).
    """
    return Cliffor(a.s, (-a.v[0], -a.v[1], -a.v[2]), a.b, -a.p)


def hodge_dual(a: Cliffor) -> Cliffor:
    """Left multiplication by the pseudoscalar ``i``."""
    z, u = a._split()
    return Cliffor._join(1j * z, tuple(1j * c for c in u))


def _graded(a: Cliffor):
    return [(g, grade(a, g)) for g in range(4)]


def outer(a: Cliffor, b: Cliffor) -> Cliffor:
    """Wedge of general cliffors: sum over grade pairs of <A_r B_s>_{r+s}."""
    out = ZERO
    for r, ar in _graded(a):
        for s, bs in _graded(b):
            if r + s <= 3:
                out = out + grade(geometric_product(ar, bs), r + s)
    return out


def inner(a: Cliffor, b: Cliffor) -> Cliffor:
    """Dot of general cliffors: sum over grade pairs of <A_r B_s>_{|r-s|}.

    Scalar operands are not special-cased, so ``x | y == x y`` for scalars.
    """
    out = ZERO
    for r, ar in _graded(a):
        for s, bs in _graded(b):
            out = out + grade(geometric_product(ar, bs), abs(r - s))
    return out


_BLADE_NAMES = ("", "e1", "e2", "e3", "e23", "e31", "e12", "i")


def format_number(x: float) -> str:
    """17 significant digits, no trailing zeros; -0 prints as 0."""
    if x == 0:
        return "0"
    return format(x, ".17g")


def format_cliffor(a: Cliffor) -> str:
    terms = []
    for coef, name in zip(a.components(), _BLADE_NAMES):
        if coef == 0:
            continue
        mag = abs(coef)
        if name and mag == 1:
            body = name
        elif name:
            body = f"{format_number(mag)} {name}"
        else:
            body = format_number(mag)
        terms.append(("-" if coef < 0 else "+", body))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
