"""Products of complex vectors ``r = a + i b`` split by grade.

The readout :func:`phase_area_and_angle` treats the imaginary part as if it
were a real vector in a phase plane.  That reading is only an interpretation
layer: it is meaningful when ``a`` is perpendicular to ``b``, ``a`` is parallel
to ``c`` and ``b`` is parallel to ``d`` (for ``r' = c + i d``), but these
conditions are not enforced since the phase-space parallelograms built later
violate them on purpose.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cliffor import Cliffor, Vector3, cross, dot

__all__ = [
    "ComplexVector",
    "GradeParts",
    "product_parts",
    "product_parts_dagger",
    "phase_area_and_angle",
]


@dataclass(frozen=True)
class ComplexVector:
    re: Vector3 = Vector3()
    im: Vector3 = Vector3()

    def as_cliffor(self) -> Cliffor:
        return Cliffor(v=tuple(self.re), b=tuple(self.im))

    @classmethod
    def from_cliffor(cls, c: Cliffor) -> ComplexVector:
        return cls(Vector3(*c.v), Vector3(*c.b))

    def __add__(self, other: ComplexVector) -> ComplexVector:
        return ComplexVector(self.re + other.re, self.im + other.im)

    def __sub__(self, other: ComplexVector) -> ComplexVector:
        return ComplexVector(self.re - other.re, self.im - other.im)

    def __mul__(self, k: float) -> ComplexVector:
        return ComplexVector(self.re * k, self.im * k)

    __rmul__ = __mul__


@dataclass(frozen=True)
class GradeParts:
    """Grade split of a product: ``g0 + g1 + i g2 + i g3``."""

    g0: float
    g1: Vector3
    g2: Vector3
    g3: float

    def as_cliffor(self) -> Cliffor:
        return Cliffor(self.g0, tuple(self.g1), tuple(self.g2), self.g3)


def product_parts(r: ComplexVector, rp: ComplexVector) -> GradeParts:
    a, b = r.re, r.im
    c, d = rp.re, rp.im
    return GradeParts(
        g0=dot(a, c) - dot(b, d),
        g1=-cross(a, d) - cross(b, c),
        g2=cross(a, c) - cross(b, d),
        g3=dot(a, d) + dot(b, c),
    )


def product_parts_dagger(r: ComplexVector, rp: ComplexVector) -> GradeParts:
    """Grade split of ``r dagger(rp)``; ``g0`` vanishes for perpendicular sides."""
    a, b = r.re, r.im
    c, d = rp.re, rp.im
    return GradeParts(
        g0=-dot(a, c) - dot(b, d),
        g1=-cross(a, d) + cross(b, c),
        g2=-cross(a, c) - cross(b, d),
        g3=dot(a, d) - dot(b, c),
    )


def phase_area_and_angle(r: ComplexVector, rp: ComplexVector) -> tuple[float, float]:
    """Return ``(area, dot_measure)`` of the phase-plane parallelogram.

    ``area`` is the length of the vector part of ``r rp``; ``dot_measure`` is
    minus the scalar part of ``r dagger(rp)``.
    """
    area = product_parts(r, rp).g1.norm()
    dot_measure = -product_parts_dagger(r, rp).g0
    return area, dot_measure
