"""Height-angle rays and structured complex system matrices.

Sign conventions differ from most optics texts.  A system matrix is the
complex 2x2 ``[[A, -iC], [-iB, D]]`` acting on the right of the row ray
``(x, i n_alpha)``, which gives::

    x'        =  A x + B n_alpha
    n' alpha' = -C x + D n_alpha

and unit determinant means ``A D + B C = 1``.  To convert from a textbook
``[[a, b], [c, d]]`` with ``a d - b c = 1`` use ``A=a, B=b, C=-c, D=d``.

Only the four reals are stored; the ``-i`` factors are implicit in
:func:`compose`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .cliffor import Vector3
from .complex_phase import ComplexVector
from .errors import DeterminantViolation

__all__ = [
    "DET_TOL",
    "HeightAngleRay",
    "SystemMatrix",
    "Jacobian2x2",
    "make_system",
    "make_propagation",
    "compose",
    "apply",
    "differentials",
]

DET_TOL = 1e-9


@dataclass(frozen=True)
class HeightAngleRay:
    x: float
    n_alpha: float

    def as_complex_vector(self) -> ComplexVector:
        """Embed as ``x e1 + n_alpha i e2``."""
        return ComplexVector(Vector3(self.x, 0.0, 0.0), Vector3(0.0, self.n_alpha, 0.0))

    @classmethod
    def from_complex_vector(cls, r: ComplexVector) -> HeightAngleRay:
        return cls(r.re.x, r.im.y)

    def to_dict(self) -> dict:
        return {"x": self.x, "n_alpha": self.n_alpha}

    @classmethod
    def from_dict(cls, d: dict) -> HeightAngleRay:
        return cls(float(d["x"]), float(d["n_alpha"]))


@dataclass(frozen=True)
class SystemMatrix:
    A: float
    B: float
    C: float
    D: float

    def __post_init__(self):
        residual = self.determinant() - 1.0
        if not abs(residual) <= DET_TOL:
            raise DeterminantViolation(residual, DET_TOL, A=self.A, B=self.B, C=self.C, D=self.D)

    def determinant(self) -> float:
        return self.A * self.D + self.B * self.C

    def as_complex_matrix(self):
        """The right-acting complex matrix ``[[A, -iC], [-iB, D]]`` as nested lists."""
        return [[complex(self.A), -1j * self.C], [-1j * self.B, complex(self.D)]]

    def to_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "C": self.C, "D": self.D}

    @classmethod
    def from_dict(cls, d: dict) -> SystemMatrix:
        return cls(float(d["A"]), float(d["B"]), float(d["C"]), float(d["D"]))


class Jacobian2x2(NamedTuple):
    dxp_dx: float
    dxp_dna: float
    dnap_dx: float
    dnap_dna: float

    def rows(self):
        return ((self.dxp_dx, self.dxp_dna), (self.dnap_dx, self.dnap_dna))


def make_system(A: float, B: float, C: float, D: float) -> SystemMatrix:
    return SystemMatrix(float(A), float(B), float(C), float(D))


def make_propagation(S: float) -> SystemMatrix:
    """Free propagation over reduced distance ``S = s / n``."""
    return SystemMatrix(1.0, float(S), 0.0, 1.0)


def compose(lhs: SystemMatrix, rhs: SystemMatrix) -> SystemMatrix:
    """Matrix product ``lhs @ rhs``; the ray meets ``lhs`` first.

    No renormalisation: accumulated determinant drift beyond the tolerance
    raises :class:`DeterminantViolation`.
    """
    return SystemMatrix(
        A=lhs.A * rhs.A - lhs.C * rhs.B,
        B=lhs.B * rhs.A + lhs.D * rhs.B,
        C=lhs.A * rhs.C + lhs.C * rhs.D,
        D=lhs.D * rhs.D - lhs.B * rhs.C,
    )


def apply(M: SystemMatrix, r: HeightAngleRay) -> HeightAngleRay:
    return HeightAngleRay(
        M.A * r.x + M.B * r.n_alpha,
        -M.C * r.x + M.D * r.n_alpha,
    )


def differentials(M: SystemMatrix) -> Jacobian2x2:
    return Jacobian2x2(M.A, M.B, -M.C, M.D)
