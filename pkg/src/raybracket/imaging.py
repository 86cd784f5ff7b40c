"""Imaging through an optical black box.

The system matrix is split as ``M = M_S @ M_box @ M_S'`` where ``M_S`` and
``M_S'`` are propagations over the reduced object distance ``S = s/n`` and
image distance ``S' = s'/n'``.  The object sits at ``-S e3 + x e1`` (positive
``S`` means left of the input plane) and the image at ``S' e3 + x' e1``.

Imaging requires ``B = 0``; solving for ``S'`` gives the Moebius law::

    S' = (M11 S + M21) / (M12 S - M22)
    x' = m_x x,   m_x = -1 / (M12 S - M22) = 1 / D
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DeterminantViolation, ImageAtInfinity
from .paraxial import DET_TOL, SystemMatrix

__all__ = [
    "SING_EPS",
    "BoxMatrix",
    "ImagingSolution",
    "MagnificationPartials",
    "elements_from_box",
    "imaging_denominator",
    "image_distance",
    "image_height",
    "solve_imaging",
    "magnification_partials",
]

SING_EPS = 1e-12


@dataclass(frozen=True)
class BoxMatrix:
    M11: float
    M12: float
    M21: float
    M22: float

    def __post_init__(self):
        residual = self.determinant() - 1.0
        if not abs(residual) <= DET_TOL:
            raise DeterminantViolation(
                residual, DET_TOL, M11=self.M11, M12=self.M12, M21=self.M21, M22=self.M22
            )

    def determinant(self) -> float:
        return self.M11 * self.M22 + self.M12 * self.M21

    def as_system(self) -> SystemMatrix:
        # [[M11, -i M12], [-i M21, M22]] has the SystemMatrix layout with C=M12, B=M21
        return SystemMatrix(A=self.M11, B=self.M21, C=self.M12, D=self.M22)

    def inverse(self) -> BoxMatrix:
        """Matrix inverse; its Moebius map sends ``-S'`` back to ``-S``."""
        return BoxMatrix(self.M22, -self.M12, -self.M21, self.M11)

    def to_dict(self) -> dict:
        return {"M11": self.M11, "M12": self.M12, "M21": self.M21, "M22": self.M22}

    @classmethod
    def from_dict(cls, d: dict) -> BoxMatrix:
        return cls(float(d["M11"]), float(d["M12"]), float(d["M21"]), float(d["M22"]))


@dataclass(frozen=True)
class ImagingSolution:
    S: float
    S_prime: float
    x: float
    x_prime: float
    m_x: float

    def to_dict(self) -> dict:
        return {
            "S": self.S,
            "S_prime": self.S_prime,
            "x": self.x,
            "x_prime": self.x_prime,
            "m_x": self.m_x,
        }


@dataclass(frozen=True)
class MagnificationPartials:
    dSp_dS: float
    dSp_dx: float
    dxp_dS: float
    dxp_dx: float

    def to_dict(self) -> dict:
        return {
            "dSp_dS": self.dSp_dS,
            "dSp_dx": self.dSp_dx,
            "dxp_dS": self.dxp_dS,
            "dxp_dx": self.dxp_dx,
        }


def elements_from_box(box: BoxMatrix, S: float, S_prime: float) -> tuple[float, float, float, float]:
    """Closed-form ``(A, B, C, D)`` of ``M_S @ box @ M_S'``."""
    M11, M12, M21, M22 = box.M11, box.M12, box.M21, box.M22
    A = M11 - M12 * S_prime
    B = M21 + M22 * S_prime + M11 * S - M12 * S * S_prime
    C = M12
    D = M22 - M12 * S
    return A, B, C, D


def imaging_denominator(box: BoxMatrix, S: float) -> float:
    return box.M12 * S - box.M22


def _checked_denominator(box: BoxMatrix, S: float, eps: float) -> float:
    den = imaging_denominator(box, S)
    scale = abs(box.M22) + abs(box.M12 * S)
    if abs(den) <= eps * scale:
        raise ImageAtInfinity(den, S, M11=box.M11, M12=box.M12, M21=box.M21, M22=box.M22)
    return den


def image_distance(box: BoxMatrix, S: float, eps: float = SING_EPS) -> float:
    den = _checked_denominator(box, S, eps)
    return (box.M11 * S + box.M21) / den


def image_height(box: BoxMatrix, S: float, x: float, eps: float = SING_EPS) -> tuple[float, float]:
    """Return ``(x_prime, m_x)``."""
    den = _checked_denominator(box, S, eps)
    m_x = -1.0 / den
    return m_x * x, m_x


def solve_imaging(box: BoxMatrix, S: float, x: float, eps: float = SING_EPS) -> ImagingSolution:
    S_prime = image_distance(box, S, eps)
    x_prime, m_x = image_height(box, S, x, eps)
    return ImagingSolution(S, S_prime, x, x_prime, m_x)


def magnification_partials(box: BoxMatrix, S: float, x: float, eps: float = SING_EPS) -> MagnificationPartials:
    """Partial derivatives of ``(S', x')`` with respect to ``(S, x)``.

    ``dS'/dS = -m_x**2`` is the longitudinal magnification (uses the unit
    determinant).  Differentiating ``x' = -x / (M12 S - M22)`` gives
    ``dx'/dS = +m_x**2 M12 x``.
    """
    _, m_x = image_height(box, S, x, eps)
    m2 = m_x * m_x
    return MagnificationPartials(
        dSp_dS=-m2,
        dSp_dx=0.0,
        dxp_dS=m2 * box.M12 * x,
        dxp_dx=m_x,
    )
