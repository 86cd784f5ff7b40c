"""Poisson commutator and anticommutator brackets of planar maps.

For a map ``(q, p) -> (F, G)``::

    [F, G] = F_q G_p - F_p G_q          (Jacobian determinant, area ratio)
    {F, G} = F_q F_p + G_p G_q          (angle measure of the image of dq, dp)

The numeric versions use central differences of the exact map.

Anticommutator sign: the height-angle report negates the generic ``{F, G}``
so that it equals the scalar part of ``r'12 dagger(r'23)`` per unit area,
i.e. ``-(AB - CD)``.  The distance-height report uses the generic sign.  The
``anticommutator_sign`` field of :class:`BracketReport` records which one
was applied (-1 or +1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import StencilNearSingularity
from .imaging import BoxMatrix, image_distance, image_height, imaging_denominator
from .paraxial import HeightAngleRay, SystemMatrix, apply

__all__ = [
    "PlaneMap",
    "BracketReport",
    "default_step",
    "jacobian_numeric",
    "commutator_numeric",
    "anticommutator_numeric",
    "height_angle_brackets",
    "distance_height_brackets",
    "STENCIL_GUARD",
]

PlaneMap = Callable[[float, float], tuple[float, float]]

STENCIL_GUARD = 1e-6


@dataclass(frozen=True)
class BracketReport:
    commutator_numeric: float
    anticommutator_numeric: float
    commutator_analytic: Optional[float]
    anticommutator_analytic: Optional[float]
    max_discrepancy: float
    step: float
    anticommutator_sign: int = 1

    def to_dict(self) -> dict:
        return {
            "commutator_numeric": self.commutator_numeric,
            "anticommutator_numeric": self.anticommutator_numeric,
            "commutator_analytic": self.commutator_analytic,
            "anticommutator_analytic": self.anticommutator_analytic,
            "max_discrepancy": self.max_discrepancy,
            "step": self.step,
            "anticommutator_sign": self.anticommutator_sign,
        }


def default_step(q: float, p: float) -> float:
    return 1e-6 * max(1.0, abs(q), abs(p))


def jacobian_numeric(fmap: PlaneMap, q: float, p: float, h: float):
    """Central-difference Jacobian ``((F_q, F_p), (G_q, G_p))``."""
    if not h > 0:
        raise ValueError(f"step must be positive, got {h!r}")
    Fqp, Gqp = fmap(q + h, p)
    Fqm, Gqm = fmap(q - h, p)
    Fpp, Gpp = fmap(q, p + h)
    Fpm, Gpm = fmap(q, p - h)
    inv = 1.0 / (2.0 * h)
    return (
        ((Fqp - Fqm) * inv, (Fpp - Fpm) * inv),
        ((Gqp - Gqm) * inv, (Gpp - Gpm) * inv),
    )


def _brackets(jac):
    (Fq, Fp), (Gq, Gp) = jac
    return Fq * Gp - Fp * Gq, Fq * Fp + Gp * Gq


def commutator_numeric(fmap: PlaneMap, q: float, p: float, h: Optional[float] = None) -> float:
    h = default_step(q, p) if h is None else h
    return _brackets(jacobian_numeric(fmap, q, p, h))[0]


def anticommutator_numeric(fmap: PlaneMap, q: float, p: float, h: Optional[float] = None) -> float:
    h = default_step(q, p) if h is None else h
    return _brackets(jacobian_numeric(fmap, q, p, h))[1]


def _report(com_num, anti_num, com_ana, anti_ana, h, sign) -> BracketReport:
    return BracketReport(
        commutator_numeric=com_num,
        anticommutator_numeric=anti_num,
        commutator_analytic=com_ana,
        anticommutator_analytic=anti_ana,
        max_discrepancy=max(abs(com_num - com_ana), abs(anti_num - anti_ana)),
        step=h,
        anticommutator_sign=sign,
    )


def height_angle_map(M: SystemMatrix) -> PlaneMap:
    def fmap(x, n_alpha):
        r = apply(M, HeightAngleRay(x, n_alpha))
        return r.x, r.n_alpha

    return fmap


def height_angle_brackets(
    M: SystemMatrix,
    probe: HeightAngleRay = HeightAngleRay(0.0, 0.0),
    h: Optional[float] = None,
) -> BracketReport:
    h = default_step(probe.x, probe.n_alpha) if h is None else h
    com_num, anti_generic = _brackets(jacobian_numeric(height_angle_map(M), probe.x, probe.n_alpha, h))
    com_ana = M.A * M.D + M.B * M.C
    anti_ana = -(M.A * M.B - M.C * M.D)
    return _report(com_num, -anti_generic, com_ana, anti_ana, h, -1)


def distance_height_map(box: BoxMatrix) -> PlaneMap:
    def fmap(S, x):
        x_prime, _ = image_height(box, S, x)
        return image_distance(box, S), x_prime

    return fmap


def _check_stencil(box: BoxMatrix, S: float, h: float) -> None:
    for s in (S - h, S, S + h):
        den = imaging_denominator(box, s)
        scale = abs(box.M22) + abs(box.M12 * s)
        if abs(den) < STENCIL_GUARD * scale:
            raise StencilNearSingularity(
                f"imaging denominator {den:.3e} at S = {s!r} is within {STENCIL_GUARD:g} (relative) of zero",
                S=S,
                step=h,
                denominator=den,
            )


def distance_height_brackets(
    box: BoxMatrix, S: float, x: float, h: Optional[float] = None
) -> BracketReport:
    """Brackets of ``(S, x) -> (S', x')``; analytic ``[.,.] = -m^3``, ``{.,.} = m^3 M12 x``."""
    _, m = image_height(box, S, x)
    h = default_step(S, x) if h is None else h
    _check_stencil(box, S, h)
    com_num, anti_num = _brackets(jacobian_numeric(distance_height_map(box), S, x, h))
    m3 = m * m * m
    return _report(com_num, anti_num, -m3, m3 * box.M12 * x, h, 1)
