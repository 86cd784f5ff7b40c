"""Differential object rectangles and their image parallelograms.

Height-angle space: vertices are complex vectors ``x e1 + n_alpha i e2``.
The area of a quad is the length of the vector part of ``side12 side23`` and
its angle readout is the scalar part of ``side12 dagger(side23)``; the latter
is zero exactly when the sides are perpendicular.

Distance-height space: vertices are real vectors ``-S e3 + x e1`` (object) or
``S' e3 + x' e1`` (image).  Area and orientation come from the e3e1 part of
``side12 ^ side23``, the angle readout from ``side12 . side23``.

Image quads are the linearised (total-differential) images, as in the
bracket derivation.  :func:`exact_corner_area_ratio` maps the corners through
the exact Moebius map instead, for comparing the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .cliffor import Vector3, dot, wedge
from .complex_phase import ComplexVector, product_parts, product_parts_dagger
from .imaging import BoxMatrix, image_distance, image_height, magnification_partials
from .paraxial import SystemMatrix, apply, differentials, HeightAngleRay

__all__ = [
    "HEIGHT_ANGLE",
    "DISTANCE_HEIGHT",
    "RECT_TOL",
    "PhaseQuad",
    "QuadReport",
    "object_rect_height_angle",
    "image_quad_height_angle",
    "quad_report_height_angle",
    "object_rect_distance_height",
    "image_quad_distance_height",
    "quad_report_distance_height",
    "quad_report",
    "exact_corner_area_ratio",
    "linearization_gap",
]

HEIGHT_ANGLE = "height-angle"
DISTANCE_HEIGHT = "distance-height"
RECT_TOL = 1e-9

Vertex = Union[ComplexVector, Vector3]


@dataclass(frozen=True)
class PhaseQuad:
    vertices: tuple[Vertex, Vertex, Vertex, Vertex]
    space: str
    # base point and differentials the quad was built from
    base: tuple[float, float]
    steps: tuple[float, float]

    @property
    def side12(self) -> Vertex:
        return self.vertices[1] - self.vertices[0]

    @property
    def side23(self) -> Vertex:
        return self.vertices[2] - self.vertices[1]

    def closure_error(self) -> float:
        """Largest deviation from the parallelogram closure relations."""
        v1, v2, v3, v4 = self.vertices
        r1 = (v1 - v4) + self.side23
        r2 = (v4 - v3) + self.side12
        return max(_norm(r1), _norm(r2))

    def plane_coords(self) -> list[tuple[float, float]]:
        """Vertices as 2-D (horizontal, vertical) pairs for plotting.

        Height-angle: (x, n_alpha).  Distance-height: (e3, e1) components.
        """
        if self.space == HEIGHT_ANGLE:
            return [(v.re.x, v.im.y) for v in self.vertices]
        return [(v.z, v.x) for v in self.vertices]

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "base": list(self.base),
            "steps": list(self.steps),
            "vertices": [list(c) for c in self.plane_coords()],
        }


@dataclass(frozen=True)
class QuadReport:
    area: float
    dot_measure: float
    is_rectangle: bool
    # +1 / -1 orientation, 0 when the quad is degenerate
    orientation_sign: int

    def to_dict(self) -> dict:
        return {
            "area": self.area,
            "dot_measure": self.dot_measure,
            "is_rectangle": self.is_rectangle,
            "orientation_sign": self.orientation_sign,
        }


def _norm(v: Vertex) -> float:
    if isinstance(v, ComplexVector):
        return max(v.re.norm(), v.im.norm())
    return v.norm()


def _sign(x: float) -> int:
    return int(x > 0) - int(x < 0)


def _check_positive(**kw) -> None:
    for name, value in kw.items():
        if not value > 0:
            raise ValueError(f"{name} must be positive, got {value!r}")


def _ha(x: float, n_alpha: float) -> ComplexVector:
    return HeightAngleRay(x, n_alpha).as_complex_vector()


def _dh(e3: float, e1: float) -> Vector3:
    return Vector3(e1, 0.0, e3)


def object_rect_height_angle(x: float, n_alpha: float, dx: float, dn_alpha: float) -> PhaseQuad:
    _check_positive(dx=dx, dn_alpha=dn_alpha)
    x, n_alpha, dx, dn_alpha = map(float, (x, n_alpha, dx, dn_alpha))
    verts = (
        _ha(x, n_alpha),
        _ha(x + dx, n_alpha),
        _ha(x + dx, n_alpha + dn_alpha),
        _ha(x, n_alpha + dn_alpha),
    )
    return PhaseQuad(verts, HEIGHT_ANGLE, (x, n_alpha), (dx, dn_alpha))


def image_quad_height_angle(M: SystemMatrix, quad: PhaseQuad) -> PhaseQuad:
    if quad.space != HEIGHT_ANGLE:
        raise ValueError(f"expected a {HEIGHT_ANGLE} quad, got {quad.space}")
    x, n_alpha = quad.base
    dx, dna = quad.steps
    j = differentials(M)
    base = apply(M, HeightAngleRay(x, n_alpha))
    xp, nap = base.x, base.n_alpha
    verts = (
        _ha(xp, nap),
        _ha(xp + j.dxp_dx * dx, nap + j.dnap_dx * dx),
        _ha(xp + j.dxp_dx * dx + j.dxp_dna * dna, nap + j.dnap_dx * dx + j.dnap_dna * dna),
        _ha(xp + j.dxp_dna * dna, nap + j.dnap_dna * dna),
    )
    return PhaseQuad(verts, HEIGHT_ANGLE, (xp, nap), (dx, dna))


def quad_report_height_angle(quad: PhaseQuad) -> QuadReport:
    """Area from the vector part of ``side12 side23``; ``dot_measure`` is the raw
    scalar part of ``side12 dagger(side23)``."""
    s12, s23 = quad.side12, quad.side23
    vec = product_parts(s12, s23).g1
    area = vec.norm()
    dot_measure = product_parts_dagger(s12, s23).g0
    # the object rectangle gives -dx dn_alpha e3, counted as positive orientation
    orientation = _sign(-vec.z) if area > 0 else 0
    return QuadReport(area, dot_measure, abs(dot_measure) <= RECT_TOL * area, orientation)


def object_rect_distance_height(S: float, x: float, dS: float, dx: float) -> PhaseQuad:
    _check_positive(dS=dS, dx=dx)
    S, x, dS, dx = map(float, (S, x, dS, dx))
    verts = (
        _dh(-S, x),
        _dh(-S + dS, x),
        _dh(-S + dS, x + dx),
        _dh(-S, x + dx),
    )
    return PhaseQuad(verts, DISTANCE_HEIGHT, (S, x), (dS, dx))


def image_quad_distance_height(box: BoxMatrix, quad: PhaseQuad) -> PhaseQuad:
    if quad.space != DISTANCE_HEIGHT:
        raise ValueError(f"expected a {DISTANCE_HEIGHT} quad, got {quad.space}")
    S, x = quad.base
    dS, dx = quad.steps
    Sp = image_distance(box, S)
    xp, _ = image_height(box, S, x)
    d = magnification_partials(box, S, x)
    verts = (
        _dh(Sp, xp),
        _dh(Sp + d.dSp_dS * dS, xp + d.dxp_dS * dS),
        _dh(Sp + d.dSp_dS * dS + d.dSp_dx * dx, xp + d.dxp_dS * dS + d.dxp_dx * dx),
        _dh(Sp + d.dSp_dx * dx, xp + d.dxp_dx * dx),
    )
    return PhaseQuad(verts, DISTANCE_HEIGHT, (Sp, xp), (dS, dx))


def quad_report_distance_height(quad: PhaseQuad) -> QuadReport:
    s12, s23 = quad.side12, quad.side23
    w = wedge(s12, s23)
    area = w.norm()
    dot_measure = dot(s12, s23)
    e31 = w.b[1]
    orientation = _sign(e31) if area > 0 else 0
    return QuadReport(area, dot_measure, abs(dot_measure) <= RECT_TOL * area, orientation)


def quad_report(quad: PhaseQuad) -> QuadReport:
    if quad.space == HEIGHT_ANGLE:
        return quad_report_height_angle(quad)
    return quad_report_distance_height(quad)


def _shoelace(pts) -> float:
    total = 0.0
    for (x0, y0), (x1, y1) in zip(pts, pts[1:] + pts[:1]):
        total += x0 * y1 - x1 * y0
    return 0.5 * total


def exact_corner_area_ratio(box: BoxMatrix, S: float, x: float, dS: float, dx: float) -> float:
    """Signed area ratio of the exact images of the corners of ``[S, S+dS] x [x, x+dx]``.

    Corners are taken in the (S, x) parameter plane with the same orientation
    as the linearised image (``dS`` is an increment of ``S``).  The ratio tends
    to ``-m_x**3`` with error O(dS + dx).
    """
    _check_positive(dS=dS, dx=dx)
    corners = [(S, x), (S + dS, x), (S + dS, x + dx), (S, x + dx)]
    images = [(image_distance(box, s), image_height(box, s, h)[0]) for s, h in corners]
    return _shoelace(images) / _shoelace(corners)


def linearization_gap(box: BoxMatrix, quad: PhaseQuad) -> float:
    """Largest distance between linearised image vertices and exact corner images."""
    S, x = quad.base
    dS, dx = quad.steps
    lin = image_quad_distance_height(box, quad).plane_coords()
    corners = [(S, x), (S + dS, x), (S + dS, x + dx), (S, x + dx)]
    gap = 0.0
    for (s, h), (le3, le1) in zip(corners, lin):
        ee3 = image_distance(box, s)
        ee1 = image_height(box, s, h)[0]
        gap = max(gap, abs(ee3 - le3), abs(ee1 - le1))
    return gap
