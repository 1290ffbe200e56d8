r"""Sections of linear symplectic balls by planes through their center.

For ``S`` symplectic, the central section of ``S(B_R)`` by a conjugate plane
``span(e_j, e_{n+j})`` is an ellipse whose area is measured here.
Three routes are offered: the closed form from the restricted quadratic form,
Monte-Carlo rejection sampling, and the boundary integral of ``p_j dx_j``.

The area equals :math:`\pi R^2` only when ``S^{-1}`` maps the plane onto a complex
line (e.g. ``S`` acting mode by mode). For ``S`` mixing modes the central section
is smaller, while the orthogonal projection onto the plane is never smaller than
:math:`\pi R^2` (linear non-squeezing). Both are exposed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import DimensionError, NotSymplecticPlaneError, NumericalFailure, PropositionViolation
from .symplectic import TOL_SYMP, is_symplectic, num_modes, standard_form

N_SAMPLES = 100_000
N_NODES = 10_000


@dataclass(frozen=True)
class SymplecticBall:
    """The set ``{S w + center : |w| <= R}``."""

    S: np.ndarray
    R: float = 1.0
    center: Optional[np.ndarray] = None

    def __post_init__(self):
        S = np.array(self.S, dtype=float)
        n = num_modes(S)
        if not is_symplectic(S, TOL_SYMP * (1.0 + np.max(np.abs(S)) ** 2)):
            raise DimensionError("ball matrix is not symplectic")
        if not self.R > 0:
            raise ValueError("radius must be positive")
        c = np.zeros(2 * n) if self.center is None else np.asarray(self.center, dtype=float)
        S.setflags(write=False)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "R", float(self.R))

    @property
    def n(self) -> int:
        return self.S.shape[0] // 2

    @property
    def quadratic_form(self) -> np.ndarray:
        """``Q = (S S^T)^{-1}``; the ball is ``{z : (z-c)^T Q (z-c) <= R^2}``."""
        Si = np.linalg.inv(self.S)
        return Si.T @ Si


@dataclass(frozen=True)
class PlaneSpec:
    """Plane through the ball center spanned by orthonormal ``u, v``."""

    u: np.ndarray
    v: np.ndarray
    label: str = ""

    @classmethod
    def conjugate(cls, n: int, j: int) -> "PlaneSpec":
        """Plane of ``(x_j, p_j)``, ``j`` 0-based."""
        if not 0 <= j < n:
            raise DimensionError(f"mode index {j} out of range for n={n}")
        u = np.zeros(2 * n)
        v = np.zeros(2 * n)
        u[j] = 1.0
        v[n + j] = 1.0
        return cls(u, v, f"conjugate({j + 1})")

    @classmethod
    def span(cls, u, v, label: str = "") -> "PlaneSpec":
        """Orthonormalize ``u, v`` (Gram-Schmidt) into a plane spec."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        u = u / np.linalg.norm(u)
        v = v - (u @ v) * u
        nv = np.linalg.norm(v)
        if nv < 1e-12:
            raise DimensionError("plane vectors are linearly dependent")
        return cls(u, v / nv, label or "span")

    @property
    def pairing(self) -> float:
        """Symplectic pairing ``sigma(u, v) = u^T J v``."""
        return float(self.u @ standard_form(len(self.u) // 2) @ self.v)


@dataclass(frozen=True)
class SectionResult:
    area_closed_form: float
    area_sampled: Optional[float]
    standard_error: Optional[float]
    symplectic_pairing: float
    symplectic_area: float

    def as_dict(self) -> dict:
        return {
            "area_closed_form": self.area_closed_form,
            "area_sampled": self.area_sampled,
            "standard_error": self.standard_error,
            "symplectic_pairing": self.symplectic_pairing,
            "symplectic_area": self.symplectic_area,
        }


def _restricted_form(ball: SymplecticBall, plane: PlaneSpec) -> np.ndarray:
    if plane.u.shape != (2 * ball.n,):
        raise DimensionError("plane dimension does not match the ball")
    B = np.column_stack([plane.u, plane.v])
    Q2 = B.T @ ball.quadratic_form @ B
    Q2 = 0.5 * (Q2 + Q2.T)
    if np.linalg.det(Q2) <= 0 or Q2[0, 0] <= 0:
        raise NumericalFailure("degenerate restricted quadratic form")
    return Q2


def _as_plane(ball: SymplecticBall, plane: Union[PlaneSpec, int]) -> PlaneSpec:
    if isinstance(plane, PlaneSpec):
        return plane
    return PlaneSpec.conjugate(ball.n, int(plane))


def sampled_area(Q2: np.ndarray, R: float, samples: int = N_SAMPLES, seed=0) -> tuple[float, float]:
    """Rejection-sampling estimate of the area of ``{w : w^T Q2 w <= R^2}`` and its standard error.

    Points are uniform in the bounding box of the ellipse, whose half widths are
    ``R sqrt((Q2^{-1})_{kk})``.
    """
    rng = np.random.default_rng(seed)
    half = R * np.sqrt(np.diag(np.linalg.inv(Q2)))
    pts = rng.uniform(-1.0, 1.0, size=(samples, 2)) * half
    inside = np.einsum("ij,jk,ik->i", pts, Q2, pts) <= R * R
    box = 4.0 * half[0] * half[1]
    frac = inside.mean()
    return float(box * frac), float(box * np.sqrt(frac * (1.0 - frac) / samples))


def section_area(
    ball: SymplecticBall,
    plane: Union[PlaneSpec, int],
    samples: Optional[int] = N_SAMPLES,
    seed=0,
) -> SectionResult:
    """Area of the central section of ``ball`` by ``plane``.

    ``plane`` is a :class:`PlaneSpec` or a 0-based conjugate-pair index. Set
    ``samples=None`` to skip the Monte-Carlo estimate.
    """
    plane = _as_plane(ball, plane)
    Q2 = _restricted_form(ball, plane)
    area = float(np.pi * ball.R**2 / np.sqrt(np.linalg.det(Q2)))
    est = se = None
    if samples:
        est, se = sampled_area(Q2, ball.R, samples, seed)
    pairing = plane.pairing
    return SectionResult(area, est, se, pairing, area * abs(pairing))


def projection_area(ball: SymplecticBall, j: int) -> float:
    """Area of the orthogonal projection of ``ball`` onto the ``(x_j, p_j)`` plane; at least ``pi R^2``."""
    plane = PlaneSpec.conjugate(ball.n, j)
    B = np.column_stack([plane.u, plane.v])
    C2 = B.T @ ball.S @ ball.S.T @ B
    return float(np.pi * ball.R**2 * np.sqrt(np.linalg.det(C2)))


def boundary_integral(ball: SymplecticBall, j: int, nodes: int = N_NODES) -> float:
    r"""Trapezoidal :math:`\oint p_j\,dx_j` over the boundary of the ``(x_j, p_j)`` section.

    The boundary is traversed positively for ``dp_j ^ dx_j``, i.e. counterclockwise
    in the ``(p_j, x_j)`` chart, which makes the integral equal to the enclosed area.
    The sign is returned as computed.
    """
    plane = PlaneSpec.conjugate(ball.n, j)
    Q2 = _restricted_form(ball, plane)
    # chart (p, x): swap coordinates, then w = R * Q2^{-1/2} (cos t, sin t)
    Qpx = Q2[::-1, ::-1]
    w, V = np.linalg.eigh(Qpx)
    C = (V / np.sqrt(w)) @ V.T
    t = 2.0 * np.pi * np.arange(nodes) / nodes
    circle = np.vstack([np.cos(t), np.sin(t)])
    dcircle = np.vstack([-np.sin(t), np.cos(t)])
    p, x = ball.R * (C @ circle)
    _, dx = ball.R * (C @ dcircle)
    # periodic trapezoidal rule
    return float(np.sum(p * dx) * (2.0 * np.pi / nodes))


def verify_proposition(
    S: np.ndarray,
    R: float = 1.0,
    tol: float = 1e-8,
    nodes: int = N_NODES,
    integral_tol: float = 1e-5,
) -> dict:
    """Check every conjugate-plane section of ``S(B_R)`` has area ``pi R^2``.

    Holds for every ``S`` when ``n = 1`` and for ``S`` acting mode by mode; a
    mode-mixing ``S`` produces smaller sections and a violation.

    Raises
    ------
    PropositionViolation
        If a closed-form area or a boundary integral is off.
    """
    ball = SymplecticBall(S, R)
    target = np.pi * R**2
    areas, integrals = [], []
    for j in range(ball.n):
        a = section_area(ball, j, samples=None).area_closed_form
        line = boundary_integral(ball, j, nodes)
        if abs(a - target) > tol * target:
            raise PropositionViolation(f"section {j + 1}: area {a!r} != pi R^2 = {target!r}")
        if abs(line - a) > integral_tol * target:
            raise PropositionViolation(f"section {j + 1}: boundary integral {line!r} != area {a!r}")
        areas.append(a)
        integrals.append(line)
    return {
        "target": target,
        "areas": areas,
        "boundary_integrals": integrals,
        "tol": tol,
        "integral_tol": integral_tol,
        "nodes": nodes,
    }


def symplectic_plane_section(
    ball: SymplecticBall,
    u,
    v,
    tol: float = 1e-12,
    check_preimage: bool = False,
) -> SectionResult:
    """Section by the plane ``span(u, v)``, which must be symplectic (``sigma(u, v) != 0``).

    The symplectic area is the Euclidean area times ``|sigma(u', v')|`` for the
    orthonormalized basis. With ``check_preimage`` the symplectic area is
    compared to that of the preimage disk ``S^{-1}(plane) cap B_R``, which a
    symplectic map must preserve.
    """
    plane = PlaneSpec.span(u, v)
    if abs(plane.pairing) <= tol:
        raise NotSymplecticPlaneError(f"sigma(u, v) = {plane.pairing:.3e}: plane is not symplectic")
    res = section_area(ball, plane, samples=None)
    if check_preimage:
        Si = np.linalg.inv(ball.S)
        pre = PlaneSpec.span(Si @ plane.u, Si @ plane.v)
        # the preimage section is a great disk of B_R in the plane S^{-1}(span(u, v))
        pre_area = np.pi * ball.R**2 * abs(pre.pairing)
        if abs(pre_area - res.symplectic_area) > 1e-8 * max(1.0, pre_area):
            raise PropositionViolation(
                f"symplectic area {res.symplectic_area!r} differs from preimage disk {pre_area!r}"
            )
    return res
