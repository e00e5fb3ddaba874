"""Geometry of the staircase domain and the slit family it projects onto.

The domain is the union over all integers n of the half-strips
{x + iy : n <= x <= n+1, y > 2*pi*n}.  Its interior consists of the open
strips together with the glue half-lines x = m, y > 2*pi*m, so membership
reduces to a single floor comparison: z is interior iff y > 2*pi*floor(x),
with x snapped to the nearest integer when within tolerance (the glue rule
is the stricter of the two adjacent strips).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BadTruncation

TWO_PI = 2.0 * math.pi
GEOM_TOL = 1e-9


def in_interior(z: complex, tol: float = GEOM_TOL) -> bool:
    """True iff z lies in the interior of the staircase domain."""
    x, y = z.real, z.imag
    m = round(x)
    if abs(x - m) <= tol:
        return y - TWO_PI * m > tol
    return y - TWO_PI * math.floor(x) > tol


def _seg_dist(z: complex, a: complex, b: complex) -> float:
    """Distance from z to the segment [a, b]."""
    d = b - a
    L2 = d.real * d.real + d.imag * d.imag
    if L2 == 0.0:
        return abs(z - a)
    t = ((z.real - a.real) * d.real + (z.imag - a.imag) * d.imag) / L2
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * d))


def boundary_distance(z: complex) -> float:
    """Euclidean distance from z to the boundary of the staircase interior.

    The boundary consists of the floor segments [n, n+1] x {2*pi*n} and the
    riser segments {n} x [2*pi*(n-1), 2*pi*n].  Only finitely many of them
    can be nearest: their indices lie between the column of z and the level
    index of z's height.
    """
    x, y = z.real, z.imag
    n_lo = min(math.floor(x), math.floor(y / TWO_PI)) - 2
    n_hi = max(math.ceil(x), math.ceil(y / TWO_PI)) + 2
    best = math.inf
    for n in range(n_lo, n_hi + 1):
        floor_y = TWO_PI * n
        best = min(best, _seg_dist(z, complex(n, floor_y), complex(n + 1, floor_y)))
        best = min(best, _seg_dist(z, complex(n, floor_y - TWO_PI), complex(n, floor_y)))
    return best


@dataclass(frozen=True)
class Truncation:
    """Bounded polygonal view of the staircase, for the conformal module.

    Covers columns n_min..n_max, capped above at y_max.  The cap must leave
    at least a full step of headroom over the highest floor.
    """

    n_min: int
    n_max: int
    y_max: float

    def __post_init__(self):
        if self.n_min >= self.n_max:
            raise BadTruncation(f"need n_min < n_max, got {self.n_min} >= {self.n_max}")
        if not self.y_max > TWO_PI * self.n_max + TWO_PI:
            raise BadTruncation(
                f"y_max={self.y_max} must exceed 2*pi*(n_max+1)={TWO_PI * (self.n_max + 1)}"
            )

    def vertices(self) -> list:
        """Polygon vertices, counterclockwise, starting at the top-left corner."""
        vs = [complex(self.n_min, self.y_max), complex(self.n_min, TWO_PI * self.n_min)]
        for n in range(self.n_min, self.n_max + 1):
            if n > self.n_min:
                vs.append(complex(n, TWO_PI * n))
            vs.append(complex(n + 1, TWO_PI * n))
        vs.append(complex(self.n_max + 1, self.y_max))
        return vs

    def contains(self, z: complex, tol: float = GEOM_TOL) -> bool:
        """True iff z is interior to the truncated domain."""
        if not in_interior(z, tol):
            return False
        return (
            self.n_min + tol < z.real < self.n_max + 1 - tol
            and z.imag < self.y_max - tol
        )

    def boundary_distance(self, z: complex) -> float:
        """Distance from z to the truncation polygon's boundary."""
        vs = self.vertices()
        return min(
            _seg_dist(z, vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))
        )


def slit_contains(omega: complex, M: int, tol: float = GEOM_TOL) -> bool:
    """True iff omega lies on the circle of radius e^M or on [e^(M-1), e^M]."""
    if omega == 0:
        return False
    r = abs(omega)
    if abs(r - math.exp(M)) < tol:
        return True
    if abs(omega.imag) < tol:
        return math.exp(M - 1) - tol <= omega.real <= math.exp(M) + tol
    return False


def choose_lift_target(omega: complex, tol: float = GEOM_TOL) -> complex:
    """The logarithm of omega on the branch of minimal index that lands
    in the staircase interior.

    Returns ln|omega| + i*(Arg(omega) + 2*pi*k) with the smallest integer k
    making the point interior; such k always exists because for fixed real
    part every sufficiently high point is interior.
    """
    if omega == 0:
        raise ValueError("omega must be nonzero")
    x = math.log(abs(omega))
    a = cmath.phase(omega)
    if a <= -math.pi + 1e-15:  # phase returns (-pi, pi]; normalize the seam
        a = math.pi
    m = round(x)
    n_eff = m if abs(x - m) <= tol else math.floor(x)
    k = math.floor((TWO_PI * n_eff + tol - a) / TWO_PI) + 1
    zeta = complex(x, a + TWO_PI * k)
    while not in_interior(zeta, tol):
        k += 1
        zeta = complex(x, a + TWO_PI * k)
    return zeta
