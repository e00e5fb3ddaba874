"""Truncated power-series germs: log branches, the lacunary gap series h,
recentering (Taylor shift), composition, and radius-of-convergence estimation.

A germ is the data (center, a_0..a_K, radius_est).  radius_est is an estimate,
not a certificate: constructors set it from structure (|z0| for log, 1-|z0|
for h), composition uses a conservative contraction rule, and recentering
shrinks it by the shift length unless re-estimation is requested.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import lgamma

import numpy as np

from .errors import (
    CompositionOutOfRange,
    OutsideDisc,
    StepTooLarge,
    TooFewCoefficients,
    ZeroCenter,
)

DEFAULT_ORDER = 64
STEP_SAFETY = 0.5
AGREE_TOL = 1e-7
COEFF_TOL = 1e-12

# log of the largest magnitude allowed for a single series term; sums of
# many such terms still fit comfortably below the double-precision maximum.
_LOG_HUGE = 700.0


@dataclass(frozen=True)
class Germ:
    """Truncated Taylor expansion sum a_k (z - center)^k."""

    center: complex
    coeffs: tuple
    radius_est: float
    provenance: str  # log | h | composed | recentered

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if len(self.coeffs) == 0:
            raise ValueError("a germ needs at least one coefficient")
        if not cmath.isfinite(self.center) or not all(
            cmath.isfinite(c) for c in self.coeffs
        ):
            raise ValueError("germ data must be finite")
        if not self.radius_est > 0:
            raise ValueError(f"radius_est must be positive, got {self.radius_est!r}")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, z):
        """Horner evaluation at z (scalar or ndarray); exact a_0 at the center."""
        u = z - self.center
        acc = self.coeffs[-1]
        for a in self.coeffs[-2::-1]:
            acc = acc * u + a
        return acc

    __call__ = eval


def log_germ(z0, branch_im: float = 0.0, order: int = DEFAULT_ORDER) -> Germ:
    """Germ of the logarithm branch with Im = branch_im at z0.

    a_0 = ln|z0| + i branch_im, a_k = (-1)^(k-1) / (k z0^k); the radius is
    exactly |z0| (distance to the only singularity).
    """
    z0 = complex(z0)
    if z0 == 0:
        raise ZeroCenter("log germ centered at 0")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    coeffs = [complex(math.log(abs(z0)), branch_im)]
    zk = z0
    for k in range(1, order + 1):
        coeffs.append((-1.0) ** (k - 1) / (k * zk))
        zk *= z0
    return Germ(z0, tuple(coeffs), abs(z0), "log")


def eval_h(z, eps: float = 1e-12) -> complex:
    """Sum of z^(2^nu) over nu >= 0, truncated once the geometric tail bound
    |z|^(2^(K+1)) / (1 - |z|) drops below eps."""
    z = complex(z)
    r = abs(z)
    if r >= 1.0:
        raise OutsideDisc(f"h is only defined for |z| < 1, got |z| = {r}")
    if not eps > 0:
        raise ValueError("eps must be positive")
    if z == 0:
        return 0j
    total = 0j
    p = z
    while True:
        total += p
        p = p * p
        if abs(p) / (1.0 - r) < eps:
            return total


def h_germ(z0, order: int = DEFAULT_ORDER, coeff_tol: float = COEFF_TOL) -> Germ:
    """Taylor germ of the gap series at z0, |z0| < 1.

    a_k = sum over nu with 2^nu >= k of C(2^nu, k) z0^(2^nu - k), accumulated
    in log space (the binomials and powers individually overflow long before
    the products do).  Levels are added until the largest remaining term is
    safely below coeff_tol; past the peak the terms decay faster than any
    geometric series, so the cut tail is below coeff_tol as well.
    radius_est = 1 - |z0|: nothing closer than the unit circle is singular.

    Very close to the circle the coefficients themselves exceed the double
    range (the peak term grows like C(n, k) with n ~ k / (1 - |z0|)); that is
    reported as OutsideDisc: at this order and precision the center is
    indistinguishable from a boundary point.
    """
    z0 = complex(z0)
    r = abs(z0)
    if r >= 1.0:
        raise OutsideDisc(f"h germ needs |z0| < 1, got |z0| = {r}")
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    coeffs = np.zeros(order + 1, dtype=complex)
    if z0 == 0:
        nu = 0
        while (1 << nu) <= order:
            coeffs[1 << nu] = 1.0
            nu += 1
    else:
        lr = math.log(r)
        ph = cmath.phase(z0)
        log_tol = math.log(coeff_tol)
        nu = 0
        prev_top = math.inf
        while True:
            n = 1 << nu
            top = -math.inf
            for k in range(min(order, n) + 1):
                lt = lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1) + (n - k) * lr
                if lt > _LOG_HUGE:
                    raise OutsideDisc(
                        f"coefficient magnitude exp({lt:.0f}) exceeds double "
                        f"precision: |z0| = {r} is numerically on the unit "
                        f"circle at order {order}"
                    )
                if lt > top:
                    top = lt
                if lt > log_tol - 3.0:
                    coeffs[k] += cmath.exp(complex(lt, (n - k) * ph))
            if n >= order and top <= prev_top and top < log_tol - 1.5:
                break
            prev_top = top
            nu += 1
    return Germ(z0, tuple(coeffs), 1.0 - r, "h")


def recenter(
    g: Germ,
    new_center,
    step_safety: float = STEP_SAFETY,
    reestimate: bool = False,
) -> Germ:
    """Taylor-shift g to new_center (must lie within step_safety * radius_est).

    The new radius_est is the conservative g.radius_est - |shift|; with
    reestimate=True it is replaced by the Cauchy-Hadamard estimate of the
    shifted coefficients (a diagnostic, not a bound).
    """
    new_center = complex(new_center)
    d = new_center - g.center
    if not abs(d) < step_safety * g.radius_est:
        raise StepTooLarge(
            f"shift {abs(d):.6g} exceeds {step_safety} * radius {g.radius_est:.6g}"
        )
    b = list(g.coeffs)
    top = len(b) - 1
    for j in range(top):
        for k in range(top - 1, j - 1, -1):
            b[k] += d * b[k + 1]
    radius = g.radius_est - abs(d)
    if reestimate and len(b) >= 8:
        est = estimate_radius(b)
        if math.isfinite(est):
            radius = est
    return Germ(new_center, tuple(b), radius, "recentered")


def compose(outer: Germ, inner: Germ) -> Germ:
    """Germ of outer(inner(.)) about inner.center, truncated to the shorter
    order.

    Requires inner's value at its center to lie inside outer's disc.  The
    composed radius_est is the largest r (capped at inner.radius_est) with
    |c_0| + sum |c_k| r^k <= outer.radius_est, c being inner's coefficients
    relative to outer.center -- i.e. the disc the inner germ provably cannot
    map outside outer's disc.
    """
    gap = abs(inner.coeffs[0] - outer.center)
    if not gap < outer.radius_est:
        raise CompositionOutOfRange(
            f"inner center value is {gap:.6g} from outer center, "
            f"radius {outer.radius_est:.6g}"
        )
    K = min(outer.order, inner.order)
    c = np.empty(K + 1, dtype=complex)
    c[0] = inner.coeffs[0] - outer.center
    c[1:] = inner.coeffs[1 : K + 1]
    acc = np.zeros(K + 1, dtype=complex)
    acc[0] = outer.coeffs[K]
    for j in range(K - 1, -1, -1):
        acc = np.convolve(acc, c)[: K + 1]
        acc[0] += outer.coeffs[j]
    if not np.all(np.isfinite(acc.view(float))):
        raise CompositionOutOfRange(
            "composed coefficients exceed double precision "
            "(outer germ varies too violently over inner's range)"
        )
    radius = _composed_radius(np.abs(c), outer.radius_est, inner.radius_est)
    return Germ(inner.center, tuple(acc), radius, "composed")


def _composed_radius(mag, outer_radius: float, inner_radius: float) -> float:
    coeffs_desc = mag[::-1]

    def reach(rr: float) -> float:
        return float(np.polyval(coeffs_desc, rr))

    hi = inner_radius
    if not math.isfinite(hi):
        hi = 1.0
        while reach(hi) <= outer_radius and hi < 1e12:
            hi *= 2.0
    if reach(hi) <= outer_radius:
        return hi
    lo = 0.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if reach(mid) <= outer_radius:
            lo = mid
        else:
            hi = mid
    return lo


def estimate_radius(coeffs) -> float:
    """Cauchy-Hadamard estimate 1 / max |a_k|^(1/k) over the top half of the
    coefficient indices (zero coefficients skipped; +inf if all vanish)."""
    n = len(coeffs)
    if n < 8:
        raise TooFewCoefficients(f"need at least 8 coefficients, got {n}")
    best = 0.0
    for k in range(n // 2, n):
        m = abs(coeffs[k])
        if m > 0.0:
            root = m ** (1.0 / k)
            if root > best:
                best = root
    return math.inf if best == 0.0 else 1.0 / best
