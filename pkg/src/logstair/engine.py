"""Transport germs along paths and compare against the exact lift oracle.

Numeric continuation can only observe radius collapse; the membership oracle
(continuable_exact) is exact for the specific germ family studied here, so
crosscheck() treats the oracle as ground truth and the engine as the thing
being validated.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import CenterMismatch, LogstairError, WrongBasePoint
from .paths import PathPolyline, _segment_angle, _segment_origin_distance, lift_log
from .series import DEFAULT_ORDER, STEP_SAFETY, AGREE_TOL, Germ, h_germ, log_germ, recenter
from .staircase import GEOM_TOL, TWO_PI, in_interior

RADIUS_FLOOR = 1e-4
MAX_STEPS = 100_000
CROSS_TOL = 0.02

BASE_POINT = 0.5 + 0j
_ORACLE_ARC = 0.005  # lift-space sampling resolution of the exact oracle


@dataclass(frozen=True)
class EngineOptions:
    order: int = DEFAULT_ORDER
    step_safety: float = STEP_SAFETY
    radius_floor: float = RADIUS_FLOOR
    max_steps: int = MAX_STEPS
    agree_tol: float = AGREE_TOL

    def validate(self) -> None:
        if self.order < 1:
            raise ValueError(f"order must be >= 1, got {self.order}")
        if not 0.0 < self.step_safety < 1.0:
            raise ValueError(f"step_safety must be in (0,1), got {self.step_safety}")
        if not self.radius_floor > 0.0:
            raise ValueError(f"radius_floor must be positive, got {self.radius_floor}")
        if self.max_steps < 1:
            raise ValueError(f"max_steps must be >= 1, got {self.max_steps}")


@dataclass(frozen=True)
class ContinuationChain:
    """Chain of germs along a path; breakpoints are path parameters in [0,1]."""

    elements: tuple
    breakpoints: tuple
    status: str  # "completed" | "failed"
    t_fail: Optional[float] = None
    reason: Optional[str] = None

    @property
    def completed(self) -> bool:
        return self.status == "completed"

    @property
    def final(self) -> Germ:
        return self.elements[-1]


@dataclass(frozen=True)
class OracleVerdict:
    verdict: str  # "continuable" | "blocked" | "corner"
    first_exit_t: Optional[float]
    lift_end: complex


@dataclass(frozen=True)
class CrosscheckReport:
    agree: bool
    chain: ContinuationChain
    oracle: OracleVerdict
    detail: str


def _auto_refresh(start: Germ):
    order = start.order
    if start.provenance == "log":
        return lambda center, hint: log_germ(center, hint.imag, order)
    if start.provenance == "h":
        return lambda center, hint: h_germ(center, order)
    return None


def _vertex_params(path: PathPolyline):
    total = path.total_length
    if total == 0.0:
        return [0.0] * len(path.points)
    return [c / total for c in path._cumlen]


def _advance(path: PathPolyline, vert_ts, t0: float, center: complex, cap: float) -> float:
    """Largest parameter t >= t0 such that the sub-path [t0, t] stays within
    distance cap of center, located by bisection.  On a polyline the distance
    along each chord is convex, so checking interior vertices plus the moving
    endpoint is exact."""
    cap = cap * (1.0 - 1e-12)
    lo_idx = bisect.bisect_right(vert_ts, t0)

    def ok(t: float) -> bool:
        if abs(path.point_at(t) - center) > cap:
            return False
        idx = lo_idx
        while idx < len(vert_ts) and vert_ts[idx] < t:
            if abs(path.points[idx] - center) > cap:
                return False
            idx += 1
        return True

    if ok(1.0):
        return 1.0
    lo, hi = t0, 1.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def continue_along(
    start: Germ,
    path: PathPolyline,
    opts: Optional[EngineOptions] = None,
    refresh: Optional[Callable[[complex, complex], Germ]] = None,
) -> ContinuationChain:
    """Continue `start` along `path` by steps of at most step_safety times the
    current radius estimate.

    Each step evaluates the current germ at the next center; `refresh` (or a
    provenance-derived default for log/h germs) rebuilds an authoritative germ
    there from that value, falling back to a Taylor shift when nothing better
    is known.  Failure means the radius estimate dropped below radius_floor or
    the step budget ran out; t_fail is the furthest parameter reached.
    """
    opts = opts if opts is not None else EngineOptions()
    opts.validate()
    if abs(start.center - path.start) > 1e-9:
        raise CenterMismatch(
            f"germ center {start.center} is not the path start {path.start}"
        )
    if refresh is None:
        refresh = _auto_refresh(start)
    vert_ts = _vertex_params(path)
    elements = [start]
    breaks = [0.0]
    g = start
    t = 0.0
    steps = 0

    def _failed(reason: str) -> ContinuationChain:
        return ContinuationChain(tuple(elements), tuple(breaks), "failed", t, reason)

    while True:
        if g.radius_est < opts.radius_floor:
            return _failed(
                f"radius estimate {g.radius_est:.3e} below floor {opts.radius_floor:.3e}"
            )
        if t >= 1.0:
            return ContinuationChain(tuple(elements), tuple(breaks), "completed")
        if steps >= opts.max_steps:
            return _failed(f"exceeded {opts.max_steps} steps")
        steps += 1
        t_next = _advance(path, vert_ts, t, g.center, opts.step_safety * g.radius_est)
        if not t_next > t:
            return _failed("no forward progress along the path")
        center = path.point_at(t_next)
        hint = g.eval(center)
        if refresh is not None:
            try:
                g_next = refresh(center, hint)
            except LogstairError as exc:
                return _failed(f"refresh failed: {exc}")
        else:
            g_next = recenter(g, center, step_safety=opts.step_safety, reestimate=True)
        elements.append(g_next)
        breaks.append(t_next)
        g = g_next
        t = t_next


def lift_at(path: PathPolyline, t: float) -> complex:
    """Continuous-logarithm lift of path(t), start branch 0."""
    lifted = lift_log(path, 0.0).points
    pts = path.points
    total = path.total_length
    if total == 0.0 or t <= 0.0:
        return lifted[0]
    target = min(t, 1.0) * total
    cum = path._cumlen
    i = bisect.bisect_left(cum, target, 1) - 1
    i = min(i, len(pts) - 2)
    seg = cum[i + 1] - cum[i]
    if seg == 0.0:
        return lifted[i]
    s = (target - cum[i]) / seg
    a, b = pts[i], pts[i + 1]
    z = a + s * (b - a)
    return complex(math.log(abs(z)), lifted[i].imag + _segment_angle(a, z))


def continuable_exact(path: PathPolyline, geom_tol: float = GEOM_TOL) -> OracleVerdict:
    """Exact continuability oracle: the germ continues along `path` precisely
    when the logarithm lift (start branch 0) stays interior to the staircase.

    The lift is sampled at ~0.005 increments of lift arc length; the first
    non-interior sample is sharpened by bisection.  Exits are reported as
    "corner" only when the offending point sits at a staircase corner AND the
    path terminates there (a lift merely passing through a corner is an
    ordinary blocked exit).
    """
    if abs(path.start - BASE_POINT) > geom_tol:
        raise WrongBasePoint(f"oracle paths must start at 0.5, got {path.start}")
    lifted = lift_log(path, 0.0).points
    lift_end = lifted[-1]
    pts = path.points
    cum = path._cumlen
    total = path.total_length

    if not in_interior(lifted[0], geom_tol):  # unreachable for base 0.5
        return OracleVerdict("blocked", 0.0, lift_end)

    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        seg = abs(b - a)
        if seg == 0.0:
            continue
        theta_a = lifted[i].imag
        arc_bound = seg / _segment_origin_distance(a, b)
        n_sub = max(1, math.ceil(arc_bound / _ORACLE_ARC))

        def zeta(s: float) -> complex:
            z = a + s * (b - a)
            return complex(math.log(abs(z)), theta_a + _segment_angle(a, z))

        s_prev = 0.0
        for j in range(1, n_sub + 1):
            s_bad = j / n_sub
            if in_interior(zeta(s_bad), geom_tol):
                s_prev = s_bad
                continue
            lo, hi = s_prev, s_bad
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if in_interior(zeta(mid), geom_tol):
                    lo = mid
                else:
                    hi = mid
            # nudge just past the flip so the reported parameter stays
            # non-interior under recomputation
            s_exit = hi + (s_bad - hi) * 1e-6
            exit_zeta = zeta(s_exit)
            t_exit = (cum[i] + s_exit * seg) / total
            m = round(exit_zeta.real)
            corner = complex(m, TWO_PI * m)
            terminal = (
                abs(exit_zeta - corner) <= 2.0 * geom_tol
                and abs(lift_end - corner) <= 2.0 * geom_tol
            )
            return OracleVerdict("corner" if terminal else "blocked", t_exit, lift_end)

    return OracleVerdict("continuable", None, lift_end)


def overlap_disagreement(chain: ContinuationChain, points_per_junction: int = 8) -> float:
    """Worst value disagreement between adjacent chain germs, probed on a
    circle of radius |step|/4 around each junction midpoint."""
    worst = 0.0
    for g1, g2 in zip(chain.elements, chain.elements[1:]):
        mid = 0.5 * (g1.center + g2.center)
        rho = 0.25 * abs(g2.center - g1.center)
        for j in range(points_per_junction):
            p = mid + rho * complex(
                math.cos(TWO_PI * j / points_per_junction),
                math.sin(TWO_PI * j / points_per_junction),
            )
            worst = max(worst, abs(g1.eval(p) - g2.eval(p)))
    return worst


def crosscheck(
    path: PathPolyline,
    f_germ: Germ,
    opts: Optional[EngineOptions] = None,
    refresh: Optional[Callable[[complex, complex], Germ]] = None,
    cross_tol: float = CROSS_TOL,
) -> CrosscheckReport:
    """Run the numeric engine and the exact oracle on the same path and
    report whether they tell the same story."""
    chain = continue_along(f_germ, path, opts, refresh)
    oracle = continuable_exact(path)
    if oracle.verdict == "continuable":
        agree = chain.completed
        detail = (
            "both continue"
            if agree
            else f"oracle continuable but engine failed at t={chain.t_fail}"
        )
    else:
        if not chain.completed:
            gap = abs(chain.t_fail - oracle.first_exit_t)
            agree = gap < cross_tol
            detail = (
                f"both fail (engine t={chain.t_fail:.6f}, "
                f"oracle t={oracle.first_exit_t:.6f}, gap {gap:.2e})"
            )
        else:
            agree = False
            detail = f"oracle {oracle.verdict} at t={oracle.first_exit_t} but engine completed"
    return CrosscheckReport(agree, chain, oracle, detail)
