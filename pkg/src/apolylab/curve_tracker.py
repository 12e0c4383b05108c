"""Lift routes in the m-plane onto the curve A(l, m) = 0.

A PathSpec is a chain of line and arc segments in the m-plane plus a
branch seed for l at the first point.  lift_path follows the route by
tangent prediction and Newton correction in l, keeping a continuously
unwrapped logarithm state for both variables: between consecutive
samples |delta arg| < pi, so winding numbers and branch-sensitive
integrals are well defined downstream.

Convention for the base sample: arg m(t0) = 0 whenever |m(t0) - 1| is
within the base-point offset, otherwise principal values in [0, 2pi).
The geometric base point of a knot curve may be a singular point of the
curve; routes nominally starting there must start at the offset point
instead (the knot records carry m0 = 1 + epsilon and an l seed picked on
one of the two lifts).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import List, Optional, Tuple, Union

import numpy as np

from . import backends
from .errors import (
    DegenerateError,
    MismatchError,
    NonConvergence,
    RamificationError,
    SeedError,
)
from .poly_core import (
    LaurentBiPoly,
    eval_poly,
    max_term,
    partial,
    roots_in_l,
)

JOINT_TOL = 1e-12        # segment endpoints must chain within this
CONCAT_TOL = 1e-9        # concat endpoint agreement in (l, m)
MONODROMY_TOL = 1e-8     # closed-loop l return test
SEED_SEPARATION = 1e-8   # min distance of the seed root from other roots
DEFAULT_SEED_TOL = 1e-6  # seed residual, relative to the term scale
RESID_REL = 1e-12        # Newton tolerance, relative to the running term scale
RAM_REL = 1e-8           # |dA/dl| guard, relative to the running term scale
BASE_EPS = 1e-4          # |m - 1| radius in which arg m(t0) is zeroed


@dataclass(frozen=True)
class LineSeg:
    m_start: complex
    m_end: complex

    def point(self, s: float) -> complex:
        return self.m_start + s * (self.m_end - self.m_start)

    @property
    def first(self) -> complex:
        return self.m_start

    @property
    def last(self) -> complex:
        return self.m_end


@dataclass(frozen=True)
class ArcSeg:
    center: complex
    radius: float
    angle_start: float
    angle_end: float

    def point(self, s: float) -> complex:
        a = self.angle_start + s * (self.angle_end - self.angle_start)
        return self.center + self.radius * complex(np.cos(a), np.sin(a))

    @property
    def first(self) -> complex:
        return self.point(0.0)

    @property
    def last(self) -> complex:
        return self.point(1.0)


Segment = Union[LineSeg, ArcSeg]


@dataclass(frozen=True)
class PathSpec:
    segments: Tuple[Segment, ...]
    l_seed: complex
    closed: bool = False

    def __post_init__(self):
        segs = tuple(self.segments)
        object.__setattr__(self, "segments", segs)
        if not segs:
            raise ValueError("empty path")
        for a, b in zip(segs, segs[1:]):
            if abs(a.last - b.first) > JOINT_TOL:
                raise ValueError("consecutive segments do not chain")
        if self.closed and abs(segs[-1].last - segs[0].first) > JOINT_TOL:
            raise ValueError("closed path does not return to its start")


@dataclass(frozen=True)
class StepControls:
    max_step: float = 0.01   # in segment parameter
    min_step: float = 1e-12
    newton_budget: int = 20
    halve_after: int = 5     # Newton iterations to tolerance before halving


@dataclass(frozen=True)
class TrackedPath:
    """Dense samples of the lift.  Arrays share one index; arg fields are
    continuously unwrapped, never reduced mod 2pi."""

    t: np.ndarray
    l: np.ndarray
    m: np.ndarray
    log_abs_l: np.ndarray
    arg_l: np.ndarray
    log_abs_m: np.ndarray
    arg_m: np.ndarray
    residual_max: float
    closed: bool
    base_convention: dict = field(compare=False)
    l_return_gap: Optional[float] = None

    @property
    def n_samples(self) -> int:
        return len(self.t)

    @property
    def l_monodromy_trivial(self) -> Optional[bool]:
        if self.l_return_gap is None:
            return None
        return self.l_return_gap <= MONODROMY_TOL


def _term_arrays(p: LaurentBiPoly):
    n = len(p.terms)
    ti = np.empty(n, np.int64)
    tj = np.empty(n, np.int64)
    tc = np.empty(n, np.complex128)
    for k, ((i, j), c) in enumerate(sorted(p.terms.items())):
        ti[k] = i
        tj[k] = j
        tc[k] = float(c)
    return ti, tj, tc


def term_arrays(p: LaurentBiPoly):
    """Exponent/coefficient arrays in the layout the kernels consume."""
    return _term_arrays(p)


def _seed_tolerance() -> float:
    import os

    raw = os.environ.get("APOLY_SEED_TOL", "")
    if raw:
        return float(raw)
    return DEFAULT_SEED_TOL


def _polish_root(A: LaurentBiPoly, Al: LaurentBiPoly, l: complex, m: complex,
                 budget: int = 20) -> complex:
    # Newton in l while the residual strictly improves
    r = abs(eval_poly(A, l, m))
    for _ in range(budget):
        d = eval_poly(Al, l, m)
        if d == 0:
            break
        l_try = l - eval_poly(A, l, m) / d
        r_try = abs(eval_poly(A, l_try, m))
        if r_try < r:
            l, r = l_try, r_try
        else:
            break
    return l


def _check_seed(A: LaurentBiPoly, l_seed: complex, m0: complex) -> complex:
    """Validate the branch seed and snap it onto the curve."""
    scale = max_term(A, l_seed, m0)
    if abs(eval_poly(A, l_seed, m0)) > _seed_tolerance() * scale:
        raise SeedError("seed does not satisfy A within tolerance at the start point")
    try:
        roots = roots_in_l(A, m0)
    except DegenerateError:
        return l_seed  # branch at infinity present; skip the separation check
    if not roots:
        raise SeedError("no roots in l at the start point")
    dist = [abs(r - l_seed) for r in roots]
    nearest = int(np.argmin(dist))
    others = [abs(roots[k] - roots[nearest]) for k in range(len(roots)) if k != nearest]
    if others and min(others) < SEED_SEPARATION:
        raise SeedError(
            "seed root is not separated from the other sheets; "
            "start at an offset point instead"
        )
    return roots[nearest]


def lift_path(A: LaurentBiPoly, spec: PathSpec, ctrl: StepControls = StepControls(),
              base_eps: float = BASE_EPS) -> TrackedPath:
    """Track the route in spec on A = 0 starting from the seeded branch.

    Newton correction runs to |A| <= RESID_REL * scale with scale the
    running maximum term magnitude along the path.  A step whose
    correction needs more than ctrl.halve_after iterations is halved by
    inserting the parameter midpoint, down to ctrl.min_step.  Raises
    RamificationError when |dA/dl| at a corrected point falls below
    RAM_REL * scale, and NonConvergence when the step size underflows.
    """
    Al = partial(A, "l")
    Am = partial(A, "m")
    ta = _term_arrays(A)
    tb = _term_arrays(Al)
    tc = _term_arrays(Am)

    m0 = spec.segments[0].first
    l0 = _check_seed(A, spec.l_seed, m0)
    l0 = _polish_root(A, Al, l0, m0, ctrl.newton_budget)
    scale = max_term(A, l0, m0)

    n_segs = len(spec.segments)
    all_t: List[np.ndarray] = []
    all_l: List[np.ndarray] = []
    all_m: List[np.ndarray] = []
    resid_max = 0.0
    l_cur = l0
    for seg_idx, seg in enumerate(spec.segments):
        n = max(1, int(np.ceil(1.0 / ctrl.max_step)))
        s = list(np.linspace(0.0, 1.0, n + 1))
        l_vals: List[complex] = [l_cur]
        start = 0
        while start < len(s) - 1:
            tail = s[start:]
            m_arr = np.array([seg.point(x) for x in tail], dtype=complex)
            out_l, out_r, scale, status, idx = backends.track_grid(
                *ta, *tb, *tc, m_arr, l_vals[start], scale,
                RESID_REL, RAM_REL, ctrl.halve_after, ctrl.newton_budget,
            )
            if status == 2:
                bad = m_arr[idx]
                raise RamificationError(
                    "lift ran into a branch point near m = %s" % bad,
                    m=complex(bad), l=complex(out_l[idx]),
                )
            if status == 1:
                # keep the prefix, halve the failing step
                stop = start + idx  # last good grid index
                l_vals[start:stop + 1] = list(out_l[: idx + 1])
                resid_max = max(resid_max, float(np.max(out_r[: idx + 1])))
                gap = s[stop + 1] - s[stop]
                if gap / 2.0 < ctrl.min_step:
                    raise NonConvergence(
                        "step underflow near m = %s" % seg.point(s[stop])
                    )
                s.insert(stop + 1, s[stop] + gap / 2.0)
                l_vals = l_vals[: stop + 1]
                start = stop
                continue
            l_vals[start:] = list(out_l)
            resid_max = max(resid_max, float(np.max(out_r)))
            break
        t_seg = (seg_idx + np.asarray(s)) / n_segs
        m_seg = np.array([seg.point(x) for x in s], dtype=complex)
        l_seg = np.asarray(l_vals, dtype=complex)
        if seg_idx > 0:
            t_seg = t_seg[1:]
            m_seg = m_seg[1:]
            l_seg = l_seg[1:]
        all_t.append(t_seg)
        all_m.append(m_seg)
        all_l.append(l_seg)
        l_cur = l_vals[-1]

    t = np.concatenate(all_t)
    l = np.concatenate(all_l)
    m = np.concatenate(all_m)
    logs = _unwrap_logs(l, m, base_eps)
    gap = float(abs(l[-1] - l[0])) if spec.closed else None
    return TrackedPath(
        t=t, l=l, m=m,
        log_abs_l=logs[0], arg_l=logs[1], log_abs_m=logs[2], arg_m=logs[3],
        residual_max=resid_max,
        closed=spec.closed,
        base_convention={
            "arg_m_zeroed": bool(abs(m[0] - 1.0) <= base_eps),
            "base_eps": base_eps,
        },
        l_return_gap=gap,
    )


def _principal(z: complex) -> float:
    a = float(np.angle(z))
    return a + 2.0 * np.pi if a < 0 else a


def _unwrap_logs(l: np.ndarray, m: np.ndarray, base_eps: float):
    arg_l0 = _principal(l[0])
    arg_m0 = 0.0 if abs(m[0] - 1.0) <= base_eps else _principal(m[0])
    arg_l = arg_l0 + np.concatenate(([0.0], np.cumsum(np.angle(l[1:] / l[:-1]))))
    arg_m = arg_m0 + np.concatenate(([0.0], np.cumsum(np.angle(m[1:] / m[:-1]))))
    return np.log(np.abs(l)), arg_l, np.log(np.abs(m)), arg_m


def loop_around_m(A: LaurentBiPoly, m_center: complex, radius: float,
                  l_seed: complex, turns: int = 1) -> PathSpec:
    """Closed circle of |turns| full arcs around m_center, counterclockwise
    for turns > 0, starting at angle 0."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if turns == 0:
        raise ValueError("turns must be nonzero")
    sgn = 1.0 if turns > 0 else -1.0
    segs = tuple(
        ArcSeg(m_center, radius, 2.0 * np.pi * sgn * k, 2.0 * np.pi * sgn * (k + 1))
        for k in range(abs(turns))
    )
    return PathSpec(segments=segs, l_seed=l_seed, closed=True)


def reverse(path: TrackedPath) -> TrackedPath:
    """Orientation flip.  The unwrap is preserved, so the new base sample
    keeps the old endpoint's arg values (not re-normalized)."""
    conv = dict(path.base_convention)
    conv["reversed"] = not conv.get("reversed", False)
    return TrackedPath(
        t=1.0 - path.t[::-1],
        l=path.l[::-1].copy(),
        m=path.m[::-1].copy(),
        log_abs_l=path.log_abs_l[::-1].copy(),
        arg_l=path.arg_l[::-1].copy(),
        log_abs_m=path.log_abs_m[::-1].copy(),
        arg_m=path.arg_m[::-1].copy(),
        residual_max=path.residual_max,
        closed=path.closed,
        base_convention=conv,
        l_return_gap=path.l_return_gap,
    )


def concat(a: TrackedPath, b: TrackedPath) -> TrackedPath:
    """Join two tracked paths; b's args are re-based to continue a's unwrap."""
    if abs(a.l[-1] - b.l[0]) > CONCAT_TOL or abs(a.m[-1] - b.m[0]) > CONCAT_TOL:
        raise MismatchError("paths do not share an endpoint")
    shift_l = a.arg_l[-1] - b.arg_l[0]
    shift_m = a.arg_m[-1] - b.arg_m[0]
    na, nb = len(a.t), len(b.t)
    w = (na - 1) / (na - 1 + nb - 1) if (na - 1 + nb - 1) > 0 else 0.5
    t = np.concatenate((a.t * w, w + (1 - w) * b.t[1:]))
    l = np.concatenate((a.l, b.l[1:]))
    m = np.concatenate((a.m, b.m[1:]))
    closed = bool(abs(l[-1] - l[0]) <= MONODROMY_TOL and abs(m[-1] - m[0]) <= JOINT_TOL * 1e3)
    return TrackedPath(
        t=t, l=l, m=m,
        log_abs_l=np.concatenate((a.log_abs_l, b.log_abs_l[1:])),
        arg_l=np.concatenate((a.arg_l, b.arg_l[1:] + shift_l)),
        log_abs_m=np.concatenate((a.log_abs_m, b.log_abs_m[1:])),
        arg_m=np.concatenate((a.arg_m, b.arg_m[1:] + shift_m)),
        residual_max=max(a.residual_max, b.residual_max),
        closed=closed,
        base_convention=dict(a.base_convention),
        l_return_gap=float(abs(l[-1] - l[0])) if closed else None,
    )


def refine(ctrl: StepControls, factor: float = 0.5) -> StepControls:
    """Controls with the step scaled; used by quadrature refinement."""
    return replace(ctrl, max_step=ctrl.max_step * factor)
