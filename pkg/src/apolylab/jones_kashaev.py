"""Colored Jones values at roots of unity and their growth rate.

The shipped evaluator is the figure-eight cyclotomic sum

    J_N(q) = sum_{j=0}^{N-1} prod_{k=1}^{j}
             (q^{(N-k)/2} - q^{-(N-k)/2}) (q^{(N+k)/2} - q^{-(N+k)/2})

with q^{1/2} = exp(i theta / 2) for the theta in [0, 2pi) representing
q.  Each paired factor is real on the unit circle, so values are signed
reals; they grow like exp(const N) and are accumulated in log scale (the
kernel lives in backends).  Other knots can plug in any evaluator with
the same (N, q) -> LogComplex signature.

The growth fit models log|J_N| = (slope / 2pi) k + c log N + b over a
sequence with k = round(N / a); slope is reported on the scale where the
volume conjecture reads lim 2pi log|J_N| / k = Vol, so the figure-eight
sequence at a = 1 recovers 6 Lambda(pi/3) directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from . import backends
from .errors import InsufficientData

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LogComplex:
    log_abs: float
    arg: float

    def to_complex(self) -> complex:
        return complex(math.exp(self.log_abs) * math.cos(self.arg),
                       math.exp(self.log_abs) * math.sin(self.arg))


@dataclass(frozen=True)
class GrowthFit:
    slope: float           # limit estimate, volume scale (2pi x coefficient of k)
    log_correction: float  # fitted coefficient of log N
    intercept: float
    rms: float
    k_values: Tuple[int, ...]


def _theta_of(q: complex) -> float:
    if abs(abs(q) - 1.0) > 1e-9:
        raise ValueError("q must lie on the unit circle")
    theta = math.atan2(q.imag, q.real)
    if theta < 0:
        theta += TWO_PI
    return theta


def colored_jones_fig8(N: int, q: complex) -> LogComplex:
    """Figure-eight colored Jones value with N colors at unit-modulus q."""
    if N < 1:
        raise ValueError("N must be >= 1")
    theta = _theta_of(q)
    log_abs, arg = backends.jones_sum(N, theta)
    return LogComplex(log_abs=float(log_abs), arg=float(arg))


def jones_sequence(n_list: Sequence[int], a: float) -> List[Tuple[int, LogComplex]]:
    """J_N at q = e^{2 pi i / k} with k = round(N / a)."""
    out = []
    for N in n_list:
        k = round(N / a)
        if k < 1:
            raise ValueError("N/a rounds below 1")
        q = complex(math.cos(TWO_PI / k), math.sin(TWO_PI / k))
        out.append((N, colored_jones_fig8(N, q)))
    return out


def kashaev_sequence(n_list: Sequence[int]) -> List[Tuple[int, LogComplex]]:
    """J_N at q = e^{2 pi i / N}; each value is checked to be a positive real
    (arg within 1e-6 of 0 mod 2pi)."""
    out = []
    for N, value in jones_sequence(n_list, 1.0):
        wrapped = abs(math.remainder(value.arg, TWO_PI))
        if wrapped > 1e-6:
            raise ArithmeticError("Kashaev value at N=%d is not positive real" % N)
        out.append((N, value))
    return out


def growth_rate(seq: Sequence[Tuple[int, LogComplex]], a: float = 1.0) -> GrowthFit:
    """Least squares fit of log|J_N| against k = round(N/a), log N and 1."""
    if len(seq) < 4:
        raise InsufficientData("need at least 4 points, got %d" % len(seq))
    n_vals = [n for n, _ in seq]
    if any(b <= c for b, c in zip(n_vals[1:], n_vals[:-1])):
        raise ValueError("N values must be increasing")
    k = np.array([round(n / a) for n in n_vals], dtype=float)
    logn = np.log(np.array(n_vals, dtype=float))
    y = np.array([v.log_abs for _, v in seq])
    design = np.column_stack([k, logn, np.ones_like(k)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    return GrowthFit(
        slope=float(TWO_PI * coef[0]),
        log_correction=float(coef[1]),
        intercept=float(coef[2]),
        rms=float(np.sqrt(np.mean(resid ** 2))),
        k_values=tuple(int(x) for x in k),
    )


def conjecture_gap(fit: GrowthFit, vol_val: float, cs_val: float,
                   u_val: float = None) -> Tuple[float, str]:
    """Distance of the fitted growth rate from the volume prediction, plus a
    side-by-side report of both right-hand-side conventions.

    The gap is |slope - Vol| / 2pi, i.e. the comparison at the scale of
    lim log J / k.  No pass/fail: the statement under test is open.
    """
    gap = abs(fit.slope - vol_val) / TWO_PI
    lhs_re = fit.slope / TWO_PI
    rhs33_re = vol_val / TWO_PI
    rhs33_im = math.pi * cs_val
    lines = [
        "growth fit: slope %.12g (volume scale), log N coefficient %.3f, rms %.3g"
        % (fit.slope, fit.log_correction, fit.rms),
        "LHS  lim log|J|/k            : %.12g" % lhs_re,
        "RHS  (1/2pi) Vol             : %.12g   (re, both conventions)" % rhs33_re,
        "RHS  im, 2pi^2 CS convention : %.12g" % rhs33_im,
    ]
    if u_val is not None:
        lines.append("RHS  im, (1/2pi) U convention: %.12g" % (u_val / (2.0 * TWO_PI * math.pi)))
    lines.append("gap  |slope - Vol| / 2pi     : %.3g" % gap)
    return gap, "\n".join(lines)
