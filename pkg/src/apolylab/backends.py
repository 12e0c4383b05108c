"""Hot numeric kernels: Newton tracking along a parameter grid and the
log-scale cyclotomic sum.

Kernels are compiled with numba when it is importable.  Setting the
environment variable APOLYLAB_FORCE_PURE to a non-empty value other than
"0" skips numba entirely and runs the same code as plain Python; the two
paths execute identical arithmetic.  See benchmarks/bench_backends.py
for a timing comparison.
"""

import math
import os

import numpy as np

FORCE_PURE = os.environ.get("APOLYLAB_FORCE_PURE", "") not in ("", "0")

HAS_NUMBA = False
if not FORCE_PURE:
    try:
        from numba import njit

        HAS_NUMBA = True
    except ImportError:
        HAS_NUMBA = False

JIT_ENABLED = HAS_NUMBA


def _jit(f):
    if JIT_ENABLED:
        return njit(cache=True)(f)
    return f


@_jit
def _cpow(z, n):
    # complex z to an integer power, square and multiply; n may be negative
    if n == 0:
        return 1.0 + 0.0j
    e = n if n > 0 else -n
    acc = 1.0 + 0.0j
    base = z
    while e > 0:
        if e & 1:
            acc = acc * base
        base = base * base
        e >>= 1
    if n < 0:
        return 1.0 / acc
    return acc


@_jit
def eval_terms(ti, tj, tc, l, m):
    """Value of the term arrays (exponent pair per entry) at (l, m)."""
    acc = 0.0 + 0.0j
    for k in range(ti.shape[0]):
        acc = acc + tc[k] * _cpow(l, ti[k]) * _cpow(m, tj[k])
    return acc


@_jit
def max_term_at(ti, tj, tc, l, m):
    """Largest term magnitude at (l, m); the residual scale."""
    al = abs(l)
    am = abs(m)
    best = 0.0
    for k in range(ti.shape[0]):
        v = abs(tc[k]) * al ** ti[k] * am ** tj[k]
        if v > best:
            best = v
    return best


@_jit
def track_grid(ai, aj, ac, bi, bj, bc, ci, cj, cc,
               m_arr, l_start, scale_start,
               resid_rel, ram_rel, halve_iters, budget):
    """March l along the m grid keeping A(l, m) = 0.

    (ai, aj, ac) are term arrays of A, (bi, bj, bc) of dA/dl and
    (ci, cj, cc) of dA/dm.  Tangent predictor, Newton corrector at fixed m.
    The iteration count to the first tolerance hit decides step halving;
    after the hit the root is polished while the residual strictly drops,
    within the same total budget, so the ramification guard sees a fully
    converged point.

    Returns (l_out, resid_out, scale, status, idx) with status 0 done,
    1 the step from idx to idx+1 needs halving, 2 ramification at idx.
    """
    n = m_arr.shape[0]
    l_out = np.empty(n, np.complex128)
    resid_out = np.empty(n, np.float64)
    scale = scale_start
    l = l_start
    l_out[0] = l
    resid_out[0] = abs(eval_terms(ai, aj, ac, l, m_arr[0]))
    for k in range(n - 1):
        m0 = m_arr[k]
        m1 = m_arr[k + 1]
        dal = eval_terms(bi, bj, bc, l, m0)
        if dal == 0:
            return l_out, resid_out, scale, 1, k
        dam = eval_terms(ci, cj, cc, l, m0)
        l1 = l - dam / dal * (m1 - m0)
        tol = resid_rel * scale
        r = eval_terms(ai, aj, ac, l1, m1)
        ar = abs(r)
        hit = -1
        iters = 0
        while iters <= budget:
            if ar <= tol:
                hit = iters
                break
            if iters == budget:
                break
            dal1 = eval_terms(bi, bj, bc, l1, m1)
            if dal1 == 0:
                break
            l1 = l1 - r / dal1
            r = eval_terms(ai, aj, ac, l1, m1)
            ar = abs(r)
            iters += 1
        if hit < 0 or hit > halve_iters:
            return l_out, resid_out, scale, 1, k
        for _ in range(budget - hit):
            dal1 = eval_terms(bi, bj, bc, l1, m1)
            if dal1 == 0:
                break
            l_try = l1 - r / dal1
            r_try = eval_terms(ai, aj, ac, l_try, m1)
            if abs(r_try) < ar:
                l1 = l_try
                r = r_try
                ar = abs(r_try)
            else:
                break
        sc = max_term_at(ai, aj, ac, l1, m1)
        if sc > scale:
            scale = sc
        l = l1
        l_out[k + 1] = l
        resid_out[k + 1] = ar
        if abs(eval_terms(bi, bj, bc, l, m1)) < ram_rel * scale:
            return l_out, resid_out, scale, 2, k + 1
    return l_out, resid_out, scale, 0, n - 1


@_jit
def jones_sum(N, theta):
    """Figure-eight colored Jones value at q = e^{i theta}, N colors.

    Each paired factor (q^{(N-j)/2} - q^{-(N-j)/2})(q^{(N+j)/2} - q^{-(N+j)/2})
    equals -4 sin((N-j)theta/2) sin((N+j)theta/2), a real number, so the sum
    is a signed real accumulated in log scale with max extraction.
    Returns (log_abs, arg) with arg in {0, pi}.
    """
    lp = 0.0
    sp = 1.0
    ls = 0.0
    ss = 1.0
    for j in range(1, N):
        x = 0.5 * (N - j) * theta
        y = 0.5 * (N + j) * theta
        pair = -4.0 * math.sin(x) * math.sin(y)
        if pair == 0.0:
            break
        lp = lp + math.log(abs(pair))
        if pair < 0.0:
            sp = -sp
        hi = ls if ls > lp else lp
        v = ss * math.exp(ls - hi) + sp * math.exp(lp - hi)
        if v == 0.0:
            ls = -math.inf
            ss = 1.0
        else:
            ls = hi + math.log(abs(v))
            ss = 1.0 if v > 0.0 else -1.0
    if ss > 0.0:
        return ls, 0.0
    return ls, math.pi
