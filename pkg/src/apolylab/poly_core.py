"""Bivariate Laurent polynomials with exact coefficients.

A polynomial in the variables l and m is stored as a map from exponent
pairs ``(i, j)`` to nonzero coefficients, where ``i`` is the l-exponent
and ``j`` the m-exponent.  Exponents may be negative.  Coefficients are
exact integers (or :class:`fractions.Fraction`); nothing is rounded
until :func:`eval_poly` converts to floating point.  The zero polynomial
is the empty map.

Text input follows the grammar

    expr   := term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := INT | VAR | VAR '^' SINT | '(' expr ')'
    VAR    := 'l' | 'm'
    SINT   := '-'? INT

with whitespace ignored and no implicit multiplication.  There is no
unary minus, so the canonical printer emits a leading negative term as
``0 - ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from .errors import DegenerateError, DomainError, NonConvergence, PolySyntaxError

Exponents = Tuple[int, int]
TermMap = Dict[Exponents, object]

CLUSTER_RADIUS = 1e-7     # roots closer than this are reported as one multiple root
ROOT_RESID_REL = 1e-10    # |p(root)| <= this times the largest term magnitude
REAL_SNAP_REL = 1e-12     # imaginary parts below this (relative) snap to 0


@dataclass(frozen=True)
class LaurentBiPoly:
    """Immutable term map; zero-coefficient entries are dropped on construction."""

    terms: TermMap

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {e: c for e, c in self.terms.items() if c != 0}
        )

    def __bool__(self) -> bool:
        return bool(self.terms)


ZERO = LaurentBiPoly({})


def _add(a: TermMap, b: TermMap) -> TermMap:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _neg(a: TermMap) -> TermMap:
    return {e: -c for e, c in a.items()}


def _mul(a: TermMap, b: TermMap) -> TermMap:
    out: TermMap = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            e = (i1 + i2, j1 + j2)
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


_TOKEN = re.compile(r"(?P<int>\d+)|(?P<var>[lm])|(?P<op>[-+*^()])|(?P<bad>\S)")


def _tokenize(text: str):
    tokens = []
    for match in _TOKEN.finditer(text):
        offset = match.start() + 1
        if match.lastgroup == "bad":
            raise PolySyntaxError(
                "unexpected character %r" % match.group(), text, offset
            )
        tokens.append((match.lastgroup, match.group(), offset))
    tokens.append(("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message):
        kind, value, offset = self.peek()
        raise PolySyntaxError(message, self.text, offset)

    def expr(self) -> TermMap:
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = _add(acc, rhs if op == "+" else _neg(rhs))
        return acc

    def term(self) -> TermMap:
        acc = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            acc = _mul(acc, self.factor())
        return acc

    def factor(self) -> TermMap:
        kind, value, offset = self.peek()
        if kind == "int":
            self.take()
            return {(0, 0): int(value)}
        if kind == "var":
            self.take()
            exp = 1
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                self.take()
                exp = self._signed_int()
            key = (exp, 0) if value == "l" else (0, exp)
            return {key: 1}
        if kind == "op" and value == "(":
            self.take()
            inner = self.expr()
            if not (self.peek()[0] == "op" and self.peek()[1] == ")"):
                self.fail("expected ')'")
            self.take()
            return inner
        self.fail("expected integer, variable or '('")

    def _signed_int(self) -> int:
        sign = 1
        if self.peek()[0] == "op" and self.peek()[1] == "-":
            self.take()
            sign = -1
        kind, value, offset = self.peek()
        if kind != "int":
            self.fail("expected integer exponent")
        self.take()
        return sign * int(value)


def parse_poly(text: str) -> LaurentBiPoly:
    """Parse text in the grammar above into a canonical term map."""
    parser = _Parser(text)
    terms = parser.expr()
    if parser.peek()[0] != "end":
        parser.fail("trailing input")
    return LaurentBiPoly(terms)


def print_poly(p: LaurentBiPoly) -> str:
    """Canonical text form; ``parse_poly(print_poly(p))`` reproduces ``p``.

    Only integer coefficients are printable (the grammar has no '/').
    """
    if not p:
        return "0"
    pieces = []
    for (i, j) in sorted(p.terms, key=lambda e: (-e[0], -e[1])):
        c = p.terms[(i, j)]
        if c != int(c):
            raise ValueError("coefficient %s is not printable in the integer grammar" % c)
        c = int(c)
        parts = []
        if abs(c) != 1 or (i == 0 and j == 0):
            parts.append(str(abs(c)))
        if i != 0:
            parts.append("l" if i == 1 else "l^%d" % i)
        if j != 0:
            parts.append("m" if j == 1 else "m^%d" % j)
        body = "*".join(parts)
        if not pieces:
            pieces.append(body if c > 0 else "0 - " + body)
        else:
            pieces.append((" + " if c > 0 else " - ") + body)
    return "".join(pieces)


def eval_poly(p: LaurentBiPoly, l: complex, m: complex) -> complex:
    """Value of p at (l, m); exact coefficients are converted last."""
    value = 0j
    for (i, j), c in p.terms.items():
        if (i < 0 and l == 0) or (j < 0 and m == 0):
            raise DomainError("negative exponent at zero argument")
        value += float(c) * l ** i * m ** j
    return value


def max_term(p: LaurentBiPoly, l: complex, m: complex) -> float:
    """Largest term magnitude |c| |l|^i |m|^j at the point; the natural scale
    for residual tolerances."""
    best = 0.0
    al, am = abs(l), abs(m)
    for (i, j), c in p.terms.items():
        if (i < 0 and al == 0) or (j < 0 and am == 0):
            raise DomainError("negative exponent at zero argument")
        best = max(best, abs(float(c)) * al ** i * am ** j)
    return best


def partial(p: LaurentBiPoly, var: str) -> LaurentBiPoly:
    """Formal partial derivative with respect to 'l' or 'm'."""
    if var not in ("l", "m"):
        raise ValueError("var must be 'l' or 'm'")
    out: TermMap = {}
    for (i, j), c in p.terms.items():
        if var == "l":
            if i != 0:
                out[(i - 1, j)] = c * i
        else:
            if j != 0:
                out[(i, j - 1)] = c * j
    return LaurentBiPoly(out)


def clear_denominators(p: LaurentBiPoly) -> Tuple[LaurentBiPoly, Tuple[int, int]]:
    """Multiply by l^a m^b with minimal a, b >= 0 so all exponents are >= 0.

    Returns the shifted polynomial and (a, b) so valuations can be adjusted.
    """
    if not p:
        return p, (0, 0)
    a = max(0, -min(i for i, _ in p.terms))
    b = max(0, -min(j for _, j in p.terms))
    if a == 0 and b == 0:
        return p, (0, 0)
    return LaurentBiPoly({(i + a, j + b): c for (i, j), c in p.terms.items()}), (a, b)


def l_coefficients(p: LaurentBiPoly, m: complex) -> np.ndarray:
    """Coefficient vector c[i] of the denominator-cleared polynomial in l at
    fixed m, index = l-power."""
    q, _ = clear_denominators(p)
    deg = max(i for i, _ in q.terms)
    coeffs = np.zeros(deg + 1, dtype=complex)
    for (i, j), c in q.terms.items():
        coeffs[i] += float(c) * m ** j
    return coeffs


def _fujiwara_bound(coeffs: np.ndarray) -> float:
    # coeffs[d] is the leading coefficient
    d = len(coeffs) - 1
    lead = abs(coeffs[d])
    best = 0.0
    for k in range(1, d + 1):
        a = abs(coeffs[d - k])
        if k == d:
            a = a / 2.0
        if a > 0:
            best = max(best, (a / lead) ** (1.0 / k))
    return 2.0 * best


def roots_in_l(p: LaurentBiPoly, m: complex, max_iter: int = 512) -> List[complex]:
    """All roots in l of the cleared polynomial at fixed m, with multiplicity.

    Simultaneous iteration from a deterministic configuration (roots of
    unity scaled by the Fujiwara bound), Newton-polished, then clustered:
    roots closer than CLUSTER_RADIUS are replaced by their centroid,
    repeated per cluster size.  Sorted by (re, im).
    """
    if not p:
        raise DegenerateError("zero polynomial")
    if m == 0:
        raise DomainError("m must be nonzero")
    coeffs = l_coefficients(p, m)
    scale = float(np.max(np.abs(coeffs)))
    if scale == 0.0:
        raise DegenerateError("polynomial vanishes identically at this m")
    d = len(coeffs) - 1
    if abs(coeffs[d]) <= 1e-12 * scale:
        raise DegenerateError("leading l-coefficient vanishes at this m")
    if d == 0:
        return []

    radius = _fujiwara_bound(coeffs)
    if radius == 0.0:
        return [0j] * d
    # 0.4 radian phase offset breaks the symmetry of real polynomials
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    powers = np.arange(d + 1)

    def val(zz):
        return np.polyval(coeffs[::-1], zz)

    def term_scale(zz):
        azz = np.abs(zz)[:, None]
        return np.max(np.abs(coeffs)[None, :] * azz ** powers[None, :], axis=1)

    converged = False
    for _ in range(max_iter):
        pv = val(z)
        if np.all(np.abs(pv) <= ROOT_RESID_REL * term_scale(z)):
            converged = True
            break
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = coeffs[d] * np.prod(diff, axis=1)
        z = z - pv / denom
    if not converged:
        pv = val(z)
        if not np.all(np.abs(pv) <= ROOT_RESID_REL * term_scale(z)):
            raise NonConvergence("root iteration did not converge")

    # Newton polish; stop when the residual no longer improves
    dcoeffs = coeffs[1:] * np.arange(1, d + 1)
    for _ in range(8):
        pv = val(z)
        dv = np.polyval(dcoeffs[::-1], z)
        step = np.where(dv != 0, pv / np.where(dv != 0, dv, 1), 0)
        z_new = z - step
        better = np.abs(val(z_new)) < np.abs(pv)
        z = np.where(better, z_new, z)
        if not np.any(better):
            break

    # real coefficient vectors have conjugate-symmetric roots; snap the
    # stragglers onto the axis so downstream [0, 2pi) arg conventions do
    # not flip on sub-epsilon imaginary noise
    if np.all(coeffs.imag == 0.0):
        near_real = np.abs(z.imag) <= REAL_SNAP_REL * (1.0 + np.abs(z))
        z = np.where(near_real, z.real + 0j, z)

    order = np.lexsort((z.imag, z.real))
    z = z[order]
    # cluster for multiplicity
    clusters: List[List[complex]] = []
    for root in z:
        for cl in clusters:
            if abs(root - np.mean(cl)) < CLUSTER_RADIUS:
                cl.append(root)
                break
        else:
            clusters.append([root])
    out: List[complex] = []
    for cl in clusters:
        centroid = complex(np.mean(cl))
        out.extend([centroid] * len(cl))
    out.sort(key=lambda r: (r.real, r.imag))
    return out
