"""One-variable analytic functions and zero extraction on closed discs.

Three closed classes of functions are supported: polynomials, rational
functions, and exponential polynomials sum_j p_j(z) exp(lambda_j z) with
Gaussian-rational lambda_j.  All symbolic arithmetic (sums, products,
derivatives, Wronskians) is exact; floating point appears only at
evaluation time and in located zeros.

Zero extraction is dual-path.  Polynomial (and rational-numerator) zeros
come from companion-matrix eigenvalues of the exact square-free factors,
with Yun's algorithm supplying multiplicities.  Exponential polynomials go
through the argument principle: a certified circle winding for the total
count and recursive rectangle subdivision for locations.  Every divisor is
cross-checked against an independently computed outer winding.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BudgetExceededError,
    CertificationError,
    DegenerateInputError,
    ExactEvalUnavailableError,
    UnsupportedOperationError,
)
from .scalars import GaussianRational, parse_gaussian

COEFF_BUDGET = 10 ** 4  # max stored coefficients in any expansion


def _check_budget(size: int, what: str):
    if size > COEFF_BUDGET:
        raise BudgetExceededError(
            f"{what} would need {size} coefficients (budget {COEFF_BUDGET})")


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q(i)
# ---------------------------------------------------------------------------

class Poly1:
    """Univariate polynomial, coefficients ascending, trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [GaussianRational.coerce(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def constant(c) -> "Poly1":
        return Poly1([GaussianRational.coerce(c)])

    @staticmethod
    def zero() -> "Poly1":
        return Poly1([])

    @staticmethod
    def identity() -> "Poly1":
        return Poly1([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> GaussianRational:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "Poly1") -> "Poly1":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly1(out)

    def __neg__(self) -> "Poly1":
        return Poly1([-c for c in self.coeffs])

    def __sub__(self, other: "Poly1") -> "Poly1":
        return self + (-other)

    def __mul__(self, other: "Poly1") -> "Poly1":
        if self.is_zero() or other.is_zero():
            return Poly1.zero()
        _check_budget(len(self.coeffs) + len(other.coeffs) - 1,
                      "polynomial product")
        out = [GaussianRational(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly1(out)

    def scale(self, c) -> "Poly1":
        c = GaussianRational.coerce(c)
        return Poly1([a * c for a in self.coeffs])

    def __pow__(self, k: int) -> "Poly1":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = Poly1.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            if k > 1:
                base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly1):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def derivative(self) -> "Poly1":
        return Poly1([c * k for k, c in enumerate(self.coeffs) if k >= 1])

    def divmod(self, other: "Poly1") -> Tuple["Poly1", "Poly1"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        db = other.degree
        if self.degree < db:
            return Poly1.zero(), self
        rem = list(self.coeffs)
        lead = other.leading()
        quot = [GaussianRational(0)] * (self.degree - db + 1)
        for k in range(self.degree - db, -1, -1):
            c = rem[k + db]
            if c.is_zero():
                continue
            factor = c / lead
            quot[k] = factor
            for j, b in enumerate(other.coeffs):
                rem[k + j] = rem[k + j] - factor * b
        return Poly1(quot), Poly1(rem[:db])

    def __floordiv__(self, other: "Poly1") -> "Poly1":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly1") -> "Poly1":
        return self.divmod(other)[1]

    def monic(self) -> "Poly1":
        if self.is_zero():
            return self
        lead = self.leading()
        return Poly1([c / lead for c in self.coeffs])

    def eval_exact(self, z: GaussianRational) -> GaussianRational:
        total = GaussianRational(0)
        for c in reversed(self.coeffs):
            total = total * z + c
        return total

    def eval_complex(self, z: complex) -> complex:
        total = 0j
        for c in reversed(self.coeffs):
            total = total * z + c.to_complex()
        return total

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(f"{c}")
            elif k == 1:
                parts.append(f"({c})*z")
            else:
                parts.append(f"({c})*z^{k}")
        return " + ".join(parts)

    __repr__ = __str__


def poly_gcd(a: Poly1, b: Poly1) -> Poly1:
    """Monic gcd over Q(i) by the Euclidean algorithm."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_decomposition(f: Poly1) -> List[Tuple[Poly1, int]]:
    """Yun's algorithm: f = lc * prod a_i^i with the a_i squarefree, coprime."""
    if f.is_zero():
        raise DegenerateInputError("squarefree decomposition of 0")
    if f.degree == 0:
        return []
    f = f.monic()
    d = poly_gcd(f, f.derivative())
    b = f // d
    c = f.derivative() // d
    out: List[Tuple[Poly1, int]] = []
    i = 1
    while b.degree > 0:
        if i > f.degree + 1:
            raise RuntimeError("squarefree decomposition failed to terminate")
        e = c - b.derivative()
        a = poly_gcd(b, e)
        if a.degree > 0:
            out.append((a.monic(), i))
        b = b // a
        c = e // a
        i += 1
    return out


# ---------------------------------------------------------------------------
# the three variants behind AnalyticFunction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Rational:
    num: Poly1
    den: Poly1


def _reduce_rational(num: Poly1, den: Poly1) -> Tuple[Poly1, Poly1]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return Poly1.zero(), Poly1.constant(1)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num // g, den // g
    lead = den.leading()
    return num.scale(GaussianRational(1) / lead), den.monic()


def _lambda_key(lam: GaussianRational):
    return (lam.re, lam.im)


class AnalyticFunction:
    """Polynomial, rational, or exponential-polynomial function of one variable.

    Construct through the classmethods; arithmetic promotes variants as
    needed and demotes results to the simplest faithful representation.
    A rational function may not be combined with a genuine exponential
    polynomial.
    """

    __slots__ = ("kind", "data")

    def __init__(self, kind: str, data):
        self.kind = kind  # "poly" | "rational" | "exppoly"
        self.data = data

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_poly(p: Poly1) -> "AnalyticFunction":
        return AnalyticFunction("poly", p)

    @staticmethod
    def constant(c) -> "AnalyticFunction":
        return AnalyticFunction("poly", Poly1.constant(c))

    @staticmethod
    def identity() -> "AnalyticFunction":
        return AnalyticFunction("poly", Poly1.identity())

    @staticmethod
    def rational(num: Poly1, den: Poly1) -> "AnalyticFunction":
        num, den = _reduce_rational(num, den)
        if den.degree == 0:
            return AnalyticFunction("poly", num)
        return AnalyticFunction("rational", _Rational(num, den))

    @staticmethod
    def exppoly(terms: Dict[GaussianRational, Poly1]) -> "AnalyticFunction":
        clean = {lam: p for lam, p in terms.items() if not p.is_zero()}
        _check_budget(sum(len(p.coeffs) for p in clean.values()),
                      "exponential polynomial")
        zero_lam = GaussianRational(0)
        if not clean:
            return AnalyticFunction("poly", Poly1.zero())
        if set(clean) == {zero_lam}:
            return AnalyticFunction("poly", clean[zero_lam])
        return AnalyticFunction("exppoly", clean)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        if self.kind == "poly":
            return self.data.is_zero()
        if self.kind == "rational":
            return self.data.num.is_zero()
        return not self.data

    def is_constant(self) -> bool:
        return self.kind == "poly" and self.data.is_constant()

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError("not a constant function")
        p: Poly1 = self.data
        return p.coeffs[0] if p.coeffs else GaussianRational(0)

    # -- arithmetic ----------------------------------------------------------

    def _as_exppoly(self) -> Dict[GaussianRational, Poly1]:
        if self.kind == "poly":
            if self.data.is_zero():
                return {}
            return {GaussianRational(0): self.data}
        if self.kind == "exppoly":
            return dict(self.data)
        raise UnsupportedOperationError(
            "cannot combine a rational function with an exponential polynomial")

    def __add__(self, other: "AnalyticFunction") -> "AnalyticFunction":
        other = _coerce_fn(other)
        if "exppoly" in (self.kind, other.kind):
            terms = self._as_exppoly()
            for lam, p in other._as_exppoly().items():
                terms[lam] = terms.get(lam, Poly1.zero()) + p
            return AnalyticFunction.exppoly(terms)
        n1, d1 = self._as_fraction()
        n2, d2 = other._as_fraction()
        return AnalyticFunction.rational(n1 * d2 + n2 * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self) -> "AnalyticFunction":
        if self.kind == "poly":
            return AnalyticFunction("poly", -self.data)
        if self.kind == "rational":
            return AnalyticFunction("rational",
                                    _Rational(-self.data.num, self.data.den))
        return AnalyticFunction("exppoly",
                                {lam: -p for lam, p in self.data.items()})

    def __sub__(self, other):
        return self + (-_coerce_fn(other))

    def __rsub__(self, other):
        return _coerce_fn(other) + (-self)

    def _as_fraction(self) -> Tuple[Poly1, Poly1]:
        if self.kind == "poly":
            return self.data, Poly1.constant(1)
        if self.kind == "rational":
            return self.data.num, self.data.den
        raise UnsupportedOperationError(
            "cannot combine a rational function with an exponential polynomial")

    def __mul__(self, other) -> "AnalyticFunction":
        other = _coerce_fn(other)
        if "exppoly" in (self.kind, other.kind):
            terms: Dict[GaussianRational, Poly1] = {}
            for l1, p1 in self._as_exppoly().items():
                for l2, p2 in other._as_exppoly().items():
                    lam = l1 + l2
                    terms[lam] = terms.get(lam, Poly1.zero()) + p1 * p2
            return AnalyticFunction.exppoly(terms)
        n1, d1 = self._as_fraction()
        n2, d2 = other._as_fraction()
        return AnalyticFunction.rational(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "AnalyticFunction":
        other = _coerce_fn(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        if other.kind == "exppoly":
            raise UnsupportedOperationError(
                "division by an exponential polynomial")
        n2, d2 = other._as_fraction()
        if self.kind == "exppoly":
            if not n2.is_constant():
                raise UnsupportedOperationError(
                    "exponential polynomial divided by a non-constant")
            factor = (GaussianRational(1) / n2.coeffs[0])
            scaled = {lam: (p * d2).scale(factor)
                      for lam, p in self.data.items()}
            return AnalyticFunction.exppoly(scaled)
        n1, d1 = self._as_fraction()
        return AnalyticFunction.rational(n1 * d2, d1 * n2)

    def __pow__(self, k: int) -> "AnalyticFunction":
        if k < 0:
            if self.kind == "exppoly":
                raise UnsupportedOperationError(
                    "negative power of an exponential polynomial")
            n, d = self._as_fraction()
            return AnalyticFunction.rational(d, n) ** (-k)
        result = AnalyticFunction.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            if k > 1:
                base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, AnalyticFunction):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except UnsupportedOperationError:
            # a true rational function never equals a true exponential sum
            return False

    __hash__ = None

    # -- calculus ---------------------------------------------------------

    def derivative(self) -> "AnalyticFunction":
        if self.kind == "poly":
            return AnalyticFunction("poly", self.data.derivative())
        if self.kind == "rational":
            n, d = self.data.num, self.data.den
            return AnalyticFunction.rational(
                n.derivative() * d - n * d.derivative(), d * d)
        terms = {}
        for lam, p in self.data.items():
            terms[lam] = p.derivative() + p.scale(lam)
        return AnalyticFunction.exppoly(terms)

    # -- evaluation ---------------------------------------------------------

    def eval_exact(self, z: GaussianRational) -> GaussianRational:
        """Exact value at a Gaussian-rational point (poly/rational only)."""
        if self.kind == "poly":
            return self.data.eval_exact(z)
        if self.kind == "rational":
            den = self.data.den.eval_exact(z)
            if den.is_zero():
                raise ZeroDivisionError(f"pole at sample point {z}")
            return self.data.num.eval_exact(z) / den
        raise ExactEvalUnavailableError(
            "exponential polynomials have no exact rational evaluation")

    def eval_scaled(self, z: complex) -> Tuple[complex, float]:
        """Return (w, s) with value = w * exp(s); keeps huge moduli finite."""
        z = complex(z)
        if self.kind == "poly":
            return self.data.eval_complex(z), 0.0
        if self.kind == "rational":
            den = self.data.den.eval_complex(z)
            if den == 0:
                raise ZeroDivisionError(f"pole at evaluation point {z}")
            return self.data.num.eval_complex(z) / den, 0.0
        scale = max((lam.to_complex() * z).real for lam in self.data)
        total = 0j
        for lam, p in self.data.items():
            total += p.eval_complex(z) * cmath.exp(lam.to_complex() * z - scale)
        return total, scale

    def eval_complex(self, z: complex) -> complex:
        w, s = self.eval_scaled(z)
        if s == 0.0 or w == 0:
            return w
        if s < -700:
            return 0j
        if s > 700:
            raise OverflowError(
                f"value at {z} exceeds double range; use eval_scaled/log_abs")
        return w * math.exp(s)

    def log_abs(self, z: complex) -> float:
        """log |f(z)|, stable for exponentially large values; -inf at zeros."""
        w, s = self.eval_scaled(z)
        if w == 0:
            return -math.inf
        return math.log(abs(w)) + s

    def __str__(self):
        if self.kind == "poly":
            return str(self.data)
        if self.kind == "rational":
            return f"({self.data.num})/({self.data.den})"
        parts = [f"({p})*exp(({lam})*z)"
                 for lam, p in sorted(self.data.items(),
                                      key=lambda kv: _lambda_key(kv[0]))]
        return " + ".join(parts)

    __repr__ = __str__


def _coerce_fn(value) -> AnalyticFunction:
    if isinstance(value, AnalyticFunction):
        return value
    if isinstance(value, (int, Fraction, GaussianRational)):
        return AnalyticFunction.constant(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to AnalyticFunction")


def derivative(f: AnalyticFunction, order: int = 1) -> AnalyticFunction:
    for _ in range(order):
        f = f.derivative()
    return f


def wronskian(components: Sequence[AnalyticFunction]) -> AnalyticFunction:
    """Wronskian determinant of the component tuple, computed symbolically."""
    k = len(components)
    rows = [list(components)]
    for _ in range(k - 1):
        rows.append([f.derivative() for f in rows[-1]])

    def minor(r: int, cols: Tuple[int, ...]) -> AnalyticFunction:
        if len(cols) == 1:
            return rows[r][cols[0]]
        total = AnalyticFunction.constant(0)
        for pos, c in enumerate(cols):
            rest = cols[:pos] + cols[pos + 1:]
            term = rows[r][c] * minor(r + 1, rest)
            total = total + (term if pos % 2 == 0 else -term)
        return total

    return minor(0, tuple(range(k)))


# ---------------------------------------------------------------------------
# curves
# ---------------------------------------------------------------------------

@dataclass
class Curve:
    """A holomorphic map into projective space, given by global components.

    domain_radius is math.inf for maps from the plane, else the radius of
    the source disc.
    """

    components: Tuple[AnalyticFunction, ...]
    domain_radius: float = math.inf

    def __post_init__(self):
        comps = tuple(self.components)
        if len(comps) < 2:
            raise DegenerateInputError("a curve needs at least two components")
        if all(f.is_zero() for f in comps):
            raise DegenerateInputError("all curve components are zero")
        object.__setattr__(self, "components", comps)

    @property
    def ambient_dim(self) -> int:
        return len(self.components) - 1

    def log_norm(self, z: complex) -> float:
        """log ||f(z)|| with the Euclidean norm, computed in the log domain."""
        logs = []
        for f in self.components:
            la = f.log_abs(z)
            if la != -math.inf:
                logs.append(2.0 * la)
        if not logs:
            raise DegenerateInputError(
                f"all components vanish at z = {z}; representation not reduced")
        m = max(logs)
        return 0.5 * (m + math.log(sum(math.exp(v - m) for v in logs)))

    def wronskian(self) -> AnalyticFunction:
        return wronskian(self.components)


# ---------------------------------------------------------------------------
# winding numbers
# ---------------------------------------------------------------------------

_TINY = 1e-280


def _scaled_ratio(num: Tuple[complex, float], den: Tuple[complex, float]) -> complex:
    (wn, sn), (wd, sd) = num, den
    if wd == 0:
        raise ZeroDivisionError("ratio with zero denominator")
    shift = sn - sd
    if shift > 700:
        raise OverflowError("ratio overflow")
    return (wn / wd) * math.exp(shift) if shift != 0 else wn / wd

def winding_circle(f: AnalyticFunction, t: float,
                   max_nodes: int = 2 ** 18) -> Tuple[int, int]:
    """Certified winding of f around |z| = t by the argument principle.

    Trapezoid sums of f'(z) z / f(z), doubling nodes from 64 until two
    successive node counts round to the same integer with residual < 0.25.
    Returns (count, nodes_used); raises CertificationError at the cap.
    """
    fp = f.derivative()
    nodes = 64
    prev: Optional[int] = None
    while nodes <= max_nodes:
        total = 0j
        ok = True
        for m in range(nodes):
            z = t * cmath.exp(2j * cmath.pi * m / nodes)
            wf = f.eval_scaled(z)
            if abs(wf[0]) < _TINY:
                ok = False
                break
            total += _scaled_ratio(fp.eval_scaled(z), wf) * z
        if ok:
            w = total / nodes
            k = round(w.real)
            if prev == k and abs(w - k) < 0.25:
                return k, nodes
            prev = k
        else:
            prev = None
        nodes *= 2
    raise CertificationError(
        f"winding on |z| = {t} failed to certify within {max_nodes} nodes")


class _BoundaryHit(Exception):
    """A zero sits on or too close to a tentative contour."""


def _phase_speed_ok(f: AnalyticFunction, fp: AnalyticFunction,
                    a: complex, b: complex) -> bool:
    """Check that |f'/f| along [a, b] cannot hide a full phase turn.

    A wrapped phase step is only trustworthy when the true variation is
    below pi; five samples of the logarithmic derivative bound it.  Misses
    here cannot survive to the final divisor because totals are re-checked
    against small-circle counts.
    """
    length = abs(b - a)
    worst = 0.0
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        z = a + (b - a) * frac
        try:
            g = _scaled_ratio(fp.eval_scaled(z), f.eval_scaled(z))
        except ZeroDivisionError:
            raise _BoundaryHit(z)
        except OverflowError:
            return False
        worst = max(worst, abs(g))
    return worst * length <= 1.5


def _arg_variation(f: AnalyticFunction, fp: AnalyticFunction,
                   a: complex, b: complex, depth: int = 0) -> float:
    """Continuous argument change of f along [a, b] by adaptive bisection."""
    wa, _ = f.eval_scaled(a)
    wb, _ = f.eval_scaled(b)
    if abs(wa) < _TINY or abs(wb) < _TINY:
        raise _BoundaryHit(a if abs(wa) < _TINY else b)
    step = cmath.phase(wb / wa)
    if abs(step) <= 0.5 * math.pi / 2 and _phase_speed_ok(f, fp, a, b):
        return step
    if depth >= 52:
        raise _BoundaryHit(a)
    mid = (a + b) / 2
    return (_arg_variation(f, fp, a, mid, depth + 1)
            + _arg_variation(f, fp, mid, b, depth + 1))


def _winding_rect(f: AnalyticFunction, fp: AnalyticFunction,
                  x0: float, x1: float, y0: float, y1: float) -> int:
    corners = [complex(x0, y0), complex(x1, y0), complex(x1, y1),
               complex(x0, y1), complex(x0, y0)]
    total = 0.0
    for a, b in zip(corners, corners[1:]):
        total += _arg_variation(f, fp, a, b)
    w = total / (2 * math.pi)
    k = round(w)
    if abs(w - k) > 0.25:
        raise _BoundaryHit(complex(x0, y0))
    return k


_SPLIT_LADDER = (0.5, 0.52, 0.47, 0.55, 0.43, 0.58)

_CELL_FLOOR = 1e-7


def _newton_polish(f: AnalyticFunction, fp: AnalyticFunction,
                   z: complex, cell: float) -> Optional[complex]:
    start = z
    for _ in range(60):
        wf, sf = f.eval_scaled(z)
        wp, sp = fp.eval_scaled(z)
        if wp == 0:
            return None
        step = (wf / wp) * math.exp(min(sf - sp, 700.0))
        z = z - step
        if abs(z - start) > 4 * cell:
            return None
        if abs(step) < 1e-13 * max(1.0, abs(z)):
            return z
    return None


def _subdivide(f: AnalyticFunction, fp: AnalyticFunction,
               x0: float, x1: float, y0: float, y1: float,
               budget: List[int], depth: int = 0
               ) -> List[Tuple[complex, int, bool]]:
    """Locate all zeros in the rectangle; entries are (z, mult, polished).

    Raises _BoundaryHit when a zero sits on this rectangle's boundary;
    the caller then moves its split line and tries again.
    """
    budget[0] -= 1
    if budget[0] <= 0 or depth > 96:
        raise CertificationError("subdivision budget exhausted")
    w = _winding_rect(f, fp, x0, x1, y0, y1)
    if w == 0:
        return []
    size = max(x1 - x0, y1 - y0)
    center = complex((x0 + x1) / 2, (y0 + y1) / 2)
    if w == 1:
        z = _newton_polish(f, fp, center, size)
        if z is not None and x0 <= z.real <= x1 and y0 <= z.imag <= y1:
            return [(z, 1, True)]
    if size < _CELL_FLOOR:
        return [(center, w, False)]
    for frac in _SPLIT_LADDER:
        xm = x0 + (x1 - x0) * frac
        ym = y0 + (y1 - y0) * frac
        quads = [(x0, xm, y0, ym), (xm, x1, y0, ym),
                 (x0, xm, ym, y1), (xm, x1, ym, y1)]
        try:
            out: List[Tuple[complex, int, bool]] = []
            for q in quads:
                out.extend(_subdivide(f, fp, *q, budget=budget,
                                      depth=depth + 1))
        except _BoundaryHit:
            continue  # a zero sat on this split cross; move the cross
        if sum(m for _, m, _ in out) != w:
            raise CertificationError(
                f"child windings disagree with parent count {w}")
        return out
    raise CertificationError("split ladder exhausted; zeros pin every cross")


# ---------------------------------------------------------------------------
# divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Divisor:
    """Zeros of a function in a closed disc, with multiplicities.

    points are sorted by (modulus, argument).  radius is the effective
    contour radius (nudged outward when a zero fell within 1e-9 of the
    requested circle).  residual_count_check is the total from an
    independent outer-winding computation and always equals the sum of
    multiplicities.
    """

    points: Tuple[Tuple[complex, int], ...]
    radius: float
    nudged: bool
    residual_count_check: int

    def total(self, kind_cap: Optional[int] = None) -> int:
        if kind_cap is None:
            return sum(m for _, m in self.points)
        return sum(min(m, kind_cap) for _, m in self.points)

    def __iter__(self):
        return iter(self.points)


def _sort_points(points: List[Tuple[complex, int]]) -> Tuple[Tuple[complex, int], ...]:
    return tuple(sorted(points,
                        key=lambda pm: (round(abs(pm[0]), 12),
                                        round(cmath.phase(pm[0]) % (2 * math.pi), 12))))


def _poly_zeros(p: Poly1) -> List[Tuple[complex, int]]:
    out: List[Tuple[complex, int]] = []
    for factor, mult in squarefree_decomposition(p):
        coeffs = [c.to_complex() for c in reversed(factor.coeffs)]
        roots = np.roots(coeffs) if len(coeffs) > 1 else []
        fp = factor.derivative()
        for r in roots:
            z = complex(r)
            for _ in range(3):
                d = fp.eval_complex(z)
                if d == 0:
                    break
                z = z - factor.eval_complex(z) / d
            out.append((z, mult))
    return out


def zeros_in_disc(f: AnalyticFunction, t: float,
                  force_winding: bool = False,
                  max_nodes: int = 2 ** 18) -> Divisor:
    """Divisor of zeros of f in the closed disc |z| <= t.

    Rational functions contribute the zeros of their reduced numerator.
    The winding path can be forced for cross-checking the algebraic path.
    """
    if f.is_zero():
        raise DegenerateInputError("zero function has no zero divisor")
    if t <= 0:
        raise ValueError("disc radius must be positive")

    if f.kind == "rational":
        core = AnalyticFunction.from_poly(f.data.num)
    else:
        core = f

    if core.kind == "poly" and not force_winding:
        return _zeros_polynomial_path(core, t, max_nodes)
    return _zeros_winding_path(core, t, max_nodes)


def _zeros_polynomial_path(f: AnalyticFunction, t: float,
                           max_nodes: int) -> Divisor:
    p: Poly1 = f.data
    if p.degree == 0:
        return Divisor((), t, False, 0)
    all_zeros = _poly_zeros(p)
    t_eff, nudged = t, False
    if any(abs(abs(z) - t_eff) < 1e-9 for z, _ in all_zeros):
        t_eff += 1e-8
        nudged = True
    inside = [(z, m) for z, m in all_zeros if abs(z) <= t_eff]
    check, _ = winding_circle(f, t_eff, max_nodes)
    total = sum(m for _, m in inside)
    if check != total:
        raise CertificationError(
            f"polynomial zero count {total} disagrees with winding {check}")
    return Divisor(_sort_points(inside), t_eff, nudged, check)


def _zeros_winding_path(f: AnalyticFunction, t: float,
                        max_nodes: int) -> Divisor:
    fp = f.derivative()

    budget = [200000]
    box = t * (1 + 1e-6) + 2e-8
    located: Optional[List[Tuple[complex, int, bool]]] = None
    last_error: Optional[Exception] = None
    for margin in (0.0, 3e-4, 7e-4):
        try:
            located = _subdivide(f, fp, -box - margin, box + margin * 1.7,
                                 -box - margin * 1.3, box + margin * 0.7,
                                 budget=budget)
            break
        except (_BoundaryHit, CertificationError) as err:
            last_error = err
    if located is None:
        raise CertificationError(
            f"rectangle subdivision could not isolate the zeros: {last_error}")

    t_eff, nudged = t, False
    if any(abs(abs(z) - t) < 1e-9 for z, _, _ in located):
        t_eff += 1e-8
        nudged = True
    count, _ = winding_circle(f, t_eff, max_nodes)
    inside = [(z, m, p) for z, m, p in located if abs(z) <= t_eff]
    _verify_multiplicities(f, inside, max_nodes)
    total = sum(m for _, m, _ in inside)
    if total != count:
        raise CertificationError(
            f"located multiplicity total {total} != outer winding {count}")
    return Divisor(_sort_points([(z, m) for z, m, _ in inside]),
                   t_eff, nudged, count)


def _verify_multiplicities(f: AnalyticFunction,
                           points: List[Tuple[complex, int, bool]],
                           max_nodes: int):
    """Check each located zero by winding on a small centred circle.

    The circle must dominate the location error: polished (Newton) zeros
    are good to ~1e-13, cluster centres only to the cell floor.
    """
    for i, (z, m, polished) in enumerate(points):
        dist = min((abs(z - w) for j, (w, _, _) in enumerate(points) if j != i),
                   default=1.0)
        floor = 1e-8 if polished else 3 * _CELL_FLOOR
        rho = max(floor, min(1e-4, 0.25 * dist))
        shifted = _shift_function(f, z)
        k, _ = winding_circle(shifted, rho, max_nodes)
        if k != m:
            raise CertificationError(
                f"multiplicity at {z}: located {m}, small circle gives {k}")


def _shift_function(f: AnalyticFunction, z0: complex) -> AnalyticFunction:
    """Wrap f as g(w) = f(w + z0) for winding around a located zero.

    The shift is numeric, so g is represented by closures rather than a
    symbolic variant.
    """

    class _Shifted:
        kind = "numeric"

        def __init__(self, base):
            self.base = base

        def eval_scaled(self, w):
            return self.base.eval_scaled(w + z0)

        def derivative(self):
            return _Shifted(self.base.derivative())

    return _Shifted(f)  # duck-typed for winding_circle


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------

def _split_top_level(text: str) -> List[Tuple[int, str]]:
    out = []
    depth = 0
    sign = 1
    current: List[str] = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if depth == 0 and ch in "+-":
            if not any(c.strip() for c in current):
                if ch == "-":
                    sign = -sign
                current = []
                continue
            if current[-1] not in "*^(":
                chunk = "".join(current).strip()
                if chunk:
                    out.append((sign, chunk))
                sign = 1 if ch == "+" else -1
                current = []
                continue
        current.append(ch)
    if depth:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    chunk = "".join(current).strip()
    if chunk:
        out.append((sign, chunk))
    return out


def _parse_poly1(text: str) -> Poly1:
    """Parse "1 - 2*z^3" style literals in the variable z."""
    chunks = _split_top_level(text)
    if not chunks:
        raise ValueError(f"empty polynomial literal {text!r}")
    coeffs: Dict[int, GaussianRational] = {}
    for sign, chunk in chunks:
        coeff = GaussianRational(sign)
        power = 0
        for factor in (p.strip() for p in chunk.split("*")):
            if not factor:
                raise ValueError(f"empty factor in {chunk!r}")
            if factor.startswith("(") and factor.endswith(")"):
                inner = factor[1:-1]
                coeff = coeff * parse_gaussian(inner)
                continue
            if factor == "i":
                coeff = coeff * GaussianRational(0, 1)
                continue
            if factor.startswith("z"):
                rest = factor[1:]
                if rest == "":
                    power += 1
                elif rest.startswith("^") and rest[1:].isdigit():
                    power += int(rest[1:])
                else:
                    raise ValueError(f"cannot parse factor {factor!r}")
                continue
            coeff = coeff * parse_gaussian(factor)
        acc = coeffs.get(power, GaussianRational(0)) + coeff
        coeffs[power] = acc
    top = max(coeffs) if coeffs else 0
    return Poly1([coeffs.get(k, GaussianRational(0)) for k in range(top + 1)])


def _parse_exp_argument(text: str) -> GaussianRational:
    body = text.strip()
    if body in ("0", "(0)"):
        return GaussianRational(0)
    if body == "z":
        return GaussianRational(1)
    if body == "-z":
        return GaussianRational(-1)
    if body.endswith("*z"):
        head = body[:-2].strip()
        if head.startswith("(") and head.endswith(")"):
            head = head[1:-1]
        return parse_gaussian(head)
    raise ValueError(f"cannot parse exponent argument {text!r}")


def _parse_exp_term(chunk: str) -> Tuple[GaussianRational, Poly1]:
    marker = chunk.rfind("*exp(")
    if marker < 0:
        if chunk.startswith("exp("):
            marker = 0
            poly_part = "1"
            exp_part = chunk
        else:
            return GaussianRational(0), _parse_poly1(chunk)
    else:
        poly_part = chunk[:marker].strip()
        exp_part = chunk[marker + 1:].strip()
    if not exp_part.startswith("exp(") or not exp_part.endswith(")"):
        raise ValueError(f"malformed exponential term {chunk!r}")
    lam = _parse_exp_argument(exp_part[4:-1])
    if poly_part.startswith("(") and poly_part.endswith(")"):
        poly_part = poly_part[1:-1]
    return lam, _parse_poly1(poly_part)


def parse_function(text: str) -> AnalyticFunction:
    """Parse a one-variable function literal.

    Accepted forms:
      "poly: 1 - 2*z^3"
      "rational: (1)/(1-z)"
      "exppoly: (1)*exp(0) + (z)*exp(2*z)"
      bare Gaussian-rational constants such as "3/2" or "-i".
    """
    text = text.strip()
    if text.startswith("poly:"):
        return AnalyticFunction.from_poly(_parse_poly1(text[5:].strip()))
    if text.startswith("rational:"):
        body = text[9:].strip()
        depth = 0
        split_at = -1
        for pos, ch in enumerate(body):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0:
                split_at = pos
                break
        if split_at < 0:
            raise ValueError(f"rational literal needs (num)/(den): {text!r}")
        num_text = body[:split_at].strip()
        den_text = body[split_at + 1:].strip()
        if not (num_text.startswith("(") and num_text.endswith(")")
                and den_text.startswith("(") and den_text.endswith(")")):
            raise ValueError(f"rational literal needs (num)/(den): {text!r}")
        return AnalyticFunction.rational(_parse_poly1(num_text[1:-1]),
                                         _parse_poly1(den_text[1:-1]))
    if text.startswith("exppoly:"):
        body = text[8:].strip()
        terms: Dict[GaussianRational, Poly1] = {}
        for sign, chunk in _split_top_level(body):
            lam, p = _parse_exp_term(chunk)
            if sign < 0:
                p = -p
            terms[lam] = terms.get(lam, Poly1.zero()) + p
        return AnalyticFunction.exppoly(terms)
    return AnalyticFunction.constant(parse_gaussian(text))
