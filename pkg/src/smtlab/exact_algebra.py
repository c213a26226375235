"""Homogeneous polynomials over Q(i) with a fixed grevlex order.

The graded reverse lexicographic order is the only monomial order used in
this package; every routine that needs "the" leading term, a deterministic
tiebreak, or a canonical listing of monomials goes through
:func:`grevlex_key`.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .scalars import GaussianRational, parse_gaussian


class Monomial(tuple):
    """Exponent tuple of a monomial; immutable and hashable."""

    def __new__(cls, exponents: Iterable[int]):
        exps = tuple(int(e) for e in exponents)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in monomial {exps}")
        return super().__new__(cls, exps)

    @property
    def degree(self) -> int:
        return sum(self)

    def mul(self, other: "Monomial") -> "Monomial":
        return Monomial(a + b for a, b in zip(self, other))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self, other))

    def quotient(self, other: "Monomial") -> "Monomial":
        """self / other; caller must ensure other divides self."""
        return Monomial(a - b for a, b in zip(self, other))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(max(a, b) for a, b in zip(self, other))

    def __str__(self):
        parts = []
        for i, e in enumerate(self):
            if e == 1:
                parts.append(f"x{i}")
            elif e > 1:
                parts.append(f"x{i}^{e}")
        return "*".join(parts) if parts else "1"


def grevlex_key(m: Sequence[int]):
    """Sort key realizing grevlex: ascending keys give ascending monomials.

    a > b in grevlex iff deg a > deg b, or degrees tie and the rightmost
    nonzero entry of a-b is negative; the latter is a lexicographic
    comparison of the negated reversed exponents.
    """
    return (sum(m), tuple(-e for e in reversed(m)))


def monomial_count(num_vars: int, degree: int) -> int:
    """Number of monomials of exact degree u in num_vars variables."""
    if degree < 0:
        return 0
    return math.comb(num_vars - 1 + degree, degree)


def monomials_of_degree(num_vars: int, degree: int) -> List[Monomial]:
    """All degree-u monomials in num_vars variables, grevlex-descending."""
    if num_vars < 1:
        raise ValueError("need at least one variable")
    out: List[Monomial] = []

    def rec(prefix, remaining, slot):
        if slot == num_vars - 1:
            out.append(Monomial(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, slot + 1)

    rec([], degree, 0)
    out.sort(key=grevlex_key, reverse=True)
    return out


class HomogPoly:
    """A homogeneous polynomial: sparse map from Monomial to GaussianRational.

    The zero polynomial keeps its declared degree so the grading survives
    arithmetic.  Zero coefficients are never stored.
    """

    __slots__ = ("num_vars", "degree", "terms")

    def __init__(self, num_vars: int, degree: int,
                 terms: Dict[Monomial, GaussianRational]):
        clean: Dict[Monomial, GaussianRational] = {}
        for mono, coeff in terms.items():
            if not isinstance(mono, Monomial):
                mono = Monomial(mono)
            if len(mono) != num_vars:
                raise ValueError(f"monomial {mono} has wrong arity")
            if mono.degree != degree:
                raise ValueError(
                    f"monomial {mono} has degree {mono.degree}, expected {degree}")
            coeff = GaussianRational.coerce(coeff)
            if not coeff.is_zero():
                clean[mono] = coeff
        self.num_vars = num_vars
        self.degree = degree
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero(num_vars: int, degree: int) -> "HomogPoly":
        return HomogPoly(num_vars, degree, {})

    @staticmethod
    def variable(num_vars: int, index: int) -> "HomogPoly":
        exps = [0] * num_vars
        exps[index] = 1
        return HomogPoly(num_vars, 1, {Monomial(exps): GaussianRational(1)})

    @staticmethod
    def monomial(num_vars: int, mono: Monomial, coeff=1) -> "HomogPoly":
        mono = Monomial(mono)
        return HomogPoly(num_vars, mono.degree,
                         {mono: GaussianRational.coerce(coeff)})

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=grevlex_key)

    def leading_coefficient(self) -> GaussianRational:
        return self.terms[self.leading_monomial()]

    def monic(self) -> "HomogPoly":
        if self.is_zero():
            return self
        lc = self.leading_coefficient()
        return HomogPoly(self.num_vars, self.degree,
                         {m: c / lc for m, c in self.terms.items()})

    # -- arithmetic ---------------------------------------------------------

    def _check_compatible(self, other: "HomogPoly"):
        if self.num_vars != other.num_vars:
            raise ValueError("mixed variable counts")
        if self.degree != other.degree:
            raise ValueError(
                f"cannot add homogeneous degrees {self.degree} and {other.degree}")

    def __add__(self, other: "HomogPoly") -> "HomogPoly":
        self._check_compatible(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono)
            coeff = coeff if acc is None else acc + coeff
            if coeff.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = coeff
        return HomogPoly(self.num_vars, self.degree, terms)

    def __neg__(self) -> "HomogPoly":
        return HomogPoly(self.num_vars, self.degree,
                         {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "HomogPoly") -> "HomogPoly":
        return self + (-other)

    def scale(self, coeff) -> "HomogPoly":
        coeff = GaussianRational.coerce(coeff)
        if coeff.is_zero():
            return HomogPoly.zero(self.num_vars, self.degree)
        return HomogPoly(self.num_vars, self.degree,
                         {m: c * coeff for m, c in self.terms.items()})

    def mul_monomial(self, mono: Monomial, coeff=1) -> "HomogPoly":
        coeff = GaussianRational.coerce(coeff)
        return HomogPoly(self.num_vars, self.degree + mono.degree,
                         {m.mul(mono): c * coeff for m, c in self.terms.items()})

    def __mul__(self, other: "HomogPoly") -> "HomogPoly":
        if self.num_vars != other.num_vars:
            raise ValueError("mixed variable counts")
        terms: Dict[Monomial, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = m1.mul(m2)
                prod = c1 * c2
                acc = terms.get(mono)
                prod = prod if acc is None else acc + prod
                if prod.is_zero():
                    terms.pop(mono, None)
                else:
                    terms[mono] = prod
        return HomogPoly(self.num_vars, self.degree + other.degree, terms)

    def __pow__(self, k: int) -> "HomogPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = HomogPoly(self.num_vars, 0,
                           {Monomial([0] * self.num_vars): GaussianRational(1)})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return (self.num_vars == other.num_vars and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.num_vars, self.degree, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=grevlex_key, reverse=True):
            coeff = self.terms[mono]
            body = str(mono)
            if body == "1":
                parts.append(str(coeff))
            elif coeff == GaussianRational(1):
                parts.append(body)
            else:
                parts.append(f"({coeff})*{body}")
        return " + ".join(parts)

    __repr__ = __str__


def poly_eval(poly: HomogPoly, point: Sequence) -> object:
    """Evaluate at a point; exact when every coordinate is GaussianRational.

    Any other numeric coordinates fall back to complex arithmetic.
    """
    if len(point) != poly.num_vars:
        raise ValueError("point arity mismatch")
    exact = all(isinstance(p, GaussianRational) for p in point)
    if exact:
        total = GaussianRational(0)
        for mono, coeff in poly.terms.items():
            value = coeff
            for base, e in zip(point, mono):
                if e:
                    value = value * base ** e
            total = total + value
        return total
    pt = [p.to_complex() if isinstance(p, GaussianRational) else complex(p)
          for p in point]
    total_c = 0j
    for mono, coeff in poly.terms.items():
        value_c = coeff.to_complex()
        for base, e in zip(pt, mono):
            if e:
                value_c *= base ** e
        total_c += value_c
    return total_c


def substitute_linear(poly: HomogPoly, matrix: Sequence[Sequence]) -> HomogPoly:
    """Apply x_i -> sum_j matrix[i][j] * x_j; preserves homogeneity."""
    n = poly.num_vars
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("matrix shape mismatch")
    images = []
    for row in matrix:
        terms = {}
        for j, entry in enumerate(row):
            entry = GaussianRational.coerce(entry)
            if not entry.is_zero():
                exps = [0] * n
                exps[j] = 1
                terms[Monomial(exps)] = entry
        images.append(HomogPoly(n, 1, terms))
    result = HomogPoly.zero(n, poly.degree)
    for mono, coeff in poly.terms.items():
        part = HomogPoly(n, 0, {Monomial([0] * n): coeff})
        for i, e in enumerate(mono):
            if e:
                part = part * images[i] ** e
        result = result + part
    return result


class WeightVector:
    """Non-negative rational weights, one per variable."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        vals = tuple(Fraction(e) for e in entries)
        if any(v < 0 for v in vals):
            raise ValueError("weight entries must be non-negative")
        self.entries = vals

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def dot(self, mono: Sequence[int]) -> Fraction:
        return sum((Fraction(e) * c for e, c in zip(mono, self.entries)),
                   Fraction(0))

    def total(self) -> Fraction:
        return sum(self.entries, Fraction(0))

    def max_entry(self) -> Fraction:
        return max(self.entries)

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self.entries == other.entries

    def __repr__(self):
        return f"WeightVector({list(self.entries)!r})"


class ExactEchelon:
    """Incremental Gaussian elimination over Q(i) on sparse dict vectors.

    Rows are kept with their pivot coefficient normalized to 1, pivots
    chosen as the largest key under ``keyfunc``, so the result of a
    reduction is canonical for a fixed insertion order.
    """

    def __init__(self, keyfunc: Callable = grevlex_key):
        self.keyfunc = keyfunc
        self.rows: Dict[object, Dict[object, GaussianRational]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Dict) -> Dict:
        v = {k: GaussianRational.coerce(c) for k, c in vec.items()
             if not GaussianRational.coerce(c).is_zero()}
        while v:
            pivot = max(v, key=self.keyfunc)
            row = self.rows.get(pivot)
            if row is None:
                break
            factor = v[pivot]
            for k, c in row.items():
                acc = v.get(k, GaussianRational(0)) - factor * c
                if acc.is_zero():
                    v.pop(k, None)
                else:
                    v[k] = acc
        return v

    def insert(self, vec: Dict) -> bool:
        """Reduce vec and store the residual; True iff vec was independent."""
        residual = self.reduce(vec)
        if not residual:
            return False
        pivot = max(residual, key=self.keyfunc)
        lead = residual[pivot]
        self.rows[pivot] = {k: c / lead for k, c in residual.items()}
        return True


def rank_of_vectors(vectors: Iterable[Dict], keyfunc: Callable = grevlex_key) -> int:
    ech = ExactEchelon(keyfunc)
    for v in vectors:
        ech.insert(v)
    return ech.rank


# ---------------------------------------------------------------------------
# polynomial literals
# ---------------------------------------------------------------------------

_VAR_RE = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_NUM_RE = re.compile(r"^(\d+(?:/\d+)?)(i?)$")


def _split_terms(text: str) -> List[Tuple[int, str]]:
    """Split on top-level +/- into (sign, chunk) pairs."""
    out = []
    depth = 0
    sign = 1
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ValueError(f"unbalanced parentheses in {text!r}")
        if depth == 0 and ch in "+-" and current and current[-1] not in "*^(":
            chunk = "".join(current).strip()
            if chunk:
                out.append((sign, chunk))
            sign = 1 if ch == "+" else -1
            current = []
            continue
        if depth == 0 and ch in "+-" and not any(c.strip() for c in current):
            if ch == "-":
                sign = -sign
            current = []
            continue
        current.append(ch)
    if depth != 0:
        raise ValueError(f"unbalanced parentheses in {text!r}")
    chunk = "".join(current).strip()
    if chunk:
        out.append((sign, chunk))
    return out


def _parse_term(chunk: str, num_vars: int):
    """One product of factors -> (Monomial, GaussianRational)."""
    coeff = GaussianRational(1)
    exps = [0] * num_vars
    for factor in (f.strip() for f in chunk.split("*")):
        if not factor:
            raise ValueError(f"empty factor in term {chunk!r}")
        if factor.startswith("(") and factor.endswith(")"):
            coeff = coeff * parse_gaussian(factor[1:-1])
            continue
        if factor == "i":
            coeff = coeff * GaussianRational(0, 1)
            continue
        m = _VAR_RE.match(factor)
        if m:
            idx = int(m.group(1))
            if idx >= num_vars:
                raise ValueError(
                    f"variable x{idx} out of range for {num_vars} variables")
            exps[idx] += int(m.group(2) or 1)
            continue
        m = _NUM_RE.match(factor)
        if m:
            value = GaussianRational(Fraction(m.group(1)))
            if m.group(2):
                value = value * GaussianRational(0, 1)
            coeff = coeff * value
            continue
        raise ValueError(f"cannot parse factor {factor!r}")
    return Monomial(exps), coeff


def parse_homog_poly(text: str, num_vars: int,
                     degree: Optional[int] = None) -> HomogPoly:
    """Parse literals like "3/2*x0^2*x1 - i*x2^3" into a HomogPoly.

    All terms must share one total degree; pass ``degree`` to fix the
    grading of an explicit zero polynomial ("0").
    """
    chunks = _split_terms(text)
    if not chunks:
        raise ValueError("empty polynomial literal")
    terms: Dict[Monomial, GaussianRational] = {}
    seen_degree = None
    for sign, chunk in chunks:
        mono, coeff = _parse_term(chunk, num_vars)
        if sign < 0:
            coeff = -coeff
        if coeff.is_zero():
            continue
        if seen_degree is None:
            seen_degree = mono.degree
        elif mono.degree != seen_degree:
            raise ValueError(
                f"literal {text!r} is not homogeneous: "
                f"degrees {seen_degree} and {mono.degree}")
        acc = terms.get(mono)
        coeff = coeff if acc is None else acc + coeff
        if coeff.is_zero():
            terms.pop(mono, None)
        else:
            terms[mono] = coeff
    if seen_degree is None:
        if degree is None:
            raise ValueError(f"cannot infer degree of zero literal {text!r}")
        seen_degree = degree
    if degree is not None and degree != seen_degree:
        raise ValueError(f"literal degree {seen_degree} != declared {degree}")
    return HomogPoly(num_vars, seen_degree, terms)
