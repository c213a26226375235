"""Nevanlinna functionals on discs: T, m, N, residuals, defects, margins.

The characteristic uses the circle-average (Cartan) form; it differs from
the area-integral definition by a bounded term that cancels in every ratio,
defect, and margin computed here.  Counting functions follow the stated
integral N(r) = int_{r0}^r (n(t) - n(0)) dt/t exactly: zeros at the origin
contribute nothing.  A strict-Jensen switch restores the classical
n(0) log(r/r0) term for users who want it; shipped scenarios avoid origin
zeros so the two agree there.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .analytic import AnalyticFunction, Curve, Divisor, wronskian, zeros_in_disc
from .errors import (
    CertificationError,
    DegenerateInputError,
    ValidationError,
)
from .hypersurfaces import HypersurfaceFamily, MovingHypersurface
from .exact_algebra import monomials_of_degree, rank_of_vectors
from .scalars import GaussianRational

_ORIGIN_TOL = 1e-12


@dataclass(frozen=True)
class RadialGrid:
    """Radii r0 < r_1 < ... < r_max < R used by every grid-valued report."""

    r0: float
    values: Tuple[float, ...]
    R: float = math.inf

    def __post_init__(self):
        if self.r0 <= 0:
            raise ValidationError("r0 must be positive")
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise ValidationError("grid needs at least one radius")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValidationError("grid radii must be strictly increasing")
        if vals[0] <= self.r0:
            raise ValidationError("grid must start above r0")
        if vals[-1] >= self.R:
            raise ValidationError("grid must stay inside the domain radius")
        object.__setattr__(self, "values", vals)

    @staticmethod
    def geometric(r_min: float = 2.0, r_max: float = 1e3, points: int = 40,
                  r0: float = 1.0) -> "RadialGrid":
        ratio = (r_max / r_min) ** (1.0 / (points - 1)) if points > 1 else 1.0
        vals = [r_min * ratio ** j for j in range(points)]
        vals[-1] = r_max
        return RadialGrid(r0, tuple(vals), math.inf)

    @staticmethod
    def finite(R: float, points: int = 20,
               r0: Optional[float] = None) -> "RadialGrid":
        vals = tuple(R * (1 - 2.0 ** (-j)) for j in range(1, points + 1))
        return RadialGrid(R / 4 if r0 is None else r0, vals, R)

    def top_decile(self) -> Tuple[int, ...]:
        """Indices of the last tenth of the grid (at least one point)."""
        count = max(1, len(self.values) // 10)
        return tuple(range(len(self.values) - count, len(self.values)))


def circle_average(fn: Callable[[complex], float], r: float,
                   tol: float = 1e-8, max_nodes: int = 2 ** 16
                   ) -> Tuple[float, int]:
    """Trapezoid average of fn over |z| = r, doubling nodes until stable.

    Periodic analytic integrands converge spectrally; integrands with
    corners (maxima of smooth families) still converge, just slower.
    """
    nodes = 64
    total = 0.0
    for m in range(nodes):
        total += fn(r * cmath.exp(2j * math.pi * m / nodes))
    prev = total / nodes
    while nodes < max_nodes:
        for m in range(nodes):
            total += fn(r * cmath.exp(2j * math.pi * (2 * m + 1)
                                      / (2 * nodes)))
        nodes *= 2
        cur = total / nodes
        if abs(cur - prev) <= tol:
            return cur, nodes
        prev = cur
    raise CertificationError(
        f"circle average on |z| = {r} did not reach tolerance {tol} "
        f"within {max_nodes} nodes")


def characteristic(curve: Curve, r: float, tol: float = 1e-8,
                   max_nodes: int = 2 ** 16) -> float:
    """T_f(r): circle average of log ||f|| minus its value at the origin."""
    if not 0 < r < curve.domain_radius:
        raise ValidationError(
            f"radius {r} outside the curve domain (R = {curve.domain_radius})")
    avg, _ = circle_average(curve.log_norm, r, tol, max_nodes)
    return avg - curve.log_norm(0j)


def counting(divisor: Divisor, grid: RadialGrid,
             k: Union[int, float] = math.inf,
             strict_origin: bool = False) -> List[float]:
    """N^[k](r) over the grid, exactly from the divisor's step structure."""
    if divisor.radius < grid.values[-1] - 1e-12:
        raise ValidationError(
            f"divisor valid to {divisor.radius}, grid reaches "
            f"{grid.values[-1]}")
    cap = None if k in (math.inf, None) else int(k)
    if cap is not None and cap < 1:
        raise ValidationError("truncation level must be >= 1")

    def trunc(m: int) -> int:
        return m if cap is None else min(cap, m)

    moduli = [(abs(z), trunc(m)) for z, m in divisor.points]
    n_origin = sum(t for a, t in moduli if a <= _ORIGIN_TOL)
    n_r0 = sum(t for a, t in moduli if a <= grid.r0)
    out: List[float] = []
    for r in grid.values:
        val = sum(t * math.log(r / a) for a, t in moduli
                  if grid.r0 < a <= r)
        base = n_r0 if strict_origin else n_r0 - n_origin
        out.append(val + base * math.log(r / grid.r0))
    return out


def proximity(curve: Curve, Q: MovingHypersurface, r: float,
              tol: float = 1e-8, max_nodes: int = 2 ** 16,
              divisor: Optional[Divisor] = None,
              composed: Optional[AnalyticFunction] = None) -> float:
    """m_f(r, Q): average of log(||f||^d ||Q(z)|| / |Q(f)(z)|).

    The exponent is d = deg Q, forced by degree homogeneity.  When the
    divisor of Q(f) is supplied, a zero within 1e-9 of the circle nudges
    r by +1e-8 (the quadrature cannot certify through a closer zero and
    fails loudly instead).
    """
    g = Q.compose(curve.components) if composed is None else composed
    if g.is_zero():
        raise DegenerateInputError("curve lies in the hypersurface")
    if divisor is not None and any(
            abs(abs(z) - r) < 1e-9 for z, _ in divisor.points):
        r = r + 1e-8
    d = Q.degree

    def integrand(z: complex) -> float:
        return (d * curve.log_norm(z) + math.log(Q.norm_at(z))
                - g.log_abs(z))

    avg, _ = circle_average(integrand, r, tol, max_nodes)
    return avg


def _divisor_with_pad(g: AnalyticFunction, r_max: float) -> Divisor:
    """Zeros of g in a disc slightly larger than the grid's reach."""
    last: Optional[Exception] = None
    for pad in (1.001, 1.0037, 1.0102):
        try:
            return zeros_in_disc(g, r_max * pad)
        except CertificationError as err:
            last = err
    raise CertificationError(
        f"could not certify a divisor beyond radius {r_max}: {last}")


def fmt_residual(curve: Curve, Q: MovingHypersurface, grid: RadialGrid,
                 tol: float = 1e-8) -> Tuple[List[float], float]:
    """Residuals d T - m - N over the grid and their spread.

    Requires Q(f)(0) != 0 and no zeros of Q(f) inside |z| <= r0, so the
    origin-dropping convention misses nothing and the residual must be
    flat up to quadrature error for fixed Q.
    """
    g = Q.compose(curve.components)
    if g.is_zero():
        raise DegenerateInputError("curve lies in the hypersurface")
    div = _divisor_with_pad(g, grid.values[-1])
    if any(abs(z) <= grid.r0 for z, _ in div.points):
        raise ValidationError(
            "zeros of Q(f) inside |z| <= r0; residual check inapplicable")
    if abs(g.eval_complex(0j)) == 0.0:
        raise ValidationError("Q(f) vanishes at the origin")
    d = Q.degree
    N = counting(div, grid, math.inf)
    residuals = []
    for i, r in enumerate(grid.values):
        T = characteristic(curve, r, tol)
        m = proximity(curve, Q, r, tol, divisor=div)
        residuals.append(d * T - m - N[i])
    return residuals, max(residuals) - min(residuals)


@dataclass(frozen=True)
class GrowthIndexEstimate:
    value: float
    interval: Tuple[float, float]
    mode: str


def growth_index_model(lam: float, R: float) -> GrowthIndexEstimate:
    """Exact index for the model profile T(r) = lam log(1/(R - r))."""
    if lam <= 0:
        raise ValidationError("model slope must be positive")
    if math.isinf(R):
        return GrowthIndexEstimate(0.0, (0.0, 0.0), "model")
    c = 1.0 / lam
    return GrowthIndexEstimate(c, (c, c), "model")


def growth_index_sampled(grid: RadialGrid,
                         T: Sequence[float]) -> GrowthIndexEstimate:
    """Index from sampled T: fit against log(1/(R-r)) on the top decile.

    Maps from the whole plane have index 0 for any nonconstant profile.
    """
    if len(T) != len(grid.values):
        raise ValidationError("one T value per grid radius required")
    if any(b - a < -1e-9 for a, b in zip(T, T[1:])):
        raise ValidationError("characteristic samples must be non-decreasing")
    if math.isinf(grid.R):
        return GrowthIndexEstimate(0.0, (0.0, 0.0), "sampled")
    idx = grid.top_decile()
    if len(idx) < 3:
        idx = tuple(range(max(0, len(T) - 3), len(T)))
    xs = [math.log(1.0 / (grid.R - grid.values[i])) for i in idx]
    ys = [T[i] for i in idx]
    n = len(xs)
    mx, my = sum(xs) / n, sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx <= 0:
        raise ValidationError("degenerate radii for the growth fit")
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx
    if slope <= 0:
        raise CertificationError("profile does not blow up; no estimate")
    resid = [y - (my + slope * (x - mx)) for x, y in zip(xs, ys)]
    rss = sum(e * e for e in resid)
    scale = sum((y - my) ** 2 for y in ys)
    if scale > 0 and rss > 0.01 * scale:
        raise CertificationError(
            "profile is not of logarithmic-blowup type; no estimate")
    se = math.sqrt(rss / max(1, n - 2) / sxx)
    lo = 1.0 / (slope + 2 * se)
    hi = 1.0 / max(slope - 2 * se, 1e-300)
    return GrowthIndexEstimate(1.0 / slope, (lo, hi), "sampled")


@dataclass(frozen=True)
class DefectEstimate:
    value: float
    tail: Tuple[Tuple[float, float], ...]
    k: Union[int, float]


def defect(curve: Curve, Q: MovingHypersurface, k: Union[int, float],
           grid: RadialGrid, tol: float = 1e-8,
           divisor: Optional[Divisor] = None,
           strict_origin: bool = False) -> DefectEstimate:
    """Truncated defect 1 - max of N^[k]/(d T) over the grid's top decile.

    A grid cannot realize a limsup; the last three raw ratios ride along
    so non-convergence stays visible.
    """
    g = Q.compose(curve.components)
    if g.is_zero():
        raise DegenerateInputError("curve lies in the hypersurface")
    div = _divisor_with_pad(g, grid.values[-1]) if divisor is None else divisor
    N = counting(div, grid, k, strict_origin)
    d = Q.degree
    ratios = []
    for i, r in enumerate(grid.values):
        T = characteristic(curve, r, tol)
        if T <= 0:
            raise ValidationError("characteristic must be positive on the grid")
        ratios.append(N[i] / (d * T))
    top = max(ratios[i] for i in grid.top_decile())
    tail = tuple((grid.values[i], ratios[i]) for i in range(len(ratios))[-3:])
    return DefectEstimate(1.0 - top, tail, k)


def _independent_tuples(hyperplanes: Sequence[MovingHypersurface],
                        size: int) -> List[Tuple[int, ...]]:
    degree_one = monomials_of_degree(hyperplanes[0].num_vars, 1)
    vectors = []
    for h in hyperplanes:
        snap = h.at(GaussianRational(0))
        vectors.append({m: snap.terms[m] for m in degree_one
                        if m in snap.terms})
    out = []
    for combo in combinations(range(len(hyperplanes)), size):
        if rank_of_vectors([vectors[j] for j in combo]) == size:
            out.append(combo)
    return out


def check_ru_sibony(curve: Curve, hyperplanes: Sequence[MovingHypersurface],
                    grid: RadialGrid, tol: float = 1e-8,
                    max_nodes: int = 2 ** 16) -> List[Tuple[float, float, float]]:
    """Margin rows (r, margin, T) for the hyperplane second main theorem.

    margin = (n+1) T - [avg over the circle of max_K sum_{j in K}
    log(||f|| ||H_j|| / |H_j(f)|) + N_W], K ranging over linearly
    independent (n+1)-subsets.  For maps from the plane the growth-index
    term vanishes and margin/T should sit above a small negative slack.
    """
    n = curve.ambient_dim
    for h in hyperplanes:
        if h.degree != 1:
            raise ValidationError("the hyperplane check needs degree-1 forms")
        if h.is_moving:
            raise ValidationError("moving hyperplanes are not supported here")
    W = wronskian(list(curve.components))
    if W.is_zero():
        raise DegenerateInputError(
            "curve is linearly degenerate (Wronskian vanishes identically)")
    composed = [h.compose(curve.components) for h in hyperplanes]
    for g, h in zip(composed, hyperplanes):
        if g.is_zero():
            raise DegenerateInputError("curve lies in a target hyperplane")
    norms = [h.norm_at(0j) for h in hyperplanes]
    tuples = (_independent_tuples(hyperplanes, n + 1)
              if len(hyperplanes) >= n + 1 else [])

    div_w = _divisor_with_pad(W, grid.values[-1])
    N_W = counting(div_w, grid, math.inf)

    def integrand(z: complex) -> float:
        if not tuples:
            return 0.0
        lf = curve.log_norm(z)
        terms = [lf + math.log(nm) - g.log_abs(z)
                 for nm, g in zip(norms, composed)]
        return max(sum(terms[j] for j in K) for K in tuples)

    rows = []
    for i, r in enumerate(grid.values):
        T = characteristic(curve, r, tol, max_nodes)
        avg, _ = circle_average(integrand, r, tol, max_nodes)
        margin = (n + 1) * T - (avg + N_W[i])
        rows.append((r, margin, T))
    return rows


@dataclass(frozen=True)
class NevanlinnaProfile:
    """Grid-sampled T with per-hypersurface m, N, and truncated N columns."""

    grid: RadialGrid
    T: Tuple[float, ...]
    m: Tuple[Tuple[float, ...], ...]
    N_full: Tuple[Tuple[float, ...], ...]
    N_trunc: Tuple[Tuple[float, ...], ...]
    truncations: Tuple[Union[int, float], ...]

    def __post_init__(self):
        if any(b - a < -1e-9 for a, b in zip(self.T, self.T[1:])):
            raise ValidationError("characteristic must be non-decreasing")
        for full, trunc in zip(self.N_full, self.N_trunc):
            for a, b in zip(full, trunc):
                if b < -1e-12 or a - b < -1e-9:
                    raise ValidationError(
                        "need N_full >= N_trunc >= 0 pointwise")

    def rows(self, degrees: Sequence[int]) -> List[List[float]]:
        """Plot-ready rows: r, T, then m, N_full, N_trunc, residual per Q."""
        out = []
        for i, r in enumerate(self.grid.values):
            row = [r, self.T[i]]
            for j, d in enumerate(degrees):
                residual = d * self.T[i] - self.m[j][i] - self.N_full[j][i]
                row.extend([self.m[j][i], self.N_full[j][i],
                            self.N_trunc[j][i], residual])
            out.append(row)
        return out


def build_profile(curve: Curve, family: HypersurfaceFamily, grid: RadialGrid,
                  truncations: Union[int, float, Sequence[Union[int, float]]],
                  tol: float = 1e-8,
                  strict_origin: bool = False) -> NevanlinnaProfile:
    if isinstance(truncations, (int, float)):
        truncations = [truncations] * len(family)
    truncations = list(truncations)
    if len(truncations) != len(family):
        raise ValidationError("one truncation level per hypersurface")
    T = tuple(characteristic(curve, r, tol) for r in grid.values)
    m_rows, full_rows, trunc_rows = [], [], []
    for Q, k in zip(family, truncations):
        g = Q.compose(curve.components)
        if g.is_zero():
            raise DegenerateInputError("curve lies in a family member")
        div = _divisor_with_pad(g, grid.values[-1])
        m_rows.append(tuple(
            proximity(curve, Q, r, tol, divisor=div, composed=g)
            for r in grid.values))
        full_rows.append(tuple(counting(div, grid, math.inf, strict_origin)))
        trunc_rows.append(tuple(counting(div, grid, k, strict_origin)))
    return NevanlinnaProfile(grid, T, tuple(m_rows), tuple(full_rows),
                             tuple(trunc_rows), tuple(truncations))
