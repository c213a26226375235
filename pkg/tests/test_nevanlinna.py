"""Characteristic, counting, proximity, residual, and defect functionals."""

import math

import pytest

from smtlab.analytic import AnalyticFunction, Curve, Divisor, Poly1
from smtlab.errors import (
    CertificationError,
    DegenerateInputError,
    ValidationError,
)
from smtlab.exact_algebra import Monomial
from smtlab.hypersurfaces import MovingHypersurface, HypersurfaceFamily
from smtlab.nevanlinna import (
    RadialGrid,
    build_profile,
    characteristic,
    check_ru_sibony,
    circle_average,
    counting,
    defect,
    fmt_residual,
    growth_index_model,
    growth_index_sampled,
    proximity,
)
from smtlab.scalars import GaussianRational

AF = AnalyticFunction
GR = GaussianRational


def fn_poly(*coeffs):
    return AF.from_poly(Poly1(list(coeffs)))


def fixed_form(num_vars, degree, entries):
    coeffs = {Monomial(m): AF.constant(GR(c)) for m, c in entries.items()}
    return MovingHypersurface(num_vars, degree, coeffs)


LINE = Curve((fn_poly(1), fn_poly(0, 1)))                  # (1, z)
PARABOLA = Curve((fn_poly(1), fn_poly(0, 1), fn_poly(0, 0, 1)))

X0 = fixed_form(2, 1, {(1, 0): 1})
X1 = fixed_form(2, 1, {(0, 1): 1})
X1_MINUS_X0 = fixed_form(2, 1, {(0, 1): 1, (1, 0): -1})
X1_PLUS_X0 = fixed_form(2, 1, {(0, 1): 1, (1, 0): 1})


# -- grids ------------------------------------------------------------------

def test_grid_validation():
    with pytest.raises(ValidationError):
        RadialGrid(0.0, (1.0, 2.0))
    with pytest.raises(ValidationError):
        RadialGrid(0.5, (2.0, 2.0))
    with pytest.raises(ValidationError):
        RadialGrid(0.5, (0.25, 2.0))
    with pytest.raises(ValidationError):
        RadialGrid(0.5, (1.0, 2.0), R=2.0)


def test_grid_constructors():
    g = RadialGrid.geometric()
    assert len(g.values) == 40
    assert g.values[0] == 2.0 and g.values[-1] == 1e3
    assert math.isinf(g.R)
    assert len(g.top_decile()) == 4
    h = RadialGrid.finite(1.0)
    assert len(h.values) == 20
    assert h.values[0] == 0.5
    assert h.values[-1] == 1.0 - 2.0 ** -20
    assert h.r0 == 0.25


# -- quadrature and characteristic ------------------------------------------

def test_circle_average_constant_and_harmonic():
    val, nodes = circle_average(lambda z: 3.25, 2.0)
    assert val == 3.25 and nodes == 128
    # average of Re z over a circle is 0
    val, _ = circle_average(lambda z: z.real, 1.5)
    assert abs(val) <= 1e-10


def test_circle_average_node_cap():
    # a spike too narrow to resolve forces the certification failure
    with pytest.raises(CertificationError):
        circle_average(lambda z: math.exp(-abs(z - 1.0) ** 2 * 1e12),
                       1.0, tol=1e-12, max_nodes=256)


def test_characteristic_frozen_line():
    # T(r) = log sqrt(1 + r^2) for (1, z); integrand is theta-free
    for r in (1.0, 3.0, 10.0):
        want = 0.5 * math.log(1 + r * r)
        assert abs(characteristic(LINE, r) - want) <= 1e-9
    val, nodes = circle_average(LINE.log_norm, 3.0, tol=1e-9,
                                max_nodes=4096)
    assert nodes <= 4096
    assert abs(val - 0.5 * math.log(10)) <= 1e-9


def test_characteristic_monotone_and_domain():
    ts = [characteristic(LINE, r) for r in (1.0, 2.0, 4.0)]
    assert ts[0] < ts[1] < ts[2]
    disc_curve = Curve((fn_poly(1), fn_poly(0, 1)), domain_radius=2.0)
    with pytest.raises(ValidationError):
        characteristic(disc_curve, 2.0)


def test_characteristic_unitary_invariance():
    # exact orthogonal change of frame: [[3/5, 4/5], [-4/5, 3/5]]
    a = AF.from_poly(Poly1([GR("3/5"), GR("4/5")]))
    b = AF.from_poly(Poly1([GR("-4/5"), GR("3/5")]))
    rotated = Curve((a, b))
    for r in (1.0, 5.0):
        assert abs(characteristic(rotated, r)
                   - characteristic(LINE, r)) <= 1e-7


# -- counting ----------------------------------------------------------------

def test_counting_frozen_single_zero():
    div = Divisor(((0.5 + 0j, 3),), 5.0, False, 3)
    grid = RadialGrid(0.1, (2.0,))
    assert abs(counting(div, grid, 2)[0] - 2 * math.log(4)) <= 1e-12
    assert abs(counting(div, grid, math.inf)[0] - 3 * math.log(4)) <= 1e-12
    assert abs(counting(div, grid, 1)[0] - math.log(4)) <= 1e-12


def test_counting_origin_convention():
    div = Divisor(((0j, 2),), 5.0, False, 2)
    grid = RadialGrid(0.1, (2.0, 4.0))
    assert counting(div, grid, math.inf) == [0.0, 0.0]
    strict = counting(div, grid, math.inf, strict_origin=True)
    assert abs(strict[0] - 2 * math.log(20)) <= 1e-12
    assert abs(strict[1] - 2 * math.log(40)) <= 1e-12


def test_counting_zero_below_r0():
    div = Divisor(((0.05 + 0j, 1),), 5.0, False, 1)
    grid = RadialGrid(0.1, (1.0,))
    assert abs(counting(div, grid, math.inf)[0] - math.log(10)) <= 1e-12


def test_counting_slope_between_zeros():
    # between consecutive zero moduli, N grows linearly in log r with
    # slope equal to the truncated count inside
    div = Divisor(((1.0 + 0j, 2), (2.0 + 0j, 5)), 5.0, False, 7)
    grid = RadialGrid(0.5, (1.5, 1.7))
    for k, slope in ((math.inf, 2), (1, 1)):
        vals = counting(div, grid, k)
        got = (vals[1] - vals[0]) / math.log(1.7 / 1.5)
        assert abs(got - slope) <= 1e-9


def test_counting_validation():
    div = Divisor(((0.5 + 0j, 1),), 2.0, False, 1)
    with pytest.raises(ValidationError):
        counting(div, RadialGrid(0.1, (3.0,)), math.inf)
    with pytest.raises(ValidationError):
        counting(div, RadialGrid(0.1, (1.0,)), 0)


# -- proximity ----------------------------------------------------------------

def test_proximity_frozen_line():
    # m(2, x1) = avg log(||f|| / |z|) = log sqrt(5) - log 2
    got = proximity(LINE, X1, 2.0)
    assert abs(got - (0.5 * math.log(5) - math.log(2))) <= 1e-6
    got = proximity(LINE, X0, 2.0)
    assert abs(got - 0.5 * math.log(5)) <= 1e-6


def test_proximity_curve_in_hypersurface():
    diag = Curve((fn_poly(0, 1), fn_poly(0, 1)))
    with pytest.raises(DegenerateInputError):
        proximity(diag, X1_MINUS_X0, 2.0)


def test_proximity_zero_on_circle_fails_certification():
    # zero of z - 1 sits on |z| = 1; the nudge moves the contour by 1e-8
    # but the quadrature cannot certify through the near-singularity
    from smtlab.analytic import zeros_in_disc
    g = X1_MINUS_X0.compose(LINE.components)
    div = zeros_in_disc(g, 1.5)
    with pytest.raises(CertificationError):
        proximity(LINE, X1_MINUS_X0, 1.0, divisor=div)


# -- first main theorem residual ---------------------------------------------

def test_fmt_residual_line():
    grid = RadialGrid.geometric(2.0, 50.0, 8, r0=0.25)
    residuals, spread = fmt_residual(LINE, X1_PLUS_X0, grid)
    assert spread <= 1e-6
    # the flat value is log|Q(f)(0)| - log||Q|| for ||f(0)|| = 1
    assert abs(residuals[0] + 0.5 * math.log(2)) <= 1e-6


def test_fmt_residual_quadric():
    quadric = fixed_form(3, 2, {(2, 0, 0): 1, (0, 1, 1): 1, (0, 0, 2): 1})
    grid = RadialGrid.geometric(2.0, 50.0, 6, r0=0.25)
    residuals, spread = fmt_residual(PARABOLA, quadric, grid)
    assert spread <= 1e-5
    assert abs(residuals[0] + 0.5 * math.log(3)) <= 1e-5


def test_fmt_residual_preconditions():
    grid = RadialGrid.geometric(2.0, 50.0, 4, r0=0.25)
    with pytest.raises(ValidationError):
        fmt_residual(LINE, X1, grid)


# -- growth index --------------------------------------------------------------

def test_growth_index_model():
    est = growth_index_model(2.0, 1.0)
    assert est.value == 0.5 and est.interval == (0.5, 0.5)
    assert growth_index_model(0.5, 2.0).value == 2.0
    assert growth_index_model(3.0, math.inf).value == 0.0
    with pytest.raises(ValidationError):
        growth_index_model(0.0, 1.0)


def test_growth_index_sampled_recovers_model():
    grid = RadialGrid.finite(1.0)
    T = [2.0 * math.log(1.0 / (1.0 - r)) + 0.3 for r in grid.values]
    est = growth_index_sampled(grid, T)
    assert abs(est.value - 0.5) <= 0.05 * 0.5
    assert est.interval[0] <= 0.5 <= est.interval[1]


def test_growth_index_sampled_plane_is_zero():
    grid = RadialGrid.geometric(2.0, 100.0, 10)
    T = [math.log(r) for r in grid.values]
    assert growth_index_sampled(grid, T).value == 0.0


def test_growth_index_sampled_rejections():
    grid = RadialGrid.finite(1.0)
    bad = [1.0] * 10 + [0.5] + [1.0] * 9
    with pytest.raises(ValidationError):
        growth_index_sampled(grid, bad)
    power = [1.0 / (1.0 - r) for r in grid.values]
    with pytest.raises(CertificationError):
        growth_index_sampled(grid, power)
    with pytest.raises(ValidationError):
        growth_index_sampled(grid, [1.0, 2.0])


# -- defects --------------------------------------------------------------------

def test_defect_omitted_target_is_one():
    grid = RadialGrid.geometric(2.0, 100.0, 10, r0=0.5)
    est = defect(LINE, X0, math.inf, grid)
    assert est.value == 1.0
    assert len(est.tail) == 3


def test_defect_hit_target_tends_to_zero():
    grid = RadialGrid.geometric(2.0, 1000.0, 12, r0=0.5)
    est = defect(LINE, X1_MINUS_X0, math.inf, grid)
    assert abs(est.value) <= 2e-3
    trunc = defect(LINE, X1_MINUS_X0, 1, grid)
    assert abs(trunc.value - est.value) <= 1e-12


def test_defect_origin_conventions():
    grid = RadialGrid.geometric(2.0, 1000.0, 12, r0=1.0)
    # the origin zero of z contributes nothing in the default convention
    assert defect(LINE, X1, math.inf, grid).value == 1.0
    strict = defect(LINE, X1, math.inf, grid, strict_origin=True)
    assert abs(strict.value) <= 1e-3


def test_defect_requires_growth():
    flat = Curve((fn_poly(1), fn_poly(GR("1/2"))))
    grid = RadialGrid(0.5, (2.0,))
    with pytest.raises(ValidationError):
        defect(flat, X0, math.inf, grid)


# -- hyperplane margin check -----------------------------------------------------

def test_ru_sibony_three_points_on_line():
    grid = RadialGrid.geometric(100.0, 100.0, 1, r0=0.5)
    rows = check_ru_sibony(LINE, [X0, X1_MINUS_X0, X1_PLUS_X0], grid)
    (r, margin, T), = rows
    assert r == 100.0 and T > 0
    assert margin / T >= -0.05


def test_ru_sibony_four_lines_on_parabola():
    lines = [
        fixed_form(3, 1, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}),
        fixed_form(3, 1, {(1, 0, 0): 1, (0, 1, 0): -1, (0, 0, 1): 1}),
        fixed_form(3, 1, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): -1}),
        fixed_form(3, 1, {(1, 0, 0): 1, (0, 1, 0): 2, (0, 0, 1): 3}),
    ]
    grid = RadialGrid.geometric(50.0, 50.0, 1, r0=0.5)
    rows = check_ru_sibony(PARABOLA, lines, grid)
    (_, margin, T), = rows
    assert margin / T >= -0.05


def test_ru_sibony_no_hyperplanes():
    grid = RadialGrid.geometric(10.0, 10.0, 1, r0=0.5)
    (_, margin, T), = check_ru_sibony(LINE, [], grid)
    assert abs(margin - 2 * T) <= 1e-12


def test_ru_sibony_rejections():
    grid = RadialGrid.geometric(10.0, 10.0, 1, r0=0.5)
    degenerate = Curve((fn_poly(1), fn_poly(0, 1), fn_poly(0, 2)))
    with pytest.raises(DegenerateInputError):
        check_ru_sibony(degenerate, [], grid)
    quadric = fixed_form(2, 2, {(2, 0): 1, (0, 2): 1})
    with pytest.raises(ValidationError):
        check_ru_sibony(LINE, [quadric], grid)
    moving = MovingHypersurface(
        2, 1, {Monomial((0, 1)): fn_poly(0, 1), Monomial((1, 0)): fn_poly(1)})
    with pytest.raises(ValidationError):
        check_ru_sibony(LINE, [moving], grid)


# -- profiles ----------------------------------------------------------------------

def test_profile_columns_and_rows():
    family = HypersurfaceFamily([X0, X1_MINUS_X0, X1_PLUS_X0])
    grid = RadialGrid.geometric(2.0, 100.0, 8, r0=0.25)
    prof = build_profile(LINE, family, grid, 1)
    assert len(prof.T) == 8
    assert all(b - a >= -1e-9 for a, b in zip(prof.T, prof.T[1:]))
    for full, trunc in zip(prof.N_full, prof.N_trunc):
        assert all(a >= b >= 0 for a, b in zip(full, trunc))
    rows = prof.rows(family.degrees)
    assert len(rows) == 8 and len(rows[0]) == 2 + 4 * 3
    # residual column is flat per member
    for j in range(3):
        col = [row[2 + 4 * j + 3] for row in rows]
        assert max(col) - min(col) <= 1e-5


def test_profile_validation():
    family = HypersurfaceFamily([X0, X1])
    grid = RadialGrid.geometric(2.0, 10.0, 3, r0=0.25)
    with pytest.raises(ValidationError):
        build_profile(LINE, family, grid, [1, 2, 3])
