"""Scenario files: one JSON document describing a full verification run.

Exact data (rationals, polynomial coefficients) travels as strings so no
float ever contaminates the algebraic side.  Radii and tolerances are
plain numbers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .analytic import Curve, parse_function
from .errors import ValidationError
from .exact_algebra import parse_homog_poly
from .groebner import Ideal, Variety
from .hypersurfaces import HypersurfaceFamily, parse_hypersurface
from .nevanlinna import RadialGrid


@dataclass(frozen=True)
class Scenario:
    ambient_N: int
    variety: Variety
    curve: Curve
    family: HypersurfaceFamily
    epsilon: Fraction
    epsilon_prime: Fraction
    grid: RadialGrid
    truncation: Optional[int]
    seed: int
    growth_model: Optional[Fraction]

    @property
    def domain_radius(self) -> float:
        return self.curve.domain_radius


def _field(data: dict, name: str, required: bool = True, default=None):
    if name not in data:
        if required:
            raise ValidationError(f"scenario field {name!r} is missing")
        return default
    return data[name]


def _rational(value, name: str) -> Fraction:
    try:
        if isinstance(value, float):
            raise TypeError("write exact rationals as strings")
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as err:
        raise ValidationError(f"scenario field {name!r}: {err}")


def _radius(value, name: str) -> float:
    if value in ("inf", "Infinity", None):
        return math.inf
    try:
        r = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"scenario field {name!r} must be a number or 'inf'")
    if r <= 0:
        raise ValidationError(f"scenario field {name!r} must be positive")
    return r


def _build_grid(spec, r0: float, R: float) -> RadialGrid:
    if spec is None:
        if math.isinf(R):
            return RadialGrid.geometric(r0=r0)
        return RadialGrid.finite(R, r0=r0)
    kind = spec.get("kind", "geometric")
    try:
        if kind == "geometric":
            return RadialGrid(
                r0,
                RadialGrid.geometric(
                    float(spec.get("r_min", 2.0)),
                    float(spec.get("r_max", 1e3)),
                    int(spec.get("points", 40)), r0).values,
                R)
        if kind == "finite":
            if math.isinf(R):
                raise ValidationError(
                    "scenario field 'grid': finite grid needs a finite "
                    "domain radius")
            return RadialGrid.finite(R, int(spec.get("points", 20)), r0)
        if kind == "explicit":
            return RadialGrid(r0, tuple(float(v) for v in spec["values"]), R)
    except ValidationError:
        raise
    except (KeyError, TypeError, ValueError) as err:
        raise ValidationError(f"scenario field 'grid': {err}")
    raise ValidationError(f"scenario field 'grid': unknown kind {kind!r}")


def scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ValidationError("scenario must be a JSON object")
    N = _field(data, "ambient_N")
    if not isinstance(N, int) or N < 1:
        raise ValidationError("scenario field 'ambient_N' must be an integer >= 1")

    gens = []
    for i, text in enumerate(_field(data, "variety_generators",
                                    required=False, default=[])):
        try:
            gens.append(parse_homog_poly(text, N + 1))
        except (ValueError, ValidationError) as err:
            raise ValidationError(
                f"scenario field 'variety_generators[{i}]': {err}")
    variety = Variety(Ideal(N + 1, gens))

    curve_spec = _field(data, "curve")
    comps = []
    for i, text in enumerate(curve_spec.get("components", [])):
        try:
            comps.append(parse_function(text))
        except (ValueError, ValidationError) as err:
            raise ValidationError(f"scenario field 'curve.components[{i}]': {err}")
    if len(comps) != N + 1:
        raise ValidationError(
            f"scenario field 'curve.components': expected {N + 1} entries, "
            f"got {len(comps)}")
    R = _radius(curve_spec.get("domain_R", "inf"), "curve.domain_R")
    curve = Curve(tuple(comps), R)

    members = []
    for i, spec in enumerate(_field(data, "hypersurfaces")):
        try:
            member = parse_hypersurface(N + 1, int(spec["degree"]),
                                        spec["coefficients"])
        except (KeyError, ValueError, ValidationError) as err:
            raise ValidationError(f"scenario field 'hypersurfaces[{i}]': {err}")
        declared_moving = bool(spec.get("moving", False))
        if member.is_moving != declared_moving:
            raise ValidationError(
                f"scenario field 'hypersurfaces[{i}]': declared "
                f"moving={declared_moving} but coefficients say otherwise")
        members.append(member)
    family = HypersurfaceFamily(members)

    epsilon = _rational(_field(data, "epsilon"), "epsilon")
    if epsilon <= 0:
        raise ValidationError("scenario field 'epsilon' must be positive")
    eps_prime_raw = _field(data, "epsilon_prime", required=False)
    epsilon_prime = (epsilon / 10 if eps_prime_raw is None
                     else _rational(eps_prime_raw, "epsilon_prime"))
    if epsilon_prime <= 0:
        raise ValidationError("scenario field 'epsilon_prime' must be positive")

    r0 = _radius(_field(data, "r0"), "r0")
    grid = _build_grid(_field(data, "grid", required=False), r0, R)

    truncation = _field(data, "truncation", required=False)
    if truncation is not None and (not isinstance(truncation, int)
                                   or truncation < 1):
        raise ValidationError("scenario field 'truncation' must be an integer >= 1")

    seed = _field(data, "seed", required=False, default=0)
    if not isinstance(seed, int):
        raise ValidationError("scenario field 'seed' must be an integer")

    model = _field(data, "growth_model", required=False)
    growth_model = None
    if model is not None:
        growth_model = _rational(model.get("lambda"), "growth_model.lambda")
        if growth_model <= 0:
            raise ValidationError(
                "scenario field 'growth_model.lambda' must be positive")

    return Scenario(N, variety, curve, family, epsilon, epsilon_prime,
                    grid, truncation, seed, growth_model)


def load_scenario(path: str) -> Scenario:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as err:
        raise ValidationError(f"cannot read scenario {path}: {err}")
    except json.JSONDecodeError as err:
        raise ValidationError(
            f"scenario {path} is not well-formed JSON "
            f"(line {err.lineno}, column {err.colno}): {err.msg}")
    return scenario_from_dict(data)
