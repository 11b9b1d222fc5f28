"""Well geometry: minimum location, the degree-20 minimum polynomial, and
depth/width characteristics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .params import ModelParams, as_fraction
from .potential import potential_closed_form, potential_derivative
from .spectrum import max_bound_states

_SCAN_POINTS = 400
_MAX_BISECT = 200


@dataclass(frozen=True)
class MinimumReport:
    """Location and value of the well minimum plus the polynomial probe.

    poly_root_probe records |P(t)| for both readings of the minimum's
    exponential coordinate, t = exp(p*x0) first and t = exp(x0) second;
    empirically the first is the root (see min_polynomial).
    """

    x0: float
    v_min: float
    derivative_residual: float
    poly_root_probe: tuple[float, float]

    def to_json_dict(self) -> dict:
        return {
            "x0": self.x0,
            "V_min": self.v_min,
            "derivative_residual": self.derivative_residual,
            "poly_root_probe": {
                "exp_p_x0": self.poly_root_probe[0],
                "exp_x0": self.poly_root_probe[1],
            },
        }


def minimum_polynomial_coefficients(B, p) -> tuple:
    """Coefficients of the even-degree minimum polynomial, powers 0..20.

    The vector is palindromic: the coefficient of t^(2j) equals that of
    t^(20-2j).  Exact Fractions when (B, p) are rational.
    """
    B = as_fraction(B, "B")
    p = as_fraction(p, "p")
    b2p = B * B * p
    bp2 = B * p * p
    p3 = p * p * p
    half = (
        b2p + 2 * bp2,
        -2 * b2p - bp2,
        9 * b2p + 36 * bp2 + 27 * p3,
        -36 * b2p - 114 * bp2 - 81 * p3,
        42 * b2p + 126 * bp2 + 81 * p3,
    )
    middle = -36 * b2p - 90 * bp2 - 54 * p3
    return half + (middle,) + half[::-1]


def min_polynomial(t, B, p):
    """Evaluate the degree-20 minimum polynomial at t (even powers only).

    Exact when t, B, p are all rational; float otherwise.  The positive
    real root > 1 satisfies t = exp(p*x0) with x0 the well minimum.
    """
    coeffs = minimum_polynomial_coefficients(B, p)
    if isinstance(t, Fraction) or isinstance(t, int):
        t2 = Fraction(t) ** 2
        acc = Fraction(0)
    else:
        t2 = float(t) ** 2
        acc = 0.0
        coeffs = tuple(float(c) for c in coeffs)
    for c in reversed(coeffs):
        acc = acc * t2 + c
    return acc


def find_minimum(params: ModelParams) -> MinimumReport:
    """Bracket the sign change of V' by geometric scan, then bisect.

    The first-order condition is driven to |V'| <= 1e-10 * p * (2B+3p)^2.
    Raises RuntimeError if no bracket exists on the scan range (which would
    contradict the admissibility assumption 0 < p < B).
    """
    p = float(params.p)
    scale = p * float((params.A - params.B) ** 2)
    tol = 1e-10 * scale
    xs = np.geomspace(1e-3 / p, 50.0 / p, _SCAN_POINTS)
    dv = potential_derivative(xs, params)
    sign_change = np.where((dv[:-1] < 0.0) & (dv[1:] >= 0.0))[0]
    if sign_change.size == 0:
        raise RuntimeError(
            "no bracketing interval for V' = 0 on the scan range; "
            "the well has no interior minimum for these parameters"
        )
    lo, hi = float(xs[sign_change[0]]), float(xs[sign_change[0] + 1])
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        d = float(potential_derivative(mid, params))
        if abs(d) <= tol or (hi - lo) < 1e-15 / p:
            break
        if d < 0.0:
            lo = mid
        else:
            hi = mid
    x0 = 0.5 * (lo + hi)
    v_min = float(potential_closed_form(x0, params))
    resid = float(potential_derivative(x0, params))
    probe = (
        abs(float(min_polynomial(math.exp(p * x0), params.B, params.p))),
        abs(float(min_polynomial(math.exp(x0), params.B, params.p))),
    )
    return MinimumReport(x0=x0, v_min=v_min, derivative_residual=resid, poly_root_probe=probe)


def _bisect_level(params: ModelParams, target: float, lo: float, hi: float) -> float:
    """Root of V(x) - target on [lo, hi]; assumes a single sign change."""
    f_lo = float(potential_closed_form(lo, params)) - target
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        f_mid = float(potential_closed_form(mid, params)) - target
        if (hi - lo) < 1e-13 * max(1.0, hi):
            break
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def well_characteristics(params: ModelParams) -> dict:
    """Depth (asymptote to minimum), width at half depth, and the
    bound-state count cap: the quantities tunable through (B, p)."""
    report = find_minimum(params)
    asym = float((params.A - params.B) ** 2)
    depth = asym - report.v_min
    half_level = report.v_min + 0.5 * depth
    p = float(params.p)
    left = _bisect_level(params, half_level, 1e-6 / p, report.x0)
    hi = report.x0 * 2.0
    while float(potential_closed_form(hi, params)) < half_level:
        hi *= 2.0
        if hi > 1e6 / p:
            raise RuntimeError("right half-depth crossing not found")
    right = _bisect_level(params, half_level, report.x0, hi)
    return {
        "x0": report.x0,
        "V_min": report.v_min,
        "asymptote": asym,
        "depth": depth,
        "width_at_half_depth": right - left,
        "n_max": max_bound_states(params),
    }
