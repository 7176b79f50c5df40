"""Closed-form Gaussian interferometric power and oracle cross-validation.

The interferometric power of a two-mode Gaussian probe is one quarter of
the worst-case quantum Fisher information over the local Gaussian black
boxes on mode A.  It admits a closed form in the local symplectic
invariants (A, B, C, D); this module evaluates it with exact special-case
handling of the pure-state singularity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidStateError, NumericalError
from .fidelity import worst_case_qfi
from .symplectic import (
    LocalInvariants,
    StandardForm,
    _require_physical,
    block_determinants,
    from_standard_form,
)

__all__ = [
    "IpResult",
    "CrossValidation",
    "closed_form_xyz",
    "gip_closed_form",
    "gip_special",
    "gip_pure",
    "gip_from_standard_form",
    "cross_validate",
]

#: |D - 1| below this uses the exact pure-state value (A - 1)/4; the
#: general formula is 0/0 there.
PURE_TOL = 1e-7

#: |Y| below this (non-pure) falls back to the numerical worst-case oracle.
Y_TOL = 1e-9


@dataclass(frozen=True)
class IpResult:
    """Interferometric power with the evaluation branch and input invariants.

    branch is one of "general", "pure", "special_dc" (the d = -+c shortcut)
    or "fallback_oracle".
    """

    value: float
    branch: str
    invariants: LocalInvariants


@dataclass(frozen=True)
class CrossValidation:
    """Closed-form value against the worst-case optimizer, with verdict."""

    closed: float
    oracle: float
    abs_diff: float
    passed: bool


def closed_form_xyz(A, B, C, D):
    """The three polynomials (X, Y, Z) of the closed formula.

    Plain arithmetic only, so exact input types (int, Fraction) stay exact.
    """
    X = (A + C) * (1 + B + C - D) - D * D
    Y = (D - 1) * (1 + A + B + 2 * C + D)
    Z = (A + D) * (A * B - D) + C * (2 * A + C) * (1 + B)
    return X, Y, Z


def gip_closed_form(cm, tol: float = 1e-9) -> IpResult:
    """Interferometric power of a physical state via the closed formula.

    General branch: (X + sqrt(X^2 + YZ)) / (2Y).  Pure states (|D - 1| <
    PURE_TOL) use the exact limit (A - 1)/4; the measure-zero near-singular
    set |Y| < Y_TOL (non-pure) defers to the numerical worst-case oracle
    rather than a series expansion.
    """
    sigma = _require_physical(cm)
    A, B, C, D = (float(v) for v in block_determinants(sigma))
    inv = LocalInvariants(A, B, C, D)
    if abs(D - 1) < PURE_TOL:
        return IpResult(value=(A - 1) / 4, branch="pure", invariants=inv)
    X, Y, Z = closed_form_xyz(A, B, C, D)
    if abs(Y) < Y_TOL:
        oracle = worst_case_qfi(cm)
        return IpResult(value=oracle.value / 4, branch="fallback_oracle", invariants=inv)
    radicand = X * X + Y * Z
    if radicand < -tol * max(1.0, X * X):
        raise NumericalError(f"negative radicand {radicand} in closed formula")
    value = (X + np.sqrt(max(radicand, 0.0))) / (2 * Y)
    return IpResult(value=float(max(value, 0.0)), branch="general", invariants=inv)


def gip_special(sf: StandardForm, tol: float = 1e-9) -> float:
    """Interferometric power of a standard-form state with d = -+c.

    Evaluates c^2 / (2(ab - c^2 +- 1)): plus sign for d = -c (squeezed
    thermal states), minus sign for d = +c (mixed thermal states).
    """
    if not isinstance(sf, StandardForm):
        sf = StandardForm(*sf)
    a, b, c, d = sf.a, sf.b, sf.c, sf.d
    if abs(d + c) <= tol:
        denom = 2 * (a * b - c * c + 1)
    elif abs(d - c) <= tol:
        denom = 2 * (a * b - c * c - 1)
    else:
        raise InvalidStateError(f"special form requires d = -+c, got c={c}, d={d}")
    if denom <= tol:
        raise InvalidStateError(f"degenerate state: denominator {denom} <= tol")
    return float(c * c / denom)


def gip_pure(a: float) -> float:
    """Interferometric power (a^2 - 1)/4 of a pure two-mode squeezed state.

    Equals n(n + 1) with n = (a - 1)/2 the mean photon number of either mode.
    """
    if not np.isfinite(a) or a < 1:
        raise InvalidStateError(f"pure-state parameter must satisfy a >= 1, got {a}")
    return (a * a - 1) / 4


def gip_from_standard_form(sf: StandardForm) -> IpResult:
    """Interferometric power of a standard-form state, using the d = -+c
    shortcut when it applies (branch "special_dc")."""
    if not isinstance(sf, StandardForm):
        sf = StandardForm(*sf)
    cm = from_standard_form(sf)
    A, B, C, D = (float(v) for v in block_determinants(cm.sigma))
    if abs(D - 1) >= PURE_TOL and (abs(sf.d + sf.c) <= 1e-9 or abs(sf.d - sf.c) <= 1e-9):
        _require_physical(cm)
        inv = LocalInvariants(A, B, C, D)
        return IpResult(value=gip_special(sf), branch="special_dc", invariants=inv)
    return gip_closed_form(cm)


def cross_validate(cm, tol: float = 1e-4) -> CrossValidation:
    """Check the closed formula against the worst-case QFI optimizer.

    Passes iff |closed - oracle/4| <= tol * max(1, closed).
    """
    closed = gip_closed_form(cm).value
    oracle = worst_case_qfi(cm).value / 4
    diff = abs(closed - oracle)
    return CrossValidation(
        closed=closed,
        oracle=oracle,
        abs_diff=diff,
        passed=bool(diff <= tol * max(1.0, closed)),
    )
