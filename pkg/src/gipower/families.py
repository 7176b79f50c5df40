"""Named state families, extremal boundary curves, and random-state sampling.

Entangled squeezed thermal states are parametrized throughout by the
smallest symplectic eigenvalue nu of their partial transpose (0 < nu < 1),
via -d = c = sqrt((a - nu)(b - nu)); the boundary families below pin the
extremal performance per mean photon number at fixed entanglement.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exceptions import InvalidStateError
from .power import gip_closed_form
from .symplectic import (
    StandardForm,
    from_standard_form,
    is_separable,
    log_negativity,
    mean_photon_A,
    validate_bona_fide,
)

__all__ = [
    "FamilySpec",
    "SampleRecord",
    "FAMILY_KINDS",
    "build_family",
    "tmsv",
    "squeezed_thermal",
    "mixed_thermal",
    "separable_extremal",
    "entangled_st_nu",
    "upper_boundary_state",
    "lower_branch1_state",
    "lower_branch2_state",
    "nu_zero",
    "en_threshold",
    "upper_bound",
    "lower_bound",
    "lower_bound_branch1",
    "lower_bound_branch2",
    "random_state",
    "sample_figure2",
    "sample_figure3",
]


@dataclass(frozen=True)
class FamilySpec:
    """A family constructor name plus its positional parameters."""

    kind: str
    params: tuple[float, ...]


@dataclass(frozen=True)
class SampleRecord:
    """Derived quantities of one sampled state, for figure-data emission."""

    sf: StandardForm
    n_bar_A: float
    e_n: float
    p_g: float
    separable: bool


def _validated(sf: StandardForm, kind: str) -> StandardForm:
    # Lenient gate: boundary-family states sit exactly on the bona fide
    # surface and dip below by sqrt-amplified float noise near degeneracies.
    report = validate_bona_fide(from_standard_form(sf), tol=1e-7)
    if not report.physical:
        raise InvalidStateError(
            f"{kind} parameters give an unphysical state (nu_minus = {report.nu_min})"
        )
    return sf


def tmsv(a: float) -> StandardForm:
    """Two-mode squeezed vacuum: b = a, -d = c = sqrt(a^2 - 1)."""
    if a < 1:
        raise InvalidStateError(f"tmsv requires a >= 1, got {a}")
    c = np.sqrt(a * a - 1)
    return StandardForm(a, a, c, -c)


def squeezed_thermal(a: float, b: float, c: float) -> StandardForm:
    """Squeezed thermal state (d = -c)."""
    return _validated(StandardForm(a, b, c, -c), "squeezed_thermal")


def mixed_thermal(a: float, b: float, c: float) -> StandardForm:
    """Mixed thermal state (d = +c)."""
    return _validated(StandardForm(a, b, c, c), "mixed_thermal")


def separable_extremal(a: float, b: float) -> StandardForm:
    """Separable states d = c = sqrt((a-1)(b-1)) maximizing power per photon.

    Separable for all a, b >= 1; the power approaches the shot-noise value
    n_bar_A from below as b grows.
    """
    if a < 1 or b < 1:
        raise InvalidStateError(f"separable_extremal requires a, b >= 1, got ({a}, {b})")
    c = np.sqrt((a - 1) * (b - 1))
    return StandardForm(a, b, c, c)


def entangled_st_nu(a: float, b: float, nu: float) -> StandardForm:
    """Squeezed thermal state with -d = c = sqrt((a - nu)(b - nu)).

    The smallest symplectic eigenvalue of its partial transpose equals nu
    exactly.  Raises if the requested (a, b, nu) combination is unphysical.
    """
    if not 0 < nu < 1:
        raise InvalidStateError(f"entangled_st_nu requires 0 < nu < 1, got {nu}")
    if a < 1 or b < 1:
        raise InvalidStateError(f"entangled_st_nu requires a, b >= 1, got ({a}, {b})")
    c = np.sqrt((a - nu) * (b - nu))
    return _validated(StandardForm(a, b, c, -c), "entangled_st_nu")


def upper_boundary_state(nu: float, b: float) -> StandardForm:
    """Thermalized state on the upper performance boundary at fixed nu.

    Uses a = (1 + b - b*nu + nu^2)/(1 + nu); as b -> infinity the power per
    photon approaches (1 + nu)/(2 nu) from below.  The state sits exactly
    on the physicality boundary (nu_minus = 1).
    """
    if not 0 < nu < 1:
        raise InvalidStateError(f"upper_boundary_state requires 0 < nu < 1, got {nu}")
    a = (1 + b - b * nu + nu * nu) / (1 + nu)
    return entangled_st_nu(a, b, nu)


def lower_branch1_state(nu: float) -> StandardForm:
    """Extremal state of the lower boundary's thermal branch (nu > nu_zero).

    a = [sqrt(2 (nu+1)^3) + 3 nu + 1]/(1 - nu), b = sqrt(2 (nu+1)) + nu + 2.
    Below nu_zero these parameters violate the uncertainty relation.
    """
    if not nu_zero() < nu < 1:
        raise InvalidStateError(f"lower_branch1_state requires nu_zero < nu < 1, got {nu}")
    a = (np.sqrt(2 * (nu + 1) ** 3) + 3 * nu + 1) / (1 - nu)
    b = np.sqrt(2 * (nu + 1)) + nu + 2
    return entangled_st_nu(a, b, nu)


def lower_branch2_state(nu: float) -> StandardForm:
    """Pure two-mode squeezed state with partial-transpose eigenvalue nu.

    a = (1 + nu^2)/(2 nu), for which the power per photon is exactly
    (1 + nu)^2/(4 nu).
    """
    if not 0 < nu < 1:
        raise InvalidStateError(f"lower_branch2_state requires 0 < nu < 1, got {nu}")
    return tmsv((1 + nu * nu) / (2 * nu))


FAMILY_KINDS = {
    "tmsv": tmsv,
    "squeezed_thermal": squeezed_thermal,
    "mixed_thermal": mixed_thermal,
    "separable_extremal": separable_extremal,
    "entangled_st_nu": entangled_st_nu,
    "upper_boundary": upper_boundary_state,
    "lower_branch1": lower_branch1_state,
    "lower_branch2": lower_branch2_state,
}


def build_family(spec: FamilySpec) -> StandardForm:
    """Construct the standard form described by a FamilySpec."""
    if spec.kind not in FAMILY_KINDS:
        raise InvalidStateError(
            f"unknown family kind {spec.kind!r}; choose from {sorted(FAMILY_KINDS)}"
        )
    try:
        return FAMILY_KINDS[spec.kind](*spec.params)
    except TypeError as exc:
        raise InvalidStateError(f"wrong parameter count for {spec.kind!r}: {exc}") from exc


@lru_cache(maxsize=1)
def nu_zero() -> float:
    """Branch point of the lower boundary: real root of x^3 + x^2 + 7x - 1.

    Newton iteration from 0.14; the residual converges below 1e-12.
    """
    x = 0.14
    for _ in range(64):
        p = x**3 + x**2 + 7 * x - 1
        dp = 3 * x**2 + 2 * x + 7
        step = p / dp
        x -= step
        if abs(step) < 1e-16:
            break
    return x


def lower_bound_branch1(nu):
    """Lower boundary of power per photon on the thermal branch (nu > nu_zero)."""
    nu = np.asarray(nu, dtype=float)
    g = 2 / (nu + 1) - 2 / (nu - 1) - 2 * np.sqrt(2) / np.sqrt(nu + 1) - 1
    return 1.0 / g


def lower_bound_branch2(nu):
    """Lower boundary of power per photon on the pure branch: (1+nu)^2/(4 nu)."""
    nu = np.asarray(nu, dtype=float)
    return (1 + nu) ** 2 / (4 * nu)


def upper_bound(nu):
    """Upper boundary of power per photon at fixed nu: (1 + nu)/(2 nu)."""
    nu = np.asarray(nu, dtype=float)
    if np.any(nu <= 0) or np.any(nu >= 1):
        raise InvalidStateError("boundary curves are defined for 0 < nu < 1")
    return (1 + nu) / (2 * nu)


def lower_bound(nu):
    """Piecewise lower boundary: thermal branch above nu_zero, pure below.

    Continuous at nu_zero, where the extremal thermal state degenerates to
    the pure two-mode squeezed state.
    """
    nu = np.asarray(nu, dtype=float)
    if np.any(nu <= 0) or np.any(nu >= 1):
        raise InvalidStateError("boundary curves are defined for 0 < nu < 1")
    return np.where(nu > nu_zero(), lower_bound_branch1(nu), lower_bound_branch2(nu))


@lru_cache(maxsize=1)
def en_threshold() -> float:
    """Entanglement threshold above which every state beats shot noise.

    Solves lower_bound_branch1(nu) = 1 by Newton iteration with the
    analytic derivative and returns -ln(nu) of the root (about 1.135).
    """
    x = 0.32
    for _ in range(64):
        g = 2 / (x + 1) - 2 / (x - 1) - 2 * np.sqrt(2) / np.sqrt(x + 1) - 1
        dg = -2 / (x + 1) ** 2 + 2 / (x - 1) ** 2 + np.sqrt(2) / (x + 1) ** 1.5
        step = (g - 1) / dg
        x -= step
        if abs(step) < 1e-16:
            break
    return float(-np.log(x))


def random_state(rng: np.random.Generator, a_max: float = 5.0, b_max: float = 5.0) -> StandardForm:
    """Random physical standard form by rejection sampling.

    a, b are uniform on [1, a_max] x [1, b_max]; c is uniform on
    [0, ((a^2-1)(b^2-1))^(1/4)] (the pure-state correlation envelope);
    d is uniform on [-c, c]; draws failing the uncertainty relation are
    rejected.
    """
    if a_max < 1 or b_max < 1:
        raise InvalidStateError("a_max and b_max must be >= 1")
    while True:
        a = rng.uniform(1.0, a_max)
        b = rng.uniform(1.0, b_max)
        c_max = ((a * a - 1) * (b * b - 1)) ** 0.25
        c = rng.uniform(0.0, c_max)
        d = rng.uniform(-c, c)
        sf = StandardForm(a, b, c, d)
        if validate_bona_fide(sf.matrix()).physical:
            return sf


def _record_from(sf: StandardForm) -> SampleRecord:
    cm = from_standard_form(sf)
    return SampleRecord(
        sf=sf,
        n_bar_A=mean_photon_A(cm),
        e_n=log_negativity(cm),
        p_g=gip_closed_form(cm).value,
        separable=is_separable(cm),
    )


def _sample_records(rng, n, a_max, b_max, threads, entangled_only):
    """n records from independent per-record substreams, sorted canonically.

    Each record owns the i-th child stream spawned from rng, so the output
    is reproducible for a given (rng state, n) regardless of thread count.
    """
    if n < 1:
        raise InvalidStateError(f"sample count must be >= 1, got {n}")
    streams = rng.spawn(n)

    def make(i: int) -> SampleRecord:
        stream = streams[i]
        while True:
            sf = random_state(stream, a_max, b_max)
            record = _record_from(sf)
            if not entangled_only or not record.separable:
                return record

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(pool.map(make, range(n)))
    else:
        records = [make(i) for i in range(n)]
    records.sort(key=lambda r: (r.sf.a, r.sf.b, r.sf.c, r.sf.d))
    return records


def sample_figure2(rng: np.random.Generator, n: int, a_max: float = 5.0,
                   b_max: float = 5.0, threads: int = 1) -> list[SampleRecord]:
    """Random states with power, photon number and separability per record."""
    return _sample_records(rng, n, a_max, b_max, threads, entangled_only=False)


def sample_figure3(rng: np.random.Generator, n: int, a_max: float = 5.0,
                   b_max: float = 5.0, threads: int = 1) -> list[SampleRecord]:
    """Entangled-only random states (for power-versus-entanglement data)."""
    return _sample_records(rng, n, a_max, b_max, threads, entangled_only=True)
