"""Covariance-matrix algebra for two-mode Gaussian states.

Conventions: quadrature ordering (q_A, p_A, q_B, p_B), natural units
hbar = 1, vacuum covariance matrix = identity.  A state is physical iff
sigma + i*Omega >= 0, equivalently its smallest symplectic eigenvalue
nu_minus >= 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import InvalidStateError, InvalidTransformError, NumericalError

__all__ = [
    "OMEGA",
    "CovarianceMatrix",
    "StandardForm",
    "LocalInvariants",
    "BonaFideReport",
    "block_determinants",
    "validate_bona_fide",
    "symplectic_eigenvalues",
    "local_invariants",
    "to_standard_form",
    "from_standard_form",
    "partial_transpose_B",
    "pt_min_symplectic_eigenvalue",
    "log_negativity",
    "is_separable",
    "mean_photon_A",
    "swap_modes",
    "apply_local_symplectic",
    "apply_loss_B",
    "random_local_symplectic",
]

_OMEGA1 = np.array([[0.0, 1.0], [-1.0, 0.0]])

#: Two-mode symplectic form, [[0,1],[-1,0]] on each mode.
OMEGA = np.block([[_OMEGA1, np.zeros((2, 2))], [np.zeros((2, 2)), _OMEGA1]])
OMEGA.setflags(write=False)

# Momentum flip on mode B (partial transposition in phase space).
_PT_B = np.diag([1.0, 1.0, 1.0, -1.0])

# Permutation taking (q_A, p_A, q_B, p_B) -> (q_B, p_B, q_A, p_A).
_SWAP = np.zeros((4, 4))
_SWAP[0, 2] = _SWAP[1, 3] = _SWAP[2, 0] = _SWAP[3, 1] = 1.0

_ORDERING = "qA,pA,qB,pB"


class CovarianceMatrix:
    """4x4 real symmetric second-moment matrix of a two-mode Gaussian state.

    First moments are fixed to zero.  The constructor symmetrizes its input
    as (M + M^T)/2 (absorbing e.g. file round-trip asymmetry) and freezes
    the result; instances are immutable and safe to share across threads.
    """

    __slots__ = ("sigma",)

    def __init__(self, sigma):
        arr = np.array(sigma, dtype=float)
        if arr.shape != (4, 4):
            raise InvalidStateError(f"expected a 4x4 matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidStateError("covariance matrix has non-finite entries")
        arr = (arr + arr.T) / 2
        arr.setflags(write=False)
        self.sigma = arr

    @property
    def alpha(self) -> np.ndarray:
        """2x2 block of mode A."""
        return self.sigma[:2, :2]

    @property
    def beta(self) -> np.ndarray:
        """2x2 block of mode B."""
        return self.sigma[2:, 2:]

    @property
    def gamma(self) -> np.ndarray:
        """2x2 cross-correlation block."""
        return self.sigma[:2, 2:]

    def to_dict(self) -> dict:
        return {"ordering": _ORDERING, "hbar": 1, "sigma": self.sigma.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "CovarianceMatrix":
        if data.get("ordering", _ORDERING) != _ORDERING:
            raise InvalidStateError(f"unsupported quadrature ordering {data['ordering']!r}")
        if data.get("hbar", 1) != 1:
            raise InvalidStateError("only hbar = 1 units are supported")
        if "sigma" not in data:
            raise InvalidStateError("missing 'sigma' field")
        return cls(data["sigma"])

    def __repr__(self):
        return f"CovarianceMatrix({self.sigma.tolist()})"


@dataclass(frozen=True)
class StandardForm:
    """The four scalars (a, b, c, d) of the locally-reduced covariance matrix.

    Constraints a, b >= 1 and c >= |d| >= 0 are enforced up to a small
    tolerance; physicality is not (check the reconstructed matrix).
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        tol = 1e-9
        for name in ("a", "b", "c", "d"):
            if not np.isfinite(getattr(self, name)):
                raise InvalidStateError(f"standard form has non-finite {name}")
        if self.a < 1 - tol or self.b < 1 - tol:
            raise InvalidStateError(f"standard form requires a, b >= 1, got ({self.a}, {self.b})")
        if self.c < abs(self.d) - tol:
            raise InvalidStateError(f"standard form requires c >= |d|, got ({self.c}, {self.d})")

    def matrix(self) -> np.ndarray:
        a, b, c, d = self.a, self.b, self.c, self.d
        return np.array(
            [[a, 0, c, 0], [0, a, 0, d], [c, 0, b, 0], [0, d, 0, b]], dtype=float
        )

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d}

    @classmethod
    def from_dict(cls, data: dict) -> "StandardForm":
        return cls(float(data["a"]), float(data["b"]), float(data["c"]), float(data["d"]))


@dataclass(frozen=True)
class LocalInvariants:
    """Local symplectic invariants: block determinants and det sigma."""

    A: float
    B: float
    C: float
    D: float

    def astuple(self) -> tuple[float, float, float, float]:
        return (self.A, self.B, self.C, self.D)


@dataclass(frozen=True)
class BonaFideReport:
    """Result of the physicality (uncertainty-relation) check."""

    physical: bool
    nu_min: float


def _sigma_of(cm) -> np.ndarray:
    """Coerce a CovarianceMatrix or array-like into a validated 4x4 array."""
    if isinstance(cm, CovarianceMatrix):
        return cm.sigma
    return CovarianceMatrix(cm).sigma


def block_determinants(sigma: np.ndarray):
    """Determinants (A, B, C, D) of the mode blocks and the full matrix.

    Works on stacked inputs of shape (..., 4, 4).
    """
    A = np.linalg.det(sigma[..., :2, :2])
    B = np.linalg.det(sigma[..., 2:, 2:])
    C = np.linalg.det(sigma[..., :2, 2:])
    D = np.linalg.det(sigma)
    return A, B, C, D


def _nu_pair(sigma: np.ndarray, tol: float = 1e-9) -> tuple[float, float]:
    A, B, C, D = block_determinants(sigma)
    delta = A + B + 2 * C
    disc = delta * delta - 4 * D
    if disc < -tol:
        raise NumericalError(f"symplectic-eigenvalue discriminant {disc} < -tol")
    # Noise-level discriminants are exact degeneracies (nu- = nu+); snapping
    # them to zero avoids sqrt-amplified rounding in the eigenvalues.
    if disc < 1e-13 * (delta * delta + 4 * abs(D)):
        disc = 0.0
    root = np.sqrt(disc)
    # Small root via 2D/(delta + root): no cancellation when nu- << nu+.
    lo = 2 * D / (delta + root) if delta + root > 0 else 0.0
    hi = (delta + root) / 2
    return np.sqrt(max(lo, 0.0)), np.sqrt(max(hi, 0.0))


def symplectic_eigenvalues(cm, tol: float = 1e-9) -> tuple[float, float]:
    """Symplectic eigenvalues (nu_minus, nu_plus) of a two-mode state.

    Computed from the invariants: nu^2 are the roots of
    x^2 - (A + B + 2C) x + D.  Small negative discriminants (degenerate
    spectra on the physicality boundary) are clamped to zero; beyond -tol
    a NumericalError is raised.
    """
    return _nu_pair(_sigma_of(cm), tol)


def validate_bona_fide(cm, tol: float = 1e-9) -> BonaFideReport:
    """Check the uncertainty relation sigma + i*Omega >= 0.

    Returns a report carrying nu_minus; physical iff nu_minus >= 1 - tol.
    """
    nu_min, _ = _nu_pair(_sigma_of(cm))
    return BonaFideReport(physical=bool(nu_min >= 1 - tol), nu_min=nu_min)


# Gate tolerance for operation preconditions.  Looser than the 1e-9
# validation default: pure and boundary states that passed through any
# floating-point congruence sit up to ~1e-8 below the bona fide surface
# (degenerate-spectrum noise is sqrt-amplified).
_PHYS_GATE_TOL = 1e-7


def _require_physical(cm, tol: float = _PHYS_GATE_TOL) -> np.ndarray:
    sigma = _sigma_of(cm)
    nu_min, _ = _nu_pair(sigma)
    if nu_min < 1 - tol:
        raise InvalidStateError(f"state is unphysical: nu_minus = {nu_min} < 1")
    return sigma


def local_invariants(cm) -> LocalInvariants:
    """Local symplectic invariants (A, B, C, D) of a covariance matrix."""
    A, B, C, D = block_determinants(_sigma_of(cm))
    return LocalInvariants(float(A), float(B), float(C), float(D))


def to_standard_form(cm, tol: float = 1e-9) -> StandardForm:
    """Reduce a physical state to standard form (a, b, c, d).

    The reduction is computed from the invariants rather than by explicit
    diagonalizing symplectics: a = sqrt(A), b = sqrt(B), and c^2, d^2 are
    the roots of x^2 - Sx + C^2 with S = (AB + C^2 - D)/sqrt(AB); d carries
    the sign of C (with d = 0 when C = 0), so c >= |d| >= 0.
    """
    sigma = _require_physical(cm)
    A, B, C, D = block_determinants(sigma)
    a = np.sqrt(A)
    b = np.sqrt(B)
    S = (A * B + C * C - D) / np.sqrt(A * B)
    disc = S * S - 4 * C * C
    if disc < -tol:
        raise NumericalError(f"inconsistent invariants: root discriminant {disc} < -tol")
    root = np.sqrt(max(disc, 0.0))
    hi = max((S + root) / 2, 0.0)
    lo = max((S - root) / 2, 0.0)
    c = np.sqrt(hi)
    d = np.sign(C) * np.sqrt(lo)
    return StandardForm(float(a), float(b), float(c), float(d))


def from_standard_form(sf: StandardForm) -> CovarianceMatrix:
    """Covariance matrix with diagonal blocks diag(a,a), diag(b,b), diag(c,d)."""
    if not isinstance(sf, StandardForm):
        sf = StandardForm(*sf)
    return CovarianceMatrix(sf.matrix())


def partial_transpose_B(cm) -> CovarianceMatrix:
    """Momentum flip on mode B: returns P sigma P with P = diag(1, 1, 1, -1)."""
    sigma = _sigma_of(cm)
    return CovarianceMatrix(_PT_B @ sigma @ _PT_B)


def pt_min_symplectic_eigenvalue(cm, tol: float = 1e-9) -> float:
    """Smallest symplectic eigenvalue of the partially transposed state.

    Equals sqrt((H - sqrt(H^2 - 4D))/2) with H = A + B - 2C; the state is
    separable iff this is >= 1 (PPT is necessary and sufficient for
    1x1-mode Gaussian states).
    """
    sigma = _sigma_of(cm)
    nu, _ = _nu_pair(_PT_B @ sigma @ _PT_B, tol)
    return float(nu)


def log_negativity(cm, tol: float = 1e-9) -> float:
    """Logarithmic negativity max{0, -ln nu_tilde} of a physical state."""
    sigma = _require_physical(cm)
    nu, _ = _nu_pair(_PT_B @ sigma @ _PT_B, tol)
    return float(max(0.0, -np.log(nu)))


def is_separable(cm, tol: float = 1e-9) -> bool:
    """True iff the partial transpose is physical (PPT criterion)."""
    return pt_min_symplectic_eigenvalue(cm, tol) >= 1 - tol


def mean_photon_A(cm) -> float:
    """Mean photon number of mode A: (tr alpha - 2)/4."""
    sigma = _sigma_of(cm)
    return float((sigma[0, 0] + sigma[1, 1] - 2) / 4)


def swap_modes(cm) -> CovarianceMatrix:
    """Exchange modes A and B (congruence by the swap permutation)."""
    sigma = _sigma_of(cm)
    return CovarianceMatrix(_SWAP @ sigma @ _SWAP.T)


def apply_local_symplectic(cm, s_a: np.ndarray, s_b: np.ndarray, tol: float = 1e-10) -> CovarianceMatrix:
    """Congruence by a local symplectic S_A (+) S_B.

    Both 2x2 blocks must have unit determinant within tol.  Leaves the
    local invariants (A, B, C, D) unchanged.
    """
    s_a = np.asarray(s_a, dtype=float)
    s_b = np.asarray(s_b, dtype=float)
    for name, s in (("S_A", s_a), ("S_B", s_b)):
        if s.shape != (2, 2) or not np.all(np.isfinite(s)):
            raise InvalidTransformError(f"{name} must be a finite 2x2 matrix")
        if abs(np.linalg.det(s) - 1) > tol:
            raise InvalidTransformError(f"{name} is not symplectic: det = {np.linalg.det(s)}")
    g = np.zeros((4, 4))
    g[:2, :2] = s_a
    g[2:, 2:] = s_b
    sigma = _sigma_of(cm)
    return CovarianceMatrix(g @ sigma @ g.T)


def apply_loss_B(cm, eta: float) -> CovarianceMatrix:
    """Pure-loss channel of transmissivity eta on mode B.

    sigma -> X sigma X^T + Y with X = I (+) sqrt(eta) I and
    Y = 0 (+) (1 - eta) I.  Physicality is preserved.
    """
    if not 0 < eta <= 1:
        raise InvalidStateError(f"transmissivity must lie in (0, 1], got {eta}")
    sigma = _sigma_of(cm)
    x = np.diag([1.0, 1.0, np.sqrt(eta), np.sqrt(eta)])
    y = np.diag([0.0, 0.0, 1 - eta, 1 - eta])
    return CovarianceMatrix(x @ sigma @ x.T + y)


def random_local_symplectic(rng: np.random.Generator) -> np.ndarray:
    """Random single-mode symplectic R(psi) S(zeta) R(theta) (Euler form).

    psi and theta are uniform on [0, 2*pi); log2(zeta) is uniform on [-1, 1].
    """
    psi, theta = rng.uniform(0.0, 2 * np.pi, size=2)
    zeta = 2.0 ** rng.uniform(-1.0, 1.0)

    def _rot(t):
        c, s = np.cos(t), np.sin(t)
        return np.array([[c, -s], [s, c]])

    return _rot(psi) @ np.diag([zeta, 1 / zeta]) @ _rot(theta)
