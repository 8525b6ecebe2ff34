"""Finite ladder representations of the deformed oscillator.

The algebra has generators ``a`` (lowering), ``abar`` (raising) and ``N``
(number).  A highest-weight-free two-sided ladder truncates to a
(k+1)-dimensional block exactly when the number eigenvalue base ``nu0``
sits on a distinguished branch; :func:`build_rep` produces the normalized
block, :func:`build_generic_window` a window of the untruncated ladder.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateParameter, DimensionTooLarge, ParityViolation
from .qcore import GUARD_BAND, Mode, QParams, make_params, qnum

#: default cap on the truncation index
MAX_K = 64


@dataclass(frozen=True)
class Rep:
    """Matrix realization on basis ``e_0 .. e_k`` (column = input state)."""

    params: QParams
    k: int
    A: np.ndarray
    Abar: np.ndarray
    Nmat: np.ndarray
    nu0: complex
    lambdas: tuple[complex, ...]
    normalized: bool

    @property
    def dim(self) -> int:
        return self.k + 1


def _freeze(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


def nu0(params: QParams, k: int) -> complex:
    """Base number eigenvalue of the truncated (k+1)-dimensional block."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    base = -(k + 1) / 2.0
    shift = (2 * params.l + 1) * math.pi / (2 * params.epsilon)
    if params.mode is Mode.UNIMODULAR:
        return complex(base + shift, 0.0)
    return complex(base, shift)


def _parity_factor(params: QParams) -> float:
    """Sign-carrying prefactor of the squared-norm ratios; positive iff the
    branch index obeys the sign rule."""
    if params.mode is Mode.UNIMODULAR:
        return (-1.0) ** params.l * math.tan(params.epsilon / 2.0)
    return (-1.0) ** (params.l + 1) * math.tanh(params.epsilon / 2.0)


def require_parity(params: QParams) -> float:
    factor = _parity_factor(params)
    if factor <= 0.0:
        raise ParityViolation(
            f"l={params.l} gives nonpositive norm prefactor {factor} "
            f"for mode={params.mode.value}, epsilon={params.epsilon}"
        )
    return factor


def choose_branch(mode: Mode | str, epsilon: float) -> int:
    """Smallest nonnegative branch index satisfying the sign rule."""
    mode = Mode(mode)
    if abs(epsilon) < GUARD_BAND:
        raise DegenerateParameter(f"epsilon={epsilon} inside guard band of 0")
    if mode is Mode.UNIMODULAR:
        if _dist_to_pi_multiples(epsilon) < GUARD_BAND:
            raise DegenerateParameter(
                f"epsilon={epsilon} inside guard band of a multiple of pi"
            )
        return 0 if math.tan(epsilon / 2.0) > 0.0 else 1
    return 1 if epsilon > 0.0 else 0


def _dist_to_pi_multiples(x: float) -> float:
    return abs(math.remainder(x, math.pi))


def _half_bracket_real(params: QParams, n: float) -> float:
    """Real value of the deformed number of ``n`` at base ``sqrt(q)``."""
    h = params.epsilon / 2.0
    if params.mode is Mode.UNIMODULAR:
        return math.sin(n * h) / math.sin(h)
    return math.sinh(n * h) / math.sinh(h)


def norm_factors(params: QParams, k: int) -> list[float]:
    """Positive real factors ``|psi_n|^2 / |psi_{n-1}|^2`` for n = 1..k."""
    factor = require_parity(params)
    return [
        factor * _half_bracket_real(params, n) * _half_bracket_real(params, k + 1 - n)
        for n in range(1, k + 1)
    ]


def lambda_seq(params: QParams, k: int) -> list[complex]:
    """Eigenvalues of ``a*abar`` on the truncated block, n = 1..k.

    Real (and positive while ``k*|eps|/2 < pi``) in the unimodular mode,
    purely imaginary with positive imaginary part on the real line.
    """
    factors = norm_factors(params, k)
    if params.mode is Mode.UNIMODULAR:
        return [complex(f, 0.0) for f in factors]
    return [complex(0.0, f) for f in factors]


def lambda_generic(nu0_value: complex, lambda0: complex, n: int, params: QParams) -> complex:
    """Ladder eigenvalue from the first-order recurrence, off any truncation."""
    half = params.log_q / 2.0
    num = params.qpow(nu0_value + n / 2.0) + params.qpow(-nu0_value - n / 2.0)
    den = cmath.exp(half) + cmath.exp(-half)
    return lambda0 + qnum(n, half) * num / den


def build_rep(params: QParams, k: int, max_k: int = MAX_K) -> Rep:
    """Normalized truncated representation on ``e_0 .. e_k``.

    Raising entries sit on the subdiagonal and are real nonnegative in the
    positivity regime; lowering entries carry an extra factor ``i`` on the
    real line so that the adjoint realizes the ``-i`` involution there.
    """
    if k < 0:
        raise ValueError(f"k={k} is negative")
    if k > max_k:
        raise DimensionTooLarge(f"k={k} exceeds the cap {max_k}")
    lambdas = lambda_seq(params, k)
    base = nu0(params, k)
    d = k + 1
    A = np.zeros((d, d), dtype=complex)
    Abar = np.zeros((d, d), dtype=complex)
    if params.mode is Mode.UNIMODULAR:
        roots = [cmath.sqrt(lam) for lam in lambdas]
        lower = roots
    else:
        roots = [cmath.sqrt(lam.imag) for lam in lambdas]
        lower = [1j * r for r in roots]
    for n in range(k):
        Abar[n + 1, n] = roots[n]
        A[n, n + 1] = lower[n]
    Nmat = np.diag([base + n for n in range(d)])
    return Rep(
        params=params,
        k=k,
        A=_freeze(A),
        Abar=_freeze(Abar),
        Nmat=_freeze(Nmat),
        nu0=base,
        lambdas=tuple(lambdas),
        normalized=True,
    )


def build_generic_window(
    nu0_value: complex, lambda0: complex, params: QParams, span: int
) -> Rep:
    """Unnormalized window ``e_0 .. e_{span-1}`` of the two-sided ladder.

    Raising acts with coefficient 1, lowering with the recurrence
    eigenvalue.  The two boundary columns are truncation artifacts: the
    defining relations hold only on ``e_1 .. e_{span-2}``.
    """
    if span < 3:
        raise ValueError(f"span={span} too small for an interior")
    d = span
    A = np.zeros((d, d), dtype=complex)
    Abar = np.zeros((d, d), dtype=complex)
    lambdas = [lambda_generic(nu0_value, lambda0, n, params) for n in range(1, d)]
    for n in range(d - 1):
        Abar[n + 1, n] = 1.0
        A[n, n + 1] = lambdas[n]
    Nmat = np.diag([nu0_value + n for n in range(d)])
    return Rep(
        params=params,
        k=d - 1,
        A=_freeze(A),
        Abar=_freeze(Abar),
        Nmat=_freeze(Nmat),
        nu0=complex(nu0_value),
        lambdas=tuple(lambdas),
        normalized=False,
    )


@dataclass(frozen=True)
class TruncationReport:
    condition_value: complex
    admissible: bool


def truncation_condition(params: QParams, k: int, nu0_value: complex) -> complex:
    """Raw truncation condition at an arbitrary base eigenvalue.

    Unimodular: ``cos(eps*(2*nu0+k+1)/2) * sin(eps*(k+1)/2)``.  Real line:
    ``cosh(eps*(mu0+k+1)) - cosh(eps*mu0)`` with ``mu0`` the real part of
    ``nu0`` (its imaginary part is pinned by the mode).
    """
    eps = params.epsilon
    if params.mode is Mode.UNIMODULAR:
        return cmath.cos(eps * (2.0 * nu0_value + k + 1) / 2.0) * cmath.sin(
            eps * (k + 1) / 2.0
        )
    mu0 = complex(nu0_value).real
    return cmath.cosh(eps * (mu0 + k + 1)) - cmath.cosh(eps * mu0)


def truncation_admissible(params: QParams, k: int, tol: float = 1e-10) -> TruncationReport:
    """Whether the distinguished ``nu0`` satisfies the truncation condition."""
    value = truncation_condition(params, k, nu0(params, k))
    return TruncationReport(condition_value=value, admissible=abs(value) < tol)


def auto_params(mode: Mode | str, epsilon: float) -> QParams:
    """Parameters with the branch index picked by :func:`choose_branch`."""
    return make_params(mode, epsilon, choose_branch(mode, epsilon))
