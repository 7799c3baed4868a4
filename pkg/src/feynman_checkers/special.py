"""Legendre polynomials and the x = 0 amplitude they describe.

On the axis ``x = 0`` the left-moving amplitude is a Legendre polynomial::

    a1(0, 2n+2) = mu / sqrt(1 + mu**2) * P_n((1 - mu**2) / (1 + mu**2))

and Szego's asymptotics for ``P_n(cos theta)`` with ``tan(theta/2) = mu`` give
its large-n form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "legendre",
    "legendre_sequence",
    "legendre_argument",
    "a1_zero_via_legendre",
    "a1_zero_sequence",
    "legendre_sum_closed",
    "legendre_generating_function",
    "legendre_abel_sum",
    "AsymptoteParams",
    "asymptotic_a1_zero",
    "DEFAULT_DELTA",
]

DEFAULT_DELTA = 0.05


def legendre(n: int, x: float) -> float:
    """``P_n(x)`` by Bonnet's recurrence ``(k+1)P_{k+1} = (2k+1)xP_k - kP_{k-1}``."""
    if n < 0:
        raise DomainError(f"degree must be non-negative, got {n}")
    prev, cur = 1.0, float(x)
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * x * cur - k * prev) / (k + 1)
    return cur


def legendre_sequence(n_max: int, x) -> np.ndarray:
    """``[P_0(x), ..., P_{n_max}(x)]``; ``x`` may be an array (extra trailing axes)."""
    if n_max < 0:
        raise DomainError(f"degree must be non-negative, got {n_max}")
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = x
    for k in range(1, n_max):
        out[k + 1] = ((2 * k + 1) * x * out[k] - k * out[k - 1]) / (k + 1)
    return out


def legendre_argument(mu: float) -> float:
    """``(1 - mu**2) / (1 + mu**2)``, i.e. ``cos(2 arctan mu)``."""
    return (1.0 - mu * mu) / (1.0 + mu * mu)


def _check_mu(mu: float) -> None:
    if not 0.0 <= mu <= 1.0:
        raise DomainError(f"mu must lie in [0, 1], got {mu}")


def a1_zero_via_legendre(n: int, mu: float) -> float:
    """``a1(0, 2n+2)`` through the Legendre polynomial ``P_n``."""
    _check_mu(mu)
    return mu / math.sqrt(1.0 + mu * mu) * legendre(n, legendre_argument(mu))


def a1_zero_sequence(n_max: int, mu: float) -> np.ndarray:
    """``a1(0, 2n+2)`` for ``n = 0..n_max`` in one recurrence pass."""
    _check_mu(mu)
    return mu / math.sqrt(1.0 + mu * mu) * legendre_sequence(n_max, legendre_argument(mu))


def legendre_sum_closed(x: float) -> float:
    """Closed value ``1/sqrt(2 - 2x)`` of ``sum_n P_n(x)`` for ``0 < x < 1``.

    The series converges only conditionally; see :func:`legendre_abel_sum`.
    """
    if not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0, 1), got {x}")
    return 1.0 / math.sqrt(2.0 - 2.0 * x)


def legendre_generating_function(x: float, r: float) -> float:
    """``1/sqrt(1 - 2xr + r**2) = sum_n P_n(x) r**n``."""
    return 1.0 / math.sqrt(1.0 - 2.0 * x * r + r * r)


def legendre_abel_sum(x: float, r: float, tol: float = 1e-16) -> float:
    """Sum ``P_n(x) r**n`` term by term until ``r**n`` drops below ``tol``."""
    if not 0.0 <= r < 1.0:
        raise DomainError(f"Abel parameter must lie in [0, 1), got {r}")
    n_terms = 1 if r == 0 else int(math.ceil(math.log(tol) / math.log(r))) + 1
    p = legendre_sequence(n_terms, x)
    weights = r ** np.arange(n_terms + 1)
    return math.fsum(p * weights)


@dataclass(frozen=True)
class AsymptoteParams:
    """Parameters of the large-n form, with ``theta = 2 arctan(mu)``."""

    n: int
    mu: float
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        if self.delta <= 0:
            raise DomainError(f"delta must be positive, got {self.delta}")
        if not self.delta <= self.mu <= 1.0 - self.delta:
            raise DomainError(
                f"mu={self.mu} outside [delta, 1 - delta] = [{self.delta}, {1 - self.delta}]"
            )
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")

    @property
    def theta(self) -> float:
        return 2.0 * math.atan(self.mu)

    @property
    def phase(self) -> float:
        return (2 * self.n + 1) * math.atan(self.mu) - math.pi / 4

    @property
    def envelope(self) -> float:
        return math.sqrt(self.mu / (math.pi * self.n))


def asymptotic_a1_zero(n: int, mu: float, delta: float = DEFAULT_DELTA) -> float:
    """Main term of ``a1(0, 2n+2)`` for large ``n``; remainder is ``O(n**-1.5)``.

    ``sqrt(mu / (pi n)) * cos((2n+1) arctan(mu) - pi/4)``.  The prefactor is
    Szego's ``sqrt(2 / (pi n sin theta))`` times ``mu / sqrt(1 + mu**2)`` with
    ``sin theta = 2mu / (1 + mu**2)``.
    """
    params = AsymptoteParams(n, mu, delta)
    return params.envelope * math.cos(params.phase)
