"""Probability of direction reversal ``S1(t) = sum_x a1(x, t)**2``.

``S1`` telescopes: ``S1(t+1) - S1(t) = mu/sqrt(1+mu**2) * a1(0, 2t)``, hence
``S1(t) = mu/sqrt(1+mu**2) * sum_{k=1}^{t-1} a1(0, 2k)``, and for
``0 <= mu <= 1`` it tends to ``mu / (2 sqrt(1 + mu**2))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .exact import QuadraticNumber
from .lattice import LatticeParams, Mode, iter_rows
from .special import a1_zero_sequence

__all__ = [
    "ReversalSeries",
    "reversal_series",
    "reversal_probability_direct",
    "reversal_probability_series",
    "left_probability_sweep",
    "reversal_limit",
    "ConvergenceReport",
    "convergence_report",
]


def _params(mu, mode) -> LatticeParams:
    return mu if isinstance(mu, LatticeParams) else LatticeParams(mu, Mode(mode))


def reversal_probability_direct(t: int, mu, mode: Mode | str = Mode.FLOAT):
    """``sum_x a1(x, t)**2`` read off the evolved slice."""
    params = _params(mu, mode)
    for row in iter_rows(params, t):
        pass
    return row.left_probability()


def left_probability_sweep(mu: float, t_max: int) -> np.ndarray:
    """``S1(t)`` for ``t = 1..t_max`` from one float sweep (``out[t-1]``)."""
    params = LatticeParams.floating(mu)
    out = np.empty(t_max)
    for row in iter_rows(params, t_max):
        out[row.t - 1] = np.dot(row.a1, row.a1)
    return out


def _series_factor(params: LatticeParams):
    """``mu / sqrt(1 + mu**2)``, exact as ``p sqrt(N) / N``."""
    if params.is_exact:
        n = params.norm_base
        return QuadraticNumber(0, Fraction(params.p, n), n)
    return params.mu / math.sqrt(1.0 + params.mu**2)


def reversal_probability_series(t: int, mu, mode: Mode | str = Mode.FLOAT):
    """``mu/sqrt(1+mu**2) * sum_{k=1}^{t-1} a1(0, 2k)``.

    Float mode takes the terms from Legendre polynomials; exact mode takes them
    from the exact lattice and returns a Fraction.  ``t = 1`` is the empty sum.
    """
    params = _params(mu, mode)
    if t < 1:
        raise DomainError(f"t must be >= 1, got {t}")
    if t == 1:
        return Fraction(0) if params.is_exact else 0.0
    if not params.is_exact:
        terms = a1_zero_sequence(t - 2, params.mu)
        return _series_factor(params) * math.fsum(terms)
    # p * d1(0, 2k) / N**k per term, accumulated over a common denominator
    n, p = params.norm_base, params.p
    total = 0
    for row in iter_rows(params, 2 * (t - 1)):
        if row.t % 2 == 0:
            k = row.t // 2
            total += p * int(row.a1[row.t // 2]) * n ** (t - 1 - k)
    return Fraction(total, n ** (t - 1))


def reversal_limit(mu: float) -> float:
    """``mu / (2 sqrt(1 + mu**2))`` for ``0 <= mu <= 1``."""
    mu = float(mu)
    if not 0.0 <= mu <= 1.0:
        raise DomainError(f"the reversal limit holds for 0 <= mu <= 1, got {mu}")
    return mu / (2.0 * math.sqrt(1.0 + mu * mu))


@dataclass
class ReversalSeries:
    """Per-slice sums ``S1``, ``S2``, ``S12`` for ``t = 1..t_max`` and the
    axis values ``terms[k-1] = a1(0, 2k)`` for ``k = 1..t_max``.
    """

    params: LatticeParams
    t_max: int
    terms: list = field(default_factory=list)
    s1: list = field(default_factory=list)
    s2: list = field(default_factory=list)
    s12: list = field(default_factory=list)

    @property
    def factor(self):
        return _series_factor(self.params)

    def partial(self, t: int):
        """Series value for ``S1(t)`` built from ``terms``."""
        total = sum(self.terms[: t - 1], Fraction(0) if self.params.is_exact else 0.0)
        return self.factor * total

    def _residual(self, values) -> float:
        return max((abs(float(v)) for v in values), default=0.0)

    def conservation_residual(self) -> float:
        """``max_t |S1 + S2 - 1|``."""
        return self._residual(a + b - 1 for a, b in zip(self.s1, self.s2))

    def telescoping_residual(self) -> float:
        """``max_t |S1(t+1) - S1(t) - factor * a1(0, 2t)|``."""
        f = self.factor
        return self._residual(
            self.s1[t] - self.s1[t - 1] - f * self.terms[t - 1] for t in range(1, self.t_max)
        )

    def cross_relation_residual(self) -> float:
        """``max_t |2 S12 + mu S2 - sqrt(1+mu**2) a1(0,2t) - mu S1|``."""
        mu = self.params.mu
        if self.params.is_exact:
            n = self.params.norm_base
            root = QuadraticNumber(0, Fraction(1, self.params.q), n)
        else:
            root = math.sqrt(1.0 + mu * mu)
        return self._residual(
            2 * self.s12[t - 1] + mu * self.s2[t - 1] - root * self.terms[t - 1] - mu * self.s1[t - 1]
            for t in range(1, self.t_max + 1)
        )

    def series_residual(self) -> float:
        """``max_t |S1(t) - factor * sum_{k<t} a1(0,2k)|``."""
        f = self.factor
        acc = Fraction(0) if self.params.is_exact else 0.0
        worst = 0.0
        for t in range(1, self.t_max + 1):
            worst = max(worst, abs(float(self.s1[t - 1] - f * acc)))
            acc = acc + self.terms[t - 1]
        return worst


def reversal_series(mu, t_max: int, mode: Mode | str = Mode.FLOAT) -> ReversalSeries:
    """Sweep the lattice to ``2 * t_max`` collecting the reversal diagnostics."""
    params = _params(mu, mode)
    series = ReversalSeries(params, t_max)
    for row in iter_rows(params, 2 * t_max):
        if row.t <= t_max:
            series.s1.append(row.left_probability())
            series.s2.append(row.right_probability())
            series.s12.append(row.cross_sum())
        if row.t % 2 == 0:
            series.terms.append(row.amplitude(0).a1)
    return series


@dataclass(frozen=True)
class ConvergenceReport:
    """``|S1(t) - limit| * sqrt(t)`` over ``t = 1..t_max``."""

    mu: float
    limit: float
    s1: np.ndarray
    scaled_error: np.ndarray

    @property
    def t_max(self) -> int:
        return len(self.s1)

    def bound(self, t_upto: int | None = None) -> float:
        """Running maximum of the scaled error up to ``t_upto``."""
        upto = self.t_max if t_upto is None else t_upto
        return float(np.max(self.scaled_error[:upto]))

    def sign_changes(self, t_from: int = 1) -> int:
        s = np.sign(self.s1[t_from - 1 :] - self.limit)
        s = s[s != 0]
        return int(np.count_nonzero(s[1:] != s[:-1]))


def convergence_report(mu: float, t_max: int) -> ConvergenceReport:
    """Series-form ``S1`` (Legendre terms, cumulative) against the limit."""
    limit = reversal_limit(mu)
    factor = mu / math.sqrt(1.0 + mu * mu)
    terms = a1_zero_sequence(max(t_max - 2, 0), mu)[: t_max - 1]
    s1 = np.concatenate([[0.0], factor * np.cumsum(terms)])[:t_max]
    t = np.arange(1, t_max + 1)
    return ConvergenceReport(mu, limit, s1, np.abs(s1 - limit) * np.sqrt(t))
