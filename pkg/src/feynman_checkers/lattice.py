"""Checker-path amplitudes of the mass model on the integer lattice.

Coordinates are lattice units throughout; the model depends on the mass and
the lattice step only through ``mu = m * eps``.  A time slice is stored as two
dense arrays over ``x = -t, -t+2, ..., t`` (index ``j`` holds ``x = 2j - t``).

Two arithmetic modes share the same sweep:

* ``Mode.FLOAT``: arrays hold the amplitudes themselves and every step is
  multiplied by ``1/sqrt(1 + mu**2)``.
* ``Mode.EXACT``: ``mu = p/q`` must be rational; arrays hold integer
  numerators ``d`` with ``a = d / N**((t-1)/2)`` where ``N = p**2 + q**2``.
  One step is ``d1' = q*d1 + p*d2``, ``d2' = q*d2 - p*d1`` and no division
  ever happens.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import CheckersError, DomainError, ResourceLimitError
from .exact import QuadraticNumber, as_fraction, scaled

__all__ = [
    "Mode",
    "LatticeParams",
    "Amplitude",
    "AmplitudeRow",
    "CheckerPath",
    "SymmetryReport",
    "T_CAP",
    "BRUTEFORCE_T_CAP",
    "initial_row",
    "evolve_row",
    "iter_rows",
    "row_at",
    "amplitude",
    "amplitude_bruteforce",
    "bruteforce_row",
    "amplitude_explicit",
    "probability",
    "huygens_compose",
    "check_symmetry",
]

#: Largest lattice time accepted by the dynamic-programming routines.
T_CAP = 200_000
#: Largest lattice time accepted by path enumeration (2**(t-1) paths).
BRUTEFORCE_T_CAP = 24


class Mode(str, enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


@dataclass(frozen=True)
class LatticeParams:
    """Mass-step product ``mu`` and the arithmetic mode.

    In exact mode ``mu`` is stored as a Fraction (floats are read through their
    shortest repr, so ``0.25`` means ``1/4``).  Values above 1 are accepted here;
    the limit theorems check their own ranges.
    """

    mu: Fraction | float = 1.0
    mode: Mode = Mode.FLOAT

    def __post_init__(self):
        mode = Mode(self.mode)
        object.__setattr__(self, "mode", mode)
        if mode is Mode.EXACT:
            try:
                mu = as_fraction(self.mu)
            except (ValueError, ZeroDivisionError) as exc:
                raise CheckersError(f"exact mode needs a rational mu, got {self.mu!r}") from exc
        else:
            try:
                mu = float(Fraction(self.mu)) if isinstance(self.mu, str) else float(self.mu)
            except (ValueError, ZeroDivisionError) as exc:
                raise CheckersError(f"invalid mu {self.mu!r}") from exc
            if not math.isfinite(mu):
                raise CheckersError(f"mu must be finite, got {self.mu!r}")
        if mu < 0:
            raise DomainError(f"mu must be non-negative, got {self.mu!r}")
        object.__setattr__(self, "mu", mu)

    @classmethod
    def exact(cls, mu=1) -> LatticeParams:
        return cls(mu, Mode.EXACT)

    @classmethod
    def floating(cls, mu=1.0) -> LatticeParams:
        return cls(mu, Mode.FLOAT)

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT

    @property
    def p(self) -> int:
        return self.mu.numerator

    @property
    def q(self) -> int:
        return self.mu.denominator

    @property
    def norm_base(self) -> int:
        """``N = p**2 + q**2``; exact amplitudes at time t carry ``N**(-(t-1)/2)``."""
        return self.p**2 + self.q**2

    def step_coefficients(self):
        """Return ``(diag, off, scale)`` with ``a1' = scale*(diag*a1 + off*a2)``."""
        if self.is_exact:
            return self.q, self.p, 1
        return 1.0, self.mu, 1.0 / math.sqrt(1.0 + self.mu * self.mu)


@dataclass(frozen=True)
class Amplitude:
    """Real (``a1``, left-moving) and imaginary (``a2``, right-moving) parts."""

    a1: QuadraticNumber | float
    a2: QuadraticNumber | float

    @property
    def probability(self):
        p = self.a1 * self.a1 + self.a2 * self.a2
        if isinstance(p, QuadraticNumber):
            return p.to_fraction()
        return p

    def __complex__(self):
        return complex(float(self.a1), float(self.a2))

    def as_floats(self) -> tuple[float, float]:
        return float(self.a1), float(self.a2)


@dataclass(frozen=True)
class CheckerPath:
    """A lattice path from the origin; each step is ``+1`` (right) or ``-1`` (left)."""

    steps: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.steps):
            raise CheckersError("steps must be +1 or -1")

    @property
    def turns(self) -> int:
        return sum(1 for a, b in zip(self.steps, self.steps[1:]) if a != b)

    @property
    def end(self) -> tuple[int, int]:
        return sum(self.steps), len(self.steps)


@dataclass(frozen=True, eq=False)
class AmplitudeRow:
    """All amplitudes on the slice ``t``; entries outside ``|x| <= t`` are zero.

    ``a1[j]``, ``a2[j]`` belong to ``x = 2j - t``.  In exact mode they are the
    integer numerators described in the module docstring.
    """

    t: int
    a1: np.ndarray
    a2: np.ndarray
    params: LatticeParams = field(default_factory=LatticeParams)

    def __post_init__(self):
        if len(self.a1) != self.t + 1 or len(self.a2) != self.t + 1:
            raise CheckersError(f"row at t={self.t} must have {self.t + 1} entries")
        self.a1.flags.writeable = False
        self.a2.flags.writeable = False

    @property
    def xs(self) -> np.ndarray:
        return np.arange(-self.t, self.t + 1, 2)

    def index(self, x: int) -> int | None:
        if abs(x) > self.t or (x + self.t) % 2:
            return None
        return (x + self.t) // 2

    def _value(self, numerator):
        if self.params.is_exact:
            return scaled(int(numerator), self.params.norm_base, self.t - 1)
        return float(numerator)

    def amplitude(self, x: int) -> Amplitude:
        j = self.index(x)
        if j is None:
            zero = QuadraticNumber(0) if self.params.is_exact else 0.0
            return Amplitude(zero, zero)
        return Amplitude(self._value(self.a1[j]), self._value(self.a2[j]))

    def as_dict(self) -> dict[int, Amplitude]:
        return {int(x): self.amplitude(int(x)) for x in self.xs}

    def float_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Amplitudes as float64 arrays (exact rows are rounded once per entry)."""
        if not self.params.is_exact:
            return np.asarray(self.a1, dtype=float), np.asarray(self.a2, dtype=float)
        n, e = self.params.norm_base, self.t - 1
        denom = n ** (e // 2)
        extra = 1.0 / math.sqrt(n) if e % 2 else 1.0

        def conv(arr):
            return np.array([float(Fraction(int(d), denom)) * extra for d in arr])

        return conv(self.a1), conv(self.a2)

    def _sum_of(self, values):
        if self.params.is_exact:
            return Fraction(int(sum(values)), self.params.norm_base ** (self.t - 1))
        return float(np.sum(values))

    def left_probability(self):
        """``S1 = sum_x a1(x,t)**2``: probability that the last move is up-left."""
        return self._sum_of(self.a1 * self.a1)

    def right_probability(self):
        """``S2 = sum_x a2(x,t)**2``."""
        return self._sum_of(self.a2 * self.a2)

    def cross_sum(self):
        """``S12 = sum_x a1(x,t) * a2(x,t)``."""
        return self._sum_of(self.a1 * self.a2)

    def total_probability(self):
        return self._sum_of(self.a1 * self.a1 + self.a2 * self.a2)

    def probabilities(self):
        """``P(x,t)`` per entry: Fractions in exact mode, float64 otherwise."""
        if self.params.is_exact:
            denom = self.params.norm_base ** (self.t - 1)
            return [Fraction(int(u * u + v * v), denom) for u, v in zip(self.a1, self.a2)]
        return self.a1 * self.a1 + self.a2 * self.a2


def _zeros(n: int, exact: bool) -> np.ndarray:
    return np.zeros(n, dtype=object) if exact else np.zeros(n)


def _check_time(t: int, cap: int = None) -> None:
    if t < 1:
        raise CheckersError(f"lattice time must be >= 1, got {t}")
    cap = T_CAP if cap is None else cap
    if t > cap:
        raise ResourceLimitError(f"t={t} exceeds the cap of {cap}")


def step_arrays(a1, a2, diag, off, scale, sign1=None, sign2=None, exact=False):
    """One Dirac step on raw slice arrays; returns the slice one unit later.

    ``a1'(x) = scale*sign1*(diag*a1(x+1) + off*a2(x+1))`` and
    ``a2'(x) = scale*sign2*(diag*a2(x-1) - off*a1(x-1))``.  ``sign1``/``sign2``
    are the edge-field values along the new slice (``None`` means +1).
    """
    n = len(a1)
    new1 = _zeros(n + 1, exact)
    new2 = _zeros(n + 1, exact)
    new1[:n] = diag * a1 + off * a2
    new2[1:] = diag * a2 - off * a1
    if scale != 1:
        new1 *= scale
        new2 *= scale
    if sign1 is not None:
        new1 *= sign1
    if sign2 is not None:
        new2 *= sign2
    return new1, new2


def initial_row(params: LatticeParams | None = None) -> AmplitudeRow:
    """The slice ``t = 1``: ``a(1,1) = (0, 1)`` and zero elsewhere."""
    params = params or LatticeParams()
    exact = params.is_exact
    a1 = _zeros(2, exact)
    a2 = _zeros(2, exact)
    a2[1] = 1 if exact else 1.0
    return AmplitudeRow(1, a1, a2, params)


def evolve_row(row: AmplitudeRow, params: LatticeParams | None = None) -> AmplitudeRow:
    """Advance ``row`` by one time unit with the lattice Dirac equation."""
    if params is not None and params != row.params:
        raise CheckersError("params do not match the row being evolved")
    params = row.params
    _check_time(row.t + 1)
    diag, off, scale = params.step_coefficients()
    a1, a2 = step_arrays(row.a1, row.a2, diag, off, scale, exact=params.is_exact)
    return AmplitudeRow(row.t + 1, a1, a2, params)


def iter_rows(params: LatticeParams, t_max: int) -> Iterator[AmplitudeRow]:
    """Yield the slices ``t = 1, ..., t_max``."""
    _check_time(t_max)
    row = initial_row(params)
    yield row
    while row.t < t_max:
        row = evolve_row(row)
        yield row


def row_at(t: int, params: LatticeParams) -> AmplitudeRow:
    _check_time(t)
    for row in iter_rows(params, t):
        pass
    return row


def amplitude(x: int, t: int, params: LatticeParams | None = None) -> Amplitude:
    """``a(x, t)`` by time evolution from the initial slice."""
    params = params or LatticeParams()
    return row_at(t, params).amplitude(x)


def probability(x: int, t: int, params: LatticeParams | None = None):
    return amplitude(x, t, params).probability


# i * (-i)**k for k mod 4, as (real, imag)
_TURN_PHASE = ((0, 1), (1, 0), (0, -1), (-1, 0))


def _path_weight_numerators(t: int, params: LatticeParams):
    """Map ``x -> (sum of re, sum of im)`` of unnormalized path weights."""
    sums: dict[int, list] = {}
    exact = params.is_exact
    if exact:
        p, q = params.p, params.q
        weights = [p**k * q ** (t - 1 - k) for k in range(t)]
    else:
        norm = (1.0 + params.mu**2) ** ((1 - t) / 2)
        weights = [norm * params.mu**k for k in range(t)]
    for tail in itertools.product((1, -1), repeat=t - 1):
        path = CheckerPath((1,) + tail)
        x, _ = path.end
        k = path.turns
        re, im = _TURN_PHASE[k % 4]
        acc = sums.setdefault(x, [0, 0])
        acc[0] += re * weights[k]
        acc[1] += im * weights[k]
    return sums


def amplitude_bruteforce(x: int, t: int, params: LatticeParams | None = None) -> Amplitude:
    """``a(x, t)`` by summing ``i*(-i*mu)**turns`` over every checker path.

    Paths start with the step to ``(1, 1)``; the cost is ``2**(t-1)``.
    """
    params = params or LatticeParams()
    _check_time(t, BRUTEFORCE_T_CAP)
    return bruteforce_row(t, params).amplitude(x)


def bruteforce_row(t: int, params: LatticeParams) -> AmplitudeRow:
    """The whole slice ``t`` from path enumeration (test oracle)."""
    _check_time(t, BRUTEFORCE_T_CAP)
    sums = _path_weight_numerators(t, params)
    a1 = _zeros(t + 1, params.is_exact)
    a2 = _zeros(t + 1, params.is_exact)
    for x, (re, im) in sums.items():
        a1[(x + t) // 2] = re
        a2[(x + t) // 2] = im
    return AmplitudeRow(t, a1, a2, params)


def explicit_numerators(x: int, t: int, mu: Fraction) -> tuple[int, int] | tuple[Fraction, Fraction]:
    """Binomial-sum numerators ``(d1, d2)`` with ``a = d / N**((t-1)/2)``.

    Valid for ``t > |x|`` and ``x + t`` even.  For an integer-ratio ``mu = p/q``
    the result is an integer pair.
    """
    p, q = mu.numerator, mu.denominator
    up, down = (x + t - 2) // 2, (t - x - 2) // 2
    d1 = 0
    d2 = 0
    for r in range(0, min(up, down) + 1):
        d1 += (-1) ** r * math.comb(up, r) * math.comb(down, r) * p ** (2 * r + 1) * q ** (t - 2 - 2 * r)
    for r in range(1, min(up, down + 1) + 1):
        d2 += (-1) ** r * math.comb(up, r) * math.comb(down, r - 1) * p ** (2 * r) * q ** (t - 1 - 2 * r)
    return d1, d2


def amplitude_explicit(x: int, t: int, params: LatticeParams | None = None) -> Amplitude:
    """``a(x, t)`` from the closed binomial sums.

    The sums alternate in sign with terms far larger than the result, so even
    in float mode they are evaluated in integers at the exact binary value of
    ``mu`` and rounded once.  On the boundary ``x = t`` the single no-turn path
    is used; outside the cone or at wrong parity the amplitude is zero.
    """
    params = params or LatticeParams()
    _check_time(t)
    exact = params.is_exact
    mu = params.mu if exact else Fraction(params.mu)
    p, q = mu.numerator, mu.denominator
    base = p * p + q * q
    if abs(x) > t or (x + t) % 2 or x == -t:
        d1, d2 = 0, 0
    elif x == t:
        d1, d2 = 0, q ** (t - 1)
    else:
        d1, d2 = explicit_numerators(x, t, mu)
    v1, v2 = scaled(d1, base, t - 1), scaled(d2, base, t - 1)
    if exact:
        return Amplitude(v1, v2)
    return Amplitude(float(v1), float(v2))


def huygens_compose(t_prime: int, t: int, params: LatticeParams | None = None) -> AmplitudeRow:
    """Rebuild slice ``t`` from slice ``t_prime`` and slice ``t - t_prime + 1``.

    ``a1(x,t) = sum_x' a2(x',t')a1(x-x'+1,s) + a1(x',t')a2(x'-x+1,s)`` and
    ``a2(x,t) = sum_x' a2(x',t')a2(x-x'+1,s) - a1(x',t')a1(x'-x+1,s)`` with
    ``s = t - t' + 1``.  Exact numerators compose without rescaling since the
    normalization exponents add up to ``t - 1``.
    """
    params = params or LatticeParams()
    if not 0 < t_prime < t:
        raise CheckersError(f"need 0 < t' < t, got t'={t_prime}, t={t}")
    _check_time(t)
    s = t - t_prime + 1
    first = second = None
    for row in iter_rows(params, max(t_prime, s)):
        if row.t == t_prime:
            first = row
        if row.t == s:
            second = row

    def kernel(arr, x):
        j = second.index(x)
        return 0 if j is None else arr[j]

    exact = params.is_exact
    out1 = _zeros(t + 1, exact)
    out2 = _zeros(t + 1, exact)
    for j, x in enumerate(range(-t, t + 1, 2)):
        acc1 = 0
        acc2 = 0
        for jp, xp in enumerate(range(-t_prime, t_prime + 1, 2)):
            b1, b2 = first.a1[jp], first.a2[jp]
            if not b1 and not b2:
                continue
            acc1 += b2 * kernel(second.a1, x - xp + 1) + b1 * kernel(second.a2, xp - x + 1)
            acc2 += b2 * kernel(second.a2, x - xp + 1) - b1 * kernel(second.a1, xp - x + 1)
        out1[j] = acc1
        out2[j] = acc2
    return AmplitudeRow(t, out1, out2, params)


@dataclass(frozen=True)
class SymmetryReport:
    """Largest violation of each reflection identity on one slice.

    ``reflection``: ``a1(x) = a1(-x)``; ``weighted``:
    ``(t-x) a2(x) = (t+x-2) a2(2-x)``; ``mixed``:
    ``a1(x) + mu a2(x) = a1(2-x) + mu a2(2-x)``.
    """

    t: int
    reflection: float
    weighted: float
    mixed: float
    exact: bool

    @property
    def max_violation(self) -> float:
        return max(self.reflection, self.weighted, self.mixed)

    @property
    def holds(self) -> bool:
        return self.max_violation == 0 if self.exact else self.max_violation <= 1e-12


def check_symmetry(t: int, params: LatticeParams | None = None, row: AmplitudeRow | None = None) -> SymmetryReport:
    params = params or LatticeParams()
    row = row if row is not None else row_at(t, params)
    diag, off, _ = params.step_coefficients()

    def get(arr, x):
        j = row.index(x)
        return 0 if j is None else arr[j]

    worst = [0, 0, 0]
    for x in range(-t - 2, t + 3):
        if (x + t) % 2:
            continue
        diffs = (
            get(row.a1, x) - get(row.a1, -x),
            (t - x) * get(row.a2, x) - (t + x - 2) * get(row.a2, 2 - x),
            diag * get(row.a1, x) + off * get(row.a2, x)
            - diag * get(row.a1, 2 - x) - off * get(row.a2, 2 - x),
        )
        for i, d in enumerate(diffs):
            worst[i] = max(worst[i], abs(d))
    if params.is_exact:
        # numerators -> amplitude units; the mixed identity carries an extra q
        worst = [float(scaled(int(w), params.norm_base, t - 1)) for w in worst]
        worst[2] /= params.q
    return SymmetryReport(t, float(worst[0]), float(worst[1]), float(worst[2]), params.is_exact)
