"""Checkers in an external field of edge signs ``u``.

Every path picks up the product of ``u`` over its edges; the step from slice
``t`` to ``t + 1`` is the ``mu = 1`` Dirac step with each new entry multiplied
by the sign of the edge it arrives through::

    a1(x, t+1) = u(x+1/2, t+1/2) (a1(x+1, t) + a2(x+1, t)) / sqrt(2)
    a2(x, t+1) = u(x-1/2, t+1/2) (a2(x-1, t) - a1(x-1, t)) / sqrt(2)

Evolution starts from ``a(1, 1, u) = (0, 1)``: the source edge from the origin
to ``(1, 1)`` is not weighted.

An edge is addressed by the lower-left corner ``(x, t)`` of its midpoint
``(x + 1/2, t + 1/2)``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator, Mapping

import numpy as np

from .errors import CheckersError, FieldError
from .exact import QuadraticNumber, scaled
from .lattice import (
    Amplitude,
    AmplitudeRow,
    CheckerPath,
    LatticeParams,
    Mode,
    _check_time,
    initial_row,
    step_arrays,
)

__all__ = [
    "FieldKind",
    "EdgeField",
    "field_initial_row",
    "evolve_field_row",
    "iter_field_rows",
    "field_row_at",
    "field_amplitude",
    "field_amplitude_bruteforce",
    "DiamondReport",
    "is_diamond_center",
    "diamond_check",
    "diamond_sweep",
    "BLatticeRow",
    "b_lattice_direct",
    "b_lattice_rows",
    "b_lattice_recurrence",
    "iter_b_rows_direct",
    "p_left_field_series",
    "q_left_series",
    "EVEN_LIMIT",
    "ODD_LIMIT",
]

#: Conjectured limits of ``sum_x a1**2`` in the homogeneous field.
EVEN_LIMIT = math.sqrt(3) / 3
ODD_LIMIT = math.sqrt(3) / 6


class FieldKind(str, enum.Enum):
    IDENTITY = "identity"
    HOMOGENEOUS = "homogeneous"
    CUSTOM = "custom"


@dataclass(frozen=True)
class EdgeField:
    """An assignment of +1/-1 to lattice edges.

    ``HOMOGENEOUS`` is -1 exactly on edges whose corner ``(x, t)`` has both
    coordinates even.  ``CUSTOM`` looks edges up in ``edges`` (keyed by corner)
    and falls back to ``base`` if given, else to ``default``; a ``default`` of
    ``None`` makes a missing edge an error.
    """

    kind: FieldKind = FieldKind.IDENTITY
    edges: Mapping[tuple[int, int], int] = field(default_factory=dict)
    default: int | None = 1
    base: EdgeField | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", FieldKind(self.kind))
        bad = {k: v for k, v in self.edges.items() if v not in (1, -1)}
        if bad:
            raise FieldError(f"edge values must be +1 or -1: {bad}")
        if self.default not in (1, -1, None):
            raise FieldError(f"default must be +1, -1 or None, got {self.default}")

    @classmethod
    def identity(cls) -> EdgeField:
        return cls(FieldKind.IDENTITY)

    @classmethod
    def homogeneous(cls) -> EdgeField:
        return cls(FieldKind.HOMOGENEOUS)

    @classmethod
    def custom(
        cls, edges: Mapping[tuple[int, int], int], default: int | None = 1, base: EdgeField | None = None
    ) -> EdgeField:
        return cls(FieldKind.CUSTOM, dict(edges), default, base)

    @classmethod
    def from_file(cls, path: str | Path) -> EdgeField:
        """Read lines ``x_half t_half sign`` (midpoint coordinates, e.g. ``0.5 2.5 -1``).

        Blank lines and ``#`` comments are skipped; unlisted edges are +1.
        """
        edges = {}
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise FieldError(f"{path}:{lineno}: expected 'x_half t_half sign'")
            try:
                xh, th = Fraction(parts[0]), Fraction(parts[1])
                sign = int(parts[2])
            except ValueError as exc:
                raise FieldError(f"{path}:{lineno}: {exc}") from exc
            if (xh - Fraction(1, 2)).denominator != 1 or (th - Fraction(1, 2)).denominator != 1:
                raise FieldError(f"{path}:{lineno}: coordinates must be half-integers")
            if sign not in (1, -1):
                raise FieldError(f"{path}:{lineno}: sign must be +1 or -1")
            edges[(int(xh - Fraction(1, 2)), int(th - Fraction(1, 2)))] = sign
        return cls.custom(edges, default=1)

    def sign(self, x: int, t: int) -> int:
        """``u(x + 1/2, t + 1/2)``."""
        if self.kind is FieldKind.IDENTITY:
            return 1
        if self.kind is FieldKind.HOMOGENEOUS:
            return -1 if x % 2 == 0 and t % 2 == 0 else 1
        try:
            return self.edges[(x, t)]
        except KeyError:
            if self.base is not None:
                return self.base.sign(x, t)
            if self.default is None:
                raise FieldError(f"no field value on the edge at ({x}+1/2, {t}+1/2)") from None
            return self.default

    def signs(self, xs: np.ndarray, t: int) -> np.ndarray | None:
        """Vector of ``u(x + 1/2, t + 1/2)``; ``None`` stands for all +1."""
        if self.kind is FieldKind.IDENTITY:
            return None
        if self.kind is FieldKind.HOMOGENEOUS:
            if t % 2:
                return None
            return np.where(xs % 2 == 0, -1, 1)
        return np.array([self.sign(int(x), t) for x in xs])

    def flipped_around(self, x: int, t: int) -> EdgeField:
        """Copy with the four edges meeting at vertex ``(x, t)`` negated."""
        corners = [(x, t), (x - 1, t), (x, t - 1), (x - 1, t - 1)]
        return EdgeField.custom({c: -self.sign(*c) for c in corners}, base=self)


def field_initial_row(mode: Mode | str = Mode.FLOAT) -> AmplitudeRow:
    """``a(1, 1, u) = (0, 1)``; rows use the ``mu = 1`` normalization."""
    return initial_row(LatticeParams(1, Mode(mode)))


def evolve_field_row(row: AmplitudeRow, u: EdgeField) -> AmplitudeRow:
    """Advance a field row by one unit of time."""
    params = row.params
    if params.mu != 1:
        raise CheckersError("field rows use the mu = 1 normalization")
    t = row.t
    _check_time(t + 1)
    xs = np.arange(-(t + 1), t + 2, 2)
    sign1 = u.signs(xs, t)
    sign2 = u.signs(xs - 1, t)
    diag, off, scale = params.step_coefficients()
    a1, a2 = step_arrays(row.a1, row.a2, diag, off, scale, sign1, sign2, exact=params.is_exact)
    return AmplitudeRow(t + 1, a1, a2, params)


def iter_field_rows(u: EdgeField, t_max: int, mode: Mode | str = Mode.FLOAT) -> Iterator[AmplitudeRow]:
    _check_time(t_max)
    row = field_initial_row(mode)
    yield row
    while row.t < t_max:
        row = evolve_field_row(row, u)
        yield row


def field_row_at(t: int, u: EdgeField, mode: Mode | str = Mode.FLOAT) -> AmplitudeRow:
    for row in iter_field_rows(u, t, mode):
        pass
    return row


def field_amplitude(x: int, t: int, u: EdgeField, mode: Mode | str = Mode.FLOAT):
    return field_row_at(t, u, mode).amplitude(x)


# i * (-i)**k for k mod 4, as (real, imag)
_TURN_PHASE = ((0, 1), (1, 0), (0, -1), (-1, 0))


def field_amplitude_bruteforce(x: int, t: int, u: EdgeField):
    """Exact ``a(x, t, u)`` by enumerating all ``2**(t-1)`` paths (test oracle)."""
    _check_time(t, 24)
    re = im = 0
    for tail in itertools.product((1, -1), repeat=t - 1):
        path = CheckerPath((1,) + tail)
        if path.end[0] != x:
            continue
        weight = 1
        pos = 1
        for time, step in enumerate(tail, start=1):
            # corner of the traversed edge's midpoint
            weight *= u.sign(min(pos, pos + step), time)
            pos += step
        ph = _TURN_PHASE[path.turns % 4]
        re += ph[0] * weight
        im += ph[1] * weight
    return Amplitude(scaled(re, 2, t - 1), scaled(im, 2, t - 1))


# --- diamond identities in the homogeneous field ----------------------------


def is_diamond_center(x: int, t: int) -> bool:
    """``(x, t) = (2, 1)`` or ``(0, 3)`` modulo 4, with ``t >= 1``."""
    return t >= 1 and ((x % 4, t % 4) in ((2, 1), (0, 3)))


@dataclass(frozen=True)
class DiamondReport:
    """Members of the diamond chain around ``(x, t)`` and their residuals.

    ``chain`` lists, in order, ``sqrt2*a1(x+1,t)``, ``a1(x,t-1)``,
    ``sqrt2*a1(x-1,t)``, ``a1(x,t+1)``, ``sqrt2*a2(x+1,t)`` and
    ``sqrt2*a2(x-1,t) - 2*a2(x,t+1)``; ``below`` is ``a2(x,t-1)``.
    """

    x: int
    t: int
    chain: tuple
    below: object

    @property
    def common_value(self):
        return self.chain[1]

    @property
    def residuals(self) -> dict[str, float]:
        names = ("sqrt2*a1(x+1,t)", "sqrt2*a1(x-1,t)", "a1(x,t+1)", "sqrt2*a2(x+1,t)", "sqrt2*a2(x-1,t)-2*a2(x,t+1)")
        others = (self.chain[0],) + self.chain[2:]
        out = {name: abs(float(v - self.common_value)) for name, v in zip(names, others)}
        out["a2(x,t-1)"] = abs(float(self.below))
        return out

    @property
    def holds(self) -> bool:
        if isinstance(self.common_value, QuadraticNumber):
            return all(v == self.common_value for v in self.chain) and self.below == 0
        return max(self.residuals.values()) <= 1e-12


def _diamond_from_rows(x, t, before, row, after, exact) -> DiamondReport:
    root2 = QuadraticNumber(0, 1, 2) if exact else math.sqrt(2.0)

    def a(r, xx):
        if r is None:  # slice t = 0 is empty away from the origin
            return (QuadraticNumber(0), QuadraticNumber(0)) if exact else (0.0, 0.0)
        amp = r.amplitude(xx)
        return amp.a1, amp.a2

    chain = (
        root2 * a(row, x + 1)[0],
        a(before, x)[0],
        root2 * a(row, x - 1)[0],
        a(after, x)[0],
        root2 * a(row, x + 1)[1],
        root2 * a(row, x - 1)[1] - 2 * a(after, x)[1],
    )
    return DiamondReport(x, t, chain, a(before, x)[1])


def diamond_check(x: int, t: int, mode: Mode | str = Mode.EXACT) -> DiamondReport:
    """Evaluate both diamond identities at ``(x, t)`` in the homogeneous field."""
    if not is_diamond_center(x, t):
        raise CheckersError(
            f"({x}, {t}) is not a diamond center: need (x, t) = (2, 1) or (0, 3) mod 4 and t >= 1"
        )
    mode = Mode(mode)
    u = EdgeField.homogeneous()
    rows = {}
    for row in iter_field_rows(u, t + 1, mode):
        if row.t >= t - 1:
            rows[row.t] = row
    return _diamond_from_rows(x, t, rows.get(t - 1), rows[t], rows[t + 1], mode is Mode.EXACT)


def diamond_sweep(t_max: int, mode: Mode | str = Mode.EXACT) -> list[DiamondReport]:
    """Diamond reports at every center with ``1 <= t <= t_max`` and ``|x| <= t + 1``."""
    mode = Mode(mode)
    u = EdgeField.homogeneous()
    window = [None]
    reports = []
    for row in iter_field_rows(u, t_max + 1, mode):
        window.append(row)
        window = window[-3:]
        t = row.t - 1
        if t < 1 or len(window) < 3:
            continue
        before, mid, after = window
        for x in range(-t - 1, t + 2):
            if is_diamond_center(x, t):
                reports.append(_diamond_from_rows(x, t, before, mid, after, mode is Mode.EXACT))
    return reports


# --- coarse b-lattice -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BLatticeRow:
    """``b(x, t)`` for ``x = 2-t, 4-t, ..., t`` (index ``j`` holds ``x = 2-t+2j``).

    Exact rows hold integers ``2**(t-1) * b``; float rows hold ``b``.
    """

    t: int
    b1: np.ndarray
    b2: np.ndarray
    exact: bool

    @property
    def xs(self) -> np.ndarray:
        return np.arange(2 - self.t, self.t + 1, 2)

    def index(self, x: int) -> int | None:
        if (x + self.t) % 2 or not 2 - self.t <= x <= self.t:
            return None
        return (x - 2 + self.t) // 2

    def value(self, x: int):
        j = self.index(x)
        if self.exact:
            if j is None:
                return Fraction(0), Fraction(0)
            d = 2 ** (self.t - 1)
            return Fraction(int(self.b1[j]), d), Fraction(int(self.b2[j]), d)
        if j is None:
            return 0.0, 0.0
        return float(self.b1[j]), float(self.b2[j])

    def left_sum(self):
        """``q_left = sum_x b1(x, t)**2``."""
        if self.exact:
            return Fraction(int(sum(self.b1 * self.b1)), 4 ** (self.t - 1))
        return float(np.dot(self.b1, self.b1))

    def same_as(self, other: BLatticeRow) -> bool:
        return (
            self.t == other.t
            and list(self.b1) == list(other.b1)
            and list(self.b2) == list(other.b2)
        )


def _b_row_from_field(row: AmplitudeRow) -> BLatticeRow:
    """Slice ``2t - 1`` of the field lattice -> b-row at ``t``."""
    t = (row.t + 1) // 2
    idx = [(2 * x - 1 + row.t) // 2 for x in range(2 - t, t + 1, 2)]
    b1 = row.a1[idx].copy()
    b2 = row.a2[idx].copy()
    # a = d / 2**((2t-2)/2) = d / 2**(t-1): exact numerators carry over as is
    return BLatticeRow(t, b1, b2, row.params.is_exact)


def iter_b_rows_direct(t_max: int, mode: Mode | str = Mode.FLOAT) -> Iterator[BLatticeRow]:
    """b-rows read off the field lattice at odd times ``2t - 1``."""
    u = EdgeField.homogeneous()
    for row in iter_field_rows(u, 2 * t_max - 1, mode):
        if row.t % 2 == 1:
            yield _b_row_from_field(row)


def b_lattice_direct(x: int, t: int, mode: Mode | str = Mode.EXACT):
    """``(b1, b2)(x, t) = a(2x - 1, 2t - 1, u)`` in the homogeneous field; 0 if x + t is odd."""
    if t < 1:
        raise CheckersError(f"t must be >= 1, got {t}")
    if (x + t) % 2:
        return (Fraction(0), Fraction(0)) if Mode(mode) is Mode.EXACT else (0.0, 0.0)
    for row in iter_b_rows_direct(t, mode):
        pass
    return row.value(x)


def b_lattice_rows(t_max: int, mode: Mode | str = Mode.FLOAT) -> Iterator[BLatticeRow]:
    """Evolve the b-lattice on its own from ``b(1, 1) = (0, 1)``.

    ``b1(x,t) = (b1(x+1,t-1) + b2(x+1,t-1)) / 2`` and
    ``b2(x,t) = (3 b1(x-1,t-1) - b2(x-1,t-1)) / 2``.
    """
    _check_time(t_max)
    exact = Mode(mode) is Mode.EXACT
    zero = np.zeros(1, dtype=object) if exact else np.zeros(1)
    b1, b2 = zero.copy(), zero.copy()
    b2[0] = 1
    row = BLatticeRow(1, b1, b2, exact)
    yield row
    half = 1 if exact else 0.5
    for t in range(2, t_max + 1):
        n = t
        nb1 = np.zeros(n, dtype=object) if exact else np.zeros(n)
        nb2 = np.zeros(n, dtype=object) if exact else np.zeros(n)
        nb1[: n - 1] = half * (row.b1 + row.b2)
        nb2[1:] = half * (3 * row.b1 - row.b2)
        row = BLatticeRow(t, nb1, nb2, exact)
        yield row


def b_lattice_recurrence(x: int, t: int, mode: Mode | str = Mode.EXACT):
    """``(b1, b2)(x, t)`` from the autonomous recurrence."""
    if t < 1:
        raise CheckersError(f"t must be >= 1, got {t}")
    for row in b_lattice_rows(t, mode):
        pass
    return row.value(x)


# --- direction reversal in a field ---------------------------------------------


def p_left_field_series(t_max: int, u: EdgeField, mode: Mode | str = Mode.FLOAT) -> list[tuple[int, object]]:
    """``[(t, sum_x a1(x, t, u)**2) for t = 1..t_max]``."""
    if t_max < 1:
        raise CheckersError(f"t_max must be >= 1, got {t_max}")
    return [(row.t, row.left_probability()) for row in iter_field_rows(u, t_max, mode)]


def q_left_series(t_max: int, mode: Mode | str = Mode.FLOAT, via: str = "recurrence") -> list[tuple[int, object]]:
    """``[(t, sum_x b1(x, t)**2) for t = 1..t_max]`` via the recurrence or the field lattice."""
    if via == "recurrence":
        rows = b_lattice_rows(t_max, mode)
    elif via == "direct":
        rows = iter_b_rows_direct(t_max, mode)
    else:
        raise CheckersError(f"via must be 'recurrence' or 'direct', got {via!r}")
    return [(row.t, row.left_sum()) for row in rows]
