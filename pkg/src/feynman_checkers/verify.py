"""Self-check suite: every identity the package implements, run end to end.

Checks come in three classes.  ``THEOREM`` checks are proved statements and
decide the exit status; ``CONJECTURE`` checks compare against conjectured
limits at a finite time; ``OBSERVATION`` checks are exploratory.  The last two
are reported but never fail a run.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import field as fld
from . import lattice, reversal, special
from .exact import QuadraticNumber
from .lattice import LatticeParams

THEOREM = "THEOREM"
CONJECTURE = "CONJECTURE"
OBSERVATION = "OBSERVATION"

EXACT_MUS = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))
FLOAT_MUS = (0.0, 0.25, 0.5, 0.75, 1.0)


@dataclass
class CheckResult:
    name: str
    kind: str
    reference: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def gating(self) -> bool:
        return self.kind == THEOREM


@dataclass
class VerifyConfig:
    t_exact: int = 100
    t_float: int = 1000
    t_long: int = 10_000
    t_bruteforce: int = 12
    t_huygens: int = 24
    n_legendre: int = 500
    seed: int = 2023


@dataclass
class VerifyReport:
    config: VerifyConfig
    results: list[CheckResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results if r.gating)

    def to_json(self) -> str:
        payload = {
            "schema": "feynman-checkers verify v1",
            "config": asdict(self.config),
            "ok": self.ok,
            # timings are left out so identical runs give identical bytes
            "checks": [
                {k: v for k, v in asdict(r).items() if k != "seconds"} for r in self.results
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True, default=str)

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            if not r.gating and not r.passed:
                status = "MISS"
            summary = ", ".join(f"{k}={_fmt(v)}" for k, v in r.detail.items())
            lines.append(f"[{status}] {r.kind:<11} {r.name}: {r.reference}  ({summary})")
        n_fail = sum(1 for r in self.results if r.gating and not r.passed)
        lines.append(f"{len(self.results)} checks, {n_fail} theorem-class failures")
        return "\n".join(lines)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


_REGISTRY: list[tuple[str, str, str, Callable]] = []


def check(name: str, kind: str, reference: str):
    def deco(fn):
        _REGISTRY.append((name, kind, reference, fn))
        return fn

    return deco


@check("anchor", THEOREM, "a(1,3) = (1/2, -1/2) for mu = 1")
def _anchor(cfg):
    amp = lattice.amplitude(1, 3, LatticeParams.exact(1))
    return amp.a1 == Fraction(1, 2) and amp.a2 == Fraction(-1, 2), {"a1": str(amp.a1), "a2": str(amp.a2)}


@check("conservation-exact", THEOREM, "probability conservation, sum_x P(x,t) = 1")
def _conservation_exact(cfg):
    bad = []
    for mu in EXACT_MUS:
        params = LatticeParams.exact(mu)
        n = params.norm_base
        for row in lattice.iter_rows(params, cfg.t_exact):
            if sum(row.a1 * row.a1 + row.a2 * row.a2) != n ** (row.t - 1):
                bad.append((str(mu), row.t))
                break
    return not bad, {"t_max": cfg.t_exact, "failures": len(bad)}


@check("conservation-float", THEOREM, "probability conservation in double precision")
def _conservation_float(cfg):
    worst = 0.0
    for mu in FLOAT_MUS:
        for row in lattice.iter_rows(LatticeParams.floating(mu), cfg.t_float):
            worst = max(worst, abs(row.total_probability() - 1.0))
    return worst <= 1e-12, {"t_max": cfg.t_float, "max_drift": worst}


@check("oracle", THEOREM, "Dirac evolution equals the sum over checker paths")
def _oracle(cfg):
    mismatches = 0
    for mu in EXACT_MUS:
        params = LatticeParams.exact(mu)
        for row in lattice.iter_rows(params, cfg.t_bruteforce):
            brute = lattice.bruteforce_row(row.t, params)
            if list(brute.a1) != list(row.a1) or list(brute.a2) != list(row.a2):
                mismatches += 1
    return mismatches == 0, {"t_max": cfg.t_bruteforce, "mismatched_slices": mismatches}


@check("explicit", THEOREM, "binomial closed form of a1, a2")
def _explicit(cfg):
    mismatches = 0
    for mu in (Fraction(1, 4), Fraction(1, 2), Fraction(1)):
        params = LatticeParams.exact(mu)
        for row in lattice.iter_rows(params, cfg.t_exact):
            for x in range(-row.t, row.t + 1, 2):
                if row.amplitude(x) != lattice.amplitude_explicit(x, row.t, params):
                    mismatches += 1
    return mismatches == 0, {"t_max": cfg.t_exact, "mismatches": mismatches}


@check("symmetry", THEOREM, "reflection identities of a1, a2")
def _symmetry(cfg):
    worst = 0.0
    for mu in EXACT_MUS:
        params = LatticeParams.exact(mu)
        for row in lattice.iter_rows(params, cfg.t_exact):
            worst = max(worst, lattice.check_symmetry(row.t, params, row).max_violation)
    return worst == 0.0, {"t_max": cfg.t_exact, "max_violation": worst}


@check("huygens", THEOREM, "Huygens principle composes slices")
def _huygens(cfg):
    mismatches = 0
    for mu in (Fraction(1, 2), Fraction(1)):
        params = LatticeParams.exact(mu)
        rows = {r.t: r for r in lattice.iter_rows(params, cfg.t_huygens)}
        for t in range(2, cfg.t_huygens + 1, 3):
            for tp in range(1, t):
                got = lattice.huygens_compose(tp, t, params)
                if list(got.a1) != list(rows[t].a1) or list(got.a2) != list(rows[t].a2):
                    mismatches += 1
    return mismatches == 0, {"t_max": cfg.t_huygens, "mismatches": mismatches}


@check("telescoping", THEOREM, "S1 equals the axis series mu/sqrt(1+mu^2) sum a1(0,2k)")
def _telescoping(cfg):
    worst = 0.0
    for mu in EXACT_MUS:
        series = reversal.reversal_series(mu, cfg.t_exact, "exact")
        worst = max(
            worst,
            series.series_residual(),
            series.telescoping_residual(),
            series.cross_relation_residual(),
            series.conservation_residual(),
        )
    return worst == 0.0, {"t_max": cfg.t_exact, "max_residual": worst}


@check("legendre-bridge", THEOREM, "a1(0,2n+2) = mu/sqrt(1+mu^2) P_n((1-mu^2)/(1+mu^2))")
def _legendre_bridge(cfg):
    worst = 0.0
    n_max = cfg.n_legendre
    for mu in (0.1, 0.25, 0.5, 0.75, 1.0):
        axis = [row.a1[row.t // 2] for row in lattice.iter_rows(LatticeParams.floating(mu), 2 * n_max + 2) if row.t % 2 == 0]
        via = special.a1_zero_sequence(n_max, mu)
        worst = max(worst, float(np.max(np.abs(np.array(axis) - via))))
    return worst <= 1e-10, {"n_max": n_max, "max_error": worst}


@check("legendre-sum", THEOREM, "sum_n P_n(x) = 1/sqrt(2-2x) (Abel summation)")
def _legendre_sum(cfg):
    worst = 0.0
    for x in (0.2, 0.5, 0.8):
        closed = special.legendre_sum_closed(x)
        abel = special.legendre_abel_sum(x, 1 - 1e-4)
        worst = max(worst, abs(abel - closed))
    return worst <= 1e-2, {"r": 1 - 1e-4, "max_error": worst}


@check("reversal-limit", THEOREM, "S1(t) -> mu/(2 sqrt(1+mu^2)) with |S1 - limit| sqrt(t) bounded")
def _reversal_limit(cfg):
    detail = {}
    ok = True
    for mu in (0.25, 0.5, 1.0):
        rep = reversal.convergence_report(mu, cfg.t_long)
        ratio = rep.bound() / rep.bound(100)
        ok &= ratio <= 10.0 and rep.sign_changes() >= 10
        detail[f"bound_mu{mu}"] = rep.bound()
    detail["limit_mu1"] = reversal.reversal_limit(1.0)
    ok &= abs(detail["limit_mu1"] - 1 / (2 * math.sqrt(2))) < 1e-15
    return ok, detail


@check("asymptote", THEOREM, "a1(0,2n+2) = sqrt(mu/(pi n)) cos((2n+1)arctan mu - pi/4) + O(n^-3/2)")
def _asymptote(cfg):
    detail = {}
    ok = True
    n_max = cfg.t_long
    ns = np.arange(100, n_max + 1)
    for mu in (0.1, 0.5, 0.9):
        exact = special.a1_zero_sequence(n_max, mu)[100:]
        main = np.array([special.asymptotic_a1_zero(int(n), mu) for n in ns])
        scaled_err = np.abs(exact - main) * ns**1.5
        early = float(np.max(scaled_err[: min(901, len(ns))]))
        detail[f"bound_mu{mu}"] = float(np.max(scaled_err))
        ok &= float(np.max(scaled_err)) <= 10 * early
    return ok, detail


@check("diamonds", THEOREM, "diamond identities in the homogeneous field")
def _diamonds(cfg):
    reports = fld.diamond_sweep(cfg.t_exact, "exact")
    failures = sum(1 for r in reports if not r.holds)
    anchors = {(r.x, r.t): r.common_value for r in reports if (r.x, r.t) in ((0, 3), (2, 1))}
    ok = failures == 0 and anchors[(0, 3)] == QuadraticNumber(0, Fraction(1, 2), 2) and anchors[(2, 1)] == 0
    return ok, {"centers": len(reports), "failures": failures}


@check("b-lattice", THEOREM, "b-lattice recurrence equals the coarse field lattice")
def _b_lattice(cfg):
    t_max = cfg.t_exact
    pairs = zip(fld.b_lattice_rows(t_max, "exact"), fld.iter_b_rows_direct(t_max, "exact"))
    mismatches = sum(1 for a, b in pairs if not a.same_as(b))
    return mismatches == 0, {"t_max": t_max, "mismatches": mismatches}


@check("field-conservation", THEOREM, "charge conservation for any edge field")
def _field_conservation(cfg):
    rng = np.random.default_rng(cfg.seed)
    t_max = cfg.t_float
    random_edges = {
        (x, t): int(s)
        for t in range(t_max)
        for x, s in zip(range(-t - 2, t + 2), rng.choice([-1, 1], size=2 * t + 4))
    }
    fields = {
        "identity": fld.EdgeField.identity(),
        "homogeneous": fld.EdgeField.homogeneous(),
        "random": fld.EdgeField.custom(random_edges),
    }
    detail = {}
    for name, u in fields.items():
        drift = max(abs(r.total_probability() - 1.0) for r in fld.iter_field_rows(u, t_max))
        detail[f"drift_{name}"] = drift
    exact_ok = all(
        r.total_probability() == 1
        for r in fld.iter_field_rows(fields["homogeneous"], cfg.t_exact, "exact")
    )
    return exact_ok and max(detail.values()) <= 1e-12, detail


@check("field-identity", THEOREM, "u = +1 reduces to the free model")
def _field_identity(cfg):
    free = lattice.iter_rows(LatticeParams.exact(1), cfg.t_exact)
    with_field = fld.iter_field_rows(fld.EdgeField.identity(), cfg.t_exact, "exact")
    ok = all(list(a.a1) == list(b.a1) and list(a.a2) == list(b.a2) for a, b in zip(free, with_field))
    return ok, {"t_max": cfg.t_exact}


@check("field-oracle", THEOREM, "field evolution equals the weighted path sum")
def _field_oracle(cfg):
    t = min(cfg.t_bruteforce, 11)
    mismatches = 0
    for u in (fld.EdgeField.homogeneous(), fld.EdgeField.custom({(0, 2): -1, (1, 3): -1, (-1, 4): -1})):
        row = fld.field_row_at(t, u, "exact")
        for x in range(-t, t + 1, 2):
            if row.amplitude(x) != fld.field_amplitude_bruteforce(x, t, u):
                mismatches += 1
    return mismatches == 0, {"t": t, "mismatches": mismatches}


@check("two-limit-points", CONJECTURE, "homogeneous field: p_left -> sqrt3/3 (even t), sqrt3/6 (odd t)")
def _two_limits(cfg):
    t_max = cfg.t_long + 1
    series = dict(fld.p_left_field_series(t_max, fld.EdgeField.homogeneous()))
    t_even = t_max if t_max % 2 == 0 else t_max - 1
    even, odd = series[t_even], series[t_even + 1 if t_even + 1 <= t_max else t_even - 1]
    ok = abs(even - fld.EVEN_LIMIT) <= 0.01 and abs(odd - fld.ODD_LIMIT) <= 0.01
    return ok, {"p_left_even": even, "p_left_odd": odd}


@check("q-left-limit", CONJECTURE, "b-lattice: q_left -> sqrt3/6")
def _q_left(cfg):
    t_max = cfg.t_long // 2
    value = fld.q_left_series(t_max)[-1][1]
    return abs(value - fld.ODD_LIMIT) <= 0.01, {
        "t": t_max,
        "q_left": value,
        "target": fld.ODD_LIMIT,
        "ratio_to_target": value / fld.ODD_LIMIT,
    }


@check("gauge-flip", OBSERVATION, "flipping the four edges at one vertex leaves later P unchanged")
def _gauge(cfg):
    t_max = 40
    base = fld.EdgeField.homogeneous()
    flipped = base.flipped_around(0, 10)
    worst = 0.0
    for a, b in zip(fld.iter_field_rows(base, t_max, "exact"), fld.iter_field_rows(flipped, t_max, "exact")):
        if a.t > 10:
            pa, pb = a.probabilities(), b.probabilities()
            worst = max(worst, max(abs(float(x - y)) for x, y in zip(pa, pb)))
    return worst == 0.0, {"vertex": "(0, 10)", "t_max": t_max, "max_dP": worst}


def run_checks(config: VerifyConfig | None = None, names: list[str] | None = None) -> VerifyReport:
    config = config or VerifyConfig()
    results = []
    for name, kind, reference, fn in _REGISTRY:
        if names and name not in names:
            continue
        start = time.perf_counter()
        try:
            passed, detail = fn(config)
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
        results.append(CheckResult(name, kind, reference, bool(passed), detail, time.perf_counter() - start))
    return VerifyReport(config, results)


def check_names() -> list[str]:
    return [name for name, *_ in _REGISTRY]
