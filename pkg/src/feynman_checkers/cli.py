"""Command-line front end: tables as CSV/JSON and the self-check suite.

Exit codes: 0 success, 1 invalid arguments, 2 a theorem-class check failed,
3 input/output error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .errors import CheckersError, FieldError
from .exact import QuadraticNumber
from .field import EVEN_LIMIT, ODD_LIMIT, EdgeField, FieldKind, b_lattice_rows, iter_b_rows_direct, iter_field_rows
from .lattice import LatticeParams, Mode, iter_rows
from .reversal import reversal_limit
from .special import DEFAULT_DELTA, AsymptoteParams, a1_zero_sequence, asymptotic_a1_zero
from .verify import VerifyConfig, check_names, run_checks

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_THEOREM = 2
EXIT_IO = 3

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    mu: str = "1"
    t_max: int = 10
    mode: Mode = Mode.FLOAT
    out: Path | None = None
    format: str = "csv"
    field_spec: str = "identity"
    delta: float = DEFAULT_DELTA
    extra: dict = field(default_factory=dict)

    def params(self) -> LatticeParams:
        try:
            return LatticeParams(self.mu, self.mode)
        except (CheckersError, ValueError) as exc:
            raise UsageError(str(exc)) from exc

    def mu_float(self) -> float:
        try:
            return float(Fraction(self.mu))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"invalid --mu {self.mu!r}") from exc

    def edge_field(self) -> EdgeField:
        if self.field_spec == FieldKind.IDENTITY.value:
            return EdgeField.identity()
        if self.field_spec == FieldKind.HOMOGENEOUS.value:
            return EdgeField.homogeneous()
        if self.field_spec.startswith("custom:"):
            path = self.field_spec.split(":", 1)[1]
            try:
                return EdgeField.from_file(path)
            except OSError:
                raise
            except FieldError as exc:
                raise UsageError(str(exc)) from exc
        raise UsageError(f"--field must be identity, homogeneous or custom:<path>, got {self.field_spec!r}")


@dataclass
class Table:
    name: str
    columns: list[str]
    rows: list[list]


def _cell(value) -> str | int:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (Fraction, QuadraticNumber)):
        return str(value)
    return str(value)


def _json_cell(value):
    # repr of a float is already the shortest round-trip form
    if isinstance(value, (float, np.floating)):
        return float(value)
    return _cell(value)


def cmd_amplitudes(config: RunConfig) -> Table:
    """Rows ``(t, x, a1, a2, P)`` for every light-cone point with ``t <= t_max``."""
    params = config.params()
    rows = []
    for row in iter_rows(params, config.t_max):
        probs = row.probabilities()
        for j, x in enumerate(range(-row.t, row.t + 1, 2)):
            amp = row.amplitude(x)
            rows.append([row.t, x, amp.a1, amp.a2, probs[j]])
    return Table("amplitudes", ["t", "x", "a1", "a2", "P"], rows)


def cmd_probabilities(config: RunConfig) -> Table:
    params = config.params()
    rows = []
    for row in iter_rows(params, config.t_max):
        for x, p in zip(range(-row.t, row.t + 1, 2), row.probabilities()):
            rows.append([row.t, x, p])
    return Table("probabilities", ["t", "x", "P"], rows)


def _require_unit_mu(config: RunConfig) -> float:
    mu = config.mu_float()
    if not 0.0 <= mu <= 1.0:
        raise UsageError(f"--mu must lie in [0, 1] for {config.command}, got {config.mu}")
    return mu


def cmd_reversal(config: RunConfig) -> Table:
    """Rows ``(t, S1_direct, S1_series, limit, |S1 - limit| sqrt(t))``."""
    mu = _require_unit_mu(config)
    params = config.params()
    limit = reversal_limit(mu)
    t_max = config.t_max
    if params.is_exact:
        # axis terms up to 2(t_max - 1) come from the same exact sweep
        factor_num, n = params.p, params.norm_base
        direct, axis = {}, {}
        for row in iter_rows(params, max(2 * (t_max - 1), t_max)):
            if row.t <= t_max:
                direct[row.t] = row.left_probability()
            if row.t % 2 == 0:
                axis[row.t // 2] = Fraction(factor_num * int(row.a1[row.t // 2]), n ** (row.t // 2))
        series, acc = {}, Fraction(0)
        for t in range(1, t_max + 1):
            series[t] = acc
            acc += axis.get(t, Fraction(0))
    else:
        direct = {row.t: row.left_probability() for row in iter_rows(params, t_max)}
        factor = mu / math.sqrt(1.0 + mu * mu)
        terms = a1_zero_sequence(max(t_max - 2, 0), mu)
        partial = np.concatenate([[0.0], factor * np.cumsum(terms)])
        series = {t: float(partial[t - 1]) for t in range(1, t_max + 1)}
    rows = [
        [t, direct[t], series[t], limit, abs(float(direct[t]) - limit) * math.sqrt(t)]
        for t in range(1, t_max + 1)
    ]
    return Table("reversal", ["t", "S1_direct", "S1_series", "limit", "scaled_error"], rows)


def cmd_asymptote(config: RunConfig) -> Table:
    """Rows ``(n, a1(0,2n+2), main_term, |diff| n**1.5)`` for ``n = 1..t_max``."""
    mu = _require_unit_mu(config)
    try:
        AsymptoteParams(1, mu, config.delta)
    except CheckersError as exc:
        raise UsageError(str(exc)) from exc
    params = config.params()
    n_max = config.t_max
    if params.is_exact:
        axis = {row.t // 2 - 1: row.amplitude(0).a1 for row in iter_rows(params, 2 * n_max + 2) if row.t % 2 == 0}
        values = [axis[n] for n in range(1, n_max + 1)]
    else:
        values = list(a1_zero_sequence(n_max, mu)[1:])
    rows = []
    for n, value in zip(range(1, n_max + 1), values):
        main = asymptotic_a1_zero(n, mu, config.delta)
        rows.append([n, value, main, abs(float(value) - main) * n**1.5])
    return Table("asymptote", ["n", "a1_axis", "main_term", "scaled_error"], rows)


def cmd_field(config: RunConfig) -> Table:
    """Rows ``(t, p_left)`` plus the two reference lines for the homogeneous field."""
    u = config.edge_field()
    mode = config.mode
    homogeneous = u.kind is FieldKind.HOMOGENEOUS
    columns = ["t", "p_left"] + (["even_ref", "odd_ref"] if homogeneous else [])
    rows = []
    for row in iter_field_rows(u, config.t_max, mode):
        line = [row.t, row.left_probability()]
        if homogeneous:
            line += [EVEN_LIMIT, ODD_LIMIT]
        rows.append(line)
    return Table("field", columns, rows)


def cmd_blattice(config: RunConfig) -> Table:
    """Rows ``(t, x, b1, b2)`` by recurrence, or ``(t, q_left, ...)`` with ``--series``."""
    mode = config.mode
    if config.extra.get("series"):
        rows = []
        pairs = zip(b_lattice_rows(config.t_max, mode), iter_b_rows_direct(config.t_max, mode))
        for rec, direct in pairs:
            rows.append([rec.t, rec.left_sum(), direct.left_sum(), rec.same_as(direct), ODD_LIMIT])
        return Table("blattice-series", ["t", "q_left", "q_left_direct", "match", "ref"], rows)
    rows = []
    for row in b_lattice_rows(config.t_max, mode):
        for x in row.xs:
            b1, b2 = row.value(int(x))
            rows.append([row.t, int(x), b1, b2])
    return Table("blattice", ["t", "x", "b1", "b2"], rows)


def render(table: Table, config: RunConfig) -> str:
    schema = f"feynman-checkers {table.name} v{SCHEMA_VERSION}"
    if config.format == "json":
        payload = {
            "schema": schema,
            "config": {"mu": config.mu, "t_max": config.t_max, "mode": config.mode.value, "field": config.field_spec},
            "columns": table.columns,
            "rows": [[_json_cell(v) for v in r] for r in table.rows],
        }
        return json.dumps(payload) + "\n"
    buf = io.StringIO()
    buf.write(f"# {schema}; mu={config.mu} mode={config.mode.value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for r in table.rows:
        writer.writerow([_cell(v) for v in r])
    return buf.getvalue()


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


TABLE_COMMANDS = {
    "amplitudes": cmd_amplitudes,
    "probabilities": cmd_probabilities,
    "reversal": cmd_reversal,
    "asymptote": cmd_asymptote,
    "field": cmd_field,
    "blattice": cmd_blattice,
}


def cmd_verify(config: RunConfig) -> int:
    vcfg = VerifyConfig(t_exact=config.t_max, **config.extra.get("verify", {}))
    report = run_checks(vcfg, config.extra.get("checks"))
    text = report.to_text() + "\n"
    if config.format == "json":
        _write(report.to_json() + "\n", config.out)
        sys.stderr.write(text)
    else:
        _write(text, config.out)
    return EXIT_OK if report.ok else EXIT_THEOREM


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mu", default="1", help="mass times lattice step, e.g. 1/2 or 0.25 (default 1)")
    common.add_argument("--t-max", type=int, default=None, help="largest lattice time")
    common.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FLOAT.value)
    common.add_argument("--out", type=Path, default=None, help="output file (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--field", default="identity", help="identity, homogeneous or custom:<path>")
    common.add_argument("--delta", type=float, default=DEFAULT_DELTA, help="margin for the asymptote range")

    parser = _Parser(prog="checkers", description="Feynman checkers on the integer lattice.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("amplitudes", parents=[common], help="a1, a2, P for every point with t <= t-max")
    sub.add_parser("probabilities", parents=[common], help="P(x, t) table")
    sub.add_parser("reversal", parents=[common], help="direction-reversal probability and its limit")
    sub.add_parser("asymptote", parents=[common], help="a1(0, 2n+2) against its large-n form")
    sub.add_parser("field", parents=[common], help="p_left in an external field")
    bl = sub.add_parser("blattice", parents=[common], help="coarse b-lattice values or q_left series")
    bl.add_argument("--series", action="store_true", help="emit q_left per t instead of point values")
    ver = sub.add_parser("verify", parents=[common], help="run the self-check suite")
    ver.add_argument("--t-long", type=int, default=VerifyConfig.t_long, help="horizon of limit and conjecture sweeps")
    ver.add_argument("--check", action="append", choices=check_names(), help="run only this check (repeatable)")
    return parser


DEFAULT_T_MAX = {"verify": VerifyConfig.t_exact, "asymptote": 1000, "reversal": 1000, "field": 1000}


def parse_config(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    t_max = args.t_max if args.t_max is not None else DEFAULT_T_MAX.get(args.command, 10)
    if t_max < 1:
        raise UsageError(f"--t-max must be >= 1, got {t_max}")
    extra = {}
    if args.command == "blattice":
        extra["series"] = args.series
    if args.command == "verify":
        if args.t_long < 2:
            raise UsageError("--t-long must be >= 2")
        extra["verify"] = {"t_long": args.t_long}
        extra["checks"] = args.check
    return RunConfig(
        command=args.command,
        mu=args.mu,
        t_max=t_max,
        mode=Mode(args.mode),
        out=args.out,
        format=args.format,
        field_spec=args.field,
        delta=args.delta,
        extra=extra,
    )


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_config(argv)
        if config.command == "verify":
            return cmd_verify(config)
        table = TABLE_COMMANDS[config.command](config)
        _write(render(table, config), config.out)
        return EXIT_OK
    except SystemExit as exc:
        return int(exc.code or 0)
    except (UsageError, CheckersError) as exc:
        sys.stderr.write(f"checkers: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"checkers: I/O error: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
