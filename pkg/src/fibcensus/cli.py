"""Command-line front end: ``fibcensus <subcommand> [options]``.

Exit codes: 0 on success, 1 on bad arguments or configuration (including an
exhausted precision cap), 2 when a verification or lemma check fails.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

from . import __version__
from .density_stats import (
    PrecisionCapExceeded,
    len_decimal,
    density_report,
    empirical_stats,
    theta_approx,
)
from .lemma_suite import CheckResult, mutation_harness, run_all
from .rank_census import CensusRecord, census, census_counts, census_stream, verify_theorem
from .reports import (
    FORMATS,
    SCHEMA_VERSION,
    census_rows_csv,
    census_rows_json,
    to_csv,
    to_json,
    to_json_lines,
    to_text,
)

EXIT_OK, EXIT_USAGE, EXIT_CHECK_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    base: int = 10
    k: int | None = None
    max_k: int = 1000
    n: int = 10_000
    digits: int = 20
    format: str = "text"
    out: str | None = None
    threads: int = 1
    # lemma ranges
    n_max: int = 2000
    grid: int = 200
    key_n_max: int = 300
    key_m_max: int = 300
    a_max: int = 100
    k_max: int = 200
    mutation_seed: int | None = None

    def validate(self) -> None:
        if self.base < 2:
            raise UsageError(f"--base must be >= 2, got {self.base}")
        if self.k is not None and self.k < 0:
            raise UsageError(f"--k must be >= 0, got {self.k}")
        if self.max_k < 0:
            raise UsageError(f"--max-k must be >= 0, got {self.max_k}")
        if self.n < 1:
            raise UsageError(f"--n must be >= 1, got {self.n}")
        if self.digits < 1:
            raise UsageError(f"--digits must be >= 1, got {self.digits}")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {', '.join(FORMATS)}")
        if self.threads < 1:
            raise UsageError(f"--threads must be >= 1, got {self.threads}")
        for name in ("n_max", "grid", "key_n_max", "key_m_max", "k_max"):
            if getattr(self, name) < 0:
                raise UsageError(f"--{name.replace('_', '-')} must be >= 0")
        if self.a_max < 2:
            raise UsageError("--a-max must be >= 2")


_CONFIG_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, raw: str):
    if key in ("format", "out"):
        return raw
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"config key {key!r}: expected an integer, got {raw!r}") from None


def load_config(path: str | Path) -> dict:
    """Read ``key = value`` lines; ``#`` starts a comment. Dashes in keys map to underscores."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}") from None
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONFIG_TYPES:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _coerce(key, raw)
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value file supplying defaults")
    common.add_argument("--base", type=int, help="base a >= 2")
    common.add_argument("--digits", type=int, help="decimal places for theta and shares")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--threads", type=int, help="worker processes for census passes")

    parser = _Parser(prog="fibcensus", description="Fibonacci numbers in intervals [a^k, a^(k+1)).")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="SUBCOMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("count", parents=[common], help="count Fibonacci numbers in [a^k, a^(k+1))")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--k", type=int, help="single exponent")
    g.add_argument("--max-k", type=int, help="all exponents 0..K")

    p = sub.add_parser("verify", parents=[common], help="check the two-value count dichotomy")
    p.add_argument("--max-k", type=int, help="check exponents 0..K (default 1000)")

    p = sub.add_parser("density", parents=[common], help="empirical vs theoretical class densities")
    p.add_argument("--n", type=int, help="number of intervals N (default 10000)")

    sub.add_parser("theta", parents=[common], help="certified log a / log phi")

    p = sub.add_parser("stats", parents=[common], help="expected vs empirical mean and deviation")
    p.add_argument("--n", type=int, help="number of intervals N (default 10000)")

    p = sub.add_parser("lemmas", parents=[common], help="run the identity and inequality checkers")
    p.add_argument("--n-max", type=int, help="range for the phi-power bounds")
    p.add_argument("--grid", type=int, help="half-width of the signed identity grids")
    p.add_argument("--key-n-max", type=int)
    p.add_argument("--key-m-max", type=int)
    p.add_argument("--a-max", type=int, help="largest base for the Honsberger bound")
    p.add_argument("--k-max", type=int, help="largest exponent for the Honsberger bound")
    p.add_argument("--mutation-seed", type=int, help="run the fault-injection harness instead")

    p = sub.add_parser("bench", parents=[common], help="time the streaming census")
    p.add_argument("--n", type=int, help="number of intervals (default 10000)")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    values = load_config(args.config) if args.config else {}
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


# ---------------------------------------------------------------------------
# subcommands; each returns (report text, exit code)
# ---------------------------------------------------------------------------


def _cmd_count(cfg: RunConfig) -> tuple[str, int]:
    if cfg.k is not None:
        records = [census(cfg.base, cfg.k)]
    else:
        counts = census_counts(cfg.base, cfg.max_k + 1, cfg.threads)
        records = [CensusRecord(cfg.base, k, c) for k, c in enumerate(counts)]
    if cfg.format == "csv":
        return census_rows_csv(records), EXIT_OK
    if cfg.format == "json":
        return census_rows_json(records), EXIT_OK
    if cfg.k is not None:
        return f"{records[0].count}\n", EXIT_OK
    return "".join(f"{r.a} {r.k} {r.count}\n" for r in records), EXIT_OK


def _cmd_verify(cfg: RunConfig) -> tuple[str, int]:
    rep = verify_theorem(cfg.base, cfg.max_k + 1, cfg.threads)
    code = EXIT_OK if rep.all_pass else EXIT_CHECK_FAILED
    if cfg.format == "json":
        return to_json({
            "schema_version": SCHEMA_VERSION,
            "a": rep.a,
            "max_k": cfg.max_k,
            "intervals": rep.K,
            "ell": rep.ell,
            "all_pass": rep.all_pass,
            "violations": [{"k": v.k, "count": v.count} for v in rep.violations],
            "histogram": {str(c): n for c, n in rep.histogram.items()},
        }), code
    if cfg.format == "csv":
        return to_csv(("a", "count", "intervals"), ((rep.a, c, n) for c, n in rep.histogram.items())), code
    lines = {
        "base": rep.a,
        "exponents": f"0..{cfg.max_k}",
        "ell": rep.ell,
        "histogram": ", ".join(f"{c}: {n}" for c, n in rep.histogram.items()),
        "violations": len(rep.violations),
        "all_pass": str(rep.all_pass).lower(),
    }
    text = to_text(lines)
    for v in rep.violations[:20]:
        text += f"violation: k={v.k} count={v.count}\n"
    return text, code


def _cmd_density(cfg: RunConfig) -> tuple[str, int]:
    rep = density_report(cfg.base, cfg.n, cfg.digits, cfg.threads)
    data = rep.as_dict()
    if cfg.format == "json":
        return to_json({"schema_version": SCHEMA_VERSION, **data}), EXIT_OK
    if cfg.format == "csv":
        return to_csv(list(data), [list(data.values())]), EXIT_OK
    return to_text(data), EXIT_OK


def _cmd_theta(cfg: RunConfig) -> tuple[str, int]:
    th = theta_approx(cfg.base, cfg.digits)
    data = {
        "a": th.a,
        "digits": cfg.digits,
        "value": th.value,
        "error_bound": th.error_bound,
        "floor_part": th.floor_part,
        "frac_part": th.frac_part,
        "precision_bits": th.precision_bits,
    }
    if cfg.format == "json":
        return to_json({"schema_version": SCHEMA_VERSION, **data}), EXIT_OK
    if cfg.format == "csv":
        return to_csv(list(data), [list(data.values())]), EXIT_OK
    return to_text(data), EXIT_OK


def _cmd_stats(cfg: RunConfig) -> tuple[str, int]:
    if cfg.n < 2:
        raise UsageError("stats needs --n >= 2")
    data = empirical_stats(cfg.base, cfg.n, cfg.digits, cfg.threads).as_dict()
    if cfg.format == "json":
        return to_json({"schema_version": SCHEMA_VERSION, **data}), EXIT_OK
    if cfg.format == "csv":
        return to_csv(list(data), [list(data.values())]), EXIT_OK
    return to_text(data), EXIT_OK


def _check_rows(results: list[CheckResult]) -> list[dict]:
    return [{"schema_version": SCHEMA_VERSION, **r.as_dict()} for r in results]


def _cmd_lemmas(cfg: RunConfig) -> tuple[str, int]:
    if cfg.mutation_seed is not None:
        rows = []
        for fault, res in mutation_harness(cfg.mutation_seed):
            detected = not res.passed and res.counterexample is not None
            rows.append({
                "schema_version": SCHEMA_VERSION,
                "name": res.name,
                "fault": fault,
                "pass": detected,
                "counterexample": res.as_dict()["counterexample"],
            })
    else:
        results = run_all(
            n_max=cfg.n_max,
            grid=cfg.grid,
            key_n_max=cfg.key_n_max,
            key_m_max=cfg.key_m_max,
            a_max=cfg.a_max,
            k_max=cfg.k_max,
        )
        rows = _check_rows(results)
    code = EXIT_OK if all(r["pass"] for r in rows) else EXIT_CHECK_FAILED
    if cfg.format == "json":
        return to_json_lines(rows), code
    keys = [k for k in rows[0] if k != "schema_version"]
    if cfg.format == "csv":
        return to_csv(keys, ([_cell(r[k]) for k in keys] for r in rows)), code
    text = ""
    for r in rows:
        status = "PASS" if r["pass"] else "FAIL"
        extra = r.get("range") or r.get("fault")
        text += f"{status}  {r['name']}  {extra}"
        if r["counterexample"] is not None:
            text += f"  counterexample={tuple(r['counterexample'])}"
        text += "\n"
    return text, code


def _cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return " ".join(map(str, v))
    return v


def _cmd_bench(cfg: RunConfig) -> tuple[str, int]:
    start = time.perf_counter()
    last = None
    for last in census_stream(cfg.base, cfg.n):
        pass
    elapsed = time.perf_counter() - start
    digits = len_decimal(cfg.base**cfg.n)
    data = {
        "a": cfg.base,
        "intervals": cfg.n,
        "final_boundary_digits": digits,
        "seconds": f"{elapsed:.3f}",
        "intervals_per_second": f"{cfg.n / elapsed:.1f}" if elapsed > 0 else "inf",
        "last_count": last.count,
    }
    if cfg.format == "json":
        return to_json({"schema_version": SCHEMA_VERSION, **data}), EXIT_OK
    if cfg.format == "csv":
        return to_csv(list(data), [list(data.values())]), EXIT_OK
    return to_text(data), EXIT_OK


_COMMANDS = {
    "count": _cmd_count,
    "verify": _cmd_verify,
    "density": _cmd_density,
    "theta": _cmd_theta,
    "stats": _cmd_stats,
    "lemmas": _cmd_lemmas,
    "bench": _cmd_bench,
}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = resolve_config(args)
        text, code = _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"fibcensus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, PrecisionCapExceeded) as exc:
        print(f"fibcensus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(text, cfg.out)
    return code


def main() -> None:
    sys.exit(run())
