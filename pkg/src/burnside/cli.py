"""Command-line entry point: ``burnside <command> [options]``.

Exit status is 0 on success, 1 when a verification fails (a JSON failure
record goes to stderr) and 2 on bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import acceptance, chain, mixing, orthopoly, sl2, wz
from .eigenbasis import figure_order, full_basis
from .tensor import mask_to_string, states_in_display_order, string_to_mask

FORMATS = ("pretty", "json", "csv")


class CheckFailed(Exception):
    def __init__(self, record: dict):
        super().__init__(record.get("check", "check failed"))
        self.record = record


@dataclass(frozen=True)
class RunConfig:
    command: str
    action: str | None
    fmt: str
    seed: int
    slow: bool
    allow_large: bool
    options: dict = field(default_factory=dict)

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        fmt = args.format
        for name in FORMATS:
            if getattr(args, f"as_{name}", False):
                fmt = name
        skip = {"command", "action", "format", "seed", "slow", "allow_large", "as_pretty", "as_json", "as_csv"}
        options = {k: v for k, v in vars(args).items() if k not in skip}
        return cls(args.command, getattr(args, "action", None), fmt, args.seed, args.slow, args.allow_large, options)

    def __getattr__(self, name):
        try:
            return self.__dict__["options"][name]
        except KeyError:
            raise AttributeError(name) from None


# ---------------------------------------------------------------------------
# output


def _cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def emit(rows: list[dict], fmt: str, out, *, pretty_text: str | None = None) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2, default=str) + "\n")
        return
    if fmt == "csv" or pretty_text is None and fmt == "pretty" and not rows:
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            for r in rows:
                writer.writerow({k: _cell(v) for k, v in r.items()})
        out.write(buf.getvalue())
        return
    if pretty_text is not None:
        out.write(pretty_text.rstrip("\n") + "\n")
        return
    cols = list(rows[0])
    table = [cols] + [[_cell(r[c]) for c in cols] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
    for row in table:
        out.write("  ".join(v.rjust(w) for v, w in zip(row, widths)).rstrip() + "\n")


def _bits(text: str) -> int:
    try:
        return string_to_mask(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands


def cmd_basis(cfg: RunConfig, out) -> None:
    entries = full_basis(cfg.n, allow_large=cfg.allow_large)
    order = states_in_display_order(cfg.n)
    rows = []
    for e in entries:
        row = {"m": e.m, "ell": e.ell, "Q": e.Q.inline(), "eigenvalue": str(e.eigenvalue), "sq_norm": str(e.sq_norm)}
        if cfg.vectors:
            row.update({mask_to_string(s, cfg.n): str(e.vector[s]) for s in order})
        rows.append(row)
    emit(rows, cfg.fmt, out)


def _figure_rows(n: int, which: str) -> list[dict]:
    order = states_in_display_order(n)
    rows = []
    for e in figure_order(full_basis(n)):
        vec = e.g if which == "g" else e.vector
        row = {"m": e.m, "ell": e.ell, "Q": e.Q.inline()}
        row.update({mask_to_string(s, n): str(vec[s]) for s in order})
        if which == "f":
            row["norm"] = str(e.sq_norm)
        rows.append(row)
    return rows


def cmd_tables(cfg: RunConfig, out) -> None:
    g_rows, f_rows = _figure_rows(cfg.n, "g"), _figure_rows(cfg.n, "f")
    if cfg.fmt == "json":
        out.write(json.dumps({"g": g_rows, "f": f_rows}, indent=2) + "\n")
        return
    if cfg.fmt == "csv":
        for name, rows in (("g", g_rows), ("f", f_rows)):
            out.write(f"# {name}\n")
            emit(rows, "csv", out)
        return
    out.write(f"g vectors (n = {cfg.n}), supported on level m + l\n")
    emit(g_rows, "pretty", out)
    out.write(f"\nf vectors (n = {cfg.n}) with squared norms\n")
    emit(f_rows, "pretty", out)


def cmd_hahn(cfg: RunConfig, out) -> None:
    if cfg.action == "eval":
        value = orthopoly.hahn(cfg.N, cfg.alpha, cfg.beta, cfg.ell, cfg.x)
        rows = [{"N": cfg.N, "alpha": cfg.alpha, "beta": cfg.beta, "ell": cfg.ell, "x": cfg.x, "value": str(value)}]
        emit(rows, cfg.fmt, out, pretty_text=str(value) if cfg.fmt == "pretty" else None)
        return
    rows = []
    for x in range(cfg.N + 1):
        row = {"x": x}
        for ell in range(cfg.N + 1):
            row[f"ell={ell}"] = str(orthopoly.hahn(cfg.N, cfg.alpha, cfg.beta, ell, x))
        rows.append(row)
    emit(rows, "csv" if cfg.fmt == "pretty" else cfg.fmt, out)


def cmd_chain(cfg: RunConfig, out) -> None:
    if cfg.action == "entry":
        if len(cfg.x) != len(cfg.y):
            raise ValueError("states must have the same length")
        value = chain.k_entry(cfg.x, cfg.y)
        emit([{"x": cfg.x, "y": cfg.y, "value": str(value), "approx": float(value)}], cfg.fmt, out,
             pretty_text=str(value) if cfg.fmt == "pretty" else None)
    elif cfg.action == "row":
        n = len(cfg.x)
        row = chain.k_row(string_to_mask(cfg.x), n)
        emit([{"y": mask_to_string(y, n), "value": str(row[y]), "approx": float(row[y])}
              for y in states_in_display_order(n)], cfg.fmt, out)
    elif cfg.action == "lumpcheck":
        report = chain.check_lumping(cfg.n)
        emit([report.to_json_obj()] if cfg.fmt == "json" else [{"n": report.n, "holds": report.holds, "checked": report.checked}],
             cfg.fmt, out)
        if not report.holds:
            raise CheckFailed({"check": "lumping", **report.to_json_obj()})
    elif cfg.action == "sample":
        letters = tuple(int(c) for c in cfg.start)
        state = chain.ChainState(len(letters), cfg.k, letters)
        rng = np.random.default_rng(cfg.seed)
        out.write("step,state\n")
        out.write(f"0,{state}\n")
        for step, s in enumerate(chain.run_chain(state, cfg.steps, rng), start=1):
            out.write(f"{step},{s}\n")
    elif cfg.action == "spectrum":
        clusters = chain.numeric_spectrum(cfg.n)
        emit([c.to_json_obj() for c in clusters], "json" if cfg.fmt == "pretty" else cfg.fmt, out)


def cmd_mixing(cfg: RunConfig, out) -> None:
    if cfg.action == "table":
        rows = []
        for shape in mixing.isotypic_table(cfg.n):
            for level, ev in shape.cells.items():
                rows.append({"m": shape.m, "tableaux": len(shape.tableaux), "level": level, "eigenvalue": str(ev)})
        emit(rows, cfg.fmt, out, pretty_text=mixing.render_isotypic_table(cfg.n) if cfg.fmt == "pretty" else None)
        return
    if cfg.sweep:
        if not cfg.one_ones:
            raise ValueError("--sweep needs --one-ones")
        rows = []
        for n in range(cfg.min_n, cfg.n + 1):
            for s in range(cfg.min_steps, cfg.steps + 1):
                r = mixing.chi_square_one_ones(n, s, allow_large=cfg.allow_large)
                rows.append({
                    "n": n, "s": s, "chi_exact": str(r.chi_square), "chi_float": float(r.chi_square),
                    "lower": str(mixing.LOWER_CONSTANT * r.reference), "upper": str(mixing.UPPER_CONSTANT * r.reference),
                    "within_bounds": r.within_bounds(),
                })
        emit(rows, "csv" if cfg.fmt == "pretty" else cfg.fmt, out)
        bad = [r for r in rows if not r["within_bounds"]]
        if bad:
            raise CheckFailed({"check": "one-ones bounds", "first": bad[0]})
        return
    if cfg.one_ones:
        report = mixing.chi_square_one_ones(cfg.n, cfg.steps, allow_large=cfg.allow_large)
    elif cfg.start:
        report = mixing.chi_square(cfg.start, cfg.steps, allow_large=cfg.allow_large)
    else:
        raise ValueError("give --start BITS or --one-ones --n N")
    if cfg.fmt == "pretty":
        out.write(f"{report.chi_square}\n")
    elif cfg.fmt == "json":
        out.write(json.dumps(report.to_json_obj(), indent=2) + "\n")
    else:
        emit([{"n": report.n, "s": report.s, "start": report.start, "chi_exact": str(report.chi_square),
               "chi_float": float(report.chi_square)}], "csv", out)


def cmd_sl2(cfg: RunConfig, out) -> None:
    if cfg.n > sl2.SL2_CAP - 2 and not (cfg.slow or cfg.allow_large):
        raise ValueError(f"n={cfg.n} is a slow check; pass --slow")
    report = sl2.verify_sl2_conjecture(cfg.n, allow_large=cfg.allow_large)
    if cfg.fmt == "json":
        out.write(json.dumps(report.to_json_obj(), indent=2) + "\n")
    elif cfg.fmt == "csv":
        emit([{"coefficient": str(t.coefficient), "terms": " ".join(f"f({x},{y},{z})" for x, y, z in t.counts)}
              for t in report.terms], "csv", out)
    else:
        out.write(f"n = {report.n}: expansion {'matches' if report.holds else 'DOES NOT match'} K_n "
                  f"({report.checked} entries compared)\n")
        if cfg.list_terms:
            out.write(sl2.render_expansion(cfg.n) + "\n")
        out.write(f"c_(2k,0) = beta_k for all k <= n/2: {report.pure_matches_beta}\n")
        out.write(f"c_(k,k) = beta_k for all k <= n/2: {report.diagonal_matches_beta}\n")
    if not report.holds:
        raise CheckFailed({"check": "sl2 expansion", **report.to_json_obj()})


def cmd_wz(cfg: RunConfig, out) -> None:
    report = wz.check_certificates(cfg.max_n)
    brute = [
        (n, m, a, b)
        for n in range(cfg.max_n + 1)
        for m in range(n // 2 + 1)
        for a in range(n - 2 * m + 1)
        for b in range(a + 1, n - 2 * m + 1)
        if wz.brute_force_identity(n, m, a, b)
    ]
    obj = {**report.to_json_obj(), "brute_force_failures": brute[:10]}
    if cfg.fmt == "json":
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        emit([{k: v for k, v in obj.items() if not isinstance(v, (dict, list)) or k == "first_failure" and v is None}],
             cfg.fmt, out)
    if not report.ok or brute:
        raise CheckFailed({"check": "wz", **obj})


def cmd_verify_all(cfg: RunConfig, out) -> None:
    acfg = acceptance.AcceptanceConfig(max_n=cfg.max_n, slow=cfg.slow, seed=cfg.seed, draws=cfg.draws)
    results = acceptance.run_all(acfg, cfg.only)
    if cfg.fmt == "json":
        out.write(json.dumps([r.to_json_obj(cfg.timings) for r in results], indent=2, default=str) + "\n")
    else:
        for r in results:
            out.write(r.line() + (f"  ({r.seconds:.1f}s)" if cfg.timings else "") + "\n")
    failed = [r for r in results if not r.passed]
    if failed:
        raise CheckFailed({"check": "verify-all", "failed": [r.to_json_obj() for r in failed]})


COMMANDS = {
    "basis": cmd_basis,
    "tables": cmd_tables,
    "hahn": cmd_hahn,
    "chain": cmd_chain,
    "mixing": cmd_mixing,
    "sl2": cmd_sl2,
    "wz": cmd_wz,
    "verify-all": cmd_verify_all,
}


# ---------------------------------------------------------------------------
# parser


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=FORMATS, default="pretty")
    group = p.add_mutually_exclusive_group()
    for name in FORMATS:
        group.add_argument(f"--{name}", dest=f"as_{name}", action="store_true", help=f"same as --format {name}")
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--slow", action="store_true", help="enable long-running checks")
    p.add_argument("--allow-large", action="store_true", help="lift the default size caps")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="burnside", description="Exact spectral analysis of the binary Burnside process.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", parents=[common], help="list the orthogonal eigenbasis")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--vectors", action="store_true", help="include coordinates")

    p = sub.add_parser("tables", parents=[common], help="g and f tables with norms")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("hahn", help="Hahn polynomial values")
    hs = p.add_subparsers(dest="action", required=True)
    q = hs.add_parser("eval", parents=[common])
    for name in ("N", "alpha", "beta", "ell", "x"):
        q.add_argument(f"--{name}", type=int, required=True)
    q = hs.add_parser("table", parents=[common])
    for name in ("N", "alpha", "beta"):
        q.add_argument(f"--{name}", type=int, required=True)

    p = sub.add_parser("chain", help="transition kernel and samplers")
    cs = p.add_subparsers(dest="action", required=True)
    q = cs.add_parser("entry", parents=[common])
    q.add_argument("--x", required=True, type=lambda s: (_bits(s), s)[1])
    q.add_argument("--y", required=True, type=lambda s: (_bits(s), s)[1])
    q = cs.add_parser("row", parents=[common])
    q.add_argument("--x", required=True, type=lambda s: (_bits(s), s)[1])
    q = cs.add_parser("lumpcheck", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q = cs.add_parser("sample", parents=[common])
    q.add_argument("--start", required=True, help="letters, e.g. 0110")
    q.add_argument("--steps", type=int, required=True)
    q.add_argument("--k", type=int, default=2)
    q = cs.add_parser("spectrum", parents=[common])
    q.add_argument("--n", type=int, required=True)

    p = sub.add_parser("mixing", help="chi-square distance and isotypic tables")
    ms = p.add_subparsers(dest="action", required=True)
    q = ms.add_parser("chi", parents=[common])
    start = q.add_mutually_exclusive_group(required=True)
    start.add_argument("--start", type=lambda s: (_bits(s), s)[1])
    start.add_argument("--one-ones", action="store_true")
    q.add_argument("--n", type=int)
    q.add_argument("--steps", type=int, required=True)
    q.add_argument("--sweep", action="store_true", help="CSV over 3 <= n' <= n and min-steps <= s <= steps")
    q.add_argument("--min-n", type=int, default=3)
    q.add_argument("--min-steps", type=int, default=3)
    q = ms.add_parser("table", parents=[common])
    q.add_argument("--n", type=int, required=True)

    p = sub.add_parser("sl2", help="p+/p-/p+h expansion of K_n")
    ss = p.add_subparsers(dest="action", required=True)
    q = ss.add_parser("verify", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--list-terms", action="store_true")

    p = sub.add_parser("wz", help="telescoping certificate checks")
    ws = p.add_subparsers(dest="action", required=True)
    q = ws.add_parser("check", parents=[common])
    q.add_argument("--max-n", type=int, default=8)

    p = sub.add_parser("verify-all", parents=[common], help="run every acceptance criterion")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--only", type=int, nargs="+", choices=sorted(acceptance.CRITERIA))
    p.add_argument("--draws", type=int, default=1_000_000)
    p.add_argument("--timings", action="store_true")
    return parser


def _validate(cfg: RunConfig) -> None:
    if cfg.command == "mixing" and cfg.action == "chi" and cfg.one_ones and cfg.n is None:
        raise ValueError("--one-ones needs --n")
    for name in ("n", "N", "steps", "max_n"):
        value = cfg.options.get(name)
        if value is not None and value < (0 if name == "N" else 1):
            raise ValueError(f"--{name.replace('_', '-')} must be positive")


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig.from_args(args)
    try:
        _validate(cfg)
        COMMANDS[cfg.command](cfg, out)
    except CheckFailed as exc:
        err.write(json.dumps({"status": "failure", **exc.record}, default=str) + "\n")
        return 1
    except (ValueError, IndexError) as exc:
        err.write(f"burnside: error: {exc}\n")
        return 2
    return 0


def main() -> None:
    sys.exit(run())
