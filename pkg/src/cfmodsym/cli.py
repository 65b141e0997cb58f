"""Command-line entry point: ``cfmodsym <command> [options]``.

Every command writes ``report.json`` and ``manifest.json`` (plus CSV/SVG where relevant)
into ``<outdir>/<command>-<timestamp>/``.  Options may also come from a JSON config file
(``--config``); keys are the option names with dashes replaced by underscores, and flags on
the command line win.

Exit codes: 0 ok, 2 config, 3 resource bound, 4 numeric non-convergence,
5 statistical-power warning (only with ``--strict``).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .cf import IntegerWidthError
from .cosets import LevelBoundError, SearchBudgetExceeded, build_coset_table, connecting_word

log = logging.getLogger("cfmodsym")

EXIT_OK, EXIT_CONFIG, EXIT_RESOURCE, EXIT_NUMERIC, EXIT_POWER = 0, 2, 3, 4, 5


class ConfigError(ValueError):
    pass


class PowerWarning(UserWarning):
    pass


# ---------------------------------------------------------------- helpers


def _ints(text: str) -> list[int]:
    return [int(t) for t in str(text).split(",") if t.strip()]


def _floats(text: str) -> list[float]:
    return [float(t) for t in str(text).split(",") if t.strip()]


def direction_vector(text: str, k: int) -> np.ndarray:
    """'ones', 'e<u>' (unit vector) or a comma list of k integers."""
    text = str(text).strip()
    if text == "ones":
        return np.ones(k, dtype=np.int64)
    if text.startswith("e") and text[1:].isdigit():
        u = int(text[1:])
        if not 0 <= u < k:
            raise ConfigError(f"coset index {u} out of range 0..{k - 1}")
        v = np.zeros(k, dtype=np.int64)
        v[u] = 1
        return v
    vals = _ints(text)
    if len(vals) != k:
        raise ConfigError(f"direction needs {k} entries")
    return np.array(vals, dtype=np.int64)


def density_from(text: str, table):
    """'uniform', 'phi_<d>', or 'interval:<lo>:<hi>[:phi_<d>][:r|dual]'."""
    from .partition import divisor_density, divisor_mask, interval_density, uniform

    text = str(text)
    if text == "uniform":
        return uniform()
    if text.startswith("phi_"):
        return divisor_density(table, int(text[4:]))
    if text.startswith("interval:"):
        parts = text.split(":")[1:]
        lo, hi = Fraction(parts[0]), Fraction(parts[1])
        mask, constrain = None, "dual"
        for p in parts[2:]:
            if p.startswith("phi_"):
                mask = divisor_mask(table, int(p[4:]))
            elif p in ("r", "dual"):
                constrain = p
            else:
                raise ConfigError(f"bad interval option {p!r}")
        return interval_density(lo, hi, mask, constrain)
    raise ConfigError(f"unknown density {text!r}")


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, Fraction):
        return str(x)
    return x


class Run:
    """Output directory, report, manifest and warnings of one command invocation."""

    def __init__(self, args, command: str):
        self.args = args
        self.command = command
        self.started = time.time()
        self._dir: Path | None = None
        self.files: list[Path] = []
        self.warnings: list[str] = []
        self.fingerprint = None

    @property
    def dir(self) -> Path:
        """Created on first use, so a run that fails early leaves nothing behind."""
        if self._dir is None:
            stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%S")
            base = Path(self.args.outdir) / f"{self.command}-{stamp}"
            path, i = base, 1
            while path.exists():
                path = Path(f"{base}-{i}")
                i += 1
            path.mkdir(parents=True)
            self._dir = path
        return self._dir

    def warn(self, msg: str):
        log.warning(msg)
        self.warnings.append(msg)

    def write(self, name: str, text: str) -> Path:
        p = self.dir / name
        p.write_text(text)
        self.files.append(p)
        return p

    def finish(self, report: dict, plots: bool = True) -> int:
        from .plotting import EmptyReport, UnknownSchema, plot

        report = dict(report, schema=self.command, warnings=self.warnings)
        self.write("report.json", json.dumps(_jsonable(report), indent=2, sort_keys=True))
        if plots and not self.args.no_plots:
            try:
                self.files.extend(plot(report, self.dir))
            except EmptyReport as exc:
                self.warn(f"no plot written: {exc}")
            except UnknownSchema:
                pass
        params = {k: v for k, v in vars(self.args).items() if k not in ("func",)}
        manifest = {
            "command": self.command,
            "parameters": _jsonable(params),
            "coset_table_fingerprint": self.fingerprint,
            "version": __version__,
            "wall_clock_seconds": round(time.time() - self.started, 3),
            "threads": self.args.threads,
            "seed": self.args.seed,
            "outputs": {p.name: hashlib.sha256(p.read_bytes()).hexdigest() for p in self.files},
            "warnings": self.warnings,
        }
        (self.dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))
        print(self.dir)
        if self.warnings and self.args.strict:
            return EXIT_POWER
        return EXIT_OK


def _table(args, run: Run):
    table = build_coset_table(args.level, bound=args.level_bound)
    run.fingerprint = table.fingerprint
    return table


def _grid(args) -> list[int]:
    if args.grid:
        g = sorted(set(_ints(args.grid)))
    else:
        M = args.max_denominator
        g = sorted({max(2, M // 8), max(2, M // 4), max(2, M // 2), M})
    return g


# ---------------------------------------------------------------- commands


def cmd_clt(args) -> int:
    from .partition import Probes, clt_report, ensemble_scan, quasi_power_fit

    run = Run(args, "clt")
    table = _table(args, run)
    d = direction_vector(args.direction, table.k)
    ts = _floats(args.mgf_points)
    probes = Probes(directions=[d], mgf=[t * d.astype(float) for t in ts])
    dens = density_from(args.density, table)
    stats, runs = [], []
    for M in _grid(args):
        st = ensemble_scan(table, M, dens, probes, threads=args.threads)
        rep = clt_report(st, 0)
        if rep["low_power"]:
            run.warn(f"low statistical power at M={M}: {st.sample_count} samples")
        if rep["zero_variance"]:
            run.warn(f"zero variance at M={M}")
        stats.append(st)
        runs.append(rep)
    fits = [dict(quasi_power_fit(stats, j), t=t) for j, t in enumerate(ts)] if len(stats) >= 2 else []
    csv = "M,samples,mean,variance,ks,ks_raw\n" + "".join(
        f"{r['M']},{r['samples']},{r['mean']!r},{r['variance']!r},{r['ks']!r},{r['ks_raw']!r}\n" for r in runs)
    run.write("clt.csv", csv)
    return run.finish({"level": args.level, "direction": d, "density": dens.describe(), "runs": runs,
                       "quasi_power": fits})


def cmd_residual(args) -> int:
    from .partition import Probes, ensemble_scan, residual_report

    run = Run(args, "residual")
    table = _table(args, run)
    dens = density_from(args.density, table)
    runs = []
    for M in _grid(args):
        st = ensemble_scan(table, M, dens, Probes(moduli=[args.q]), threads=args.threads)
        rep = residual_report(st, args.q)
        rep["max_deviation"] = rep.get("full_max_deviation", rep["marginal_max_deviation"])
        rep["samples"] = st.sample_count
        runs.append(rep)
    run.write("residual.csv", "M,samples,full_max_deviation,marginal_max_deviation\n" + "".join(
        f"{r['M']},{r['samples']},{r.get('full_max_deviation')!r},{r['marginal_max_deviation']!r}\n" for r in runs))
    return run.finish({"level": args.level, "q": args.q, "density": dens.describe(), "runs": runs})


def cmd_variance_fit(args) -> int:
    from .partition import Probes, ensemble_scan, variance_fit

    run = Run(args, "variance-fit")
    table = _table(args, run)
    d = direction_vector(args.direction, table.k)
    dens = density_from(args.density, table)
    grid = _ints(args.grid) if args.grid else [250, 500, 1000, 2000]
    stats = [ensemble_scan(table, M, dens, Probes(directions=[d]), threads=args.threads) for M in grid]
    try:
        fit = variance_fit(stats, 0)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return run.finish({"level": args.level, "direction": d, "fit": fit})


def cmd_noncorrelation(args) -> int:
    from .partition import Probes, conditional_mgf, ensemble_scan

    run = Run(args, "noncorrelation")
    table = _table(args, run)
    d = direction_vector(args.direction, table.k)
    ones = np.ones(table.k)
    probes = Probes(mgf=[np.zeros(table.k), args.w * ones], congruences=[(d, args.modulus)])
    st = ensemble_scan(table, args.max_denominator, density_from(args.density, table), probes,
                       threads=args.threads)
    rows = []
    for a in range(args.modulus):
        rows.append({"residue": a, "weight": int(st.cong_weight[0][a]),
                     "ratio_w0": conditional_mgf(st, 0, a, 0).real,
                     "ratio_w": conditional_mgf(st, 0, a, 1).real})
    worst = max(abs(r["ratio_w"] - 1) for r in rows)
    return run.finish({"level": args.level, "M": args.max_denominator, "w": args.w, "modulus": args.modulus,
                       "rows": rows, "max_ratio_deviation": worst})


def _operator_grid(args, run):
    from .transfer import OperatorGrid

    return OperatorGrid(_table(args, run), n=args.n, m_max=args.m_max)


def cmd_spectral(args) -> int:
    from .transfer import dominant_spectrum

    run = Run(args, "spectral")
    grid = _operator_grid(args, run)
    w = args.w * np.ones(grid.k)
    sweep = []
    for s in _floats(args.s):
        sol = dominant_spectrum(grid, s, w, seed=args.seed)
        row = sol.to_json()
        row.update(s=s, **{"lambda": float(np.real(sol.lam))})
        sweep.append(row)
    rep = {"level": grid.level, "n": grid.n, "m_max": grid.m_max, "w": args.w, "results": sweep}
    if len(sweep) > 1:
        rep["sweep"] = [{"s": r["s"], "lambda": r["lambda"]} for r in sweep]
    return run.finish(rep)


def cmd_s0(args) -> int:
    from .partition import Probes, ensemble_scan, mean_fit
    from .transfer import s0_gradient, s0_hessian, solve_s0

    run = Run(args, "s0")
    grid = _operator_grid(args, run)
    s0 = solve_s0(grid)
    grad = s0_gradient(grid)
    rep = {"level": grid.level, "n": grid.n, "m_max": grid.m_max, "s0": s0, "gradient": grad,
           "mean_slope_prediction": float(2 * np.sum(grad))}
    if args.hessian:
        h = s0_hessian(grid)
        rep["hessian"] = h["hessian"]
        rep["hessian_asymmetry"] = h["asymmetry"]
        rep["hessian_singular_values"] = h["singular_values"]
        rep["hessian_rank"] = int(np.sum(np.asarray(h["singular_values"]) > 1e-8 * h["singular_values"][0]))
        if rep["hessian_rank"] < grid.k:
            run.warn(f"Hessian is singular: rank {rep['hessian_rank']} of {grid.k}")
    if args.grid:
        table = grid.table
        ones = np.ones(table.k, dtype=np.int64)
        stats = [ensemble_scan(table, M, None, Probes(directions=[ones]), threads=args.threads)
                 for M in _ints(args.grid)]
        rep["empirical_mean_fit"] = mean_fit(stats)
    return run.finish(rep)


def cmd_key_relation(args) -> int:
    from .transfer import check_key_relation

    run = Run(args, "key-relation")
    grid = _operator_grid(args, run)
    dens = density_from(args.density, grid.table)
    res = check_key_relation(grid, dens, args.s, args.w * np.ones(grid.k), cutoff=args.cutoff)
    return run.finish({"level": grid.level, "s": args.s, "w": args.w, "density": dens.describe(),
                       "cutoff": args.cutoff, **res.to_json()})


def _curve_symbols(args, run):
    from .curves import Curve
    from .symbols import curve_symbols, infer_level

    try:
        curve = Curve.parse(args.curve)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    level = args.level or infer_level(curve)
    cs = curve_symbols(curve, level)
    run.fingerprint = cs.table.fingerprint
    return cs


def cmd_symbols_extract(args) -> int:
    run = Run(args, "symbols-extract")
    cs = _curve_symbols(args, run)
    for es in (cs.plus, cs.minus):
        run.write(f"eigensymbol{'+' if es.sign > 0 else '-'}.json", es.dumps())
    return run.finish({"level": cs.table.level, "plus": cs.plus.to_json(), "minus": cs.minus.to_json()})


def cmd_symbols_eval(args) -> int:
    from .symbols import eval_symbol

    run = Run(args, "symbols-eval")
    cs = _curve_symbols(args, run)
    if not args.r and not args.atkin_lehner:
        raise ConfigError("give --r and/or --atkin-lehner")
    rows = []
    for text in str(args.r or "").split(","):
        if not text.strip():
            continue
        r = Fraction(text.strip())
        rows.append({"r": str(r), "plus": eval_symbol(cs.plus, cs.table, r),
                     "minus": eval_symbol(cs.minus, cs.table, r)})
    rep = {"level": cs.table.level, "values": rows}
    if args.atkin_lehner:
        from .symbols import atkin_lehner_failures

        al = []
        for n in _ints(args.atkin_lehner):
            for es in (cs.plus, cs.minus):
                bad = atkin_lehner_failures(es, cs.table, n)
                al.append({"n": n, "sign": es.sign, "failures": len(bad), "first": bad[:10]})
        rep["atkin_lehner"] = al
        rep["atkin_lehner_failures"] = sum(r["failures"] for r in al)
    return run.finish(rep)


def cmd_symbols_residual(args) -> int:
    from .symbols import residual_symbol_reports

    run = Run(args, "symbols-residual")
    cs = _curve_symbols(args, run)
    N = cs.table.level
    dens = {"uniform": density_from("uniform", cs.table)}
    for iv in (args.interval or []):
        dens[iv] = density_from(f"interval:{iv}:phi_{N}:{args.constrain}", cs.table)
    reducible = {tuple(cs.curve.ainvs): _ints(args.reducible)} if args.reducible else None
    runs = []
    for M in _grid(args):
        reps = residual_symbol_reports([cs.plus, cs.minus], cs.table, M, args.p, args.e, dens, reducible,
                                       threads=args.threads)
        for rep in reps:
            for label, ens in rep["ensembles"].items():
                runs.append({"M": M, "sign": rep["sign"], "ensemble": label, "samples": ens["samples"],
                             "max_deviation": ens["max_deviation"], "probabilities": ens["probabilities"]})
            for f in rep["flags"]:
                if f not in run.warnings:
                    run.warn(f)
    run.write("deviation.csv", "M,sign,ensemble,samples,max_deviation\n" + "".join(
        f"{r['M']},{r['sign']},{r['ensemble']},{r['samples']},{r['max_deviation']!r}\n" for r in runs))
    top = [r for r in runs if r["M"] == max(x["M"] for x in runs) and r["ensemble"] == "uniform"
           and r["sign"] == 1]
    return run.finish({"level": N, "p": args.p, "e": args.e, "runs": runs,
                       "deviation_table": top})


def cmd_symbols_survey(args) -> int:
    from .twists import nonvanishing_survey

    run = Run(args, "symbols-survey")
    cs = _curve_symbols(args, run)
    res = nonvanishing_survey(cs, args.max_n, args.p)
    run.write("survey.csv", res.to_csv())
    grid = [g for g in _ints(args.growth_grid) if g <= args.max_n] if args.growth_grid else []
    for n, idx, msg in res.skipped:
        run.warn(f"skipped n={n} chi={idx}: {msg}")
    return run.finish({"level": cs.table.level, **res.summary(),
                       "growth": res.growth(grid) if grid else None})


def cmd_cosets_laws(args) -> int:
    from .partition import exact_law_failures

    run = Run(args, "cosets-laws")
    table = _table(args, run)
    rep = exact_law_failures(table, args.max_denominator)
    return run.finish(dict(rep, level=args.level))


def cmd_cosets_word(args) -> int:
    run = Run(args, "cosets-word")
    table = _table(args, run)
    for u in (args.source, args.target):
        if not 0 <= u < table.k:
            raise ConfigError(f"coset index {u} out of range 0..{table.k - 1}")
    word = connecting_word(table, args.source, args.target, budget=args.budget)
    return run.finish({"level": args.level, "source": args.source, "target": args.target, "word": word,
                       "table": table.describe()})


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option defaults")
    common.add_argument("--outdir", default="runs")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--strict", action="store_true", help="treat power warnings as failures")
    common.add_argument("--no-plots", action="store_true")
    common.add_argument("--level-bound", type=int, default=10_000)
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="cfmodsym", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def ens(sp, M=2000, level=2):
        sp.add_argument("--level", type=int, default=level)
        sp.add_argument("--max-denominator", type=int, default=M)
        sp.add_argument("--grid", help="comma list of cutoffs (default M/8, M/4, M/2, M)")
        sp.add_argument("--density", default="uniform")

    sp = sub.add_parser("clt", parents=[common])
    ens(sp)
    sp.add_argument("--direction", default="ones")
    sp.add_argument("--mgf-points", default="0.05,0.1")
    sp.set_defaults(func=cmd_clt)

    sp = sub.add_parser("residual", parents=[common])
    ens(sp, 5000)
    sp.add_argument("--q", type=int, default=2)
    sp.set_defaults(func=cmd_residual)

    sp = sub.add_parser("variance-fit", parents=[common])
    ens(sp)
    sp.add_argument("--direction", default="ones")
    sp.set_defaults(func=cmd_variance_fit)

    sp = sub.add_parser("noncorrelation", parents=[common])
    ens(sp, 4000)
    sp.add_argument("--direction", default="ones")
    sp.add_argument("--modulus", type=int, default=2)
    sp.add_argument("--w", type=float, default=0.05)
    sp.set_defaults(func=cmd_noncorrelation)

    def op(sp):
        sp.add_argument("--level", type=int, default=1)
        sp.add_argument("--n", type=int, default=48)
        sp.add_argument("--m-max", type=int, default=4096)
        sp.add_argument("--w", type=float, default=0.0, help="w = value * (1, ..., 1)")

    sp = sub.add_parser("spectral", parents=[common])
    op(sp)
    sp.add_argument("--s", default="1.0", help="comma list of real s")
    sp.set_defaults(func=cmd_spectral)

    sp = sub.add_parser("s0", parents=[common])
    op(sp)
    sp.add_argument("--hessian", action="store_true")
    sp.add_argument("--grid", help="cutoffs for the empirical mean slope")
    sp.set_defaults(func=cmd_s0)

    sp = sub.add_parser("key-relation", parents=[common])
    op(sp)
    sp.add_argument("--s", type=float, default=1.25)
    sp.add_argument("--cutoff", type=int, default=4000)
    sp.add_argument("--density", default="uniform")
    sp.set_defaults(func=cmd_key_relation)

    sym = sub.add_parser("symbols").add_subparsers(dest="action", required=True)

    def curve(sp):
        sp.add_argument("--curve", required=True, help="a1,a2,a3,a4,a6")
        sp.add_argument("--level", type=int, default=None, help="conductor (inferred when omitted)")

    sp = sym.add_parser("extract", parents=[common])
    curve(sp)
    sp.set_defaults(func=cmd_symbols_extract)
    sp = sym.add_parser("eval", parents=[common])
    curve(sp)
    sp.add_argument("--r", help="comma list of rationals a/n")
    sp.add_argument("--atkin-lehner", help="comma list of multiples n of the level to test m(a/n) = -m(a*/n)")
    sp.set_defaults(func=cmd_symbols_eval)
    sp = sym.add_parser("residual", parents=[common])
    curve(sp)
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--e", type=int, default=1)
    sp.add_argument("--max-denominator", type=int, default=4000)
    sp.add_argument("--grid")
    sp.add_argument("--interval", action="append", help="lo:hi, restricted to phi_N (repeatable)")
    sp.add_argument("--constrain", choices=["r", "dual"], default="r")
    sp.add_argument("--reducible", help="comma list of primes with reducible mod-p representation")
    sp.set_defaults(func=cmd_symbols_residual)
    sp = sym.add_parser("survey", parents=[common])
    curve(sp)
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--max-n", type=int, default=300)
    sp.add_argument("--growth-grid", default="100,200,300")
    sp.set_defaults(func=cmd_symbols_survey)

    cos = sub.add_parser("cosets").add_subparsers(dest="action", required=True)
    sp = cos.add_parser("laws", parents=[common])
    sp.add_argument("--level", type=int, default=2)
    sp.add_argument("--max-denominator", type=int, default=500)
    sp.set_defaults(func=cmd_cosets_laws)
    sp = cos.add_parser("word", parents=[common])
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--source", type=int, default=0)
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--budget", type=int, default=10 ** 6)
    sp.set_defaults(func=cmd_cosets_word)
    return p


def _apply_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    """Parse argv; config-file values become defaults that explicit flags override."""
    args = parser.parse_args(argv)
    if not args.config:
        return args
    try:
        cfg = json.loads(Path(args.config).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    known = vars(args)
    defaults = {}
    for key, val in cfg.items():
        dest = key.replace("-", "_")
        if dest not in known or dest in ("func", "command", "action", "config"):
            raise ConfigError(f"unknown config key {key!r}")
        ref = known[dest]
        if isinstance(ref, bool) and not isinstance(val, bool):
            raise ConfigError(f"{key} must be a boolean")
        if isinstance(ref, int) and not isinstance(ref, bool) and not (isinstance(val, int) and not isinstance(val, bool)):
            raise ConfigError(f"{key} must be an integer")
        if isinstance(ref, float) and not isinstance(val, (int, float)):
            raise ConfigError(f"{key} must be a number")
        if isinstance(val, list):
            val = ",".join(str(v) for v in val) if dest != "interval" else [str(v) for v in val]
        defaults[dest] = val
    # re-parse with config defaults injected into the chosen subparser
    sub_action = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    target = sub_action.choices[args.command]
    if getattr(args, "action", None):
        inner = next(a for a in target._actions if isinstance(a, argparse._SubParsersAction))
        target = inner.choices[args.action]
    target.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = _apply_config(parser, argv)
    except SystemExit as exc:  # argparse reports config errors with status 2
        return int(exc.code or 0)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.INFO, format="%(levelname)s %(message)s")
    from .partition import EmptyEnsembleError
    from .symbols import EigenspaceError
    from .transfer import NonConvergenceError

    try:
        if args.threads < 1:
            raise ConfigError("threads must be positive")
        return args.func(args)
    except (ConfigError, EmptyEnsembleError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (LevelBoundError, SearchBudgetExceeded, IntegerWidthError, MemoryError) as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (NonConvergenceError, EigenspaceError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
