"""Command-line front end: parameter sweeps and curve dumps.

Every mode writes one row per grid point, CSV or JSON, with numbers at 17
significant digits; identical configs give byte-identical files regardless
of --threads (grid points are pure functions, written in grid order).

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .states import (ModelParams, mutual_information_two_mol, symmetric_final_state,
                     tensor_power_grouped)
from .curves import build_curve, max_uncorrelated_yield
from .states import uncorrelated_final_state
from .closedform import gamma_td, relative_advantage
from .gibbslp import max_correlated_yield
from .asymptotics import greedy_asymptotic_yield
from .coherence import max_yield_coherent
from .multilevel import FiveLevelParams, five_level_yield

MODES = ("uncorrelated", "correlated", "td", "asymptotic", "coherence",
         "fivelevel", "single", "mutualinfo", "advantage")


class ConfigError(ValueError):
    pass


class NumericalError(RuntimeError):
    pass


def fmt(x: float) -> str:
    return f"{x:.17g}"


@dataclass
class SweepConfig:
    mode: str
    delta_min: float = 0.05
    delta_max: float = 30.0
    delta_step: float = 0.05
    q: float = 0.5
    w: float = 30.0
    n: int = 2
    n_min: int = 2
    n_max: int = 50
    alpha: float = 0.0
    omega0: float = 0.1
    omega_delta: float = 0.1
    beta0: float = 100.0
    out: str = "-"
    fmt: str = "csv"
    threads: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; choose from {MODES}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.delta_step <= 0 or self.delta_min <= 0:
            raise ConfigError("delta grid must be positive with positive step")
        if self.delta_max < self.delta_min:
            raise ConfigError("delta-max below delta-min")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.mode == "advantage" and self.n_min < 2:
            raise ConfigError("advantage mode needs n-min >= 2")

    def delta_grid(self) -> list[float]:
        out = []
        k = 0
        while True:
            d = self.delta_min + k * self.delta_step
            if d > self.delta_max + 1e-12:
                break
            out.append(min(d, self.delta_max))
            k += 1
        if not out:
            raise ConfigError("empty delta grid")
        return out

    def n_grid(self) -> list[int]:
        if self.n_max < self.n_min:
            raise ConfigError("n-max below n-min")
        return list(range(self.n_min, self.n_max + 1))


def _columns(cfg: SweepConfig) -> list[str]:
    base = {
        "uncorrelated": ["delta", "q", "w", "n", "gamma"],
        "td": ["delta", "q", "w", "gamma"],
        "asymptotic": ["delta", "q", "w", "n", "gamma"],
        "single": ["delta", "q", "w", "gamma"],
        "coherence": ["delta", "q", "w", "alpha", "gamma_correlated", "gamma_uncorrelated"],
        "fivelevel": ["delta", "q", "w", "omega0", "omega_delta", "beta0", "n", "gamma"],
        "mutualinfo": ["delta", "gamma", "p0", "p1", "p2", "mutual_information"],
        "advantage": ["n", "delta", "q", "w", "gamma_u", "gamma_c", "delta_n"],
    }
    if cfg.mode == "correlated":
        return ["delta", "q", "w", "n", "gamma"] + [f"p_{i}" for i in range(1, cfg.n + 1)]
    return base[cfg.mode]


def _point(cfg: SweepConfig, key: float | int) -> list[float]:
    """Compute one grid row; pure in (cfg, key)."""
    mode, q, w = cfg.mode, cfg.q, cfg.w
    if mode == "advantage":
        n = int(key)
        params = ModelParams(delta=cfg.delta_min, w=w, q=q, n=n)
        gu = max_uncorrelated_yield(params)
        gc, _ = max_correlated_yield(params)
        return [n, cfg.delta_min, q, w, gu, gc, relative_advantage(gc, gu)]
    d = float(key)
    if mode == "uncorrelated":
        return [d, q, w, cfg.n, max_uncorrelated_yield(ModelParams(d, w, q, cfg.n))]
    if mode == "single":
        return [d, q, w, max_uncorrelated_yield(ModelParams(d, w, q, 1))]
    if mode == "td":
        return [d, q, w, gamma_td(d, q, w)]
    if mode == "asymptotic":
        return [d, q, w, cfg.n, greedy_asymptotic_yield(ModelParams(d, w, q, cfg.n))]
    if mode == "correlated":
        gamma, p = max_correlated_yield(ModelParams(d, w, q, cfg.n))
        return [d, q, w, cfg.n, gamma] + list(p)
    if mode == "mutualinfo":
        gamma, p = max_correlated_yield(ModelParams(d, w, q, 2))
        p1, p2 = p[0], p[1]
        p0 = max(1.0 - 2 * p1 - p2, 0.0)
        return [d, gamma, p0, p1, p2, mutual_information_two_mol(p0, p1, p2)]
    if mode == "coherence":
        gc = max_yield_coherent(q, w, d, cfg.alpha, allow_final_correlations=True)
        gu = max_yield_coherent(q, w, d, cfg.alpha, allow_final_correlations=False)
        return [d, q, w, cfg.alpha, gc, gu]
    if mode == "fivelevel":
        params = FiveLevelParams(delta=d, w=w, omega0=cfg.omega0,
                                 omega_delta=cfg.omega_delta, beta0=cfg.beta0, q=q)
        return [d, q, w, cfg.omega0, cfg.omega_delta, cfg.beta0, cfg.n,
                five_level_yield(params, n=cfg.n)]
    raise ConfigError(f"unhandled mode {mode}")


def run_sweep(cfg: SweepConfig, stream) -> None:
    keys = cfg.n_grid() if cfg.mode == "advantage" else cfg.delta_grid()
    cols = _columns(cfg)
    if cfg.threads == 1:
        rows = [_point(cfg, k) for k in keys]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(lambda k: _point(cfg, k), keys))
    if cfg.fmt == "csv":
        stream.write(",".join(cols) + "\n")
        for row in rows:
            stream.write(",".join(fmt(v) if isinstance(v, float) else str(v)
                                  for v in row) + "\n")
    else:
        payload = [dict(zip(cols, row)) for row in rows]
        stream.write(json.dumps(payload, indent=None, separators=(",", ":")))
        stream.write("\n")


def dump_curve(args, stream) -> None:
    params = ModelParams(delta=args.delta, w=args.w, q=args.q, n=args.n)
    if args.state == "initial":
        state = tensor_power_grouped(params)
    elif args.pops is not None:
        pops = [float(t) for t in args.pops.split(",")]
        if len(pops) != params.n + 1:
            raise ConfigError(f"need {params.n + 1} populations, got {len(pops)}")
        state = symmetric_final_state(params, pops)
    elif args.gamma is not None:
        state = uncorrelated_final_state(params, args.gamma)
    else:
        raise ConfigError("final state needs --gamma or --pops")
    curve = build_curve(state)
    stream.write("x,y,log_x\n")
    stream.write(f"{fmt(0.0)},{fmt(0.0)},-inf\n")
    for x, y in curve.elbows:
        stream.write(f"{fmt(x.to_linear())},{fmt(y.to_linear())},{fmt(x.log)}\n")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="switchyield",
        description="Photoisomerization yield bounds for molecular-switch ensembles")
    sub = p.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="write one row per grid point")
    sw.add_argument("--mode", required=False)
    sw.add_argument("--delta-min", type=float, dest="delta_min")
    sw.add_argument("--delta-max", type=float, dest="delta_max")
    sw.add_argument("--delta-step", type=float, dest="delta_step")
    sw.add_argument("--q", type=float)
    sw.add_argument("--w", type=float)
    sw.add_argument("--n", type=int)
    sw.add_argument("--n-min", type=int, dest="n_min")
    sw.add_argument("--n-max", type=int, dest="n_max")
    sw.add_argument("--alpha", type=float)
    sw.add_argument("--omega0", type=float)
    sw.add_argument("--omega-delta", type=float, dest="omega_delta")
    sw.add_argument("--beta0", type=float)
    sw.add_argument("--out", type=str)
    sw.add_argument("--format", type=str, dest="fmt", choices=["csv", "json"])
    sw.add_argument("--threads", type=int)
    sw.add_argument("--config", type=str, help="key=value file; flags override")

    cv = sub.add_parser("curve", help="dump thermomajorization-curve elbows")
    cv.add_argument("--state", choices=["initial", "final"], required=True)
    cv.add_argument("--delta", type=float, required=True)
    cv.add_argument("--q", type=float, default=0.5)
    cv.add_argument("--w", type=float, default=30.0)
    cv.add_argument("--n", type=int, default=2)
    cv.add_argument("--gamma", type=float, default=None)
    cv.add_argument("--pops", type=str, default=None,
                    help="comma-separated per-level populations, switched count 0..n")
    cv.add_argument("--out", type=str, default="-")
    return p


_CONFIG_KEYS = {f.name for f in SweepConfig.__dataclass_fields__.values()} | {"format"}


def _load_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{lineno}: expected key=value")
                key, _, value = line.partition("=")
                key = key.strip().replace("-", "_")
                if key == "format":
                    key = "fmt"
                if key not in _CONFIG_KEYS and key != "fmt":
                    raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
                values[key] = value.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return values


def _build_sweep_config(args: argparse.Namespace) -> SweepConfig:
    values: dict = {}
    if args.config:
        raw = _load_config_file(args.config)
        for key, text in raw.items():
            f = SweepConfig.__dataclass_fields__[key if key != "format" else "fmt"]
            if f.type in ("int",):
                values[f.name] = int(text)
            elif f.type in ("float",):
                values[f.name] = float(text)
            else:
                values[f.name] = text
    for f in SweepConfig.__dataclass_fields__.values():
        flag = getattr(args, f.name, None)
        if flag is not None:
            values[f.name] = flag
    if "mode" not in values:
        raise ConfigError("--mode is required (flag or config file)")
    try:
        return SweepConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "sweep":
            cfg = _build_sweep_config(args)
            out_path = cfg.out
            writer = run_sweep
            payload = cfg
        else:
            out_path = args.out
            writer = dump_curve
            payload = args
        if out_path in ("-", ""):
            writer(payload, sys.stdout)
        else:
            with open(out_path, "w", encoding="utf-8", newline="") as fh:
                writer(payload, fh)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
