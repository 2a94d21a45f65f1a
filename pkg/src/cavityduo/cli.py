"""Command-line front end.

Subcommands: `spectrum` (eigenvalues/eigenvectors of one sector block),
`evolve` (time series of amplitudes, purity and concurrence), `cpplane`
(CP trajectory plus reference curves), `sweep` (Cartesian product of
parameter lists, one evolve file per point plus an index), and `validate`
(the oracle-equivalence suite).  Output is CSV or JSON with a versioned
header, 17 significant digits, LF line endings; identical configuration and
seed produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .dynamics import InitialState, evolve_series, reduced_density_series
from .entanglement import concurrence_x_batch, purity_batch
from .model import ModelParams, build_block
from .spectrum import spectral_decompose
from .symmetric import SymmetricParams, cp_curves, werner_line
from .validation import run_all

__all__ = ["RunConfig", "main", "entry"]

VERSION_LINE = "# cavity-duo v1"

_MODEL_KEYS = ("delta1", "delta2", "g1", "g2", "kappa", "ising")
_ALL_KEYS = _MODEL_KEYS + ("n", "alpha", "init_amps", "tmax", "dt", "out", "format", "seed", "workers")


class CliError(Exception):
    pass


def parse_angle(text: str) -> float:
    """Radians, with 'pi' literals: 'pi/4' -> pi/4, '-pi/20', 'pi', or a float."""
    s = text.strip().replace(" ", "")
    sign = 1.0
    if s[:1] in ("+", "-"):
        sign = -1.0 if s[0] == "-" else 1.0
        s = s[1:]
    try:
        if s == "pi":
            return sign * math.pi
        if s.startswith("pi/"):
            return sign * math.pi / float(s[3:])
        return sign * float(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse angle {text!r}: expected radians or 'pi/<number>'") from exc


def _parse_float(text: str, key: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise CliError(f"flag --{key}: expected a number, got {text!r}") from exc


def _parse_float_list(text: str, key: str) -> list[float]:
    return [_parse_float(part, key) for part in text.split(",") if part.strip() != ""]


def _parse_angle_list(text: str) -> list[float]:
    return [parse_angle(part) for part in text.split(",") if part.strip() != ""]


def _parse_amps(text: str) -> np.ndarray:
    parts = [p for p in text.split(",") if p.strip() != ""]
    if len(parts) != 8:
        raise CliError("--init-amps expects 8 comma-separated numbers (re,im for B1..B4)")
    vals = [_parse_float(p, "init-amps") for p in parts]
    return np.array(vals[0::2]) + 1j * np.array(vals[1::2])


@dataclass
class RunConfig:
    """Validated inputs for one CLI invocation."""

    command: str
    n: int = 0
    alpha: float | None = None
    init_amps: np.ndarray | None = None
    delta1: float = 0.0
    delta2: float = 0.0
    g1: float = 1.0
    g2: float = 1.0
    kappa: float = 0.0
    ising: float = 0.0
    tmax: float = 20.0
    dt: float = 0.01
    out: str | None = None
    format: str = "csv"
    seed: int = 0
    workers: int = 4
    sweep_lists: dict = field(default_factory=dict)

    def model_params(self) -> ModelParams:
        try:
            return ModelParams(self.delta1, self.delta2, self.g1, self.g2, self.kappa, self.ising)
        except ValueError as exc:
            raise CliError(str(exc)) from exc

    def initial_state(self) -> InitialState:
        if (self.alpha is None) == (self.init_amps is None):
            raise CliError("specify exactly one initial state: --alpha or --init-amps")
        try:
            if self.alpha is not None:
                return InitialState.alpha_family(self.n, self.alpha)
            return InitialState(self.n, self.init_amps)
        except ValueError as exc:
            raise CliError(str(exc)) from exc

    def time_grid(self) -> np.ndarray:
        steps = int(math.floor(self.tmax / self.dt + 1e-9))
        return self.dt * np.arange(steps + 1)


def read_config_file(path: str) -> dict:
    """Flat key-value file mirroring the flag names; '#' starts a comment."""
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise CliError(f"{path}:{lineno}: expected 'key = value'")
                key, val = line.split("=", 1)
                key = key.strip().replace("-", "_")
                if key not in _ALL_KEYS:
                    raise CliError(f"{path}:{lineno}: unknown key {key!r}")
                values[key] = val.strip()
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc}") from exc
    return values


def _build_config(command: str, args: argparse.Namespace) -> RunConfig:
    file_values = read_config_file(args.config) if getattr(args, "config", None) else {}

    def pick(key: str):
        flag = getattr(args, key, None)
        if flag is not None:
            return flag
        return file_values.get(key)

    cfg = RunConfig(command)
    listy = command == "sweep"
    for key in _MODEL_KEYS:
        raw = pick(key)
        if raw is None:
            continue
        if listy:
            cfg.sweep_lists[key] = _parse_float_list(str(raw), key)
        else:
            setattr(cfg, key, _parse_float(str(raw), key))
    raw = pick("alpha")
    if raw is not None:
        if listy:
            cfg.sweep_lists["alpha"] = _parse_angle_list(str(raw))
        else:
            cfg.alpha = parse_angle(str(raw))
    raw = pick("init_amps")
    if raw is not None:
        cfg.init_amps = _parse_amps(str(raw))
    raw = pick("n")
    if raw is not None:
        try:
            cfg.n = int(str(raw))
        except ValueError as exc:
            raise CliError(f"flag --n: expected an integer, got {raw!r}") from exc
    for key in ("tmax", "dt"):
        raw = pick(key)
        if raw is not None:
            setattr(cfg, key, _parse_float(str(raw), key))
    for key in ("seed", "workers"):
        raw = pick(key)
        if raw is not None:
            try:
                setattr(cfg, key, int(str(raw)))
            except ValueError as exc:
                raise CliError(f"flag --{key}: expected an integer, got {raw!r}") from exc
    raw = pick("out")
    if raw is not None:
        cfg.out = str(raw)
    raw = pick("format")
    if raw is not None:
        if raw not in ("csv", "json"):
            raise CliError(f"flag --format: expected 'csv' or 'json', got {raw!r}")
        cfg.format = str(raw)
    if cfg.dt <= 0.0:
        raise CliError(f"dt must be positive, got {cfg.dt}")
    if cfg.tmax < 0.0:
        raise CliError(f"tmax must be nonnegative, got {cfg.tmax}")
    if cfg.n < -1:
        raise CliError(f"sector index must be >= -1, got {cfg.n}")
    return cfg


# ---------------------------------------------------------------------------
# Serialization

def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    v = float(value)
    if not math.isfinite(v):
        raise CliError("refusing to write a non-finite value")
    return "%.17g" % v


def render_csv(columns: list[tuple[str, list]]) -> str:
    rows = len(columns[0][1])
    lines = [VERSION_LINE, ",".join(name for name, _ in columns)]
    for i in range(rows):
        lines.append(",".join(_fmt(col[i]) for _, col in columns))
    return "\n".join(lines) + "\n"


def render_json(columns: list[tuple[str, list]]) -> str:
    parts = []
    for name, col in columns:
        cells = [json.dumps(v) if isinstance(v, str) else _fmt(v) for v in col]
        parts.append(f'  "{name}": [' + ", ".join(cells) + "]")
    return '{\n  "version": "cavity-duo v1",\n' + ",\n".join(parts) + "\n}\n"


def write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}") from exc


def _emit(columns: list[tuple[str, list]], cfg: RunConfig, out: str | None) -> None:
    text = render_csv(columns) if cfg.format == "csv" else render_json(columns)
    write_output(text, out)


# ---------------------------------------------------------------------------
# Commands

def _cmd_spectrum(cfg: RunConfig) -> int:
    params = cfg.model_params()
    dec = spectral_decompose(params, cfg.n)
    h = build_block(params, cfg.n).matrix
    d = dec.energies.shape[0]
    residuals = np.max(np.abs(h @ dec.vectors - dec.vectors * dec.energies), axis=0)
    columns: list[tuple[str, list]] = [("index", list(range(1, d + 1))), ("energy", list(dec.energies))]
    for comp in range(d):
        columns.append((f"v_{comp + 1}", list(dec.vectors[comp, :])))
    columns.append(("residual", list(residuals)))
    columns.append(("method", [dec.method] * d))
    _emit(columns, cfg, cfg.out)
    return 0


def _evolve_columns(cfg: RunConfig) -> list[tuple[str, list]]:
    params = cfg.model_params()
    init = cfg.initial_state()
    ts = cfg.time_grid()
    amps = evolve_series(params, init, ts)
    rhos = reduced_density_series(amps)
    pur = purity_batch(rhos)
    conc = concurrence_x_batch(rhos)
    columns: list[tuple[str, list]] = [("t", list(ts))]
    for k in range(4):
        columns.append((f"re_b{k + 1}", list(amps[:, k].real)))
        columns.append((f"im_b{k + 1}", list(amps[:, k].imag)))
    columns.append(("purity", list(pur)))
    columns.append(("concurrence", list(conc)))
    return columns


def _cmd_evolve(cfg: RunConfig) -> int:
    _emit(_evolve_columns(cfg), cfg, cfg.out)
    return 0


def _cmd_cpplane(cfg: RunConfig) -> int:
    if cfg.alpha is None:
        raise CliError("cpplane needs --alpha (the reference curves depend on it)")
    if cfg.n < 0:
        raise CliError("cpplane needs a sector with atoms to entangle (n >= 0)")
    params = cfg.model_params()
    init = cfg.initial_state()
    ts = cfg.time_grid()
    amps = evolve_series(params, init, ts)
    rhos = reduced_density_series(amps)
    pur = purity_batch(rhos)
    conc = concurrence_x_batch(rhos)

    curve: list[str] = ["trajectory"] * len(ts)
    param: list[float] = list(ts)
    purity_col: list[float] = list(pur)
    conc_col: list[float] = list(conc)

    def add_curve(label: str, p_arr, c_arr, par=None):
        curve.extend([label] * len(p_arr))
        param.extend(list(par if par is not None else p_arr))
        purity_col.extend(list(p_arr))
        conc_col.extend(list(c_arr))

    refs = cp_curves(SymmetricParams(cfg.n, cfg.alpha), samples=1001)
    add_curve("c_minus_alpha", refs.c_minus.p, refs.c_minus.c)
    if refs.c_plus is not None:
        add_curve("c_plus_alpha", refs.c_plus.p, refs.c_plus.c)
    bell = cp_curves(SymmetricParams(cfg.n, math.pi / 4.0), samples=1001)
    add_curve("c_minus_bell", bell.c_minus.p, bell.c_minus.c)
    if bell.c_plus is not None:
        add_curve("c_plus_bell", bell.c_plus.p, bell.c_plus.c)
    add_curve("mems", refs.mems.p, refs.mems.c)
    xi = np.linspace(0.0, 1.0, 1001)
    wp, wc = werner_line(xi)
    add_curve("werner", wp, wc, par=xi)
    add_curve("limit", refs.limit.p, refs.limit.c)

    columns = [("curve", curve), ("param", param), ("purity", purity_col), ("concurrence", conc_col)]
    _emit(columns, cfg, cfg.out)
    return 0


def _cmd_sweep(cfg: RunConfig) -> int:
    if cfg.out is None:
        raise CliError("sweep needs --out <directory>")
    if cfg.init_amps is not None:
        raise CliError("sweep varies the alpha family; --init-amps is not supported here")
    lists = dict(cfg.sweep_lists)
    if "alpha" not in lists:
        raise CliError("sweep needs --alpha (one value or a comma list)")
    for key in _MODEL_KEYS:
        lists.setdefault(key, [getattr(RunConfig("x"), key)])
    keys = ["alpha"] + list(_MODEL_KEYS)
    grids = [lists[k] for k in keys]
    points = [()]
    for axis in grids:
        points = [p + (v,) for p in points for v in axis]
    os.makedirs(cfg.out, exist_ok=True)
    width = max(3, len(str(len(points) - 1)))
    ext = "csv" if cfg.format == "csv" else "json"

    def run_point(item):
        index, values = item
        point_cfg = replace(cfg, command="evolve", sweep_lists={}, out=None)
        for key, val in zip(keys, values):
            setattr(point_cfg, key, val)
        name = f"point_{index:0{width}d}.{ext}"
        columns = _evolve_columns(point_cfg)
        text = render_csv(columns) if cfg.format == "csv" else render_json(columns)
        write_output(text, os.path.join(cfg.out, name))
        return name

    with ThreadPoolExecutor(max_workers=max(1, cfg.workers)) as pool:
        names = list(pool.map(run_point, enumerate(points)))

    index_cols: list[tuple[str, list]] = [
        ("point", list(range(len(points)))),
        ("file", names),
        ("n", [cfg.n] * len(points)),
    ]
    for pos, key in enumerate(keys):
        index_cols.append((key, [pt[pos] for pt in points]))
    text = render_csv(index_cols) if cfg.format == "csv" else render_json(index_cols)
    write_output(text, os.path.join(cfg.out, f"index.{ext}"))
    return 0


def _cmd_validate(cfg: RunConfig) -> int:
    results, ok = run_all(cfg.seed)
    for result in results:
        print(result.line())
    print("all checks passed" if ok else "VALIDATION FAILED")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# Argument wiring

def _add_flags(sub: argparse.ArgumentParser, *, model=False, sector=False, initial=False, grid=False, output=False, seed=False, workers=False) -> None:
    sub.add_argument("--config", help="flat key=value file; flags override it")
    if model:
        for key in _MODEL_KEYS:
            sub.add_argument(f"--{key}")
    if sector:
        sub.add_argument("--n")
    if initial:
        sub.add_argument("--alpha")
        sub.add_argument("--init-amps", dest="init_amps")
    if grid:
        sub.add_argument("--tmax")
        sub.add_argument("--dt")
    if output:
        sub.add_argument("--out")
        sub.add_argument("--format", choices=("csv", "json"))
    if seed:
        sub.add_argument("--seed")
    if workers:
        sub.add_argument("--workers")


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavityduo",
        description="Exact two-atom cavity model: spectra, dynamics, CP-plane data.",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    sp = subs.add_parser("spectrum", help="diagonalize one excitation-sector block")
    _add_flags(sp, model=True, sector=True, output=True)
    ev = subs.add_parser("evolve", help="time series of amplitudes, purity, concurrence")
    _add_flags(ev, model=True, sector=True, initial=True, grid=True, output=True)
    cp = subs.add_parser("cpplane", help="CP trajectory plus reference curves")
    _add_flags(cp, model=True, sector=True, initial=True, grid=True, output=True)
    sw = subs.add_parser("sweep", help="evolve over a Cartesian product of parameter lists")
    _add_flags(sw, model=True, sector=True, initial=True, grid=True, output=True, workers=True)
    va = subs.add_parser("validate", help="run the oracle-equivalence suite")
    _add_flags(va, seed=True)
    return parser


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "evolve": _cmd_evolve,
    "cpplane": _cmd_cpplane,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _build_config(args.command, args)
        return _COMMANDS[args.command](cfg)
    except CliError as exc:
        print(f"cavityduo: error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())
