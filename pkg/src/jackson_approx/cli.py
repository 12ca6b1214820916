"""Command-line front end.

Subcommands write CSV tables, JSON summaries and two-column plot data into
``--out``.  Every file starts with a comment line carrying a digest of the
configuration so that tables can be matched to the run that produced them.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import checks, jackson, kernels, operators
from .errors import DomainError
from .spaces import Family, space_params

COMMANDS = ("moments", "multipliers", "kernel", "hoelder", "approx", "verify", "report")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

_DEFAULTS = {
    "family": "sphere", "m": 2, "beta": 0.5, "l": 2, "mu_min": 2, "mu_max": 64,
    "gamma": 1.0, "n_max": 30, "grid": "64x128", "out": "out", "seed": 0,
    "n_trunc": 400, "kernel": "example", "kernel_file": None,
}
# kernel-centred commands default to the S^3 example kernel
_COMMAND_DEFAULTS = {
    "kernel": {"m": 3},
    "hoelder": {"m": 3},
    "approx": {"m": 3, "n_max": 5000},
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: str
    m: int
    beta: float
    l: int
    mu_min: int
    mu_max: int
    gamma: float
    n_max: int
    grid: str
    out: str
    seed: int
    n_trunc: int
    kernel: str
    kernel_file: Optional[str]

    def digest(self) -> str:
        payload = {k: v for k, v in dataclasses.asdict(self).items() if k != "out"}
        return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:16]

    def grid_shape(self) -> tuple[int, int]:
        try:
            a, b = self.grid.lower().split("x")
            return int(a), int(b)
        except ValueError:
            raise DomainError(f"--grid must look like 64x128, got {self.grid!r}") from None

    @property
    def space(self):
        return space_params(self.family, self.m)


class UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    common.add_argument("--family", choices=[f.value for f in Family])
    common.add_argument("--m", type=int)
    common.add_argument("--beta", type=float)
    common.add_argument("--l", type=int)
    common.add_argument("--mu-min", type=int)
    common.add_argument("--mu-max", type=int)
    common.add_argument("--gamma", type=float)
    common.add_argument("--n-max", type=int)
    common.add_argument("--n-trunc", type=int)
    common.add_argument("--grid")
    common.add_argument("--out")
    common.add_argument("--seed", type=int)
    common.add_argument("--kernel", choices=["example", "constant"])
    common.add_argument("--kernel-file")
    parser = argparse.ArgumentParser(prog="jackson-approx", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "moments": "moment integrals of the Jackson kernel against the decay constant",
        "multipliers": "Fourier multipliers of the smoothing operator",
        "kernel": "serialize and tabulate a zonal kernel",
        "hoelder": "translation modulus and fitted Hoelder pair",
        "approx": "approximation numbers of sqrt K with a decay fit",
        "verify": "run the acceptance suite",
        "report": "run every table and the suite into one directory",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _read_config_file(path: str) -> dict:
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"malformed config line: {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def build_config(argv) -> RunConfig:
    args = _parser().parse_args(argv)
    values = dict(_DEFAULTS)
    values.update(_COMMAND_DEFAULTS.get(args.command, {}))
    if args.config:
        for key, value in _read_config_file(args.config).items():
            if key not in _DEFAULTS:
                raise UsageError(f"unknown config key {key!r}")
            values[key] = value
    for key in _DEFAULTS:
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = flag
    types = {"m": int, "l": int, "mu_min": int, "mu_max": int, "n_max": int, "seed": int,
             "n_trunc": int, "beta": float, "gamma": float}
    try:
        for key, cast in types.items():
            values[key] = cast(values[key])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad parameter value: {exc}") from None
    values["family"] = Family.parse(values["family"]).value
    config = RunConfig(command=args.command, **values)
    validate(config)
    return config


def validate(cfg: RunConfig) -> None:
    """Check module preconditions before any computation starts."""
    space = cfg.space
    if cfg.mu_min < 1 or cfg.mu_max < cfg.mu_min:
        raise UsageError("need 1 <= mu-min <= mu-max")
    if cfg.l < 1:
        raise UsageError("l must be a positive integer")
    if cfg.n_max < 1:
        raise UsageError("n-max must be positive")
    cfg.grid_shape()
    if cfg.command == "moments":
        if not cfg.gamma > 0:
            raise UsageError("gamma must be positive")
        if not 2 * cfg.l > cfg.gamma + space.m:
            raise UsageError(f"moment bound requires 2l > gamma + m (2l={2 * cfg.l}, gamma + m={cfg.gamma + space.m})")
    if cfg.command in ("kernel", "hoelder", "approx") and cfg.kernel_file is None:
        if cfg.kernel == "example":
            if not space.is_sphere:
                raise UsageError("the example kernel is defined on spheres only")
            if not 0 < cfg.beta <= 1 or not space.m - cfg.beta > 2:
                raise UsageError("example kernel requires beta in (0, 1] and m - beta > 2")
        if cfg.n_trunc < 1:
            raise UsageError("n-trunc must be positive")
        if cfg.command in ("kernel", "hoelder") and not space.is_sphere:
            raise UsageError("pointwise kernel evaluation needs a sphere")


# -- output helpers ----------------------------------------------------------

class Outputs:
    def __init__(self, cfg: RunConfig):
        self.cfg = cfg
        self.dir = Path(cfg.out)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.written = []

    def _banner(self) -> str:
        return f"# config_digest={self.cfg.digest()} command={self.cfg.command}\n"

    def csv(self, name: str, header, rows) -> Path:
        buf = io.StringIO()
        buf.write(self._banner())
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
        return self._write(name, buf.getvalue())

    def plot(self, name: str, xlabel: str, ylabel: str, xs, ys) -> Path:
        lines = [self._banner().rstrip("\n"), f"# {xlabel} {ylabel}"]
        lines += [f"{_fmt(x)} {_fmt(y)}" for x, y in zip(xs, ys)]
        return self._write(name, "\n".join(lines) + "\n")

    def json(self, name: str, payload: dict) -> Path:
        body = {"config_digest": self.cfg.digest(), "config": dataclasses.asdict(self.cfg)}
        body["config"].pop("out")
        body.update(_jsonable(payload))
        return self._write(name, json.dumps(body, indent=2, sort_keys=True) + "\n")

    def text(self, name: str, text: str) -> Path:
        return self._write(name, self._banner() + text)

    def _write(self, name, text) -> Path:
        path = self.dir / name
        path.write_text(text)
        self.written.append(path)
        return path


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, (np.integer,)):
        return str(int(v))
    return v


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        f = float(obj)
        return f if math.isfinite(f) else str(f)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    return obj


def _load_kernel(cfg: RunConfig) -> kernels.ZonalKernelSpec:
    if cfg.kernel_file:
        try:
            return kernels.parse_spec(Path(cfg.kernel_file).read_text())
        except OSError as exc:
            raise UsageError(f"cannot read kernel file: {exc}") from None
    if cfg.kernel == "constant":
        return kernels.constant_kernel(cfg.space)
    return kernels.example_kernel(cfg.m, cfg.beta, cfg.n_trunc)


# -- commands ----------------------------------------------------------------

def cmd_moments(cfg: RunConfig, out: Outputs) -> int:
    space = cfg.space
    c = jackson.lemma51_constant(space.m, cfg.gamma, cfg.l)
    rows, ok = [], True
    for mu in range(cfg.mu_min, cfg.mu_max + 1):
        J = jackson.moment(jackson.make_jackson(space, cfg.l, mu), cfg.gamma)
        scaled = J * mu**cfg.gamma
        # the decay bound is stated for mu >= 2
        ok &= mu < 2 or scaled <= c
        rows.append((mu, J, scaled, c))
    out.csv("moments.csv", ["mu", "J", "J_mu_gamma", "c_constant"], rows)
    out.plot("moments.dat", "mu", "J", [r[0] for r in rows], [r[1] for r in rows])
    print(f"moments: max J*mu^gamma = {max(r[2] for r in rows):.6g} vs constant {c:.6g}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_multipliers(cfg: RunConfig, out: Outputs) -> int:
    space = cfg.space
    rows, ok = [], True
    for mu in range(cfg.mu_min, cfg.mu_max + 1):
        jp = jackson.make_jackson(space, cfg.l, mu)
        mv = jackson.multipliers(jp, cfg.n_max).values
        ok &= abs(mv[0] - 1) <= 1e-10 and bool(np.all(np.abs(mv) <= 1 + 1e-10))
        if jp.nu < cfg.n_max:
            ok &= bool(np.all(np.abs(mv[jp.nu + 1:]) <= 1e-8))
        rows.extend((mu, jp.nu, n, v) for n, v in enumerate(mv))
    out.csv("multipliers.csv", ["mu", "nu", "n", "m_nu"], rows)
    print(f"multipliers: {len(rows)} rows, invariants {'hold' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_kernel(cfg: RunConfig, out: Outputs) -> int:
    spec = _load_kernel(cfg)
    out.text("kernel.txt", kernels.dump_spec(spec))
    u = np.linspace(-1.0, 1.0, 201)
    values, tail = kernels.kernel_eval(spec, u)
    out.csv("kernel_values.csv", ["cos_theta", "K", "tail_bound"], [(a, b, tail) for a, b in zip(u, values)])
    print(f"kernel: n_trunc={spec.n_trunc}, diagonal value {values[-1]:.12g} (+ tail <= {tail:.3g})")
    return EXIT_OK


def cmd_hoelder(cfg: RunConfig, out: Outputs) -> int:
    spec = _load_kernel(cfg)
    t = 2.0 ** -np.arange(0, 11)
    est = kernels.estimate_holder(spec, t)
    ratio = est.omega / t**cfg.beta
    out.csv("hoelder.csv", ["t", "omega", "omega_over_t_beta"], zip(t, est.omega, ratio))
    out.plot("hoelder.dat", "t", "omega", t, est.omega)
    out.json("hoelder.json", {"beta_hat": est.beta_hat, "B_hat": est.B_hat, "slope": est.slope,
                              "beta": cfg.beta, "max_ratio": float(ratio.max()),
                              "truncation_error": est.truncation_error})
    print(f"hoelder: beta_hat={est.beta_hat:.4f} B_hat={est.B_hat:.4g} max omega/t^beta={ratio.max():.4g}")
    return EXIT_OK


def cmd_approx(cfg: RunConfig, out: Outputs) -> int:
    spec = _load_kernel(cfg)
    op = operators.operator_from_kernel(spec)
    root = operators.sqrt_op(op)
    m = spec.space.m
    j_max = cfg.n_max
    a = operators.approx_numbers(root, j_max)
    j = np.arange(1, j_max + 1)
    scaled = a * j ** (cfg.beta / (2 * m))
    out.csv("approx.csv", ["j", "a_j", "scaled"], zip(j, a, scaled))
    out.plot("approx.dat", "j", "a_j", j, a)
    lam = operators.approx_numbers(op, j_max)
    j_min = max(1, j_max // 100)
    summary = {"j_max": j_max, "sup_scaled": float(scaled.max()), "fit": None}
    if j_max >= 2 * j_min and np.all(lam[j_min - 1:] > 0):
        fit = operators.decay_fit(lam, j_min, j_max)
        summary["fit"] = dataclasses.asdict(fit)
    out.json("approx.json", summary)
    fit_txt = f"slope {summary['fit']['slope']:.4f}" if summary["fit"] else "no fit (spectrum vanishes)"
    print(f"approx: a_1={a[0]:.6g}, eigenvalue decay {fit_txt}")
    return EXIT_OK


def cmd_verify(cfg: RunConfig, out: Outputs) -> int:
    results = checks.run_all(seed=cfg.seed)
    for r in results:
        print(r.line())
    failed = [r.number for r in results if not r.passed]
    out.json("verify.json", {"passed": not failed, "failed": failed,
                             "criteria": [dataclasses.asdict(r) for r in results]})
    if failed:
        print(f"failed criteria: {', '.join(map(str, failed))}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_report(cfg: RunConfig, out: Outputs) -> int:
    codes, files = {}, []
    # tables are produced at their per-command default settings
    for name, fn in (("moments", cmd_moments), ("hoelder", cmd_hoelder), ("approx", cmd_approx)):
        sub = dataclasses.replace(cfg, command=name, **{**_DEFAULTS, **_COMMAND_DEFAULTS.get(name, {}),
                                                         "out": cfg.out, "seed": cfg.seed})
        validate(sub)
        sub_out = Outputs(sub)
        codes[name] = fn(sub, sub_out)
        files += sub_out.written
    codes["verify"] = cmd_verify(cfg, out)
    files += out.written
    out.json("report.json", {"exit_codes": codes, "files": sorted(p.name for p in files)})
    return EXIT_OK if all(c == EXIT_OK for c in codes.values()) else EXIT_FAIL


HANDLERS = {
    "moments": cmd_moments, "multipliers": cmd_multipliers, "kernel": cmd_kernel,
    "hoelder": cmd_hoelder, "approx": cmd_approx, "verify": cmd_verify, "report": cmd_report,
}


def main(argv=None) -> int:
    try:
        cfg = build_config(argv)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as exc:  # argparse
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return HANDLERS[cfg.command](cfg, Outputs(cfg))
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
