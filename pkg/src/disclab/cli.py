"""Command-line front end for the disc laboratory.

Subcommands map one-to-one onto the library layers: `selftest` exercises
the spectral identities of the circle toolkit, `disc` tabulates the
squeezed-disc boundary and its concentration property, `flatness` prints
the vanishing-order ratio tables of the composed height profile,
`fa-scan` tabulates the dichotomy integral with verdicts, `attach` runs
a single Bishop solve and dumps the boundary trace, and `propagate` runs
the full deformation experiment.

Every subcommand resolves its parameters in three layers: built-in
defaults, then a JSON config file given with --config, then explicit
flags.  Data goes to --out (default standard output) as CSV or JSON;
progress and verdict messages go to standard error.  Outputs are
deterministic: the same resolved configuration produces byte-identical
bytes.

Exit codes: 0 success, 1 validation error (bad flag values, unresolvable
grids), 2 numerical failure (non-convergence), with the failure
serialized to the output target as a JSON error object.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import re
import sys

import numpy as np

from .asymptotics import dichotomy_scan
from .bishop import BishopProblem, attachment_residual, solve_bishop
from .circle import BoundaryFunction, CircleGrid, conjugate, hilbert_t1
from .disc_family import (
    DiscFamilyParams,
    concentration_bound_check,
    inv_abs_im_phi_logtheta,
    phi_boundary,
)
from .exceptions import DiscLabError
from .profiles import KIND_IM, BumpDeformation, FlatProfile
from .propagation import ExperimentConfig, alpha_search, run_experiment

__all__ = ["main", "dispatch"]

_LN10 = math.log(10.0)

# built-in parameter defaults, overridden by --config, then by flags
_DEFAULTS = {
    "selftest": {"n": 1024},
    "disc": {"alpha": 0.1, "eps_shift": 0.0, "delta": 0.2, "n": 4096},
    "flatness": {"s": 1.0, "alpha": 0.1},
    "fa-scan": {"s": (1.0,), "alphas": (0.2, 0.1, 0.05), "delta": 1.0},
    "attach": {
        "s": 1.0,
        "alpha": 0.1,
        "eps_shift": 0.0,
        "delta": None,
        "eps_window": None,
        "eta": None,
        "n": 1 << 14,
        "tol": 1e-12,
        "max_iter": 64,
    },
    "propagate": {
        "s": 1.0,
        "alpha": 0.1,
        "alphas": None,
        "delta": 0.2,
        "eps_window": None,
        "eps_shift": 0.0,
        "etas": None,
        "n": 1 << 14,
        "tol": 1e-12,
        "max_iter": 64,
        "seed": 0,
    },
}

# how config-file values coerce, per key; fa-scan reads s as a list
_KEY_KINDS = {
    "s": "float",
    "alpha": "float",
    "delta": "float",
    "eps_window": "float",
    "eps_shift": "float",
    "eta": "float",
    "tol": "float",
    "n": "int",
    "max_iter": "int",
    "seed": "int",
    "alphas": "floats",
    "etas": "floats",
}


class _UsageError(ValueError):
    """Raised for argparse-level problems so main can exit 1, not 2."""


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # widened so comma lists with a leading negative entry ("-1,-0.5,0")
        # parse as values rather than unknown options
        self._negative_number_matcher = re.compile(r"^-(\d|\.\d)")

    def error(self, message: str) -> None:  # argparse would exit(2)
        raise _UsageError(message)


def _float_list(text: str) -> tuple:
    toks = [tok for tok in text.split(",") if tok.strip()]
    if not toks:
        raise argparse.ArgumentTypeError("expected a comma-separated number list")
    return tuple(float(tok) for tok in toks)


def _coerce(key: str, val, list_keys: frozenset):
    kind = "floats" if key in list_keys else _KEY_KINDS.get(key, "str")
    if kind == "float":
        return float(val)
    if kind == "int":
        return int(val)
    if kind == "floats":
        if isinstance(val, str):
            return _float_list(val)
        return tuple(float(x) for x in val)
    return str(val)


def _resolve(sub: str, args: argparse.Namespace) -> dict:
    """defaults < --config JSON < explicit flags, with unknown keys rejected."""
    cfg = dict(_DEFAULTS[sub])
    list_keys = frozenset({"alphas", "etas"} | ({"s"} if sub == "fa-scan" else set()))
    path = getattr(args, "config", None)
    if path is not None:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValueError(f"cannot read config file {path}: {exc}") from exc
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
        for key, val in data.items():
            if key not in cfg:
                raise ValueError(f"unknown config key {key!r} for subcommand {sub!r}")
            cfg[key] = _coerce(key, val, list_keys)
    for key in cfg:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        xf = float(x)
        return xf if math.isfinite(xf) else None
    return x


def _emit_csv(header, rows) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def _write(out_path, text: str) -> None:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="") as fh:
            fh.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------- selftest


def _run_selftest(cfg, out_path, fmt) -> int:
    n = cfg["n"]
    grid = CircleGrid(n=n)
    th = grid.theta
    rng = np.random.default_rng(0)
    checks = []

    worst = 0.0
    for k in range(1, n // 4 + 1):
        got = conjugate(BoundaryFunction(grid, np.cos(k * th))).values
        worst = max(worst, float(np.max(np.abs(got - np.sin(k * th)))))
    checks.append(("conjugate maps cos(k t) to sin(k t), k <= n/4", worst))

    worst = 0.0
    for k in range(1, n // 4 + 1):
        got = conjugate(BoundaryFunction(grid, np.sin(k * th))).values
        worst = max(worst, float(np.max(np.abs(got + np.cos(k * th)))))
    checks.append(("conjugate maps sin(k t) to -cos(k t), k <= n/4", worst))

    zeros = conjugate(BoundaryFunction(grid, np.ones(n))).values
    checks.append(("conjugate annihilates constants", float(np.max(np.abs(zeros)))))

    # band-limit the random sample so the double-conjugate identity is
    # exact on the grid (the Nyquist mode is annihilated by design)
    spec = np.fft.rfft(rng.standard_normal(n))
    spec[n // 4 :] = 0.0
    f = BoundaryFunction(grid, np.fft.irfft(spec, n))
    twice = conjugate(conjugate(f)).values
    target = -f.values + float(np.mean(f.values))
    checks.append(("double conjugate is mean(f) - f", float(np.max(np.abs(twice - target)))))

    checks.append(
        ("normalized transform vanishes at tau = 1", abs(float(hilbert_t1(f).values[0])))
    )

    failures = 0
    for name, err in checks:
        good = err <= 1e-12
        failures += 0 if good else 1
        print(f"{'ok' if good else 'FAIL'} {name}: max err {err:.3e}")
    if failures:
        _note(f"selftest: {failures} of {len(checks)} identities failed")
        return 2
    return 0


# -------------------------------------------------------------------- disc


def _run_disc(cfg, out_path, fmt) -> int:
    params = DiscFamilyParams(alpha=cfg["alpha"], eps_shift=cfg["eps_shift"])
    grid = CircleGrid(n=cfg["n"])
    phi = phi_boundary(params, grid.theta)
    concentrated = None
    if cfg["eps_shift"] == 0.0:
        concentrated = concentration_bound_check(params, cfg["delta"])
    rows = [(float(t), float(p.real), float(p.imag)) for t, p in zip(grid.theta, phi)]
    header = ("theta", "re_phi", "im_phi")
    if fmt == "csv":
        _write(out_path, _emit_csv(header, rows))
        if concentrated is None:
            _note("concentration check skipped: needs eps_shift = 0")
        else:
            _note(
                f"boundary concentrates within delta={_fmt(cfg['delta'])} "
                f"of the squeeze limit: {_fmt(concentrated)}"
            )
    else:
        _write(
            out_path,
            _emit_json(
                {
                    "config": cfg,
                    "concentrated_within_delta": concentrated,
                    "columns": list(header),
                    "rows": rows,
                }
            ),
        )
    return 0


# ---------------------------------------------------------------- flatness


def _run_flatness(cfg, out_path, fmt) -> int:
    s = cfg["s"]
    alpha = cfg["alpha"]
    if not (s > 0.0):
        raise ValueError(f"s must be positive, got {s}")
    if not (0.0 < alpha <= 1.0):
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    decades = np.arange(1, 25)
    rows = []
    for k in range(1, 9):
        for j in decades:
            theta = 10.0 ** (-float(j))
            inv = float(inv_abs_im_phi_logtheta(alpha, float(j) * _LN10))
            log_g = -(inv**s)
            with np.errstate(over="ignore"):
                ratio = float(np.exp(log_g + k * float(j) * _LN10))
            rows.append((s, alpha, k, theta, ratio))
    header = ("s", "alpha", "k", "theta", "ratio")
    if fmt == "csv":
        _write(out_path, _emit_csv(header, rows))
    else:
        _write(
            out_path,
            _emit_json({"config": cfg, "columns": list(header), "rows": rows}),
        )
    return 0


# ----------------------------------------------------------------- fa-scan


def _run_fa_scan(cfg, out_path, fmt) -> int:
    result = dichotomy_scan(cfg["s"], cfg["alphas"], cfg["delta"])
    rows = []
    failures = 0
    for s, a, res in result.cells:
        if res is None:
            rows.append((s, a, math.nan, math.nan, False))
            failures += 1
        else:
            rows.append((s, a, res.value, res.abs_err, res.truncated))
    header = ("s", "alpha", "f_alpha", "abs_err", "truncated")
    verdicts = [{"s": s, "verdict": v} for s, v in result.verdicts]
    if fmt == "csv":
        _write(out_path, _emit_csv(header, rows))
    else:
        _write(
            out_path,
            _emit_json(
                {
                    "config": cfg,
                    "columns": list(header),
                    "rows": rows,
                    "verdicts": verdicts,
                }
            ),
        )
    for entry in verdicts:
        _note(f"verdict s={_fmt(entry['s'])}: {entry['verdict']}")
    if failures:
        _note(f"fa-scan: {failures} cell(s) failed numerically (nan rows)")
        return 2
    return 0


# ------------------------------------------------------------------ attach


def _run_attach(cfg, out_path, fmt) -> int:
    params = DiscFamilyParams(alpha=cfg["alpha"], eps_shift=cfg["eps_shift"])
    base = FlatProfile(kind=KIND_IM, s=cfg["s"])
    wants_bump = any(cfg[key] is not None for key in ("delta", "eps_window", "eta"))
    if wants_bump:
        surface = BumpDeformation(
            base=base,
            delta=0.2 if cfg["delta"] is None else cfg["delta"],
            alpha=cfg["alpha"],
            eps_window=cfg["eps_window"],
            eta=1.0 if cfg["eta"] is None else cfg["eta"],
        )
    else:
        surface = base
    grid = CircleGrid(n=cfg["n"])
    problem = BishopProblem(
        grid=grid,
        disc=params,
        surface=surface,
        tol=cfg["tol"],
        max_iter=cfg["max_iter"],
    )
    disc = solve_bishop(problem)
    residual = attachment_residual(disc, surface)
    rep = disc.report
    if fmt == "csv":
        rows = zip(
            grid.theta,
            disc.phi.values.real,
            disc.phi.values.imag,
            disc.u.values,
            disc.v.values,
        )
        _write(
            out_path,
            _emit_csv(
                ("theta", "re_phi", "im_phi", "u", "v"),
                ([float(x) for x in row] for row in rows),
            ),
        )
    else:
        _write(
            out_path,
            _emit_json(
                {
                    "config": cfg,
                    "deformed": wants_bump,
                    "iterations": rep.iterations,
                    "residual": rep.residual,
                    "contraction": rep.contraction,
                    "converged": rep.converged,
                    "holomorphy_defect": rep.holomorphy_defect,
                    "holder_seminorm": rep.holder_seminorm,
                    "attachment_residual": residual,
                    "sup_u": disc.u.sup_norm(),
                    "sup_v": disc.v.sup_norm(),
                }
            ),
        )
    _note(
        f"attached in {rep.iterations} iterations; residual {rep.residual:.3e}, "
        f"attachment {residual:.3e}, holomorphy defect {rep.holomorphy_defect:.3e}"
    )
    return 0


# --------------------------------------------------------------- propagate


def _run_propagate(cfg, out_path, fmt) -> int:
    kwargs = {
        "s": cfg["s"],
        "alpha": cfg["alpha"],
        "delta": cfg["delta"],
        "eps_window": cfg["eps_window"],
        "eps_shift": cfg["eps_shift"],
        "n": cfg["n"],
        "tol": cfg["tol"],
        "max_iter": cfg["max_iter"],
        "seed": cfg["seed"],
    }
    if cfg["etas"] is not None:
        kwargs["eta_grid"] = tuple(cfg["etas"])
    xcfg = ExperimentConfig(**kwargs)
    if cfg["alphas"] is not None:
        report = alpha_search(xcfg, cfg["alphas"])
    else:
        report = run_experiment(xcfg)
    if fmt == "csv":
        rows = [
            (c.eta, c.radial_derivative, c.min_x2, c.converged)
            for c in report.eta_classifications
        ]
        _write(
            out_path,
            _emit_csv(("eta", "radial_derivative", "min_x2", "converged"), rows),
        )
    else:
        _write(out_path, _emit_json(dataclasses.asdict(report)))
    _note(
        f"alpha={_fmt(report.alpha)}: radial derivative "
        f"{report.radial_derivative:.6e} (quadrature) vs "
        f"{report.radial_derivative_spectral:.6e} (spectral), points_down="
        f"{_fmt(report.points_down)}, coverage_min_x2={report.coverage_min_x2:.3e}"
    )
    return 0


# ----------------------------------------------------------------- parsing


def _add_common(p: _Parser) -> None:
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--format", default=None, choices=("csv", "json"))
    p.add_argument("--config", default=None, help="JSON file with parameter defaults")


def build_parser() -> _Parser:
    parser = _Parser(prog="disclab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    p = sub.add_parser("selftest", help="spectral identity suite")
    p.add_argument("--n", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("disc", help="squeezed-disc boundary table")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--eps-shift", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--n", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("flatness", help="vanishing-order ratio tables")
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("fa-scan", help="dichotomy integral scan")
    p.add_argument("--s", type=_float_list, default=None, help="comma-separated list")
    p.add_argument("--alphas", type=_float_list, default=None, help="strictly decreasing")
    p.add_argument("--delta", type=float, default=None)
    _add_common(p)

    p = sub.add_parser("attach", help="single Bishop solve, boundary trace")
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--eps-shift", type=float, default=None)
    p.add_argument("--delta", type=float, default=None, help="bump size; implies a deformed surface")
    p.add_argument("--eps-window", type=float, default=None, help="bump window exponent")
    p.add_argument("--eta", type=float, default=None, help="bump strength in [-1, 1]")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    _add_common(p)

    p = sub.add_parser("propagate", help="deformation experiment report")
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--alphas", type=_float_list, default=None, help="search grid, decreasing")
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--eps-window", type=float, default=None)
    p.add_argument("--eps-shift", type=float, default=None)
    p.add_argument("--etas", type=_float_list, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--max-iter", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    _add_common(p)

    return parser


_RUNNERS = {
    "selftest": _run_selftest,
    "disc": _run_disc,
    "flatness": _run_flatness,
    "fa-scan": _run_fa_scan,
    "attach": _run_attach,
    "propagate": _run_propagate,
}


def dispatch(argv=None) -> int:
    parser = build_parser()
    out_path = None
    try:
        args = parser.parse_args(argv)
        out_path = args.out
        cfg = _resolve(args.subcommand, args)
        fmt = args.format or "csv"
        return _RUNNERS[args.subcommand](cfg, out_path, fmt)
    except _UsageError as exc:
        _note(f"usage error: {exc}")
        return 1
    except ValueError as exc:
        _note(f"validation error: {exc}")
        return 1
    except DiscLabError as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        _write(out_path, _emit_json(payload))
        _note(f"numerical failure: {exc}")
        return 2


def main(argv=None) -> int:
    return dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
