"""Command-line front end.

Subcommands: forward, invert, roundtrip, kernel, oracles, selftest.
Option precedence is flags > --config JSON file > built-in defaults.
Exit codes: 0 ok, 1 failed acceptance/agreement checks, 2 invalid
configuration, 3 numerical failure.  FUETER_THREADS caps the worker pool
used for grid evaluation (default: min(4, cpu count)).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence

import numpy as np

from . import acceptance, jets
from .clifford import Multivector, Paravector
from .errors import NumericalError
from .forward import FueterConfig, fueter_fields, fueter_map
from .inverse import AxialFunction, OdeConfig, Rectangle, invert
from .oracles import axial_field
from .polynomials import builtin_pk
from .quadrature import QuadratureConfig
from .radial import radial_op
from .verify import GridSpec, cr_residual, kernel_check, polynomial_fit_residual, vekua_residual

DEFAULT_RECT = (0.0, 1.0, 0.5, 1.5)
DEFAULT_GRID = (20, 20)


# -- option plumbing -----------------------------------------------------------


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file with option defaults (flags win)")
    p.add_argument("--m", type=int, help="vector dimension (odd, >= 3)")
    p.add_argument("--k", type=int, help="spherical monogenic degree (default 0)")
    p.add_argument("--rect", help="rectangle a,b,c,d in the (x0, r) half plane")
    p.add_argument("--grid", help="evaluation grid nx0,nr")
    p.add_argument("--quad-tol", type=float, dest="quad_tol", help="quadrature abs tolerance")
    p.add_argument("--ode-steps", type=int, dest="ode_steps", help="RK4 step count")
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=("json", "csv"), help="output format (default json)")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"config file {path} must hold a JSON object")
    return data


class _Options:
    """Merged view of CLI flags, config file and defaults."""

    def __init__(self, args: argparse.Namespace):
        self._args = args
        self._file = _load_config(getattr(args, "config", None))

    def get(self, key: str, default=None):
        flag = getattr(self._args, key, None)
        if flag is not None:
            return flag
        if key in self._file:
            return self._file[key]
        return default

    def rect(self, default=DEFAULT_RECT) -> Rectangle:
        raw = self.get("rect", default)
        if isinstance(raw, str):
            raw = [float(t) for t in raw.split(",")]
        if len(raw) != 4:
            raise ValueError(f"--rect needs 4 numbers a,b,c,d, got {raw}")
        return Rectangle(*[float(t) for t in raw])

    def grid(self, default=DEFAULT_GRID) -> tuple[int, int]:
        raw = self.get("grid", default)
        if isinstance(raw, str):
            raw = [int(t) for t in raw.split(",")]
        if len(raw) != 2 or int(raw[0]) < 1 or int(raw[1]) < 1:
            raise ValueError(f"--grid needs two positive ints nx0,nr, got {raw}")
        return int(raw[0]), int(raw[1])

    def quad(self) -> QuadratureConfig:
        tol = self.get("quad_tol")
        return QuadratureConfig(abs_tol=float(tol)) if tol is not None else QuadratureConfig()

    def ode(self) -> OdeConfig:
        steps = self.get("ode_steps")
        return OdeConfig(steps=int(steps)) if steps is not None else OdeConfig()

    def mk(self, default_m=3, default_k=0) -> tuple[int, int]:
        return int(self.get("m", default_m)), int(self.get("k", default_k))

    def pk(self, m: int, k: int):
        raw = self.get("pk")
        if raw is None:
            return builtin_pk(m, k)
        parts = str(raw).split(",")
        if len(parts) != 3 or parts[2] not in ("+", "-"):
            raise ValueError(f"--pk needs i,j,+ or i,j,-, got {raw!r}")
        return builtin_pk(m, k, int(parts[0]), int(parts[1]), 1 if parts[2] == "+" else -1)

    def init(self, n2: int) -> list[float] | None:
        raw = self.get("init")
        if raw is None:
            return None
        if isinstance(raw, str):
            raw = [float(t) for t in raw.split(",")]
        vals = [float(t) for t in raw]
        if len(vals) != n2:
            raise ValueError(f"--init needs {n2} values, got {len(vals)}")
        return vals


def _pool_size() -> int:
    env = os.environ.get("FUETER_THREADS")
    if env:
        n = int(env)
        if n < 1:
            raise ValueError(f"FUETER_THREADS must be >= 1, got {env}")
        return n
    return min(4, os.cpu_count() or 1)


def _grid_eval(fn: Callable, items: Sequence) -> list:
    workers = _pool_size()
    if workers == 1 or len(items) < 4:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


def _full_grid(rect: Rectangle, nx0: int, nr: int) -> list[tuple[float, float]]:
    xs = np.linspace(rect.a, rect.b, nx0)
    rs = np.linspace(rect.c, rect.d, nr)
    return [(float(x0), float(r)) for x0 in xs for r in rs]


def _emit(opts: _Options, payload: dict, csv_rows: tuple[list[str], list[list]] | None) -> None:
    fmt = opts.get("format", "json")
    if fmt == "csv":
        if csv_rows is None:
            raise ValueError("csv output is not available for this subcommand")
        header, rows = csv_rows
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    out = opts.get("out")
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _blade_labels(m: int) -> list[str]:
    out = []
    for idx in range(1 << m):
        out.append("".join(str(j + 1) for j in range(m) if idx >> j & 1))
    return out


# -- subcommands ---------------------------------------------------------------


def _cmd_forward(args) -> int:
    opts = _Options(args)
    m, k = opts.mk()
    h_name = opts.get("h")
    if not h_name:
        raise ValueError("forward needs --h <function name>")
    h = jets.by_name(str(h_name))
    cfg = FueterConfig(m, k)
    P = opts.pk(m, k)
    rect = opts.rect()
    nx0, nr = opts.grid()
    profiles = bool(opts.get("profiles", False))
    direction = np.zeros(m)
    direction[0] = 1.0
    A, B = fueter_fields(h, cfg)

    def at_point(pt):
        x0, r = pt
        if profiles:
            value = [float(A(x0, np.float64(r))), float(B(x0, np.float64(r)))]
        else:
            value = fueter_map(h, P, cfg, Paravector(x0, r * direction)).to_pairs()
        return {"x0": x0, "r": r, "value": value}

    points = _grid_eval(at_point, _full_grid(rect, nx0, nr))
    payload = {
        "meta": {
            "command": "forward",
            "m": m,
            "k": k,
            "h": h.name,
            "profiles": profiles,
            "rect": list(rect.as_tuple()),
            "nx0": nx0,
            "nr": nr,
        },
        "points": points,
    }
    if profiles:
        header = ["x0", "r", "A", "B"]
        rows = [[p["x0"], p["r"], p["value"][0], p["value"][1]] for p in points]
    else:
        header = ["x0", "r"] + ["c" + lab for lab in _blade_labels(m)]
        rows = []
        for pt in points:
            mv = Multivector.from_pairs(m, pt["value"])
            rows.append([pt["x0"], pt["r"]] + mv.coeffs.tolist())
    _emit(opts, payload, (header, rows))
    return 0


def _resolve_field(opts: _Options, rect: Rectangle | None) -> AxialFunction:
    grid_path = opts.get("field_json")
    if grid_path:
        with open(grid_path, "r", encoding="utf-8") as fh:
            return AxialFunction.from_grid(json.load(fh))
    name = opts.get("field")
    if not name:
        raise ValueError("need --field <name> or --field-json <path>")
    m = opts.get("m")
    return axial_field(str(name), rect, m=int(m) if m is not None else None)


def _cmd_invert(args) -> int:
    opts = _Options(args)
    rect = opts.rect(default=None) if opts.get("rect") is not None else None
    H = _resolve_field(opts, rect)
    m_flag, k_flag = opts.get("m"), opts.get("k")
    if m_flag is not None and int(m_flag) != H.m:
        raise ValueError(f"--m {m_flag} conflicts with field {H.name!r} (m={H.m})")
    if k_flag is not None and int(k_flag) != H.k:
        raise ValueError(f"--k {k_flag} conflicts with field {H.name!r} (k={H.k})")
    init = opts.init(2 * H.N)
    prim = invert(H, init=init, quad=opts.quad(), ode=opts.ode())
    nx0, nr = opts.grid()

    def at_point(pt):
        u, v = prim.eval(*pt)
        return {"x0": pt[0], "r": pt[1], "value": [u, v]}

    points = _grid_eval(at_point, _full_grid(H.rect, nx0, nr))
    payload = {
        "meta": {
            "command": "invert",
            "field": H.name,
            "m": H.m,
            "k": H.k,
            "rect": list(H.rect.as_tuple()),
            "nx0": nx0,
            "nr": nr,
        },
        "trajectories": prim.to_json(),
        "points": points,
    }
    header = ["x0", "r", "u", "v"]
    rows = [[p["x0"], p["r"], p["value"][0], p["value"][1]] for p in points]
    _emit(opts, payload, (header, rows))
    return 0


def _fd_forward_profiles(prim, gamma: float, N: int, x0: float, r: float, step: float):
    """(A, B) of the primitive's forward image via local polynomial FD in r."""
    offsets = np.arange(-N, N + 1)
    rs = r + offsets * step
    uv = [prim.eval(x0, float(t)) for t in rs]
    us = np.array([p[0] for p in uv])
    vs = np.array([p[1] for p in uv])
    # fit in the scaled variable (r - r0)/step to keep the Vandermonde tame
    s = offsets.astype(np.float64)
    cu = np.polyfit(s, us, 2 * N)
    cv = np.polyfit(s, vs, 2 * N)
    du = np.array([math.factorial(j) * cu[2 * N - j] / step**j for j in range(N + 1)])
    dv = np.array([math.factorial(j) * cv[2 * N - j] / step**j for j in range(N + 1)])
    a = gamma * radial_op(du, r, N, "minus")
    b = gamma * radial_op(dv, r, N, "plus")
    return a, b


def _cmd_roundtrip(args) -> int:
    opts = _Options(args)
    m, k = opts.mk()
    h_name = opts.get("h")
    if not h_name:
        raise ValueError("roundtrip needs --h <function name>")
    h = jets.by_name(str(h_name))
    cfg = FueterConfig(m, k)
    rect = opts.rect(default=(0.2, 1.0, 0.5, 1.5))
    nx0, nr = opts.grid(default=(8, 8))
    A, B = fueter_fields(h, cfg)
    H = AxialFunction(A, B, m, k, rect, name=f"forward:{h.name}")
    prim = invert(H, quad=opts.quad(), ode=opts.ode())

    samples = []
    for x0, r in _full_grid(rect, nx0, nr):
        z = complex(x0, r)
        samples.append((z, prim(z) - h(z)))
    fit = polynomial_fit_residual(samples, cfg.kernel_degree)

    # field-space residual: forward the computed primitive (FD in r) and
    # compare with the field that was inverted
    N = cfg.N
    step = min(1e-3, (rect.d - rect.c) / (8 * N))
    margin = 1.01 * N * step
    worst = 0.0
    for x0 in np.linspace(rect.a, rect.b, 4):
        for r in np.linspace(rect.c + margin, rect.d - margin, 4):
            a_fd, b_fd = _fd_forward_profiles(prim, cfg.leading_constant, N, float(x0), float(r), step)
            worst = max(worst, abs(a_fd - float(A(x0, np.float64(r)))), abs(b_fd - float(B(x0, np.float64(r)))))

    grid = GridSpec(rect, min(nx0, 8), min(nr, 8))
    cr = cr_residual(lambda x0, r: prim.eval(x0, r)[0], lambda x0, r: prim.eval(x0, r)[1], grid)
    vk = vekua_residual(A, B, k, m, grid)
    payload = {
        "meta": {"command": "roundtrip", "m": m, "k": k, "h": h.name,
                 "rect": list(rect.as_tuple()), "kernel_degree": cfg.kernel_degree},
        "gauge_fit_residual": fit,
        "field_residual": worst,
        "cr_residual": cr.to_json(),
        "vekua_residual": vk.to_json(),
    }
    _emit(opts, payload, None)
    return 0


def _cmd_kernel(args) -> int:
    opts = _Options(args)
    m, k = opts.mk()
    cfg = FueterConfig(m, k)
    nmax = opts.get("nmax")
    nmax = int(nmax) if nmax is not None else cfg.kernel_degree + 1
    rect = opts.rect(default=(0.3, 1.3, 0.4, 1.4))
    nx0, nr = opts.grid(default=(5, 5))
    grid = GridSpec(rect, nx0, nr)
    P = opts.pk(m, k)
    direction = np.zeros(m)
    direction[0] = 1.0
    results = []
    for n in range(nmax + 1):
        max_norm, expected_zero = kernel_check(n, k, m, grid, P=P)
        ref = fueter_map(jets.power(n), P, cfg, Paravector(1.0, direction))
        results.append(
            {
                "n": n,
                "max_norm": max_norm,
                "expected_zero": expected_zero,
                "value_at_ref": ref.to_pairs(),
            }
        )
    payload = {
        "meta": {"command": "kernel", "m": m, "k": k,
                 "kernel_degree": cfg.kernel_degree, "rect": list(rect.as_tuple())},
        "results": results,
    }
    header = ["n", "max_norm", "expected_zero"]
    rows = [[r["n"], r["max_norm"], r["expected_zero"]] for r in results]
    _emit(opts, payload, (header, rows))
    return 0


def _cmd_oracles(args) -> int:
    del args
    failures = 0
    for fn in (acceptance.criterion_2, acceptance.criterion_3, acceptance.criterion_7):
        res = fn()
        print(acceptance.format_result(res))
        failures += 0 if res.passed else 1
    return 1 if failures else 0


def _cmd_selftest(args) -> int:
    del args
    results = acceptance.run_all()
    for res in results:
        print(acceptance.format_result(res))
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} acceptance criteria passed")
    return 1 if failed else 0


# -- entry points ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fueter",
        description="Axial monogenic transforms: forward evaluation, inversion, verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", help="evaluate the forward transform of h on a grid")
    _add_common(p)
    p.add_argument("--h", help="holomorphic function (recip, arctan, z^n, z*arctan, poly:...)")
    p.add_argument("--pk", help="degree-1 polynomial variant i,j,+ or i,j,-")
    p.add_argument(
        "--profiles",
        action="store_true",
        default=None,
        help="emit scalar profiles [A, B] instead of full multivectors (feeds invert --field-json)",
    )
    p.set_defaults(fn=_cmd_forward)

    p = sub.add_parser("invert", help="construct a holomorphic primitive of an axial field")
    _add_common(p)
    p.add_argument("--field", help="built-in field name (example1, example2-nplus, ...)")
    p.add_argument("--field-json", dest="field_json", help="tabulated field grid JSON")
    p.add_argument("--init", help="2N initial constants a0,..,b0,..")
    p.set_defaults(fn=_cmd_invert)

    p = sub.add_parser("roundtrip", help="forward-map h, invert the image, report residuals")
    _add_common(p)
    p.add_argument("--h", help="holomorphic function to round-trip")
    p.set_defaults(fn=_cmd_roundtrip)

    p = sub.add_parser("kernel", help="scan |Ft[z^n]| against the predicted kernel")
    _add_common(p)
    p.add_argument("--nmax", type=int, help="largest power to scan (default kernel degree + 1)")
    p.add_argument("--pk", help="degree-1 polynomial variant i,j,+ or i,j,-")
    p.set_defaults(fn=_cmd_kernel)

    p = sub.add_parser("oracles", help="run the worked-example and sphere-integral agreement suites")
    p.set_defaults(fn=_cmd_oracles)

    p = sub.add_parser("selftest", help="run the full acceptance suite")
    p.set_defaults(fn=_cmd_selftest)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ValueError as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
