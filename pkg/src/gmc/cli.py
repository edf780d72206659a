"""Batch command-line front end.

Subcommands build vectors and test functions from spec strings, run the
computation, and emit CSV tables (17 significant digits, deterministic for a
fixed config and seed). Exit codes: 0 success, 1 property failure, 2
usage/parse/precondition error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence


from . import heisenberg as hb
from . import mollify as mo
from . import torus as tr
from .errors import GmcError, SpecParseError
from .specs import (
    RunConfig,
    get_model,
    parse_grid,
    parse_mollifier,
    parse_n_list,
    parse_test_function,
    parse_vector,
)
from .suites import run_suite
from .vectors import GrowthClass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _write_csv(path: str | None, header: Sequence[str], rows: Sequence[Sequence[float]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    text = "\n".join(lines) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _load_config(args) -> RunConfig:
    cfg = RunConfig.from_json(args.config) if args.config else RunConfig()
    if getattr(args, "seed", None) is not None:
        cfg.seed = args.seed
    if getattr(args, "output", None) is not None:
        cfg.output = args.output
    return cfg


def cmd_torus_series(args) -> int:
    cfg = _load_config(args)
    a = parse_vector("torus", args.coeffs)
    f = parse_test_function("torus", args.test_function)
    if args.m_max < 0:
        raise SpecParseError("--m-max must be nonnegative")
    limit = tr.gmc_eval(a, tr.comb(), f)
    rows = []
    for m in range(args.m_max + 1):
        s = tr.series_partial_sum(a, m, f)
        rows.append((m, s.real, s.imag, abs(s - limit)))
    _write_csv(cfg.output, ["m", "partial_sum_re", "partial_sum_im", "residual_vs_limit"], rows)
    return 0


def cmd_wigner(args) -> int:
    cfg = _load_config(args)
    quad = cfg.quadrature_spec()
    phi = parse_vector("heisenberg", args.phi)
    psi = parse_vector("heisenberg", args.psi)
    if args.mollify is not None:
        if args.mollify.startswith("mollifier:"):
            n, radius = parse_mollifier(args.mollify)
            profile = mo.BumpProfile.standard(radius)
        else:
            try:
                n = int(args.mollify)
            except ValueError:
                raise SpecParseError(
                    f"--mollify takes an integer or mollifier:n=..:radius=.., got {args.mollify!r}"
                ) from None
            profile = None
        if n < 1:
            raise SpecParseError("--mollify takes a positive index")
        if phi.growth is GrowthClass.POLYNOMIAL_GROWTH:
            phi = mo.mollify(
                phi, n, hb.HEISENBERG, profile=profile, N=quad.truncation, quad=quad
            )
        if psi.growth is GrowthClass.POLYNOMIAL_GROWTH:
            psi = mo.mollify(
                psi, n, hb.HEISENBERG, profile=profile, N=quad.truncation, quad=quad
            )
    elif psi.growth is GrowthClass.POLYNOMIAL_GROWTH:
        raise SpecParseError(
            "distribution second vector needs --mollify <n> to be evaluated pointwise"
        )
    ps, qs = parse_grid(args.grid)
    rows = []
    for p in ps:
        for q in qs:
            v = hb.fourier_wigner(phi, psi, float(p), float(q), x_nodes=quad.x_nodes)
            rows.append((p, q, v.real, v.imag, abs(v)))
    _write_csv(cfg.output, ["p", "q", "re", "im", "abs"], rows)
    return 0


def cmd_mollify(args) -> int:
    cfg = _load_config(args)
    model = get_model(args.group)
    eta = parse_vector(args.group, args.eta)
    zeta = parse_vector(args.group, args.zeta)
    f = parse_test_function(args.group, args.test_function)
    n_list = parse_n_list(args.n)
    profile = mo.BumpProfile.standard(args.radius)
    kwargs = {}
    if args.group == "heisenberg":
        kwargs = {"N": cfg.quadrature_spec().truncation, "quad": cfg.quadrature_spec()}
    rows_raw = mo.gmc_approx(eta, zeta, f, n_list, model, profile=profile, **kwargs)
    rows = [(n, v.real, v.imag, r) for (n, v, r) in rows_raw]
    _write_csv(cfg.output, ["n", "value_re", "value_im", "residual"], rows)
    return 0


def cmd_verify(args) -> int:
    cfg = _load_config(args)
    overrides = dict(cfg.tolerances)
    for item in args.tol or []:
        key, _, value = item.partition("=")
        if not value:
            raise SpecParseError(f"--tol takes KEY=VALUE, got {item!r}")
        try:
            overrides[key] = float(value)
        except ValueError:
            raise SpecParseError(f"bad tolerance value in {item!r}") from None
    try:
        tolerances = cfg.tolerance_table().override(**overrides)
    except KeyError as exc:
        raise SpecParseError(str(exc)) from None
    try:
        results = run_suite(args.suite, cfg.seed, tolerances, cfg.quadrature_spec())
    except KeyError as exc:
        raise SpecParseError(str(exc)) from None
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} properties passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmc",
        description="generalized matrix coefficients: series tables, "
        "pointwise coefficients, mollifier studies, property suites",
    )
    parser.add_argument("--config", help="JSON run configuration (flags override it)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("torus-series", help="partial Fourier sums against a test function")
    p.add_argument("coeffs", help="sequence spec, e.g. comb, unit:3, poly:2, geometric:0.5")
    p.add_argument("test_function", help="test function spec, e.g. band:8:fejer")
    p.add_argument("--m-max", type=int, required=True, help="largest partial-sum order")
    p.add_argument("--output", help="CSV path (stdout when omitted)")
    p.set_defaults(fn=cmd_torus_series)

    p = sub.add_parser("wigner", help="pointwise coefficient table on a (p, q) grid")
    p.add_argument("phi", help="vector spec, e.g. e:0, delta, gauss:0.8")
    p.add_argument("psi", help="vector spec for the pairing side")
    p.add_argument("--grid", required=True, help="grid spec p0:p1:np,q0:q1:nq")
    p.add_argument(
        "--mollify",
        help="smooth distribution inputs with J_n: an index or mollifier:n=<k>:radius=<rho>",
    )
    p.add_argument("--output", help="CSV path (stdout when omitted)")
    p.set_defaults(fn=cmd_wigner)

    p = sub.add_parser("mollify", help="smooth-approximation residual table")
    p.add_argument("--group", choices=("torus", "heisenberg"), required=True)
    p.add_argument("eta", help="vector being mollified")
    p.add_argument("zeta", help="pairing partner vector")
    p.add_argument("test_function", help="test function spec")
    p.add_argument("--n", required=True, help="comma-separated mollifier indices, e.g. 2,4,8")
    p.add_argument("--radius", type=float, default=0.25, help="bump profile radius")
    p.add_argument("--output", help="CSV path (stdout when omitted)")
    p.set_defaults(fn=cmd_mollify)

    p = sub.add_parser("verify", help="run a named property suite")
    p.add_argument(
        "suite",
        help="uea | torus-covariance | heisenberg-covariance | mollifier | smoothing | structure",
    )
    p.add_argument("--seed", type=int, help="seed for the randomized cases")
    p.add_argument("--tol", action="append", help="tolerance override KEY=VALUE (repeatable)")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SpecParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GmcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
