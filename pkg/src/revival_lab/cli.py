"""``revival-lab`` command-line front end.

Exit codes: 0 ok, 1 verification failure, 2 truncation too small,
3 invalid parameters, 4 optimizer failure.
"""
from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from pathlib import Path

from revival_lab import moments, optimize, states, verify
from revival_lab.errors import OptimizerError, ParameterError, UnderTruncated
from revival_lab.fock import FockVector, StateParams, default_dim, dim_override, number_expectation_numeric
from revival_lab.jcm import JcmParams, revival_trace
from revival_lab.presets import PRESETS, get_preset

EXIT_OK, EXIT_VERIFY, EXIT_TRUNCATION, EXIT_VALIDATION, EXIT_OPTIMIZER = 0, 1, 2, 3, 4

FAMILY_ALIASES = {
    "coherent": "coherent",
    "ncoherent": "n_coherent",
    "n_coherent": "n_coherent",
    "squeezed": "squeezed",
    "nsqueezed": "n_squeezed",
    "n_squeezed": "n_squeezed",
    "fock": "fock",
}


def fmt(x: float) -> str:
    """Round-trip float text, independent of locale."""
    return format(float(x), ".17g")


def _family(name: str) -> str:
    try:
        return FAMILY_ALIASES[name.lower()]
    except KeyError:
        raise ParameterError(f"unknown family {name!r}; choose from {', '.join(sorted(FAMILY_ALIASES))}") from None


def _params(family: str, args) -> StateParams:
    n = args.n if args.n is not None else 0
    if family in ("coherent", "squeezed") and n != 0:
        raise ParameterError(f"family {family} takes no --n; use n_{family}")
    if family in ("coherent", "n_coherent") and args.r:
        raise ParameterError(f"family {family} is unsqueezed; --r must be 0")
    if family in ("squeezed", "n_squeezed") and not args.r:
        raise ParameterError(f"family {family} needs --r > 0")
    if family == "fock":
        return StateParams(n_extra=n)
    kw = dict(alpha_mod=args.alpha, theta=args.theta, r=args.r or 0.0, n_extra=n)
    if args.phi is not None:
        kw.update(phi=args.phi, lock_phi_to_2theta=False)
    return StateParams(**kw)


def _construct(family: str, p: StateParams, dim: int | None) -> FockVector:
    if family == "fock":
        d = dim if dim is not None else dim_override()
        d = d if d is not None else default_dim(p.n_extra)
        if d <= p.n_extra:
            raise UnderTruncated(f"dim {d} cannot hold |{p.n_extra}>")
        v = FockVector.basis(p.n_extra, d)
        if v.under_truncated:
            raise UnderTruncated(f"|{p.n_extra}> lies in the guard band of dim {d}")
        return v
    return states.build_state(p, dim)


def _closed_moments(family: str, p: StateParams) -> tuple[float, float]:
    if family == "fock":
        return float(p.n_extra), 0.0
    return moments.mean_photon_number(p), moments.photon_variance(p)


def _open_out(path: str | None):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


def _writer(fh):
    return csv.writer(fh, lineterminator="\n")


def cmd_state(args) -> int:
    family = _family(args.family)
    p = _params(family, args)
    v = _construct(family, p, args.dim)
    mean, var = _closed_moments(family, p)
    num = number_expectation_numeric(v)
    fh, close = _open_out(args.out)
    try:
        w = _writer(fh)
        w.writerow(["k", "re", "im", "prob"])
        for k, (c, pr) in enumerate(zip(v.coeffs, v.probabilities)):
            w.writerow([k, fmt(c.real), fmt(c.imag), fmt(pr)])
    finally:
        if close:
            fh.close()
    report = sys.stderr if args.out in (None, "-") else sys.stdout
    print(f"dim = {v.dim}", file=report)
    print(f"mean (closed form) = {fmt(mean)}", file=report)
    print(f"mean (numeric) = {fmt(num.mean)}", file=report)
    print(f"variance (closed form) = {fmt(var)}", file=report)
    print(f"variance (numeric) = {fmt(num.variance)}", file=report)
    return EXIT_OK


def _revival_source(args):
    if args.preset:
        if args.family:
            raise ParameterError("give either a preset or --family, not both")
        pre = get_preset(args.preset)
        t_max = args.tmax if args.tmax is not None else pre.t_max
        points = args.points if args.points is not None else pre.points
        lam = args.lam if args.lam is not None else pre.lambda_coupling
        delta = args.delta if args.delta is not None else pre.detuning
        return pre.state_family, pre.params, JcmParams.uniform(t_max, points, lam, delta), pre.name
    if not args.family:
        raise ParameterError(f"need a preset ({', '.join(PRESETS)}) or --family")
    family = _family(args.family)
    p = _params(family, args)
    jcm = JcmParams.uniform(args.tmax if args.tmax is not None else 60.0,
                            args.points if args.points is not None else 6000,
                            args.lam if args.lam is not None else 1.0,
                            args.delta if args.delta is not None else 0.0)
    return family, p, jcm, None


def _metadata(family, p, jcm, preset, trace) -> list[str]:
    t = jcm.t_grid
    lines = [
        f"preset={preset or 'none'}",
        f"family={family}",
        f"alpha_mod={fmt(p.alpha_mod)} theta={fmt(p.theta)} r={fmt(p.r)} phi={fmt(p.phi)} n={p.n_extra}",
        f"lambda={fmt(jcm.lambda_coupling)} delta={fmt(jcm.detuning)}",
        f"grid=uniform t0={fmt(t[0])} tmax={fmt(t[-1])} points={t.size}",
        f"dim={trace.weights.size} mean_photons={fmt(trace.mean_photons)}",
    ]
    return lines


def cmd_revival(args) -> int:
    family, p, jcm, preset = _revival_source(args)
    state = _construct(family, p, args.dim)
    trace = revival_trace(state, jcm)
    meta = _metadata(family, p, jcm, preset, trace)
    if args.no_comments and args.out in (None, "-"):
        raise ParameterError("--no-comments needs --out so the .meta file has a place to go")
    fh, close = _open_out(args.out)
    try:
        if not args.no_comments:
            for line in meta:
                fh.write(f"# {line}\n")
        w = _writer(fh)
        w.writerow(["t", "P"])
        for ti, pi in zip(trace.times, trace.p_ground):
            w.writerow([fmt(ti), fmt(pi)])
    finally:
        if close:
            fh.close()
    if args.no_comments:
        Path(str(args.out) + ".meta").write_text("".join(f"{line}\n" for line in meta), encoding="utf-8")
    return EXIT_OK


def cmd_optimize(args) -> int:
    n = args.n
    if (args.r is None) == (args.target_mean is None):
        raise ParameterError("give exactly one of --r and --target-mean")
    if args.target_mean is not None:
        r, alpha_mod = optimize.match_integer_mean(n, args.target_mean)
    else:
        if args.r < 0:
            raise ParameterError("--r must be >= 0")
        r = args.r
        alpha_mod = optimize.optimal_point(r, n).alpha_mod
    p = StateParams(alpha_mod=alpha_mod, r=r, n_extra=n)
    mean = moments.mean_photon_number(p)
    var = moments.photon_variance(p)
    quotient = var / mean if mean > 0 else math.nan
    print(f"n = {n}")
    print(f"r = {fmt(r)}")
    print(f"|alpha| = {fmt(alpha_mod)}")
    print(f"|alpha|^2 = {fmt(alpha_mod ** 2)}")
    print(f"mean = {fmt(mean)}")
    print(f"variance = {fmt(var)}")
    print(f"quotient = {fmt(quotient)}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run(args.suite)
    w = _writer(sys.stdout)
    w.writerow(["status", "suite", "check", "defect", "tol"])
    for res in results:
        w.writerow(["PASS" if res.passed else "FAIL", res.suite, res.name, fmt(res.defect), fmt(res.tol)])
    failed = sum(not r.passed for r in results)
    print(f"# {len(results) - failed}/{len(results)} checks passed", file=sys.stderr)
    return EXIT_VERIFY if failed else EXIT_OK


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which this tool reserves for truncation
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _add_state_args(ap: argparse.ArgumentParser):
    ap.add_argument("--alpha", type=float, default=0.0, help="|alpha|")
    ap.add_argument("--theta", type=float, default=0.0, help="phase of alpha (radians)")
    ap.add_argument("--r", type=float, default=None, help="squeeze magnitude")
    ap.add_argument("--phi", type=float, default=None, help="squeeze phase; default locks phi = 2 theta")
    ap.add_argument("--n", type=int, default=None, help="extra photons n")
    ap.add_argument("--dim", type=int, default=None, help="fixed Fock truncation (no auto-growth)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="revival-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    st = sub.add_parser("state", help="construct a state and write its coefficients as CSV")
    st.add_argument("family", help="coherent, ncoherent, squeezed, nsqueezed or fock")
    _add_state_args(st)
    st.add_argument("--out", default=None, help="CSV path (default: stdout)")
    st.set_defaults(func=cmd_state)

    rv = sub.add_parser("revival", help="ground-state probability trace as CSV")
    rv.add_argument("preset", nargs="?", default=None, help=f"one of {', '.join(PRESETS)}")
    rv.add_argument("--family", default=None, help="state family when no preset is given")
    _add_state_args(rv)
    rv.add_argument("--tmax", type=float, default=None, help="end of the time grid (units of 1/lambda)")
    rv.add_argument("--points", type=int, default=None, help="number of grid points, including t = 0")
    rv.add_argument("--lam", type=float, default=None, help="coupling lambda")
    rv.add_argument("--delta", type=float, default=None, help="detuning")
    rv.add_argument("--out", default=None, help="CSV path (default: stdout)")
    rv.add_argument("--no-comments", action="store_true", help="write metadata to OUT.meta instead of '#' lines")
    rv.set_defaults(func=cmd_revival)

    op = sub.add_parser("optimize", help="optimal squeezing for the n-photon state")
    op.add_argument("--n", type=int, default=2, help="extra photons n (default 2)")
    op.add_argument("--r", type=float, default=None, help="squeeze magnitude; report the optimal |alpha|")
    op.add_argument("--target-mean", type=float, default=None,
                    help="find r and |alpha| on the optimal curve with this mean photon number")
    op.set_defaults(func=cmd_optimize)

    vf = sub.add_parser("verify", help="run oracle cross-checks")
    vf.add_argument("--suite", choices=[*verify.SUITES, "all"], default="all", help="check suite to run")
    vf.set_defaults(func=cmd_verify)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except UnderTruncated as exc:
        print(f"error: truncation too small: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except OptimizerError as exc:
        print(f"error: optimizer: {exc}", file=sys.stderr)
        return EXIT_OPTIMIZER
    except (ParameterError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BrokenPipeError:
        # reader closed early (e.g. piped into head); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
