"""Command-line front end: ``hylab <subcommand> ...``.

Exit codes: 0 ok, 1 suite failure, 2 usage or precondition error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .errors import HylabError, InputError, NumericalError

EXIT_OK, EXIT_SUITE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# argument helpers

def _floats(text: str):
    try:
        return [float(eval_number(t)) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _ints(text: str):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def eval_number(text: str) -> float:
    """Numbers, optionally written with ``pi`` (``pi/4``, ``0.45*pi``)."""
    t = text.strip().replace(" ", "")
    if "pi" not in t:
        return float(t)
    allowed = set("0123456789.+-*/()epi")
    if not set(t) <= allowed:
        raise ValueError(t)
    try:
        return float(eval(t, {"__builtins__": {}}, {"pi": math.pi}))  # noqa: S307 - restricted alphabet
    except (NameError, SyntaxError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(t) from exc


def _number(text: str) -> float:
    try:
        return eval_number(text)
    except (ValueError, SyntaxError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _read_json_arg(value: str, what: str) -> str:
    """Inline JSON, ``@path``, or a path to an existing file."""
    if value.startswith("@"):
        path = value[1:]
    elif not value.lstrip().startswith(("{", "[")) and os.path.exists(value):
        path = value
    else:
        return value
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{what}: cannot read {path!r}: {exc}") from exc


def _emit(text: str, dest):
    if dest in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _quad(name):
    from .quadrature import QuadratureScheme

    return QuadratureScheme(rule=name)


# ---------------------------------------------------------------------------
# subcommands

def cmd_eval(args) -> int:
    from .curves import CompoundCurve
    from .funcspace import function_from_json
    from .laplace_core import laplace_curve, laplace_ray, laplace_values
    from .report import write_csv

    f = function_from_json(_read_json_arg(args.func, "--func"))
    quad = _quad(args.quad)
    targets = sum(x is not None for x in (args.theta, args.z, args.curve))
    if targets != 1:
        raise InputError("give exactly one target: --theta/--rho, --z or --curve")
    if args.theta is not None:
        rho = args.rho if args.rho is not None else [1.0]
        _emit(laplace_ray(f, args.theta, rho, quad).to_csv(), args.output)
    elif args.z is not None:
        pts = []
        for tok in args.z.split(";"):
            parts = tok.split(",")
            if len(parts) != 2:
                raise InputError(f"--z expects 'x,y;x,y;...', got {tok!r}")
            pts.append(complex(float(parts[0]), float(parts[1])))
        import numpy as np

        if quad.rule == "closed-form":
            vals = laplace_values(f, np.array(pts))
        else:
            from .laplace_core import laplace_quadrature

            vals = [laplace_quadrature(f, z, quad).value for z in pts]
        rows = [(z.real, z.imag, v.real, v.imag, abs(v)) for z, v in zip(pts, vals)]
        _emit(write_csv(None, ["x", "y", "re", "im", "abs"], rows), args.output)
    else:
        curve = CompoundCurve.from_json(_read_json_arg(args.curve, "--curve"))
        tr = laplace_curve(f, curve, quad=quad)
        rows = [(int(k), s, z.real, z.imag, v.real, v.imag, abs(v), w)
                for k, s, z, v, w in zip(tr.nodes.piece, tr.nodes.s, tr.nodes.z, tr.values, tr.nodes.weights)]
        _emit(write_csv(None, ["piece", "s", "x", "y", "re", "im", "abs", "weight"], rows), args.output)
    return EXIT_OK


def cmd_spectrum(args) -> int:
    from . import spectral_ray as sr
    from .report import write_csv

    if args.maximizer:
        rows = []
        for th in args.theta:
            rep = sr.lambda_maximizer(th)
            rows.append((th, rep.tau_star, rep.lambda_max, rep.k1_squared, sr.k1_norm(th)))
        _emit(write_csv(None, ["theta", "tau_star", "lambda_max", "k1_squared", "k1"], rows), args.output)
    else:
        _emit(sr.spectrum_csv(args.theta, args.tau), args.output)
    return EXIT_OK


def cmd_opnorm(args) -> int:
    from . import spectral_ray as sr

    ests = sr.opnorm_sweep(args.theta, args.n, x_range=(args.x_min, args.x_max))
    _emit(sr.opnorm_csv(ests), args.output)
    if args.plot:
        from .plotting import plot_opnorm

        plot_opnorm(ests, args.plot)
    return EXIT_OK


def _class_params(args) -> dict:
    out = {}
    for key in ("phi", "nu", "c", "alpha", "lam", "axis", "orientation", "which"):
        v = getattr(args, key, None)
        if v is not None:
            out["lambda" if key == "lam" else key] = v
    return out


def cmd_certify(args) -> int:
    from . import wp_measures as wp
    from .curves import CompoundCurve, CurveClass
    from .report import json_text

    if args.fold:
        _emit(json_text(wp.fold_curve_measure(window=args.window, seed=args.seed).to_dict()), args.output)
        return EXIT_OK
    if args.cantor is not None:
        mu = wp.CantorSquare(args.cantor)
        cert = wp.empirical_certificate(mu, args.alpha if args.alpha is not None else math.pi / 4,
                                        budget=args.budget, seed=args.seed)
        _emit(json_text(cert.to_dict()), args.output)
        return EXIT_OK
    if args.curve is None:
        raise InputError("certify needs --curve, --cantor or --fold")
    curve = CompoundCurve.from_json(_read_json_arg(args.curve, "--curve"))
    if args.empirical:
        alpha = args.alpha if args.alpha is not None else 0.0
        cert = wp.empirical_certificate(wp.Arclength(curve), alpha, budget=args.budget, seed=args.seed)
    else:
        cc = curve.curve_class
        if args.cls is not None:
            params = dict(cc.params) if cc is not None and cc.name == args.cls else {}
            params.update(_class_params(args))
            cc = CurveClass(args.cls, params)
        elif cc is not None and _class_params(args):
            cc = CurveClass(cc.name, {**cc.params, **_class_params(args)})
        cert = wp.class_certificate(curve, cc, strict=not args.lenient)
    _emit(json_text(cert.to_dict()), args.output)
    return EXIT_OK


def cmd_counterexample(args) -> int:
    from . import inequality_lab as lab
    from . import wp_measures as wp
    from .report import json_text, write_csv

    kind = args.kind
    if kind == "p-gt-2":
        rep = lab.p_gt_2_counterexample(args.p if args.p is not None else 4.0)
        text = rep.to_csv()
        if args.plot:
            from .plotting import plot_counterexample

            plot_counterexample(rep, args.plot)
        _emit(text + f"# slope,{rep.slope!r},expected,{rep.expected!r}\n" if args.verbose else text, args.output)
    elif kind == "comb-tightness":
        p = args.p if args.p is not None else 2.0
        rep = lab.comb_tightness(args.alpha if args.alpha is not None else 2.0,
                                 args.beta if args.beta is not None else 0.5, p)
        rows = [(k, i, n) for k, i, n in zip(rep.ks, rep.integrals, rep.norms)]
        text = write_csv(None, ["k", "weighted_integral", "f_norm"], rows)
        _emit(text + f"# delta,{rep.delta!r},growth,{rep.growth!r}\n" if args.verbose else text, args.output)
    elif kind == "bloom":
        from .funcspace import function_from_json

        if args.weight is None:
            raise InputError("bloom needs --weight (FunctionSpec JSON)")
        rep = lab.bloom_condition_check(function_from_json(_read_json_arg(args.weight, "--weight")))
        _emit(json_text({"admissible": rep.admissible, "sup": rep.sup, "argsup": rep.argsup,
                         "threshold": rep.threshold}), args.output)
    elif kind == "comb-eta":
        curve, A = wp.comb_eta_counterexample()
        cert = wp.class_certificate(curve, strict=False)
        res = wp.wp_check(wp.Arclength(curve), A, cert)
        _emit(json_text({"certificate": cert.to_dict(), "ratio": res.ratio, "holds": res.holds,
                         "mass": res.mass, "a_xi": res.a_xi, "a_eta": res.a_eta}), args.output)
    else:  # pragma: no cover - argparse restricts choices
        raise InputError(f"unknown counterexample {kind!r}")
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import suite

    if args.suite != "all" and args.suite not in suite.SUITES:
        raise InputError(f"unknown suite {args.suite!r}; expected 'all' or one of {sorted(suite.SUITES)}")
    rows = suite.run_suite(args.suite, args.seed)
    _emit(suite.suite_csv(rows), args.output)
    bad = suite.failing_ids(rows)
    if bad:
        sys.stderr.write("suite failure: " + ", ".join(bad) + "\n")
        return EXIT_SUITE
    return EXIT_OK


def cmd_plot(args) -> int:
    from . import plotting

    if args.kind == "k1":
        plotting.plot_k1(args.out)
    elif args.kind == "opnorm":
        from . import spectral_ray as sr

        plotting.plot_opnorm(sr.opnorm_sweep(args.theta, args.n), args.out)
    else:
        from . import inequality_lab as lab

        plotting.plot_counterexample(lab.p_gt_2_counterexample(args.p), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hylab", description="Laplace transforms along rays and curves: evaluation, "
                                 "spectral constants, projection certificates and inequality checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate L f on a ray, at points or along a curve",
                       description="Evaluate the Laplace transform L f(z) = int_0^inf f(t) e^{-zt} dt on a ray "
                                   "rho e^{i theta}, at given points, or along a compound curve (per-piece CSV).")
    p.add_argument("--func", required=True, help="FunctionSpec JSON (inline, @path or a file path)")
    p.add_argument("--theta", type=_number, help="ray angle in [-pi/2, pi/2]")
    p.add_argument("--rho", type=_floats, help="comma-separated ray parameters (default 1)")
    p.add_argument("--z", help="points as 'x,y;x,y;...'")
    p.add_argument("--curve", help="CompoundCurve JSON (inline, @path or a file path)")
    p.add_argument("--quad", default="closed-form", choices=["closed-form", "adaptive", "gauss-laguerre"])
    p.add_argument("-o", "--output")
    p.set_defaults(func_cmd=cmd_eval)

    p = sub.add_parser("spectrum", help="eigenvalues of the ray operator and the L2 norm K1(theta)",
                       description="Exercises the closed-form eigenvalue lambda_tau(theta) = pi e^{2 theta tau} / "
                                   "cosh(pi tau) of L_theta* L_theta on Mellin modes against direct integration, or "
                                   "(with --maximizer) its maximum K1(theta)^2.")
    p.add_argument("--theta", type=_floats, default=[0.0, math.pi / 4])
    p.add_argument("--tau", type=_floats, default=[-1.0, 0.0, 1.0])
    p.add_argument("--maximizer", action="store_true", help="report tau*, lambda_max and K1^2 per theta")
    p.add_argument("-o", "--output")
    p.set_defaults(func_cmd=cmd_spectrum)

    p = sub.add_parser("opnorm", help="discretized operator norm of L_theta* L_theta versus K1^2",
                       description="Exercises the L2 norm identity ||L_theta||^2 = K1(theta)^2 by power iteration on "
                                   "a log-grid discretization; emits the (theta, n, sigma_max, K1^2) trace.")
    p.add_argument("--theta", type=_number, default=0.0)
    p.add_argument("--n", type=_ints, default=[64, 128, 256, 512])
    p.add_argument("--x-min", type=float, default=1e-4)
    p.add_argument("--x-max", type=float, default=1e4)
    p.add_argument("--plot", help="also write an SVG convergence chart to this path")
    p.add_argument("-o", "--output")
    p.set_defaults(func_cmd=cmd_opnorm)

    p = sub.add_parser("certify", help="projection certificate for a curve or measure",
                       description="Exercises the well-projectedness estimates mu(A) <= k_xi |A_xi| + k_eta |A_eta|: "
                                   "closed-form class certificates (monotone, Lipschitz, convex, radial, comb, boxed), "
                                   "empirical certificates, the Cantor-square measure and the fold curve.")
    p.add_argument("--curve", help="CompoundCurve JSON (inline, @path or a file path)")
    p.add_argument("--class", dest="cls", help="override the curve class name")
    p.add_argument("--phi", type=_number)
    p.add_argument("--nu", type=int)
    p.add_argument("--c", type=_number)
    p.add_argument("--alpha", type=_number)
    p.add_argument("--lambda", dest="lam", type=_number)
    p.add_argument("--axis", choices=["x", "y"])
    p.add_argument("--orientation", choices=["horizontal", "vertical"])
    p.add_argument("--which", choices=["xi", "eta"])
    p.add_argument("--lenient", action="store_true",
                   help="return the formula certificate even when measured multiplicities exceed the class bound")
    p.add_argument("--empirical", action="store_true", help="search for the worst sub-arc union instead")
    p.add_argument("--cantor", type=int, metavar="LEVEL", help="empirical certificate for the Cantor-square measure")
    p.add_argument("--fold", action="store_true", help="fold-curve density and certificate report")
    p.add_argument("--window", type=float, default=20.0)
    p.add_argument("--budget", type=int, default=4000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func_cmd=cmd_certify)

    p = sub.add_parser("counterexample", help="counterexample families and tightness checks",
                       description="p-gt-2: the family t^{a-1} e^{-t} showing L is unbounded L^p -> L^p' for p > 2; "
                                   "comb-tightness: growth k^delta of the weighted integral for combs violating the "
                                   "aspect-ratio condition; bloom: Bloom's weight condition x L w(x) <= C; comb-eta: an "
                                   "explicit comb exceeding the closed-form eta-projection constant.")
    p.add_argument("--kind", required=True, choices=["p-gt-2", "comb-tightness", "bloom", "comb-eta"])
    p.add_argument("--p", type=_number)
    p.add_argument("--alpha", type=_number)
    p.add_argument("--beta", type=_number)
    p.add_argument("--weight", help="weight FunctionSpec JSON for --kind bloom")
    p.add_argument("--plot", help="SVG log-log chart (p-gt-2)")
    p.add_argument("--verbose", action="store_true", help="append a summary comment line")
    p.add_argument("-o", "--output")
    p.set_defaults(func_cmd=cmd_counterexample)

    p = sub.add_parser("verify", help="run the verification suites",
                       description="Runs the acceptance and property suites: eigenvalue formula, K1, discretized "
                                   "norms, Mellin-Plancherel, comparison ratios, the p > 2 counterexample, projection "
                                   "certificates, Poisson/Cauchy weak-type bounds, the constant ladder and the "
                                   "vertical-comb identity. Emits one CSV; exit 1 if any row fails.")
    p.add_argument("--suite", default="all")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("-o", "--output")
    p.set_defaults(func_cmd=cmd_verify)

    p = sub.add_parser("plot", help="static SVG charts",
                       description="k1: K1(theta) on [-pi/2, pi/2]; opnorm: sigma_max(n) against K1^2; "
                                   "counterexample: log-log norm ratio of the p > 2 family.")
    p.add_argument("--kind", required=True, choices=["k1", "opnorm", "counterexample"])
    p.add_argument("--out", required=True)
    p.add_argument("--theta", type=_number, default=math.pi / 4)
    p.add_argument("--n", type=_ints, default=[64, 128, 256, 512])
    p.add_argument("--p", type=_number, default=4.0)
    p.set_defaults(func_cmd=cmd_plot)
    return ap


def _apply_threads():
    raw = os.environ.get("HYLAB_THREADS")
    if raw is None:
        return
    try:
        n = int(raw)
        if n < 1:
            raise ValueError
    except ValueError as exc:
        raise InputError(f"HYLAB_THREADS must be a positive integer, got {raw!r}") from exc
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ[var] = str(n)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _apply_threads()
        return args.func_cmd(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except NumericalError as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC
    except HylabError as exc:  # pragma: no cover - every error is in one of the families
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
