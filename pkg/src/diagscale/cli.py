"""Command-line front end.

Subcommands:
  solve        solve one scaling instance from a CSV matrix file
  predict      print the high-dimensional prediction for (omega, alpha)
  simulate     Monte Carlo grid over alpha, CSV (+ optional SVG) output
  wendel       exact / empirical solvability probabilities for n < p
  copositivity alias of wendel
  figures      regenerate the data for all six reference figures

Exit codes: 0 success, 1 I/O or validation error, 2 no scaling solution
exists (not strictly copositive), 3 numerical failure.  Data goes to
stdout (or --csv), diagnostics to stderr.
"""

import argparse
import json
import sys

import numpy as np

from . import covmodel, harness, replica, scaling, svgplot, wendel
from .exceptions import (DiagScaleError, DomainError, NotStrictlyCopositive,
                         NumericalFailure)

_MODELS = {
    "identity": covmodel.Kind.IDENTITY,
    "spike": covmodel.Kind.SPIKE,
    "powerlaw": covmodel.Kind.POWERLAW,
    "stepwise": covmodel.Kind.STEPWISE,
}
_NOISES = {"gaussian": covmodel.Noise.GAUSSIAN, "t3": covmodel.Noise.STUDENT_T3}
_STATS = {"cosine": harness.Statistic.COSINE,
          "Q": harness.Statistic.MACRO_Q,
          "m": harness.Statistic.MACRO_M}
_THEORIES = {"auto": harness.Theory.AUTO,
             "identity": harness.Theory.IDENTITY_CURVE,
             "spike": harness.Theory.SPIKE_CURVE,
             "none": harness.Theory.NONE}

SIMULATE_COLUMNS = ("model,omega,p,alpha,n,reps,n_success,n_unsolvable,"
                    "median,q05,q95,theory")
WENDEL_COLUMNS = "p,n,alpha,omega,exact,empirical,reps,failures"


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _parse_floats(text):
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _parse_ns(text):
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _read_matrix(path):
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if len(rows[-1]) != len(rows[0]):
                raise ValueError(
                    f"{path}:{lineno}: expected {len(rows[0])} values, "
                    f"got {len(rows[-1])}")
    if not rows:
        raise ValueError(f"{path}: empty matrix file")
    M = np.array(rows)
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"{path}: matrix is {M.shape[0]}x{M.shape[1]}, not square")
    return M


def _write_lines(lines, path):
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    try:
        S = _read_matrix(args.matrix)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    opts = scaling.SolverOptions(tol=args.tol)
    try:
        sol = scaling.solve_scaling(S, opts)
    except NotStrictlyCopositive as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return 2
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    print("w = " + " ".join(_fmt(v) for v in sol.w))
    print(f"residual = {_fmt(sol.residual)}")
    print(f"iterations = {sol.iterations}")
    return 0


def cmd_predict(args) -> int:
    try:
        pred = replica.replica_prediction(args.omega, args.alpha)
    except DomainError as exc:
        print(f"error: {exc} (no analytic curve for omega < 0 or alpha < 1)",
              file=sys.stderr)
        return 1
    res = replica.stationarity_residuals(pred)
    record = {
        "omega": pred.omega, "alpha": pred.alpha, "mu": pred.mu,
        "nu": pred.nu, "eta": pred.eta, "w2": pred.w2, "Q": pred.Q,
        "m": pred.m, "chi": pred.chi, "cosine": pred.cosine,
        "r_nu": res.r_nu, "r_mu": res.r_mu, "r_eta": res.r_eta,
        "r_w2": res.r_w2,
    }
    if args.format == "json":
        print(json.dumps(record))
    else:
        print(",".join(record))
        print(",".join(_fmt(v) for v in record.values()))
    return 0


def _load_config(path):
    values = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, val = line.split("=", 1)
            values[key.strip()] = val.strip()
    return values


def _simulate_rows(cfg, model_name):
    rows = harness.run_experiment(cfg)
    lines = []
    for row in rows:
        lines.append(",".join([
            model_name, _fmt(cfg.model.omega), str(cfg.p), _fmt(row.alpha),
            str(row.n), str(cfg.reps), str(row.n_success),
            str(row.n_unsolvable), _fmt(row.median), _fmt(row.q05),
            _fmt(row.q95), _fmt(row.theory)]))
    return rows, lines


def cmd_simulate(args) -> int:
    if args.config:
        try:
            conf = _load_config(args.config)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
        for key in ("model", "noise", "stat", "theory", "csv", "svg"):
            if key in conf:
                setattr(args, key, conf[key])
        for key in ("omega",):
            if key in conf:
                args.omega = float(conf[key])
        for key in ("p", "reps", "seed"):
            if key in conf:
                setattr(args, key, int(conf[key]))
        if "alphas" in conf:
            args.alphas = conf["alphas"]
    try:
        kind = _MODELS[args.model]
        spec = covmodel.CovarianceSpec(kind, args.omega, _NOISES[args.noise])
        cfg = harness.ExperimentConfig(
            model=spec, p=args.p, alphas=_parse_floats(args.alphas),
            reps=args.reps, seed=args.seed, statistic=_STATS[args.stat],
            theory=_THEORIES[args.theory])
        rows, lines = _simulate_rows(cfg, args.model)
    except (KeyError, ValueError, DiagScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _write_lines([SIMULATE_COLUMNS] + lines, args.csv)
    if args.svg:
        points = [(r.alpha, r.median, r.q05, r.q95) for r in rows]
        theory = _theory_curve(cfg)
        svgplot.write_svg(args.svg, points, theory,
                          title=f"{args.model} p={args.p} {args.stat}",
                          xlabel="alpha", ylabel=args.stat)
    return 0


def _theory_curve(cfg, samples=120):
    alphas = [a for a in cfg.alphas]
    lo, hi = min(alphas), max(alphas)
    if hi < 1.0:
        return None
    lo = max(lo, 1.0)
    grid = np.linspace(lo, hi, samples)
    curve = []
    for a in grid:
        t = harness._theory_value(cfg, float(a))
        if t is not None:
            curve.append((float(a), t))
    return curve or None


def cmd_wendel(args) -> int:
    if (args.ns is None) == (args.alphas is None):
        print("error: give exactly one of --ns or --alphas", file=sys.stderr)
        return 1
    try:
        if args.ns is not None:
            grid = [(n, n / args.p) for n in _parse_ns(args.ns)]
        else:
            grid = [(int(round(a * args.p)), a)
                    for a in _parse_floats(args.alphas)]
        if not grid or any(n < 1 for n, _ in grid):
            raise ValueError("grid must contain n >= 1")
        spec = covmodel.CovarianceSpec(covmodel.Kind.SPIKE, args.omega) \
            if args.omega else covmodel.CovarianceSpec(covmodel.Kind.IDENTITY)
    except (ValueError, DiagScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    lines = [WENDEL_COLUMNS]
    for n, alpha in grid:
        exact = wendel.wendel_probability(n, args.p) if not args.omega else None
        if args.reps:
            point = wendel.empirical_solvability(
                spec, n, args.p, args.reps, args.seed)
            empirical, reps, failures = point.empirical, point.reps, point.failures
        else:
            empirical, reps, failures = None, 0, 0
        lines.append(",".join([
            str(args.p), str(n), _fmt(alpha), _fmt(args.omega or 0.0),
            _fmt(exact), _fmt(empirical), str(reps), str(failures)]))
    _write_lines(lines, args.csv)
    return 0


def _figure_specs(reps):
    """(name, kwargs-for-simulate) pairs covering the six reference figures."""
    alphas = "1,1.5,2,3,4,6,8"
    specs = []
    for tag, omega in (("1a", 0.0), ("1b", 1.0), ("1c", 10.0), ("1d", 100.0)):
        model = "identity" if omega == 0 else "spike"
        specs.append((f"fig{tag}", dict(model=model, omega=omega, p=100,
                                        alphas=alphas, stat="cosine")))
    for stat in ("Q", "m"):
        specs.append((f"fig2{stat}", dict(model="spike", omega=1.0, p=100,
                                          alphas=alphas, stat=stat)))
    specs.append(("fig5a", dict(model="powerlaw", p=100, alphas=alphas,
                                stat="cosine")))
    specs.append(("fig5b", dict(model="stepwise", p=100, alphas=alphas,
                                stat="cosine")))
    specs.append(("fig6", dict(model="identity", noise="t3", p=100,
                               alphas=alphas, stat="cosine")))
    return specs


def cmd_figures(args) -> int:
    import os
    os.makedirs(args.outdir, exist_ok=True)

    def run_sim(name, model, p, alphas, stat="cosine", omega=0.0,
                noise="gaussian"):
        spec = covmodel.CovarianceSpec(_MODELS[model], omega, _NOISES[noise])
        cfg = harness.ExperimentConfig(
            model=spec, p=p, alphas=_parse_floats(alphas), reps=args.reps,
            seed=args.seed, statistic=_STATS[stat])
        rows, lines = _simulate_rows(cfg, model)
        _write_lines([SIMULATE_COLUMNS] + lines,
                     os.path.join(args.outdir, name + ".csv"))
        points = [(r.alpha, r.median, r.q05, r.q95) for r in rows]
        svgplot.write_svg(os.path.join(args.outdir, name + ".svg"),
                          points, _theory_curve(cfg),
                          title=f"{name}: {model} p={p} {stat}",
                          xlabel="alpha", ylabel=stat)
        print(f"wrote {name}", file=sys.stderr)

    for name, kw in _figure_specs(args.reps):
        run_sim(name, **kw)

    # figure 3: solvability frequency for n < p
    for tag, p in (("3a", 10), ("3b", 100)):
        lines = [WENDEL_COLUMNS]
        for omega in (-0.99, -0.9, 0.0, 10.0, 100.0):
            spec = (covmodel.CovarianceSpec(covmodel.Kind.IDENTITY)
                    if omega == 0 else
                    covmodel.CovarianceSpec(covmodel.Kind.SPIKE, omega))
            for alpha in np.arange(0.1, 1.01, 0.1):
                n = max(1, int(round(alpha * p)))
                point = wendel.empirical_solvability(
                    spec, n, p, args.reps, args.seed)
                lines.append(",".join([
                    str(p), str(n), _fmt(alpha), _fmt(omega),
                    _fmt(point.exact), _fmt(point.empirical),
                    str(point.reps), str(point.failures)]))
        _write_lines(lines, f"{args.outdir}/fig{tag}.csv")
        print(f"wrote fig{tag}", file=sys.stderr)

    # figure 4: cosine similarity against log10(1 + omega)
    for tag, alpha in (("4a", 1.0), ("4b", 0.7)):
        lines = [SIMULATE_COLUMNS]
        points = []
        theory = []
        for lg in np.arange(-2.0, 2.01, 0.25):
            omega = 10.0 ** lg - 1.0
            spec = covmodel.CovarianceSpec(covmodel.Kind.SPIKE, omega)
            cfg = harness.ExperimentConfig(
                model=spec, p=100, alphas=(alpha,), reps=args.reps,
                seed=args.seed)
            row = harness.run_experiment(cfg)[0]
            lines.append(",".join([
                "spike", _fmt(omega), "100", _fmt(alpha), str(row.n),
                str(args.reps), str(row.n_success), str(row.n_unsolvable),
                _fmt(row.median), _fmt(row.q05), _fmt(row.q95),
                _fmt(row.theory)]))
            points.append((float(lg), row.median, row.q05, row.q95))
            if row.theory is not None:
                theory.append((float(lg), row.theory))
        _write_lines(lines, f"{args.outdir}/fig{tag}.csv")
        svgplot.write_svg(f"{args.outdir}/fig{tag}.svg", points,
                          theory or None,
                          title=f"fig{tag}: spike sweep, alpha={alpha}",
                          xlabel="log10(1+omega)", ylabel="cosine")
        print(f"wrote fig{tag}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="diagscale", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one scaling instance")
    p.add_argument("matrix", help="CSV file, one matrix row per line")
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("predict", help="high-dimensional prediction")
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("simulate", help="Monte Carlo grid over alpha")
    p.add_argument("--model", choices=sorted(_MODELS), default="identity")
    p.add_argument("--omega", type=float, default=0.0)
    p.add_argument("--noise", choices=sorted(_NOISES), default="gaussian")
    p.add_argument("--p", type=int, default=100)
    p.add_argument("--alphas", default="1,2,4,8")
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stat", choices=sorted(_STATS), default="cosine")
    p.add_argument("--theory", choices=sorted(_THEORIES), default="auto")
    p.add_argument("--csv", default=None, help="output path (default stdout)")
    p.add_argument("--svg", default=None, help="optional SVG plot path")
    p.add_argument("--config", default=None, help="key=value config file")
    p.set_defaults(func=cmd_simulate)

    for name in ("wendel", "copositivity"):
        p = sub.add_parser(name, help="solvability probabilities for n < p")
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--ns", default=None, help="e.g. 1..10 or 3,5,7")
        p.add_argument("--alphas", default=None, help="e.g. 0.4,0.6")
        p.add_argument("--omega", type=float, default=0.0)
        p.add_argument("--reps", type=int, default=0,
                       help="empirical replications (0 = exact only)")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--csv", default=None)
        p.set_defaults(func=cmd_wendel)

    p = sub.add_parser("figures", help="regenerate all reference-figure data")
    p.add_argument("--outdir", default="figures")
    p.add_argument("--reps", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_figures)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
