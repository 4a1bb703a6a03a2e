"""Command-line front end.

Every command prints either an aligned table (preceded by a ``# config:``
line) or JSON-lines records. Each record carries the resolved
configuration, seed included, so any number can be regenerated.
"""

import argparse
import sys

import numpy as np

from . import __version__
from .bench import BENCH_K, time_depths
from .calibration import run_calibration, covariance_determinants
from .depth import (DegenerateDispersionError, exact_tukey_depth_2d,
                    mahalanobis_depth, random_tukey_depth_all)
from .directions import sample_sphere
from .estimators import ConvergenceError, fit_elliptical
from .functional import ClassifierSpec, loocv_error
from .homogeneity import (ScaleScenario, center_sample, kruskal_wallis_scale_test,
                          run_scale_power_study, wilcoxon_scale_test)
from .io import (CSVFormatError, dumps_record, read_curve_csv, read_jsonl,
                 read_matrix_csv)
from .montecarlo import canonical_distribution
from .reports import format_table

# arguments that never change results and are left out of records
_NOT_CONFIG = {"func", "threads", "output", "out"}


def _config(args):
    cfg = {k: v for k, v in vars(args).items() if k not in _NOT_CONFIG}
    cfg["version"] = __version__
    return cfg


def _dist(name):
    try:
        return canonical_distribution(name)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _r_tuple(text):
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad scale factors {text!r}") from None
    if any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("scale factors must be positive")
    return vals


def cmd_depth(args):
    X = read_matrix_csv(args.input)
    points = read_matrix_csv(args.query) if args.query else None
    Q = X if points is None else points
    dirs = sample_sphere(X.shape[1], args.k, seed=args.seed)
    rt = random_tukey_depth_all(X, dirs, points=points)
    mh, mh_err = None, None
    if args.mahalanobis:
        try:
            fit = fit_elliptical(X, args.location, args.scatter)
            mh = np.atleast_1d(mahalanobis_depth(Q, fit))
        except (DegenerateDispersionError, ConvergenceError) as e:
            mh_err = str(e)
    if args.exact and X.shape[1] != 2:
        raise ValueError("--exact requires two-dimensional data")
    cfg = _config(args)
    records = []
    for i in range(Q.shape[0]):
        rec = {"kind": "depth", "row": i, "random_tukey": float(rt[i]), "config": cfg}
        if args.mahalanobis:
            rec["mahalanobis"] = None if mh is None else float(mh[i])
            if mh_err:
                rec["mahalanobis_error"] = mh_err
        if args.exact:
            rec["exact_tukey"] = exact_tukey_depth_2d(Q[i], X)
        records.append(rec)
    return records


def cmd_calibrate_k(args):
    cfg = _config(args)
    records = []
    for dist in args.dist:
        for p in args.p:
            for n in args.n:
                s = run_calibration(dist, p, n, args.reps, kmax=args.kmax,
                                    seed=args.seed, strict=not args.non_strict,
                                    threads=args.threads)
                records.append({"kind": "calibration", **s.record(), "config": cfg})
    return records


def cmd_cov_det(args):
    cfg = _config(args)
    records = []
    for p in args.p:
        for n in args.n:
            dets = covariance_determinants(p, n, args.reps, seed=args.seed)
            se = float(dets.std(ddof=1) / np.sqrt(dets.size)) if dets.size > 1 else 0.0
            records.append({"kind": "cov_det", "p": p, "n": n, "replications": args.reps,
                            "mean_det": float(dets.mean()), "std_error": se,
                            "seed": args.seed, "config": cfg})
    return records


def cmd_test_scale(args):
    samples = [read_matrix_csv(f) for f in args.inputs]
    if args.center != "none":
        samples = [center_sample(s, args.center) for s in samples]
    if len(samples) == 2:
        rep = wilcoxon_scale_test(samples[0], samples[1], args.k, args.alpha,
                                  seed=args.seed, tie_policy=args.ties)
    else:
        rep = kruskal_wallis_scale_test(samples, args.k, args.alpha,
                                        seed=args.seed, tie_policy=args.ties)
    return [{"kind": "test", "test": rep.test, "statistic": rep.statistic,
             "p_value": rep.p_value, "reject": bool(rep.reject), "alpha": rep.alpha,
             "k": rep.k, "tie_policy": rep.tie_policy, "seed": args.seed,
             "config": _config(args)}]


def cmd_simulate_power(args):
    if len(args.k) not in (1, len(args.n)):
        raise ValueError("--k takes one value or one value per --n")
    ks = args.k * len(args.n) if len(args.k) == 1 else args.k
    cfg = _config(args)
    records = []
    for n, k in zip(args.n, ks):
        for r in args.r:
            for dist in args.dist:
                scen = ScaleScenario(dist, (n,) * (len(r) + 1), r)
                for backend in args.backend:
                    res = run_scale_power_study(scen, k, args.alpha, args.reps,
                                                seed=args.seed, backend=backend,
                                                threads=args.threads)
                    records.append({"kind": "power", **res.record(), "k_random": k,
                                    "config": cfg})
    return records


def cmd_classify(args):
    X = read_curve_csv(args.group_x, label="X")
    Y = read_curve_csv(args.group_y, label="Y")
    alpha, beta = (args.trim * 2)[:2] if len(args.trim) == 1 else args.trim[:2]
    cfg = _config(args)
    records = []
    for method in args.method:
        spec = ClassifierSpec(method, alpha, beta, args.l, args.k, args.seed)
        err = loocv_error(X, Y, spec, args.reps, seed=args.seed, threads=args.threads)
        records.append({"kind": "classify", "method": method, "k": args.k,
                        "alpha": alpha, "beta": beta, "l": args.l,
                        "replications": args.reps, "error": err, "seed": args.seed,
                        "config": cfg})
    return records


def cmd_bench(args):
    cfg = _config(args)
    records = []
    for p in args.p:
        for n in args.n:
            k = args.k if args.k is not None else BENCH_K.get((p, n))
            if k is None:
                raise ValueError(f"no default k for p={p}, n={n}; pass --k")
            t = time_depths(p, n, k, args.reps, seed=args.seed)
            records.append({"kind": "bench", "p": p, "n": n, "k": k, **t,
                            "repetitions": args.reps, "config": cfg})
    return records


def cmd_render(args):
    with open(args.input) as fh:
        return read_jsonl(fh)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="rtdepth", description="Random Tukey depth toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, mc=True):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--output", choices=("table", "jsonl"), default="table")
        p.add_argument("--out", help="write to this file instead of stdout")
        if mc:
            p.add_argument("--reps", type=int, default=1000)
            p.add_argument("--threads", type=int, default=1,
                           help="worker count (results do not depend on it)")
        return p

    p = add("depth", cmd_depth, "depths of the rows of a CSV matrix", mc=False)
    p.add_argument("input")
    p.add_argument("--query", help="CSV of points to evaluate (default: the rows)")
    p.add_argument("--k", type=int, default=36)
    p.add_argument("--mahalanobis", action="store_true")
    p.add_argument("--location", choices=("mean", "coordinate_median"), default="mean")
    p.add_argument("--scatter", choices=("sample_covariance", "robust_m"),
                   default="sample_covariance")
    p.add_argument("--exact", action="store_true", help="exact Tukey depth (p=2)")

    p = add("calibrate-k", cmd_calibrate_k, "Monte Carlo choice of k")
    p.add_argument("--dist", type=_dist, nargs="+", default=["gaussian"])
    p.add_argument("--p", type=int, nargs="+", default=[2])
    p.add_argument("--n", type=int, nargs="+", default=[100])
    p.add_argument("--kmax", type=int, default=100)
    p.add_argument("--non-strict", action="store_true",
                   help="stop at the first k with r_k >= r_(k+1)")

    p = add("cov-det", cmd_cov_det, "mean determinant of Gaussian sample covariances")
    p.add_argument("--p", type=int, nargs="+", default=[2])
    p.add_argument("--n", type=int, nargs="+", default=[100])

    p = add("test-scale", cmd_test_scale, "depth-rank scale test on CSV samples",
            mc=False)
    p.add_argument("inputs", nargs="+", help="two files: Wilcoxon; more: Kruskal-Wallis")
    p.add_argument("--k", type=int, default=8)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--center", choices=("none", "mean", "median"), default="none")
    p.add_argument("--ties", choices=("random", "average", "min", "max"),
                   default="random")

    p = add("simulate-power", cmd_simulate_power, "rejection rates of the scale tests")
    p.add_argument("--dist", type=_dist, nargs="+", default=["gaussian"])
    p.add_argument("--n", type=int, nargs="+", default=[20])
    p.add_argument("--k", type=int, nargs="+", default=[6])
    p.add_argument("--r", type=_r_tuple, nargs="+", default=[(1.0,)],
                   help="scale factors; '2,1.2' gives a three-sample scenario")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--backend", choices=("random", "dense1000"), nargs="+",
                   default=["random"])

    p = add("classify", cmd_classify, "leave-one-out error of curve classifiers")
    p.add_argument("group_x")
    p.add_argument("group_y")
    p.add_argument("--method", choices=("M", "AM", "TAM"), nargs="+", default=["AM"])
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--trim", type=float, nargs="+", default=[0.2])
    p.add_argument("--l", type=int)

    p = add("bench", cmd_bench, "time random Tukey against Mahalanobis depth")
    p.add_argument("--p", type=int, nargs="+", default=[2, 4, 8, 25, 50])
    p.add_argument("--n", type=int, nargs="+", default=[100, 500, 1000])
    p.add_argument("--k", type=int)
    p.set_defaults(reps=200)

    p = sub.add_parser("render", help="render a JSON-lines file as a table")
    p.set_defaults(func=cmd_render, output="table", out=None)
    p.add_argument("input")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        records = args.func(args)
    except (CSVFormatError, ValueError, OSError) as e:
        print(f"rtdepth: error: {e}", file=sys.stderr)
        return 1
    if args.output == "jsonl":
        text = "".join(dumps_record(r) + "\n" for r in records)
    else:
        text = format_table(records)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
