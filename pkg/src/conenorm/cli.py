"""Command-line front end.

Four verbs:

* ``norm``        -- certified mixed-norm computation for a matrix file
* ``kappa``       -- projective diameter and contraction ratio of a matrix
* ``lsc``         -- log-Sobolev lower-bound report for a stochastic kernel
* ``experiment kappa-dist`` -- contraction-ratio samples for random
  positive matrices with increasingly flat entries

Exit codes: 0 on success, 1 for unreadable input or bad parameters,
2 when no contraction certificate exists (and ``--force`` was not
given), 3 when the iteration budget ran out before convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from ._matio import read_matrix
from .cone import birkhoff_ratio, projective_diameter
from .logsobolev import MarkovChain, sigma_lower_bound
from .norms import NotEvaluableError, WeightedPNorm, spec_from_dict
from .power import CertificateError, ProblemInstance, solve


def _parse_norm_arg(text, dim):
    """Turn a --alpha/--beta argument into a norm spec.

    Accepts a bare exponent (``2`` means the unweighted p-norm with
    p = 2), an inline JSON object, or ``@file.json``.
    """
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return spec_from_dict(json.load(fh))
    if text.startswith("{"):
        return spec_from_dict(json.loads(text))
    try:
        p = float(text)
    except ValueError:
        raise ValueError(
            "norm argument %r is neither an exponent, inline JSON, nor @file" % text
        ) from None
    return WeightedPNorm(np.ones(dim), p)


def _json_float(x):
    """Floats for json.dumps: non-finite values become null."""
    x = float(x)
    return x if math.isfinite(x) else None


def _emit(payload, args):
    text = json.dumps(payload, sort_keys=True, indent=2, default=float)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _write_text(lines, args):
    body = "\n".join(lines) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(body)
    else:
        sys.stdout.write(body)


# -- norm ---------------------------------------------------------------------


def _cmd_norm(args):
    A = read_matrix(args.matrix)
    alpha = _parse_norm_arg(args.alpha, A.shape[0])
    beta = _parse_norm_arg(args.beta, A.shape[1])
    inst = ProblemInstance(A, alpha, beta)
    res = solve(inst, tol=args.tol, max_iters=args.max_iters, force=args.force)
    cert = res.certificate
    payload = {
        "version": __version__,
        "matrix": args.matrix,
        "alpha": args.alpha,
        "beta": args.beta,
        "tol": args.tol,
        "max_iters": args.max_iters,
        "force": args.force,
        "norm_estimate": res.norm_estimate,
        "lower": res.lower,
        "upper": _json_float(res.upper),
        "a_priori_gap": _json_float(res.a_priori_gap),
        "a_posteriori_gap": _json_float(res.a_posteriori_gap),
        "tau": cert.tau,
        "kappa_A": cert.kappa_A,
        "kappa_At": cert.kappa_At,
        "bound_J_alpha": cert.bound_J_alpha,
        "bound_J_beta_star": cert.bound_J_beta_star,
        "r": cert.r,
        "gamma": cert.gamma,
        "iterations": res.iterations,
        "converged": res.converged,
        "maximizer": [float(v) for v in res.maximizer],
    }
    if args.format == "json":
        _emit(payload, args)
    else:
        lines = [
            "norm estimate : %.12g" % res.norm_estimate,
            "enclosure     : [%.12g, %s]"
            % (res.lower, "%.12g" % res.upper if math.isfinite(res.upper) else "unbounded"),
            "tau           : %.12g  (kappa_A=%.6g kappa_At=%.6g J_alpha<=%.6g J_beta*<=%.6g)"
            % (cert.tau, cert.kappa_A, cert.kappa_At, cert.bound_J_alpha, cert.bound_J_beta_star),
            "iterations    : %d (converged=%s)" % (res.iterations, res.converged),
        ]
        _write_text(lines, args)
    return 0 if res.converged else 3


# -- kappa --------------------------------------------------------------------


def _cmd_kappa(args):
    A = read_matrix(args.matrix)
    payload = {
        "version": __version__,
        "matrix": args.matrix,
        "diameter": _json_float(projective_diameter(A)),
        "diameter_transpose": _json_float(projective_diameter(A.T)),
        "kappa": birkhoff_ratio(A),
        "kappa_transpose": birkhoff_ratio(A.T),
    }
    if args.format == "json":
        _emit(payload, args)
    else:
        dia = projective_diameter(A)
        lines = [
            "projective diameter : %s" % ("%.12g" % dia if math.isfinite(dia) else "inf"),
            "contraction ratio   : %.12g" % birkhoff_ratio(A),
            "transpose ratio     : %.12g" % birkhoff_ratio(A.T),
        ]
        _write_text(lines, args)
    return 0


# -- lsc ----------------------------------------------------------------------


def _parse_t_grid(text):
    """Parse 'start:stop:count-log' or 'start:stop:count-lin'."""
    spec = text.strip()
    scale = "log"
    if spec.endswith("-log"):
        spec = spec[:-4]
    elif spec.endswith("-lin"):
        spec = spec[:-4]
        scale = "lin"
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("t-grid must look like start:stop:count[-log|-lin]")
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if start <= 0 or stop <= 0 or count < 1:
        raise ValueError("t-grid needs positive endpoints and count")
    if scale == "log":
        return list(np.geomspace(start, stop, count))
    return list(np.linspace(start, stop, count))


def _plot_lsc(report, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    ts = [e.t for e in report.entries]
    lbs = [e.sigma_lb for e in report.entries]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.semilogx(ts, lbs, "o-", label="contraction lower bound")
    ax.axhline(report.sigma_upper, color="tab:red", linestyle="--", label="half spectral gap")
    ax.set_xlabel("t")
    ax.set_ylabel("log-Sobolev bound")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _cmd_lsc(args):
    K = read_matrix(args.matrix)
    pi = None
    if args.pi:
        pi = read_matrix(args.pi).ravel()
    chain = MarkovChain(K, pi=pi)
    grid = _parse_t_grid(args.t_grid) if args.t_grid else None
    report = sigma_lower_bound(chain, t_grid=grid)
    if args.format == "csv":
        rows = ["t,rho,sigma_lb,reliable"]
        for e in report.entries:
            rows.append(
                "%s,%s,%s,%d" % (repr(e.t), repr(e.rho), repr(e.sigma_lb), int(e.reliable))
            )
        _write_text(rows, args)
    elif args.format == "json":
        payload = {
            "version": __version__,
            "matrix": args.matrix,
            "entries": [
                {"t": e.t, "rho": e.rho, "sigma_lb": _json_float(e.sigma_lb), "reliable": e.reliable}
                for e in report.entries
            ],
            "best": _json_float(report.best),
            "best_t": _json_float(report.best_t),
            "sigma_upper": report.sigma_upper,
            "spectral_gap": report.gap,
        }
        _emit(payload, args)
    else:
        lines = ["%-12s %-22s %-22s" % ("t", "rho", "sigma_lb")]
        for e in report.entries:
            flag = "" if e.reliable else "  (unreliable)"
            lines.append("%-12.6g %-22.15g %-22.15g%s" % (e.t, e.rho, e.sigma_lb, flag))
        lines.append("best lower bound : %.15g at t=%.6g" % (report.best, report.best_t))
        lines.append("upper bound      : %.15g (half spectral gap)" % report.sigma_upper)
        _write_text(lines, args)
    if args.plot is not None:
        _plot_lsc(report, args.plot or "lsc_bounds.png")
    return 0


# -- experiment ---------------------------------------------------------------


def kappa_distribution_rows(seed, n, k_min, k_max, samples):
    """Deterministic contraction-ratio samples for the experiment verb.

    Sample ``index`` of level ``k`` uses its own generator seeded by the
    tuple (seed, k, index), so rows do not depend on iteration order and
    reruns are reproducible bit for bit.  Entries are uniform on
    [k, 10]: larger k flattens the matrices, shrinking the projective
    diameter and with it the contraction ratio.
    """
    if k_max >= 10:
        raise ValueError("k levels must stay below 10, the upper entry bound")
    if k_min < 0 or k_min > k_max:
        raise ValueError("need 0 <= k-min <= k-max")
    rows = []
    for k in range(k_min, k_max + 1):
        for index in range(samples):
            rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, k, index))))
            X = rng.uniform(k, 10.0, size=(n, n))
            rows.append((k, index, float(birkhoff_ratio(X))))
    return rows


def _plot_kappa_dist(rows, k_min, k_max, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    groups = []
    labels = []
    for k in range(k_min, k_max + 1):
        groups.append([kap for (kk, _, kap) in rows if kk == k])
        labels.append(str(k))
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.boxplot(groups)
    ax.set_xticks(range(1, len(labels) + 1), labels=labels)
    ax.set_xlabel("entry floor k")
    ax.set_ylabel("contraction ratio")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _cmd_experiment_kappa(args):
    rows = kappa_distribution_rows(args.seed, args.n, args.k_min, args.k_max, args.samples)
    if args.format == "json":
        payload = {
            "version": __version__,
            "seed": args.seed,
            "n": args.n,
            "samples": args.samples,
            "rows": [{"k": k, "sample": i, "kappa": kap} for (k, i, kap) in rows],
        }
        _emit(payload, args)
    else:
        lines = ["k,sample,kappa"]
        for k, i, kap in rows:
            lines.append("%d,%d,%s" % (k, i, repr(kap)))
        _write_text(lines, args)
    if args.plot is not None:
        _plot_kappa_dist(rows, args.k_min, args.k_max, args.plot or "kappa_dist.png")
    return 0


# -- parser -------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="conenorm",
        description="certified mixed matrix norms and log-Sobolev lower bounds",
    )
    parser.add_argument("--version", action="version", version="conenorm " + __version__)
    sub = parser.add_subparsers(dest="verb", required=True)

    p_norm = sub.add_parser("norm", help="compute a mixed subordinate norm")
    p_norm.add_argument("--matrix", required=True, help="CSV or MatrixMarket file")
    p_norm.add_argument("--alpha", required=True, help="output norm: exponent, JSON, or @file")
    p_norm.add_argument("--beta", required=True, help="input norm: exponent, JSON, or @file")
    p_norm.add_argument("--tol", type=float, default=1e-10)
    p_norm.add_argument("--max-iters", type=int, default=100000)
    p_norm.add_argument("--force", action="store_true", help="iterate without a certificate")
    p_norm.add_argument("--format", choices=["json", "text"], default="json")
    p_norm.add_argument("--out", help="write the report here instead of stdout")
    p_norm.set_defaults(func=_cmd_norm)

    p_kappa = sub.add_parser("kappa", help="projective diameter and contraction ratio")
    p_kappa.add_argument("--matrix", required=True)
    p_kappa.add_argument("--format", choices=["json", "text"], default="json")
    p_kappa.add_argument("--out")
    p_kappa.set_defaults(func=_cmd_kappa)

    p_lsc = sub.add_parser("lsc", help="log-Sobolev lower bounds for a stochastic kernel")
    p_lsc.add_argument("--matrix", required=True, help="row-stochastic kernel")
    p_lsc.add_argument("--pi", help="optional stationary distribution file")
    p_lsc.add_argument("--t-grid", help="start:stop:count[-log|-lin], default 2^-k grid")
    p_lsc.add_argument("--format", choices=["json", "text", "csv"], default="json")
    p_lsc.add_argument("--out")
    p_lsc.add_argument("--plot", nargs="?", const="", help="also render the bounds to a PNG")
    p_lsc.set_defaults(func=_cmd_lsc)

    p_exp = sub.add_parser("experiment", help="reproducible numerical experiments")
    exp_sub = p_exp.add_subparsers(dest="experiment", required=True)
    p_kd = exp_sub.add_parser("kappa-dist", help="contraction ratios of random positive matrices")
    p_kd.add_argument("--seed", type=int, default=0)
    p_kd.add_argument("--n", type=int, default=10)
    p_kd.add_argument("--k-min", type=int, default=1)
    p_kd.add_argument("--k-max", type=int, default=5)
    p_kd.add_argument("--samples", type=int, default=1000)
    p_kd.add_argument("--format", choices=["csv", "json"], default="csv")
    p_kd.add_argument("--out")
    p_kd.add_argument("--plot", nargs="?", const="", help="also render per-level boxplots")
    p_kd.set_defaults(func=_cmd_experiment_kappa)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CertificateError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (NotEvaluableError, ValueError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
