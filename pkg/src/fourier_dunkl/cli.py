"""Command-line experiment harness.

Subcommands: zeros, norm-growth, convergence, kernel-sweep, ap-check.
All outputs are CSV (17 significant digits, LF line endings) or JSON with
stable key order; identical config plus seed reproduces identical bytes.
Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import dunkl, measure, weights
from ._quad import PrincipalValueError
from .specfun import AlphaParam, ZeroConvergenceError, build_zero_table

__all__ = ["ExperimentConfig", "main", "run"]

USAGE_EXIT = 2
NUMERICAL_EXIT = 3


class UsageError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    alpha: float = 0.0
    p: float = 2.0
    n_max: int = 16
    order: int = 128
    weight: tuple = (0.0, 0.0, 0.0)  # b, A, B for |x|^b (1-x)^A (1+x)^B
    seed: int = 0
    out: str = "-"
    delta: float = 1.0
    f_spec: str = "constant"
    n_list: tuple = (8, 16, 32)
    grid_size: int = 161
    grid_limit: float = 0.85
    numeric: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self):
        if not self.alpha > -1.0:
            raise UsageError(f"alpha must be > -1, got {self.alpha}")
        if not self.p > 1.0:
            raise UsageError(f"p must be > 1, got {self.p}")
        if self.n_max < 1:
            raise UsageError(f"nmax must be >= 1, got {self.n_max}")
        if self.order < 2:
            raise UsageError(f"order must be >= 2, got {self.order}")
        if self.delta < 1.0:
            raise UsageError(f"delta must be >= 1, got {self.delta}")
        if self.grid_size < 2 or not 0.0 < self.grid_limit < 1.0:
            raise UsageError("grid must have >= 2 points inside (0,1)")
        return self

    @property
    def weight_u(self) -> weights.PowerWeight:
        b, upper, lower = self.weight
        return weights.PowerWeight.from_axis_powers(b, upper, lower)


def parse_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; '#' starts a comment."""
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            key, val = (part.strip() for part in line.split("=", 1))
            values[key] = val
    return values


_CONFIG_KEYS = {
    "alpha": ("alpha", float),
    "p": ("p", float),
    "nmax": ("n_max", int),
    "order": ("order", int),
    "seed": ("seed", int),
    "out": ("out", str),
    "delta": ("delta", float),
    "f": ("f_spec", str),
    "nlist": ("n_list", lambda s: tuple(int(t) for t in s.split(","))),
    "gridsize": ("grid_size", int),
    "gridlimit": ("grid_limit", float),
    "weight": ("weight", lambda s: tuple(float(t) for t in s.split(","))),
}


def config_from_args(args) -> ExperimentConfig:
    cfg = ExperimentConfig()
    if getattr(args, "config", None):
        for key, raw in parse_config_file(args.config).items():
            if key not in _CONFIG_KEYS:
                raise UsageError(f"unknown config key {key!r}")
            attr, conv = _CONFIG_KEYS[key]
            try:
                setattr(cfg, attr, conv(raw))
            except ValueError as exc:
                raise UsageError(f"bad value for {key!r}: {raw!r}") from exc
    for flag, (attr, conv) in _CONFIG_KEYS.items():
        val = getattr(args, flag, None)
        if val is not None:
            setattr(cfg, attr, conv(val) if isinstance(val, str) else val)
    if getattr(args, "numeric", False):
        cfg.numeric = True
    return cfg.validate()


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write(out: str, text: str):
    if out == "-" or out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_zeros(cfg: ExperimentConfig) -> str:
    table = build_zero_table(cfg.alpha, cfg.n_max)
    return table.to_csv()


def _matrix_pnorm(mat: np.ndarray, p: float, rng, max_iter: int = 200, tol: float = 1e-6):
    """Boyd-style power method for the matrix p->p operator norm.

    Iterates x -> dual_{p'}(A^T dual_p(A x)); returns (estimate, converged).
    """
    q = p / (p - 1.0)

    def dual(vec, expo):
        nrm = float(np.linalg.norm(vec, ord=expo))
        if nrm == 0.0:
            return vec
        return np.sign(vec) * (np.abs(vec) / nrm) ** (expo - 1.0)

    x = rng.uniform(0.1, 1.0, mat.shape[1])
    x /= float(np.linalg.norm(x, ord=p))
    prev = 0.0
    for _ in range(max_iter):
        y = mat @ x
        gamma = float(np.linalg.norm(y, ord=p))
        if gamma == 0.0:
            return 0.0, True
        z = mat.T @ dual(y, p)
        zq = float(np.linalg.norm(z, ord=q))
        if zq <= float(z @ x) * (1.0 + 1e-12) or abs(gamma - prev) <= tol * gamma:
            return gamma, True
        x = dual(z, q)
        x /= float(np.linalg.norm(x, ord=p))
        prev = gamma
    return prev, False


def norm_growth_rows(cfg: ExperimentConfig, v_weight=None):
    """Operator-norm estimates of f -> U S_n(f) for n = 1..n_max."""
    rule = measure.build_rule(cfg.alpha, cfg.order)
    system = dunkl.DunklSystem.build(cfg.alpha, cfg.n_max)
    u = cfg.weight_u
    v = u if v_weight is None else v_weight
    w = rule.weights
    nodes = rule.nodes
    uvals = np.asarray(u(nodes), dtype=np.float64)
    vvals = np.asarray(v(nodes), dtype=np.float64)
    left = w ** (1.0 / cfg.p) * uvals
    right = w ** (1.0 - 1.0 / cfg.p) / vvals
    kmat = np.full((nodes.size, nodes.size), system.e0 * system.e0)
    rows = dunkl._e_rows(system, cfg.n_max, nodes)
    out = []
    rng = np.random.default_rng(cfg.seed)
    for n in range(1, cfg.n_max + 1):
        r = rows[n - 1]
        kmat = kmat + 2.0 * np.real(np.outer(np.conj(r), r))
        amat = left[:, None] * kmat * right[None, :]
        best = 0.0
        ok_any = False
        for _ in range(2):
            est, ok = _matrix_pnorm(amat, cfg.p, rng)
            best = max(best, est)
            ok_any = ok_any or ok
        out.append((n, best, "matrix_pnorm" if ok_any else "matrix_pnorm_unconverged"))
    return out


def cmd_norm_growth(cfg: ExperimentConfig) -> str:
    lines = ["n,norm_estimate,method"]
    for n, est, method in norm_growth_rows(cfg):
        lines.append(f"{n},{_fmt(est)},{method}")
    return "\n".join(lines) + "\n"


def _catalog_function(spec: str, system, rule):
    """Named test functions for convergence runs."""
    name, _, arg = spec.partition(":")
    if name == "constant":
        return lambda x: np.ones_like(np.asarray(x, dtype=np.float64))
    if name == "sign":
        return lambda x: np.sign(np.asarray(x, dtype=np.float64))
    if name == "power":
        beta = float(arg) if arg else 0.5
        return lambda x: np.abs(np.asarray(x, dtype=np.float64)) ** beta
    if name == "bump":
        def bump(x):
            x = np.asarray(x, dtype=np.float64)
            with np.errstate(divide="ignore", over="ignore"):
                val = np.where(np.abs(x) < 1.0, np.exp(1.0 - 1.0 / np.maximum(1.0 - x * x, 1e-300)), 0.0)
            return val
        return bump
    if name == "step":
        return lambda x: ((np.asarray(x, dtype=np.float64) > -0.3)
                          & (np.asarray(x, dtype=np.float64) < 0.6)).astype(np.float64)
    if name == "mode":
        j = int(arg) if arg else 3
        return lambda x: dunkl.eval_e(system, j, x)
    raise UsageError(f"unknown test function {spec!r}; catalog: constant, sign, "
                     "power[:beta], bump, step, mode[:j]")


def cmd_convergence(cfg: ExperimentConfig) -> str:
    rule = measure.build_rule(cfg.alpha, cfg.order)
    system = dunkl.DunklSystem.build(cfg.alpha, cfg.n_max)
    f = _catalog_function(cfg.f_spec, system, rule)
    u = cfg.weight_u
    nodes = rule.nodes
    fvals = np.asarray(f(nodes))
    uvals = np.asarray(u(nodes), dtype=np.float64)
    lines = ["n,lp_error"]
    spec = measure.LpNormSpec(cfg.p, u, rule.alpha)
    vnorm = measure.weighted_lp_norm(rule, f, spec, refine_check=True)
    if math.isinf(vnorm):
        lines.append("# warning: test function fails the L^p(V^p dmu) divergence heuristic")
    expansion = dunkl.expand(system, rule, f, cfg.n_max)
    rows_all = dunkl._e_rows(system, cfg.n_max, nodes)
    partial = np.full(nodes.shape, expansion.coefficients[0] * system.e0, dtype=np.complex128)
    for n in range(1, cfg.n_max + 1):
        partial = partial + expansion.coefficients[n] * rows_all[n - 1]
        partial = partial + expansion.coefficients[-n] * np.conj(rows_all[n - 1])
        err = np.abs(partial - fvals) * uvals
        lp = float(np.sum(rule.weights * err**cfg.p)) ** (1.0 / cfg.p)
        lines.append(f"{n},{_fmt(lp)}")
    return "\n".join(lines) + "\n"


def cmd_kernel_sweep(cfg: ExperimentConfig) -> str:
    n_values = [n for n in cfg.n_list if n >= 1]
    if not n_values:
        raise UsageError("nlist must contain positive kernel degrees")
    system = dunkl.DunklSystem.build(cfg.alpha, max(n_values) + 1)
    xs = np.linspace(-cfg.grid_limit, cfg.grid_limit, cfg.grid_size)
    mask = (np.abs(xs[:, None] - xs[None, :]) >= 1e-3) & (np.abs(xs[:, None] * xs[None, :]) >= 1e-3)
    lines = ["x,y,n,residual,bound,ratio"]
    summary = []
    skipped = int(np.sum(~mask))
    for n in n_values:
        residual, bound = dunkl.remainder_grid(system, n, xs, xs)
        ratio = residual / bound
        best = float(np.max(ratio[mask]))
        summary.append((n, best))
        for i in range(xs.size):
            for j in range(xs.size):
                if mask[i, j]:
                    lines.append(
                        f"{_fmt(xs[i])},{_fmt(xs[j])},{n},"
                        f"{_fmt(residual[i, j])},{_fmt(bound[i, j])},{_fmt(ratio[i, j])}"
                    )
    lines.append(f"# skipped_points_per_n,{skipped}")
    for n, best in summary:
        lines.append(f"# max_ratio,n={n},{_fmt(best)}")
    return "\n".join(lines) + "\n"


def cmd_ap_check(cfg: ExperimentConfig) -> str:
    a = cfg.alpha
    b, upper, lower = cfg.weight
    u = cfg.weight_u
    conditions = weights.theorem_conditions(a, cfg.p, u, u, cfg.delta)
    payload = {
        "alpha": a,
        "p": cfg.p,
        "delta": cfg.delta,
        "weight": {"b": b, "A": upper, "B": lower},
        "corollary": weights.corollary_predicate(a, cfg.p, b, upper, lower),
        "thm1": conditions["thm1"],
        "thm2": conditions["thm2"],
        "thm3_necessary": conditions["thm3_necessary"],
    }
    if cfg.numeric:
        e1 = (a + 0.5) * (2.0 - cfg.p)
        pair_u = u.power(cfg.p) * weights.PowerWeight(((0.0, e1),))
        rep = weights.ap_numeric(pair_u, pair_u, cfg.p, cfg.delta)
        payload["numeric_thm1_pair"] = json.loads(rep.to_json())
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


_COMMANDS = {
    "zeros": cmd_zeros,
    "norm-growth": cmd_norm_growth,
    "convergence": cmd_convergence,
    "kernel-sweep": cmd_kernel_sweep,
    "ap-check": cmd_ap_check,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourier-dunkl",
        description="Fourier-Dunkl expansion experiments: zero tables, operator-norm "
                    "growth, convergence curves, kernel-bound sweeps, Muckenhoupt checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("zeros", "table of positive Bessel zeros s_j"),
        ("norm-growth", "operator norm of U S_n per n (matrix p-norm estimate)"),
        ("convergence", "weighted L^p error of S_n f per n"),
        ("kernel-sweep", "kernel residual against the closed-form bound on a grid"),
        ("ap-check", "corollary/theorem predicates and optional numeric A_p verdicts"),
    ):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--config", help="key = value config file")
        sp.add_argument("--alpha", type=float)
        sp.add_argument("--p", type=float)
        sp.add_argument("--nmax", type=int)
        sp.add_argument("--order", type=int)
        sp.add_argument("--weight", help="b,A,B exponents of |x|^b (1-x)^A (1+x)^B")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--delta", type=float)
        sp.add_argument("--out", help="output path ('-' for stdout)")
        if name == "convergence":
            sp.add_argument("--f", help="constant | sign | power[:beta] | bump | step | mode[:j]")
        if name == "kernel-sweep":
            sp.add_argument("--nlist", help="comma-separated kernel degrees")
            sp.add_argument("--gridsize", type=int)
            sp.add_argument("--gridlimit", type=float)
        if name == "ap-check":
            sp.add_argument("--numeric", action="store_true",
                            help="also run the numeric A_p sweep on the theorem pair")
    return parser


def run(argv) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        text = _COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (ZeroConvergenceError, PrincipalValueError, ArithmeticError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return NUMERICAL_EXIT
    _write(cfg.out, text)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
