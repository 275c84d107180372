"""Power-like weights, Muckenhoupt A_p checkers, and model operators.

Two routes to the A_p pair condition live here: an analytic one that reduces
power-like weight pairs to exponent inequalities at their singular points,
and a numeric one that estimates the supremum of interval averages over a
dyadic family anchored at the singularities.  The Calderon operator, the
2-x-y integral operator, and the finite Hilbert transform come with
weighted-boundedness probes driven by seeded piecewise-polynomial test
functions.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

from ._quad import integrate_graded, pv_hilbert

__all__ = [
    "PowerWeight",
    "ApReport",
    "RatioReport",
    "ap_numeric",
    "corollary_predicate",
    "theorem_conditions",
    "power_pair_in_ap",
    "calderon",
    "operator_j",
    "hilbert",
    "boundedness_probe",
    "PiecewisePoly",
    "random_test_function",
]


class PowerWeight:
    """Finite product of |x - t|^gamma factors, in canonical form.

    Factors are sorted by t and merged when t coincides; zero exponents are
    dropped.  An empty factor list is the constant weight 1.
    """

    def __init__(self, factors=()):
        merged = {}
        for t, g in factors:
            t = float(t)
            g = float(g)
            merged[t] = merged.get(t, 0.0) + g
        self.factors = tuple(sorted((t, g) for t, g in merged.items() if g != 0.0))

    @classmethod
    def from_axis_powers(cls, b=0.0, upper=0.0, lower=0.0):
        """|x|^b (1-x)^upper (1+x)^lower."""
        return cls(((0.0, b), (1.0, upper), (-1.0, lower)))

    @classmethod
    def constant(cls):
        return cls(())

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.ones_like(x)
        with np.errstate(divide="ignore"):
            for t, g in self.factors:
                out = out * np.abs(x - t) ** g
        return float(out) if out.ndim == 0 else out

    def __mul__(self, other):
        if not isinstance(other, PowerWeight):
            return NotImplemented
        return PowerWeight(self.factors + other.factors)

    def power(self, s: float) -> "PowerWeight":
        return PowerWeight(tuple((t, g * s) for t, g in self.factors))

    def exponent_at(self, t: float) -> float:
        for ti, g in self.factors:
            if ti == t:
                return g
        return 0.0

    def singularities(self):
        return tuple(t for t, _ in self.factors)

    def __eq__(self, other):
        return isinstance(other, PowerWeight) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    def __repr__(self):
        if not self.factors:
            return "PowerWeight(1)"
        return "PowerWeight(" + " * ".join(f"|x-({t:g})|^{g:g}" for t, g in self.factors) + ")"


def power_pair_in_ap(wu: PowerWeight, wv: PowerWeight, p: float, delta: float = 1.0,
                     interval=(-1.0, 1.0)) -> bool:
    """Analytic A_p^delta membership for a pair of power-like weights.

    At every singular point t inside the closed interval the pair needs
    delta*gamma_u(t) > -1 (local integrability of u^delta),
    delta*gamma_v(t) < p-1 (local integrability of v^{-delta/(p-1)}), and
    gamma_u(t) >= gamma_v(t) (the averages product stays bounded on small
    intervals at t).  Away from singularities both weights are smooth and
    positive, so nothing else can break.
    """
    if p <= 1.0:
        raise ValueError("p must be > 1")
    if delta < 1.0:
        raise ValueError("delta must be >= 1")
    lo, hi = interval
    points = {t for t in wu.singularities() if lo <= t <= hi}
    points |= {t for t in wv.singularities() if lo <= t <= hi}
    for t in points:
        gu = wu.exponent_at(t)
        gv = wv.exponent_at(t)
        if not (delta * gu > -1.0 and delta * gv < p - 1.0 and gu >= gv):
            return False
    return True


def corollary_predicate(alpha, p: float, b: float, upper: float, lower: float) -> bool:
    """Exact convergence characterization for U(x) = |x|^b (1-x)^A (1+x)^B.

    True iff -1 < Ap < p-1, -1 < Bp < p-1 and
    -1 + p(a+1/2)_+ < bp + 2a + 1 < p - 1 + p(2a+1) - p(a+1/2)_+.
    """
    a = getattr(alpha, "alpha", None)
    a = float(alpha) if a is None else a
    if p <= 1.0:
        raise ValueError("p must be > 1")
    plus = max(a + 0.5, 0.0)
    mid = b * p + 2.0 * a + 1.0
    return (
        -1.0 < upper * p < p - 1.0
        and -1.0 < lower * p < p - 1.0
        and -1.0 + p * plus < mid < p - 1.0 + p * (2.0 * a + 1.0) - p * plus
    )


def theorem_conditions(alpha, p: float, wu: PowerWeight, wv: PowerWeight, delta: float = 1.0):
    """Sufficient/necessary condition booleans for a power-like weight pair.

    thm1 is the alpha >= -1/2 sufficient condition (one kernel-power pair in
    A_p^delta), thm2 the -1 < alpha < -1/2 one (two pairs), thm3_necessary
    the four integrability conditions.  For power-like weights the strict
    exponent inequalities at delta=1 already certify membership for some
    delta > 1, so delta defaults to 1.
    """
    if not isinstance(wu, PowerWeight) or not isinstance(wv, PowerWeight):
        raise TypeError("theorem_conditions needs PowerWeight arguments; "
                        "use ap_numeric for general weights")
    a = getattr(alpha, "alpha", None)
    a = float(alpha) if a is None else a
    if p <= 1.0:
        raise ValueError("p must be > 1")
    q = p / (p - 1.0)
    up = wu.power(p)
    vp = wv.power(p)

    def with_axis(w: PowerWeight, e: float) -> PowerWeight:
        return w * PowerWeight(((0.0, e),))

    e1 = (a + 0.5) * (2.0 - p)
    thm1 = power_pair_in_ap(with_axis(up, e1), with_axis(vp, e1), p, delta)
    e2a = (2.0 * a + 1.0) * (1.0 - p)
    e2b = 2.0 * a + 1.0
    thm2 = (
        power_pair_in_ap(with_axis(up, e2a), with_axis(vp, e2a), p, delta)
        and power_pair_in_ap(with_axis(up, e2b), with_axis(vp, e2b), p, delta)
    )

    def integrable(w: PowerWeight) -> bool:
        return all(w.exponent_at(t) > -1.0 for t in w.singularities() if -1.0 <= t <= 1.0)

    thm3 = (
        integrable(with_axis(up, e1))
        and integrable(with_axis(wv.power(-q), (a + 0.5) * (2.0 - q)))
        and integrable(with_axis(up, e2b))
        and integrable(with_axis(wv.power(-q), e2b))
    )
    return {"thm1": thm1, "thm2": thm2, "thm3_necessary": thm3}


@dataclass(frozen=True)
class ApReport:
    """Summary of a numeric A_p sweep over the dyadic interval family."""

    p: float
    delta: float
    constant_estimate: float
    intervals_tested: int
    verdict: str  # satisfied | violated | inconclusive
    witness_interval: tuple | None = None

    def to_json(self) -> str:
        payload = {
            "p": self.p,
            "delta": self.delta,
            "constant_estimate": (
                "inf" if math.isinf(self.constant_estimate) else self.constant_estimate
            ),
            "verdict": self.verdict,
            "witness_interval": list(self.witness_interval) if self.witness_interval else None,
        }
        return json.dumps(payload, sort_keys=True)


_GROWTH_FACTOR = 1.2
_GROWTH_RUN = 4
_STABLE_FACTOR = 1.02


def _interval_average(w, lo: float, hi: float, anchors) -> float:
    if hi - lo <= 0.0:
        return math.nan
    val = integrate_graded(w, lo, hi, singular=tuple(anchors))
    return val / (hi - lo)


def ap_numeric(u, v, p: float, delta: float = 1.0, budget: int = 22, interval=(-1.0, 1.0),
               anchors=None) -> ApReport:
    """Numeric Muckenhoupt pair test on (lo,hi): semi-decision by dyadic sweep.

    Estimates sup over intervals of (avg u^delta) (avg v^{-delta/(p-1)})^{p-1}
    using dyadic scales 2^{-k}, k <= budget, anchored at the interval ends, 0,
    and each weight singularity.  Divergent averages surface as +inf and give
    an immediate "violated"; growth by >= 1.2x per scale over 4 consecutive
    scales does too.  A stabilized supremum yields "satisfied"; anything else
    is "inconclusive".
    """
    if p <= 1.0:
        raise ValueError("p must be > 1")
    if delta < 1.0:
        raise ValueError("delta must be >= 1 (the delta-th powers must be a pair)")
    lo, hi = float(interval[0]), float(interval[1])
    if anchors is None:
        anchors = {lo, hi}
        if lo < 0.0 < hi:
            anchors.add(0.0)
        for w in (u, v):
            if isinstance(w, PowerWeight):
                anchors.update(t for t in w.singularities() if lo <= t <= hi)
    anchors = sorted(anchors)

    # degenerate conventions: u == 0 or v == +inf are trivially in A_p
    probe = np.linspace(lo + 1e-6, hi - 1e-6, 17)
    uv = np.asarray([_call1(u, x) for x in probe])
    vv = np.asarray([_call1(v, x) for x in probe])
    if np.all(uv == 0.0) or np.all(np.isinf(vv)):
        return ApReport(p, delta, 1.0, 0, "satisfied", None)

    exp_v = -delta / (p - 1.0)

    def u_pow(x):
        return np.asarray(_callv(u, x)) ** delta

    def v_pow(x):
        return np.asarray(_callv(v, x)) ** exp_v

    tested = 0
    overall = 0.0
    witness = None
    per_scale = []
    for k in range(budget + 1):
        h = (hi - lo) * 2.0 ** (-k)
        best_k = 0.0
        arg_k = None
        for a0 in anchors:
            for cand_lo, cand_hi in ((a0, a0 + h), (a0 - h, a0), (a0 - 0.5 * h, a0 + 0.5 * h)):
                cand_lo, cand_hi = max(cand_lo, lo), min(cand_hi, hi)
                if cand_hi - cand_lo < 1e-13:
                    continue
                tested += 1
                avg_u = _interval_average(u_pow, cand_lo, cand_hi, anchors)
                avg_v = _interval_average(v_pow, cand_lo, cand_hi, anchors)
                if avg_u == 0.0 or avg_v == 0.0:
                    product = 0.0
                elif math.isinf(avg_u) or math.isinf(avg_v):
                    product = math.inf
                else:
                    product = avg_u * avg_v ** (p - 1.0)
                if product > best_k or arg_k is None:
                    best_k, arg_k = product, (cand_lo, cand_hi)
                if math.isinf(product):
                    return ApReport(p, delta, math.inf, tested, "violated", (cand_lo, cand_hi))
        per_scale.append(best_k)
        if best_k > overall:
            overall, witness = best_k, arg_k
    growth_run = 0
    for prev, nxt in zip(per_scale, per_scale[1:]):
        if prev > 0.0 and nxt >= _GROWTH_FACTOR * prev:
            growth_run += 1
            if growth_run >= _GROWTH_RUN:
                return ApReport(p, delta, math.inf, tested, "violated", witness)
        else:
            growth_run = 0
    tail = per_scale[-6:]
    stable = all(
        nxt <= _STABLE_FACTOR * prev + 1e-300 for prev, nxt in zip(tail, tail[1:])
    )
    if stable:
        return ApReport(p, delta, overall, tested, "satisfied", witness)
    return ApReport(p, delta, overall, tested, "inconclusive", witness)


def _call1(w, x: float) -> float:
    return float(np.asarray(w(np.asarray([x], dtype=np.float64)))[0]) if callable(w) else float(w)


def _callv(w, x):
    vals = w(np.asarray(x, dtype=np.float64))
    return np.asarray(vals, dtype=np.float64)


def calderon(g, x: float, breakpoints=()) -> float:
    """Calderon operator on (0,2): (1/x) int_0^x |g| + int_x^2 |g(y)|/y dy."""
    if not 0.0 < x < 2.0:
        raise ValueError(f"calderon needs 0 < x < 2, got {x}")
    head = integrate_graded(lambda y: np.abs(_callv(g, y)), 0.0, x,
                            singular=(0.0,), breakpoints=breakpoints)
    tail = integrate_graded(lambda y: np.abs(_callv(g, y)) / y, x, 2.0,
                            singular=(x,), breakpoints=breakpoints)
    if math.isinf(head) or math.isinf(tail):
        return math.inf
    return head / x + tail


def operator_j(f, x: float, breakpoints=()) -> float:
    """The smooth-kernel operator int_{-1}^1 f(y) / (2 - x - y) dy."""
    if not -1.0 < x < 1.0:
        raise ValueError(f"operator_j needs -1 < x < 1, got {x}")
    val = integrate_graded(lambda y: _callv(f, y) / (2.0 - x - y), -1.0, 1.0,
                           singular=(1.0,), breakpoints=breakpoints)
    return val


def hilbert(f, x: float, breakpoints=(), eps_seq=(1e-2, 1e-3, 1e-4)) -> float:
    """Finite Hilbert transform int_{-1}^1 f(y)/(x-y) dy as a principal value.

    f should be Hoelder-continuous near x (caller's responsibility); the
    symmetric-exclusion radii are Richardson-extrapolated.
    """
    return pv_hilbert(f, x, -1.0, 1.0, breakpoints=breakpoints, eps_seq=eps_seq)


class PiecewisePoly:
    """C^1 piecewise-cubic test function on a knot grid (random Hermite data)."""

    def __init__(self, knots, values, slopes):
        self.knots = np.asarray(knots, dtype=np.float64)
        self.values = np.asarray(values, dtype=np.float64)
        self.slopes = np.asarray(slopes, dtype=np.float64)

    @property
    def breakpoints(self):
        return tuple(self.knots[1:-1])

    def __call__(self, x):
        x = np.asarray(x, dtype=np.float64)
        scalar = x.ndim == 0
        xv = np.atleast_1d(x)
        idx = np.clip(np.searchsorted(self.knots, xv, side="right") - 1, 0, len(self.knots) - 2)
        x0 = self.knots[idx]
        h = self.knots[idx + 1] - x0
        t = np.clip((xv - x0) / h, 0.0, 1.0)
        h00 = (1.0 + 2.0 * t) * (1.0 - t) ** 2
        h10 = t * (1.0 - t) ** 2
        h01 = t * t * (3.0 - 2.0 * t)
        h11 = t * t * (t - 1.0)
        out = (h00 * self.values[idx] + h10 * h * self.slopes[idx]
               + h01 * self.values[idx + 1] + h11 * h * self.slopes[idx + 1])
        return float(out[0]) if scalar else out


def random_test_function(domain, freq: int, rng, localize_at=None) -> PiecewisePoly:
    """Random C^1 piecewise cubic with ``freq`` pieces; optional localization.

    With ``localize_at`` set, the knots accumulate geometrically toward that
    point and the function is supported on the innermost band (a bump of
    width ~ 2^{-freq}), so increasing ``freq`` sharpens the localization.
    """
    lo, hi = float(domain[0]), float(domain[1])
    if localize_at is None:
        knots = np.linspace(lo, hi, freq + 1)
        m = len(knots)
        values = rng.uniform(-1.0, 1.0, m)
        slopes = rng.uniform(-1.0, 1.0, m) * freq
        return PiecewisePoly(knots, values, slopes)
    c = float(localize_at)
    scales = (hi - lo) * 2.0 ** (-np.arange(1, freq + 1, dtype=np.float64))
    pts = {lo, hi}
    for s in scales:
        for cand in (c - s, c + s):
            if lo < cand < hi:
                pts.add(cand)
    knots = np.array(sorted(pts))
    band = (hi - lo) * 2.0 ** (-max(freq - 2, 1))
    inner = np.abs(knots - c) <= band
    values = np.where(inner, rng.uniform(0.5, 1.0, len(knots)), 0.0)
    slopes = np.zeros(len(knots))
    return PiecewisePoly(knots, values, slopes)


@dataclass(frozen=True)
class RatioReport:
    """Operator-norm probe outcome: per-trial ratios and the growth trend."""

    operator: str
    p: float
    rows: tuple  # (trial, freq, ratio)
    max_ratio: float
    growth_slope: float
    skipped: int = 0

    def to_csv(self) -> str:
        lines = ["trial,freq,ratio"]
        for trial, freq, ratio in self.rows:
            lines.append(f"{trial},{freq},{ratio:.17g}")
        return "\n".join(lines) + "\n"


_OPERATOR_DOMAIN = {"calderon": (0.0, 2.0), "hilbert": (-1.0, 1.0), "j": (-1.0, 1.0)}


def _weighted_norm_grid(domain, n_panels=30, extra_edges=()):
    lo, hi = domain
    edges = np.unique(np.concatenate([
        np.linspace(lo, hi, n_panels + 1),
        np.asarray([e for e in extra_edges if lo < e < hi], dtype=np.float64),
    ]))
    gl_x, gl_w = np.polynomial.legendre.leggauss(8)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    xs = (mid[:, None] + half[:, None] * gl_x[None, :]).ravel()
    ws = (half[:, None] * gl_w[None, :]).ravel()
    return xs, ws


def boundedness_probe(op: str, u, v, p: float, trials: int, seed: int = 0,
                      localize_at=None, freq_start: int = 2, norm_panels: int = 30) -> RatioReport:
    """Empirical ||op f||_{L^p(u dx)} / ||f||_{L^p(v dx)} over random test functions.

    Frequencies increase with the trial index; the growth slope is the
    least-squares slope of log(ratio) against log(freq).  Trials with a zero
    input norm are skipped.
    """
    if op not in _OPERATOR_DOMAIN:
        raise ValueError(f"unknown operator {op!r}; expected one of {sorted(_OPERATOR_DOMAIN)}")
    domain = _OPERATOR_DOMAIN[op]
    rng = np.random.default_rng(seed)
    rows = []
    skipped = 0
    for trial in range(trials):
        freq = freq_start + 2 * trial
        f = random_test_function(domain, freq, rng, localize_at=localize_at)
        xs, ws = _weighted_norm_grid(domain, n_panels=norm_panels, extra_edges=f.knots)
        uvals = _callv(u, xs)
        vvals = _callv(v, xs)
        fn = float(np.sum(ws * np.abs(f(xs)) ** p * vvals)) ** (1.0 / p)
        if fn == 0.0 or not math.isfinite(fn):
            skipped += 1
            continue
        if op == "calderon":
            op_vals = np.array([calderon(f, float(x), breakpoints=f.breakpoints) for x in xs])
        elif op == "j":
            op_vals = np.array([operator_j(f, float(x), breakpoints=f.breakpoints) for x in xs])
        else:
            op_vals = np.array([hilbert(f, float(x), breakpoints=f.breakpoints) for x in xs])
        if not np.all(np.isfinite(op_vals)):
            rows.append((trial, freq, math.inf))
            continue
        on = float(np.sum(ws * np.abs(op_vals) ** p * uvals)) ** (1.0 / p)
        rows.append((trial, freq, on / fn))
    finite = [(f0, r0) for _, f0, r0 in rows if math.isfinite(r0) and r0 > 0.0]
    max_ratio = max((r for _, _, r in rows), default=math.nan)
    slope = math.nan
    if len(finite) >= 2:
        lf = np.log([f0 for f0, _ in finite])
        lr = np.log([r0 for _, r0 in finite])
        slope = float(np.polyfit(lf, lr, 1)[0])
    return RatioReport(op, p, tuple(rows), max_ratio, slope, skipped)
