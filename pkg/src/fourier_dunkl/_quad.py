"""Panel quadrature helpers: graded panels, tail extrapolation, principal values.

Used by the operator module (Calderon/Hilbert transforms, Muckenhoupt
averages) and by the kernel-splitting code.  Integrands with power-like
endpoint behaviour are resolved by geometric panel grading; the geometric
tail is extrapolated from the observed panel ratio, which simultaneously
acts as a divergence detector (ratio >= 1 means a non-integrable endpoint).
"""

import math

import numpy as np

_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)

_TAIL_RATIO_MAX = 0.999
_GRADE_PANELS = 48


class PrincipalValueError(ArithmeticError):
    """Richardson extrapolation of the symmetric-exclusion values failed."""


def _vectorized(f):
    def call(xs):
        vals = np.asarray(f(xs), dtype=np.float64)
        if vals.shape != np.shape(xs):
            vals = np.asarray([f(float(x)) for x in np.atleast_1d(xs)])
        return vals

    probe = np.array([0.123456, 0.234567])
    try:
        v = np.asarray(f(probe))
        if v.shape == probe.shape:
            return lambda xs: np.asarray(f(xs), dtype=np.float64)
    except Exception:
        pass
    return call


def _panels_value(fv, lows: np.ndarray, highs: np.ndarray) -> np.ndarray:
    """GL16 integrals over a batch of panels with a single integrand call."""
    mid = 0.5 * (lows + highs)
    half = 0.5 * (highs - lows)
    nodes = mid[:, None] + half[:, None] * _GL_X[None, :]
    vals = fv(nodes.ravel()).reshape(nodes.shape)
    return half * (vals @ _GL_W)


def _graded_toward(fv, edge: float, far: float) -> float:
    """Integral over the set between ``edge`` and ``far`` (natural orientation)
    with geometric panel grading toward ``edge``; +-inf when the endpoint is
    non-integrable."""
    length = far - edge  # signed; orientation of panels is always min->max
    floor = 1e-17 * max(abs(edge), abs(far), 1.0)
    ts = [1.0]
    while len(ts) < _GRADE_PANELS and abs(length) * ts[-1] * 0.5 > floor:
        ts.append(0.5 * ts[-1])
    outer = edge + length * np.asarray(ts)
    inner = edge + length * 0.5 * np.asarray(ts)
    panels = _panels_value(fv, np.minimum(outer, inner), np.maximum(outer, inner))
    total = float(np.sum(panels))
    tail = panels[-6:]
    ratios = [tail[i + 1] / tail[i] for i in range(len(tail) - 1) if tail[i] != 0.0]
    if not ratios:
        return total
    r = sorted(ratios)[len(ratios) // 2]
    if np.all(tail > 0.0) or np.all(tail < 0.0):
        if r >= _TAIL_RATIO_MAX:
            return math.inf if tail[-1] > 0.0 else -math.inf
        if 0.0 < r:
            total += float(panels[-1]) * r / (1.0 - r)
    return total


def _segment(fv, lo: float, hi: float, sing_lo: bool, sing_hi: bool) -> float:
    if sing_lo and sing_hi:
        mid = 0.5 * (lo + hi)
        return _segment(fv, lo, mid, True, False) + _segment(fv, mid, hi, False, True)
    if sing_lo:
        return _graded_toward(fv, lo, hi)
    if sing_hi:
        return _graded_toward(fv, hi, lo)
    edges = np.linspace(lo, hi, 9)
    return float(np.sum(_panels_value(fv, edges[:-1], edges[1:])))


def integrate_graded(f, lo: float, hi: float, singular=(), breakpoints=()) -> float:
    """Integral of f over (lo, hi); singular points get graded panels.

    Points in ``singular`` (integrable or not, interior or endpoint) receive
    geometric grading with tail extrapolation; a diverging tail yields +-inf.
    ``breakpoints`` only split panels (for kinks/jumps of f).
    """
    if hi <= lo:
        return 0.0
    fv = _vectorized(f)
    tol = 1e-14 * max(1.0, abs(lo), abs(hi))
    sing = sorted({float(s) for s in singular if lo - tol <= s <= hi + tol})
    cuts = {float(b) for b in breakpoints if lo + tol < b < hi - tol}
    cuts.update(s for s in sing if lo + tol < s < hi - tol)
    edges = [lo] + sorted(cuts) + [hi]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= tol:
            continue
        s_lo = any(abs(a - s) <= tol for s in sing)
        s_hi = any(abs(b - s) <= tol for s in sing)
        part = _segment(fv, a, b, s_lo, s_hi)
        total += part
        if math.isinf(total):
            return total
    return total


def pv_hilbert(f, x: float, lo: float, hi: float, breakpoints=(), singular=(),
               eps_seq=(1e-2, 1e-3, 1e-4), rtol=3e-4) -> float:
    """Principal value of integral f(y)/(x-y) dy over (lo, hi).

    Symmetric exclusion of radius eps around x for the given radius sequence,
    then two-level Richardson extrapolation (the symmetric exclusion error is
    c1*eps + c3*eps^3 + ...).  If the extrapolation does not settle -- f
    varying on scales below the largest radius does that -- the radii are
    shrunk a hundredfold, twice, before giving up.
    """
    if not (lo < x < hi):
        raise ValueError(f"pv_hilbert needs x inside ({lo}, {hi}), got {x}")
    if len(eps_seq) != 3 or not (eps_seq[0] > eps_seq[1] > eps_seq[2] > 0.0):
        raise ValueError("eps_seq must be three decreasing radii")
    dist = min(x - lo, hi - x)
    base = min(1.0, dist / (4.0 * max(eps_seq)))

    fv = _vectorized(f)

    def excluded(e: float) -> float:
        def kern(ys):
            return fv(ys) / (x - ys)

        left = integrate_graded(kern, lo, x - e,
                                singular=tuple(singular) + (x - e,),
                                breakpoints=breakpoints)
        right = integrate_graded(kern, x + e, hi,
                                 singular=tuple(singular) + (x + e,),
                                 breakpoints=breakpoints)
        return left + right

    last_err = None
    for shrink in (1.0, 1e-2, 1e-4):
        eps = [e * base * shrink for e in eps_seq]
        e1, e2, e3 = (excluded(e) for e in eps)
        if not all(map(math.isfinite, (e1, e2, e3))):
            raise PrincipalValueError(f"excluded integrals not finite at x={x}")
        ratio = eps_seq[0] / eps_seq[1]
        r12 = (ratio * e2 - e1) / (ratio - 1.0)
        r23 = (ratio * e3 - e2) / (ratio - 1.0)
        r3 = ratio**3
        result = (r3 * r23 - r12) / (r3 - 1.0)
        last_err = abs(result - r23)
        if last_err <= rtol * (1.0 + abs(result)):
            return result
    raise PrincipalValueError(
        f"Richardson extrapolation not converging at x={x}: drift {last_err:g}"
    )
