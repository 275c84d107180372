"""Bessel-type special functions and zero tables for the Dunkl setting.

The central object is the even entire function J_nu(z)/z^nu (power series in
z^2), from which everything else is assembled: the usual Bessel J_nu on the
positive axis, the modified function I-script, the Dunkl kernel E_alpha, and
the positive zeros s_1 < s_2 < ... of J_{alpha+1}.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ._core import Z_CAP, gamma, jn_even, jn_even_array

__all__ = [
    "AlphaParam",
    "ZeroTable",
    "bessel_j_even",
    "bessel_j",
    "script_i",
    "e_alpha",
    "build_zero_table",
    "gamma",
]

# Complex-plane series evaluation of script_i/e_alpha is supported on a disc
# only; on the real and imaginary axes dedicated paths are used instead.
_COMPLEX_SERIES_CAP = 60.0
_SCRIPT_I_REAL_CAP = 700.0


@dataclass(frozen=True)
class AlphaParam:
    """Order parameter alpha > -1 of the measure |x|^{2 alpha + 1} dx."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a) or a <= -1.0:
            raise ValueError(f"alpha must be a finite number > -1, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)


def _as_alpha(alpha) -> float:
    if isinstance(alpha, AlphaParam):
        return alpha.alpha
    return AlphaParam(alpha).alpha


def bessel_j_even(nu: float, z: float) -> float:
    """J_nu(z)/z^nu as an even entire function of z (any real z, nu > -1)."""
    if nu <= -1.0:
        raise ValueError(f"nu must be > -1, got {nu}")
    return jn_even(nu, z)


def bessel_j(nu: float, z: float) -> float:
    """Bessel function of the first kind, J_nu(z) = z^nu * (J_nu(z)/z^nu), z > 0."""
    if z <= 0.0:
        raise ValueError(f"bessel_j requires z > 0 (fractional powers), got z={z}")
    return z**nu * jn_even(nu, z)


def bessel_j_array(nu: float, z: np.ndarray) -> np.ndarray:
    """Vectorized ``bessel_j`` over positive arguments."""
    z = np.asarray(z, dtype=np.float64)
    if z.size and float(np.min(z)) <= 0.0:
        raise ValueError("bessel_j_array requires all z > 0")
    return z**nu * jn_even_array(nu, z)


def script_i(alpha, z) -> float | complex:
    """The normalized modified Bessel function: Gamma(a+1) sum (z/2)^{2n} / (n! Gamma(n+a+1)).

    Even in z, equals 1 at z = 0.  Real arguments are summed directly (all
    terms positive, no cancellation); purely imaginary arguments are routed
    through the oscillatory Bessel evaluator; other complex arguments use the
    raw series on a bounded disc.
    """
    a = _as_alpha(alpha)
    if isinstance(z, complex) and z.imag != 0.0:
        if z.real == 0.0:
            # I(a, i t) = 2^a Gamma(a+1) * J_a(t)/t^a-normalized: equals jn_even scaled.
            t = z.imag
            return complex(gamma(a + 1.0) * 2.0**a * jn_even(a, t))
        if abs(z) > _COMPLEX_SERIES_CAP:
            raise OverflowError(
                f"script_i series limited to |z| <= {_COMPLEX_SERIES_CAP:g} off the axes"
            )
        return _script_i_series_complex(a, complex(z))
    x = z.real if isinstance(z, complex) else float(z)
    if abs(x) > _SCRIPT_I_REAL_CAP:
        raise OverflowError(f"script_i overflows for |z| > {_SCRIPT_I_REAL_CAP:g}")
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    for n in range(1, 2000):
        term *= q / (n * (a + n))
        total += term
        if term <= 1e-17 * total:
            break
    return complex(total) if isinstance(z, complex) else total


def _script_i_series_complex(a: float, z: complex) -> complex:
    q = 0.25 * z * z
    term = 1.0 + 0.0j
    total = term
    for n in range(1, 4000):
        term *= q / (n * (a + n))
        total += term
        if abs(term) <= 1e-17 * abs(total) + 1e-300:
            break
    return total


def e_alpha(alpha, z) -> complex:
    """Dunkl kernel E_alpha(z) = I(a,z) + z/(2(a+1)) * I(a+1,z).

    Satisfies E_{-1/2}(x) = exp(x) on the real axis.  On the imaginary axis
    z = i t the value is 2^a Gamma(a+1) (g_a(t) + i t g_{a+1}(t)) with
    g_nu = J_nu(t)/t^nu, which is the numerically robust route.
    """
    a = _as_alpha(alpha)
    zc = complex(z)
    if zc.real == 0.0 and zc.imag != 0.0:
        t = zc.imag
        c = 2.0**a * gamma(a + 1.0)
        return complex(c * jn_even(a, t), c * t * jn_even(a + 1.0, t))
    ia = script_i(a, z)
    ia1 = script_i(AlphaParam(a + 1.0), z)
    out = ia + zc / (2.0 * (a + 1.0)) * ia1
    if isinstance(z, complex):
        return complex(out)
    return complex(out.real if isinstance(out, complex) else out, 0.0)


def _e_alpha_imag_axis_arrays(a: float, t: np.ndarray):
    """Real and imaginary parts of E_alpha(i t) for an array of real t."""
    c = 2.0**a * gamma(a + 1.0)
    re = c * jn_even_array(a, t)
    im = c * t * jn_even_array(a + 1.0, t)
    return re, im


@dataclass(frozen=True)
class ZeroTable:
    """Positive zeros s_1 < s_2 < ... of J_{alpha+1}, plus midpoint accessor."""

    alpha: AlphaParam
    zeros: np.ndarray = field(repr=False)
    count: int = 0

    def __post_init__(self):
        z = np.asarray(self.zeros, dtype=np.float64)
        object.__setattr__(self, "zeros", z)
        object.__setattr__(self, "count", int(z.size))
        if z.size == 0:
            raise ValueError("empty zero table")
        if float(z[0]) <= 0.0 or np.any(np.diff(z) <= 0.0):
            raise ValueError("zeros must be positive and strictly increasing")

    def s(self, j: int) -> float:
        """Signed frequency s_j (s_{-j} = -s_j, s_0 = 0)."""
        if j == 0:
            return 0.0
        if abs(j) > self.count:
            raise IndexError(f"zero index {j} beyond table of size {self.count}")
        v = float(self.zeros[abs(j) - 1])
        return v if j > 0 else -v

    def midpoint(self, n: int) -> float:
        """M_n = (s_n + s_{n+1}) / 2, the kernel truncation radius."""
        if n < 1 or n + 1 > self.count:
            raise IndexError(f"midpoint M_{n} needs zeros up to index {n + 1}")
        return 0.5 * (float(self.zeros[n - 1]) + float(self.zeros[n]))

    def to_csv(self) -> str:
        lines = ["j,s_j"]
        for j in range(1, self.count + 1):
            lines.append(f"{j},{self.zeros[j - 1]:.17g}")
        return "\n".join(lines) + "\n"


class ZeroConvergenceError(RuntimeError):
    """Root refinement failed for a specific zero index."""

    def __init__(self, index, detail):
        super().__init__(f"zero #{index} failed to converge: {detail}")
        self.index = index


_SCAN_STEP = 0.5  # below the minimal spacing (~3.1) of consecutive Bessel zeros


def build_zero_table(alpha, n_max: int) -> ZeroTable:
    """Locate the first ``n_max`` positive zeros of J_{alpha+1}.

    Sign changes of the even function J_{alpha+1}(z)/z^{alpha+1} are scanned
    on a grid of step 0.5 (no zero can be skipped), bracketed by bisection to
    width 1e-6 and polished by Newton iterations using the identity
    d/dz [z^{-nu} J_nu(z)] = -z^{-nu} J_{nu+1}(z).
    """
    a = _as_alpha(alpha)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    nu = a + 1.0
    zeros = []
    z = 1e-9
    flo = jn_even(nu, z)
    while len(zeros) < n_max:
        z_next = z + _SCAN_STEP
        f_next = jn_even(nu, z_next)
        if f_next == 0.0:
            z_next += 1e-9
            f_next = jn_even(nu, z_next)
        if (flo < 0.0) != (f_next < 0.0):
            zeros.append(_refine_zero(nu, z, z_next, len(zeros) + 1))
        z, flo = z_next, f_next
        if z > 20.0 + 4.0 * (n_max + nu):
            raise ZeroConvergenceError(len(zeros) + 1, "scan range exhausted")
    return ZeroTable(AlphaParam(a), np.array(zeros))


def _refine_zero(nu: float, lo: float, hi: float, index: int) -> float:
    flo = jn_even(nu, lo)
    # Bisect to a narrow bracket first: Newton alone can escape near small nu.
    for _ in range(200):
        if hi - lo <= 1e-6:
            break
        mid = 0.5 * (lo + hi)
        fm = jn_even(nu, mid)
        if fm == 0.0:
            lo = hi = mid
            break
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    for _ in range(60):
        f = jn_even(nu, z)
        dfdz = -z * jn_even(nu + 1.0, z)
        if dfdz == 0.0:
            raise ZeroConvergenceError(index, f"vanishing derivative at z={z!r}")
        step = f / dfdz
        z_new = z - step
        if not (lo - 1e-6 <= z_new <= hi + 1e-6):
            z_new = 0.5 * (lo + hi)  # fall back inside the bracket
        if abs(z_new - z) <= 1e-15 * abs(z):
            return z_new
        z = z_new
    if abs(jn_even(nu, z)) < 1e-11:
        return z
    raise ZeroConvergenceError(index, f"Newton stagnated at z={z!r}")
