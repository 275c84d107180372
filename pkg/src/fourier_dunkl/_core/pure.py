"""Pure-numpy backend for the hot special-function kernels.

Everything here reduces to two primitives:

* ``gamma`` -- Lanczos approximation of the Gamma function,
* ``jn_even`` / ``jn_even_array`` -- the even entire function J_nu(z)/z^nu,
  evaluated by its power series for small |z| and by the Hankel-type
  asymptotic expansion for large |z|.

The Cython backend in ``_speedups.pyx`` mirrors this module function by
function; both are selected through ``fourier_dunkl._core``.
"""

import math

import numpy as np

BACKEND = "pure"

# Lanczos g=7, 9-term coefficient set (relative error well below 1e-13 on the
# positive axis, which is all the library needs: arguments are nu+1 > 0).
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)

# Series/asymptotic switchover; below this the alternating power series keeps
# its cancellation error under ~2e-12, above it the asymptotic tail terms
# reach the same scale.  Callers with large |nu| get max(12, 2|nu|).
_Z_SWITCH = 12.0

# a_k coefficients of the Hankel expansion are used up to k=24: for z >= 12
# the terms are still decreasing at k=24, so truncation error is near the
# optimal ~e^{-2z} floor.
_ASYM_TERMS = 25

# Largest |z| for which the cos/sin phase z - nu*pi/2 - pi/4 retains enough
# absolute accuracy (~1e-8 of a period at 1e8).
Z_CAP = 1.0e8


def gamma(x: float) -> float:
    """Gamma function via the Lanczos approximation (reflection for x < 0.5)."""
    if x != x:
        return x
    if x < 0.5:
        s = math.sin(math.pi * x)
        if s == 0.0:
            raise ValueError(f"gamma pole at x={x!r}")
        return math.pi / (s * gamma(1.0 - x))
    x = x - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (x + i)
    t = x + 7.5
    return _SQRT_TWO_PI * t ** (x + 0.5) * math.exp(-t) * acc


def _series_scalar(nu: float, z: float) -> float:
    q = 0.25 * z * z
    term = 0.5**nu / gamma(nu + 1.0)
    total = term
    for n in range(1, 60):
        term *= -q / (n * (nu + n))
        total += term
        if abs(term) <= 1e-17 * abs(total) + 1e-300:
            break
    return total


def _asym_scalar(nu: float, z: float) -> float:
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    ak = 1.0
    zk = 1.0
    prev = math.inf
    for k in range(1, _ASYM_TERMS):
        ak *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k)
        zk *= z
        t = ak / zk
        if abs(t) >= prev:
            break
        prev = abs(t)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sign * t
        else:
            q += sign * t
    omega = z - nu * (0.5 * math.pi) - 0.25 * math.pi
    bessel = math.sqrt(2.0 / (math.pi * z)) * (p * math.cos(omega) - q * math.sin(omega))
    return bessel / z**nu


def jn_even(nu: float, z: float) -> float:
    """The even entire function J_nu(z)/z^nu, defined by its power series."""
    z = abs(z)
    if z > Z_CAP:
        raise OverflowError(f"|z|={z:g} beyond supported range {Z_CAP:g}")
    if z <= max(_Z_SWITCH, 2.0 * abs(nu)):
        return _series_scalar(nu, z)
    return _asym_scalar(nu, z)


def jn_even_array(nu: float, z: np.ndarray) -> np.ndarray:
    """Vectorized ``jn_even`` over a float array."""
    z = np.abs(np.asarray(z, dtype=np.float64))
    if z.size and float(np.max(z)) > Z_CAP:
        raise OverflowError(f"max |z|={float(np.max(z)):g} beyond supported range {Z_CAP:g}")
    out = np.empty_like(z)
    cut = max(_Z_SWITCH, 2.0 * abs(nu))
    small = z <= cut

    zs = z[small]
    if zs.size:
        q = 0.25 * zs * zs
        term = np.full_like(zs, 0.5**nu / gamma(nu + 1.0))
        total = term.copy()
        for n in range(1, 60):
            term = term * (-q) / (n * (nu + n))
            total += term
            if float(np.max(np.abs(term))) <= 1e-17 * max(float(np.min(np.abs(total))), 1e-300):
                break
        out[small] = total

    zl = z[~small]
    if zl.size:
        mu = 4.0 * nu * nu
        p = np.ones_like(zl)
        q = np.zeros_like(zl)
        ak = 1.0
        zk = np.ones_like(zl)
        prev = np.full_like(zl, np.inf)
        alive = np.ones(zl.shape, dtype=bool)
        for k in range(1, _ASYM_TERMS):
            ak *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k)
            zk = zk * zl
            t = ak / zk
            at = np.abs(t)
            alive &= at < prev
            prev = at
            sign = -1.0 if (k // 2) % 2 else 1.0
            if k % 2 == 0:
                p += np.where(alive, sign * t, 0.0)
            else:
                q += np.where(alive, sign * t, 0.0)
        omega = zl - nu * (0.5 * math.pi) - 0.25 * math.pi
        bessel = np.sqrt(2.0 / (math.pi * zl)) * (p * np.cos(omega) - q * np.sin(omega))
        out[~small] = bessel / zl**nu
    return out
