# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython backend mirroring ``fourier_dunkl._core.pure`` kernel by kernel."""

from libc.math cimport cos, exp, fabs, sin, sqrt, INFINITY, M_PI, pow

import numpy as np

BACKEND = "cython"

Z_CAP = 1.0e8

cdef double _Z_CAP = 1.0e8
cdef double _Z_SWITCH = 12.0
cdef int _ASYM_TERMS = 25
cdef double _SQRT_TWO_PI = sqrt(2.0 * M_PI)

cdef double[9] _LANCZOS_COEF = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
]


cdef double _gamma_pos(double x):
    # Lanczos sum for x >= 0.5.
    cdef double acc = _LANCZOS_COEF[0]
    cdef double t
    cdef int i
    x = x - 1.0
    for i in range(1, 9):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + 7.5
    return _SQRT_TWO_PI * pow(t, x + 0.5) * exp(-t) * acc


cdef double _gamma(double x) except? -1e308:
    cdef double s
    if x != x:
        return x
    if x < 0.5:
        s = sin(M_PI * x)
        if s == 0.0:
            raise ValueError(f"gamma pole at x={x!r}")
        return M_PI / (s * _gamma(1.0 - x))
    return _gamma_pos(x)


def gamma(double x):
    """Gamma function via the Lanczos approximation (reflection for x < 0.5)."""
    return _gamma(x)


cdef double _series_scalar(double nu, double z, double t0) nogil:
    cdef double q = 0.25 * z * z
    cdef double term = t0
    cdef double total = term
    cdef int n
    for n in range(1, 60):
        term *= -q / (n * (nu + n))
        total += term
        if fabs(term) <= 1e-17 * fabs(total) + 1e-300:
            break
    return total


cdef double _asym_scalar(double nu, double z) nogil:
    cdef double mu = 4.0 * nu * nu
    cdef double p = 1.0
    cdef double q = 0.0
    cdef double ak = 1.0
    cdef double zk = 1.0
    cdef double prev = INFINITY
    cdef double t, omega, bessel, sign
    cdef int k
    for k in range(1, _ASYM_TERMS):
        ak *= (mu - (2.0 * k - 1.0) ** 2) / (8.0 * k)
        zk *= z
        t = ak / zk
        if fabs(t) >= prev:
            break
        prev = fabs(t)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            p += sign * t
        else:
            q += sign * t
    omega = z - nu * (0.5 * M_PI) - 0.25 * M_PI
    bessel = sqrt(2.0 / (M_PI * z)) * (p * cos(omega) - q * sin(omega))
    return bessel / pow(z, nu)


def jn_even(double nu, double z):
    """The even entire function J_nu(z)/z^nu, defined by its power series."""
    z = fabs(z)
    if z > _Z_CAP:
        raise OverflowError(f"|z|={z:g} beyond supported range {_Z_CAP:g}")
    cdef double cut = _Z_SWITCH
    if 2.0 * fabs(nu) > cut:
        cut = 2.0 * fabs(nu)
    if z <= cut:
        return _series_scalar(nu, z, pow(0.5, nu) / _gamma(nu + 1.0))
    return _asym_scalar(nu, z)


def jn_even_array(double nu, z):
    """Vectorized ``jn_even`` over a float array."""
    cdef double[::1] zv = np.ascontiguousarray(np.abs(z), dtype=np.float64).ravel()
    out_arr = np.empty(zv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out_arr
    cdef double cut = _Z_SWITCH
    if 2.0 * fabs(nu) > cut:
        cut = 2.0 * fabs(nu)
    cdef double t0 = pow(0.5, nu) / _gamma(nu + 1.0)
    cdef Py_ssize_t i, n = zv.shape[0]
    for i in range(n):
        if zv[i] > _Z_CAP:
            raise OverflowError(f"|z|={zv[i]:g} beyond supported range {_Z_CAP:g}")
    with nogil:
        for i in range(n):
            if zv[i] <= cut:
                ov[i] = _series_scalar(nu, zv[i], t0)
            else:
                ov[i] = _asym_scalar(nu, zv[i])
    return out_arr.reshape(np.shape(z))
