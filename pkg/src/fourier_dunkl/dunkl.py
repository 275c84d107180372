"""The Fourier-Dunkl orthonormal system on (-1,1) and its kernel machinery.

Functions e_j (j in Z) built from the Dunkl kernel at the Bessel frequencies
s_j, coefficients and partial sums, the Dirichlet-type kernel K_n in summed
and closed forms, the off-diagonal surrogate B(M,x,y), the remainder bound,
and the three-term splitting of the partial-sum operator.
"""

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ._core import gamma, jn_even, jn_even_array
from ._quad import integrate_graded, pv_hilbert
from .measure import QuadratureRule, integrate
from .specfun import AlphaParam, ZeroTable, build_zero_table

__all__ = [
    "DunklSystem",
    "SeriesExpansion",
    "KernelEval",
    "eval_e",
    "expand",
    "partial_sum",
    "kernel_direct",
    "kernel_closed_sum_form",
    "kernel_matrix",
    "b_function",
    "b_pair_closed",
    "kernel_grid_csv",
    "remainder_bound_check",
    "remainder_grid",
    "t_split",
]


@dataclass(frozen=True)
class DunklSystem:
    """Orthonormal system data: zeros table plus cached normalization constants.

    ``norm_constants[j-1]`` stores 2^{a/2} Gamma(a+1)^{1/2} / |I_a(i s_j)|,
    the multiplier in front of E_a(i s_j x).
    """

    alpha: AlphaParam
    zeros: ZeroTable
    norm_constants: np.ndarray = field(repr=False, default=None)
    e0: float = 0.0

    def __post_init__(self):
        a = self.alpha.alpha
        if self.zeros.alpha.alpha != a:
            raise ValueError("zero table alpha does not match system alpha")
        s = self.zeros.zeros
        g_at_zeros = jn_even_array(a, s)
        scripti = 2.0**a * gamma(a + 1.0) * np.abs(g_at_zeros)
        const = 2.0 ** (a / 2.0) * math.sqrt(gamma(a + 1.0)) / scripti
        object.__setattr__(self, "norm_constants", const)
        object.__setattr__(self, "e0", 2.0 ** ((a + 1.0) / 2.0) * math.sqrt(gamma(a + 2.0)))

    @classmethod
    def build(cls, alpha, n_max: int) -> "DunklSystem":
        ap = alpha if isinstance(alpha, AlphaParam) else AlphaParam(alpha)
        return cls(ap, build_zero_table(ap, n_max))

    @property
    def count(self) -> int:
        return self.zeros.count


def _e_rows(system: DunklSystem, j_max: int, x: np.ndarray) -> np.ndarray:
    """Matrix e_j(x_i) for j = 1..j_max over an array of points (complex)."""
    a = system.alpha.alpha
    s = system.zeros.zeros[:j_max]
    prefac = 2.0**a * gamma(a + 1.0) * system.norm_constants[:j_max]
    arg = np.multiply.outer(s, x)
    re = jn_even_array(a, arg.ravel()).reshape(arg.shape)
    im = arg * jn_even_array(a + 1.0, arg.ravel()).reshape(arg.shape)
    return prefac[:, None] * (re + 1j * im)


def eval_e(system: DunklSystem, j: int, x):
    """e_j at a point or array: e_0 is constant, e_{-j} = conj(e_j) on the reals."""
    scalar = np.isscalar(x)
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(np.abs(xs) >= 1.0):
        raise ValueError("eval_e requires x in (-1,1)")
    if abs(j) > system.count:
        raise IndexError(f"mode {j} beyond the zero table (count={system.count})")
    if j == 0:
        vals = np.full(xs.shape, complex(system.e0))
    else:
        row = _e_rows(system, abs(j), xs)[abs(j) - 1]
        vals = row if j > 0 else np.conj(row)
    return complex(vals[0]) if scalar else vals


@dataclass(frozen=True)
class SeriesExpansion:
    """Fourier-Dunkl coefficients c_j, |j| <= degree."""

    alpha: AlphaParam
    coefficients: dict
    degree: int

    def c(self, j: int) -> complex:
        return self.coefficients[j]

    def to_csv(self) -> str:
        lines = ["j,re_cj,im_cj"]
        for j in range(-self.degree, self.degree + 1):
            cj = self.coefficients[j]
            lines.append(f"{j},{cj.real:.17g},{cj.imag:.17g}")
        return "\n".join(lines) + "\n"


def expand(system: DunklSystem, rule: QuadratureRule, f, n: int) -> SeriesExpansion:
    """Coefficients c_j = integral f conj(e_j) d mu_alpha for |j| <= n."""
    if n > system.count:
        raise IndexError(f"degree {n} beyond the zero table (count={system.count})")
    if rule.alpha.alpha != system.alpha.alpha:
        raise ValueError("rule alpha does not match system alpha")
    fw = np.asarray([f(float(x)) for x in rule.nodes]) if not _vectorizable(f, rule.nodes) \
        else np.asarray(f(rule.nodes))
    fw = fw * rule.weights
    coeffs = {0: complex(np.sum(fw) * system.e0)}
    if n >= 1:
        rows = _e_rows(system, n, rule.nodes)
        plus = rows.conj() @ fw
        minus = rows @ fw
        for j in range(1, n + 1):
            coeffs[j] = complex(plus[j - 1])
            coeffs[-j] = complex(minus[j - 1])
    return SeriesExpansion(system.alpha, coeffs, n)


def _vectorizable(f, nodes) -> bool:
    try:
        v = np.asarray(f(nodes))
        return v.shape == np.shape(nodes)
    except Exception:
        return False


def partial_sum(expansion: SeriesExpansion, system: DunklSystem, x):
    """S_n f at a point or array: sum of c_j e_j(x) over |j| <= degree."""
    scalar = np.isscalar(x)
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    n = expansion.degree
    out = np.full(xs.shape, expansion.coefficients[0] * system.e0, dtype=np.complex128)
    if n >= 1:
        rows = _e_rows(system, n, xs)
        for j in range(1, n + 1):
            out += expansion.coefficients[j] * rows[j - 1]
            out += expansion.coefficients[-j] * np.conj(rows[j - 1])
    return complex(out[0]) if scalar else out


def kernel_direct(system: DunklSystem, n: int, x: float, y: float) -> float:
    """K_n(x,y) as the summed sesquilinear form; asserts a tiny imaginary residue."""
    if n > system.count:
        raise IndexError(f"kernel degree {n} beyond the zero table")
    total = complex(system.e0) * system.e0
    if n >= 1:
        ex = _e_rows(system, n, np.array([x]))[:, 0]
        ey = _e_rows(system, n, np.array([y]))[:, 0]
        total += np.sum(ex * np.conj(ey)) + np.sum(np.conj(ex) * ey)
    resid = abs(total.imag)
    if resid > 1e-9 * (1.0 + abs(total)):
        raise ArithmeticError(f"kernel imaginary residue {resid:g} too large")
    return float(total.real)


def kernel_matrix(system: DunklSystem, n: int, xs: np.ndarray) -> np.ndarray:
    """K_n(x_i, x_k) over a grid, as a real symmetric matrix."""
    xs = np.asarray(xs, dtype=np.float64)
    base = np.full((xs.size, xs.size), system.e0 * system.e0)
    if n >= 1:
        rows = _e_rows(system, n, xs)
        base += 2.0 * np.real(rows.conj().T @ rows)
    return base


def kernel_closed_sum_form(system: DunklSystem, n: int, x: float, y: float) -> float:
    """K_n via the Bessel-product closed form; requires x, y != 0.

    K_n = 2^{a+1} Gamma(a+2) + 2^{a+1} Gamma(a+1) |xy|^{-a} *
          sum_j [J_a(s_j|x|) J_a(s_j|y|) + sign(xy) J_{a+1}(s_j|x|) J_{a+1}(s_j|y|)]
          / J_a(s_j)^2.
    """
    if x == 0.0 or y == 0.0:
        raise ValueError("closed kernel form is singular at x=0 or y=0; use kernel_direct")
    if n > system.count:
        raise IndexError(f"kernel degree {n} beyond the zero table")
    a = system.alpha.alpha
    out = 2.0 ** (a + 1.0) * gamma(a + 2.0)
    if n == 0:
        return out
    s = system.zeros.zeros[:n]
    ax, ay = abs(x), abs(y)
    ja_x = (s * ax) ** a * jn_even_array(a, s * ax)
    ja_y = (s * ay) ** a * jn_even_array(a, s * ay)
    ja1_x = (s * ax) ** (a + 1.0) * jn_even_array(a + 1.0, s * ax)
    ja1_y = (s * ay) ** (a + 1.0) * jn_even_array(a + 1.0, s * ay)
    ja_s = s**a * jn_even_array(a, s)
    sgn = 1.0 if x * y > 0.0 else -1.0
    series = np.sum((ja_x * ja_y + sgn * ja1_x * ja1_y) / ja_s**2)
    return out + 2.0 ** (a + 1.0) * gamma(a + 1.0) / (ax * ay) ** a * float(series)


def b_function(system: DunklSystem, m_trunc: float, x: float, y: float) -> float:
    """B(M,x,y) = 2^a Gamma(a+1) M x J_{a+1}(M|x|) J_a(M|y|) / (|x|^{a+1} |y|^a (x-y))."""
    if x == y:
        raise ValueError("B(M,x,y) has a pole at x=y")
    if x == 0.0 or y == 0.0:
        raise ValueError("B(M,x,y) requires x, y != 0")
    a = system.alpha.alpha
    ja1 = (m_trunc * abs(x)) ** (a + 1.0) * jn_even(a + 1.0, m_trunc * abs(x))
    ja = (m_trunc * abs(y)) ** a * jn_even(a, m_trunc * abs(y))
    return (2.0**a * gamma(a + 1.0) * m_trunc * x * ja1 * ja
            / (abs(x) ** (a + 1.0) * abs(y) ** a * (x - y)))


def b_pair_closed(system: DunklSystem, m_trunc: float, x: float, y: float) -> float:
    """B(M,x,y) + B(M,y,x) via the modified-function product identity.

    Equals M^{2(a+1)} / (2^{a+1} Gamma(a+2)) *
    (x I_{a+1}(iMx) I_a(iMy) - y I_{a+1}(iMy) I_a(iMx)) / (x - y), which is
    also the integral of E_a(izx) conj(E_a(izy)) d mu_a(z) over (-M, M).
    """
    if x == y:
        raise ValueError("pole at x=y")
    a = system.alpha.alpha
    ia_x = 2.0**a * gamma(a + 1.0) * jn_even(a, m_trunc * x)
    ia_y = 2.0**a * gamma(a + 1.0) * jn_even(a, m_trunc * y)
    ia1_x = 2.0 ** (a + 1.0) * gamma(a + 2.0) * jn_even(a + 1.0, m_trunc * x)
    ia1_y = 2.0 ** (a + 1.0) * gamma(a + 2.0) * jn_even(a + 1.0, m_trunc * y)
    num = x * ia1_x * ia_y - y * ia1_y * ia_x
    return (m_trunc ** (2.0 * (a + 1.0)) / (2.0 ** (a + 1.0) * gamma(a + 2.0))
            * num / (x - y))


def remainder_bound_check(system: DunklSystem, n: int, x: float, y: float):
    """Residual |K_n - B(M_n,x,y) - B(M_n,y,x)| and the envelope it is tested against.

    The envelope is |xy|^{-(a+1/2)} / (2-x-y) + 1; the multiplicative constant
    is existential, so callers fit it over sweeps.
    """
    a = system.alpha.alpha
    m_trunc = system.zeros.midpoint(n)
    kernel = kernel_direct(system, n, x, y)
    b_sum = b_function(system, m_trunc, x, y) + b_function(system, m_trunc, y, x)
    residual = abs(kernel - b_sum)
    bound = abs(x * y) ** (-(a + 0.5)) / (2.0 - x - y) + 1.0
    return residual, bound


def remainder_grid(system: DunklSystem, n: int, xs: np.ndarray, ys: np.ndarray):
    """Vectorized residual/bound matrices over a grid (for kernel sweeps).

    Entries where x==y or x*y==0 come out non-finite and must be masked by
    the caller; the returned matrices are indexed [i,j] ~ (xs[i], ys[j]).
    """
    a = system.alpha.alpha
    m_trunc = system.zeros.midpoint(n)
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    base = np.full((xs.size, ys.size), system.e0 * system.e0)
    if n >= 1:
        rows_x = _e_rows(system, n, xs)
        rows_y = _e_rows(system, n, ys)
        base += 2.0 * np.real(rows_x.conj().T @ rows_y)
    c = 2.0**a * gamma(a + 1.0) * m_trunc
    with np.errstate(divide="ignore", invalid="ignore"):
        ax, ay = np.abs(xs), np.abs(ys)
        ja1_x = (m_trunc * ax) ** (a + 1.0) * jn_even_array(a + 1.0, m_trunc * ax)
        ja_x = (m_trunc * ax) ** a * jn_even_array(a, m_trunc * ax)
        ja1_y = (m_trunc * ay) ** (a + 1.0) * jn_even_array(a + 1.0, m_trunc * ay)
        ja_y = (m_trunc * ay) ** a * jn_even_array(a, m_trunc * ay)
        dx = xs[:, None] - ys[None, :]
        b1 = c * (xs * ja1_x / ax ** (a + 1.0))[:, None] * (ja_y / ay**a)[None, :] / dx
        b2 = c * (ys * ja1_y / ay ** (a + 1.0))[None, :] * (ja_x / ax**a)[:, None] / (-dx)
        residual = np.abs(base - b1 - b2)
        bound = (ax[:, None] * ay[None, :]) ** (-(a + 0.5)) / (2.0 - xs[:, None] - ys[None, :]) + 1.0
    return residual, bound


def kernel_grid_csv(system: DunklSystem, n: int, xs, ys) -> str:
    """CSV export of kernel comparisons: x,y,K_direct,B_sum,residual,bound.

    Points on the diagonal or the axes (where B is undefined) are skipped.
    """
    m_trunc = system.zeros.midpoint(n)
    lines = ["x,y,K_direct,B_sum,residual,bound"]
    for x in np.asarray(xs, dtype=np.float64):
        for y in np.asarray(ys, dtype=np.float64):
            if x == y or x * y == 0.0:
                continue
            direct = kernel_direct(system, n, float(x), float(y))
            b_sum = (b_function(system, m_trunc, float(x), float(y))
                     + b_function(system, m_trunc, float(y), float(x)))
            residual, bound = remainder_bound_check(system, n, float(x), float(y))
            lines.append(
                f"{x:.17g},{y:.17g},{direct:.17g},{b_sum:.17g},{residual:.17g},{bound:.17g}"
            )
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class KernelEval:
    """One kernel comparison point: summed form, closed form, remainder data."""

    n: int
    x: float
    y: float
    direct: complex
    closed: float
    remainder_bound: float


def kernel_eval(system: DunklSystem, n: int, x: float, y: float) -> KernelEval:
    direct = kernel_direct(system, n, x, y)
    closed = kernel_closed_sum_form(system, n, x, y)
    _, bound = remainder_bound_check(system, n, x, y)
    return KernelEval(n, x, y, complex(direct), closed, bound)


def s_n_via_kernel(system: DunklSystem, rule: QuadratureRule, f, n: int, x: float) -> float:
    """S_n f(x) as the kernel integral against the rule (real part)."""
    fv = np.asarray([f(float(t)) for t in rule.nodes]) if not _vectorizable(f, rule.nodes) \
        else np.asarray(f(rule.nodes))
    krow = np.full(rule.nodes.shape, system.e0 * system.e0)
    if n >= 1:
        rows = _e_rows(system, n, rule.nodes)
        ex = _e_rows(system, n, np.array([x]))[:, 0]
        krow = krow + 2.0 * np.real(np.conj(ex) @ rows)
    return float(np.sum(rule.weights * krow * fv))


def t_split(system: DunklSystem, rule: QuadratureRule, f, n: int, x: float):
    """Split S_n f(x) into the two Hilbert-type principal-value pieces and a rest.

    t1 integrates f against B(M_n, x, .), t2 against B(M_n, ., x) (both as
    principal values through the pole at y=x), and t3 is the remainder
    S_n f(x) - t1 - t2, which the kernel bound controls.
    """
    if x == 0.0:
        raise ValueError("t_split requires x != 0")
    if not -1.0 < x < 1.0:
        raise ValueError("x must lie in (-1,1)")
    a = system.alpha.alpha
    m_trunc = system.zeros.midpoint(n)
    sq_m = math.sqrt(m_trunc)

    def phi1(y):
        # f(y) M^{1/2} J_a(M|y|) |y|^{a+1}
        y = np.asarray(y, dtype=np.float64)
        ay = np.abs(y)
        return (_f_vals(f, y) * sq_m * (m_trunc * ay) ** a
                * jn_even_array(a, m_trunc * ay) * ay ** (a + 1.0))

    def phi2(y):
        # f(y) y M^{1/2} J_{a+1}(M|y|) |y|^a
        y = np.asarray(y, dtype=np.float64)
        ay = np.abs(y)
        return (_f_vals(f, y) * y * sq_m * (m_trunc * ay) ** (a + 1.0)
                * jn_even_array(a + 1.0, m_trunc * ay) * ay**a)

    # oscillation-resolving panel splits at the J(M y) scale
    step = max(math.pi / m_trunc, 1e-3)
    cuts = tuple(np.arange(-1.0 + step, 1.0 - 0.5 * step, step))
    pre1 = sq_m * x * (m_trunc * abs(x)) ** (a + 1.0) * jn_even(a + 1.0, m_trunc * abs(x)) \
        / (2.0 * abs(x) ** (a + 1.0))
    pre2 = sq_m * (m_trunc * abs(x)) ** a * jn_even(a, m_trunc * abs(x)) / (2.0 * abs(x) ** a)
    t1 = pre1 * pv_hilbert(phi1, x, -1.0, 1.0, breakpoints=cuts, singular=(0.0,))
    t2 = -pre2 * pv_hilbert(phi2, x, -1.0, 1.0, breakpoints=cuts, singular=(0.0,))
    s_n = s_n_via_kernel(system, rule, f, n, x)
    return t1, t2, s_n - t1 - t2


def _f_vals(f, y: np.ndarray) -> np.ndarray:
    try:
        v = np.asarray(f(y), dtype=np.float64)
        if v.shape == y.shape:
            return v
    except Exception:
        pass
    return np.asarray([f(float(t)) for t in np.atleast_1d(y)], dtype=np.float64)
