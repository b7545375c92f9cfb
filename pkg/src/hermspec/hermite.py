"""Hermite and Laguerre evaluation kernels.

Normalized Hermite functions h_k (unit L2 norm, Gaussian weight folded in) are
evaluated by the stable three-term recurrence; the classical polynomials H_k and
L_k^alpha and the closed-form integrals built from them live here too.
All closed forms are evaluated in log-gamma space so nothing overflows below
degree a few hundred.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapabilityError

SQRT2 = math.sqrt(2.0)
PI_Q = math.pi ** -0.25  # pi^(-1/4), the h_0 amplitude


@dataclass(frozen=True)
class HermiteBasis:
    """Capacity marker plus log-normalization table for degrees 0..max_degree.

    log_c[k] = log of c_k = (2^k k! sqrt(pi))^(-1/2), the factor tying the
    unit-norm function h_k to the classical polynomial: h_k = c_k H_k e^(-t^2/2).
    """

    max_degree: int
    log_c: np.ndarray

    @classmethod
    def build(cls, max_degree: int) -> "HermiteBasis":
        if max_degree < 0:
            raise ValueError("max_degree must be >= 0")
        log_c = np.empty(max_degree + 1)
        log_c[0] = -0.25 * math.log(math.pi)
        for k in range(max_degree):
            log_c[k + 1] = log_c[k] - 0.5 * math.log(2.0 * (k + 1))
        return cls(max_degree=max_degree, log_c=log_c)

    def require(self, degree: int) -> None:
        if degree < 0:
            raise ValueError("degree must be >= 0")
        if degree > self.max_degree:
            raise CapabilityError(
                f"degree {degree} exceeds basis capacity {self.max_degree}"
            )


def eval_h_all(basis: HermiteBasis, k_max: int, t) -> np.ndarray:
    """All normalized Hermite functions h_0..h_k_max at t, shape (k_max+1,) + t.shape.

    Three-term recurrence h_{k+1} = t sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1};
    every value stays O(1), no overflow at any degree.
    """
    basis.require(k_max)
    t = np.asarray(t, dtype=float)
    out = np.empty((k_max + 1,) + t.shape)
    h0 = PI_Q * np.exp(-0.5 * t * t)
    out[0] = h0
    if k_max >= 1:
        out[1] = SQRT2 * t * h0
    for k in range(1, k_max):
        out[k + 1] = t * math.sqrt(2.0 / (k + 1)) * out[k] - math.sqrt(
            k / (k + 1.0)
        ) * out[k - 1]
    return out


def eval_h(basis: HermiteBasis, k: int, t):
    """Normalized Hermite function h_k(t)."""
    return eval_h_all(basis, k, t)[k]


def eval_h_scaled_all(basis: HermiteBasis, k_max: int, t) -> np.ndarray:
    """h_k(t) * e^(t^2/2), i.e. c_k H_k(t): the polynomial part of every h_k.

    Used where a quadrature rule supplies the Gaussian itself (Gauss-Hermite
    compensation, Laguerre-absorbed radial rules).
    """
    basis.require(k_max)
    t = np.asarray(t, dtype=float)
    out = np.empty((k_max + 1,) + t.shape)
    out[0] = np.full(t.shape, PI_Q)
    if k_max >= 1:
        out[1] = SQRT2 * PI_Q * t
    for k in range(1, k_max):
        out[k + 1] = t * math.sqrt(2.0 / (k + 1)) * out[k] - math.sqrt(
            k / (k + 1.0)
        ) * out[k - 1]
    return out


def eval_hermite_poly(k: int, t) -> np.ndarray:
    """Classical Hermite polynomial H_k(t) from its explicit alternating sum.

    Coefficients k!/(i!(k-2i)!) (-1)^i 2^(k-2i) are exact integers; fine to
    degree ~40 in float64 evaluation.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape)
    for i in range(k // 2 + 1):
        coef = (
            (-1) ** i
            * math.factorial(k)
            // (math.factorial(i) * math.factorial(k - 2 * i))
            * 2 ** (k - 2 * i)
        )
        out = out + coef * t ** (k - 2 * i)
    return out


@dataclass(frozen=True)
class LaguerreParams:
    """Degree k, type exponent alpha (> -1), and decay rate beta (> 0)."""

    degree: int
    type_exponent: float
    decay_rate: float = 1.0

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        if self.type_exponent <= -1.0:
            raise ValueError("type exponent must be > -1")
        if self.decay_rate <= 0.0:
            raise ValueError("decay rate must be > 0")


def eval_laguerre(k: int, alpha: float, u) -> np.ndarray:
    """Generalized Laguerre polynomial L_k^alpha(u) by the standard recurrence."""
    if k < 0:
        raise ValueError("k must be >= 0")
    u = np.asarray(u, dtype=float)
    prev = np.ones(u.shape)
    if k == 0:
        return prev
    cur = 1.0 + alpha - u
    for j in range(1, k):
        prev, cur = cur, ((2 * j + 1 + alpha - u) * cur - (j + alpha) * prev) / (j + 1)
    return cur


def binom_general(a: float, i: int) -> float:
    """Generalized binomial coefficient C(a, i), multiplicative (exact for small i)."""
    if i < 0:
        raise ValueError("i must be >= 0")
    out = 1.0
    for j in range(1, i + 1):
        out *= (a - j + 1) / j
    return out


def binom_general_exact(a: Fraction, i: int) -> Fraction:
    """C(a, i) in exact rational arithmetic."""
    out = Fraction(1)
    for j in range(1, i + 1):
        out *= (a - j + 1) / j
    return out


def laguerre_exp_integral(params: LaguerreParams) -> float:
    """Closed form for the Laguerre exponential integral.

    integral_0^inf L_k^alpha(u) e^(-beta u) du
        = sum_{i=0}^k C(alpha+i-1, i) (beta-1)^(k-i) / beta^(k-i+1).
    The i-th coefficient obeys term_i = term_{i-1} (alpha+i-1)/i, so the sum is
    a short stable product chain. At beta = 1 only i = k survives.
    """
    k, alpha, beta = params.degree, params.type_exponent, params.decay_rate
    term = 1.0  # C(alpha-1, 0)
    total = 0.0
    for i in range(k + 1):
        if i > 0:
            term *= (alpha + i - 1) / i
        total += term * (beta - 1.0) ** (k - i) / beta ** (k - i + 1)
    return total


def gamma_duplication_residual(z: float) -> float:
    """Relative residual of Gamma(z + 1/2) = 2^(1-2z) sqrt(pi) Gamma(2z)/Gamma(z).

    Evaluated in log space; residual is |exp(log lhs - log rhs) - 1|.
    """
    if z <= 0:
        raise ValueError("z must be > 0")
    lhs = math.lgamma(z + 0.5)
    rhs = (1.0 - 2.0 * z) * math.log(2.0) + 0.5 * math.log(math.pi) + math.lgamma(
        2.0 * z
    ) - math.lgamma(z)
    return abs(math.expm1(lhs - rhs))


def binom_reflection_residual(alpha: Fraction, k: int) -> Fraction:
    """Exact residual of C(alpha, k) = C(k - alpha - 1, k) (-1)^k in rationals."""
    lhs = binom_general_exact(Fraction(alpha), k)
    rhs = binom_general_exact(Fraction(k) - Fraction(alpha) - 1, k) * (-1) ** k
    return abs(lhs - rhs)


def half_line_integral_even(k: int) -> float:
    """integral_0^inf h_{2k}(t) dt in closed form.

    Equals 2^k Gamma(k+1/2) / (sqrt(2) sqrt((2k)! sqrt(pi))); via the duplication
    formula this is 2^(1/2-k) pi^(1/4) Gamma(2k)/(Gamma(k) sqrt((2k)!)), whose
    k = 0 reading is the limit Gamma(2k)/Gamma(k) -> 1/2. The Gamma(k+1/2) form
    needs no special case.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    lg = (
        k * math.log(2.0)
        + math.lgamma(k + 0.5)
        - 0.5 * math.log(2.0)
        - 0.5 * (math.lgamma(2 * k + 1) + 0.5 * math.log(math.pi))
    )
    return math.exp(lg)


def half_line_integral_odd(k: int) -> float:
    """integral_0^inf h_{2k+1}(t) dt in closed form.

    Prefactor 2^(k+1) k! / sqrt(2 (2k+1)! sqrt(pi)) times the alternating sum
    sum_{i<=k} C(i-1/2, i) (-1)^i (= sum_{i<=k} C(-1/2, i) by reflection).
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    lg = (
        (k + 1) * math.log(2.0)
        + math.lgamma(k + 1)
        - 0.5 * (math.log(2.0) + math.lgamma(2 * k + 2) + 0.5 * math.log(math.pi))
    )
    pref = math.exp(lg)
    total, term = 1.0, 1.0
    for i in range(1, k + 1):
        term *= (i - 0.5) / i  # C(i-1/2, i) / C(i-3/2, i-1)
        total += term * (-1) ** i
    return pref * total


def verify_laguerre_hermite_relation(
    k: int, t_samples, drop_factor_two: bool = False
) -> float:
    """Max residual of H_{2k+1}(t) = (-1)^k 2^(2k+1) k! L_k^(1/2)(t^2) t over samples.

    Residual is |lhs - rhs| / (1 + |lhs|). With drop_factor_two the deliberately
    wrong prefactor 2^(2k) is used; the residual then sits near 1/2, which is the
    negative control for the verification harness.
    """
    t = np.asarray(t_samples, dtype=float)
    lhs = eval_hermite_poly(2 * k + 1, t)
    power = 2 * k if drop_factor_two else 2 * k + 1
    rhs = (-1.0) ** k * 2.0 ** power * math.factorial(k) * eval_laguerre(
        k, 0.5, t * t
    ) * t
    return float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(lhs))))
