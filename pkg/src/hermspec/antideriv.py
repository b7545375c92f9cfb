"""Antiderivatives of the oscillator eigenfunctions and their exact norms.

The odd-degree antiderivative telescopes into a finite combination of
even-degree eigenfunctions, so it evaluates in closed form and vanishes at
both infinities.  The even-degree case uses the signed integrand, whose
antiderivative is an even function computed by panelized cumulative
Gauss-Legendre on the half line and reflected.

Squared norms come three independent ways: a closed form (2 on odd degrees; a
partial binomial sum on even degrees), a one-step recursion, and direct
quadrature.  The harness holds all three to pairwise agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.special import roots_legendre

from .errors import CapabilityError
from .hermite import HermiteBasis, eval_h_all, half_line_integral_even

SQRT2 = math.sqrt(2.0)

# cumulative quadrature: Gauss-Legendre nodes per segment, max segment width
_SEG_NODES = 12
_SEG_WIDTH = 0.25


@dataclass(frozen=True)
class AntiderivativeSeries:
    """A single antiderivative: parity, half-degree, and its evaluation route.

    Odd parity carries the exact finite expansion as (degree, coefficient)
    pairs; even parity carries no expansion and is flagged for quadrature.
    """

    parity: str
    half_degree: int
    expansion: tuple[tuple[int, float], ...]
    quadrature_fallback: bool


@dataclass(frozen=True)
class NormTable:
    """Squared norms up to a cutoff: I_odd[k] is the odd full norm,
    V_even[k] the even half norm (full norm / 2)."""

    I_odd: tuple[float, ...]
    V_even: tuple[float, ...]
    source: str


def odd_series(k: int) -> AntiderivativeSeries:
    """Exact expansion of the antiderivative of h_{2k+1} over even-degree modes.

    Unrolls the one-step reduction: each step trades the degree-(2m+1)
    integrand for a degree-2m term with coefficient -sqrt(2/(2m+1)) plus a
    sqrt(2m/(2m+1))-scaled copy of the next problem down, bottoming out at the
    pure Gaussian with total coefficient -sqrt(2) * prefix product.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    pairs = []
    prefix = 1.0
    for i in range(k):
        pairs.append((2 * k - 2 * i, -math.sqrt(2.0 / (2 * k + 1 - 2 * i)) * prefix))
        prefix *= math.sqrt((2 * k - 2 * i) / (2 * k + 1 - 2 * i))
    pairs.append((0, -SQRT2 * prefix))
    return AntiderivativeSeries("odd", k, tuple(pairs), False)


def even_series(k: int) -> AntiderivativeSeries:
    if k < 0:
        raise ValueError("k must be >= 0")
    return AntiderivativeSeries("even", k, (), True)


def x_odd(basis: HermiteBasis, k: int, x) -> np.ndarray:
    """Antiderivative of h_{2k+1}, vanishing at both infinities, via its expansion."""
    basis.require(2 * k + 1)
    series = odd_series(k)
    t = np.asarray(x, dtype=float)
    h = eval_h_all(basis, 2 * k, t)
    out = np.zeros_like(t)
    for degree, coeff in series.expansion:
        out += coeff * h[degree]
    return out


def _cumulative_half_line(basis: HermiteBasis, degree: int, targets: np.ndarray) -> np.ndarray:
    """integral_0^t h_degree for each t in targets (nonnegative, ascending)."""
    x_ref, w_ref = roots_legendre(_SEG_NODES)
    edges = [0.0]
    target_idx = []
    for t in targets:
        prev = edges[-1]
        gap = t - prev
        if gap <= 0.0:
            target_idx.append(len(edges) - 1)
            continue
        n_sub = max(1, int(math.ceil(gap / _SEG_WIDTH)))
        for j in range(1, n_sub):
            edges.append(prev + gap * j / n_sub)
        edges.append(t)
        target_idx.append(len(edges) - 1)
    edges = np.asarray(edges)
    if len(edges) == 1:
        return np.zeros(len(targets))
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x_ref[None, :]).ravel()
    vals = eval_h_all(basis, degree, nodes)[degree].reshape(-1, _SEG_NODES)
    seg = (vals * w_ref[None, :]).sum(axis=1) * half
    cum = np.concatenate(([0.0], np.cumsum(seg)))
    return cum[np.asarray(target_idx, dtype=int)]


def x_even(basis: HermiteBasis, k: int, x) -> np.ndarray:
    """Antiderivative of sign(t) h_{2k}(t), an even function vanishing at infinity.

    Equals integral_0^|x| h_{2k} minus the half-line integral; computed by
    cumulative panel quadrature on the half line and reflected.
    """
    basis.require(2 * k)
    t = np.asarray(x, dtype=float)
    flat = np.abs(t).ravel()
    order = np.argsort(flat)
    sorted_vals = _cumulative_half_line(basis, 2 * k, flat[order])
    out = np.empty_like(flat)
    out[order] = sorted_vals
    out -= half_line_integral_even(k)
    return out.reshape(t.shape)


def norm_sq_odd_closed(k: int) -> float:
    """Squared norm of the odd antiderivative; identically 2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return 2.0


def norm_sq_odd_recursive(k: int) -> float:
    """Iterates I_{2k+1} = 2/(2k+1) + (2k/(2k+1)) I_{2k-1} up from I_1 = 2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    val = 2.0
    for j in range(1, k + 1):
        val = 2.0 / (2 * j + 1) + (2 * j / (2 * j + 1)) * val
    return val


def norm_sq_odd_expansion(k: int) -> float:
    """Sum of squared expansion coefficients (orthonormality makes this the norm)."""
    return math.fsum(c * c for _, c in odd_series(k).expansion)


def partial_binomial_sum(k: int, numerator: float) -> float:
    """sum_{i=0}^k C(numerator, i) for numerator +1/2 or -1/2, terms built multiplicatively."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if numerator not in (0.5, -0.5):
        raise ValueError("numerator must be +1/2 or -1/2")
    term = 1.0
    total = 1.0
    for i in range(k):
        term *= (numerator - i) / (i + 1)
        total += term
    return total


def partial_binomial_sum_exact(k: int, numerator: Fraction) -> Fraction:
    term = Fraction(1)
    total = Fraction(1)
    for i in range(k):
        term *= Fraction(numerator - i, i + 1)
        total += term
    return total


def norm_sq_even_closed(k: int) -> float:
    """2(-1 + sqrt(2) * sum_{i<=k} C(1/2, i)); at most 3, tending to 2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return 2.0 * (-1.0 + SQRT2 * partial_binomial_sum(k, 0.5))


def norm_sq_even_recursive(k: int) -> float:
    """Iterates the even half-norm recursion from V_0 = sqrt(2) - 1; returns 2 V_{2k}."""
    if k < 0:
        raise ValueError("k must be >= 0")
    v = SQRT2 - 1.0
    for j in range(k):
        v = (
            -1.0 / (2 * j + 2)
            + (SQRT2 / (j + 1)) * partial_binomial_sum(j, -0.5)
            + ((2 * j + 1) / (2 * j + 2)) * v
        )
    return 2.0 * v


def _norm_rule(k_max: int, refine: int = 1) -> tuple[np.ndarray, np.ndarray]:
    T = math.sqrt(2.0 * (2 * k_max + 1)) + 10.0
    x_ref, w_ref = roots_legendre(16)
    n_panels = int(math.ceil(2.0 * T)) * max(1, int(refine))
    edges = np.linspace(0.0, T, n_panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x_ref[None, :]).ravel()
    weights = (half[:, None] * w_ref[None, :]).ravel()
    return nodes, weights


def norm_sq_odd_quadrature(basis: HermiteBasis, k: int, refine: int = 1) -> float:
    """Direct quadrature of the squared odd antiderivative over the line."""
    nodes, weights = _norm_rule(k, refine)
    vals = x_odd(basis, k, nodes)
    return 2.0 * float(np.dot(weights, vals * vals))


def norm_sq_even_quadrature(basis: HermiteBasis, k: int, refine: int = 1) -> float:
    """Direct quadrature of the squared even antiderivative over the line."""
    nodes, weights = _norm_rule(k, refine)
    vals = x_even(basis, k, nodes)
    return 2.0 * float(np.dot(weights, vals * vals))


def norm_table(k_max: int, source: str, basis: HermiteBasis | None = None) -> NormTable:
    """Tabulates odd full norms and even half norms for k = 0..k_max from one source."""
    if source == "closed_form":
        odd = tuple(norm_sq_odd_closed(k) for k in range(k_max + 1))
        even = tuple(0.5 * norm_sq_even_closed(k) for k in range(k_max + 1))
    elif source == "recursion":
        odd = tuple(norm_sq_odd_recursive(k) for k in range(k_max + 1))
        even = tuple(0.5 * norm_sq_even_recursive(k) for k in range(k_max + 1))
    elif source == "quadrature":
        if basis is None:
            basis = HermiteBasis.build(2 * k_max + 1)
        basis.require(2 * k_max + 1)
        odd = tuple(norm_sq_odd_quadrature(basis, k) for k in range(k_max + 1))
        even = tuple(0.5 * norm_sq_even_quadrature(basis, k) for k in range(k_max + 1))
    else:
        raise ValueError("source must be closed_form, recursion, or quadrature")
    return NormTable(odd, even, source)


def x_even_at_zero_sq(k: int) -> float:
    """Squared value at the origin: one quarter of the squared full-line integral."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return 0.25 * (2.0 * half_line_integral_even(k)) ** 2


def x_even_at_zero_normalized(k: int) -> float:
    """x_even_at_zero_sq(k) * sqrt(2k), the quantity that stays bounded in k."""
    if k < 1:
        raise ValueError("k must be >= 1 for the normalized bound")
    return x_even_at_zero_sq(k) * math.sqrt(2.0 * k)


def merge_identity_check(k: int) -> float:
    """Residual of the partial-sum merge identity in floating point."""
    lhs = partial_binomial_sum(k, -0.5) / (k + 1) + (
        (2 * k + 1) / (2 * k + 2)
    ) * partial_binomial_sum(k, 0.5)
    rhs = partial_binomial_sum(k + 1, 0.5)
    return abs(lhs - rhs)


def merge_identity_exact(k: int) -> Fraction:
    """Same residual in exact rational arithmetic; zero when the identity holds."""
    half = Fraction(1, 2)
    lhs = partial_binomial_sum_exact(k, -half) / (k + 1) + Fraction(
        2 * k + 1, 2 * k + 2
    ) * partial_binomial_sum_exact(k, half)
    rhs = partial_binomial_sum_exact(k + 1, half)
    return lhs - rhs
