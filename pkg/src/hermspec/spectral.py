"""n-dimensional eigenbasis calculus for the harmonic oscillator.

Eigenspaces are indexed by multi-indices; the eigenfunction attached to alpha
is the product of 1D modes and has eigenvalue 2|alpha| + n.  The propagator
just rotates coefficient phases, so every time-averaged weighted functional
reduces to a level-by-level spatial integral; this module never integrates in
time (a direct time quadrature exists only as a test oracle).

Level integrals carry singular radial weights on a subset of the axes.  They
are computed on a product grid: absorbing radial rule (exact for polynomial
levels), antipodally symmetric directions (so odd-in-r cross terms cancel
exactly), and compensated Gauss-Hermite on the remaining axes.

The Fourier convention throughout is the unitary angular-frequency transform
(2*pi)^(-1/2) integral f(x) e^(-i x xi) dx, under which the 1D mode of degree
k maps to (-i)^k times itself; this is the convention that makes the
transform of a state just a phase twist of its coefficients.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapabilityError, ToleranceError
from .hermite import HermiteBasis, eval_h_all
from .quadrature import (
    circle_directions,
    gauss_hermite,
    gauss_legendre_panels,
    radial_rule_absorbing,
    sphere_directions,
    truncation_radius,
)

TWO_PI = 2.0 * math.pi

MultiIndex = tuple  # n-tuple of nonnegative ints

_MAX_LEVEL_SIZE = 2_000_000


@dataclass(frozen=True)
class EigenLevel:
    """One eigenspace: level k in dimension n, eigenvalue 2k + n."""

    n: int
    k: int
    eigenvalue: int
    dimension_count: int


@dataclass(frozen=True)
class SpectralState:
    """A finite eigenbasis combination: sparse coefficients up to level k_max."""

    n: int
    coefficients: dict
    k_max: int

    def __post_init__(self):
        for alpha in self.coefficients:
            if len(alpha) != self.n:
                raise ValueError(f"index {alpha} has wrong length for n={self.n}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"index {alpha} has negative entries")
            if sum(alpha) > self.k_max:
                raise ValueError(f"index {alpha} exceeds k_max={self.k_max}")


@dataclass(frozen=True)
class KernelQuery:
    """Arguments of the level-k projection kernel at a pair of points."""

    n: int
    k: int
    x: tuple
    y: tuple


def eigen_level(n: int, k: int) -> EigenLevel:
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    return EigenLevel(n, k, 2 * k + n, math.comb(k + n - 1, n - 1))


@lru_cache(maxsize=None)
def _level_indices(n: int, k: int) -> tuple:
    if n == 1:
        return ((k,),)
    out = []
    for first in range(k, -1, -1):
        for rest in _level_indices(n - 1, k - first):
            out.append((first,) + rest)
    return tuple(out)


def enumerate_multiindices(n: int, k: int) -> list:
    """All alpha with |alpha| = k, in descending lexicographic order."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1 and k >= 0")
    if math.comb(k + n - 1, n - 1) > _MAX_LEVEL_SIZE:
        raise CapabilityError(f"level (n={n}, k={k}) has too many indices")
    return list(_level_indices(n, k))


def make_state(n: int, coefficients: dict, k_max: int | None = None) -> SpectralState:
    """Normalizing constructor: infers k_max and copies the coefficient map."""
    coeffs = {tuple(a): complex(c) for a, c in coefficients.items()}
    if k_max is None:
        k_max = max((sum(a) for a in coeffs), default=0)
    return SpectralState(n, coeffs, k_max)


def state_norm_sq(state: SpectralState) -> float:
    return math.fsum(abs(c) ** 2 for c in state.coefficients.values())


def oscillator_energy_sq(state: SpectralState) -> float:
    """Squared norm after applying the oscillator: sum (2|alpha|+n)^2 |a|^2."""
    return math.fsum(
        (2 * sum(a) + state.n) ** 2 * abs(c) ** 2 for a, c in state.coefficients.items()
    )


def evaluate_phi(basis: HermiteBasis, alpha: tuple, points) -> np.ndarray:
    """Product eigenfunction at points of shape (..., n) (or (n,) for one point)."""
    pts = np.asarray(points, dtype=float)
    single = pts.ndim == 1
    if single:
        pts = pts[None, :]
    if pts.shape[-1] != len(alpha):
        raise ValueError("point dimension does not match index length")
    flat = pts.reshape(-1, len(alpha))
    out = np.ones(flat.shape[0])
    for c, deg in enumerate(alpha):
        out *= eval_h_all(basis, deg, flat[:, c])[deg]
    out = out.reshape(pts.shape[:-1])
    return float(out[0]) if single else out


def evaluate_state(basis: HermiteBasis, state: SpectralState, points) -> np.ndarray:
    """Sum of coefficient-weighted eigenfunctions at points (..., n)."""
    pts = np.asarray(points, dtype=float)
    single = pts.ndim == 1
    if single:
        pts = pts[None, :]
    flat = pts.reshape(-1, state.n)
    out = _eval_items(basis, list(state.coefficients.items()), flat)
    out = out.reshape(pts.shape[:-1])
    return complex(out[0]) if single else out


def _eval_items(basis: HermiteBasis, items: list, flat: np.ndarray) -> np.ndarray:
    n = flat.shape[1]
    out = np.zeros(flat.shape[0], dtype=complex)
    if not items:
        return out
    degs = [max(alpha[c] for alpha, _ in items) for c in range(n)]
    tabs = [eval_h_all(basis, degs[c], flat[:, c]) for c in range(n)]
    for alpha, coeff in items:
        prod = tabs[0][alpha[0]].copy()
        for c in range(1, n):
            prod *= tabs[c][alpha[c]]
        out += coeff * prod
    return out


def evaluate_state_grid(basis: HermiteBasis, state: SpectralState, axes_nodes: list) -> np.ndarray:
    """State values on a tensor grid, returned with shape (len(axis_0), ...).

    Each coefficient contributes an outer product of 1D mode values, which is
    far cheaper than evaluating on the flattened point set.
    """
    if len(axes_nodes) != state.n:
        raise ValueError("need one node array per axis")
    shape = tuple(len(a) for a in axes_nodes)
    out = np.zeros(shape, dtype=complex)
    items = list(state.coefficients.items())
    if not items:
        return out
    degs = [max(alpha[c] for alpha, _ in items) for c in range(state.n)]
    tabs = [eval_h_all(basis, degs[c], np.asarray(axes_nodes[c], dtype=float)) for c in range(state.n)]
    for alpha, coeff in items:
        prod = tabs[0][alpha[0]]
        for c in range(1, state.n):
            prod = np.multiply.outer(prod, tabs[c][alpha[c]])
        out += coeff * prod
    return out


def propagate(state: SpectralState, t: float) -> SpectralState:
    """Rotate each coefficient by its eigenvalue phase: a -> e^(-i(2|alpha|+n)t) a."""
    coeffs = {
        alpha: coeff * complex(math.cos((2 * sum(alpha) + state.n) * t),
                               -math.sin((2 * sum(alpha) + state.n) * t))
        for alpha, coeff in state.coefficients.items()
    }
    return SpectralState(state.n, coeffs, state.k_max)


def project(state: SpectralState, k: int) -> SpectralState:
    """Keep only the level-k coefficients."""
    coeffs = {a: c for a, c in state.coefficients.items() if sum(a) == k}
    return SpectralState(state.n, coeffs, state.k_max)


def parity_decompose(state: SpectralState, axis: int) -> tuple:
    """Split along one axis into (odd part, even part) by the index parity there."""
    if not 0 <= axis < state.n:
        raise ValueError("axis out of range")
    odd = {a: c for a, c in state.coefficients.items() if a[axis] % 2 == 1}
    even = {a: c for a, c in state.coefficients.items() if a[axis] % 2 == 0}
    return (
        SpectralState(state.n, odd, state.k_max),
        SpectralState(state.n, even, state.k_max),
    )


_QUARTER_PHASES = (1.0 + 0.0j, -1.0j, -1.0 + 0.0j, 1.0j)


def fourier_transform_state(state: SpectralState) -> SpectralState:
    """Unitary angular-frequency transform: coefficient a twists by (-i)^|alpha|."""
    coeffs = {
        alpha: coeff * _QUARTER_PHASES[sum(alpha) % 4]
        for alpha, coeff in state.coefficients.items()
    }
    return SpectralState(state.n, coeffs, state.k_max)


def coefficients_from_function(
    f,
    n: int,
    k_max: int,
    m: int | None = None,
    gate_tol: float = 1e-9,
    basis: HermiteBasis | None = None,
) -> SpectralState:
    """Recover coefficients a_alpha = integral f * Phi_alpha by tensor Gauss-Hermite.

    f maps an (N, n) array of points to (N,) values.  The rule's e^(-|x|^2)
    weight is compensated, so when f is itself a finite eigenbasis combination
    the product f * Phi_alpha * e^(+|x|^2) is polynomial and the round-trip is
    exact up to rule degree.  The rule is doubled and the two coefficient sets
    compared; disagreement beyond gate_tol raises a tolerance error.
    """
    if n > 3:
        raise CapabilityError("tensor coefficient recovery supported for n <= 3")
    if m is None:
        m = k_max + 6
    coarse = _coefficients_once(f, n, k_max, m, basis)
    fine = _coefficients_once(f, n, k_max, 2 * m, basis)
    drift = max(
        abs(coarse.coefficients[a] - fine.coefficients[a]) for a in fine.coefficients
    )
    if drift > gate_tol:
        raise ToleranceError(
            f"coefficient recovery unstable under rule doubling (drift {drift:.3e})"
        )
    return fine


def _coefficients_once(f, n, k_max, m, basis):
    if basis is None:
        basis = HermiteBasis.build(k_max)
    rule = gauss_hermite(m)
    nodes = rule.nodes
    comp = rule.weights * np.exp(nodes * nodes)
    grids = np.meshgrid(*([nodes] * n), indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    fv = np.asarray(f(pts), dtype=complex).reshape([m] * n)
    tab = eval_h_all(basis, k_max, nodes)
    coeffs = {}
    for k in range(k_max + 1):
        for alpha in _level_indices(n, k):
            val = fv
            for c, deg in enumerate(alpha):
                val = np.tensordot(val, tab[deg] * comp, axes=([0], [0]))
            coeffs[alpha] = complex(val)
    return SpectralState(n, coeffs, k_max)


def projection_kernel(query: KernelQuery, basis: HermiteBasis | None = None) -> float:
    """Level-k kernel: sum over |alpha| = k of Phi_alpha(x) Phi_alpha(y)."""
    if basis is None:
        basis = HermiteBasis.build(query.k)
    x = np.asarray(query.x, dtype=float)
    y = np.asarray(query.y, dtype=float)
    if x.shape != (query.n,) or y.shape != (query.n,):
        raise ValueError("points must be n-vectors")
    tx = [eval_h_all(basis, query.k, x[c : c + 1]) for c in range(query.n)]
    ty = [eval_h_all(basis, query.k, y[c : c + 1]) for c in range(query.n)]
    total = 0.0
    for alpha in enumerate_multiindices(query.n, query.k):
        px = 1.0
        py = 1.0
        for c, deg in enumerate(alpha):
            px *= tx[c][deg, 0]
            py *= ty[c][deg, 0]
        total += px * py
    return float(total)


def kernel_diagonal(basis: HermiteBasis, n: int, k: int, points) -> np.ndarray:
    """Phi_k(x, x) for each row of points (N, n), via a level value matrix."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[None, :]
    tabs = [eval_h_all(basis, k, pts[:, c]) for c in range(n)]
    out = np.zeros(pts.shape[0])
    for alpha in enumerate_multiindices(n, k):
        prod = tabs[0][alpha[0]].copy()
        for c in range(1, n):
            prod *= tabs[c][alpha[c]]
        out += prod * prod
    return out


def kernel_diagonal_ratio(n: int, k: int, grid, basis: HermiteBasis | None = None) -> float:
    """max over grid of |Phi_k(x,x)| / k^(n/2 - 1); the ratio the kernel bound controls."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if basis is None:
        basis = HermiteBasis.build(k)
    vals = np.abs(kernel_diagonal(basis, n, k, grid))
    return float(vals.max() / k ** (n / 2.0 - 1.0))


def hermite_sobolev_norm(state: SpectralState, s: float) -> float:
    """Spectral Sobolev norm: (sum (2|alpha|+n)^s |a|^2)^(1/2)."""
    if s < 0:
        raise ValueError("s must be >= 0")
    total = math.fsum(
        (2 * sum(a) + state.n) ** s * abs(c) ** 2 for a, c in state.coefficients.items()
    )
    return math.sqrt(total)


def bessel_sobolev_norm(
    state: SpectralState,
    s: float,
    rule_scale: float = 1.0,
    gate_tol: float = 1e-8,
    basis: HermiteBasis | None = None,
) -> float:
    """Flat-Laplacian Sobolev norm (integral (1+|xi|^2)^s |fhat|^2)^(1/2).

    The transform side is evaluated directly from the phase-twisted
    coefficients on a panelized tensor grid; the rule is doubled and drift
    beyond gate_tol raises a tolerance error.
    """
    if s < 0:
        raise ValueError("s must be >= 0")
    if state.n > 3:
        raise CapabilityError("tensor transform quadrature supported for n <= 3")
    coarse = _bessel_once(state, s, rule_scale, basis)
    fine = _bessel_once(state, s, 2.0 * rule_scale, basis)
    if abs(fine - coarse) > gate_tol * max(1.0, abs(fine)):
        raise ToleranceError(
            f"transform-side norm unstable under rule doubling "
            f"({coarse:.12g} vs {fine:.12g})"
        )
    return math.sqrt(fine)


def _bessel_once(state, s, scale, basis):
    if basis is None:
        basis = HermiteBasis.build(state.k_max)
    fhat = fourier_transform_state(state)
    T = truncation_radius(state.k_max, state.n)
    per_unit = 2 if state.n < 3 else 1
    n_panels = max(4, int(math.ceil(T * per_unit * scale)))
    m = 10 if state.n < 3 else 8
    rule = gauss_legendre_panels(-T, T, n_panels, m)
    vals = evaluate_state_grid(basis, fhat, [rule.nodes] * state.n)
    dens = np.abs(vals) ** 2
    xi_sq = rule.nodes ** 2
    grids = np.meshgrid(*([xi_sq] * state.n), indexing="ij")
    weight = (1.0 + sum(grids)) ** s
    total = dens * weight
    for _ in range(state.n):
        total = np.tensordot(total, rule.weights, axes=([0], [0]))
    return float(total)


def _even_count(x: float) -> int:
    m = int(math.ceil(x))
    return m + (m % 2)


def _level_grid(n: int, k: int, delta: float, wd: tuple, scale: float, divide: bool):
    """Product grid and weights for one level integral with weight on axes wd.

    Every route uses the absorbing radial rule, which is exact on polynomial
    levels: the antipodally symmetric direction set cancels odd-in-r parts, so
    only integer powers of r^2 reach the Laguerre nodes.  A one-axis weight
    with delta >= 1/2 divides the state by the coordinate first, shifting the
    weight exponent by +2 (hence the delta - 1 below).
    """
    dw = len(wd)
    m_r = max(3, int(math.ceil((k / 2.0 + 3.0) * scale)))
    if dw == 1:
        radial = radial_rule_absorbing(1, delta - 1.0 if divide else delta, m_r)
        dirs = np.array([[1.0], [-1.0]])
        dwts = np.array([1.0, 1.0])
    elif dw == 2:
        radial = radial_rule_absorbing(2, delta, m_r)
        dirs, dwts = circle_directions(_even_count((2 * k + 4) * scale))
    elif dw == 3:
        radial = radial_rule_absorbing(3, delta, m_r)
        dirs, dwts = sphere_directions(
            max(2, int(math.ceil((k + 2) * scale))), _even_count((2 * k + 4) * scale)
        )
    else:
        raise ValueError("weighted-axis count must be 1, 2, or 3")
    r = radial.nodes
    base_pts = (r[:, None, None] * dirs[None, :, :]).reshape(-1, dw)
    base_w = (radial.weights[:, None] * dwts[None, :]).ravel()
    return base_pts, base_w


def _tensor_free_axes(base_pts, base_w, n, wd, k, scale):
    """Extend the weighted-axes grid over the free axes with compensated Gauss-Hermite."""
    free = [c for c in range(n) if c not in wd]
    pts = np.zeros((base_pts.shape[0], n))
    for j, c in enumerate(wd):
        pts[:, c] = base_pts[:, j]
    w = base_w
    for c in free:
        m_h = max(4, int(math.ceil((k + 3) * scale)))
        rule = gauss_hermite(m_h)
        comp = rule.weights * np.exp(rule.nodes ** 2)
        n_old = pts.shape[0]
        pts = np.repeat(pts, m_h, axis=0)
        pts[:, c] = np.tile(rule.nodes, n_old)
        w = np.repeat(w, m_h) * np.tile(comp, n_old)
    return pts, w


def _level_weighted_integral(basis, items, n, k, delta, wd, scale):
    if not items:
        return 0.0
    dw = len(wd)
    divide = dw == 1 and delta >= 0.5
    base_pts, base_w = _level_grid(n, k, delta, wd, scale, divide)
    pts, w = _tensor_free_axes(base_pts, base_w, n, wd, k, scale)
    vals = _eval_items(basis, items, pts)
    if divide:
        vals = vals / pts[:, wd[0]]
    dens = np.abs(vals) ** 2
    return float(np.dot(w, dens))


def time_avg_weighted(
    state: SpectralState,
    delta: float,
    weight_dims=None,
    rule_scale: float = 1.0,
    basis: HermiteBasis | None = None,
) -> float:
    """Time average over one period of the weighted squared solution.

    Equals 2*pi times the sum over levels of integral |P_k f|^2 / w with
    w = (sum of squares over weight_dims)^delta, by phase orthogonality of
    distinct eigenvalues over a full period.  Admissibility: delta < 1 on a
    two-axis weight, delta <= 1 on three axes; a one-axis weight with
    delta >= 1/2 additionally needs every mode odd in that axis.
    """
    if weight_dims is None:
        wd = tuple(range(state.n))
    else:
        wd = tuple(sorted(set(int(c) for c in weight_dims)))
    if not wd or any(c < 0 or c >= state.n for c in wd):
        raise ValueError("weight_dims must be a nonempty subset of the axes")
    if delta < 0:
        raise ValueError("delta must be >= 0")
    dw = len(wd)
    if dw == 2 and delta >= 1.0:
        raise ValueError("two-axis weight needs delta < 1 (the integral diverges at 1)")
    if dw >= 3 and delta > 1.0:
        raise ValueError("three-axis weight needs delta <= 1")
    if dw == 1 and delta > 1.0:
        raise ValueError("one-axis weight needs delta <= 1")
    if dw == 1 and delta >= 0.5:
        axis = wd[0]
        if any(a[axis] % 2 == 0 for a in state.coefficients):
            raise ValueError(
                "one-axis weight with delta >= 1/2 needs every mode odd in that axis"
            )
    if basis is None:
        basis = HermiteBasis.build(state.k_max)
    by_level = {}
    for alpha, coeff in state.coefficients.items():
        by_level.setdefault(sum(alpha), []).append((alpha, coeff))
    total = math.fsum(
        _level_weighted_integral(basis, items, state.n, k, delta, wd, rule_scale)
        for k, items in sorted(by_level.items())
    )
    return TWO_PI * total


def level_gram(
    n: int,
    k: int,
    weight_power: float,
    rule_scale: float = 1.0,
    basis: HermiteBasis | None = None,
    weight_dims=None,
) -> np.ndarray:
    """Gram matrix of the level-k eigenfunctions under a power-law weight.

    Entry (alpha, beta) is integral Phi_alpha Phi_beta w(x)^(-1) dx where
    w = (sum of squares over weight_dims)^(weight_power/2); indices ordered as
    enumerate_multiindices.  Default weight_dims is all n axes.  The full
    level mixes parities, so integrability demands weight_power below the
    weighted-axis count; exact by the absorbing radial rule.
    """
    if n not in (2, 3):
        raise ValueError("gram assembly supports n = 2 or 3")
    if weight_dims is None:
        wd = tuple(range(n))
    else:
        wd = tuple(sorted(set(int(c) for c in weight_dims)))
    if not wd or any(c < 0 or c >= n for c in wd):
        raise ValueError("weight_dims must be a nonempty subset of the axes")
    if weight_power < 0:
        raise ValueError("weight_power must be >= 0")
    if weight_power >= len(wd):
        raise ValueError("weight_power must stay below the weighted-axis count")
    if basis is None:
        basis = HermiteBasis.build(k)
    base_pts, base_w = _level_grid(n, k, weight_power / 2.0, wd, rule_scale, False)
    pts, w = _tensor_free_axes(base_pts, base_w, n, wd, k, rule_scale)
    indices = enumerate_multiindices(n, k)
    tabs = [eval_h_all(basis, k, pts[:, c]) for c in range(n)]
    B = np.empty((len(indices), pts.shape[0]))
    for row, alpha in enumerate(indices):
        prod = tabs[0][alpha[0]].copy()
        for c in range(1, n):
            prod *= tabs[c][alpha[c]]
        B[row] = prod
    M = (B * w) @ B.T
    return 0.5 * (M + M.T)


def collapse_trace_norm(state: SpectralState, rule_scale: float = 1.0,
                        basis: HermiteBasis | None = None) -> float:
    """Time average of the squared 9D solution restricted to the triple diagonal.

    Groups coefficients by eigenvalue, restricts each group to (x, x, x) with
    x in R^3, and integrates by a sqrt(3)-rescaled compensated Gauss-Hermite
    tensor rule matching the e^(-3|x|^2) density of the restriction.
    """
    if state.n != 9:
        raise ValueError("collapse restriction is defined for n = 9")
    if state.k_max > 4:
        raise CapabilityError("collapse supported for k_max <= 4")
    if basis is None:
        basis = HermiteBasis.build(state.k_max)
    m = max(4, int(math.ceil((2 * state.k_max + 6) * rule_scale)))
    rule = gauss_hermite(m)
    y = rule.nodes
    comp = rule.weights * np.exp(y * y)
    x = y / math.sqrt(3.0)
    tab = eval_h_all(basis, state.k_max, x)
    by_level = {}
    for alpha, coeff in state.coefficients.items():
        by_level.setdefault(sum(alpha), []).append((alpha, coeff))
    total = 0.0
    scale3 = 3.0 ** -1.5
    for k, items in sorted(by_level.items()):
        restricted = np.zeros((m, m, m), dtype=complex)
        for alpha, coeff in items:
            f1 = tab[alpha[0]] * tab[alpha[3]] * tab[alpha[6]]
            f2 = tab[alpha[1]] * tab[alpha[4]] * tab[alpha[7]]
            f3 = tab[alpha[2]] * tab[alpha[5]] * tab[alpha[8]]
            restricted += coeff * np.multiply.outer(np.multiply.outer(f1, f2), f3)
        dens = np.abs(restricted) ** 2
        val = np.tensordot(
            np.tensordot(np.tensordot(dens, comp, axes=([0], [0])), comp, axes=([0], [0])),
            comp,
            axes=([0], [0]),
        )
        total += scale3 * float(val)
    return TWO_PI * total


def random_state(
    n: int,
    k_max: int,
    seed_seq,
    parity: str | None = None,
    parity_axis: int = 0,
) -> SpectralState:
    """Unit-norm state with complex-Gaussian coefficients on all admissible indices.

    seed_seq is any numpy SeedSequence-compatible value (int or list of ints);
    parity "odd"/"even" restricts the index set along parity_axis.
    """
    rng = np.random.default_rng(seed_seq)
    indices = []
    for k in range(k_max + 1):
        for alpha in _level_indices(n, k):
            if parity == "odd" and alpha[parity_axis] % 2 == 0:
                continue
            if parity == "even" and alpha[parity_axis] % 2 == 1:
                continue
            indices.append(alpha)
    if not indices:
        raise ValueError("no admissible indices for the requested parity")
    re = rng.standard_normal(len(indices))
    im = rng.standard_normal(len(indices))
    norm = math.sqrt(float(np.sum(re * re + im * im)))
    coeffs = {a: complex(r, i) / norm for a, r, i in zip(indices, re, im)}
    return SpectralState(n, coeffs, k_max)


def state_to_json(state: SpectralState) -> str:
    """Serialize as a JSON object with a list of (index, re, im) triples."""
    triples = [
        [list(alpha), coeff.real, coeff.imag]
        for alpha, coeff in sorted(state.coefficients.items())
    ]
    return json.dumps(
        {"n": state.n, "k_max": state.k_max, "coefficients": triples},
        separators=(",", ":"),
    )


def state_from_json(text: str) -> SpectralState:
    data = json.loads(text)
    coeffs = {
        tuple(int(a) for a in alpha): complex(re, im)
        for alpha, re, im in data["coefficients"]
    }
    return SpectralState(int(data["n"]), coeffs, int(data["k_max"]))
