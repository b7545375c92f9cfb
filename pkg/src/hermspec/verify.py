"""The estimate harness: each smoothing identity or bound as a reproducible check.

Every check draws its randomness from a seed sequence rooted at the config
seed, computes the relevant ratios, and folds the result into an
EstimateReport.  Equality checks compare against exact targets two-sided;
inequality checks test a configured bound plus a log-log growth trend, since
the underlying constants are existential.  A report may only read "passed"
when every constituent integral survived a rule-doubling gate; otherwise the
status is "inconclusive", never a silent pass.

The bound constants below are empirical: they were calibrated from the scans
themselves at the default configuration and carry generous headroom.  They
are thresholds for regression detection, not claimed sharp constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_laguerre

from .antideriv import (
    merge_identity_check,
    merge_identity_exact,
    norm_sq_even_closed,
    norm_sq_even_quadrature,
    norm_sq_even_recursive,
    norm_sq_odd_closed,
    norm_sq_odd_expansion,
    norm_sq_odd_quadrature,
    norm_sq_odd_recursive,
    x_odd,
)
from .errors import ToleranceError
from .hermite import (
    HermiteBasis,
    LaguerreParams,
    binom_reflection_residual,
    eval_h,
    eval_laguerre,
    gamma_duplication_residual,
    laguerre_exp_integral,
    verify_laguerre_hermite_relation,
)
from .quadrature import (
    TWO_PI,
    circle_directions,
    integrate_radial_3d,
    radial_rule_panels,
    truncation_radius,
)
from .spectral import (
    SpectralState,
    bessel_sobolev_norm,
    collapse_trace_norm,
    enumerate_multiindices,
    evaluate_phi,
    evaluate_state,
    hermite_sobolev_norm,
    kernel_diagonal,
    kernel_diagonal_ratio,
    level_gram,
    make_state,
    oscillator_energy_sq,
    project,
    random_state,
    state_norm_sq,
    time_avg_weighted,
)

FOUR_PI = 2.0 * TWO_PI

ESTIMATE_IDS = (
    "odd_identity",
    "radial_3d_identity",
    "kato_nd",
    "kernel_bound",
    "operator_norm",
    "morawetz_2d",
    "even_3d",
    "hermite_sobolev",
    "collapse_9d",
    "antideriv_norms",
    "appendix_identities",
)

# stable per-check stream index for seed sequences [seed, index, ...]
CHECK_INDEX = {name: i for i, name in enumerate(ESTIMATE_IDS)}

# growth-trend threshold: least-squares slope of log(ratio) vs log(k)
TREND_SLOPE_MAX = 0.05

# equality checks: two-sided tolerance on the stated target
DEFAULT_TOLERANCES = {
    "odd_identity": 1e-7,
    "radial_3d_identity": 1e-6,
    "antideriv_norms": 1e-8,
    "appendix_identities": 1e-9,
}

# inequality checks: one-sided bound on the sup ratio.  Scan records at the
# default configuration: kato 12.9, operator 2.0, kernel 0.32, morawetz 2.0,
# even-3d 4*pi (ground state attains it), sobolev 1.66 (s=2 ground mode),
# collapse 4.9e-4.  Bounds sit 25-100% above the record.
DEFAULT_BOUNDS = {
    "kato_nd": 20.0,
    "operator_norm": 3.0,
    "kernel_bound": 0.5,
    "morawetz_2d": 4.0,
    "even_3d": 16.0,
    "hermite_sobolev": 2.0,
    "collapse_9d": 0.002,
}


@dataclass(frozen=True)
class ScanConfig:
    """Scan parameters; the seed fixes every pseudo-random draw."""

    k_max: int = 20
    trials: int = 16
    seed: int = 42
    rule_scale: float = 1.0
    gate_tol: float = 1e-9
    tolerances: dict | None = None
    bounds: dict | None = None

    def __post_init__(self):
        if self.k_max < 0:
            raise ValueError("k_max must be >= 0")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.rule_scale <= 0:
            raise ValueError("rule_scale must be > 0")

    def tolerance_for(self, estimate_id: str) -> float:
        if self.tolerances and estimate_id in self.tolerances:
            return float(self.tolerances[estimate_id])
        return DEFAULT_TOLERANCES[estimate_id]

    def bound_for(self, estimate_id: str) -> float:
        if self.bounds and estimate_id in self.bounds:
            return float(self.bounds[estimate_id])
        return DEFAULT_BOUNDS[estimate_id]


@dataclass(frozen=True)
class EstimateReport:
    """Outcome of one check: labeled ratios, their sup, and the verdict."""

    estimate_id: str
    parameters: dict
    samples: tuple
    sup_ratio: float
    tolerance: float
    passed: bool
    status: str

    def __post_init__(self):
        if self.estimate_id not in ESTIMATE_IDS:
            raise ValueError(f"unknown estimate id {self.estimate_id!r}")
        if self.status not in ("passed", "failed", "inconclusive"):
            raise ValueError(f"unknown status {self.status!r}")
        if self.passed != (self.status == "passed"):
            raise ValueError("passed flag must mirror the status")


def _report(estimate_id, parameters, samples, tolerance, ok, stable) -> EstimateReport:
    samples = tuple((str(lab), float(r)) for lab, r in samples)
    sup = max((r for _, r in samples), default=0.0)
    if not stable:
        status = "inconclusive"
    else:
        status = "passed" if ok else "failed"
    return EstimateReport(
        estimate_id=estimate_id,
        parameters=dict(parameters),
        samples=samples,
        sup_ratio=float(sup),
        tolerance=float(tolerance),
        passed=status == "passed",
        status=status,
    )


def _drift_ok(coarse: float, fine: float, tol: float) -> bool:
    return abs(fine - coarse) <= tol * (1.0 + abs(fine))


def trend_slope(pairs) -> float:
    """Least-squares slope of log(sup ratio) against log(k).

    The fit runs on the running supremum, restricted to the upper half of the
    scanned range.  Both guards matter: several per-level sequences oscillate
    with parity while staying bounded (a raw fit reads the alternation as
    growth), and others step up once and then sit on an exact plateau (a
    full-range fit reads the single low start as growth).  A genuine power
    law k^p survives both reductions with slope p, so the test keeps its
    sensitivity to slow growth.
    """
    pairs = sorted(pairs)
    k_top = max((k for k, _ in pairs), default=0)
    k_lo = max(1, k_top // 2)
    sup = 0.0
    xs = []
    ys = []
    for k, r in pairs:
        sup = max(sup, r)
        if k >= k_lo and sup > 0:
            xs.append(math.log(k))
            ys.append(math.log(sup))
    if len(xs) < 2:
        return 0.0
    slope = np.polyfit(np.array(xs), np.array(ys), 1)[0]
    return float(slope)


# ---------------------------------------------------------------------------
# shared caches (read-only after fill; harmless across threads since entries
# are deterministic and idempotent)

_GRAM_CACHE: dict = {}
_BASIS_CACHE: dict = {}


def clear_caches() -> None:
    """Drop memoized gram matrices and basis tables (for honest re-runs)."""
    _GRAM_CACHE.clear()
    _BASIS_CACHE.clear()


def _basis(max_degree: int) -> HermiteBasis:
    b = _BASIS_CACHE.get(max_degree)
    if b is None or b.max_degree < max_degree:
        b = HermiteBasis.build(max_degree)
        _BASIS_CACHE[max_degree] = b
    return b


def _cached_gram(n, k, weight_power, rule_scale, weight_dims):
    key = (n, k, float(weight_power), float(rule_scale), weight_dims)
    G = _GRAM_CACHE.get(key)
    if G is None:
        G = level_gram(n, k, weight_power, rule_scale, _basis(k), weight_dims)
        _GRAM_CACHE[key] = G
    return G


def _gram_with_gate(n, k, weight_power, cfg, weight_dims=None):
    G1 = _cached_gram(n, k, weight_power, cfg.rule_scale, weight_dims)
    G2 = _cached_gram(n, k, weight_power, 2.0 * cfg.rule_scale, weight_dims)
    drift = float(np.max(np.abs(G1 - G2)))
    stable = drift <= cfg.gate_tol * (1.0 + float(np.max(np.abs(G1))))
    return G1, stable


def _power_sigma_max(M, seed_seq, tol: float = 1e-12, max_iter: int = 400) -> float:
    """Largest singular value by power iteration on M^T M; random start vector."""
    M = np.asarray(M, dtype=float)
    d = M.shape[0]
    rng = np.random.default_rng(seed_seq)
    v = rng.standard_normal(d)
    v /= math.sqrt(float(v @ v))
    sigma = 0.0
    for _ in range(max_iter):
        u = M.T @ (M @ v)
        nu = math.sqrt(float(u @ u))
        if nu == 0.0:
            return 0.0
        v = u / nu
        new_sigma = math.sqrt(float(v @ (M.T @ (M @ v))))
        if abs(new_sigma - sigma) <= tol * max(1.0, new_sigma):
            return new_sigma
        sigma = new_sigma
    raise ToleranceError(
        f"power iteration did not settle after {max_iter} steps "
        f"(last sigma {sigma:.12g})"
    )


# ---------------------------------------------------------------------------
# identity checks


def check_odd_identity(cfg: ScanConfig) -> EstimateReport:
    """Time-averaged inverse-square functional on odd 1D states.

    The full functional over a period must equal 4*pi times the squared norm,
    and each level must contribute 2*pi times twice its squared coefficient.
    """
    tol = cfg.tolerance_for("odd_identity")
    per_level_tol = 1e-9
    mode_cap = 2 * cfg.k_max + 1
    basis = _basis(mode_cap)
    samples = []
    ok = True
    stable = True
    for t in range(cfg.trials):
        g = random_state(1, mode_cap, [cfg.seed, CHECK_INDEX["odd_identity"], t],
                         parity="odd")
        v1 = time_avg_weighted(g, 1.0, rule_scale=cfg.rule_scale, basis=basis)
        v2 = time_avg_weighted(g, 1.0, rule_scale=2.0 * cfg.rule_scale, basis=basis)
        stable = stable and _drift_ok(v1, v2, cfg.gate_tol)
        ratio = v1 / state_norm_sq(g)
        samples.append((f"trial={t:02d}/functional", ratio))
        ok = ok and abs(ratio - FOUR_PI) <= tol * FOUR_PI
        for alpha in sorted(g.coefficients):
            mode = make_state(1, {alpha: g.coefficients[alpha]}, g.k_max)
            lv1 = time_avg_weighted(mode, 1.0, rule_scale=cfg.rule_scale,
                                    basis=basis) / TWO_PI
            lv2 = time_avg_weighted(mode, 1.0, rule_scale=2.0 * cfg.rule_scale,
                                    basis=basis) / TWO_PI
            stable = stable and _drift_ok(lv1, lv2, cfg.gate_tol)
            target = 2.0 * abs(g.coefficients[alpha]) ** 2
            ok = ok and abs(lv1 - target) <= per_level_tol
            samples.append((f"trial={t:02d}/level k={alpha[0]:02d}", lv1 / target))
    params = {
        "n": 1,
        "delta": 1.0,
        "mode_cap": mode_cap,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
        "target": FOUR_PI,
        "per_level_tolerance": per_level_tol,
    }
    return _report("odd_identity", params, samples, tol, ok, stable)


def _radial_level_value(basis, degree, coeff, delta, R, n_panels, nodes_pp, n_ang):
    # one 3D level of the lifted state: |a|^2 h_d(|x|)^2 / (2 pi |x|^2), weighted
    amp = abs(coeff) ** 2

    def F(x1, x2, x3):
        r = np.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
        val = eval_h(basis, degree, r.ravel()).reshape(r.shape)
        return amp * (val * val) / (TWO_PI * r * r)

    return integrate_radial_3d(
        F, delta, R,
        n_panels=n_panels, nodes_per_panel=nodes_pp,
        n_theta=n_ang, n_phi=n_ang,
    )


def check_radial_3d_identity(cfg: ScanConfig) -> EstimateReport:
    """Same inverse-square identity through the 3D radial lift.

    An odd line state g lifts to the radial state g(|x|)/(sqrt(2 pi) |x|); the
    normalization is fixed by requiring equal norms, which is validated by
    quadrature before the identity itself is trusted.
    """
    tol = cfg.tolerance_for("radial_3d_identity")
    corr_tol = 1e-10
    mode_cap = 2 * cfg.k_max + 1
    basis = _basis(mode_cap)
    R = truncation_radius(mode_cap, 3)
    n_panels = max(40, int(math.ceil(4.0 * R * cfg.rule_scale)))
    samples = []
    ok = True
    stable = True
    for t in range(cfg.trials):
        g = random_state(1, mode_cap, [cfg.seed, CHECK_INDEX["radial_3d_identity"], t],
                         parity="odd")
        items = sorted(g.coefficients.items())
        norm3 = math.fsum(
            _radial_level_value(basis, a[0], c, 0.0, R, n_panels, 8, 4)
            for a, c in items
        )
        norm1 = state_norm_sq(g)
        if abs(math.sqrt(norm3) - math.sqrt(norm1)) > corr_tol * math.sqrt(norm1):
            raise ToleranceError(
                "radial lift normalization failed validation: "
                f"3D norm {math.sqrt(norm3):.15g} vs line norm "
                f"{math.sqrt(norm1):.15g} (trial {t}); the identity check "
                "cannot proceed on a miscalibrated correspondence"
            )
        samples.append((f"trial={t:02d}/normsq", norm3 / norm1))
        v1 = TWO_PI * math.fsum(
            _radial_level_value(basis, a[0], c, 1.0, R, n_panels, 8, 4)
            for a, c in items
        )
        v2 = TWO_PI * math.fsum(
            _radial_level_value(basis, a[0], c, 1.0, R, 2 * n_panels, 16, 4)
            for a, c in items
        )
        stable = stable and _drift_ok(v1, v2, cfg.gate_tol)
        ratio = v1 / norm3
        samples.append((f"trial={t:02d}/functional", ratio))
        ok = ok and abs(ratio - FOUR_PI) <= tol * FOUR_PI
    params = {
        "n": 3,
        "delta": 1.0,
        "mode_cap": mode_cap,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
        "radial_panels": n_panels,
        "truncation": R,
        "target": FOUR_PI,
        "correspondence_tolerance": corr_tol,
    }
    return _report("radial_3d_identity", params, samples, tol, ok, stable)


# ---------------------------------------------------------------------------
# boundedness scans


def check_kato(cfg: ScanConfig, n: int, delta: float, axes=None) -> EstimateReport:
    """Per-level sharp constants of the weighted time-average functional.

    For each level k the supremum of the functional over unit states is the
    top eigenvalue s_k of the level gram matrix under the squared weight; the
    reported ratio is 2*pi*s_k.  Passes on a bounded, trend-free sequence.
    """
    if axes is None:
        axes = tuple(range(n))
    else:
        axes = tuple(sorted(set(int(c) for c in axes)))
    dw = len(axes)
    if not axes or any(c < 0 or c >= n for c in axes):
        raise ValueError("axes must be a nonempty subset of the coordinates")
    if delta < 0:
        raise ValueError("delta must be >= 0")
    if dw == 1 and delta >= 0.5:
        raise ValueError("one-axis weight on a full level needs delta < 1/2")
    if dw == 2 and delta >= 1.0:
        raise ValueError("two-axis weight needs delta < 1")
    if dw == 3 and delta > 1.0:
        raise ValueError("three-axis weight needs delta <= 1")
    bound = cfg.bound_for("kato_nd")
    samples = []
    ok = True
    stable = True
    s_values = []
    rayleigh_max = 0.0
    n_trials = min(cfg.trials, 8)
    for k in range(cfg.k_max + 1):
        G, g_ok = _gram_with_gate(n, k, 2.0 * delta, cfg, axes)
        stable = stable and g_ok
        s_k = float(np.linalg.eigvalsh(G)[-1])
        s_values.append((k, s_k))
        for t in range(n_trials):
            rng = np.random.default_rng(
                [cfg.seed, CHECK_INDEX["kato_nd"], n, round(1000 * delta), k, t]
            )
            v = rng.standard_normal(G.shape[0]) + 1j * rng.standard_normal(G.shape[0])
            v /= np.sqrt(np.sum(np.abs(v) ** 2))
            q = float(np.real(np.conj(v) @ (G @ v)))
            rayleigh_max = max(rayleigh_max, q)
            ok = ok and q <= s_k + 1e-9
        ratio = TWO_PI * s_k
        samples.append((f"k={k:02d}", ratio))
        ok = ok and ratio <= bound
    slope = trend_slope([(k, TWO_PI * s) for k, s in s_values])
    ok = ok and slope <= TREND_SLOPE_MAX
    s0 = s_values[0][1]
    if n == 3 and delta == 1.0 and dw == 3:
        # one-dimensional ground level: the constant is exactly 2
        ok = ok and abs(s0 - 2.0) <= 1e-9
    params = {
        "n": n,
        "delta": delta,
        "axes": ",".join(str(c) for c in axes),
        "k_max": cfg.k_max,
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
        "bound": bound,
        "trend_slope": slope,
        "s0": s0,
        "rayleigh_max": rayleigh_max,
    }
    return _report("kato_nd", params, samples, bound, ok, stable)


def operator_norm_singular_kernel(
    cfg: ScanConfig, n: int, delta: float, k: int, two_sided: bool = False
) -> float:
    """Operator norm of the level projection composed with a singular weight.

    The operator acts within the finite level, so the norm is the largest
    singular value of the level matrix under the weight; two_sided squares
    the weight (it then multiplies both variables) and the norm equals the
    top eigenvalue of the squared-weight matrix.
    """
    weight_power = 2.0 * delta if two_sided else delta
    M = _cached_gram(n, k, weight_power, cfg.rule_scale, tuple(range(n)))
    seq = [cfg.seed, CHECK_INDEX["operator_norm"], n, round(1000 * delta), k,
           int(two_sided)]
    return _power_sigma_max(M, seq)


def check_operator_norms(cfg: ScanConfig, n: int, deltas=(0.5, 1.0)) -> EstimateReport:
    """Boundedness scan of the singular-kernel operator norms over levels."""
    bound = cfg.bound_for("operator_norm")
    samples = []
    ok = True
    stable = True
    inconclusive = False
    slopes = {}
    norm0 = None
    for delta in deltas:
        one_sided = []
        for k in range(cfg.k_max + 1):
            _, g1 = _gram_with_gate(n, k, delta, cfg, tuple(range(n)))
            _, g2 = _gram_with_gate(n, k, 2.0 * delta, cfg, tuple(range(n)))
            stable = stable and g1 and g2
            try:
                one = operator_norm_singular_kernel(cfg, n, delta, k)
                two = operator_norm_singular_kernel(cfg, n, delta, k, two_sided=True)
            except ToleranceError:
                inconclusive = True
                continue
            one_sided.append((k, one))
            samples.append((f"delta={delta:g}/k={k:02d}/one_sided", one))
            samples.append((f"delta={delta:g}/k={k:02d}/two_sided", two))
            ok = ok and one <= bound and two <= bound
            if delta == 1.0 and k == 0:
                norm0 = one
        slopes[delta] = trend_slope(one_sided)
        ok = ok and slopes[delta] <= TREND_SLOPE_MAX
    if n == 3 and norm0 is not None:
        # scalar ground-level reduction: 2 / sqrt(pi)
        ok = ok and abs(norm0 - 2.0 / math.sqrt(math.pi)) <= 1e-8
    params = {
        "n": n,
        "deltas": ",".join(f"{d:g}" for d in deltas),
        "k_max": cfg.k_max,
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
        "bound": bound,
        "norm0_delta1": norm0 if norm0 is not None else -1.0,
    }
    for d, s in slopes.items():
        params[f"trend_slope_delta{d:g}"] = s
    return _report("operator_norm", params, samples, bound, ok,
                   stable and not inconclusive)


def check_kernel_bound(cfg: ScanConfig, n: int) -> EstimateReport:
    """Diagonal level-kernel growth against the dimensional power law."""
    if n not in (2, 3):
        raise ValueError("diagonal kernel scan supports n = 2 or 3")
    bound = cfg.bound_for("kernel_bound")
    basis = _basis(cfg.k_max)
    edge = math.sqrt(2.0 * cfg.k_max + n)
    r = np.linspace(0.0, edge + 6.0, 160)
    pts = np.zeros((r.size, n))
    pts[:, 0] = r
    far = np.zeros((1, n))
    far[0, 0] = edge + 8.0
    samples = []
    ok = True
    pairs = []
    far_max = 0.0
    for k in range(1, cfg.k_max + 1):
        ratio = kernel_diagonal_ratio(n, k, pts, basis)
        pairs.append((k, ratio))
        samples.append((f"k={k:02d}", ratio))
        ok = ok and ratio <= bound
        far_max = max(far_max, float(abs(kernel_diagonal(basis, n, k, far)[0])))
    slope = trend_slope(pairs)
    ok = ok and slope <= TREND_SLOPE_MAX
    # super-Gaussian tail: the diagonal dies far beyond the classical radius
    ok = ok and far_max <= 1e-10
    params = {
        "n": n,
        "k_max": cfg.k_max,
        "seed": cfg.seed,
        "grid_points": int(r.size),
        "grid_edge": float(edge + 6.0),
        "bound": bound,
        "trend_slope": slope,
        "far_diagonal_max": far_max,
    }
    return _report("kernel_bound", params, samples, bound, ok, True)


def check_morawetz_2d(cfg: ScanConfig) -> EstimateReport:
    """Pointwise-in-space time integral of the squared 2D solution.

    Over one period the time integral at a point is 2*pi times the sum of the
    squared level projections there (phase orthogonality), so the scan needs
    no time quadrature; it maximizes over a polar grid and random states.
    """
    bound = cfg.bound_for("morawetz_2d")
    basis = _basis(cfg.k_max)
    r = np.linspace(0.0, math.sqrt(2.0 * cfg.k_max + 2.0) + 4.0, 48)[1:]
    theta = 0.35 + TWO_PI * np.arange(16) / 16.0
    pts = np.concatenate(
        [
            np.zeros((1, 2)),
            np.stack(
                [np.outer(r, np.cos(theta)).ravel(), np.outer(r, np.sin(theta)).ravel()],
                axis=1,
            ),
        ]
    )
    samples = []
    ok = True
    phi00 = make_state(2, {(0, 0): 1.0})
    base = TWO_PI * float(np.max(np.abs(evaluate_state(basis, phi00, pts)) ** 2))
    samples.append(("ground", base))
    ok = ok and abs(base - 2.0) <= 1e-10 and base <= bound
    for t in range(cfg.trials):
        f = random_state(2, cfg.k_max, [cfg.seed, CHECK_INDEX["morawetz_2d"], t])
        acc = np.zeros(pts.shape[0])
        for k in range(cfg.k_max + 1):
            level = project(f, k)
            if not level.coefficients:
                continue
            acc += np.abs(evaluate_state(basis, level, pts)) ** 2
        ratio = TWO_PI * float(np.max(acc)) / state_norm_sq(f)
        samples.append((f"trial={t:02d}", ratio))
        ok = ok and ratio <= bound
    params = {
        "n": 2,
        "k_max": cfg.k_max,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "grid_points": int(pts.shape[0]),
        "bound": bound,
    }
    return _report("morawetz_2d", params, samples, bound, ok, True)


def _require_fully_even(state: SpectralState) -> None:
    for alpha in state.coefficients:
        if any(c % 2 for c in alpha):
            raise ValueError(
                "reflection symmetry in every axis forces coefficients with "
                f"any odd index to vanish; got {alpha}"
            )


def _random_fully_even(n, k_max, seed_seq) -> SpectralState:
    rng = np.random.default_rng(seed_seq)
    indices = [
        alpha
        for k in range(k_max + 1)
        for alpha in enumerate_multiindices(n, k)
        if not any(c % 2 for c in alpha)
    ]
    re = rng.standard_normal(len(indices))
    im = rng.standard_normal(len(indices))
    norm = math.sqrt(float(np.sum(re * re + im * im)))
    coeffs = {a: complex(x, y) / norm for a, x, y in zip(indices, re, im)}
    return make_state(n, coeffs, k_max)


def even_cover_holds(k: int) -> bool:
    """Every fully even index of total degree k has a coordinate carrying at
    least half the rest; the three half-dominant families cover the level."""
    for alpha in enumerate_multiindices(3, k):
        if any(c % 2 for c in alpha):
            continue
        a1, a2, a3 = alpha
        if not (2 * a1 >= a2 + a3 or 2 * a2 >= a1 + a3 or 2 * a3 >= a1 + a2):
            return False
    return True


def check_even_3d(cfg: ScanConfig) -> EstimateReport:
    """Inverse-square functional on fully even 3D states, plus the index cover."""
    bound = cfg.bound_for("even_3d")
    basis = _basis(cfg.k_max)
    samples = []
    ok = True
    stable = True
    phi0 = make_state(3, {(0, 0, 0): 1.0})
    _require_fully_even(phi0)
    v0 = time_avg_weighted(phi0, 1.0, rule_scale=cfg.rule_scale, basis=basis)
    samples.append(("ground", v0))
    ok = ok and abs(v0 - FOUR_PI) <= 1e-9 * FOUR_PI and v0 <= bound
    for t in range(cfg.trials):
        d = _random_fully_even(3, cfg.k_max, [cfg.seed, CHECK_INDEX["even_3d"], t])
        _require_fully_even(d)
        v1 = time_avg_weighted(d, 1.0, rule_scale=cfg.rule_scale, basis=basis)
        v2 = time_avg_weighted(d, 1.0, rule_scale=2.0 * cfg.rule_scale, basis=basis)
        stable = stable and _drift_ok(v1, v2, cfg.gate_tol)
        ratio = v1 / state_norm_sq(d)
        samples.append((f"trial={t:02d}", ratio))
        ok = ok and ratio <= bound
    cover_k_max = max(cfg.k_max, 40)
    cover_ok = all(even_cover_holds(k) for k in range(cover_k_max + 1))
    ok = ok and cover_ok
    params = {
        "n": 3,
        "delta": 1.0,
        "k_max": cfg.k_max,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
        "bound": bound,
        "cover_k_max": cover_k_max,
        "cover_holds": cover_ok,
    }
    return _report("even_3d", params, samples, bound, ok, stable)


def check_hermite_sobolev(cfg: ScanConfig, s: float) -> EstimateReport:
    """Flat Bessel norm against the oscillator Sobolev norm, ratio bounded."""
    if s not in (0.5, 1.0, 2.0):
        raise ValueError("s must be one of 1/2, 1, 2")
    bound = cfg.bound_for("hermite_sobolev")
    samples = []
    ok = True
    stable = True
    k2 = min(cfg.k_max, 12)
    states = [
        (f"n=1/mode k={k:02d}", make_state(1, {(k,): 1.0}))
        for k in range(cfg.k_max + 1)
    ]
    for t in range(4):
        states.append(
            (f"n=1/trial={t:02d}",
             random_state(1, cfg.k_max, [cfg.seed, CHECK_INDEX["hermite_sobolev"], 1, t]))
        )
    for t in range(4):
        states.append(
            (f"n=2/trial={t:02d}",
             random_state(2, k2, [cfg.seed, CHECK_INDEX["hermite_sobolev"], 2, t]))
        )
    for label, state in states:
        herm = hermite_sobolev_norm(state, s)
        try:
            bess = bessel_sobolev_norm(state, s, rule_scale=cfg.rule_scale)
        except ToleranceError:
            stable = False
            continue
        ratio = bess / herm
        samples.append((label, ratio))
        ok = ok and ratio <= bound
    params = {
        "s": s,
        "k_max": cfg.k_max,
        "k_max_2d": k2,
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
        "bound": bound,
    }
    return _report("hermite_sobolev", params, samples, bound, ok, stable)


def check_collapse_9d(cfg: ScanConfig) -> EstimateReport:
    """Triple-diagonal trace functional against the squared oscillator energy."""
    bound = cfg.bound_for("collapse_9d")
    k_cap = min(cfg.k_max, 3)
    samples = []
    ok = True
    stable = True
    phi0 = make_state(9, {(0,) * 9: 1.0})
    v1 = collapse_trace_norm(phi0, rule_scale=cfg.rule_scale)
    v2 = collapse_trace_norm(phi0, rule_scale=2.0 * cfg.rule_scale)
    stable = stable and _drift_ok(v1, v2, cfg.gate_tol)
    target = TWO_PI * 3.0 ** -1.5 * math.pi ** -3
    ok = ok and abs(v1 - target) <= 1e-8
    samples.append(("ground", v1 / oscillator_energy_sq(phi0)))
    ok = ok and samples[-1][1] <= bound
    for t in range(min(cfg.trials, 8)):
        f = random_state(9, k_cap, [cfg.seed, CHECK_INDEX["collapse_9d"], t])
        w1 = collapse_trace_norm(f, rule_scale=cfg.rule_scale)
        w2 = collapse_trace_norm(f, rule_scale=2.0 * cfg.rule_scale)
        stable = stable and _drift_ok(w1, w2, cfg.gate_tol)
        ratio = w1 / oscillator_energy_sq(f)
        samples.append((f"trial={t:02d}", ratio))
        ok = ok and ratio <= bound
    params = {
        "n": 9,
        "k_max": k_cap,
        "trials": min(cfg.trials, 8),
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
        "bound": bound,
        "ground_target": target,
    }
    return _report("collapse_9d", params, samples, bound, ok, stable)


# ---------------------------------------------------------------------------
# closed-form ledgers


def check_antideriv_norms(cfg: ScanConfig) -> EstimateReport:
    """Three-route agreement of the antiderivative norms, with the even bound."""
    tol = cfg.tolerance_for("antideriv_norms")
    basis = _basis(2 * cfg.k_max + 1)
    samples = []
    ok = True
    stable = True
    for k in range(cfg.k_max + 1):
        oc = norm_sq_odd_closed(k)
        orr = norm_sq_odd_recursive(k)
        oe = norm_sq_odd_expansion(k)
        oq = norm_sq_odd_quadrature(basis, k)
        oq2 = norm_sq_odd_quadrature(basis, k, refine=2)
        stable = stable and _drift_ok(oq, oq2, cfg.gate_tol)
        ok = ok and abs(oc - 2.0) == 0.0
        ok = ok and abs(orr - oc) <= tol and abs(oe - oc) <= tol
        ok = ok and abs(oq - oc) <= tol and abs(oq - orr) <= tol
        samples.append((f"odd k={k:02d}", oq))
        ec = norm_sq_even_closed(k)
        er = norm_sq_even_recursive(k)
        eq = norm_sq_even_quadrature(basis, k)
        eq2 = norm_sq_even_quadrature(basis, k, refine=2)
        stable = stable and _drift_ok(eq, eq2, cfg.gate_tol)
        ok = ok and abs(er - ec) <= tol and abs(eq - ec) <= tol and abs(eq - er) <= tol
        ok = ok and ec <= 3.0 + 1e-12
        samples.append((f"even k={k:02d}", eq))
        ok = ok and merge_identity_check(k) <= 1e-12
    if cfg.k_max >= 40:
        # the even family settles toward 2; spot the gap at 40
        ok = ok and abs(norm_sq_even_closed(40) - 2.0) <= 0.05
    params = {
        "k_max": cfg.k_max,
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
        "even_bound": 3.0,
        "limit_gap_at_kmax": abs(norm_sq_even_closed(cfg.k_max) - 2.0),
    }
    return _report("antideriv_norms", params, samples, tol, ok, stable)


def _laguerre_integral_quadrature(params: LaguerreParams, m: int) -> float:
    # substitute v = beta*u; plain Gauss-Laguerre is exact on the polynomial
    nodes, weights = roots_laguerre(m)
    vals = eval_laguerre(params.degree, params.type_exponent, nodes / params.decay_rate)
    return float(np.dot(weights, vals)) / params.decay_rate


def check_appendix_identities(cfg: ScanConfig) -> EstimateReport:
    """Bundled support identities: the polynomial bridge (with its deliberate
    broken-prefactor control), the exponential integral, duplication,
    reflection, merge, and orthogonality of the antiderivative tail."""
    tol = cfg.tolerance_for("appendix_identities")
    bridge_tol = 1e-10
    control_min = 0.3
    dup_tol = 1e-12
    junk_tol = 1e-9
    samples = []
    ok = True
    stable = True
    # a degree-21 polynomial identity is overdetermined by 161 points; the
    # edge stays at 4 to keep the recurrence conditioning below the tolerance
    t_grid = np.linspace(-4.0, 4.0, 161)
    for k in range(11):
        res = verify_laguerre_hermite_relation(k, t_grid)
        samples.append((f"bridge k={k:02d}", res))
        ok = ok and res <= bridge_tol
    control = verify_laguerre_hermite_relation(1, t_grid, drop_factor_two=True)
    samples.append(("bridge-control k=01", control))
    ok = ok and control >= control_min
    for k in (0, 1, 2, 4, 6):
        for alpha in (0.5, 1.0, 1.5):
            for beta in (0.7, 1.0, 2.0):
                p = LaguerreParams(k, alpha, beta)
                closed = laguerre_exp_integral(p)
                quad = _laguerre_integral_quadrature(p, k + 6)
                quad2 = _laguerre_integral_quadrature(p, 2 * (k + 6))
                stable = stable and _drift_ok(quad, quad2, cfg.gate_tol)
                res = abs(closed - quad) / (1.0 + abs(closed))
                samples.append((f"laguerre k={k}/a={alpha:g}/b={beta:g}", res))
                ok = ok and res <= tol
    for z in (0.3, 0.5, 1.1, 2.7, 5.5, 9.25):
        res = gamma_duplication_residual(z)
        samples.append((f"duplication z={z:g}", res))
        ok = ok and res <= dup_tol
    from fractions import Fraction

    half = Fraction(1, 2)
    for k in range(min(cfg.k_max, 20) + 1):
        r1 = binom_reflection_residual(half, k)
        r2 = binom_reflection_residual(-half, k)
        r3 = merge_identity_exact(k)
        ok = ok and r1 == 0 and r2 == 0 and r3 == 0
    samples.append(("reflection+merge exact", 0.0))
    # the odd antiderivative spans only lower even modes: orthogonal to the
    # next even eigenfunction up
    basis = _basis(2 * min(cfg.k_max, 20) + 1)
    from scipy.special import roots_legendre

    x_ref, w_ref = roots_legendre(16)
    T = 20.0
    edges = np.linspace(-T, T, 161)
    mid = 0.5 * (edges[:-1] + edges[1:])
    halfw = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + halfw[:, None] * x_ref[None, :]).ravel()
    weights = (halfw[:, None] * w_ref[None, :]).ravel()
    for k in range(1, min(cfg.k_max, 20) + 1):
        integrand = eval_h(basis, 2 * k, nodes) * x_odd(basis, k - 1, nodes)
        res = abs(float(np.dot(weights, integrand)))
        samples.append((f"tail-orthogonality k={k:02d}", res))
        ok = ok and res <= junk_tol
    params = {
        "bridge_tolerance": bridge_tol,
        "control_min_residual": control_min,
        "duplication_tolerance": dup_tol,
        "orthogonality_tolerance": junk_tol,
        "exact_k_max": min(cfg.k_max, 20),
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
    }
    return _report("appendix_identities", params, samples, tol, ok, stable)


def negative_control_divergence(cfg: ScanConfig) -> EstimateReport:
    """Divergence demonstration: 2D inverse-square weight on the ground state.

    The weighted integral is log-divergent at the origin, so deepening the
    graded panels must keep growing the value; the control passes when two
    panel doublings at least double it.
    """
    basis = _basis(0)
    R = truncation_radius(0, 2)
    dirs, dwts = circle_directions(8)
    values = []
    samples = []
    for n_panels in (40, 80, 160):
        rule = radial_rule_panels(2, 1.0, R, n_panels, 12, allow_divergent=True)
        pts = (rule.nodes[:, None, None] * dirs[None, :, :]).reshape(-1, 2)
        w = (rule.weights[:, None] * dwts[None, :]).ravel()
        vals = evaluate_phi(basis, (0, 0), pts)
        v = float(np.dot(w, vals * vals))
        values.append(v)
        samples.append((f"panels={n_panels:03d}", v))
    growing = values[0] > 0 and values[1] > values[0] and values[2] > values[1]
    ok = growing and values[2] >= 2.0 * values[0]
    params = {
        "n": 2,
        "delta": 1.0,
        "seed": cfg.seed,
        "negative_control": True,
        "growth_factor": values[2] / values[0] if values[0] else 0.0,
        "required_growth": 2.0,
    }
    # a divergent integral has no doubling gate: growth itself is the verdict
    return _report("kato_nd", params, samples, 2.0, ok, True)


# ---------------------------------------------------------------------------
# serialization


@dataclass(frozen=True)
class RunManifest:
    """Everything one run produced: config snapshot, reports, wall times."""

    version: str
    config: ScanConfig
    reports: tuple
    wall_time_s: dict = field(default_factory=dict)


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"non-finite value {x!r} cannot be serialized")
    return format(x, ".17g")


def _json_text(obj) -> str:
    import json as _json

    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return repr(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, str):
        return _json.dumps(obj)
    if isinstance(obj, dict):
        inner = ",".join(
            _json.dumps(str(k)) + ":" + _json_text(v) for k, v in sorted(obj.items())
        )
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_json_text(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _config_dict(cfg: ScanConfig) -> dict:
    return {
        "k_max": cfg.k_max,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "rule_scale": cfg.rule_scale,
        "gate_tol": cfg.gate_tol,
        "tolerances": dict(cfg.tolerances) if cfg.tolerances else None,
        "bounds": dict(cfg.bounds) if cfg.bounds else None,
    }


def _report_dict(report: EstimateReport) -> dict:
    return {
        "estimate_id": report.estimate_id,
        "parameters": dict(report.parameters),
        "samples": [[lab, r] for lab, r in report.samples],
        "sup_ratio": report.sup_ratio,
        "tolerance": report.tolerance,
        "passed": report.passed,
        "status": report.status,
    }


def manifest_to_json_bytes(manifest: RunManifest) -> bytes:
    obj = {
        "version": manifest.version,
        "config": _config_dict(manifest.config),
        "reports": [_report_dict(r) for r in manifest.reports],
        "wall_time_s": dict(manifest.wall_time_s),
    }
    return (_json_text(obj) + "\n").encode("ascii")


def _config_from_dict(d: dict) -> ScanConfig:
    return ScanConfig(
        k_max=int(d["k_max"]),
        trials=int(d["trials"]),
        seed=int(d["seed"]),
        rule_scale=float(d["rule_scale"]),
        gate_tol=float(d["gate_tol"]),
        tolerances={k: float(v) for k, v in d["tolerances"].items()}
        if d.get("tolerances")
        else None,
        bounds={k: float(v) for k, v in d["bounds"].items()}
        if d.get("bounds")
        else None,
    )


def _report_from_dict(d: dict) -> EstimateReport:
    params = {
        k: (float(v) if isinstance(v, float) else v) for k, v in d["parameters"].items()
    }
    return EstimateReport(
        estimate_id=d["estimate_id"],
        parameters=params,
        samples=tuple((str(lab), float(r)) for lab, r in d["samples"]),
        sup_ratio=float(d["sup_ratio"]),
        tolerance=float(d["tolerance"]),
        passed=bool(d["passed"]),
        status=str(d["status"]),
    )


def manifest_from_json_bytes(data: bytes) -> RunManifest:
    import json as _json

    obj = _json.loads(data.decode("ascii"))
    return RunManifest(
        version=str(obj["version"]),
        config=_config_from_dict(obj["config"]),
        reports=tuple(_report_from_dict(r) for r in obj["reports"]),
        wall_time_s={k: float(v) for k, v in obj.get("wall_time_s", {}).items()},
    )


CSV_HEADER = "label,ratio,tolerance,passed"


def emit_table(manifest: RunManifest, fmt: str) -> bytes:
    """Deterministic byte rendering: full JSON object, or RFC-4180 CSV rows."""
    if fmt == "json":
        return manifest_to_json_bytes(manifest)
    if fmt == "csv":
        import csv
        import io

        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(CSV_HEADER.split(","))
        for report in manifest.reports:
            flag = "true" if report.passed else "false"
            tol = _fmt_float(report.tolerance)
            for label, ratio in report.samples:
                writer.writerow([label, _fmt_float(ratio), tol, flag])
        return buf.getvalue().encode("ascii")
    raise ValueError("format must be json or csv")
