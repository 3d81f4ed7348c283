"""Certified two-sided bounds for the limiting spectral gap.

The J functional at center t and twist theta is

    J(t, theta) = 2 * G_theta(H_t) / Hhat_t(t),

where H_t is the base test function modulated to concentrate its transform
near t, and G_theta is the geometric side of the trace formula.  Since the
transform is nonnegative, J(sqrt(lambda)) upper-bounds the multiplicity of
lambda in the twisted coexact spectrum, so:

  * J below a threshold on a (t, theta) grid certifies a gap (no eigenvalue
    with sqrt(lambda) <= t for any sampled twist), and
  * a positive geometric side for a band-sign test function certifies that
    some eigenvalue square root lies inside the band.

Certificates are grid-based with an explicit margin: "certified" means the
inequality holds on the stated grid with the stated margin, and the reported
theta-Lipschitz bound lets the caller judge whether the grid resolves the
twist dependence.  No rigorous rounding-error control is attempted.

The same machinery runs against two geometric models: a ManifoldModel built
from a spectrum dataset, and the CircleModel whose spectrum is known in
closed form (the soundness test bed).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .spectra import SpectrumDataset, expand_powers
from .testfunctions import (
    BandTestFunction,
    ModulatedTestFunction,
    TestFunction,
    smooth_edge_coeffs,
)
from .traceformula import TWO_PI, GroupRingSeries, series_from_arrays

NORM_FLOOR = 1e-12          # Hhat_t(t) below this is a degenerate normalization
EXIST_MARGIN_REL = 1e-9     # positivity margin for existence certificates


@dataclass(frozen=True)
class SweepConfig:
    """Grid and threshold parameters shared by the sweep and the certificates."""

    t_max: float = 1.2
    t_step: float = 1e-3
    theta_step: float = 1.0 / 2048.0
    margin: float = 0.05
    m_min: int | None = None          # None: 2 if the dataset is flagged even-multiplicity
    coeff_count: int = 4
    half_support: float | None = None  # None: half the dataset cutoff
    seed: int = 0
    workers: int = 1
    bisect_tol: float = 1e-4           # in sqrt(lambda) units
    theta_values: tuple[float, ...] | None = None  # overrides the uniform grid

    def __post_init__(self) -> None:
        if self.t_step <= 0 or self.theta_step <= 0 or self.margin <= 0:
            raise ValueError("t_step, theta_step and margin must be positive")
        if self.m_min is not None and self.m_min not in (1, 2):
            raise ValueError("m_min must be 1 or 2")
        if not 1 <= self.coeff_count <= 8:
            raise ValueError("coeff_count must be in 1..8")

    def theta_grid(self) -> np.ndarray:
        if self.theta_values is not None:
            return np.asarray(self.theta_values, dtype=float)
        n = max(1, round(1.0 / self.theta_step))
        return np.arange(n) / n

    def snapshot(self) -> dict:
        d = asdict(self)
        if d["theta_values"] is not None:
            d["theta_values"] = list(d["theta_values"])
        return d


@dataclass
class CertResult:
    kind: str                                  # gap_lower_bound | eigenvalue_exists | delta_interval
    status: str                                # certified | inconclusive
    interval: tuple[float, float]              # sqrt(lambda) units
    witness: dict | None = None
    config: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "status": self.status,
            "interval": list(self.interval),
            "witness": self.witness,
            "config": self.config,
            "details": self.details,
        }


# -- geometric models ---------------------------------------------------------


class ManifoldModel:
    """Trace-formula geometric side of a spectrum dataset, cached for sweeps."""

    def __init__(self, dataset: SpectrumDataset) -> None:
        self.dataset = dataset
        terms = expand_powers(dataset)
        order = np.argsort([abs(t.degree) for t in terms], kind="stable")
        self.lengths = np.array([terms[i].length for i in order], dtype=float)
        self.holonomies = np.array([terms[i].holonomy for i in order], dtype=float)
        self.degrees = np.array([terms[i].degree for i in order], dtype=int)
        self.weights = np.array([terms[i].weight for i in order], dtype=float)
        self._abs_degrees = np.abs(self.degrees)
        self.group_labels = np.unique(self._abs_degrees)
        self.volume = dataset.volume
        self.support_limit = dataset.cutoff_R
        self.even_multiplicity = dataset.even_multiplicity
        self.default_half_support = dataset.cutoff_R / 2.0

    def _check_support(self, tf) -> None:
        if tf.support > self.support_limit * (1 + 1e-12):
            raise ValueError(
                f"test-function support {tf.support:.6g} exceeds the dataset cutoff "
                f"{self.support_limit:.6g}"
            )

    def series(self, tf) -> GroupRingSeries:
        self._check_support(tf)
        return series_from_arrays(
            self.lengths, self.holonomies, self.degrees, self.weights,
            tf, self.volume,
        )

    def identity_coefficient(self, tf) -> float:
        f0, f2 = tf.identity_pair()
        return self.volume / TWO_PI * (f0 - f2)

    def identity_sweep(self, base: TestFunction, t: np.ndarray) -> np.ndarray:
        """Identity-term coefficient of the t-modulated form, vectorized in t."""
        h0, h2 = base.identity_pair()
        return self.volume / TWO_PI * ((1.0 + t * t) * h0 - h2)

    def geodesic_base(self, base: TestFunction) -> np.ndarray:
        """Per-term factor independent of (t, theta)."""
        self._check_support(base)
        return self.weights * np.cos(self.holonomies) * base.value(self.lengths)

    def abs_series_scale(self, tf) -> float:
        """Sum of absolute contributions; sets the existence positivity margin."""
        f0, f2 = tf.identity_pair()
        ident = abs(self.volume / TWO_PI * (f0 - f2))
        if self.lengths.size == 0:
            return ident
        geo = np.abs(self.weights * np.cos(self.holonomies) * tf.value(self.lengths))
        return ident + float(geo.sum())


class CircleModel:
    """Exactly solvable stand-in: twisted circle of the given length.

    The theta-twisted spectral parameters are 2 pi (k + theta) / L, and the
    geometric side is the Poisson-dual cosine series, so every certificate
    can be checked against the known spectrum.
    """

    def __init__(self, length: float, default_half_support: float = 2.0) -> None:
        if length <= 0:
            raise ValueError("length must be positive")
        self.length = length
        self.volume = 0.0
        self.support_limit = math.inf
        self.even_multiplicity = False
        self.default_half_support = default_half_support

    def _winding_lengths(self, support: float) -> np.ndarray:
        m_max = int(math.floor(support / self.length)) + 1
        ms = np.arange(1, m_max + 1, dtype=float)
        return ms[ms * self.length < support] * self.length

    def series(self, tf) -> GroupRingSeries:
        coeffs: dict[int, float] = {}
        for m, ell in enumerate(self._winding_lengths(tf.support), start=1):
            coeffs[m] = 2.0 * self.length * float(tf.value(ell))
        return GroupRingSeries(
            constant=self.length * float(tf.value(0.0)), cosine_coeffs=coeffs
        )

    def identity_coefficient(self, tf) -> float:
        return self.length * float(tf.value(0.0))

    @property
    def lengths(self) -> np.ndarray:
        # populated lazily per test function support in sweep paths
        raise AttributeError("CircleModel terms depend on the test function support")

    def identity_sweep(self, base: TestFunction, t: np.ndarray) -> np.ndarray:
        h0, _ = base.identity_pair()
        return np.full_like(np.asarray(t, dtype=float), self.length * h0)

    def sweep_arrays(self, base: TestFunction):
        ells = self._winding_lengths(base.support)
        degrees = np.arange(1, ells.size + 1)
        weights = np.full(ells.size, 2.0 * self.length)
        hols = np.zeros(ells.size)
        return ells, hols, degrees, weights

    def geodesic_base(self, base: TestFunction) -> np.ndarray:
        ells, hols, _, weights = self.sweep_arrays(base)
        return weights * np.cos(hols) * base.value(ells)

    def abs_series_scale(self, tf) -> float:
        s = self.series(tf)
        return abs(s.constant) + sum(abs(c) for c in s.cosine_coeffs.values())

    def min_parameter(self, theta: float) -> float:
        """Smallest |spectral parameter| of the twist: 2 pi dist(theta, Z) / L."""
        frac = theta - math.floor(theta)
        return TWO_PI * min(frac, 1.0 - frac) / self.length

    def spectrum(self, theta: float, count: int = 64) -> np.ndarray:
        from .traceformula import circle_spectrum

        return circle_spectrum(self.length, theta, count)


def as_model(source):
    if isinstance(source, SpectrumDataset):
        return ManifoldModel(source)
    return source


def _model_term_groups(model, base: TestFunction):
    """(lengths, base_factors, group slices by |degree|) sorted by |degree|."""
    if isinstance(model, ManifoldModel):
        lengths = model.lengths
        bases = model.geodesic_base(base)
        abs_deg = model._abs_degrees
    else:
        lengths, hols, degrees, weights = model.sweep_arrays(base)
        bases = weights * np.cos(hols) * base.value(lengths)
        abs_deg = np.abs(degrees)
    labels, starts = np.unique(abs_deg, return_index=True)
    slices = []
    for i, n in enumerate(labels):
        start = starts[i]
        end = starts[i + 1] if i + 1 < len(starts) else abs_deg.size
        slices.append((int(n), slice(start, end)))
    return lengths, bases, slices


# -- J functional ---------------------------------------------------------------


def effective_m_min(model, cfg: SweepConfig) -> int:
    if cfg.m_min is not None:
        return cfg.m_min
    return 2 if getattr(model, "even_multiplicity", False) else 1


def default_base(model, cfg: SweepConfig, coeffs=None) -> TestFunction:
    r1 = cfg.half_support if cfg.half_support is not None else model.default_half_support
    if coeffs is None:
        coeffs = (1.0,) + (0.0,) * (cfg.coeff_count - 1)
    return TestFunction(r1, coeffs)


def j_value(model_or_dataset, tf: TestFunction, x: float, theta: float) -> float:
    """J(x, theta) = 2 G_theta(H_x) / Hhat_x(x); reference (non-vectorized) path."""
    model = as_model(model_or_dataset)
    mod = ModulatedTestFunction(tf, x)
    norm = mod.normalization()
    if norm <= NORM_FLOOR:
        raise ValueError(f"degenerate normalization Hhat_x(x) = {norm:.3e} at x = {x}")
    return 2.0 * float(model.series(mod).evaluate(theta)) / norm


@dataclass
class SweepTable:
    t_grid: np.ndarray
    theta_grid: np.ndarray
    j: np.ndarray                 # shape (len(t_grid), len(theta_grid))
    per_t_max: np.ndarray
    theta_lipschitz: float        # max over t of the series bound, in J units
    config: dict

    def rows_at_theta(self, theta: float):
        k = int(np.argmin(np.abs(self.theta_grid - theta)))
        return self.t_grid, float(self.theta_grid[k]), self.j[:, k]

    def write_csv(self, fh, theta: float | None = None) -> None:
        fh.write("t,theta,J\n")
        if theta is None:
            for i, t in enumerate(self.t_grid):
                for k, th in enumerate(self.theta_grid):
                    fh.write(f"{t!r},{th!r},{self.j[i, k]!r}\n")
        else:
            ts, th, col = self.rows_at_theta(theta)
            for t, v in zip(ts, col):
                fh.write(f"{t!r},{th!r},{v!r}\n")


def _sweep_j_block(model, base, t_block, cos_theta, lengths, bases, slices):
    norm = 0.5 * (base.spectral_weight(0.0) + base.spectral_weight(2.0 * t_block))
    if np.any(norm <= NORM_FLOOR):
        bad = float(t_block[np.argmin(norm)])
        raise ValueError(f"degenerate normalization on the sweep grid near t = {bad}")
    cos_tl = np.cos(np.outer(t_block, lengths)) * bases  # (T, N)
    a_geo = np.zeros(t_block.size)
    c_rows = []
    for n, sl in slices:
        s = cos_tl[:, sl].sum(axis=1)
        if n == 0:
            a_geo += s
        else:
            c_rows.append(s)
    a_full = model.identity_sweep(base, t_block) + a_geo
    j = np.broadcast_to(a_full[:, None], (t_block.size, cos_theta.shape[1])).copy()
    lipschitz = 0.0
    if c_rows:
        c_mat = np.stack(c_rows, axis=1)  # (T, D)
        j += c_mat @ cos_theta
        ns = np.array([n for n, _ in slices if n != 0], dtype=float)
        lipschitz = float(np.max(TWO_PI * np.abs(c_mat) @ ns))
    j *= 2.0 / norm[:, None]
    lipschitz *= 2.0 / float(np.min(norm))
    return j, lipschitz


def j_sweep(model_or_dataset, tf: TestFunction, cfg: SweepConfig,
            t_grid: np.ndarray | None = None) -> SweepTable:
    """Evaluate J on the (t, theta) product grid.

    The geodesic pass is done once per t (cosine series in theta), and t is
    chunked so memory stays bounded; chunks are independent, so the worker
    count never changes the result.
    """
    model = as_model(model_or_dataset)
    if t_grid is None:
        n_t = int(math.floor(cfg.t_max / cfg.t_step + 0.5)) + 1
        t_grid = np.arange(n_t) * cfg.t_step
    theta_grid = cfg.theta_grid()
    lengths, bases, slices = _model_term_groups(model, tf)
    ns = np.array([n for n, _ in slices if n != 0], dtype=float)
    cos_theta = np.cos(TWO_PI * np.outer(ns, theta_grid)) if ns.size else np.zeros((0, theta_grid.size))

    max_cells = 4_000_000
    block_len = max(1, min(t_grid.size, max_cells // max(1, lengths.size)))
    blocks = [
        (i, t_grid[i : i + block_len]) for i in range(0, t_grid.size, block_len)
    ]

    j = np.empty((t_grid.size, theta_grid.size))
    lipschitz = 0.0

    def run(block):
        i, tb = block
        return i, _sweep_j_block(model, tf, tb, cos_theta, lengths, bases, slices)

    if cfg.workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            for i, (jb, lip) in pool.map(run, blocks):
                j[i : i + jb.shape[0]] = jb
                lipschitz = max(lipschitz, lip)
    else:
        for block in blocks:
            i, (jb, lip) = run(block)
            j[i : i + jb.shape[0]] = jb
            lipschitz = max(lipschitz, lip)

    return SweepTable(
        t_grid=t_grid,
        theta_grid=theta_grid,
        j=j,
        per_t_max=j.max(axis=1),
        theta_lipschitz=lipschitz,
        config=cfg.snapshot(),
    )


# -- certificates ---------------------------------------------------------------


def certify_gap(model_or_dataset, tf: TestFunction, delta_candidate: float,
                cfg: SweepConfig) -> CertResult:
    """Grid certificate that no sampled twist has an eigenvalue below delta_candidate."""
    model = as_model(model_or_dataset)
    if delta_candidate < 0:
        raise ValueError("delta_candidate must be >= 0")
    threshold = effective_m_min(model, cfg) - cfg.margin
    sqrt_delta = math.sqrt(delta_candidate)
    if delta_candidate == 0.0:
        return CertResult(
            kind="gap_lower_bound",
            status="certified",
            interval=(0.0, 0.0),
            witness=None,
            config=cfg.snapshot(),
            details={"threshold": threshold, "note": "vacuous grid"},
        )
    n_t = int(math.floor(sqrt_delta / cfg.t_step)) + 1
    t_grid = np.minimum(np.arange(n_t + 1) * cfg.t_step, sqrt_delta)
    t_grid = np.unique(t_grid)
    table = j_sweep(model, tf, cfg, t_grid=t_grid)
    i, k = np.unravel_index(np.argmax(table.j), table.j.shape)
    grid_max = float(table.j[i, k])
    ok = grid_max <= threshold
    return CertResult(
        kind="gap_lower_bound",
        status="certified" if ok else "inconclusive",
        interval=(0.0, sqrt_delta),
        witness={
            "t": float(table.t_grid[i]),
            "theta": float(table.theta_grid[k]),
            "j": grid_max,
        },
        config=cfg.snapshot(),
        details={
            "threshold": threshold,
            "grid_max": grid_max,
            "theta_lipschitz": table.theta_lipschitz,
        },
    )


def certify_existence(model_or_dataset, tf: TestFunction, band: tuple[float, float],
                      theta: float, cfg: SweepConfig | None = None) -> CertResult:
    """Positivity certificate that some eigenvalue sqrt lies in the band at this twist.

    The base seed is projected onto the vanishing-edge-slope constraint if it
    does not already satisfy it (the band form requires it); the coefficients
    actually used are recorded in the result.
    """
    model = as_model(model_or_dataset)
    cfg = cfg or SweepConfig()
    a, b = float(band[0]), float(band[1])
    if not 0 < a < b:
        raise ValueError(f"band must satisfy 0 < a < b, got [{a}, {b}]")
    coeffs = tf.coeffs
    try:
        band_tf = BandTestFunction(tf, (a, b))
    except ValueError:
        coeffs = smooth_edge_coeffs(tf.coeffs, tf.half_support)
        band_tf = BandTestFunction(TestFunction(tf.half_support, coeffs), (a, b))
    value = float(model.series(band_tf).evaluate(theta))
    scale = model.abs_series_scale(band_tf)
    margin = EXIST_MARGIN_REL * scale
    ok = value > margin
    return CertResult(
        kind="eigenvalue_exists",
        status="certified" if ok else "inconclusive",
        interval=(a, b),
        witness={"theta": float(theta), "geometric_side": value},
        config=cfg.snapshot(),
        details={"positivity_margin": margin, "scale": scale, "coeffs": list(coeffs)},
    )


# -- coefficient optimization ----------------------------------------------------


def _objective(model, r1: float, coeffs, band: tuple[float, float],
               cfg: SweepConfig) -> float:
    lo, hi = band
    step = cfg.t_step * 4.0
    n = max(2, int(math.ceil((hi - lo) / step)) + 1)
    t_grid = np.linspace(lo, hi, n)
    coarse_theta = cfg.theta_values
    if coarse_theta is None:
        m = max(4, min(256, round(1.0 / cfg.theta_step)))
        coarse_theta = tuple(np.arange(m) / m)
    coarse_cfg = replace(cfg, theta_values=tuple(coarse_theta))
    try:
        tf = TestFunction(r1, coeffs)
        table = j_sweep(model, tf, coarse_cfg, t_grid=t_grid)
    except ValueError:
        return math.inf
    return float(table.per_t_max.max())


def optimize_coeffs(model_or_dataset, objective_band: tuple[float, float],
                    cfg: SweepConfig) -> tuple[tuple[float, ...], float]:
    """Minimize the grid maximum of J over the band by seeded coordinate descent.

    Deterministic for a given seed; returns (coefficients, achieved maximum).
    Local search only -- no optimality claim.
    """
    model = as_model(model_or_dataset)
    r1 = cfg.half_support if cfg.half_support is not None else model.default_half_support
    k = cfg.coeff_count
    if k == 1:
        return (1.0,), _objective(model, r1, (1.0,), objective_band, cfg)

    rng = np.random.default_rng(cfg.seed)
    starts = [
        (1.0,) + (0.0,) * (k - 1),
        tuple(0.5**i for i in range(k)),
        tuple([1.0] + list(rng.uniform(-0.5, 0.5, size=k - 1))),
    ]
    best_coeffs, best_val = None, math.inf
    initial_val = _objective(model, r1, starts[0], objective_band, cfg)

    for start in starts:
        cur = list(start)
        cur_val = _objective(model, r1, tuple(cur), objective_band, cfg)
        step = 0.5
        while step > 1e-3:
            improved = False
            for i in range(1, k):      # a_0 fixed: J is scale-invariant
                for delta in (step, -step):
                    cand = cur.copy()
                    cand[i] += delta
                    v = _objective(model, r1, tuple(cand), objective_band, cfg)
                    if v < cur_val - 1e-12:
                        cur, cur_val = cand, v
                        improved = True
            if not improved:
                step *= 0.4
        if cur_val < best_val:
            best_coeffs, best_val = tuple(cur), cur_val

    if best_val > initial_val:          # descent property: never worse than the plain start
        best_coeffs, best_val = starts[0], initial_val
    return best_coeffs, best_val


# -- the full pipeline -------------------------------------------------------------


def _first_crossing(table: SweepTable, threshold: float) -> int | None:
    """Index of the first grid t whose all-theta maximum exceeds the threshold."""
    above = np.nonzero(table.per_t_max > threshold)[0]
    return int(above[0]) if above.size else None


def _local_peak_ts(t_grid: np.ndarray, values: np.ndarray, top: int = 3) -> list[float]:
    """t positions of the strongest interior local maxima of a sampled curve."""
    if values.size < 3:
        return [float(t_grid[int(np.argmax(values))])] if values.size else []
    interior = (values[1:-1] >= values[:-2]) & (values[1:-1] >= values[2:])
    idx = np.nonzero(interior)[0] + 1
    if idx.size == 0:
        idx = np.array([int(np.argmax(values))])
    best = idx[np.argsort(values[idx])[::-1][:top]]
    return [float(t_grid[i]) for i in best]


def _band_scan(model, band_base: TestFunction, centers, widths,
               theta_grid: np.ndarray, best_hi: float):
    """Try band certificates at all (center, width) pairs, each over every twist.

    The three derivative vectors of H at the geodesic lengths are shared by
    every candidate band, so each band costs one linear combination plus a
    cosine-series sweep over the theta grid.
    """
    if isinstance(model, ManifoldModel):
        lengths = model.lengths
        w_cos = model.weights * np.cos(model.holonomies)
        abs_deg = model._abs_degrees
    else:
        lengths, hols, degrees, weights = model.sweep_arrays(band_base)
        w_cos = weights * np.cos(hols)
        abs_deg = np.abs(degrees)
    d0 = np.atleast_1d(band_base.deriv_value(0, lengths))
    d2 = np.atleast_1d(band_base.deriv_value(2, lengths))
    d4 = np.atleast_1d(band_base.deriv_value(4, lengths))
    labels, starts = np.unique(abs_deg, return_index=True) if abs_deg.size else (np.array([], dtype=int), np.array([], dtype=int))
    slices = [
        (int(n), slice(starts[i], starts[i + 1] if i + 1 < len(starts) else abs_deg.size))
        for i, n in enumerate(labels)
    ]
    ns = np.array([n for n, _ in slices if n != 0], dtype=float)
    cos_theta = np.cos(TWO_PI * np.outer(ns, theta_grid)) if ns.size else np.zeros((0, theta_grid.size))

    witness = None
    for t_p in sorted(set(float(c) for c in centers)):
        if t_p <= 0 or t_p * t_p >= best_hi:
            continue
        for width in widths:
            a, b = t_p - width, t_p + width
            if a <= 0 or b * b >= best_hi:
                continue
            band_tf = BandTestFunction(band_base, (a, b))
            s1, s2 = a * a + b * b, a * a * b * b
            contrib = w_cos * (-d4 - s1 * d2 - s2 * d0)
            ident = model.identity_coefficient(band_tf)
            constant = ident
            c_rows = []
            for n, sl in slices:
                s = float(contrib[sl].sum())
                if n == 0:
                    constant += s
                else:
                    c_rows.append(s)
            values = np.full(theta_grid.size, constant)
            if c_rows:
                values += np.asarray(c_rows) @ cos_theta
            scale = abs(ident) + float(np.abs(contrib).sum())
            margin = EXIST_MARGIN_REL * scale
            k = int(np.argmax(values))
            if values[k] > margin:
                best_hi = b * b
                witness = {
                    "theta": float(theta_grid[k]),
                    "geometric_side": float(values[k]),
                    "band": [a, b],
                }
    return best_hi, witness


def _max_over_theta(model, base: TestFunction, t: float, cfg: SweepConfig) -> float:
    table = j_sweep(model, base, cfg, t_grid=np.array([t]))
    return float(table.per_t_max[0])


def delta_interval(model_or_dataset, cfg: SweepConfig) -> CertResult:
    """Two-sided interval for the infimum-over-twists spectral gap.

    Pipeline: optimize the seed coefficients near the first threshold
    crossing, refine the certified lower endpoint by bisection, then scan
    twists for a band certificate pinning the upper endpoint.
    """
    model = as_model(model_or_dataset)
    threshold = effective_m_min(model, cfg) - cfg.margin
    r1 = cfg.half_support if cfg.half_support is not None else model.default_half_support

    base0 = default_base(model, cfg)
    table0 = j_sweep(model, base0, cfg)
    cross0 = _first_crossing(table0, threshold)

    # optimize around the crossing (or the top of the range if never crossed)
    if cross0 is None:
        band = (0.8 * cfg.t_max, cfg.t_max)
    else:
        tc = float(table0.t_grid[cross0])
        band = (max(0.0, 0.7 * tc), min(cfg.t_max, 1.3 * tc + 5 * cfg.t_step))
    coeffs, achieved = optimize_coeffs(model, band, cfg)
    base1 = TestFunction(r1, coeffs)
    table1 = j_sweep(model, base1, cfg)
    cross1 = _first_crossing(table1, threshold)

    def reach(cross, table):
        return table.t_grid.size if cross is None else cross

    base, table, cross = (
        (base1, table1, cross1)
        if reach(cross1, table1) >= reach(cross0, table0)
        else (base0, table0, cross0)
    )

    if cross == 0:
        sqrt_lo = 0.0
    elif cross is None:
        sqrt_lo = float(table.t_grid[-1])
    else:
        lo_t = float(table.t_grid[cross - 1])
        hi_t = float(table.t_grid[cross])
        while hi_t - lo_t > cfg.bisect_tol:
            mid = 0.5 * (lo_t + hi_t)
            if _max_over_theta(model, base, mid, cfg) <= threshold:
                lo_t = mid
            else:
                hi_t = mid
        sqrt_lo = lo_t
    delta_lo = sqrt_lo**2

    # band scan for the upper endpoint
    theta_grid = table.theta_grid
    try:
        # with one coefficient the edge constraint has no nonzero solution;
        # append the forced second mode (a1 = a0 w0/w1 = a0/3)
        band_coeffs = coeffs if len(coeffs) > 1 else (1.0, 1.0 / 3.0)
        band_base = TestFunction(r1, smooth_edge_coeffs(band_coeffs, r1))
    except ValueError:
        band_base = None

    best_hi = math.inf
    best_witness = None
    if band_base is not None:
        # candidate centers: local peaks of the (denominator-free) geometric
        # side across sampled twists, plus a coarse sliding net as fallback
        norm_grid = 0.5 * (
            base.spectral_weight(0.0) + base.spectral_weight(2.0 * table.t_grid)
        )
        start = max(cross - 1, 0) if cross is not None else 0
        centers: set[float] = set()
        stride = max(1, theta_grid.size // 16)
        cand_cols = list(range(0, theta_grid.size, stride))
        if cross is not None:
            cand_cols.append(int(np.argmax(table.j[cross])))
        for k in cand_cols:
            numer = table.j[start:, k] * norm_grid[start:]
            centers.update(_local_peak_ts(table.t_grid[start:], numer, top=3))
        lo_center = max(sqrt_lo, 4 * cfg.t_step)
        centers.update(np.arange(lo_center + 0.025, float(table.t_grid[-1]), 0.05).tolist())
        best_hi, best_witness = _band_scan(
            model, band_base, centers, (0.01, 0.02, 0.05, 0.10), theta_grid, best_hi
        )

    certified = best_hi < math.inf
    sqrt_hi = math.sqrt(best_hi) if certified else math.inf
    return CertResult(
        kind="delta_interval",
        status="certified" if certified else "inconclusive",
        interval=(sqrt_lo, sqrt_hi),
        witness=best_witness,
        config=cfg.snapshot(),
        details={
            "lambda_interval": [delta_lo, best_hi if certified else None],
            "threshold": threshold,
            "coeffs": list(base.coeffs),
            "theta_lipschitz": table.theta_lipschitz,
        },
    )
