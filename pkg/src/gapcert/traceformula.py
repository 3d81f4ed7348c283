"""Geometric side of the twisted trace formula and the exactly solvable circle oracle.

For a test pair (F, Fhat) and twisting angle theta, the geometric side is

    vol/(2 pi) * (F(0) - F''(0))
      + sum over closed geodesics  w(gamma) * cos(hol(gamma)) * cos(2 pi n(gamma) theta) * F(l(gamma)),

where w, hol, n are precomputed per geodesic term.  Collecting the geodesic
sum by winding degree |n| turns the whole theta-dependence into a finite
cosine series -- one geodesic pass serves every twist.

The circle of length L plays the role of an exactly solvable model: the
theta-twisted spectral parameters are t_k = 2 pi (k + theta) / L and Poisson
summation gives

    sum_k Fhat(t_k) = L * (F(0) + 2 sum_{m >= 1} F(mL) cos(2 pi m theta)),

which exercises every code path (identity term, cosine series, modulated and
band forms) against an independent closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectra import GeodesicTerm
from .testfunctions import BandTestFunction, ModulatedTestFunction, TestFunction

TWO_PI = 2.0 * math.pi


@dataclass
class GroupRingSeries:
    """Geometric side as  A + sum_n C_n cos(2 pi n theta),  finitely many C_n."""

    constant: float
    cosine_coeffs: dict[int, float] = field(default_factory=dict)

    def evaluate(self, theta):
        theta = np.asarray(theta, dtype=float)
        total = np.full_like(theta, self.constant)
        for n, c in self.cosine_coeffs.items():
            total += c * np.cos(TWO_PI * n * theta)
        return float(total) if total.ndim == 0 else total

    def theta_lipschitz_bound(self) -> float:
        """|dG/dtheta| <= 2 pi sum_n n |C_n| -- for judging theta-grid adequacy."""
        return TWO_PI * sum(n * abs(c) for n, c in self.cosine_coeffs.items())


def eval_series(series: GroupRingSeries, theta):
    return series.evaluate(theta)


def series_from_arrays(
    lengths: np.ndarray,
    holonomies: np.ndarray,
    degrees: np.ndarray,
    weights: np.ndarray,
    tf,
    volume: float,
) -> GroupRingSeries:
    """Build the cosine series from parallel per-term arrays."""
    f0, f2 = tf.identity_pair()
    constant = volume / TWO_PI * (f0 - f2)
    coeffs: dict[int, float] = {}
    if lengths.size:
        base = weights * np.cos(holonomies) * tf.value(lengths)
        ns = np.abs(degrees)
        for n in np.unique(ns):
            s = float(base[ns == n].sum())
            if n == 0:
                constant += s
            else:
                coeffs[int(n)] = coeffs.get(int(n), 0.0) + s
    return GroupRingSeries(constant=constant, cosine_coeffs=coeffs)


def geometric_series(
    terms: list[GeodesicTerm],
    tf,
    volume: float,
    cutoff: float | None = None,
) -> GroupRingSeries:
    """Geometric side of the trace formula for the given expanded terms.

    When ``cutoff`` is given, the test-function support must fit under it:
    otherwise geodesics absent from the dataset would still carry weight and
    the series would be silently wrong.
    """
    if cutoff is not None and tf.support > cutoff * (1 + 1e-12):
        raise ValueError(
            f"test-function support {tf.support:.6g} exceeds the dataset cutoff "
            f"{cutoff:.6g}; terms outside the dataset would be dropped silently"
        )
    lengths = np.array([t.length for t in terms], dtype=float)
    hols = np.array([t.holonomy for t in terms], dtype=float)
    degs = np.array([t.degree for t in terms], dtype=int)
    weights = np.array([t.weight for t in terms], dtype=float)
    return series_from_arrays(lengths, hols, degs, weights, tf, volume)


def spectral_side(eigenparams, tf) -> float:
    """Spectral side 1/2 sum_j Fhat(t_j) over supplied parameters."""
    params = np.asarray(eigenparams, dtype=float)
    if params.size == 0:
        return 0.0
    return 0.5 * float(np.sum(tf.spectral_weight(params)))


# -- circle oracle -----------------------------------------------------------


def circle_spectrum(length: float, theta: float, count: int) -> np.ndarray:
    """Spectral parameters t_k = 2 pi (k + theta) / L, k in [-count, count]."""
    if length <= 0:
        raise ValueError("length must be positive")
    k = np.arange(-count, count + 1)
    return TWO_PI * (k + theta) / length


def _tail_envelope(tf) -> tuple[float, float]:
    """(C, shift) with |spectral_weight(t)| <= C / (t - shift)^4 for large t.

    Generic seeds satisfy |fhat(t)| <= (8/3) sum |a_k| w_k / t^2 once
    t >= 2 w_max; band forms require the edge-smooth seed, whose transform
    gains two extra orders that exactly absorb the quartic prefactor.
    """
    if isinstance(tf, ModulatedTestFunction):
        c, shift = _tail_envelope(tf.base)
        return c, shift + tf.center
    if isinstance(tf, BandTestFunction):
        base = tf.base
        c3 = (8.0 / 3.0) * sum(
            abs(a) * w**3 for a, w in zip(base.coeffs, base.omegas)
        )
        return c3 * c3, 0.0
    c1 = (8.0 / 3.0) * sum(abs(a) * w for a, w in zip(tf.coeffs, tf.omegas))
    return c1 * c1, 0.0


def _base_of(tf) -> TestFunction:
    return tf.base if hasattr(tf, "base") else tf


def circle_window_count(length: float, tf, tol: float = 1e-12) -> int:
    """Window half-size making the truncated spectral sum accurate to tol."""
    c, shift = _tail_envelope(tf)
    base = _base_of(tf)
    t_min = 2.0 * max(base.omegas)
    if isinstance(tf, BandTestFunction):
        t_min = max(t_min, 2.0 * tf.band[1])
    t = shift + t_min + 10.0
    spacing = TWO_PI / length
    for _ in range(200):
        u = t - shift
        bound = 2.0 * ((1.0 / spacing) * c / (3.0 * max(u - spacing, 1e-9) ** 3) + c / u**4)
        if bound < tol:
            break
        t *= 1.5
    return int(math.ceil(t * length / TWO_PI)) + 2


def circle_geometric_series(length: float, tf) -> GroupRingSeries:
    """Geometric side of the circle identity as a cosine series in theta."""
    f0 = float(tf.value(0.0))
    coeffs: dict[int, float] = {}
    m = 1
    while m * length < tf.support:
        coeffs[m] = 2.0 * length * float(tf.value(m * length))
        m += 1
    return GroupRingSeries(constant=length * f0, cosine_coeffs=coeffs)


def circle_trace_check(
    length: float,
    theta: float,
    tf,
    count: int | None = None,
    tol: float = 1e-12,
) -> tuple[float, float]:
    """Both sides of the circle trace identity, for comparison.

    spectral = sum_k Fhat(t_k) over the (auto-sized) window;
    geometric = L (F(0) + 2 sum_m F(mL) cos(2 pi m theta)).
    """
    if count is None:
        count = circle_window_count(length, tf, tol)
    params = circle_spectrum(length, theta, count)
    spectral = float(np.sum(tf.spectral_weight(params)))
    geometric = float(circle_geometric_series(length, tf).evaluate(theta))
    return spectral, geometric
