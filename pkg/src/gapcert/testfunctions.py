"""Compactly supported even test functions with closed-form Fourier pairs.

The seed is a cosine polynomial on [-R1, R1],

    f(x) = sum_k a_k cos(w_k x),   w_k = (k + 1/2) pi / R1,

which vanishes at the support edges by construction.  The working function is
its autocorrelation H(x) = int f(y) f(y+x) dy, supported in [-2R1, 2R1], whose
transform Hhat(t) = int H(x) e^{-itx} dx equals fhat(t)^2 >= 0.

The half-integer frequencies make everything closed-form:

  * fhat(t) = sum_k a_k * 2 w_k R1 * sinc((|t| - w_k) R1) / (w_k + |t|),
    with fhat(w_k) = a_k R1 exactly (the apparent poles are removable);
  * H restricted to [0, 2R1] is a finite combination of terms
    (c0 + c1 x) e^{i w x}, so all derivatives are exact term manipulations;
  * H(0) = R1 sum a_k^2 and H''(0) = -R1 sum a_k^2 w_k^2.

Two derived forms feed the certificates: modulation H(x) cos(t0 x) shifts the
transform to (Hhat(t-t0) + Hhat(t+t0))/2, and the band form multiplies the
transform by (b^2-t^2)(t^2-a^2), which is negative outside |t| in [a, b].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "TestFunction",
    "ModulatedTestFunction",
    "BandTestFunction",
    "smooth_edge_coeffs",
]


def _sinc(u: np.ndarray) -> np.ndarray:
    """sin(u)/u with a series switch at small |u| (removable singularity)."""
    u = np.asarray(u, dtype=float)
    small = np.abs(u) < 1e-6
    safe = np.where(small, 1.0, u)
    return np.where(small, 1.0 - u * u / 6.0, np.sin(safe) / safe)


@dataclass(frozen=True)
class _TrigTerm:
    """Re[(c0 + c1 x) e^{i w x}] -- closed under differentiation."""

    c0: complex
    c1: complex
    omega: float

    def derivative(self) -> "_TrigTerm":
        return _TrigTerm(self.c1 + 1j * self.omega * self.c0, 1j * self.omega * self.c1, self.omega)


def _eval_terms(terms: list[_TrigTerm], x: np.ndarray) -> np.ndarray:
    total = np.zeros_like(x, dtype=float)
    for t in terms:
        total += ((t.c0 + t.c1 * x) * np.exp(1j * t.omega * x)).real
    return total


def _scalar_ok(out: np.ndarray):
    return float(out) if np.ndim(out) == 0 else out


class TestFunction:
    """Autocorrelation pair (H, Hhat) of a cosine-polynomial seed."""

    def __init__(self, half_support: float, coeffs) -> None:
        if half_support <= 0:
            raise ValueError("half_support must be positive")
        coeffs = tuple(float(c) for c in coeffs)
        if not coeffs:
            raise ValueError("need at least one coefficient")
        if not any(c != 0.0 for c in coeffs):
            raise ValueError("all coefficients are zero")
        self.half_support = float(half_support)
        self.coeffs = coeffs
        self.omegas = tuple(
            (k + 0.5) * math.pi / self.half_support for k in range(len(coeffs))
        )

    # -- seed ---------------------------------------------------------------

    def seed(self, x):
        """The seed f itself (mostly for quadrature cross-checks)."""
        x = np.asarray(x, dtype=float)
        inside = np.abs(x) < self.half_support
        val = np.zeros_like(x)
        for a, w in zip(self.coeffs, self.omegas):
            val += a * np.cos(w * x)
        return _scalar_ok(np.where(inside, val, 0.0))

    @property
    def edge_slope_sum(self) -> float:
        """f'(R1-) = -sum a_k (-1)^k w_k; zero iff the seed is C^1 across the edge."""
        return sum(a * (-1) ** k * w for k, (a, w) in enumerate(zip(self.coeffs, self.omegas)))

    # -- transform ------------------------------------------------------------

    def fhat(self, t):
        """Fourier transform of the seed; real, even, fhat(w_k) = a_k R1."""
        t = np.abs(np.asarray(t, dtype=float))
        r1 = self.half_support
        total = np.zeros_like(t)
        for a, w in zip(self.coeffs, self.omegas):
            total += a * 2.0 * w * r1 * _sinc((t - w) * r1) / (w + t)
        return _scalar_ok(total)

    def spectral_weight(self, t):
        """Hhat(t) = fhat(t)^2."""
        f = self.fhat(t)
        return f * f

    # -- autocorrelation ------------------------------------------------------

    @cached_property
    def _terms(self) -> list[_TrigTerm]:
        """H on [0, 2R1] as a sum of Re[(c0 + c1 x) e^{i w x}] terms.

        Diagonal pairs give (a^2/2)((2R1 - x) cos(w x) + sin(w x)/w); mixed
        pairs give pure sines.  sin(wx) enters as Re[-i e^{iwx}].
        """
        r1 = self.half_support
        terms: list[_TrigTerm] = []
        for j, (aj, wj) in enumerate(zip(self.coeffs, self.omegas)):
            for k, (ak, wk) in enumerate(zip(self.coeffs, self.omegas)):
                if j == k:
                    terms.append(_TrigTerm(ak * ak * r1, -0.5 * ak * ak, wk))
                    terms.append(_TrigTerm(-0.5j * ak * ak / wk, 0.0, wk))
                else:
                    s = 0.5 * aj * ak * (-1.0) ** (j + k)
                    a_coef = s * (-1.0 / (wj - wk) + 1.0 / (wj + wk))
                    b_coef = s * (1.0 / (wj - wk) + 1.0 / (wj + wk))
                    terms.append(_TrigTerm(-1j * a_coef, 0.0, wj))
                    terms.append(_TrigTerm(-1j * b_coef, 0.0, wk))
        return terms

    @cached_property
    def _deriv_terms(self) -> list[list[_TrigTerm]]:
        chains = [self._terms]
        for _ in range(6):
            chains.append([t.derivative() for t in chains[-1]])
        return chains

    @property
    def support(self) -> float:
        """Support radius of H: H vanishes outside [-support, support]."""
        return 2.0 * self.half_support

    def value(self, x):
        """H(x); zero outside [-2R1, 2R1]."""
        return self.deriv_value(0, x)

    def deriv_value(self, order: int, x):
        """order-th derivative of H at x >= 0 (evaluated at |x| otherwise)."""
        x = np.abs(np.asarray(x, dtype=float))
        inside = x < self.support
        vals = _eval_terms(self._deriv_terms[order], np.where(inside, x, 0.0))
        return _scalar_ok(np.where(inside, vals, 0.0))

    def h_at_zero(self) -> float:
        return self.half_support * sum(a * a for a in self.coeffs)

    def h2_at_zero(self) -> float:
        return -self.half_support * sum(
            a * a * w * w for a, w in zip(self.coeffs, self.omegas)
        )

    def identity_pair(self) -> tuple[float, float]:
        """(F(0), F''(0)) for the identity term of the trace formula, F = H."""
        return self.h_at_zero(), self.h2_at_zero()


def eval_fhat(tf: TestFunction, t):
    return tf.fhat(t)


def eval_H(tf: TestFunction, x):
    return tf.value(x)


def eval_H_derivs(tf: TestFunction) -> tuple[float, float]:
    """(H(0), H''(0)) in closed form."""
    return tf.h_at_zero(), tf.h2_at_zero()


class ModulatedTestFunction:
    """H_c(x) = H(x) cos(c x): localizes the transform near |t| = c.

    Hhat_c(t) = (Hhat(t-c) + Hhat(t+c))/2 stays nonnegative, and the peak
    value Hhat_c(c) = (Hhat(0) + Hhat(2c))/2 normalizes the J functional.
    """

    def __init__(self, base: TestFunction, center: float) -> None:
        if center < 0:
            raise ValueError("center must be >= 0")
        self.base = base
        self.center = float(center)

    @property
    def support(self) -> float:
        return self.base.support

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return _scalar_ok(self.base.value(x) * np.cos(self.center * x))

    def spectral_weight(self, t):
        t = np.asarray(t, dtype=float)
        return _scalar_ok(
            0.5
            * (
                self.base.spectral_weight(t - self.center)
                + self.base.spectral_weight(t + self.center)
            )
        )

    def normalization(self) -> float:
        """Hhat_c(c) = (Hhat(0) + Hhat(2c))/2."""
        return float(self.spectral_weight(self.center))

    def identity_pair(self) -> tuple[float, float]:
        # F = H cos(cx): F(0) = H(0), F''(0) = H''(0) - c^2 H(0) since H'(0) = 0.
        h0, h2 = self.base.identity_pair()
        return h0, h2 - self.center**2 * h0


class BandTestFunction:
    """Sign-controlled form for eigenvalue-existence certificates.

    The transform (b^2-t^2)(t^2-a^2) Hhat(t) is <= 0 whenever |t| is outside
    [a, b], so a positive spectral average forces an eigenvalue whose square
    root lies in the band.  In the time domain the form is

        F = -H'''' - (a^2+b^2) H'' - a^2 b^2 H.

    The base seed must satisfy f'(+-R1) = 0 (edge_slope_sum == 0): otherwise
    H'''' carries singular mass at x = 0 and +-2R1 and the pointwise formula
    above no longer matches the transform, silently breaking soundness.
    """

    EDGE_TOL = 1e-9

    def __init__(self, base: TestFunction, band: tuple[float, float]) -> None:
        a, b = float(band[0]), float(band[1])
        if not 0 < a < b:
            raise ValueError(f"band must satisfy 0 < a < b, got [{a}, {b}]")
        scale = max(abs(c) * w for c, w in zip(base.coeffs, base.omegas))
        if abs(base.edge_slope_sum) > self.EDGE_TOL * scale:
            raise ValueError(
                "band form needs a seed with vanishing edge slope; "
                "project the coefficients with smooth_edge_coeffs first"
            )
        self.base = base
        self.band = (a, b)

    @property
    def support(self) -> float:
        return self.base.support

    def value(self, x):
        a, b = self.band
        h0 = self.base.deriv_value(0, x)
        h2 = self.base.deriv_value(2, x)
        h4 = self.base.deriv_value(4, x)
        return -h4 - (a * a + b * b) * h2 - a * a * b * b * h0

    def spectral_weight(self, t):
        t = np.asarray(t, dtype=float)
        a, b = self.band
        return _scalar_ok(
            (b * b - t * t) * (t * t - a * a) * self.base.spectral_weight(t)
        )

    def identity_pair(self) -> tuple[float, float]:
        a, b = self.band
        s1, s2 = a * a + b * b, a * a * b * b
        d = [float(self.base.deriv_value(k, 0.0)) for k in range(7)]
        f0 = -d[4] - s1 * d[2] - s2 * d[0]
        f2 = -d[6] - s1 * d[4] - s2 * d[2]
        return f0, f2


def smooth_edge_coeffs(coeffs, half_support: float):
    """Project coefficients onto the edge constraint sum a_k (-1)^k w_k = 0.

    Orthogonal projection in coefficient space; needs at least two
    coefficients (with one the only solution is zero).
    """
    c = np.asarray(coeffs, dtype=float)
    if c.size < 2:
        raise ValueError("edge-smooth seeds need at least two coefficients")
    w = np.array([(k + 0.5) * math.pi / half_support for k in range(c.size)])
    n = w * np.array([(-1.0) ** k for k in range(c.size)])
    proj = c - (c @ n) / (n @ n) * n
    if not np.any(np.abs(proj) > 1e-14):
        raise ValueError("projection collapsed the coefficients to zero")
    return tuple(float(x) for x in proj)
