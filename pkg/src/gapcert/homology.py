"""Exact homological screening of twist words.

Everything here runs over exact integers / rationals: the symplectic action
of a twist word on first homology of the surface, Smith invariant factors of
(Id - action) controlling the torsion of the mapping torus, the chain-flip
involution action, and a Sturm-sequence test deciding whether the action has
an eigenvalue on the unit circle.

Matrices are tuples of tuples of Python ints.  The symplectic basis is
(x1, y1, ..., xg, yg); the chain curve classes are

    [c_{2k}]   = y_k                    (k = 1..g)
    [c_{2k+1}] = x_k + x_{k+1}          (k = 0..g, with x_0 = x_{g+1} = 0)

so [c_1] = x_1 and [c_{2g+1}] = x_g.  This assignment reproduces the chain
intersection pattern and is pinned by the five torsion ground-truth values
in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .words import TwistWord, is_reverse_palindromic

# Calibrated sign/order convention.  A positive twist acts as
# v -> v + TWIST_SIGN * <v, c> * c, and with APPLY_LEFTMOST_FIRST the first
# letter of a word is the first map applied.  All four (sign, order) choices
# reproduce the five ground-truth torsion lists (asserted by a regression
# test); this pair is pinned so results are reproducible bit-for-bit.
TWIST_SIGN = 1
APPLY_LEFTMOST_FIRST = True

IntMatrix = tuple[tuple[int, ...], ...]


class HomologyError(ValueError):
    """Contract violation in the exact-arithmetic layer."""


# -- basic exact matrix helpers ------------------------------------------


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n, m, p = len(a), len(b), len(b[0])
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(a[i][k] * bt[j][k] for k in range(m)) for j in range(p))
        for i in range(n)
    )


def mat_sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(
        tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


def mat_transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def mat_neg(a: IntMatrix) -> IntMatrix:
    return tuple(tuple(-x for x in row) for row in a)


def mat_inverse(a: IntMatrix) -> IntMatrix:
    """Exact inverse of an integer matrix with det = +-1."""
    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise HomologyError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for row in aug:
        ints = []
        for x in row[n:]:
            if x.denominator != 1:
                raise HomologyError("inverse is not integral; determinant is not a unit")
            ints.append(int(x))
        out.append(tuple(ints))
    return tuple(out)


def det(a: IntMatrix) -> int:
    """Exact determinant by the Bareiss fraction-free algorithm."""
    n = len(a)
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# -- symplectic structure --------------------------------------------------


def symplectic_form(genus: int) -> IntMatrix:
    """Standard form J on the basis (x1, y1, ..., xg, yg)."""
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for k in range(genus):
        rows[2 * k][2 * k + 1] = 1
        rows[2 * k + 1][2 * k] = -1
    return tuple(tuple(r) for r in rows)


def chain_class(index: int, genus: int) -> tuple[int, ...]:
    """Homology class of the index-th chain curve in the symplectic basis."""
    n = 2 * genus + 1
    if not 1 <= index <= n:
        raise HomologyError(f"chain index {index} out of range 1..{n}")
    v = [0] * (2 * genus)
    if index % 2 == 0:
        v[index - 1] = 1                      # y_{index/2}
    else:
        k = (index - 1) // 2                  # x_k + x_{k+1}
        if k >= 1:
            v[2 * (k - 1)] = 1
        if k + 1 <= genus:
            v[2 * k] = 1
    return tuple(v)


def is_symplectic(m: IntMatrix, genus: int) -> bool:
    j = symplectic_form(genus)
    return mat_mul(mat_mul(mat_transpose(m), j), m) == j


def twist_matrix(index: int, sign: int, genus: int) -> IntMatrix:
    """Transvection v -> v + sign * <v, c> * c along the index-th chain curve."""
    if sign not in (1, -1):
        raise HomologyError(f"sign must be +-1, got {sign}")
    c = chain_class(index, genus)
    j = symplectic_form(genus)
    n = 2 * genus
    jc = tuple(sum(j[i][k] * c[k] for k in range(n)) for i in range(n))
    s = TWIST_SIGN * sign
    return tuple(
        tuple((1 if i == k else 0) + s * c[i] * jc[k] for k in range(n))
        for i in range(n)
    )


def word_action(w: TwistWord) -> IntMatrix:
    """Induced action of the word on H_1 of the surface.

    With the leftmost-first convention the composite matrix is the product
    of the letter transvections with later letters multiplied on the left.
    """
    m = identity(2 * w.genus)
    for idx, sign in w.letters:
        t = twist_matrix(idx, sign, w.genus)
        m = mat_mul(t, m) if APPLY_LEFTMOST_FIRST else mat_mul(m, t)
    return m


def involution_matrix(genus: int) -> IntMatrix:
    """Action of the chain-flip involution: x_k -> x_{g+1-k}, y_k -> -y_{g+1-k}.

    Involutive, anti-symplectic, and conjugates the twist along curve i to
    the inverse twist along curve 2g+2-i.
    """
    n = 2 * genus
    rows = [[0] * n for _ in range(n)]
    for k in range(1, genus + 1):
        kp = genus + 1 - k
        rows[2 * (kp - 1)][2 * (k - 1)] = 1
        rows[2 * kp - 1][2 * k - 1] = -1
    return tuple(tuple(r) for r in rows)


# -- Smith normal form ------------------------------------------------------


def smith_invariant_factors(m: IntMatrix) -> list[int]:
    """Diagonal invariant factors d_1 | d_2 | ... >= 0 of an integer matrix."""
    a = [list(row) for row in m]
    nrows, ncols = len(a), len(a[0])
    rank_limit = min(nrows, ncols)

    def smallest_pivot(t: int):
        best = None
        for i in range(t, nrows):
            for jj in range(t, ncols):
                if a[i][jj] != 0 and (best is None or abs(a[i][jj]) < abs(a[best[0]][best[1]])):
                    best = (i, jj)
        return best

    t = 0
    while t < rank_limit:
        p = smallest_pivot(t)
        if p is None:
            break
        a[t], a[p[0]] = a[p[0]], a[t]
        for row in a:
            row[t], row[p[1]] = row[p[1]], row[t]
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for jj in range(ncols):
                        a[i][jj] -= q * a[t][jj]
                    if a[i][t]:           # remainder became the smaller pivot
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for jj in range(t + 1, ncols):
                if a[t][jj]:
                    q = a[t][jj] // a[t][t]
                    for i in range(nrows):
                        a[i][jj] -= q * a[i][t]
                    if a[t][jj]:
                        for i in range(nrows):
                            a[i][t], a[i][jj] = a[i][jj], a[i][t]
                        dirty = True
            if not dirty:
                break
        t += 1

    diag = [abs(a[i][i]) for i in range(rank_limit)]
    # enforce d_i | d_{i+1} by gcd/lcm exchanges
    for i in range(len(diag)):
        for jj in range(i + 1, len(diag)):
            di, dj = diag[i], diag[jj]
            if di and dj:
                g = math.gcd(di, dj)
                diag[i], diag[jj] = g, di * dj // g
            elif di == 0 and dj != 0:
                diag[i], diag[jj] = dj, 0
    diag.sort(key=lambda d: (d == 0, d))
    return diag


def nontrivial_factors(factors: list[int]) -> list[int]:
    return [d for d in factors if d not in (0, 1)]


# -- characteristic polynomial and the unit-circle screen -------------------


def char_poly(m: IntMatrix) -> list[int]:
    """Coefficients [c_0, ..., c_n] of det(tI - M), c_n = 1, exact."""
    n = len(m)
    frac = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    # Faddeev-LeVerrier
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- M @ (mk + c_{n-k+1} I)
        shifted = [row[:] for row in mk]
        for i in range(n):
            shifted[i][i] += coeffs[n - k + 1]
        mk = [
            [sum(frac[i][r] * shifted[r][j] for r in range(n)) for j in range(n)]
            for i in range(n)
        ]
        coeffs[n - k] = -sum(mk[i][i] for i in range(n)) / k
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise HomologyError("characteristic polynomial is not integral")
        out.append(int(c))
    return out


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_eval(p: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = a[:]
    db, lb = len(b) - 1, b[-1]
    while len(a) - 1 >= db and any(c != 0 for c in a):
        da, la = len(a) - 1, a[-1]
        shift = da - db
        q = la / lb
        for i in range(db + 1):
            a[shift + i] -= q * b[i]
        _poly_trim(a)
        if len(a) - 1 == da:   # leading term failed to cancel (exact arithmetic: cannot happen)
            break
    return _poly_trim(a)


def _sturm_chain(p: list[Fraction]) -> list[list[Fraction]]:
    chain = [_poly_trim(p[:])]
    dp = [c * i for i, c in enumerate(p)][1:] or [Fraction(0)]
    chain.append(_poly_trim(dp))
    while len(chain[-1]) > 1:
        r = _poly_rem(chain[-2], chain[-1])
        if all(c == 0 for c in r):
            break
        chain.append([-c for c in r])
    return chain


def _sign_variations(chain: list[list[Fraction]], x: Fraction) -> int:
    signs = []
    for p in chain:
        v = _poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots_open(p: list[int] | list[Fraction], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi).

    Requires p(lo) != 0 and p(hi) != 0; exact over the rationals.
    """
    pf = [Fraction(c) for c in p]
    if _poly_eval(pf, lo) == 0 or _poly_eval(pf, hi) == 0:
        raise HomologyError("Sturm endpoints must not be roots")
    chain = _sturm_chain(pf)
    return _sign_variations(chain, lo) - _sign_variations(chain, hi)


def reciprocal_to_half_trace(p: list[int]) -> list[int]:
    """Rewrite a self-reciprocal degree-2g polynomial p as t^g * q(t + 1/t).

    Uses t^i + t^-i = V_i(u) with V_0 = 2, V_1 = u, V_{i+1} = u V_i - V_{i-1}.
    Raises if p is not self-reciprocal.
    """
    n = len(p) - 1
    if n % 2 != 0:
        raise HomologyError("expected even degree")
    g = n // 2
    if any(p[i] != p[n - i] for i in range(n + 1)):
        raise HomologyError("polynomial is not self-reciprocal")
    q = [0] * (g + 1)
    q[0] = p[g]
    v_prev = [2] + [0] * g          # V_0
    v_cur = [0, 1] + [0] * (g - 1)  # V_1
    for i in range(1, g + 1):
        if i >= 2:
            v_next = [0] * (g + 1)
            for d in range(g):               # u * V_{i-1}
                v_next[d + 1] += v_cur[d]
            for d in range(g + 1):           # - V_{i-2}
                v_next[d] -= v_prev[d]
            v_prev, v_cur = v_cur, v_next
        for d in range(g + 1):
            q[d] += p[g + i] * v_cur[d]
    return q


def unit_circle_free(m: IntMatrix) -> bool:
    """True iff the (symplectic) matrix has no eigenvalue of absolute value 1.

    Decided exactly: substitute u = t + 1/t into the self-reciprocal
    characteristic polynomial and test the degree-g polynomial q for real
    roots in [-2, 2] by a Sturm sequence over the rationals.  Endpoints
    u = +-2 catch the eigenvalues +-1.
    """
    p = char_poly(m)
    q = reciprocal_to_half_trace(p)
    two = Fraction(2)
    qf = [Fraction(c) for c in q]
    if _poly_eval(qf, two) == 0 or _poly_eval(qf, -two) == 0:
        return False
    return count_real_roots_open(q, -two, two) == 0


# -- screening --------------------------------------------------------------


@dataclass(frozen=True)
class HomologyReport:
    """Derived invariants of Id - action for a twist word."""

    torsion_factors: list[int]     # nontrivial invariant factors of Id - action
    b1_cover_ok: bool              # det(Id - action) != 0
    unit_circle_free: bool
    char_poly: list[int]
    det_abs: int

    def to_dict(self) -> dict:
        return {
            "torsion_factors": list(self.torsion_factors),
            "b1_cover_ok": self.b1_cover_ok,
            "unit_circle_free": self.unit_circle_free,
            "char_poly": list(self.char_poly),
            "det_abs": self.det_abs,
        }


@dataclass(frozen=True)
class ScreenReport:
    """Full screen of a candidate word: symmetry, homology, spectra-side gates."""

    word: str
    genus: int
    reverse_palindromic: bool
    involution_conjugation_ok: bool
    homology: HomologyReport
    action: IntMatrix = field(repr=False)

    @property
    def passes(self) -> bool:
        return (
            self.reverse_palindromic
            and self.involution_conjugation_ok
            and self.homology.unit_circle_free
        )

    def to_dict(self) -> dict:
        d = {
            "word": self.word,
            "genus": self.genus,
            "reverse_palindromic": self.reverse_palindromic,
            "involution_conjugation_ok": self.involution_conjugation_ok,
            "passes": self.passes,
        }
        d.update(self.homology.to_dict())
        return d


def homology_report(m: IntMatrix) -> HomologyReport:
    n = len(m)
    id_minus = mat_sub(identity(n), m)
    d = det(id_minus)
    factors = smith_invariant_factors(id_minus)
    nontrivial = nontrivial_factors(factors)
    ucf = unit_circle_free(m)
    if d != 0:
        prod = math.prod(nontrivial) if nontrivial else 1
        if prod != abs(d):
            raise HomologyError("invariant factor product disagrees with determinant")
    return HomologyReport(
        torsion_factors=nontrivial,
        b1_cover_ok=d != 0,
        unit_circle_free=ucf,
        char_poly=char_poly(m),
        det_abs=abs(d),
    )


def screen(w: TwistWord) -> ScreenReport:
    """Bundle the symmetry and homology gates for a candidate word."""
    from .words import render_word

    m = word_action(w)
    inv = involution_matrix(w.genus)
    conj = mat_mul(mat_mul(inv, m), mat_inverse(inv))
    conj_ok = conj == mat_inverse(m)
    return ScreenReport(
        word=render_word(w),
        genus=w.genus,
        reverse_palindromic=is_reverse_palindromic(w),
        involution_conjugation_ok=conj_ok,
        homology=homology_report(m),
        action=m,
    )
