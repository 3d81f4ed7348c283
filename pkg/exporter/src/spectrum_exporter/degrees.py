"""Winding degrees of geodesic group words.

The fundamental group of the mapping torus abelianizes to Z + torsion.  The
degree of a geodesic is its image in the free quotient, computed with the
unique (up to sign) primitive integer functional that kills every relator:
phi with phi . exponents(r) = 0 for all relators r.  Words use the usual
letter convention: generator k is the k-th lowercase letter, its inverse the
uppercase one.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class PresentationError(ValueError):
    """Presentation does not abelianize to rank one."""


def word_exponents(word: str, num_generators: int) -> list[int]:
    out = [0] * num_generators
    for ch in word:
        if not ch.isalpha():
            raise PresentationError(f"bad letter {ch!r} in group word")
        idx = ord(ch.lower()) - ord("a")
        if idx >= num_generators:
            raise PresentationError(
                f"letter {ch!r} exceeds the {num_generators}-generator presentation"
            )
        out[idx] += 1 if ch.islower() else -1
    return out


def _nullspace_dim_one(rows: list[list[Fraction]], n: int) -> list[Fraction]:
    """Solve rows . phi = 0 for the 1-dimensional rational nullspace."""
    m = [row[:] for row in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    if len(free) != 1:
        raise PresentationError(
            f"abelianization has rank {len(free)}, expected 1 (b1 = 1 required)"
        )
    phi = [Fraction(0)] * n
    phi[free[0]] = Fraction(1)
    for i, col in enumerate(pivots):
        phi[col] = -m[i][free[0]]
    return phi


def winding_functional(num_generators: int, relators: list[str]) -> list[int]:
    """Primitive integer phi vanishing on all relator exponent vectors.

    Sign is normalized so the first nonzero entry is positive.
    """
    rows = [
        [Fraction(e) for e in word_exponents(r, num_generators)] for r in relators
    ]
    phi = _nullspace_dim_one(rows, num_generators)
    denom = 1
    for x in phi:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in phi]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    first = next((x for x in ints if x != 0), 1)
    if first < 0:
        ints = [-x for x in ints]
    return ints


def degree_of_word(word: str, phi: list[int]) -> int:
    exps = word_exponents(word, len(phi))
    return sum(p * e for p, e in zip(phi, exps))
