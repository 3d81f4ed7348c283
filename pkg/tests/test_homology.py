import random

import numpy as np
import pytest

from gapcert import homology
from gapcert.homology import (
    HomologyError,
    char_poly,
    chain_class,
    det,
    identity,
    involution_matrix,
    mat_inverse,
    mat_mul,
    mat_sub,
    mat_transpose,
    screen,
    smith_invariant_factors,
    symplectic_form,
    twist_matrix,
    unit_circle_free,
    word_action,
)
from gapcert.words import parse_word, random_reverse_palindromic

TORSION_CASES = [
    ("bcbeccadcd", 2, [13]),
    ("CeBCdcbCDaC", 2, [5]),
    ("dcbaBBcDDedcb", 2, [15]),
    ("DaCaEabcdeAeCeB", 2, [5]),
    ("EEBCFDfGCEAbDBEFCC", 3, [2, 10]),
]


def random_word(rng, genus, max_len=14):
    letters = tuple(
        (rng.randint(1, 2 * genus + 1), rng.choice((1, -1)))
        for _ in range(rng.randint(0, max_len))
    )
    from gapcert.words import TwistWord

    return TwistWord(genus=genus, letters=letters)


# -- chain classes and transvections -----------------------------------------


def test_chain_intersection_pattern():
    for genus in (2, 3, 4):
        j = symplectic_form(genus)
        cs = [chain_class(i, genus) for i in range(1, 2 * genus + 2)]
        for a in range(len(cs)):
            for b in range(len(cs)):
                pairing = sum(
                    cs[a][p] * j[p][q] * cs[b][q]
                    for p in range(2 * genus)
                    for q in range(2 * genus)
                )
                expected = 1 if abs(a - b) == 1 else 0
                assert abs(pairing) == expected, (a + 1, b + 1)


def test_twist_matrix_first_generator():
    m = twist_matrix(1, 1, 2)
    # fixes x1, x2, y2; sends y1 -> y1 + s <y1, x1> x1 = y1 - s x1 with the
    # calibrated global sign s (pairing <y1, x1> = -1)
    s = homology.TWIST_SIGN
    assert [row[0] for row in m] == [1, 0, 0, 0]
    assert [row[2] for row in m] == [0, 0, 1, 0]
    assert [row[3] for row in m] == [0, 0, 0, 1]
    assert [row[1] for row in m] == [-s, 1, 0, 0]


def test_twist_inverse_cancels():
    for genus in (2, 3):
        for i in range(1, 2 * genus + 2):
            assert mat_mul(twist_matrix(i, 1, genus), twist_matrix(i, -1, genus)) == identity(2 * genus)


def test_twists_are_symplectic():
    for genus in (2, 3):
        j = symplectic_form(genus)
        for i in range(1, 2 * genus + 2):
            for s in (1, -1):
                m = twist_matrix(i, s, genus)
                assert mat_mul(mat_mul(mat_transpose(m), j), m) == j


def test_word_action_trivial_cases():
    assert word_action(parse_word("", 2)) == identity(4)
    assert word_action(parse_word("aA", 2)) == identity(4)


def test_word_action_products_are_symplectic():
    rng = random.Random(3)
    for _ in range(50):
        genus = rng.choice((2, 3))
        j = symplectic_form(genus)
        m = word_action(random_word(rng, genus))
        assert mat_mul(mat_mul(mat_transpose(m), j), m) == j


def test_paper_determinant():
    m = word_action(parse_word("bcbeccadcd", 2))
    assert abs(det(mat_sub(identity(4), m))) == 13


# -- involution ----------------------------------------------------------------


@pytest.mark.parametrize("genus", [2, 3, 4])
def test_involution_identities(genus):
    inv = involution_matrix(genus)
    j = symplectic_form(genus)
    assert mat_mul(inv, inv) == identity(2 * genus)
    assert mat_mul(mat_mul(mat_transpose(inv), j), inv) == tuple(
        tuple(-x for x in row) for row in j
    )
    for i in range(1, 2 * genus + 2):
        for s in (1, -1):
            lhs = mat_mul(mat_mul(inv, twist_matrix(i, s, genus)), mat_inverse(inv))
            assert lhs == twist_matrix(2 * genus + 2 - i, -s, genus)


def test_reverse_palindromic_conjugation_identity():
    rng = random.Random(5)
    for genus in (2, 3):
        inv = involution_matrix(genus)
        inv_inv = mat_inverse(inv)
        for _ in range(30):
            w = random_reverse_palindromic(genus, rng.randint(1, 16), rng.randint(0, 10**6))
            m = word_action(w)
            assert mat_mul(mat_mul(inv, m), inv_inv) == mat_inverse(m)


# -- Smith normal form ----------------------------------------------------------


def test_smith_zero_matrix():
    assert smith_invariant_factors(((0, 0), (0, 0))) == [0, 0]


def test_smith_diag_2_3():
    assert smith_invariant_factors(((2, 0), (0, 3))) == [1, 6]


def test_smith_divisibility_random():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(1, 5)
        m = tuple(tuple(rng.randint(-6, 6) for _ in range(n)) for _ in range(n))
        fac = smith_invariant_factors(m)
        nonzero = [d for d in fac if d != 0]
        for a, b in zip(nonzero, nonzero[1:]):
            assert b % a == 0
        # product of nonzero factors matches |det| when invertible
        d = det(m)
        if d != 0:
            prod = 1
            for f in fac:
                prod *= f
            assert prod == abs(d)


def test_smith_paper_value():
    m = word_action(parse_word("CeBCdcbCDaC", 2))
    fac = smith_invariant_factors(mat_sub(identity(4), m))
    assert [d for d in fac if d not in (0, 1)] == [5]


# -- unit-circle screen -----------------------------------------------------------


def test_unit_circle_identity_matrix():
    assert unit_circle_free(identity(4)) is False


def test_unit_circle_short_word():
    # the untouched second handle contributes eigenvalue 1
    assert unit_circle_free(word_action(parse_word("ab", 2))) is False


def test_unit_circle_paper_word():
    assert unit_circle_free(word_action(parse_word("bcbeccadcd", 2))) is True


def test_unit_circle_cross_oracle_numerical():
    rng = random.Random(17)
    for _ in range(40):
        genus = rng.choice((2, 3))
        m = word_action(random_word(rng, genus))
        ev = np.linalg.eigvals(np.array(m, dtype=float))
        on_circle = bool(np.any(np.abs(np.abs(ev) - 1.0) < 1e-7))
        exact = unit_circle_free(m)
        # floating point can only blur genuinely borderline cases; require
        # agreement whenever the numerical minimum distance is decisive
        dist = float(np.min(np.abs(np.abs(ev) - 1.0)))
        if dist > 1e-5 or on_circle:
            assert exact == (not on_circle)


def test_unit_circle_rejects_non_reciprocal():
    with pytest.raises(HomologyError):
        unit_circle_free(((2, 0), (0, 3)))


def test_char_poly_self_reciprocal_on_words():
    rng = random.Random(23)
    for _ in range(30):
        genus = rng.choice((2, 3))
        p = char_poly(word_action(random_word(rng, genus)))
        assert p == p[::-1]


# -- screen -----------------------------------------------------------------------


@pytest.mark.parametrize("text,genus,expected", TORSION_CASES)
def test_screen_paper_torsion(text, genus, expected):
    rep = screen(parse_word(text, genus))
    assert rep.homology.torsion_factors == expected
    assert rep.passes
    assert rep.reverse_palindromic
    assert rep.involution_conjugation_ok
    assert rep.homology.unit_circle_free


def test_screen_identity_word_fails_on_unit_circle():
    rep = screen(parse_word("", 2))
    assert rep.reverse_palindromic           # vacuously
    assert not rep.homology.unit_circle_free
    assert not rep.passes


def test_torsion_product_matches_det():
    rng = random.Random(31)
    for _ in range(25):
        rep = screen(random_word(rng, 2))
        if rep.homology.b1_cover_ok:
            prod = 1
            for f in rep.homology.torsion_factors:
                prod *= f
            assert prod == rep.homology.det_abs


# -- convention regression ----------------------------------------------------------


def test_torsion_insensitive_to_convention(monkeypatch):
    """Both twist signs and both composition orders reproduce the ground truth."""
    for sign in (1, -1):
        for left_first in (True, False):
            monkeypatch.setattr(homology, "TWIST_SIGN", sign)
            monkeypatch.setattr(homology, "APPLY_LEFTMOST_FIRST", left_first)
            for text, genus, expected in TORSION_CASES:
                rep = screen(parse_word(text, genus))
                assert rep.homology.torsion_factors == expected, (sign, left_first, text)


def test_fault_injection_breaks_torsion(monkeypatch):
    """A corrupted transvection constant must be caught by the ground-truth checks."""
    monkeypatch.setattr(homology, "TWIST_SIGN", 2)
    mismatches = 0
    for text, genus, expected in TORSION_CASES:
        m = word_action(parse_word(text, genus))
        fac = smith_invariant_factors(mat_sub(identity(2 * genus), m))
        if [d for d in fac if d not in (0, 1)] != expected:
            mismatches += 1
    assert mismatches > 0
