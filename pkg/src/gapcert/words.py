"""Words in the chain Dehn-twist generators of a closed genus-g surface.

A genus-g surface carries a chain of 2g+1 simple closed curves with
consecutive geometric intersection number one.  Words in the positive and
negative twists along these curves are written in single letters: the first
2g+1 alphabet letters, lowercase for a positive twist and uppercase for its
inverse (genus 2 uses a..e, genus 3 uses a..g).

The hyperelliptic-type symmetry that drives the whole pipeline pairs curve i
with curve 2g+2-i.  A word is *reverse palindromic* when it equals its own
reversal with every index flipped through that pairing (case preserved).
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass


class WordError(ValueError):
    """Invalid word text or invalid letter for the given genus."""


def _check_genus(genus: int) -> None:
    if genus < 2:
        raise WordError(f"genus must be >= 2, got {genus}")
    if 2 * genus + 1 > 26:
        raise WordError(f"genus {genus} needs more letters than the alphabet has")


@dataclass(frozen=True)
class TwistWord:
    """A signed word in the chain twist generators.

    ``letters`` is a tuple of (index, sign) pairs with index in 1..2g+1 and
    sign +1 for a positive twist, -1 for its inverse.  The empty word is the
    identity mapping class.
    """

    genus: int
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        _check_genus(self.genus)
        n = 2 * self.genus + 1
        for pos, (idx, sign) in enumerate(self.letters):
            if not 1 <= idx <= n:
                raise WordError(f"letter {pos}: index {idx} out of range 1..{n}")
            if sign not in (1, -1):
                raise WordError(f"letter {pos}: sign must be +-1, got {sign}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return render_word(self)


def parse_word(text: str, genus: int) -> TwistWord:
    """Parse letter notation into a TwistWord.

    Lowercase letters are positive twists, uppercase their inverses; the
    alphabet position gives the curve index.  Rejects non-alphabetic
    characters and letters beyond the 2g+1 curves of the genus.
    """
    _check_genus(genus)
    n = 2 * genus + 1
    letters = []
    for pos, ch in enumerate(text):
        if not ch.isalpha() or ch not in string.ascii_letters:
            raise WordError(f"position {pos}: {ch!r} is not a twist letter")
        idx = ord(ch.lower()) - ord("a") + 1
        if idx > n:
            raise WordError(
                f"position {pos}: letter {ch!r} is outside the {n}-curve chain of genus {genus}"
            )
        letters.append((idx, 1 if ch.islower() else -1))
    return TwistWord(genus=genus, letters=tuple(letters))


def render_word(w: TwistWord) -> str:
    """Inverse of parse_word: lowercase = positive twist, uppercase = inverse."""
    out = []
    for idx, sign in w.letters:
        ch = chr(ord("a") + idx - 1)
        out.append(ch if sign == 1 else ch.upper())
    return "".join(out)


def mirrored(w: TwistWord) -> TwistWord:
    """Reverse the word and flip every index i -> 2g+2-i, keeping signs.

    This is the involution on words induced by the index pairing; a word is
    reverse palindromic exactly when it is a fixed point.
    """
    n = 2 * w.genus + 2
    flipped = tuple((n - idx, sign) for idx, sign in reversed(w.letters))
    return TwistWord(genus=w.genus, letters=flipped)


def is_reverse_palindromic(w: TwistWord) -> bool:
    """True iff w equals its own mirrored transform."""
    return w == mirrored(w)


def random_reverse_palindromic(genus: int, length: int, seed: int) -> TwistWord:
    """Deterministically generate a reverse-palindromic word of the given length.

    The first half is drawn uniformly; the second half is forced by the
    mirror symmetry.  For odd length the middle letter must be self-paired,
    i.e. have index g+1 (only its sign is free).
    """
    _check_genus(genus)
    if length < 1:
        raise WordError(f"length must be >= 1, got {length}")
    rng = random.Random(seed)
    n = 2 * genus + 1
    half = length // 2
    first = [(rng.randint(1, n), rng.choice((1, -1))) for _ in range(half)]
    middle = [(genus + 1, rng.choice((1, -1)))] if length % 2 else []
    second = [((2 * genus + 2) - idx, sign) for idx, sign in reversed(first)]
    return TwistWord(genus=genus, letters=tuple(first + middle + second))
