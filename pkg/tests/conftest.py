import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from mdtds import SignedLetter, Word


def W(text: str, n_gens: int = 2) -> Word:
    return Word.parse(text, n_gens)


def random_word(rng: random.Random, n_gens: int, max_len: int) -> Word:
    """Uniform-ish random reduced word built letter by letter."""
    word = Word.identity(n_gens)
    for _ in range(rng.randrange(max_len + 1)):
        choices = [SignedLetter.from_index(i) for i in range(2 * n_gens)]
        if not word.is_identity:
            blocked = word.last_letter().inverse()
            choices = [c for c in choices if c != blocked]
        letter = rng.choice(choices)
        word = word * Word.letter(n_gens, letter.gen, letter.sign)
    return word


def random_fraction(rng: random.Random, max_num: int = 50) -> Fraction:
    return Fraction(rng.randint(1, max_num), rng.randint(1, max_num))


def words_strategy(n_gens: int = 2, max_len: int = 8):
    """Hypothesis strategy for reduced words, built from letter indices."""
    letter_lists = st.lists(st.integers(0, 2 * n_gens - 1), max_size=max_len)

    def build(indices):
        word = Word.identity(n_gens)
        for idx in indices:
            letter = SignedLetter.from_index(idx)
            word = word * Word.letter(n_gens, letter.gen, letter.sign)
        return word

    return letter_lists.map(build)


@pytest.fixture
def rng():
    return random.Random(20260810)
