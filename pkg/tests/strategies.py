"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from timedreg.words import DataWord, Letter, TimedWord

base_letter = st.sampled_from([Letter("a"), Letter("b")])
small_fraction = st.builds(Fraction, st.integers(0, 12), st.sampled_from([1, 2, 3, 4, 5]))
positive_step = st.builds(Fraction, st.integers(1, 12), st.sampled_from([1, 2, 3, 4, 5]))


@st.composite
def timed_words(draw, max_len=7, start_at_zero=False):
    letters = draw(st.lists(base_letter, min_size=1, max_size=max_len))
    t = Fraction(0) if start_at_zero else draw(small_fraction)
    pairs = []
    for a in letters:
        pairs.append((a, t))
        t += draw(positive_step)
    return TimedWord(pairs)


@st.composite
def data_words(draw, max_len=7, max_datum=6):
    pairs = draw(
        st.lists(st.tuples(base_letter, st.integers(0, max_datum)), min_size=1, max_size=max_len)
    )
    return DataWord(pairs)
