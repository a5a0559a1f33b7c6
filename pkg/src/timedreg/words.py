"""Timed words, data words and the maps acting on them.

Timestamps and data values are exact :class:`fractions.Fraction` objects.
A position is a ``(Letter, Fraction)`` pair; words are immutable and
validated on construction.
"""
from dataclasses import dataclass
from fractions import Fraction
import math
import re

from .errors import DomainMiss, EmptyWord, NegativeTime, NonMonotonic, ParseError

TICK = "@"


@dataclass(frozen=True, order=True)
class Letter:
    """A symbol together with its marked flag (``a`` versus ``a!``)."""

    base: str
    marked: bool = False

    @property
    def is_tick(self):
        return self.base == TICK

    def mark(self):
        return Letter(self.base, True)

    def unmark(self):
        return Letter(self.base, False)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        marked = text.endswith("!")
        base = text[:-1] if marked else text
        if not _LETTER_RE.fullmatch(base):
            raise ParseError(f"bad letter {text!r}")
        return cls(base, marked)

    def __str__(self):
        return self.base + ("!" if self.marked else "")

    def __repr__(self):
        return f"Letter({str(self)!r})"


_LETTER_RE = re.compile(r"@|[A-Za-z_][A-Za-z0-9_]*")


def as_letter(x):
    if isinstance(x, Letter):
        return x
    return Letter.parse(x)


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted, use Fraction or a string")
    return Fraction(x)


def frac_part(t):
    return t - math.floor(t)


@dataclass(frozen=True)
class _Word:
    pairs: tuple

    def __init__(self, pairs):
        pairs = tuple((as_letter(a), as_fraction(v)) for a, v in pairs)
        object.__setattr__(self, "pairs", pairs)
        self._validate()

    def _validate(self):
        if not self.pairs:
            raise EmptyWord()

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __getitem__(self, i):
        return self.pairs[i]

    @property
    def letters(self):
        return tuple(a for a, _ in self.pairs)

    @property
    def values(self):
        return tuple(v for _, v in self.pairs)

    def __str__(self):
        return format_word(self)


class TimedWord(_Word):
    """Nonempty sequence with strictly increasing, nonnegative timestamps."""

    def _validate(self):
        super()._validate()
        prev = None
        for i, (_, t) in enumerate(self.pairs):
            if t < 0:
                raise NegativeTime(i)
            if prev is not None and t <= prev:
                raise NonMonotonic(i)
            prev = t

    @property
    def stamps(self):
        return self.values


class DataWord(_Word):
    """Nonempty sequence of (letter, datum) pairs."""

    @property
    def data(self):
        return self.values


def validate_timed_word(raw):
    return TimedWord(raw)


def validate_data_word(raw):
    return DataWord(raw)


class TimeIsomorphism:
    """Order-preserving map on fractional parts, fixing 0.

    Only the finitely many points that are actually needed are stored;
    ``mapping`` must be strictly increasing and send 0 to 0.
    """

    def __init__(self, mapping):
        mapping = {as_fraction(k): as_fraction(v) for k, v in mapping.items()}
        mapping.setdefault(Fraction(0), Fraction(0))
        if mapping[Fraction(0)] != 0:
            raise ValueError("time isomorphism must fix 0")
        keys = sorted(mapping)
        for k in keys:
            if not (0 <= k < 1 and 0 <= mapping[k] < 1):
                raise ValueError("time isomorphism acts on [0,1)")
        for a, b in zip(keys, keys[1:]):
            if not mapping[a] < mapping[b]:
                raise ValueError("time isomorphism must be strictly increasing")
        self.mapping = mapping

    def __call__(self, frac):
        try:
            return self.mapping[frac]
        except KeyError:
            raise DomainMiss(frac) from None

    @classmethod
    def identity(cls, word):
        return cls({frac_part(t): frac_part(t) for t in word.stamps})


def apply_time_isomorphism(w, f):
    return TimedWord((a, math.floor(t) + f(frac_part(t))) for a, t in w)


class DataMap:
    """Strictly order-preserving map between finite sets of data values."""

    def __init__(self, mapping):
        mapping = {as_fraction(k): as_fraction(v) for k, v in mapping.items()}
        keys = sorted(mapping)
        for a, b in zip(keys, keys[1:]):
            if not mapping[a] < mapping[b]:
                raise ValueError("data map must be strictly increasing")
        self.mapping = mapping

    def __call__(self, d):
        try:
            return self.mapping[d]
        except KeyError:
            raise DomainMiss(d) from None

    @classmethod
    def identity(cls, word):
        return cls({d: d for d in word.data})


def apply_data_map(w, g):
    return DataWord((a, g(d)) for a, d in w)


def data_isomorphic(w, v):
    if len(w) != len(v) or w.letters != v.letters:
        return False
    d, e = w.values, v.values
    n = len(d)
    return all(
        (d[i] <= d[j]) == (e[i] <= e[j]) for i in range(n) for j in range(n)
    )


def time_isomorphic(w, v):
    """True iff some time isomorphism maps ``w`` onto ``v``."""
    if len(w) != len(v) or w.letters != v.letters:
        return False
    if any(math.floor(s) != math.floor(t) for s, t in zip(w.stamps, v.stamps)):
        return False
    fw = [frac_part(t) for t in w.stamps]
    fv = [frac_part(t) for t in v.stamps]
    n = len(fw)
    for i in range(n):
        if (fw[i] == 0) != (fv[i] == 0):
            return False
        for j in range(n):
            if (fw[i] <= fw[j]) != (fv[i] <= fv[j]):
                return False
    return True


def ordered_partition(w):
    """Split ``w`` into maximal strictly increasing factors.

    Returns half-open ``(start, stop)`` index ranges, 0-based.
    """
    data = w.values
    ranges = []
    start = 0
    for i in range(1, len(data)):
        if data[i] <= data[i - 1]:
            ranges.append((start, i))
            start = i
    ranges.append((start, len(data)))
    return ranges


def is_m_decreasing(w, m):
    drops = sum(1 for x, y in zip(w.values, w.values[1:]) if x >= y)
    return drops <= m - 1


def is_m_bounded(w, m):
    return all(t < m for t in w.stamps)


# -- text format -----------------------------------------------------------

_PAIR_RE = re.compile(r"\(\s*([^,\s()]+)\s*,\s*([^()\s]+)\s*\)")


def _parse_pairs(text):
    text = text.strip()
    pos = 0
    pairs = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _PAIR_RE.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse word near {text[pos:pos + 20]!r}")
        try:
            value = Fraction(m.group(2))
        except ValueError:
            raise ParseError(f"bad value {m.group(2)!r}") from None
        pairs.append((Letter.parse(m.group(1)), value))
        pos = m.end()
    return pairs


def parse_timed_word(text):
    return TimedWord(_parse_pairs(text))


def parse_data_word(text):
    return DataWord(_parse_pairs(text))


def format_value(x):
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_word(w):
    return " ".join(f"({a},{format_value(v)})" for a, v in w)
