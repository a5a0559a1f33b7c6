"""Braid predicates and the encodings between timed and data words.

Braids live over an extended alphabet: every base letter ``a`` gets a
marked twin ``a!``, and the tick letter ``@`` fills in positions that
the source word lacks.
"""
from fractions import Fraction
import heapq
import math

from .errors import NotADataBraid, NotATimedBraid, NotTrimmed
from .words import TICK, DataWord, Letter, TimedWord, frac_part, ordered_partition

_TICK = Letter(TICK)
_MTICK = Letter(TICK, True)


def _require_plain(w):
    for i, (a, _) in enumerate(w):
        if a.marked or a.is_tick:
            raise ValueError(f"position {i} carries {a}; expected an unmarked base letter")


# -- predicates ----------------------------------------------------------------

def is_data_braid(w):
    data = w.data
    d1 = data[0]
    if min(data) != d1:
        return False
    if any(a.marked != (d == d1) for a, d in w):
        return False
    factors = [set(data[s:e]) for s, e in ordered_partition(w)]
    return all(f <= g for f, g in zip(factors, factors[1:]))


def is_timed_braid(w):
    stamps = w.stamps
    if stamps[0] != 0:
        return False
    if any(a.marked != (t.denominator == 1) for a, t in w):
        return False
    top = math.floor(stamps[-1])
    present = set(stamps)
    return all(t + 1 in present for t in stamps if t < top)


def _require_data_braid(w):
    if not is_data_braid(w):
        raise NotADataBraid(f"not a data braid: {w}")


def _require_timed_braid(w):
    if not is_timed_braid(w):
        raise NotATimedBraid(f"not a timed braid: {w}")


# -- instrumentation -----------------------------------------------------------

def instrument_timed(w):
    """Add the missing ``+1`` stamps as ticks and mark integer stamps."""
    _require_plain(w)
    letters = dict((t, a) for a, t in w)
    if 0 not in letters:
        letters[Fraction(0)] = _TICK
    top = math.floor(w.stamps[-1])
    heap = list(letters)
    heapq.heapify(heap)
    while heap:
        t = heapq.heappop(heap)
        if t < top and t + 1 not in letters:
            letters[t + 1] = _TICK
            heapq.heappush(heap, t + 1)
    out = []
    for t in sorted(letters):
        a = letters[t]
        out.append((a.mark() if t.denominator == 1 else a, t))
    return TimedWord(out)


def instrument_data(w):
    """Give every factor the minimum and all earlier data, as ticks."""
    _require_plain(w)
    dmin = min(w.data)
    seen = {dmin}
    out = []
    for s, e in ordered_partition(w):
        own = {d: a for a, d in w.pairs[s:e]}
        factor = sorted(seen | set(own))
        for i, d in enumerate(factor):
            a = own.get(d, _TICK)
            out.append((a.mark() if i == 0 else a, d))
        seen.update(own)
    return DataWord(out)


# -- vertical conversions ------------------------------------------------------

def timed_braid_to_data_braid(w):
    """Replace stamps by the rank of their fractional part."""
    _require_timed_braid(w)
    fracs = sorted({frac_part(t) for t in w.stamps})
    rank = {f: i for i, f in enumerate(fracs)}
    return DataWord((a, Fraction(rank[frac_part(t)])) for a, t in w)


def _braid_stamps(w):
    values = sorted(set(w.data))
    m = len(values)
    place = {d: Fraction(i, m) for i, d in enumerate(values)}
    stamps = []
    for k, (s, e) in enumerate(ordered_partition(w)):
        stamps.extend(k + place[d] for d in w.data[s:e])
    return stamps


def data_braid_to_timed_braid(w):
    """Send the j-th smallest of m data to j/m, shifted by the factor index."""
    _require_data_braid(w)
    return TimedWord(zip(w.letters, _braid_stamps(w)))


def encode_timed_as_data(w):
    """The data braid of a timed word over base letters."""
    return timed_braid_to_data_braid(instrument_timed(w))


def encode_data_as_timed(w):
    """The timed braid of a data word over base letters."""
    return data_braid_to_timed_braid(instrument_data(w))


# -- useless positions ---------------------------------------------------------

def _fresh_ticks(w, key):
    """Unmarked ticks whose key value never occurred on a base letter before."""
    out = set()
    seen = set()
    for i, (a, v) in enumerate(w):
        k = key(v)
        if a.is_tick and not a.marked and k not in seen:
            out.add(i)
        if not a.is_tick:
            seen.add(k)
    return out


def useless_positions_data(w):
    _require_data_braid(w)
    out = _fresh_ticks(w, lambda d: d)
    factors = ordered_partition(w)
    for s, e in reversed(factors[1:]):
        if not all(a.is_tick for a in w.letters[s:e]):
            break
        out.update(range(s, e))
    return out


def _units(w):
    """Group positions by the integer part of their stamp."""
    units = {}
    for i, t in enumerate(w.stamps):
        units.setdefault(math.floor(t), []).append(i)
    return units


def useless_positions_timed(w):
    _require_timed_braid(w)
    out = _fresh_ticks(w, frac_part)
    units = _units(w)
    if len(units) > 1:
        for positions in units.values():
            if all(w.letters[i].is_tick for i in positions):
                out.update(positions)
    return out


def _trim_data_once(w):
    drop = useless_positions_data(w)
    if not drop or len(drop) == len(w):
        return w
    return DataWord(p for i, p in enumerate(w) if i not in drop)


def _trim_timed_once(w):
    drop = useless_positions_timed(w)
    if not drop or len(drop) == len(w):
        return w
    units = _units(w)
    empty = sorted(k for k, pos in units.items() if all(i in drop for i in pos))
    out = []
    for i, (a, t) in enumerate(w):
        if i in drop:
            continue
        shift = sum(1 for k in empty if k < math.floor(t))
        out.append((a, t - shift))
    return TimedWord(out)


def trim(w):
    """Delete useless positions until none are left.

    Works on data braids and timed braids alike; the result is a braid of
    the same kind.
    """
    step = _trim_data_once if isinstance(w, DataWord) else _trim_timed_once
    while True:
        nxt = step(w)
        if nxt == w:
            return w
        w = nxt


# -- recovery ------------------------------------------------------------------

def _require_trimmed(w):
    if trim(w) != w:
        raise NotTrimmed("braid still has useless positions; trim it first")


def recover_timed_word(w):
    """Timed word over base letters whose data braid is ``w`` up to isomorphism."""
    _require_data_braid(w)
    _require_trimmed(w)
    stamps = _braid_stamps(w)
    return TimedWord((a.unmark(), t) for (a, _), t in zip(w, stamps) if not a.is_tick)


def recover_data_word(w):
    """Data word over base letters whose timed braid is ``w`` up to isomorphism."""
    _require_timed_braid(w)
    _require_trimmed(w)
    data = timed_braid_to_data_braid(w).data
    return DataWord((a.unmark(), d) for (a, _), d in zip(w, data) if not a.is_tick)
