"""Translations between timed and register automata, and braid recognizers.

``timed_to_register`` simulates each clock by a register holding the
datum (fractional part) of its last reset, plus a counter of how many
times that datum came back, which is the integer part of the clock.

``register_to_timed`` simulates each register by a clock reset on load
and whenever it reaches 1, plus one bit per register telling whether the
current position is past the register's datum within the current factor.
"""
from itertools import combinations, product
from fractions import Fraction

from . import formulas as fm
from . import guards as gd
from .automata import (
    RegisterAutomaton,
    Rule,
    TimedAutomaton,
    dualize,
    fresh_name,
    max_constant,
    require_partition,
)
from .words import TICK, Letter

TICK_LETTERS = (Letter(TICK), Letter(TICK, True))


def base_letters(A):
    """Unmarked non-tick letters of ``A``; anything else is rejected."""
    for a in A.alphabet:
        if a.marked or a.is_tick:
            raise ValueError(f"source automaton must be over base letters, found {a}")
    return sorted(A.alphabet)


def extended_alphabet(bases):
    out = []
    for b in bases:
        b = b if isinstance(b, Letter) else Letter(b)
        out += [b.unmark(), b.mark()]
    return sorted(set(out)) + list(TICK_LETTERS)


def _subsets(xs):
    xs = list(xs)
    for n in range(len(xs) + 1):
        yield from (frozenset(c) for c in combinations(xs, n))


def _unique_rule(A, q, a, holds):
    hits = [r for r in A.rules_for(q, a) if holds(r.guard)]
    if len(hits) != 1:
        raise AssertionError(f"partition check missed {q} {a}")
    return hits[0]


# -- timed to register -----------------------------------------------------------

def timed_to_register(A):
    require_partition(A)
    bases = base_letters(A)
    clocks = A.variables
    K = max_constant(A)

    def name(q, v):
        return f"{q}^" + ".".join(map(str, v))

    vectors = list(product(range(K + 1), repeat=len(clocks)))
    zero = tuple(0 for _ in clocks)
    start = fresh_name(f"{A.initial}^start", {name(q, v) for q in A.states for v in vectors})
    states = [start] + [name(q, v) for q in A.states for v in vectors]

    def bumped(v, X):
        return tuple(min(n + 1, K) if c in X else n for c, n in zip(clocks, v))

    def retarget(v, at):
        vy = tuple(0 if c in at.update else n for c, n in zip(clocks, v))
        return fm.Atom(name(at.state, vy), at.update)

    def cell_guard(X):
        return gd.conj(*(gd.eq(c) if c in X else gd.neq(c) for c in clocks))

    def point(v, X):
        return {
            c: Fraction(2 * K + 1, 2) if n == K
            else Fraction(n + 1) if c in X
            else Fraction(2 * n + 1, 2)
            for c, n in zip(clocks, v)
        }

    rules = []
    for b in bases:
        z = {c: Fraction(0) for c in clocks}
        r = _unique_rule(A, A.initial, b, lambda g: gd.eval_constraint(g, z))
        phi = fm.map_atoms(r.formula, lambda at: retarget(zero, at))
        rules += [Rule(start, b, gd.TRUE, phi), Rule(start, b.mark(), gd.TRUE, phi)]
    for t in TICK_LETTERS:
        rules.append(Rule(start, t, gd.TRUE, fm.Atom(name(A.initial, zero))))

    for q in A.states:
        for v in vectors:
            for X in _subsets(clocks):
                guard = cell_guard(X)
                vx = bumped(v, X)
                for t in TICK_LETTERS:
                    rules.append(Rule(name(q, v), t, guard, fm.Atom(name(q, vx), X)))
                z = point(v, X)
                for b in bases:
                    r = _unique_rule(A, q, b, lambda g: gd.eval_constraint(g, z))
                    phi = fm.map_atoms(r.formula, lambda at: retarget(vx, at))
                    rules.append(Rule(name(q, v), b, guard, phi))
                    rules.append(Rule(name(q, v), b.mark(), guard, phi))

    accepting = {name(q, v) for q in A.accepting for v in vectors}
    if A.initial in A.accepting:
        accepting.add(start)
    return RegisterAutomaton(extended_alphabet(bases), states, start, accepting, clocks, rules)


# -- register to timed -----------------------------------------------------------

def register_to_timed(A):
    require_partition(A)
    bases = base_letters(A)
    regs = A.variables
    everything = frozenset(regs)

    def name(q, X):
        return f"{q}^" + "".join("1" if r in X else "0" for r in regs)

    comps = list(_subsets(regs))
    taken = {name(q, X) for q in A.states for X in comps}
    start = fresh_name(f"{A.initial}^start", taken)
    pending = fresh_name(f"{A.initial}^pre", taken | {start})
    sink = fresh_name("sink", taken | {start, pending})
    states = [start, pending] + [name(q, X) for q in A.states for X in comps] + [sink]

    all_equal = {r: "=" for r in regs}

    def first_step(b):
        # registers still hold the current datum: every test sees equality
        r = _unique_rule(A, A.initial, b, lambda g: gd.eval_relations(g, all_equal))
        return fm.map_atoms(r.formula, lambda at: fm.Atom(name(at.state, everything), everything))

    rules = []
    for b in bases:
        phi = first_step(b)
        for state in (start, pending):
            rules += [Rule(state, b, gd.TRUE, phi), Rule(state, b.mark(), gd.TRUE, phi)]
    for t in TICK_LETTERS:
        # a leading tick carries the minimum, which precedes the first datum
        rules.append(Rule(start, t, gd.TRUE, fm.Atom(pending)))
        rules.append(Rule(pending, t, gd.TRUE, fm.Atom(pending)))

    bounded = gd.conj(*(gd.Le(r, 1) for r in regs))
    letters = extended_alphabet(bases)
    for q in A.states:
        for X in comps:
            for letter in letters:
                if regs:
                    rules.append(Rule(name(q, X), letter, gd.Not(bounded), fm.Atom(sink)))
                keep = frozenset() if letter.marked else X
                for Y in comps:
                    guard = gd.conj(*(gd.clock_eq(r, 1) if r in Y else gd.Lt(r, 1) for r in regs))
                    if letter.is_tick:
                        phi = fm.Atom(name(q, keep | Y), Y)
                    else:
                        rel = {r: ">" if r in keep else "=" if r in Y else "<" for r in regs}
                        rule = _unique_rule(
                            A, q, letter.unmark(), lambda g: gd.eval_relations(g, rel)
                        )
                        phi = fm.map_atoms(
                            rule.formula,
                            lambda at: fm.Atom(name(at.state, keep | at.update | Y), at.update | Y),
                        )
                    rules.append(Rule(name(q, X), letter, guard, phi))
    for letter in letters:
        rules.append(Rule(sink, letter, gd.TRUE, fm.Atom(sink)))

    accepting = {name(q, X) for q in A.accepting for X in comps}
    if A.initial in A.accepting:
        accepting |= {start, pending}
    return TimedAutomaton(letters, states, start, accepting, regs, rules)


# -- braid recognizers -----------------------------------------------------------

def _by_mark(letters, marked, unmarked):
    """Rules for every letter, choosing (guard, formula) lists by marking."""
    out = []
    for a in letters:
        out.extend((a, g, f) for g, f in (marked if a.marked else unmarked))
    return out


def non_data_braid_automaton(bases):
    """One-register nondeterministic automaton for the data words that are not braids."""
    letters = extended_alphabet(bases)
    r = "r"
    A = fm.Atom
    eq, neq, lt, gt = gd.eq(r), gd.neq(r), gd.Lt(r), gd.gt(r)
    le, ge = gd.Le(r), gd.Not(gd.Lt(r))
    table = {
        # first position: must be marked; then guess the kind of defect
        "start": _by_mark(
            letters,
            [(gd.TRUE, fm.disj(A("adj", {r}), A("low"), A("wait"), A("seek", {r})))],
            [(gd.TRUE, A("yes"))],
        ),
        # two adjacent positions whose marking disagrees with the factor split
        "adj": _by_mark(
            letters,
            [(gt, A("yes")), (le, A("adj", {r}))],
            [(le, A("yes")), (gt, A("adj", {r}))],
        ),
        # a datum below the first one
        "low": _by_mark(letters, [(lt, A("yes")), (ge, A("low"))], [(lt, A("yes")), (ge, A("low"))]),
        "wait": _by_mark(
            letters,
            [(gd.TRUE, A("wait") | A("seek", {r}))],
            [(gd.TRUE, A("wait") | A("seek", {r}))],
        ),
        # the stored datum is missing from some later factor
        "seek": _by_mark(
            letters,
            [(neq, A("win") | A("seek")), (eq, A("seek"))],
            [(gd.TRUE, A("seek"))],
        ),
        "win": _by_mark(letters, [(gd.TRUE, A("yes"))], [(eq, A("no")), (neq, A("win"))]),
        "yes": _by_mark(letters, [(gd.TRUE, A("yes"))], [(gd.TRUE, A("yes"))]),
        "no": _by_mark(letters, [(gd.TRUE, A("no"))], [(gd.TRUE, A("no"))]),
    }
    rules = [Rule(q, a, g, f) for q, rows in table.items() for a, g, f in rows]
    return RegisterAutomaton(letters, list(table), "start", {"yes", "win"}, [r], rules)


def non_timed_braid_automaton(bases):
    """One-clock nondeterministic automaton for the timed words that are not braids."""
    letters = extended_alphabet(bases)
    c = "c"
    A = fm.Atom
    zero, pos = gd.clock_eq(c, 0), gd.clock_gt(c, 0)
    below, one, above = gd.Lt(c, 1), gd.clock_eq(c, 1), gd.clock_gt(c, 1)
    not_one = gd.Not(one)
    reach = gd.Not(below)
    table = {
        # first stamp must be 0 and marked
        "start": _by_mark(
            letters,
            [(pos, A("yes")), (zero, fm.disj(A("m", {c}), A("g_seek", {c}), A("g_wait")))],
            [(pos, A("yes")), (zero, A("yes"))],
        ),
        # marks sit exactly on consecutive integers
        "m": _by_mark(
            letters,
            [(one, A("m", {c})), (not_one, A("yes"))],
            [(below, A("m")), (reach, A("yes"))],
        ),
        "g_wait": _by_mark(
            letters,
            [(gd.TRUE, A("g_wait") | A("g_seek", {c}))],
            [(gd.TRUE, A("g_wait") | A("g_seek", {c}))],
        ),
        # a guessed stamp whose +1 successor is missing
        "g_seek": _by_mark(
            letters,
            [(one, A("no")), (below, A("g_win")), (above, A("yes"))],
            [(one, A("no")), (not_one, A("g_seek"))],
        ),
        "g_win": _by_mark(
            letters,
            [(below, A("g_win")), (one, A("no")), (above, A("yes"))],
            [(below, A("g_win")), (one, A("no")), (above, A("yes"))],
        ),
        "yes": _by_mark(letters, [(gd.TRUE, A("yes"))], [(gd.TRUE, A("yes"))]),
        "no": _by_mark(letters, [(gd.TRUE, A("no"))], [(gd.TRUE, A("no"))]),
    }
    rules = [Rule(q, a, g, f) for q, rows in table.items() for a, g, f in rows]
    return TimedAutomaton(letters, list(table), "start", {"yes", "g_win"}, [c], rules)


def braid_automaton(bases, model):
    """Alternating one-variable automaton accepting exactly the braids."""
    if model == "data":
        return dualize(non_data_braid_automaton(bases))
    if model == "timed":
        return dualize(non_timed_braid_automaton(bases))
    raise ValueError("model must be 'data' or 'timed'")
