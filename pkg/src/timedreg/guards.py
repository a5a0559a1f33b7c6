"""Clock constraints and register tests.

Both share one tree shape: atoms ``Lt``/``Le`` combined with ``And`` and
``Not``. A clock atom carries an integer bound (``c < k``); a register
atom has ``bound=None`` and compares the current datum against the
register (``< r``).
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import UnknownClock, UnknownRegister


class Guard:
    __slots__ = ()

    def __and__(self, other):
        return conj(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class Top(Guard):
    pass


TRUE = Top()


@dataclass(frozen=True)
class Lt(Guard):
    var: str
    bound: int = None


@dataclass(frozen=True)
class Le(Guard):
    var: str
    bound: int = None


@dataclass(frozen=True)
class And(Guard):
    left: Guard
    right: Guard


@dataclass(frozen=True)
class Not(Guard):
    arg: Guard


def conj(*guards):
    """Conjunction that drops ``TRUE`` operands."""
    parts = [g for g in guards if g != TRUE]
    if not parts:
        return TRUE
    out = parts[0]
    for g in parts[1:]:
        out = And(out, g)
    return out


def eq(reg):
    return And(Le(reg), Not(Lt(reg)))


def neq(reg):
    return Not(eq(reg))


def gt(reg):
    return Not(Le(reg))


def clock_eq(clock, k):
    return And(Le(clock, k), Not(Lt(clock, k)))


def clock_gt(clock, k):
    return Not(Le(clock, k))


def atoms(g):
    if isinstance(g, (Lt, Le)):
        yield g
    elif isinstance(g, And):
        yield from atoms(g.left)
        yield from atoms(g.right)
    elif isinstance(g, Not):
        yield from atoms(g.arg)


def variables(g):
    return {a.var for a in atoms(g)}


def max_bound(g):
    return max((a.bound for a in atoms(g) if a.bound is not None), default=0)


def evaluate(g, atom_value):
    """Evaluate ``g`` given a callable deciding each atom."""
    if isinstance(g, Top):
        return True
    if isinstance(g, (Lt, Le)):
        return atom_value(g)
    if isinstance(g, And):
        return evaluate(g.left, atom_value) and evaluate(g.right, atom_value)
    if isinstance(g, Not):
        return not evaluate(g.arg, atom_value)
    raise TypeError(f"not a guard: {g!r}")


def eval_constraint(g, valuation):
    """Decide a clock constraint at a clock valuation (mapping clock -> time)."""

    def atom(a):
        try:
            x = valuation[a.var]
        except KeyError:
            raise UnknownClock(a.var) from None
        return x < a.bound if isinstance(a, Lt) else x <= a.bound

    return evaluate(g, atom)


def eval_test(g, valuation, datum):
    """Decide a register test for the current ``datum``."""

    def atom(a):
        try:
            x = valuation[a.var]
        except KeyError:
            raise UnknownRegister(a.var) from None
        return datum < x if isinstance(a, Lt) else datum <= x

    return evaluate(g, atom)


def eval_relations(g, rel):
    """Decide a register test from the relation of the datum to each register.

    ``rel`` maps a register to ``'<'``, ``'='`` or ``'>'``.
    """

    def atom(a):
        try:
            r = rel[a.var]
        except KeyError:
            raise UnknownRegister(a.var) from None
        return r == "<" if isinstance(a, Lt) else r in "<="

    return evaluate(g, atom)


def is_order_blind(g):
    """True iff the truth of ``g`` only depends on datum/register equality.

    Checked on the relation-assignment normal form: swapping ``<`` for
    ``>`` on any single register never changes the verdict.
    """
    regs = sorted(variables(g))
    for combo in product("<=>", repeat=len(regs)):
        rel = dict(zip(regs, combo))
        for r in regs:
            if rel[r] == "<":
                flipped = dict(rel)
                flipped[r] = ">"
                if eval_relations(g, rel) != eval_relations(g, flipped):
                    return False
    return True


# cells ---------------------------------------------------------------------

def clock_cells(K):
    """Representative points of the elementary intervals for one clock."""
    points = [Fraction(0)]
    for k in range(K):
        points.append(Fraction(2 * k + 1, 2))
        points.append(Fraction(k + 1))
    points.append(Fraction(2 * K + 1, 2))
    return points


def clock_cell_guard(clock, point, K):
    """Guard describing the elementary interval containing ``point``."""
    if point > K:
        return Not(Le(clock, K))
    if point.denominator == 1:
        return clock_eq(clock, int(point))
    lo = int(point)
    return And(Not(Le(clock, lo)), Lt(clock, lo + 1))


def relation_guard(reg, rel):
    return {"<": Lt(reg), "=": eq(reg), ">": gt(reg)}[rel]
