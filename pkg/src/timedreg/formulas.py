"""Positive boolean formulas over (state, reset-or-load set) atoms."""
from dataclasses import dataclass


class Formula:
    __slots__ = ()

    def __and__(self, other):
        return Conj(self, other)

    def __or__(self, other):
        return Disj(self, other)


@dataclass(frozen=True)
class Atom(Formula):
    state: str
    update: frozenset = frozenset()

    def __init__(self, state, update=()):
        object.__setattr__(self, "state", state)
        object.__setattr__(self, "update", frozenset(update))


@dataclass(frozen=True)
class Conj(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Disj(Formula):
    left: Formula
    right: Formula


def disj(*fs):
    fs = list(fs)
    out = fs[0]
    for f in fs[1:]:
        out = Disj(out, f)
    return out


def conj(*fs):
    fs = list(fs)
    out = fs[0]
    for f in fs[1:]:
        out = Conj(out, f)
    return out


def atoms(f):
    if isinstance(f, Atom):
        yield f
    else:
        yield from atoms(f.left)
        yield from atoms(f.right)


def has_conj(f):
    if isinstance(f, Atom):
        return False
    return isinstance(f, Conj) or has_conj(f.left) or has_conj(f.right)


def has_disj(f):
    if isinstance(f, Atom):
        return False
    return isinstance(f, Disj) or has_disj(f.left) or has_disj(f.right)


def map_atoms(f, fn):
    """Rebuild ``f`` with every atom replaced by ``fn(atom)``; shape is kept."""
    if isinstance(f, Atom):
        return fn(f)
    return type(f)(map_atoms(f.left, fn), map_atoms(f.right, fn))


def dual(f):
    if isinstance(f, Atom):
        return f
    other = Disj if isinstance(f, Conj) else Conj
    return other(dual(f.left), dual(f.right))


def disjuncts(f):
    """Flatten a conjunction-free formula into its list of atoms."""
    if isinstance(f, Conj):
        raise ValueError("formula contains a conjunction")
    return list(atoms(f))


def evaluate(f, atom_value):
    if isinstance(f, Atom):
        return atom_value(f)
    if isinstance(f, Conj):
        return evaluate(f.left, atom_value) and evaluate(f.right, atom_value)
    return evaluate(f.left, atom_value) or evaluate(f.right, atom_value)
