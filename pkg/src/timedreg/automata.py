"""Alternating timed and register automata and their closure constructions."""
from collections import deque
from dataclasses import dataclass, field
from itertools import product

from . import formulas as fm
from . import guards as gd
from .errors import (
    AlphabetMismatch,
    AutomatonError,
    DuplicateRule,
    NotNondeterministic,
    PartitionViolation,
)
from .words import Letter, as_letter

DETERMINISTIC = "deterministic"
NONDETERMINISTIC = "nondeterministic"
ALTERNATING = "alternating"


@dataclass(frozen=True)
class Rule:
    state: str
    letter: Letter
    guard: gd.Guard
    formula: fm.Formula


class Automaton:
    """Common part of both automaton models.

    ``variables`` are the clocks of a timed automaton or the registers of
    a register automaton. Rules are an explicit finite set; at most one
    rule may exist per ``(state, letter, guard)``.
    """

    kind = None

    def __init__(self, alphabet, states, initial, accepting, variables, rules):
        self.alphabet = frozenset(as_letter(a) for a in alphabet)
        self.states = tuple(dict.fromkeys(states))
        self.initial = initial
        self.accepting = frozenset(accepting)
        self.variables = tuple(sorted(set(variables)))
        self.rules = tuple(rules)
        self._check()
        index = {}
        for r in self.rules:
            index.setdefault((r.state, r.letter), []).append(r)
        self._index = index

    def _check(self):
        states = set(self.states)
        if self.initial not in states:
            raise AutomatonError(f"initial state {self.initial!r} is not a state")
        if not self.accepting <= states:
            raise AutomatonError(f"unknown accepting states {sorted(self.accepting - states)}")
        seen = set()
        vars_ = set(self.variables)
        for r in self.rules:
            key = (r.state, r.letter, r.guard)
            if key in seen:
                raise DuplicateRule(f"duplicate rule for {r.state} {r.letter}")
            seen.add(key)
            if r.state not in states:
                raise AutomatonError(f"rule from unknown state {r.state!r}")
            if r.letter not in self.alphabet:
                raise AutomatonError(f"rule on letter {r.letter} outside the alphabet")
            if not gd.variables(r.guard) <= vars_:
                raise AutomatonError(f"guard uses undeclared {sorted(gd.variables(r.guard) - vars_)}")
            self._check_guard(r.guard)
            for a in fm.atoms(r.formula):
                if a.state not in states:
                    raise AutomatonError(f"formula targets unknown state {a.state!r}")
                if not a.update <= vars_:
                    raise AutomatonError(f"formula updates undeclared {sorted(a.update - vars_)}")

    def _check_guard(self, g):
        pass

    def rules_for(self, state, letter):
        return self._index.get((state, letter), [])

    def replace(self, **changes):
        args = dict(
            alphabet=self.alphabet,
            states=self.states,
            initial=self.initial,
            accepting=self.accepting,
            variables=self.variables,
            rules=self.rules,
        )
        args.update(changes)
        return type(self)(**args)

    def __eq__(self, other):
        return (
            type(self) is type(other)
            and self.alphabet == other.alphabet
            and set(self.states) == set(other.states)
            and self.initial == other.initial
            and self.accepting == other.accepting
            and self.variables == other.variables
            and set(self.rules) == set(other.rules)
        )

    def __hash__(self):
        return hash((self.kind, self.initial, frozenset(self.rules)))

    def __repr__(self):
        return (
            f"{type(self).__name__}(states={len(self.states)}, "
            f"{self.var_label}={len(self.variables)}, rules={len(self.rules)})"
        )

    # cells of the valuation space; overridden per model
    def cells(self):
        raise NotImplementedError

    def holds(self, guard, cell):
        raise NotImplementedError

    def cell_guard(self, cell):
        raise NotImplementedError


class TimedAutomaton(Automaton):
    kind = "timed"
    var_label = "clocks"

    def __init__(self, alphabet, states, initial, accepting, variables=(), rules=(), clocks=None):
        if clocks is not None:
            variables = clocks
        super().__init__(alphabet, states, initial, accepting, variables, rules)

    @property
    def clocks(self):
        return self.variables

    def _check_guard(self, g):
        for a in gd.atoms(g):
            if not isinstance(a.bound, int) or a.bound < 0:
                raise AutomatonError(f"clock atom {a} needs a nonnegative integer bound")

    def cells(self, K=None):
        if K is None:
            K = max_constant(self)
        points = gd.clock_cells(K)
        for combo in product(points, repeat=len(self.variables)):
            yield dict(zip(self.variables, combo))

    def holds(self, guard, cell):
        return gd.eval_constraint(guard, cell)

    def cell_guard(self, cell, K=None):
        if K is None:
            K = max_constant(self)
        return gd.conj(*(gd.clock_cell_guard(c, cell[c], K) for c in self.variables))


class RegisterAutomaton(Automaton):
    kind = "register"
    var_label = "registers"

    def __init__(self, alphabet, states, initial, accepting, variables=(), rules=(), registers=None):
        if registers is not None:
            variables = registers
        super().__init__(alphabet, states, initial, accepting, variables, rules)

    @property
    def registers(self):
        return self.variables

    def _check_guard(self, g):
        for a in gd.atoms(g):
            if a.bound is not None:
                raise AutomatonError(f"register atom {a} cannot carry a constant")

    def cells(self, K=None):
        for combo in product("<=>", repeat=len(self.variables)):
            yield dict(zip(self.variables, combo))

    def holds(self, guard, cell):
        return gd.eval_relations(guard, cell)

    def cell_guard(self, cell, K=None):
        return gd.conj(*(gd.relation_guard(r, cell[r]) for r in self.variables))


def _format_cell(cell):
    def fmt(v):
        return str(v) if not hasattr(v, "denominator") or v.denominator == 1 else f"{v.numerator}/{v.denominator}"

    return ",".join(f"{k}:{fmt(v)}" for k, v in cell.items()) or "-"


# -- partition ---------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    state: str
    letter: Letter
    cell: dict = field(hash=False, compare=False)
    covering: tuple = ()

    @property
    def kind(self):
        return "uncovered" if not self.covering else "overlap"

    def __str__(self):
        return f"{self.state} {self.letter}: {self.kind} cell {_format_cell(self.cell)}"


@dataclass
class PartitionReport:
    violations: list

    @property
    def ok(self):
        return not self.violations

    def pairs(self):
        return sorted({(v.state, str(v.letter)) for v in self.violations})

    def __str__(self):
        if self.ok:
            return "partition: ok"
        return "\n".join(str(v) for v in self.violations)


def _coverage(A, rules, K):
    """Map each cell (as a frozen tuple) to the indices of rules holding there."""
    cov = []
    for cell in A.cells(K):
        hit = tuple(i for i, r in enumerate(rules) if A.holds(r.guard, cell))
        cov.append((cell, hit))
    return cov


def check_partition(A):
    """Report every cell not covered by exactly one rule, per (state, letter).

    Pairs without any rule are reported as uncovered too: the acceptance
    game has no move there.
    """
    K = max_constant(A) if A.kind == "timed" else None
    out = []
    for q in A.states:
        for a in sorted(A.alphabet):
            rules = A.rules_for(q, a)
            for cell, hit in _coverage(A, rules, K):
                if len(hit) != 1:
                    out.append(Violation(q, a, cell, hit))
    return PartitionReport(out)


def check_partition_timed(A):
    return check_partition(A)


def check_partition_register(A):
    return check_partition(A)


def require_partition(A):
    report = check_partition(A)
    if not report.ok:
        raise PartitionViolation(
            f"guards fail to partition at {len(report.pairs())} state/letter pair(s): {report.pairs()[:5]}",
            report,
        )


def fresh_name(base, taken):
    name = base
    i = 1
    while name in taken:
        name = f"{base}{i}"
        i += 1
    return name


def complete_with_sink(A, sink="sink"):
    """Return an equivalent automaton whose guards partition every state/letter pair.

    Uncovered regions go to a fresh rejecting sink. Where guards overlap,
    rules are refined by the set of guards holding and their formulas are
    joined by disjunction, which is how separately drawn arrows of a
    nondeterministic automaton combine.
    """
    K = max_constant(A) if A.kind == "timed" else None
    sink = fresh_name(sink, set(A.states))
    new_rules = []
    used_sink = False
    for q in A.states:
        for a in sorted(A.alphabet):
            rules = A.rules_for(q, a)
            cov = _coverage(A, rules, K)
            groups = {hit for _, hit in cov}
            if all(len(h) == 1 for h in groups):
                new_rules.extend(rules)
                continue
            if all(len(h) <= 1 for h in groups):
                new_rules.extend(rules)
                guard = gd.conj(*(gd.Not(r.guard) for r in rules))
                new_rules.append(Rule(q, a, guard, fm.Atom(sink)))
                used_sink = True
                continue
            for hit in sorted(groups):
                guard = gd.conj(
                    *(rules[i].guard for i in hit),
                    *(gd.Not(r.guard) for i, r in enumerate(rules) if i not in hit),
                )
                if hit:
                    formula = fm.disj(*(rules[i].formula for i in hit))
                else:
                    formula = fm.Atom(sink)
                    used_sink = True
                new_rules.append(Rule(q, a, guard, formula))
    if not used_sink:
        return A.replace(rules=new_rules)
    for a in sorted(A.alphabet):
        new_rules.append(Rule(sink, a, gd.TRUE, fm.Atom(sink)))
    return A.replace(states=A.states + (sink,), rules=new_rules)


# -- syntactic classification -------------------------------------------------

def max_constant(A):
    return max((gd.max_bound(r.guard) for r in A.rules), default=0)


def mode_of(A):
    if any(fm.has_conj(r.formula) for r in A.rules):
        return ALTERNATING
    if any(fm.has_disj(r.formula) for r in A.rules):
        return NONDETERMINISTIC
    return DETERMINISTIC


def is_order_blind(A):
    if A.kind != "register":
        raise TypeError("order-blindness is a property of register automata")
    return all(gd.is_order_blind(r.guard) for r in A.rules)


def reachable_states(A):
    seen = {A.initial}
    todo = deque([A.initial])
    while todo:
        q = todo.popleft()
        for r in A.rules:
            if r.state != q:
                continue
            for at in fm.atoms(r.formula):
                if at.state not in seen:
                    seen.add(at.state)
                    todo.append(at.state)
    return seen


# -- closure constructions ---------------------------------------------------

def dualize(A):
    """Complement: swap conjunction and disjunction, complement the accepting set."""
    require_partition(A)
    rules = [Rule(r.state, r.letter, r.guard, fm.dual(r.formula)) for r in A.rules]
    accepting = set(A.states) - A.accepting
    return A.replace(rules=rules, accepting=accepting)


def _rename_guard(g, fn):
    if isinstance(g, gd.Lt):
        return gd.Lt(fn(g.var), g.bound)
    if isinstance(g, gd.Le):
        return gd.Le(fn(g.var), g.bound)
    if isinstance(g, gd.And):
        return gd.And(_rename_guard(g.left, fn), _rename_guard(g.right, fn))
    if isinstance(g, gd.Not):
        return gd.Not(_rename_guard(g.arg, fn))
    return g


def _tagged(A, tag):
    """Copy of ``A`` with states and variables prefixed by ``tag``."""

    def v(x):
        return f"{tag}.{x}"

    def retarget(at):
        return fm.Atom(v(at.state), {v(x) for x in at.update})

    rules = [
        Rule(v(r.state), r.letter, _rename_guard(r.guard, v), fm.map_atoms(r.formula, retarget))
        for r in A.rules
    ]
    return A.replace(
        states=[v(q) for q in A.states],
        initial=v(A.initial),
        accepting={v(q) for q in A.accepting},
        variables=[v(x) for x in A.variables],
        rules=rules,
    )


def _compatible(A, B):
    if A.kind != B.kind:
        raise AutomatonError("cannot combine a timed and a register automaton")
    if A.alphabet != B.alphabet:
        raise AlphabetMismatch(
            f"alphabets differ: {sorted(map(str, A.alphabet ^ B.alphabet))}"
        )


def _satisfiable(C, guard, K):
    return any(C.holds(guard, cell) for cell in C.cells(K))


def _boolean_combination(A, B, op):
    _compatible(A, B)
    require_partition(A)
    require_partition(B)
    L, R = _tagged(A, "L"), _tagged(B, "R")
    init = fresh_name("init", set(L.states) | set(R.states))
    states = (init,) + L.states + R.states
    variables = L.variables + R.variables
    joined = type(A)(
        L.alphabet, states, init, L.accepting | R.accepting, variables, L.rules + R.rules
    )
    K = max_constant(joined) if A.kind == "timed" else None
    rules = list(L.rules + R.rules)
    for a in sorted(A.alphabet):
        for ra in L.rules_for(L.initial, a):
            for rb in R.rules_for(R.initial, a):
                guard = gd.conj(ra.guard, rb.guard)
                if _satisfiable(joined, guard, K):
                    rules.append(Rule(init, a, guard, op(ra.formula, rb.formula)))
    accepting = set(L.accepting | R.accepting)
    a_acc, b_acc = L.initial in L.accepting, R.initial in R.accepting
    if (a_acc or b_acc) if op is fm.Disj else (a_acc and b_acc):
        accepting.add(init)
    return joined.replace(accepting=accepting, rules=rules)


def union(A, B):
    return _boolean_combination(A, B, fm.Disj)


def intersect(A, B):
    return _boolean_combination(A, B, fm.Conj)


def product_nondet(A, B):
    """Synchronous product of two conjunction-free automata; stays conjunction-free."""
    _compatible(A, B)
    for X in (A, B):
        if mode_of(X) == ALTERNATING:
            raise NotNondeterministic("product_nondet needs nondeterministic operands")
    L, R = _tagged(A, "L"), _tagged(B, "R")
    variables = L.variables + R.variables

    def name(p, q):
        return f"{p[2:]}~{q[2:]}"

    start = (L.initial, R.initial)
    seen = {start}
    todo = deque([start])
    pending = []
    while todo:
        p, q = todo.popleft()
        for a in sorted(A.alphabet):
            for ra in L.rules_for(p, a):
                for rb in R.rules_for(q, a):
                    pending.append((p, q, a, ra, rb))
                    for x in fm.atoms(ra.formula):
                        for y in fm.atoms(rb.formula):
                            nxt = (x.state, y.state)
                            if nxt not in seen:
                                seen.add(nxt)
                                todo.append(nxt)
    states = [name(p, q) for p, q in sorted(seen)]
    states.remove(name(*start))
    states.insert(0, name(*start))
    probe = type(A)(A.alphabet, states, name(*start), (), variables, ())
    K = max(max_constant(A), max_constant(B)) if A.kind == "timed" else None
    rules = []
    for p, q, a, ra, rb in pending:
        guard = gd.conj(ra.guard, rb.guard)
        if not _satisfiable(probe, guard, K):
            continue
        options = [
            fm.Atom(name(x.state, y.state), x.update | y.update)
            for x in fm.disjuncts(ra.formula)
            for y in fm.disjuncts(rb.formula)
        ]
        rules.append(Rule(name(p, q), a, guard, fm.disj(*dict.fromkeys(options))))
    accepting = {name(p, q) for p, q in seen if p in L.accepting and q in R.accepting}
    return type(A)(A.alphabet, states, name(*start), accepting, variables, rules)
