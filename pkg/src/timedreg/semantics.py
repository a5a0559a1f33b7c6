"""Membership by evaluating the acceptance game.

The game on a finite word is a finite tree: every phase consumes one
letter, Eve resolves disjunctions and Adam conjunctions. The automaton
accepts iff Eve has a winning strategy, which is computed bottom-up with
memoisation on configurations ``(phase, state, valuation)``.
"""
from dataclasses import dataclass

from . import formulas as fm
from .errors import AlphabetMismatch, PartitionViolation
from .guards import eval_constraint, eval_test  # noqa: F401  (public re-export)

__all__ = [
    "accepts",
    "accepts_timed",
    "accepts_register",
    "eval_constraint",
    "eval_test",
    "explain",
    "replay",
    "Witness",
]


class _Game:
    def __init__(self, A, w):
        missing = set(w.letters) - A.alphabet
        if missing:
            raise AlphabetMismatch(f"letters {sorted(map(str, missing))} not in the automaton alphabet")
        self.A = A
        self.w = w
        self.n = len(w)
        self.vars = A.variables

    def move(self, k, q, val):
        """Rule applicable in phase ``k+1`` and the valuation it is judged on."""
        letter, value = self.w[k]
        env, judged = self._environment(k, val)
        hits = [r for r in self.A.rules_for(q, letter) if self._holds(r.guard, env, value)]
        if len(hits) != 1:
            raise PartitionViolation(
                f"{len(hits)} rules apply at state {q!r}, letter {letter}, position {k}"
            )
        return hits[0], judged

    def accepting(self, q):
        return q in self.A.accepting


class _TimedGame(_Game):
    def initial(self):
        return (0, self.A.initial, tuple(0 for _ in self.vars))

    def _environment(self, k, val):
        elapsed = self.w[k][1] - (self.w[k - 1][1] if k else 0)
        bar = tuple(x + elapsed for x in val)
        return dict(zip(self.vars, bar)), bar

    def _holds(self, guard, env, value):
        return eval_constraint(guard, env)

    def successor(self, k, judged, atom):
        val = tuple(0 if x in atom.update else y for x, y in zip(self.vars, judged))
        return (k + 1, atom.state, val)


class _RegisterGame(_Game):
    def initial(self):
        d1 = self.w[0][1]
        return (0, self.A.initial, tuple(d1 for _ in self.vars))

    def _environment(self, k, val):
        return dict(zip(self.vars, val)), val

    def _holds(self, guard, env, value):
        return eval_test(guard, env, value)

    def successor(self, k, judged, atom):
        d = self.w[k][1]
        val = tuple(d if x in atom.update else y for x, y in zip(self.vars, judged))
        return (k + 1, atom.state, val)


def _game(A, w):
    return _TimedGame(A, w) if A.kind == "timed" else _RegisterGame(A, w)


def _solve(game, memo=True):
    table = {} if memo else None

    def win(conf):
        if table is not None and conf in table:
            return table[conf]
        k, q, val = conf
        if k == game.n:
            res = game.accepting(q)
        else:
            rule, judged = game.move(k, q, val)
            res = fm.evaluate(rule.formula, lambda at: win(game.successor(k, judged, at)))
        if table is not None:
            table[conf] = res
        return res

    return win


def accepts(A, w, memo=True):
    game = _game(A, w)
    return _solve(game, memo)(game.initial())


def accepts_timed(A, w, memo=True):
    if A.kind != "timed":
        raise TypeError("accepts_timed needs a timed automaton")
    return accepts(A, w, memo)


def accepts_register(A, w, memo=True):
    if A.kind != "register":
        raise TypeError("accepts_register needs a register automaton")
    return accepts(A, w, memo)


# -- witnesses -----------------------------------------------------------------

@dataclass
class Node:
    """A configuration in the strategy tree.

    ``body`` is ``None`` at the end of the word; otherwise it mirrors the
    formula of ``rule``.
    """

    phase: int
    state: str
    valuation: tuple
    rule: object = None
    body: object = None


@dataclass
class Branch:
    op: str  # "or" / "and"
    choices: tuple  # ((side, subtree), ...) with side "left" / "right"


@dataclass
class Move:
    atom: fm.Atom
    child: Node


@dataclass
class Witness:
    """Eve's winning strategy (``accepted``) or Adam's refutation otherwise."""

    accepted: bool
    root: Node

    def leaves(self):
        out = []
        seen = set()

        def walk(x):
            if isinstance(x, Node):
                if id(x) in seen:
                    return
                seen.add(id(x))
                if x.body is None:
                    out.append((x.phase, x.state, x.valuation))
                else:
                    walk(x.body)
            elif isinstance(x, Branch):
                for _, sub in x.choices:
                    walk(sub)
            else:
                walk(x.child)

        walk(self.root)
        return out

    def first_moves(self):
        """Atoms chosen in the first phase (along every kept branch)."""
        out = []

        def walk(x):
            if isinstance(x, Branch):
                for _, sub in x.choices:
                    walk(sub)
            elif isinstance(x, Move):
                out.append(x.atom)

        walk(self.root.body)
        return out


def explain(A, w):
    game = _game(A, w)
    win = _solve(game)
    verdict = win(game.initial())
    nodes = {}

    def build(conf):
        if conf in nodes:
            return nodes[conf]
        k, q, val = conf
        node = Node(k, q, val)
        nodes[conf] = node
        if k < game.n:
            rule, judged = game.move(k, q, val)
            node.rule = rule
            node.body = formula_tree(rule.formula, k, judged)
        return node

    def value(f, k, judged):
        return fm.evaluate(f, lambda at: win(game.successor(k, judged, at)))

    def formula_tree(f, k, judged):
        if isinstance(f, fm.Atom):
            return Move(f, build(game.successor(k, judged, f)))
        op = "and" if isinstance(f, fm.Conj) else "or"
        sides = (("left", f.left), ("right", f.right))
        # the prover picks one branch: Eve at "or" when accepting, Adam at "and" otherwise
        if (op == "or") == verdict:
            side, sub = next((s, g) for s, g in sides if value(g, k, judged) == verdict)
            return Branch(op, ((side, formula_tree(sub, k, judged)),))
        return Branch(op, tuple((s, formula_tree(g, k, judged)) for s, g in sides))

    return Witness(verdict, build(game.initial()))


def replay(A, w, witness):
    """Check ``witness`` against ``A`` and ``w``; return the verdict it proves.

    Raises ``ValueError`` if the tree is not a legal strategy for its
    claimed verdict.
    """
    game = _game(A, w)
    claim = witness.accepted
    checked = set()

    def check_node(node):
        if id(node) in checked:
            return
        checked.add(id(node))
        conf = (node.phase, node.state, node.valuation)
        if node.phase == game.n:
            if game.accepting(node.state) != claim:
                raise ValueError(f"leaf {conf} does not support the verdict")
            return
        rule, judged = game.move(node.phase, node.state, node.valuation)
        if node.rule != rule:
            raise ValueError(f"wrong rule at {conf}")
        check_body(node.body, rule.formula, node.phase, judged)

    def check_body(body, f, k, judged):
        if isinstance(f, fm.Atom):
            if not isinstance(body, Move) or body.atom != f:
                raise ValueError("tree does not follow the formula")
            child = body.child
            if (child.phase, child.state, child.valuation) != game.successor(k, judged, f):
                raise ValueError("wrong successor configuration")
            check_node(child)
            return
        op = "and" if isinstance(f, fm.Conj) else "or"
        if not isinstance(body, Branch) or body.op != op:
            raise ValueError("tree does not follow the formula")
        subs = {"left": f.left, "right": f.right}
        picked = [s for s, _ in body.choices]
        if (op == "or") == claim:
            if len(picked) != 1:
                raise ValueError("prover must pick exactly one branch")
        elif sorted(picked) != ["left", "right"]:
            raise ValueError("opponent branches must all be covered")
        for side, sub in body.choices:
            check_body(sub, subs[side], k, judged)

    check_node(witness.root)
    return claim
